//! Truncated formal power series with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::Scalar;
use crate::error::{AlgebraError, Result};
use crate::linalg::solve_dense;

/// `Σ c_n t^n` for `n` up to the truncation order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesTrunc {
    coeffs: Vec<Scalar>,
}

impl SeriesTrunc {
    /// Series from coefficients `c_0..=c_order`.
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least its constant term");
        SeriesTrunc { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(|c| Scalar::from_integer(c.into())).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Scalar::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Scalar::one();
        s
    }

    /// Polynomial `Σ coeffs[i] t^i`, padded or cut to `order`.
    pub fn polynomial(coeffs: &[Scalar], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (i, c) in coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Scalar {
        &self.coeffs[n]
    }

    /// Coefficients as integers, if all are integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(AlgebraError::TruncationMismatch(self.order(), other.order()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_to(other, self.order()))
    }

    fn mul_to(&self, other: &Self, order: usize) -> Self {
        let mut out = vec![Scalar::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    /// Multiplicative inverse by Newton iteration `g ← g (2 − f g)`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(AlgebraError::NonInvertibleSeries);
        }
        let order = self.order();
        let mut g = Self::polynomial(&[c0.recip()], 0);
        let mut prec = 0usize;
        while prec < order {
            let next = (2 * prec + 1).min(order);
            let f = Self::polynomial(&self.coeffs, next);
            let g_ext = Self::polynomial(&g.coeffs, next);
            let mut two_minus = f.mul_to(&g_ext, next).neg();
            two_minus.coeffs[0] += Scalar::from_integer(2.into());
            g = g_ext.mul_to(&two_minus, next);
            prec = next;
        }
        Ok(g)
    }

    /// A rational function `p(t)/q(t)` with `q(0) = 1` reproducing every
    /// coefficient, of smallest total degree leaving at least two
    /// coefficients as unused checks. Only a candidate: agreement beyond the
    /// truncation order is not verified.
    pub fn candidate_rational_form(&self) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
        let order = self.order();
        for total in 0..order {
            for q in 0..=total {
                let p = total - q;
                if order < p + q + 2 {
                    continue;
                }
                if let Some(found) = self.try_pade(p, q) {
                    return Some(found);
                }
            }
        }
        None
    }

    fn try_pade(&self, p: usize, q: usize) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
        let c = |k: isize| -> Scalar {
            if k < 0 {
                Scalar::zero()
            } else {
                self.coeffs[k as usize].clone()
            }
        };
        // (S·Q)_k = 0 for k in p+1..=p+q determines Q = 1 + Σ b_i t^i
        let mut den = vec![Scalar::one()];
        if q > 0 {
            let a: Vec<Vec<Scalar>> = (1..=q)
                .map(|r| (1..=q).map(|i| c((p + r) as isize - i as isize)).collect())
                .collect();
            let b: Vec<Scalar> = (1..=q).map(|r| -c((p + r) as isize)).collect();
            den.extend(solve_dense(&a, &b)?);
        }
        let prod = self.mul_to(&Self::polynomial(&den, self.order()), self.order());
        if prod.coeffs[p + 1..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut num = prod.coeffs[..=p].to_vec();
        while num.len() > 1 && num.last().is_some_and(Zero::is_zero) {
            num.pop();
        }
        while den.len() > 1 && den.last().is_some_and(Zero::is_zero) {
            den.pop();
        }
        Some((num, den))
    }
}

impl fmt::Display for SeriesTrunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Renders `Σ c_i t^i` with `t` as the variable.
pub fn render_polynomial(coeffs: &[Scalar]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
