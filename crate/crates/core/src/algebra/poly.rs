use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{CommMonomial, Monomial, MonomialOrder, Scalar, Word};
use crate::error::{AlgebraError, Result};

/// A polynomial with exact rational coefficients.
///
/// Terms are kept sorted in strictly descending order under the order the
/// polynomial was built with, so the leading term is always `terms[0]`.
/// Every operation that can reorder terms takes the order explicitly.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<M> {
    terms: Vec<(M, Scalar)>,
}

pub type NcPoly = Polynomial<Word>;
pub type CommPoly = Polynomial<CommMonomial>;

impl<M: Monomial> Polynomial<M> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn monomial(m: M, c: Scalar) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(terms: I, ord: &MonomialOrder) -> Self
    where
        I: IntoIterator<Item = (M, Scalar)>,
    {
        let mut acc: HashMap<M, Scalar> = HashMap::new();
        let mut first_seen: Vec<M> = Vec::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v += c,
                None => {
                    first_seen.push(m.clone());
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(M, Scalar)> = first_seen
            .into_iter()
            .filter_map(|m| {
                let c = acc.remove(&m).expect("present");
                (!c.is_zero()).then_some((m, c))
            })
            .collect();
        terms.sort_by(|a, b| b.0.cmp_in(&a.0, ord));
        Polynomial { terms }
    }

    /// Wraps terms that are already sorted descending with nonzero, distinct
    /// monomials.
    pub fn from_sorted_unchecked(terms: Vec<(M, Scalar)>) -> Self {
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[(M, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(M, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&M, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&M> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coeff(&self, m: &M) -> Scalar {
        self.terms
            .iter()
            .find(|(n, _)| n == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// Re-sorts the terms under a different order.
    pub fn reorder(&self, ord: &MonomialOrder) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| b.0.cmp_in(&a.0, ord));
        Polynomial { terms }
    }

    /// `self + c * other`, merging two sorted term lists.
    pub fn add_scaled(&self, other: &Self, c: &Scalar, ord: &MonomialOrder) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, ca) = &self.terms[i];
            let (b, cb) = &other.terms[j];
            match a.cmp_in(b, ord) {
                Ordering::Greater => {
                    out.push((a.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.clone(), cb * c));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = ca + cb * c;
                    if !s.is_zero() {
                        out.push((a.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, cb)| (m.clone(), cb * c)));
        Polynomial { terms: out }
    }

    pub fn add(&self, other: &Self, ord: &MonomialOrder) -> Self {
        self.add_scaled(other, &Scalar::one(), ord)
    }

    pub fn sub(&self, other: &Self, ord: &MonomialOrder) -> Self {
        self.add_scaled(other, &-Scalar::one(), ord)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn mul(&self, other: &Self, ord: &MonomialOrder) -> Self {
        let products = self
            .terms
            .iter()
            .flat_map(|(a, ca)| other.terms.iter().map(move |(b, cb)| (a.mul(b), ca * cb)));
        Self::from_terms(products, ord)
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Largest monomial degree, `None` for the zero polynomial.
    pub fn degree(&self, ord: &MonomialOrder) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree_in(ord)).max()
    }

    pub fn is_homogeneous(&self, ord: &MonomialOrder) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree_in(ord));
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a, M> {
        PolyDisplay { poly: self, names }
    }
}

impl NcPoly {
    pub fn constant(c: Scalar) -> Self {
        Self::monomial(Word::empty(), c)
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, Scalar::one())
    }

    /// `c * left * self * right`; word multiplication is monotone so the
    /// term order is preserved.
    pub fn sandwich(&self, left: &[u16], right: &[u16], c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (Word::concat3(left, m.letters(), right), a * c))
                .collect(),
        }
    }
}

impl CommPoly {
    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::monomial(CommMonomial::one(nvars), c)
    }

    /// `c * m * self`, order preserving.
    pub fn times_monomial(&self, m: &CommMonomial, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }
}

/// Leading monomial and coefficient of a nonzero polynomial.
pub fn leading<M: Monomial>(p: &Polynomial<M>, ord: &MonomialOrder) -> Result<(M, Scalar)> {
    p.terms
        .iter()
        .max_by(|a, b| a.0.cmp_in(&b.0, ord))
        .map(|(m, c)| (m.clone(), c.clone()))
        .ok_or(AlgebraError::ZeroPolynomial)
}

/// Renders a polynomial as `x*y^2 - 1/2*y`.
pub struct PolyDisplay<'a, M> {
    poly: &'a Polynomial<M>,
    names: &'a [String],
}

pub(crate) fn write_monomial<M: Monomial>(f: &mut fmt::Formatter<'_>, m: &M, names: &[String]) -> fmt::Result {
    let factors = m.factors();
    if factors.is_empty() {
        return write!(f, "1");
    }
    for (k, (g, e)) in factors.iter().enumerate() {
        if k > 0 {
            write!(f, "*")?;
        }
        let name = names.get(*g).map(String::as_str).unwrap_or("?");
        if *e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

impl<M: Monomial> fmt::Display for PolyDisplay<'_, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, m, self.names)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn w(l: &[usize]) -> Word {
        Word::from_indices(l)
    }

    #[test]
    fn free_multiplication_is_noncommutative() {
        let ord = MonomialOrder::natural_deglex(2);
        let x = NcPoly::word(w(&[0]));
        let y = NcPoly::word(w(&[1]));
        let xy = x.mul(&y, &ord);
        let yx = y.mul(&x, &ord);
        assert_ne!(xy, yx);
        let n = names(&["x", "y"]);
        let p = x.add(&y, &ord).mul(&x.sub(&y, &ord), &ord);
        assert_eq!(p.display(&n).to_string(), "x^2 - x*y + y*x - y^2");
    }

    #[test]
    fn commutative_square() {
        let ord = MonomialOrder::natural_deglex(2);
        let x = CommPoly::monomial(CommMonomial::var(2, 0, 1), int(1));
        let y = CommPoly::monomial(CommMonomial::var(2, 1, 1), int(1));
        let s = x.add(&y, &ord);
        let sq = s.mul(&s, &ord);
        assert_eq!(sq.display(&names(&["x", "y"])).to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn leading_terms() {
        let n = 2;
        let x3 = CommMonomial::new(vec![3, 0]);
        let xy2 = CommMonomial::new(vec![1, 2]);
        let terms = vec![(x3.clone(), int(1)), (xy2.clone(), int(-1))];
        let xfirst = MonomialOrder::deglex(vec![0, 1], vec![1; n]).unwrap();
        let yfirst = MonomialOrder::deglex(vec![1, 0], vec![1; n]).unwrap();
        let f = CommPoly::from_terms(terms, &xfirst);
        assert_eq!(leading(&f, &xfirst).unwrap(), (x3, int(1)));
        assert_eq!(leading(&f, &yfirst).unwrap(), (xy2, int(-1)));
        let seven = CommPoly::constant(2, int(7));
        assert_eq!(leading(&seven, &xfirst).unwrap(), (CommMonomial::one(2), int(7)));
        assert_eq!(leading(&CommPoly::zero(), &xfirst), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn exact_rationals() {
        assert_eq!(ratio(1, 3) + ratio(1, 6), ratio(1, 2));
        let ord = MonomialOrder::natural_deglex(2);
        let p = NcPoly::monomial(w(&[0, 1]), ratio(1, 2));
        assert_eq!(p.display(&names(&["x", "y"])).to_string(), "1/2*x*y");
        let q = NcPoly::from_terms(vec![(w(&[]), int(-3)), (w(&[1]), int(-1))], &ord);
        assert_eq!(q.display(&names(&["x", "y"])).to_string(), "-y - 3");
    }

    #[test]
    fn from_terms_merges_and_drops_zeros() {
        let ord = MonomialOrder::natural_deglex(2);
        let p = NcPoly::from_terms(vec![(w(&[0]), int(1)), (w(&[1]), int(2)), (w(&[0]), int(-1))], &ord);
        assert_eq!(p.terms(), &[(w(&[1]), int(2))]);
    }
}
