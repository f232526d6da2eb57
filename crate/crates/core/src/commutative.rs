//! Gröbner bases in commutative polynomial rings.

use num_traits::One;

use crate::algebra::{CommMonomial, CommPoly, Monomial, MonomialOrder, Scalar};
use crate::error::{AlgebraError, Result};

/// A commutative Gröbner basis together with the order it is taken in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommGB {
    pub basis: Vec<CommPoly>,
    pub order: MonomialOrder,
    pub reduced: bool,
}

fn lead(p: &CommPoly) -> Result<(&CommMonomial, &Scalar)> {
    p.leading().ok_or(AlgebraError::ZeroPolynomial)
}

/// One reduction step of `f` by `g` on the leading term of `f`.
pub fn comm_reduce_once(f: &CommPoly, g: &CommPoly, ord: &MonomialOrder) -> Result<Option<CommPoly>> {
    let (lf, cf) = lead(f)?;
    let (lg, cg) = lead(g)?;
    if !lg.divides(lf) {
        return Ok(None);
    }
    let m = lg.quotient_of(lf);
    let c = -(cf / cg);
    Ok(Some(f.add_scaled(&g.times_monomial(&m, &Scalar::one()), &c, ord)))
}

/// Fully reduces `f` modulo `basis`: no monomial of the result is divisible
/// by any leading monomial. Monomials are scanned from largest to smallest
/// and the lowest-index applicable basis element is used.
pub fn comm_normal_form(f: &CommPoly, basis: &[CommPoly], ord: &MonomialOrder) -> CommPoly {
    let leads: Vec<(&CommMonomial, &Scalar)> = basis.iter().filter_map(|g| g.leading()).collect();
    let gens: Vec<&CommPoly> = basis.iter().filter(|g| !g.is_zero()).collect();
    let mut rest = f.clone();
    let mut done: Vec<(CommMonomial, Scalar)> = Vec::new();
    while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().position(|(lg, _)| lg.divides(&m)) {
            Some(k) => {
                let (lg, cg) = leads[k];
                let q = lg.quotient_of(&m);
                rest = rest.add_scaled(&gens[k].times_monomial(&q, &Scalar::one()), &(-(&c / cg)), ord);
            }
            None => {
                done.push((m, c));
                rest = CommPoly::from_sorted_unchecked(rest.into_terms().into_iter().skip(1).collect());
            }
        }
    }
    CommPoly::from_sorted_unchecked(done)
}

/// S-polynomial on the least common multiple of the leading monomials.
pub fn comm_s_polynomial(f: &CommPoly, g: &CommPoly, ord: &MonomialOrder) -> Result<CommPoly> {
    let (lf, cf) = lead(f)?;
    let (lg, cg) = lead(g)?;
    let l = lf.lcm(lg);
    let left = f.times_monomial(&lf.quotient_of(&l), &cf.recip());
    let right = g.times_monomial(&lg.quotient_of(&l), &cg.recip());
    Ok(left.sub(&right, ord))
}

fn coprime(a: &CommMonomial, b: &CommMonomial) -> bool {
    a.exponents().iter().zip(b.exponents()).all(|(x, y)| *x == 0 || *y == 0)
}

/// Buchberger's algorithm with the normal selection strategy: pairs by
/// ascending lcm degree, ties by pair index. New elements are appended as
/// computed, without interreduction.
pub fn comm_buchberger(gens: &[CommPoly], ord: &MonomialOrder) -> Result<CommGB> {
    if gens.iter().any(|g| g.is_zero()) {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut basis: Vec<CommPoly> = gens.iter().map(|g| g.reorder(ord)).collect();
    let mut pairs: Vec<(u32, usize, usize)> = Vec::new();
    let push_pairs = |basis: &[CommPoly], pairs: &mut Vec<(u32, usize, usize)>, j: usize| {
        let lj = basis[j].leading_monomial().expect("nonzero");
        for (i, bi) in basis[..j].iter().enumerate() {
            let li = bi.leading_monomial().expect("nonzero");
            pairs.push((ord.comm_degree(&li.lcm(lj)), i, j));
        }
    };
    for j in 0..basis.len() {
        push_pairs(&basis, &mut pairs, j);
    }
    while !pairs.is_empty() {
        let k = (0..pairs.len())
            .min_by(|&a, &b| pairs[a].cmp(&pairs[b]))
            .expect("nonempty");
        let (_, i, j) = pairs.swap_remove(k);
        let (li, lj) = (
            basis[i].leading_monomial().expect("nonzero"),
            basis[j].leading_monomial().expect("nonzero"),
        );
        if coprime(li, lj) {
            continue;
        }
        let s = comm_s_polynomial(&basis[i], &basis[j], ord)?;
        let h = comm_normal_form(&s, &basis, ord);
        if !h.is_zero() {
            basis.push(h);
            push_pairs(&basis, &mut pairs, basis.len() - 1);
        }
    }
    Ok(CommGB {
        basis,
        order: ord.clone(),
        reduced: false,
    })
}

/// Monic, interreduced basis sorted by leading monomial, smallest first.
pub fn comm_reduce_basis(g: &CommGB) -> CommGB {
    let ord = &g.order;
    let mut kept: Vec<CommPoly> = Vec::new();
    for (k, p) in g.basis.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let lp = p.leading_monomial().expect("nonzero");
        let redundant = g.basis.iter().enumerate().any(|(j, q)| {
            j != k
                && q.leading_monomial()
                    .is_some_and(|lq| lq.divides(lp) && (lq != lp || j < k))
        });
        if !redundant {
            kept.push(p.clone());
        }
    }
    let mut out: Vec<CommPoly> = (0..kept.len())
        .map(|k| {
            let p = &kept[k];
            let (lm, lc) = p.leading().expect("nonzero");
            let head = CommPoly::monomial(lm.clone(), lc.clone());
            let tail = p.sub(&head, ord);
            let others: Vec<CommPoly> = kept
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, q)| q.clone())
                .collect();
            head.add(&comm_normal_form(&tail, &others, ord), ord).monic()
        })
        .collect();
    out.sort_by(|a, b| {
        let (la, lb) = (
            a.leading_monomial().expect("nonzero"),
            b.leading_monomial().expect("nonzero"),
        );
        la.cmp_in(lb, ord)
    });
    CommGB {
        basis: out,
        order: ord.clone(),
        reduced: true,
    }
}

/// True when every S-polynomial of basis pairs reduces to zero.
pub fn comm_is_groebner(basis: &[CommPoly], ord: &MonomialOrder) -> Result<bool> {
    for j in 0..basis.len() {
        for i in 0..j {
            let s = comm_s_polynomial(&basis[i], &basis[j], ord)?;
            if !comm_normal_form(&s, basis, ord).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Monomials of degree at most `max_degree` divisible by no leading
/// monomial, grouped by degree.
pub fn comm_normal_monomials(g: &CommGB, max_degree: u32) -> Vec<Vec<CommMonomial>> {
    let ord = &g.order;
    let n = ord.ngens();
    let leads: Vec<&CommMonomial> = g.basis.iter().filter_map(|p| p.leading_monomial()).collect();
    let mut by_degree: Vec<Vec<CommMonomial>> = vec![Vec::new(); max_degree as usize + 1];
    let mut stack = vec![(0usize, vec![0u32; n], 0u32)];
    while let Some((var, exps, deg)) = stack.pop() {
        if var == n {
            let m = CommMonomial::new(exps);
            if !leads.iter().any(|l| l.divides(&m)) {
                by_degree[deg as usize].push(m);
            }
            continue;
        }
        let w = ord.weights()[var];
        let mut e = 0u32;
        while deg + e * w <= max_degree {
            let mut next = exps.clone();
            next[var] = e;
            stack.push((var + 1, next, deg + e * w));
            e += 1;
        }
    }
    for row in by_degree.iter_mut() {
        row.sort_by(|a, b| b.cmp_in(a, ord));
    }
    by_degree
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::presentation::parse_presentation;

    fn ring() -> crate::presentation::Presentation {
        parse_presentation("commutative; generators x1 x2; order deglex x1 > x2;").unwrap()
    }

    #[test]
    fn reduce_once_examples() {
        let p = parse_presentation("commutative; generators x y; order deglex x > y;").unwrap();
        let f = p.parse_comm_poly("x^3 - y^2").unwrap();
        let g = p.parse_comm_poly("x^3 - x + 1").unwrap();
        let r = comm_reduce_once(&f, &g, &p.order).unwrap().unwrap();
        assert_eq!(r, p.parse_comm_poly("x - y^2 - 1").unwrap());
        let s = comm_s_polynomial(&f, &g, &p.order).unwrap();
        assert_eq!(s, r);

        let q = ring();
        let f = q.parse_comm_poly("x1^3 + x2^3").unwrap();
        let g = q.parse_comm_poly("x1^2 + x2^2").unwrap();
        let r = comm_reduce_once(&f, &g, &q.order).unwrap().unwrap();
        assert_eq!(r, q.parse_comm_poly("x2^3 - x1*x2^2").unwrap());
        assert_eq!(comm_reduce_once(&g, &f, &q.order).unwrap(), None);
        assert_eq!(comm_normal_form(&f, std::slice::from_ref(&g), &q.order), r);
        assert!(comm_s_polynomial(&g, &g, &q.order).unwrap().is_zero());
    }

    #[test]
    fn worked_example_reduced_basis() {
        let q = ring();
        let gens = [
            q.parse_comm_poly("x1^2 + x2^2").unwrap(),
            q.parse_comm_poly("x1^3 + x2^3").unwrap(),
        ];
        let gb = comm_buchberger(&gens, &q.order).unwrap();
        assert!(comm_is_groebner(&gb.basis, &q.order).unwrap());
        let red = comm_reduce_basis(&gb);
        let expected: Vec<CommPoly> = ["x1^2 + x2^2", "x1*x2^2 - x2^3", "x2^4"]
            .iter()
            .map(|s| q.parse_comm_poly(s).unwrap())
            .collect();
        assert_eq!(red.basis, expected);
        let x14 = q.parse_comm_poly("x1^4").unwrap();
        assert!(comm_normal_form(&x14, &red.basis, &q.order).is_zero());
        let one = CommPoly::constant(2, int(1));
        assert!(!comm_normal_form(&one, &red.basis, &q.order).is_zero());
        assert_eq!(comm_reduce_basis(&red), red);
    }

    #[test]
    fn trivial_bases() {
        let q = ring();
        let gens = [q.parse_comm_poly("x1").unwrap(), q.parse_comm_poly("x2").unwrap()];
        let gb = comm_buchberger(&gens, &q.order).unwrap();
        assert_eq!(gb.basis, gens.to_vec());
        let two_x = q.parse_comm_poly("2*x1").unwrap();
        let red = comm_reduce_basis(&CommGB {
            basis: vec![two_x],
            order: q.order.clone(),
            reduced: false,
        });
        assert_eq!(red.basis, vec![q.parse_comm_poly("x1").unwrap()]);
        assert_eq!(
            comm_buchberger(&[CommPoly::zero()], &q.order),
            Err(AlgebraError::ZeroPolynomial)
        );
    }
}
