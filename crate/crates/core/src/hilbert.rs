//! Hilbert series from normal words, from chains, and for free products.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::algebra::{MonomialOrder, Scalar, Word};
use crate::chains::{enumerate_chains, ChainSet};
use crate::commutative::{comm_normal_monomials, CommGB};
use crate::error::{AlgebraError, Result};
use crate::noncommutative::{normal_word_counts, NcGB};
use crate::series::SeriesTrunc;

/// A Gröbner basis whose normal words can be counted by degree.
pub trait NormalWordCounts {
    /// Number of normal words in each degree `0..=max_degree`.
    fn normal_counts(&self, max_degree: u32) -> Result<Vec<BigUint>>;
}

impl NormalWordCounts for NcGB {
    fn normal_counts(&self, max_degree: u32) -> Result<Vec<BigUint>> {
        if self.basis().iter().any(|g| !g.is_homogeneous(self.order())) {
            return Err(AlgebraError::Inhomogeneous);
        }
        normal_word_counts(self, max_degree)
    }
}

impl NormalWordCounts for CommGB {
    fn normal_counts(&self, max_degree: u32) -> Result<Vec<BigUint>> {
        if self.basis.iter().any(|g| !g.is_homogeneous(&self.order)) {
            return Err(AlgebraError::Inhomogeneous);
        }
        Ok(comm_normal_monomials(self, max_degree)
            .iter()
            .map(|row| BigUint::from(row.len()))
            .collect())
    }
}

fn from_counts<I: IntoIterator<Item = BigUint>>(counts: I) -> SeriesTrunc {
    SeriesTrunc::new(counts.into_iter().map(|c| Scalar::from_integer(c.into())).collect())
}

/// Hilbert series truncated at `d`, counting normal words degree by degree.
pub fn hilbert_from_normal_words<G: NormalWordCounts + ?Sized>(g: &G, d: u32) -> Result<SeriesTrunc> {
    Ok(from_counts(g.normal_counts(d)?))
}

/// Highest degree that the levels present in `cs` fully account for.
///
/// A chain at level `n + 1` extends a level-`n` chain by a nonempty tail, so
/// once the top level has no chain of degree `<= d`, no higher level does
/// either. Independently, a level-`n` chain has at least `n + 1` letters.
pub fn chain_horizon(cs: &ChainSet) -> u32 {
    let top = cs.max_level() as i32;
    let min_weight = cs.weights().iter().copied().min().unwrap_or(1);
    let by_length = (cs.max_level() as u32 + 2) * min_weight - 1;
    let by_top = match cs.min_degree(top) {
        Some(m) => m - 1,
        None => cs.max_degree(),
    };
    by_length.max(by_top).min(cs.max_degree())
}

/// Hilbert series as the inverse of `Σ (-1)^(n+1) H_{C_n}`, truncated at `d`.
pub fn hilbert_from_chains(cs: &ChainSet, d: u32) -> Result<SeriesTrunc> {
    if d > chain_horizon(cs) {
        return Err(AlgebraError::InsufficientChains {
            max_level: cs.max_level(),
            degree: d,
        });
    }
    let mut alt = vec![Scalar::zero(); d as usize + 1];
    for (k, row) in cs.counts().iter().enumerate() {
        let sign = if k % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        for (deg, &n) in row.iter().enumerate().take(d as usize + 1) {
            if n > 0 {
                alt[deg] += &sign * Scalar::from_integer(n.into());
            }
        }
    }
    SeriesTrunc::new(alt).inverse()
}

/// Enumerates enough chains of `f` to certify `hilbert_from_chains` up to `d`.
pub fn chains_for_hilbert(f: &[Word], ord: &MonomialOrder, d: u32) -> Result<ChainSet> {
    enumerate_chains(f, ord, d.max(1) as usize, d)
}

/// `(H_A^{-1} + H_B^{-1} - 1)^{-1}`.
pub fn free_product_series(ha: &SeriesTrunc, hb: &SeriesTrunc) -> Result<SeriesTrunc> {
    if !ha.coeff(0).is_one() || !hb.coeff(0).is_one() {
        return Err(AlgebraError::ConstantTermNotOne);
    }
    let one = SeriesTrunc::one(ha.order());
    ha.inverse()?.add(&hb.inverse()?)?.sub(&one)?.inverse()
}

/// `Π (1 - t^{|x|})^{-1}`: the polynomial ring on generators of the given
/// degrees.
pub fn generator_product_series(degrees: &[u32], d: u32) -> SeriesTrunc {
    let mut acc = SeriesTrunc::one(d as usize);
    for &g in degrees {
        assert!(g >= 1, "generator degrees must be positive");
        let mut geo = SeriesTrunc::zero(d as usize);
        for k in (0..=d as usize).step_by(g as usize) {
            geo = set(geo, k, Scalar::one());
        }
        acc = acc.mul(&geo).expect("same order");
    }
    acc
}

/// `Π (1 + t^{|x|})`: the exterior algebra on generators of the given degrees.
pub fn exterior_product_series(degrees: &[u32], d: u32) -> SeriesTrunc {
    let mut acc = SeriesTrunc::one(d as usize);
    for &g in degrees {
        assert!(g >= 1, "generator degrees must be positive");
        let mut factor = SeriesTrunc::one(d as usize);
        if g <= d {
            factor = set(factor, g as usize, Scalar::one());
        }
        acc = acc.mul(&factor).expect("same order");
    }
    acc
}

fn set(s: SeriesTrunc, k: usize, c: Scalar) -> SeriesTrunc {
    let mut v = s.coeffs().to_vec();
    v[k] = c;
    SeriesTrunc::new(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutative::{comm_buchberger, comm_reduce_basis};
    use crate::noncommutative::nc_buchberger;
    use crate::presentation::parse_presentation;

    #[test]
    fn x2_plus_y2_pipelines() {
        let p = parse_presentation("generators x y; order deglex x > y; relations x^2 + y^2;").unwrap();
        let gb = nc_buchberger(p.nc_relations().unwrap(), &p.order, 10).unwrap();
        let h = hilbert_from_normal_words(&gb, 8).unwrap();
        assert_eq!(h, SeriesTrunc::from_ints(1..=9));
        let cs = chains_for_hilbert(&gb.leading_words(), &p.order, 8).unwrap();
        assert_eq!(hilbert_from_chains(&cs, 8).unwrap(), h);
    }

    #[test]
    fn cube_and_free() {
        let p = parse_presentation("generators x; relations x^3;").unwrap();
        let gb = nc_buchberger(p.nc_relations().unwrap(), &p.order, 6).unwrap();
        let cs = chains_for_hilbert(&gb.leading_words(), &p.order, 6).unwrap();
        assert_eq!(
            hilbert_from_chains(&cs, 6).unwrap(),
            SeriesTrunc::from_ints([1, 1, 1, 0, 0, 0, 0])
        );
        let free = parse_presentation("generators a b c;").unwrap();
        let cs = chains_for_hilbert(&[], &free.order, 4).unwrap();
        assert_eq!(
            hilbert_from_chains(&cs, 4).unwrap(),
            SeriesTrunc::from_ints([1, 3, 9, 27, 81])
        );
    }

    #[test]
    fn shallow_chain_set_is_rejected() {
        let p = parse_presentation("generators x; relations x^2;").unwrap();
        let cs = enumerate_chains(
            &[p.parse_nc_poly("x^2").unwrap().leading_monomial().unwrap().clone()],
            &p.order,
            2,
            8,
        )
        .unwrap();
        assert_eq!(
            hilbert_from_chains(&cs, 8),
            Err(AlgebraError::InsufficientChains {
                max_level: 2,
                degree: 8
            })
        );
        assert!(hilbert_from_chains(&cs, 3).is_ok());
    }

    #[test]
    fn commutative_plane() {
        let p = parse_presentation("commutative; generators x y;").unwrap();
        let gb = comm_reduce_basis(&comm_buchberger(&[], &p.order).unwrap());
        assert_eq!(
            hilbert_from_normal_words(&gb, 5).unwrap(),
            SeriesTrunc::from_ints(1..=6)
        );
    }

    #[test]
    fn product_formulas() {
        assert_eq!(generator_product_series(&[1, 1], 4), SeriesTrunc::from_ints(1..=5));
        assert_eq!(
            exterior_product_series(&[1, 1, 1], 4),
            SeriesTrunc::from_ints([1, 3, 3, 1, 0])
        );
        assert_eq!(
            generator_product_series(&[3], 7),
            SeriesTrunc::from_ints([1, 0, 0, 1, 0, 0, 1, 0])
        );
        let dual = SeriesTrunc::from_ints([1, 1, 0, 0, 0, 0]);
        assert_eq!(
            free_product_series(&dual, &dual).unwrap(),
            SeriesTrunc::from_ints([1, 2, 2, 2, 2, 2])
        );
        let unit = SeriesTrunc::one(5);
        assert_eq!(free_product_series(&dual, &unit).unwrap(), dual);
        assert_eq!(
            free_product_series(&SeriesTrunc::from_ints([2, 0]), &unit.clone()),
            Err(AlgebraError::ConstantTermNotOne)
        );
    }
}
