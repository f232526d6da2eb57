//! The resolution tensored with the base field: Tor and minimality.

use std::collections::BTreeMap;

use serde::Serialize;

use super::Resolution;
use crate::algebra::{Scalar, Word};
use crate::linalg::{rank, SparseRow};

/// `d_level ⊗_A K` as a scalar matrix from level-`level` chains to
/// level-`(level-1)` chains, indexed by enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensoredDifferential {
    pub level: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, Scalar)>,
}

impl TensoredDifferential {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Keeps, from each `d_n(g ⊗ 1)`, the terms whose algebra factor is `1`.
pub fn tensor_with_k(res: &Resolution) -> Vec<TensoredDifferential> {
    let chains = res.chains();
    (0..=res.max_level())
        .map(|n| {
            let mut entries = Vec::new();
            for (r, d) in res.differentials(n).iter().enumerate() {
                for t in d.terms() {
                    if t.word.is_empty() {
                        let c = chains.find(n as i32 - 1, &t.chain).expect("target chain is enumerated");
                        entries.push((r, c, t.coeff.clone()));
                    }
                }
            }
            entries.sort_by_key(|e| (e.0, e.1));
            TensoredDifferential {
                level: n,
                rows: chains.level(n as i32).len(),
                cols: chains.level(n as i32 - 1).len(),
                entries,
            }
        })
        .collect()
}

/// Homology of the tensored complex. Chain level `n` carries
/// `Tor_{n+1}(K, K)`; level `-1` is `Tor_0 = K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorTable {
    /// Highest chain level whose homology is determined (one below the
    /// built level, since it needs the next differential).
    pub top_level: i32,
    pub max_degree: u32,
    /// `dims[n + 1][d]` for chain levels `-1..=top_level`.
    pub dims: Vec<Vec<u64>>,
}

impl TorTable {
    /// Homology at chain level `n`, by degree.
    pub fn at_chain_level(&self, n: i32) -> Option<&[u64]> {
        usize::try_from(n + 1)
            .ok()
            .and_then(|i| self.dims.get(i))
            .map(Vec::as_slice)
    }

    /// `dim Tor_i` by degree.
    pub fn tor(&self, i: usize) -> Option<&[u64]> {
        self.at_chain_level(i as i32 - 1)
    }

    /// Total dimension at each chain level `1..=top_level`.
    pub fn chain_level_totals(&self) -> Vec<u64> {
        self.dims.iter().skip(2).map(|row| row.iter().sum()).collect()
    }
}

fn ranks_by_degree(res: &Resolution, t: &TensoredDifferential) -> BTreeMap<u32, usize> {
    let chains = res.chains().level(t.level as i32);
    let mut rows: BTreeMap<u32, Vec<SparseRow>> = BTreeMap::new();
    let mut current: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for (r, c, a) in &t.entries {
        current.entry(*r).or_default().push((*c, a.clone()));
    }
    for (r, row) in current {
        rows.entry(chains[r].degree).or_default().push(row);
    }
    rows.into_iter().map(|(d, rs)| (d, rank(rs))).collect()
}

/// `dim Tor` per chain level and degree, levels `-1..=max_level - 1`.
pub fn tor_dimensions(res: &Resolution) -> TorTable {
    let tensored = tensor_with_k(res);
    let ranks: Vec<BTreeMap<u32, usize>> = tensored.iter().map(|t| ranks_by_degree(res, t)).collect();
    let rank_at = |n: i32, d: u32| -> u64 {
        usize::try_from(n)
            .ok()
            .and_then(|i| ranks.get(i))
            .and_then(|m| m.get(&d))
            .map_or(0, |&r| r as u64)
    };
    let counts = res.chains().counts();
    let top_level = res.max_level() as i32 - 1;
    let dims = (-1..=top_level)
        .map(|n| {
            (0..=res.max_degree())
                .map(|d| counts[(n + 1) as usize][d as usize] - rank_at(n, d) - rank_at(n + 1, d))
                .collect()
        })
        .collect();
    TorTable {
        top_level,
        max_degree: res.max_degree(),
        dims,
    }
}

/// A nonzero entry of a tensored differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub level: usize,
    pub chain: Word,
    pub target: Word,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimality {
    pub minimal: bool,
    /// First nonzero entry, by level then row then column.
    pub witness: Option<Witness>,
}

/// Minimal when every tensored differential up to the built level is zero.
pub fn is_minimal(res: &Resolution) -> Minimality {
    let chains = res.chains();
    let witness = tensor_with_k(res).into_iter().find_map(|t| {
        t.entries.first().map(|(r, c, a)| Witness {
            level: t.level,
            chain: chains.level(t.level as i32)[*r].word.clone(),
            target: chains.level(t.level as i32 - 1)[*c].word.clone(),
            coeff: a.clone(),
        })
    });
    Minimality {
        minimal: witness.is_none(),
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{make_bn, parse_presentation};
    use crate::resolution::build_resolution;

    #[test]
    fn free_algebra_tor() {
        let p = parse_presentation("generators a b c;").unwrap();
        let res = build_resolution(&p, 2, 4).unwrap();
        let tor = tor_dimensions(&res);
        assert_eq!(tor.tor(0).unwrap()[0], 1);
        assert_eq!(tor.tor(1).unwrap().iter().sum::<u64>(), 3);
        assert_eq!(tor.tor(2).unwrap().iter().sum::<u64>(), 0);
        assert!(is_minimal(&res).minimal);
    }

    #[test]
    fn x2xy_is_not_minimal() {
        let p = parse_presentation("generators x y; order deglex x > y; relations x^2 - x*y;").unwrap();
        let res = build_resolution(&p, 3, 8).unwrap();
        let m = is_minimal(&res);
        assert!(!m.minimal);
        assert_eq!(m.witness.unwrap().level, 2);
    }

    #[test]
    fn b1_small_window() {
        let res = build_resolution(&make_bn(1).unwrap(), 3, 10).unwrap();
        assert!(is_minimal(&res).minimal);
        let tor = tor_dimensions(&res);
        let counts = res.chains().counts();
        for n in -1..=tor.top_level {
            assert_eq!(tor.at_chain_level(n).unwrap(), counts[(n + 1) as usize].as_slice());
        }
    }
}
