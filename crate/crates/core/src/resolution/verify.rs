//! Checks that a built resolution is a complex, is exact, and that every
//! splitting-map call inverted the differential.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{render_word, Key, Resolution, Work};
use crate::algebra::Word;
use crate::linalg::{Echelon, SparseRow};
use crate::matcher::Matcher;
use crate::noncommutative::normal_words;

/// How the ranks in an exactness check were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMethod {
    /// Full exact elimination of both blocks.
    Elimination,
    /// Counting distinct leading terms: `d_n(g ⊗ w)` leads with
    /// `parent(g) ⊗ tail(g)·w` whenever that word is normal, so those rows
    /// are already in echelon form. Exactness follows when the two counts
    /// fill the whole graded piece.
    LeadingTerms,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Largest number of rows (both blocks together) eliminated exactly.
    pub elimination_budget: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            elimination_budget: 2500,
        }
    }
}

/// Exactness of `C_{level+1} ⊗ A → C_level ⊗ A → C_{level-1} ⊗ A` in one
/// degree; level `-1` is the augmented end `C_0 ⊗ A → A → K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessCheck {
    pub level: i32,
    pub degree: u32,
    #[serde(serialize_with = "decimal")]
    pub dimension: BigUint,
    /// Rank of the map out of this piece.
    #[serde(serialize_with = "decimal")]
    pub rank_out: BigUint,
    /// Rank of the map into this piece.
    #[serde(serialize_with = "decimal")]
    pub rank_in: BigUint,
    pub method: RankMethod,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DdFailure {
    pub level: i32,
    pub degree: u32,
    pub chain: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub max_level: usize,
    pub max_degree: u32,
    /// Chains `g` with `d_{n-1} d_n (g ⊗ 1) ≠ 0`.
    pub dd_failures: Vec<DdFailure>,
    /// Chains whose differential does not lead with `parent ⊗ tail`.
    pub leading_failures: Vec<String>,
    pub exactness: Vec<ExactnessCheck>,
    pub kernel_checked: usize,
    /// Indices into the kernel log with `d(i(u)) ≠ u`.
    pub kernel_failures: Vec<usize>,
    /// Degrees where `Σ (-1)^(n+1) dim (C_n ⊗ A)_d = [d = 0]` was checked.
    pub euler_degrees: Vec<u32>,
    pub euler_failures: Vec<u32>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.dd_failures.is_empty()
            && self.leading_failures.is_empty()
            && self.exactness.iter().all(|c| c.exact)
            && self.kernel_failures.is_empty()
            && self.euler_failures.is_empty()
    }
}

fn decimal<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

/// Runs every check on `res` up to its built level and degree.
pub fn verify_resolution(res: &Resolution, opts: &VerifyOptions) -> VerificationReport {
    let max_level = res.max_level();
    let max_degree = res.max_degree();
    let chains = res.chains();
    let names = res.names();

    let dd_failures: Vec<DdFailure> = (0..=max_level as i32)
        .flat_map(|n| (0..chains.level(n).len()).map(move |i| (n, i)))
        .collect::<Vec<_>>()
        .par_iter()
        .filter_map(|&(n, i)| {
            let image = res.keys.work(&res.diffs[n as usize][i]);
            let dd = res.apply_d(n - 1, &image);
            (!dd.is_empty()).then(|| DdFailure {
                level: n,
                degree: chains.level(n)[i].degree,
                chain: render_word(&chains.level(n)[i].word, names),
            })
        })
        .collect();

    let mut leading_failures = Vec::new();
    for n in 0..=max_level as i32 {
        for (i, c) in chains.level(n).iter().enumerate() {
            let parent = &chains.level(n - 1)[c.parent.expect("parent")];
            let ok = res.diffs[n as usize][i]
                .leading()
                .is_some_and(|t| t.chain == parent.word && t.word.letters() == c.tail() && t.coeff.is_one());
            if !ok {
                leading_failures.push(render_word(&c.word, names));
            }
        }
    }

    let counts = Counts::new(res);
    let words = NormalWordStore::new(res, &counts, opts.elimination_budget);
    let exactness: Vec<ExactnessCheck> = (-1..max_level as i32)
        .flat_map(|n| (0..=max_degree).map(move |d| (n, d)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(n, d)| exactness_check(res, &counts, &words, opts, n, d, leading_failures.is_empty()))
        .collect();

    let kernel_failures: Vec<usize> = res
        .kernel_log()
        .par_iter()
        .enumerate()
        .filter_map(|(k, rec)| (res.apply_differential(&rec.output) != rec.input).then_some(k))
        .collect();

    let min_weight = chains.weights().iter().copied().min().unwrap_or(1);
    let top_min = chains.min_degree(max_level as i32);
    let mut euler_degrees = Vec::new();
    let mut euler_failures = Vec::new();
    for d in 0..=max_degree {
        let beyond_top = top_min.is_none_or(|m| m > d) || (max_level as u32 + 2) * min_weight > d;
        if !beyond_top {
            continue;
        }
        euler_degrees.push(d);
        let mut sum = BigInt::zero();
        for n in -1..=max_level as i32 {
            let dim = BigInt::from(counts.dimension(n, d));
            if (n + 1) % 2 == 0 {
                sum += dim;
            } else {
                sum -= dim;
            }
        }
        let expected = if d == 0 { BigInt::one() } else { BigInt::zero() };
        if sum != expected {
            euler_failures.push(d);
        }
    }

    VerificationReport {
        max_level,
        max_degree,
        dd_failures,
        leading_failures,
        exactness,
        kernel_checked: res.kernel_log().len(),
        kernel_failures,
        euler_degrees,
        euler_failures,
    }
}

/// Normal-word counts from each automaton state, and the per-chain data
/// needed for dimension and leading-term counts.
struct Counts<'a> {
    res: &'a Resolution,
    table: Vec<Vec<BigUint>>,
    tail_states: Vec<Vec<u32>>,
}

impl<'a> Counts<'a> {
    fn new(res: &'a Resolution) -> Self {
        let m = res.chains().matcher();
        let table = m.avoid_counts(res.chains().weights(), res.max_degree());
        let tail_states = (0..=res.max_level() as i32)
            .map(|n| {
                res.chains()
                    .level(n)
                    .iter()
                    .map(|c| m.walk(c.tail()).expect("chain tails are normal"))
                    .collect()
            })
            .collect();
        Counts {
            res,
            table,
            tail_states,
        }
    }

    /// `dim (C_n ⊗ A)_d`.
    fn dimension(&self, n: i32, d: u32) -> BigUint {
        self.res
            .chains()
            .level(n)
            .iter()
            .filter(|c| c.degree <= d)
            .map(|c| self.table[Matcher::ROOT as usize][(d - c.degree) as usize].clone())
            .sum()
    }

    /// Number of pairs `g ⊗ w` of degree `d` with `tail(g)·w` normal.
    fn leading_rank(&self, n: i32, d: u32) -> BigUint {
        if n < 0 {
            return if d == 0 { BigUint::one() } else { BigUint::zero() };
        }
        self.res
            .chains()
            .level(n)
            .iter()
            .zip(&self.tail_states[n as usize])
            .filter(|(c, _)| c.degree <= d)
            .map(|(c, &s)| self.table[s as usize][(d - c.degree) as usize].clone())
            .sum()
    }
}

/// Normal words by degree, kept only up to a size cap.
struct NormalWordStore {
    by_degree: Vec<Vec<Word>>,
}

impl NormalWordStore {
    fn new(res: &Resolution, counts: &Counts<'_>, budget: usize) -> Self {
        let root = &counts.table[Matcher::ROOT as usize];
        let cap = BigUint::from(4 * budget);
        let mut total = BigUint::zero();
        let mut top = None;
        for (k, n) in root.iter().enumerate() {
            total += n;
            if total > cap {
                break;
            }
            top = Some(k as u32);
        }
        let by_degree = match top {
            Some(k) => normal_words(res.gb(), k).unwrap_or_default(),
            None => Vec::new(),
        };
        NormalWordStore { by_degree }
    }

    fn get(&self, k: u32) -> Option<&[Word]> {
        self.by_degree.get(k as usize).map(Vec::as_slice)
    }
}

fn exactness_check(
    res: &Resolution,
    counts: &Counts<'_>,
    words: &NormalWordStore,
    opts: &VerifyOptions,
    n: i32,
    d: u32,
    leads_ok: bool,
) -> ExactnessCheck {
    let dimension = counts.dimension(n, d);
    let lead_out = counts.leading_rank(n, d);
    let lead_in = counts.leading_rank(n + 1, d);
    let rows = &dimension + counts.dimension(n + 1, d);
    if rows <= BigUint::from(opts.elimination_budget) {
        if let (Some(r_out), Some(r_in)) = (block_rank(res, words, n, d), block_rank(res, words, n + 1, d)) {
            let (r_out, r_in) = (BigUint::from(r_out), BigUint::from(r_in));
            let exact = &dimension - &r_out == r_in && r_out == lead_out && r_in == lead_in;
            return ExactnessCheck {
                level: n,
                degree: d,
                dimension,
                rank_out: r_out,
                rank_in: r_in,
                method: RankMethod::Elimination,
                exact,
            };
        }
    }
    let exact = leads_ok && &lead_out + &lead_in == dimension;
    ExactnessCheck {
        level: n,
        degree: d,
        dimension,
        rank_out: lead_out,
        rank_in: lead_in,
        method: RankMethod::LeadingTerms,
        exact,
    }
}

/// Exact rank of `d_n` on `(C_n ⊗ A)_d`; `None` when the normal words
/// needed were not stored.
fn block_rank(res: &Resolution, words: &NormalWordStore, n: i32, d: u32) -> Option<usize> {
    if n < 0 {
        return Some(usize::from(d == 0));
    }
    let mut images: Vec<Work> = Vec::new();
    for (i, c) in res.chains().level(n).iter().enumerate() {
        if c.degree > d {
            continue;
        }
        for w in words.get(d - c.degree)? {
            images.push(res.d_generator_times(n, i, w.letters()));
        }
    }
    let mut cols: BTreeMap<&Key, usize> = BTreeMap::new();
    for img in &images {
        for k in img.keys() {
            cols.insert(k, 0);
        }
    }
    let index: HashMap<&Key, usize> = cols.keys().rev().enumerate().map(|(j, k)| (*k, j)).collect();
    let mut e = Echelon::new();
    for img in &images {
        let row: SparseRow = img.iter().rev().map(|(k, a)| (index[k], a.clone())).collect();
        e.insert(row);
    }
    Some(e.rank())
}
