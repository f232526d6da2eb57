//! Anick chains over an antichain of obstruction words.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::algebra::{MonomialOrder, Word};
use crate::error::{AlgebraError, Result};
use crate::matcher::Matcher;

/// An `n`-chain: `word = parent.word · tail`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    pub word: Word,
    pub tail_start: usize,
    pub level: i32,
    pub degree: u32,
    /// Index of the parent chain at `level - 1`.
    pub parent: Option<usize>,
}

impl Chain {
    pub fn tail(&self) -> &[u16] {
        &self.word.letters()[self.tail_start..]
    }
}

/// Chains at levels `-1..=max_level` of degree at most `max_degree`.
#[derive(Clone, Debug)]
pub struct ChainSet {
    obstructions: Vec<Word>,
    levels: Vec<Vec<Chain>>,
    index: Vec<HashMap<Word, usize>>,
    max_level: usize,
    max_degree: u32,
    weights: Vec<u32>,
    matcher: Matcher,
}

/// Checks the antichain condition and rejects empty or single-letter words.
pub fn check_obstructions(f: &[Word]) -> Result<()> {
    for (i, u) in f.iter().enumerate() {
        if u.is_empty() {
            return Err(AlgebraError::NotAntichain("empty word".into()));
        }
        if u.len() == 1 {
            return Err(AlgebraError::LetterObstruction(format!("{u:?}")));
        }
        for (j, v) in f.iter().enumerate() {
            if i != j && v.contains(u) {
                return Err(AlgebraError::NotAntichain(format!("{u:?} divides {v:?}")));
            }
        }
    }
    Ok(())
}

/// Enumerates every chain of level at most `max_level` and degree at most
/// `max_degree`. Level 1 is `F` itself.
pub fn enumerate_chains(f: &[Word], ord: &MonomialOrder, max_level: usize, max_degree: u32) -> Result<ChainSet> {
    check_obstructions(f)?;
    let ngens = ord.ngens();
    let matcher = Matcher::new(f, ngens);
    let mut levels: Vec<Vec<Chain>> = Vec::with_capacity(max_level + 2);
    levels.push(vec![Chain {
        word: Word::empty(),
        tail_start: 0,
        level: -1,
        degree: 0,
        parent: None,
    }]);
    levels.push(
        (0..ngens)
            .filter(|&g| ord.weights()[g] <= max_degree)
            .map(|g| Chain {
                word: Word::letter(g),
                tail_start: 0,
                level: 0,
                degree: ord.weights()[g],
                parent: Some(0),
            })
            .collect(),
    );
    for n in 1..=max_level {
        let prev = &levels[n];
        let children: Vec<Vec<Chain>> = prev
            .par_iter()
            .enumerate()
            .map(|(pi, parent)| extend(parent, pi, f, &matcher, ord, max_degree))
            .collect();
        let next: Vec<Chain> = children.into_iter().flatten().collect();
        let mut seen = HashSet::with_capacity(next.len());
        for c in &next {
            assert!(seen.insert(&c.word), "chain {:?} found twice", c.word);
        }
        levels.push(next);
    }
    let index = levels
        .iter()
        .map(|lv| lv.iter().enumerate().map(|(i, c)| (c.word.clone(), i)).collect())
        .collect();
    Ok(ChainSet {
        obstructions: f.to_vec(),
        levels,
        index,
        max_level,
        max_degree,
        weights: ord.weights().to_vec(),
        matcher,
    })
}

/// Children of one chain: for each obstruction `u` and each start `s` in the
/// parent tail `r` with `r[s..]` a proper prefix of `u`, the tail is the rest
/// of `u`, accepted when `r · tail` meets `F` only at its end.
fn extend(
    parent: &Chain,
    parent_index: usize,
    f: &[Word],
    matcher: &Matcher,
    ord: &MonomialOrder,
    max_degree: u32,
) -> Vec<Chain> {
    let r = parent.tail();
    let mut out: Vec<Chain> = Vec::new();
    for u in f {
        let u = u.letters();
        for s in 0..r.len() {
            let overlap = &r[s..];
            if overlap.len() >= u.len() || !u.starts_with(overlap) {
                continue;
            }
            let t = &u[overlap.len()..];
            let degree = parent.degree + ord.letters_degree(t);
            if degree > max_degree {
                continue;
            }
            let walked = matcher
                .walk(r)
                .and_then(|state| matcher.advance(state, &t[..t.len() - 1]));
            if walked.is_none() {
                continue;
            }
            let mut word = parent.word.letters().to_vec();
            word.extend_from_slice(t);
            out.push(Chain {
                word: Word::new(word),
                tail_start: parent.word.len(),
                level: parent.level + 1,
                degree,
                parent: Some(parent_index),
            });
        }
    }
    out.sort_by(|a, b| a.tail().cmp(b.tail()));
    out
}

impl ChainSet {
    pub fn obstructions(&self) -> &[Word] {
        &self.obstructions
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn matcher(&self) -> &Matcher {
        &self.matcher
    }

    /// Chains at `level`, which ranges over `-1..=max_level`.
    pub fn level(&self, level: i32) -> &[Chain] {
        usize::try_from(level + 1)
            .ok()
            .and_then(|i| self.levels.get(i))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn find(&self, level: i32, word: &Word) -> Option<usize> {
        let i = usize::try_from(level + 1).ok()?;
        self.index.get(i)?.get(word).copied()
    }

    /// `counts[level + 1][degree]` for levels `-1..=max_level`.
    pub fn counts(&self) -> Vec<Vec<u64>> {
        self.levels
            .iter()
            .map(|lv| {
                let mut row = vec![0u64; self.max_degree as usize + 1];
                for c in lv {
                    row[c.degree as usize] += 1;
                }
                row
            })
            .collect()
    }

    /// Number of chains at each level `1..=max_level`.
    pub fn totals(&self) -> Vec<usize> {
        self.levels[2..].iter().map(Vec::len).collect()
    }

    /// Smallest chain degree at `level`, if any chain exists there.
    pub fn min_degree(&self, level: i32) -> Option<u32> {
        self.level(level).iter().map(|c| c.degree).min()
    }
}

/// Decides whether `word` is a chain at `level` straight from the
/// definition, returning its tails `[g0, t1, ..., tn]` when it is.
pub fn is_chain(word: &Word, f: &[Word], level: i32) -> Option<Vec<Word>> {
    let w = word.letters();
    if level < 0 {
        return (level == -1 && w.is_empty()).then(Vec::new);
    }
    if w.is_empty() {
        return None;
    }
    let occurrences = |s: &[u16]| -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for u in f {
            let u = u.letters();
            if u.len() <= s.len() {
                for i in 0..=s.len() - u.len() {
                    if &s[i..i + u.len()] == u {
                        v.push((i, i + u.len()));
                    }
                }
            }
        }
        v
    };
    // dec[k][p]: tail sequences exhibiting w[..p] as a k-chain
    let n = level as usize;
    let mut dec: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![Vec::new(); w.len() + 1]; n + 1];
    dec[0][1].push(vec![0, 1]);
    for k in 1..=n {
        for p in 1..=w.len() {
            for q in 1..p {
                let t = &w[q..p];
                if !occurrences(t).is_empty() {
                    continue;
                }
                let prev = dec[k - 1][q].clone();
                for cuts in prev {
                    let r_start = cuts[cuts.len() - 2];
                    let rt = &w[r_start..p];
                    let occ = occurrences(rt);
                    if occ.len() == 1 && occ[0].1 == rt.len() {
                        let mut c = cuts.clone();
                        c.push(p);
                        dec[k][p].push(c);
                    }
                }
            }
        }
    }
    let found = &dec[n][w.len()];
    debug_assert!(found.len() <= 1, "chain decomposition not unique");
    found
        .first()
        .map(|cuts| cuts.windows(2).map(|ab| Word::new(w[ab[0]..ab[1]].to_vec())).collect())
}
