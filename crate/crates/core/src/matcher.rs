//! Aho–Corasick automaton over generator letters.
//!
//! Used for subword tests against a set of leading words: normal-form
//! reduction, normal-word counting and chain decomposition all walk it.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::algebra::Word;

/// Dense-transition automaton recognising every occurrence of a set of
/// patterns.
#[derive(Clone, Debug)]
pub struct Matcher {
    nletters: usize,
    delta: Vec<u32>,
    depth: Vec<u32>,
    /// Longest pattern that is a suffix of the state's string, if any.
    hit: Vec<Option<u32>>,
    patterns: Vec<Word>,
}

/// One occurrence of pattern `pattern` at `start..end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub pattern: usize,
    pub start: usize,
    pub end: usize,
}

impl Matcher {
    pub const ROOT: u32 = 0;

    /// Builds the automaton. Empty patterns are ignored.
    pub fn new(patterns: &[Word], nletters: usize) -> Self {
        let mut trie: Vec<Vec<u32>> = vec![vec![u32::MAX; nletters]];
        let mut depth = vec![0u32];
        let mut own: Vec<Option<u32>> = vec![None];
        for (pi, p) in patterns.iter().enumerate() {
            if p.is_empty() {
                continue;
            }
            let mut s = 0usize;
            for &l in p.letters() {
                let next = trie[s][l as usize];
                s = if next == u32::MAX {
                    trie.push(vec![u32::MAX; nletters]);
                    depth.push(depth[s] + 1);
                    own.push(None);
                    let id = trie.len() - 1;
                    trie[s][l as usize] = id as u32;
                    id
                } else {
                    next as usize
                };
            }
            if own[s].is_none() {
                own[s] = Some(pi as u32);
            }
        }
        let nstates = trie.len();
        let mut delta = vec![0u32; nstates * nletters];
        let mut fail = vec![0u32; nstates];
        let mut hit = own.clone();
        let mut queue = VecDeque::new();
        for l in 0..nletters {
            let t = trie[0][l];
            if t == u32::MAX {
                delta[l] = 0;
            } else {
                delta[l] = t;
                fail[t as usize] = 0;
                queue.push_back(t as usize);
            }
        }
        while let Some(s) = queue.pop_front() {
            let f = fail[s] as usize;
            if hit[s].is_none() {
                hit[s] = hit[f];
            }
            for l in 0..nletters {
                let t = trie[s][l];
                if t == u32::MAX {
                    delta[s * nletters + l] = delta[f * nletters + l];
                } else {
                    delta[s * nletters + l] = t;
                    fail[t as usize] = delta[f * nletters + l];
                    queue.push_back(t as usize);
                }
            }
        }
        Matcher {
            nletters,
            delta,
            depth,
            hit,
            patterns: patterns.to_vec(),
        }
    }

    pub fn patterns(&self) -> &[Word] {
        &self.patterns
    }

    pub fn nletters(&self) -> usize {
        self.nletters
    }

    pub fn nstates(&self) -> usize {
        self.depth.len()
    }

    #[inline]
    pub fn step(&self, state: u32, letter: u16) -> u32 {
        self.delta[state as usize * self.nletters + letter as usize]
    }

    /// Pattern ending at this state, if any (the longest one).
    #[inline]
    pub fn hit(&self, state: u32) -> Option<usize> {
        self.hit[state as usize].map(|p| p as usize)
    }

    /// Reads `letters` from `state`; `None` as soon as a pattern completes.
    #[inline]
    pub fn advance(&self, state: u32, letters: &[u16]) -> Option<u32> {
        let mut s = state;
        for &l in letters {
            s = self.step(s, l);
            if self.hit[s as usize].is_some() {
                return None;
            }
        }
        Some(s)
    }

    /// The occurrence that ends earliest (longest pattern on ties).
    pub fn find_first(&self, letters: &[u16]) -> Option<Occurrence> {
        let mut s = Self::ROOT;
        for (i, &l) in letters.iter().enumerate() {
            s = self.step(s, l);
            if let Some(p) = self.hit(s) {
                let end = i + 1;
                return Some(Occurrence {
                    pattern: p,
                    start: end - self.patterns[p].len(),
                    end,
                });
            }
        }
        None
    }

    /// Every occurrence of every pattern, ordered by end then start.
    pub fn find_all(&self, letters: &[u16]) -> Vec<Occurrence> {
        let mut out = Vec::new();
        for end in 1..=letters.len() {
            for (pi, p) in self.patterns.iter().enumerate() {
                let n = p.len();
                if n > 0 && n <= end && &letters[end - n..end] == p.letters() {
                    out.push(Occurrence {
                        pattern: pi,
                        start: end - n,
                        end,
                    });
                }
            }
        }
        out.sort_by_key(|o| (o.end, o.start));
        out
    }

    pub fn is_normal(&self, letters: &[u16]) -> bool {
        self.advance(Self::ROOT, letters).is_some()
    }

    /// State reached after reading `letters`, or `None` if a pattern occurs.
    pub fn walk(&self, letters: &[u16]) -> Option<u32> {
        self.advance(Self::ROOT, letters)
    }

    /// `table[s][d]` = number of words `w` of weighted degree `d` such that
    /// reading `w` from state `s` meets no pattern.
    pub fn avoid_counts(&self, weights: &[u32], max_degree: u32) -> Vec<Vec<BigUint>> {
        let n = self.nstates();
        let maxd = max_degree as usize;
        let mut table = vec![vec![BigUint::zero(); maxd + 1]; n];
        for row in table.iter_mut() {
            row[0] = BigUint::one();
        }
        for d in 1..=maxd {
            for s in 0..n {
                let mut acc = BigUint::zero();
                for (l, &w) in weights.iter().enumerate().take(self.nletters) {
                    let w = w as usize;
                    if w > d {
                        continue;
                    }
                    let t = self.step(s as u32, l as u16);
                    if self.hit(t).is_none() {
                        acc += &table[t as usize][d - w];
                    }
                }
                table[s][d] = acc;
            }
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[u16]) -> Word {
        Word::new(l.to_vec())
    }

    #[test]
    fn finds_earliest_end() {
        let m = Matcher::new(&[w(&[0, 1]), w(&[1, 1, 0])], 2);
        let occ = m.find_first(&[1, 1, 0, 1]).unwrap();
        assert_eq!((occ.pattern, occ.start, occ.end), (1, 0, 3));
        assert!(!m.is_normal(&[1, 0, 0, 0, 1]));
        assert!(m.is_normal(&[1, 0, 0]));
    }

    #[test]
    fn overlapping_occurrences() {
        let m = Matcher::new(&[w(&[0, 0])], 1);
        let all = m.find_all(&[0, 0, 0]);
        assert_eq!(all.len(), 2);
        assert_eq!((all[0].start, all[1].start), (0, 1));
    }

    #[test]
    fn counts_match_enumeration() {
        let pats = [w(&[0, 0]), w(&[0, 1, 1])];
        let m = Matcher::new(&pats, 2);
        let table = m.avoid_counts(&[1, 1], 8);
        for (d, expected) in table[0].iter().enumerate() {
            let mut count = 0u64;
            for code in 0..(1u32 << d) {
                let letters: Vec<u16> = (0..d).map(|i| ((code >> i) & 1) as u16).collect();
                if m.is_normal(&letters) {
                    count += 1;
                }
            }
            assert_eq!(expected, &BigUint::from(count), "degree {d}");
        }
    }
}
