use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::MonomialOrder;

/// Behaviour shared by free-monoid words and commutative exponent vectors.
pub trait Monomial: Clone + Eq + Hash + fmt::Debug {
    fn mul(&self, other: &Self) -> Self;
    fn cmp_in(&self, other: &Self, ord: &MonomialOrder) -> Ordering;
    fn degree_in(&self, ord: &MonomialOrder) -> u32;
    fn is_one(&self) -> bool;
    /// Letters with multiplicity, left to right, used for rendering.
    fn factors(&self) -> Vec<(usize, u32)>;
}

/// A word in the free monoid on the generators; the empty word is 1.
///
/// The derived `Ord` is plain lexicographic order on generator indices and
/// only serves as a deterministic tie-break. Monomial comparisons go through
/// [`MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<u16>);

impl Word {
    pub fn new(letters: Vec<u16>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: usize) -> Self {
        Word(vec![g as u16])
    }

    pub fn from_indices(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&g| g as u16).collect())
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn concat3(left: &[u16], mid: &[u16], right: &[u16]) -> Word {
        let mut v = Vec::with_capacity(left.len() + mid.len() + right.len());
        v.extend_from_slice(left);
        v.extend_from_slice(mid);
        v.extend_from_slice(right);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// True when `needle` occurs as a contiguous subword.
    pub fn contains(&self, needle: &Word) -> bool {
        needle.is_empty() || self.0.windows(needle.len()).any(|w| w == needle.0.as_slice())
    }
}

impl From<Vec<u16>> for Word {
    fn from(v: Vec<u16>) -> Self {
        Word(v)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

impl Monomial for Word {
    fn mul(&self, other: &Self) -> Self {
        self.concat(other)
    }

    fn cmp_in(&self, other: &Self, ord: &MonomialOrder) -> Ordering {
        ord.cmp_words(self, other)
    }

    fn degree_in(&self, ord: &MonomialOrder) -> u32 {
        ord.word_degree(self)
    }

    fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn factors(&self) -> Vec<(usize, u32)> {
        let mut out: Vec<(usize, u32)> = Vec::new();
        for &g in &self.0 {
            match out.last_mut() {
                Some((h, e)) if *h == g as usize => *e += 1,
                _ => out.push((g as usize, 1)),
            }
        }
        out
    }
}

/// Exponent vector of a commutative monomial, one entry per generator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CommMonomial(Vec<u32>);

impl CommMonomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        CommMonomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        CommMonomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, g: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[g] = e;
        CommMonomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn divides(&self, other: &CommMonomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &CommMonomial) -> CommMonomial {
        CommMonomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &CommMonomial) -> CommMonomial {
        CommMonomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Debug for CommMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mono{:?}", self.0)
    }
}

impl Monomial for CommMonomial {
    fn mul(&self, other: &Self) -> Self {
        CommMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn cmp_in(&self, other: &Self, ord: &MonomialOrder) -> Ordering {
        ord.cmp_comm(self, other)
    }

    fn degree_in(&self, ord: &MonomialOrder) -> u32 {
        ord.comm_degree(self)
    }

    fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn factors(&self) -> Vec<(usize, u32)> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(g, &e)| (g, e))
            .collect()
    }
}
