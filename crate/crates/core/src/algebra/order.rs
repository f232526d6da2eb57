use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{CommMonomial, Word};
use crate::error::{AlgebraError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    /// Weighted degree first, then left-to-right precedence.
    Deglex,
    /// Pure lexicographic; only meaningful for commutative monomials.
    Lex,
}

/// An admissible monomial order.
///
/// `precedence` lists generator indices from largest to smallest. Generator
/// weights live here too since degree-compatible comparison needs them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
    rank: Vec<usize>,
    weights: Vec<u32>,
    unit_weights: bool,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, precedence: Vec<usize>, weights: Vec<u32>) -> Result<Self> {
        let n = weights.len();
        if precedence.len() != n {
            return Err(AlgebraError::BadPrecedence);
        }
        let mut rank = vec![usize::MAX; n];
        for (pos, &g) in precedence.iter().enumerate() {
            if g >= n || rank[g] != usize::MAX {
                return Err(AlgebraError::BadPrecedence);
            }
            rank[g] = pos;
        }
        if weights.contains(&0) {
            return Err(AlgebraError::BadDegree);
        }
        let unit_weights = weights.iter().all(|&w| w == 1);
        Ok(MonomialOrder {
            kind,
            precedence,
            rank,
            weights,
            unit_weights,
        })
    }

    pub fn deglex(precedence: Vec<usize>, weights: Vec<u32>) -> Result<Self> {
        Self::new(OrderKind::Deglex, precedence, weights)
    }

    /// Deglex with generator 0 largest and unit weights.
    pub fn natural_deglex(n: usize) -> Self {
        Self::new(OrderKind::Deglex, (0..n).collect(), vec![1; n]).expect("valid order")
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn ngens(&self) -> usize {
        self.weights.len()
    }

    /// Position of generator `g` in the precedence list (0 = largest).
    pub fn rank(&self, g: usize) -> usize {
        self.rank[g]
    }

    pub fn word_degree(&self, w: &Word) -> u32 {
        self.letters_degree(w.letters())
    }

    pub fn letters_degree(&self, letters: &[u16]) -> u32 {
        if self.unit_weights {
            letters.len() as u32
        } else {
            letters.iter().map(|&g| self.weights[g as usize]).sum()
        }
    }

    pub fn comm_degree(&self, m: &CommMonomial) -> u32 {
        m.exponents().iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    pub fn ensure_noncommutative(&self) -> Result<()> {
        match self.kind {
            OrderKind::Deglex => Ok(()),
            OrderKind::Lex => Err(AlgebraError::LexOnNoncommutative),
        }
    }

    /// Checked comparison of two words; lex is rejected.
    pub fn compare_words(&self, a: &Word, b: &Word) -> Result<Ordering> {
        self.ensure_noncommutative()?;
        Ok(self.cmp_words(a, b))
    }

    /// Deglex comparison of words; callers must have validated the order kind.
    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        self.cmp_letters(a.letters(), b.letters())
    }

    pub fn cmp_letters(&self, a: &[u16], b: &[u16]) -> Ordering {
        let by_degree = self.letters_degree(a).cmp(&self.letters_degree(b));
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        for (x, y) in a.iter().zip(b) {
            if x != y {
                // smaller rank means larger generator
                return self.rank[*y as usize].cmp(&self.rank[*x as usize]);
            }
        }
        a.len().cmp(&b.len())
    }

    /// Compares `a1·a2` with `b1·b2` without allocating the products.
    pub fn cmp_concat(&self, a1: &[u16], a2: &[u16], b1: &[u16], b2: &[u16]) -> Ordering {
        let da = self.letters_degree(a1) + self.letters_degree(a2);
        let db = self.letters_degree(b1) + self.letters_degree(b2);
        if da != db {
            return da.cmp(&db);
        }
        let mut ia = a1.iter().chain(a2);
        let mut ib = b1.iter().chain(b2);
        loop {
            match (ia.next(), ib.next()) {
                (Some(x), Some(y)) if x == y => continue,
                (Some(x), Some(y)) => return self.rank[*y as usize].cmp(&self.rank[*x as usize]),
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
            }
        }
    }

    pub fn cmp_comm(&self, a: &CommMonomial, b: &CommMonomial) -> Ordering {
        if self.kind == OrderKind::Deglex {
            let by_degree = self.comm_degree(a).cmp(&self.comm_degree(b));
            if by_degree != Ordering::Equal {
                return by_degree;
            }
        }
        for &g in &self.precedence {
            let c = a.exponents()[g].cmp(&b.exponents()[g]);
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_words(ngens: usize, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut frontier = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 0..ngens {
                    next.push(w.concat(&Word::letter(g)));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    #[test]
    fn deglex_prefers_degree_then_precedence() {
        let ord = MonomialOrder::natural_deglex(2);
        let x = Word::from_indices(&[0]);
        let xy = Word::from_indices(&[0, 1]);
        let yx = Word::from_indices(&[1, 0]);
        assert_eq!(ord.cmp_words(&xy, &x), Ordering::Greater);
        assert_eq!(ord.cmp_words(&xy, &yx), Ordering::Greater);
        assert_eq!(ord.cmp_words(&xy, &xy), Ordering::Equal);
    }

    #[test]
    fn lex_rejected_for_words() {
        let ord = MonomialOrder::new(OrderKind::Lex, vec![0, 1], vec![1, 1]).unwrap();
        let w = Word::letter(0);
        assert_eq!(ord.compare_words(&w, &w), Err(AlgebraError::LexOnNoncommutative));
    }

    #[test]
    fn bad_precedence() {
        assert!(MonomialOrder::deglex(vec![0, 0], vec![1, 1]).is_err());
        assert!(MonomialOrder::deglex(vec![0], vec![1, 1]).is_err());
        assert!(MonomialOrder::deglex(vec![0, 1], vec![1, 0]).is_err());
    }

    #[test]
    fn strict_total_order_on_short_words() {
        let ord = MonomialOrder::deglex(vec![1, 0], vec![1, 1]).unwrap();
        let words = all_words(2, 4);
        for a in &words {
            for b in &words {
                let ab = ord.cmp_words(a, b);
                assert_eq!(ab, ord.cmp_words(b, a).reverse());
                assert_eq!(ab == Ordering::Equal, a == b);
                for c in &words {
                    if ab == Ordering::Less && ord.cmp_words(b, c) == Ordering::Less {
                        assert_eq!(ord.cmp_words(a, c), Ordering::Less);
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_on_both_sides() {
        let ord = MonomialOrder::deglex(vec![0, 1], vec![2, 1]).unwrap();
        let words = all_words(2, 4);
        let short = all_words(2, 3);
        for a in &words {
            for b in &words {
                if ord.cmp_words(a, b) != Ordering::Less {
                    continue;
                }
                for c in &short {
                    assert_eq!(ord.cmp_words(&a.concat(c), &b.concat(c)), Ordering::Less);
                    assert_eq!(ord.cmp_words(&c.concat(a), &c.concat(b)), Ordering::Less);
                }
            }
        }
    }

    #[test]
    fn cmp_concat_matches_concatenation() {
        let ord = MonomialOrder::deglex(vec![1, 0, 2], vec![1, 2, 1]).unwrap();
        let words = all_words(3, 2);
        for a in &words {
            for b in &words {
                for c in &words {
                    let direct = ord.cmp_words(&a.concat(b), &c.concat(a));
                    let split = ord.cmp_concat(a.letters(), b.letters(), c.letters(), a.letters());
                    assert_eq!(direct, split);
                }
            }
        }
    }

    #[test]
    fn commutative_deglex_examples() {
        // x^3 against x*y^2
        let x3 = CommMonomial::new(vec![3, 0]);
        let xy2 = CommMonomial::new(vec![1, 2]);
        let x_first = MonomialOrder::deglex(vec![0, 1], vec![1, 1]).unwrap();
        let y_first = MonomialOrder::deglex(vec![1, 0], vec![1, 1]).unwrap();
        assert_eq!(x_first.cmp_comm(&x3, &xy2), Ordering::Greater);
        assert_eq!(y_first.cmp_comm(&x3, &xy2), Ordering::Less);
    }

    #[test]
    fn commutative_lex_ignores_degree() {
        let ord = MonomialOrder::new(OrderKind::Lex, vec![0, 1], vec![1, 1]).unwrap();
        let x = CommMonomial::new(vec![1, 0]);
        let y5 = CommMonomial::new(vec![0, 5]);
        assert_eq!(ord.cmp_comm(&x, &y5), Ordering::Greater);
    }
}
