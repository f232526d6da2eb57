//! Exact sparse linear algebra over Q.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::algebra::Scalar;

/// A sparse row: strictly increasing column indices with nonzero entries.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Incremental row-echelon form. Rows are reduced against existing pivots
/// as they arrive; the rank is the number of pivots.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` and keeps it as a new pivot if it is independent.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let reduced = self.reduce(row);
        match reduced.first() {
            None => false,
            Some(&(c, _)) => {
                self.pivots.insert(c, reduced);
                true
            }
        }
    }

    /// Reduces `row` until its leading column has no pivot.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some((c, a)) = row.first().cloned() {
            let Some(p) = self.pivots.get(&c) else {
                break;
            };
            let factor = -(a / &p[0].1);
            row = axpy(&row, p, &factor);
        }
        row
    }

    /// True when `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

/// `x + factor * y` for sorted sparse rows.
pub fn axpy(x: &SparseRow, y: &SparseRow, factor: &Scalar) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, &y[j].1 * factor));
            j += 1;
        } else {
            let s = &x[i].1 + &y[j].1 * factor;
            if !s.is_zero() {
                out.push((x[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Exact rank of the matrix with the given sparse rows.
pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    let mut sorted: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    sorted.sort_by_key(|r| (r[0].0, r.len()));
    for r in sorted {
        e.insert(r);
    }
    e.rank()
}

/// Rank modulo a prime by dense elimination, as an independent check on the
/// exact routine. Denominators must be prime to `p`; `p` must fit in 32 bits.
pub fn rank_mod_p(rows: &[SparseRow], ncols: usize, p: u64) -> usize {
    let to_mod = |s: &Scalar| -> u64 {
        let reduce = |n: &num_bigint::BigInt| -> u64 {
            let pm = num_bigint::BigInt::from(p);
            let r = ((n % &pm) + &pm) % &pm;
            u64::try_from(r).expect("reduced")
        };
        let num = reduce(s.numer());
        let den = reduce(s.denom());
        num * pow_mod(den, p - 2, p) % p
    };
    let mut dense: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![0u64; ncols];
            for (c, a) in r {
                v[*c] = to_mod(a);
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..dense.len()).find(|&r| dense[r][col] != 0) else {
            continue;
        };
        dense.swap(rank, piv);
        let inv = pow_mod(dense[rank][col], p - 2, p);
        let pivot = dense[rank].clone();
        for (r, row) in dense.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col] * inv % p;
                for (x, &v) in row[col..ncols].iter_mut().zip(&pivot[col..ncols]) {
                    *x = (*x + p - f * v % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Solves the square system `a x = b` exactly; `None` if singular.
pub fn solve_dense(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.len();
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in &mut m[col][col..] {
            *x = &*x * &inv;
        }
        let pivot = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, v) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= &f * v;
                }
            }
        }
    }
    debug_assert!((0..n).all(|i| m[i][i].is_one()));
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}
