//! The Anick resolution of the base field: differentials `d_n` on chains,
//! the splitting maps `i_n`, verification, and Tor.
//!
//! An element of `C_n ⊗ A` is a combination of pairs `g ⊗ w` with `g` an
//! `n`-chain and `w` a normal word. Pairs are ordered by the concatenated
//! word `gw` in the monomial order, with the split position breaking ties.

mod tor;
mod verify;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{MonomialOrder, NcPoly, Scalar, Word};
use crate::chains::{enumerate_chains, ChainSet};
use crate::error::{AlgebraError, Result};
use crate::noncommutative::{nc_buchberger, nc_reduce_basis, NcGB};
use crate::presentation::Presentation;

pub use tor::{is_minimal, tensor_with_k, tor_dimensions, Minimality, TensoredDifferential, TorTable, Witness};
pub use verify::{verify_resolution, ExactnessCheck, RankMethod, VerificationReport, VerifyOptions};

/// One pair `chain ⊗ word` with its coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResTerm {
    pub chain: Word,
    pub word: Word,
    pub coeff: Scalar,
}

/// An element of `C_level ⊗ A`, terms sorted from the largest pair down.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResElement {
    level: i32,
    terms: Vec<ResTerm>,
}

impl ResElement {
    pub fn zero(level: i32) -> Self {
        ResElement {
            level,
            terms: Vec::new(),
        }
    }

    /// Collects `(chain, word, coeff)` triples, merging repeats and sorting
    /// under the pair order of `ord`.
    pub fn from_terms<I>(level: i32, terms: I, ord: &MonomialOrder) -> Self
    where
        I: IntoIterator<Item = (Word, Word, Scalar)>,
    {
        let keys = KeyMap::new(ord);
        let mut work = Work::new();
        for (c, w, a) in terms {
            add_into(&mut work, keys.key(c.letters(), w.letters()), a);
        }
        keys.element(level, &work)
    }

    pub fn level(&self) -> i32 {
        self.level
    }

    pub fn terms(&self) -> &[ResTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&ResTerm> {
        self.terms.first()
    }

    /// Renders as `c*d ⊗ w - e ⊗ 1`.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff < Scalar::zero();
            let mag = if neg { -t.coeff.clone() } else { t.coeff.clone() };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&format!(
                "{} ⊗ {}",
                render_word(&t.chain, names),
                render_word(&t.word, names)
            ));
        }
        out
    }
}

/// `x*y^2` style rendering, `1` for the empty word.
pub fn render_word(w: &Word, names: &[String]) -> String {
    NcPoly::word(w.clone()).display(names).to_string()
}

/// One call of a splitting map made while building: `i_level(input) = output`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelRecord {
    pub level: i32,
    pub input: ResElement,
    pub output: ResElement,
}

/// Sort key `(degree, letters by descending precedence, split)`; its
/// derived order is the pair order.
pub(crate) type Key = (u32, Vec<u16>, usize);
pub(crate) type Work = BTreeMap<Key, Scalar>;

pub(crate) fn add_into(work: &mut Work, key: Key, c: Scalar) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match work.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct KeyMap {
    ord: MonomialOrder,
    to_key: Vec<u16>,
    from_key: Vec<u16>,
}

impl KeyMap {
    pub(crate) fn new(ord: &MonomialOrder) -> Self {
        let n = ord.ngens();
        let to_key: Vec<u16> = (0..n).map(|g| (n - 1 - ord.rank(g)) as u16).collect();
        let mut from_key = vec![0u16; n];
        for (g, &k) in to_key.iter().enumerate() {
            from_key[k as usize] = g as u16;
        }
        KeyMap {
            ord: ord.clone(),
            to_key,
            from_key,
        }
    }

    pub(crate) fn key(&self, chain: &[u16], word: &[u16]) -> Key {
        let letters = chain.iter().chain(word).map(|&l| self.to_key[l as usize]).collect();
        (
            self.ord.letters_degree(chain) + self.ord.letters_degree(word),
            letters,
            chain.len(),
        )
    }

    pub(crate) fn letters(&self, key: &Key) -> Vec<u16> {
        key.1.iter().map(|&k| self.from_key[k as usize]).collect()
    }

    pub(crate) fn element(&self, level: i32, work: &Work) -> ResElement {
        let terms = work
            .iter()
            .rev()
            .map(|(key, c)| {
                let letters = self.letters(key);
                ResTerm {
                    chain: Word::new(letters[..key.2].to_vec()),
                    word: Word::new(letters[key.2..].to_vec()),
                    coeff: c.clone(),
                }
            })
            .collect();
        ResElement { level, terms }
    }

    pub(crate) fn work(&self, e: &ResElement) -> Work {
        let mut w = Work::new();
        for t in &e.terms {
            add_into(&mut w, self.key(t.chain.letters(), t.word.letters()), t.coeff.clone());
        }
        w
    }
}

/// The resolution built up to a level and degree, with every differential
/// on free generators and the log of splitting-map calls.
#[derive(Debug)]
pub struct Resolution {
    gb: NcGB,
    chains: ChainSet,
    names: Vec<String>,
    max_level: usize,
    max_degree: u32,
    keys: KeyMap,
    /// `diffs[n][i] = d_n(chain i of level n ⊗ 1)`.
    diffs: Vec<Vec<ResElement>>,
    kernel_log: Vec<KernelRecord>,
    nf_cache: RwLock<HashMap<Vec<u16>, Arc<NcPoly>>>,
}

/// Completes the relations of `p` to `max_degree` and builds the resolution.
pub fn build_resolution(p: &Presentation, max_level: usize, max_degree: u32) -> Result<Resolution> {
    let rels = p
        .nc_relations()
        .ok_or_else(|| AlgebraError::Unsupported("the resolution needs a noncommutative presentation".into()))?;
    if !p.is_homogeneous() {
        return Err(AlgebraError::Inhomogeneous);
    }
    let gb = nc_reduce_basis(&nc_buchberger(rels, &p.order, max_degree)?);
    Resolution::from_gb(gb, p.names(), max_level, max_degree)
}

impl Resolution {
    /// Builds from a basis certified to at least `max_degree`.
    pub fn from_gb(gb: NcGB, names: Vec<String>, max_level: usize, max_degree: u32) -> Result<Self> {
        gb.certify(max_degree)?;
        if gb.basis().iter().any(|g| !g.is_homogeneous(gb.order())) {
            return Err(AlgebraError::Inhomogeneous);
        }
        let ord = gb.order().clone();
        let chains = enumerate_chains(&gb.leading_words(), &ord, max_level, max_degree)?;
        let mut res = Resolution {
            keys: KeyMap::new(&ord),
            gb,
            chains,
            names,
            max_level,
            max_degree,
            diffs: Vec::with_capacity(max_level + 1),
            kernel_log: Vec::new(),
            nf_cache: RwLock::new(HashMap::new()),
        };
        let d0 = res
            .chains
            .level(0)
            .iter()
            .map(|c| ResElement {
                level: -1,
                terms: vec![ResTerm {
                    chain: Word::empty(),
                    word: c.word.clone(),
                    coeff: Scalar::one(),
                }],
            })
            .collect();
        res.diffs.push(d0);
        for n in 1..=max_level as i32 {
            let built: Vec<Result<(ResElement, KernelRecord)>> = res
                .chains
                .level(n)
                .par_iter()
                .map(|c| res.differential_of(n, c.parent.expect("chain above level -1"), c.tail()))
                .collect();
            let mut level = Vec::with_capacity(built.len());
            for b in built {
                let (d, rec) = b?;
                level.push(d);
                res.kernel_log.push(rec);
            }
            res.diffs.push(level);
        }
        Ok(res)
    }

    /// `d_n(gt ⊗ 1) = g ⊗ t - i_{n-1} d_{n-1}(g ⊗ t)` for the parent `g`.
    fn differential_of(&self, n: i32, parent: usize, tail: &[u16]) -> Result<(ResElement, KernelRecord)> {
        let g = &self.chains.level(n - 1)[parent];
        let image = self.d_generator_times(n - 1, parent, tail);
        let split = self.split(n - 1, image.clone())?;
        let mut out = Work::new();
        add_into(&mut out, self.keys.key(g.word.letters(), tail), Scalar::one());
        for (k, c) in split.iter() {
            add_into(&mut out, k.clone(), -c.clone());
        }
        let record = KernelRecord {
            level: n - 1,
            input: self.keys.element(n - 2, &image),
            output: self.keys.element(n - 1, &split),
        };
        Ok((self.keys.element(n - 1, &out), record))
    }

    pub fn gb(&self) -> &NcGB {
        &self.gb
    }

    pub fn chains(&self) -> &ChainSet {
        &self.chains
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> &MonomialOrder {
        self.gb.order()
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn kernel_log(&self) -> &[KernelRecord] {
        &self.kernel_log
    }

    /// `d_n(chain ⊗ 1)` for a chain of level `0..=max_level`.
    pub fn differential(&self, level: usize, chain: &Word) -> Option<&ResElement> {
        let i = self.chains.find(level as i32, chain)?;
        self.diffs.get(level)?.get(i)
    }

    /// Differentials of every chain at `level`, in enumeration order.
    pub fn differentials(&self, level: usize) -> &[ResElement] {
        self.diffs.get(level).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Negates one coefficient of a stored differential. Only meant for
    /// checking that verification notices a corrupted map.
    pub fn flip_sign(&mut self, level: usize, chain: usize, term: usize) {
        let t = &mut self.diffs[level][chain].terms[term];
        t.coeff = -t.coeff.clone();
    }

    fn nf(&self, w: Vec<u16>) -> Arc<NcPoly> {
        if let Some(p) = self.nf_cache.read().expect("cache lock").get(&w) {
            return Arc::clone(p);
        }
        let p = Arc::new(self.gb.reducer().normal_form_word(&w));
        self.nf_cache.write().expect("cache lock").entry(w).or_insert(p).clone()
    }

    /// `coeff · (f ⊗ v) · w` added into `out`, reducing `vw`.
    fn push_times(&self, out: &mut Work, f: &[u16], v: &[u16], w: &[u16], coeff: &Scalar) {
        let mut vw = Vec::with_capacity(v.len() + w.len());
        vw.extend_from_slice(v);
        vw.extend_from_slice(w);
        if self.gb.reducer().is_normal(&vw) {
            add_into(out, self.keys.key(f, &vw), coeff.clone());
            return;
        }
        for (m, a) in self.nf(vw).terms() {
            add_into(out, self.keys.key(f, m.letters()), coeff * a);
        }
    }

    /// `d_n(g ⊗ w)` for the chain with index `g` at level `n`.
    fn d_generator_times(&self, n: i32, g: usize, w: &[u16]) -> Work {
        let mut out = Work::new();
        for t in &self.diffs[n as usize][g].terms {
            self.push_times(&mut out, t.chain.letters(), t.word.letters(), w, &t.coeff);
        }
        out
    }

    /// Applies `d_n` (or the augmentation for `n = -1`) to an element of
    /// `C_n ⊗ A`.
    pub(crate) fn apply_d(&self, n: i32, u: &Work) -> Work {
        let mut out = Work::new();
        for (key, a) in u {
            let letters = self.keys.letters(key);
            let (g, w) = letters.split_at(key.2);
            if n < 0 {
                if w.is_empty() {
                    add_into(&mut out, self.keys.key(&[], &[]), a.clone());
                }
                continue;
            }
            let gi = self
                .chains
                .find(n, &Word::new(g.to_vec()))
                .expect("term chain is enumerated");
            for t in &self.diffs[n as usize][gi].terms {
                self.push_times(&mut out, t.chain.letters(), t.word.letters(), w, &(a * &t.coeff));
            }
        }
        out
    }

    /// Applies `d_level` to an element of `C_level ⊗ A`.
    pub fn apply_differential(&self, u: &ResElement) -> ResElement {
        let out = self.apply_d(u.level, &self.keys.work(u));
        self.keys.element(u.level - 1, &out)
    }

    /// `i_n(u)` for `u` in `C_{n-1} ⊗ A` with `d_{n-1}(u) = 0`.
    pub fn in_split(&self, n: i32, u: &ResElement) -> Result<ResElement> {
        if u.level != n - 1 || n < -1 || n > self.max_level as i32 {
            return Err(AlgebraError::Unsupported(format!(
                "i_{n} takes an element of level {} with n at most {}",
                n - 1,
                self.max_level
            )));
        }
        let work = self.keys.work(u);
        if n == -1 {
            return Ok(self.keys.element(-1, &work));
        }
        if !self.apply_d(n - 1, &work).is_empty() {
            return Err(AlgebraError::NotInKernel { level: n - 1 });
        }
        Ok(self.keys.element(n, &self.split(n, work)?))
    }

    /// The splitting map on an element already known to lie in the kernel.
    fn split(&self, n: i32, mut u: Work) -> Result<Work> {
        let mut out = Work::new();
        if n == 0 {
            for (key, a) in u {
                let letters = self.keys.letters(&key);
                if letters.is_empty() {
                    return Err(AlgebraError::NotInKernel { level: -1 });
                }
                add_into(&mut out, self.keys.key(&letters[..1], &letters[1..]), a);
            }
            return Ok(out);
        }
        while let Some((key, a)) = u.last_key_value().map(|(k, a)| (k.clone(), a.clone())) {
            let letters = self.keys.letters(&key);
            let (gi, glen) = self.factor(n, &letters, key.2)?;
            let image = self.d_generator_times(n, gi, &letters[glen..]);
            match image.last_key_value() {
                Some((k, c)) if *k == key && c.is_one() => {}
                _ => {
                    return Err(AlgebraError::ResolutionInvariant(format!(
                        "d_{n} of {} does not lead with {}",
                        render_word(&Word::new(letters[..glen].to_vec()), &self.names),
                        render_word(&Word::new(letters), &self.names)
                    )))
                }
            }
            for (k, c) in image {
                add_into(&mut u, k, -(&a * c));
            }
            if u.last_key_value().is_some_and(|(k, _)| *k >= key) {
                return Err(AlgebraError::ResolutionInvariant(format!("no descent in i_{n}")));
            }
            add_into(&mut out, self.keys.key(&letters[..glen], &letters[glen..]), a);
        }
        Ok(out)
    }

    /// The unique `n`-chain `g` extending the `(n-1)`-chain `letters[..split]`
    /// with `letters = g · c`. Returns its index and length.
    fn factor(&self, n: i32, letters: &[u16], split: usize) -> Result<(usize, usize)> {
        let fail = || AlgebraError::NoChainFactorization {
            level: n,
            word: render_word(&Word::new(letters.to_vec()), &self.names),
        };
        let parent = self
            .chains
            .find(n - 1, &Word::new(letters[..split].to_vec()))
            .ok_or_else(fail)?;
        let mut found = None;
        for end in split + 1..=letters.len() {
            if let Some(i) = self.chains.find(n, &Word::new(letters[..end].to_vec())) {
                if self.chains.level(n)[i].parent == Some(parent) {
                    if found.is_some() {
                        return Err(fail());
                    }
                    found = Some((i, end));
                }
            }
        }
        found.ok_or_else(fail)
    }

    /// Matrices of `d_n` on free generators, one block per level and
    /// degree: rows are the chains of that degree, columns the pairs
    /// `chain ⊗ word` occurring in their images, largest first. Level `-1`
    /// is the augmentation.
    pub fn matrices(&self) -> Vec<GradedMatrix> {
        let mut out = vec![GradedMatrix {
            level: -1,
            degree: 0,
            rows: vec!["1".to_string()],
            cols: vec!["1".to_string()],
            entries: vec![(0, 0, "1".to_string())],
        }];
        for n in 0..=self.max_level {
            let chains = self.chains.level(n as i32);
            let mut by_degree: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
            for (i, c) in chains.iter().enumerate() {
                by_degree.entry(c.degree).or_default().push(i);
            }
            for (degree, rows) in by_degree {
                let mut cols: BTreeMap<Key, usize> = BTreeMap::new();
                for &i in &rows {
                    for t in &self.diffs[n][i].terms {
                        cols.insert(self.keys.key(t.chain.letters(), t.word.letters()), 0);
                    }
                }
                let mut labels = Vec::with_capacity(cols.len());
                for (j, (key, slot)) in cols.iter_mut().rev().enumerate() {
                    *slot = j;
                    let letters = self.keys.letters(key);
                    labels.push(format!(
                        "{} ⊗ {}",
                        render_word(&Word::new(letters[..key.2].to_vec()), &self.names),
                        render_word(&Word::new(letters[key.2..].to_vec()), &self.names)
                    ));
                }
                let mut entries = Vec::new();
                for (r, &i) in rows.iter().enumerate() {
                    for t in &self.diffs[n][i].terms {
                        let c = cols[&self.keys.key(t.chain.letters(), t.word.letters())];
                        entries.push((r, c, t.coeff.to_string()));
                    }
                }
                out.push(GradedMatrix {
                    level: n as i32,
                    degree,
                    rows: rows
                        .iter()
                        .map(|&i| render_word(&chains[i].word, &self.names))
                        .collect(),
                    cols: labels,
                    entries,
                });
            }
        }
        out
    }
}

/// Sparse block of a differential on free generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedMatrix {
    pub level: i32,
    pub degree: u32,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<(usize, usize, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{make_bn, parse_presentation};

    fn x2xy() -> Presentation {
        parse_presentation("generators x y; order deglex x > y; relations x^2 - x*y;").unwrap()
    }

    fn word(p: &Presentation, s: &str) -> Word {
        if s == "1" {
            return Word::empty();
        }
        p.parse_nc_poly(s).unwrap().leading_monomial().unwrap().clone()
    }

    fn elem(p: &Presentation, level: i32, terms: &[(&str, &str, i64)]) -> ResElement {
        ResElement::from_terms(
            level,
            terms
                .iter()
                .map(|&(c, w, a)| (word(p, c), word(p, w), Scalar::from_integer(a.into()))),
            &p.order,
        )
    }

    #[test]
    fn first_differentials() {
        let p = x2xy();
        let res = build_resolution(&p, 2, 8).unwrap();
        let d = res.differential(1, &word(&p, "x*y*x")).unwrap();
        assert_eq!(d, &elem(&p, 0, &[("x", "y*x", 1), ("x", "y^2", -1)]));
        let d = res.differential(2, &word(&p, "x*x*x")).unwrap();
        assert_eq!(d, &elem(&p, 1, &[("x*x", "x", 1), ("x*x", "y", -1), ("x*y*x", "1", 1)]));
        assert_eq!(d.display(res.names()), "x^2 ⊗ x - x^2 ⊗ y + x*y*x ⊗ 1");
    }

    #[test]
    fn split_examples() {
        let p = x2xy();
        let res = build_resolution(&p, 2, 8).unwrap();
        let u = elem(&p, -1, &[("1", "x*y^2", 1), ("1", "y*x", 1)]);
        assert_eq!(
            res.in_split(0, &u).unwrap(),
            elem(&p, 0, &[("x", "y^2", 1), ("y", "x", 1)])
        );
        assert_eq!(res.in_split(0, &ResElement::zero(-1)).unwrap(), ResElement::zero(0));
        let constant = elem(&p, -1, &[("1", "1", 1)]);
        assert_eq!(res.in_split(0, &constant), Err(AlgebraError::NotInKernel { level: -1 }));
        let u = elem(&p, 0, &[("x", "y*x*y", 1), ("x", "y^2*x", -1)]);
        assert_eq!(
            res.in_split(1, &u).unwrap(),
            elem(&p, 1, &[("x*y*x", "y", 1), ("x*y^2*x", "1", -1)])
        );
        for rec in res.kernel_log() {
            assert_eq!(res.apply_differential(&rec.output), rec.input);
        }
    }

    #[test]
    fn b1_level_two() {
        let p = make_bn(1).unwrap();
        let res = build_resolution(&p, 2, 8).unwrap();
        let d = res.differential(2, &word(&p, "b1*c1*a1*b1")).unwrap();
        assert_eq!(d, &elem(&p, 1, &[("b1*c1*a1", "b1", 1), ("b1*a0", "b0*c0", 1)]));
        let u = elem(&p, 0, &[("b1", "a0*b0*c0", 1)]);
        assert_eq!(res.in_split(1, &u).unwrap(), elem(&p, 1, &[("b1*a0", "b0*c0", 1)]));
    }

    #[test]
    fn matrices_are_labelled() {
        let p = x2xy();
        let res = build_resolution(&p, 1, 3).unwrap();
        let m = res.matrices();
        assert_eq!(m[0].level, -1);
        let d1 = m.iter().find(|b| b.level == 1 && b.degree == 2).unwrap();
        assert_eq!(d1.rows, vec!["x^2"]);
        assert_eq!(d1.cols, vec!["x ⊗ x", "x ⊗ y"]);
        assert_eq!(d1.entries, vec![(0, 0, "1".into()), (0, 1, "-1".into())]);
    }
}
