//! Gröbner bases of two-sided ideals in the free algebra, completed up to a
//! degree bound.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{MonomialOrder, NcPoly, Scalar, Word};
use crate::error::{AlgebraError, Result};
use crate::matcher::Matcher;

/// Every factorization `haystack = prefix · needle · suffix`, leftmost first.
pub fn find_subword(haystack: &Word, needle: &Word) -> Vec<(Word, Word)> {
    let (h, n) = (haystack.letters(), needle.letters());
    if n.is_empty() || n.len() > h.len() {
        return Vec::new();
    }
    (0..=h.len() - n.len())
        .filter(|&i| &h[i..i + n.len()] == n)
        .map(|i| (haystack.prefix(i), haystack.suffix_from(i + n.len())))
        .collect()
}

fn lead(p: &NcPoly) -> Result<(&Word, &Scalar)> {
    p.leading().ok_or(AlgebraError::ZeroPolynomial)
}

/// Reduces the leading word of `f` by `g` at its leftmost occurrence.
pub fn nc_reduce_once(f: &NcPoly, g: &NcPoly, ord: &MonomialOrder) -> Result<Option<NcPoly>> {
    ord.ensure_noncommutative()?;
    let (lf, cf) = lead(f)?;
    let (lg, cg) = lead(g)?;
    let Some((m1, m2)) = find_subword(lf, lg).into_iter().next() else {
        return Ok(None);
    };
    let shifted = g.sandwich(m1.letters(), m2.letters(), &Scalar::one());
    Ok(Some(f.add_scaled(&shifted, &-(cf / cg), ord)))
}

/// Sort key whose derived order agrees with the monomial order.
type Key = (u32, Vec<u16>);

/// Normal-form engine for a fixed list of polynomials.
///
/// The reducer for a monomial is found with an automaton over the leading
/// words: the occurrence that ends first, preferring the longest leading
/// word there.
#[derive(Clone, Debug)]
pub struct Reducer {
    basis: Vec<NcPoly>,
    lead_inv: Vec<Scalar>,
    matcher: Matcher,
    ord: MonomialOrder,
    to_key: Vec<u16>,
    from_key: Vec<u16>,
}

impl Reducer {
    pub fn new(basis: &[NcPoly], ord: &MonomialOrder) -> Self {
        let basis: Vec<NcPoly> = basis.iter().filter(|p| !p.is_zero()).cloned().collect();
        let leads: Vec<Word> = basis
            .iter()
            .map(|p| p.leading_monomial().expect("nonzero").clone())
            .collect();
        let lead_inv = basis
            .iter()
            .map(|p| p.leading_coeff().expect("nonzero").recip())
            .collect();
        let n = ord.ngens();
        let to_key: Vec<u16> = (0..n).map(|g| (n - 1 - ord.rank(g)) as u16).collect();
        let mut from_key = vec![0u16; n];
        for (g, &k) in to_key.iter().enumerate() {
            from_key[k as usize] = g as u16;
        }
        Reducer {
            matcher: Matcher::new(&leads, n),
            basis,
            lead_inv,
            ord: ord.clone(),
            to_key,
            from_key,
        }
    }

    pub fn basis(&self) -> &[NcPoly] {
        &self.basis
    }

    pub fn matcher(&self) -> &Matcher {
        &self.matcher
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.ord
    }

    pub fn is_normal(&self, w: &[u16]) -> bool {
        self.matcher.is_normal(w)
    }

    fn key(&self, letters: &[u16]) -> Key {
        (
            self.ord.letters_degree(letters),
            letters.iter().map(|&l| self.to_key[l as usize]).collect(),
        )
    }

    fn unkey(&self, key: &Key) -> Vec<u16> {
        key.1.iter().map(|&k| self.from_key[k as usize]).collect()
    }

    /// Normal form of an arbitrary polynomial.
    pub fn normal_form(&self, f: &NcPoly) -> NcPoly {
        self.normal_form_terms(f.terms().iter().map(|(w, c)| (w.letters(), c.clone())))
    }

    /// Normal form of `c · w`.
    pub fn normal_form_word(&self, w: &[u16]) -> NcPoly {
        if self.matcher.is_normal(w) {
            return NcPoly::from_sorted_unchecked(vec![(Word::new(w.to_vec()), Scalar::one())]);
        }
        self.normal_form_terms(std::iter::once((w, Scalar::one())))
    }

    fn normal_form_terms<'a, I>(&self, terms: I) -> NcPoly
    where
        I: IntoIterator<Item = (&'a [u16], Scalar)>,
    {
        let mut work: BTreeMap<Key, Scalar> = BTreeMap::new();
        for (w, c) in terms {
            add_into(&mut work, self.key(w), c);
        }
        let mut out: Vec<(Word, Scalar)> = Vec::new();
        while let Some((key, c)) = work.pop_last() {
            let letters = self.unkey(&key);
            match self.matcher.find_first(&letters) {
                None => out.push((Word::new(letters), c)),
                Some(occ) => {
                    let g = &self.basis[occ.pattern];
                    let factor = -(&c * &self.lead_inv[occ.pattern]);
                    let (left, right) = (&letters[..occ.start], &letters[occ.end..]);
                    for (w, a) in g.terms().iter().skip(1) {
                        let mut v = Vec::with_capacity(left.len() + w.len() + right.len());
                        v.extend_from_slice(left);
                        v.extend_from_slice(w.letters());
                        v.extend_from_slice(right);
                        add_into(&mut work, self.key(&v), &factor * a);
                    }
                }
            }
        }
        NcPoly::from_sorted_unchecked(out)
    }
}

fn add_into(work: &mut BTreeMap<Key, Scalar>, key: Key, c: Scalar) {
    use std::collections::btree_map::Entry;
    match work.entry(key) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Normal form of `f` modulo `basis`.
pub fn nc_normal_form(f: &NcPoly, basis: &[NcPoly], ord: &MonomialOrder) -> NcPoly {
    Reducer::new(basis, ord).normal_form(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ObstructionKind {
    Overlap,
    Inclusion,
}

/// An ambiguity between the leading words `u = lt(g_i)` and `v = lt(g_j)`.
///
/// Overlap: `u · right = left · v` with `left`, `right` nonempty and shorter
/// than `u`, `v` respectively. Inclusion: `u = left · v · right`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Obstruction {
    pub left: Word,
    pub right: Word,
    pub kind: ObstructionKind,
    pub pair: (usize, usize),
    pub ambiguity: Word,
    pub ambiguity_degree: u32,
}

impl Obstruction {
    /// Start of `v` inside the ambiguity word.
    pub fn offset(&self) -> usize {
        self.left.len()
    }

    fn sort_key(&self) -> (u32, usize, usize, usize, ObstructionKind) {
        (
            self.ambiguity_degree,
            self.pair.0,
            self.pair.1,
            self.offset(),
            self.kind,
        )
    }
}

/// Overlaps of `u` followed by `v`: suffix of `u` equal to a prefix of `v`,
/// proper on both sides. Returns `(offset, ambiguity)` pairs.
fn overlaps(u: &[u16], v: &[u16]) -> Vec<(usize, Vec<u16>)> {
    let kmax = u.len().min(v.len());
    (1..kmax)
        .rev()
        .filter(|&k| u[u.len() - k..] == v[..k])
        .map(|k| {
            let mut amb = u.to_vec();
            amb.extend_from_slice(&v[k..]);
            (u.len() - k, amb)
        })
        .collect()
}

fn obstructions_between(i: usize, u: &Word, j: usize, v: &Word, ord: &MonomialOrder, out: &mut Vec<Obstruction>) {
    for (offset, amb) in overlaps(u.letters(), v.letters()) {
        let amb = Word::new(amb);
        out.push(Obstruction {
            left: u.prefix(offset),
            right: amb.suffix_from(u.len()),
            kind: ObstructionKind::Overlap,
            pair: (i, j),
            ambiguity_degree: ord.word_degree(&amb),
            ambiguity: amb,
        });
    }
    if i != j {
        for (left, right) in find_subword(u, v) {
            out.push(Obstruction {
                left,
                right,
                kind: ObstructionKind::Inclusion,
                pair: (i, j),
                ambiguity: u.clone(),
                ambiguity_degree: ord.word_degree(u),
            });
        }
    }
}

/// All overlap ambiguities (both orientations and self-overlaps) and all
/// inclusions, ordered by ambiguity degree, pair and offset.
pub fn find_obstructions(basis: &[NcPoly], ord: &MonomialOrder) -> Result<Vec<Obstruction>> {
    ord.ensure_noncommutative()?;
    let leads: Vec<&Word> = basis
        .iter()
        .map(|p| p.leading_monomial().ok_or(AlgebraError::ZeroPolynomial))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (i, u) in leads.iter().enumerate() {
        for (j, v) in leads.iter().enumerate() {
            obstructions_between(i, u, j, v, ord, &mut out);
        }
    }
    out.sort_by_key(Obstruction::sort_key);
    Ok(out)
}

/// S-polynomial of an obstruction; fails if the obstruction no longer
/// matches the leading words of `basis`.
pub fn nc_s_polynomial(ob: &Obstruction, basis: &[NcPoly], ord: &MonomialOrder) -> Result<NcPoly> {
    let (i, j) = ob.pair;
    let (f, g) = match (basis.get(i), basis.get(j)) {
        (Some(f), Some(g)) => (f, g),
        _ => return Err(AlgebraError::StaleObstruction),
    };
    let (u, cu) = lead(f)?;
    let (v, cv) = lead(g)?;
    let empty: &[u16] = &[];
    match ob.kind {
        ObstructionKind::Overlap => {
            if u.concat(&ob.right) != ob.ambiguity || ob.left.concat(v) != ob.ambiguity {
                return Err(AlgebraError::StaleObstruction);
            }
            let a = f.sandwich(empty, ob.right.letters(), &cu.recip());
            let b = g.sandwich(ob.left.letters(), empty, &cv.recip());
            Ok(a.sub(&b, ord))
        }
        ObstructionKind::Inclusion => {
            if *u != ob.ambiguity || Word::concat3(ob.left.letters(), v.letters(), ob.right.letters()) != *u {
                return Err(AlgebraError::StaleObstruction);
            }
            let a = f.scale(&cu.recip());
            let b = g.sandwich(ob.left.letters(), ob.right.letters(), &cv.recip());
            Ok(a.sub(&b, ord))
        }
    }
}

/// A noncommutative Gröbner basis certified up to a degree: every
/// obstruction whose ambiguity has degree at most `complete_to_degree`
/// resolves to zero.
#[derive(Clone, Debug)]
pub struct NcGB {
    reducer: Reducer,
    complete_to_degree: u32,
}

impl PartialEq for NcGB {
    fn eq(&self, other: &Self) -> bool {
        self.reducer.basis == other.reducer.basis
            && self.reducer.ord == other.reducer.ord
            && self.complete_to_degree == other.complete_to_degree
    }
}

impl NcGB {
    /// Wraps a basis without running completion. The caller vouches for the
    /// certification degree.
    pub fn from_parts(basis: Vec<NcPoly>, ord: MonomialOrder, complete_to_degree: u32) -> Self {
        NcGB {
            reducer: Reducer::new(&basis, &ord),
            complete_to_degree,
        }
    }

    /// Monomial ideal generated by `words`; always a Gröbner basis.
    pub fn monomial(words: &[Word], ord: &MonomialOrder) -> Self {
        let basis = words.iter().map(|w| NcPoly::word(w.clone())).collect();
        Self::from_parts(basis, ord.clone(), u32::MAX)
    }

    pub fn basis(&self) -> &[NcPoly] {
        self.reducer.basis()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.reducer.ord
    }

    pub fn complete_to_degree(&self) -> u32 {
        self.complete_to_degree
    }

    pub fn reducer(&self) -> &Reducer {
        &self.reducer
    }

    pub fn leading_words(&self) -> Vec<Word> {
        self.basis()
            .iter()
            .map(|p| p.leading_monomial().expect("nonzero").clone())
            .collect()
    }

    pub fn normal_form(&self, f: &NcPoly) -> NcPoly {
        self.reducer.normal_form(f)
    }

    /// Fails if `degree` lies beyond the certified range.
    pub fn certify(&self, degree: u32) -> Result<()> {
        if degree > self.complete_to_degree {
            Err(AlgebraError::BeyondCertification {
                requested: degree,
                certified: self.complete_to_degree,
            })
        } else {
            Ok(())
        }
    }
}

/// Buchberger completion truncated at ambiguity degree `max_degree`.
///
/// Obstructions are processed by (ambiguity degree, pair, offset) using
/// stable element ids. A new element whose leading word divides existing
/// leading words evicts them; evicted elements are reduced again and
/// re-inserted if nonzero, so the leading words always form an antichain.
pub fn nc_buchberger(gens: &[NcPoly], ord: &MonomialOrder, max_degree: u32) -> Result<NcGB> {
    ord.ensure_noncommutative()?;
    if gens.iter().any(|g| g.is_zero()) {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if let Some(d) = gens.iter().filter_map(|g| g.degree(ord)).max() {
        if d > max_degree {
            return Err(AlgebraError::DegreeBoundTooSmall { max_degree, degree: d });
        }
    }
    let mut state = Completion {
        ord,
        max_degree,
        elems: Vec::new(),
        alive: Vec::new(),
        queue: BTreeSet::new(),
        reducer: Reducer::new(&[], ord),
    };
    for g in gens {
        state.insert(g.reorder(ord));
    }
    while let Some((_, i, j, offset)) = state.queue.pop_first() {
        if !state.alive[i] || !state.alive[j] {
            continue;
        }
        let (f, g) = (&state.elems[i], &state.elems[j]);
        let u = f.leading_monomial().expect("nonzero");
        let v = g.leading_monomial().expect("nonzero");
        let k = u.len() - offset;
        let right = &v.letters()[k..];
        let left = &u.letters()[..offset];
        let a = f.sandwich(&[], right, &f.leading_coeff().expect("nonzero").recip());
        let b = g.sandwich(left, &[], &g.leading_coeff().expect("nonzero").recip());
        let s = a.sub(&b, ord);
        let h = state.reducer.normal_form(&s);
        if !h.is_zero() {
            state.insert(h);
        }
    }
    let basis = state
        .elems
        .into_iter()
        .zip(state.alive)
        .filter_map(|(p, a)| a.then_some(p))
        .collect();
    Ok(NcGB::from_parts(basis, ord.clone(), max_degree))
}

struct Completion<'a> {
    ord: &'a MonomialOrder,
    max_degree: u32,
    elems: Vec<NcPoly>,
    alive: Vec<bool>,
    queue: BTreeSet<(u32, usize, usize, usize)>,
    reducer: Reducer,
}

impl Completion<'_> {
    fn alive_basis(&self) -> Vec<NcPoly> {
        self.elems
            .iter()
            .zip(&self.alive)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p.clone())
            .collect()
    }

    fn insert(&mut self, p: NcPoly) {
        let mut pending = VecDeque::from([p]);
        while let Some(p) = pending.pop_front() {
            let p = self.reducer.normal_form(&p);
            if p.is_zero() {
                continue;
            }
            let lt = p.leading_monomial().expect("nonzero").clone();
            for id in 0..self.elems.len() {
                if self.alive[id] && self.elems[id].leading_monomial().expect("nonzero").contains(&lt) {
                    self.alive[id] = false;
                    pending.push_back(self.elems[id].clone());
                }
            }
            let new_id = self.elems.len();
            self.elems.push(p);
            self.alive.push(true);
            for id in 0..=new_id {
                if !self.alive[id] {
                    continue;
                }
                let other = self.elems[id].leading_monomial().expect("nonzero").clone();
                let other = &other;
                self.push_overlaps(id, other, new_id, &lt);
                if id != new_id {
                    self.push_overlaps(new_id, &lt, id, other);
                }
            }
            self.reducer = Reducer::new(&self.alive_basis(), self.ord);
        }
    }

    fn push_overlaps(&mut self, i: usize, u: &Word, j: usize, v: &Word) {
        for (offset, amb) in overlaps(u.letters(), v.letters()) {
            let d = self.ord.letters_degree(&amb);
            if d <= self.max_degree {
                self.queue.insert((d, i, j, offset));
            }
        }
    }
}

/// Monic, interreduced form of a basis; element order is preserved and
/// redundant elements are dropped.
pub fn nc_reduce_basis(g: &NcGB) -> NcGB {
    let ord = g.order();
    let mut basis: Vec<NcPoly> = g.basis().to_vec();
    loop {
        let mut changed = false;
        let mut k = 0;
        while k < basis.len() {
            let others: Vec<NcPoly> = basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, q)| q.clone())
                .collect();
            let reduced = nc_normal_form(&basis[k], &others, ord);
            if reduced.is_zero() {
                basis.remove(k);
                changed = true;
                continue;
            }
            if reduced != basis[k] {
                basis[k] = reduced;
                changed = true;
            }
            k += 1;
        }
        if !changed {
            break;
        }
    }
    let reduced = basis.iter().map(NcPoly::monic).collect();
    NcGB::from_parts(reduced, ord.clone(), g.complete_to_degree())
}

/// Normal words of each degree `0..=max_degree`, largest first within a
/// degree.
pub fn normal_words(g: &NcGB, max_degree: u32) -> Result<Vec<Vec<Word>>> {
    g.certify(max_degree)?;
    let ord = g.order();
    let m = g.reducer().matcher();
    let mut by_degree: Vec<Vec<Word>> = vec![Vec::new(); max_degree as usize + 1];
    let mut stack: Vec<(Vec<u16>, u32, u32)> = vec![(Vec::new(), Matcher::ROOT, 0)];
    while let Some((w, s, d)) = stack.pop() {
        for l in 0..ord.ngens() {
            let nd = d + ord.weights()[l];
            if nd > max_degree {
                continue;
            }
            let t = m.step(s, l as u16);
            if m.hit(t).is_none() {
                let mut v = w.clone();
                v.push(l as u16);
                stack.push((v, t, nd));
            }
        }
        by_degree[d as usize].push(Word::new(w));
    }
    for row in by_degree.iter_mut() {
        row.sort_by(|a, b| ord.cmp_words(b, a));
    }
    Ok(by_degree)
}

/// Number of normal words in each degree `0..=max_degree`.
pub fn normal_word_counts(g: &NcGB, max_degree: u32) -> Result<Vec<BigUint>> {
    g.certify(max_degree)?;
    let table = g.reducer().matcher().avoid_counts(g.order().weights(), max_degree);
    Ok(table.into_iter().next().expect("root state"))
}

/// Obstructions up to the certified degree whose S-polynomial does not
/// reduce to zero. Empty means the Diamond Lemma check passes.
pub fn diamond_failures(g: &NcGB) -> Result<Vec<Obstruction>> {
    let ord = g.order();
    let mut bad = Vec::new();
    for ob in find_obstructions(g.basis(), ord)? {
        if ob.ambiguity_degree > g.complete_to_degree() {
            continue;
        }
        let s = nc_s_polynomial(&ob, g.basis(), ord)?;
        if !g.normal_form(&s).is_zero() {
            bad.push(ob);
        }
    }
    Ok(bad)
}
