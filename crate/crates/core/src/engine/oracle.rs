//! Dimension counts that do not use the rewriting system: a Macaulay-matrix
//! rank computation for small word spaces, and linear vector enumeration of
//! the right regular module otherwise.

use std::collections::{BTreeMap, VecDeque};

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{Alphabet, Element, Presentation, Word};
use crate::scalars::{CycField, CycNumber};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum OracleMethod {
    Macaulay,
    VectorEnumeration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub dimension: usize,
    pub method: OracleMethod,
    /// Words (Macaulay) or vectors defined (enumeration).
    pub work: usize,
}

/// Word-space size above which the Macaulay matrix is not attempted.
pub const WORD_BUDGET: usize = 60_000;
/// Maximal number of vectors the enumeration may define.
pub const VECTOR_BUDGET: usize = 400_000;

/// Number of paths of length at most `cap`.
fn path_count(alpha: &Alphabet, cap: usize) -> u128 {
    let vc = alpha.vertex_count() as usize;
    let mut ending: Vec<u128> = vec![1; vc];
    let mut total: u128 = vc as u128;
    for _ in 0..cap {
        let mut next = vec![0u128; vc];
        for l in alpha.letters() {
            next[l.source as usize] = next[l.source as usize].saturating_add(ending[l.target as usize]);
        }
        total = total.saturating_add(next.iter().sum::<u128>());
        ending = next;
    }
    total
}

/// All paths of length at most `cap`, keyed by (target, source).
fn paths_by_endpoints(alpha: &Alphabet, cap: usize) -> FxHashMap<(u32, u32), Vec<Word>> {
    let mut by_target: Vec<Vec<u16>> = vec![Vec::new(); alpha.vertex_count() as usize];
    for (id, l) in alpha.letters().iter().enumerate() {
        by_target[l.target as usize].push(id as u16);
    }
    let mut out: FxHashMap<(u32, u32), Vec<Word>> = FxHashMap::default();
    let mut frontier: Vec<Word> = alpha.trivials().collect();
    for len in 0..=cap {
        let mut next = Vec::new();
        for w in &frontier {
            out.entry((w.target(), w.source())).or_default().push(w.clone());
            if len < cap {
                for &l in &by_target[w.source() as usize] {
                    next.push(w.concat(&Word::letter(l, alpha.letter(l))).unwrap());
                }
            }
        }
        frontier = next;
    }
    out
}

/// Echelon form keyed by leading (largest) word; rows are monic.
struct Echelon {
    pivots: FxHashMap<Word, Element>,
}

impl Echelon {
    fn new() -> Echelon {
        Echelon { pivots: FxHashMap::default() }
    }

    fn reduce(&self, mut row: Element) -> Element {
        let mut done = Element::zero();
        while let Some((w, c)) = row.pop_leading() {
            match self.pivots.get(&w) {
                Some(p) => {
                    let mut rest = p.clone();
                    rest.pop_leading();
                    row.add_scaled(&rest, &-c);
                }
                None => done.add_term(w, c),
            }
        }
        done
    }

    fn insert(&mut self, row: Element) -> bool {
        let row = self.reduce(row);
        let Some((lead, c)) = row.leading() else { return false };
        let inv = c.inv().expect("nonzero pivot");
        let lead = lead.clone();
        self.pivots.insert(lead, row.scaled(&inv));
        true
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Rank of the span of `rows`, by exact elimination.
pub fn element_rank(rows: impl IntoIterator<Item = Element>) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Rows p·r·q of total degree ≤ cap in the (t, s) component.
fn component_rows<'a>(
    pres: &'a Presentation,
    paths: &'a FxHashMap<(u32, u32), Vec<Word>>,
    cap: usize,
    t: u32,
    s: u32,
) -> impl Iterator<Item = Element> + 'a {
    let empty: &'a [Word] = &[];
    pres.relations()
        .iter()
        .flat_map(|r| r.element.uniform_components().into_values())
        .flat_map(move |r| {
            let (rt, rs) = r.leading().map(|(w, _)| (w.target(), w.source())).unwrap();
            let d = r.degree();
            let ps = paths.get(&(t, rt)).map(Vec::as_slice).unwrap_or(empty);
            let qs = paths.get(&(rs, s)).map(Vec::as_slice).unwrap_or(empty);
            let mut rows = Vec::new();
            if d <= cap {
                for p in ps.iter().filter(|p| p.len() + d <= cap) {
                    let pr = mul_left(p, &r);
                    for q in qs.iter().filter(|q| p.len() + d + q.len() <= cap) {
                        rows.push(mul_right(&pr, q));
                    }
                }
            }
            rows
        })
}

fn mul_left(p: &Word, e: &Element) -> Element {
    e.iter().map(|(w, c)| (p.concat(w).unwrap(), c.clone())).collect()
}

fn mul_right(e: &Element, q: &Word) -> Element {
    e.iter().map(|(w, c)| (w.concat(q).unwrap(), c.clone())).collect()
}

fn macaulay_dimension(pres: &Presentation, cap: usize) -> OracleResult {
    let alpha = pres.alphabet();
    let paths = paths_by_endpoints(alpha, cap);
    let mut keys: Vec<(u32, u32)> = paths.keys().copied().collect();
    keys.sort();
    let mut dimension = 0;
    let mut work = 0;
    for (t, s) in keys {
        let words = paths[&(t, s)].len();
        work += words;
        let mut ech = Echelon::new();
        for row in component_rows(pres, &paths, cap, t, s) {
            ech.insert(row);
            if ech.rank() == words {
                break;
            }
        }
        dimension += words - ech.rank();
    }
    OracleResult { dimension, method: OracleMethod::Macaulay, work }
}

/// Literal test whether `elem` lies in span{p·r·q : total degree ≤ cap}.
/// Exponential in the cap; meant for small instances.
pub fn span_membership(pres: &Presentation, elem: &Element, cap: usize) -> Result<bool> {
    if elem.degree() > cap {
        return Err(Error::Domain(format!("element degree {} exceeds cap {cap}", elem.degree())));
    }
    let count = path_count(pres.alphabet(), cap);
    if count > WORD_BUDGET as u128 * 4 {
        return Err(Error::Resource(format!(
            "{count} words up to degree {cap}; use rewriting-based membership instead"
        )));
    }
    let paths = paths_by_endpoints(pres.alphabet(), cap);
    for ((t, s), comp) in elem.uniform_components() {
        let mut ech = Echelon::new();
        for row in component_rows(pres, &paths, cap, t, s) {
            ech.insert(row);
        }
        if !ech.reduce(comp).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

type Combo = BTreeMap<u32, CycNumber>;

fn combo_add(c: &mut Combo, i: u32, a: CycNumber) {
    if a.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match c.entry(i) {
        Entry::Vacant(v) => {
            v.insert(a);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &a;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

const UNDEFINED: u32 = u32::MAX;

/// Linear vector enumeration of the right regular module A_A, with one
/// starting vector e_x per vertex.
struct VectorEnumeration<'a> {
    alpha: &'a Alphabet,
    field: &'static CycField,
    relations: Vec<Vec<Element>>,
    letters_at: Vec<Vec<u16>>,
    vertex: Vec<u32>,
    depth: Vec<usize>,
    action: Vec<Vec<u32>>,
    dead: Vec<Option<Combo>>,
    live: usize,
    cap: usize,
    budget: usize,
    queue: VecDeque<Combo>,
}

impl<'a> VectorEnumeration<'a> {
    fn new(pres: &'a Presentation, cap: usize, budget: usize) -> Self {
        let alpha = pres.alphabet();
        let vc = alpha.vertex_count() as usize;
        let mut relations = vec![Vec::new(); vc];
        for r in pres.relations() {
            for ((t, _), comp) in r.element.uniform_components() {
                relations[t as usize].push(comp);
            }
        }
        let mut letters_at = vec![Vec::new(); vc];
        for (id, l) in alpha.letters().iter().enumerate() {
            letters_at[l.target as usize].push(id as u16);
        }
        let mut ve = VectorEnumeration {
            alpha,
            field: alpha.setting().field(),
            relations,
            letters_at,
            vertex: Vec::new(),
            depth: Vec::new(),
            action: Vec::new(),
            dead: Vec::new(),
            live: 0,
            cap,
            budget,
            queue: VecDeque::new(),
        };
        for v in 0..vc as u32 {
            ve.define(v, 0);
        }
        ve
    }

    fn define(&mut self, vertex: u32, depth: usize) -> u32 {
        let id = self.vertex.len() as u32;
        self.vertex.push(vertex);
        self.depth.push(depth);
        self.action.push(vec![UNDEFINED; self.alpha.len()]);
        self.dead.push(None);
        self.live += 1;
        id
    }

    fn is_live(&self, v: u32) -> bool {
        self.dead[v as usize].is_none()
    }

    fn resolve_vector(&mut self, v: u32) -> Combo {
        match self.dead[v as usize].take() {
            None => Combo::from([(v, self.field.one())]),
            Some(expr) => {
                let r = self.resolve(expr);
                self.dead[v as usize] = Some(r.clone());
                r
            }
        }
    }

    fn resolve(&mut self, c: Combo) -> Combo {
        let mut out = Combo::new();
        for (i, a) in c {
            if self.is_live(i) {
                combo_add(&mut out, i, a);
            } else {
                for (j, b) in self.resolve_vector(i) {
                    combo_add(&mut out, j, &a * &b);
                }
            }
        }
        out
    }

    fn apply_vector(&mut self, v: u32, g: u16) -> Result<Combo> {
        let letter = self.alpha.letter(g);
        if letter.target != self.vertex[v as usize] {
            return Ok(Combo::new());
        }
        let mut image = self.action[v as usize][g as usize];
        if image == UNDEFINED {
            let depth = self.depth[v as usize] + 1;
            if depth > self.cap {
                return Err(Error::CapInsufficient {
                    cap: self.cap,
                    detail: "vector enumeration needed a definition beyond the cap".into(),
                });
            }
            if self.vertex.len() >= self.budget {
                return Err(Error::Resource(format!("vector enumeration exceeded {} vectors", self.budget)));
            }
            image = self.define(letter.source, depth);
            self.action[v as usize][g as usize] = image;
        }
        Ok(self.resolve_vector(image))
    }

    fn apply(&mut self, c: &Combo, g: u16) -> Result<Combo> {
        let mut out = Combo::new();
        for (&i, a) in c {
            for (j, b) in self.apply_vector(i, g)? {
                combo_add(&mut out, j, a * &b);
            }
        }
        Ok(out)
    }

    fn trace(&mut self, v: u32, rel: &Element) -> Result<Combo> {
        let mut total = Combo::new();
        for (w, c) in rel.iter() {
            let mut cur = if w.target() == self.vertex[v as usize] {
                Combo::from([(v, self.field.one())])
            } else {
                Combo::new()
            };
            for &g in w.letters() {
                if cur.is_empty() {
                    break;
                }
                let r = self.resolve(cur);
                cur = self.apply(&r, g)?;
            }
            for (j, b) in self.resolve(cur) {
                combo_add(&mut total, j, c * &b);
            }
        }
        Ok(self.resolve(total))
    }

    fn coincide(&mut self, c: Combo) -> Result<()> {
        self.queue.push_back(c);
        while let Some(c) = self.queue.pop_front() {
            let mut c = self.resolve(c);
            let Some((m, a)) = c.pop_last() else { continue };
            let scale = -a.inv().expect("nonzero coefficient");
            let expr: Combo = c.into_iter().map(|(i, b)| (i, &b * &scale)).collect();
            self.dead[m as usize] = Some(expr.clone());
            self.live -= 1;
            for g in 0..self.alpha.len() as u16 {
                let u = self.action[m as usize][g as usize];
                if u == UNDEFINED {
                    continue;
                }
                let lhs = self.apply(&expr, g)?;
                let mut diff = self.resolve(lhs);
                for (j, b) in self.resolve_vector(u) {
                    combo_add(&mut diff, j, -b);
                }
                if !diff.is_empty() {
                    self.queue.push_back(diff);
                }
            }
        }
        Ok(())
    }

    fn run(&mut self) -> Result<usize> {
        let mut i = 0u32;
        while (i as usize) < self.vertex.len() {
            if self.is_live(i) {
                let rels = self.relations[self.vertex[i as usize] as usize].clone();
                for r in &rels {
                    let c = self.trace(i, r)?;
                    if !c.is_empty() {
                        self.coincide(c)?;
                    }
                    if !self.is_live(i) {
                        break;
                    }
                }
            }
            if self.is_live(i) {
                let letters = self.letters_at[self.vertex[i as usize] as usize].clone();
                for g in letters {
                    self.apply_vector(i, g)?;
                }
            }
            i += 1;
        }
        Ok(self.live)
    }
}

/// dim A computed independently of the rewriting system.
///
/// Uses the Macaulay matrix of words of length ≤ cap when the word space is
/// small, and vector enumeration (definitions of depth ≤ 2·cap) otherwise.
pub fn dimension_oracle(pres: &Presentation, cap: usize) -> Result<OracleResult> {
    if path_count(pres.alphabet(), cap) <= WORD_BUDGET as u128 {
        Ok(macaulay_dimension(pres, cap))
    } else {
        dimension_by_enumeration(pres, 2 * cap, VECTOR_BUDGET)
    }
}

pub fn dimension_by_enumeration(pres: &Presentation, cap: usize, budget: usize) -> Result<OracleResult> {
    let mut ve = VectorEnumeration::new(pres, cap, budget);
    let dimension = ve.run()?;
    Ok(OracleResult { dimension, method: OracleMethod::VectorEnumeration, work: ve.vertex.len() })
}

pub fn dimension_by_macaulay(pres: &Presentation, cap: usize) -> Result<OracleResult> {
    let count = path_count(pres.alphabet(), cap);
    if count > WORD_BUDGET as u128 * 4 {
        return Err(Error::Resource(format!("{count} words up to degree {cap}")));
    }
    Ok(macaulay_dimension(pres, cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{AlgebraKind, CartanMatrix, Relation, RelationTag, Setting};

    fn free(letters: u8) -> Presentation {
        let s = Setting::new(CartanMatrix::of_type("A1").unwrap(), 5).unwrap();
        Presentation::new(AlgebraKind::Uq, Alphabet::free(s, letters), Vec::new())
    }

    #[test]
    fn free_algebra_word_count() {
        assert_eq!(dimension_oracle(&free(2), 3).unwrap().dimension, 15);
        assert_eq!(path_count(free(3).alphabet(), 2), 13);
    }

    #[test]
    fn commutative_plane_truncation() {
        let mut p = free(2);
        let al = p.alphabet().clone();
        let k = al.setting().field();
        let mut r = Element::word(al.word(&[1, 0]).unwrap(), k);
        r.add_term(al.word(&[0, 1]).unwrap(), -k.one());
        p.relations_mut().push(Relation { tag: RelationTag::UqTorus, label: "comm".into(), element: r.clone() });
        // monomials x^a y^b with a + b ≤ 3
        assert_eq!(dimension_by_macaulay(&p, 3).unwrap().dimension, 10);
        assert!(span_membership(&p, &r, 3).unwrap());
        assert!(!span_membership(&p, &Element::word(al.word(&[0, 1]).unwrap(), k), 3).unwrap());
    }

    #[test]
    fn enumeration_of_truncated_polynomials() {
        // x^3 = 0, y^2 = 0, yx = xy: dimension 6
        let mut p = free(2);
        let al = p.alphabet().clone();
        let k = al.setting().field();
        let mut comm = Element::word(al.word(&[1, 0]).unwrap(), k);
        comm.add_term(al.word(&[0, 1]).unwrap(), -k.one());
        for e in [comm, Element::word(al.word(&[0, 0, 0]).unwrap(), k), Element::word(al.word(&[1, 1]).unwrap(), k)] {
            p.relations_mut().push(Relation { tag: RelationTag::UqTorus, label: String::new(), element: e });
        }
        assert_eq!(dimension_by_enumeration(&p, 10, 1000).unwrap().dimension, 6);
        assert_eq!(dimension_by_macaulay(&p, 5).unwrap().dimension, 6);
    }
}
