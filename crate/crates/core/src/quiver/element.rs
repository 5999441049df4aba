use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;

use super::Word;
use crate::scalars::{CycField, CycNumber};

/// A finite linear combination of paths with nonzero cyclotomic coefficients.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Element {
    terms: BTreeMap<Word, CycNumber>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn monomial(w: Word, c: CycNumber) -> Element {
        let mut e = Element::zero();
        e.add_term(w, c);
        e
    }

    pub fn word(w: Word, field: &'static CycField) -> Element {
        Element::monomial(w, field.one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Word, CycNumber> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&CycNumber> {
        self.terms.get(w)
    }

    /// Largest word in the monomial order, with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &CycNumber)> {
        self.terms.last_key_value()
    }

    pub fn pop_leading(&mut self) -> Option<(Word, CycNumber)> {
        self.terms.pop_last()
    }

    /// Length of the longest word; 0 for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: CycNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_term_ref(&mut self, w: &Word, c: &CycNumber) {
        if c.is_zero() {
            return;
        }
        if let Some(slot) = self.terms.get_mut(w) {
            *slot += c;
            if slot.is_zero() {
                self.terms.remove(w);
            }
        } else {
            self.terms.insert(w.clone(), c.clone());
        }
    }

    /// self += c · other
    pub fn add_scaled(&mut self, other: &Element, c: &CycNumber) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (w, d) in &other.terms {
            if unit {
                self.add_term_ref(w, d);
            } else {
                self.add_term(w.clone(), d * c);
            }
        }
    }

    pub fn add(&mut self, other: &Element) {
        for (w, d) in &other.terms {
            self.add_term_ref(w, d);
        }
    }

    pub fn sub(&mut self, other: &Element) {
        for (w, d) in &other.terms {
            self.add_term(w.clone(), -d);
        }
    }

    pub fn scaled(&self, c: &CycNumber) -> Element {
        let mut e = Element::zero();
        e.add_scaled(self, c);
        e
    }

    pub fn negated(&self) -> Element {
        Element { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn difference(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.sub(other);
        e
    }

    /// Product in the free path algebra (no relations applied).
    pub fn mul(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if let Some(w) = u.concat(v) {
                    out.add_term(w, a * b);
                }
            }
        }
        out
    }

    /// Splits into uniform components e_t · self · e_s, keyed by (t, s).
    pub fn uniform_components(&self) -> BTreeMap<(u32, u32), Element> {
        let mut out: BTreeMap<(u32, u32), Element> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry((w.target(), w.source())).or_default().add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&CycNumber) -> CycNumber) -> Element {
        let mut e = Element::zero();
        for (w, c) in &self.terms {
            e.add_term(w.clone(), f(c));
        }
        e
    }
}

impl FromIterator<(Word, CycNumber)> for Element {
    fn from_iter<I: IntoIterator<Item = (Word, CycNumber)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (w, c) in iter {
            e.add_term(w, c);
        }
        e
    }
}
