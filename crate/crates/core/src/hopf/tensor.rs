use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;

use smallvec::SmallVec;

use crate::engine::Algebra;
use crate::error::Result;
use crate::quiver::{Element, Word};
use crate::scalars::CycNumber;

pub type Slots = SmallVec<[Word; 3]>;

/// An element of A ⊗ ⋯ ⊗ A, as a combination of tuples of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor {
    terms: BTreeMap<Slots, CycNumber>,
}

impl Tensor {
    pub fn zero() -> Tensor {
        Tensor::default()
    }

    /// a_1 ⊗ a_2 ⊗ ⋯ expanded bilinearly.
    pub fn pure(factors: &[&Element]) -> Tensor {
        let mut acc: Vec<(Slots, CycNumber)> = Vec::new();
        let Some((first, rest)) = factors.split_first() else { return Tensor::zero() };
        for (w, c) in first.iter() {
            acc.push((SmallVec::from_iter([w.clone()]), c.clone()));
        }
        for f in rest {
            let mut next = Vec::with_capacity(acc.len() * f.len());
            for (slots, c) in &acc {
                for (w, d) in f.iter() {
                    let mut s = slots.clone();
                    s.push(w.clone());
                    next.push((s, c * d));
                }
            }
            acc = next;
        }
        let mut t = Tensor::zero();
        for (s, c) in acc {
            t.add_term(s, c);
        }
        t
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

    pub fn iter(&self) -> btree_map::Iter<'_, Slots, CycNumber> {
        self.terms.iter()
    }

    pub fn coefficient(&self, slots: &[Word]) -> Option<&CycNumber> {
        self.terms.get(slots)
    }

    pub fn add_term(&mut self, slots: Slots, c: CycNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(slots) {
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

    pub fn add_scaled(&mut self, other: &Tensor, c: &CycNumber) {
        if c.is_zero() {
            return;
        }
        for (s, d) in &other.terms {
            self.add_term(s.clone(), d * c);
        }
    }

    pub fn add(&mut self, other: &Tensor) {
        for (s, d) in &other.terms {
            self.add_term(s.clone(), d.clone());
        }
    }

    pub fn sub(&mut self, other: &Tensor) {
        for (s, d) in &other.terms {
            self.add_term(s.clone(), -d);
        }
    }

    pub fn difference(&self, other: &Tensor) -> Tensor {
        let mut t = self.clone();
        t.sub(other);
        t
    }

    pub fn scaled(&self, c: &CycNumber) -> Tensor {
        let mut t = Tensor::zero();
        t.add_scaled(self, c);
        t
    }

    /// Slotwise product, each slot reduced to normal form in `alg`.
    pub fn mul(&self, other: &Tensor, alg: &Algebra) -> Result<Tensor> {
        let mut out = Tensor::zero();
        for (a, c) in &self.terms {
            'pairs: for (b, d) in &other.terms {
                let mut slots: Vec<Element> = Vec::with_capacity(a.len());
                for (u, v) in a.iter().zip(b.iter()) {
                    let Some(uv) = u.concat(v) else { continue 'pairs };
                    let nf = alg.normal_form_word(&uv)?;
                    if nf.is_zero() {
                        continue 'pairs;
                    }
                    slots.push(nf);
                }
                let refs: Vec<&Element> = slots.iter().collect();
                out.add_scaled(&Tensor::pure(&refs), &(c * d));
            }
        }
        Ok(out)
    }

    /// Every slot reduced to normal form in `alg`.
    pub fn reduce(&self, alg: &Algebra) -> Result<Tensor> {
        let mut out = Tensor::zero();
        for (slots, c) in &self.terms {
            let nfs = slots.iter().map(|w| alg.normal_form_word(w)).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&Element> = nfs.iter().collect();
            out.add_scaled(&Tensor::pure(&refs), c);
        }
        Ok(out)
    }

    /// Replaces slot `k` of every term by the tensor `f(word)`, which may
    /// have several slots; the result has arity increased accordingly.
    pub fn expand_slot(&self, k: usize, mut f: impl FnMut(&Word) -> Result<Tensor>) -> Result<Tensor> {
        let mut out = Tensor::zero();
        for (slots, c) in &self.terms {
            let image = f(&slots[k])?;
            for (inner, d) in image.iter() {
                let mut s: Slots = SmallVec::new();
                s.extend(slots[..k].iter().cloned());
                s.extend(inner.iter().cloned());
                s.extend(slots[k + 1..].iter().cloned());
                out.add_term(s, c * d);
            }
        }
        Ok(out)
    }

    /// Applies a linear map on slot `k` into scalars, dropping the slot.
    pub fn contract_slot(&self, k: usize, mut f: impl FnMut(&Word) -> CycNumber) -> Tensor {
        let mut out = Tensor::zero();
        for (slots, c) in &self.terms {
            let v = f(&slots[k]);
            let mut s = slots.clone();
            s.remove(k);
            out.add_term(s, c * &v);
        }
        out
    }

    /// The single-slot tensor as an element.
    pub fn to_element(&self) -> Element {
        self.terms.iter().map(|(s, c)| (s[0].clone(), c.clone())).collect()
    }

    pub fn from_element(e: &Element) -> Tensor {
        Tensor::pure(&[e])
    }
}
