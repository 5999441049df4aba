use std::sync::{Arc, RwLock};

use rustc_hash::FxHashMap;
use smallvec::smallvec;

use super::Tensor;
use crate::engine::Algebra;
use crate::error::Result;
use crate::quiver::{AlgebraKind, Element, Symbol, Word};
use crate::scalars::{CycNumber, ResidueVector};

const MEMO_LIMIT: usize = 1 << 16;

/// Coproduct, counit and antipode of every generator of a presented
/// algebra, extended (anti)multiplicatively to arbitrary elements.
pub struct HopfData<'a> {
    alg: &'a Algebra,
    letter_delta: Vec<Tensor>,
    letter_counit: Vec<CycNumber>,
    letter_antipode: Vec<Element>,
    vertex_delta: Vec<Tensor>,
    vertex_antipode: Vec<Element>,
    memo: RwLock<FxHashMap<Word, Arc<Tensor>>>,
}

impl<'a> HopfData<'a> {
    pub fn new(alg: &'a Algebra) -> Result<HopfData<'a>> {
        let setting = alg.setting().clone();
        let alpha = alg.alphabet().clone();
        let k = alg.field();
        let w = |word: Word| Element::word(word, k);
        let mono = |word: Word, c: CycNumber| Element::monomial(word, c);
        let pair = |a: &Element, b: &Element| Tensor::pure(&[a, b]);

        let mut vertex_delta = Vec::new();
        let mut vertex_antipode = Vec::new();
        let mut letter_delta = Vec::new();
        let mut letter_counit = Vec::new();
        let mut letter_antipode = Vec::new();

        if alg.kind().is_quiver() {
            let e = |x: &ResidueVector| w(alpha.trivial(setting.vertex_id(x)));
            for x in setting.vertices() {
                let mut d = Tensor::zero();
                for u in setting.vertices() {
                    d.add(&pair(&e(&u), &e(&(&x - &u))));
                }
                vertex_delta.push(d);
                vertex_antipode.push(e(&-&x));
            }
            for letter in alpha.letters() {
                let Symbol::Arrow { base, index, starred } = letter.symbol else { unreachable!() };
                let i = index as usize;
                let x = setting.vertex(base);
                let arrow = |y: &ResidueVector| w(Word::letter(alpha.arrow(y, i, starred), alpha.letter(alpha.arrow(y, i, starred))));
                let mut d = Tensor::zero();
                for u in setting.vertices() {
                    let v = &x - &u;
                    if starred {
                        d.add(&pair(&e(&u), &arrow(&v)));
                        d.add_scaled(&pair(&arrow(&u), &e(&v)), &k.q_power(-(v.get(i) as i64)));
                    } else {
                        d.add_scaled(&pair(&e(&u), &arrow(&v)), &k.q_power(u.get(i) as i64));
                        d.add(&pair(&arrow(&u), &e(&v)));
                    }
                }
                letter_delta.push(d);
                letter_counit.push(k.zero());
                let image = &-&x + setting.column(i);
                let xi = x.get(i) as i64;
                let c = if starred { -k.q_power(2 - xi) } else { -k.q_power(xi - 2) };
                letter_antipode.push(arrow(&image).scaled(&c));
            }
        } else {
            let one = w(alpha.trivial(0));
            vertex_delta.push(pair(&one, &one));
            vertex_antipode.push(one.clone());
            let sym = |s: Symbol| w(alpha.symbol_word(s));
            for letter in alpha.letters() {
                let (d, eps, s) = match letter.symbol {
                    Symbol::K(i) => {
                        let kk = sym(Symbol::K(i));
                        (pair(&kk, &kk), k.one(), sym(Symbol::Kinv(i)))
                    }
                    Symbol::Kinv(i) => {
                        let kk = sym(Symbol::Kinv(i));
                        (pair(&kk, &kk), k.one(), sym(Symbol::K(i)))
                    }
                    Symbol::E(i) => {
                        let (ee, kk) = (sym(Symbol::E(i)), sym(Symbol::K(i)));
                        let mut d = pair(&ee, &one);
                        d.add(&pair(&kk, &ee));
                        let s = mono(alpha.symbol_word(Symbol::Kinv(i)).concat(&alpha.symbol_word(Symbol::E(i))).unwrap(), -k.one());
                        (d, k.zero(), s)
                    }
                    Symbol::F(i) => {
                        let (ff, kb) = (sym(Symbol::F(i)), sym(Symbol::Kinv(i)));
                        let mut d = pair(&ff, &kb);
                        d.add(&pair(&one, &ff));
                        let s = mono(alpha.symbol_word(Symbol::F(i)).concat(&alpha.symbol_word(Symbol::K(i))).unwrap(), -k.one());
                        (d, k.zero(), s)
                    }
                    Symbol::Arrow { .. } | Symbol::Free(_) => unreachable!("not a quantum-group letter"),
                };
                letter_delta.push(d);
                letter_counit.push(eps);
                letter_antipode.push(s);
            }
        }
        let reduce_t = |t: Tensor| t.reduce(alg);
        let reduce_e = |e: Element| alg.normal_form(&e);
        Ok(HopfData {
            alg,
            letter_delta: letter_delta.into_iter().map(reduce_t).collect::<Result<_>>()?,
            letter_counit,
            letter_antipode: letter_antipode.into_iter().map(reduce_e).collect::<Result<_>>()?,
            vertex_delta: vertex_delta.into_iter().map(reduce_t).collect::<Result<_>>()?,
            vertex_antipode: vertex_antipode.into_iter().map(reduce_e).collect::<Result<_>>()?,
            memo: RwLock::new(FxHashMap::default()),
        })
    }

    pub fn algebra(&self) -> &'a Algebra {
        self.alg
    }

    pub fn kind(&self) -> AlgebraKind {
        self.alg.kind()
    }

    /// Δ of a single word: the product of the coproducts of its letters.
    pub fn comultiply_word(&self, w: &Word) -> Result<Arc<Tensor>> {
        if let Some(t) = self.memo.read().unwrap().get(w) {
            return Ok(t.clone());
        }
        let l = w.letters();
        let out = match l.len() {
            0 => self.vertex_delta[w.target() as usize].clone(),
            1 => self.letter_delta[l[0] as usize].clone(),
            len => {
                let alpha = self.alg.alphabet();
                let head = alpha.word(&l[..len - 1]).expect("subword of a path");
                let last = l[len - 1];
                self.comultiply_word(&head)?.mul(&self.letter_delta[last as usize], self.alg)?
            }
        };
        let out = Arc::new(out);
        let mut memo = self.memo.write().unwrap();
        if memo.len() >= MEMO_LIMIT {
            memo.clear();
        }
        memo.insert(w.clone(), out.clone());
        Ok(out)
    }

    pub fn comultiply(&self, e: &Element) -> Result<Tensor> {
        let mut out = Tensor::zero();
        for (w, c) in e.iter() {
            out.add_scaled(&*self.comultiply_word(w)?, c);
        }
        Ok(out)
    }

    pub fn counit_word(&self, w: &Word) -> CycNumber {
        let k = self.alg.field();
        if w.is_trivial() {
            // the identity vertex carries id 0 in every alphabet
            return if w.target() == 0 { k.one() } else { k.zero() };
        }
        let mut c = k.one();
        for &l in w.letters() {
            c = &c * &self.letter_counit[l as usize];
            if c.is_zero() {
                break;
            }
        }
        c
    }

    pub fn counit(&self, e: &Element) -> CycNumber {
        let mut c = self.alg.field().zero();
        for (w, d) in e.iter() {
            c += &(d * &self.counit_word(w));
        }
        c
    }

    /// S of a word: the images of its letters multiplied in reverse order.
    pub fn antipode_word(&self, w: &Word) -> Result<Element> {
        if w.is_trivial() {
            return Ok(self.vertex_antipode[w.target() as usize].clone());
        }
        let mut acc = self.alg.one();
        for &l in w.letters().iter().rev() {
            acc = self.alg.mul(&acc, &self.letter_antipode[l as usize])?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    pub fn antipode(&self, e: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (w, c) in e.iter() {
            out.add_scaled(&self.antipode_word(w)?, c);
        }
        Ok(out)
    }

    /// (Δ ⊗ id)Δ and (id ⊗ Δ)Δ of `e`.
    pub fn coassociativity_sides(&self, e: &Element) -> Result<(Tensor, Tensor)> {
        let d = self.comultiply(e)?;
        let left = d.expand_slot(0, |w| self.comultiply_word(w).map(|t| (*t).clone()))?;
        let right = d.expand_slot(1, |w| self.comultiply_word(w).map(|t| (*t).clone()))?;
        Ok((left, right))
    }

    /// m(S ⊗ id)Δ(e) when `left`, else m(id ⊗ S)Δ(e).
    pub fn antipode_convolution(&self, e: &Element, left: bool) -> Result<Element> {
        let d = self.comultiply(e)?;
        let mut out = Element::zero();
        for (slots, c) in d.iter() {
            let a = Element::word(slots[0].clone(), self.alg.field());
            let b = Element::word(slots[1].clone(), self.alg.field());
            let prod = if left {
                self.alg.mul(&self.antipode(&a)?, &b)?
            } else {
                self.alg.mul(&a, &self.antipode(&b)?)?
            };
            out.add_scaled(&prod, c);
        }
        Ok(out)
    }

    /// (ε ⊗ id)Δ(e) when `left`, else (id ⊗ ε)Δ(e).
    pub fn counit_contraction(&self, e: &Element, left: bool) -> Result<Element> {
        let d = self.comultiply(e)?;
        let slot = if left { 0 } else { 1 };
        Ok(d.contract_slot(slot, |w| self.counit_word(w)).to_element())
    }

    /// Pure tensor of two elements of the algebra, reduced slotwise.
    pub fn tensor(&self, a: &Element, b: &Element) -> Result<Tensor> {
        let mut out = Tensor::zero();
        let na = self.alg.normal_form(a)?;
        let nb = self.alg.normal_form(b)?;
        for (u, c) in na.iter() {
            for (v, d) in nb.iter() {
                out.add_term(smallvec![u.clone(), v.clone()], c * d);
            }
        }
        Ok(out)
    }
}
