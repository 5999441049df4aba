#![allow(dead_code)]

use std::sync::Arc;

use num_rational::BigRational;
use quivhopf_core::quiver::{Alphabet, CartanMatrix, Element, Setting, Word};
use quivhopf_core::scalars::CycNumber;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn setting(ty: &str, n: u32) -> Arc<Setting> {
    Setting::new(CartanMatrix::of_type(ty).unwrap(), n).unwrap()
}

/// A small random scalar: a rational, or a short combination of powers of q.
pub fn random_scalar(alpha: &Alphabet, rng: &mut ChaCha8Rng) -> CycNumber {
    let k = alpha.setting().field();
    let n = alpha.setting().n() as i64;
    let mut c = k.zero();
    for _ in 0..rng.gen_range(1..=3) {
        let r = BigRational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into());
        c += &k.q_power(rng.gen_range(0..n)).scale(&r);
    }
    if c.is_zero() {
        k.one()
    } else {
        c
    }
}

/// A random path (or word) of length at most `max_len`; may be trivial.
pub fn random_word(alpha: &Alphabet, rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut w = alpha.trivial(rng.gen_range(0..alpha.vertex_count()));
    for k in 0..len {
        let l = rng.gen_range(0..alpha.len()) as u16;
        let lw = Word::letter(l, alpha.letter(l));
        if k == 0 {
            w = lw;
        } else if let Some(next) = w.concat(&lw) {
            w = next;
        }
    }
    w
}

pub fn random_element(alpha: &Alphabet, rng: &mut ChaCha8Rng, max_terms: usize, max_len: usize) -> Element {
    let mut e = Element::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let w = random_word(alpha, rng, max_len);
        e.add_term(w, random_scalar(alpha, rng));
    }
    e
}
