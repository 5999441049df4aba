use std::fmt::Write;

use crate::hopf::Tensor;
use crate::quiver::{Alphabet, Element, Symbol, Word};
use crate::scalars::CycNumber;

fn write_vertex(out: &mut String, alpha: &Alphabet, v: u32) {
    let x = alpha.setting().vertex(v);
    let _ = write!(out, "{x}");
}

fn write_letter(out: &mut String, alpha: &Alphabet, id: u16) {
    match alpha.letter(id).symbol {
        Symbol::Arrow { base, index, starred } => {
            out.push_str(if starred { "a*(" } else { "a(" });
            write_vertex(out, alpha, base);
            let _ = write!(out, ";{})", index + 1);
        }
        Symbol::E(i) => {
            let _ = write!(out, "E_{}", i + 1);
        }
        Symbol::F(i) => {
            let _ = write!(out, "F_{}", i + 1);
        }
        Symbol::K(i) => {
            let _ = write!(out, "K_{}", i + 1);
        }
        Symbol::Kinv(i) => {
            let _ = write!(out, "Kinv_{}", i + 1);
        }
        Symbol::Free(i) => {
            let _ = write!(out, "x_{}", i + 1);
        }
    }
}

/// Whether the word renders as nothing at all (the unit of a one-vertex algebra).
fn is_bare_unit(alpha: &Alphabet, w: &Word) -> bool {
    w.is_trivial() && !alpha.is_quiver()
}

/// Canonical rendering of a word: letters separated by spaces, `e(x)` for a
/// trivial path, `1` for the unit of the quantum group.
pub fn format_word(alpha: &Alphabet, w: &Word) -> String {
    let mut out = String::new();
    if w.is_trivial() {
        if alpha.is_quiver() {
            out.push_str("e(");
            write_vertex(&mut out, alpha, w.target());
            out.push(')');
        } else {
            out.push('1');
        }
        return out;
    }
    for (k, &l) in w.letters().iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        write_letter(&mut out, alpha, l);
    }
    out
}

/// True when the coefficient should be printed with a pulled-out minus sign.
fn is_negative(c: &CycNumber) -> bool {
    match c.as_rational() {
        Some(r) => r < &num_traits::Zero::zero(),
        None => c.sparse_terms().iter().all(|(_, r)| r < &num_traits::Zero::zero()),
    }
}

/// Renders |c|·body, where `body` may be empty (a bare scalar).
fn write_scaled(out: &mut String, c: &CycNumber, body: &str) {
    match c.as_rational() {
        Some(r) if num_traits::One::is_one(r) => {
            out.push_str(if body.is_empty() { "1" } else { body });
        }
        Some(r) => {
            if r.is_integer() {
                let _ = write!(out, "{}", r.numer());
            } else {
                let _ = write!(out, "{}/{}", r.numer(), r.denom());
            }
            if !body.is_empty() {
                let _ = write!(out, "*{body}");
            }
        }
        None => {
            let _ = write!(out, "({c})");
            if !body.is_empty() {
                let _ = write!(out, "*{body}");
            }
        }
    }
}

fn join_terms<'a>(terms: impl Iterator<Item = (String, &'a CycNumber)>) -> String {
    let mut out = String::new();
    for (k, (body, c)) in terms.enumerate() {
        let neg = is_negative(c);
        let mag = if neg { -c } else { c.clone() };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        write_scaled(&mut out, &mag, &body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical rendering of an element, terms in increasing monomial order.
pub fn format_element(alpha: &Alphabet, e: &Element) -> String {
    join_terms(e.iter().map(|(w, c)| {
        let body = if is_bare_unit(alpha, w) { String::new() } else { format_word(alpha, w) };
        (body, c)
    }))
}

/// Renders a tensor as a sum of `coeff*u ⊗ v` terms.
pub fn format_tensor(alpha: &Alphabet, t: &Tensor) -> String {
    join_terms(t.iter().map(|(ws, c)| {
        let body = ws.iter().map(|w| format_word(alpha, w)).collect::<Vec<_>>().join(" ⊗ ");
        (body, c)
    }))
}
