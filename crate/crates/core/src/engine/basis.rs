use rustc_hash::FxHashMap;

use super::RewriteSystem;
use crate::error::{Error, Result};
use crate::quiver::Word;

/// Irreducible words of a rewriting system, sorted by the monomial order.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    words: Vec<Word>,
    index: FxHashMap<Word, usize>,
    closed: bool,
}

impl QuotientBasis {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// True when no irreducible word is longer than the cap, so the span of
    /// `words` is closed under multiplication.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn max_length(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }
}

/// Enumerates irreducible words of length at most the cap by right extension.
/// Errors if an irreducible word of length cap + 1 exists, or if the count
/// passes `limit`.
pub fn enumerate_basis(rs: &RewriteSystem, limit: usize) -> Result<QuotientBasis> {
    let alpha = rs.alphabet();
    let mut by_target: Vec<Vec<u16>> = vec![Vec::new(); alpha.vertex_count() as usize];
    for (id, l) in alpha.letters().iter().enumerate() {
        by_target[l.target as usize].push(id as u16);
    }
    let mut words: Vec<Word> = alpha.trivials().filter(|w| rs.is_irreducible(w)).collect();
    let mut frontier = words.clone();
    let mut closed = true;
    for len in 1..=rs.cap() + 1 {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &by_target[w.source() as usize] {
                let ext = w.concat(&Word::letter(l, alpha.letter(l))).expect("letter composes");
                if !rs.reducible_at_end(&ext) && rs.is_irreducible(&ext) {
                    next.push(ext);
                }
            }
        }
        if len == rs.cap() + 1 {
            closed = next.is_empty();
            break;
        }
        if words.len() + next.len() > limit {
            return Err(Error::Resource(format!("more than {limit} irreducible words")));
        }
        if next.is_empty() {
            break;
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    if !closed {
        return Err(Error::CapInsufficient {
            cap: rs.cap(),
            detail: "irreducible words of length cap + 1 remain; the quotient may be infinite-dimensional".into(),
        });
    }
    words.sort();
    let index = words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
    Ok(QuotientBasis { words, index, closed })
}
