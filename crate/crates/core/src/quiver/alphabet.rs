use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::{Setting, Word};
use crate::scalars::ResidueVector;

/// A generator symbol. Indices are 0-based internally and printed 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Symbol {
    /// a(x, i), or a(x, i)* when `starred`; `base` is the vertex id of x.
    Arrow { base: u32, index: u8, starred: bool },
    E(u8),
    F(u8),
    K(u8),
    Kinv(u8),
    /// Letter of a free algebra with no quiver structure.
    Free(u8),
}

#[derive(Clone, Copy, Debug)]
pub struct Letter {
    pub symbol: Symbol,
    pub source: u32,
    pub target: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AlphabetKind {
    /// Arrows of Q(C, Z_n) only.
    SingleQuiver,
    /// Arrows of the double quiver.
    DoubleQuiver,
    /// One vertex with loops K_i, Kinv_i, E_i, F_i.
    Quantum,
    /// One vertex with loops x_1 < x_2 < ⋯.
    Free,
}

/// Letters of a path algebra, numbered in increasing monomial-order rank.
#[derive(Debug)]
pub struct Alphabet {
    setting: Arc<Setting>,
    kind: AlphabetKind,
    vertex_count: u32,
    letters: Vec<Letter>,
    lookup: FxHashMap<Symbol, u16>,
}

impl Alphabet {
    fn from_letters(setting: Arc<Setting>, kind: AlphabetKind, vertex_count: u32, letters: Vec<Letter>) -> Arc<Alphabet> {
        assert!(letters.len() < u16::MAX as usize);
        let lookup = letters.iter().enumerate().map(|(k, l)| (l.symbol, k as u16)).collect();
        Arc::new(Alphabet { setting, kind, vertex_count, letters, lookup })
    }

    /// The quiver Q(C, Z_n), with the starred arrows of its double when
    /// `double` is set. Starred arrows rank below unstarred ones; ties go by
    /// (index, base vertex).
    pub fn quiver(setting: Arc<Setting>, double: bool) -> Arc<Alphabet> {
        let t = setting.rank();
        let mut letters = Vec::new();
        let stars: &[bool] = if double { &[true, false] } else { &[false] };
        for &starred in stars {
            for i in 0..t {
                for x in setting.vertices() {
                    let tail = &x - setting.column(i);
                    let (xs, ts) = (setting.vertex_id(&x), setting.vertex_id(&tail));
                    let (source, target) = if starred { (xs, ts) } else { (ts, xs) };
                    letters.push(Letter { symbol: Symbol::Arrow { base: xs, index: i as u8, starred }, source, target });
                }
            }
        }
        let kind = if double { AlphabetKind::DoubleQuiver } else { AlphabetKind::SingleQuiver };
        let vc = setting.vertex_count() as u32;
        Alphabet::from_letters(setting, kind, vc, letters)
    }

    /// Generators F_i < Kinv_i < K_i < E_i of the quantum group.
    pub fn quantum(setting: Arc<Setting>) -> Arc<Alphabet> {
        let t = setting.rank() as u8;
        let families: [fn(u8) -> Symbol; 4] = [Symbol::F, Symbol::Kinv, Symbol::K, Symbol::E];
        let letters = families
            .iter()
            .flat_map(|f| (0..t).map(move |i| Letter { symbol: f(i), source: 0, target: 0 }))
            .collect();
        Alphabet::from_letters(setting, AlphabetKind::Quantum, 1, letters)
    }

    /// The free algebra on `count` letters.
    pub fn free(setting: Arc<Setting>, count: u8) -> Arc<Alphabet> {
        let letters = (0..count).map(|i| Letter { symbol: Symbol::Free(i), source: 0, target: 0 }).collect();
        Alphabet::from_letters(setting, AlphabetKind::Free, 1, letters)
    }

    pub fn setting(&self) -> &Arc<Setting> {
        &self.setting
    }

    pub fn kind(&self) -> AlphabetKind {
        self.kind
    }

    pub fn is_quiver(&self) -> bool {
        matches!(self.kind, AlphabetKind::SingleQuiver | AlphabetKind::DoubleQuiver)
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, id: u16) -> &Letter {
        &self.letters[id as usize]
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn id_of(&self, s: Symbol) -> Option<u16> {
        self.lookup.get(&s).copied()
    }

    /// Letter id of a(x, i) or a(x, i)*; panics if absent.
    pub fn arrow(&self, x: &ResidueVector, i: usize, starred: bool) -> u16 {
        let base = self.setting.vertex_id(x);
        self.id_of(Symbol::Arrow { base, index: i as u8, starred })
            .unwrap_or_else(|| panic!("arrow a({x:?},{}) starred={starred} not in alphabet", i + 1))
    }

    pub fn symbol_word(&self, s: Symbol) -> Word {
        let id = self.id_of(s).unwrap_or_else(|| panic!("{s:?} not in alphabet"));
        Word::letter(id, self.letter(id))
    }

    /// Trivial path e_x (for the quantum alphabet, the unit word).
    pub fn trivial(&self, vertex: u32) -> Word {
        Word::trivial(vertex)
    }

    /// Trivial words of every vertex; their sum is the identity.
    pub fn trivials(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.vertex_count).map(Word::trivial)
    }

    /// Builds the composite of letters written left to right, or `None` if
    /// two neighbours do not compose.
    pub fn word(&self, letters: &[u16]) -> Option<Word> {
        let mut w = Word::letter(*letters.first()?, self.letter(letters[0]));
        for &l in &letters[1..] {
            w = w.concat(&Word::letter(l, self.letter(l)))?;
        }
        Some(w)
    }
}
