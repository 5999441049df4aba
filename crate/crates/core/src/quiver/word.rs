use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::Letter;

pub type Letters = SmallVec<[u16; 14]>;

/// A path in a quiver, written left to right with the rightmost letter
/// applied first: letters[k] starts where letters[k + 1] ends.
///
/// Words compare degree-lexicographically by letter id; trivial paths are
/// ordered by vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    target: u32,
    source: u32,
    letters: Letters,
}

impl Word {
    pub fn trivial(vertex: u32) -> Word {
        Word { target: vertex, source: vertex, letters: Letters::new() }
    }

    pub fn letter(id: u16, info: &Letter) -> Word {
        let mut letters = Letters::new();
        letters.push(id);
        Word { target: info.target, source: info.source, letters }
    }

    /// Internal constructor; callers guarantee composability.
    pub(crate) fn from_raw(target: u32, source: u32, letters: Letters) -> Word {
        Word { target, source, letters }
    }

    pub fn target(&self) -> u32 {
        self.target
    }

    pub fn source(&self) -> u32 {
        self.source
    }

    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The product `self · other`, defined when `other` ends where `self` starts.
    pub fn concat(&self, other: &Word) -> Option<Word> {
        if self.source != other.target {
            return None;
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Some(Word { target: self.target, source: other.source, letters })
    }

    /// prefix · middle · suffix, where prefix and suffix are letter slices of
    /// an ambient word and `middle` has the endpoints of the slice it replaces.
    pub(crate) fn splice(&self, start: usize, end: usize, middle: &Word) -> Word {
        let mut letters = Letters::with_capacity(self.len() - (end - start) + middle.len());
        letters.extend_from_slice(&self.letters[..start]);
        letters.extend_from_slice(&middle.letters);
        letters.extend_from_slice(&self.letters[end..]);
        Word { target: self.target, source: self.source, letters }
    }

    /// Whether `sub` occurs as a contiguous subword starting at `pos`.
    pub fn occurs_at(&self, sub: &Word, pos: usize) -> bool {
        pos + sub.len() <= self.len() && self.letters[pos..pos + sub.len()] == sub.letters[..]
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.target.cmp(&other.target))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            write!(f, "e[{}]", self.target)
        } else {
            write!(f, "{:?}", self.letters.as_slice())
        }
    }
}
