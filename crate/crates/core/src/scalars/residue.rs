use std::fmt;
use std::ops::{Add, Neg, Sub};

use smallvec::SmallVec;

/// An element of (Z_n)^t with entries stored reduced to `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueVector {
    modulus: u32,
    entries: SmallVec<[u32; 4]>,
}

impl ResidueVector {
    pub fn new(modulus: u32, entries: impl IntoIterator<Item = i64>) -> ResidueVector {
        assert!(modulus > 0);
        let entries = entries.into_iter().map(|e| e.rem_euclid(modulus as i64) as u32).collect();
        ResidueVector { modulus, entries }
    }

    pub fn zero(modulus: u32, rank: usize) -> ResidueVector {
        ResidueVector { modulus, entries: SmallVec::from_elem(0, rank) }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// The i-th entry, 0-based.
    pub fn get(&self, i: usize) -> u32 {
        self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// α·β reduced mod n.
    pub fn dot(&self, other: &ResidueVector) -> u32 {
        assert_eq!(self.entries.len(), other.entries.len());
        let n = self.modulus as u64;
        (self.entries.iter().zip(&other.entries).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % n) as u32
    }

    pub fn scaled(&self, k: i64) -> ResidueVector {
        ResidueVector::new(self.modulus, self.entries.iter().map(|&e| e as i64 * k))
    }

    /// Mixed-radix index with the first entry most significant; agrees with
    /// the lexicographic order of vectors.
    pub fn index(&self) -> usize {
        self.entries.iter().fold(0usize, |acc, &e| acc * self.modulus as usize + e as usize)
    }

    pub fn from_index(modulus: u32, rank: usize, mut idx: usize) -> ResidueVector {
        let mut entries: SmallVec<[u32; 4]> = SmallVec::from_elem(0, rank);
        for slot in entries.iter_mut().rev() {
            *slot = (idx % modulus as usize) as u32;
            idx /= modulus as usize;
        }
        ResidueVector { modulus, entries }
    }

    /// Every vector of (Z_n)^t in lexicographic order.
    pub fn all(modulus: u32, rank: usize) -> impl Iterator<Item = ResidueVector> {
        let count = (modulus as usize).pow(rank as u32);
        (0..count).map(move |i| ResidueVector::from_index(modulus, rank, i))
    }
}

impl Add<&ResidueVector> for &ResidueVector {
    type Output = ResidueVector;
    fn add(self, rhs: &ResidueVector) -> ResidueVector {
        assert_eq!(self.modulus, rhs.modulus);
        let n = self.modulus;
        ResidueVector { modulus: n, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| (a + b) % n).collect() }
    }
}

impl Sub<&ResidueVector> for &ResidueVector {
    type Output = ResidueVector;
    fn sub(self, rhs: &ResidueVector) -> ResidueVector {
        assert_eq!(self.modulus, rhs.modulus);
        let n = self.modulus;
        ResidueVector { modulus: n, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| (a + n - b) % n).collect() }
    }
}

impl Neg for &ResidueVector {
    type Output = ResidueVector;
    fn neg(self) -> ResidueVector {
        let n = self.modulus;
        ResidueVector { modulus: n, entries: self.entries.iter().map(|a| (n - a) % n).collect() }
    }
}

impl fmt::Display for ResidueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for ResidueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wraps_and_indexes() {
        let x = ResidueVector::new(5, [3, -1]);
        assert_eq!(x.entries(), &[3, 4]);
        let y = ResidueVector::new(5, [4, 4]);
        assert_eq!((&x + &y).entries(), &[2, 3]);
        assert_eq!((&x - &y).entries(), &[4, 0]);
        assert_eq!((-&x).entries(), &[2, 1]);
        assert_eq!(ResidueVector::from_index(5, 2, x.index()), x);
        let all: Vec<_> = ResidueVector::all(5, 2).collect();
        assert_eq!(all.len(), 25);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}
