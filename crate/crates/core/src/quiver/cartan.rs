use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A symmetric, simply-laced, positive definite Cartan matrix.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CartanSpec", into = "Vec<Vec<i64>>")]
pub struct CartanMatrix {
    rank: usize,
    entries: Vec<i64>,
}

impl CartanMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<CartanMatrix> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::InvalidCartan("matrix is empty".into()));
        }
        if rows.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidCartan("matrix is not square".into()));
        }
        let entries: Vec<i64> = rows.into_iter().flatten().collect();
        let m = CartanMatrix { rank, entries };
        for i in 0..rank {
            if m.entry(i, i) != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry a_{0}{0} = {1}, expected 2", i + 1, m.entry(i, i))));
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                if m.entry(i, j) != m.entry(j, i) {
                    return Err(Error::InvalidCartan(format!("not symmetric at ({}, {})", i + 1, j + 1)));
                }
                if !matches!(m.entry(i, j), 0 | -1) {
                    return Err(Error::InvalidCartan(format!(
                        "off-diagonal entry a_{}{} = {} is not simply-laced (0 or -1)",
                        i + 1,
                        j + 1,
                        m.entry(i, j)
                    )));
                }
            }
        }
        for k in 1..=rank {
            let minor = m.leading_minor(k);
            if !minor.is_positive() {
                return Err(Error::InvalidCartan(format!("not positive definite: leading minor of order {k} is {minor}")));
            }
        }
        Ok(m)
    }

    /// Cartan matrix of a named simply-laced type: A_t, D_t (t >= 4), E6, E7, E8.
    pub fn of_type(name: &str) -> Result<CartanMatrix> {
        let name = name.trim();
        let bad = || Error::InvalidCartan(format!("unknown Cartan type '{name}'"));
        let (family, rank) = name.split_at(1);
        let t: usize = rank.parse().map_err(|_| bad())?;
        let mut rows = vec![vec![0i64; t]; t];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |a: usize, b: usize| {
            rows[a][b] = -1;
            rows[b][a] = -1;
        };
        match family {
            "A" | "a" if t >= 1 => (1..t).for_each(|i| link(i - 1, i)),
            "D" | "d" if t >= 4 => {
                (1..t - 1).for_each(|i| link(i - 1, i));
                link(t - 3, t - 1);
            }
            "E" | "e" if (6..=8).contains(&t) => {
                // Bourbaki labelling: 1-3-4-5-6(-7-8), with 2 attached to 4.
                link(0, 2);
                link(1, 3);
                (2..t - 1).for_each(|i| link(i, i + 1));
            }
            _ => return Err(bad()),
        }
        CartanMatrix::new(rows)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// a_ij with 0-based indices.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.rank + j]
    }

    /// The j-th column c^j, 0-based.
    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rank).map(|i| self.entry(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    fn leading_minor(&self, k: usize) -> BigRational {
        let mut a: Vec<Vec<BigRational>> = (0..k)
            .map(|i| (0..k).map(|j| BigRational::from_integer(BigInt::from(self.entry(i, j)))).collect())
            .collect();
        let mut det = BigRational::from_integer(BigInt::from(1));
        for c in 0..k {
            let Some(p) = (c..k).find(|&r| !a[r][c].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= &a[c][c];
            for r in c + 1..k {
                let f = &a[r][c] / &a[c][c];
                for j in c..k {
                    let t = &f * &a[c][j];
                    a[r][j] -= t;
                }
            }
        }
        det
    }

    /// Number of positive roots, found by closing the simple roots under
    /// α ↦ α + α_i whenever (α, α_i) = -1.
    pub fn positive_root_count(&self) -> usize {
        let t = self.rank;
        let mut roots: Vec<Vec<i64>> = (0..t)
            .map(|i| {
                let mut v = vec![0; t];
                v[i] = 1;
                v
            })
            .collect();
        let mut k = 0;
        while k < roots.len() {
            for i in 0..t {
                let pairing: i64 = (0..t).map(|j| roots[k][j] * self.entry(j, i)).sum();
                if pairing == -1 {
                    let mut next = roots[k].clone();
                    next[i] += 1;
                    if !roots.contains(&next) {
                        roots.push(next);
                    }
                }
            }
            k += 1;
        }
        roots.len()
    }
}

/// A Cartan matrix as written in a config: a type name or explicit rows.
#[derive(Deserialize)]
#[serde(untagged)]
enum CartanSpec {
    Name(String),
    Rows(Vec<Vec<i64>>),
}

impl TryFrom<CartanSpec> for CartanMatrix {
    type Error = Error;
    fn try_from(spec: CartanSpec) -> Result<Self> {
        match spec {
            CartanSpec::Name(name) => CartanMatrix::of_type(&name),
            CartanSpec::Rows(rows) => CartanMatrix::new(rows),
        }
    }
}

impl std::str::FromStr for CartanMatrix {
    type Err = Error;

    /// Either a type name such as `A2` or JSON rows such as `[[2,-1],[-1,2]]`.
    fn from_str(s: &str) -> Result<CartanMatrix> {
        if s.trim_start().starts_with('[') {
            let rows: Vec<Vec<i64>> =
                serde_json::from_str(s).map_err(|e| Error::InvalidCartan(format!("cannot read matrix: {e}")))?;
            CartanMatrix::new(rows)
        } else {
            CartanMatrix::of_type(s)
        }
    }
}

impl TryFrom<Vec<Vec<i64>>> for CartanMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        CartanMatrix::new(rows)
    }
}

impl From<CartanMatrix> for Vec<Vec<i64>> {
    fn from(m: CartanMatrix) -> Self {
        m.rows()
    }
}

impl fmt::Debug for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_types() {
        assert_eq!(CartanMatrix::of_type("A1").unwrap().rows(), vec![vec![2]]);
        assert_eq!(CartanMatrix::of_type("A2").unwrap().rows(), vec![vec![2, -1], vec![-1, 2]]);
        for (name, count) in [("A1", 1), ("A2", 3), ("A3", 6), ("D4", 12), ("E6", 36), ("E7", 63), ("E8", 120)] {
            assert_eq!(CartanMatrix::of_type(name).unwrap().positive_root_count(), count, "{name}");
        }
    }

    #[test]
    fn parses_names_and_rows() {
        let a2: CartanMatrix = "A2".parse().unwrap();
        assert_eq!(a2, "[[2,-1],[-1,2]]".parse().unwrap());
        let from_json: CartanMatrix = serde_json::from_str("\"A2\"").unwrap();
        assert_eq!(from_json, a2);
        let from_rows: CartanMatrix = serde_json::from_str("[[2,-1],[-1,2]]").unwrap();
        assert_eq!(serde_json::to_string(&from_rows).unwrap(), "[[2,-1],[-1,2]]");
        assert!("[[2,1],[1,2]]".parse::<CartanMatrix>().is_err());
    }

    #[test]
    fn rejects_invalid() {
        let e = CartanMatrix::new(vec![vec![2, 1], vec![1, 2]]).unwrap_err();
        assert!(e.to_string().contains("simply-laced"), "{e}");
        assert!(CartanMatrix::new(vec![vec![2, -1], vec![0, 2]]).unwrap_err().to_string().contains("symmetric"));
        assert!(CartanMatrix::new(vec![vec![3]]).is_err());
        // affine A2: symmetric, simply-laced, but only positive semidefinite
        let affine = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert!(CartanMatrix::new(affine).unwrap_err().to_string().contains("positive definite"));
        assert!(CartanMatrix::of_type("B2").is_err());
    }
}
