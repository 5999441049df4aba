//! Quantum integers, the two Gaussian binomial families, and character sums.

use super::{CycField, CycNumber, ResidueVector};
use crate::error::{Error, Result};

/// The nilpotency order: n for odd n, n/2 for even n.
pub fn ell(n: u32) -> u32 {
    if n % 2 == 1 {
        n
    } else {
        n / 2
    }
}

/// [m]_x at x = q^e, as the Laurent sum x^(m-1) + x^(m-3) + ... + x^-(m-1).
pub fn quantum_integer(field: &'static CycField, m: u32, e: i64) -> CycNumber {
    let mut acc = field.zero();
    for k in 0..m as i64 {
        acc += &field.q_power(e * (m as i64 - 1 - 2 * k));
    }
    acc
}

/// Symmetric Gaussian binomial [m choose s] at x = q^e, via
/// [m; s] = x^-s [m-1; s] + x^(m-s) [m-1; s-1].
pub fn quantum_binomial_sym(field: &'static CycField, m: u32, s: u32, e: i64) -> Result<CycNumber> {
    if s > m {
        return Err(Error::Domain(format!("binomial [{m} choose {s}] needs s <= m")));
    }
    let (m, s) = (m as usize, s as usize);
    let mut row = vec![field.one()];
    for k in 1..=m {
        let mut next = Vec::with_capacity(k + 1);
        for j in 0..=k {
            let mut v = field.zero();
            if j < k {
                v += &(&field.q_power(-e * j as i64) * &row[j]);
            }
            if j > 0 {
                v += &(&field.q_power(e * (k - j) as i64) * &row[j - 1]);
            }
            next.push(v);
        }
        row = next;
    }
    Ok(row.swap_remove(s))
}

/// One-sided Gaussian binomial (m choose u)_x at x = q^e, via
/// (m+1 choose u) = (m choose u) + x^(m-u+1) (m choose u-1).
pub fn gauss_binomial(field: &'static CycField, m: u32, u: u32, e: i64) -> Result<CycNumber> {
    if u > m {
        return Err(Error::Domain(format!("binomial ({m} choose {u}) needs u <= m")));
    }
    let (m, u) = (m as usize, u as usize);
    let mut row = vec![field.one()];
    for k in 0..m {
        // row holds (k choose j) for j in 0..=k
        let mut next = Vec::with_capacity(k + 2);
        for j in 0..=k + 1 {
            let mut v = field.zero();
            if j <= k {
                v += &row[j];
            }
            if j > 0 {
                v += &(&field.q_power(e * (k as i64 - j as i64 + 1)) * &row[j - 1]);
            }
            next.push(v);
        }
        row = next;
    }
    Ok(row.swap_remove(u))
}

/// Σ_{α ∈ Z_n^t} q^(α·β), by enumeration.
pub fn character_sum(field: &'static CycField, beta: &ResidueVector) -> CycNumber {
    let n = beta.modulus();
    assert_eq!(n, field.order(), "residue modulus must match the field order");
    let mut acc = field.zero();
    for alpha in ResidueVector::all(n, beta.rank()) {
        acc += &field.q_power(alpha.dot(beta) as i64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::cyclotomic_field;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    /// Reduces Σ c_k x^k modulo Φ_5 = 1 + x + x^2 + x^3 + x^4 by hand-rolled
    /// long division; independent of the field implementation.
    fn brute_mod_phi5(mut coeffs: Vec<i64>) -> Vec<i64> {
        // x^5 = 1 first, then x^4 = -(1 + x + x^2 + x^3)
        let mut folded = vec![0i64; 5];
        for (k, c) in coeffs.drain(..).enumerate() {
            folded[k % 5] += c;
        }
        let top = folded[4];
        (0..4).map(|k| folded[k] - top).collect()
    }

    fn as_ints(x: &CycNumber) -> Vec<i64> {
        x.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.numer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn quantum_integer_examples() {
        let k = cyclotomic_field(5);
        assert!(quantum_integer(k, 1, 1).is_one());
        assert_eq!(quantum_integer(k, 2, 1), &k.q_power(1) + &k.q_power(-1));
        assert!(quantum_integer(k, 0, 1).is_zero());
        // [5]_q = q^4 + q^2 + 1 + q^-2 + q^-4 = q^4 + q^2 + 1 + q^3 + q
        let oracle = brute_mod_phi5(vec![1, 1, 1, 1, 1]);
        assert_eq!(oracle, vec![0, 0, 0, 0]);
        assert_eq!(as_ints(&quantum_integer(k, 5, 1)), oracle);
    }

    #[test]
    fn ell_vanishing() {
        for n in [5u32, 6, 7, 8] {
            let k = cyclotomic_field(n);
            assert!(quantum_integer(k, ell(n), 1).is_zero(), "[ell]_q must vanish for n = {n}");
            for m in 1..ell(n) {
                assert!(!quantum_integer(k, m, 1).is_zero());
            }
        }
    }

    #[test]
    fn symmetric_binomial_examples() {
        let k = cyclotomic_field(5);
        for m in 0..6 {
            assert!(quantum_binomial_sym(k, m, 0, 1).unwrap().is_one());
        }
        assert_eq!(quantum_binomial_sym(k, 2, 1, 1).unwrap(), &k.q_power(1) + &k.q_power(-1));
        // q^2 + 1 + q^-2 = q^2 + 1 + q^3 in exponents 0..5
        let oracle = brute_mod_phi5(vec![1, 0, 1, 1, 0]);
        assert_eq!(as_ints(&quantum_binomial_sym(k, 3, 1, 1).unwrap()), oracle);
        assert!(quantum_binomial_sym(k, 2, 3, 1).is_err());
    }

    #[test]
    fn symmetric_binomial_symmetry() {
        for n in [5u32, 6, 7] {
            let k = cyclotomic_field(n);
            for m in 0..=8 {
                for s in 0..=m {
                    assert_eq!(
                        quantum_binomial_sym(k, m, s, 1).unwrap(),
                        quantum_binomial_sym(k, m, m - s, 1).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn gauss_binomial_examples() {
        let k = cyclotomic_field(7);
        let x = k.q_power(1);
        assert!(gauss_binomial(k, 4, 0, 1).unwrap().is_one());
        assert_eq!(gauss_binomial(k, 2, 1, 1).unwrap(), &k.one() + &x);
        // (3)!/((2)!(1)!) = (1 + x + x^2)(1 + x)/(1 + x) = 1 + x + x^2
        let three = &(&k.one() + &x) + &k.q_power(2);
        assert_eq!(gauss_binomial(k, 3, 1, 1).unwrap(), three);
        assert!(gauss_binomial(k, 1, 2, 1).is_err());
    }

    #[test]
    fn gauss_binomial_pascal() {
        for n in [5u32, 6, 7] {
            let k = cyclotomic_field(n);
            for e in [1i64, 2, -2] {
                for m in 1..=8u32 {
                    for u in 1..=m {
                        let lhs = gauss_binomial(k, m + 1, u, e).unwrap();
                        let rhs = &gauss_binomial(k, m, u, e).unwrap()
                            + &(&k.q_power(e * (m as i64 - u as i64 + 1)) * &gauss_binomial(k, m, u - 1, e).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn gauss_binomial_matches_factorial_quotient() {
        // Where the factorial quotient is defined (small m at n = 7, x = q),
        // (m)!/((u)!(m-u)!) agrees with the recursion.
        let k = cyclotomic_field(7);
        let qint = |m: u32| {
            let mut acc = k.zero();
            for j in 0..m {
                acc += &k.q_power(j as i64);
            }
            acc
        };
        let fact = |m: u32| (1..=m).fold(k.one(), |acc, j| &acc * &qint(j));
        for m in 0..7 {
            for u in 0..=m {
                let quot = &fact(m) * &(&fact(u) * &fact(m - u)).inv().unwrap();
                assert_eq!(gauss_binomial(k, m, u, 1).unwrap(), quot);
            }
        }
    }

    #[test]
    fn character_sums() {
        for (t, n) in [(1usize, 5u32), (1, 6), (2, 5)] {
            let k = cyclotomic_field(n);
            for beta in ResidueVector::all(n, t) {
                let s = character_sum(k, &beta);
                if beta.is_zero() {
                    let expect = BigRational::from_integer(BigInt::from((n as i64).pow(t as u32)));
                    assert_eq!(s.as_rational(), Some(&expect));
                } else {
                    assert!(s.is_zero());
                }
            }
        }
    }
}
