//! Exact arithmetic in the cyclotomic field Q(ζ_n) = Q[x]/(Φ_n(x)).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Static data for one cyclotomic field: the modulus Φ_n and reduction tables.
pub struct CycField {
    n: u32,
    degree: usize,
    modulus: Vec<BigInt>,
    /// `reduce[k]` holds x^(degree + k) mod Φ_n for k < degree - 1.
    reduce: Vec<Vec<Rational>>,
    /// `powers[k]` holds q^k mod Φ_n for k < n.
    powers: Vec<Vec<Rational>>,
}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.n)
    }
}

/// Integer polynomial division `num / den` for monic `den`; panics if not exact.
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    if rem.len() < den.len() {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "cyclotomic division not exact");
    quot
}

/// Coefficients (low to high) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

impl CycField {
    fn new(n: u32) -> CycField {
        let modulus = cyclotomic_polynomial(n);
        let degree = modulus.len() - 1;
        let to_rat = |v: &BigInt| Rational::from_integer(v.clone());
        // x^degree = -sum_{j<degree} m_j x^j
        let mut cur: Vec<Rational> = modulus[..degree].iter().map(|m| -to_rat(m)).collect();
        let mut reduce = Vec::new();
        for _ in 0..degree.saturating_sub(1) {
            reduce.push(cur.clone());
            cur = shift_reduce(&cur, &modulus);
        }
        let mut powers = Vec::with_capacity(n as usize);
        let mut p = vec![Rational::zero(); degree];
        p[0] = Rational::one();
        for _ in 0..n {
            powers.push(p.clone());
            p = shift_reduce(&p, &modulus);
        }
        CycField { n, degree, modulus, reduce, powers }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// Degree of Φ_n, i.e. Euler's totient of n.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    pub fn zero(&'static self) -> CycNumber {
        CycNumber { field: self, coeffs: vec![Rational::zero(); self.degree] }
    }

    pub fn one(&'static self) -> CycNumber {
        self.q_power(0)
    }

    pub fn from_rational(&'static self, r: Rational) -> CycNumber {
        let mut z = self.zero();
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(&'static self, k: i64) -> CycNumber {
        self.from_rational(Rational::from_integer(BigInt::from(k)))
    }

    /// q^k for any integer k (reduced mod n).
    pub fn q_power(&'static self, k: i64) -> CycNumber {
        let e = k.rem_euclid(self.n as i64) as usize;
        CycNumber { field: self, coeffs: self.powers[e].clone() }
    }

    /// Element from canonical coefficients; the slice must have length `degree`.
    pub fn from_coeffs(&'static self, coeffs: Vec<Rational>) -> CycNumber {
        assert_eq!(coeffs.len(), self.degree);
        CycNumber { field: self, coeffs }
    }

    /// Element from an arbitrary-length power-basis vector, reduced mod Φ_n.
    pub fn from_power_basis(&'static self, coeffs: &[Rational]) -> CycNumber {
        let mut acc = self.zero();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = k % self.n as usize;
            for (a, p) in acc.coeffs.iter_mut().zip(&self.powers[e]) {
                if !p.is_zero() {
                    *a += c * p;
                }
            }
        }
        acc
    }
}

fn shift_reduce(v: &[Rational], modulus: &[BigInt]) -> Vec<Rational> {
    let d = v.len();
    let top = v[d - 1].clone();
    let mut out = vec![Rational::zero(); d];
    for j in 1..d {
        out[j] = v[j - 1].clone();
    }
    if !top.is_zero() {
        for j in 0..d {
            out[j] -= &top * Rational::from_integer(modulus[j].clone());
        }
    }
    out
}

/// The field Q(ζ_n), built once per `n` and shared for the life of the process.
pub fn cyclotomic_field(n: u32) -> &'static CycField {
    static FIELDS: OnceLock<Mutex<HashMap<u32, &'static CycField>>> = OnceLock::new();
    let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().expect("field registry poisoned");
    *guard.entry(n).or_insert_with(|| Box::leak(Box::new(CycField::new(n))))
}

/// An element of Q(ζ_n) in the canonical basis 1, q, ..., q^(φ(n)-1).
#[derive(Clone)]
pub struct CycNumber {
    field: &'static CycField,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.coeffs == other.coeffs
    }
}

impl Eq for CycNumber {}

impl std::hash::Hash for CycNumber {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.coeffs.hash(state);
    }
}

impl CycNumber {
    pub fn field(&self) -> &'static CycField {
        self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational value if this element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rational) -> CycNumber {
        CycNumber { field: self.field, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn pow(&self, mut k: u32) -> CycNumber {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    fn same_field(&self, other: &CycNumber) {
        assert_eq!(self.field.n, other.field.n, "mixing scalars of different cyclotomic fields");
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<CycNumber> {
        if self.is_zero() {
            return None;
        }
        let d = self.field.degree;
        // Column j of the multiplication matrix is self * q^j.
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.clone();
        for _ in 0..d {
            cols.push(cur.coeffs.clone());
            cur = CycNumber { field: self.field, coeffs: shift_reduce(&cur.coeffs, &self.field.modulus) };
        }
        // Augmented rows [M | e_0].
        let mut rows: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let mut r: Vec<Rational> = (0..d).map(|j| cols[j][i].clone()).collect();
                r.push(if i == 0 { Rational::one() } else { Rational::zero() });
                r
            })
            .collect();
        for c in 0..d {
            let p = (c..d).find(|&r| !rows[r][c].is_zero())?;
            rows.swap(c, p);
            let piv = rows[c][c].clone();
            for v in rows[c].iter_mut() {
                *v /= &piv;
            }
            for r in 0..d {
                if r != c && !rows[r][c].is_zero() {
                    let f = rows[r][c].clone();
                    for k in c..=d {
                        let t = &f * &rows[c][k];
                        rows[r][k] -= t;
                    }
                }
            }
        }
        Some(CycNumber { field: self.field, coeffs: rows.into_iter().map(|r| r[d].clone()).collect() })
    }

    /// Power-basis terms `(exponent, coefficient)` with exponents in `0..n`,
    /// using the sparsest lift of this element to Q[x]/(x^n - 1). Ties between
    /// supports of equal size go to the lexicographically smallest support.
    pub fn sparse_terms(&self) -> Vec<(u32, Rational)> {
        const SEARCH_BUDGET: usize = 20_000;
        if self.is_zero() {
            return Vec::new();
        }
        let n = self.field.n as usize;
        let d = self.field.degree;
        let mut examined = 0usize;
        for k in 1..=d {
            let mut subset: Vec<usize> = (0..k).collect();
            loop {
                examined += 1;
                if examined > SEARCH_BUDGET {
                    return self.canonical_terms();
                }
                if let Some(sol) = solve_support(&self.field.powers, &subset, &self.coeffs) {
                    return subset.iter().zip(sol).map(|(&e, c)| (e as u32, c)).collect();
                }
                if !next_subset(&mut subset, n) {
                    break;
                }
            }
        }
        self.canonical_terms()
    }

    fn canonical_terms(&self) -> Vec<(u32, Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u32, c.clone()))
            .collect()
    }
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Solves `sum_j c_j * powers[support[j]] = target` exactly; returns the
/// coefficients only when the solution exists, is unique and has full support.
fn solve_support(powers: &[Vec<Rational>], support: &[usize], target: &[Rational]) -> Option<Vec<Rational>> {
    let d = target.len();
    let k = support.len();
    let mut rows: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut r: Vec<Rational> = support.iter().map(|&e| powers[e][i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let mut pivot_row = 0;
    for c in 0..k {
        let p = (pivot_row..d).find(|&r| !rows[r][c].is_zero())?;
        rows.swap(pivot_row, p);
        let piv = rows[pivot_row][c].clone();
        for v in rows[pivot_row].iter_mut() {
            *v /= &piv;
        }
        for r in 0..d {
            if r != pivot_row && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for j in c..=k {
                    let t = &f * &rows[pivot_row][j];
                    rows[r][j] -= t;
                }
            }
        }
        pivot_row += 1;
    }
    if rows[k..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    let sol: Vec<Rational> = rows[..k].iter().map(|r| r[k].clone()).collect();
    if sol.iter().any(Zero::is_zero) {
        return None;
    }
    Some(sol)
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn write_rational(f: &mut impl fmt::Write, r: &Rational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders a Laurent polynomial in `q` with exponents in `0..n`, e.g. `q + q^4`.
impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sparse_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *e == 0 {
                write_rational(f, &mag)?;
                continue;
            }
            if !mag.is_one() {
                write_rational(f, &mag)?;
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "q")?;
            } else {
                write!(f, "q^{}", e)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        self.same_field(rhs);
        CycNumber { field: self.field, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        self.same_field(rhs);
        CycNumber { field: self.field, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        self.same_field(rhs);
        let d = self.field.degree;
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let (low, high) = prod.split_at_mut(d);
        for (k, c) in high.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (l, r) in low.iter_mut().zip(&self.field.reduce[k]) {
                if !r.is_zero() {
                    *l += c * r;
                }
            }
        }
        prod.truncate(d);
        CycNumber { field: self.field, coeffs: prod }
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(mut self) -> CycNumber {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Add for CycNumber {
    type Output = CycNumber;
    fn add(mut self, rhs: CycNumber) -> CycNumber {
        self += &rhs;
        self
    }
}

impl Sub for CycNumber {
    type Output = CycNumber;
    fn sub(mut self, rhs: CycNumber) -> CycNumber {
        self -= &rhs;
        self
    }
}

impl Mul for CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: CycNumber) -> CycNumber {
        &self * &rhs
    }
}

impl AddAssign<&CycNumber> for CycNumber {
    fn add_assign(&mut self, rhs: &CycNumber) {
        self.same_field(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&CycNumber> for CycNumber {
    fn sub_assign(&mut self, rhs: &CycNumber) {
        self.same_field(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl MulAssign<&CycNumber> for CycNumber {
    fn mul_assign(&mut self, rhs: &CycNumber) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn cyclotomic_polynomials_small() {
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_polynomial(5), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn q_power_identities() {
        for n in [5u32, 6, 7, 8, 9, 12] {
            let k = cyclotomic_field(n);
            assert!(k.q_power(0).is_one());
            assert!(k.q_power(n as i64).is_one());
            assert_eq!(&k.q_power(3) * &k.q_power(-3), k.one());
            let mut s = k.zero();
            for e in 0..n as i64 {
                s += &k.q_power(e);
            }
            assert!(s.is_zero(), "1 + q + ... + q^(n-1) must vanish for n = {n}");
        }
        let k = cyclotomic_field(5);
        assert_eq!(&k.q_power(3) * &k.q_power(2), k.one());
    }

    #[test]
    fn inverse_roundtrip() {
        let k = cyclotomic_field(7);
        let x = k.from_power_basis(&[rat(1, 2), rat(0, 1), rat(-3, 1), rat(2, 5)]);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(k.zero().inv().is_none());
    }

    #[test]
    fn sparse_rendering() {
        let k = cyclotomic_field(5);
        let two = &k.q_power(1) + &k.q_power(-1);
        assert_eq!(two.to_string(), "q + q^4");
        assert_eq!(k.zero().to_string(), "0");
        assert_eq!(k.from_rational(rat(1, 25)).to_string(), "1/25");
        assert_eq!((-k.q_power(3)).to_string(), "-q^3");
        let k6 = cyclotomic_field(6);
        // q + q^-1 = 1 at a primitive sixth root of unity.
        assert_eq!((&k6.q_power(1) + &k6.q_power(-1)).to_string(), "1");
    }
}
