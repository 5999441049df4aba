//! Composite paths of the double quiver: telescoped powers and Serre elements.

use super::{Alphabet, Element, Word};
use crate::error::{Error, Result};
use crate::scalars::{quantum_binomial_sym, ResidueVector};

/// p · r, or `None` (the zero path) when r does not end where p starts.
pub fn compose(p: &Word, r: &Word) -> Option<Word> {
    p.concat(r)
}

/// a(x, i1 i2 ⋯ is) = a(x, i1) a(x − c^i1, i2) ⋯, or its star-reversal
/// a(x, i1 ⋯ is)* when `starred`. Indices are 0-based. The empty sequence
/// gives e_x.
pub fn index_path(alpha: &Alphabet, x: &ResidueVector, indices: &[usize], starred: bool) -> Word {
    let setting = alpha.setting();
    let mut letters = Vec::with_capacity(indices.len());
    let mut cur = x.clone();
    for &i in indices {
        letters.push(alpha.arrow(&cur, i, starred));
        cur = &cur - setting.column(i);
    }
    if letters.is_empty() {
        return alpha.trivial(setting.vertex_id(x));
    }
    if starred {
        letters.reverse();
    }
    alpha.word(&letters).expect("telescoped arrows always compose")
}

/// a(x, i^s) (or its star), with source x − s·c^i and target x (reversed when starred).
pub fn path_power(alpha: &Alphabet, x: &ResidueVector, i: usize, s: usize, starred: bool) -> Word {
    index_path(alpha, x, &vec![i; s], starred)
}

/// ω_ij(x) = Σ_t (−1)^t [κ choose t]_q a(x, i^(κ−t) j i^t) with κ = 1 − a_ij,
/// or ω_ij(x)* on the starred paths.
pub fn serre_element(alpha: &Alphabet, x: &ResidueVector, i: usize, j: usize, starred: bool) -> Result<Element> {
    if i == j {
        return Err(Error::Domain("Serre element needs i ≠ j".into()));
    }
    let setting = alpha.setting();
    let field = setting.field();
    let kappa = (1 - setting.cartan().entry(i, j)) as u32;
    let mut out = Element::zero();
    for t in 0..=kappa {
        let mut idx = vec![i; (kappa - t) as usize];
        idx.push(j);
        idx.extend(std::iter::repeat(i).take(t as usize));
        let mut c = quantum_binomial_sym(field, kappa, t, 1)?;
        if t % 2 == 1 {
            c = -c;
        }
        out.add_term(index_path(alpha, x, &idx, starred), c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{CartanMatrix, Setting};

    fn a1(n: u32) -> std::sync::Arc<Alphabet> {
        Alphabet::quiver(Setting::new(CartanMatrix::of_type("A1").unwrap(), n).unwrap(), true)
    }

    #[test]
    fn counts() {
        let al = a1(5);
        assert_eq!(al.vertex_count(), 5);
        assert_eq!(al.len(), 10);
        let a2 = Alphabet::quiver(Setting::new(CartanMatrix::of_type("A2").unwrap(), 5).unwrap(), true);
        assert_eq!(a2.vertex_count(), 25);
        assert_eq!(a2.len(), 100);
    }

    #[test]
    fn trivial_paths_are_local_units() {
        let al = a1(5);
        let x = ResidueVector::new(5, [3]);
        let a = path_power(&al, &x, 0, 1, false);
        let e = al.trivial(al.setting().vertex_id(&x));
        assert_eq!(compose(&e, &a), Some(a.clone()));
        let src = al.trivial(a.source());
        assert_eq!(compose(&a, &src), Some(a.clone()));
        let astar = path_power(&al, &x, 0, 1, true);
        assert_eq!(compose(&astar, &e), Some(astar.clone()));
        // a(x,i) a(y,i) with y ≠ x − c^i is zero
        let y = ResidueVector::new(5, [4]);
        assert_eq!(compose(&a, &path_power(&al, &y, 0, 1, false)), None);
    }

    #[test]
    fn telescoping() {
        let al = a1(5);
        let x = ResidueVector::new(5, [0]);
        assert_eq!(path_power(&al, &x, 0, 0, false), al.trivial(0));
        let p2 = path_power(&al, &x, 0, 2, false);
        assert_eq!(p2.len(), 2);
        // (0) − 2·(2) = (1) mod 5
        assert_eq!(p2.source(), 1);
        assert_eq!(p2.target(), 0);
        let s2 = path_power(&al, &x, 0, 2, true);
        assert_eq!((s2.source(), s2.target()), (0, 1));
    }

    #[test]
    fn serre_shapes() {
        let f = |name: &str| {
            let s = Setting::new(CartanMatrix::of_type(name).unwrap(), 5).unwrap();
            Alphabet::quiver(s, true)
        };
        let al = f("A2");
        let k = al.setting().field();
        let x = ResidueVector::new(5, [1, 4]);
        for starred in [false, true] {
            let w = serre_element(&al, &x, 0, 1, starred).unwrap();
            assert_eq!(w.len(), 3);
            let mid = index_path(&al, &x, &[0, 1, 0], starred);
            assert_eq!(w.coefficient(&mid), Some(&-(&k.q_power(1) + &k.q_power(-1))));
            assert!(w.coefficient(&index_path(&al, &x, &[0, 0, 1], starred)).unwrap().is_one());
            assert!(w.coefficient(&index_path(&al, &x, &[1, 0, 0], starred)).unwrap().is_one());
        }
        let al = Alphabet::quiver(
            Setting::new(CartanMatrix::new(vec![vec![2, 0], vec![0, 2]]).unwrap(), 5).unwrap(),
            true,
        );
        let w = serre_element(&al, &x, 0, 1, false).unwrap();
        let mut expect = Element::word(index_path(&al, &x, &[0, 1], false), k);
        expect.add_term(index_path(&al, &x, &[1, 0], false), -k.one());
        assert_eq!(w, expect);
        assert!(serre_element(&al, &x, 1, 1, false).is_err());
    }

    #[test]
    fn serre_terms_share_endpoints() {
        let al = Alphabet::quiver(Setting::new(CartanMatrix::of_type("A2").unwrap(), 5).unwrap(), true);
        for x in al.setting().vertices() {
            for starred in [false, true] {
                let w = serre_element(&al, &x, 1, 0, starred).unwrap();
                assert_eq!(w.uniform_components().len(), 1);
            }
        }
    }
}
