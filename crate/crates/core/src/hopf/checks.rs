use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{HopfData, Tensor};
use crate::engine::Algebra;
use crate::error::{Error, Result};
use crate::quiver::paths::{index_path, path_power, serre_element};
use crate::quiver::{Element, Relation, Word};
use crate::report::{run_check, verdict, Check};
use crate::scalars::{gauss_binomial, quantum_integer, ResidueVector};
use crate::syntax::{format_element, format_tensor, format_word};

fn tensor_witness(hd: &HopfData, t: &Tensor) -> String {
    format_tensor(hd.algebra().alphabet(), t)
}

fn element_witness(hd: &HopfData, e: &Element) -> String {
    format_element(hd.algebra().alphabet(), e)
}

/// Δ(r) = 0 in A ⊗ A, ε(r) = 0 and S(r) = 0 in A for every relation,
/// where A is the quotient by (at least) these relations.
pub fn check_hopf_ideal(hd: &HopfData, relations: &[Relation], suite: &str) -> Vec<Check> {
    relations
        .par_iter()
        .flat_map_iter(|r| {
            let d = run_check(suite, format!("coproduct {}", r.label), "Hopf ideal: coproduct", || {
                let t = hd.comultiply(&r.element)?;
                Ok(verdict(t.is_zero(), || tensor_witness(hd, &t)))
            });
            let e = run_check(suite, format!("counit {}", r.label), "Hopf ideal: counit", || {
                let c = hd.counit(&r.element);
                Ok(verdict(c.is_zero(), || c.to_string()))
            });
            let s = run_check(suite, format!("antipode {}", r.label), "Hopf ideal: antipode", || {
                let s = hd.antipode(&r.element)?;
                Ok(verdict(s.is_zero(), || element_witness(hd, &s)))
            });
            [d, e, s]
        })
        .collect()
}

/// `count` words chosen reproducibly from `seed`: basis words when a basis
/// exists, otherwise random irreducible paths of length 1 to 6.
pub fn sample_words(alg: &Algebra, count: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(b) = alg.basis() {
        let words = b.words();
        if words.len() <= count {
            return words.to_vec();
        }
        let mut idx = sample(&mut rng, words.len(), count).into_vec();
        idx.sort_unstable();
        return idx.into_iter().map(|k| words[k].clone()).collect();
    }
    let alpha = alg.alphabet();
    let rs = alg.system();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 100 * count {
        attempts += 1;
        let target_len = rng.gen_range(1..=6);
        let mut w: Option<Word> = None;
        for _ in 0..8 * target_len {
            if w.as_ref().is_some_and(|w| w.len() >= target_len) {
                break;
            }
            let l = rng.gen_range(0..alpha.len()) as u16;
            let lw = Word::letter(l, alpha.letter(l));
            let next = match &w {
                None => Some(lw),
                Some(w) => w.concat(&lw),
            };
            if let Some(nw) = next.filter(|nw| rs.is_irreducible(nw)) {
                w = Some(nw);
            }
        }
        if let Some(w) = w {
            out.push(w);
        }
    }
    out
}

/// Coassociativity, both counit laws and both antipode convolutions on
/// every generator and on the given sample words.
pub fn check_hopf_axioms(hd: &HopfData, samples: &[Word], suite: &str) -> Vec<Check> {
    let alg = hd.algebra();
    let alpha = alg.alphabet();
    let mut items: Vec<(String, Element)> =
        alg.generators().into_iter().map(|(w, e)| (format_word(alpha, &w), e)).collect();
    for (k, w) in samples.iter().enumerate() {
        items.push((format!("sample {k}: {}", format_word(alpha, w)), Element::word(w.clone(), alg.field())));
    }
    items
        .par_iter()
        .flat_map_iter(|(name, e)| {
            let coassoc = run_check(suite, format!("coassociativity {name}"), "coassociativity", || {
                let (l, r) = hd.coassociativity_sides(e)?;
                let d = l.difference(&r);
                Ok(verdict(d.is_zero(), || tensor_witness(hd, &d)))
            });
            let expected = alg.normal_form(e);
            let counit = |left: bool| {
                let side = if left { "left" } else { "right" };
                run_check(suite, format!("counit {side} {name}"), "counit law", || {
                    let got = hd.counit_contraction(e, left)?;
                    let d = got.difference(expected.as_ref().map_err(Clone::clone)?);
                    Ok(verdict(d.is_zero(), || element_witness(hd, &d)))
                })
            };
            let antipode = |left: bool| {
                let side = if left { "left" } else { "right" };
                run_check(suite, format!("antipode {side} {name}"), "antipode convolution", || {
                    let got = hd.antipode_convolution(e, left)?;
                    let want = alg.one().scaled(&hd.counit(e));
                    let d = got.difference(&want);
                    Ok(verdict(d.is_zero(), || element_witness(hd, &d)))
                })
            };
            [coassoc, counit(true), counit(false), antipode(true), antipode(false)]
        })
        .collect()
}

fn compare(hd: &HopfData, lhs: &Tensor, rhs: &Tensor) -> Result<Option<String>> {
    let rhs = rhs.reduce(hd.algebra())?;
    let d = lhs.difference(&rhs);
    Ok(verdict(d.is_zero(), || tensor_witness(hd, &d)))
}

fn word_element(hd: &HopfData, w: Word) -> Element {
    Element::word(w, hd.algebra().field())
}

fn star_tag(starred: bool) -> &'static str {
    if starred {
        " starred"
    } else {
        ""
    }
}

fn require_quiver(hd: &HopfData) -> Result<()> {
    if hd.algebra().kind().is_quiver() {
        Ok(())
    } else {
        Err(Error::Config("coproduct formulas live in a quiver algebra".into()))
    }
}

/// Closed formula for Δ(a(x, i^m)) (or its star).
fn power_formula(hd: &HopfData, x: &ResidueVector, i: usize, m: u32, starred: bool) -> Result<Tensor> {
    let alg = hd.algebra();
    let (setting, alpha, k) = (alg.setting(), alg.alphabet(), alg.field());
    let mut out = Tensor::zero();
    for u in setting.vertices() {
        let v = x - &u;
        for s in 0..=m {
            let t = m - s;
            let (e, q) = if starred {
                (2, k.q_power(-(s as i64) * v.get(i) as i64))
            } else {
                (-2, k.q_power(t as i64 * u.get(i) as i64))
            };
            let c = &gauss_binomial(k, m, s, e)? * &q;
            let a = word_element(hd, path_power(alpha, &u, i, s as usize, starred));
            let b = word_element(hd, path_power(alpha, &v, i, t as usize, starred));
            out.add_scaled(&Tensor::pure(&[&a, &b]), &c);
        }
    }
    Ok(out)
}

/// The two-term form of Δ(a(x, i^ℓ)) (or its star).
fn primitive_formula(hd: &HopfData, x: &ResidueVector, i: usize, starred: bool) -> Tensor {
    let alg = hd.algebra();
    let (setting, alpha, k) = (alg.setting(), alg.alphabet(), alg.field());
    let l = setting.ell() as usize;
    let mut out = Tensor::zero();
    for u in setting.vertices() {
        let v = x - &u;
        let eu = word_element(hd, alpha.trivial(setting.vertex_id(&u)));
        let ev = word_element(hd, alpha.trivial(setting.vertex_id(&v)));
        let au = word_element(hd, path_power(alpha, &u, i, l, starred));
        let av = word_element(hd, path_power(alpha, &v, i, l, starred));
        if starred {
            out.add(&Tensor::pure(&[&eu, &av]));
            out.add_scaled(&Tensor::pure(&[&au, &ev]), &k.q_power(-(l as i64) * v.get(i) as i64));
        } else {
            out.add_scaled(&Tensor::pure(&[&eu, &av]), &k.q_power(l as i64 * u.get(i) as i64));
            out.add(&Tensor::pure(&[&au, &ev]));
        }
    }
    out
}

/// Coproducts of arrow powers against their closed formula for every x,
/// index and 1 ≤ m ≤ ℓ, the two-term form at m = ℓ, and the vanishing of
/// the inner binomials at m = ℓ.
pub fn verify_power_lemma(hd: &HopfData, suite: &str) -> Vec<Check> {
    if let Err(e) = require_quiver(hd) {
        return vec![run_check(suite, "power coproducts", "power coproduct formula", || Err(e))];
    }
    let alg = hd.algebra();
    let setting = alg.setting();
    let (l, t) = (setting.ell(), setting.rank());
    let mut cases = Vec::new();
    for i in 0..t {
        for starred in [false, true] {
            for m in 1..=l {
                for x in setting.vertices() {
                    cases.push((i, starred, m, x));
                }
            }
        }
    }
    let mut checks: Vec<Check> = cases
        .par_iter()
        .map(|(i, starred, m, x)| {
            let id = format!("power x=({x}) i={} m={m}{}", i + 1, star_tag(*starred));
            run_check(suite, id, "power coproduct formula", || {
                let lhs = hd.comultiply(&word_element(hd, path_power(alg.alphabet(), x, *i, *m as usize, *starred)))?;
                compare(hd, &lhs, &power_formula(hd, x, *i, *m, *starred)?)
            })
        })
        .collect();
    let mut top: Vec<Check> = cases
        .par_iter()
        .filter(|(_, _, m, _)| *m == l)
        .map(|(i, starred, _, x)| {
            let id = format!("two-term power x=({x}) i={}{}", i + 1, star_tag(*starred));
            run_check(suite, id, "power coproduct at the nilpotency order", || {
                let lhs = hd.comultiply(&word_element(hd, path_power(alg.alphabet(), x, *i, l as usize, *starred)))?;
                compare(hd, &lhs, &primitive_formula(hd, x, *i, *starred))
            })
        })
        .collect();
    checks.append(&mut top);
    for e in [-2i64, 2] {
        checks.push(run_check(suite, format!("binomials vanish at q^{e}"), "power coproduct at the nilpotency order", || {
            let bad: Vec<u32> =
                (1..l).filter(|&s| !gauss_binomial(alg.field(), l, s, e).map(|c| c.is_zero()).unwrap_or(false)).collect();
            Ok(verdict(bad.is_empty(), || format!("nonzero binomials at s = {bad:?}")))
        }));
    }
    checks
}

/// Δ(a(x, i_1 ⋯ i_s)) by enumerating which arrows go to the left factor,
/// with the vertex bookkeeping done by hand instead of by multiplication.
fn split_expansion(hd: &HopfData, x: &ResidueVector, seq: &[usize], starred: bool) -> Tensor {
    let alg = hd.algebra();
    let (setting, alpha, k) = (alg.setting(), alg.alphabet(), alg.field());
    let s = seq.len();
    let mut out = Tensor::zero();
    for u in setting.vertices() {
        for mask in 0u32..(1 << s) {
            let mut left_vertex = u.clone();
            let mut right_vertex = x - &u;
            let mut exponent = 0i64;
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (pos, &i) in seq.iter().enumerate() {
                if mask >> pos & 1 == 1 {
                    if starred {
                        exponent -= right_vertex.get(i) as i64;
                    }
                    left.push(i);
                    left_vertex = &left_vertex - setting.column(i);
                } else {
                    if !starred {
                        exponent += left_vertex.get(i) as i64;
                    }
                    right.push(i);
                    right_vertex = &right_vertex - setting.column(i);
                }
            }
            let a = word_element(hd, index_path(alpha, &u, &left, starred));
            let b = word_element(hd, index_path(alpha, &(x - &u), &right, starred));
            out.add_scaled(&Tensor::pure(&[&a, &b]), &k.q_power(exponent));
        }
    }
    out
}

/// Closed formula for Δ(ω_ij(x)) (or its star).
fn serre_formula(hd: &HopfData, x: &ResidueVector, i: usize, j: usize, starred: bool) -> Result<Tensor> {
    let alg = hd.algebra();
    let (setting, alpha, k) = (alg.setting(), alg.alphabet(), alg.field());
    let kappa = 1 - setting.cartan().entry(i, j) as i64;
    let mut out = Tensor::zero();
    for u in setting.vertices() {
        let v = x - &u;
        let eu = word_element(hd, alpha.trivial(setting.vertex_id(&u)));
        let ev = word_element(hd, alpha.trivial(setting.vertex_id(&v)));
        let wu = serre_element(alpha, &u, i, j, starred)?;
        let wv = serre_element(alpha, &v, i, j, starred)?;
        if starred {
            out.add(&Tensor::pure(&[&eu, &wv]));
            let c = k.q_power(-kappa * v.get(i) as i64 - v.get(j) as i64);
            out.add_scaled(&Tensor::pure(&[&wu, &ev]), &c);
        } else {
            let c = k.q_power(kappa * u.get(i) as i64 + u.get(j) as i64);
            out.add_scaled(&Tensor::pure(&[&eu, &wv]), &c);
            out.add(&Tensor::pure(&[&wu, &ev]));
        }
    }
    Ok(out)
}

/// Coproducts of the Serre elements ω_ij(x) and ω_ij(x)* against their
/// closed formula, for every x and ordered pair i ≠ j, together with the
/// coproducts of each path occurring in ω_ij(x) against a hand expansion.
pub fn verify_serre_lemma(hd: &HopfData, suite: &str) -> Vec<Check> {
    if let Err(e) = require_quiver(hd) {
        return vec![run_check(suite, "Serre coproducts", "Serre coproduct formula", || Err(e))];
    }
    let alg = hd.algebra();
    let setting = alg.setting();
    let t = setting.rank();
    let mut cases = Vec::new();
    for i in 0..t {
        for j in (0..t).filter(|&j| j != i) {
            for starred in [false, true] {
                for x in setting.vertices() {
                    cases.push((i, j, starred, x));
                }
            }
        }
    }
    let mut checks: Vec<Check> = cases
        .par_iter()
        .map(|(i, j, starred, x)| {
            let id = format!("serre x=({x}) i={} j={}{}", i + 1, j + 1, star_tag(*starred));
            run_check(suite, id, "Serre coproduct formula", || {
                let lhs = hd.comultiply(&serre_element(alg.alphabet(), x, *i, *j, *starred)?)?;
                compare(hd, &lhs, &serre_formula(hd, x, *i, *j, *starred)?)
            })
        })
        .collect();
    let mut paths: Vec<Check> = cases
        .par_iter()
        .flat_map_iter(|(i, j, starred, x)| {
            let kappa = (1 - setting.cartan().entry(*i, *j)) as usize;
            (0..=kappa).map(move |r| {
                let mut seq = vec![*i; kappa - r];
                seq.push(*j);
                seq.extend(std::iter::repeat(*i).take(r));
                let name: String = seq.iter().map(|k| (k + 1).to_string()).collect();
                let id = format!("path expansion x=({x}) seq={name}{}", star_tag(*starred));
                run_check(suite, id, "Serre coproduct formula: path terms", || {
                    let lhs = hd.comultiply(&word_element(hd, index_path(alg.alphabet(), x, &seq, *starred)))?;
                    compare(hd, &lhs, &split_expansion(hd, x, &seq, *starred))
                })
            })
        })
        .collect();
    checks.append(&mut paths);
    checks
}

/// S(a(x,i)*) S(a(x,i)) − S(a(x+c^i,i)) S(a(x+c^i,i)*) = [x_i] S(e_x).
pub fn verify_antipode_identity(hd: &HopfData, suite: &str) -> Vec<Check> {
    if let Err(e) = require_quiver(hd) {
        return vec![run_check(suite, "antipode identity", "antipode of the commutator relation", || Err(e))];
    }
    let alg = hd.algebra();
    let (setting, alpha, k) = (alg.setting(), alg.alphabet(), alg.field());
    let mut cases = Vec::new();
    for i in 0..setting.rank() {
        for x in setting.vertices() {
            cases.push((i, x));
        }
    }
    cases
        .par_iter()
        .map(|(i, x)| {
            let id = format!("antipode identity x=({x}) i={}", i + 1);
            run_check(suite, id, "antipode of the commutator relation", || {
                let xp = x + setting.column(*i);
                let s = |y: &ResidueVector, starred: bool| hd.antipode(&word_element(hd, path_power(alpha, y, *i, 1, starred)));
                let mut lhs = alg.mul(&s(x, true)?, &s(x, false)?)?;
                lhs.sub(&alg.mul(&s(&xp, false)?, &s(&xp, true)?)?);
                let ex = word_element(hd, alpha.trivial(setting.vertex_id(x)));
                let rhs = hd.antipode(&ex)?.scaled(&quantum_integer(k, x.get(*i), 1));
                let d = lhs.difference(&rhs);
                Ok(verdict(d.is_zero(), || element_witness(hd, &d)))
            })
        })
        .collect()
}

/// Δ(u v) = Δ(u) Δ(v), ε(u v) = ε(u) ε(v) and S(u v) = S(v) S(u) on pairs.
pub fn check_multiplicativity(hd: &HopfData, pairs: &[(Word, Word)], suite: &str) -> Vec<Check> {
    let alg = hd.algebra();
    let alpha = alg.alphabet();
    pairs
        .par_iter()
        .enumerate()
        .map(|(n, (u, v))| {
            let id = format!("multiplicative {n}: {} | {}", format_word(alpha, u), format_word(alpha, v));
            run_check(suite, id, "structure maps respect products", || {
                let (eu, ev) = (word_element(hd, u.clone()), word_element(hd, v.clone()));
                let uv = alg.mul(&alg.normal_form(&eu)?, &alg.normal_form(&ev)?)?;
                let d = hd.comultiply(&uv)?.difference(&hd.comultiply(&eu)?.mul(&hd.comultiply(&ev)?, alg)?);
                if !d.is_zero() {
                    return Ok(Some(format!("coproduct: {}", tensor_witness(hd, &d))));
                }
                let c = &hd.counit(&uv) - &(&hd.counit(&eu) * &hd.counit(&ev));
                if !c.is_zero() {
                    return Ok(Some(format!("counit: {c}")));
                }
                let s = hd.antipode(&uv)?.difference(&alg.mul(&hd.antipode(&ev)?, &hd.antipode(&eu)?)?);
                Ok(verdict(s.is_zero(), || format!("antipode: {}", element_witness(hd, &s))))
            })
        })
        .collect()
}
