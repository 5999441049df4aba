//! The idempotents ε_x of the quantum group and the maps τ: u_q^C → u_q(C)
//! and σ: u_q(C) → u_q^C between the quiver and quantum-group presentations.

use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::engine::{element_rank, Algebra};
use crate::error::{Error, Result};
use crate::hopf::{sample_words, HopfData, Tensor};
use crate::quiver::{AlgebraKind, Element, Setting, Symbol, Word};
use crate::report::{run_check, verdict, Check};
use crate::scalars::{Rational, ResidueVector};
use crate::syntax::{format_element, format_tensor, format_word};

/// K_y = K_1^(y_1) ⋯ K_t^(y_t) in normal form.
pub fn group_like(group: &Algebra, y: &ResidueVector) -> Result<Element> {
    let alpha = group.alphabet();
    let mut letters = Vec::new();
    for i in 0..y.rank() {
        let k = alpha.id_of(Symbol::K(i as u8)).expect("quantum alphabet");
        letters.extend(std::iter::repeat(k).take(y.get(i) as usize));
    }
    let w = alpha.word(&letters).unwrap_or_else(|| alpha.trivial(0));
    group.normal_form_word(&w)
}

/// ε_x = n^(−t) Σ_y q^(−x·y) K_y.
pub fn epsilon_idempotent(group: &Algebra, x: &ResidueVector) -> Result<Element> {
    let setting = group.setting();
    let k = group.field();
    let mut out = Element::zero();
    for y in setting.vertices() {
        out.add_scaled(&group_like(group, &y)?, &k.q_power(-(x.dot(&y) as i64)));
    }
    let nt = BigInt::from(setting.n()).pow(setting.rank() as u32);
    Ok(out.scaled(&k.from_rational(Rational::new(1.into(), nt))))
}

fn expect_kind(alg: &Algebra, kind: AlgebraKind) -> Result<()> {
    if alg.kind() == kind {
        Ok(())
    } else {
        Err(Error::Config(format!("expected the {} algebra, got {}", kind.tag(), alg.kind().tag())))
    }
}

/// The maps τ and σ, given by their values on generators.
pub struct Isomorphism<'a> {
    quiver: &'a Algebra,
    group: &'a Algebra,
    idempotents: Vec<Element>,
    tau_letters: Vec<Element>,
    sigma_letters: Vec<Element>,
}

impl<'a> Isomorphism<'a> {
    /// `quiver` must present u_q^C and `group` u_q(C) over the same setting.
    pub fn new(quiver: &'a Algebra, group: &'a Algebra) -> Result<Isomorphism<'a>> {
        expect_kind(quiver, AlgebraKind::UqC)?;
        expect_kind(group, AlgebraKind::Uq)?;
        let setting: &Arc<Setting> = quiver.setting();
        if setting.cartan() != group.setting().cartan() || setting.n() != group.setting().n() {
            return Err(Error::Config("the two algebras use different Cartan data or n".into()));
        }
        let k = quiver.field();
        let idempotents = setting.vertices().map(|x| epsilon_idempotent(group, &x)).collect::<Result<Vec<_>>>()?;

        let qa = quiver.alphabet();
        let mut tau_letters = Vec::with_capacity(qa.len());
        for letter in qa.letters() {
            let Symbol::Arrow { base, index, starred } = letter.symbol else { unreachable!() };
            let g = Element::word(group.alphabet().symbol_word(if starred { Symbol::F(index) } else { Symbol::E(index) }), k);
            let eps = &idempotents[base as usize];
            tau_letters.push(if starred { group.mul(&g, eps)? } else { group.mul(eps, &g)? });
        }

        let ga = group.alphabet();
        let mut sigma_letters = Vec::with_capacity(ga.len());
        for letter in ga.letters() {
            let mut img = Element::zero();
            for x in setting.vertices() {
                let xi = |i: u8| x.get(i as usize) as i64;
                let arrow = |i: u8, starred: bool| qa.symbol_word(Symbol::Arrow { base: x.index() as u32, index: i, starred });
                let (w, c) = match letter.symbol {
                    Symbol::K(i) => (qa.trivial(setting.vertex_id(&x)), k.q_power(xi(i))),
                    Symbol::Kinv(i) => (qa.trivial(setting.vertex_id(&x)), k.q_power(-xi(i))),
                    Symbol::E(i) => (arrow(i, false), k.one()),
                    Symbol::F(i) => (arrow(i, true), k.one()),
                    Symbol::Arrow { .. } | Symbol::Free(_) => unreachable!(),
                };
                img.add_term(w, c);
            }
            sigma_letters.push(quiver.normal_form(&img)?);
        }
        Ok(Isomorphism { quiver, group, idempotents, tau_letters, sigma_letters })
    }

    pub fn quiver(&self) -> &'a Algebra {
        self.quiver
    }

    pub fn group(&self) -> &'a Algebra {
        self.group
    }

    pub fn idempotent(&self, x: &ResidueVector) -> &Element {
        &self.idempotents[x.index()]
    }

    fn tau_word(&self, w: &Word) -> Result<Element> {
        if w.is_trivial() {
            return Ok(self.idempotents[w.target() as usize].clone());
        }
        let mut acc = self.group.one();
        for &l in w.letters() {
            acc = self.group.mul(&acc, &self.tau_letters[l as usize])?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    fn sigma_word(&self, w: &Word) -> Result<Element> {
        if w.is_trivial() {
            return Ok(self.quiver.one());
        }
        let mut acc = self.quiver.one();
        for &l in w.letters() {
            acc = self.quiver.mul(&acc, &self.sigma_letters[l as usize])?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// τ(e), reduced in u_q(C).
    pub fn tau(&self, e: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (w, c) in e.iter() {
            out.add_scaled(&self.tau_word(w)?, c);
        }
        Ok(out)
    }

    /// σ(e), reduced in u_q^C.
    pub fn sigma(&self, e: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (w, c) in e.iter() {
            out.add_scaled(&self.sigma_word(w)?, c);
        }
        Ok(out)
    }

    /// (τ ⊗ τ) of a tensor over u_q^C.
    pub fn tau_tensor(&self, t: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero();
        for (slots, c) in t.iter() {
            let images = slots.iter().map(|w| self.tau_word(w)).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&Element> = images.iter().collect();
            out.add_scaled(&Tensor::pure(&refs), c);
        }
        Ok(out)
    }
}

fn zero_check(alg: &Algebra, e: &Element) -> Option<String> {
    verdict(e.is_zero(), || format_element(alg.alphabet(), e))
}

/// The identities of the idempotents ε_x: orthogonality, completeness,
/// eigenvalues under K_y, commutation with E_i and F_i, and their
/// coproducts and antipodes.
pub fn verify_idempotents(group: &Algebra, suite: &str) -> Vec<Check> {
    let setting = group.setting().clone();
    let k = group.field();
    let xs: Vec<ResidueVector> = setting.vertices().collect();
    let eps = match xs.iter().map(|x| epsilon_idempotent(group, x)).collect::<Result<Vec<_>>>() {
        Ok(e) => e,
        Err(e) => return vec![run_check(suite, "idempotents", "idempotents", || Err(e))],
    };
    let hd = match HopfData::new(group) {
        Ok(h) => h,
        Err(e) => return vec![run_check(suite, "idempotents", "idempotents", || Err(e))],
    };
    let ga = group.alphabet();
    let letter = |s: Symbol| Element::word(ga.symbol_word(s), k);
    let eps_at = |x: &ResidueVector| &eps[x.index()];

    let mut checks: Vec<Check> = xs
        .par_iter()
        .flat_map_iter(|x| {
            xs.iter()
                .flat_map(|y| {
                    let prod = run_check(suite, format!("product x=({x}) y=({y})"), "idempotents are orthogonal", || {
                        let mut d = group.mul(eps_at(x), eps_at(y))?;
                        if x == y {
                            d.sub(eps_at(x));
                        }
                        Ok(zero_check(group, &d))
                    });
                    let eig = run_check(suite, format!("torus x=({x}) y=({y})"), "torus acts on idempotents by characters", || {
                        let mut d = group.mul(&group_like(group, y)?, eps_at(x))?;
                        d.sub(&eps_at(x).scaled(&k.q_power(x.dot(y) as i64)));
                        Ok(zero_check(group, &d))
                    });
                    [prod, eig]
                })
                .collect::<Vec<_>>()
        })
        .collect();

    checks.push(run_check(suite, "sum", "idempotents sum to one", || {
        let mut d = group.one().negated();
        for e in &eps {
            d.add(e);
        }
        Ok(zero_check(group, &d))
    }));

    let mut per_x: Vec<Check> = xs
        .par_iter()
        .flat_map_iter(|x| {
            let mut out = Vec::new();
            for i in 0..setting.rank() {
                let c = setting.column(i);
                out.push(run_check(suite, format!("E_{} x=({x})", i + 1), "E shifts idempotents", || {
                    let e = letter(Symbol::E(i as u8));
                    let d = group.mul(&e, eps_at(x))?.difference(&group.mul(eps_at(&(x + c)), &e)?);
                    Ok(zero_check(group, &d))
                }));
                out.push(run_check(suite, format!("F_{} x=({x})", i + 1), "F shifts idempotents", || {
                    let f = letter(Symbol::F(i as u8));
                    let d = group.mul(&f, eps_at(x))?.difference(&group.mul(eps_at(&(x - c)), &f)?);
                    Ok(zero_check(group, &d))
                }));
            }
            out.push(run_check(suite, format!("coproduct x=({x})"), "coproduct of an idempotent", || {
                let mut want = Tensor::zero();
                for u in &xs {
                    want.add(&Tensor::pure(&[eps_at(u), eps_at(&(x - u))]));
                }
                let d = hd.comultiply(eps_at(x))?.difference(&want);
                Ok(verdict(d.is_zero(), || format_tensor(ga, &d)))
            }));
            out.push(run_check(suite, format!("antipode x=({x})"), "antipode of an idempotent", || {
                let d = hd.antipode(eps_at(x))?.difference(eps_at(&-x));
                Ok(zero_check(group, &d))
            }));
            out
        })
        .collect();
    checks.append(&mut per_x);
    checks
}

/// Every section of the isomorphism check: τ kills the relations of
/// u_q^C (and respects the path-algebra structure), σ kills those of
/// u_q(C), σ and τ are inverse on generators, τ commutes with Δ, ε and S,
/// and, when both sides have bases, the dimensions agree and τ is
/// invertible on the basis.
pub fn verify_isomorphism(iso: &Isomorphism, samples: usize, seed: u64, suite: &str) -> Vec<Check> {
    let (quiver, group) = (iso.quiver(), iso.group());
    let setting = quiver.setting();
    let k = quiver.field();
    let qa = quiver.alphabet();
    let mut checks = Vec::new();

    // S1: relations of u_q^C, then the path-algebra relations among trivial paths and arrows
    checks.extend(quiver.presentation().relations().par_iter().map(|r| {
        run_check(suite, format!("S1 {}", r.label), "τ respects relations", || Ok(zero_check(group, &iso.tau(&r.element)?)))
    }).collect::<Vec<_>>());
    let vertices: Vec<ResidueVector> = setting.vertices().collect();
    checks.extend(vertices.par_iter().flat_map_iter(|x| {
        vertices.iter().map(|y| {
            run_check(suite, format!("S1 path e({x}) e({y})"), "τ respects relations", || {
                let mut d = group.mul(iso.idempotent(x), iso.idempotent(y))?;
                if x == y {
                    d.sub(iso.idempotent(x));
                }
                Ok(zero_check(group, &d))
            })
        }).collect::<Vec<_>>()
    }).collect::<Vec<_>>());
    checks.extend((0..qa.len() as u16).into_par_iter().map(|l| {
        let letter = qa.letter(l);
        let w = Word::letter(l, letter);
        run_check(suite, format!("S1 path endpoints {}", format_word(qa, &w)), "τ respects relations", || {
            let a = iso.tau(&Element::word(w.clone(), k))?;
            let tgt = iso.idempotent(&setting.vertex(letter.target));
            let src = iso.idempotent(&setting.vertex(letter.source));
            let mut d = group.mul(tgt, &a)?.difference(&a);
            d.add(&group.mul(&a, src)?.difference(&a));
            Ok(zero_check(group, &d))
        })
    }).collect::<Vec<_>>());
    checks.push(run_check(suite, "S1 path unit", "τ respects relations", || {
        Ok(zero_check(group, &iso.tau(&quiver.one())?.difference(&group.one())))
    }));

    // S2
    checks.extend(group.presentation().relations().par_iter().map(|r| {
        run_check(suite, format!("S2 {}", r.label), "σ respects relations", || Ok(zero_check(quiver, &iso.sigma(&r.element)?)))
    }).collect::<Vec<_>>());

    // INV
    let quiver_gens = quiver.generators();
    checks.extend(quiver_gens.par_iter().map(|(w, g)| {
        run_check(suite, format!("INV στ {}", format_word(qa, w)), "σ and τ are mutually inverse", || {
            Ok(zero_check(quiver, &iso.sigma(&iso.tau(g)?)?.difference(&quiver.normal_form(g)?)))
        })
    }).collect::<Vec<_>>());
    checks.extend(group.generators().par_iter().map(|(w, h)| {
        run_check(suite, format!("INV τσ {}", format_word(group.alphabet(), w)), "σ and τ are mutually inverse", || {
            Ok(zero_check(group, &iso.tau(&iso.sigma(h)?)?.difference(&group.normal_form(h)?)))
        })
    }).collect::<Vec<_>>());

    // S3 on generators, then on sampled words
    let hq = HopfData::new(quiver);
    let hg = HopfData::new(group);
    let (hq, hg) = match (hq, hg) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            checks.push(run_check(suite, "S3", "τ respects the Hopf structure", || Err(e)));
            return checks;
        }
    };
    let mut items: Vec<(String, Element)> =
        quiver_gens.iter().map(|(w, g)| (format_word(qa, w), g.clone())).collect();
    for (n, w) in sample_words(quiver, samples, seed).into_iter().enumerate() {
        items.push((format!("sample {n}: {}", format_word(qa, &w)), Element::word(w, k)));
    }
    checks.extend(items.par_iter().flat_map_iter(|(name, g)| {
        let delta = run_check(suite, format!("S3 coproduct {name}"), "τ respects the Hopf structure", || {
            let d = iso.tau_tensor(&hq.comultiply(g)?)?.difference(&hg.comultiply(&iso.tau(g)?)?);
            Ok(verdict(d.is_zero(), || format_tensor(group.alphabet(), &d)))
        });
        let eps = run_check(suite, format!("S3 counit {name}"), "τ respects the Hopf structure", || {
            let d = &hg.counit(&iso.tau(g)?) - &hq.counit(g);
            Ok(verdict(d.is_zero(), || d.to_string()))
        });
        let anti = run_check(suite, format!("S3 antipode {name}"), "τ respects the Hopf structure", || {
            Ok(zero_check(group, &hg.antipode(&iso.tau(g)?)?.difference(&iso.tau(&hq.antipode(g)?)?)))
        });
        [delta, eps, anti]
    }).collect::<Vec<_>>());

    // DIM and basis-level bijectivity
    if let (Some(bq), Some(bg)) = (quiver.basis(), group.basis()) {
        checks.push(run_check(suite, "DIM", "dimensions agree", || {
            Ok(verdict(bq.len() == bg.len(), || format!("{} ≠ {}", bq.len(), bg.len())))
        }));
        checks.push(run_check(suite, "RANK τ on basis", "τ is bijective on a basis", || {
            let rows = bq.words().par_iter().map(|w| iso.tau_word(w)).collect::<Result<Vec<_>>>()?;
            let rank = element_rank(rows);
            Ok(verdict(rank == bq.len() && rank == bg.len(), || format!("rank {rank} of a {}×{} matrix", bq.len(), bg.len())))
        }));
    }
    checks
}
