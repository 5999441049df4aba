use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{enumerate_basis, QuotientBasis, RewriteSystem};
use crate::error::{Error, Result};
use crate::quiver::{Alphabet, AlgebraKind, Element, Presentation, Setting, Word};
use crate::scalars::CycField;

/// Full: confluent rules and, for the finite-dimensional algebras, a basis.
/// Bounded: rules completed up to the cap only; equalities found are exact,
/// non-vanishing is "not witnessed".
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Full,
    Bounded,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "full" => Ok(Mode::Full),
            "bounded" => Ok(Mode::Bounded),
            _ => Err(Error::Config(format!("unknown mode '{s}' (expected full or bounded)"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::Bounded => "bounded",
        })
    }
}

/// Outcome of an ideal-membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member,
    /// The normal form is nonzero under a confluent system.
    NotMember(Element),
    /// Nonzero residue under a cap-truncated system.
    NotWitnessed(Element),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }

    pub fn residue(&self) -> Option<&Element> {
        match self {
            Membership::Member => None,
            Membership::NotMember(e) | Membership::NotWitnessed(e) => Some(e),
        }
    }
}

/// Largest expected dimension for which full mode is attempted.
pub const FULL_MODE_LIMIT: u128 = 50_000;
const BASIS_LIMIT: usize = 2_000_000;

/// A presented algebra together with its rewriting system.
#[derive(Debug)]
pub struct Algebra {
    presentation: Presentation,
    system: RewriteSystem,
    basis: Option<QuotientBasis>,
    mode: Mode,
}

impl Algebra {
    pub fn build(kind: AlgebraKind, setting: Arc<Setting>, cap: Option<usize>, mode: Mode) -> Result<Algebra> {
        Algebra::new(Presentation::build(kind, setting)?, cap, mode)
    }

    pub fn new(presentation: Presentation, cap: Option<usize>, mode: Mode) -> Result<Algebra> {
        let setting = presentation.setting().clone();
        let cap = cap.unwrap_or_else(|| setting.default_cap().max(presentation.max_relation_degree()));
        let finite = matches!(presentation.kind(), AlgebraKind::UqC | AlgebraKind::Uq);
        if mode == Mode::Full && finite && setting.pbw_dimension() > FULL_MODE_LIMIT {
            return Err(Error::Config(format!(
                "expected dimension {} is too large for full mode; use --mode bounded",
                setting.pbw_dimension()
            )));
        }
        let system = RewriteSystem::complete(&presentation, cap, mode == Mode::Full)?;
        let basis = if mode == Mode::Full && finite { Some(enumerate_basis(&system, BASIS_LIMIT)?) } else { None };
        Ok(Algebra { presentation, system, basis, mode })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.presentation.kind()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn setting(&self) -> &Arc<Setting> {
        self.presentation.setting()
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.presentation.alphabet()
    }

    pub fn field(&self) -> &'static CycField {
        self.setting().field()
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.system
    }

    pub fn basis(&self) -> Option<&QuotientBasis> {
        self.basis.as_ref()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.basis.as_ref().map(QuotientBasis::len)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn cap(&self) -> usize {
        self.system.cap()
    }

    pub fn is_exact(&self) -> bool {
        self.system.is_certified()
    }

    pub fn normal_form(&self, e: &Element) -> Result<Element> {
        self.system.normal_form(e)
    }

    /// Normal form of a single word, subject to the same cap rule as
    /// [`Algebra::normal_form`].
    pub fn normal_form_word(&self, w: &Word) -> Result<Element> {
        if !self.is_exact() && w.len() > self.cap() {
            return Err(Error::CapInsufficient {
                cap: self.cap(),
                detail: format!("word of length {} exceeds the cap of an uncertified system", w.len()),
            });
        }
        Ok((*self.system.normal_form_word(w)).clone())
    }

    /// Normal form of a product of normal forms.
    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        if a.is_zero() || b.is_zero() {
            return Ok(Element::zero());
        }
        self.normal_form(&a.mul(b))
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Element>) -> Result<Element> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn one(&self) -> Element {
        self.system.normal_form_unchecked(&self.presentation.one())
    }

    pub fn word(&self, w: &Word) -> Element {
        (*self.system.normal_form_word(w)).clone()
    }

    /// Generators as elements: trivial paths and arrows, or K, Kinv, E, F.
    pub fn generators(&self) -> Vec<(Word, Element)> {
        self.presentation.generators().into_iter().map(|w| (w.clone(), Element::word(w, self.field()))).collect()
    }

    /// Whether `e` lies in the defining ideal, as witnessed by its normal form.
    pub fn ideal_membership(&self, e: &Element) -> Result<Membership> {
        let nf = self.normal_form(e)?;
        Ok(if nf.is_zero() {
            Membership::Member
        } else if self.is_exact() {
            Membership::NotMember(nf)
        } else {
            Membership::NotWitnessed(nf)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{paths::path_power, CartanMatrix};
    use crate::scalars::{quantum_integer, ResidueVector};

    fn a1(n: u32) -> Arc<Setting> {
        Setting::new(CartanMatrix::of_type("A1").unwrap(), n).unwrap()
    }

    #[test]
    fn restricted_a1_dimensions() {
        for (n, dim) in [(5, 125), (6, 54)] {
            let a = Algebra::build(AlgebraKind::UqC, a1(n), None, Mode::Full).unwrap();
            assert_eq!(a.dimension(), Some(dim));
            let u = Algebra::build(AlgebraKind::Uq, a1(n), None, Mode::Full).unwrap();
            assert_eq!(u.dimension(), Some(dim));
        }
    }

    #[test]
    fn commutator_rewrites() {
        let a = Algebra::build(AlgebraKind::UqC, a1(5), None, Mode::Full).unwrap();
        let al = a.alphabet().clone();
        let k = a.field();
        for x in a.setting().vertices() {
            let xp = &x + a.setting().column(0);
            let lhs = path_power(&al, &x, 0, 1, false).concat(&path_power(&al, &x, 0, 1, true)).unwrap();
            let mut expect = Element::word(
                path_power(&al, &xp, 0, 1, true).concat(&path_power(&al, &xp, 0, 1, false)).unwrap(),
                k,
            );
            expect.add_term(al.trivial(x.index() as u32), quantum_integer(k, x.get(0), 1));
            assert_eq!(a.word(&lhs), expect);
            let e = al.trivial(x.index() as u32);
            assert_eq!(a.mul(&Element::word(e.clone(), k), &Element::word(e.clone(), k)).unwrap(), Element::word(e, k));
            assert!(a.word(&path_power(&al, &x, 0, 5, false)).is_zero());
        }
        let x = ResidueVector::new(5, [0]);
        assert!(!a.ideal_membership(&Element::word(al.trivial(x.index() as u32), k)).unwrap().is_member());
    }

    #[test]
    fn full_mode_refuses_large_instances() {
        let s = Setting::new(CartanMatrix::of_type("A2").unwrap(), 5).unwrap();
        assert!(matches!(Algebra::build(AlgebraKind::UqC, s, None, Mode::Full), Err(Error::Config(_))));
    }
}
