//! Coproduct, counit and antipode on the quiver algebras and the quantum
//! group, and the checks built from them.

mod checks;
mod data;
mod tensor;

pub use checks::{
    check_hopf_axioms, check_hopf_ideal, check_multiplicativity, sample_words, verify_antipode_identity,
    verify_power_lemma, verify_serre_lemma,
};
pub use data::HopfData;
pub use tensor::{Slots, Tensor};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::engine::{Algebra, Mode};
    use crate::quiver::{AlgebraKind, CartanMatrix, Element, Setting, Symbol};
    use crate::report::Check;
    use crate::scalars::ResidueVector;
    use crate::syntax::{format_element, format_tensor, parse_element};

    fn setting(ty: &str) -> Arc<Setting> {
        Setting::new(CartanMatrix::of_type(ty).unwrap(), 5).unwrap()
    }

    fn all_pass(checks: &[Check]) {
        let bad: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
        assert!(bad.is_empty(), "{} failing, first: {:?}", bad.len(), bad[0]);
    }

    #[test]
    fn generator_coproducts() {
        let a = Algebra::build(AlgebraKind::UqC, setting("A1"), None, Mode::Full).unwrap();
        let hd = HopfData::new(&a).unwrap();
        let al = a.alphabet();
        let p = |s: &str| parse_element(s, al).unwrap();
        let d = hd.comultiply(&p("e(1)")).unwrap();
        assert_eq!(d.len(), 5);
        assert_eq!(d.coefficient(&[al.trivial(3), al.trivial(3)]).map(|c| c.is_one()), Some(true));
        let one = a.one();
        let d1 = hd.comultiply(&one).unwrap();
        assert_eq!(d1, Tensor::pure(&[&one, &one]));
        assert!(hd.counit(&p("e(0)")).is_one());
        assert!(hd.counit(&p("e(2)")).is_zero());
        assert!(hd.counit(&p("a*(1;1) a(1;1)")).is_zero());
        assert!(hd.counit(&one).is_one());
        assert_eq!(format_element(al, &hd.antipode(&p("e(2)")).unwrap()), "e(3)");
        assert_eq!(format_element(al, &hd.antipode(&p("a(2;1)")).unwrap()), "-a(0;1)");
        assert_eq!(format_element(al, &hd.antipode(&p("a(0;1)")).unwrap()), "-(q^3)*a(2;1)");
        for x in a.setting().vertices() {
            let e = Element::word(al.trivial(x.index() as u32), a.field());
            assert_eq!(hd.antipode(&hd.antipode(&e).unwrap()).unwrap(), e);
        }
    }

    #[test]
    fn quantum_group_coproducts() {
        let a = Algebra::build(AlgebraKind::Uq, setting("A1"), None, Mode::Full).unwrap();
        let hd = HopfData::new(&a).unwrap();
        let al = a.alphabet();
        let k = Element::word(al.symbol_word(Symbol::K(0)), a.field());
        assert_eq!(format_tensor(al, &hd.comultiply(&k).unwrap()), "K_1 ⊗ K_1");
        let e = parse_element("E_1", al).unwrap();
        assert_eq!(format_tensor(al, &hd.comultiply(&e).unwrap()), "K_1 ⊗ E_1 + E_1 ⊗ 1");
        assert_eq!(format_element(al, &hd.antipode(&parse_element("F_1", al).unwrap()).unwrap()), "-F_1 K_1");
    }

    #[test]
    fn relations_generate_hopf_ideals() {
        for kind in [AlgebraKind::PiC, AlgebraKind::UqC, AlgebraKind::Uq] {
            let a = Algebra::build(kind, setting("A1"), None, Mode::Full).unwrap();
            let hd = HopfData::new(&a).unwrap();
            all_pass(&check_hopf_ideal(&hd, a.presentation().relations(), "t"));
        }
    }

    #[test]
    fn axioms_hold_on_generators_and_samples() {
        for kind in AlgebraKind::ALL {
            let a = Algebra::build(kind, setting("A1"), None, Mode::Full).unwrap();
            let hd = HopfData::new(&a).unwrap();
            let samples = sample_words(&a, 20, 7);
            assert_eq!(samples.len(), 20);
            all_pass(&check_hopf_axioms(&hd, &samples, "t"));
        }
    }

    #[test]
    fn power_lemma_and_antipode_identity() {
        let a = Algebra::build(AlgebraKind::PiC, setting("A1"), None, Mode::Full).unwrap();
        let hd = HopfData::new(&a).unwrap();
        let checks = verify_power_lemma(&hd, "t");
        assert_eq!(checks.len(), 2 * 5 * 5 + 2 * 5 + 2);
        all_pass(&checks);
        all_pass(&verify_antipode_identity(&hd, "t"));
    }

    #[test]
    fn corrupted_formula_is_caught() {
        // the antipode of a relation that does not hold in the algebra is nonzero
        let a = Algebra::build(AlgebraKind::PiC, setting("A1"), None, Mode::Full).unwrap();
        let hd = HopfData::new(&a).unwrap();
        let mut rels = a.presentation().relations()[..1].to_vec();
        let x = ResidueVector::new(5, [1]);
        rels[0].element.add_term(a.alphabet().trivial(x.index() as u32), a.field().one());
        let checks = check_hopf_ideal(&hd, &rels, "t");
        assert!(checks.iter().any(|c| !c.passed() && c.witness.is_some()));
    }
}
