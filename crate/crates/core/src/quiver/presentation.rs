use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::paths::{path_power, serre_element};
use super::{Alphabet, Element, Setting, Symbol, Word};
use crate::error::{Error, Result};
use crate::scalars::{quantum_binomial_sym, quantum_integer, CycNumber};

/// Which of the four algebras a presentation describes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraKind {
    /// Path algebra of Q(C, Z_n), no relations.
    #[serde(rename = "kQ")]
    PathQ,
    /// Double quiver modulo the preprojective-type relations.
    #[serde(rename = "PiC")]
    PiC,
    /// Π^C modulo the nilpotency and Serre relations.
    #[serde(rename = "uqC")]
    UqC,
    /// The restricted quantum group on K, Kinv, E, F.
    #[serde(rename = "uq")]
    Uq,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 4] = [AlgebraKind::PathQ, AlgebraKind::PiC, AlgebraKind::UqC, AlgebraKind::Uq];

    pub fn tag(self) -> &'static str {
        match self {
            AlgebraKind::PathQ => "kQ",
            AlgebraKind::PiC => "PiC",
            AlgebraKind::UqC => "uqC",
            AlgebraKind::Uq => "uq",
        }
    }

    pub fn is_quiver(self) -> bool {
        self != AlgebraKind::Uq
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<AlgebraKind> {
        match s {
            "kQ" | "kq" | "path" => Ok(AlgebraKind::PathQ),
            "PiC" | "pic" | "Pi" => Ok(AlgebraKind::PiC),
            "uqC" | "uqc" => Ok(AlgebraKind::UqC),
            "uq" | "Uq" => Ok(AlgebraKind::Uq),
            _ => Err(Error::Config(format!("unknown algebra '{s}' (expected kQ, PiC, uqC or uq)"))),
        }
    }
}

/// Family a defining relation belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationTag {
    Commutator,
    MixedCommutator,
    JPower,
    JPowerStar,
    JSerre,
    JSerreStar,
    /// K_i^n = 1 and K_iK_j = K_jK_i.
    UqTorus,
    /// K_i E_j K_i^{-1} = q^{a_ij} E_j and the F analogue.
    UqConjugation,
    /// E_iF_j − F_jE_i = δ_ij (K_i − K_i^{-1})/(q − q^{-1}).
    UqCommutator,
    /// E_i^ℓ = F_i^ℓ = 0.
    UqNilpotent,
    UqSerreE,
    UqSerreF,
    UqInverse,
}

impl RelationTag {
    pub fn label(self) -> &'static str {
        match self {
            RelationTag::Commutator => "(2.1)",
            RelationTag::MixedCommutator => "(2.2)",
            RelationTag::JPower => "(J-power)",
            RelationTag::JPowerStar => "(J-power-star)",
            RelationTag::JSerre => "(J-serre)",
            RelationTag::JSerreStar => "(J-serre-star)",
            RelationTag::UqTorus => "(uq-1)",
            RelationTag::UqConjugation => "(uq-2)",
            RelationTag::UqCommutator => "(uq-3)",
            RelationTag::UqNilpotent => "(uq-4)",
            RelationTag::UqSerreE => "(uq-5)",
            RelationTag::UqSerreF => "(uq-6)",
            RelationTag::UqInverse => "(uq-inv)",
        }
    }
}

impl fmt::Display for RelationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub tag: RelationTag,
    /// Tag plus the parameters it was instantiated at, e.g. "(2.1) x=(3) i=1".
    pub label: String,
    pub element: Element,
}

/// A finitely presented path algebra: alphabet plus defining relations.
#[derive(Clone, Debug)]
pub struct Presentation {
    kind: AlgebraKind,
    alphabet: Arc<Alphabet>,
    relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(kind: AlgebraKind, alphabet: Arc<Alphabet>, relations: Vec<Relation>) -> Presentation {
        Presentation { kind, alphabet, relations }
    }

    pub fn build(kind: AlgebraKind, setting: Arc<Setting>) -> Result<Presentation> {
        match kind {
            AlgebraKind::PathQ => Ok(Presentation::new(kind, Alphabet::quiver(setting, false), Vec::new())),
            AlgebraKind::PiC => relations_restricted(setting, false),
            AlgebraKind::UqC => relations_restricted(setting, true),
            AlgebraKind::Uq => uq_presentation(setting),
        }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn setting(&self) -> &Arc<Setting> {
        self.alphabet.setting()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relations_mut(&mut self) -> &mut Vec<Relation> {
        &mut self.relations
    }

    pub fn count(&self, tag: RelationTag) -> usize {
        self.relations.iter().filter(|r| r.tag == tag).count()
    }

    pub fn max_relation_degree(&self) -> usize {
        self.relations.iter().map(|r| r.element.degree()).max().unwrap_or(0)
    }

    /// The identity: Σ_x e_x, or the empty word of the quantum alphabet.
    pub fn one(&self) -> Element {
        let one = self.setting().field().one();
        self.alphabet.trivials().map(|w| (w, one.clone())).collect()
    }

    /// Generators as words: trivial paths then letters (quiver), or letters (quantum).
    pub fn generators(&self) -> Vec<Word> {
        let mut out: Vec<Word> = if self.alphabet.is_quiver() { self.alphabet.trivials().collect() } else { Vec::new() };
        for id in 0..self.alphabet.len() as u16 {
            out.push(Word::letter(id, self.alphabet.letter(id)));
        }
        out
    }
}

fn word_of(alpha: &Alphabet, symbols: &[Symbol]) -> Word {
    let ids: Vec<u16> = symbols.iter().map(|&s| alpha.id_of(s).expect("symbol in alphabet")).collect();
    alpha.word(&ids).expect("quantum words always compose")
}

/// The relations of Π^C, and of u_q^C when `with_j` is set.
pub fn relations_restricted(setting: Arc<Setting>, with_j: bool) -> Result<Presentation> {
    let alpha = Alphabet::quiver(setting.clone(), true);
    let field = setting.field();
    let t = setting.rank();
    let ell = setting.ell() as usize;
    let mut rels = Vec::new();
    let mut push = |tag: RelationTag, label: String, element: Element| rels.push(Relation { tag, label, element });

    for i in 0..t {
        for x in setting.vertices() {
            let c = setting.column(i);
            let xp = &x + c;
            let mut r = Element::zero();
            let lhs = path_power(&alpha, &x, i, 1, false).concat(&path_power(&alpha, &x, i, 1, true));
            let rhs = path_power(&alpha, &xp, i, 1, true).concat(&path_power(&alpha, &xp, i, 1, false));
            r.add_term(lhs.expect("a(x,i) a(x,i)* composes"), field.one());
            r.add_term(rhs.expect("a(x+c,i)* a(x+c,i) composes"), -field.one());
            r.add_term(alpha.trivial(setting.vertex_id(&x)), -quantum_integer(field, x.get(i), 1));
            push(RelationTag::Commutator, format!("(2.1) x=({x}) i={}", i + 1), r);
        }
    }
    for i in 0..t {
        for j in 0..t {
            if i == j {
                continue;
            }
            for x in setting.vertices() {
                let xj = &x - setting.column(j);
                let xi = &x - setting.column(i);
                let lhs = path_power(&alpha, &x, j, 1, true).concat(&path_power(&alpha, &x, i, 1, false));
                let rhs = path_power(&alpha, &xj, i, 1, false).concat(&path_power(&alpha, &xi, j, 1, true));
                let mut r = Element::zero();
                r.add_term(lhs.expect("a(x,j)* a(x,i) composes"), field.one());
                r.add_term(rhs.expect("a(x-c^j,i) a(x-c^i,j)* composes"), -field.one());
                push(RelationTag::MixedCommutator, format!("(2.2) x=({x}) i={} j={}", i + 1, j + 1), r);
            }
        }
    }
    if with_j {
        for (starred, tag) in [(false, RelationTag::JPower), (true, RelationTag::JPowerStar)] {
            for i in 0..t {
                for x in setting.vertices() {
                    let w = path_power(&alpha, &x, i, ell, starred);
                    push(tag, format!("{tag} x=({x}) i={}", i + 1), Element::word(w, field));
                }
            }
        }
        for (starred, tag) in [(false, RelationTag::JSerre), (true, RelationTag::JSerreStar)] {
            for i in 0..t {
                for j in 0..t {
                    if i == j {
                        continue;
                    }
                    for x in setting.vertices() {
                        let w = serre_element(&alpha, &x, i, j, starred)?;
                        push(tag, format!("{tag} x=({x}) i={} j={}", i + 1, j + 1), w);
                    }
                }
            }
        }
    }
    let kind = if with_j { AlgebraKind::UqC } else { AlgebraKind::PiC };
    Ok(Presentation::new(kind, alpha, rels))
}

/// The restricted quantum group on K_i, Kinv_i, E_i, F_i.
///
/// The E–F commutator is stored monic as
/// E_iF_j − F_jE_i − δ_ij·(q − q^{-1})^{-1}·(K_i − Kinv_i).
pub fn uq_presentation(setting: Arc<Setting>) -> Result<Presentation> {
    let alpha = Alphabet::quantum(setting.clone());
    let field = setting.field();
    let t = setting.rank();
    let n = setting.n() as usize;
    let ell = setting.ell() as usize;
    let cartan = setting.cartan();
    let one = Word::trivial(0);
    let w = |s: &[Symbol]| word_of(&alpha, s);
    let (e, f, k, kb) = (
        |i: usize| Symbol::E(i as u8),
        |i: usize| Symbol::F(i as u8),
        |i: usize| Symbol::K(i as u8),
        |i: usize| Symbol::Kinv(i as u8),
    );
    let binomial = |a: Word, ca: CycNumber, b: Word, cb: CycNumber| -> Element {
        let mut r = Element::zero();
        r.add_term(a, ca);
        r.add_term(b, cb);
        r
    };
    let mut rels = Vec::new();
    let mut push = |tag: RelationTag, label: String, element: Element| rels.push(Relation { tag, label, element });

    for i in 0..t {
        push(
            RelationTag::UqTorus,
            format!("(uq-1) K_{}^{n}", i + 1),
            binomial(w(&vec![k(i); n]), field.one(), one.clone(), -field.one()),
        );
    }
    for i in 0..t {
        for j in i + 1..t {
            push(
                RelationTag::UqTorus,
                format!("(uq-1) K_{} K_{}", i + 1, j + 1),
                binomial(w(&[k(i), k(j)]), field.one(), w(&[k(j), k(i)]), -field.one()),
            );
        }
    }
    for i in 0..t {
        push(
            RelationTag::UqInverse,
            format!("(uq-inv) K_{0} Kinv_{0}", i + 1),
            binomial(w(&[k(i), kb(i)]), field.one(), one.clone(), -field.one()),
        );
        push(
            RelationTag::UqInverse,
            format!("(uq-inv) Kinv_{0} K_{0}", i + 1),
            binomial(w(&[kb(i), k(i)]), field.one(), one.clone(), -field.one()),
        );
    }
    for i in 0..t {
        for j in 0..t {
            let a = cartan.entry(i, j);
            push(
                RelationTag::UqConjugation,
                format!("(uq-2) K_{} E_{}", i + 1, j + 1),
                binomial(w(&[k(i), e(j), kb(i)]), field.one(), w(&[e(j)]), -field.q_power(a)),
            );
            push(
                RelationTag::UqConjugation,
                format!("(uq-2) K_{} F_{}", i + 1, j + 1),
                binomial(w(&[k(i), f(j), kb(i)]), field.one(), w(&[f(j)]), -field.q_power(-a)),
            );
        }
    }
    let inv_diff = (&field.q_power(1) - &field.q_power(-1)).inv().expect("q - q^-1 is nonzero for n >= 3");
    for i in 0..t {
        for j in 0..t {
            let mut r = binomial(w(&[e(i), f(j)]), field.one(), w(&[f(j), e(i)]), -field.one());
            if i == j {
                r.add_term(w(&[k(i)]), -inv_diff.clone());
                r.add_term(w(&[kb(i)]), inv_diff.clone());
            }
            push(RelationTag::UqCommutator, format!("(uq-3) E_{} F_{}", i + 1, j + 1), r);
        }
    }
    for i in 0..t {
        push(RelationTag::UqNilpotent, format!("(uq-4) E_{}^{ell}", i + 1), Element::word(w(&vec![e(i); ell]), field));
        push(RelationTag::UqNilpotent, format!("(uq-4) F_{}^{ell}", i + 1), Element::word(w(&vec![f(i); ell]), field));
    }
    for (g, tag, name) in [
        (e as fn(usize) -> Symbol, RelationTag::UqSerreE, "E"),
        (f as fn(usize) -> Symbol, RelationTag::UqSerreF, "F"),
    ] {
        for i in 0..t {
            for j in 0..t {
                if i == j {
                    continue;
                }
                let kappa = (1 - cartan.entry(i, j)) as u32;
                let mut r = Element::zero();
                for s in 0..=kappa {
                    let mut syms = vec![g(i); (kappa - s) as usize];
                    syms.push(g(j));
                    syms.extend(std::iter::repeat(g(i)).take(s as usize));
                    let mut c = quantum_binomial_sym(field, kappa, s, 1)?;
                    if s % 2 == 1 {
                        c = -c;
                    }
                    r.add_term(w(&syms), c);
                }
                push(tag, format!("{tag} {name} i={} j={}", i + 1, j + 1), r);
            }
        }
    }
    Ok(Presentation::new(AlgebraKind::Uq, alpha, rels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::CartanMatrix;

    fn setting(name: &str, n: u32) -> Arc<Setting> {
        Setting::new(CartanMatrix::of_type(name).unwrap(), n).unwrap()
    }

    #[test]
    fn restricted_counts() {
        let p = relations_restricted(setting("A1", 5), false).unwrap();
        assert_eq!(p.relations().len(), 5);
        assert_eq!(p.count(RelationTag::Commutator), 5);
        let p = relations_restricted(setting("A1", 5), true).unwrap();
        assert_eq!(p.relations().len(), 15);
        let p = relations_restricted(setting("A2", 5), true).unwrap();
        assert_eq!(p.count(RelationTag::Commutator), 50);
        assert_eq!(p.count(RelationTag::MixedCommutator), 50);
        assert_eq!(p.count(RelationTag::JPower) + p.count(RelationTag::JPowerStar), 100);
        assert_eq!(p.count(RelationTag::JSerre) + p.count(RelationTag::JSerreStar), 100);
    }

    #[test]
    fn uq_counts() {
        let p = uq_presentation(setting("A1", 5)).unwrap();
        assert_eq!(p.alphabet().len(), 4);
        assert_eq!(p.relations().len(), 8);
        let p = uq_presentation(setting("A2", 5)).unwrap();
        assert_eq!(p.count(RelationTag::UqSerreE) + p.count(RelationTag::UqSerreF), 4);
        let al = p.alphabet();
        let ef = word_of(al, &[Symbol::E(0), Symbol::F(1)]);
        let r = p.relations().iter().find(|r| r.element.coefficient(&ef).is_some()).unwrap();
        assert_eq!(r.element.len(), 2);
    }

    #[test]
    fn relation_terms_share_endpoints() {
        for name in ["A1", "A2"] {
            let p = relations_restricted(setting(name, 5), true).unwrap();
            for r in p.relations() {
                assert_eq!(r.element.uniform_components().len(), 1, "{}", r.label);
            }
        }
        // the mixed commutator runs x − c^i → x − c^j
        let s = setting("A2", 5);
        let p = relations_restricted(s.clone(), false).unwrap();
        let r = p.relations().iter().find(|r| r.tag == RelationTag::MixedCommutator).unwrap();
        let (w, _) = r.element.leading().unwrap();
        let x = s.vertices().next().unwrap();
        assert_eq!(w.source(), s.vertex_id(&(&x - s.column(0))));
        assert_eq!(w.target(), s.vertex_id(&(&x - s.column(1))));
    }

    #[test]
    fn degrees() {
        assert_eq!(relations_restricted(setting("A1", 5), true).unwrap().max_relation_degree(), 5);
        assert_eq!(uq_presentation(setting("A1", 6)).unwrap().max_relation_degree(), 6);
        assert_eq!(Presentation::build(AlgebraKind::PathQ, setting("A1", 5)).unwrap().relations().len(), 0);
    }

    #[test]
    fn kind_tags_round_trip() {
        for k in AlgebraKind::ALL {
            assert_eq!(k.tag().parse::<AlgebraKind>().unwrap(), k);
        }
        assert!("foo".parse::<AlgebraKind>().is_err());
    }
}
