//! Suite configuration, orchestration of every check family, and reports.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::engine::{Algebra, Mode, FULL_MODE_LIMIT};
use crate::error::{Error, Result};
use crate::hopf::{
    check_hopf_axioms, check_hopf_ideal, check_multiplicativity, sample_words, verify_antipode_identity,
    verify_power_lemma, verify_serre_lemma, HopfData,
};
use crate::iso::{verify_idempotents, verify_isomorphism, Isomorphism};
use crate::quiver::{AlgebraKind, CartanMatrix, Presentation, Setting};
use crate::report::{run_check, verdict, Check, Status};
use crate::scalars::{character_sum, gauss_binomial, ResidueVector};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Scalars,
    Hopf,
    Ideals,
    Lemmas,
    Iso,
    All,
}

impl SuiteName {
    pub const EACH: [SuiteName; 5] = [SuiteName::Scalars, SuiteName::Hopf, SuiteName::Ideals, SuiteName::Lemmas, SuiteName::Iso];

    pub fn name(self) -> &'static str {
        match self {
            SuiteName::Scalars => "scalars",
            SuiteName::Hopf => "hopf",
            SuiteName::Ideals => "ideals",
            SuiteName::Lemmas => "lemmas",
            SuiteName::Iso => "iso",
            SuiteName::All => "all",
        }
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<SuiteName> {
        SuiteName::EACH
            .into_iter()
            .chain([SuiteName::All])
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite '{s}' (expected scalars, hopf, ideals, lemmas, iso or all)")))
    }
}

fn default_suite() -> SuiteName {
    SuiteName::All
}

fn default_samples() -> usize {
    50
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub cartan: CartanMatrix,
    pub n: u32,
    /// Restricts the hopf and ideals suites to one algebra.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraKind>,
    #[serde(default = "default_suite")]
    pub suite: SuiteName,
    /// Full when the expected dimension allows it, otherwise bounded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
    /// Number of sampled words per algebra in the axiom checks.
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default, skip_serializing_if = "is_false")]
    pub allow_small_n: bool,
    /// Test fixture: perturbs the relation of u_q^C with this index.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrupt_relation: Option<usize>,
}

impl SuiteConfig {
    pub fn new(cartan: CartanMatrix, n: u32) -> SuiteConfig {
        SuiteConfig {
            cartan,
            n,
            algebra: None,
            suite: SuiteName::All,
            mode: None,
            cap: None,
            out: None,
            seed: 0,
            samples: default_samples(),
            allow_small_n: false,
            corrupt_relation: None,
        }
    }

    pub fn from_json(text: &str) -> Result<SuiteConfig> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("cannot read config: {e}")))
    }
}

/// The setting of a config plus lazily built algebras, shared by the suites.
pub struct Workspace {
    config: SuiteConfig,
    setting: Arc<Setting>,
    mode: Mode,
    algebras: Mutex<BTreeMap<AlgebraKind, Arc<Algebra>>>,
}

impl Workspace {
    pub fn new(config: SuiteConfig) -> Result<Workspace> {
        let setting = Setting::with_override(config.cartan.clone(), config.n, config.allow_small_n)
            .map_err(|e| match e {
                Error::UnsupportedParameter(m) => Error::Config(m),
                e => e,
            })?;
        let mode = config.mode.unwrap_or(if setting.pbw_dimension() <= FULL_MODE_LIMIT { Mode::Full } else { Mode::Bounded });
        if let Some(cap) = config.cap {
            for kind in AlgebraKind::ALL {
                let need = Presentation::build(kind, setting.clone())?.max_relation_degree();
                if cap < need {
                    return Err(Error::Config(format!("cap {cap} is below the maximal relation degree {need} of {kind}")));
                }
            }
        }
        if mode == Mode::Full && setting.pbw_dimension() > FULL_MODE_LIMIT {
            return Err(Error::Config(format!(
                "expected dimension {} is too large for full mode; use --mode bounded",
                setting.pbw_dimension()
            )));
        }
        Ok(Workspace { config, setting, mode, algebras: Mutex::new(BTreeMap::new()) })
    }

    pub fn config(&self) -> &SuiteConfig {
        &self.config
    }

    pub fn setting(&self) -> &Arc<Setting> {
        &self.setting
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    fn presentation(&self, kind: AlgebraKind) -> Result<Presentation> {
        let mut pres = Presentation::build(kind, self.setting.clone())?;
        if let (AlgebraKind::UqC, Some(k)) = (kind, self.config.corrupt_relation) {
            let count = pres.relations().len();
            let rel = pres
                .relations_mut()
                .get_mut(k)
                .ok_or_else(|| Error::Config(format!("relation index {k} out of range (0..{count})")))?;
            let w = rel.element.leading().map(|(w, _)| w.clone()).expect("relations are nonzero");
            let e = self.setting.field().one();
            rel.element.add_term(crate::quiver::Word::trivial(w.target()), e);
            rel.label.push_str(" corrupted");
        }
        Ok(pres)
    }

    /// The algebra of `kind`, built on first use.
    pub fn algebra(&self, kind: AlgebraKind) -> Result<Arc<Algebra>> {
        if let Some(a) = self.algebras.lock().unwrap().get(&kind) {
            return Ok(a.clone());
        }
        let a = Arc::new(Algebra::new(self.presentation(kind)?, self.config.cap, self.mode)?);
        self.algebras.lock().unwrap().insert(kind, a.clone());
        Ok(a)
    }

    fn kinds(&self, default: &[AlgebraKind]) -> Vec<AlgebraKind> {
        match self.config.algebra {
            Some(k) => vec![k],
            None => default.to_vec(),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub version: String,
    pub config: SuiteConfig,
    pub mode: Mode,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: SuiteConfig, mode: Mode, checks: Vec<Check>) -> Report {
        let mut summary = Summary { total: checks.len(), ..Summary::default() };
        for c in &checks {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Error => summary.errors += 1,
            }
        }
        Report { version: VERSION.to_string(), config, mode, checks, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per check, witnesses indented below failures, then totals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "quivhopf {} | cartan {:?} | n = {} | mode {} | seed {}", self.version, c.cartan, c.n, self.mode, c.seed);
        for check in &self.checks {
            let status = match check.status {
                Status::Pass => "PASS ",
                Status::Fail => "FAIL ",
                Status::Error => "ERROR",
            };
            let _ = writeln!(out, "{status} {:<12} {} [{}] {:.1} ms", check.suite, check.id, check.anchor, check.wall_ms);
            if let Some(w) = &check.witness {
                let _ = writeln!(out, "      witness: {w}");
            }
        }
        out.push_str(&self.summary_line());
        out.push('\n');
        out
    }

    pub fn summary_line(&self) -> String {
        let s = &self.summary;
        format!("{} checks: {} passed, {} failed, {} errors", s.total, s.passed, s.failed, s.errors)
    }
}

/// Runs a check family that needs an algebra; a build failure becomes a
/// single ERROR record (configuration problems are returned instead).
fn with_algebra(
    ws: &Workspace,
    kind: AlgebraKind,
    suite: &str,
    f: impl FnOnce(&Algebra) -> Vec<Check>,
) -> Result<Vec<Check>> {
    match ws.algebra(kind) {
        Ok(a) => Ok(f(&a)),
        Err(e @ (Error::Config(_) | Error::UnsupportedParameter(_) | Error::InvalidCartan(_))) => Err(e),
        Err(e) => Ok(vec![run_check(suite, format!("build {kind}"), "algebra construction", || Err(e))]),
    }
}

fn with_hopf(hd: Result<HopfData>, suite: &str, f: impl FnOnce(&HopfData) -> Vec<Check>) -> Vec<Check> {
    match hd {
        Ok(h) => f(&h),
        Err(e) => vec![run_check(suite, "Hopf structure", "Hopf structure tables", || Err(e))],
    }
}

fn scalars_suite(ws: &Workspace) -> Vec<Check> {
    let s = ws.setting();
    let k = s.field();
    let n = s.n();
    let mut checks: Vec<Check> = ResidueVector::all(n, s.rank())
        .map(|beta| {
            run_check("scalars", format!("character sum β=({beta})"), "character sums", || {
                let got = character_sum(k, &beta);
                let want = if beta.is_zero() { k.from_int((n as i64).pow(s.rank() as u32)) } else { k.zero() };
                Ok(verdict(got == want, || got.to_string()))
            })
        })
        .collect();
    checks.push(run_check("scalars", "q has order n", "root of unity", || {
        let bad: Vec<u32> = (1..n).filter(|&e| k.q_power(e as i64).is_one()).collect();
        Ok(verdict(k.q_power(n as i64).is_one() && bad.is_empty(), || format!("q^e = 1 for e in {bad:?}")))
    }));
    let l = s.ell();
    for e in [-2i64, 2] {
        checks.push(run_check("scalars", format!("binomials vanish at q^{e}"), "Gaussian binomials at the nilpotency order", || {
            let bad: Vec<u32> = (1..l).filter(|&j| !gauss_binomial(k, l, j, e).map(|c| c.is_zero()).unwrap_or(false)).collect();
            Ok(verdict(bad.is_empty(), || format!("nonzero for s in {bad:?}")))
        }));
    }
    checks
}

fn hopf_suite(ws: &Workspace) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let c = ws.config();
    for kind in ws.kinds(&AlgebraKind::ALL) {
        let suite = format!("hopf.{kind}");
        checks.extend(with_algebra(ws, kind, &suite, |a| {
            with_hopf(HopfData::new(a), &suite, |hd| {
                let samples = sample_words(a, c.samples, c.seed);
                let mut out = check_hopf_axioms(hd, &samples, &suite);
                let pool = sample_words(a, 2 * c.samples.min(20), c.seed.wrapping_add(1));
                let pairs: Vec<_> = pool.chunks_exact(2).map(|p| (p[0].clone(), p[1].clone())).collect();
                out.extend(check_multiplicativity(hd, &pairs, &suite));
                out
            })
        })?);
    }
    Ok(checks)
}

fn ideals_suite(ws: &Workspace) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for kind in ws.kinds(&[AlgebraKind::PiC, AlgebraKind::UqC, AlgebraKind::Uq]) {
        let suite = format!("ideals.{kind}");
        checks.extend(with_algebra(ws, kind, &suite, |a| {
            with_hopf(HopfData::new(a), &suite, |hd| check_hopf_ideal(hd, a.presentation().relations(), &suite))
        })?);
    }
    Ok(checks)
}

fn lemmas_suite(ws: &Workspace) -> Result<Vec<Check>> {
    let rank = ws.setting().rank();
    with_algebra(ws, AlgebraKind::PiC, "lemmas", |a| {
        with_hopf(HopfData::new(a), "lemmas", |hd| {
            let mut out = verify_power_lemma(hd, "lemmas");
            if rank >= 2 {
                out.extend(verify_serre_lemma(hd, "lemmas"));
            }
            out.extend(verify_antipode_identity(hd, "lemmas"));
            out
        })
    })
}

fn iso_suite(ws: &Workspace) -> Result<Vec<Check>> {
    let c = ws.config();
    with_algebra(ws, AlgebraKind::Uq, "iso", |group| {
        let mut out = verify_idempotents(group, "iso.idempotents");
        let rest = with_algebra(ws, AlgebraKind::UqC, "iso", |quiver| match Isomorphism::new(quiver, group) {
            Ok(iso) => verify_isomorphism(&iso, c.samples.min(10), c.seed, "iso"),
            Err(e) => vec![run_check("iso", "maps", "τ and σ on generators", || Err(e))],
        });
        match rest {
            Ok(r) => out.extend(r),
            Err(e) => out.push(run_check("iso", "build uqC", "algebra construction", || Err(e))),
        }
        out
    })
}

/// Runs the selected suites. Configuration problems are returned as
/// errors before any computation; everything else ends up in the report.
pub fn run_suite(config: SuiteConfig) -> Result<Report> {
    let ws = Workspace::new(config)?;
    run_in(&ws)
}

pub fn run_in(ws: &Workspace) -> Result<Report> {
    let selected: Vec<SuiteName> = match ws.config().suite {
        SuiteName::All => SuiteName::EACH.to_vec(),
        s => vec![s],
    };
    let mut checks = Vec::new();
    for s in selected {
        checks.extend(match s {
            SuiteName::Scalars => scalars_suite(ws),
            SuiteName::Hopf => hopf_suite(ws)?,
            SuiteName::Ideals => ideals_suite(ws)?,
            SuiteName::Lemmas => lemmas_suite(ws)?,
            SuiteName::Iso => iso_suite(ws)?,
            SuiteName::All => unreachable!(),
        });
    }
    Ok(Report::new(ws.config().clone(), ws.mode(), checks))
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn config(ty: &str, n: u32, suite: SuiteName) -> SuiteConfig {
        let mut c = SuiteConfig::new(CartanMatrix::of_type(ty).unwrap(), n);
        c.suite = suite;
        c.samples = 10;
        c
    }

    #[test]
    fn small_n_is_a_configuration_error() {
        let e = run_suite(config("A1", 4, SuiteName::Scalars)).unwrap_err();
        assert!(matches!(e, Error::Config(_)));
        assert!(e.to_string().contains("n ≥ 5"), "{e}");
        let mut c = config("A1", 4, SuiteName::Scalars);
        c.allow_small_n = true;
        assert!(run_suite(c).unwrap().all_passed());
    }

    #[test]
    fn config_file_round_trip() {
        let c = SuiteConfig::from_json(r#"{"cartan": [[2,-1],[-1,2]], "n": 5, "algebra": "uqC"}"#).unwrap();
        assert_eq!(c.algebra, Some(AlgebraKind::UqC));
        assert_eq!(c.suite, SuiteName::All);
        assert_eq!(SuiteConfig::from_json(&serde_json::to_string(&c).unwrap()).unwrap(), c);
        assert!(SuiteConfig::from_json(r#"{"cartan": "A1", "n": 5, "colour": 1}"#).is_err());
        let mut low = config("A1", 5, SuiteName::Ideals);
        low.cap = Some(1);
        assert!(matches!(run_suite(low), Err(Error::Config(_))));
    }

    #[test]
    fn a1_suites_pass_with_unique_ids() {
        let report = run_suite(config("A1", 5, SuiteName::All)).unwrap();
        assert!(report.all_passed(), "{}", report.summary_line());
        let ids: HashSet<_> = report.checks.iter().map(|c| (c.suite.clone(), c.id.clone())).collect();
        assert_eq!(ids.len(), report.checks.len());
        assert_eq!(report.mode, Mode::Full);
    }

    #[test]
    fn corrupted_relation_fails_with_witness() {
        let mut c = config("A1", 5, SuiteName::Iso);
        c.corrupt_relation = Some(0);
        let report = run_suite(c).unwrap();
        assert!(!report.all_passed());
        let bad = report.checks.iter().find(|c| c.id.contains("corrupted") && c.status == Status::Fail).unwrap();
        assert!(bad.witness.as_deref().is_some_and(|w| w != "0"));
    }

    #[test]
    fn reports_are_deterministic() {
        let strip = |r: Report| r.checks.into_iter().map(|c| (c.id, c.status, c.witness)).collect::<Vec<_>>();
        let a = run_suite(config("A1", 6, SuiteName::Hopf)).unwrap();
        let b = run_suite(config("A1", 6, SuiteName::Hopf)).unwrap();
        assert_eq!(strip(a), strip(b));
    }
}
