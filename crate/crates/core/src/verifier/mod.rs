//! Named-check registry and reports.
//!
//! Every check is deterministic in `(seed, trials, precision, constants)`:
//! it owns a generator seeded from the global seed and its own name, so
//! running checks in parallel never changes a result.

mod checks;
pub mod overrides;

use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra_d::{InnerWitness, OuterAut};
use crate::constants::Constants;
use crate::error::{AlgebraError, Result};
use crate::twisted_laurent::{TwistedLaurent, DEFAULT_SERIES_PRECISION};

pub use overrides::{ConstantsOverride, OverrideError};

#[derive(Debug, Error)]
pub enum VerifierError {
    #[error("unknown check {0:?} (see `skewverify list`)")]
    UnknownCheck(String),

    #[error("invalid setting: {0}")]
    InvalidSetting(String),

    #[error(transparent)]
    Override(#[from] OverrideError),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: f64,
    pub anchor: String,
}

/// Outcome of a check that ran to completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass(String),
    Fail(String),
}

type CheckFn = fn(&Verifier, &mut ChaCha8Rng) -> Result<Verdict>;

/// A registered check: stable name, the statement it verifies, and its body.
pub struct CheckInfo {
    pub name: &'static str,
    pub anchor: &'static str,
    run: CheckFn,
}

/// All checks, in report order.
pub fn registry() -> &'static [CheckInfo] {
    checks::REGISTRY
}

/// `(name, anchor)` for every registered check.
pub fn list_checks() -> Vec<(&'static str, &'static str)> {
    registry().iter().map(|c| (c.name, c.anchor)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    pub seed: u64,
    pub trials: usize,
    /// Relative precision of random truncated series.
    pub precision: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 100,
            precision: DEFAULT_SERIES_PRECISION,
        }
    }
}

/// Shared state for one run: the settings and the objects built from the
/// constants. Construction never fails on bad constants; broken data
/// shows up as failing or erroring checks.
pub struct Verifier {
    settings: Settings,
    constants: Constants,
    aut: OuterAut,
    witness: Result<InnerWitness>,
    ring: Option<TwistedLaurent>,
}

impl Verifier {
    pub fn new(settings: Settings, constants: Constants) -> std::result::Result<Self, VerifierError> {
        if settings.trials == 0 {
            return Err(VerifierError::InvalidSetting("trials must be positive".into()));
        }
        if settings.precision == 0 {
            return Err(VerifierError::InvalidSetting("precision must be positive".into()));
        }
        let aut = OuterAut::from_images_unverified(constants.theta_image_elem(), constants.lambda.clone());
        let witness = InnerWitness::new(constants.d_elem());
        let ring = witness
            .as_ref()
            .ok()
            .map(|w| TwistedLaurent::new(aut.clone(), w.clone(), settings.precision));
        Ok(Self {
            settings,
            constants,
            aut,
            witness,
            ring,
        })
    }

    pub fn standard(settings: Settings) -> std::result::Result<Self, VerifierError> {
        Self::new(settings, Constants::standard())
    }

    pub fn settings(&self) -> &Settings {
        &self.settings
    }

    pub fn constants(&self) -> &Constants {
        &self.constants
    }

    pub fn aut(&self) -> &OuterAut {
        &self.aut
    }

    pub fn witness(&self) -> Result<&InnerWitness> {
        self.witness.as_ref().map_err(Clone::clone)
    }

    pub fn ring(&self) -> Result<&TwistedLaurent> {
        self.ring.as_ref().ok_or_else(|| match &self.witness {
            Err(e) => e.clone(),
            Ok(_) => AlgebraError::Inconsistent("series ring missing".into()),
        })
    }

    fn rng_for(&self, name: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.settings.seed ^ fnv1a(name))
    }

    pub fn run_check(&self, name: &str) -> std::result::Result<CheckResult, VerifierError> {
        let info = registry()
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| VerifierError::UnknownCheck(name.to_string()))?;
        Ok(self.execute(info))
    }

    /// Runs every registered check in parallel; results keep registry order.
    pub fn run_all(&self) -> Report {
        let results = registry().par_iter().map(|c| self.execute(c)).collect();
        self.report(results)
    }

    pub fn report(&self, results: Vec<CheckResult>) -> Report {
        Report {
            seed: self.settings.seed,
            trials: self.settings.trials,
            precision: self.settings.precision,
            checks: results,
        }
    }

    fn execute(&self, info: &CheckInfo) -> CheckResult {
        let mut rng = self.rng_for(info.name);
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| (info.run)(self, &mut rng)));
        let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
        let (status, detail) = match outcome {
            Ok(Ok(Verdict::Pass(d))) => (Status::Pass, d),
            Ok(Ok(Verdict::Fail(d))) => (Status::Fail, d),
            Ok(Err(e)) => (Status::Error, format!("{}: {e}", classify(&e))),
            Err(panic) => {
                let msg = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "unknown panic".into());
                (Status::Error, format!("panic: {msg}"))
            }
        };
        CheckResult {
            name: info.name.to_string(),
            status,
            detail,
            elapsed_ms,
            anchor: info.anchor.to_string(),
        }
    }
}

fn classify(e: &AlgebraError) -> &'static str {
    match e {
        AlgebraError::DivisionByZero => "division-by-zero",
        AlgebraError::ZeroDivisor => "zero-divisor",
        AlgebraError::Singular => "singular",
        AlgebraError::Inconsistent(_) => "inconsistency",
        AlgebraError::Precondition(_) => "precondition",
        AlgebraError::InsufficientPrecision(_) => "insufficient-precision",
        AlgebraError::NoWitness(_) => "no-witness",
        AlgebraError::RelationFailed { .. } => "relation-failed",
    }
}

/// 64-bit FNV-1a, used to give every check its own stream.
fn fnv1a(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub seed: u64,
    pub trials: usize,
    pub precision: usize,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn find(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<5} {:<width$}  [{}]  {} ({:.1} ms)",
                c.status.label(),
                c.name,
                c.anchor,
                c.detail,
                c.elapsed_ms,
            );
        }
        let _ = writeln!(
            out,
            "{} checks: {} passed, {} failed, {} errors (seed {}, trials {}, precision {})",
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Error),
            self.seed,
            self.trials,
            self.precision,
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    /// The report with timings zeroed, for reproducibility comparisons.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.elapsed_ms = 0.0;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique_and_anchored() {
        let names = list_checks();
        let mut seen = std::collections::HashSet::new();
        for (name, anchor) in &names {
            assert!(seen.insert(*name), "duplicate {name}");
            assert!(!anchor.is_empty(), "{name} has no anchor");
        }
    }

    #[test]
    fn required_checks_are_registered() {
        let names: Vec<_> = list_checks().into_iter().map(|(n, _)| n).collect();
        for required in [
            "rel_u_cubed",
            "rel_commutation",
            "rel_f_sigma",
            "rel_inner_theta",
            "rel_inner_u",
            "rel_d_fixed",
            "rel_norm_lambda",
            "norm_pi_is_7",
            "minpoly_irred_mod2",
            "minpoly_cube_mod7",
            "f_rootless_mod2",
            "f_rootless_modpi",
            "mu_9_not_in_F7",
            "mu_3_not_in_F2",
            "mu_3_in_F7",
            "t_central",
            "valuation_axioms",
            "automorphism_orders",
            "homomorphism_sigma_tilde",
            "tame_delta_residue",
            "division_evidence",
        ] {
            assert!(names.contains(&required), "{required} missing");
        }
    }

    #[test]
    fn unknown_check() {
        let v = Verifier::standard(Settings::default()).unwrap();
        assert!(matches!(v.run_check("nonexistent"), Err(VerifierError::UnknownCheck(_))));
    }

    #[test]
    fn zero_trials_rejected() {
        let s = Settings {
            trials: 0,
            ..Settings::default()
        };
        assert!(matches!(Verifier::standard(s), Err(VerifierError::InvalidSetting(_))));
    }

    #[test]
    fn streams_differ_per_check() {
        assert_ne!(fnv1a("rel_u_cubed"), fnv1a("t_central"));
        assert_eq!(fnv1a(""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(fnv1a("a"), 0xaf63_dc4c_8601_ec8c);
    }
}
