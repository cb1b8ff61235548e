//! Randomized verification suite: samples (surface, view, point)
//! configurations deterministically from a seed and checks every product law,
//! sign corollary, critical-point sign law, and the curvature-sign lemma,
//! producing a machine-readable report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

use crate::projection::{projection_jet_from, ViewDirection};
use crate::surface::{gauss_sign_check, Builtin, Surface};
use crate::verify::{
    check_critical_props, fd_projection_jet, sign_corollaries_from_jets, theorem_residual,
    SignVerdict, TheoremId, ANGLE_EXCLUSION_BAND, DEFAULT_EPS_SIGN, DEFAULT_FD_STEP,
};

use std::f64::consts::PI;

/// Configuration for [`run_suite`]. The defaults match the command-line
/// defaults: seed 42, 10 000 samples, all builtin surfaces, views over the
/// full (θ, φ) range, points in [−1, 1]².
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    pub surfaces: Vec<Surface>,
    pub theta_range: (f64, f64),
    pub phi_range: (f64, f64),
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    /// Pass threshold for relative residuals on the closed-form route.
    pub residual_tol: f64,
    /// Pass threshold for relative residuals on the finite-difference route.
    pub fd_residual_tol: f64,
    /// Sign deadband and hypothesis margin.
    pub eps_sign: f64,
    /// Step for the finite-difference jets.
    pub fd_step: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 42,
            samples: 10_000,
            surfaces: Builtin::ALL.iter().map(|b| Surface::builtin(*b)).collect(),
            theta_range: (0.0, PI),
            phi_range: (0.0, 2.0 * PI),
            x_range: (-1.0, 1.0),
            y_range: (-1.0, 1.0),
            residual_tol: 1e-9,
            fd_residual_tol: 1e-5,
            eps_sign: DEFAULT_EPS_SIGN,
            fd_step: DEFAULT_FD_STEP,
        }
    }
}

/// Tolerances and sampling parameters echoed into the report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ToleranceConfig {
    pub residual_rel: f64,
    pub fd_residual_rel: f64,
    pub eps_sign: f64,
    pub fd_step: f64,
    pub angle_exclusion_band: f64,
}

/// Aggregate residual statistics for one product law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoremStats {
    pub theorem: TheoremId,
    /// Samples on which the law was evaluated (hypotheses met).
    pub hypotheses_met: u64,
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    pub fd_max_abs_residual: f64,
    pub fd_max_rel_residual: f64,
    pub failures: u64,
}

impl TheoremStats {
    fn new(theorem: TheoremId) -> Self {
        TheoremStats {
            theorem,
            hypotheses_met: 0,
            max_abs_residual: 0.0,
            max_rel_residual: 0.0,
            fd_max_abs_residual: 0.0,
            fd_max_rel_residual: 0.0,
            failures: 0,
        }
    }
}

/// Aggregate verdicts for one sign law. Always
/// `agree + disagree + skipped_indeterminate == hypotheses_met`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignLawStats {
    pub law: TheoremId,
    pub attempted: u64,
    pub hypotheses_met: u64,
    pub agree: u64,
    pub disagree: u64,
    pub skipped_indeterminate: u64,
}

impl SignLawStats {
    fn new(law: TheoremId) -> Self {
        SignLawStats {
            law,
            attempted: 0,
            hypotheses_met: 0,
            agree: 0,
            disagree: 0,
            skipped_indeterminate: 0,
        }
    }

    fn record(&mut self, verdict: SignVerdict) {
        self.attempted += 1;
        match verdict {
            SignVerdict::HypothesisNotMet => {}
            SignVerdict::Agree => {
                self.hypotheses_met += 1;
                self.agree += 1;
            }
            SignVerdict::Disagree => {
                self.hypotheses_met += 1;
                self.disagree += 1;
            }
            SignVerdict::Skipped => {
                self.hypotheses_met += 1;
                self.skipped_indeterminate += 1;
            }
        }
    }
}

/// Tally for the curvature-sign lemma (sign K vs sign g_xx g_yy when K ≥ 0,
/// and K ≤ 0 whenever g_xx g_yy ≤ 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaStats {
    pub checked: u64,
    pub violations: u64,
}

/// A single check that exceeded its tolerance or disagreed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureRecord {
    /// Index of the sample (within its stream) that produced the failure.
    pub sample: u64,
    /// Which check failed, e.g. "kappa_product (fd)" or "sign:sv_product".
    pub check: String,
    pub surface: String,
    pub theta: f64,
    pub phi: f64,
    pub x: f64,
    pub y: f64,
    pub detail: String,
}

/// Outcome of a suite run. Serializes to stable JSON: field order is fixed,
/// the wall-clock runtime is deliberately not serialized, and all numbers are
/// written with serde_json's shortest round-trip formatting, so two runs with
/// the same configuration produce byte-identical documents.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub seed: u64,
    pub samples: u64,
    pub surfaces: Vec<String>,
    pub tolerances: ToleranceConfig,
    pub theorems: Vec<TheoremStats>,
    pub sign_laws: Vec<SignLawStats>,
    pub critical_sign_laws: Vec<SignLawStats>,
    pub gauss_sign_lemma: LemmaStats,
    /// Samples dropped because the surface could not be evaluated there.
    pub domain_skipped: u64,
    pub failures: Vec<FailureRecord>,
    pub pass: bool,
    #[serde(skip)]
    pub runtime_seconds: f64,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report has no non-serializable values")
    }

    /// Short human-readable summary, one line per check group.
    pub fn summary(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "verification: {} samples, seed {}, surfaces [{}]",
            self.samples,
            self.seed,
            self.surfaces.join(", ")
        );
        for t in &self.theorems {
            let _ = writeln!(
                out,
                "  {:<16} hyp {:>6}  max rel {:.3e}  fd max rel {:.3e}  failures {}",
                t.theorem.id(),
                t.hypotheses_met,
                t.max_rel_residual,
                t.fd_max_rel_residual,
                t.failures
            );
        }
        for (label, stats) in [("sign", &self.sign_laws), ("crit", &self.critical_sign_laws)] {
            for s in stats.iter() {
                let _ = writeln!(
                    out,
                    "  {label}:{:<13} agree {:>6}  disagree {}  indeterminate-skipped {}",
                    s.law.id(),
                    s.agree,
                    s.disagree,
                    s.skipped_indeterminate
                );
            }
        }
        let _ = writeln!(
            out,
            "  lemma            checked {}  violations {}",
            self.gauss_sign_lemma.checked, self.gauss_sign_lemma.violations
        );
        let _ = writeln!(
            out,
            "  result: {} ({} failure(s), {:.2}s)",
            if self.pass { "PASS" } else { "FAIL" },
            self.failures.len(),
            self.runtime_seconds
        );
        out
    }
}

fn sample_range(rng: &mut ChaCha8Rng, range: (f64, f64)) -> f64 {
    if range.0 == range.1 {
        range.0
    } else {
        rng.random_range(range.0..range.1)
    }
}

/// Draws an angle from `range`, rejecting values within
/// [`ANGLE_EXCLUSION_BAND`] of any entry in `excluded`.
fn sample_angle_excluding(rng: &mut ChaCha8Rng, range: (f64, f64), excluded: &[f64]) -> f64 {
    loop {
        let a = sample_range(rng, range);
        if excluded.iter().all(|c| (a - c).abs() > ANGLE_EXCLUSION_BAND) {
            return a;
        }
    }
}

const THETA_EXCLUSIONS: [f64; 3] = [0.0, PI / 2.0, PI];
const PHI_EXCLUSIONS: [f64; 5] = [0.0, PI / 2.0, PI, 3.0 * PI / 2.0, 2.0 * PI];

/// Runs the full verification suite described by `config`.
///
/// Sampling is driven by a single ChaCha8 stream seeded from `config.seed`
/// and every check runs sequentially, so the resulting report is a pure
/// function of the configuration.
pub fn run_suite(config: &SuiteConfig) -> VerificationReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut theorems: Vec<TheoremStats> =
        TheoremId::ALL.iter().map(|t| TheoremStats::new(*t)).collect();
    let mut sign_laws: Vec<SignLawStats> =
        TheoremId::ALL.iter().map(|t| SignLawStats::new(*t)).collect();
    let mut critical_sign_laws: Vec<SignLawStats> =
        TheoremId::ALL.iter().map(|t| SignLawStats::new(*t)).collect();
    let mut lemma = LemmaStats { checked: 0, violations: 0 };
    let mut failures: Vec<FailureRecord> = Vec::new();
    let mut domain_skipped: u64 = 0;

    // surfaces admissible for the critical-point laws, judged once up front
    let critical_ok: Vec<bool> = config
        .surfaces
        .iter()
        .map(|s| crate::verify::critical_origin_jet(s).is_ok())
        .collect();

    for sample in 0..config.samples as u64 {
        let si = rng.random_range(0..config.surfaces.len().max(1));
        let s = &config.surfaces[si];

        // ----- residual stream: unrestricted angles -----
        let theta = sample_range(&mut rng, config.theta_range);
        let phi = sample_range(&mut rng, config.phi_range);
        let x = sample_range(&mut rng, config.x_range);
        let y = sample_range(&mut rng, config.y_range);
        let view = ViewDirection::new(theta, phi);

        let jets = s.jet2(x, y).and_then(|gjet| {
            fd_projection_jet(s, &view, x, y, config.fd_step).map(|fd| (gjet, fd))
        });
        let (gjet, fd_jet) = match jets {
            Ok(pair) => pair,
            Err(_) => {
                domain_skipped += 1;
                continue;
            }
        };
        let pj = projection_jet_from(&gjet, &view, x, y);

        for (ti, theorem) in TheoremId::ALL.into_iter().enumerate() {
            let exact = theorem_residual(theorem, &pj, &pj, &gjet, &view, config.eps_sign);
            if exact.hypotheses_met {
                let t = &mut theorems[ti];
                t.hypotheses_met += 1;
                t.max_abs_residual = t.max_abs_residual.max(exact.abs_residual);
                t.max_rel_residual = t.max_rel_residual.max(exact.rel_residual);
                if exact.rel_residual > config.residual_tol {
                    t.failures += 1;
                    failures.push(FailureRecord {
                        sample,
                        check: format!("{} (closed-form)", theorem.id()),
                        surface: s.spec().to_string(),
                        theta,
                        phi,
                        x,
                        y,
                        detail: format!(
                            "lhs {:e}, rhs {:e}, rel residual {:e} > {:e}",
                            exact.lhs, exact.rhs, exact.rel_residual, config.residual_tol
                        ),
                    });
                }

                let fd = theorem_residual(theorem, &fd_jet, &pj, &gjet, &view, config.eps_sign);
                let t = &mut theorems[ti];
                t.fd_max_abs_residual = t.fd_max_abs_residual.max(fd.abs_residual);
                t.fd_max_rel_residual = t.fd_max_rel_residual.max(fd.rel_residual);
                if fd.rel_residual > config.fd_residual_tol {
                    t.failures += 1;
                    failures.push(FailureRecord {
                        sample,
                        check: format!("{} (fd)", theorem.id()),
                        surface: s.spec().to_string(),
                        theta,
                        phi,
                        x,
                        y,
                        detail: format!(
                            "lhs {:e}, rhs {:e}, rel residual {:e} > {:e}",
                            fd.lhs, fd.rhs, fd.rel_residual, config.fd_residual_tol
                        ),
                    });
                }
            }
        }

        // ----- lemma: checked at the same point -----
        lemma.checked += 1;
        let gc = gauss_sign_check(&gjet, config.eps_sign);
        if !gc.holds() {
            lemma.violations += 1;
            failures.push(FailureRecord {
                sample,
                check: "gauss_sign_lemma".to_string(),
                surface: s.spec().to_string(),
                theta,
                phi,
                x,
                y,
                detail: format!("K {:e}, g_xx*g_yy {:e}", gc.k, gc.product),
            });
        }

        // ----- sign stream: angles away from the degenerate bands -----
        let theta_s = sample_angle_excluding(&mut rng, config.theta_range, &THETA_EXCLUSIONS);
        let phi_s = sample_angle_excluding(&mut rng, config.phi_range, &PHI_EXCLUSIONS);
        let view_s = ViewDirection::new(theta_s, phi_s);
        let gjet_s = match s.jet2(x, y) {
            Ok(j) => j,
            Err(_) => {
                domain_skipped += 1;
                continue;
            }
        };
        let pj_s = projection_jet_from(&gjet_s, &view_s, x, y);
        for check in sign_corollaries_from_jets(&gjet_s, &pj_s, &view_s, config.eps_sign) {
            let stats = sign_laws
                .iter_mut()
                .find(|sl| sl.law == check.law)
                .expect("stats exist for every law");
            stats.record(check.verdict);
            if check.verdict == SignVerdict::Disagree {
                failures.push(FailureRecord {
                    sample,
                    check: format!("sign:{}", check.law.id()),
                    surface: s.spec().to_string(),
                    theta: theta_s,
                    phi: phi_s,
                    x,
                    y,
                    detail: format!("lhs {:?}, rhs {:?}", check.lhs, check.rhs),
                });
            }
        }

        // ----- critical-point stream: admissible surfaces only -----
        if critical_ok[si] {
            if let Ok(checks) = check_critical_props(s, &view_s, config.eps_sign) {
                for check in checks {
                    let stats = critical_sign_laws
                        .iter_mut()
                        .find(|sl| sl.law == check.law)
                        .expect("stats exist for every law");
                    stats.record(check.verdict);
                    if check.verdict == SignVerdict::Disagree {
                        failures.push(FailureRecord {
                            sample,
                            check: format!("critical:{}", check.law.id()),
                            surface: s.spec().to_string(),
                            theta: theta_s,
                            phi: phi_s,
                            x: 0.0,
                            y: 0.0,
                            detail: format!("lhs {:?}, rhs {:?}", check.lhs, check.rhs),
                        });
                    }
                }
            }
        }
    }

    let pass = failures.is_empty();
    VerificationReport {
        schema_version: 1,
        seed: config.seed,
        samples: config.samples as u64,
        surfaces: config.surfaces.iter().map(|s| s.spec().to_string()).collect(),
        tolerances: ToleranceConfig {
            residual_rel: config.residual_tol,
            fd_residual_rel: config.fd_residual_tol,
            eps_sign: config.eps_sign,
            fd_step: config.fd_step,
            angle_exclusion_band: ANGLE_EXCLUSION_BAND,
        },
        theorems,
        sign_laws,
        critical_sign_laws,
        gauss_sign_lemma: lemma,
        domain_skipped,
        failures,
        pass,
        runtime_seconds: start.elapsed().as_secs_f64(),
    }
}
