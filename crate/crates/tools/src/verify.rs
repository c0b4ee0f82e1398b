//! Randomized campaigns checking that the gluing operators send
//! exponentials of primitive series to exponentials of their connected
//! parts, by exact comparison of truncated series.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use jacobi_core::glue::{bracket, bracket_partial, diff_op, diff_op_by_opening, self_closure};
use jacobi_core::lmo::strut;
use jacobi_core::{rat, ColorSet, Error, Monomial, Rational, Series};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::random::{random_primitive_with, StrutPolicy};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Campaign {
    /// Full pairing; the left series may contain struts.
    Main,
    /// Pairing along a proper nonempty subset of the colors.
    Partial,
    /// Self-closure, also compared against pairing with the exponential of
    /// the same-color struts.
    Closure,
    /// The differential operator, also compared against the leg-opening
    /// expansion.
    Differential,
}

impl Campaign {
    pub const ALL: [Campaign; 4] = [Campaign::Main, Campaign::Partial, Campaign::Closure, Campaign::Differential];

    pub fn name(self) -> &'static str {
        match self {
            Campaign::Main => "main",
            Campaign::Partial => "partial",
            Campaign::Closure => "closure",
            Campaign::Differential => "differential",
        }
    }
}

impl fmt::Display for Campaign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Campaign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Campaign::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown campaign {s:?} (expected main, partial, closure or differential)"))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trunc: u32,
    pub colors: ColorSet,
    pub num_trials: usize,
    pub which: Campaign,
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("truncation degree must be at least 1")]
    ZeroTrunc,
    #[error("at least one trial is required")]
    NoTrials,
    #[error("at least one color is required")]
    NoColors,
    #[error("the partial campaign needs at least two colors")]
    PartialNeedsTwoColors,
    #[error("trial {trial}: {error}")]
    Engine { trial: usize, error: Error },
}

#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub index: usize,
    pub seed: u64,
    pub passed: bool,
    /// Number of terms of the two random primitive inputs.
    pub input_terms: (usize, usize),
    /// Number of terms of the operator output.
    pub output_terms: usize,
    pub elapsed: Duration,
}

/// A failed comparison, with the inputs that produced it and the first
/// monomial whose coefficients differ.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub trial: usize,
    pub seed: u64,
    pub check: &'static str,
    pub b: Series,
    pub c: Series,
    /// Colors glued, for the partial campaign.
    pub glued: Option<ColorSet>,
    pub monomial: Monomial,
    pub lhs: Rational,
    pub rhs: Rational,
    /// `lhs - rhs`, never zero.
    pub discrepancy: Rational,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub config: VerifyConfig,
    pub trials: Vec<TrialOutcome>,
    pub counterexample: Option<Counterexample>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.trials.iter().all(|t| t.passed)
    }

    pub fn failures(&self) -> usize {
        self.trials.iter().filter(|t| !t.passed).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cfg = &self.config;
        let colors: Vec<&str> = cfg.colors.iter().map(|c| c.as_str()).collect();
        writeln!(
            f,
            "campaign {} seed {} trunc {} colors [{}]: {}/{} trials passed in {:.2?}",
            cfg.which,
            cfg.seed,
            cfg.trunc,
            colors.join(" "),
            self.trials.len() - self.failures(),
            self.trials.len(),
            self.elapsed
        )?;
        for t in &self.trials {
            writeln!(
                f,
                "  trial {:>3} seed {:>20} {} inputs {}+{} terms, output {} terms, {:.2?}",
                t.index,
                t.seed,
                if t.passed { "ok  " } else { "FAIL" },
                t.input_terms.0,
                t.input_terms.1,
                t.output_terms,
                t.elapsed
            )?;
        }
        if let Some(cx) = &self.counterexample {
            writeln!(f, "first counterexample: trial {} ({}), check {}", cx.trial, cx.seed, cx.check)?;
            writeln!(f, "  monomial {:?}", cx.monomial)?;
            writeln!(f, "  lhs {} rhs {} discrepancy {}", cx.lhs, cx.rhs, cx.discrepancy)?;
        }
        Ok(())
    }
}

/// First monomial on which `a` and `b` differ.
fn first_difference(a: &Series, b: &Series) -> Option<(Monomial, Rational, Rational)> {
    let mut keys: Vec<&Monomial> = a.terms().chain(b.terms()).map(|(m, _)| m).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().find_map(|m| {
        let (x, y) = (a.coefficient(m), b.coefficient(m));
        (x != y).then(|| (m.clone(), x, y))
    })
}

struct Trial {
    b: Series,
    c: Series,
    glued: Option<ColorSet>,
    output: Series,
    /// Named pairs that must coincide.
    checks: Vec<(&'static str, Series, Series)>,
}

fn same_color_struts(colors: &ColorSet, trunc: u32) -> Result<Series, Error> {
    let half = colors.iter().map(|y| (Monomial::single(strut(y, y)), rat(1, 2)));
    Series::from_terms(colors.clone(), trunc, half)?.exp()
}

fn random_proper_subset(rng: &mut impl Rng, colors: &ColorSet) -> ColorSet {
    let all: Vec<_> = colors.iter().cloned().collect();
    loop {
        let pick: Vec<_> = all.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        if !pick.is_empty() && pick.len() < all.len() {
            return ColorSet::new(pick).expect("distinct colors");
        }
    }
}

fn run_trial(which: Campaign, n: u32, colors: &ColorSet, seed: u64) -> Result<Trial, Error> {
    let rng = &mut ChaCha8Rng::seed_from_u64(seed);
    let trial = match which {
        Campaign::Main => {
            let b = random_primitive_with(rng, 3 * n, colors, StrutPolicy::Allow);
            let k = if b.has_struts() { 4 } else { 3 };
            let c = random_primitive_with(rng, k * n, colors, StrutPolicy::Forbid);
            let (eb, ec) = (b.exp()?, c.exp()?);
            let output = bracket(&eb, &ec)?;
            let connected = output.primitive_part().exp()?;
            Trial {
                checks: vec![("pairing is the exponential of its connected part", output.clone(), connected)],
                b,
                c,
                glued: None,
                output,
            }
        }
        Campaign::Partial => {
            let x = random_proper_subset(rng, colors);
            let b = random_primitive_with(rng, 3 * n, colors, StrutPolicy::Allow);
            let k = if b.terms().any(|(m, _)| m.has_strut_touching(&x)) { 4 } else { 3 };
            // struts on the right are fine as long as they avoid the glued colors
            let c = random_primitive_with(rng, k * n, colors, StrutPolicy::Allow);
            let c = Series::from_terms(
                colors.clone(),
                c.trunc(),
                c.terms().filter(|(m, _)| !m.has_strut_touching(&x)).map(|(m, q)| (m.clone(), q.clone())),
            )?;
            let (eb, ec) = (b.exp()?, c.exp()?);
            let output = bracket_partial(&eb, &ec, &x)?;
            let connected = output.primitive_part().exp()?;
            Trial {
                checks: vec![("partial pairing is the exponential of its connected part", output.clone(), connected)],
                b,
                c,
                glued: Some(x),
                output,
            }
        }
        Campaign::Closure => {
            let c = random_primitive_with(rng, 4 * n, colors, StrutPolicy::Forbid);
            let ec = c.exp()?;
            let output = self_closure(&ec)?;
            let connected = output.primitive_part().exp()?;
            let via_struts = bracket(&same_color_struts(colors, 3 * n)?, &ec)?;
            Trial {
                checks: vec![
                    ("closure is the exponential of its connected part", output.clone(), connected),
                    ("closure equals pairing with exp of same-color struts", output.clone(), via_struts),
                ],
                b: Series::zero(colors.clone(), 4 * n),
                c,
                glued: None,
                output,
            }
        }
        Campaign::Differential => {
            let b = random_primitive_with(rng, 3 * n, colors, StrutPolicy::Forbid);
            let c = random_primitive_with(rng, 3 * n, colors, StrutPolicy::Forbid);
            let (eb, ec) = (b.exp()?, c.exp()?);
            let output = diff_op(&eb, &ec)?;
            let connected = output.primitive_part().exp()?;
            let opened = diff_op_by_opening(&eb, &ec)?;
            Trial {
                checks: vec![
                    ("differential is the exponential of its connected part", output.clone(), connected),
                    ("differential equals the leg-opening expansion", output.clone(), opened),
                ],
                b,
                c,
                glued: None,
                output,
            }
        }
    };
    debug_assert_eq!(trial.output.trunc(), n);
    Ok(trial)
}

/// Per-trial seeds, derived from the campaign seed only.
pub fn trial_seeds(seed: u64, n: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen()).collect()
}

/// Runs a campaign. Trials run in parallel on the rayon pool; results are
/// collected in trial order, so the report does not depend on scheduling.
pub fn verify(cfg: &VerifyConfig) -> Result<Report, VerifyError> {
    if cfg.trunc == 0 {
        return Err(VerifyError::ZeroTrunc);
    }
    if cfg.num_trials == 0 {
        return Err(VerifyError::NoTrials);
    }
    if cfg.colors.is_empty() {
        return Err(VerifyError::NoColors);
    }
    if cfg.which == Campaign::Partial && cfg.colors.len() < 2 {
        return Err(VerifyError::PartialNeedsTwoColors);
    }
    let start = Instant::now();
    let seeds = trial_seeds(cfg.seed, cfg.num_trials);
    let results: Vec<_> = seeds
        .par_iter()
        .enumerate()
        .map(|(index, &seed)| {
            let t0 = Instant::now();
            let trial = run_trial(cfg.which, cfg.trunc, &cfg.colors, seed)
                .map_err(|error| VerifyError::Engine { trial: index, error })?;
            let failure = trial
                .checks
                .iter()
                .find_map(|(name, lhs, rhs)| first_difference(lhs, rhs).map(|d| (*name, d)));
            let outcome = TrialOutcome {
                index,
                seed,
                passed: failure.is_none(),
                input_terms: (trial.b.len(), trial.c.len()),
                output_terms: trial.output.len(),
                elapsed: t0.elapsed(),
            };
            let counterexample = failure.map(|(check, (monomial, lhs, rhs))| Counterexample {
                trial: index,
                seed,
                check,
                discrepancy: &lhs - &rhs,
                b: trial.b,
                c: trial.c,
                glued: trial.glued,
                monomial,
                lhs,
                rhs,
            });
            Ok((outcome, counterexample))
        })
        .collect::<Result<_, VerifyError>>()?;
    let mut trials = Vec::with_capacity(results.len());
    let mut counterexample = None;
    for (outcome, cx) in results {
        trials.push(outcome);
        if counterexample.is_none() {
            counterexample = cx;
        }
    }
    debug_assert!(counterexample.as_ref().is_none_or(|c: &Counterexample| !c.discrepancy.is_zero()));
    Ok(Report {
        config: cfg.clone(),
        trials,
        counterexample,
        elapsed: start.elapsed(),
    })
}
