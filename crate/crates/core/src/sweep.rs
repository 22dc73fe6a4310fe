//! Perturbation sweeps: vary entries of a decomposition over a grid and
//! record whether each rebuilt vector is still a mass function.

use std::fmt;
use std::str::FromStr;

use crate::classic::{masses_from_sigma, masses_from_t, pichon_t, smets_sigma, TFunction, WeightFunction, WeightKind};
use crate::error::{BeliefError, Result};
use crate::iso::{decompose, masses_from_tau, CommitmentForm, IsoCommitment, IsoDecomposition};
use crate::lattice::{Frame, Subset};
use crate::mass::MassFunction;
use crate::random::{Generator, RandomKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepBase {
    IsoTau,
    Sigma,
    T,
}

impl SweepBase {
    pub const ALL: [SweepBase; 3] = [SweepBase::IsoTau, SweepBase::Sigma, SweepBase::T];

    pub fn name(self) -> &'static str {
        match self {
            SweepBase::IsoTau => "iso_tau",
            SweepBase::Sigma => "sigma",
            SweepBase::T => "t",
        }
    }

    pub fn default_range(self) -> (f64, f64) {
        match self {
            SweepBase::Sigma => (0.0, 2.0),
            SweepBase::IsoTau | SweepBase::T => (-1.0, 1.0),
        }
    }

    /// Whether `s` is an entry this base lets a sweep vary.
    pub fn accepts(self, frame: &Frame, s: Subset) -> bool {
        match self {
            SweepBase::IsoTau | SweepBase::T => s.len() >= 2,
            SweepBase::Sigma => s != frame.omega(),
        }
    }
}

impl fmt::Display for SweepBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepBase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        SweepBase::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| format!("unknown sweep base {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: SweepBase,
    pub targets: Vec<Subset>,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn new(base: SweepBase, targets: Vec<Subset>, range: Option<(f64, f64)>, steps: usize) -> Result<Self> {
        let (lo, hi) = range.unwrap_or_else(|| base.default_range());
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(BeliefError::Domain(format!("sweep range [{lo}, {hi}] is empty")));
        }
        if steps < 2 {
            return Err(BeliefError::Domain(format!(
                "a sweep needs at least 2 steps, got {steps}"
            )));
        }
        if targets.is_empty() {
            return Err(BeliefError::Domain("a sweep needs at least one target subset".into()));
        }
        Ok(Self {
            base,
            targets,
            lo,
            hi,
            steps,
        })
    }

    pub fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        let span = self.hi - self.lo;
        let last = (self.steps - 1) as f64;
        (0..self.steps).map(move |k| {
            if k == self.steps - 1 {
                self.hi
            } else {
                self.lo + span * k as f64 / last
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    /// Rebuilt vector; all NaN when the parameter lies outside the
    /// representation's domain.
    pub masses: Vec<f64>,
    pub valid: bool,
}

/// Decomposed base that a sweep or perturbation edits.
enum Rep {
    Tau(IsoDecomposition),
    Sigma(WeightFunction),
    T(TFunction),
}

impl Rep {
    fn of(m: &MassFunction, base: SweepBase) -> Result<Rep> {
        Ok(match base {
            SweepBase::IsoTau => Rep::Tau(decompose(m, CommitmentForm::Tau)?),
            SweepBase::Sigma => Rep::Sigma(smets_sigma(m)?),
            SweepBase::T => Rep::T(pichon_t(m)),
        })
    }

    fn values(&self) -> Vec<f64> {
        match self {
            Rep::Tau(d) => d.commitment.values().to_vec(),
            Rep::Sigma(w) => w.values().to_vec(),
            Rep::T(t) => t.values().to_vec(),
        }
    }

    /// Rebuilds raw masses with `values` in place of the stored entries.
    fn rebuild(&self, frame: &Frame, values: Vec<f64>) -> Option<Vec<f64>> {
        match self {
            Rep::Tau(d) => {
                let commitment = IsoCommitment::new(frame, CommitmentForm::Tau, values).ok()?;
                let edited = IsoDecomposition {
                    commitment,
                    ..d.clone()
                };
                masses_from_tau(&edited).ok()
            }
            Rep::Sigma(_) => {
                let w = WeightFunction::new(frame.clone(), WeightKind::Sigma, values).ok()?;
                masses_from_sigma(&w).ok()
            }
            Rep::T(_) => Some(masses_from_t(&TFunction::new(frame.clone(), values).ok()?)),
        }
    }
}

fn judge(frame: &Frame, raw: Option<Vec<f64>>) -> (Vec<f64>, bool) {
    match raw {
        Some(v) => {
            let valid = MassFunction::on_frame(frame.clone(), v.clone()).is_ok();
            (v, valid)
        }
        None => (vec![f64::NAN; frame.size()], false),
    }
}

/// One row per grid point, every target set to the grid value.
pub fn sweep(spec: &SweepSpec, m: &MassFunction) -> Result<Vec<SweepRow>> {
    let frame = m.frame();
    for &s in &spec.targets {
        if s.index() >= frame.size() || !spec.base.accepts(frame, s) {
            return Err(BeliefError::Domain(format!(
                "{s} cannot be varied in a {} sweep",
                spec.base.name()
            )));
        }
    }
    let rep = Rep::of(m, spec.base)?;
    let start = rep.values();
    Ok(spec
        .grid()
        .map(|param| {
            let mut v = start.clone();
            for s in &spec.targets {
                v[s.index()] = param;
            }
            let (masses, valid) = judge(frame, rep.rebuild(frame, v));
            SweepRow { param, masses, valid }
        })
        .collect())
}

/// Fixed six-decimal formatting with negative zero printed as zero.
pub fn fixed6(x: f64) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

pub fn sweep_csv(rows: &[SweepRow], n: usize) -> String {
    let mut out = String::from("param");
    for i in 0..1usize << n {
        out.push_str(&format!(",m{i}"));
    }
    out.push_str(",valid\n");
    for r in rows {
        out.push_str(&fixed6(r.param));
        for x in &r.masses {
            out.push(',');
            out.push_str(&fixed6(*x));
        }
        out.push_str(if r.valid { ",true\n" } else { ",false\n" });
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PerturbationSummary {
    pub base: SweepBase,
    pub trials: usize,
    pub invalid: usize,
}

/// Random perturbation trials: each draws a non-dogmatic base on `n`
/// elements, redraws every editable entry uniformly in the base's default
/// range, rebuilds, and counts vectors that are not mass functions.
pub fn perturbation_trials(base: SweepBase, n: usize, trials: usize, seed: u64) -> Result<PerturbationSummary> {
    let frame = Frame::new(n)?;
    let mut g = Generator::new(seed);
    let (lo, hi) = base.default_range();
    let mut invalid = 0;
    for _ in 0..trials {
        let m = g.mass(&frame, RandomKind::NonDogmatic);
        let rep = Rep::of(&m, base)?;
        let mut v = rep.values();
        for s in frame.subsets().filter(|&s| base.accepts(&frame, s)) {
            v[s.index()] = g.uniform(lo, hi);
        }
        if !judge(&frame, rep.rebuild(&frame, v)).1 {
            invalid += 1;
        }
    }
    Ok(PerturbationSummary { base, trials, invalid })
}
