//! Mass functions (basic probability assignments) and their classification.

use serde::Serialize;

use crate::error::{BeliefError, Result};
use crate::lattice::{Frame, Subset};

/// Values in `[-CLAMP, 0)` are treated as rounding noise and set to zero.
pub const CLAMP: f64 = 1e-12;
/// Allowed deviation of the total mass from 1.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Validation tolerances. The defaults are strict; replaying four-decimal
/// published vectors needs a looser `sum`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub clamp: f64,
    pub sum: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            clamp: CLAMP,
            sum: SUM_TOLERANCE,
        }
    }
}

/// A validated mass function over all `2^n` subsets of a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    masses: Vec<f64>,
}

impl MassFunction {
    /// Checks a raw vector, clamping tiny negatives, with default tolerances.
    pub fn validate(raw: Vec<f64>) -> Result<Self> {
        Self::validate_with(raw, Tolerances::default())
    }

    pub fn validate_with(raw: Vec<f64>, tol: Tolerances) -> Result<Self> {
        let frame = Frame::from_len(raw.len())?;
        Self::on_frame_with(frame, raw, tol)
    }

    pub fn on_frame(frame: Frame, raw: Vec<f64>) -> Result<Self> {
        Self::on_frame_with(frame, raw, Tolerances::default())
    }

    pub fn on_frame_with(frame: Frame, mut raw: Vec<f64>, tol: Tolerances) -> Result<Self> {
        if raw.len() != frame.size() {
            return Err(BeliefError::LengthNotPowerOfTwo(raw.len()));
        }
        for (index, v) in raw.iter_mut().enumerate() {
            if !v.is_finite() {
                return Err(BeliefError::NonFinite { index });
            }
            if *v < 0.0 {
                if *v >= -tol.clamp {
                    *v = 0.0;
                } else {
                    return Err(BeliefError::NegativeMass { index, value: *v });
                }
            }
            if *v > 1.0 + tol.sum {
                return Err(BeliefError::MassAboveOne { index, value: *v });
            }
        }
        let sum: f64 = raw.iter().sum();
        if (sum - 1.0).abs() > tol.sum {
            return Err(BeliefError::SumMismatch { sum });
        }
        Ok(Self { frame, masses: raw })
    }

    /// The vacuous mass function, `m(Ω) = 1`.
    pub fn vacuous(frame: Frame) -> Self {
        let mut masses = vec![0.0; frame.size()];
        masses[frame.size() - 1] = 1.0;
        Self { frame, masses }
    }

    /// Total conflict, `m(∅) = 1`.
    pub fn total_conflict(frame: Frame) -> Self {
        let mut masses = vec![0.0; frame.size()];
        masses[0] = 1.0;
        Self { frame, masses }
    }

    /// Mass one on a single subset.
    pub fn categorical(frame: Frame, s: Subset) -> Self {
        let mut masses = vec![0.0; frame.size()];
        masses[s.index()] = 1.0;
        Self { frame, masses }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn into_masses(self) -> Vec<f64> {
        self.masses
    }

    pub fn get(&self, s: Subset) -> f64 {
        self.masses[s.index()]
    }

    pub fn empty_mass(&self) -> f64 {
        self.masses[0]
    }

    pub fn total(&self) -> f64 {
        self.masses.iter().sum()
    }

    pub fn focal_sets(&self) -> impl Iterator<Item = Subset> + '_ {
        self.masses
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(i, _)| Subset(i as u32))
    }

    pub fn kind(&self) -> BodyKind {
        classify(self)
    }

    /// Dempster normalization: drop `m(∅)` and rescale.
    pub fn normalized(&self) -> Result<Self> {
        let conflict = self.masses[0];
        if conflict >= 1.0 - CLAMP {
            return Err(BeliefError::Degenerate("total conflict cannot be normalized"));
        }
        let scale = 1.0 / (1.0 - conflict);
        let mut masses: Vec<f64> = self.masses.iter().map(|v| v * scale).collect();
        masses[0] = 0.0;
        Self::on_frame(self.frame.clone(), masses)
    }

    pub fn max_abs_diff(&self, other: &MassFunction) -> f64 {
        self.masses
            .iter()
            .zip(&other.masses)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Structural flags of a mass function, always derived from its masses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BodyKind {
    pub normalized: bool,
    pub bayesian: bool,
    pub simple: bool,
    pub non_dogmatic: bool,
    pub consonant: bool,
}

pub fn classify(m: &MassFunction) -> BodyKind {
    let omega = m.frame().omega();
    let focal: Vec<Subset> = m.focal_sets().collect();
    let nonempty: Vec<Subset> = focal.iter().copied().filter(|s| !s.is_empty()).collect();
    let consonant = nonempty.iter().enumerate().all(|(i, a)| {
        nonempty[i + 1..]
            .iter()
            .all(|b| a.is_subset_of(*b) || b.is_subset_of(*a))
    });
    BodyKind {
        normalized: m.empty_mass() == 0.0,
        bayesian: !focal.is_empty() && focal.iter().all(|s| s.len() == 1),
        simple: focal.len() == 2 && focal.contains(&omega),
        non_dogmatic: m.get(omega) > 0.0,
        consonant,
    }
}
