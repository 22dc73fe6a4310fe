//! Specificity measures: Yager's specificity, the specificity of a
//! possibility distribution, and its split into propensity and commitment
//! specificity through the isopignistic decomposition.

use serde::{Serialize, Serializer};

use crate::error::{BeliefError, Result};
use crate::iso::{consonant_from_possibility, decompose, propensity, CommitmentForm, PossibilityDistribution};
use crate::mass::{MassFunction, CLAMP};
use crate::transforms::{betp, shannon_entropy};

/// Denominators below this make commitment specificity undefined.
const DEGENERATE: f64 = 1e-12;

fn require_normalized(m: &MassFunction) -> Result<()> {
    if m.empty_mass() > CLAMP {
        return Err(BeliefError::Domain(format!(
            "specificity needs a normalized mass function, m(∅) = {}",
            m.empty_mass()
        )));
    }
    Ok(())
}

/// `S(m) = Σ_{F ≠ ∅} m(F) / |F|`.
pub fn yager_specificity(m: &MassFunction) -> Result<f64> {
    require_normalized(m)?;
    Ok(m.masses()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(f, v)| v / f.count_ones() as f64)
        .sum())
}

/// Specificity of a possibility distribution: the integral over α of
/// `1 / |π_α|`, evaluated exactly on the sorted levels.
pub fn possibility_specificity(poss: &PossibilityDistribution) -> f64 {
    let mut levels = poss.values().to_vec();
    levels.sort_by(|a, b| b.total_cmp(a));
    levels
        .iter()
        .enumerate()
        .map(|(t, &p)| {
            let next = levels.get(t + 1).copied().unwrap_or(0.0);
            (p - next) / (t + 1) as f64
        })
        .sum()
}

/// Specificity of the propensity component.
pub fn propensity_specificity(m: &MassFunction) -> Result<f64> {
    require_normalized(m)?;
    Ok(possibility_specificity(&propensity(m)))
}

/// Commitment specificity; undefined for a deterministic mass function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CommitmentSpecificity {
    Defined(f64),
    Undefined,
}

impl CommitmentSpecificity {
    pub fn value(self) -> Option<f64> {
        match self {
            CommitmentSpecificity::Defined(v) => Some(v),
            CommitmentSpecificity::Undefined => None,
        }
    }
}

impl Serialize for CommitmentSpecificity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CommitmentSpecificity::Defined(v) => s.serialize_f64(*v),
            CommitmentSpecificity::Undefined => s.serialize_str("undefined"),
        }
    }
}

/// Total multi-element commitment amount over `Σ (|F| - 1) m_c(F)` for the
/// consonant mass function of the propensity.
pub fn commitment_specificity(m: &MassFunction) -> Result<CommitmentSpecificity> {
    require_normalized(m)?;
    let d = decompose(m, CommitmentForm::Zeta)?;
    let numerator: f64 = d.commitment.entries().map(|(_, z)| z).sum();
    let consonant = consonant_from_possibility(&d.propensity);
    let denominator: f64 = consonant
        .masses()
        .iter()
        .enumerate()
        .filter(|(f, _)| f.count_ones() >= 2)
        .map(|(f, v)| (f.count_ones() - 1) as f64 * v)
        .sum();
    if denominator < DEGENERATE {
        return Ok(CommitmentSpecificity::Undefined);
    }
    Ok(CommitmentSpecificity::Defined(numerator / denominator))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureReport {
    pub yager: f64,
    pub propensity_spec: f64,
    pub commitment_spec: CommitmentSpecificity,
    pub entropy_bits: f64,
}

pub fn report(m: &MassFunction) -> Result<MeasureReport> {
    Ok(MeasureReport {
        yager: yager_specificity(m)?,
        propensity_spec: propensity_specificity(m)?,
        commitment_spec: commitment_specificity(m)?,
        entropy_bits: shannon_entropy(&betp(m, true)?)?,
    })
}
