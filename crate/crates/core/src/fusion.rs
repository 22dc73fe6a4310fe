//! Combination rules: the conjunctive and disjunctive rules, the cautious and
//! bold rules on canonical weights, and the hyper-cautious rules that fuse
//! isopignistic ratios.

use crate::classic::{mass_from_sigma, mass_from_v, smets_sigma, smets_v};
use crate::error::{BeliefError, Result};
use crate::iso::{
    decompose, reconstruct_tau, CommitmentForm, IsoCommitment, IsoDecomposition, PossibilityDistribution,
};
use crate::mass::MassFunction;
use crate::transforms::{mass_from_b, mass_from_q, set_transform, SetFunction, SetKind};

/// Aggregation operator applied to singleton possibilities by the
/// hyper-cautious rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FusionOperator {
    /// Minimum t-norm.
    TMin,
    /// Product t-norm.
    TProd,
    /// Maximum t-conorm.
    SMax,
    /// Probabilistic-sum t-conorm.
    SProbSum,
}

impl FusionOperator {
    pub const ALL: [FusionOperator; 4] = [
        FusionOperator::TMin,
        FusionOperator::TProd,
        FusionOperator::SMax,
        FusionOperator::SProbSum,
    ];

    #[inline]
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            FusionOperator::TMin => a.min(b),
            FusionOperator::TProd => a * b,
            FusionOperator::SMax => a.max(b),
            FusionOperator::SProbSum => a + b - a * b,
        }
    }

    /// Whether the operator is a t-norm (conjunctive family).
    pub fn is_conjunctive(self) -> bool {
        matches!(self, FusionOperator::TMin | FusionOperator::TProd)
    }

    pub fn name(self) -> &'static str {
        match self {
            FusionOperator::TMin => "t_min",
            FusionOperator::TProd => "t_prod",
            FusionOperator::SMax => "s_max",
            FusionOperator::SProbSum => "s_probsum",
        }
    }
}

fn pointwise(m1: &MassFunction, m2: &MassFunction, kind: SetKind) -> Result<SetFunction> {
    m1.frame().check_compatible(m2.frame())?;
    let a = set_transform(m1, kind);
    let b = set_transform(m2, kind);
    let values = a.values().iter().zip(b.values()).map(|(x, y)| x * y).collect();
    SetFunction::new(m1.frame().clone(), kind, values)
}

/// Unnormalized conjunctive rule: product of commonalities.
pub fn conjunctive(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    mass_from_q(&pointwise(m1, m2, SetKind::Q)?)
}

/// Disjunctive rule: product of implicabilities.
pub fn disjunctive(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    mass_from_b(&pointwise(m1, m2, SetKind::B)?)
}

/// Cautious rule: pointwise minimum of diffidence weights.
pub fn cautious(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    m1.frame().check_compatible(m2.frame())?;
    let w = smets_sigma(m1)?.pointwise_min(&smets_sigma(m2)?)?;
    mass_from_sigma(&w)
}

/// Bold rule: pointwise minimum of disjunctive weights.
pub fn bold(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    m1.frame().check_compatible(m2.frame())?;
    let w = smets_v(m1)?.pointwise_min(&smets_v(m2)?)?;
    mass_from_v(&w)
}

/// Hyper-cautious rule for two sources.
pub fn hyper_cautious(m1: &MassFunction, m2: &MassFunction, op: FusionOperator) -> Result<MassFunction> {
    hyper_cautious_k(&[m1.clone(), m2.clone()], op)
}

/// Hyper-cautious rule for `k ≥ 2` sources in a single pass: singleton
/// possibilities are folded with `op`, multi-element ratios averaged, and the
/// empty set takes `1 - max` of the fused possibilities.
pub fn hyper_cautious_k(ms: &[MassFunction], op: FusionOperator) -> Result<MassFunction> {
    if ms.len() < 2 {
        return Err(BeliefError::TooFewSources(ms.len()));
    }
    let frame = ms[0].frame();
    for m in &ms[1..] {
        frame.check_compatible(m.frame())?;
    }
    let parts: Vec<IsoDecomposition> = ms
        .iter()
        .map(|m| decompose(m, CommitmentForm::Tau))
        .collect::<Result<_>>()?;

    let poss: Vec<f64> = (0..frame.n())
        .map(|i| {
            parts[1..].iter().fold(parts[0].propensity.values()[i], |acc, d| {
                op.apply(acc, d.propensity.values()[i])
            })
        })
        .collect();
    let k = parts.len() as f64;
    let ratios: Vec<f64> = (0..frame.size())
        .map(|f| parts.iter().map(|d| d.commitment.values()[f]).sum::<f64>() / k)
        .collect();

    let propensity = PossibilityDistribution::new(frame.clone(), poss)?;
    let empty_mass = 1.0 - propensity.max();
    let fused = IsoDecomposition {
        commitment: IsoCommitment::new(frame, CommitmentForm::Tau, ratios)?,
        propensity,
        empty_mass,
    };
    reconstruct_tau(&fused)
}

/// Every named rule of the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Conjunctive,
    Disjunctive,
    Cautious,
    Bold,
    Hyper(FusionOperator),
}

impl Rule {
    pub const ALL: [Rule; 8] = [
        Rule::Conjunctive,
        Rule::Hyper(FusionOperator::TProd),
        Rule::Disjunctive,
        Rule::Hyper(FusionOperator::SProbSum),
        Rule::Cautious,
        Rule::Hyper(FusionOperator::TMin),
        Rule::Bold,
        Rule::Hyper(FusionOperator::SMax),
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Conjunctive => "ccr",
            Rule::Disjunctive => "dcr",
            Rule::Cautious => "cautious",
            Rule::Bold => "bold",
            Rule::Hyper(FusionOperator::TMin) => "hmin",
            Rule::Hyper(FusionOperator::TProd) => "hprod",
            Rule::Hyper(FusionOperator::SMax) => "hmax",
            Rule::Hyper(FusionOperator::SProbSum) => "hprobsum",
        }
    }

    pub fn from_name(s: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == s)
    }

    /// Combines all sources. Hyper-cautious rules fuse in one k-ary pass;
    /// the associative rules fold left.
    pub fn combine(self, ms: &[MassFunction]) -> Result<MassFunction> {
        if ms.len() < 2 {
            return Err(BeliefError::TooFewSources(ms.len()));
        }
        if let Rule::Hyper(op) = self {
            return hyper_cautious_k(ms, op);
        }
        let step = match self {
            Rule::Conjunctive => conjunctive,
            Rule::Disjunctive => disjunctive,
            Rule::Cautious => cautious,
            Rule::Bold => bold,
            Rule::Hyper(_) => unreachable!(),
        };
        let mut acc = step(&ms[0], &ms[1])?;
        for m in &ms[2..] {
            acc = step(&acc, m)?;
        }
        Ok(acc)
    }
}
