//! Set-function transforms of a mass function and the pignistic transformation.
//!
//! Belief, plausibility, implicability and commonality are computed with the
//! fast zeta transform over the subset lattice, `O(n 2^n)`; their inverses use
//! the matching Möbius transforms.

use serde::Serialize;

use crate::error::{BeliefError, Result};
use crate::lattice::{Frame, Subset};
use crate::mass::{MassFunction, SUM_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Bel,
    Pl,
    /// Implicability, `b(F) = Σ_{G ⊆ F} m(G)`.
    B,
    /// Commonality, `q(F) = Σ_{F ⊆ G} m(G)`.
    Q,
}

impl SetKind {
    pub fn name(self) -> &'static str {
        match self {
            SetKind::Bel => "bel",
            SetKind::Pl => "pl",
            SetKind::B => "b",
            SetKind::Q => "q",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SetFunction {
    frame: Frame,
    kind: SetKind,
    values: Vec<f64>,
}

impl SetFunction {
    pub fn new(frame: Frame, kind: SetKind, values: Vec<f64>) -> Result<Self> {
        if values.len() != frame.size() {
            return Err(BeliefError::LengthNotPowerOfTwo(values.len()));
        }
        Ok(Self { frame, kind, values })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, s: Subset) -> f64 {
        self.values[s.index()]
    }
}

/// In place: `v[F] <- Σ_{G ⊆ F} v[G]`.
pub(crate) fn subset_zeta(v: &mut [f64]) {
    let len = v.len();
    let mut bit = 1;
    while bit < len {
        for i in 0..len {
            if i & bit != 0 {
                v[i] += v[i ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// Inverse of [`subset_zeta`].
pub(crate) fn subset_mobius(v: &mut [f64]) {
    let len = v.len();
    let mut bit = 1;
    while bit < len {
        for i in 0..len {
            if i & bit != 0 {
                v[i] -= v[i ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// In place: `v[F] <- Σ_{F ⊆ G} v[G]`.
pub(crate) fn superset_zeta(v: &mut [f64]) {
    let len = v.len();
    let mut bit = 1;
    while bit < len {
        for i in 0..len {
            if i & bit == 0 {
                v[i] += v[i | bit];
            }
        }
        bit <<= 1;
    }
}

/// Inverse of [`superset_zeta`].
pub(crate) fn superset_mobius(v: &mut [f64]) {
    let len = v.len();
    let mut bit = 1;
    while bit < len {
        for i in 0..len {
            if i & bit == 0 {
                v[i] -= v[i | bit];
            }
        }
        bit <<= 1;
    }
}

pub fn set_transform(m: &MassFunction, kind: SetKind) -> SetFunction {
    let mut v = m.masses().to_vec();
    match kind {
        SetKind::Q => superset_zeta(&mut v),
        SetKind::B => subset_zeta(&mut v),
        SetKind::Bel => {
            v[0] = 0.0;
            subset_zeta(&mut v);
        }
        SetKind::Pl => {
            let mut b = v.clone();
            subset_zeta(&mut b);
            let total = m.total();
            let omega = v.len() - 1;
            for (f, out) in v.iter_mut().enumerate() {
                *out = total - b[omega ^ f];
            }
            v[0] = 0.0;
        }
    }
    SetFunction {
        frame: m.frame().clone(),
        kind,
        values: v,
    }
}

/// Plausibility of each singleton (the contour function).
pub fn contour(m: &MassFunction) -> Vec<f64> {
    let n = m.n();
    let mut pl = vec![0.0; n];
    for (f, &v) in m.masses().iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        for (i, p) in pl.iter_mut().enumerate() {
            if f >> i & 1 == 1 {
                *p += v;
            }
        }
    }
    pl
}

fn into_belief_function(frame: Frame, v: Vec<f64>) -> Result<MassFunction> {
    MassFunction::on_frame(frame, v).map_err(|e| BeliefError::NotBeliefFunction(e.to_string()))
}

pub fn mass_from_q(q: &SetFunction) -> Result<MassFunction> {
    if q.kind != SetKind::Q {
        return Err(BeliefError::WrongKind {
            expected: "q",
            found: q.kind.name(),
        });
    }
    let mut v = q.values.clone();
    superset_mobius(&mut v);
    into_belief_function(q.frame.clone(), v)
}

pub fn mass_from_b(b: &SetFunction) -> Result<MassFunction> {
    if b.kind != SetKind::B {
        return Err(BeliefError::WrongKind {
            expected: "b",
            found: b.kind.name(),
        });
    }
    let mut v = b.values.clone();
    subset_mobius(&mut v);
    into_belief_function(b.frame.clone(), v)
}

/// Pignistic probabilities over the singletons.
#[derive(Debug, Clone, PartialEq)]
pub struct PignisticDistribution {
    frame: Frame,
    probs: Vec<f64>,
    normalized: bool,
}

impl PignisticDistribution {
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Whether division by `1 - m(∅)` was applied.
    pub fn normalized(&self) -> bool {
        self.normalized
    }

    /// True when the entries form a probability distribution.
    pub fn is_probability(&self) -> bool {
        self.normalized || (self.probs.iter().sum::<f64>() - 1.0).abs() <= SUM_TOLERANCE
    }

    /// Element indices sorted by decreasing probability, ties by index.
    pub fn decision_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.probs.len()).collect();
        order.sort_by(|&a, &b| self.probs[b].total_cmp(&self.probs[a]).then(a.cmp(&b)));
        order
    }
}

/// Pignistic transformation. `m(∅)` is excluded from the sum; with
/// `normalize` each entry is further divided by `1 - m(∅)`.
pub fn betp(m: &MassFunction, normalize: bool) -> Result<PignisticDistribution> {
    let mut probs = betp_raw(m);
    if normalize {
        let keep = 1.0 - m.empty_mass();
        if keep <= 0.0 {
            return Err(BeliefError::Degenerate(
                "normalized pignistic transform of a total-conflict mass function",
            ));
        }
        probs.iter_mut().for_each(|p| *p /= keep);
    }
    Ok(PignisticDistribution {
        frame: m.frame().clone(),
        probs,
        normalized: normalize,
    })
}

pub(crate) fn betp_raw(m: &MassFunction) -> Vec<f64> {
    let n = m.n();
    let mut probs = vec![0.0; n];
    for (f, &v) in m.masses().iter().enumerate().skip(1) {
        if v == 0.0 {
            continue;
        }
        let share = v / f.count_ones() as f64;
        for (i, p) in probs.iter_mut().enumerate() {
            if f >> i & 1 == 1 {
                *p += share;
            }
        }
    }
    probs
}

/// Shannon entropy in bits, with `0 log 0 = 0`.
pub fn shannon_entropy(p: &PignisticDistribution) -> Result<f64> {
    if !p.is_probability() {
        return Err(BeliefError::Domain("entropy requires a normalized distribution".into()));
    }
    Ok(-p.probs.iter().filter(|&&x| x > 0.0).map(|&x| x * x.log2()).sum::<f64>())
}
