//! Classical canonical decompositions: Smets' diffidence weights (and their
//! disjunctive dual) and Pichon's t-function.

use crate::error::{BeliefError, Result};
use crate::lattice::{Frame, Subset};
use crate::mass::{MassFunction, CLAMP};
use crate::transforms::{contour, set_transform, subset_mobius, subset_zeta, superset_mobius, superset_zeta, SetKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    /// Conjunctive weights, defined on every `F ⊊ Ω`.
    Sigma,
    /// Disjunctive weights, defined on every `F ≠ ∅`.
    V,
}

impl WeightKind {
    pub fn name(self) -> &'static str {
        match self {
            WeightKind::Sigma => "sigma",
            WeightKind::V => "v",
        }
    }

    /// The one subset outside the weight domain.
    fn excluded(self, frame: &Frame) -> usize {
        match self {
            WeightKind::Sigma => frame.omega().index(),
            WeightKind::V => 0,
        }
    }
}

/// Dense weights by subset index; the excluded entry (`Ω` for sigma, `∅`
/// for v) is stored as 1.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction {
    frame: Frame,
    kind: WeightKind,
    values: Vec<f64>,
}

impl WeightFunction {
    pub fn new(frame: Frame, kind: WeightKind, mut values: Vec<f64>) -> Result<Self> {
        if values.len() != frame.size() {
            return Err(BeliefError::LengthNotPowerOfTwo(values.len()));
        }
        let skip = kind.excluded(&frame);
        values[skip] = 1.0;
        for (i, &w) in values.iter().enumerate() {
            if !(w.is_finite() && w > 0.0) {
                return Err(BeliefError::InvalidWeights(format!(
                    "weight {w} at {} is not a positive finite number",
                    Subset(i as u32)
                )));
            }
        }
        Ok(Self { frame, kind, values })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn get(&self, s: Subset) -> f64 {
        self.values[s.index()]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `(subset, weight)` over the weight domain, ascending.
    pub fn entries(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        let skip = self.kind.excluded(&self.frame);
        self.values
            .iter()
            .enumerate()
            .filter(move |(i, _)| *i != skip)
            .map(|(i, &w)| (Subset(i as u32), w))
    }

    pub fn set(&mut self, s: Subset, w: f64) -> Result<()> {
        if s.index() == self.kind.excluded(&self.frame) {
            return Err(BeliefError::Domain(format!(
                "{s} is outside the {} weight domain",
                self.kind.name()
            )));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(BeliefError::InvalidWeights(format!(
                "weight {w} is not a positive finite number"
            )));
        }
        self.values[s.index()] = w;
        Ok(())
    }

    pub fn pointwise_min(&self, other: &WeightFunction) -> Result<WeightFunction> {
        self.frame.check_compatible(&other.frame)?;
        if self.kind != other.kind {
            return Err(BeliefError::WrongKind {
                expected: self.kind.name(),
                found: other.kind.name(),
            });
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.min(*b)).collect();
        Ok(WeightFunction {
            frame: self.frame.clone(),
            kind: self.kind,
            values,
        })
    }
}

fn logs(values: &[f64]) -> Vec<f64> {
    values.iter().map(|v| v.ln()).collect()
}

/// Smets' diffidence weights, `σ(F) = Π_{F ⊆ G} q(G)^{(-1)^{|G|-|F|-1}}`,
/// evaluated in the log domain.
pub fn smets_sigma(m: &MassFunction) -> Result<WeightFunction> {
    if m.get(m.frame().omega()) <= CLAMP {
        return Err(BeliefError::DecompositionUndefined(
            "diffidence weights need a non-dogmatic mass function",
        ));
    }
    let q = set_transform(m, SetKind::Q);
    // Superset Möbius of ln q gives Σ (-1)^{|G|-|F|} ln q(G); negate.
    let mut lw = logs(q.values());
    superset_mobius(&mut lw);
    let values = lw.iter().map(|l| (-l).exp()).collect();
    WeightFunction::new(m.frame().clone(), WeightKind::Sigma, values)
}

/// Disjunctive weights, `v(F) = Π_{G ⊆ F} b(G)^{(-1)^{|F|-|G|-1}}`.
pub fn smets_v(m: &MassFunction) -> Result<WeightFunction> {
    if m.empty_mass() <= CLAMP {
        return Err(BeliefError::DecompositionUndefined(
            "disjunctive weights need a subnormal mass function (m(∅) > 0)",
        ));
    }
    let b = set_transform(m, SetKind::B);
    let mut lw = logs(b.values());
    subset_mobius(&mut lw);
    let values = lw.iter().map(|l| (-l).exp()).collect();
    WeightFunction::new(m.frame().clone(), WeightKind::V, values)
}

fn weights_to_mass(frame: &Frame, v: Vec<f64>) -> Result<MassFunction> {
    MassFunction::on_frame(frame.clone(), v).map_err(|e| BeliefError::InvalidWeights(e.to_string()))
}

/// Raw (unvalidated) masses from conjunctive weights: the conjunctive
/// combination of the simple mass functions `A^{σ(A)}`, whose commonality is
/// `q(C) = Π_{A ⊉ C} σ(A)`.
pub fn masses_from_sigma(w: &WeightFunction) -> Result<Vec<f64>> {
    if w.kind != WeightKind::Sigma {
        return Err(BeliefError::WrongKind {
            expected: "sigma",
            found: w.kind.name(),
        });
    }
    // ln q(C) = Σ_A ln σ(A) - Σ_{A ⊇ C} ln σ(A).
    let mut lw = logs(&w.values);
    let total: f64 = lw.iter().sum();
    superset_zeta(&mut lw);
    let mut q: Vec<f64> = lw.iter().map(|s| (total - s).exp()).collect();
    superset_mobius(&mut q);
    Ok(q)
}

pub fn mass_from_sigma(w: &WeightFunction) -> Result<MassFunction> {
    let raw = masses_from_sigma(w)?;
    weights_to_mass(&w.frame, raw)
}

/// Raw masses from disjunctive weights: the disjunctive combination of the
/// simple mass functions with `m(A) = 1 - v(A)` and `m(∅) = v(A)`, whose
/// implicability is `b(C) = Π_{A ⊈ C} v(A)`.
pub fn masses_from_v(w: &WeightFunction) -> Result<Vec<f64>> {
    if w.kind != WeightKind::V {
        return Err(BeliefError::WrongKind {
            expected: "v",
            found: w.kind.name(),
        });
    }
    let mut lw = logs(&w.values);
    let total: f64 = lw.iter().sum();
    subset_zeta(&mut lw);
    let mut b: Vec<f64> = lw.iter().map(|s| (total - s).exp()).collect();
    subset_mobius(&mut b);
    Ok(b)
}

pub fn mass_from_v(w: &WeightFunction) -> Result<MassFunction> {
    let raw = masses_from_v(w)?;
    weights_to_mass(&w.frame, raw)
}

/// Pichon's t-function: `t(∅) = 1`, singleton plausibilities on singletons,
/// and central cross-moments of the element indicators of the random focal
/// set elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct TFunction {
    frame: Frame,
    values: Vec<f64>,
}

impl TFunction {
    pub fn new(frame: Frame, values: Vec<f64>) -> Result<Self> {
        if values.len() != frame.size() {
            return Err(BeliefError::LengthNotPowerOfTwo(values.len()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(BeliefError::NonFinite { index: i });
        }
        Ok(Self { frame, values })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, s: Subset) -> f64 {
        self.values[s.index()]
    }

    pub fn set(&mut self, s: Subset, v: f64) {
        self.values[s.index()] = v;
    }
}

/// Kronecker product `⊗_{i=n..1} [[1, 1], [-p_i, 1 - p_i]]` applied in place,
/// one butterfly per element.
fn central_moment_transform(v: &mut [f64], pl: &[f64]) {
    for (i, &p) in pl.iter().enumerate() {
        let bit = 1 << i;
        for lo in 0..v.len() {
            if lo & bit != 0 {
                continue;
            }
            let (z, o) = (v[lo], v[lo | bit]);
            v[lo] = z + o;
            v[lo | bit] = -p * z + (1.0 - p) * o;
        }
    }
}

fn inverse_central_moment_transform(v: &mut [f64], pl: &[f64]) {
    for (i, &p) in pl.iter().enumerate() {
        let bit = 1 << i;
        for lo in 0..v.len() {
            if lo & bit != 0 {
                continue;
            }
            let (z, o) = (v[lo], v[lo | bit]);
            v[lo] = (1.0 - p) * z - o;
            v[lo | bit] = p * z + o;
        }
    }
}

pub fn pichon_t(m: &MassFunction) -> TFunction {
    let pl = contour(m);
    let mut v = m.masses().to_vec();
    central_moment_transform(&mut v, &pl);
    for (i, p) in pl.iter().enumerate() {
        v[1 << i] = *p;
    }
    TFunction {
        frame: m.frame().clone(),
        values: v,
    }
}

/// Raw masses encoded by a t-function; may fall outside `[0, 1]` when the
/// t-values did not come from a mass function.
pub fn masses_from_t(t: &TFunction) -> Vec<f64> {
    let n = t.frame.n();
    let pl: Vec<f64> = (0..n).map(|i| t.values[1 << i]).collect();
    let mut v = t.values.clone();
    for i in 0..n {
        v[1 << i] = 0.0;
    }
    inverse_central_moment_transform(&mut v, &pl);
    v
}

pub fn mass_from_t(t: &TFunction) -> Result<MassFunction> {
    MassFunction::on_frame(t.frame.clone(), masses_from_t(t)).map_err(|e| BeliefError::NotBeliefFunction(e.to_string()))
}
