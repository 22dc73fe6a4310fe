//! Isopignistic transformation and the isopignistic canonical decomposition.
//!
//! Every mass function is split into a *propensity* (a possibility
//! distribution over the singletons, derived from the pignistic probabilities)
//! and a *commitment* describing how mass moves along the subset lattice from
//! the consonant mass function of that possibility distribution to the target.
//! The commitment is kept either as transferred amounts (`zeta`, positive means
//! downward toward smaller subsets) or as ratios (`tau`, in `[-1, 1]`).
//!
//! Only subsets with at least two elements carry commitment values. The empty
//! set never exchanges mass, and singletons only receive it.

use crate::error::{BeliefError, Result};
use crate::lattice::{child_indices, subsets_by_cardinality, Frame, Subset};
use crate::mass::{MassFunction, CLAMP};
use crate::transforms::betp_raw;

/// Pignistic agreement required by [`isotransform`].
pub const ISO_TOLERANCE: f64 = 1e-6;
/// Agreement needed when replaying published four-decimal vectors.
pub const FIXTURE_TOLERANCE: f64 = 1e-3;
/// Slack allowed on intermediate masses and on ratio bounds.
const FLOW_SLACK: f64 = 1e-9;
/// Transfers smaller than this are rounding noise.
const SNAP: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct PossibilityDistribution {
    frame: Frame,
    poss: Vec<f64>,
}

impl PossibilityDistribution {
    /// Values must lie in `[0, 1]`; rounding noise just outside is clamped.
    pub fn new(frame: Frame, poss: Vec<f64>) -> Result<Self> {
        if poss.len() != frame.n() {
            return Err(BeliefError::Domain(format!(
                "possibility vector has {} entries for a {}-element frame",
                poss.len(),
                frame.n()
            )));
        }
        let mut poss = poss;
        for (i, p) in poss.iter_mut().enumerate() {
            if !p.is_finite() || *p < -CLAMP || *p > 1.0 + FLOW_SLACK {
                return Err(BeliefError::Domain(format!(
                    "possibility of element {} is {p}, outside [0, 1]",
                    i + 1
                )));
            }
            *p = p.clamp(0.0, 1.0);
        }
        Ok(Self { frame, poss })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn values(&self) -> &[f64] {
        &self.poss
    }

    pub fn max(&self) -> f64 {
        self.poss.iter().copied().fold(0.0, f64::max)
    }

    /// Normal when some element is fully possible.
    pub fn is_normal(&self) -> bool {
        (self.max() - 1.0).abs() <= FLOW_SLACK
    }

    /// Element indices by decreasing possibility; ties keep ascending index.
    pub fn order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.poss.len()).collect();
        order.sort_by(|&a, &b| self.poss[b].total_cmp(&self.poss[a]).then(a.cmp(&b)));
        order
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommitmentForm {
    Zeta,
    Tau,
}

impl CommitmentForm {
    pub fn name(self) -> &'static str {
        match self {
            CommitmentForm::Zeta => "zeta",
            CommitmentForm::Tau => "tau",
        }
    }
}

/// Commitment values for every subset with at least two elements, stored
/// densely by subset index (other entries are zero).
#[derive(Debug, Clone, PartialEq)]
pub struct IsoCommitment {
    form: CommitmentForm,
    values: Vec<f64>,
}

impl IsoCommitment {
    pub fn zeros(frame: &Frame, form: CommitmentForm) -> Self {
        Self {
            form,
            values: vec![0.0; frame.size()],
        }
    }

    /// Builds a commitment from a dense vector. Entries below two elements
    /// are ignored; ratios must lie in `[-1, 1]`.
    pub fn new(frame: &Frame, form: CommitmentForm, mut values: Vec<f64>) -> Result<Self> {
        if values.len() != frame.size() {
            return Err(BeliefError::LengthNotPowerOfTwo(values.len()));
        }
        for (i, v) in values.iter_mut().enumerate() {
            if i.count_ones() < 2 {
                *v = 0.0;
                continue;
            }
            if !v.is_finite() {
                return Err(BeliefError::NonFinite { index: i });
            }
            if form == CommitmentForm::Tau && !(-1.0..=1.0).contains(v) {
                return Err(BeliefError::RatioOutOfRange {
                    subset: i as u32,
                    value: *v,
                });
            }
        }
        Ok(Self { form, values })
    }

    pub fn form(&self) -> CommitmentForm {
        self.form
    }

    pub fn get(&self, s: Subset) -> f64 {
        self.values[s.index()]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `(subset, value)` for every multi-element subset, ascending.
    pub fn entries(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(i, _)| i.count_ones() >= 2)
            .map(|(i, &v)| (Subset(i as u32), v))
    }

    pub fn negated(&self) -> Self {
        Self {
            form: self.form,
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsoDecomposition {
    pub propensity: PossibilityDistribution,
    pub commitment: IsoCommitment,
    pub empty_mass: f64,
}

impl IsoDecomposition {
    pub fn frame(&self) -> &Frame {
        self.propensity.frame()
    }

    pub fn form(&self) -> CommitmentForm {
        self.commitment.form
    }

    /// The full isopignistic function as a dense vector: `m(∅)` at index 0,
    /// possibilities on singletons, commitment values elsewhere.
    pub fn to_vector(&self) -> Vec<f64> {
        let mut v = self.commitment.values.clone();
        v[0] = self.empty_mass;
        for (i, p) in self.propensity.values().iter().enumerate() {
            v[1 << i] = *p;
        }
        v
    }

    /// Inverse of [`IsoDecomposition::to_vector`].
    pub fn from_vector(frame: Frame, form: CommitmentForm, v: &[f64]) -> Result<Self> {
        if v.len() != frame.size() {
            return Err(BeliefError::LengthNotPowerOfTwo(v.len()));
        }
        let poss = (0..frame.n()).map(|i| v[1 << i]).collect();
        let commitment = IsoCommitment::new(&frame, form, v.to_vec())?;
        Ok(Self {
            propensity: PossibilityDistribution::new(frame, poss)?,
            commitment,
            empty_mass: v[0],
        })
    }
}

/// Both forms of an isopignistic transformation between two mass functions.
#[derive(Debug, Clone, PartialEq)]
pub struct Isotransformation {
    pub zeta: IsoCommitment,
    pub tau: IsoCommitment,
}

/// `Poss(ω_j) = Σ_i min(BetP(ω_i), BetP(ω_j))` on the unnormalized BetP.
pub fn propensity(m: &MassFunction) -> PossibilityDistribution {
    let p = betp_raw(m);
    let poss = p
        .iter()
        .map(|&pj| p.iter().map(|&pi| pi.min(pj)).sum::<f64>())
        .collect();
    PossibilityDistribution::new(m.frame().clone(), poss).expect("sums of minima stay in [0, 1]")
}

/// The consonant mass function of a possibility distribution: nested sets
/// of the most possible elements, each weighted by the drop to the next level,
/// and `1 - max` on the empty set.
pub fn consonant_from_possibility(poss: &PossibilityDistribution) -> MassFunction {
    let order = poss.order();
    let values = poss.values();
    let mut masses = vec![0.0; poss.frame().size()];
    let mut set = 0usize;
    for (t, &elem) in order.iter().enumerate() {
        set |= 1 << elem;
        let next = order.get(t + 1).map_or(0.0, |&e| values[e]);
        masses[set] = values[elem] - next;
    }
    masses[0] = 1.0 - poss.max();
    MassFunction::on_frame(poss.frame().clone(), masses).expect("telescoping masses sum to one")
}

fn max_betp_diff(m1: &MassFunction, m2: &MassFunction) -> Result<f64> {
    m1.frame().check_compatible(m2.frame())?;
    Ok(betp_raw(m1)
        .iter()
        .zip(betp_raw(m2))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Whether both mass functions share their (unnormalized) pignistic vector.
pub fn same_pignistic(m1: &MassFunction, m2: &MassFunction, tol: f64) -> Result<bool> {
    Ok(max_betp_diff(m1, m2)? <= tol)
}

/// Isopignistic transformation from `source` to `target`.
pub fn isotransform(source: &MassFunction, target: &MassFunction) -> Result<Isotransformation> {
    isotransform_with_tolerance(source, target, ISO_TOLERANCE)
}

/// As [`isotransform`], with an explicit pignistic agreement tolerance.
///
/// `zeta(F)` is the net mass `F` must pass to its children so that, with the
/// inflow from all its parents, it ends at `target(F)`. Downward transfers
/// are replayed first, largest subsets first; upward transfers follow from
/// the two-element layer up, each ratio measured against the smallest child
/// mass at the moment it runs.
pub fn isotransform_with_tolerance(
    source: &MassFunction,
    target: &MassFunction,
    tol: f64,
) -> Result<Isotransformation> {
    let max_diff = max_betp_diff(source, target)?;
    if max_diff > tol {
        return Err(BeliefError::NotIsopignistic { max_diff });
    }
    let frame = source.frame();
    let n = frame.n();
    let goal = target.masses();
    let mut flow = source.masses().to_vec();
    let mut cur = flow.clone();
    let mut zeta = vec![0.0; frame.size()];
    let mut tau = vec![0.0; frame.size()];

    for card in (2..=n).rev() {
        let share = card as f64;
        for s in subsets_by_cardinality(frame, card)? {
            let f = s.index();
            let mut z = flow[f] - goal[f];
            if z.abs() <= SNAP {
                z = 0.0;
            }
            zeta[f] = z;
            if z == 0.0 {
                continue;
            }
            for c in child_indices(f) {
                flow[c] += z / share;
            }
            if z > 0.0 {
                tau[f] = (z / cur[f]).min(1.0);
                cur[f] -= z;
                for c in child_indices(f) {
                    cur[c] += z / share;
                }
            }
        }
    }

    for card in 2..=n {
        let share = card as f64;
        for s in subsets_by_cardinality(frame, card)? {
            let f = s.index();
            let z = zeta[f];
            if z >= 0.0 {
                continue;
            }
            let d = child_indices(f).map(|c| cur[c]).fold(f64::INFINITY, f64::min);
            if d <= 0.0 {
                return Err(BeliefError::UnreachableTarget { subset: s.bits() });
            }
            let ratio = z / (share * d);
            if ratio < -1.0 - FLOW_SLACK {
                return Err(BeliefError::UnreachableTarget { subset: s.bits() });
            }
            tau[f] = ratio.max(-1.0);
            cur[f] -= z;
            for c in child_indices(f) {
                cur[c] += z / share;
                if cur[c] < -FLOW_SLACK {
                    return Err(BeliefError::UnreachableTarget { subset: s.bits() });
                }
            }
        }
    }

    let residual = cur.iter().zip(goal).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if residual > FLOW_SLACK + n as f64 * tol {
        return Err(BeliefError::UnreachableTarget {
            subset: frame.omega().bits(),
        });
    }

    Ok(Isotransformation {
        zeta: IsoCommitment {
            form: CommitmentForm::Zeta,
            values: zeta,
        },
        tau: IsoCommitment {
            form: CommitmentForm::Tau,
            values: tau,
        },
    })
}

/// Isopignistic canonical decomposition of `m`.
pub fn decompose(m: &MassFunction, form: CommitmentForm) -> Result<IsoDecomposition> {
    let poss = propensity(m);
    let consonant = consonant_from_possibility(&poss);
    let t = isotransform(&consonant, m)?;
    Ok(IsoDecomposition {
        propensity: poss,
        commitment: match form {
            CommitmentForm::Zeta => t.zeta,
            CommitmentForm::Tau => t.tau,
        },
        empty_mass: m.empty_mass(),
    })
}

/// Moves mass by the amounts in `zeta`, largest subsets first.
pub fn transfer_zeta(m: &MassFunction, zeta: &IsoCommitment) -> Result<MassFunction> {
    expect_form(zeta, CommitmentForm::Zeta)?;
    check_len(m.frame(), zeta)?;
    let mut cur = m.masses().to_vec();
    flow_zeta(m.frame(), &mut cur, &zeta.values)?;
    MassFunction::on_frame(m.frame().clone(), cur).map_err(|e| BeliefError::InconsistentIsoFunction(e.to_string()))
}

fn flow_zeta(frame: &Frame, cur: &mut [f64], zeta: &[f64]) -> Result<()> {
    for card in (2..=frame.n()).rev() {
        let share = card as f64;
        for s in subsets_by_cardinality(frame, card)? {
            let f = s.index();
            let z = zeta[f];
            if z == 0.0 {
                continue;
            }
            cur[f] -= z;
            for c in child_indices(f) {
                cur[c] += z / share;
            }
        }
    }
    Ok(())
}

/// Applies transfer ratios to `m`: positive ratios send that fraction of a
/// subset's mass evenly to its children (largest subsets first), then
/// negative ratios pull `|tau|` times the smallest child mass from every child
/// (smallest subsets first). Any ratios in `[-1, 1]` keep `m` a valid mass
/// function.
pub fn transfer_tau(m: &MassFunction, tau: &IsoCommitment) -> Result<MassFunction> {
    expect_form(tau, CommitmentForm::Tau)?;
    check_len(m.frame(), tau)?;
    let mut cur = m.masses().to_vec();
    flow_tau(m.frame(), &mut cur, &tau.values)?;
    MassFunction::on_frame(m.frame().clone(), cur).map_err(|e| BeliefError::InconsistentIsoFunction(e.to_string()))
}

fn flow_tau(frame: &Frame, cur: &mut [f64], tau: &[f64]) -> Result<()> {
    let n = frame.n();
    for card in (2..=n).rev() {
        let share = card as f64;
        for s in subsets_by_cardinality(frame, card)? {
            let f = s.index();
            let t = tau[f];
            if t > 0.0 {
                let sent = t * cur[f];
                cur[f] -= sent;
                for c in child_indices(f) {
                    cur[c] += sent / share;
                }
            }
        }
    }
    for card in 2..=n {
        let share = card as f64;
        for s in subsets_by_cardinality(frame, card)? {
            let f = s.index();
            let t = tau[f];
            if t < 0.0 {
                let d = child_indices(f).map(|c| cur[c]).fold(f64::INFINITY, f64::min);
                cur[f] -= d * t * share;
                for c in child_indices(f) {
                    cur[c] += d * t;
                }
            }
        }
    }
    Ok(())
}

fn expect_form(c: &IsoCommitment, form: CommitmentForm) -> Result<()> {
    if c.form == form {
        Ok(())
    } else {
        Err(BeliefError::WrongKind {
            expected: form.name(),
            found: c.form.name(),
        })
    }
}

fn check_len(frame: &Frame, c: &IsoCommitment) -> Result<()> {
    if c.values.len() == frame.size() {
        Ok(())
    } else {
        Err(BeliefError::LengthNotPowerOfTwo(c.values.len()))
    }
}

/// Rebuilds a mass function from its isopignistic function (amounts form).
pub fn reconstruct_zeta(d: &IsoDecomposition) -> Result<MassFunction> {
    expect_form(&d.commitment, CommitmentForm::Zeta)?;
    let frame = d.frame();
    check_len(frame, &d.commitment)?;
    let mut cur = consonant_from_possibility(&d.propensity).into_masses();
    cur[0] = d.empty_mass;
    flow_zeta(frame, &mut cur, &d.commitment.values)?;
    MassFunction::on_frame(frame.clone(), cur).map_err(|e| BeliefError::InconsistentIsoFunction(e.to_string()))
}

/// Rebuilds a mass function from its isopignistic ratio.
///
/// The empty-set entry must equal `1 - max(propensity)`; ratios must lie in
/// `[-1, 1]`. Under those conditions the output is always a mass function.
pub fn reconstruct_tau(d: &IsoDecomposition) -> Result<MassFunction> {
    expect_form(&d.commitment, CommitmentForm::Tau)?;
    let frame = d.frame();
    check_len(frame, &d.commitment)?;
    for (s, v) in d.commitment.entries() {
        if !(-1.0..=1.0).contains(&v) {
            return Err(BeliefError::RatioOutOfRange {
                subset: s.bits(),
                value: v,
            });
        }
    }
    let expected = 1.0 - d.propensity.max();
    if (d.empty_mass - expected).abs() > ISO_TOLERANCE {
        return Err(BeliefError::EmptyMassMismatch {
            expected,
            found: d.empty_mass,
        });
    }
    let base = consonant_from_possibility(&d.propensity);
    transfer_tau(&base, &d.commitment)
}

/// Raw masses produced by applying the ratios of `d` to its consonant base,
/// with no range checks on the ratios or on the result.
pub fn masses_from_tau(d: &IsoDecomposition) -> Result<Vec<f64>> {
    expect_form(&d.commitment, CommitmentForm::Tau)?;
    let frame = d.frame();
    check_len(frame, &d.commitment)?;
    let mut cur = consonant_from_possibility(&d.propensity).into_masses();
    flow_tau(frame, &mut cur, &d.commitment.values)?;
    Ok(cur)
}

/// Dispatches on the commitment form.
pub fn reconstruct(d: &IsoDecomposition) -> Result<MassFunction> {
    match d.form() {
        CommitmentForm::Zeta => reconstruct_zeta(d),
        CommitmentForm::Tau => reconstruct_tau(d),
    }
}

/// Least and most committed mass functions of the isopignistic domain whose
/// propensity is `poss`: the consonant mass function (all commitments zero)
/// and the Bayesian one (all ratios one).
pub fn bounds(poss: &PossibilityDistribution) -> (MassFunction, MassFunction) {
    let lower = consonant_from_possibility(poss);
    let mut all = vec![1.0; poss.frame().size()];
    all.iter_mut()
        .enumerate()
        .filter(|(i, _)| i.count_ones() < 2)
        .for_each(|(_, v)| *v = 0.0);
    let ones = IsoCommitment {
        form: CommitmentForm::Tau,
        values: all,
    };
    let upper = transfer_tau(&lower, &ones).expect("unit ratios keep a valid mass function");
    (lower, upper)
}

/// Maps a ratio-form decomposition to the canonical ratio of the mass
/// function it reconstructs. Distinct ratios may rebuild the same mass
/// function; the canonical one is what decomposition returns.
pub fn canonicalize_pc(d: &IsoDecomposition) -> Result<IsoDecomposition> {
    decompose(&reconstruct_tau(d)?, CommitmentForm::Tau)
}
