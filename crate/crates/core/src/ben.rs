//! Belief evolution networks: mass flows down the cardinality-layered subset
//! lattice, each node sending a fraction `tau` of its mass and splitting it
//! among its children by edge ratios `xi`.

use crate::error::{BeliefError, Result};
use crate::lattice::{child_indices, subsets_by_cardinality, Frame, Subset};
use crate::mass::MassFunction;

const XI_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct BeliefEvolutionNetwork {
    frame: Frame,
    /// Dense by subset index; entries with fewer than two elements stay 0.
    tau: Vec<f64>,
    /// Dense by `parent * n + removed element`.
    xi: Vec<f64>,
}

impl BeliefEvolutionNetwork {
    /// No transfers anywhere, uniform splits on every edge.
    pub fn new(frame: Frame) -> Self {
        let n = frame.n();
        let size = frame.size();
        let mut xi = vec![0.0; size * n];
        for parent in 0..size {
            let card = parent.count_ones();
            if card < 2 {
                continue;
            }
            for e in 0..n {
                if parent >> e & 1 == 1 {
                    xi[parent * n + e] = 1.0 / card as f64;
                }
            }
        }
        Self {
            frame,
            tau: vec![0.0; size],
            xi,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn tau(&self, s: Subset) -> f64 {
        self.tau[s.index()]
    }

    pub fn set_tau(&mut self, s: Subset, value: f64) -> Result<()> {
        if s.len() < 2 {
            return Err(BeliefError::InvalidNetwork(format!(
                "tau is only defined on subsets with at least two elements, got {s}"
            )));
        }
        self.tau[s.index()] = value;
        Ok(())
    }

    fn edge(&self, parent: Subset, child: Subset) -> Result<usize> {
        let diff = parent.bits() ^ child.bits();
        if parent.len() < 2 || !child.is_subset_of(parent) || diff.count_ones() != 1 {
            return Err(BeliefError::InvalidNetwork(format!(
                "{parent}>{child} is not a lattice edge below a multi-element subset"
            )));
        }
        Ok(parent.index() * self.frame.n() + diff.trailing_zeros() as usize)
    }

    pub fn xi(&self, parent: Subset, child: Subset) -> Result<f64> {
        Ok(self.xi[self.edge(parent, child)?])
    }

    pub fn set_xi(&mut self, parent: Subset, child: Subset, value: f64) -> Result<()> {
        let e = self.edge(parent, child)?;
        self.xi[e] = value;
        Ok(())
    }

    /// Every multi-element node transfers all its mass, split evenly among
    /// its children. Revising with this network reproduces the pignistic
    /// transformation.
    pub fn ppt(frame: Frame) -> Self {
        let mut net = Self::new(frame);
        for (i, t) in net.tau.iter_mut().enumerate() {
            if i.count_ones() >= 2 {
                *t = 1.0;
            }
        }
        net
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.frame.n();
        for (i, &t) in self.tau.iter().enumerate() {
            if !(0.0..=1.0).contains(&t) {
                return Err(BeliefError::InvalidNetwork(format!(
                    "tau({}) = {t} is outside [0, 1]",
                    Subset(i as u32)
                )));
            }
            if i.count_ones() < 2 {
                if t != 0.0 {
                    return Err(BeliefError::InvalidNetwork(format!(
                        "tau given for {} which has fewer than two elements",
                        Subset(i as u32)
                    )));
                }
                continue;
            }
            let mut sum = 0.0;
            for e in 0..n {
                if i >> e & 1 == 0 {
                    continue;
                }
                let x = self.xi[i * n + e];
                if !(0.0..=1.0).contains(&x) {
                    return Err(BeliefError::InvalidNetwork(format!(
                        "xi({}>{}) = {x} is outside [0, 1]",
                        Subset(i as u32),
                        Subset((i ^ 1 << e) as u32)
                    )));
                }
                sum += x;
            }
            if (sum - 1.0).abs() > XI_SUM_TOLERANCE {
                return Err(BeliefError::InvalidNetwork(format!(
                    "split ratios below {} sum to {sum}",
                    Subset(i as u32)
                )));
            }
        }
        Ok(())
    }
}

/// Shorthand for [`BeliefEvolutionNetwork::ppt`].
pub fn ppt_network(frame: Frame) -> BeliefEvolutionNetwork {
    BeliefEvolutionNetwork::ppt(frame)
}

/// Revises `m` through the network, processing layers from `Ω` down to the
/// two-element subsets. Singletons never shed mass.
pub fn revise(m: &MassFunction, net: &BeliefEvolutionNetwork) -> Result<MassFunction> {
    m.frame().check_compatible(&net.frame)?;
    net.validate()?;
    let n = m.n();
    let mut cur = m.masses().to_vec();
    for card in (2..=n).rev() {
        for s in subsets_by_cardinality(m.frame(), card)? {
            let f = s.index();
            let sent = net.tau[f] * cur[f];
            if sent == 0.0 {
                continue;
            }
            cur[f] -= sent;
            for c in child_indices(f) {
                let e = (f ^ c).trailing_zeros() as usize;
                cur[c] += net.xi[f * n + e] * sent;
            }
        }
    }
    MassFunction::on_frame(m.frame().clone(), cur)
}
