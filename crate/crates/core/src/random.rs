//! Seeded random mass functions, networks and ratio maps.
//!
//! The stream is ChaCha8 seeded from a `u64`, and Dirichlet draws are
//! normalized unit exponentials, so a seed gives the same output on every
//! platform.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::ben::BeliefEvolutionNetwork;
use crate::error::Result;
use crate::iso::{CommitmentForm, IsoCommitment, PossibilityDistribution};
use crate::lattice::{Frame, Subset};
use crate::mass::{MassFunction, CLAMP};

/// Support of a random mass function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RandomKind {
    /// Every subset, including the empty set.
    Any,
    /// Every non-empty subset.
    Normalized,
    /// A random maximal chain of nested subsets.
    Consonant,
    /// The singletons.
    Bayesian,
    /// Every non-empty subset, with `m(Ω)` bounded away from 0.
    NonDogmatic,
    /// Every subset, with `m(∅)` bounded away from 0.
    Subnormal,
}

impl RandomKind {
    pub const ALL: [RandomKind; 6] = [
        RandomKind::Any,
        RandomKind::Normalized,
        RandomKind::Consonant,
        RandomKind::Bayesian,
        RandomKind::NonDogmatic,
        RandomKind::Subnormal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RandomKind::Any => "any",
            RandomKind::Normalized => "normalized",
            RandomKind::Consonant => "consonant",
            RandomKind::Bayesian => "bayesian",
            RandomKind::NonDogmatic => "nondogmatic",
            RandomKind::Subnormal => "subnormal",
        }
    }
}

impl fmt::Display for RandomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RandomKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        RandomKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown kind {s:?}"))
    }
}

/// Floor for the entries that a kind promises to keep positive.
const POSITIVE_FLOOR: f64 = 1e-6;

pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Symmetric Dirichlet(1) weights of length `k`.
    pub fn dirichlet(&mut self, k: usize) -> Vec<f64> {
        let mut w: Vec<f64> = (0..k).map(|_| self.rng.sample::<f64, _>(Exp1)).collect();
        let sum: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= sum);
        w
    }

    fn spread(&mut self, frame: &Frame, support: &[usize]) -> Vec<f64> {
        let mut masses = vec![0.0; frame.size()];
        for (&i, w) in support.iter().zip(self.dirichlet(support.len())) {
            masses[i] = w;
        }
        masses
    }

    fn chain(&mut self, n: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut self.rng);
        let mut acc = 0usize;
        order
            .into_iter()
            .map(|e| {
                acc |= 1 << e;
                acc
            })
            .collect()
    }

    pub fn mass(&mut self, frame: &Frame, kind: RandomKind) -> MassFunction {
        let size = frame.size();
        let masses = match kind {
            RandomKind::Any => self.spread(frame, &(0..size).collect::<Vec<_>>()),
            RandomKind::Normalized => self.spread(frame, &(1..size).collect::<Vec<_>>()),
            RandomKind::Bayesian => {
                let singles: Vec<usize> = (0..frame.n()).map(|i| 1 << i).collect();
                self.spread(frame, &singles)
            }
            RandomKind::Consonant => {
                let chain = self.chain(frame.n());
                self.spread(frame, &chain)
            }
            RandomKind::NonDogmatic => {
                let mut m = self.spread(frame, &(1..size).collect::<Vec<_>>());
                lift(&mut m, size - 1);
                m
            }
            RandomKind::Subnormal => {
                let mut m = self.spread(frame, &(0..size).collect::<Vec<_>>());
                lift(&mut m, 0);
                m
            }
        };
        MassFunction::on_frame(frame.clone(), masses).expect("Dirichlet draw is a mass function")
    }

    /// A frame whose size is uniform in `lo..=hi`.
    pub fn frame_size(&mut self, lo: usize, hi: usize) -> Frame {
        Frame::new(self.rng.random_range(lo..=hi)).expect("frame size in range")
    }

    /// Random `tau ∈ [0, 1]` on multi-element subsets and Dirichlet splits.
    pub fn network(&mut self, frame: &Frame) -> BeliefEvolutionNetwork {
        let mut net = BeliefEvolutionNetwork::new(frame.clone());
        self.fill_network(&mut net, frame, |rng| rng.random::<f64>());
        net
    }

    /// Every `tau = 1` with random Dirichlet splits.
    pub fn full_transfer_network(&mut self, frame: &Frame) -> BeliefEvolutionNetwork {
        let mut net = BeliefEvolutionNetwork::new(frame.clone());
        self.fill_network(&mut net, frame, |_| 1.0);
        net
    }

    fn fill_network(
        &mut self,
        net: &mut BeliefEvolutionNetwork,
        frame: &Frame,
        mut tau: impl FnMut(&mut ChaCha8Rng) -> f64,
    ) {
        for s in frame.subsets().filter(|s| s.len() >= 2) {
            net.set_tau(s, tau(&mut self.rng)).expect("multi-element subset");
            let children: Vec<Subset> = s.children().collect();
            for (c, w) in children.iter().zip(self.dirichlet(children.len())) {
                net.set_xi(s, *c, w).expect("lattice edge");
            }
        }
    }

    /// Uniform ratios in `[-1, 1]` on every multi-element subset.
    pub fn tau(&mut self, frame: &Frame) -> IsoCommitment {
        let values = (0..frame.size())
            .map(|i| {
                if i.count_ones() >= 2 {
                    self.rng.random_range(-1.0..=1.0)
                } else {
                    0.0
                }
            })
            .collect();
        IsoCommitment::new(frame, CommitmentForm::Tau, values).expect("ratios in range")
    }

    /// A normal possibility distribution: one random element at 1, the others
    /// uniform in `[0, 1]`.
    pub fn possibility(&mut self, frame: &Frame) -> PossibilityDistribution {
        let top = self.rng.random_range(0..frame.n());
        let poss = (0..frame.n())
            .map(|i| if i == top { 1.0 } else { self.rng.random::<f64>() })
            .collect();
        PossibilityDistribution::new(frame.clone(), poss).expect("values in [0, 1]")
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }
}

/// Moves mass so that `m[i] ≥ POSITIVE_FLOOR`, scaling the rest down.
fn lift(m: &mut [f64], i: usize) {
    if m[i] >= POSITIVE_FLOOR {
        return;
    }
    let rest = 1.0 - m[i];
    let scale = (1.0 - POSITIVE_FLOOR) / rest;
    m.iter_mut().for_each(|x| *x *= scale);
    m[i] = POSITIVE_FLOOR;
    debug_assert!(m[i] > CLAMP);
}

/// `count` mass functions of the given kind from one seed.
pub fn random_masses(seed: u64, n: usize, count: usize, kind: RandomKind) -> Result<Vec<MassFunction>> {
    let frame = Frame::new(n)?;
    let mut g = Generator::new(seed);
    Ok((0..count).map(|_| g.mass(&frame, kind)).collect())
}
