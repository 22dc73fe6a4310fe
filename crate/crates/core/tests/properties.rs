mod common;

use common::{assert_close, e5, e6, frame, max_diff, mf};
use isobelief::ben::{ppt_network, revise};
use isobelief::classic::{mass_from_sigma, smets_sigma, smets_v};
use isobelief::fusion::{hyper_cautious, hyper_cautious_k, FusionOperator};
use isobelief::iso::{
    bounds, canonicalize_pc, consonant_from_possibility, decompose, isotransform, propensity, reconstruct_tau,
    reconstruct_zeta, transfer_tau, transfer_zeta, CommitmentForm, IsoDecomposition,
};
use isobelief::lattice::{Frame, Subset};
use isobelief::mass::MassFunction;
use isobelief::measures::{commitment_specificity, propensity_specificity, CommitmentSpecificity};
use isobelief::random::{Generator, RandomKind};
use isobelief::transforms::{betp, set_transform, SetKind};

const TOL: f64 = 1e-9;
const TRIALS: usize = 200;

fn for_frames(seed: u64, mut f: impl FnMut(&mut Generator, &Frame)) {
    let mut g = Generator::new(seed);
    for n in 2..=5 {
        let fr = frame(n);
        for _ in 0..TRIALS {
            f(&mut g, &fr);
        }
    }
}

/// A random member of the isopignistic domain of `poss`.
fn in_domain(g: &mut Generator, poss: &isobelief::iso::PossibilityDistribution) -> MassFunction {
    let base = consonant_from_possibility(poss);
    transfer_tau(&base, &g.tau(poss.frame())).unwrap()
}

fn same_betp(a: &MassFunction, b: &MassFunction) -> f64 {
    max_diff(betp(a, false).unwrap().probs(), betp(b, false).unwrap().probs())
}

#[test]
fn full_transfer_networks_stay_within_belief_and_plausibility() {
    for_frames(100, |g, fr| {
        let m = g.mass(fr, RandomKind::Any);
        let out = revise(&m, &g.full_transfer_network(fr)).unwrap();
        let bel = set_transform(&m, SetKind::Bel);
        let pl = set_transform(&m, SetKind::Pl);
        for i in 0..fr.n() {
            let s = Subset(1 << i);
            assert!(bel.get(s) - TOL <= out.get(s) && out.get(s) <= pl.get(s) + TOL);
        }
        assert!(out.focal_sets().all(|s| s.len() <= 1));
    });
}

#[test]
fn ppt_network_reproduces_pignistic() {
    let mut g = Generator::new(101);
    for n in 2..=6 {
        let fr = frame(n);
        for _ in 0..500 / 5 {
            let m = g.mass(&fr, RandomKind::Any);
            let out = revise(&m, &ppt_network(fr.clone())).unwrap();
            let p = betp(&m, false).unwrap();
            for i in 0..n {
                assert!((out.get(Subset(1 << i)) - p.probs()[i]).abs() < 1e-10);
            }
            assert_eq!(out.empty_mass(), m.empty_mass());
        }
    }
}

#[test]
fn revision_conserves_mass_and_stays_non_negative() {
    for_frames(102, |g, fr| {
        let m = g.mass(fr, RandomKind::Any);
        let out = revise(&m, &g.network(fr)).unwrap();
        assert!((out.total() - m.total()).abs() < 1e-12);
        assert!(out.masses().iter().all(|&x| x >= 0.0));
    });
}

#[test]
fn negated_amounts_invert_the_transformation() {
    for_frames(103, |g, fr| {
        let m = g.mass(fr, RandomKind::Any);
        let d = decompose(&m, CommitmentForm::Zeta).unwrap();
        let mut mc = consonant_from_possibility(&d.propensity).into_masses();
        mc[0] = m.empty_mass();
        let back = transfer_zeta(&m, &d.commitment.negated()).unwrap();
        assert_close(back.masses(), &mc, TOL, "inverse transfer");
    });
}

#[test]
fn arbitrary_ratios_always_give_mass_functions() {
    let mut g = Generator::new(104);
    let mut failures = 0;
    for trial in 0..10_000 {
        let fr = frame(2 + trial % 4);
        let base = g.mass(&fr, RandomKind::Consonant);
        let tau = g.tau(&fr);
        if transfer_tau(&base, &tau).is_err() {
            failures += 1;
        }
        let pc = IsoDecomposition {
            propensity: propensity(&base),
            commitment: tau,
            empty_mass: 0.0,
        };
        if reconstruct_tau(&pc).is_err() {
            failures += 1;
        }
    }
    assert_eq!(failures, 0);
}

#[test]
fn amounts_add_along_a_chain_of_transformations() {
    for_frames(105, |g, fr| {
        let poss = g.possibility(fr);
        let (a, b, c) = (in_domain(g, &poss), in_domain(g, &poss), in_domain(g, &poss));
        let ab = isotransform(&a, &b).unwrap().zeta;
        let bc = isotransform(&b, &c).unwrap().zeta;
        let ac = isotransform(&a, &c).unwrap().zeta;
        let sum: Vec<f64> = ab.values().iter().zip(bc.values()).map(|(x, y)| x + y).collect();
        assert_close(ac.values(), &sum, TOL, "amount additivity");
    });
}

#[test]
fn every_pair_in_a_domain_is_reachable() {
    for_frames(106, |g, fr| {
        let poss = g.possibility(fr);
        let (a, b) = (in_domain(g, &poss), in_domain(g, &poss));
        let t = isotransform(&a, &b).unwrap();
        assert!(transfer_zeta(&a, &t.zeta).unwrap().max_abs_diff(&b) < TOL);
        assert!(transfer_tau(&a, &t.tau).unwrap().max_abs_diff(&b) < TOL);
        assert!(t.tau.entries().all(|(_, v)| (-1.0..=1.0).contains(&v)));
    });
}

#[test]
fn decomposition_round_trips_and_keeps_pignistic() {
    for kind in [
        RandomKind::Any,
        RandomKind::Normalized,
        RandomKind::Consonant,
        RandomKind::Bayesian,
    ] {
        for_frames(107, |g, fr| {
            let m = g.mass(fr, kind);
            let z = decompose(&m, CommitmentForm::Zeta).unwrap();
            let t = decompose(&m, CommitmentForm::Tau).unwrap();
            assert!((t.empty_mass - (1.0 - t.propensity.max())).abs() < TOL);
            let rz = reconstruct_zeta(&z).unwrap();
            let rt = reconstruct_tau(&t).unwrap();
            assert!(rz.max_abs_diff(&m) < TOL, "{kind} zeta round trip");
            assert!(rt.max_abs_diff(&m) < TOL, "{kind} tau round trip");
            assert!(same_betp(&rt, &m) < TOL);
        });
    }
}

#[test]
fn bounds_are_consonant_and_bayesian() {
    for_frames(108, |g, fr| {
        let poss = g.possibility(fr);
        let (lower, upper) = bounds(&poss);
        assert!(lower.kind().consonant);
        assert!(upper.kind().bayesian);
        assert!(same_betp(&lower, &upper) < TOL);
        let dl = decompose(&lower, CommitmentForm::Zeta).unwrap();
        assert!(dl.commitment.entries().all(|(_, v)| v.abs() < TOL));
        let du = decompose(&upper, CommitmentForm::Tau).unwrap();
        assert!(du.commitment.entries().all(|(_, v)| (v - 1.0).abs() < TOL));
        let m = in_domain(g, &poss);
        assert!(same_betp(&m, &lower) < TOL);
    });
}

#[test]
fn canonical_ratio_is_a_fixpoint() {
    let mut g = Generator::new(109);
    let fr = frame(3);
    for _ in 0..300 {
        let pc = IsoDecomposition {
            propensity: g.possibility(&fr),
            commitment: g.tau(&fr),
            empty_mass: 0.0,
        };
        let once = canonicalize_pc(&pc).unwrap();
        let twice = canonicalize_pc(&once).unwrap();
        assert!(max_diff(once.commitment.values(), twice.commitment.values()) < TOL);
        assert!(max_diff(once.propensity.values(), pc.propensity.values()) < TOL);
    }
}

#[test]
fn propensity_specificity_range() {
    for_frames(110, |g, fr| {
        let sp = propensity_specificity(&g.mass(fr, RandomKind::Normalized)).unwrap();
        let n = fr.n() as f64;
        assert!(1.0 / n - TOL <= sp && sp <= 1.0 + TOL);
    });
    // Equal mass on every subset of a given size puts BetP at uniform.
    for_frames(111, |g, fr| {
        let layer = g.dirichlet(fr.n());
        let masses: Vec<f64> = (0..fr.size())
            .map(|i| {
                let k = i.count_ones() as usize;
                if k == 0 {
                    0.0
                } else {
                    layer[k - 1] / binomial(fr.n(), k)
                }
            })
            .collect();
        let m = MassFunction::on_frame(fr.clone(), masses).unwrap();
        let sp = propensity_specificity(&m).unwrap();
        assert!((sp - 1.0 / fr.n() as f64).abs() < 1e-12);
    });
    for n in 2..=5 {
        let m = MassFunction::categorical(frame(n), Subset(1));
        assert_eq!(propensity_specificity(&m).unwrap(), 1.0);
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn sc(m: &MassFunction) -> f64 {
    match commitment_specificity(m).unwrap() {
        CommitmentSpecificity::Defined(v) => v,
        CommitmentSpecificity::Undefined => panic!("undefined for {m:?}"),
    }
}

#[test]
fn commitment_specificity_extremes_and_range() {
    for_frames(112, |g, fr| {
        assert!(sc(&g.mass(fr, RandomKind::Consonant)).abs() < TOL);
        assert!((sc(&g.mass(fr, RandomKind::Bayesian)) - 1.0).abs() < TOL);
        let v = sc(&g.mass(fr, RandomKind::Normalized));
        assert!((-TOL..=1.0 + TOL).contains(&v), "S_c = {v}");
    });
    let det = MassFunction::categorical(frame(3), Subset(2));
    assert_eq!(commitment_specificity(&det).unwrap(), CommitmentSpecificity::Undefined);
}

fn permute(m: &MassFunction, perm: &[usize]) -> MassFunction {
    let mut out = vec![0.0; m.frame().size()];
    for (i, &x) in m.masses().iter().enumerate() {
        let j: usize = perm
            .iter()
            .enumerate()
            .filter(|(e, _)| i >> e & 1 == 1)
            .map(|(_, &p)| 1 << p)
            .sum();
        out[j] = x;
    }
    mf(&out)
}

#[test]
fn commitment_specificity_ignores_tie_order_on_reference_fixtures() {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for m in e5() {
        let base = sc(&m);
        for p in &perms {
            assert!((sc(&permute(&m, p)) - base).abs() < 1e-12);
        }
    }
}

#[test]
fn hyper_cautious_rules_commute() {
    for_frames(113, |g, fr| {
        let a = g.mass(fr, RandomKind::Any);
        let b = g.mass(fr, RandomKind::Any);
        for op in FusionOperator::ALL {
            let ab = hyper_cautious(&a, &b, op).unwrap();
            let ba = hyper_cautious(&b, &a, op).unwrap();
            assert!(ab
                .masses()
                .iter()
                .zip(ba.masses())
                .all(|(x, y)| x.to_bits() == y.to_bits()));
        }
    });
}

#[test]
fn min_and_max_rules_are_idempotent() {
    for_frames(114, |g, fr| {
        let m = g.mass(fr, RandomKind::Any);
        for op in [FusionOperator::TMin, FusionOperator::SMax] {
            assert!(hyper_cautious(&m, &m, op).unwrap().max_abs_diff(&m) < TOL);
        }
    });
}

#[test]
fn quasi_neutral_elements() {
    for_frames(115, |g, fr| {
        let vacuous = MassFunction::vacuous(fr.clone());
        let conflict = MassFunction::total_conflict(fr.clone());
        let m = g.mass(fr, RandomKind::Normalized);
        for (neutral, op) in [(&vacuous, FusionOperator::TProd), (&conflict, FusionOperator::SProbSum)] {
            let r = hyper_cautious(&m, neutral, op).unwrap();
            assert!(same_betp(&r, &m) < TOL);
            assert!(sc(&r) <= sc(&m) + TOL, "S_c rose from {} to {}", sc(&m), sc(&r));
        }
        let c = g.mass(fr, RandomKind::Consonant);
        assert!(
            hyper_cautious(&c, &vacuous, FusionOperator::TProd)
                .unwrap()
                .max_abs_diff(&c)
                < TOL
        );
        assert!(
            hyper_cautious(&c, &conflict, FusionOperator::SProbSum)
                .unwrap()
                .max_abs_diff(&c)
                < TOL
        );
    });
}

#[test]
fn fused_propensity_moves_with_the_operator() {
    for_frames(116, |g, fr| {
        let a = g.mass(fr, RandomKind::Any);
        let b = g.mass(fr, RandomKind::Any);
        let (pa, pb) = (propensity(&a), propensity(&b));
        for op in FusionOperator::ALL {
            let p = propensity(&hyper_cautious(&a, &b, op).unwrap());
            for i in 0..fr.n() {
                let (x, ya, yb) = (p.values()[i], pa.values()[i], pb.values()[i]);
                if op.is_conjunctive() {
                    assert!(x <= ya + TOL && x <= yb + TOL);
                } else {
                    assert!(x >= ya - TOL && x >= yb - TOL);
                }
            }
        }
    });
}

#[test]
fn hyper_cautious_is_not_associative_but_has_a_k_ary_form() {
    let (a, b) = e6();
    let c = common::e4();
    let mut witnessed = false;
    for op in FusionOperator::ALL {
        let left = hyper_cautious(&hyper_cautious(&a, &b, op).unwrap(), &c, op).unwrap();
        let right = hyper_cautious(&a, &hyper_cautious(&b, &c, op).unwrap(), op).unwrap();
        let k = hyper_cautious_k(&[a.clone(), b.clone(), c.clone()], op).unwrap();
        witnessed |= left.max_abs_diff(&right) > 1e-6;
        assert!(left.max_abs_diff(&k) > 1e-6, "{op:?}");
    }
    assert!(witnessed);

    for_frames(117, |g, fr| {
        let m = g.mass(fr, RandomKind::Any);
        let k = hyper_cautious_k(&[m.clone(), m.clone(), m.clone()], FusionOperator::TMin).unwrap();
        assert!(k.max_abs_diff(&m) < TOL);
    });
}

#[test]
fn sigma_weights_round_trip() {
    for_frames(118, |g, fr| {
        let m = g.mass(fr, RandomKind::NonDogmatic);
        let w = smets_sigma(&m).unwrap();
        let back = mass_from_sigma(&w).unwrap();
        assert!(back.max_abs_diff(&m) < TOL);
        let w2 = smets_sigma(&back).unwrap();
        for (x, y) in w.values().iter().zip(w2.values()) {
            assert!((x - y).abs() <= TOL * x.abs().max(1.0), "{x} vs {y}");
        }
    });
}

#[test]
fn disjunctive_weights_mirror_conjunctive_ones() {
    for_frames(119, |g, fr| {
        let m = g.mass(fr, RandomKind::Subnormal);
        let omega = fr.omega().bits();
        let mirrored: Vec<f64> = (0..fr.size()).map(|i| m.masses()[i ^ omega as usize]).collect();
        let bar = MassFunction::on_frame(fr.clone(), mirrored).unwrap();
        let v = smets_v(&m).unwrap();
        let s = smets_sigma(&bar).unwrap();
        for sub in fr.subsets() {
            let (x, y) = (v.get(sub), s.get(sub.complement(fr)));
            assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0), "{x} vs {y}");
        }
    });
}
