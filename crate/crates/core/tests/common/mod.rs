#![allow(dead_code)]

use isobelief::lattice::Frame;
use isobelief::mass::MassFunction;

pub const THIRD: f64 = 1.0 / 3.0;

pub fn mf(v: &[f64]) -> MassFunction {
    MassFunction::validate(v.to_vec()).unwrap()
}

pub fn e1_m1() -> MassFunction {
    mf(&[0.0, 0.0, 13.0 / 30.0, 7.0 / 30.0, 0.0, 0.0, 7.0 / 30.0, 0.1])
}

pub fn e1_m2() -> MassFunction {
    mf(&[0.0, 0.05, 0.6, 0.0, 0.05, 0.0, 0.0, 0.3])
}

pub fn e4() -> MassFunction {
    mf(&[0.0, 0.3, 0.2, 0.0, 0.0, 0.1, 0.2, 0.2])
}

/// The seven mass functions of the specificity comparison, `m1..m7`.
pub fn e5() -> Vec<MassFunction> {
    vec![
        mf(&[0.0, THIRD, THIRD, 0.0, THIRD, 0.0, 0.0, 0.0]),
        mf(&[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]),
        mf(&[0.0, 0.0, 0.0, THIRD, 0.0, THIRD, THIRD, 0.0]),
        mf(&[0.0, 0.4, 0.0, 0.0, 0.0, 0.0, 0.0, 0.6]),
        mf(&[0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.2, 0.3]),
        mf(&[0.0, 0.0, 0.0, 0.4, 0.0, 0.0, 0.0, 0.6]),
        mf(&[0.0, 0.0, 0.0, 0.2, 0.0, 0.0, 0.2, 0.6]),
    ]
}

/// The fusion pair.
pub fn e6() -> (MassFunction, MassFunction) {
    (
        mf(&[0.02, 0.1, 0.1, 0.25, 0.06, 0.27, 0.02, 0.18]),
        mf(&[0.07, 0.05, 0.16, 0.21, 0.14, 0.31, 0.05, 0.01]),
    )
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn assert_close(a: &[f64], b: &[f64], tol: f64, what: &str) {
    let d = max_diff(a, b);
    assert!(d <= tol, "{what}: max diff {d:e} > {tol:e}\n  got  {a:?}\n  want {b:?}");
}

fn subset(a: usize, b: usize) -> bool {
    a & !b == 0
}

/// Direct double loops over all pairs of subsets.
pub mod naive {
    use super::subset;

    pub fn bel(m: &[f64]) -> Vec<f64> {
        (0..m.len())
            .map(|f| (1..m.len()).filter(|&g| subset(g, f)).map(|g| m[g]).sum())
            .collect()
    }

    pub fn pl(m: &[f64]) -> Vec<f64> {
        (0..m.len())
            .map(|f| (0..m.len()).filter(|&g| g & f != 0).map(|g| m[g]).sum())
            .collect()
    }

    pub fn b(m: &[f64]) -> Vec<f64> {
        (0..m.len())
            .map(|f| (0..m.len()).filter(|&g| subset(g, f)).map(|g| m[g]).sum())
            .collect()
    }

    pub fn q(m: &[f64]) -> Vec<f64> {
        (0..m.len())
            .map(|f| (0..m.len()).filter(|&g| subset(f, g)).map(|g| m[g]).sum())
            .collect()
    }

    pub fn betp(m: &[f64], n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| {
                (1..m.len())
                    .filter(|g| g >> i & 1 == 1)
                    .map(|g| m[g] / g.count_ones() as f64)
                    .sum()
            })
            .collect()
    }

    /// `m(C) = Σ_{A ∩ B = C} m1(A) m2(B)`.
    pub fn conjunctive(m1: &[f64], m2: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; m1.len()];
        for a in 0..m1.len() {
            for b in 0..m2.len() {
                out[a & b] += m1[a] * m2[b];
            }
        }
        out
    }

    /// `m(C) = Σ_{A ∪ B = C} m1(A) m2(B)`.
    pub fn disjunctive(m1: &[f64], m2: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; m1.len()];
        for a in 0..m1.len() {
            for b in 0..m2.len() {
                out[a | b] += m1[a] * m2[b];
            }
        }
        out
    }

    /// Central cross-moments of the indicator vector of the random focal
    /// set; the empty set gets 1 and singletons the contour values.
    pub fn t_moments(m: &[f64], n: usize) -> Vec<f64> {
        let pl: Vec<f64> = (0..n)
            .map(|i| (0..m.len()).filter(|a| a >> i & 1 == 1).map(|a| m[a]).sum())
            .collect();
        (0..m.len())
            .map(|f| match f.count_ones() {
                0 => 1.0,
                1 => pl[f.trailing_zeros() as usize],
                _ => (0..m.len())
                    .map(|a| {
                        let mut prod = m[a];
                        for (i, p) in pl.iter().enumerate() {
                            if f >> i & 1 == 1 {
                                prod *= (a >> i & 1) as f64 - p;
                            }
                        }
                        prod
                    })
                    .sum(),
            })
            .collect()
    }

    /// Sort the non-empty focal sets by cardinality and check each is
    /// contained in the next.
    pub fn is_consonant(m: &[f64]) -> bool {
        let mut focal: Vec<usize> = (1..m.len()).filter(|&f| m[f] > 0.0).collect();
        focal.sort_by_key(|f| f.count_ones());
        focal.windows(2).all(|w| subset(w[0], w[1]))
    }

    /// Yager specificity straight from its definition.
    pub fn yager(m: &[f64]) -> f64 {
        (1..m.len()).map(|f| m[f] / f.count_ones() as f64).sum()
    }
}

pub fn frame(n: usize) -> Frame {
    Frame::new(n).unwrap()
}
