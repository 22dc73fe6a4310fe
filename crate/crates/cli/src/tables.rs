//! CSV tables regenerated from the fixture documents.

use std::fs;
use std::path::Path;

use isobelief::classic::{pichon_t, smets_sigma};
use isobelief::fusion::Rule;
use isobelief::iso::{decompose, isotransform, reconstruct_tau, CommitmentForm};
use isobelief::json::{parse_decomposition, parse_mass};
use isobelief::mass::MassFunction;
use isobelief::measures::{commitment_specificity, propensity_specificity, yager_specificity, CommitmentSpecificity};
use isobelief::sweep::fixed6;
use isobelief::transforms::{betp, shannon_entropy};

use crate::{CliError, CliResult};

fn read(dir: &Path, name: &str) -> CliResult<String> {
    let path = dir.join(name);
    fs::read_to_string(&path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn mass(dir: &Path, name: &str) -> CliResult<MassFunction> {
    parse_mass(&read(dir, name)?).map_err(|e| crate::with_source(name, e.into()))
}

fn row(label: &str, values: impl IntoIterator<Item = String>) -> String {
    let mut line = label.to_string();
    for v in values {
        line.push(',');
        line += &v;
    }
    line + "\n"
}

fn header(first: &str, prefix: &str, count: usize) -> String {
    row(first, (0..count).map(|i| format!("{prefix}{i}")))
}

fn fixed(values: &[f64]) -> impl Iterator<Item = String> + '_ {
    values.iter().map(|&x| fixed6(x))
}

fn sc(m: &MassFunction) -> CliResult<String> {
    Ok(match commitment_specificity(m)? {
        CommitmentSpecificity::Defined(v) => fixed6(v),
        CommitmentSpecificity::Undefined => "undefined".into(),
    })
}

/// BPAs next to their isopignistic functions.
fn table1(ms: &[MassFunction]) -> CliResult<String> {
    let size = ms[0].frame().size();
    let mut out = row(
        "bpa",
        (0..size)
            .map(|i| format!("m{i}"))
            .chain((0..size).map(|i| format!("iso{i}"))),
    );
    for (i, m) in ms.iter().enumerate() {
        let iso = decompose(m, CommitmentForm::Zeta)?.to_vector();
        out += &row(&format!("m{}", i + 1), fixed(m.masses()).chain(fixed(&iso)));
    }
    Ok(out)
}

/// Pignistic probabilities and the three specificities.
fn table2(ms: &[MassFunction]) -> CliResult<String> {
    let n = ms[0].n();
    let mut out = row(
        "bpa",
        (1..=n)
            .map(|i| format!("betp_w{i}"))
            .chain(["s".into(), "s_p".into(), "s_c".into()]),
    );
    for (i, m) in ms.iter().enumerate() {
        let p = betp(m, false)?;
        let measures = [
            fixed6(yager_specificity(m)?),
            fixed6(propensity_specificity(m)?),
            sc(m)?,
        ];
        out += &row(&format!("m{}", i + 1), fixed(p.probs()).chain(measures));
    }
    Ok(out)
}

/// Every rule applied to the pair.
fn table3(pair: &[MassFunction]) -> CliResult<String> {
    let mut out = header("rule", "m", pair[0].frame().size());
    for rule in Rule::ALL {
        out += &row(rule.name(), fixed(rule.combine(pair)?.masses()));
    }
    Ok(out)
}

/// Normalized pignistic probabilities of each fusion result, the decision
/// order and the entropy in bits.
fn table4(pair: &[MassFunction]) -> CliResult<String> {
    let n = pair[0].n();
    let mut out = row(
        "rule",
        (1..=n)
            .map(|i| format!("betp_w{i}"))
            .chain(["order".into(), "entropy".into()]),
    );
    for rule in Rule::ALL {
        let p = betp(&rule.combine(pair)?, true)?;
        let order: Vec<String> = p.decision_order().iter().map(|i| format!("w{}", i + 1)).collect();
        let tail = [order.join(">"), fixed6(shannon_entropy(&p)?)];
        out += &row(rule.name(), fixed(p.probs()).chain(tail));
    }
    Ok(out)
}

/// Flow and ratio of the transformation from `m2` to `m1` on each
/// multi-element subset.
fn e1(m1: &MassFunction, m2: &MassFunction) -> CliResult<String> {
    let t = isotransform(m2, m1)?;
    let mut out = String::from("subset,zeta,tau\n");
    for s in m1.frame().subsets().filter(|s| s.len() >= 2) {
        out += &row(&s.bits().to_string(), [fixed6(t.zeta.get(s)), fixed6(t.tau.get(s))]);
    }
    Ok(out)
}

/// The rebuilt masses and their ratios after re-decomposition.
fn e3(doc: &str) -> CliResult<String> {
    let pc = parse_decomposition(doc).map_err(|e| crate::with_source("e3_pc.json", e.into()))?;
    let m = reconstruct_tau(&pc)?;
    let iso = decompose(&m, CommitmentForm::Tau)?.to_vector();
    let mut out = String::from("subset,mass,iso_tau\n");
    for (i, (x, r)) in m.masses().iter().zip(&iso).enumerate() {
        out += &row(&i.to_string(), [fixed6(*x), fixed6(*r)]);
    }
    Ok(out)
}

/// The isopignistic, diffidence and t representations side by side. The
/// diffidence weight of the whole frame is left blank.
fn e4(m: &MassFunction) -> CliResult<String> {
    let zeta = decompose(m, CommitmentForm::Zeta)?.to_vector();
    let tau = decompose(m, CommitmentForm::Tau)?.to_vector();
    let sigma = smets_sigma(m)?;
    let t = pichon_t(m);
    let omega = m.frame().omega().index();
    let mut out = String::from("subset,mass,iso_zeta,iso_tau,sigma,t\n");
    for i in 0..m.frame().size() {
        let s = if i == omega {
            String::new()
        } else {
            fixed6(sigma.values()[i])
        };
        out += &row(
            &i.to_string(),
            [
                fixed6(m.masses()[i]),
                fixed6(zeta[i]),
                fixed6(tau[i]),
                s,
                fixed6(t.values()[i]),
            ],
        );
    }
    Ok(out)
}

/// `(file name, CSV)` for every table.
pub fn generate(dir: &Path) -> CliResult<Vec<(String, String)>> {
    let e5 = (1..=7)
        .map(|i| mass(dir, &format!("e5_m{i}.json")))
        .collect::<CliResult<Vec<_>>>()?;
    let pair = [mass(dir, "e6_m1.json")?, mass(dir, "e6_m2.json")?];
    Ok(vec![
        ("table1.csv".into(), table1(&e5)?),
        ("table2.csv".into(), table2(&e5)?),
        ("table3.csv".into(), table3(&pair)?),
        ("table4.csv".into(), table4(&pair)?),
        (
            "e1.csv".into(),
            e1(&mass(dir, "e1_m1.json")?, &mass(dir, "e1_m2.json")?)?,
        ),
        ("e3.csv".into(), e3(&read(dir, "e3_pc.json")?)?),
        ("e4.csv".into(), e4(&mass(dir, "e4.json")?)?),
    ])
}
