//! JSON documents for mass functions, networks, decompositions, weights and
//! transform outputs.
//!
//! Subset-keyed maps use decimal subset indices as keys (`"5"` is `{w1,w3}`)
//! and are emitted in ascending index order.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::ben::BeliefEvolutionNetwork;
use crate::classic::{TFunction, WeightFunction, WeightKind};
use crate::error::BeliefError;
use crate::iso::{CommitmentForm, IsoCommitment, IsoDecomposition, PossibilityDistribution};
use crate::lattice::{Frame, Subset, MAX_FRAME};
use crate::mass::{MassFunction, Tolerances};
use crate::transforms::{PignisticDistribution, SetFunction};

/// The only accepted value of the `order` field.
pub const ORDER: &str = "binary-lsb-w1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error(transparent)]
    Invalid(#[from] BeliefError),
}

pub type FormatResult<T> = std::result::Result<T, FormatError>;

fn schema<T>(msg: impl Into<String>) -> FormatResult<T> {
    Err(FormatError::Schema(msg.into()))
}

/// Ordered `(subset index, value)` pairs that serialize as a JSON object.
#[derive(Debug, Clone, PartialEq, Default)]
struct SubsetMap(Vec<(u32, f64)>);

impl Serialize for SubsetMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(&k.to_string(), v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for SubsetMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = SubsetMap;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object keyed by decimal subset indices")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> Result<SubsetMap, A::Error> {
                let mut seen = BTreeMap::new();
                while let Some((k, v)) = a.next_entry::<String, f64>()? {
                    let idx = parse_index(&k).map_err(de::Error::custom)?;
                    if seen.insert(idx, v).is_some() {
                        return Err(de::Error::custom(format!("duplicate key {k:?}")));
                    }
                }
                Ok(SubsetMap(seen.into_iter().collect()))
            }
        }
        d.deserialize_map(V)
    }
}

fn parse_index(k: &str) -> Result<u32, String> {
    if k.is_empty() || k.len() > 5 || !k.bytes().all(|b| b.is_ascii_digit()) || (k.len() > 1 && k.starts_with('0')) {
        return Err(format!("{k:?} is not a decimal subset index"));
    }
    k.parse::<u32>().map_err(|e| e.to_string())
}

fn check_n(n: usize) -> FormatResult<Frame> {
    if n == 0 || n > MAX_FRAME {
        return Err(BeliefError::FrameSize(n).into());
    }
    Ok(Frame::new(n)?)
}

fn check_key(frame: &Frame, k: u32) -> FormatResult<Subset> {
    if k as usize >= frame.size() {
        return schema(format!("subset index {k} is outside a {}-element frame", frame.n()));
    }
    Ok(Subset(k))
}

fn dense(frame: &Frame, map: &SubsetMap, fill: f64) -> FormatResult<Vec<f64>> {
    let mut v = vec![fill; frame.size()];
    for &(k, x) in &map.0 {
        v[check_key(frame, k)?.index()] = x;
    }
    Ok(v)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MassDoc {
    n: usize,
    order: String,
    masses: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl MassDoc {
    fn into_mass(self, tol: Tolerances) -> FormatResult<MassFunction> {
        if self.order != ORDER {
            return schema(format!("order must be {ORDER:?}, got {:?}", self.order));
        }
        let frame = match self.labels {
            Some(labels) => {
                if labels.len() != self.n {
                    return schema(format!("{} labels for n = {}", labels.len(), self.n));
                }
                Frame::with_labels(labels)?
            }
            None => check_n(self.n)?,
        };
        if self.masses.len() != frame.size() {
            return schema(format!(
                "masses has {} entries, expected 2^{} = {}",
                self.masses.len(),
                self.n,
                frame.size()
            ));
        }
        Ok(MassFunction::on_frame_with(frame, self.masses, tol)?)
    }
}

/// Parses one mass-function document with the default tolerances.
pub fn parse_mass(s: &str) -> FormatResult<MassFunction> {
    parse_mass_with(s, Tolerances::default())
}

pub fn parse_mass_with(s: &str, tol: Tolerances) -> FormatResult<MassFunction> {
    serde_json::from_str::<MassDoc>(s)?.into_mass(tol)
}

/// Parses a whitespace-separated sequence of mass-function documents.
pub fn parse_mass_stream(s: &str, tol: Tolerances) -> FormatResult<Vec<MassFunction>> {
    serde_json::Deserializer::from_str(s)
        .into_iter::<MassDoc>()
        .map(|doc| doc?.into_mass(tol))
        .collect()
}

pub fn mass_to_json(m: &MassFunction) -> String {
    serde_json::to_string(&MassDoc {
        n: m.n(),
        order: ORDER.to_string(),
        masses: m.masses().to_vec(),
        labels: m.frame().labels().map(<[String]>::to_vec),
    })
    .expect("mass document serializes")
}

#[derive(Serialize)]
struct SetFunctionDoc<'a> {
    n: usize,
    order: &'static str,
    kind: &'static str,
    values: &'a [f64],
}

pub fn set_function_to_json(f: &SetFunction) -> String {
    serde_json::to_string(&SetFunctionDoc {
        n: f.frame().n(),
        order: ORDER,
        kind: f.kind().name(),
        values: f.values(),
    })
    .expect("set function serializes")
}

#[derive(Serialize)]
struct PignisticDoc<'a> {
    n: usize,
    kind: &'static str,
    normalized: bool,
    probs: &'a [f64],
}

pub fn pignistic_to_json(p: &PignisticDistribution) -> String {
    serde_json::to_string(&PignisticDoc {
        n: p.frame().n(),
        kind: if p.normalized() { "betpn" } else { "betp" },
        normalized: p.normalized(),
        probs: p.probs(),
    })
    .expect("pignistic distribution serializes")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkDoc {
    n: usize,
    #[serde(default)]
    tau: SubsetMap,
    #[serde(default)]
    xi: BTreeMap<String, f64>,
}

fn parse_edge(k: &str) -> Result<(u32, u32), String> {
    let (p, c) = k
        .split_once('>')
        .ok_or_else(|| format!("edge key {k:?} is not \"parent>child\""))?;
    Ok((parse_index(p)?, parse_index(c)?))
}

/// Parses and validates a network document.
pub fn parse_network(s: &str) -> FormatResult<BeliefEvolutionNetwork> {
    let doc: NetworkDoc = serde_json::from_str(s)?;
    let frame = check_n(doc.n)?;
    let mut net = BeliefEvolutionNetwork::new(frame.clone());
    for &(k, t) in &doc.tau.0 {
        net.set_tau(check_key(&frame, k)?, t)?;
    }
    for (k, &x) in &doc.xi {
        let (p, c) = parse_edge(k).map_err(FormatError::Schema)?;
        net.set_xi(check_key(&frame, p)?, check_key(&frame, c)?, x)?;
    }
    net.validate()?;
    Ok(net)
}

/// Emits every multi-element `tau` and every edge ratio.
pub fn network_to_json(net: &BeliefEvolutionNetwork) -> String {
    let frame = net.frame();
    let mut tau = Vec::new();
    let mut edges: Vec<(u32, u32, f64)> = Vec::new();
    for s in frame.subsets().filter(|s| s.len() >= 2) {
        tau.push((s.bits(), net.tau(s)));
        for c in s.children() {
            edges.push((s.bits(), c.bits(), net.xi(s, c).expect("lattice edge")));
        }
    }
    let xi = EdgeMap(edges);
    #[derive(Serialize)]
    struct Out {
        n: usize,
        tau: SubsetMap,
        xi: EdgeMap,
    }
    serde_json::to_string(&Out {
        n: frame.n(),
        tau: SubsetMap(tau),
        xi,
    })
    .expect("network serializes")
}

struct EdgeMap(Vec<(u32, u32, f64)>);

impl Serialize for EdgeMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (p, c, v) in &self.0 {
            map.serialize_entry(&format!("{p}>{c}"), v)?;
        }
        map.end()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecompositionDoc {
    n: usize,
    form: String,
    empty: f64,
    poss: Vec<f64>,
    #[serde(default)]
    commitment: SubsetMap,
}

fn parse_form(s: &str) -> FormatResult<CommitmentForm> {
    match s {
        "tau" => Ok(CommitmentForm::Tau),
        "zeta" => Ok(CommitmentForm::Zeta),
        other => schema(format!("form must be \"tau\" or \"zeta\", got {other:?}")),
    }
}

/// Parses a decomposition. Commitment keys must be multi-element subsets;
/// omitted ones are 0.
pub fn parse_decomposition(s: &str) -> FormatResult<IsoDecomposition> {
    let doc: DecompositionDoc = serde_json::from_str(s)?;
    let frame = check_n(doc.n)?;
    let form = parse_form(&doc.form)?;
    if let Some(&(k, _)) = doc.commitment.0.iter().find(|(k, _)| k.count_ones() < 2) {
        return schema(format!("commitment key {k} is not a multi-element subset"));
    }
    if !(doc.empty.is_finite() && (0.0..=1.0).contains(&doc.empty)) {
        return Err(BeliefError::Domain(format!("empty mass {} is outside [0, 1]", doc.empty)).into());
    }
    let values = dense(&frame, &doc.commitment, 0.0)?;
    Ok(IsoDecomposition {
        commitment: IsoCommitment::new(&frame, form, values)?,
        propensity: PossibilityDistribution::new(frame, doc.poss)?,
        empty_mass: doc.empty,
    })
}

pub fn decomposition_to_json(d: &IsoDecomposition) -> String {
    serde_json::to_string(&DecompositionDoc {
        n: d.frame().n(),
        form: d.form().name().to_string(),
        empty: d.empty_mass,
        poss: d.propensity.values().to_vec(),
        commitment: SubsetMap(d.commitment.entries().map(|(s, v)| (s.bits(), v)).collect()),
    })
    .expect("decomposition serializes")
}

/// A parsed canonical-decomposition document.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightsDoc {
    Weights(WeightFunction),
    T(TFunction),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightsJson {
    n: usize,
    kind: String,
    values: SubsetMap,
}

/// Parses `{"n", "kind": "sigma"|"v"|"t", "values": {...}}`. Omitted weights
/// are 1; omitted `t` entries are 0 except `t(∅) = 1`.
pub fn parse_weights(s: &str) -> FormatResult<WeightsDoc> {
    let doc: WeightsJson = serde_json::from_str(s)?;
    let frame = check_n(doc.n)?;
    match doc.kind.as_str() {
        "sigma" | "v" => {
            let kind = if doc.kind == "sigma" {
                WeightKind::Sigma
            } else {
                WeightKind::V
            };
            let excluded = if kind == WeightKind::Sigma {
                frame.omega().bits()
            } else {
                0
            };
            if doc.values.0.iter().any(|&(k, _)| k == excluded) {
                return schema(format!("{} has no weight on subset {excluded}", doc.kind));
            }
            let values = dense(&frame, &doc.values, 1.0)?;
            Ok(WeightsDoc::Weights(WeightFunction::new(frame, kind, values)?))
        }
        "t" => {
            let mut values = dense(&frame, &doc.values, 0.0)?;
            if !doc.values.0.iter().any(|&(k, _)| k == 0) {
                values[0] = 1.0;
            }
            Ok(WeightsDoc::T(TFunction::new(frame, values)?))
        }
        other => schema(format!("kind must be \"sigma\", \"v\" or \"t\", got {other:?}")),
    }
}

pub fn weights_to_json(w: &WeightsDoc) -> String {
    let (n, kind, values) = match w {
        WeightsDoc::Weights(w) => (
            w.frame().n(),
            w.kind().name(),
            w.entries().map(|(s, v)| (s.bits(), v)).collect(),
        ),
        WeightsDoc::T(t) => (
            t.frame().n(),
            "t",
            t.values().iter().enumerate().map(|(i, &v)| (i as u32, v)).collect(),
        ),
    };
    serde_json::to_string(&WeightsJson {
        n,
        kind: kind.to_string(),
        values: SubsetMap(values),
    })
    .expect("weights serialize")
}
