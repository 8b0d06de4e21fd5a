//! Serializable views of solver results, and their JSON and text rendering.
//!
//! Node ids are 1-based. Every float is rounded to 9 significant digits
//! before serialization so output is stable across platforms.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::contract::{ModelParams, OptimalContract};
use crate::graph::{MisEnumeration, NodeSet};
use crate::interventions::{Intervention, InterventionOutcome, ParetoCheck};
use crate::oracle::OracleResult;
use crate::simulate::{Estimate, SimulationReport};
use crate::welfare::{PrecisionGap, WelfareReport};

/// Significant digits kept in emitted floats.
pub const SIGNIFICANT_DIGITS: usize = 9;

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamsOut {
    pub z0: f64,
    pub gamma: f64,
}

impl From<&ModelParams> for ParamsOut {
    fn from(p: &ModelParams) -> Self {
        ParamsOut {
            z0: round_sig(p.z0()),
            gamma: round_sig(p.gamma()),
        }
    }
}

/// One emitted document: the command, the model parameters, and the result
/// fields at top level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub command: String,
    pub params: ParamsOut,
    #[serde(flatten)]
    pub body: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NodePrice {
    pub node: usize,
    pub price: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractOut {
    pub target: Vec<usize>,
    pub m: usize,
    pub z: f64,
    pub prices: Vec<NodePrice>,
    pub profit: f64,
    pub precondition_ok: bool,
    pub trivial: bool,
}

impl ContractOut {
    /// `uniform` selects the size-free noisy-prior condition.
    pub fn new(c: &OptimalContract, uniform: bool) -> Self {
        ContractOut {
            target: c.contract.target().labels(),
            m: c.m,
            z: round_sig(c.contract.z()),
            prices: c
                .contract
                .prices()
                .iter()
                .map(|(&i, &p)| NodePrice {
                    node: i + 1,
                    price: round_sig(p),
                })
                .collect(),
            profit: round_sig(c.profit),
            precondition_ok: if uniform {
                c.uniform_precondition_ok
            } else {
                c.precondition_ok
            },
            trivial: c.trivial,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleOut {
    pub best_target: Vec<usize>,
    pub best_z: f64,
    pub best_profit: f64,
    pub is_independent: bool,
    pub matches_theorem1: bool,
    pub precondition_ok: bool,
    pub scanned: u64,
}

impl OracleOut {
    /// `precondition_ok` is passed in so the caller can pick which form of
    /// the noisy-prior condition to report.
    pub fn new(r: &OracleResult, precondition_ok: bool) -> Self {
        OracleOut {
            best_target: r.best_target.labels(),
            best_z: round_sig(r.best_z),
            best_profit: round_sig(r.best_profit),
            is_independent: r.is_independent,
            matches_theorem1: r.matches_theorem1,
            precondition_ok,
            scanned: r.scanned,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MisOut {
    pub alpha: usize,
    pub sets: Vec<Vec<usize>>,
    pub truncated: bool,
    pub caro_wei: f64,
}

impl MisOut {
    pub fn new(e: &MisEnumeration, caro_wei: f64) -> Self {
        MisOut {
            alpha: e.alpha,
            sets: e.sets.iter().map(NodeSet::labels).collect(),
            truncated: e.truncated,
            caro_wei: round_sig(caro_wei),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NodeUtility {
    pub node: usize,
    pub utility: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WelfareOut {
    pub target: Vec<usize>,
    pub consumer_surplus: f64,
    pub seller_profit: f64,
    pub social_welfare: f64,
    pub k_vector: Vec<usize>,
    pub per_node: Vec<NodeUtility>,
    /// Maximum independent sets compared, and whether the list was cut short.
    pub candidates: usize,
    pub truncated: bool,
}

impl WelfareOut {
    pub fn new(r: &WelfareReport, candidates: usize, truncated: bool) -> Self {
        WelfareOut {
            target: r.target.labels(),
            consumer_surplus: round_sig(r.consumer_surplus),
            seller_profit: round_sig(r.seller_profit),
            social_welfare: round_sig(r.social_welfare),
            k_vector: r.k.counts().to_vec(),
            per_node: r
                .per_node_utilities
                .iter()
                .enumerate()
                .map(|(i, &u)| NodeUtility {
                    node: i + 1,
                    utility: round_sig(u),
                })
                .collect(),
            candidates,
            truncated,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Limits {
    pub z_star: f64,
    pub z_seller: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyOut {
    pub z_star: f64,
    pub z_seller: f64,
    pub gap: f64,
    pub clique_union: bool,
    pub limits: Limits,
    pub corner: bool,
    pub foc_residual: f64,
}

impl EfficiencyOut {
    pub fn new(g: &PrecisionGap, corner: bool, foc_residual: f64) -> Self {
        EfficiencyOut {
            z_star: round_sig(g.z_star),
            z_seller: round_sig(g.z_seller),
            gap: round_sig(g.gap),
            clique_union: g.clique_union,
            limits: Limits {
                z_star: round_sig(g.limit_z_star),
                z_seller: round_sig(g.limit_z_seller),
            },
            corner,
            foc_residual: round_sig(foc_residual),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MseOut {
    pub node: usize,
    pub mse: f64,
    pub se: f64,
    pub theory: f64,
    pub z_score: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WtpOut {
    pub node: usize,
    pub wtp: f64,
    pub se: f64,
    pub theory: f64,
    pub z_score: f64,
}

impl From<&Estimate> for WtpOut {
    fn from(e: &Estimate) -> Self {
        WtpOut {
            node: e.node + 1,
            wtp: round_sig(e.mean),
            se: round_sig(e.se),
            theory: round_sig(e.theory),
            z_score: round_sig(e.z_score),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationOut {
    pub seed: u64,
    pub samples: u64,
    pub normal_method: String,
    pub target: Vec<usize>,
    pub z: f64,
    pub nodes: Vec<MseOut>,
    /// Willingness to pay of each served buyer.
    pub wtp: Vec<WtpOut>,
}

impl SimulationOut {
    pub fn new(r: &SimulationReport, target: &NodeSet, z: f64, wtp: &[Estimate]) -> Self {
        SimulationOut {
            seed: r.seed,
            samples: r.samples,
            normal_method: r.normal_method.to_string(),
            target: target.labels(),
            z: round_sig(z),
            nodes: r
                .nodes
                .iter()
                .map(|e| MseOut {
                    node: e.node + 1,
                    mse: round_sig(e.mean),
                    se: round_sig(e.se),
                    theory: round_sig(e.theory),
                    z_score: round_sig(e.z_score),
                })
                .collect(),
            wtp: wtp.iter().map(WtpOut::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterventionOut {
    /// `remove-link` or `isolate-node`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node: Option<usize>,
    pub alpha_before: usize,
    pub alpha_after: usize,
    pub profit_delta: f64,
    pub cs_delta: f64,
}

impl From<&InterventionOutcome> for InterventionOut {
    fn from(o: &InterventionOutcome) -> Self {
        let (kind, edge, node) = match o.kind {
            Intervention::RemoveLink(u, v) => ("remove-link", Some([u + 1, v + 1]), None),
            Intervention::IsolateNode(v) => ("isolate-node", None, Some(v + 1)),
        };
        InterventionOut {
            kind: kind.to_string(),
            edge,
            node,
            alpha_before: o.alpha_before,
            alpha_after: o.alpha_after,
            profit_delta: round_sig(o.profit_delta),
            cs_delta: round_sig(o.cs_delta),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterventionsOut {
    pub interventions: Vec<InterventionOut>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeRiderOut {
    pub node: usize,
    pub m: usize,
    pub utility: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParetoOut {
    pub core_periphery: bool,
    pub core: Option<Vec<usize>>,
    pub periphery: Option<Vec<usize>>,
    pub free_riders: Vec<FreeRiderOut>,
    /// Result of the exhaustive search over all networks on the same buyers,
    /// when the network is small enough: `true` if no improvement exists.
    pub exhaustive_efficient: Option<bool>,
    /// Edges of the first Pareto-improving network found, if any.
    pub improvement: Option<Vec<[usize; 2]>>,
}

impl ParetoOut {
    pub fn new(check: &ParetoCheck, exhaustive: Option<Option<Vec<[usize; 2]>>>) -> Self {
        ParetoOut {
            core_periphery: check.is_core_periphery(),
            core: check.certificate.as_ref().map(|c| c.core.labels()),
            periphery: check.certificate.as_ref().map(|c| c.periphery.labels()),
            free_riders: check
                .free_riders
                .iter()
                .map(|f| FreeRiderOut {
                    node: f.node + 1,
                    m: f.m,
                    utility: round_sig(f.utility),
                })
                .collect(),
            exhaustive_efficient: exhaustive.as_ref().map(Option::is_none),
            improvement: exhaustive.flatten(),
        }
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report types serialize");
    s.push('\n');
    s
}

/// Aligned plain-text rendering: scalar fields as `key  value` lines (nested
/// objects use dotted keys), arrays of objects as column-aligned tables.
pub fn to_text<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("report types serialize");
    let mut rows = Vec::new();
    let mut tables = Vec::new();
    if let Value::Object(map) = &value {
        collect(map, "", &mut rows, &mut tables);
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in &rows {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    for (name, items) in &tables {
        out.push_str(&format!("\n{name}\n"));
        out.push_str(&table(items));
    }
    out
}

type Table<'a> = (String, &'a Vec<Value>);

fn collect<'a>(
    map: &'a serde_json::Map<String, Value>,
    prefix: &str,
    rows: &mut Vec<(String, String)>,
    tables: &mut Vec<Table<'a>>,
) {
    for (k, v) in map {
        let key = format!("{prefix}{k}");
        match v {
            Value::Object(inner) => collect(inner, &format!("{key}."), rows, tables),
            Value::Array(items) if items.iter().any(Value::is_object) => {
                tables.push((key, items));
            }
            other => rows.push((key, scalar(other))),
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        other => other.to_string(),
    }
}

fn table(items: &[Value]) -> String {
    let mut columns: Vec<&str> = Vec::new();
    for item in items {
        if let Value::Object(m) = item {
            for k in m.keys() {
                if !columns.contains(&k.as_str()) {
                    columns.push(k);
                }
            }
        }
    }
    let cells: Vec<Vec<String>> = items
        .iter()
        .map(|item| {
            columns
                .iter()
                .map(|c| item.get(c).map_or_else(|| "-".to_string(), scalar))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| cells.iter().map(|r| r[j].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |row: Vec<&str>| {
        let padded: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(columns.clone());
    for r in &cells {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}
