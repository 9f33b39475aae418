//! JSON and DOT renderings of a built algebra.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{lower_central_series, ChainAlgebra, Sparse};
use crate::chainspec::{ChainTuple, SlotIndex};
use crate::error::{Error, Result};
use crate::jacobi::AlphaAssignment;
use crate::rational::{self, Rational};

#[derive(Serialize, Deserialize)]
struct BasisEntry {
    label: String,
    level: usize,
}

#[derive(Serialize, Deserialize)]
struct BracketEntry {
    i: usize,
    j: usize,
    result: Vec<(usize, String)>,
}

#[derive(Serialize, Deserialize)]
struct Document {
    tuple: Vec<i64>,
    alphas: BTreeMap<String, String>,
    dimension: usize,
    basis: Vec<BasisEntry>,
    brackets: Vec<BracketEntry>,
    general_type: Vec<usize>,
}

/// The full structure-constant table as pretty-printed JSON.
pub fn export_json(alg: &ChainAlgebra) -> Result<String> {
    let series = lower_central_series(alg)?;
    let doc = Document {
        tuple: alg.tuple().entries().to_vec(),
        alphas: alg
            .alphas()
            .iter()
            .map(|(s, v)| (s.to_string(), rational::format(v)))
            .collect(),
        dimension: alg.dimension(),
        basis: alg
            .basis()
            .iter()
            .map(|b| BasisEntry {
                label: b.label.clone(),
                level: b.level,
            })
            .collect(),
        brackets: alg
            .constants()
            .iter()
            .map(|(&(i, j), v)| BracketEntry {
                i,
                j,
                result: v.iter().map(|(k, c)| (*k, rational::format(c))).collect(),
            })
            .collect(),
        general_type: series.general_type,
    };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::Structural(e.to_string()))
}

/// Reads a document written by [`export_json`]. The basis must match the
/// one the tuple determines; constants are taken as given.
pub fn import_json(text: &str) -> Result<ChainAlgebra> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let tuple = ChainTuple::new(doc.tuple)?;
    let mut alphas = AlphaAssignment::new();
    for (k, v) in &doc.alphas {
        let slot: SlotIndex = k.parse()?;
        alphas.set(slot, rational::parse(v)?);
    }
    let mut constants = BTreeMap::new();
    for b in doc.brackets {
        let v: Sparse = b
            .result
            .iter()
            .map(|(k, c)| Ok((*k, rational::parse(c)?)))
            .collect::<Result<Vec<(usize, Rational)>>>()?;
        constants.insert((b.i, b.j), v);
    }
    let alg = ChainAlgebra::from_parts(tuple, alphas, constants)?;
    let labels_match = alg.basis().len() == doc.basis.len()
        && alg
            .basis()
            .iter()
            .zip(&doc.basis)
            .all(|(a, b)| a.label == b.label && a.level == b.level);
    if doc.dimension != alg.dimension() || !labels_match {
        return Err(Error::Parse("basis does not match the tuple's layout".into()));
    }
    Ok(alg)
}

/// The ideal chain `0 < n^t < … < n^1 < g` as a directed path.
pub fn export_dot(alg: &ChainAlgebra) -> String {
    let t = alg.layout().t();
    let mut nodes = vec![("zero".to_string(), "0".to_string(), 0)];
    for k in (1..=t).rev() {
        nodes.push((format!("n{k}"), format!("𝔫^{k}"), alg.predicted_power_dim(k)));
    }
    nodes.push(("g".into(), "𝔤".into(), alg.dimension()));

    let mut out = format!("digraph \"{}\" {{\n  rankdir=BT;\n", alg.tuple());
    for (id, label, dim) in &nodes {
        let _ = writeln!(out, "  {id} [label=\"{label}\", dim={dim}];");
    }
    for w in nodes.windows(2) {
        let _ = writeln!(out, "  {} -> {};", w[0].0, w[1].0);
    }
    out.push_str("}\n");
    out
}
