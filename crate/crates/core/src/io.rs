//! File formats: graph JSON, rates CSV, basis JSON and perturbation JSON.
//!
//! # Rates CSV
//!
//! Header `src,dst,rate`; each row says one unit of `src` buys `rate` units of
//! `dst`, which is the matrix entry `rate(src, dst)`: the price of `src` in
//! units of `dst`. For example
//!
//! ```text
//! src,dst,rate
//! USD,JPY,150
//! ```
//!
//! sets `rate(USD, JPY) = 150`, and, unless a `JPY,USD` row is present,
//! `rate(JPY, USD) = 1/150`. Goods are either all positive integers, used
//! directly as 1-based indices, or arbitrary labels numbered by sorted order.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::basis::{BasisAssignment, BasisSpec};
use crate::dynamics::PerturbationVector;
use crate::error::{Error, Result};
use crate::exchange::RateMatrix;
use crate::graph::MarketGraph;

/// `{"n": 4, "edges": [[1, 2], [2, 3]]}` with 1-based indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphFile {
    pub fn from_graph(g: &MarketGraph) -> Self {
        Self {
            n: g.order(),
            edges: g.edges().iter().map(|&(i, j)| [i, j]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<MarketGraph> {
        let edges: Vec<_> = self.edges.iter().map(|&[i, j]| (i, j)).collect();
        MarketGraph::new_strict(self.n, &edges)
    }
}

/// `{"entries": [[1, 2], [1, 3]], "values": [0.69, 1.79]}`.
///
/// Values are log-domain unless loaded with `multiplicative = true`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisFile {
    pub entries: Vec<[usize; 2]>,
    #[serde(default)]
    pub values: Vec<f64>,
}

impl BasisFile {
    pub fn to_spec(&self, g: &MarketGraph) -> Result<BasisSpec> {
        BasisSpec::new(g.clone(), self.entries.iter().map(|&[i, j]| (i, j)).collect())
    }

    pub fn to_assignment(&self, g: &MarketGraph, multiplicative: bool) -> Result<BasisAssignment> {
        let spec = self.to_spec(g)?;
        let values = if multiplicative {
            self.values
                .iter()
                .map(|&v| {
                    if v > 0.0 && v.is_finite() {
                        Ok(v.ln())
                    } else {
                        Err(Error::Parse(format!("multiplicative basis value {v} is not positive")))
                    }
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            self.values.clone()
        };
        BasisAssignment::new(spec, values)
    }
}

/// `{"basis": {"entries": [...]}, "deltas": [...]}`, deltas in the log domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationFile {
    pub basis: BasisFile,
    pub deltas: Vec<f64>,
}

impl PerturbationFile {
    pub fn to_vector(&self, g: &MarketGraph) -> Result<PerturbationVector> {
        PerturbationVector::new(self.basis.to_spec(g)?, self.deltas.clone())
    }
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    parse_json(&std::fs::read_to_string(path)?)
}

/// A rates table after label resolution and reciprocal filling.
#[derive(Debug, Clone, PartialEq)]
pub struct RatesTable {
    /// `labels[k]` names good `k + 1`.
    pub labels: Vec<String>,
    pub rates: RateMatrix,
    /// Directed pairs `(src, dst)` whose rate was filled as the reciprocal of `(dst, src)`.
    pub filled: Vec<(usize, usize)>,
}

impl RatesTable {
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label).map(|k| k + 1)
    }

    pub fn label(&self, good: usize) -> &str {
        &self.labels[good - 1]
    }
}

/// Parses a rates CSV. When both directions of a pair are given, their
/// log rates must cancel within `tol`.
pub fn parse_rates_csv(text: &str, tol: f64) -> Result<RatesTable> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(csv_error)?.clone();
    if headers.iter().collect::<Vec<_>>() != ["src", "dst", "rate"] {
        return Err(Error::Parse(format!(
            "expected header src,dst,rate, got {}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows: Vec<(String, String, f64)> = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(csv_error)?;
        let line = k + 2;
        if record.len() != 3 {
            return Err(Error::Parse(format!("line {line}: expected 3 fields")));
        }
        let rate: f64 = record[2]
            .parse()
            .map_err(|_| Error::Parse(format!("line {line}: bad rate {:?}", &record[2])))?;
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::Parse(format!(
                "line {line}: rate {rate} must be positive and finite"
            )));
        }
        if record[0].is_empty() || record[1].is_empty() {
            return Err(Error::Parse(format!("line {line}: empty good label")));
        }
        rows.push((record[0].to_string(), record[1].to_string(), rate));
    }
    if rows.is_empty() {
        return Err(Error::Parse("no rate rows".into()));
    }

    let labels = resolve_labels(rows.iter().flat_map(|(s, d, _)| [s.as_str(), d.as_str()]))?;
    let index: BTreeMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(k, l)| (l.as_str(), k + 1))
        .collect();

    let mut given: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (line, (s, d, rate)) in rows.iter().enumerate() {
        let key = (index[s.as_str()], index[d.as_str()]);
        if given.insert(key, *rate).is_some() {
            return Err(Error::Parse(format!(
                "line {}: duplicate entry {s} -> {d}",
                line + 2
            )));
        }
    }
    let mut filled = Vec::new();
    let mut edges = Vec::new();
    for (&(s, d), &rate) in &given {
        match given.get(&(d, s)) {
            Some(&back) if s < d => {
                if (rate.ln() + back.ln()).abs() > tol {
                    return Err(Error::ReciprocalConflict {
                        src: labels[s - 1].clone(),
                        dst: labels[d - 1].clone(),
                        product: rate * back,
                    });
                }
            }
            Some(_) => {}
            None => filled.push((d, s)),
        }
        edges.push((s, d));
    }
    let graph = MarketGraph::new(labels.len(), &edges)?;
    let rates = RateMatrix::from_fn(graph, |i, j| match given.get(&(i, j)) {
        Some(&r) => r,
        None => 1.0 / given[&(j, i)],
    })?;
    filled.sort_unstable();
    Ok(RatesTable {
        labels,
        rates,
        filled,
    })
}

pub fn read_rates(path: &Path, tol: f64) -> Result<RatesTable> {
    parse_rates_csv(&std::fs::read_to_string(path)?, tol)
}

fn csv_error(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

/// All-integer labels are used as indices `1..=max`; anything else is sorted.
fn resolve_labels<'a>(tokens: impl Iterator<Item = &'a str> + Clone) -> Result<Vec<String>> {
    let numeric: Option<Vec<usize>> = tokens.clone().map(|t| t.parse::<usize>().ok()).collect();
    match numeric {
        Some(ids) => {
            if ids.contains(&0) {
                return Err(Error::Parse("numeric goods are 1-based; found 0".into()));
            }
            let n = ids.into_iter().max().unwrap_or(0);
            Ok((1..=n).map(|k| k.to_string()).collect())
        }
        None => {
            let mut labels: Vec<String> = tokens.map(str::to_string).collect();
            labels.sort();
            labels.dedup();
            Ok(labels)
        }
    }
}

/// Writes every edge in both directions (loops once), edges in ascending order.
pub fn rates_csv(rates: &RateMatrix, labels: &[String]) -> String {
    rows_csv(rates.graph(), labels, |i, j| rates.get(i, j))
}

/// Like [`rates_csv`] for arbitrary per-entry values.
pub fn rows_csv(g: &MarketGraph, labels: &[String], value: impl Fn(usize, usize) -> f64) -> String {
    let mut out = String::from("src,dst,rate\n");
    for &(i, j) in g.edges() {
        out.push_str(&format!("{},{},{}\n", labels[i - 1], labels[j - 1], value(i, j)));
        if i != j {
            out.push_str(&format!("{},{},{}\n", labels[j - 1], labels[i - 1], value(j, i)));
        }
    }
    out
}

/// `"1"`, `"2"`, ... for graphs read from graph files.
pub fn numeric_labels(n: usize) -> Vec<String> {
    (1..=n).map(|k| k.to_string()).collect()
}
