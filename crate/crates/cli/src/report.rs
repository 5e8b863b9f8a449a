//! Output records. Field order is part of the interface.

use serde::Serialize;
use serde_json::{Map, Value};

use equimatch::families::FamilyParams;
use equimatch::matching::{is_factor_critical, EquimatchabilityReport, Oracle, OracleError};
use equimatch::{Classification, Graph};

#[derive(Serialize)]
pub struct FamilyRecord {
    pub id: &'static str,
    pub params: Map<String, Value>,
}

impl FamilyRecord {
    pub fn new(p: &FamilyParams) -> Self {
        let params = p
            .assignment()
            .into_iter()
            .map(|(k, v)| (k.name().to_string(), Value::from(v)))
            .collect();
        FamilyRecord {
            id: p.family().token(),
            params,
        }
    }
}

#[derive(Serialize)]
pub struct RecognizeRecord {
    pub verdict: bool,
    pub branch: &'static str,
    pub family: Option<FamilyRecord>,
    pub reject_reason: Option<&'static str>,
    pub n: usize,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
}

impl RecognizeRecord {
    pub fn new(g: &Graph, c: &Classification, index: Option<usize>) -> Self {
        RecognizeRecord {
            verdict: c.verdict,
            branch: c.branch.as_str(),
            family: c.family.as_ref().map(FamilyRecord::new),
            reject_reason: c.reject_reason.map(|r| r.as_str()),
            n: g.order(),
            m: g.size(),
            index,
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        if let Some(i) = self.index {
            out.push_str(&format!("{i}: "));
        }
        out.push_str(&format!("{} {}", self.verdict, self.branch));
        if let Some(f) = &self.family {
            out.push_str(&format!(" {}", label(f.id, &f.params)));
        }
        if let Some(r) = self.reject_reason {
            out.push_str(&format!(" {r}"));
        }
        out.push_str(&format!(" order={} size={}", self.n, self.m));
        out
    }
}

#[derive(Serialize)]
pub struct VerifyRecord {
    pub equimatchable: bool,
    pub max_matching: usize,
    pub min_maximal_matching: usize,
    pub factor_critical: bool,
    pub triangle_free: bool,
    pub bipartite: bool,
    /// A maximal matching smaller than a maximum one.
    pub witness: Option<Vec<[usize; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
}

impl VerifyRecord {
    pub fn new(oracle: &Oracle, g: &Graph, index: Option<usize>) -> Result<Self, OracleError> {
        let EquimatchabilityReport {
            verdict,
            max_size,
            min_maximal_size,
            witness_small,
        } = oracle.equimatchability(g)?;
        Ok(VerifyRecord {
            equimatchable: verdict,
            max_matching: max_size,
            min_maximal_matching: min_maximal_size,
            factor_critical: is_factor_critical(g),
            triangle_free: g.is_triangle_free(),
            bipartite: g.is_bipartite(),
            witness: witness_small.map(|m| m.edges().iter().map(|&(u, v)| [u, v]).collect()),
            index,
        })
    }

    pub fn text(&self) -> String {
        let prefix = self.index.map(|i| format!("{i}: ")).unwrap_or_default();
        let witness = match &self.witness {
            Some(w) => {
                let edges: Vec<String> = w.iter().map(|[u, v]| format!("{u}-{v}")).collect();
                format!(" witness {}", edges.join(","))
            }
            None => String::new(),
        };
        format!(
            "{prefix}equimatchable={} max_matching={} min_maximal_matching={} factor_critical={} triangle_free={} bipartite={}{witness}",
            self.equimatchable,
            self.max_matching,
            self.min_maximal_matching,
            self.factor_critical,
            self.triangle_free,
            self.bipartite,
        )
    }
}

#[derive(Serialize)]
pub struct EnumerateRecord {
    pub family: &'static str,
    pub params: Map<String, Value>,
    pub graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_equimatchable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor_critical: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangle_free: Option<bool>,
}

impl EnumerateRecord {
    pub fn new(p: &FamilyParams, graph6: String) -> Self {
        let FamilyRecord { id, params } = FamilyRecord::new(p);
        EnumerateRecord {
            family: id,
            params,
            graph6,
            oracle_equimatchable: None,
            factor_critical: None,
            triangle_free: None,
        }
    }

    /// Whether every oracle field that is present is true.
    pub fn passes(&self) -> bool {
        [self.oracle_equimatchable, self.factor_critical, self.triangle_free]
            .into_iter()
            .all(|f| f != Some(false))
    }

    pub fn text(&self) -> String {
        let mut out = format!("{} {}", label(self.family, &self.params), self.graph6);
        for (name, v) in [
            ("oracle_equimatchable", self.oracle_equimatchable),
            ("factor_critical", self.factor_critical),
            ("triangle_free", self.triangle_free),
        ] {
            if let Some(v) = v {
                out.push_str(&format!(" {name}={v}"));
            }
        }
        out
    }
}

/// `f3(n=1, r=1, s=1)`, or the bare token for parameterless families.
fn label(id: &str, params: &Map<String, Value>) -> String {
    if params.is_empty() {
        return id.to_string();
    }
    let parts: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{id}({})", parts.join(", "))
}
