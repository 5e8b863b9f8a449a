//! The two twin-free templates and the fifteen multiplicity patterns built
//! on them: `C5`, `C7`, the six one-component families `F*` and the seven
//! two-component families `G*`.

mod linear;
mod matcher;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::graph::{blow_up, Graph, MultiplicityVector};

pub use linear::{Constraint, LinExpr, Param, Relation, PARAM_COUNT};
pub use matcher::{match_multiplicities, match_report, MatchReport, MAX_QUOTIENT_ORDER};

/// Largest `max_vertices` accepted by [`enumerate_members`].
pub const ENUMERATION_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("family {family} needs parameter {param}")]
    MissingParameter { family: FamilyId, param: Param },
    #[error("family {family} has no parameter {param}")]
    UnexpectedParameter { family: FamilyId, param: String },
    #[error("family {family}: constraint {constraint} violated")]
    ConstraintViolated {
        family: FamilyId,
        constraint: &'static str,
    },
    #[error("family {family}: multiplicity of u{vertex} ({expr}) is negative")]
    NegativeMultiplicity {
        family: FamilyId,
        vertex: usize,
        expr: &'static str,
    },
    #[error("max_vertices {0} exceeds the enumeration limit {ENUMERATION_LIMIT}")]
    EnumerationLimit(usize),
    #[error("graph is not twin-free")]
    NotTwinFree,
    #[error("quotient has {0} vertices, more than {MAX_QUOTIENT_ORDER}")]
    QuotientTooLarge(usize),
    #[error("expected {expected} multiplicities, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TemplateId {
    G1,
    G2,
}

impl TemplateId {
    pub fn order(self) -> usize {
        match self {
            TemplateId::G1 => 7,
            TemplateId::G2 => 11,
        }
    }

    /// Edges between labels `u1..uk`, 1-based.
    fn labeled_edges(self) -> &'static [(usize, usize)] {
        match self {
            TemplateId::G1 => &[(1, 7), (7, 6), (6, 5), (5, 4), (4, 3), (3, 2), (2, 1)],
            TemplateId::G2 => &[
                (1, 2),
                (1, 6),
                (2, 3),
                (2, 5),
                (3, 4),
                (4, 5),
                (4, 8),
                (4, 9),
                (5, 6),
                (6, 7),
                (7, 8),
                (7, 11),
                (8, 10),
                (9, 10),
                (10, 11),
            ],
        }
    }
}

impl fmt::Display for TemplateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TemplateId::G1 => "G1",
            TemplateId::G2 => "G2",
        })
    }
}

/// Template graph with `u_i` as vertex `i - 1`.
pub fn template_graph(t: TemplateId) -> Graph {
    Graph::from_edges(t.order(), t.labeled_edges().iter().map(|&(a, b)| (a - 1, b - 1)))
        .expect("template edge lists are valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    C5,
    C7,
    F11,
    F12,
    F21,
    F22,
    F3,
    F4,
    G11,
    G12,
    G21,
    G22,
    G23,
    G31,
    G32,
}

impl FamilyId {
    /// Table order, which is also the reporting order of recognition.
    pub const ALL: [FamilyId; 15] = [
        FamilyId::C5,
        FamilyId::C7,
        FamilyId::F11,
        FamilyId::F12,
        FamilyId::F21,
        FamilyId::F22,
        FamilyId::F3,
        FamilyId::F4,
        FamilyId::G11,
        FamilyId::G12,
        FamilyId::G21,
        FamilyId::G22,
        FamilyId::G23,
        FamilyId::G31,
        FamilyId::G32,
    ];

    pub fn token(self) -> &'static str {
        match self {
            FamilyId::C5 => "c5",
            FamilyId::C7 => "c7",
            FamilyId::F11 => "f11",
            FamilyId::F12 => "f12",
            FamilyId::F21 => "f21",
            FamilyId::F22 => "f22",
            FamilyId::F3 => "f3",
            FamilyId::F4 => "f4",
            FamilyId::G11 => "g11",
            FamilyId::G12 => "g12",
            FamilyId::G21 => "g21",
            FamilyId::G22 => "g22",
            FamilyId::G23 => "g23",
            FamilyId::G31 => "g31",
            FamilyId::G32 => "g32",
        }
    }

    pub fn pattern(self) -> &'static FamilyPattern {
        &patterns()[self as usize]
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for FamilyId {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let lower = s.to_ascii_lowercase();
        FamilyId::ALL
            .into_iter()
            .find(|f| f.token() == lower)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

/// One family: a template, a multiplicity expression per template vertex,
/// and the parameter constraints.
#[derive(Clone, Debug)]
pub struct FamilyPattern {
    pub id: FamilyId,
    pub template: TemplateId,
    pub params: Vec<Param>,
    pub mult_exprs: Vec<LinExpr>,
    pub mult_text: Vec<&'static str>,
    pub constraints: Vec<Constraint>,
}

type Row = (FamilyId, TemplateId, &'static str, &'static str, &'static [&'static str]);

/// Multiplicities are listed for `u1, u2, ...` in order.
const TABLE: [Row; 15] = [
    (FamilyId::C5, TemplateId::G2, "", "0,0,0,1,1,1,1,1,0,0,0", &[]),
    (FamilyId::C7, TemplateId::G1, "", "1,1,1,1,1,1,1", &[]),
    (FamilyId::F11, TemplateId::G2, "n", "n,n,0,1,1,1,1,1,0,0,0", &["n>=1"]),
    (FamilyId::F12, TemplateId::G1, "n", "n,n,1,1,1,1,1", &["n>=2"]),
    (
        FamilyId::F21,
        TemplateId::G2,
        "n r s",
        "r,n,s,1,n+1-r-s,1,1,1,0,0,0",
        &["n>=2", "r>=1", "r<=n-1", "s>=1", "s<=n-1"],
    ),
    (
        FamilyId::F22,
        TemplateId::G1,
        "n r",
        "n,r,1,1,1,1,n-r+1",
        &["n>=2", "r>=1", "r<=n"],
    ),
    (
        FamilyId::F3,
        TemplateId::G2,
        "n r s",
        "0,0,0,1,1,1,r,s,0,n+1-r,n+1-s",
        &["n>=1", "r>=1", "r<=n", "s>=1", "s<=n"],
    ),
    (
        FamilyId::F4,
        TemplateId::G2,
        "n r s",
        "0,0,0,1,1,r,n+1,s,0,0,n+2-r-s",
        &["n>=2", "r>=2", "r<=n-2", "s>=2", "s<=n-2"],
    ),
    (FamilyId::G11, TemplateId::G1, "n m", "n,n,1,m,m,1,1", &["n>=2", "m>=2"]),
    (
        FamilyId::G12,
        TemplateId::G1,
        "n m r",
        "n,r,1,m,m,1,n-r+1",
        &["n>=2", "r>=1", "r<=n", "m>=2"],
    ),
    (
        FamilyId::G21,
        TemplateId::G2,
        "n m r s",
        "r,n,s,1,n+1-r-s,1,1,1,0,m,m",
        &["n>=1", "m>=1", "r>=1", "r<=n-1", "s>=1", "s<=n-1", "r+s=n"],
    ),
    (
        FamilyId::G22,
        TemplateId::G2,
        "n m k l",
        "n,n,0,1,1,1,k,l,0,m+1-k,m+1-l",
        &["n>=1", "m>=1", "k>=1", "k<=m", "l>=1", "l<=m", "k+l=m"],
    ),
    (
        FamilyId::G23,
        TemplateId::G2,
        "n m r s",
        "n,n,0,1,1,r,m,s,0,0,m+1-r-s",
        &["n>=1", "m>=2", "r>=2", "r<=m-2", "s>=2", "s<=m-2", "r+s=m"],
    ),
    (
        FamilyId::G31,
        TemplateId::G2,
        "n m r s k l",
        "r,n,s,1,n+1-r-s,1,1,m+1-k-l,l,m,k",
        &[
            "n>=1", "r>=1", "r<=n-1", "s>=1", "s<=n-1", "r+s=n", "m>=1", "k>=1", "k<=m-1", "l>=1",
            "l<=m-1", "k+l=m",
        ],
    ),
    (
        FamilyId::G32,
        TemplateId::G2,
        "n m r s k l",
        "r,n,s,1,n+1-r-s,1,k,l,0,m+1-k,m+1-l",
        &[
            "n>=1", "r>=1", "r<=n-1", "s>=1", "s<=n-1", "r+s=n", "m>=1", "k>=1", "k<=m", "l>=1",
            "l<=m", "k+l=m",
        ],
    ),
];

/// The pattern table, in [`FamilyId::ALL`] order.
pub fn patterns() -> &'static [FamilyPattern] {
    static PATTERNS: OnceLock<Vec<FamilyPattern>> = OnceLock::new();
    PATTERNS.get_or_init(|| {
        TABLE
            .iter()
            .map(|&(id, template, params, mults, constraints)| {
                let mult_text: Vec<&'static str> = mults.split(',').collect();
                assert_eq!(mult_text.len(), template.order(), "{id}: wrong vector length");
                FamilyPattern {
                    id,
                    template,
                    params: params
                        .split_whitespace()
                        .map(|p| Param::from_name(p).expect("known parameter"))
                        .collect(),
                    mult_exprs: mult_text
                        .iter()
                        .map(|e| LinExpr::parse(e).expect("valid multiplicity expression"))
                        .collect(),
                    mult_text,
                    constraints: constraints
                        .iter()
                        .map(|c| Constraint::parse(c).expect("valid constraint"))
                        .collect(),
                }
            })
            .collect()
    })
}

impl FamilyPattern {
    /// First violated constraint or negative multiplicity, if any.
    fn check(&self, values: &[i64; PARAM_COUNT]) -> Result<(), FamilyError> {
        if let Some(c) = self.constraints.iter().find(|c| !c.holds(values)) {
            return Err(FamilyError::ConstraintViolated {
                family: self.id,
                constraint: c.text,
            });
        }
        if let Some(i) = self.mult_exprs.iter().position(|e| e.eval(values) < 0) {
            return Err(FamilyError::NegativeMultiplicity {
                family: self.id,
                vertex: i + 1,
                expr: self.mult_text[i],
            });
        }
        Ok(())
    }

    /// Sum of all multiplicities.
    pub fn vertex_count_expr(&self) -> LinExpr {
        self.mult_exprs.iter().fold(LinExpr::default(), |acc, e| acc.add(e))
    }
}

/// A family together with a parameter assignment satisfying its
/// constraints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    family: FamilyId,
    values: [i64; PARAM_COUNT],
}

impl FamilyParams {
    pub fn new(family: FamilyId, assignment: &[(Param, usize)]) -> Result<Self, FamilyError> {
        let pattern = family.pattern();
        let mut values = [0i64; PARAM_COUNT];
        let mut seen = [false; PARAM_COUNT];
        for &(p, v) in assignment {
            if !pattern.params.contains(&p) {
                return Err(FamilyError::UnexpectedParameter {
                    family,
                    param: p.name().to_string(),
                });
            }
            values[p.index()] = v as i64;
            seen[p.index()] = true;
        }
        if let Some(&p) = pattern.params.iter().find(|p| !seen[p.index()]) {
            return Err(FamilyError::MissingParameter { family, param: p });
        }
        pattern.check(&values)?;
        Ok(FamilyParams { family, values })
    }

    /// Parses `key=value` tokens such as `["n=3", "r=1"]`.
    pub fn from_tokens<S: AsRef<str>>(family: FamilyId, tokens: &[S]) -> Result<Self, FamilyError> {
        let mut assignment = Vec::new();
        for t in tokens {
            let t = t.as_ref();
            let bad = || FamilyError::UnexpectedParameter {
                family,
                param: t.to_string(),
            };
            let (k, v) = t.split_once('=').ok_or_else(bad)?;
            let p = Param::from_name(k.trim()).ok_or_else(bad)?;
            let v: usize = v.trim().parse().map_err(|_| bad())?;
            assignment.push((p, v));
        }
        FamilyParams::new(family, &assignment)
    }

    /// Caller has checked the constraints.
    pub(crate) fn from_values(family: FamilyId, values: [i64; PARAM_COUNT]) -> Self {
        debug_assert!(family.pattern().check(&values).is_ok());
        let mut v = [0; PARAM_COUNT];
        for p in &family.pattern().params {
            v[p.index()] = values[p.index()];
        }
        FamilyParams { family, values: v }
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn get(&self, p: Param) -> Option<usize> {
        self.family
            .pattern()
            .params
            .contains(&p)
            .then(|| self.values[p.index()] as usize)
    }

    /// Declared parameters with their values, in canonical order.
    pub fn assignment(&self) -> Vec<(Param, usize)> {
        self.family
            .pattern()
            .params
            .iter()
            .map(|&p| (p, self.values[p.index()] as usize))
            .collect()
    }

    /// Evaluated multiplicity of every template vertex.
    pub fn multiplicities(&self) -> MultiplicityVector {
        let counts = self
            .family
            .pattern()
            .mult_exprs
            .iter()
            .map(|e| e.eval(&self.values) as usize)
            .collect();
        MultiplicityVector::new(counts).expect("every pattern has a constant-one vertex")
    }

    pub fn vertex_count(&self) -> usize {
        self.multiplicities().total()
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        let a = self.assignment();
        if !a.is_empty() {
            let parts: Vec<String> = a.iter().map(|(p, v)| format!("{p}={v}")).collect();
            write!(f, "({})", parts.join(", "))?;
        }
        Ok(())
    }
}

/// Blow-up of the family's template by the evaluated multiplicities.
pub fn instantiate(p: &FamilyParams) -> Graph {
    let template = template_graph(p.family.pattern().template);
    blow_up(&template, &p.multiplicities()).expect("multiplicity vector matches template")
}

/// All members with at most `max_vertices` vertices, in lexicographic order
/// of `(n, m, r, s, k, l)`.
pub fn enumerate_members(
    family: FamilyId,
    max_vertices: usize,
) -> Result<Vec<(FamilyParams, Graph)>, FamilyError> {
    if max_vertices > ENUMERATION_LIMIT {
        return Err(FamilyError::EnumerationLimit(max_vertices));
    }
    let pattern = family.pattern();
    let (eqs, mut ineqs) = split_constraints(pattern);
    ineqs.extend(pattern.mult_exprs.iter().copied());
    ineqs.push(LinExpr::constant(max_vertices as i64).sub(&pattern.vertex_count_expr()));
    let system = linear::System::new(&pattern.params, &eqs, &ineqs, max_vertices as i64);
    let mut found = Vec::new();
    system.solve(&mut |v| {
        found.push(*v);
        true
    });
    found.sort_unstable();
    Ok(found
        .into_iter()
        .map(|v| {
            let p = FamilyParams::from_values(family, v);
            let g = instantiate(&p);
            (p, g)
        })
        .collect())
}

/// Every member of every family up to `max_vertices`, family by family.
pub fn enumerate_all(max_vertices: usize) -> Result<Vec<(FamilyParams, Graph)>, FamilyError> {
    let mut out = Vec::new();
    for f in FamilyId::ALL {
        out.extend(enumerate_members(f, max_vertices)?);
    }
    Ok(out)
}

fn split_constraints(pattern: &FamilyPattern) -> (Vec<LinExpr>, Vec<LinExpr>) {
    let mut eqs = Vec::new();
    let mut ineqs = Vec::new();
    for c in &pattern.constraints {
        match c.relation {
            Relation::Zero => eqs.push(c.expr),
            Relation::NonNegative => ineqs.push(c.expr),
        }
    }
    (eqs, ineqs)
}
