//! Matching a twin-free quotient with multiplicities against the family
//! patterns.

use std::sync::OnceLock;

use super::linear::{LinExpr, System, PARAM_COUNT};
use super::{split_constraints, template_graph, FamilyError, FamilyId, FamilyParams};
use crate::graph::{isomorphisms, twin_contract, Graph};

/// Largest quotient order any template can produce.
pub const MAX_QUOTIENT_ORDER: usize = 11;

/// Outcome of matching one quotient against every family.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatchReport {
    /// Whether some family's template maps onto the quotient at all.
    pub any_map: bool,
    /// Matching parameter assignments in table order, then lexicographic.
    pub matches: Vec<FamilyParams>,
}

/// Every family member whose twin contraction is `h` with class sizes
/// `mults`.
pub fn match_multiplicities(h: &Graph, mults: &[usize]) -> Result<Vec<FamilyParams>, FamilyError> {
    Ok(match_report(h, mults, false)?.matches)
}

/// As [`match_multiplicities`], optionally keeping only the first match:
/// the lexicographically smallest assignment of the first family in table
/// order.
///
/// A template map sends each template vertex either to a vertex of `h` or
/// to "deleted". Vertices sharing an image are exactly the twins of the
/// template minus the deleted set, since `h` is twin-free, so each map is a
/// deletion set together with an isomorphism from the resulting twin
/// quotient onto `h`. The quotients per deletion set are cached.
pub fn match_report(h: &Graph, mults: &[usize], first_only: bool) -> Result<MatchReport, FamilyError> {
    if mults.len() != h.order() {
        return Err(FamilyError::LengthMismatch {
            expected: h.order(),
            got: mults.len(),
        });
    }
    if h.order() > MAX_QUOTIENT_ORDER {
        return Err(FamilyError::QuotientTooLarge(h.order()));
    }
    if twin_contract(h).quotient.order() != h.order() {
        return Err(FamilyError::NotTwinFree);
    }
    let mut report = MatchReport::default();
    if mults.contains(&0) {
        return Ok(report);
    }
    let key = Shape::of(h);
    for family in FamilyId::ALL {
        let mut found = Vec::new();
        for red in reductions(family).iter().filter(|r| r.shape == key) {
            let maps = isomorphisms(&red.quotient, h).expect("quotients are small");
            report.any_map |= !maps.is_empty();
            for iso in maps {
                let phi: Vec<usize> = red
                    .class_of
                    .iter()
                    .map(|&c| if c == DELETED { DELETED } else { iso[c] })
                    .collect();
                solve(family, &phi, mults, &mut found);
            }
        }
        found.sort_unstable();
        found.dedup();
        if first_only {
            // Symmetric parameter sets can describe the same graph; the
            // smallest keeps the report independent of vertex labels.
            found.truncate(1);
        }
        report.matches.extend(found.into_iter().map(|v| FamilyParams::from_values(family, v)));
        if first_only && !report.matches.is_empty() {
            break;
        }
    }
    Ok(report)
}

const DELETED: usize = usize::MAX;

/// Cheap isomorphism invariant used to skip most reductions.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Shape {
    order: usize,
    size: usize,
    degrees: Vec<usize>,
}

impl Shape {
    fn of(g: &Graph) -> Shape {
        let mut degrees: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
        degrees.sort_unstable();
        Shape {
            order: g.order(),
            size: g.size(),
            degrees,
        }
    }
}

/// The template with one admissible set of blocks removed, contracted.
struct Reduction {
    quotient: Graph,
    shape: Shape,
    /// Quotient vertex of each template vertex, or [`DELETED`].
    class_of: Vec<usize>,
}

fn reductions(family: FamilyId) -> &'static [Reduction] {
    static TABLE: OnceLock<Vec<Vec<Reduction>>> = OnceLock::new();
    &TABLE.get_or_init(|| FamilyId::ALL.iter().map(|&f| build_reductions(f)).collect())
        [family as usize]
}

fn build_reductions(family: FamilyId) -> Vec<Reduction> {
    let pattern = family.pattern();
    let t = template_graph(pattern.template);
    let k = t.order();
    let mut forced_in = 0u32;
    let mut optional = Vec::new();
    for (i, e) in pattern.mult_exprs.iter().enumerate() {
        match e.is_constant().then_some(e.constant) {
            Some(0) => {}
            Some(_) => forced_in |= 1 << i,
            None => optional.push(i),
        }
    }
    let mut out = Vec::new();
    for pick in 0u32..1 << optional.len() {
        let mut kept = forced_in;
        for (b, &i) in optional.iter().enumerate() {
            if pick >> b & 1 == 1 {
                kept |= 1 << i;
            }
        }
        if kept == 0 {
            continue;
        }
        let vertices: Vec<usize> = (0..k).filter(|&i| kept >> i & 1 == 1).collect();
        let sub = t.induced_subgraph(&vertices).expect("template vertices");
        let tc = twin_contract(&sub.graph);
        let mut class_of = vec![DELETED; k];
        for (local, &orig) in sub.original.iter().enumerate() {
            class_of[orig] = tc.class_of[local];
        }
        out.push(Reduction {
            shape: Shape::of(&tc.quotient),
            quotient: tc.quotient,
            class_of,
        });
    }
    out
}

/// Solves for the family parameters under the map `phi`.
fn solve(
    family: FamilyId,
    phi: &[usize],
    mults: &[usize],
    found: &mut Vec<[i64; PARAM_COUNT]>,
) {
    let pattern = family.pattern();
    let (mut eqs, mut ineqs) = split_constraints(pattern);
    let mut per_vertex = vec![LinExpr::default(); mults.len()];
    for (expr, &v) in pattern.mult_exprs.iter().zip(phi) {
        if v == DELETED {
            eqs.push(*expr);
        } else {
            per_vertex[v] = per_vertex[v].add(expr);
            ineqs.push(expr.sub(&LinExpr::constant(1)));
        }
    }
    for (sum, &m) in per_vertex.iter().zip(mults) {
        eqs.push(sum.sub(&LinExpr::constant(m as i64)));
    }
    let cap = mults.iter().sum::<usize>() as i64;
    let system = System::new(&pattern.params, &eqs, &ineqs, cap);
    system.solve(&mut |v| {
        found.push(*v);
        true
    });
}
