//! Recognition of triangle-free equimatchable graphs.
//!
//! [`recognize_nonbipartite`] handles connected non-bipartite inputs in time
//! linear in `n + m`: twin contraction, a size check on the quotient, then a
//! constant-size template and multiplicity search. [`classify`] is total and
//! routes disconnected and bipartite inputs as well.

use std::fmt;

use thiserror::Error;

use crate::families::{match_report, FamilyParams, MAX_QUOTIENT_ORDER};
use crate::graph::{twin_contract, Graph, TwinContraction};
use crate::matching::{bipartite_equimatchable_lesk, OracleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognitionError {
    #[error("input graph is not connected")]
    Disconnected,
    #[error("input graph is bipartite")]
    Bipartite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    NonbipartiteFamily,
    BipartiteOutOfScope,
    BipartiteLeskChecked,
    Disconnected,
    Rejected,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::NonbipartiteFamily => "nonbipartite_family",
            Branch::BipartiteOutOfScope => "bipartite_out_of_scope",
            Branch::BipartiteLeskChecked => "bipartite_lesk_checked",
            Branch::Disconnected => "disconnected",
            Branch::Rejected => "rejected",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RejectReason {
    HasTriangle,
    NotConnected,
    QuotientTooLarge,
    NoTemplateIsomorphism,
    NoMultiplicityMatch,
    OracleNegative,
    /// Bipartite input whose smaller side has a vertex of degree above the
    /// Lesk guard; no verdict is claimed.
    BipartiteGuardExceeded,
}

impl RejectReason {
    pub fn as_str(self) -> &'static str {
        match self {
            RejectReason::HasTriangle => "has_triangle",
            RejectReason::NotConnected => "not_connected",
            RejectReason::QuotientTooLarge => "quotient_too_large",
            RejectReason::NoTemplateIsomorphism => "no_template_isomorphism",
            RejectReason::NoMultiplicityMatch => "no_multiplicity_match",
            RejectReason::OracleNegative => "oracle_negative",
            RejectReason::BipartiteGuardExceeded => "bipartite_guard_exceeded",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Verdict plus the route that produced it.
///
/// A true verdict on [`Branch::NonbipartiteFamily`] always carries the
/// family; a false verdict always carries a reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: bool,
    pub branch: Branch,
    pub family: Option<FamilyParams>,
    pub reject_reason: Option<RejectReason>,
    /// A triangle of the input when the reason is `has_triangle`.
    pub triangle: Option<[usize; 3]>,
}

impl Classification {
    fn accept(branch: Branch, family: Option<FamilyParams>) -> Self {
        Classification {
            verdict: true,
            branch,
            family,
            reject_reason: None,
            triangle: None,
        }
    }

    fn reject(branch: Branch, reason: RejectReason) -> Self {
        Classification {
            verdict: false,
            branch,
            family: None,
            reject_reason: Some(reason),
            triangle: None,
        }
    }
}

/// Decides whether a connected non-bipartite graph is triangle-free and
/// equimatchable, reporting the first matching family in table order.
pub fn recognize_nonbipartite(g: &Graph) -> Result<Classification, RecognitionError> {
    if !g.is_connected() {
        return Err(RecognitionError::Disconnected);
    }
    if g.is_bipartite() {
        return Err(RecognitionError::Bipartite);
    }
    Ok(recognize_contracted(&twin_contract(g)))
}

fn recognize_contracted(tc: &TwinContraction) -> Classification {
    if tc.quotient.order() > MAX_QUOTIENT_ORDER {
        return Classification::reject(Branch::Rejected, RejectReason::QuotientTooLarge);
    }
    let report = match_report(&tc.quotient, tc.mults.counts(), true)
        .expect("a twin quotient is twin-free and sized to its multiplicities");
    match report.matches.into_iter().next() {
        Some(p) => Classification::accept(Branch::NonbipartiteFamily, Some(p)),
        None if report.any_map => {
            Classification::reject(Branch::Rejected, RejectReason::NoMultiplicityMatch)
        }
        None => Classification::reject(Branch::Rejected, RejectReason::NoTemplateIsomorphism),
    }
}

/// Classifies any graph. Disconnected and bipartite inputs fall outside the
/// family characterization and are reported on their own branches.
pub fn classify(g: &Graph) -> Classification {
    if !g.is_connected() {
        return Classification::reject(Branch::Disconnected, RejectReason::NotConnected);
    }
    if g.is_bipartite() {
        return match bipartite_equimatchable_lesk(g) {
            Ok(true) => Classification::accept(Branch::BipartiteLeskChecked, None),
            Ok(false) => {
                Classification::reject(Branch::BipartiteLeskChecked, RejectReason::OracleNegative)
            }
            Err(OracleError::DegreeGuard { .. }) => Classification::reject(
                Branch::BipartiteOutOfScope,
                RejectReason::BipartiteGuardExceeded,
            ),
            Err(e) => unreachable!("connected bipartite input: {e}"),
        };
    }
    // Blocks are independent sets, so the input has a triangle exactly when
    // its quotient does; a quotient triangle lifts through representatives.
    let tc = twin_contract(g);
    if let Some(t) = tc.quotient.find_triangle() {
        let reps = tc.representatives();
        let mut c = Classification::reject(Branch::Rejected, RejectReason::HasTriangle);
        c.triangle = Some(t.map(|v| reps[v]));
        return c;
    }
    recognize_contracted(&tc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{instantiate, FamilyId, Param};
    use crate::graph::is_isomorphic_small;

    #[test]
    fn cycles() {
        let c5 = recognize_nonbipartite(&Graph::cycle(5)).unwrap();
        assert!(c5.verdict);
        assert_eq!(c5.family.unwrap().family(), FamilyId::C5);
        let c7 = classify(&Graph::cycle(7));
        assert_eq!(c7.family.unwrap().family(), FamilyId::C7);
        let c9 = classify(&Graph::cycle(9));
        assert!(!c9.verdict);
        assert_eq!(c9.branch, Branch::Rejected);
        assert_eq!(c9.reject_reason, Some(RejectReason::NoMultiplicityMatch));
    }

    #[test]
    fn petersen_rejected() {
        let c = recognize_nonbipartite(&Graph::petersen()).unwrap();
        assert!(!c.verdict);
        assert_eq!(c.reject_reason, Some(RejectReason::NoTemplateIsomorphism));
    }

    #[test]
    fn g21_certificate() {
        let p = FamilyParams::new(
            FamilyId::G21,
            &[(Param::N, 2), (Param::M, 3), (Param::R, 1), (Param::S, 1)],
        )
        .unwrap();
        let g = instantiate(&p);
        let c = recognize_nonbipartite(&g).unwrap();
        assert!(c.verdict);
        let back = instantiate(&c.family.unwrap());
        assert!(is_isomorphic_small(&back, &g).unwrap().is_some());
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            recognize_nonbipartite(&Graph::cycle(6)),
            Err(RecognitionError::Bipartite)
        );
        let two = Graph::cycle(5).disjoint_union(&Graph::cycle(5));
        assert_eq!(recognize_nonbipartite(&two), Err(RecognitionError::Disconnected));
        assert_eq!(recognize_nonbipartite(&Graph::empty(0)), Err(RecognitionError::Disconnected));
    }

    #[test]
    fn classify_routes() {
        let k4 = classify(&Graph::complete(4));
        assert_eq!(k4.reject_reason, Some(RejectReason::HasTriangle));
        let [a, b, c] = k4.triangle.unwrap();
        let g = Graph::complete(4);
        assert!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c));

        let k33 = classify(&Graph::complete_bipartite(3, 3));
        assert_eq!((k33.verdict, k33.branch), (true, Branch::BipartiteLeskChecked));

        let p4 = classify(&Graph::path(4));
        assert_eq!(p4.reject_reason, Some(RejectReason::OracleNegative));

        let two = classify(&Graph::cycle(5).disjoint_union(&Graph::cycle(5)));
        assert_eq!(two.branch, Branch::Disconnected);
        assert_eq!(two.reject_reason, Some(RejectReason::NotConnected));

        let star = classify(&Graph::complete_bipartite(1, 20));
        assert_eq!((star.verdict, star.branch), (true, Branch::BipartiteLeskChecked));
        let big = classify(&Graph::complete_bipartite(21, 21));
        assert_eq!(big.branch, Branch::BipartiteOutOfScope);
        assert_eq!(big.reject_reason, Some(RejectReason::BipartiteGuardExceeded));
    }

    #[test]
    fn triangle_in_blown_up_input() {
        // K3 with every vertex doubled; the quotient is K3.
        let g = crate::graph::blow_up(
            &Graph::complete(3),
            &crate::graph::MultiplicityVector::new(vec![2, 2, 2]).unwrap(),
        )
        .unwrap();
        let c = classify(&g);
        let [a, b, x] = c.triangle.unwrap();
        assert!(g.has_edge(a, b) && g.has_edge(b, x) && g.has_edge(a, x));
    }
}
