//! Triangle-free equimatchable graphs: thirteen structural families plus
//! `C5` and `C7`, a linear-time recognizer for non-bipartite inputs, and an
//! exhaustive matching oracle used to cross-check both.

pub mod families;
pub mod graph;
pub mod matching;
pub mod recognition;

pub use families::{FamilyError, FamilyId, FamilyParams, Param};
pub use graph::{Graph, GraphError, MultiplicityVector, TwinContraction};
pub use recognition::{classify, recognize_nonbipartite, Branch, Classification, RejectReason};
