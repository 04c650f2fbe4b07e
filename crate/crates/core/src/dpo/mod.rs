//! The rewriting engine: matching, pushout complements, the DPO step and
//! normalization.

mod complement;
mod connected;
mod matching;
mod normalize;
mod rule;
mod step;

use thiserror::Error;

use crate::cospan::CospanError;
use crate::hypergraph::GraphError;
use crate::term::TermError;

pub use complement::{boundary_complement, deletion_complement, enumerate_pushout_complements, Complement};
pub use connected::{is_left_connected, rule_connectivity, LeftConnectedReport, RuleConnectivity};
pub use matching::{find_matches, Match, MatchMode};
pub use normalize::{choose, normalize, RewriteStep, Strategy, Trace, DEFAULT_MAX_STEPS};
pub use rule::RewriteRule;
pub use step::{admissible_steps, apply_step, Candidate, StepMode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DpoError {
    #[error("rule interface mismatch: {0}")]
    InterfaceMismatch(String),
    #[error("convex step needs a convex match")]
    NotConvex,
    #[error("convex step needs a boundary complement")]
    NotBoundary,
    #[error("convex step produced a cospan that is not monogamous acyclic")]
    ResultNotMa,
    #[error("host is not monogamous acyclic")]
    HostNotMa,
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Cospan(#[from] CospanError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
