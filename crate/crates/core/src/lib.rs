//! String-diagram rewriting for symmetric monoidal theories, carried out as
//! convex double-pushout rewriting on interfaced Σ-hypergraphs.

pub mod cases;
pub mod cospan;
pub mod dot;
pub mod dpo;
pub mod hypergraph;
pub mod io;
pub mod iso;
pub mod signature;
pub mod term;

pub use cospan::{InterfacedCospan, MonogamyReport};
pub use hypergraph::{EdgeId, Homomorphism, Hypergraph, NodeId, SubgraphSelection};
pub use signature::{OpType, Signature};
pub use term::Term;
