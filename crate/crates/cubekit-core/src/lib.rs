//! Analysis of finite set systems and graphs through well-gradedness,
//! shattering, duality and the structure of their one-inclusion graphs,
//! together with an exhaustive small-instance verification harness.

pub mod caps;
pub mod classify;
pub mod duality;
pub mod error;
pub mod graphs;
pub mod json;
pub mod one_inclusion;
pub mod oracle;
pub mod set_system;
pub mod shattering;

pub use caps::Caps;
pub use classify::{ClassKind, ClassWitness, Classification, SemitreeWitness, Wing};
pub use duality::{DualPropertyFlags, DualSystem};
pub use error::{CoreError, Result};
pub use graphs::{
    Graph, HalfGraphDecomposition, HalfGraphOrientation, HalfGraphPair, NeighbourhoodFlags,
    TwinFlags,
};
pub use one_inclusion::{DistanceTable, Edge, OneInclusionGraph};
pub use oracle::{CheckBounds, CheckFailure, TheoremCheck};
pub use set_system::{ElementId, Member, SetSystem, MAX_DOMAIN};
pub use shattering::ShatterReport;
