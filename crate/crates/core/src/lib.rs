//! Structural identifiability of linear dynamic networks and the design of
//! excitation and measurement sets from disjoint pseudotree coverings.

pub mod allocation;
pub mod charmatrix;
pub mod dual;
pub mod error;
mod flow;
pub mod graph;
pub mod ident;
pub mod merge;
pub mod model;
pub mod oracle;
pub mod pseudotree;

pub use allocation::{allocate, AllocationResult};
pub use charmatrix::{odot, CharEntry, CharMatrix};
pub use dual::{select_measurements, DualModelSet, MeasurementResult};
pub use error::{AllocationError, CoverError, GraphError, ModelError, OracleError};
pub use graph::{DiGraph, Edge, VertexId};
pub use ident::{check_generic_identifiability, check_with_excitations, IdentReport};
pub use merge::{greedy_merge, matrix_only_merge, MergeStep};
pub use model::{EntryStatus, ExtendedGraph, ModelSet};
pub use pseudotree::{Covering, Pseudotree};
