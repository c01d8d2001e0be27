//! Modular decomposition of graphs and optimal prime extensions.
//!
//! A graph is prime when it has at least four vertices and no module other
//! than the empty set, singletons and the whole vertex set. This crate
//! computes the fewest vertices that must be added to a graph to make it
//! prime, and builds such an extension.
//!
//! ```
//! use primebound::{build_prime_extension, prime_bound, Graph};
//!
//! let g = Graph::empty(4);
//! assert_eq!(prime_bound(&g).unwrap().p, 3);
//! let ext = build_prime_extension(&g).unwrap();
//! assert!(primebound::is_prime(&ext.h));
//! ```

pub mod bound;
pub mod builder;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod moddecomp;
pub mod oracle;
mod vertex_set;

#[cfg(test)]
mod testing;

pub use bound::{
    brignall_bound_check, ceil_log2, modular_numbers, prime_bound, BoundCase, BoundCertificate,
    ModularNumbers,
};
pub use builder::{
    build_m1_extension, build_mainone_extension, build_power_extension, build_prime_extension,
    build_stable_stable_gadget, check_2xstable, prime_one_extension_neighborhoods, ExtensionReport,
    ExtensionResult, Trace,
};
pub use error::{Error, Result};
pub use families::{
    compute_families, max_families, minimal_modules, sabidussi_classes, FamilyReport,
};
pub use graph::Graph;
pub use io::{parse_graph, write_edge_list, write_graph6, Format};
pub use moddecomp::{is_module, is_prime, strong_module_tree, NodeKind, StrongModuleTree};
pub use oracle::{verify_extension, OracleBudget, Verification};
pub use vertex_set::VertexSet;
