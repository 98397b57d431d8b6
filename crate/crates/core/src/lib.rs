//! Green index of subsemigroups of finite semigroups: relative Green's
//! relations, connector maps, rewriting, Schreier-type generators,
//! Schützenberger groups, presentations, the word problem, growth, and
//! automatic structures.

pub mod automatic;
pub mod blackbox;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod green;
pub mod growth;
pub mod io;
pub mod present;
pub mod rewrite;
pub mod schutz;
pub mod semigroup;

pub use error::{Error, Result};
pub use green::{connectors, rees_index, relative_green, ClassId, ConnectorTables, GreenData};
pub use semigroup::{validate_table, Elem, FiniteSemigroup, Homomorphism, SubSemigroup};
