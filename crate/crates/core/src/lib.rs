//! Computational group theory toolkit for transitive derangement questions in
//! the Steinberg triality group and small test groups.

pub mod actions;
pub mod classes;
pub mod data;
pub mod element;
pub mod error;
pub mod field;
pub mod group;
pub mod keys;
pub mod matrix;
pub mod perm;
pub mod pipeline;
pub mod report;
pub mod store;
pub mod suite;
pub mod triality;
pub mod unionfind;

pub use element::GroupElement;
pub use error::{Error, Result};
