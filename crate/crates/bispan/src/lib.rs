//! Bispanning graphs and their unique exchange graphs.

pub mod bispanning;
pub mod catalog;
pub mod compose;
pub mod enumerate;
pub mod exchange;
pub mod format;
pub mod game;
pub mod graph;
pub mod ordering;
pub mod par;
pub mod unionfind;

pub use bispanning::{find_two_trees, BispanError, Color, Coloring, Side, TreePair};
pub use graph::{EdgeSet, GraphError, MultiGraph};
pub use par::Exec;
