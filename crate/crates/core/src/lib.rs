//! Discrete mating of trees.
//!
//! Walks in the quarter plane are turned into planar maps by drawing the two
//! coordinate projections as facing lattice paths, joining them by rungs and
//! contracting both paths into trees. Specialising the step set and the way
//! oblique quadrilaterals are contracted yields a family of bijections between
//! walks and decorated planar maps, all of which are implemented in
//! [`bijections`] together with exhaustive counting oracles in [`counting`].

pub mod bijections;
pub mod counting;
pub mod error;
pub mod map;
pub mod mating;
pub mod render;
pub mod walks;
pub mod workbench;

pub use error::{Error, Result};
pub use map::{CombinatorialMap, Dart, DecoratedMap};
pub use mating::{mate, Boundary, ContractionRule, MatingDiagram};
pub use walks::{Family, Point, Step, StepAlphabet, Walk};
