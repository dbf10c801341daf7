//! Oriented link diagrams, framed links and decision procedures for which
//! links occur as regular fibers and singular sets of generic maps from
//! 3-manifolds to surfaces.

pub mod diagram;
pub mod format;
pub mod framed;
pub mod invariants;
pub mod obstruction;
pub mod realizability;

pub use diagram::{ArcId, ComponentId, LinkDiagram, Sign};
pub use format::{parse_diagram, parse_document, Document, ParseError};
pub use framed::{FramedLink, LabeledScene, Role};
