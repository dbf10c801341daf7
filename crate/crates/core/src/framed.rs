//! Framed links and labelled scenes.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{ComponentId, LinkDiagram};
use crate::format::Document;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Fiber,
    Singular,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Fiber => "fiber",
            Role::Singular => "singular",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FramingError {
    #[error("component {0} has no framing")]
    MissingFraming(ComponentId),
    #[error("component {0} has no role")]
    MissingRole(ComponentId),
    #[error("singular component {0} must not carry a framing")]
    FramedSingular(ComponentId),
    #[error("unknown component {0}")]
    UnknownComponent(ComponentId),
    #[error("expected {expected} framings, found {found}")]
    FramingCount { expected: usize, found: usize },
}

/// A diagram with one integer framing per component: the linking number of
/// the component with its framed push-off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedLink {
    diagram: LinkDiagram,
    framings: Vec<i64>,
}

impl FramedLink {
    pub fn new(diagram: LinkDiagram, framings: Vec<i64>) -> Result<Self, FramingError> {
        if framings.len() != diagram.component_count() {
            return Err(FramingError::FramingCount {
                expected: diagram.component_count(),
                found: framings.len(),
            });
        }
        Ok(FramedLink { diagram, framings })
    }

    /// Requires a framing for every component; roles are ignored.
    pub fn from_document(doc: &Document) -> Result<Self, FramingError> {
        let framings = doc
            .diagram
            .component_ids()
            .map(|c| doc.framings.get(&c).copied().ok_or(FramingError::MissingFraming(c)))
            .collect::<Result<Vec<_>, _>>()?;
        FramedLink::new(doc.diagram.clone(), framings)
    }

    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn framing(&self, comp: ComponentId) -> Option<i64> {
        self.framings.get(comp.index()).copied().filter(|_| comp.0 >= 1)
    }

    pub fn component_count(&self) -> usize {
        self.framings.len()
    }

    pub fn with_framing(&self, comp: ComponentId, framing: i64) -> Result<Self, FramingError> {
        if !self.diagram.has_component(comp) {
            return Err(FramingError::UnknownComponent(comp));
        }
        let mut out = self.clone();
        out.framings[comp.index()] = framing;
        Ok(out)
    }

    /// Replaces the diagram by an isotopic one with the same component
    /// labels, keeping framings.
    pub fn with_diagram(&self, diagram: LinkDiagram) -> Result<Self, FramingError> {
        FramedLink::new(diagram, self.framings.clone())
    }

    pub fn to_document(&self) -> Document {
        let mut doc = Document::new(self.diagram.clone());
        for (i, &f) in self.framings.iter().enumerate() {
            doc.framings.insert(ComponentId::from_index(i), f);
        }
        doc
    }
}

/// One diagram whose components are split into framed fiber components and
/// unoriented singular components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledScene {
    diagram: LinkDiagram,
    roles: Vec<Role>,
    framings: BTreeMap<ComponentId, i64>,
}

impl LabeledScene {
    pub fn new(
        diagram: LinkDiagram,
        roles: Vec<Role>,
        framings: BTreeMap<ComponentId, i64>,
    ) -> Result<Self, FramingError> {
        if roles.len() != diagram.component_count() {
            let missing = ComponentId::from_index(roles.len().min(diagram.component_count()));
            return Err(FramingError::MissingRole(missing));
        }
        for &c in framings.keys() {
            if !diagram.has_component(c) {
                return Err(FramingError::UnknownComponent(c));
            }
            if roles[c.index()] == Role::Singular {
                return Err(FramingError::FramedSingular(c));
            }
        }
        for (i, r) in roles.iter().enumerate() {
            let c = ComponentId::from_index(i);
            if *r == Role::Fiber && !framings.contains_key(&c) {
                return Err(FramingError::MissingFraming(c));
            }
        }
        Ok(LabeledScene {
            diagram,
            roles,
            framings,
        })
    }

    pub fn from_document(doc: &Document) -> Result<Self, FramingError> {
        let roles = doc
            .diagram
            .component_ids()
            .map(|c| doc.roles.get(&c).copied().ok_or(FramingError::MissingRole(c)))
            .collect::<Result<Vec<_>, _>>()?;
        LabeledScene::new(doc.diagram.clone(), roles, doc.framings.clone())
    }

    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn role(&self, comp: ComponentId) -> Role {
        self.roles[comp.index()]
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn fiber_components(&self) -> Vec<ComponentId> {
        self.components_with(Role::Fiber)
    }

    pub fn singular_components(&self) -> Vec<ComponentId> {
        self.components_with(Role::Singular)
    }

    fn components_with(&self, role: Role) -> Vec<ComponentId> {
        self.diagram
            .component_ids()
            .filter(|&c| self.roles[c.index()] == role)
            .collect()
    }

    pub fn framing(&self, comp: ComponentId) -> Option<i64> {
        self.framings.get(&comp).copied()
    }

    /// The fiber components as a framed link, relabelled `1..` in order.
    /// `None` when there are no fiber components.
    pub fn fiber(&self) -> Option<FramedLink> {
        let fibers = self.fiber_components();
        if fibers.is_empty() {
            return None;
        }
        let diagram = self.diagram.sublink(&fibers).ok()?;
        let framings = fibers.iter().map(|c| self.framings[c]).collect();
        FramedLink::new(diagram, framings).ok()
    }

    /// Same roles and framings on an isotopic diagram with the same labels.
    pub fn with_diagram(&self, diagram: LinkDiagram) -> Result<Self, FramingError> {
        LabeledScene::new(diagram, self.roles.clone(), self.framings.clone())
    }

    pub fn to_document(&self) -> Document {
        let mut doc = Document::new(self.diagram.clone());
        doc.framings = self.framings.clone();
        for (i, &r) in self.roles.iter().enumerate() {
            doc.roles.insert(ComponentId::from_index(i), r);
        }
        doc
    }
}
