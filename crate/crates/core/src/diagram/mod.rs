//! Oriented link diagrams in planar-diagram (PD) notation.
//!
//! A crossing is the quadruple `(a, b, c, d)` of arcs met counterclockwise,
//! starting at the incoming under-arc `a`; `c` is the outgoing under-arc.
//! The direction of the over-strand is not part of the quadruple: it is
//! recovered from how the arcs chain together along each component.
//!
//! Every [`LinkDiagram`] is kept in canonical form: arcs are numbered
//! `1..=N`, each component owns a consecutive range that increases along its
//! orientation, and components are labelled `1, 2, ...` in order of their
//! smallest arc.

mod build;
mod edit;
mod faces;
mod moves;
mod pd;

use std::fmt;

use serde::Serialize;

pub use edit::EditError;
pub use faces::Faces;
pub use moves::{random_move, Move, MoveError, MoveKind};
pub use pd::{PdCode, Violation};

pub(crate) use build::{Raw, RawCrossing};

/// Index of an arc, i.e. a strand segment between two consecutive crossings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ArcId(pub u32);

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One-based component label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ComponentId(pub u32);

impl ComponentId {
    pub fn from_index(index: usize) -> Self {
        ComponentId(index as u32 + 1)
    }

    pub fn index(self) -> usize {
        (self.0 as usize).saturating_sub(1)
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// Side of an oriented arc, looking along its direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A crossing of a validated diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    arcs: [ArcId; 4],
    /// Over-strand runs from slot `b` to slot `d`.
    over_forward: bool,
}

impl Crossing {
    pub fn arcs(&self) -> [ArcId; 4] {
        self.arcs
    }

    pub fn incoming_under(&self) -> ArcId {
        self.arcs[0]
    }

    pub fn outgoing_under(&self) -> ArcId {
        self.arcs[2]
    }

    pub fn incoming_over(&self) -> ArcId {
        if self.over_forward {
            self.arcs[1]
        } else {
            self.arcs[3]
        }
    }

    pub fn outgoing_over(&self) -> ArcId {
        if self.over_forward {
            self.arcs[3]
        } else {
            self.arcs[1]
        }
    }

    /// True when the over-strand leaves through `d`.
    pub fn over_forward(&self) -> bool {
        self.over_forward
    }

    /// Right-handed crossings are positive: the over-strand enters through
    /// `d` and leaves through `b`.
    pub fn sign(&self) -> Sign {
        if self.over_forward {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub(crate) fn is_incoming_slot(&self, pos: usize) -> bool {
        match pos {
            0 => true,
            1 => self.over_forward,
            3 => !self.over_forward,
            _ => false,
        }
    }
}

/// Position of an arc endpoint: crossing index and slot `0..4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Slot {
    pub crossing: usize,
    pub pos: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct ArcEnds {
    tail: Slot,
    head: Slot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct ComponentRange {
    first: u32,
    len: u32,
    crossingless: bool,
}

/// A validated, canonically numbered oriented link diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    /// Sorted by incoming under-arc.
    crossings: Vec<Crossing>,
    components: Vec<ComponentRange>,
    /// Indexed by `arc - 1`.
    arc_component: Vec<usize>,
    ends: Vec<Option<ArcEnds>>,
}

impl LinkDiagram {
    /// The diagram with no components.
    pub fn empty() -> Self {
        LinkDiagram {
            crossings: Vec::new(),
            components: Vec::new(),
            arc_component: Vec::new(),
            ends: Vec::new(),
        }
    }

    /// `n` split unknots.
    pub fn unlink(n: usize) -> Self {
        let mut raw = Raw::default();
        for i in 0..n {
            let token = i as u32 + 1;
            raw.unknots.push(token);
            raw.keys.insert(token, i as u64);
        }
        raw.build()
    }

    /// Validates a PD code and brings it into canonical form.
    pub fn from_pd(code: &PdCode) -> Result<Self, Vec<Violation>> {
        code.to_raw().map(Raw::build)
    }

    pub fn to_pd(&self) -> PdCode {
        PdCode {
            crossings: self.crossings.iter().map(|c| c.arcs.map(|a| a.0)).collect(),
            unknots: self
                .components
                .iter()
                .filter(|c| c.crossingless)
                .map(|c| c.first)
                .collect(),
        }
    }

    /// Re-checks every diagram invariant. Empty for any diagram built by this
    /// crate.
    pub fn validate(&self) -> Vec<Violation> {
        self.to_pd().validate()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_component.len()
    }

    pub fn component_ids(&self) -> impl Iterator<Item = ComponentId> + '_ {
        (0..self.components.len()).map(ComponentId::from_index)
    }

    pub fn has_component(&self, comp: ComponentId) -> bool {
        comp.0 >= 1 && comp.index() < self.components.len()
    }

    /// Arcs of a component in traversal order.
    pub fn component_arcs(&self, comp: ComponentId) -> Vec<ArcId> {
        let range = self.components[comp.index()];
        (range.first..range.first + range.len).map(ArcId).collect()
    }

    /// True for a component declared as a crossingless split unknot.
    pub fn is_crossingless(&self, comp: ComponentId) -> bool {
        self.components[comp.index()].crossingless
    }

    pub fn component_of(&self, arc: ArcId) -> ComponentId {
        ComponentId::from_index(self.arc_component[arc.0 as usize - 1])
    }

    pub fn contains_arc(&self, arc: ArcId) -> bool {
        arc.0 >= 1 && (arc.0 as usize) <= self.arc_component.len()
    }

    /// Next arc along the component's orientation.
    pub fn successor(&self, arc: ArcId) -> ArcId {
        let range = self.components[self.arc_component[arc.0 as usize - 1]];
        if arc.0 + 1 == range.first + range.len {
            ArcId(range.first)
        } else {
            ArcId(arc.0 + 1)
        }
    }

    /// Component of the under-strand at crossing `k`.
    pub fn under_component(&self, k: usize) -> ComponentId {
        self.component_of(self.crossings[k].arcs[0])
    }

    pub fn over_component(&self, k: usize) -> ComponentId {
        self.component_of(self.crossings[k].arcs[1])
    }

    /// Sign of a crossing under the right-hand rule: `+1` when the
    /// over-strand enters through `d` and leaves through `b`.
    pub fn crossing_sign(&self, crossing: &Crossing) -> Sign {
        crossing.sign()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign().value()).sum()
    }

    /// Slot where `arc` ends, `None` for crossingless components.
    pub(crate) fn head(&self, arc: ArcId) -> Option<Slot> {
        self.ends[arc.0 as usize - 1].map(|e| e.head)
    }

    pub(crate) fn tail(&self, arc: ArcId) -> Option<Slot> {
        self.ends[arc.0 as usize - 1].map(|e| e.tail)
    }

    pub(crate) fn arc_at(&self, slot: Slot) -> ArcId {
        self.crossings[slot.crossing].arcs[slot.pos]
    }

    /// Tokens equal arc ids; keys preserve the current component order.
    pub(crate) fn to_raw(&self) -> Raw {
        let mut raw = Raw {
            crossings: self
                .crossings
                .iter()
                .map(|c| RawCrossing {
                    slots: c.arcs.map(|a| a.0),
                    over_forward: c.over_forward,
                })
                .collect(),
            ..Raw::default()
        };
        for (i, range) in self.components.iter().enumerate() {
            if range.crossingless {
                raw.unknots.push(range.first);
            }
            for a in range.first..range.first + range.len {
                raw.keys.insert(a, i as u64);
            }
        }
        raw
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_pd(self))
    }
}
