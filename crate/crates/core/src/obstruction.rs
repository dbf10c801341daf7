//! The relative obstruction class `w₂(S³, L)` of a framed link, encoded by
//! its values `a_s ∈ ℤ₂` on the components.
//!
//! For a component `K` of a diagram with projection crossing count `c(K)`
//! and vertical twisting `t_v(K)` of the framing against the standard
//! framing of ℝ³, `a = t_v(K) + c(K) + 1 (mod 2)`. In blackboard terms
//! `t_v(K) ≡ framing − w(K)` and `c(K) ≡ w(K)` modulo 2, where `w(K)` is the
//! self-writhe, so the class reduces to `framing + 1 (mod 2)`. No geometric
//! framing field is ever needed.

use serde::Serialize;

use crate::diagram::ComponentId;
use crate::framed::FramedLink;
use crate::invariants::{hopf_invariant, is_framed_null_cobordant};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ObstructionVector {
    entries: Vec<u8>,
}

impl ObstructionVector {
    pub fn from_entries(entries: Vec<u8>) -> Self {
        ObstructionVector {
            entries: entries.into_iter().map(|a| a & 1).collect(),
        }
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn get(&self, comp: ComponentId) -> u8 {
        self.entries[comp.index()]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ a_s mod 2`.
    pub fn parity(&self) -> u8 {
        self.entries.iter().fold(0, |acc, a| acc ^ a)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&a| a == 0)
    }

    /// Components with `a_s = 1`.
    pub fn support(&self) -> Vec<ComponentId> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == 1)
            .map(|(i, _)| ComponentId::from_index(i))
            .collect()
    }
}

fn parity_of(framing: i64) -> u8 {
    (framing + 1).rem_euclid(2) as u8
}

/// `a_comp ≡ framing(comp) + 1 (mod 2)`.
pub fn framing_parity(fl: &FramedLink, comp: ComponentId) -> Option<u8> {
    fl.framing(comp).map(parity_of)
}

pub fn obstruction_vector(fl: &FramedLink) -> ObstructionVector {
    ObstructionVector {
        entries: fl.framings().iter().map(|&f| parity_of(f)).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityCheck {
    Holds,
    Violated,
    NotApplicable,
}

/// For a framed null-cobordant link, `Σ a_s ≡ ♯L (mod 2)` must hold.
/// `Violated` would mean an internal inconsistency.
pub fn parity_identity_check(fl: &FramedLink) -> ParityCheck {
    if !is_framed_null_cobordant(fl) {
        return ParityCheck::NotApplicable;
    }
    let components = (fl.component_count() % 2) as u8;
    if obstruction_vector(fl).parity() == components {
        ParityCheck::Holds
    } else {
        ParityCheck::Violated
    }
}

/// Effect of re-framing one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramingChange {
    pub component: ComponentId,
    pub old_framing: i64,
    pub new_framing: i64,
    /// Change of `a_component`; every other entry is unchanged.
    pub delta: u8,
    pub obstruction: ObstructionVector,
    pub hopf_invariant: i64,
    pub null_cobordant: bool,
    /// Set when the re-framed link is no longer framed null-cobordant.
    pub warning: Option<String>,
}

pub fn framing_change_delta(fl: &FramedLink, comp: ComponentId, new_framing: i64) -> Option<FramingChange> {
    let old_framing = fl.framing(comp)?;
    let changed = fl.with_framing(comp, new_framing).ok()?;
    let h = hopf_invariant(&changed);
    let null_cobordant = h == 0;
    Some(FramingChange {
        component: comp,
        old_framing,
        new_framing,
        delta: (new_framing - old_framing).rem_euclid(2) as u8,
        obstruction: obstruction_vector(&changed),
        hopf_invariant: h,
        null_cobordant,
        warning: (!null_cobordant)
            .then(|| format!("re-framed link may not be framed null-cobordant any more (Hopf invariant {h})")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{fixtures, LinkDiagram};

    fn hopf_pair() -> FramedLink {
        let d = fixtures::hopf().reverse_component(ComponentId(2)).unwrap();
        FramedLink::new(d, vec![1, 1]).unwrap()
    }

    fn unknot(framing: i64) -> FramedLink {
        FramedLink::new(LinkDiagram::unlink(1), vec![framing]).unwrap()
    }

    #[test]
    fn parities() {
        assert_eq!(framing_parity(&hopf_pair(), ComponentId(1)), Some(0));
        assert_eq!(framing_parity(&unknot(0), ComponentId(1)), Some(1));
        assert_eq!(framing_parity(&unknot(-3), ComponentId(1)), Some(0));
        assert_eq!(framing_parity(&unknot(0), ComponentId(2)), None);
    }

    #[test]
    fn vectors() {
        assert_eq!(obstruction_vector(&hopf_pair()).entries(), &[0, 0]);
        assert_eq!(obstruction_vector(&unknot(0)).entries(), &[1]);
        let three = FramedLink::new(LinkDiagram::unlink(3), vec![0, 0, 0]).unwrap();
        assert_eq!(obstruction_vector(&three).entries(), &[1, 1, 1]);
        assert_eq!(obstruction_vector(&three).parity(), 1);
    }

    #[test]
    fn parity_identity() {
        assert_eq!(parity_identity_check(&hopf_pair()), ParityCheck::Holds);
        assert_eq!(parity_identity_check(&unknot(0)), ParityCheck::Holds);
        assert_eq!(parity_identity_check(&unknot(1)), ParityCheck::NotApplicable);
    }

    #[test]
    fn reframing() {
        let c = framing_change_delta(&hopf_pair(), ComponentId(1), 2).unwrap();
        assert_eq!(c.delta, 1);
        assert_eq!(c.obstruction.entries(), &[1, 0]);
        assert_eq!(c.hopf_invariant, 1);
        assert!(!c.null_cobordant);
        assert!(c.warning.is_some());

        let c = framing_change_delta(&hopf_pair(), ComponentId(2), 5).unwrap();
        assert_eq!(c.delta, 0);

        let c = framing_change_delta(&unknot(0), ComponentId(1), 1).unwrap();
        assert_eq!((c.delta, c.obstruction.entries(), c.hopf_invariant), (1, &[0u8][..], 1));
        assert!(framing_change_delta(&unknot(0), ComponentId(2), 1).is_none());
    }
}
