use std::collections::{HashMap, HashSet};

use thiserror::Error;

use super::{ArcId, ComponentId, LinkDiagram, Raw};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EditError {
    #[error("unknown component {0}")]
    UnknownComponent(ComponentId),
    #[error("component selection is empty")]
    EmptySelection,
    #[error("component order must list every component exactly once")]
    BadOrder,
    #[error("crossing index {0} out of range")]
    UnknownCrossing(usize),
}

impl LinkDiagram {
    fn check(&self, comp: ComponentId) -> Result<(), EditError> {
        if self.has_component(comp) {
            Ok(())
        } else {
            Err(EditError::UnknownComponent(comp))
        }
    }

    /// Reverses the orientation of one component. Its arcs are renumbered in
    /// the new traversal order; everything else is untouched.
    pub fn reverse_component(&self, comp: ComponentId) -> Result<LinkDiagram, EditError> {
        self.check(comp)?;
        let mut raw = self.to_raw();
        for (k, c) in raw.crossings.iter_mut().enumerate() {
            let under = self.under_component(k) == comp;
            let over = self.over_component(k) == comp;
            if under {
                c.slots.rotate_left(2);
                c.over_forward = !c.over_forward;
            }
            if over {
                c.over_forward = !c.over_forward;
            }
        }
        Ok(raw.build())
    }

    /// Mirror image: every crossing changes.
    pub fn mirror(&self) -> LinkDiagram {
        let mut raw = self.to_raw();
        for c in raw.crossings.iter_mut() {
            *c = c.flipped();
        }
        raw.build()
    }

    /// Changes a single crossing, swapping which strand passes over.
    pub fn change_crossing(&self, k: usize) -> Result<LinkDiagram, EditError> {
        if k >= self.crossing_count() {
            return Err(EditError::UnknownCrossing(k));
        }
        let mut raw = self.to_raw();
        raw.crossings[k] = raw.crossings[k].flipped();
        Ok(raw.build())
    }

    /// Keeps only the selected components. Crossings with a deleted strand
    /// are smoothed away by joining the surviving strand; labels are
    /// reassigned `1..` in the original order.
    pub fn sublink(&self, comps: &[ComponentId]) -> Result<LinkDiagram, EditError> {
        if comps.is_empty() {
            return Err(EditError::EmptySelection);
        }
        for &c in comps {
            self.check(c)?;
        }
        let keep: HashSet<ComponentId> = comps.iter().copied().collect();
        let drop_crossings: HashSet<usize> = (0..self.crossing_count())
            .filter(|&k| !keep.contains(&self.under_component(k)) || !keep.contains(&self.over_component(k)))
            .collect();
        Ok(self.splice(&drop_crossings, &keep).build())
    }

    /// Relabels components so that `order[i]` becomes component `i + 1`.
    pub fn reorder_components(&self, order: &[ComponentId]) -> Result<LinkDiagram, EditError> {
        let unique: HashSet<ComponentId> = order.iter().copied().collect();
        if order.len() != self.component_count() || unique.len() != order.len() {
            return Err(EditError::BadOrder);
        }
        for &c in order {
            self.check(c)?;
        }
        let mut raw = self.to_raw();
        for (rank, &c) in order.iter().enumerate() {
            for a in self.component_arcs(c) {
                raw.keys.insert(a.0, rank as u64);
            }
        }
        Ok(raw.build())
    }

    /// Split union: `other` is placed in a disjoint ball, its components
    /// labelled after this diagram's.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let mut raw = self.to_raw();
        let shift = self.arc_count() as u32;
        let comps = self.component_count() as u64;
        let theirs = other.to_raw();
        raw.crossings.extend(theirs.crossings.iter().map(|c| {
            let mut c = *c;
            c.slots = c.slots.map(|t| t + shift);
            c
        }));
        raw.unknots.extend(theirs.unknots.iter().map(|t| t + shift));
        for (t, k) in theirs.keys {
            raw.keys.insert(t + shift, k + comps);
        }
        raw.build()
    }

    /// Adds a crossingless split unknot as the last component.
    pub fn with_split_unknot(&self) -> LinkDiagram {
        self.disjoint_union(&LinkDiagram::unlink(1))
    }

    /// Drops the given crossings (each strand passes straight through) and
    /// every component outside `keep`. Merged arcs take the smallest id of
    /// their pieces.
    pub(crate) fn splice(&self, drop: &HashSet<usize>, keep: &HashSet<ComponentId>) -> Raw {
        let mut raw = Raw::default();
        let mut rename: HashMap<u32, u32> = HashMap::new();
        for comp in self.component_ids().filter(|c| keep.contains(c)) {
            let key = comp.index() as u64;
            let arcs = self.component_arcs(comp);
            let kept_after: Vec<bool> = arcs
                .iter()
                .map(|&a| self.head(a).is_some_and(|h| !drop.contains(&h.crossing)))
                .collect();
            let Some(last_kept) = kept_after.iter().position(|&k| k) else {
                let token = arcs[0].0;
                raw.unknots.push(token);
                raw.keys.insert(token, key);
                continue;
            };
            let n = arcs.len();
            let mut group: Vec<ArcId> = Vec::new();
            for i in 1..=n {
                let idx = (last_kept + i) % n;
                group.push(arcs[idx]);
                if kept_after[idx] {
                    let token = group.iter().map(|a| a.0).min().expect("non-empty");
                    for a in group.drain(..) {
                        rename.insert(a.0, token);
                    }
                    raw.keys.insert(token, key);
                }
            }
        }
        for (k, c) in self.crossings().iter().enumerate() {
            if drop.contains(&k) {
                continue;
            }
            let mut rc = super::RawCrossing {
                slots: c.arcs().map(|a| a.0),
                over_forward: c.over_forward(),
            };
            rc.slots = rc.slots.map(|t| rename[&t]);
            raw.crossings.push(rc);
        }
        raw
    }
}
