use std::collections::{HashMap, HashSet};

use super::{ArcEnds, ArcId, ComponentRange, Crossing, LinkDiagram, Slot};

/// A crossing over arbitrary arc tokens, with the over-strand direction
/// already known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct RawCrossing {
    pub slots: [u32; 4],
    pub over_forward: bool,
}

impl RawCrossing {
    fn is_incoming(&self, pos: usize) -> bool {
        match pos {
            0 => true,
            1 => self.over_forward,
            3 => !self.over_forward,
            _ => false,
        }
    }

    /// Crossing change: swaps which strand passes over.
    pub fn flipped(self) -> RawCrossing {
        let [a, b, c, d] = self.slots;
        if self.over_forward {
            RawCrossing {
                slots: [b, c, d, a],
                over_forward: false,
            }
        } else {
            RawCrossing {
                slots: [d, a, b, c],
                over_forward: true,
            }
        }
    }
}

/// Oriented diagram over free-form tokens, the working form for edits.
///
/// `keys` orders components: a component's rank is the smallest key among
/// its tokens. Tokens without a key rank by their own value.
#[derive(Clone, Debug, Default)]
pub(crate) struct Raw {
    pub crossings: Vec<RawCrossing>,
    pub unknots: Vec<u32>,
    pub keys: HashMap<u32, u64>,
}

impl Raw {
    pub fn fresh_token(&self) -> u32 {
        let from_crossings = self.crossings.iter().flat_map(|c| c.slots).max();
        let from_unknots = self.unknots.iter().copied().max();
        from_crossings.max(from_unknots).unwrap_or(0) + 1
    }

    /// Renumbers into canonical form.
    ///
    /// Panics if the tokens do not form an oriented 4-valent diagram; callers
    /// validate user input beforehand and edits preserve the structure.
    pub fn build(self) -> LinkDiagram {
        let mut heads: HashMap<u32, Slot> = HashMap::new();
        let mut tails: HashMap<u32, Slot> = HashMap::new();
        for (k, c) in self.crossings.iter().enumerate() {
            for pos in 0..4 {
                let slot = Slot { crossing: k, pos };
                let prev = if c.is_incoming(pos) {
                    heads.insert(c.slots[pos], slot)
                } else {
                    tails.insert(c.slots[pos], slot)
                };
                assert!(prev.is_none(), "token {} has two ends of one kind", c.slots[pos]);
            }
        }
        assert_eq!(heads.len(), tails.len(), "unpaired arc ends");

        let next = |token: u32| -> u32 {
            let h = heads[&token];
            self.crossings[h.crossing].slots[h.pos ^ 2]
        };

        // Components as token cycles.
        let mut cycles: Vec<(Vec<u32>, bool)> = Vec::new();
        let mut seen: HashSet<u32> = HashSet::new();
        let mut tokens: Vec<u32> = heads.keys().copied().collect();
        tokens.sort_unstable();
        for &start in &tokens {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut t = start;
            loop {
                seen.insert(t);
                cycle.push(t);
                t = next(t);
                if t == start {
                    break;
                }
            }
            cycles.push((cycle, false));
        }
        for &u in &self.unknots {
            assert!(!heads.contains_key(&u), "unknot token {u} used in a crossing");
            cycles.push((vec![u], true));
        }

        let rank = |cycle: &[u32]| -> (u64, u32) {
            let key = cycle
                .iter()
                .map(|t| self.keys.get(t).copied().unwrap_or(*t as u64))
                .min()
                .unwrap_or(u64::MAX);
            (key, cycle.iter().copied().min().unwrap_or(u32::MAX))
        };
        cycles.sort_by_key(|(cycle, _)| rank(cycle));

        let mut rename: HashMap<u32, u32> = HashMap::new();
        let mut components = Vec::with_capacity(cycles.len());
        let mut next_id = 1u32;
        for (cycle, crossingless) in &cycles {
            let start = cycle
                .iter()
                .enumerate()
                .min_by_key(|(_, t)| **t)
                .map(|(i, _)| i)
                .unwrap_or(0);
            let first = next_id;
            for i in 0..cycle.len() {
                rename.insert(cycle[(start + i) % cycle.len()], next_id);
                next_id += 1;
            }
            components.push(ComponentRange {
                first,
                len: cycle.len() as u32,
                crossingless: *crossingless,
            });
        }

        let mut crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing {
                arcs: c.slots.map(|t| ArcId(rename[&t])),
                over_forward: c.over_forward,
            })
            .collect();
        crossings.sort_by_key(|c| c.arcs[0]);

        let arc_count = (next_id - 1) as usize;
        let mut arc_component = vec![0usize; arc_count];
        for (i, range) in components.iter().enumerate() {
            for a in range.first..range.first + range.len {
                arc_component[a as usize - 1] = i;
            }
        }

        normalize_over_only(&mut crossings, &components, &arc_component);
        let ends = compute_ends(&crossings, arc_count);

        LinkDiagram {
            crossings,
            components,
            arc_component,
            ends,
        }
    }
}

/// A component with at most two arcs that never passes under has no
/// orientation recoverable from arc numbering. It lies above everything
/// else, so both orientations give isotopic links; fix the one in which its
/// over-strand runs `b -> d` at its crossing with the smallest incoming
/// under-arc.
fn normalize_over_only(crossings: &mut [Crossing], components: &[ComponentRange], arc_component: &[usize]) {
    let comp = |a: ArcId| arc_component[a.0 as usize - 1];
    for (i, range) in components.iter().enumerate() {
        if range.crossingless || range.len > 2 {
            continue;
        }
        if crossings.iter().any(|c| comp(c.arcs[0]) == i) {
            continue;
        }
        // Crossings are sorted by incoming under-arc.
        let Some(first) = crossings.iter().position(|c| comp(c.arcs[1]) == i) else {
            continue;
        };
        if !crossings[first].over_forward {
            for c in crossings.iter_mut().filter(|c| comp(c.arcs[1]) == i) {
                c.over_forward = !c.over_forward;
            }
        }
    }
}

fn compute_ends(crossings: &[Crossing], arc_count: usize) -> Vec<Option<ArcEnds>> {
    let mut heads = vec![None; arc_count];
    let mut tails = vec![None; arc_count];
    for (k, c) in crossings.iter().enumerate() {
        for pos in 0..4 {
            let idx = c.arcs[pos].0 as usize - 1;
            let slot = Some(Slot { crossing: k, pos });
            if c.is_incoming_slot(pos) {
                heads[idx] = slot;
            } else {
                tails[idx] = slot;
            }
        }
    }
    heads
        .into_iter()
        .zip(tails)
        .map(|(head, tail)| match (head, tail) {
            (Some(head), Some(tail)) => Some(ArcEnds { tail, head }),
            _ => None,
        })
        .collect()
}
