//! Linking numbers, writhes, Seifert circles and the Hopf invariant.

use serde::Serialize;

use crate::diagram::{ArcId, ComponentId, LinkDiagram};
use crate::framed::FramedLink;

/// Off-diagonal entries are pairwise linking numbers, diagonal entries the
/// self-writhe of each component in the diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkingMatrix {
    size: usize,
    entries: Vec<i64>,
}

impl LinkingMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: ComponentId, j: ComponentId) -> i64 {
        self.entries[i.index() * self.size + j.index()]
    }

    pub fn linking_number(&self, i: ComponentId, j: ComponentId) -> i64 {
        debug_assert_ne!(i, j);
        self.get(i, j)
    }

    pub fn self_writhe(&self, i: ComponentId) -> i64 {
        self.get(i, i)
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.size.max(1))
            .take(self.size)
            .map(|r| r.to_vec())
            .collect()
    }

    /// Sum of row `i` excluding the diagonal.
    pub fn off_diagonal_row_sum(&self, i: ComponentId) -> i64 {
        (0..self.size)
            .filter(|&j| j != i.index())
            .map(|j| self.entries[i.index() * self.size + j])
            .sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size)
            .all(|i| (0..self.size).all(|j| self.entries[i * self.size + j] == self.entries[j * self.size + i]))
    }
}

/// Linking matrix from half the signed count of inter-component crossings.
pub fn linking_matrix(d: &LinkDiagram) -> LinkingMatrix {
    let n = d.component_count();
    let mut sums = vec![0i64; n * n];
    for (k, c) in d.crossings().iter().enumerate() {
        let (i, j) = (d.under_component(k).index(), d.over_component(k).index());
        let s = c.sign().value();
        if i == j {
            sums[i * n + i] += s;
        } else {
            sums[i * n + j] += s;
            sums[j * n + i] += s;
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                debug_assert_eq!(sums[i * n + j] % 2, 0, "odd inter-component crossing sum");
                sums[i * n + j] /= 2;
            }
        }
    }
    LinkingMatrix { size: n, entries: sums }
}

/// Crossings of the component with itself, i.e. the crossing count of its
/// own sub-diagram.
pub fn self_crossing_count(d: &LinkDiagram, comp: ComponentId) -> Option<usize> {
    if !d.has_component(comp) {
        return None;
    }
    Some(
        (0..d.crossing_count())
            .filter(|&k| d.under_component(k) == comp && d.over_component(k) == comp)
            .count(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertData {
    pub circle_count: usize,
    pub crossing_count: usize,
    pub euler_characteristic: i64,
}

/// Seifert circles from the orientation-respecting smoothing of every
/// crossing; a crossingless component is one circle.
pub fn seifert(d: &LinkDiagram) -> SeifertData {
    let n = d.arc_count();
    let mut seen = vec![false; n];
    let mut circles = 0;
    for start in 1..=n as u32 {
        if seen[start as usize - 1] {
            continue;
        }
        circles += 1;
        let mut arc = ArcId(start);
        while !seen[arc.0 as usize - 1] {
            seen[arc.0 as usize - 1] = true;
            arc = smoothed_successor(d, arc);
        }
    }
    let crossing_count = d.crossing_count();
    SeifertData {
        circle_count: circles,
        crossing_count,
        euler_characteristic: circles as i64 - crossing_count as i64,
    }
}

/// After smoothing, an incoming strand turns into the outgoing end of the
/// other strand.
fn smoothed_successor(d: &LinkDiagram, arc: ArcId) -> ArcId {
    let Some(head) = d.head(arc) else {
        return arc;
    };
    let c = d.crossings()[head.crossing];
    if head.pos == 0 {
        c.outgoing_over()
    } else {
        c.outgoing_under()
    }
}

/// Pontryagin–Thom class in `π₃(S²) ≅ ℤ`: the sum of all framings plus the
/// linking numbers over ordered pairs of distinct components.
pub fn hopf_invariant(fl: &FramedLink) -> i64 {
    let lk = linking_matrix(fl.diagram());
    let framings: i64 = fl.framings().iter().sum();
    let ids: Vec<ComponentId> = fl.diagram().component_ids().collect();
    let mut pairs = 0;
    for &i in &ids {
        for &j in &ids {
            if i != j {
                pairs += lk.get(i, j);
            }
        }
    }
    framings + pairs
}

/// In S³ a framed link bounds a compatible framed surface iff its Hopf
/// invariant vanishes.
pub fn is_framed_null_cobordant(fl: &FramedLink) -> bool {
    hopf_invariant(fl) == 0
}
