use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use super::{Raw, RawCrossing};

/// An unvalidated PD code: crossing quadruples plus the arc ids of
/// crossingless split unknots.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PdCode {
    pub crossings: Vec<[u32; 4]>,
    pub unknots: Vec<u32>,
}

/// A broken diagram invariant. Crossing indices are zero-based positions in
/// the PD code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// An arc appears `found` times across the crossings instead of `expected`.
    ArcMultiplicity {
        arc: u32,
        found: usize,
        expected: usize,
    },
    /// The same arc id is declared as a crossingless unknot twice.
    DuplicateUnknot {
        arc: u32,
    },
    /// Arc ids must be exactly `1..=max`.
    ArcOutOfRange {
        arc: u32,
        max: u32,
    },
    MissingArc {
        arc: u32,
    },
    /// Two under-passages of one component disagree on its direction.
    UnderDirection {
        crossing: usize,
        arc: u32,
    },
    /// Along the component, `arc` is followed by `found` where the cyclic
    /// numbering requires `expected`.
    Succession {
        crossing: usize,
        arc: u32,
        found: u32,
        expected: u32,
    },
    /// Two components cross an odd number of times, which no planar diagram
    /// can do.
    OddInterComponentCrossings {
        components: (u32, u32),
        crossings: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ArcMultiplicity { arc, found, expected } => write!(
                f,
                "arc-multiplicity violation: arc {arc} appears {found} time(s) in crossings, expected {expected}"
            ),
            Violation::DuplicateUnknot { arc } => {
                write!(f, "arc {arc} is declared as an unknot more than once")
            }
            Violation::ArcOutOfRange { arc, max } => {
                write!(f, "arc {arc} is outside the range 1..={max}")
            }
            Violation::MissingArc { arc } => write!(f, "arc {arc} is missing"),
            Violation::UnderDirection { crossing, arc } => write!(
                f,
                "under-strand direction conflict at crossing #{} (arc {arc})",
                crossing + 1
            ),
            Violation::Succession {
                crossing,
                arc,
                found,
                expected,
            } => write!(
                f,
                "succession violation at crossing #{}: arc {arc} is followed by {found}, expected {expected}",
                crossing + 1
            ),
            Violation::OddInterComponentCrossings {
                components: (i, j),
                crossings,
            } => write!(
                f,
                "components {i} and {j} cross {crossings} times; an even count is required"
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Pos {
    crossing: usize,
    slot: usize,
}

/// One passage of a component through a crossing, entering at `entry`.
#[derive(Clone, Copy, Debug)]
struct Step {
    arc: u32,
    entry: Pos,
}

impl PdCode {
    /// All violated invariants; empty iff the code describes a valid
    /// oriented diagram. Planarity is not checked beyond the parity of
    /// pairwise crossing counts.
    pub fn validate(&self) -> Vec<Violation> {
        match self.to_raw() {
            Ok(_) => Vec::new(),
            Err(v) => v,
        }
    }

    fn arc_at(&self, p: Pos) -> u32 {
        self.crossings[p.crossing][p.slot]
    }

    fn check_arcs(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for c in &self.crossings {
            for &a in c {
                *counts.entry(a).or_default() += 1;
            }
        }
        let mut unknots: BTreeMap<u32, usize> = BTreeMap::new();
        for &u in &self.unknots {
            *unknots.entry(u).or_default() += 1;
        }
        for (&arc, &found) in &counts {
            if unknots.contains_key(&arc) {
                violations.push(Violation::ArcMultiplicity {
                    arc,
                    found,
                    expected: 0,
                });
            } else if found != 2 {
                violations.push(Violation::ArcMultiplicity {
                    arc,
                    found,
                    expected: 2,
                });
            }
        }
        for (&arc, &n) in &unknots {
            if n > 1 {
                violations.push(Violation::DuplicateUnknot { arc });
            }
        }
        let max = (2 * self.crossings.len() + self.unknots.len()) as u32;
        let all: HashSet<u32> = counts.keys().chain(unknots.keys()).copied().collect();
        let mut out_of_range: Vec<u32> = all.iter().copied().filter(|&a| a == 0 || a > max).collect();
        out_of_range.sort_unstable();
        violations.extend(
            out_of_range
                .into_iter()
                .map(|arc| Violation::ArcOutOfRange { arc, max }),
        );
        violations.extend(
            (1..=max)
                .filter(|a| !all.contains(a))
                .map(|arc| Violation::MissingArc { arc }),
        );
        violations
    }

    /// Infers orientation and over-strand directions.
    pub(crate) fn to_raw(&self) -> Result<Raw, Vec<Violation>> {
        let violations = self.check_arcs();
        if !violations.is_empty() {
            return Err(violations);
        }

        let mut occurrences: HashMap<u32, Vec<Pos>> = HashMap::new();
        for (k, c) in self.crossings.iter().enumerate() {
            for (slot, &a) in c.iter().enumerate() {
                occurrences.entry(a).or_default().push(Pos { crossing: k, slot });
            }
        }

        // Walk the cycle starting with `arc` ending at `head`.
        let walk = |arc: u32, head: Pos| -> Vec<Step> {
            let mut steps = Vec::new();
            let (mut a, mut h) = (arc, head);
            loop {
                steps.push(Step { arc: a, entry: h });
                let exit = Pos {
                    crossing: h.crossing,
                    slot: h.slot ^ 2,
                };
                let next = self.arc_at(exit);
                let occ = &occurrences[&next];
                h = if occ[0] == exit { occ[1] } else { occ[0] };
                a = next;
                if a == arc && h == head {
                    return steps;
                }
            }
        };

        let mut violations = Vec::new();
        let mut forward: Vec<Option<bool>> = vec![None; self.crossings.len()];
        let mut component_of: HashMap<u32, usize> = HashMap::new();
        let mut minima: Vec<u32> = Vec::new();

        let mut arcs: Vec<u32> = occurrences.keys().copied().collect();
        arcs.sort_unstable();
        for &start in &arcs {
            if component_of.contains_key(&start) {
                continue;
            }
            let steps = walk(start, occurrences[&start][0]);
            let steps = match self.orient(&steps, &occurrences) {
                Ok(s) => s,
                Err(v) => {
                    violations.push(v);
                    steps
                }
            };
            let comp = minima.len();
            minima.push(steps.iter().map(|s| s.arc).min().unwrap_or(start));
            for s in &steps {
                component_of.insert(s.arc, comp);
                if s.entry.slot % 2 == 1 {
                    forward[s.entry.crossing] = Some(s.entry.slot == 1);
                }
            }
            if let Some(v) = check_succession(&steps) {
                violations.push(v);
            }
        }
        for &u in &self.unknots {
            component_of.insert(u, minima.len());
            minima.push(u);
        }

        // Labels follow smallest arc ids.
        let mut order: Vec<usize> = (0..minima.len()).collect();
        order.sort_by_key(|&i| minima[i]);
        let mut label = vec![0u32; minima.len()];
        for (rank, &i) in order.iter().enumerate() {
            label[i] = rank as u32 + 1;
        }
        let mut pair_counts: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for c in &self.crossings {
            let (i, j) = (label[component_of[&c[0]]], label[component_of[&c[1]]]);
            if i != j {
                *pair_counts.entry((i.min(j), i.max(j))).or_default() += 1;
            }
        }
        for (components, crossings) in pair_counts {
            if crossings % 2 == 1 {
                violations.push(Violation::OddInterComponentCrossings { components, crossings });
            }
        }

        if !violations.is_empty() {
            return Err(violations);
        }
        Ok(Raw {
            crossings: self
                .crossings
                .iter()
                .zip(forward)
                .map(|(&slots, f)| RawCrossing {
                    slots,
                    over_forward: f.expect("every crossing has an over-passage"),
                })
                .collect(),
            unknots: self.unknots.clone(),
            keys: HashMap::new(),
        })
    }

    /// Picks the traversal direction of one component: under-passages enter
    /// at slot `a`; components that never pass under follow increasing arc
    /// numbers.
    fn orient(&self, steps: &[Step], occurrences: &HashMap<u32, Vec<Pos>>) -> Result<Vec<Step>, Violation> {
        let reversed = || -> Vec<Step> {
            let n = steps.len();
            (0..n)
                .map(|i| {
                    let arc = steps[(n - i) % n].arc;
                    let occ = &occurrences[&arc];
                    let old = steps[(n - i) % n].entry;
                    let entry = if occ[0] == old { occ[1] } else { occ[0] };
                    Step { arc, entry }
                })
                .collect()
        };

        let mut unders = steps.iter().filter(|s| s.entry.slot % 2 == 0);
        if let Some(first) = unders.next() {
            let along = first.entry.slot == 0;
            if let Some(bad) = unders.find(|s| (s.entry.slot == 0) != along) {
                return Err(Violation::UnderDirection {
                    crossing: bad.entry.crossing,
                    arc: bad.arc,
                });
            }
            return Ok(if along { steps.to_vec() } else { reversed() });
        }

        if steps.len() <= 2 {
            return Ok(steps.to_vec());
        }
        let (min_idx, min) = steps
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.arc))
            .min_by_key(|&(_, a)| a)
            .expect("non-empty component");
        if steps[(min_idx + 1) % steps.len()].arc == min + 1 {
            Ok(steps.to_vec())
        } else {
            let rev = reversed();
            let i = rev.iter().position(|s| s.arc == min).expect("min present");
            if rev[(i + 1) % rev.len()].arc == min + 1 {
                Ok(rev)
            } else {
                Ok(steps.to_vec())
            }
        }
    }
}

/// Arcs must run `m, m+1, ..., m+len-1` cyclically along the orientation.
fn check_succession(steps: &[Step]) -> Option<Violation> {
    let n = steps.len();
    let (start, min) = steps
        .iter()
        .enumerate()
        .map(|(i, s)| (i, s.arc))
        .min_by_key(|&(_, a)| a)?;
    let max = min + n as u32 - 1;
    for i in 0..n {
        let cur = &steps[(start + i) % n];
        let next = &steps[(start + i + 1) % n];
        let expected = if cur.arc == max { min } else { cur.arc + 1 };
        if next.arc != expected {
            return Some(Violation::Succession {
                crossing: cur.entry.crossing,
                arc: cur.arc,
                found: next.arc,
                expected,
            });
        }
    }
    None
}
