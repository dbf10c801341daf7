//! Deciders for singular sets with a prescribed framed regular fiber, and
//! for regular fibers of submersions ℝ³ → ℝ².
//!
//! In S³ the dual of `w₂(S³, L)` in `H₁(S³ ∖ L; ℤ₂)` is read in meridian
//! coordinates: a singular link `J` is admissible iff its mod-2 linking
//! number with every fiber component `L_s` equals `a_s`.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{ComponentId, LinkDiagram, Move, Side};
use crate::framed::{FramedLink, LabeledScene, Role};
use crate::invariants::{hopf_invariant, linking_matrix};
use crate::obstruction::{obstruction_vector, ObstructionVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Plane,
    Sphere,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Realizable,
    NotRealizable,
    NotApplicable,
}

/// Machine-readable reasons attached to a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum Note {
    /// A closed 3-manifold has no submersion to the plane, so the singular
    /// set cannot be empty.
    EmptySingularSetOnPlane,
    /// The fiber bounds no compatible framed surface; no map to the plane
    /// has it as a regular fiber.
    NotFramedNullCobordant { hopf_invariant: i64 },
    /// With at least two singular components, each can be prescribed as
    /// definite or indefinite folds.
    FoldTypesPrescribable,
    /// Several fiber groups were checked as one union; that the groups bound
    /// disjoint framed surfaces is assumed, not verified.
    DisjointSurfacesAssumed { groups: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("scene has no fiber components")]
    NoFiberComponents,
    #[error("fiber groups must partition the fiber components")]
    BadGroups,
    #[error("framed link is not framed null-cobordant (Hopf invariant {0})")]
    NotFramedNullCobordant(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberEntry {
    pub component: ComponentId,
    pub framing: i64,
    /// Obstruction value `a_s`.
    pub obstruction: u8,
    /// Mod-2 linking of the singular candidate with this component.
    pub linking: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizabilityReport {
    pub verdict: Verdict,
    pub target: Target,
    /// Over fiber components, in label order.
    pub obstruction: ObstructionVector,
    pub j_class: Vec<u8>,
    pub fibers: Vec<FiberEntry>,
    pub singular: Vec<ComponentId>,
    pub mismatches: Vec<ComponentId>,
    pub hopf_invariant: i64,
    pub notes: Vec<Note>,
}

pub fn realize_singular(scene: &LabeledScene, target: Target) -> Result<RealizabilityReport, RealizeError> {
    let fibers = scene.fiber_components();
    realize_grouped(scene, target, &[fibers])
}

/// Several regular values at once: each group is one fiber. Every group must
/// be framed null-cobordant for the plane target; the obstruction condition
/// is checked on the union.
pub fn realize_grouped(
    scene: &LabeledScene,
    target: Target,
    groups: &[Vec<ComponentId>],
) -> Result<RealizabilityReport, RealizeError> {
    let fibers = scene.fiber_components();
    if fibers.is_empty() {
        return Err(RealizeError::NoFiberComponents);
    }
    let grouped: Vec<ComponentId> = groups.iter().flatten().copied().collect();
    let unique: HashSet<ComponentId> = grouped.iter().copied().collect();
    if groups.iter().any(|g| g.is_empty())
        || unique.len() != grouped.len()
        || unique != fibers.iter().copied().collect::<HashSet<_>>()
    {
        return Err(RealizeError::BadGroups);
    }

    let d = scene.diagram();
    let lk = linking_matrix(d);
    let singular = scene.singular_components();
    let fiber_link = scene.fiber().ok_or(RealizeError::NoFiberComponents)?;
    let obstruction = obstruction_vector(&fiber_link);

    let mut entries = Vec::with_capacity(fibers.len());
    let mut mismatches = Vec::new();
    for (i, &s) in fibers.iter().enumerate() {
        let total: i64 = singular.iter().map(|&j| lk.get(j, s)).sum();
        let linking = total.rem_euclid(2) as u8;
        let a = obstruction.entries()[i];
        if linking != a {
            mismatches.push(s);
        }
        entries.push(FiberEntry {
            component: s,
            framing: scene.framing(s).expect("fiber components are framed"),
            obstruction: a,
            linking,
        });
    }

    let h = hopf_invariant(&fiber_link);
    let mut notes = Vec::new();
    let mut applicable = true;
    if target == Target::Plane {
        for group in groups {
            let gh = group_hopf_invariant(scene, group, &lk);
            if gh != 0 {
                notes.push(Note::NotFramedNullCobordant { hopf_invariant: gh });
                applicable = false;
            }
        }
    }
    let empty_plane = target == Target::Plane && singular.is_empty();
    if empty_plane {
        notes.push(Note::EmptySingularSetOnPlane);
    }
    if singular.len() >= 2 {
        notes.push(Note::FoldTypesPrescribable);
    }
    if groups.len() > 1 {
        notes.push(Note::DisjointSurfacesAssumed { groups: groups.len() });
    }

    let verdict = if !applicable {
        Verdict::NotApplicable
    } else if mismatches.is_empty() && !empty_plane {
        Verdict::Realizable
    } else {
        Verdict::NotRealizable
    };
    Ok(RealizabilityReport {
        verdict,
        target,
        j_class: entries.iter().map(|e| e.linking).collect(),
        obstruction,
        fibers: entries,
        singular,
        mismatches,
        hopf_invariant: h,
        notes,
    })
}

fn group_hopf_invariant(scene: &LabeledScene, group: &[ComponentId], lk: &crate::invariants::LinkingMatrix) -> i64 {
    let framings: i64 = group.iter().map(|&c| scene.framing(c).unwrap_or(0)).sum();
    let mut pairs = 0;
    for &i in group {
        for &j in group {
            if i != j {
                pairs += lk.get(i, j);
            }
        }
    }
    framings + pairs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum SplitReason {
    /// `w₂(S³, L) = 0`: every link split from the fiber is admissible.
    ObstructionVanishes,
    /// `Σ a_s ≡ ♯L` is odd, so some `a_s` is non-zero.
    OddComponentCount,
    ObstructionNonzero,
    NotFramedNullCobordant {
        hopf_invariant: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitDecision {
    pub possible: bool,
    pub reason: SplitReason,
    pub obstruction: ObstructionVector,
}

/// Can the singular set be split from the fiber (lie in a disjoint ball)?
pub fn split_possible(fl: &FramedLink, target: Target) -> SplitDecision {
    let obstruction = obstruction_vector(fl);
    let h = hopf_invariant(fl);
    let (possible, reason) = if target == Target::Plane && h != 0 {
        (false, SplitReason::NotFramedNullCobordant { hopf_invariant: h })
    } else if obstruction.is_zero() {
        (true, SplitReason::ObstructionVanishes)
    } else if h == 0 && fl.component_count() % 2 == 1 {
        (false, SplitReason::OddComponentCount)
    } else {
        (false, SplitReason::ObstructionNonzero)
    };
    SplitDecision {
        possible,
        reason,
        obstruction,
    }
}

/// A singular set realizing the obstruction class: one meridian per
/// component with `a_s = 1`, or a split unknot when there is none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessLink {
    pub meridians: Vec<ComponentId>,
    pub extra_split_unknot: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub link: WitnessLink,
    pub scene: LabeledScene,
}

pub fn witness_singular(fl: &FramedLink) -> Result<Witness, RealizeError> {
    let h = hopf_invariant(fl);
    if h != 0 {
        return Err(RealizeError::NotFramedNullCobordant(h));
    }
    let meridians = obstruction_vector(fl).support();
    let mut d = fl.diagram().clone();
    for &s in &meridians {
        d = with_meridian(&d, s);
    }
    let extra_split_unknot = meridians.is_empty();
    if extra_split_unknot {
        d = d.with_split_unknot();
    }
    let n = fl.component_count();
    let roles = (0..d.component_count())
        .map(|i| if i < n { Role::Fiber } else { Role::Singular })
        .collect();
    let framings = (0..n).map(|i| (ComponentId::from_index(i), fl.framings()[i])).collect();
    let scene = LabeledScene::new(d, roles, framings).expect("witness scene is well-formed");
    Ok(Witness {
        link: WitnessLink {
            meridians,
            extra_split_unknot,
        },
        scene,
    })
}

/// Adds a small circle clasping `comp` once: a bigon with one of its two
/// crossings changed, so it links `comp` with linking number ±1 and
/// nothing else.
fn with_meridian(d: &LinkDiagram, comp: ComponentId) -> LinkDiagram {
    let d = d.with_split_unknot();
    let m = ComponentId::from_index(d.component_count() - 1);
    let m_arc = d.component_arcs(m)[0];
    let e = d.component_arcs(comp)[0];
    let clasp = d
        .apply_reidemeister(Move::R2Add {
            lower: (e, Side::Left),
            upper: (m_arc, Side::Left),
        })
        .expect("split pieces always share a face");
    let k = (0..clasp.crossing_count())
        .find(|&k| clasp.under_component(k) == m || clasp.over_component(k) == m)
        .expect("clasp crossing");
    clasp.change_crossing(k).expect("crossing exists")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HpEntry {
    pub component: ComponentId,
    /// `Σ_{j≠i} lk(L_i, L_j)`.
    pub row_sum: i64,
    pub odd: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HpReport {
    pub verdict: Verdict,
    pub components: Vec<HpEntry>,
    pub failing: Vec<ComponentId>,
}

/// An oriented link in ℝ³ is a regular fiber of a submersion ℝ³ → ℝ² iff
/// every component has odd total linking number with the others.
pub fn hp_submersion_check(d: &LinkDiagram) -> HpReport {
    let lk = linking_matrix(d);
    let components: Vec<HpEntry> = d
        .component_ids()
        .map(|c| {
            let row_sum = lk.off_diagonal_row_sum(c);
            HpEntry {
                component: c,
                row_sum,
                odd: row_sum.rem_euclid(2) == 1,
            }
        })
        .collect();
    let failing: Vec<ComponentId> = components.iter().filter(|e| !e.odd).map(|e| e.component).collect();
    let verdict = if components.is_empty() {
        Verdict::NotApplicable
    } else if failing.is_empty() {
        Verdict::Realizable
    } else {
        Verdict::NotRealizable
    };
    HpReport {
        verdict,
        components,
        failing,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChillingworthReport {
    pub submersion: HpReport,
    /// Set when the link is a regular fiber of a generic map ℝ³ → ℝ² whose
    /// whole singular set is one split unknotted circle (created by a lip
    /// move away from the fiber), so no fiber component links the singular
    /// set.
    pub certificate: bool,
    pub message: String,
}

pub fn chillingworth_report(d: &LinkDiagram) -> ChillingworthReport {
    let submersion = hp_submersion_check(d);
    let certificate = submersion.verdict == Verdict::Realizable;
    let message = if certificate {
        "regular fiber of a submersion; a lip move in a small ball away from it yields a generic map \
         whose singular set is a split unknotted circle, so no fiber component links the singular set"
            .to_string()
    } else if submersion.components.is_empty() {
        "empty diagram".to_string()
    } else {
        let list: Vec<String> = submersion.failing.iter().map(|c| c.to_string()).collect();
        format!(
            "not a submersion fiber; even total linking at components {}",
            list.join(", ")
        )
    };
    ChillingworthReport {
        submersion,
        certificate,
        message,
    }
}
