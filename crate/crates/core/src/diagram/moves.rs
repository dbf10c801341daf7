//! Reidemeister moves on PD codes.
//!
//! Sites are named by an arc and a side of it: the arc itself for `R1+`,
//! the face on that side for `R1-`'s loop, `R2-`'s bigon and `R3`'s
//! triangle. Every move returns a canonically renumbered diagram with the
//! same components under the same labels.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use super::{ArcId, ComponentId, Faces, LinkDiagram, Raw, RawCrossing, Side, Sign, Slot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Move {
    /// Adds a kink of the given sign whose loop sits on `side` of `arc`.
    R1Add { arc: ArcId, side: Side, sign: Sign },
    /// Removes the kink whose loop is `arc`.
    R1Remove { arc: ArcId },
    /// Pushes a finger of `upper` across `lower`, through the face on the
    /// given sides of both.
    R2Add { lower: (ArcId, Side), upper: (ArcId, Side) },
    /// Removes the bigon on `side` of `arc`.
    R2Remove { arc: ArcId, side: Side },
    /// Slides across the triangle on `side` of `arc`.
    R3 { arc: ArcId, side: Side },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Add { .. } => MoveKind::R1Add,
            Move::R1Remove { .. } => MoveKind::R1Remove,
            Move::R2Add { .. } => MoveKind::R2Add,
            Move::R2Remove { .. } => MoveKind::R2Remove,
            Move::R3 { .. } => MoveKind::R3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("unknown arc {0}")]
    UnknownArc(ArcId),
    #[error("illegal site: {0}")]
    IllegalSite(&'static str),
}

fn illegal<T>(why: &'static str) -> Result<T, MoveError> {
    Err(MoveError::IllegalSite(why))
}

/// Compass directions in counterclockwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    E = 0,
    N = 1,
    W = 2,
    S = 3,
}

#[derive(Clone, Copy, Debug)]
struct Port {
    token: u32,
    incoming: bool,
}

/// Builds the PD quadruple of a crossing drawn with explicit compass ports.
fn compass(ports: [(Dir, Port); 4], under_in: Dir) -> RawCrossing {
    let mut at: [Option<Port>; 4] = [None; 4];
    for (dir, port) in ports {
        at[dir as usize] = Some(port);
    }
    let start = under_in as usize;
    let get = |i: usize| at[(start + i) % 4].expect("all four ports set");
    RawCrossing {
        slots: [get(0).token, get(1).token, get(2).token, get(3).token],
        over_forward: get(1).incoming,
    }
}

fn port(token: u32, incoming: bool) -> Port {
    Port { token, incoming }
}

impl LinkDiagram {
    pub fn apply_reidemeister(&self, mv: Move) -> Result<LinkDiagram, MoveError> {
        let known = |a: ArcId| {
            if self.contains_arc(a) {
                Ok(())
            } else {
                Err(MoveError::UnknownArc(a))
            }
        };
        match mv {
            Move::R1Add { arc, side, sign } => {
                known(arc)?;
                Ok(self.add_kink(arc, side, sign))
            }
            Move::R1Remove { arc } => {
                known(arc)?;
                self.remove_kink(arc)
            }
            Move::R2Add { lower, upper } => {
                known(lower.0)?;
                known(upper.0)?;
                self.add_bigon(lower, upper)
            }
            Move::R2Remove { arc, side } => {
                known(arc)?;
                self.remove_bigon(arc, side)
            }
            Move::R3 { arc, side } => {
                known(arc)?;
                self.slide_triangle(arc, side)
            }
        }
    }

    /// The arc is cut into `arc -> loop -> rest`; the new crossing is drawn
    /// with the strand arriving from the south and the loop curling west
    /// (left) or east (right).
    fn add_kink(&self, arc: ArcId, side: Side, sign: Sign) -> LinkDiagram {
        let mut raw = self.to_raw();
        let key = self.component_of(arc).index() as u64;
        let e1 = arc.0;
        let fresh = raw.fresh_token();
        let l = fresh;
        let e2 = match self.head(arc) {
            Some(h) => {
                raw.crossings[h.crossing].slots[h.pos] = fresh + 1;
                fresh + 1
            }
            None => {
                raw.unknots.retain(|&u| u != e1);
                e1
            }
        };
        raw.keys.insert(l, key);
        raw.keys.insert(e2, key);

        // The first passage goes south to north; the second leaves towards
        // the side opposite the loop.
        let (loop_in, exit) = match side {
            Side::Left => (Dir::W, Dir::E),
            Side::Right => (Dir::E, Dir::W),
        };
        let first_under = match (side, sign) {
            (Side::Left, Sign::Positive) | (Side::Right, Sign::Negative) => true,
            (Side::Left, Sign::Negative) | (Side::Right, Sign::Positive) => false,
        };
        let ports = [
            (Dir::S, port(e1, true)),
            (Dir::N, port(l, false)),
            (loop_in, port(l, true)),
            (exit, port(e2, false)),
        ];
        let under_in = if first_under { Dir::S } else { loop_in };
        raw.crossings.push(compass(ports, under_in));
        raw.build()
    }

    fn remove_kink(&self, arc: ArcId) -> Result<LinkDiagram, MoveError> {
        let (Some(t), Some(h)) = (self.tail(arc), self.head(arc)) else {
            return illegal("R1-: arc has no crossing");
        };
        if t.crossing != h.crossing || (t.pos + 2) % 4 == h.pos {
            return illegal("R1-: arc is not a kink loop");
        }
        let drop: HashSet<usize> = [t.crossing].into();
        let keep: HashSet<ComponentId> = self.component_ids().collect();
        Ok(self.splice(&drop, &keep).build())
    }

    fn add_bigon(&self, lower: (ArcId, Side), upper: (ArcId, Side)) -> Result<LinkDiagram, MoveError> {
        let (e, e_side) = lower;
        let (f, f_side) = upper;
        if e == f {
            return illegal("R2+: needs two distinct arcs");
        }
        let faces = Faces::new(self);
        if faces.piece_of_arc(e) == faces.piece_of_arc(f) && faces.face_of(e, e_side) != faces.face_of(f, f_side) {
            return illegal("R2+: arcs do not share the face");
        }

        let mut raw = self.to_raw();
        let mut next = raw.fresh_token();
        let mut split = |raw: &mut Raw, arc: ArcId| -> [u32; 3] {
            let key = self.component_of(arc).index() as u64;
            let mid = next;
            next += 1;
            let end = match self.head(arc) {
                Some(h) => {
                    let t = next;
                    next += 1;
                    raw.crossings[h.crossing].slots[h.pos] = t;
                    t
                }
                None => {
                    raw.unknots.retain(|&u| u != arc.0);
                    arc.0
                }
            };
            raw.keys.insert(mid, key);
            raw.keys.insert(end, key);
            [arc.0, mid, end]
        };
        let [ea, eb, ec] = split(&mut raw, e);
        let [fa, fb, fc] = split(&mut raw, f);

        // `lower` runs horizontally with the shared face above it; `upper`
        // dips down across it at P (west) and Q (east).
        let east_e = e_side == Side::Left;
        let east_f = f_side == Side::Right;
        let (e_in, e_out) = if east_e { (Dir::W, Dir::E) } else { (Dir::E, Dir::W) };
        let (e_at_p, e_at_q) = if east_e {
            ([ea, eb], [eb, ec])
        } else {
            ([eb, ec], [ea, eb])
        };
        // (incoming token, incoming dir, outgoing token, outgoing dir)
        let f_first = (fa, Dir::N, fb, Dir::S);
        let f_second = (fb, Dir::S, fc, Dir::N);
        let (f_at_p, f_at_q) = if east_f {
            (f_first, f_second)
        } else {
            (f_second, f_first)
        };

        for (e_tokens, f_pass) in [(e_at_p, f_at_p), (e_at_q, f_at_q)] {
            let ports = [
                (e_in, port(e_tokens[0], true)),
                (e_out, port(e_tokens[1], false)),
                (f_pass.1, port(f_pass.0, true)),
                (f_pass.3, port(f_pass.2, false)),
            ];
            raw.crossings.push(compass(ports, e_in));
        }
        Ok(raw.build())
    }

    fn remove_bigon(&self, arc: ArcId, side: Side) -> Result<LinkDiagram, MoveError> {
        let faces = Faces::new(self);
        let face = faces.face_of(arc, side).expect("every arc side has a face");
        let boundary = faces.boundary(face);
        if boundary.len() != 2 || boundary[0].0 == boundary[1].0 {
            return illegal("R2-: face is not a bigon");
        }
        let e = boundary[0].0;
        let (Some(t), Some(h)) = (self.tail(e), self.head(e)) else {
            return illegal("R2-: face is not a bigon");
        };
        if t.crossing == h.crossing {
            return illegal("R2-: bigon corners coincide");
        }
        if t.pos % 2 != h.pos % 2 {
            return illegal("R2-: strands alternate over and under");
        }
        let drop: HashSet<usize> = [t.crossing, h.crossing].into();
        let keep: HashSet<ComponentId> = self.component_ids().collect();
        Ok(self.splice(&drop, &keep).build())
    }

    /// Each side of the triangle is re-attached on the far side of its
    /// strand's other two crossings: the order in which every strand meets
    /// the two triangle crossings is reversed, slot geometry unchanged.
    fn slide_triangle(&self, arc: ArcId, side: Side) -> Result<LinkDiagram, MoveError> {
        let faces = Faces::new(self);
        let face = faces.face_of(arc, side).expect("every arc side has a face");
        let boundary = faces.boundary(face);
        if boundary.len() != 3 {
            return illegal("R3: face is not a triangle");
        }
        let mut ends: Vec<(Slot, Slot)> = Vec::with_capacity(3);
        for &(a, _) in boundary {
            match (self.tail(a), self.head(a)) {
                (Some(t), Some(h)) if t.crossing != h.crossing => ends.push((t, h)),
                _ => return illegal("R3: degenerate triangle"),
            }
        }
        let corners: HashSet<usize> = ends.iter().flat_map(|(t, h)| [t.crossing, h.crossing]).collect();
        let arcs: HashSet<ArcId> = boundary.iter().map(|b| b.0).collect();
        if corners.len() != 3 || arcs.len() != 3 {
            return illegal("R3: degenerate triangle");
        }
        let over_counts: Vec<usize> = ends.iter().map(|(t, h)| (t.pos % 2) + (h.pos % 2)).collect();
        if over_counts.iter().all(|&c| c == 1) {
            return illegal("R3: cyclic over/under pattern");
        }

        let mut raw = self.to_raw();
        for (i, &(t, h)) in ends.iter().enumerate() {
            let middle = boundary[i].0 .0;
            let before = self
                .arc_at(Slot {
                    crossing: t.crossing,
                    pos: t.pos ^ 2,
                })
                .0;
            let after = self
                .arc_at(Slot {
                    crossing: h.crossing,
                    pos: h.pos ^ 2,
                })
                .0;
            raw.crossings[t.crossing].slots[t.pos ^ 2] = middle;
            raw.crossings[t.crossing].slots[t.pos] = after;
            raw.crossings[h.crossing].slots[h.pos] = before;
            raw.crossings[h.crossing].slots[h.pos ^ 2] = middle;
        }
        Ok(raw.build())
    }

    /// Legal removal and R3 sites, one entry per face.
    pub fn reducing_moves(&self) -> Vec<Move> {
        let faces = Faces::new(self);
        let mut out = Vec::new();
        for f in 0..faces.len() {
            let boundary = faces.boundary(f);
            let (arc, side) = boundary[0];
            let candidate = match boundary.len() {
                1 if self.head(arc).is_some() => Some(Move::R1Remove { arc }),
                2 => Some(Move::R2Remove { arc, side }),
                3 => Some(Move::R3 { arc, side }),
                _ => None,
            };
            if let Some(mv) = candidate {
                if self.apply_reidemeister(mv).is_ok() {
                    out.push(mv);
                }
            }
        }
        out
    }
}

fn random_side<R: Rng + ?Sized>(rng: &mut R) -> Side {
    if rng.gen() {
        Side::Left
    } else {
        Side::Right
    }
}

/// Draws a random legal move. Moves that add crossings are only offered
/// while the result stays within `max_crossings`. `None` for the empty
/// diagram.
pub fn random_move<R: Rng + ?Sized>(d: &LinkDiagram, rng: &mut R, max_crossings: usize) -> Option<Move> {
    if d.arc_count() == 0 {
        return None;
    }
    let mut kinds = Vec::new();
    if d.crossing_count() < max_crossings {
        kinds.push(MoveKind::R1Add);
    }
    if d.crossing_count() + 2 <= max_crossings {
        kinds.push(MoveKind::R2Add);
    }
    let reducing = d.reducing_moves();
    for mv in &reducing {
        if !kinds.contains(&mv.kind()) {
            kinds.push(mv.kind());
        }
    }
    let arc = |rng: &mut R| ArcId(rng.gen_range(1..=d.arc_count() as u32));
    loop {
        let kind = *kinds.choose(rng)?;
        match kind {
            MoveKind::R1Add => {
                let sign = if rng.gen() { Sign::Positive } else { Sign::Negative };
                return Some(Move::R1Add {
                    arc: arc(rng),
                    side: random_side(rng),
                    sign,
                });
            }
            MoveKind::R2Add => {
                if let Some(mv) = random_bigon_site(d, rng) {
                    return Some(mv);
                }
                kinds.retain(|k| *k != MoveKind::R2Add);
            }
            other => {
                let options: Vec<&Move> = reducing.iter().filter(|m| m.kind() == other).collect();
                return options.choose(rng).map(|m| **m);
            }
        }
    }
}

fn random_bigon_site<R: Rng + ?Sized>(d: &LinkDiagram, rng: &mut R) -> Option<Move> {
    let faces = Faces::new(d);
    let cross_piece = faces.piece_count() > 1 && rng.gen_bool(0.3);
    if cross_piece {
        let e = ArcId(rng.gen_range(1..=d.arc_count() as u32));
        let others: Vec<ArcId> = (1..=d.arc_count() as u32)
            .map(ArcId)
            .filter(|&a| faces.piece_of_arc(a) != faces.piece_of_arc(e))
            .collect();
        let f = *others.choose(rng)?;
        let (se, sf) = (random_side(rng), random_side(rng));
        return Some(order_pair(rng, (e, se), (f, sf)));
    }
    let candidates: Vec<usize> = (0..faces.len())
        .filter(|&f| {
            let b = faces.boundary(f);
            b.iter().any(|x| x.0 != b[0].0)
        })
        .collect();
    let face = *candidates.choose(rng)?;
    let boundary = faces.boundary(face);
    loop {
        let x = *boundary.choose(rng)?;
        let y = *boundary.choose(rng)?;
        if x.0 != y.0 {
            return Some(order_pair(rng, x, y));
        }
    }
}

fn order_pair<R: Rng + ?Sized>(rng: &mut R, x: (ArcId, Side), y: (ArcId, Side)) -> Move {
    if rng.gen() {
        Move::R2Add { lower: x, upper: y }
    } else {
        Move::R2Add { lower: y, upper: x }
    }
}
