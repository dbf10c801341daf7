use std::collections::HashMap;

use super::{ArcId, LinkDiagram, Side, Slot};

/// Regions of the diagram's planar structure, read off the counterclockwise
/// slot order at each crossing. Each connected piece of the diagram is drawn
/// in its own disk.
#[derive(Clone, Debug)]
pub struct Faces {
    boundaries: Vec<Vec<(ArcId, Side)>>,
    face_of: HashMap<(ArcId, Side), usize>,
    piece_of_face: Vec<usize>,
    piece_of_arc: Vec<usize>,
    pieces: usize,
}

impl Faces {
    pub fn new(d: &LinkDiagram) -> Self {
        let piece_of_arc = pieces(d);
        let pieces = piece_of_arc.iter().copied().max().map_or(0, |m| m + 1);
        let mut faces = Faces {
            boundaries: Vec::new(),
            face_of: HashMap::new(),
            piece_of_face: Vec::new(),
            piece_of_arc,
            pieces,
        };

        // Corner (k, s) is the region between slots s and s+1. Leaving k
        // along slot s+1 keeps the region on the right.
        let mut visited = vec![[false; 4]; d.crossing_count()];
        for k in 0..d.crossing_count() {
            for s in 0..4 {
                if visited[k][s] {
                    continue;
                }
                let mut boundary = Vec::new();
                let (mut ck, mut cs) = (k, s);
                while !visited[ck][cs] {
                    visited[ck][cs] = true;
                    let out = Slot {
                        crossing: ck,
                        pos: (cs + 1) % 4,
                    };
                    let arc = d.arc_at(out);
                    let (tail, head) = (d.tail(arc).unwrap(), d.head(arc).unwrap());
                    let (side, other) = if tail == out {
                        (Side::Right, head)
                    } else {
                        (Side::Left, tail)
                    };
                    boundary.push((arc, side));
                    ck = other.crossing;
                    cs = other.pos;
                }
                faces.push(boundary);
            }
        }
        for comp in d.component_ids() {
            if d.is_crossingless(comp) {
                let arc = d.component_arcs(comp)[0];
                faces.push(vec![(arc, Side::Left)]);
                faces.push(vec![(arc, Side::Right)]);
            }
        }
        faces
    }

    fn push(&mut self, boundary: Vec<(ArcId, Side)>) {
        let id = self.boundaries.len();
        for &entry in &boundary {
            self.face_of.insert(entry, id);
        }
        self.piece_of_face
            .push(self.piece_of_arc[boundary[0].0 .0 as usize - 1]);
        self.boundaries.push(boundary);
    }

    pub fn len(&self) -> usize {
        self.boundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }

    /// Arc sides around a face, in traversal order.
    pub fn boundary(&self, face: usize) -> &[(ArcId, Side)] {
        &self.boundaries[face]
    }

    pub fn face_of(&self, arc: ArcId, side: Side) -> Option<usize> {
        self.face_of.get(&(arc, side)).copied()
    }

    pub fn piece_count(&self) -> usize {
        self.pieces
    }

    pub fn piece_of_arc(&self, arc: ArcId) -> usize {
        self.piece_of_arc[arc.0 as usize - 1]
    }

    pub fn piece_of_face(&self, face: usize) -> usize {
        self.piece_of_face[face]
    }

    /// `V - E + F` per connected piece; 2 for every piece of a planar
    /// diagram (a crossingless circle counts as one vertex-free edge loop
    /// with two faces, reported as 2 as well).
    pub fn euler_characteristics(&self, d: &LinkDiagram) -> Vec<i64> {
        let mut chi = vec![0i64; self.pieces];
        for c in d.crossings() {
            chi[self.piece_of_arc(c.arcs()[0])] += 1;
        }
        for a in 1..=d.arc_count() as u32 {
            let arc = ArcId(a);
            if d.head(arc).is_some() {
                chi[self.piece_of_arc(arc)] -= 1;
            }
        }
        for f in 0..self.len() {
            chi[self.piece_of_face[f]] += 1;
        }
        chi
    }
}

/// Connected pieces of the diagram's underlying graph, indexed by arc.
fn pieces(d: &LinkDiagram) -> Vec<usize> {
    let n = d.arc_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for c in d.crossings() {
        let arcs = c.arcs();
        let root = find(&mut parent, arcs[0].0 as usize - 1);
        for a in &arcs[1..] {
            let r = find(&mut parent, a.0 as usize - 1);
            parent[r] = root;
        }
    }
    let mut label: HashMap<usize, usize> = HashMap::new();
    (0..n)
        .map(|i| {
            let r = find(&mut parent, i);
            let next = label.len();
            *label.entry(r).or_insert(next)
        })
        .collect()
}
