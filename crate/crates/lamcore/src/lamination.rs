//! Finite sets of pairwise-unlinked chords, their complementary faces, and
//! the invariance / cleanliness predicates.
//!
//! Laminations here are always finite truncations of the infinite objects
//! they model; the optional metadata records the generator angle and the
//! construction depth so that invariance checks know where the truncation
//! frontier lies.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::One;

use crate::angle::{in_open_arc, Angle};
use crate::chord::Chord;

/// Provenance of a truncated lamination: generator angle and pullback depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Meta {
    pub theta: Angle,
    pub depth: u32,
}

/// A finite lamination: non-degenerate, pairwise unlinked chords.
/// Degenerate leaves are implicit and never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lamination {
    leaves: BTreeSet<Chord>,
    pub meta: Option<Meta>,
}

/// One step of a face boundary walk, leading from a vertex to the next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceStep {
    /// The step runs along a leaf of the lamination.
    Edge,
    /// The step runs along an open circle arc (a hole of the face).
    Hole,
}

/// A complementary face of a finite lamination: the cyclic sequence of
/// boundary vertices together with the kind of step joining consecutive
/// ones. The empty item list encodes the whole disk (empty lamination).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    items: Vec<(Angle, FaceStep)>,
}

impl Face {
    pub fn whole_disk() -> Self {
        Face { items: Vec::new() }
    }

    /// A single leaf presented as a two-vertex face (used for central gaps
    /// that degenerate to one invariant leaf).
    pub fn from_leaf(c: &Chord) -> Self {
        let (a, b) = c.endpoints();
        Face {
            items: alloc::vec![
                (a.clone(), FaceStep::Edge),
                (b.clone(), FaceStep::Edge),
            ],
        }
    }

    fn from_walk(mut items: Vec<(Angle, FaceStep)>) -> Self {
        // canonical rotation: least vertex first
        if let Some(min_idx) = items
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .0.cmp(&b.1 .0))
            .map(|(i, _)| i)
        {
            items.rotate_left(min_idx);
        }
        Face { items }
    }

    pub fn is_whole_disk(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[(Angle, FaceStep)] {
        &self.items
    }

    pub fn vertices(&self) -> Vec<Angle> {
        self.items.iter().map(|(a, _)| a.clone()).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.items.len()
    }

    pub fn has_vertex(&self, x: &Angle) -> bool {
        self.items.iter().any(|(a, _)| a == x)
    }

    /// The boundary leaves of the face.
    pub fn edges(&self) -> Vec<Chord> {
        let n = self.items.len();
        let mut out = Vec::new();
        for i in 0..n {
            if self.items[i].1 == FaceStep::Edge {
                let a = self.items[i].0.clone();
                let b = self.items[(i + 1) % n].0.clone();
                if a != b {
                    out.push(Chord::new(a, b));
                }
            }
        }
        out
    }

    /// The open boundary arcs `(from, to)` of the face, counterclockwise.
    pub fn holes(&self) -> Vec<(Angle, Angle)> {
        let n = self.items.len();
        let mut out = Vec::new();
        for i in 0..n {
            if self.items[i].1 == FaceStep::Hole {
                out.push((self.items[i].0.clone(), self.items[(i + 1) % n].0.clone()));
            }
        }
        out
    }

    /// Finite-type: every boundary arc between consecutive vertices is an
    /// edge of the lamination.
    pub fn is_finite_type(&self) -> bool {
        !self.items.is_empty() && self.items.iter().all(|(_, s)| *s == FaceStep::Edge)
    }

    /// Whether the open face region contains the disk center. Exact: the
    /// center lies on the face side of every boundary edge iff the arc cut
    /// off behind each edge is shorter than a half turn.
    pub fn contains_center(&self) -> bool {
        if self.items.is_empty() {
            return true;
        }
        let half = Ratio::new(BigInt::one(), BigInt::from(2));
        let n = self.items.len();
        for i in 0..n {
            if self.items[i].1 == FaceStep::Edge {
                let v = &self.items[i].0;
                let w = &self.items[(i + 1) % n].0;
                if v.ccw_distance(w) >= half {
                    return false;
                }
            }
        }
        true
    }

    /// The arc cut off behind a boundary edge, as `(from, to, length)`;
    /// `None` if the chord is not an edge of this face.
    pub fn hole_behind(&self, edge: &Chord) -> Option<(Angle, Angle, Ratio<BigInt>)> {
        let n = self.items.len();
        for i in 0..n {
            if self.items[i].1 == FaceStep::Edge {
                let v = self.items[i].0.clone();
                let w = self.items[(i + 1) % n].0.clone();
                if &Chord::new(v.clone(), w.clone()) == edge {
                    let len = v.ccw_distance(&w);
                    return Some((v, w, len));
                }
            }
        }
        None
    }

    /// True iff `x` lies strictly inside one of the face's holes.
    pub fn hole_contains(&self, x: &Angle) -> bool {
        self.holes()
            .iter()
            .any(|(a, b)| in_open_arc(x, a, b))
    }
}

impl Lamination {
    pub fn new(leaves: impl IntoIterator<Item = Chord>, meta: Option<Meta>) -> Self {
        let leaves = leaves
            .into_iter()
            .filter(|c| !c.is_degenerate())
            .collect();
        Lamination { leaves, meta }
    }

    pub fn empty() -> Self {
        Lamination {
            leaves: BTreeSet::new(),
            meta: None,
        }
    }

    pub fn leaves(&self) -> impl Iterator<Item = &Chord> {
        self.leaves.iter()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn contains(&self, c: &Chord) -> bool {
        self.leaves.contains(c)
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    /// All distinct endpoint angles, sorted.
    pub fn vertices(&self) -> Vec<Angle> {
        let mut set = BTreeSet::new();
        for c in &self.leaves {
            let (a, b) = c.endpoints();
            set.insert(a.clone());
            set.insert(b.clone());
        }
        set.into_iter().collect()
    }

    /// Pairwise unlinkedness. Runs on integer endpoint indices.
    pub fn validate(&self) -> bool {
        let verts = self.vertices();
        let idx: BTreeMap<&Angle, usize> =
            verts.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let chords: Vec<(usize, usize)> = self
            .leaves
            .iter()
            .map(|c| {
                let (a, b) = c.endpoints();
                (idx[a], idx[b])
            })
            .collect();
        for i in 0..chords.len() {
            let (a, b) = chords[i];
            for &(c, d) in &chords[i + 1..] {
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                let c_in = a < c && c < b;
                let d_in = a < d && d < b;
                if c_in != d_in {
                    return false;
                }
            }
        }
        true
    }

    /// Complementary faces of the chord arrangement, extracted by a walk
    /// around every region: at each vertex the boundary turns to the
    /// nearest neighbor clockwise of the reversed incoming direction.
    pub fn faces(&self) -> Vec<Face> {
        let verts = self.vertices();
        let m = verts.len();
        if m == 0 {
            return alloc::vec![Face::whole_disk()];
        }
        let idx: BTreeMap<&Angle, usize> =
            verts.iter().enumerate().map(|(i, a)| (a, i)).collect();

        // rotation list per vertex: chords sorted by ccw distance to the
        // other endpoint; conceptual slots: [ccw-arc] + chords + [cw-arc]
        let mut rot: Vec<Vec<usize>> = alloc::vec![Vec::new(); m];
        for c in &self.leaves {
            let (a, b) = c.endpoints();
            rot[idx[a]].push(idx[b]);
            rot[idx[b]].push(idx[a]);
        }
        for (v, list) in rot.iter_mut().enumerate() {
            let base = &verts[v];
            list.sort_by(|x, y| {
                base.ccw_distance(&verts[*x]).cmp(&base.ccw_distance(&verts[*y]))
            });
            list.dedup();
        }

        // directed edges: arcs i -> i+1 (one per vertex), chords both ways
        #[derive(Clone, Copy, PartialEq, Eq, Debug)]
        enum DE {
            Arc(usize),          // from vertex i to i+1 mod m
            Chord(usize, usize), // from -> to
        }
        let mut edges: Vec<DE> = (0..m).map(DE::Arc).collect();
        for c in &self.leaves {
            let (a, b) = c.endpoints();
            edges.push(DE::Chord(idx[a], idx[b]));
            edges.push(DE::Chord(idx[b], idx[a]));
        }
        let key = |e: &DE| -> (usize, usize, usize) {
            match e {
                DE::Arc(i) => (0, *i, 0),
                DE::Chord(a, b) => (1, *a, *b),
            }
        };
        let mut order: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            order.insert(key(e), i);
        }

        // successor of a directed edge along the face on its left
        let next_edge = |e: &DE| -> DE {
            let (w, rev_slot) = match e {
                // arrived at w = i+1 along the arc; reversed direction is the
                // cw-arc slot, one past the last chord entry
                DE::Arc(i) => ((*i + 1) % m, rot[(*i + 1) % m].len() + 1),
                DE::Chord(u, w) => {
                    let pos = rot[*w].iter().position(|x| x == u).expect("chord listed");
                    (*w, pos + 1) // +1: slot 0 is the ccw-arc
                }
            };
            // step to the previous rotation slot (clockwise neighbor)
            let prev = rev_slot - 1; // rev_slot >= 1 always: slot 0 is never a reversed arrival
            if prev == 0 {
                DE::Arc(w)
            } else {
                DE::Chord(w, rot[w][prev - 1])
            }
        };

        let mut used = alloc::vec![false; edges.len()];
        let mut faces = Vec::new();
        for start in 0..edges.len() {
            if used[start] {
                continue;
            }
            let mut walk: Vec<(Angle, FaceStep)> = Vec::new();
            let mut e = edges[start];
            loop {
                let i = order[&key(&e)];
                if used[i] {
                    break;
                }
                used[i] = true;
                match e {
                    DE::Arc(i) => walk.push((verts[i].clone(), FaceStep::Hole)),
                    DE::Chord(u, _) => walk.push((verts[u].clone(), FaceStep::Edge)),
                }
                e = next_edge(&e);
            }
            faces.push(Face::from_walk(walk));
        }
        faces
    }

    /// The unique face whose hole interior contains `x`, if any.
    pub fn face_at_arc_point(&self, x: &Angle) -> Option<Face> {
        self.faces().into_iter().find(|f| f.hole_contains(x))
    }

    /// Every leaf's forward image is a leaf or degenerate.
    pub fn is_forward_invariant(&self) -> bool {
        self.leaves.iter().all(|c| {
            let im = c.image();
            im.is_degenerate() || self.leaves.contains(&im)
        })
    }

    /// Forward invariance plus siblings plus preimages, with the preimage
    /// requirement applied only below the truncation frontier recorded in
    /// the metadata (all leaves when there is no metadata).
    pub fn is_invariant(&self) -> bool {
        if !self.is_forward_invariant() {
            return false;
        }
        // sibling: a distinct leaf with the same image; leaves collapsing to
        // a point have the implicit degenerate sibling
        for c in &self.leaves {
            let im = c.image();
            if im.is_degenerate() {
                continue;
            }
            let has_sibling = self
                .leaves
                .iter()
                .any(|d| d != c && d.image() == im);
            if !has_sibling {
                return false;
            }
        }
        // preimages below the frontier
        let frontier = self.meta.as_ref().map(|m| m.depth);
        let baseline = self
            .leaves
            .iter()
            .map(|c| chord_preperiod(c))
            .min()
            .unwrap_or(0);
        for c in &self.leaves {
            let interior = match frontier {
                None => true,
                Some(n) => (chord_preperiod(c) - baseline) < n as usize,
            };
            if !interior {
                continue;
            }
            let count = self.leaves.iter().filter(|d| d.image() == *c).count();
            if count < 2 {
                return false;
            }
        }
        true
    }

    /// Whenever two leaves share an endpoint they must lie on the boundary
    /// of a common finite-type face.
    pub fn is_clean(&self) -> bool {
        // group leaves by endpoint
        let mut by_endpoint: BTreeMap<&Angle, Vec<&Chord>> = BTreeMap::new();
        for c in &self.leaves {
            let (a, b) = c.endpoints();
            by_endpoint.entry(a).or_default().push(c);
            by_endpoint.entry(b).or_default().push(c);
        }
        if by_endpoint.values().all(|v| v.len() < 2) {
            return true;
        }
        let finite_edge_sets: Vec<BTreeSet<Chord>> = self
            .faces()
            .into_iter()
            .filter(|f| f.is_finite_type())
            .map(|f| f.edges().into_iter().collect())
            .collect();
        for leaves in by_endpoint.values() {
            for i in 0..leaves.len() {
                for j in (i + 1)..leaves.len() {
                    let ok = finite_edge_sets
                        .iter()
                        .any(|s| s.contains(leaves[i]) && s.contains(leaves[j]));
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The face a given face maps onto under doubling, located through an
    /// interior circle point (hole midpoint) or, for finite faces, through
    /// the image vertex set.
    pub fn face_image(&self, face: &Face, faces: &[Face]) -> Option<Face> {
        if face.is_whole_disk() {
            return Some(face.clone());
        }
        let holes = face.holes();
        if holes.is_empty() {
            let imgs: BTreeSet<Angle> =
                face.vertices().iter().map(|v| v.double()).collect();
            return faces
                .iter()
                .find(|f| {
                    f.is_finite_type()
                        && f.vertices().iter().cloned().collect::<BTreeSet<_>>() == imgs
                })
                .cloned();
        }
        let (a, b) = &holes[0];
        let mid = midpoint_ccw(a, b);
        let target = mid.double();
        faces
            .iter()
            .find(|f| f.hole_contains(&target) || f.has_vertex(&target))
            .cloned()
    }
}

/// The midpoint of the counterclockwise arc from `a` to `b`.
pub fn midpoint_ccw(a: &Angle, b: &Angle) -> Angle {
    let d = a.ccw_distance(b);
    Angle::from_ratio(a.ratio() + d / BigInt::from(2))
}

/// Steps of the chord-image map until the orbit of the chord repeats.
pub fn chord_preperiod(c: &Chord) -> usize {
    let mut seen: Vec<Chord> = Vec::new();
    let mut cur = c.clone();
    loop {
        if let Some(i) = seen.iter().position(|d| *d == cur) {
            return i;
        }
        seen.push(cur.clone());
        cur = cur.image();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ang(n: i64, d: i64) -> Angle {
        Angle::new(n, d).unwrap()
    }

    fn ch(p: (i64, i64), q: (i64, i64)) -> Chord {
        Chord::new(ang(p.0, p.1), ang(q.0, q.1))
    }

    fn lam(chords: &[((i64, i64), (i64, i64))]) -> Lamination {
        Lamination::new(chords.iter().map(|&(p, q)| ch(p, q)), None)
    }

    #[test]
    fn validate_examples() {
        assert!(lam(&[((1, 3), (2, 3)), ((5, 6), (1, 6))]).validate());
        assert!(!lam(&[((0, 1), (1, 2)), ((1, 4), (3, 4))]).validate());
        assert!(Lamination::empty().validate());
    }

    #[test]
    fn faces_counts() {
        assert_eq!(lam(&[((0, 1), (1, 2))]).faces().len(), 2);
        assert_eq!(Lamination::empty().faces().len(), 1);
        let l = lam(&[((1, 3), (2, 3)), ((5, 6), (1, 6))]);
        let faces = l.faces();
        assert_eq!(faces.len(), 3);
        // the central face has vertices 1/6, 1/3, 2/3, 5/6
        let central: Vec<_> = faces
            .iter()
            .filter(|f| f.vertex_count() == 4)
            .collect();
        assert_eq!(central.len(), 1);
        assert_eq!(
            central[0].vertices(),
            alloc::vec![ang(1, 6), ang(1, 3), ang(2, 3), ang(5, 6)]
        );
        assert!(central[0].contains_center());
        assert_eq!(central[0].edges().len(), 2);
        assert_eq!(central[0].holes().len(), 2);
    }

    #[test]
    fn faces_generic_count_property() {
        // n leaves with pairwise distinct endpoints -> n + 1 faces
        let l = lam(&[((1, 16), (2, 16)), ((3, 16), (6, 16)), ((4, 16), (5, 16))]);
        assert!(l.validate());
        assert_eq!(l.faces().len(), 4);
    }

    #[test]
    fn triangle_face_is_finite() {
        let l = lam(&[((1, 7), (2, 7)), ((2, 7), (4, 7)), ((4, 7), (1, 7))]);
        let faces = l.faces();
        assert_eq!(faces.len(), 4);
        let fin: Vec<_> = faces.iter().filter(|f| f.is_finite_type()).collect();
        assert_eq!(fin.len(), 1);
        assert_eq!(fin[0].vertex_count(), 3);
        assert!(l.is_clean());
        assert!(l.is_forward_invariant());
    }

    #[test]
    fn forward_invariance_examples() {
        assert!(lam(&[((1, 3), (2, 3))]).is_forward_invariant());
        assert!(!lam(&[((1, 5), (2, 5))]).is_forward_invariant());
    }

    #[test]
    fn invariance_examples() {
        assert!(Lamination::empty().is_invariant());
        assert!(!lam(&[((1, 3), (2, 3))]).is_invariant());
    }

    #[test]
    fn cleanliness_examples() {
        // concatenation with no closing third leaf
        assert!(!lam(&[((0, 1), (1, 4)), ((1, 4), (1, 2))]).is_clean());
        // no shared endpoints at all
        assert!(lam(&[((1, 16), (2, 16)), ((3, 16), (4, 16))]).is_clean());
    }

    #[test]
    fn rotation_invariance_of_predicates() {
        let base = lam(&[((1, 7), (2, 7)), ((2, 7), (4, 7)), ((4, 7), (1, 7))]);
        let rot = Angle::new(1, 5).unwrap();
        let rotated = Lamination::new(base.leaves().map(|c| c.rotate(&rot)), None);
        assert_eq!(base.validate(), rotated.validate());
        assert_eq!(base.is_clean(), rotated.is_clean());
        assert_eq!(base.faces().len(), rotated.faces().len());
        let conj = Lamination::new(base.leaves().map(|c| c.conjugate()), None);
        assert_eq!(base.validate(), conj.validate());
        assert_eq!(base.is_clean(), conj.is_clean());
        assert_eq!(base.faces().len(), conj.faces().len());
    }
}
