//! Link diagrams on the sphere as 4-valent combinatorial maps.
//!
//! Crossing `c` owns the darts `4c..4c+4`. Slots are numbered counterclockwise,
//! the under-strand runs through slots 0 and 2 and the over-strand through
//! slots 1 and 3. The only stored data is the edge pairing (a fixed-point-free
//! involution on darts) and a count of crossing-free circles.

mod canonical;
mod pd;
pub(crate) mod predicates;
mod sum;

pub use canonical::{CanonicalCode, CanonicalForm, Symmetry};
pub use predicates::Predicates;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Half-edge at a crossing: `4 * crossing + slot`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Dart(pub u32);

impl Dart {
    #[inline]
    pub fn new(crossing: usize, slot: usize) -> Dart {
        Dart((crossing * 4 + (slot & 3)) as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn crossing(self) -> usize {
        (self.0 >> 2) as usize
    }

    #[inline]
    pub fn slot(self) -> usize {
        (self.0 & 3) as usize
    }

    /// Next dart counterclockwise around the same crossing.
    #[inline]
    pub fn next(self) -> Dart {
        Dart((self.0 & !3) | ((self.0 + 1) & 3))
    }

    #[inline]
    pub fn prev(self) -> Dart {
        Dart((self.0 & !3) | ((self.0 + 3) & 3))
    }

    /// The dart the strand continues through on the far side of the crossing.
    #[inline]
    pub fn opposite(self) -> Dart {
        Dart(self.0 ^ 2)
    }

    #[inline]
    pub fn is_under(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub fn is_over(self) -> bool {
        self.0 & 1 == 1
    }

    /// Dart `k` steps counterclockwise from this one.
    #[inline]
    pub fn rotate(self, k: usize) -> Dart {
        Dart((self.0 & !3) | ((self.0 + k as u32) & 3))
    }
}

impl fmt::Debug for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.crossing(), self.slot())
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A region of the diagram: the cyclic sequence of corners met while walking
/// its boundary. Corner `d` sits at `d.crossing()` between `d.prev()` and `d`;
/// the boundary edge leaving the corner is `{d, partner(d)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Face {
    pub corners: Vec<Dart>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.corners.len()
    }
}

/// One closed strand (link component) given as the dart sequence
/// `out, in, out, in, ...` met while walking it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub darts: Vec<Dart>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    pairing: Vec<Dart>,
    free_loops: u32,
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({})", self.emit_pd().replace('\n', " "))
    }
}

impl Diagram {
    /// Crossing-free diagram of `loops` disjoint circles.
    pub fn unlink(loops: usize) -> Diagram {
        Diagram {
            pairing: Vec::new(),
            free_loops: loops as u32,
        }
    }

    pub fn unknot() -> Diagram {
        Diagram::unlink(1)
    }

    /// Builds a diagram from an explicit pairing, checking the involution and
    /// the genus-0 condition on every piece.
    pub fn from_pairing(pairing: Vec<Dart>, free_loops: usize) -> Result<Diagram> {
        if !pairing.len().is_multiple_of(4) {
            return Err(Error::MalformedCode(format!(
                "dart count {} is not a multiple of 4",
                pairing.len()
            )));
        }
        for (i, &p) in pairing.iter().enumerate() {
            if p.index() >= pairing.len() {
                return Err(Error::DartOutOfRange {
                    dart: p.index(),
                    darts: pairing.len(),
                });
            }
            if p.index() == i || pairing[p.index()].index() != i {
                return Err(Error::MalformedCode(format!(
                    "pairing is not a fixed-point-free involution at dart {i}"
                )));
            }
        }
        let d = Diagram {
            pairing,
            free_loops: free_loops as u32,
        };
        d.check_spherical()?;
        Ok(d)
    }

    pub(crate) fn from_parts(pairing: Vec<Dart>, free_loops: u32) -> Diagram {
        let d = Diagram {
            pairing,
            free_loops,
        };
        debug_assert!(d.check_spherical().is_ok(), "non-spherical result {d:?}");
        d
    }

    pub fn crossing_count(&self) -> usize {
        self.pairing.len() / 4
    }

    pub fn dart_count(&self) -> usize {
        self.pairing.len()
    }

    pub fn edge_count(&self) -> usize {
        self.pairing.len() / 2
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops as usize
    }

    pub fn pairing(&self) -> &[Dart] {
        &self.pairing
    }

    #[inline]
    pub fn partner(&self, d: Dart) -> Dart {
        self.pairing[d.index()]
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        (0..self.pairing.len() as u32).map(Dart)
    }

    /// Face permutation: cross the edge, then turn counterclockwise.
    #[inline]
    pub fn face_step(&self, d: Dart) -> Dart {
        self.partner(d).next()
    }

    pub fn faces(&self) -> Vec<Face> {
        let (ids, count) = self.face_ids();
        let mut faces = vec![
            Face {
                corners: Vec::new()
            };
            count
        ];
        let mut seen = vec![false; self.dart_count()];
        for start in self.darts() {
            if seen[start.index()] {
                continue;
            }
            let f = &mut faces[ids[start.index()]];
            let mut d = start;
            loop {
                seen[d.index()] = true;
                f.corners.push(d);
                d = self.face_step(d);
                if d == start {
                    break;
                }
            }
        }
        faces
    }

    /// Face id per dart, numbered by smallest dart, and the face count
    /// (crossing-free circles contribute no faces here).
    pub fn face_ids(&self) -> (Vec<usize>, usize) {
        let mut ids = vec![usize::MAX; self.dart_count()];
        let mut count = 0;
        for start in self.darts() {
            if ids[start.index()] != usize::MAX {
                continue;
            }
            let mut d = start;
            loop {
                ids[d.index()] = count;
                d = self.face_step(d);
                if d == start {
                    break;
                }
            }
            count += 1;
        }
        (ids, count)
    }

    /// Total region count on the sphere, counting each piece (and each free
    /// circle) as drawn in its own sphere.
    pub fn face_count(&self) -> usize {
        self.face_ids().1 + 2 * self.free_loops()
    }

    /// Crossing -> piece id for the connected pieces of the 4-valent graph.
    pub fn piece_ids(&self) -> (Vec<usize>, usize) {
        let n = self.crossing_count();
        let mut ids = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for c in 0..n {
            if ids[c] != usize::MAX {
                continue;
            }
            ids[c] = count;
            stack.push(c);
            while let Some(v) = stack.pop() {
                for k in 0..4 {
                    let w = self.partner(Dart::new(v, k)).crossing();
                    if ids[w] == usize::MAX {
                        ids[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (ids, count)
    }

    /// Number of pieces with crossings, plus free circles.
    pub fn piece_count(&self) -> usize {
        self.piece_ids().1 + self.free_loops()
    }

    pub fn is_connected(&self) -> bool {
        self.piece_count() <= 1
    }

    fn check_spherical(&self) -> Result<()> {
        let (pieces, np) = self.piece_ids();
        let (faces, _) = self.face_ids();
        let mut verts = vec![0usize; np];
        let mut face_sets: Vec<Vec<usize>> = vec![Vec::new(); np];
        for c in 0..self.crossing_count() {
            verts[pieces[c]] += 1;
        }
        for d in self.darts() {
            face_sets[pieces[d.crossing()]].push(faces[d.index()]);
        }
        for p in 0..np {
            let fs = &mut face_sets[p];
            fs.sort_unstable();
            fs.dedup();
            if fs.len() != verts[p] + 2 {
                return Err(Error::NonSpherical {
                    crossings: verts[p],
                    faces: fs.len(),
                    expected: verts[p] + 2,
                });
            }
        }
        Ok(())
    }

    /// Closed strands, ordered by their smallest dart; each walk starts at that
    /// dart and leaves its crossing through it.
    pub fn strands(&self) -> Vec<Strand> {
        let mut seen = vec![false; self.dart_count()];
        let mut out = Vec::new();
        for start in self.darts() {
            if seen[start.index()] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            loop {
                let inc = self.partner(d);
                seen[d.index()] = true;
                seen[inc.index()] = true;
                darts.push(d);
                darts.push(inc);
                d = inc.opposite();
                if d == start {
                    break;
                }
            }
            out.push(Strand { darts });
        }
        out
    }

    /// Strand index per dart, following `strands()` order.
    pub fn strand_ids(&self) -> Vec<usize> {
        let mut ids = vec![0; self.dart_count()];
        for (i, s) in self.strands().iter().enumerate() {
            for d in &s.darts {
                ids[d.index()] = i;
            }
        }
        ids
    }

    /// Link components: closed strands plus crossing-free circles.
    pub fn components(&self) -> usize {
        self.strands().len() + self.free_loops()
    }

    /// Mirror image by reflecting the sphere: each rotation is reversed while
    /// under/over slots keep their roles (slot k becomes slot -k).
    pub fn mirror(&self) -> Diagram {
        let flip = |d: Dart| Dart::new(d.crossing(), (4 - d.slot()) & 3);
        let mut pairing = vec![Dart(0); self.dart_count()];
        for d in self.darts() {
            pairing[flip(d).index()] = flip(self.partner(d));
        }
        Diagram::from_parts(pairing, self.free_loops)
    }

    /// Changes every crossing.
    pub fn switch_all(&self) -> Diagram {
        let all: Vec<usize> = (0..self.crossing_count()).collect();
        self.switch_crossings(&all)
    }

    /// Changes the given crossings by rotating their slot labels one step.
    pub fn switch_crossings(&self, crossings: &[usize]) -> Diagram {
        let mut shift = vec![0usize; self.crossing_count()];
        for &c in crossings {
            shift[c] ^= 1;
        }
        self.rotate_slots(&shift)
    }

    /// Relabels slot k at crossing c as slot k + shift[c]; odd shifts change
    /// the crossing.
    pub(crate) fn rotate_slots(&self, shift: &[usize]) -> Diagram {
        let map = |d: Dart| d.rotate(shift[d.crossing()]);
        let mut pairing = vec![Dart(0); self.dart_count()];
        for d in self.darts() {
            pairing[map(d).index()] = map(self.partner(d));
        }
        Diagram::from_parts(pairing, self.free_loops)
    }

    /// Renames crossings by `perm` (old -> new) and rotates each crossing's
    /// slots by an even amount; the result is isomorphic to `self`.
    pub fn relabel(&self, perm: &[usize], even_shift: &[usize]) -> Diagram {
        let map = |d: Dart| {
            Dart::new(
                perm[d.crossing()],
                d.slot() + 2 * (even_shift[d.crossing()] & 1),
            )
        };
        let mut pairing = vec![Dart(0); self.dart_count()];
        for d in self.darts() {
            pairing[map(d).index()] = map(self.partner(d));
        }
        Diagram::from_parts(pairing, self.free_loops)
    }

    /// Removes crossings, joining the dart pairs given by `join` inside each
    /// removed crossing. Strand pieces that close up entirely inside the
    /// removed set become free circles. Returns the new diagram and the map
    /// from old to new darts (`None` for removed darts).
    pub(crate) fn splice_out(
        &self,
        removed: &[usize],
        join: impl Fn(Dart) -> Dart,
    ) -> (Diagram, Vec<Option<Dart>>) {
        let n = self.crossing_count();
        let mut gone = vec![false; n];
        for &c in removed {
            gone[c] = true;
        }
        let mut new_index = vec![usize::MAX; n];
        let mut next = 0;
        for c in 0..n {
            if !gone[c] {
                new_index[c] = next;
                next += 1;
            }
        }
        let map = |d: Dart| -> Option<Dart> {
            let c = new_index[d.crossing()];
            (c != usize::MAX).then(|| Dart::new(c, d.slot()))
        };
        let mut pairing = vec![Dart(0); next * 4];
        let mut visited = vec![false; self.dart_count()];
        for d in self.darts() {
            let Some(nd) = map(d) else { continue };
            let mut y = self.partner(d);
            while gone[y.crossing()] {
                visited[y.index()] = true;
                let z = join(y);
                visited[z.index()] = true;
                y = self.partner(z);
            }
            pairing[nd.index()] = map(y).expect("live dart");
        }
        let mut loops = self.free_loops;
        for &c in removed {
            for k in 0..4 {
                let start = Dart::new(c, k);
                if visited[start.index()] {
                    continue;
                }
                let mut y = start;
                loop {
                    visited[y.index()] = true;
                    let z = join(y);
                    visited[z.index()] = true;
                    y = self.partner(z);
                    if y == start {
                        break;
                    }
                }
                loops += 1;
            }
        }
        let mapping = self.darts().map(map).collect();
        (Diagram::from_parts(pairing, loops), mapping)
    }

    /// Removes crossings letting both strands pass straight through.
    pub(crate) fn remove_crossings(&self, removed: &[usize]) -> Diagram {
        self.splice_out(removed, Dart::opposite).0
    }

    /// Smooths crossing `c` by joining corner `(d, d.next())` and corner
    /// `(d.opposite(), d.opposite().next())`.
    #[cfg(test)]
    pub(crate) fn smooth(&self, d: Dart) -> Diagram {
        let join = move |x: Dart| {
            let rel = (x.slot() + 4 - d.slot()) & 3;
            match rel {
                0 => x.next(),
                1 => x.prev(),
                2 => x.next(),
                _ => x.prev(),
            }
        };
        self.splice_out(&[d.crossing()], join).0
    }

    /// Inserts a crossing where the boundary edges leaving corners `a` and `b`
    /// of one face touch inside that face. Returns the diagram and the new
    /// darts `w0..w3`: `a -- w0`, `w3 -- old partner(a)`, `b -- w2`,
    /// `w1 -- old partner(b)`. The strand entering from `a` leaves towards
    /// `b`; smoothing at `w1` recovers the original diagram.
    pub(crate) fn pinch(&self, a: Dart, b: Dart) -> (Diagram, [Dart; 4]) {
        debug_assert_ne!(a, b);
        let v = self.crossing_count();
        let w = [
            Dart::new(v, 0),
            Dart::new(v, 1),
            Dart::new(v, 2),
            Dart::new(v, 3),
        ];
        let xa = self.partner(a);
        let xb = self.partner(b);
        let mut pairing = self.pairing.clone();
        pairing.extend_from_slice(&[Dart(0); 4]);
        let mut link = |p: Dart, q: Dart| {
            pairing[p.index()] = q;
            pairing[q.index()] = p;
        };
        link(a, w[0]);
        link(w[3], xa);
        link(b, w[2]);
        link(w[1], xb);
        (Diagram::from_parts(pairing, self.free_loops), w)
    }

    /// Inserts a kink on the edge leaving corner `a`, with the new monogon
    /// inside the face of `a`. New darts: `a -- w0`, loop `w1 -- w2`,
    /// `w3 -- old partner(a)`.
    pub(crate) fn pinch_self(&self, a: Dart) -> (Diagram, [Dart; 4]) {
        let v = self.crossing_count();
        let w = [
            Dart::new(v, 0),
            Dart::new(v, 1),
            Dart::new(v, 2),
            Dart::new(v, 3),
        ];
        let xa = self.partner(a);
        let mut pairing = self.pairing.clone();
        pairing.extend_from_slice(&[Dart(0); 4]);
        let mut link = |p: Dart, q: Dart| {
            pairing[p.index()] = q;
            pairing[q.index()] = p;
        };
        link(a, w[0]);
        link(w[1], w[2]);
        link(w[3], xa);
        (Diagram::from_parts(pairing, self.free_loops), w)
    }

    /// Replaces one free circle by a 1-crossing kink diagram.
    pub(crate) fn kink_free_loop(&self) -> Option<(Diagram, [Dart; 4])> {
        if self.free_loops == 0 {
            return None;
        }
        let v = self.crossing_count();
        let w = [
            Dart::new(v, 0),
            Dart::new(v, 1),
            Dart::new(v, 2),
            Dart::new(v, 3),
        ];
        let mut pairing = self.pairing.clone();
        pairing.extend_from_slice(&[w[3], w[2], w[1], w[0]]);
        Some((Diagram::from_parts(pairing, self.free_loops - 1), w))
    }

    /// Writhe sign of crossing `c` when its under-strand leaves through
    /// `under_out` and its over-strand leaves through `over_out`.
    pub fn crossing_sign(under_out: Dart, over_out: Dart) -> i32 {
        let su = if under_out.slot() == 2 { 1 } else { -1 };
        let so = if over_out.slot() == 3 { 1 } else { -1 };
        -su * so
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn trefoil_faces() {
        let t = trefoil();
        assert_eq!(t.crossing_count(), 3);
        let mut deg: Vec<usize> = t.faces().iter().map(Face::degree).collect();
        deg.sort();
        assert_eq!(deg, vec![2, 2, 2, 3, 3]);
        assert_eq!(t.components(), 1);
    }

    #[test]
    fn unknot_has_two_regions() {
        assert_eq!(Diagram::unknot().face_count(), 2);
        assert_eq!(Diagram::unknot().components(), 1);
    }

    #[test]
    fn hopf_has_two_components() {
        assert_eq!(hopf().components(), 2);
    }

    #[test]
    fn mirror_is_involution() {
        let t = trefoil();
        assert_eq!(t.mirror().mirror(), t);
        assert_eq!(Diagram::unknot().mirror(), Diagram::unknot());
    }

    #[test]
    fn pinch_keeps_sphere() {
        let t = trefoil();
        for f in t.faces() {
            for i in 0..f.degree() {
                for j in 0..f.degree() {
                    if i != j {
                        let (p, _) = t.pinch(f.corners[i], f.corners[j]);
                        assert_eq!(p.face_count(), 6);
                    }
                }
                let (k, w) = t.pinch_self(f.corners[i]);
                assert_eq!(k.face_count(), 6);
                assert_eq!(k.partner(w[1]), w[2]);
            }
        }
    }

    #[test]
    fn smoothing_undoes_pinch() {
        let t = trefoil();
        let f = &t.faces()[0];
        let (p, w) = t.pinch(f.corners[0], f.corners[1]);
        assert_eq!(p.smooth(w[1]), t);
        let (k, w) = t.pinch_self(f.corners[0]);
        assert_eq!(k.smooth(w[0]), t);
    }

    #[test]
    fn splice_counts_closed_loops() {
        // Removing the only crossing of a kinked circle leaves one circle.
        let (k, _) = Diagram::unknot().kink_free_loop().unwrap();
        assert_eq!(k.remove_crossings(&[0]), Diagram::unknot());
    }
}
