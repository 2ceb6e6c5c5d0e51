use super::{Dart, Diagram};
use crate::error::{Error, Result};

impl Diagram {
    /// Disjoint union; the second diagram's crossings are renumbered after the
    /// first's.
    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let off = self.dart_count() as u32;
        let mut pairing = self.pairing.clone();
        pairing.extend(other.pairing.iter().map(|d| Dart(d.0 + off)));
        Diagram::from_parts(pairing, self.free_loops + other.free_loops)
    }

    /// Connected pieces that carry crossings, ordered by their least
    /// crossing. Free circles are not included.
    pub fn pieces(&self) -> Vec<Diagram> {
        let (ids, np) = self.piece_ids();
        let mut index = vec![0usize; self.crossing_count()];
        let mut sizes = vec![0usize; np];
        for (c, &p) in ids.iter().enumerate() {
            index[c] = sizes[p];
            sizes[p] += 1;
        }
        let mut pairings: Vec<Vec<Dart>> = sizes.iter().map(|&k| vec![Dart(0); 4 * k]).collect();
        for d in self.darts() {
            let q = self.partner(d);
            pairings[ids[d.crossing()]][Dart::new(index[d.crossing()], d.slot()).index()] =
                Dart::new(index[q.crossing()], q.slot());
        }
        pairings
            .into_iter()
            .map(|p| Diagram::from_parts(p, 0))
            .collect()
    }

    /// Connected sum along the edge `{a, partner(a)}` of `self` and the edge
    /// `{b, partner(b)}` of `other`. Without `twist` the face on `a`'s side
    /// merges with the face on `b`'s side; with `twist` it merges with the
    /// face on the other side of `b`'s edge.
    ///
    /// A crossing-free circle on either side acts as the identity.
    pub fn connected_sum(&self, a: Dart, other: &Diagram, b: Dart, twist: bool) -> Result<Diagram> {
        if self.crossing_count() == 0 {
            if self.free_loops == 0 {
                return Err(Error::Contract(
                    "connected sum with an empty diagram".into(),
                ));
            }
            let mut out = other.clone();
            out.free_loops += self.free_loops - 1;
            return Ok(out);
        }
        if a.index() >= self.dart_count() {
            return Err(Error::DartOutOfRange {
                dart: a.index(),
                darts: self.dart_count(),
            });
        }
        if other.crossing_count() == 0 {
            if other.free_loops == 0 {
                return Err(Error::Contract(
                    "connected sum with an empty diagram".into(),
                ));
            }
            let mut out = self.clone();
            out.free_loops += other.free_loops - 1;
            return Ok(out);
        }
        if b.index() >= other.dart_count() {
            return Err(Error::DartOutOfRange {
                dart: b.index(),
                darts: other.dart_count(),
            });
        }
        let off = self.dart_count() as u32;
        let mut u = self.disjoint_union(other);
        let a2 = self.partner(a);
        let b1 = Dart(b.0 + off);
        let b2 = Dart(other.partner(b).0 + off);
        let (p, q) = if twist { (b1, b2) } else { (b2, b1) };
        u.pairing[a.index()] = p;
        u.pairing[p.index()] = a;
        u.pairing[a2.index()] = q;
        u.pairing[q.index()] = a2;
        Ok(Diagram::from_parts(u.pairing, u.free_loops))
    }

    /// Whether `self` splits as a connected sum through the edges at `a` and
    /// `b` (both must bound the same two faces).
    pub fn is_sum_cut(&self, a: Dart, b: Dart) -> bool {
        let (f, _) = self.face_ids();
        let fa = [f[a.index()], f[self.partner(a).index()]];
        let fb = [f[b.index()], f[self.partner(b).index()]];
        let same = (fa[0] == fb[0] && fa[1] == fb[1]) || (fa[0] == fb[1] && fa[1] == fb[0]);
        same && fa[0] != fa[1] && self.cut_disconnects(&[a, b])
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::diagram::Symmetry;

    fn degree_multiset(d: &Diagram) -> Vec<usize> {
        let mut v: Vec<usize> = d.faces().iter().map(|f| f.degree()).collect();
        v.sort();
        v
    }

    #[test]
    fn granny_knot_faces() {
        let t = trefoil();
        for twist in [false, true] {
            let s = t.connected_sum(Dart(0), &t, Dart(5), twist).unwrap();
            assert_eq!(s.crossing_count(), 6);
            assert_eq!(s.face_count(), 8);
            assert_eq!(s.components(), 1);
            assert!(!s.is_prime());
            assert!(s.is_reduced());
        }
    }

    #[test]
    fn unknot_is_identity() {
        let t = trefoil();
        let s = t
            .connected_sum(Dart(3), &Diagram::unknot(), Dart(0), false)
            .unwrap();
        assert_eq!(s, t);
        let s = Diagram::unknot()
            .connected_sum(Dart(0), &t, Dart(3), true)
            .unwrap();
        assert_eq!(
            s.canonical_code(Symmetry::Oriented),
            t.canonical_code(Symmetry::Oriented)
        );
    }

    #[test]
    fn merged_face_degrees() {
        let t = trefoil();
        let h = hopf();
        for a in t.darts() {
            for b in h.darts() {
                for twist in [false, true] {
                    let s = t.connected_sum(a, &h, b, twist).unwrap();
                    let (ft, _) = t.face_ids();
                    let (fh, _) = h.face_ids();
                    let tf = t.faces();
                    let hf = h.faces();
                    let (b_same, b_other) = (fh[b.index()], fh[h.partner(b).index()]);
                    let (x, y) = if twist {
                        (b_other, b_same)
                    } else {
                        (b_same, b_other)
                    };
                    let mut expect: Vec<usize> = Vec::new();
                    let fa = ft[a.index()];
                    let fa2 = ft[t.partner(a).index()];
                    for (i, f) in tf.iter().enumerate() {
                        if i != fa && i != fa2 {
                            expect.push(f.degree());
                        }
                    }
                    for (i, f) in hf.iter().enumerate() {
                        if i != x && i != y {
                            expect.push(f.degree());
                        }
                    }
                    expect.push(tf[fa].degree() + hf[x].degree());
                    expect.push(tf[fa2].degree() + hf[y].degree());
                    expect.sort();
                    assert_eq!(degree_multiset(&s), expect);
                    assert_eq!(s.components(), 2);
                }
            }
        }
    }

    #[test]
    fn disjoint_union_counts() {
        let u = Diagram::unknot().disjoint_union(&Diagram::unknot());
        assert_eq!((u.crossing_count(), u.components()), (0, 2));
        let v = trefoil().disjoint_union(&Diagram::unknot());
        assert_eq!((v.crossing_count(), v.components()), (3, 2));
        assert!(!v.is_connected());
    }

    #[test]
    fn pieces_split_unions() {
        let u = trefoil()
            .disjoint_union(&hopf())
            .disjoint_union(&Diagram::unknot());
        let p = u.pieces();
        assert_eq!(p.len(), 2);
        assert_eq!(p[0], trefoil());
        assert_eq!(p[1], hopf());
        assert_eq!(trefoil().pieces(), vec![trefoil()]);
    }
}
