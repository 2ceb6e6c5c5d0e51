use serde::Serialize;

use super::{Dart, Diagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub is_connected: bool,
    pub is_reduced: bool,
    pub is_prime: bool,
    pub is_alternating: bool,
}

impl Diagram {
    pub fn predicates(&self) -> Predicates {
        Predicates {
            is_connected: self.is_connected(),
            is_reduced: self.is_reduced(),
            is_prime: self.is_prime(),
            is_alternating: self.is_alternating(),
        }
    }

    /// Crossings with two opposite corners on one face.
    pub fn nugatory_crossings(&self) -> Vec<usize> {
        let (faces, _) = self.face_ids();
        (0..self.crossing_count())
            .filter(|&c| {
                (0..2).any(|k| {
                    let d = Dart::new(c, k);
                    faces[d.index()] == faces[d.opposite().index()]
                })
            })
            .collect()
    }

    pub fn is_reduced(&self) -> bool {
        let (faces, _) = self.face_ids();
        self.darts()
            .all(|d| faces[d.index()] != faces[d.opposite().index()])
    }

    /// Over and under alternate along every strand: each edge joins an over
    /// dart to an under dart.
    pub fn is_alternating(&self) -> bool {
        self.darts()
            .all(|d| d.is_over() != self.partner(d).is_over())
    }

    /// Connected, at least one crossing, and no pair of edges bounding the
    /// same two faces whose removal splits the crossings in two.
    pub fn is_prime(&self) -> bool {
        if self.crossing_count() == 0 || self.free_loops > 0 || self.piece_ids().1 != 1 {
            return false;
        }
        let (faces, _) = self.face_ids();
        let mut edges: Vec<(usize, usize, Dart)> = self
            .darts()
            .filter(|&d| d < self.partner(d))
            .map(|d| {
                let a = faces[d.index()];
                let b = faces[self.partner(d).index()];
                (a.min(b), a.max(b), d)
            })
            .collect();
        edges.sort();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                if (edges[j].0, edges[j].1) != (edges[i].0, edges[i].1) {
                    break;
                }
                if edges[i].0 == edges[i].1 {
                    continue;
                }
                if self.cut_disconnects(&[edges[i].2, edges[j].2]) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether deleting the edges at the given darts disconnects the graph.
    pub(crate) fn cut_disconnects(&self, cut: &[Dart]) -> bool {
        let n = self.crossing_count();
        let is_cut = |d: Dart| cut.iter().any(|&c| c == d || self.partner(c) == d);
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for k in 0..4 {
                let d = Dart::new(v, k);
                if is_cut(d) {
                    continue;
                }
                let w = self.partner(d).crossing();
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached < n
    }
}


#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn trefoil_predicates() {
        let p = trefoil().predicates();
        assert_eq!(
            p,
            Predicates {
                is_connected: true,
                is_reduced: true,
                is_prime: true,
                is_alternating: true
            }
        );
    }

    #[test]
    fn kink_is_nugatory() {
        let k = kinked_trefoil();
        assert!(!k.is_reduced());
        assert!(!k.is_prime());
        assert_eq!(k.nugatory_crossings(), vec![3]);
    }

    #[test]
    fn mirror_keeps_alternation() {
        for d in [trefoil(), hopf(), figure_eight()] {
            assert!(d.mirror().is_alternating());
            assert!(d.switch_all().is_alternating());
        }
    }
}
