//! Reidemeister moves: locating sites and applying them.

use bitflags::bitflags;
use serde::Serialize;

use crate::diagram::{Dart, Diagram, Face};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MoveKind {
    R1Down,
    R1Up,
    R2Down,
    R2Up,
    R3,
}

bitflags! {
    #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
    pub struct MoveKinds: u8 {
        const R1_DOWN = 1;
        const R1_UP = 2;
        const R2_DOWN = 4;
        const R2_UP = 8;
        const R3 = 16;
        const DECREASING = Self::R1_DOWN.bits() | Self::R2_DOWN.bits();
        const NON_INCREASING = Self::DECREASING.bits() | Self::R3.bits();
        const INCREASING = Self::R1_UP.bits() | Self::R2_UP.bits();
    }
}

/// A located move. Darts are face corners (see [`Face`]): a corner names
/// the boundary edge leaving it and the face it lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind")]
pub enum MoveSite {
    /// Remove the kink bounding the monogon at `corner`.
    R1Down { corner: Dart },
    /// Add a kink on the edge leaving `corner`, inside `corner`'s face, with
    /// the given writhe sign.
    R1Up { corner: Dart, positive: bool },
    /// Remove the bigon whose corners are `corners`.
    R2Down { corners: [Dart; 2] },
    /// Push the edge leaving `first` across the edge leaving `second`
    /// (both on one face), over it when `first_over`.
    R2Up {
        first: Dart,
        second: Dart,
        first_over: bool,
    },
    /// Slide across the triangle with these corners, in face order.
    R3 { corners: [Dart; 3] },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Down { .. } => MoveKind::R1Down,
            MoveSite::R1Up { .. } => MoveKind::R1Up,
            MoveSite::R2Down { .. } => MoveKind::R2Down,
            MoveSite::R2Up { .. } => MoveKind::R2Up,
            MoveSite::R3 { .. } => MoveKind::R3,
        }
    }

    /// Change in crossing count.
    pub fn delta(&self) -> i32 {
        match self.kind() {
            MoveKind::R1Down => -1,
            MoveKind::R1Up => 1,
            MoveKind::R2Down => -2,
            MoveKind::R2Up => 2,
            MoveKind::R3 => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TriangleClass {
    Omega3Applicable,
    CyclicPattern,
    DegenerateRepeatedCrossing,
}

fn triangle_class(d: &Diagram, c: [Dart; 3]) -> TriangleClass {
    let (a, b, e) = (c[0].crossing(), c[1].crossing(), c[2].crossing());
    if a == b || b == e || a == e {
        return TriangleClass::DegenerateRepeatedCrossing;
    }
    // Side k runs from corner k to corner k+1; it is "mixed" when its height
    // changes between the two ends. All three mixed is the cyclic pattern.
    let mixed = c.iter().all(|&x| x.is_over() != d.partner(x).is_over());
    if mixed {
        TriangleClass::CyclicPattern
    } else {
        TriangleClass::Omega3Applicable
    }
}

pub fn classify_triangle(d: &Diagram, f: &Face) -> Result<TriangleClass> {
    if f.degree() != 3 {
        return Err(Error::Contract(format!(
            "triangle classification needs a degree-3 face, got degree {}",
            f.degree()
        )));
    }
    Ok(triangle_class(
        d,
        [f.corners[0], f.corners[1], f.corners[2]],
    ))
}

fn is_r2_bigon(d: &Diagram, c: [Dart; 2]) -> bool {
    c[0].crossing() != c[1].crossing() && c[0].is_over() == d.partner(c[0]).is_over()
}

/// All sites of the requested kinds, in a deterministic order.
pub fn find_sites(d: &Diagram, kinds: MoveKinds) -> Vec<MoveSite> {
    let mut out = Vec::new();
    let faces = d.faces();
    for f in &faces {
        match f.degree() {
            1 if kinds.contains(MoveKinds::R1_DOWN) => {
                out.push(MoveSite::R1Down {
                    corner: f.corners[0],
                });
            }
            2 if kinds.contains(MoveKinds::R2_DOWN) => {
                let c = [f.corners[0], f.corners[1]];
                if is_r2_bigon(d, c) {
                    out.push(MoveSite::R2Down { corners: c });
                }
            }
            3 if kinds.contains(MoveKinds::R3) => {
                let c = [f.corners[0], f.corners[1], f.corners[2]];
                if triangle_class(d, c) == TriangleClass::Omega3Applicable {
                    out.push(MoveSite::R3 { corners: c });
                }
            }
            _ => {}
        }
    }
    if kinds.contains(MoveKinds::R1_UP) {
        for corner in d.darts() {
            for positive in [false, true] {
                out.push(MoveSite::R1Up { corner, positive });
            }
        }
    }
    if kinds.contains(MoveKinds::R2_UP) {
        for f in &faces {
            for i in 0..f.degree() {
                for j in i + 1..f.degree() {
                    for first_over in [false, true] {
                        out.push(MoveSite::R2Up {
                            first: f.corners[i],
                            second: f.corners[j],
                            first_over,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Number of triangles admitting a Reidemeister III move.
pub fn omega3_triangle_count(d: &Diagram) -> usize {
    find_sites(d, MoveKinds::R3).len()
}

fn stale(site: &MoveSite, why: &str) -> Error {
    Error::StaleSite(format!("{site:?}: {why}"))
}

fn check_range(d: &Diagram, site: &MoveSite, darts: &[Dart]) -> Result<()> {
    if darts.iter().any(|x| x.index() >= d.dart_count()) {
        return Err(stale(site, "dart out of range"));
    }
    Ok(())
}

/// Checks that `site` is applicable to `d` exactly as located.
pub fn validate(d: &Diagram, site: &MoveSite) -> Result<()> {
    match *site {
        MoveSite::R1Down { corner } => {
            check_range(d, site, &[corner])?;
            if d.face_step(corner) != corner {
                return Err(stale(site, "corner is not a monogon"));
            }
        }
        MoveSite::R1Up { corner, .. } => check_range(d, site, &[corner])?,
        MoveSite::R2Down { corners } => {
            check_range(d, site, &corners)?;
            if d.face_step(corners[0]) != corners[1] || d.face_step(corners[1]) != corners[0] {
                return Err(stale(site, "corners do not bound a bigon"));
            }
            if !is_r2_bigon(d, corners) {
                return Err(stale(site, "bigon is alternating or degenerate"));
            }
        }
        MoveSite::R2Up { first, second, .. } => {
            check_range(d, site, &[first, second])?;
            if first == second {
                return Err(stale(site, "needs two distinct edge sides"));
            }
            let mut x = d.face_step(first);
            while x != first && x != second {
                x = d.face_step(x);
            }
            if x != second {
                return Err(stale(site, "edge sides are not on one face"));
            }
        }
        MoveSite::R3 { corners } => {
            check_range(d, site, &corners)?;
            for k in 0..3 {
                if d.face_step(corners[k]) != corners[(k + 1) % 3] {
                    return Err(stale(site, "corners do not bound a triangle"));
                }
            }
            if triangle_class(d, corners) != TriangleClass::Omega3Applicable {
                return Err(stale(site, "triangle does not admit the move"));
            }
        }
    }
    Ok(())
}

/// Applies a move after re-validating it.
pub fn apply_move(d: &Diagram, site: &MoveSite) -> Result<Diagram> {
    validate(d, site)?;
    Ok(apply_unchecked(d, site))
}

pub(crate) fn apply_unchecked(d: &Diagram, site: &MoveSite) -> Diagram {
    match *site {
        MoveSite::R1Down { corner } => d.remove_crossings(&[corner.crossing()]),
        MoveSite::R2Down { corners } => {
            d.remove_crossings(&[corners[0].crossing(), corners[1].crossing()])
        }
        MoveSite::R1Up { corner, positive } => {
            let (k, w) = d.pinch_self(corner);
            let v = w[0].crossing();
            if (kink_sign(&k, v) > 0) != positive {
                k.switch_crossings(&[v])
            } else {
                k
            }
        }
        MoveSite::R2Up {
            first,
            second,
            first_over,
        } => {
            let (p, w) = d.pinch(first, second);
            let (q, z) = p.pinch(first, w[1]);
            // The first strand runs z0-z2 (under) then w1-w3 (over).
            let flip = if first_over { z[0] } else { w[0] };
            q.switch_crossings(&[flip.crossing()])
        }
        MoveSite::R3 { corners } => slide_triangle(d, corners),
    }
}

fn kink_sign(d: &Diagram, c: usize) -> i32 {
    // A kink's two strands belong to one component, so any orientation works.
    crate::invariants::crossing_signs(d, &[])[c]
}

/// Reidemeister III across a triangle: the three strands keep their heights
/// and the triangle's internal edges, while the two outer ends of every strand
/// exchange their attachments.
fn slide_triangle(d: &Diagram, c: [Dart; 3]) -> Diagram {
    let mut swap: Vec<(Dart, Dart)> = Vec::with_capacity(6);
    for k in 0..3 {
        let minus = c[k].opposite();
        let plus = d.partner(c[k]).opposite();
        swap.push((minus, plus));
        swap.push((plus, minus));
    }
    let sigma = |x: Dart| swap.iter().find(|(a, _)| *a == x).map(|(_, b)| *b);
    let tau = |x: Dart| sigma(x).unwrap_or(x);
    let mut pairing = d.pairing().to_vec();
    for &(o, so) in &swap {
        let target = tau(d.partner(so));
        pairing[o.index()] = target;
        pairing[target.index()] = o;
    }
    Diagram::from_parts(pairing, d.free_loops() as u32)
}

/// Every result of one move of the given kinds, paired with its site.
pub fn neighbors(d: &Diagram, kinds: MoveKinds) -> Vec<(MoveSite, Diagram)> {
    find_sites(d, kinds)
        .into_iter()
        .map(|s| {
            let next = apply_unchecked(d, &s);
            (s, next)
        })
        .collect()
}
