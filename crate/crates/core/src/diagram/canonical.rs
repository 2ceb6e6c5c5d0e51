//! Canonical codes: the lexicographically least breadth-first serialization
//! over all root darts.

use std::cmp::Ordering;

use serde::{Serialize, Serializer};

use super::{Dart, Diagram};

/// Which relabelings a code is invariant under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    /// Orientation-preserving homeomorphisms of the sphere.
    Oriented,
    /// Additionally identifies a diagram with its mirror image, the
    /// reflection of the sphere (which keeps over/under data).
    Mirror,
    /// Ignores over/under data (the shadow), orientation-preserving.
    Shadow,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalCode(Vec<u16>);

impl CanonicalCode {
    pub fn words(&self) -> &[u16] {
        &self.0
    }

    /// Big-endian byte string; byte order agrees with code order.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|w| w.to_be_bytes()).collect()
    }

    pub fn to_hex(&self) -> String {
        self.to_bytes().iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

/// Canonical code of a connected diagram together with every root dart that
/// produces it. Roots correspond one-to-one with automorphisms.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub code: CanonicalCode,
    pub roots: Vec<Dart>,
}

pub(crate) struct Coder<'a> {
    pairing: &'a [Dart],
    reflect: bool,
    bits: Option<bool>,
    index: Vec<u32>,
    entry: Vec<Dart>,
}

const UNSEEN: u32 = u32::MAX;

impl<'a> Coder<'a> {
    /// `bits`: `None` ignores crossings, `Some(flip)` records the under/over
    /// parity of each entry dart, optionally flipped.
    pub(crate) fn new(pairing: &'a [Dart], reflect: bool, bits: Option<bool>) -> Self {
        let n = pairing.len() / 4;
        Coder {
            pairing,
            reflect,
            bits,
            index: vec![UNSEEN; n],
            entry: Vec::with_capacity(n),
        }
    }

    #[inline]
    fn step(&self, from: Dart, k: usize) -> Dart {
        if self.reflect {
            from.rotate(4 - k)
        } else {
            from.rotate(k)
        }
    }

    /// Writes the code rooted at `root` into `out`. When `best` is given the
    /// walk stops as soon as the code is known to exceed it; the returned
    /// ordering is relative to `best` (`Less` when there is none).
    pub(crate) fn encode(
        &mut self,
        root: Dart,
        best: Option<&[u16]>,
        out: &mut Vec<u16>,
    ) -> Ordering {
        for &c in &self.entry {
            self.index[c.crossing()] = UNSEEN;
        }
        self.entry.clear();
        out.clear();
        let mut state = if best.is_some() {
            Ordering::Equal
        } else {
            Ordering::Less
        };
        self.index[root.crossing()] = 0;
        self.entry.push(root);
        let mut head = 0;
        macro_rules! emit {
            ($w:expr) => {{
                let w: u16 = $w;
                if state == Ordering::Equal {
                    let b = best.unwrap();
                    let pos = out.len();
                    match w.cmp(&b[pos]) {
                        Ordering::Less => state = Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal => {}
                    }
                }
                out.push(w);
            }};
        }
        while head < self.entry.len() {
            let e = self.entry[head];
            if let Some(flip) = self.bits {
                emit!((e.is_over() ^ flip) as u16);
            }
            for k in 0..4 {
                let d = self.step(e, k);
                let p = self.pairing[d.index()];
                let pc = p.crossing();
                if self.index[pc] == UNSEEN {
                    self.index[pc] = self.entry.len() as u32;
                    self.entry.push(p);
                }
                let base = self.entry[self.index[pc] as usize];
                let rel = if self.reflect {
                    (base.slot() + 4 - p.slot()) & 3
                } else {
                    (p.slot() + 4 - base.slot()) & 3
                };
                emit!((self.index[pc] * 4 + rel as u32) as u16);
            }
            head += 1;
        }
        if state == Ordering::Equal && out.len() < best.unwrap().len() {
            state = Ordering::Less;
        }
        state
    }

    /// Label of every dart of the root's piece in the code rooted at `root`.
    pub(crate) fn labels(&mut self, root: Dart) -> Vec<u16> {
        let mut buf = Vec::new();
        self.encode(root, None, &mut buf);
        let mut labels = vec![u16::MAX; self.pairing.len()];
        for (i, &e) in self.entry.iter().enumerate() {
            for k in 0..4 {
                labels[self.step(e, k).index()] = (i * 4 + k) as u16;
            }
        }
        labels
    }

    /// Least code over the given roots, and the roots attaining it.
    pub(crate) fn minimize(&mut self, roots: impl Iterator<Item = Dart>) -> (Vec<u16>, Vec<Dart>) {
        let mut best: Vec<u16> = Vec::new();
        let mut have = false;
        let mut winners = Vec::new();
        let mut buf = Vec::new();
        for r in roots {
            let ord = self.encode(r, have.then_some(best.as_slice()), &mut buf);
            match ord {
                Ordering::Less => {
                    std::mem::swap(&mut best, &mut buf);
                    have = true;
                    winners.clear();
                    winners.push(r);
                }
                Ordering::Equal => winners.push(r),
                Ordering::Greater => {}
            }
        }
        (best, winners)
    }
}

impl Diagram {
    /// Canonical code; equal codes mean the diagrams are related by a
    /// relabeling allowed by `sym`.
    pub fn canonical_code(&self, sym: Symmetry) -> CanonicalCode {
        let variants: &[(bool, Option<bool>)] = match sym {
            Symmetry::Oriented => &[(false, Some(false))],
            Symmetry::Shadow => &[(false, None)],
            Symmetry::Mirror => &[(false, Some(false)), (true, Some(false))],
        };
        let (pieces, np) = self.piece_ids();
        let mut piece_darts: Vec<Vec<Dart>> = vec![Vec::new(); np];
        for d in self.darts() {
            piece_darts[pieces[d.crossing()]].push(d);
        }
        let mut best: Option<Vec<u16>> = None;
        for &(reflect, bits) in variants {
            let mut coder = Coder::new(&self.pairing, reflect, bits);
            let mut codes: Vec<Vec<u16>> = piece_darts
                .iter()
                .map(|ds| coder.minimize(ds.iter().copied()).0)
                .collect();
            codes.sort();
            let mut full = vec![
                self.crossing_count() as u16,
                self.free_loops as u16,
                np as u16,
            ];
            for c in codes {
                full.push(c.len() as u16);
                full.extend(c);
            }
            if best.as_ref().is_none_or(|b| full < *b) {
                best = Some(full);
            }
        }
        CanonicalCode(best.unwrap())
    }

    /// Canonical code of quotient form `quotient_mirror` as a byte string.
    pub fn canonical_bytes(&self, quotient_mirror: bool) -> Vec<u8> {
        let sym = if quotient_mirror {
            Symmetry::Mirror
        } else {
            Symmetry::Oriented
        };
        self.canonical_code(sym).to_bytes()
    }

    /// Canonical form with automorphism roots of a connected diagram with at
    /// least one crossing, under orientation-preserving relabelings. With
    /// `shadow` the crossing data is ignored.
    pub fn canonical_form(&self, shadow: bool) -> CanonicalForm {
        debug_assert!(self.crossing_count() > 0 && self.piece_ids().1 == 1);
        let bits = if shadow { None } else { Some(false) };
        let mut coder = Coder::new(&self.pairing, false, bits);
        let (code, roots) = coder.minimize(self.darts());
        CanonicalForm {
            code: CanonicalCode(code),
            roots,
        }
    }

    /// Dart labels in the serialization rooted at `root` (orientation kept).
    pub(crate) fn root_labels(&self, root: Dart, shadow: bool) -> Vec<u16> {
        let bits = if shadow { None } else { Some(false) };
        Coder::new(&self.pairing, false, bits).labels(root)
    }
}
