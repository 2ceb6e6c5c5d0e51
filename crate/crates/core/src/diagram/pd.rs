//! Planar diagram (PD) codes.
//!
//! A code is a list of records `X[a,b,c,d]`: the four edge labels met
//! counterclockwise around a crossing, starting on the under-strand. Every
//! label occurs exactly twice. An optional `loops=k` line adds `k`
//! crossing-free circles.

use std::collections::HashMap;
use std::fmt::Write;
use std::sync::OnceLock;

use regex::Regex;

use super::{Dart, Diagram};
use crate::error::{Error, Result};

fn record_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]").unwrap()
    })
}

fn loops_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"loops\s*=\s*(\d+)").unwrap())
}

impl Diagram {
    /// Parses a PD code. `PD[...]` wrappers and commas between records are
    /// accepted; anything else outside the records is rejected.
    pub fn parse_pd(text: &str) -> Result<Diagram> {
        let mut loops = 0usize;
        if let Some(c) = loops_re().captures(text) {
            loops = c[1]
                .parse()
                .map_err(|_| Error::MalformedCode("bad loop count".into()))?;
        }
        let stripped = loops_re().replace_all(text, "");
        let mut records = Vec::new();
        let mut rest = String::new();
        let mut last = 0;
        for c in record_re().captures_iter(&stripped) {
            let m = c.get(0).unwrap();
            rest.push_str(&stripped[last..m.start()]);
            last = m.end();
            let mut rec = [0i64; 4];
            for (k, r) in rec.iter_mut().enumerate() {
                *r = c[k + 1]
                    .parse()
                    .map_err(|_| Error::MalformedCode(format!("bad label in {}", m.as_str())))?;
                if *r <= 0 {
                    return Err(Error::MalformedCode(format!(
                        "labels must be positive integers, got {}",
                        *r
                    )));
                }
            }
            records.push(rec);
        }
        rest.push_str(&stripped[last..]);
        let leftover: String = rest
            .replace("PD[", "")
            .chars()
            .filter(|ch| !ch.is_whitespace() && *ch != ',' && *ch != ']')
            .collect();
        if !leftover.is_empty() {
            return Err(Error::MalformedCode(format!(
                "unexpected text {leftover:?}"
            )));
        }

        let mut seen: HashMap<i64, Vec<Dart>> = HashMap::new();
        for (c, rec) in records.iter().enumerate() {
            for (slot, &label) in rec.iter().enumerate() {
                seen.entry(label).or_default().push(Dart::new(c, slot));
            }
        }
        let mut pairing = vec![Dart(0); records.len() * 4];
        let mut labels: Vec<_> = seen.into_iter().collect();
        labels.sort_by_key(|(l, _)| *l);
        for (label, darts) in labels {
            if darts.len() != 2 {
                return Err(Error::MalformedCode(format!(
                    "label {label} appears {} times",
                    darts.len()
                )));
            }
            pairing[darts[0].index()] = darts[1];
            pairing[darts[1].index()] = darts[0];
        }
        Diagram::from_pairing(pairing, loops)
    }

    /// Emits a PD code with edge labels numbered along the strands.
    pub fn emit_pd(&self) -> String {
        let mut label = vec![0usize; self.dart_count()];
        let mut next = 1;
        for s in self.strands() {
            for pair in s.darts.chunks(2) {
                label[pair[0].index()] = next;
                label[pair[1].index()] = next;
                next += 1;
            }
        }
        let mut out = String::new();
        if self.free_loops > 0 {
            write!(out, "loops={}", self.free_loops).unwrap();
            if self.crossing_count() > 0 {
                out.push('\n');
            }
        }
        for c in 0..self.crossing_count() {
            if c > 0 {
                out.push(' ');
            }
            let l: Vec<usize> = (0..4).map(|k| label[Dart::new(c, k).index()]).collect();
            write!(out, "X[{},{},{},{}]", l[0], l[1], l[2], l[3]).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::diagram::Symmetry;

    #[test]
    fn parses_trefoil() {
        let t = trefoil();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.face_count(), 5);
    }

    #[test]
    fn empty_code_with_loop() {
        let u = Diagram::parse_pd("loops=1").unwrap();
        assert_eq!(u, Diagram::unknot());
        assert_eq!(u.crossing_count(), 0);
        assert_eq!(Diagram::parse_pd("").unwrap().crossing_count(), 0);
    }

    #[test]
    fn two_crossing_four_edge_maps() {
        // Same counterclockwise order at both ends is a torus map.
        let e = Diagram::parse_pd("X[1,2,3,4] X[1,2,3,4]").unwrap_err();
        assert_eq!(
            e,
            Error::NonSpherical {
                crossings: 2,
                faces: 2,
                expected: 4
            }
        );
        let d = Diagram::parse_pd("X[1,2,3,4] X[1,4,3,2]").unwrap();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.face_count(), 4);
        assert_eq!(d.components(), 2);
    }

    #[test]
    fn rejects_bad_label_counts() {
        let e = Diagram::parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,7]").unwrap_err();
        assert!(matches!(e, Error::MalformedCode(_)));
        assert!(Diagram::parse_pd("X[1,1,1,2]").is_err());
        assert!(Diagram::parse_pd("Y[1,2]").is_err());
    }

    #[test]
    fn rejects_toroidal_code() {
        // One crossing with opposite slots joined: a figure drawn on the torus.
        let e = Diagram::parse_pd("X[1,2,1,2]").unwrap_err();
        assert!(matches!(e, Error::NonSpherical { .. }));
    }

    #[test]
    fn accepts_wrapped_form() {
        let d = Diagram::parse_pd("PD[X[1, 5, 2, 4], X[3, 1, 4, 6], X[5, 3, 6, 2]]").unwrap();
        assert_eq!(d, trefoil());
    }

    #[test]
    fn emit_round_trip() {
        for d in [
            trefoil(),
            hopf(),
            figure_eight(),
            kinked_trefoil(),
            Diagram::unlink(2),
        ] {
            let back = Diagram::parse_pd(&d.emit_pd()).unwrap();
            assert_eq!(
                back.canonical_code(Symmetry::Oriented),
                d.canonical_code(Symmetry::Oriented)
            );
        }
        assert_eq!(Diagram::unknot().emit_pd(), "loops=1");
    }
}
