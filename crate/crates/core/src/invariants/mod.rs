//! Bracket, Jones polynomial, linking numbers and identification
//! fingerprints.

mod bracket;
mod laurent;

pub use bracket::{
    bracket_frontier, bracket_skein, bracket_state_sum, kauffman_bracket, FRONTIER_CAP,
    STATE_SUM_CAP,
};
pub use laurent::Laurent;

use serde::Serialize;

use crate::diagram::{Dart, Diagram};
use crate::error::{Error, Result};

/// Writhe sign of every crossing when strand `i` (in `Diagram::strands`
/// order) is walked backwards iff `reversed[i]`. Missing entries mean
/// forwards.
pub fn crossing_signs(d: &Diagram, reversed: &[bool]) -> Vec<i32> {
    let n = d.crossing_count();
    let mut under_out = vec![Dart(0); n];
    let mut over_out = vec![Dart(0); n];
    for (i, s) in d.strands().iter().enumerate() {
        let parity = reversed.get(i).copied().unwrap_or(false) as usize;
        for (k, &x) in s.darts.iter().enumerate() {
            if k % 2 == parity {
                if x.is_under() {
                    under_out[x.crossing()] = x;
                } else {
                    over_out[x.crossing()] = x;
                }
            }
        }
    }
    (0..n)
        .map(|c| Diagram::crossing_sign(under_out[c], over_out[c]))
        .collect()
}

pub fn writhe(d: &Diagram, reversed: &[bool]) -> i32 {
    crossing_signs(d, reversed).iter().sum()
}

/// Jones polynomial in the bracket variable: `(-A)^(-3w) <D>`.
pub fn jones(d: &Diagram, reversed: &[bool]) -> Result<Laurent> {
    let b = kauffman_bracket(d)?;
    Ok(normalize(&b, writhe(d, reversed)))
}

fn normalize(bracket: &Laurent, w: i32) -> Laurent {
    let k = -3 * w;
    let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    bracket.shift(k).scale(sign)
}

/// Jones polynomial of the `k`-component unlink.
pub fn unlink_jones(k: usize) -> Laurent {
    Laurent::delta().pow(k.saturating_sub(1) as u32)
}

/// Linking numbers between components; free circles link nothing.
pub fn linking_matrix(d: &Diagram, reversed: &[bool]) -> Result<Vec<Vec<i32>>> {
    let m = d.components();
    if m < 2 {
        return Err(Error::Contract(
            "linking numbers need at least two components".into(),
        ));
    }
    let ids = d.strand_ids();
    let signs = crossing_signs(d, reversed);
    let mut twice = vec![vec![0i32; m]; m];
    for (c, &s) in signs.iter().enumerate() {
        let i = ids[Dart::new(c, 0).index()];
        let j = ids[Dart::new(c, 1).index()];
        if i != j {
            twice[i][j] += s;
            twice[j][i] += s;
        }
    }
    Ok(twice
        .into_iter()
        .map(|row| row.into_iter().map(|v| v / 2).collect())
        .collect())
}

/// Invariant of the unoriented link up to mirror image.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub components: usize,
    /// Least Jones polynomial over orientation classes and mirror images.
    pub jones: Laurent,
    /// Sorted absolute pairwise linking numbers.
    pub linking: Vec<u32>,
}

pub fn fingerprint(d: &Diagram) -> Result<Fingerprint> {
    let bracket = kauffman_bracket(d)?;
    let strands = d.strands().len();
    let classes = 1usize << strands.saturating_sub(1);
    let mut best: Option<Laurent> = None;
    for mask in 0..classes {
        let reversed: Vec<bool> = (0..strands)
            .map(|i| i > 0 && mask >> (i - 1) & 1 == 1)
            .collect();
        let v = normalize(&bracket, writhe(d, &reversed));
        for cand in [v.invert(), v] {
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    let mut linking = Vec::new();
    if d.components() >= 2 {
        let lk = linking_matrix(d, &[])?;
        for i in 0..lk.len() {
            for j in i + 1..lk.len() {
                linking.push(lk[i][j].unsigned_abs());
            }
        }
        linking.sort_unstable();
    }
    Ok(Fingerprint {
        components: d.components(),
        jones: best.unwrap_or_else(|| unlink_jones(d.components())),
        linking,
    })
}
