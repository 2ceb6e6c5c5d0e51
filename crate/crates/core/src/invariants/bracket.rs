//! Three independent evaluations of the Kauffman bracket, normalized so that
//! a single circle has bracket 1.
//!
//! At a crossing the A-smoothing joins slots 0-1 and 2-3, the B-smoothing
//! joins slots 1-2 and 3-0.

use std::collections::HashMap;

use super::Laurent;
use crate::diagram::{CanonicalCode, Dart, Diagram, Symmetry};
use crate::error::{Error, Result};

/// Largest crossing count accepted by the state sum.
pub const STATE_SUM_CAP: usize = 24;

/// Largest number of open ends the frontier evaluator will carry.
pub const FRONTIER_CAP: usize = 28;

#[inline]
fn join_a(x: Dart) -> Dart {
    Dart(x.0 ^ 1)
}

#[inline]
fn join_b(x: Dart) -> Dart {
    Dart(x.0 ^ 3)
}

fn loops_factor(d: &Diagram, p: Laurent) -> Laurent {
    &p * &Laurent::delta().pow(d.free_loops() as u32)
}

fn crossing_free(d: &Diagram) -> Laurent {
    match d.free_loops() {
        0 => Laurent::one(),
        k => Laurent::delta().pow(k as u32 - 1),
    }
}

/// Sum over all `2^n` states of `A^(a-b) d^(loops-1)`.
pub fn bracket_state_sum(d: &Diagram) -> Result<Laurent> {
    let n = d.crossing_count();
    if n == 0 {
        return Ok(crossing_free(d));
    }
    if n > STATE_SUM_CAP {
        return Err(Error::Budget {
            crossings: n,
            cap: STATE_SUM_CAP,
        });
    }
    let darts = d.dart_count();
    // table[a][loops] where a = number of A-smoothings
    let mut table = vec![vec![0i64; darts + 1]; n + 1];
    let mut seen = vec![false; darts];
    for state in 0u64..(1u64 << n) {
        seen.iter_mut().for_each(|s| *s = false);
        let join = |x: Dart| {
            if state >> x.crossing() & 1 == 0 {
                join_a(x)
            } else {
                join_b(x)
            }
        };
        let mut cycles = 0;
        for start in 0..darts {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = Dart(start as u32);
            while !seen[x.index()] {
                seen[x.index()] = true;
                x = join(d.partner(x));
            }
        }
        let a = n - state.count_ones() as usize;
        table[a][cycles / 2] += 1;
    }
    let delta = Laurent::delta();
    let mut powers = vec![Laurent::one()];
    for k in 1..=darts {
        let next = &powers[k - 1] * &delta;
        powers.push(next);
    }
    let mut out = Laurent::zero();
    for (a, row) in table.iter().enumerate() {
        let e = 2 * a as i32 - n as i32;
        for (loops, &count) in row.iter().enumerate() {
            if count != 0 {
                out = &out + &powers[loops - 1].shift(e).scale(count);
            }
        }
    }
    Ok(loops_factor(d, out))
}

/// Recursive skein expansion `<D> = A <D_A> + A^-1 <D_B>`, memoized on
/// canonical codes.
pub fn bracket_skein(d: &Diagram) -> Laurent {
    let mut memo = HashMap::new();
    skein(d, &mut memo)
}

fn skein(d: &Diagram, memo: &mut HashMap<CanonicalCode, Laurent>) -> Laurent {
    if d.crossing_count() == 0 {
        return crossing_free(d);
    }
    let key = d.canonical_code(Symmetry::Oriented);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let (da, _) = d.splice_out(&[0], join_a);
    let (db, _) = d.splice_out(&[0], join_b);
    let v = &skein(&da, memo).shift(1) + &skein(&db, memo).shift(-1);
    memo.insert(key, v.clone());
    v
}

/// Crossing order for the frontier sweep: repeatedly take the crossing with
/// the most edges into the processed set.
fn sweep_order(d: &Diagram) -> Vec<usize> {
    let n = d.crossing_count();
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut touching = vec![0usize; n];
    for _ in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for c in 0..n {
            if done[c] {
                continue;
            }
            if best.is_none_or(|(_, t)| touching[c] > t) {
                best = Some((c, touching[c]));
            }
        }
        let (c, _) = best.unwrap();
        done[c] = true;
        order.push(c);
        for k in 0..4 {
            let p = d.partner(Dart::new(c, k)).crossing();
            if p != c {
                touching[p] += 1;
            }
        }
    }
    order
}

/// Sweeps crossings one at a time, tracking for each way the processed part
/// can be smoothed which open ends it connects. Cost depends on the widest
/// frontier rather than on `2^n`.
pub fn bracket_frontier(d: &Diagram) -> Result<Laurent> {
    let n = d.crossing_count();
    if n == 0 {
        return Ok(crossing_free(d));
    }
    let delta = Laurent::delta();
    let mut done = vec![false; n];
    let mut ends: Vec<Dart> = Vec::new();
    let mut states: HashMap<Vec<u8>, Laurent> = HashMap::new();
    states.insert(Vec::new(), Laurent::one());
    for c in sweep_order(d) {
        done[c] = true;
        let m = ends.len();
        // Node ids: 0..m for old ends, m..m+4 for the new crossing's darts.
        let mut glue: Vec<Option<usize>> = vec![None; m + 4];
        let mut end_index: HashMap<Dart, usize> = HashMap::with_capacity(m);
        for (i, &e) in ends.iter().enumerate() {
            end_index.insert(e, i);
        }
        for k in 0..4 {
            let x = Dart::new(c, k);
            let p = d.partner(x);
            if p.crossing() == c {
                glue[m + k] = Some(m + p.slot());
            } else if let Some(&i) = end_index.get(&p) {
                glue[m + k] = Some(i);
                glue[i] = Some(m + k);
            }
        }
        let mut new_pos = vec![usize::MAX; m + 4];
        let mut new_ends = Vec::new();
        for (node, g) in glue.iter().enumerate() {
            if g.is_none() {
                new_pos[node] = new_ends.len();
                new_ends.push(if node < m {
                    ends[node]
                } else {
                    Dart::new(c, node - m)
                });
            }
        }
        if new_ends.len() > FRONTIER_CAP {
            return Err(Error::Budget {
                crossings: n,
                cap: FRONTIER_CAP,
            });
        }
        let mut next: HashMap<Vec<u8>, Laurent> = HashMap::with_capacity(states.len() * 2);
        let mut arc = vec![0usize; m + 4];
        let mut seen = vec![false; m + 4];
        for (state, poly) in &states {
            for (i, &t) in state.iter().enumerate() {
                arc[i] = t as usize;
            }
            for (join, weight) in [(join_a as fn(Dart) -> Dart, 1), (join_b, -1)] {
                for k in 0..4 {
                    arc[m + k] = m + join(Dart(k as u32)).slot();
                }
                seen.iter_mut().for_each(|s| *s = false);
                let mut matching = vec![0u8; new_ends.len()];
                for start in 0..m + 4 {
                    if glue[start].is_some() || seen[start] {
                        continue;
                    }
                    let mut cur = start;
                    seen[cur] = true;
                    loop {
                        cur = arc[cur];
                        seen[cur] = true;
                        match glue[cur] {
                            Some(g) => {
                                cur = g;
                                seen[cur] = true;
                            }
                            None => break,
                        }
                    }
                    matching[new_pos[start]] = new_pos[cur] as u8;
                    matching[new_pos[cur]] = new_pos[start] as u8;
                }
                let mut cycles = 0u32;
                for start in 0..m + 4 {
                    if seen[start] {
                        continue;
                    }
                    cycles += 1;
                    let mut cur = start;
                    while !seen[cur] {
                        seen[cur] = true;
                        let a = arc[cur];
                        seen[a] = true;
                        cur = glue[a].expect("closed cycle");
                    }
                }
                let mut term = poly.shift(weight);
                for _ in 0..cycles {
                    term = &term * &delta;
                }
                next.entry(matching)
                    .and_modify(|p| *p = &*p + &term)
                    .or_insert(term);
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
        ends = new_ends;
    }
    debug_assert!(ends.is_empty());
    let total = states.remove(&Vec::new()).unwrap_or_default();
    let core = total
        .div_delta()
        .ok_or_else(|| Error::Contract("bracket sum not divisible by the loop value".into()))?;
    Ok(loops_factor(d, core))
}

/// Kauffman bracket: the state sum for small diagrams, the frontier sweep
/// above that.
pub fn kauffman_bracket(d: &Diagram) -> Result<Laurent> {
    if d.crossing_count() <= 6 {
        bracket_state_sum(d)
    } else {
        bracket_frontier(d)
    }
}
