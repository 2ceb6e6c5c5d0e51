use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::diagram::{CanonicalCode, Diagram, Symmetry};
use crate::moves::{neighbors, MoveKinds};

/// Limits for state-space searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Distinct diagrams a single search may visit.
    pub max_states: usize,
    /// Extra crossings allowed above the start when searching with
    /// crossing-increasing moves.
    pub max_crossings_up: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_states: 200_000,
            max_crossings_up: 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Complete,
    BudgetExhausted,
    /// Stopped on reaching a diagram that satisfied the stop condition.
    Stopped,
}

/// Outcome of a breadth-first search under R1 down, R2 down and R3.
#[derive(Clone, Debug)]
pub struct Closure {
    pub min_crossings: usize,
    pub size: usize,
    pub status: SearchStatus,
    /// Members without any crossing-reducing move, in discovery order.
    pub dead_ends: Vec<Diagram>,
    /// The member that triggered the stop condition, if any.
    pub stopped_at: Option<Diagram>,
    pub members: Vec<Diagram>,
}

/// Every diagram reachable from `d` without increasing the crossing count,
/// up to isotopy of the sphere.
pub fn nonincreasing_closure(d: &Diagram, budget: &SearchBudget) -> Closure {
    closure_until(d, budget, |_| false)
}

/// Breadth-first closure that stops as soon as `stop` holds for a member.
pub fn closure_until(
    d: &Diagram,
    budget: &SearchBudget,
    stop: impl Fn(&Diagram) -> bool,
) -> Closure {
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    seen.insert(d.canonical_code(Symmetry::Oriented));
    let mut queue = VecDeque::from([d.clone()]);
    let mut out = Closure {
        min_crossings: d.crossing_count(),
        size: 1,
        status: SearchStatus::Complete,
        dead_ends: Vec::new(),
        stopped_at: None,
        members: vec![d.clone()],
    };
    if stop(d) {
        out.status = SearchStatus::Stopped;
        out.stopped_at = Some(d.clone());
        return out;
    }
    while let Some(x) = queue.pop_front() {
        let next = neighbors(&x, MoveKinds::NON_INCREASING);
        if next.iter().all(|(s, _)| s.delta() == 0) {
            out.dead_ends.push(x.clone());
        }
        for (_, y) in next {
            if !seen.insert(y.canonical_code(Symmetry::Oriented)) {
                continue;
            }
            out.size += 1;
            out.min_crossings = out.min_crossings.min(y.crossing_count());
            out.members.push(y.clone());
            if stop(&y) {
                out.status = SearchStatus::Stopped;
                out.stopped_at = Some(y);
                return out;
            }
            if out.size >= budget.max_states {
                out.status = SearchStatus::BudgetExhausted;
                return out;
            }
            queue.push_back(y);
        }
    }
    out
}

/// A connected reduced alternating diagram realizes the crossing number of
/// its link; so does any crossing-free diagram.
pub fn is_certified_minimal(d: &Diagram) -> bool {
    if d.crossing_count() == 0 {
        return true;
    }
    d.free_loops() == 0 && d.piece_ids().1 == 1 && d.is_reduced() && d.is_alternating()
}

/// Outcome of a search that may use crossing-increasing moves.
#[derive(Clone, Debug)]
pub struct Reach {
    pub found: Option<Diagram>,
    pub visited: usize,
    pub status: SearchStatus,
}

/// Best-first search over all Reidemeister moves, never exceeding
/// `d.crossing_count() + budget.max_crossings_up` crossings, always
/// expanding a diagram with the fewest crossings first.
pub fn reach(d: &Diagram, budget: &SearchBudget, target: impl Fn(&Diagram) -> bool) -> Reach {
    let cap = d.crossing_count() + budget.max_crossings_up;
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    seen.insert(d.canonical_code(Symmetry::Oriented));
    let mut heap = BinaryHeap::new();
    let mut store = vec![d.clone()];
    heap.push(Reverse((d.crossing_count(), 0usize)));
    if target(d) {
        return Reach {
            found: Some(d.clone()),
            visited: 1,
            status: SearchStatus::Stopped,
        };
    }
    while let Some(Reverse((_, i))) = heap.pop() {
        let x = store[i].clone();
        let mut kinds = MoveKinds::NON_INCREASING;
        if x.crossing_count() < cap {
            kinds |= MoveKinds::R1_UP;
        }
        if x.crossing_count() + 2 <= cap {
            kinds |= MoveKinds::R2_UP;
        }
        for (_, y) in neighbors(&x, kinds) {
            if !seen.insert(y.canonical_code(Symmetry::Oriented)) {
                continue;
            }
            if target(&y) {
                return Reach {
                    found: Some(y),
                    visited: seen.len(),
                    status: SearchStatus::Stopped,
                };
            }
            if seen.len() >= budget.max_states {
                return Reach {
                    found: None,
                    visited: seen.len(),
                    status: SearchStatus::BudgetExhausted,
                };
            }
            heap.push(Reverse((y.crossing_count(), store.len())));
            store.push(y);
        }
    }
    Reach {
        found: None,
        visited: seen.len(),
        status: SearchStatus::Complete,
    }
}

/// Oriented codes of `d` and its three mirror variants.
pub fn mirror_variants(d: &Diagram) -> Vec<CanonicalCode> {
    let mut v: Vec<CanonicalCode> = [
        d.clone(),
        d.mirror(),
        d.switch_all(),
        d.mirror().switch_all(),
    ]
    .iter()
    .map(|x| x.canonical_code(Symmetry::Oriented))
    .collect();
    v.sort();
    v.dedup();
    v
}
