//! Independent oracles and random sources shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::sync::OnceLock;

use rand::seq::IndexedRandom;
use rand::Rng;

use hardknots::exec::Exec;
use hardknots::invariants::jones;
use hardknots::moves::{apply_move, find_sites};
use hardknots::search::{Enumerator, Shadow, ShapeFilter};
use hardknots::{Dart, Diagram, MoveKind, MoveKinds, MoveSite, Symmetry};

// ---------------------------------------------------------------------------
// Brute-force rotation systems.

/// A connected 4-valent map: darts `4c..4c+4` sit counterclockwise at
/// crossing `c`; `flip[c]` moves the under-strand from slots {0,2} to {1,3}.
#[derive(Clone, Debug)]
pub struct RawMap {
    pub n: usize,
    pub pairing: Vec<usize>,
    pub flip: Vec<bool>,
}

impl RawMap {
    pub fn from_diagram(d: &Diagram) -> RawMap {
        RawMap {
            n: d.crossing_count(),
            pairing: d.pairing().iter().map(|x| x.index()).collect(),
            flip: vec![false; d.crossing_count()],
        }
    }

    pub fn to_diagram(&self) -> Diagram {
        let pairing = self
            .pairing
            .iter()
            .map(|&x| Dart::new(x / 4, x % 4))
            .collect();
        let d = Diagram::from_pairing(pairing, 0).expect("oracle maps are planar");
        let flipped: Vec<usize> = (0..self.n).filter(|&c| self.flip[c]).collect();
        d.switch_crossings(&flipped)
    }

    pub fn faces(&self) -> usize {
        let step = |x: usize| {
            let y = self.pairing[x];
            4 * (y / 4) + (y % 4 + 1) % 4
        };
        let mut seen = vec![false; 4 * self.n];
        let mut count = 0;
        for s in 0..4 * self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = step(x);
            }
        }
        count
    }

    /// Breadth-first code from `root`: each new crossing is entered at its
    /// local slot 0; crossing data is included when `heights` is set.
    fn code_from(&self, root: usize, heights: bool) -> Vec<u16> {
        let mut label = vec![usize::MAX; self.n];
        let mut base = vec![0; self.n];
        let mut order = vec![root / 4];
        label[root / 4] = 0;
        base[root / 4] = root % 4;
        let mut code = Vec::with_capacity(9 * self.n);
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            if heights {
                code.push(((base[c] + self.flip[c] as usize) % 2) as u16);
            }
            for k in 0..4 {
                let p = self.pairing[4 * c + (base[c] + k) % 4];
                let pc = p / 4;
                if label[pc] == usize::MAX {
                    label[pc] = order.len();
                    base[pc] = p % 4;
                    order.push(pc);
                }
                code.push(label[pc] as u16);
                code.push(((p % 4 + 4 - base[pc]) % 4) as u16);
            }
            i += 1;
        }
        code
    }

    /// Minimum code over all roots: a complete invariant of the map up to
    /// orientation-preserving isomorphism.
    pub fn code(&self, heights: bool) -> Vec<u16> {
        (0..4 * self.n)
            .map(|r| self.code_from(r, heights))
            .min()
            .unwrap_or_default()
    }
}

/// Every rooted connected 4-valent map with `n` vertices (any genus),
/// generated by pairing the lowest open dart either with another open dart
/// or with slot 0 of a fresh crossing.
pub fn rooted_maps(n: usize, mut visit: impl FnMut(&RawMap)) {
    fn go(p: &mut Vec<usize>, k: usize, n: usize, visit: &mut dyn FnMut(&RawMap)) {
        const OPEN: usize = usize::MAX;
        let Some(x) = (0..4 * k).find(|&x| p[x] == OPEN) else {
            if k == n {
                visit(&RawMap {
                    n,
                    pairing: p.clone(),
                    flip: vec![false; n],
                });
            }
            return;
        };
        for y in x + 1..4 * k {
            if p[y] == OPEN {
                p[x] = y;
                p[y] = x;
                go(p, k, n, visit);
                p[x] = OPEN;
                p[y] = OPEN;
            }
        }
        if k < n {
            p[x] = 4 * k;
            p[4 * k] = x;
            go(p, k + 1, n, visit);
            p[x] = OPEN;
            p[4 * k] = OPEN;
        }
    }
    if n == 0 {
        return;
    }
    let mut p = vec![usize::MAX; 4 * n];
    go(&mut p, 1, n, &mut visit);
}

pub struct ShadowCensus {
    /// Planar rooted maps generated.
    pub rooted: u64,
    /// Isomorphism classes, one representative each, keyed by code.
    pub classes: std::collections::BTreeMap<Vec<u16>, RawMap>,
}

/// Connected spherical shadows with `n` crossings by brute force.
pub fn shadow_census(n: usize) -> ShadowCensus {
    let mut rooted = 0;
    let mut classes = std::collections::BTreeMap::new();
    rooted_maps(n, |m| {
        if m.faces() == n + 2 {
            rooted += 1;
            classes.entry(m.code(false)).or_insert_with(|| m.clone());
        }
    });
    ShadowCensus { rooted, classes }
}

/// Rooted planar 4-regular maps with `n` vertices: 2·3^n·(2n)!/(n!(n+2)!).
pub fn rooted_formula(n: u64) -> u64 {
    let mut num: u128 = 2 * 3u128.pow(n as u32);
    for k in n + 1..=2 * n {
        num *= k as u128;
    }
    let mut den: u128 = 1;
    for k in 1..=n + 2 {
        den *= k as u128;
    }
    // (2n)!/(n!(n+2)!) = (n+1)...(2n) / (n+2)!
    (num / den) as u64
}

/// Diagram classes with `n` crossings: every crossing assignment on every
/// brute-force shadow, deduplicated by the oracle's own code.
pub fn naive_diagram_codes(n: usize) -> BTreeSet<Vec<u16>> {
    let mut out = BTreeSet::new();
    for m in shadow_census(n).classes.into_values() {
        for bits in 0u32..1 << n {
            let mut m = m.clone();
            m.flip = (0..n).map(|c| bits >> c & 1 == 1).collect();
            out.insert(m.code(true));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Move sites by trial.

/// A site up to the choice of starting corner; crossing-increasing moves
/// are keyed by their result since several parameterizations coincide.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SiteKey {
    pub kind: MoveKind,
    pub darts: Vec<usize>,
    pub result: Vec<u8>,
}

pub fn site_key(d: &Diagram, site: &MoveSite) -> SiteKey {
    let (mut darts, keep_result) = match *site {
        MoveSite::R1Down { corner } => (vec![corner.index()], false),
        MoveSite::R1Up { corner, positive } => (vec![corner.index(), positive as usize], false),
        MoveSite::R2Down { corners } => (corners.iter().map(|x| x.index()).collect(), false),
        MoveSite::R2Up { first, second, .. } => (vec![first.index(), second.index()], true),
        MoveSite::R3 { corners } => (corners.iter().map(|x| x.index()).collect(), false),
    };
    if !matches!(site, MoveSite::R1Up { .. }) {
        darts.sort_unstable();
    }
    let result = if keep_result {
        apply_move(d, site)
            .expect("site applies")
            .canonical_bytes(false)
    } else {
        Vec::new()
    };
    SiteKey {
        kind: site.kind(),
        darts,
        result,
    }
}

/// Every site accepted by `apply_move` among all dart tuples.
pub fn sites_by_trial(d: &Diagram) -> BTreeSet<SiteKey> {
    let darts: Vec<Dart> = d.darts().collect();
    let mut candidates = Vec::new();
    for &a in &darts {
        candidates.push(MoveSite::R1Down { corner: a });
        for positive in [false, true] {
            candidates.push(MoveSite::R1Up {
                corner: a,
                positive,
            });
        }
        for &b in &darts {
            candidates.push(MoveSite::R2Down { corners: [a, b] });
            for first_over in [false, true] {
                candidates.push(MoveSite::R2Up {
                    first: a,
                    second: b,
                    first_over,
                });
            }
            for &c in &darts {
                candidates.push(MoveSite::R3 { corners: [a, b, c] });
            }
        }
    }
    candidates
        .iter()
        .filter(|s| apply_move(d, s).is_ok())
        .map(|s| site_key(d, s))
        .collect()
}

pub fn sites_found(d: &Diagram) -> BTreeSet<SiteKey> {
    find_sites(d, MoveKinds::all())
        .iter()
        .map(|s| site_key(d, s))
        .collect()
}

/// Definition check for a triangle: distinct corner crossings, one side
/// over at both ends and one side under at both ends.
pub fn triangle_admits_r3(d: &Diagram, corners: [Dart; 3]) -> bool {
    let crossings: HashSet<usize> = corners.iter().map(|x| x.crossing()).collect();
    if crossings.len() != 3 {
        return false;
    }
    let mut over = 0;
    let mut under = 0;
    for &x in &corners {
        let y = d.partner(x);
        match (x.is_over(), y.is_over()) {
            (true, true) => over += 1,
            (false, false) => under += 1,
            _ => {}
        }
    }
    over == 1 && under == 1
}

// ---------------------------------------------------------------------------
// Random diagrams and moves.

fn pool() -> &'static Vec<Vec<Shadow>> {
    static POOL: OnceLock<Vec<Vec<Shadow>>> = OnceLock::new();
    POOL.get_or_init(|| {
        let en = Enumerator::new(Exec::default());
        (0..=10)
            .map(|n| match n {
                0 => Vec::new(),
                1..=6 => en.shadows(n, ShapeFilter::ALL).to_vec(),
                _ => en.shadows(n, ShapeFilter::PRIME).to_vec(),
            })
            .collect()
    })
}

/// A connected diagram with between 1 and `max_n` crossings (at most 10):
/// a random shadow with random crossing data.
pub fn random_diagram(rng: &mut impl Rng, max_n: usize) -> Diagram {
    let n = rng.random_range(1..=max_n.min(10));
    let shadow = pool()[n].choose(rng).expect("every level is populated");
    shadow.with_assignment(rng.random::<u64>())
}

/// One random move, choosing the kind first so that crossing-increasing
/// sites do not crowd out the rest. Up moves are skipped at `cap` crossings.
pub fn random_move(rng: &mut impl Rng, d: &Diagram, cap: usize) -> Option<(MoveSite, Diagram)> {
    let mut kinds = vec![MoveKinds::R1_DOWN, MoveKinds::R2_DOWN, MoveKinds::R3];
    if d.crossing_count() + 2 <= cap {
        kinds.extend([MoveKinds::R1_UP, MoveKinds::R2_UP]);
    }
    let mut sites = Vec::new();
    while sites.is_empty() && !kinds.is_empty() {
        let k = kinds.swap_remove(rng.random_range(0..kinds.len()));
        sites = find_sites(d, k);
    }
    let site = *sites.choose(rng)?;
    let next = apply_move(d, &site).expect("located sites apply");
    Some((site, next))
}

/// Jones polynomials over every orientation of the components.
pub fn jones_all_orientations(d: &Diagram) -> HashSet<String> {
    let k = d.strands().len();
    (0u32..1 << k.saturating_sub(1))
        .map(|mask| {
            let reversed: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
            jones(d, &reversed).expect("jones evaluates").to_string()
        })
        .collect()
}

pub fn mirror_code(d: &Diagram) -> hardknots::CanonicalCode {
    d.canonical_code(Symmetry::Mirror)
}
