//! Exhaustive generation of connected spherical diagrams.
//!
//! Shadows (4-valent maps without crossing data) grow one crossing at a time:
//! a child is obtained by pinching two boundary edges of a face together (or
//! by adding a kink), and is kept only when the smoothing that undoes the
//! pinch is, up to automorphism, the canonical smoothing of the child. Every
//! connected map with `n >= 2` crossings has a smoothing that keeps it
//! connected, so each isomorphism class is produced exactly once.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::diagram::{CanonicalCode, Dart, Diagram, Symmetry};
use crate::exec::Exec;

/// Structural filter applied to generated maps. Connectedness is implied.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShapeFilter {
    pub reduced: bool,
    pub prime: bool,
}

impl ShapeFilter {
    pub const ALL: ShapeFilter = ShapeFilter {
        reduced: false,
        prime: false,
    };
    pub const REDUCED: ShapeFilter = ShapeFilter {
        reduced: true,
        prime: false,
    };
    pub const PRIME: ShapeFilter = ShapeFilter {
        reduced: true,
        prime: true,
    };

    pub fn accepts(&self, d: &Diagram) -> bool {
        (!self.reduced || d.is_reduced()) && (!self.prime || d.is_prime())
    }
}

/// Prime levels up to this size are generated exhaustively.
pub const PRIME_SEED: usize = 6;

/// Largest size at which [`grow_prime`] from the exhaustive seed has been
/// checked to give the same maps as exhaustive generation (it yields a
/// subset, and the counts agree: 21, 83, 298, 1339, 6049 for 7..=11).
pub const PRIME_GROWTH_VERIFIED: usize = 11;

/// Memoized shadow levels, shared by surveys and gadget searches.
#[derive(Debug, Default)]
pub struct Enumerator {
    exec: Exec,
    cache: Mutex<HashMap<(usize, ShapeFilter), Arc<Vec<Shadow>>>>,
}

impl Enumerator {
    pub fn new(exec: Exec) -> Enumerator {
        Enumerator {
            exec,
            cache: Mutex::default(),
        }
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    /// Whether [`Enumerator::shadows`] is known to return every such map.
    pub fn is_exhaustive(&self, n: usize, filter: ShapeFilter) -> bool {
        filter != ShapeFilter::PRIME || n <= PRIME_GROWTH_VERIFIED
    }

    /// Shadows with `n` crossings passing `filter`. Prime levels above
    /// [`PRIME_SEED`] are grown from the prime level below (see
    /// [`grow_prime`]); [`Enumerator::is_exhaustive`] says whether the
    /// result is known to be complete.
    pub fn shadows(&self, n: usize, filter: ShapeFilter) -> Arc<Vec<Shadow>> {
        if let Some(s) = self.cache.lock().unwrap().get(&(n, filter)) {
            return s.clone();
        }
        let s = if filter == ShapeFilter::PRIME && n > PRIME_SEED {
            let below = self.shadows(n - 1, filter);
            Arc::new(grow_prime(&below, self.exec))
        } else {
            Arc::new(enumerate_shadows(n, filter, self.exec))
        };
        self.cache.lock().unwrap().insert((n, filter), s.clone());
        s
    }
}

/// A generated shadow with its canonical code and automorphism roots.
#[derive(Clone, Debug)]
pub struct Shadow {
    pub diagram: Diagram,
    pub code: CanonicalCode,
    pub roots: Vec<Dart>,
}

impl Shadow {
    fn new(diagram: Diagram) -> Shadow {
        let form = diagram.canonical_form(true);
        Shadow {
            diagram,
            code: form.code,
            roots: form.roots,
        }
    }

    /// Dart permutations of every automorphism (orientation-preserving,
    /// ignoring crossing data), the identity first.
    pub fn automorphisms(&self) -> Vec<Vec<Dart>> {
        let d = &self.diagram;
        let base = d.root_labels(self.roots[0], true);
        self.roots
            .iter()
            .map(|&r| {
                let labels = d.root_labels(r, true);
                let mut inv = vec![Dart(0); d.dart_count()];
                for x in d.darts() {
                    inv[labels[x.index()] as usize] = x;
                }
                d.darts().map(|x| inv[base[x.index()] as usize]).collect()
            })
            .collect()
    }

    /// Crossing assignments up to automorphism: bit `c` set means crossing
    /// `c` is changed relative to the stored shadow. Returns the least
    /// assignment of every orbit.
    pub fn assignment_representatives(&self) -> Vec<u64> {
        let n = self.diagram.crossing_count();
        let autos: Vec<(Vec<usize>, u64)> = self
            .automorphisms()
            .into_iter()
            .skip(1)
            .map(|a| {
                let image: Vec<usize> = (0..n).map(|c| a[4 * c].crossing()).collect();
                let flips = (0..n).fold(0u64, |m, c| m | ((a[4 * c].slot() as u64 & 1) << c));
                (image, flips)
            })
            .collect();
        (0..1u64 << n)
            .filter(|&b| {
                autos.iter().all(|(image, flips)| {
                    let x = b ^ flips;
                    let moved = (0..n).fold(0u64, |m, c| m | ((x >> c & 1) << image[c]));
                    moved >= b
                })
            })
            .collect()
    }

    pub fn with_assignment(&self, bits: u64) -> Diagram {
        let n = self.diagram.crossing_count();
        let flipped: Vec<usize> = (0..n).filter(|&c| bits >> c & 1 == 1).collect();
        self.diagram.switch_crossings(&flipped)
    }

    /// Every diagram over this shadow, up to isomorphism.
    pub fn diagrams(&self) -> Vec<Diagram> {
        self.assignment_representatives()
            .into_iter()
            .map(|b| self.with_assignment(b))
            .collect()
    }
}

/// Whether smoothing at `x` (joining corners `x, x.next()` and the opposite
/// pair) leaves a connected map without closing a circle.
pub(crate) fn smoothing_keeps_connected(d: &Diagram, x: Dart) -> bool {
    let y = x.opposite();
    if d.partner(x) == x.next() || d.partner(y) == y.next() {
        return false;
    }
    let n = d.crossing_count();
    let v = x.crossing();
    if n < 2 {
        return false;
    }
    // Nodes: crossings, with the removed crossing's four darts as ports
    // n..n+4.
    let node = |a: Dart| {
        if a.crossing() == v {
            n + a.slot()
        } else {
            a.crossing()
        }
    };
    let mut parent: Vec<usize> = (0..n + 4).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        p[ra] = rb;
    };
    for a in d.darts() {
        union(&mut parent, node(a), node(d.partner(a)));
    }
    union(&mut parent, n + x.slot(), n + x.next().slot());
    union(&mut parent, n + y.slot(), n + y.next().slot());
    let first = if v == 0 { 1 } else { 0 };
    let root = find(&mut parent, first);
    (0..n)
        .filter(|&c| c != v)
        .all(|c| find(&mut parent, c) == root)
}

fn smoothing_label(labels: &[u16], x: Dart) -> u16 {
    labels[x.index()].min(labels[x.opposite().index()])
}

/// Canonical form of `child` if the smoothing at `recover` lies in the
/// automorphism orbit of the child's canonical smoothing.
fn canonical_extension(child: &Diagram, recover: Dart) -> Option<Shadow> {
    let form = child.canonical_form(true);
    let labels0 = child.root_labels(form.roots[0], true);
    let mut by_label = vec![Dart(0); child.dart_count()];
    for x in child.darts() {
        by_label[labels0[x.index()] as usize] = x;
    }
    let best = (0..child.dart_count())
        .filter(|l| l % 4 < 2)
        .find(|&l| smoothing_keeps_connected(child, by_label[l]))? as u16;
    let hit = form.roots.iter().enumerate().any(|(i, &r)| {
        if i == 0 {
            smoothing_label(&labels0, recover) == best
        } else {
            smoothing_label(&child.root_labels(r, true), recover) == best
        }
    });
    hit.then(|| Shadow {
        diagram: child.clone(),
        code: form.code,
        roots: form.roots,
    })
}

fn children(parent: &Diagram, filter: Option<ShapeFilter>) -> Vec<Shadow> {
    let mut out = Vec::new();
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    let mut consider = |child: Diagram, recover: Dart| {
        if let Some(f) = filter {
            if !f.accepts(&child) {
                return;
            }
        }
        if let Some(s) = canonical_extension(&child, recover) {
            if seen.insert(s.code.clone()) {
                out.push(s);
            }
        }
    };
    for face in parent.faces() {
        let c = &face.corners;
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                let (child, w) = parent.pinch(c[i], c[j]);
                consider(child, w[1]);
            }
        }
    }
    for a in parent.darts() {
        let (child, w) = parent.pinch_self(a);
        consider(child, w[0]);
    }
    out
}

fn infinity() -> Shadow {
    let (d, _) = Diagram::unknot().kink_free_loop().expect("one circle");
    Shadow::new(d)
}

/// All connected shadows with exactly `n >= 1` crossings passing `filter`,
/// sorted by canonical code.
pub fn enumerate_shadows(n: usize, filter: ShapeFilter, exec: Exec) -> Vec<Shadow> {
    let mut levels = shadow_levels(n, filter, exec);
    levels.pop().unwrap_or_default()
}

/// Connected shadows at every size `1..=n`; only the last level is filtered.
pub fn shadow_levels(n: usize, filter: ShapeFilter, exec: Exec) -> Vec<Vec<Shadow>> {
    let mut levels: Vec<Vec<Shadow>> = Vec::new();
    if n == 0 {
        return levels;
    }
    let mut current = vec![infinity()];
    for k in 2..=n {
        let last = k == n;
        let parents: Vec<&Diagram> = current.iter().map(|s| &s.diagram).collect();
        let mut next = exec.flat_map(&parents, |p| children(p, last.then_some(filter)));
        next.sort_by(|a, b| a.code.cmp(&b.code));
        levels.push(std::mem::replace(&mut current, next));
    }
    if n == 1 {
        current.retain(|s| filter.accepts(&s.diagram));
    }
    levels.push(current);
    levels
}

/// Unfiltered shadows at every size `1..=n`, each level complete.
pub fn all_shadow_levels(n: usize, exec: Exec) -> Vec<Vec<Shadow>> {
    shadow_levels(n, ShapeFilter::ALL, exec)
}

/// Filtered shadows at `n` crossings from a complete level `n - 1`.
pub fn extend_level(parents: &[Shadow], filter: ShapeFilter, exec: Exec) -> Vec<Shadow> {
    let ps: Vec<&Diagram> = parents.iter().map(|s| &s.diagram).collect();
    let mut next = exec.flat_map(&ps, |p| children(p, Some(filter)));
    next.sort_by(|a, b| a.code.cmp(&b.code));
    next
}

/// Prime shadows with one more crossing obtained by pinching prime
/// parents, deduplicated by code. Unlike [`extend_level`] this never visits
/// composite or unreduced maps, so it scales much further, but it misses
/// any prime map none of whose smoothings is prime.
pub fn grow_prime(parents: &[Shadow], exec: Exec) -> Vec<Shadow> {
    let ps: Vec<&Diagram> = parents.iter().map(|s| &s.diagram).collect();
    let mut next = exec.flat_map(&ps, |p| {
        let mut out: Vec<Shadow> = Vec::new();
        let mut seen = HashSet::new();
        let mut consider = |child: Diagram| {
            if ShapeFilter::PRIME.accepts(&child) {
                let s = Shadow::new(child);
                if seen.insert(s.code.clone()) {
                    out.push(s);
                }
            }
        };
        for face in p.faces() {
            let c = &face.corners;
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    consider(p.pinch(c[i], c[j]).0);
                }
            }
        }
        out
    });
    next.sort_by(|a, b| a.code.cmp(&b.code));
    next.dedup_by(|a, b| a.code == b.code);
    next
}

/// All connected diagrams with `n` crossings over shadows passing `filter`,
/// up to orientation-preserving isomorphism, or additionally up to mirror
/// images with `quotient_mirror`.
pub fn enumerate_diagrams(
    n: usize,
    filter: ShapeFilter,
    quotient_mirror: bool,
    exec: Exec,
) -> Vec<Diagram> {
    let shadows = enumerate_shadows(n, filter, exec);
    let per: Vec<Vec<Diagram>> = exec.map(&shadows, |s| s.diagrams());
    let mut all: Vec<Diagram> = per.into_iter().flatten().collect();
    if quotient_mirror {
        let mut seen = HashSet::new();
        all.retain(|d| seen.insert(d.canonical_code(Symmetry::Mirror)));
    }
    all
}

/// Sum over shadows of `4n / |Aut|`: the number of rooted maps.
pub fn rooted_count(shadows: &[Shadow]) -> u64 {
    shadows
        .iter()
        .map(|s| (s.diagram.dart_count() / s.roots.len()) as u64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    /// Rooted 4-valent planar maps with `n` vertices: 2 * 3^n (2n)! / (n! (n+2)!).
    fn rooted_formula(n: u64) -> u64 {
        let mut c = 2 * 3u64.pow(n as u32);
        // (2n)! / (n! (n+2)!) = C(2n, n) / ((n+1)(n+2))
        let mut binom = 1u64;
        for i in 0..n {
            binom = binom * (2 * n - i) / (i + 1);
        }
        c *= binom;
        c / ((n + 1) * (n + 2))
    }

    #[test]
    fn rooted_counts_match_formula() {
        let levels = all_shadow_levels(6, Exec::Sequential);
        for (i, level) in levels.iter().enumerate() {
            let n = i as u64 + 1;
            assert_eq!(rooted_count(level), rooted_formula(n), "n={n}");
        }
        assert_eq!(levels[0].len(), 1);
    }

    #[test]
    fn trefoil_shadow_present() {
        let prime3 = enumerate_shadows(3, ShapeFilter::PRIME, Exec::Sequential);
        let code = trefoil().canonical_code(Symmetry::Shadow);
        assert!(prime3
            .iter()
            .any(|s| s.diagram.canonical_code(Symmetry::Shadow) == code));
    }

    #[test]
    fn diagram_counts_bounded_by_orbits() {
        for s in enumerate_shadows(4, ShapeFilter::ALL, Exec::Sequential) {
            let k = s.assignment_representatives().len();
            let n = s.diagram.crossing_count();
            assert!(k <= 1 << n);
            assert_eq!(k == 1 << n, s.roots.len() == 1);
        }
    }

    #[test]
    fn both_trefoils_enumerated() {
        let ds = enumerate_diagrams(3, ShapeFilter::REDUCED, false, Exec::Sequential);
        let t = trefoil().canonical_code(Symmetry::Oriented);
        let m = trefoil().mirror().canonical_code(Symmetry::Oriented);
        let codes: HashSet<_> = ds
            .iter()
            .map(|d| d.canonical_code(Symmetry::Oriented))
            .collect();
        assert!(codes.contains(&t) && codes.contains(&m));
        let q = enumerate_diagrams(3, ShapeFilter::REDUCED, true, Exec::Sequential);
        assert!(q.len() < ds.len());
    }

    #[test]
    fn predicates_match_brute_force() {
        use crate::diagram::predicates::oracle;
        for n in 1..=4 {
            for d in enumerate_diagrams(n, ShapeFilter::ALL, false, Exec::Sequential) {
                assert_eq!(d.is_reduced(), oracle::is_reduced(&d));
                assert_eq!(d.is_prime(), oracle::is_prime(&d));
                assert_eq!(d.is_alternating(), oracle::is_alternating(&d));
                assert_eq!(d.is_alternating(), d.mirror().is_alternating());
            }
        }
    }

    #[test]
    fn filters_agree_with_post_filtering() {
        for n in 1..=6 {
            let all = enumerate_shadows(n, ShapeFilter::ALL, Exec::Sequential);
            for f in [ShapeFilter::REDUCED, ShapeFilter::PRIME] {
                let direct: Vec<_> = enumerate_shadows(n, f, Exec::Sequential)
                    .into_iter()
                    .map(|s| s.code)
                    .collect();
                let post: Vec<_> = all
                    .iter()
                    .filter(|s| f.accepts(&s.diagram))
                    .map(|s| s.code.clone())
                    .collect();
                assert_eq!(direct, post, "n={n}");
            }
        }
    }

    #[test]
    fn prime_growth_matches_exhaustive() {
        let mut grown = enumerate_shadows(3, ShapeFilter::PRIME, Exec::Sequential);
        for n in 4..=8 {
            grown = grow_prime(&grown, Exec::Sequential);
            let exact = enumerate_shadows(n, ShapeFilter::PRIME, Exec::Sequential);
            let a: Vec<_> = grown.iter().map(|s| &s.code).collect();
            let b: Vec<_> = exact.iter().map(|s| &s.code).collect();
            assert_eq!(a, b, "n={n}");
        }
        let en = Enumerator::new(Exec::Sequential);
        let counts: Vec<usize> = (7..=10)
            .map(|n| en.shadows(n, ShapeFilter::PRIME).len())
            .collect();
        assert_eq!(counts, [21, 83, 298, 1339]);
    }
}
