use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::catalog::{LinkCatalog, LinkClass};
use crate::diagram::{Dart, Diagram, Face, Symmetry};
use crate::error::{Error, Result};
use crate::invariants::{fingerprint, linking_matrix};
use crate::moves::{apply_move, find_sites, omega3_triangle_count, MoveKinds, MoveSite};
use crate::search::{
    classify_with, confirm_identity, survey_with, Enumerator, Identification, IdentifyMethod,
    SearchBudget, Shadow, ShapeFilter, SurveyOptions, Verdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GadgetName {
    Seven,
    Nine,
    H8,
    H9a,
    H9b,
    H9c,
    H9d,
    H12,
    Exe1,
    Exe2,
    Exe3a,
    Exe3b,
}

impl GadgetName {
    pub const ALL: [GadgetName; 12] = [
        GadgetName::Seven,
        GadgetName::Nine,
        GadgetName::H8,
        GadgetName::H9a,
        GadgetName::H9b,
        GadgetName::H9c,
        GadgetName::H9d,
        GadgetName::H12,
        GadgetName::Exe1,
        GadgetName::Exe2,
        GadgetName::Exe3a,
        GadgetName::Exe3b,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GadgetName::Seven => "7s",
            GadgetName::Nine => "9s",
            GadgetName::H8 => "h8",
            GadgetName::H9a => "h9a",
            GadgetName::H9b => "h9b",
            GadgetName::H9c => "h9c",
            GadgetName::H9d => "h9d",
            GadgetName::H12 => "h12",
            GadgetName::Exe1 => "exe1",
            GadgetName::Exe2 => "exe2",
            GadgetName::Exe3a => "exe3a",
            GadgetName::Exe3b => "exe3b",
        }
    }

    /// Gadgets whose discovery needs a 10-crossing sweep or a targeted
    /// search above desk scale.
    /// Catalog name of the link the gadget represents.
    pub fn link(self) -> &'static str {
        match self {
            GadgetName::H8 | GadgetName::Exe3a | GadgetName::Exe3b => "T2",
            GadgetName::H12 => "T3",
            GadgetName::Exe1 => "K3a1",
            _ => "T1",
        }
    }

    pub fn is_extended(self) -> bool {
        matches!(
            self,
            GadgetName::H12 | GadgetName::Exe3a | GadgetName::Exe3b
        )
    }
}

impl fmt::Display for GadgetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GadgetName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GadgetName::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| Error::Contract(format!("unknown gadget {s:?}")))
    }
}

impl Serialize for GadgetName {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Gadget {
    pub name: GadgetName,
    #[serde(rename = "pd")]
    #[serde(serialize_with = "ser_pd")]
    pub diagram: Diagram,
    /// Dart whose edge is the splice edge of a summing gadget.
    pub attach: Option<Dart>,
}

fn ser_pd<S: Serializer>(d: &Diagram, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&d.emit_pd())
}

/// Faces offering a crossing-reducing or Ω3 move: monogons, bigons with
/// one strand over at both corners, and Ω3 triangles.
pub fn opportunity_faces(d: &Diagram) -> Vec<Face> {
    let faces = d.faces();
    let mut out = Vec::new();
    for site in find_sites(d, MoveKinds::R1_DOWN | MoveKinds::R2_DOWN | MoveKinds::R3) {
        let corner = match site {
            MoveSite::R1Down { corner } => corner,
            MoveSite::R2Down { corners } => corners[0],
            MoveSite::R3 { corners } => corners[0],
            _ => continue,
        };
        if let Some(f) = faces.iter().find(|f| f.corners.contains(&corner)) {
            out.push(f.clone());
        }
    }
    out
}

/// The edge leaving corner `x`, named by its smaller dart.
pub fn edge_key(d: &Diagram, x: Dart) -> Dart {
    x.min(d.partner(x))
}

fn face_edges(d: &Diagram, f: &Face) -> BTreeSet<Dart> {
    f.corners.iter().map(|&x| edge_key(d, x)).collect()
}

/// Attach edge of a `7s`-type gadget: the diagram is reduced and all its
/// opportunity faces have exactly one boundary edge in common.
pub fn seven_attach(d: &Diagram) -> Option<Dart> {
    if !d.is_reduced() {
        return None;
    }
    let opp = opportunity_faces(d);
    if opp.len() < 2 {
        return None;
    }
    let mut common = face_edges(d, &opp[0]);
    for f in &opp[1..] {
        let e = face_edges(d, f);
        common.retain(|x| e.contains(x));
    }
    (common.len() == 1).then(|| *common.iter().next().unwrap())
}

fn single_triangle(d: &Diagram) -> Option<MoveSite> {
    let sites = find_sites(d, MoveKinds::R3);
    (sites.len() == 1).then(|| sites[0])
}

fn triangle_crossings(site: &MoveSite) -> [usize; 3] {
    match site {
        MoveSite::R3 { corners } => corners.map(|c| c.crossing()),
        _ => unreachable!("not a triangle site"),
    }
}

/// Whether every opportunity face other than the Ω3 triangle flanks `e`,
/// and `e` avoids the triangle's crossings.
fn only_triangle_and_flanks(d: &Diagram, tri: &MoveSite, e: Dart) -> bool {
    let tc = triangle_crossings(tri);
    if tc.contains(&e.crossing()) || tc.contains(&d.partner(e).crossing()) {
        return false;
    }
    // The triangle is the only opportunity face of degree three.
    let key = edge_key(d, e);
    opportunity_faces(d)
        .iter()
        .filter(|f| f.degree() != 3)
        .all(|f| face_edges(d, f).contains(&key))
}

/// Attach edge of a `9s`-type gadget: reduced, exactly one Ω3 triangle,
/// and an edge away from it that every other opportunity face borders,
/// both before and after the Ω3 move.
pub fn nine_attach(d: &Diagram) -> Option<Dart> {
    if !d.is_reduced() {
        return None;
    }
    let tri = single_triangle(d)?;
    let slid = apply_move(d, &tri).ok()?;
    let tri2 = single_triangle(&slid)?;
    let mut edges: Vec<Dart> = d.darts().filter(|&x| x < d.partner(x)).collect();
    edges.sort();
    edges.into_iter().find(|&e| {
        slid.partner(e) == d.partner(e)
            && only_triangle_and_flanks(d, &tri, e)
            && only_triangle_and_flanks(&slid, &tri2, e)
    })
}

/// Exactly one Ω3 triangle and no R1/R2 reduction, and the same after the
/// Ω3 move: the non-increasing closure is a two-cycle (or a fixed point).
pub fn is_shaky_cycle(d: &Diagram) -> bool {
    let reducing = MoveKinds::R1_DOWN | MoveKinds::R2_DOWN;
    let settled = |x: &Diagram| find_sites(x, reducing).is_empty();
    let Some(tri) = single_triangle(d) else {
        return false;
    };
    if !settled(d) {
        return false;
    }
    let Ok(slid) = apply_move(d, &tri) else {
        return false;
    };
    single_triangle(&slid).is_some() && settled(&slid)
}

#[derive(Clone, Copy, Debug)]
#[derive(Default)]
pub struct DiscoveryOptions {
    pub budget: SearchBudget,
    /// Allow searches above desk scale (h12, exe3a/b).
    pub extended: bool,
}


fn class<'a>(catalog: &'a LinkCatalog, name: &str) -> Result<&'a LinkClass> {
    catalog
        .get(name)
        .ok_or_else(|| Error::Catalog(format!("catalog lacks {name}")))
}

fn discovery(name: GadgetName, reason: impl Into<String>) -> Error {
    Error::Discovery {
        name: name.to_string(),
        reason: reason.into(),
    }
}

/// All diagrams over the shadows, one per mirror class (sorted by code),
/// that satisfy `keep` and have the fingerprint of `class`.
pub(crate) fn scan(
    en: &Enumerator,
    n: usize,
    filter: ShapeFilter,
    class: &LinkClass,
    keep: impl Fn(&Diagram) -> bool + Sync + Send,
) -> Vec<Diagram> {
    let shadows = en.shadows(n, filter);
    let per_shadow = |s: &Shadow| -> Vec<Diagram> {
        s.assignment_representatives()
            .into_iter()
            .map(|b| s.with_assignment(b))
            .filter(|d| d.components() == class.components && keep(d))
            .filter(|d| fingerprint(d).is_ok_and(|fp| fp == class.fingerprint))
            .collect()
    };
    let mut found: Vec<(crate::diagram::CanonicalCode, Diagram)> = en
        .exec()
        .flat_map(&shadows, per_shadow)
        .into_iter()
        .map(|d| (d.canonical_code(Symmetry::Mirror), d))
        .collect();
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    found.into_iter().map(|(_, d)| d).collect()
}

/// `7s`-type unknot diagrams with exactly `n` crossings.
pub fn seven_candidates(en: &Enumerator, n: usize, catalog: &LinkCatalog) -> Result<Vec<Diagram>> {
    let unknot = class(catalog, "T1")?;
    Ok(scan(en, n, ShapeFilter::REDUCED, unknot, |d| {
        seven_attach(d).is_some()
    }))
}

fn rigid_hard_family(
    en: &Enumerator,
    n: usize,
    catalog: &LinkCatalog,
    name: &str,
    opts: &DiscoveryOptions,
) -> Vec<Diagram> {
    let survey = SurveyOptions {
        filter: ShapeFilter::PRIME,
        budget: opts.budget,
        exec: en.exec(),
    };
    survey_with(en, n, catalog, &survey)
        .hits_for(name)
        .map(|h| h.diagram.clone())
        .collect()
}

/// Re-discovers a named gadget from its defining property.
pub fn discover_gadget(
    name: GadgetName,
    en: &Enumerator,
    catalog: &LinkCatalog,
    opts: &DiscoveryOptions,
) -> Result<Gadget> {
    if name.is_extended() && !opts.extended {
        return Err(discovery(name, "needs the extended search (--extended)"));
    }
    let pick = |mut v: Vec<Diagram>, k: usize, why: &str| -> Result<Diagram> {
        if v.len() <= k {
            return Err(discovery(
                name,
                format!("{why}: found {} candidates", v.len()),
            ));
        }
        Ok(v.swap_remove(k))
    };
    let unknot = class(catalog, "T1")?;
    let (diagram, attach) = match name {
        GadgetName::Seven => {
            let mut found = None;
            for n in 1..=7 {
                let c = seven_candidates(en, n, catalog)?;
                if let Some(d) = c.into_iter().next() {
                    found = Some(d);
                    break;
                }
            }
            let d = found.ok_or_else(|| discovery(name, "no unknot diagram up to 7 crossings has all opportunity faces sharing exactly one edge"))?;
            let e = seven_attach(&d);
            (d, e)
        }
        GadgetName::Nine => {
            let c = scan(en, 9, ShapeFilter::REDUCED, unknot, |d| {
                nine_attach(d).is_some()
            });
            let d = pick(
                c,
                0,
                "no 9-crossing unknot diagram with one Ω3 triangle and a far attach edge",
            )?;
            let e = nine_attach(&d);
            (d, e)
        }
        GadgetName::H8 => (
            pick(
                rigid_hard_family(en, 8, catalog, "T2", opts),
                0,
                "no rigid hard prime 2-component unlink at 8 crossings",
            )?,
            None,
        ),
        GadgetName::H9a | GadgetName::H9b | GadgetName::H9c | GadgetName::H9d => {
            let k = name as usize - GadgetName::H9a as usize;
            (
                pick(
                    rigid_hard_family(en, 9, catalog, "T1", opts),
                    k,
                    "too few rigid hard prime unknots at 9 crossings",
                )?,
                None,
            )
        }
        GadgetName::Exe1 => (
            pick(
                rigid_hard_family(en, 9, catalog, "K3a1", opts),
                0,
                "no rigid hard prime trefoil at 9 crossings",
            )?,
            None,
        ),
        GadgetName::Exe2 => {
            let c = scan(en, 10, ShapeFilter::PRIME, unknot, is_shaky_cycle);
            (
                pick(
                    c,
                    0,
                    "no prime 10-crossing unknot whose closure is an Ω3 two-cycle",
                )?,
                None,
            )
        }
        GadgetName::Exe3a | GadgetName::Exe3b => {
            let unlink = class(catalog, "T2")?;
            let pair = shaky_unlink_pair(en, unlink)?;
            let d = if name == GadgetName::Exe3a {
                pair.0
            } else {
                pair.1
            };
            (d, None)
        }
        GadgetName::H12 => {
            let t3 = class(catalog, "T3")?;
            let unlinked = |d: &Diagram| {
                linking_matrix(d, &[false; 3]).is_ok_and(|m| m.iter().flatten().all(|&v| v == 0))
            };
            let rigid = scan(en, 12, ShapeFilter::PRIME, t3, |d| {
                omega3_triangle_count(d) == 0 && unlinked(d)
            });
            let id = Identification {
                name: t3.name.clone(),
                crossing_number: 0,
                components: 3,
                method: IdentifyMethod::Fingerprint,
            };
            let hard: Vec<bool> = en.exec().map(&rigid, |d| {
                classify_with(d, Some(id.clone()), &opts.budget).verdict == Verdict::Hard
            });
            let c = rigid
                .into_iter()
                .zip(hard)
                .filter_map(|(d, h)| h.then_some(d))
                .collect();
            (
                pick(
                    c,
                    0,
                    "no rigid hard prime 3-component unlink at 12 crossings",
                )?,
                None,
            )
        }
    };
    let target = class(catalog, name.link())?;
    if !confirm_identity(&diagram, target, &opts.budget) {
        return Err(discovery(
            name,
            format!(
                "candidate could not be moved to the minimal diagram of {}",
                target.name
            ),
        ));
    }
    Ok(Gadget {
        name,
        diagram,
        attach,
    })
}

/// Two prime shaky 2-component unlink diagrams over one shadow that differ
/// by changing two crossings, searched at 10 crossings.
fn shaky_unlink_pair(en: &Enumerator, unlink: &LinkClass) -> Result<(Diagram, Diagram)> {
    let shadows = en.shadows(10, ShapeFilter::PRIME);
    let found = en.exec().flat_map(&shadows, |s| {
        let autos = s.automorphisms();
        let n = s.diagram.crossing_count();
        let good: Vec<u64> = s
            .assignment_representatives()
            .into_iter()
            .filter(|&b| {
                let d = s.with_assignment(b);
                d.components() == 2
                    && is_shaky_cycle(&d)
                    && fingerprint(&d).is_ok_and(|fp| fp == unlink.fingerprint)
            })
            .collect();
        let mut pairs = Vec::new();
        for (i, &a) in good.iter().enumerate() {
            for &b in &good[i + 1..] {
                let close = autos.iter().any(|p| {
                    let flips = (0..n).fold(0u64, |m, c| m | ((p[4 * c].slot() as u64 & 1) << c));
                    let x = b ^ flips;
                    let moved = (0..n).fold(0u64, |m, c| m | ((x >> c & 1) << p[4 * c].crossing()));
                    (moved ^ a).count_ones() == 2
                });
                if close {
                    pairs.push((s.with_assignment(a), s.with_assignment(b)));
                }
            }
        }
        pairs
    });
    found.into_iter().next().ok_or_else(|| {
        discovery(
            GadgetName::Exe3a,
            "no pair of prime shaky unlink diagrams at 10 crossings",
        )
    })
}

/// Parsed gadget cache: lines of `name<TAB>attach_dart<TAB>pd`.
#[derive(Clone, Debug, Default)]
pub struct GadgetLibrary {
    gadgets: Vec<Gadget>,
}

pub const BUNDLED_GADGETS: &str = include_str!("../../data/gadgets.tsv");

impl GadgetLibrary {
    pub fn bundled() -> GadgetLibrary {
        GadgetLibrary::parse(BUNDLED_GADGETS).expect("bundled gadget cache is valid")
    }

    pub fn parse(text: &str) -> Result<GadgetLibrary> {
        let mut gadgets = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |m: &str| Error::MalformedCode(format!("gadget cache line {}: {m}", i + 1));
            let mut cols = line.split('\t');
            let (Some(name), Some(attach), Some(pd)) = (cols.next(), cols.next(), cols.next())
            else {
                return Err(bad("expected three tab-separated columns"));
            };
            let name: GadgetName = name.parse().map_err(|_| bad("unknown gadget name"))?;
            let diagram = Diagram::parse_pd(pd).map_err(|e| bad(&e.to_string()))?;
            let attach = match attach {
                "-" => None,
                a => {
                    let x: u32 = a.parse().map_err(|_| bad("attach dart is not a number"))?;
                    if x as usize >= diagram.dart_count() {
                        return Err(bad("attach dart out of range"));
                    }
                    Some(Dart(x))
                }
            };
            gadgets.push(Gadget {
                name,
                diagram,
                attach,
            });
        }
        Ok(GadgetLibrary { gadgets })
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for g in &self.gadgets {
            let attach = g.attach.map_or("-".to_string(), |d| d.0.to_string());
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                g.name,
                attach,
                g.diagram.emit_pd()
            ));
        }
        out
    }

    pub fn get(&self, name: GadgetName) -> Option<&Gadget> {
        self.gadgets.iter().find(|g| g.name == name)
    }

    pub fn require(&self, name: GadgetName) -> Result<&Gadget> {
        self.get(name)
            .ok_or_else(|| discovery(name, "not in the gadget library"))
    }

    pub fn insert(&mut self, g: Gadget) {
        self.gadgets.retain(|x| x.name != g.name);
        self.gadgets.push(g);
        self.gadgets.sort_by_key(|g| g.name);
    }

    pub fn gadgets(&self) -> &[Gadget] {
        &self.gadgets
    }

    /// Re-checks every cached gadget against its defining property.
    pub fn revalidate(&self, catalog: &LinkCatalog, budget: &SearchBudget) -> Result<()> {
        for g in &self.gadgets {
            let fail = |why: &str| discovery(g.name, format!("cached gadget fails: {why}"));
            let link = class(catalog, g.name.link())?;
            if fingerprint(&g.diagram)? != link.fingerprint {
                return Err(fail("fingerprint differs from its link"));
            }
            match g.name {
                GadgetName::Seven => {
                    if seven_attach(&g.diagram).is_none() || seven_attach(&g.diagram) != g.attach {
                        return Err(fail(
                            "opportunity faces do not share exactly the attach edge",
                        ));
                    }
                }
                GadgetName::Nine => {
                    if nine_attach(&g.diagram).is_none() || nine_attach(&g.diagram) != g.attach {
                        return Err(fail("not a one-triangle gadget with a far attach edge"));
                    }
                }
                GadgetName::Exe2 | GadgetName::Exe3a | GadgetName::Exe3b => {
                    if !is_shaky_cycle(&g.diagram) {
                        return Err(fail("closure is not an Ω3 two-cycle"));
                    }
                }
                _ => {
                    let r = crate::search::classify_hardness(&g.diagram, catalog, budget)?;
                    if !(r.is_hard && r.is_rigid) {
                        return Err(fail("not rigid hard"));
                    }
                }
            }
        }
        Ok(())
    }
}
