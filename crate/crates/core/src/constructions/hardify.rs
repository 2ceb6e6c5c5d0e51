use std::collections::HashSet;

use serde::Serialize;

use crate::catalog::{LinkCatalog, LinkClass};
use crate::diagram::{Dart, Diagram};
use crate::error::{Error, Result};
use crate::invariants::{fingerprint, Fingerprint};
use crate::moves::{find_sites, MoveKinds, MoveSite};
use crate::search::{
    classify_with, Enumerator, HardnessReport, Identification, IdentifyMethod, SearchBudget,
    ShapeFilter,
};

use super::gadgets::{edge_key, scan, GadgetLibrary, GadgetName};

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// One `7s` per Ω3 triangle.
    Thm2,
    /// One `7s` per isolated Ω3 triangle or per pair sharing an edge.
    Cor1,
    /// `9s` at one Ω3 triangle, `7s` at the others.
    Shaky,
    /// Sums of rigid hard unlink diagrams.
    Trivial,
}

/// Two Ω3 triangles glued along a common edge.
#[derive(Clone, Debug, Serialize)]
pub struct TrianglePair {
    pub first: [Dart; 3],
    pub second: [Dart; 3],
    /// Corner of `first` whose boundary edge is shared.
    pub shared: Dart,
}

/// Greedy matching of Ω3 triangles along shared edges.
#[derive(Clone, Debug, Default, Serialize)]
pub struct TrianglePairing {
    /// Triangles left unmatched (the set S).
    pub singles: Vec<[Dart; 3]>,
    /// Matched pairs (the set Q).
    pub pairs: Vec<TrianglePair>,
}

impl TrianglePairing {
    /// Planned connected sums: `|S| + |Q|`.
    pub fn planned_sums(&self) -> usize {
        self.singles.len() + self.pairs.len()
    }

    /// Counting inequalities for a diagram with `n` crossings:
    /// `3|S| + |Q| <= 2n`, `2|Q| <= n + 2` and `|S| + |Q| <= n`.
    pub fn check(&self, n: usize) -> Result<()> {
        let (s, q) = (self.singles.len(), self.pairs.len());
        if 3 * s + q > 2 * n || 2 * q > n + 2 || s + q > n {
            return Err(Error::Construction(format!(
                "triangle pairing |S|={s}, |Q|={q} breaks the counting bounds for n={n}"
            )));
        }
        Ok(())
    }
}

fn omega3_triangles(d: &Diagram) -> Vec<[Dart; 3]> {
    find_sites(d, MoveKinds::R3)
        .into_iter()
        .filter_map(|s| match s {
            MoveSite::R3 { corners } => Some(corners),
            _ => None,
        })
        .collect()
}

pub fn triangle_pairing(d: &Diagram) -> TrianglePairing {
    let tris = omega3_triangles(d);
    let mut matched = vec![false; tris.len()];
    let mut out = TrianglePairing::default();
    for i in 0..tris.len() {
        if matched[i] {
            continue;
        }
        let partner = (i + 1..tris.len()).filter(|&j| !matched[j]).find_map(|j| {
            tris[i].iter().find_map(|&x| {
                let e = edge_key(d, x);
                tris[j]
                    .iter()
                    .any(|&y| edge_key(d, y) == e)
                    .then_some((j, x))
            })
        });
        match partner {
            Some((j, x)) => {
                matched[i] = true;
                matched[j] = true;
                out.pairs.push(TrianglePair {
                    first: tris[i],
                    second: tris[j],
                    shared: x,
                });
            }
            None => {
                matched[i] = true;
                out.singles.push(tris[i]);
            }
        }
    }
    out
}

/// Machine-checkable record of a construction.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub mode: Mode,
    pub input_name: Option<String>,
    pub input_crossings: usize,
    pub crossing_number: usize,
    /// Ω3 triangles in the input diagram.
    pub omega3_triangles: usize,
    /// The triangle count used in the bound (at least one).
    pub tri: usize,
    pub planned_sums: usize,
    pub sums: usize,
    pub output_crossings: usize,
    pub bound: usize,
    /// Least degree among faces bordering a splice edge.
    pub min_new_face_degree: Option<usize>,
    pub fingerprint_preserved: bool,
    /// Whether the output is known to be a minimal such diagram.
    pub minimal_known: bool,
    pub report: HardnessReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct Construction {
    #[serde(serialize_with = "ser_pd")]
    pub diagram: Diagram,
    pub certificate: Certificate,
}

fn ser_pd<S: serde::Serializer>(d: &Diagram, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&d.emit_pd())
}

/// What the sums did, for [`verify_bounds`].
#[derive(Clone, Debug, Default)]
pub struct SumRecord {
    pub sums: usize,
    pub planned: usize,
    /// Darts of the output on the host side of each splice edge.
    pub splices: Vec<Dart>,
    pub input_name: Option<String>,
    pub crossing_number: usize,
    pub omega3_triangles: usize,
    pub bound: usize,
    pub expected_fingerprint: Option<Fingerprint>,
    pub minimal_known: bool,
}

struct Builder {
    d: Diagram,
    used: HashSet<Dart>,
    record: SumRecord,
}

impl Builder {
    fn new(d: &Diagram) -> Builder {
        Builder {
            d: d.clone(),
            used: HashSet::new(),
            record: SumRecord::default(),
        }
    }

    /// Sums the gadget onto the host edge leaving corner `x` (a host dart
    /// whose edge has not been used yet).
    fn sum_at(&mut self, x: Dart, gadget: &Diagram, attach: Dart) -> Result<()> {
        let x2 = self.d.partner(x);
        self.used.insert(x.min(x2));
        self.d = self.d.connected_sum(x, gadget, attach, false)?;
        self.record.splices.extend([x, x2]);
        self.record.sums += 1;
        Ok(())
    }

    fn free_corner(&self, corners: &[Dart]) -> Option<Dart> {
        corners
            .iter()
            .copied()
            .find(|&x| !self.used.contains(&x.min(self.d.partner(x))))
    }
}

fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}

/// Checks the input of a hardification: connected, reduced, at least two
/// crossings, and (when catalogued) minimal.
fn check_input(d: &Diagram, catalog: &LinkCatalog) -> Result<Option<String>> {
    if d.crossing_count() < 2 || !d.is_connected() {
        return Err(contract(
            "input must be a connected diagram with at least two crossings; use trivial_rigid_hard for unlinks and hardify split links piece by piece",
        ));
    }
    if !d.is_reduced() {
        return Err(contract("input diagram is not reduced"));
    }
    let fp = fingerprint(d)?;
    match catalog.by_fingerprint(&fp) {
        Some(c) if c.crossing_number != d.crossing_count() => Err(contract(format!(
            "input is a {}-crossing diagram of {}, whose crossing number is {}",
            d.crossing_count(),
            c.name,
            c.crossing_number
        ))),
        Some(c) if c.crossing_number == 0 => Err(contract("input is an unlink")),
        Some(c) => Ok(Some(c.name.clone())),
        None => Ok(None),
    }
}

fn gadget(lib: &GadgetLibrary, name: GadgetName) -> Result<(Diagram, Dart)> {
    let g = lib.require(name)?;
    let attach = g.attach.ok_or_else(|| Error::Discovery {
        name: name.to_string(),
        reason: "gadget has no attach edge".into(),
    })?;
    Ok((g.diagram.clone(), attach))
}

/// Rigid hard diagram of the link of the minimal diagram `dmin`, built by
/// summing `7s` gadgets into its Ω3 triangles.
pub fn rigid_hardify(
    dmin: &Diagram,
    mode: Mode,
    lib: &GadgetLibrary,
    catalog: &LinkCatalog,
    budget: &SearchBudget,
) -> Result<Construction> {
    if !matches!(mode, Mode::Thm2 | Mode::Cor1) {
        return Err(contract("rigid_hardify runs in thm2 or cor1 mode"));
    }
    let name = check_input(dmin, catalog)?;
    let (seven, attach) = gadget(lib, GadgetName::Seven)?;
    let n = dmin.crossing_count();
    let tris = omega3_triangles(dmin);
    let mut b = Builder::new(dmin);
    let planned;
    match mode {
        Mode::Thm2 => {
            planned = tris.len().max(1);
            for t in &tris {
                let x = b
                    .free_corner(t)
                    .ok_or_else(|| Error::Construction("triangle has no unused edge".into()))?;
                b.sum_at(x, &seven, attach)?;
            }
        }
        _ => {
            let pairing = triangle_pairing(dmin);
            pairing.check(n)?;
            planned = pairing.planned_sums().max(1);
            for p in &pairing.pairs {
                b.sum_at(p.shared, &seven, attach)?;
            }
            for t in &pairing.singles {
                let x = b
                    .free_corner(t)
                    .ok_or_else(|| Error::Construction("triangle has no unused edge".into()))?;
                b.sum_at(x, &seven, attach)?;
            }
        }
    }
    if tris.is_empty() {
        b.sum_at(Dart(0), &seven, attach)?;
    }
    let tri = tris.len().max(1);
    b.record.planned = planned;
    b.record.input_name = name;
    b.record.crossing_number = n;
    b.record.omega3_triangles = tris.len();
    b.record.bound = match mode {
        Mode::Thm2 => 7 * tri + n,
        _ => 8 * n,
    };
    b.record.expected_fingerprint = Some(fingerprint(dmin)?);
    let out = b.d;
    let cert = verify_bounds(dmin, &out, mode, &b.record, budget)?;
    Ok(Construction {
        diagram: out,
        certificate: cert,
    })
}

/// Shaky hard diagram: `9s` at one Ω3 triangle (or any edge when there is
/// none) and `7s` at every other triangle.
pub fn shaky_hardify(
    dmin: &Diagram,
    lib: &GadgetLibrary,
    catalog: &LinkCatalog,
    budget: &SearchBudget,
) -> Result<Construction> {
    let name = check_input(dmin, catalog)?;
    let (seven, a7) = gadget(lib, GadgetName::Seven)?;
    let (nine, a9) = gadget(lib, GadgetName::Nine)?;
    let n = dmin.crossing_count();
    let tris = omega3_triangles(dmin);
    let mut b = Builder::new(dmin);
    match tris.split_first() {
        None => b.sum_at(Dart(0), &nine, a9)?,
        Some((first, rest)) => {
            let x = b.free_corner(first).expect("fresh triangle");
            b.sum_at(x, &nine, a9)?;
            for t in rest {
                let x = b
                    .free_corner(t)
                    .ok_or_else(|| Error::Construction("triangle has no unused edge".into()))?;
                b.sum_at(x, &seven, a7)?;
            }
        }
    }
    let tri = tris.len().max(1);
    b.record.planned = tri;
    b.record.input_name = name;
    b.record.crossing_number = n;
    b.record.omega3_triangles = tris.len();
    b.record.bound = 7 * tri + 2 + n;
    b.record.expected_fingerprint = Some(fingerprint(dmin)?);
    let out = b.d;
    let cert = verify_bounds(dmin, &out, Mode::Shaky, &b.record, budget)?;
    Ok(Construction {
        diagram: out,
        certificate: cert,
    })
}

/// Rigid hard diagram of the `k`-component unlink: `h9a` for one
/// component, `h8` for two, and otherwise the cheapest chain of `h8` (and
/// `h12`, when present in the library) connected sums.
pub fn trivial_rigid_hard(
    k: usize,
    lib: &GadgetLibrary,
    budget: &SearchBudget,
) -> Result<Construction> {
    if k == 0 {
        return Err(contract("an unlink needs at least one component"));
    }
    let pieces: Vec<Diagram> = if k == 1 {
        vec![lib.require(GadgetName::H9a)?.diagram.clone()]
    } else {
        // Each summand adds (components - 1) to the total: h8 adds 1 for 8
        // crossings, h12 adds 2 for 12.
        let h8 = lib.require(GadgetName::H8)?.diagram.clone();
        let h12 = lib.get(GadgetName::H12).map(|g| g.diagram.clone());
        let need = k - 1;
        let twelves = if h12.is_some() { need / 2 } else { 0 };
        let eights = need - 2 * twelves;
        let mut v = Vec::new();
        if let Some(h) = &h12 {
            v.extend(std::iter::repeat_n(h.clone(), twelves));
        }
        v.extend(std::iter::repeat_n(h8, eights));
        v
    };
    let mut b = Builder::new(&pieces[0]);
    for p in &pieces[1..] {
        let x = b
            .free_corner(&b.d.darts().collect::<Vec<_>>())
            .ok_or_else(|| Error::Construction("no unused edge".into()))?;
        b.sum_at(x, p, Dart(0))?;
    }
    let h12_used = lib.get(GadgetName::H12).is_some() && k == 3;
    b.record.planned = pieces.len() - 1;
    b.record.input_name = Some(format!("T{k}"));
    b.record.crossing_number = 0;
    b.record.bound = b.d.crossing_count();
    b.record.expected_fingerprint = Some(fingerprint(&Diagram::unlink(k))?);
    b.record.minimal_known = k <= 2 || h12_used;
    let out = b.d;
    let cert = verify_bounds(&Diagram::unlink(k), &out, Mode::Trivial, &b.record, budget)?;
    Ok(Construction {
        diagram: out,
        certificate: cert,
    })
}

/// Re-checks a construction: the crossing bound, the planned sum count,
/// the degree of every face at a splice, preservation of the link and the
/// oracle verdict (rigid hard, or shaky hard in shaky mode).
pub fn verify_bounds(
    input: &Diagram,
    output: &Diagram,
    mode: Mode,
    record: &SumRecord,
    budget: &SearchBudget,
) -> Result<Certificate> {
    let bad = |m: String| Err(Error::Construction(m));
    let out_n = output.crossing_count();
    if out_n > record.bound {
        return bad(format!(
            "{out_n} crossings exceed the bound {}",
            record.bound
        ));
    }
    if mode == Mode::Cor1 && record.sums > input.crossing_count() {
        return bad(format!(
            "{} sums exceed n = {}",
            record.sums,
            input.crossing_count()
        ));
    }
    let (face, _) = output.face_ids();
    let faces = output.faces();
    let min_new = record
        .splices
        .iter()
        .flat_map(|&s| [face[s.index()], face[output.partner(s).index()]])
        .map(|f| faces[f].degree())
        .min();
    if mode != Mode::Trivial && min_new.is_some_and(|m| m < 4) {
        return bad(format!("a splice face has degree {} < 4", min_new.unwrap()));
    }
    let fp = fingerprint(output)?;
    let preserved = record
        .expected_fingerprint
        .as_ref()
        .is_none_or(|e| *e == fp);
    if !preserved {
        return bad("the output fingerprint differs from the input".into());
    }
    let id = Identification {
        name: record.input_name.clone().unwrap_or_else(|| "input".into()),
        crossing_number: record.crossing_number,
        components: output.components(),
        method: IdentifyMethod::Fingerprint,
    };
    let report = classify_with(output, Some(id), budget);
    let ok = match mode {
        Mode::Shaky => report.is_shaky,
        _ => report.is_rigid,
    };
    if !ok {
        return bad(format!(
            "oracle verdict {:?} (rigid {}, shaky {}) does not match {mode:?}",
            report.verdict, report.is_rigid, report.is_shaky
        ));
    }
    Ok(Certificate {
        schema_version: CERTIFICATE_SCHEMA_VERSION,
        mode,
        input_name: record.input_name.clone(),
        input_crossings: input.crossing_count(),
        crossing_number: record.crossing_number,
        omega3_triangles: record.omega3_triangles,
        tri: record.omega3_triangles.max(1),
        planned_sums: record.planned,
        sums: record.sums,
        output_crossings: out_n,
        bound: record.bound,
        min_new_face_degree: min_new,
        fingerprint_preserved: preserved,
        minimal_known: record.minimal_known,
        report,
    })
}

/// Minimal diagrams of a catalogued prime link, one per mirror class.
/// Minimal diagrams of prime links are prime, so only prime shadows at the
/// crossing number are scanned.
pub fn minimal_diagrams(en: &Enumerator, class: &LinkClass) -> Vec<Diagram> {
    if class.crossing_number == 0 {
        return vec![class.diagram.clone()];
    }
    scan(en, class.crossing_number, ShapeFilter::PRIME, class, |_| {
        true
    })
}

/// The least Ω3-triangle count over minimal diagrams of the class, with a
/// diagram attaining it.
pub fn min_tri_diagram(en: &Enumerator, class: &LinkClass) -> (usize, Diagram) {
    let mut best = (
        omega3_triangles(&class.diagram).len(),
        class.diagram.clone(),
    );
    for d in minimal_diagrams(en, class) {
        let t = omega3_triangles(&d).len();
        if t < best.0 {
            best = (t, d);
        }
    }
    best
}

/// Result of hardifying a split diagram piece by piece.
#[derive(Clone, Debug, Serialize)]
pub struct SplitConstruction {
    #[serde(serialize_with = "ser_pd")]
    pub diagram: Diagram,
    /// One certificate per non-split piece, free circles last.
    pub pieces: Vec<Certificate>,
}

/// Runs a construction on every non-split piece of `d` (each free circle
/// becomes a rigid hard unknot diagram) and returns the disjoint union.
pub fn hardify_split(
    d: &Diagram,
    mode: Mode,
    lib: &GadgetLibrary,
    catalog: &LinkCatalog,
    budget: &SearchBudget,
) -> Result<SplitConstruction> {
    let mut parts: Vec<Construction> = Vec::new();
    for piece in d.pieces() {
        parts.push(match mode {
            Mode::Thm2 | Mode::Cor1 => rigid_hardify(&piece, mode, lib, catalog, budget)?,
            Mode::Shaky => shaky_hardify(&piece, lib, catalog, budget)?,
            Mode::Trivial => {
                return Err(contract(
                    "trivial mode takes a component count, not a diagram",
                ))
            }
        });
    }
    for _ in 0..d.free_loops() {
        parts.push(trivial_rigid_hard(1, lib, budget)?);
    }
    let mut union = Diagram::unlink(0);
    for p in &parts {
        union = union.disjoint_union(&p.diagram);
    }
    Ok(SplitConstruction {
        diagram: union,
        pieces: parts.into_iter().map(|p| p.certificate).collect(),
    })
}
