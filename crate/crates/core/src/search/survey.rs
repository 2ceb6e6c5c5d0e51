use serde::Serialize;

use crate::catalog::{LinkCatalog, LinkClass};
use crate::diagram::{CanonicalCode, Diagram, Symmetry};
use crate::exec::Exec;
use crate::invariants::fingerprint;
use crate::moves::omega3_triangle_count;

use super::closure::{
    closure_until, is_certified_minimal, mirror_variants, reach, SearchBudget, SearchStatus,
};
use super::enumerate::{Enumerator, Shadow, ShapeFilter};
use super::hardness::{classify_with, HardnessReport, Identification, IdentifyMethod, Verdict};

#[derive(Clone, Copy, Debug)]
pub struct SurveyOptions {
    pub filter: ShapeFilter,
    pub budget: SearchBudget,
    pub exec: Exec,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            filter: ShapeFilter::REDUCED,
            budget: SearchBudget::default(),
            exec: Exec::default(),
        }
    }
}

/// One diagram class (up to mirror image) found by a survey.
#[derive(Clone, Debug, Serialize)]
pub struct SurveyHit {
    pub code: CanonicalCode,
    pub pd: String,
    pub report: HardnessReport,
    #[serde(skip)]
    pub diagram: Diagram,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SurveyLevel {
    pub crossings: usize,
    pub shadows: usize,
    /// The shadow list is known to be complete for the filter.
    pub exhaustive: bool,
    pub diagrams: u64,
    /// Diagrams without an Ω3 triangle.
    pub rigid: u64,
    /// Rigid hard diagrams, one per mirror class, sorted by code.
    pub hard: Vec<SurveyHit>,
    /// Rigid diagrams whose link is not catalogued and whose closure does
    /// not reach a certified minimal diagram. They cannot be diagrams of a
    /// catalogued link since fingerprints are invariants.
    pub unidentified: Vec<SurveyHit>,
    /// Rigid candidates whose closure search ran out of budget.
    pub exhausted: Vec<SurveyHit>,
    /// Hard diagrams that are alternating. Always expected to be zero.
    pub alternating_hard: usize,
}

impl SurveyLevel {
    /// Hard classes identified as the named link.
    pub fn hits_for<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a SurveyHit> + 'a {
        self.hard
            .iter()
            .filter(move |h| h.report.identified.as_ref().is_some_and(|i| i.name == name))
    }
}

enum Outcome {
    Hard(SurveyHit),
    Unidentified(SurveyHit),
    Exhausted(SurveyHit),
    Settled,
}

fn hit(d: Diagram, report: HardnessReport) -> SurveyHit {
    SurveyHit {
        code: d.canonical_code(Symmetry::Mirror),
        pd: d.emit_pd(),
        report,
        diagram: d,
    }
}

fn examine(d: Diagram, catalog: &LinkCatalog, budget: &SearchBudget) -> Outcome {
    let fp = match fingerprint(&d) {
        Ok(fp) => fp,
        Err(_) => return Outcome::Exhausted(hit(d.clone(), classify_with(&d, None, budget))),
    };
    let id = catalog.by_fingerprint(&fp).map(|c| Identification {
        name: c.name.clone(),
        crossing_number: c.crossing_number,
        components: c.components,
        method: IdentifyMethod::Fingerprint,
    });
    let known = id.is_some();
    let report = classify_with(&d, id, budget);
    match report.verdict {
        Verdict::Hard => Outcome::Hard(hit(d, report)),
        Verdict::NotHard => Outcome::Settled,
        Verdict::Unknown if report.status == SearchStatus::BudgetExhausted => {
            Outcome::Exhausted(hit(d, report))
        }
        Verdict::Unknown if !known => Outcome::Unidentified(hit(d, report)),
        Verdict::Unknown => Outcome::Exhausted(hit(d, report)),
    }
}

fn survey_shadow(
    s: &Shadow,
    catalog: &LinkCatalog,
    budget: &SearchBudget,
) -> (u64, u64, Vec<Outcome>) {
    let mut diagrams = 0;
    let mut rigid = 0;
    let mut out = Vec::new();
    for bits in s.assignment_representatives() {
        diagrams += 1;
        let d = s.with_assignment(bits);
        if omega3_triangle_count(&d) > 0 {
            continue;
        }
        rigid += 1;
        match examine(d, catalog, budget) {
            Outcome::Settled => {}
            o => out.push(o),
        }
    }
    (diagrams, rigid, out)
}

/// Every rigid hard diagram with `n` crossings over shadows passing the
/// filter, grouped up to mirror image.
pub fn survey_rigid_hard(n: usize, catalog: &LinkCatalog, opts: &SurveyOptions) -> SurveyLevel {
    survey_with(&Enumerator::new(opts.exec), n, catalog, opts)
}

/// As [`survey_rigid_hard`], drawing shadows from a shared enumerator.
pub fn survey_with(
    en: &Enumerator,
    n: usize,
    catalog: &LinkCatalog,
    opts: &SurveyOptions,
) -> SurveyLevel {
    let shadows = en.shadows(n, opts.filter);
    let per = opts
        .exec
        .map(&shadows, |s| survey_shadow(s, catalog, &opts.budget));
    let mut level = SurveyLevel {
        crossings: n,
        shadows: shadows.len(),
        exhaustive: en.is_exhaustive(n, opts.filter),
        ..SurveyLevel::default()
    };
    for (d, r, outs) in per {
        level.diagrams += d;
        level.rigid += r;
        for o in outs {
            match o {
                Outcome::Hard(h) => level.hard.push(h),
                Outcome::Unidentified(h) => level.unidentified.push(h),
                Outcome::Exhausted(h) => level.exhausted.push(h),
                Outcome::Settled => {}
            }
        }
    }
    for v in [
        &mut level.hard,
        &mut level.unidentified,
        &mut level.exhausted,
    ] {
        v.sort_by(|a, b| a.code.cmp(&b.code));
        v.dedup_by(|a, b| a.code == b.code);
    }
    level.alternating_hard = level
        .hard
        .iter()
        .filter(|h| h.report.is_alternating)
        .count();
    level
}

/// Confirms by explicit moves (crossing-increasing ones allowed within the
/// budget) that `d` reaches a catalogued minimal diagram of `class`.
pub fn confirm_identity(d: &Diagram, class: &LinkClass, budget: &SearchBudget) -> bool {
    let targets = mirror_variants(&class.diagram);
    reach(d, budget, |x| {
        x.crossing_count() == class.crossing_number
            && targets.contains(&x.canonical_code(Symmetry::Oriented))
    })
    .found
    .is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum IndexValue {
    Exact(usize),
    /// No rigid hard diagram up to the surveyed size.
    AtLeast(usize),
    /// A witness exists but a smaller level was not searched exhaustively.
    AtMost(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexEntry {
    pub name: String,
    pub crossing_number: usize,
    pub value: IndexValue,
    pub witness: Option<SurveyHit>,
    /// The witness was moved to the catalogued minimal diagram explicitly.
    pub witness_confirmed: bool,
    /// Unnamed or budget-limited rigid candidates met along the way.
    pub set_aside: usize,
}

/// Surveys levels `from..=to` once so several indices can share them.
pub fn survey_range(
    from: usize,
    to: usize,
    catalog: &LinkCatalog,
    opts: &SurveyOptions,
) -> Vec<SurveyLevel> {
    let en = Enumerator::new(opts.exec);
    (from.max(1)..=to)
        .map(|n| survey_with(&en, n, catalog, opts))
        .collect()
}

/// Rigid hard index from precomputed survey levels. Levels above the
/// crossing number must be contiguous up to the last one supplied.
pub fn index_from_levels(
    class: &LinkClass,
    levels: &[SurveyLevel],
    budget: &SearchBudget,
) -> IndexEntry {
    let c = class.crossing_number;
    let mut set_aside = 0;
    // Highest level below which every level was searched completely.
    let mut complete_to = c;
    for level in levels.iter().filter(|l| l.crossings > c) {
        set_aside += level.unidentified.len() + level.exhausted.len();
        let below_complete = complete_to + 1 == level.crossings;
        if let Some(h) = level.hits_for(&class.name).next() {
            let v = level.crossings - c;
            return IndexEntry {
                name: class.name.clone(),
                crossing_number: c,
                value: if below_complete {
                    IndexValue::Exact(v)
                } else {
                    IndexValue::AtMost(v)
                },
                witness_confirmed: confirm_identity(&h.diagram, class, budget),
                witness: Some(h.clone()),
                set_aside,
            };
        }
        if below_complete && level.exhaustive {
            complete_to = level.crossings;
        }
    }
    IndexEntry {
        name: class.name.clone(),
        crossing_number: c,
        value: IndexValue::AtLeast(complete_to + 1 - c),
        witness: None,
        witness_confirmed: false,
        set_aside,
    }
}

/// Smallest `n <= n_max` admitting a rigid hard diagram of the class,
/// minus its crossing number.
pub fn rigid_hard_index(
    class: &LinkClass,
    catalog: &LinkCatalog,
    n_max: usize,
    opts: &SurveyOptions,
) -> IndexEntry {
    let en = Enumerator::new(opts.exec);
    let mut levels = Vec::new();
    for n in class.crossing_number + 1..=n_max {
        let level = survey_with(&en, n, catalog, opts);
        let found = level.hits_for(&class.name).next().is_some();
        levels.push(level);
        if found {
            break;
        }
    }
    index_from_levels(class, &levels, &opts.budget)
}

/// Whether `d` can be simplified to a diagram certifying its own
/// minimality without increasing crossings.
pub fn settles_without_increase(d: &Diagram, budget: &SearchBudget) -> bool {
    closure_until(d, budget, is_certified_minimal).status == SearchStatus::Stopped
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nothing_rigid_hard_below_six() {
        let cat = LinkCatalog::bundled();
        let opts = SurveyOptions {
            exec: Exec::Sequential,
            ..Default::default()
        };
        for n in 1..=5 {
            let level = survey_rigid_hard(n, &cat, &opts);
            assert!(level.hard.is_empty(), "n={n}");
            assert!(level.exhausted.is_empty());
        }
    }
}
