use std::collections::HashMap;

use serde::Serialize;

use crate::catalog::{LinkCatalog, LinkClass};
use crate::diagram::{CanonicalCode, Diagram, Symmetry};
use crate::error::Result;
use crate::invariants::fingerprint;
use crate::moves::omega3_triangle_count;

use super::closure::{
    closure_until, is_certified_minimal, mirror_variants, reach, SearchBudget, SearchStatus,
};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentifyMethod {
    Fingerprint,
    Reachability,
}

#[derive(Clone, Debug, Serialize)]
pub struct Identification {
    pub name: String,
    pub crossing_number: usize,
    pub components: usize,
    pub method: IdentifyMethod,
}

impl Identification {
    fn from_class(c: &LinkClass, method: IdentifyMethod) -> Self {
        Identification {
            name: c.name.clone(),
            crossing_number: c.crossing_number,
            components: c.components,
            method,
        }
    }
}

/// Names the link of `d`: a unique fingerprint match first, then a move
/// search (crossing-increasing moves allowed up to the budget) toward any
/// catalogued minimal diagram with the same component count. Returns
/// `None` rather than guessing.
pub fn identify(
    d: &Diagram,
    catalog: &LinkCatalog,
    budget: &SearchBudget,
) -> Result<Option<Identification>> {
    let fp = fingerprint(d)?;
    if let Some(c) = catalog.by_fingerprint(&fp) {
        return Ok(Some(Identification::from_class(
            c,
            IdentifyMethod::Fingerprint,
        )));
    }
    let mut targets: HashMap<CanonicalCode, usize> = HashMap::new();
    for (i, e) in catalog.entries().iter().enumerate() {
        if e.components == d.components()
            && e.crossing_number <= d.crossing_count() + budget.max_crossings_up
        {
            targets.extend(mirror_variants(&e.diagram).into_iter().map(|c| (c, i)));
        }
    }
    if targets.is_empty() {
        return Ok(None);
    }
    let code = |x: &Diagram| x.canonical_code(Symmetry::Oriented);
    let hit = reach(d, budget, |x| targets.contains_key(&code(x)));
    Ok(hit.found.map(|x| {
        let c = &catalog.entries()[targets[&code(&x)]];
        Identification::from_class(c, IdentifyMethod::Reachability)
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Hard,
    NotHard,
    /// The link could not be named, or the closure search ran out of budget.
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct HardnessReport {
    pub schema_version: u32,
    pub crossings: usize,
    pub components: usize,
    pub is_reduced: bool,
    pub is_alternating: bool,
    pub omega3_sites: usize,
    pub verdict: Verdict,
    pub is_hard: bool,
    pub is_rigid: bool,
    pub is_shaky: bool,
    pub min_crossings_reached: usize,
    pub closure_size: usize,
    pub identified: Option<Identification>,
    pub status: SearchStatus,
}

/// Decides hardness by exact non-increasing closure.
pub fn classify_hardness(
    d: &Diagram,
    catalog: &LinkCatalog,
    budget: &SearchBudget,
) -> Result<HardnessReport> {
    let id = identify(d, catalog, budget)?;
    Ok(classify_with(d, id, budget))
}

/// Hardness against an already known identification.
pub fn classify_with(
    d: &Diagram,
    id: Option<Identification>,
    budget: &SearchBudget,
) -> HardnessReport {
    let n = d.crossing_count();
    let reduced = d.is_reduced();
    let c = id.as_ref().map(|i| i.crossing_number);
    let closure = match c {
        Some(c) => closure_until(d, budget, |x| x.crossing_count() <= c),
        // Unnamed: still stop at a diagram that certifies its own minimality.
        None => closure_until(d, budget, is_certified_minimal),
    };
    let stopped = closure.status == SearchStatus::Stopped;
    let verdict = match (c, closure.status) {
        _ if stopped => Verdict::NotHard,
        (Some(_), _) if !reduced => Verdict::NotHard,
        (Some(c), _) if n <= c => Verdict::NotHard,
        (Some(c), SearchStatus::Complete) if closure.min_crossings > c => Verdict::Hard,
        _ => Verdict::Unknown,
    };
    let status = if closure.status == SearchStatus::BudgetExhausted {
        SearchStatus::BudgetExhausted
    } else {
        SearchStatus::Complete
    };
    let sites = omega3_triangle_count(d);
    let hard = verdict == Verdict::Hard;
    HardnessReport {
        schema_version: REPORT_SCHEMA_VERSION,
        crossings: n,
        components: d.components(),
        is_reduced: reduced,
        is_alternating: d.is_alternating(),
        omega3_sites: sites,
        verdict,
        is_hard: hard,
        is_rigid: hard && sites == 0,
        is_shaky: hard && sites > 0,
        min_crossings_reached: closure.min_crossings,
        closure_size: closure.size,
        identified: id,
        status,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    #[test]
    fn trefoil_is_not_hard() {
        let cat = LinkCatalog::bundled();
        let r = classify_hardness(&trefoil(), &cat, &SearchBudget::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotHard);
        assert_eq!(r.identified.unwrap().name, "K3a1");
        let r = classify_hardness(&kinked_trefoil(), &cat, &SearchBudget::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotHard);
        assert_eq!(r.min_crossings_reached, 3);
    }

    #[test]
    fn unlink_identified() {
        let cat = LinkCatalog::bundled();
        let id = identify(&Diagram::unlink(2), &cat, &SearchBudget::default())
            .unwrap()
            .unwrap();
        assert_eq!(id.name, "T2");
    }

    #[test]
    fn unnamed_link_reported_unknown() {
        let cat = LinkCatalog::bundled();
        // Trefoil plus a split circle is not catalogued.
        let d = trefoil().disjoint_union(&Diagram::unknot());
        let b = SearchBudget {
            max_states: 2000,
            max_crossings_up: 1,
        };
        assert!(identify(&d, &cat, &b).unwrap().is_none());
        let r = classify_with(&d, None, &b);
        assert_eq!(r.verdict, Verdict::Unknown);
        assert!(!r.is_hard);
    }
}
