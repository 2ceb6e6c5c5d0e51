use std::collections::BTreeMap;

use serde::Serialize;

use crate::catalog::LinkCatalog;
use crate::invariants::{fingerprint, Fingerprint};

use super::enumerate::{Enumerator, ShapeFilter};

/// A fingerprint first met at some size during the bootstrap sweep.
#[derive(Clone, Debug, Serialize)]
pub struct BootstrapClass {
    pub crossings: usize,
    pub components: usize,
    /// A reduced alternating representative exists at this size, so the
    /// crossing number is exactly `crossings`.
    pub certified: bool,
    pub pd: String,
    /// Catalog entry with this fingerprint.
    pub catalog_name: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub name: String,
    pub catalog_crossings: usize,
    /// Size at which the sweep first met the fingerprint, if at all.
    pub observed: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BootstrapReport {
    pub max_crossings: usize,
    pub classes: Vec<BootstrapClass>,
    /// Prime catalog entries within range that the sweep places elsewhere.
    pub mismatches: Vec<Mismatch>,
    /// Certified classes with no catalog entry.
    pub uncatalogued: usize,
}

/// Rebuilds minimal diagrams of prime links from prime shadows up to
/// `max_n` crossings by grouping diagrams by fingerprint, then compares
/// with the catalog. Prime links have prime minimal diagrams, so each
/// prime catalog entry should first appear at its crossing number.
pub fn bootstrap_catalog(max_n: usize, catalog: &LinkCatalog, en: &Enumerator) -> BootstrapReport {
    let mut first: BTreeMap<Fingerprint, BootstrapClass> = BTreeMap::new();
    for n in 1..=max_n {
        let shadows = en.shadows(n, ShapeFilter::PRIME);
        let found = en.exec().flat_map(&shadows, |s| {
            s.diagrams()
                .into_iter()
                .filter_map(|d| fingerprint(&d).ok().map(|fp| (fp, d)))
                .collect()
        });
        for (fp, d) in found {
            let alternating = d.is_alternating();
            match first.get_mut(&fp) {
                Some(c) if c.crossings == n && alternating && !c.certified => {
                    c.certified = true;
                    c.pd = d.emit_pd();
                }
                Some(_) => {}
                None => {
                    let catalog_name = catalog.by_fingerprint(&fp).map(|c| c.name.clone());
                    first.insert(
                        fp,
                        BootstrapClass {
                            crossings: n,
                            components: d.components(),
                            certified: alternating,
                            pd: d.emit_pd(),
                            catalog_name,
                        },
                    );
                }
            }
        }
    }
    let mismatches = catalog
        .entries()
        .iter()
        .filter(|e| e.crossing_number > 0 && e.crossing_number <= max_n)
        .filter_map(|e| {
            let observed = first.get(&e.fingerprint).map(|c| c.crossings);
            (observed != Some(e.crossing_number)).then(|| Mismatch {
                name: e.name.clone(),
                catalog_crossings: e.crossing_number,
                observed,
            })
        })
        .collect();
    let mut classes: Vec<BootstrapClass> = first.into_values().collect();
    classes.sort_by(|a, b| {
        (a.crossings, &a.catalog_name, &a.pd).cmp(&(b.crossings, &b.catalog_name, &b.pd))
    });
    let uncatalogued = classes
        .iter()
        .filter(|c| c.certified && c.catalog_name.is_none())
        .count();
    BootstrapReport {
        max_crossings: max_n,
        classes,
        mismatches,
        uncatalogued,
    }
}
