//! Named minimal diagrams with their crossing numbers and fingerprints.

use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::invariants::{fingerprint, Fingerprint};

/// The bundled table: prime knots and links through 8 crossings plus the
/// trivial links `T1..T3`.
pub const BUNDLED_CSV: &str = include_str!("../data/links.csv");

#[derive(Clone, Debug, Serialize)]
pub struct LinkClass {
    pub name: String,
    pub crossing_number: usize,
    pub components: usize,
    pub fingerprint: Fingerprint,
    #[serde(skip)]
    pub diagram: Diagram,
}

#[derive(Debug, Deserialize)]
struct Row {
    name: String,
    crossings: usize,
    components: usize,
    pd: String,
}

#[derive(Clone, Debug, Default)]
pub struct LinkCatalog {
    entries: Vec<LinkClass>,
    by_name: HashMap<String, usize>,
    by_fingerprint: HashMap<Fingerprint, usize>,
}

impl LinkCatalog {
    pub fn bundled() -> LinkCatalog {
        LinkCatalog::from_reader(BUNDLED_CSV.as_bytes()).expect("bundled catalog is valid")
    }

    pub fn from_path(path: &Path) -> Result<LinkCatalog> {
        let file = std::fs::File::open(path)
            .map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
        LinkCatalog::from_reader(file)
    }

    /// Reads `name,crossings,components,pd` rows. Every row is audited:
    /// names must be unique, the code must have the stated crossing and
    /// component counts, and fingerprints must be pairwise distinct.
    pub fn from_reader(r: impl Read) -> Result<LinkCatalog> {
        let mut reader = csv::Reader::from_reader(r);
        let mut cat = LinkCatalog::default();
        for (i, row) in reader.deserialize::<Row>().enumerate() {
            let line = i + 2;
            let row = row.map_err(|e| Error::Catalog(format!("line {line}: {e}")))?;
            let err = |msg: String| Error::Catalog(format!("line {line} ({}): {msg}", row.name));
            let diagram = if row.crossings == 0 && row.pd.trim().is_empty() {
                Diagram::unlink(row.components)
            } else {
                Diagram::parse_pd(&row.pd).map_err(|e| err(e.to_string()))?
            };
            if diagram.crossing_count() != row.crossings {
                return Err(err(format!(
                    "crossings column says {} but the code has {}",
                    row.crossings,
                    diagram.crossing_count()
                )));
            }
            if diagram.components() != row.components {
                return Err(err(format!(
                    "components column says {} but the code has {}",
                    row.components,
                    diagram.components()
                )));
            }
            if cat.by_name.contains_key(&row.name) {
                return Err(err("duplicate name".into()));
            }
            let fp = fingerprint(&diagram).map_err(|e| err(e.to_string()))?;
            if let Some(&j) = cat.by_fingerprint.get(&fp) {
                return Err(err(format!(
                    "fingerprint collides with {}",
                    cat.entries[j].name
                )));
            }
            let idx = cat.entries.len();
            cat.by_name.insert(row.name.clone(), idx);
            cat.by_fingerprint.insert(fp.clone(), idx);
            cat.entries.push(LinkClass {
                name: row.name,
                crossing_number: row.crossings,
                components: row.components,
                fingerprint: fp,
                diagram,
            });
        }
        Ok(cat)
    }

    pub fn entries(&self) -> &[LinkClass] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&LinkClass> {
        self.by_name.get(name).map(|&i| &self.entries[i])
    }

    pub fn by_fingerprint(&self, fp: &Fingerprint) -> Option<&LinkClass> {
        self.by_fingerprint.get(fp).map(|&i| &self.entries[i])
    }

    /// The trivial link with `k` components, if catalogued.
    pub fn trivial(&self, k: usize) -> Option<&LinkClass> {
        self.entries
            .iter()
            .find(|e| e.crossing_number == 0 && e.components == k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_catalog_loads() {
        let cat = LinkCatalog::bundled();
        assert_eq!(cat.len(), 85);
        assert_eq!(cat.get("K3a1").unwrap().crossing_number, 3);
        assert_eq!(cat.get("L2a1").unwrap().components, 2);
        assert_eq!(cat.trivial(2).unwrap().name, "T2");
        let knots = cat
            .entries()
            .iter()
            .filter(|e| e.name.starts_with('K'))
            .count();
        assert_eq!(knots, 35);
    }

    #[test]
    fn well_formed_row() {
        let csv = "name,crossings,components,pd\nK3a1,3,1,\"X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]\"\n";
        let cat = LinkCatalog::from_reader(csv.as_bytes()).unwrap();
        assert_eq!(cat.len(), 1);
    }

    #[test]
    fn audit_failures() {
        let t = "\"X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]\"";
        let dup_fp = format!("name,crossings,components,pd\nA,3,1,{t}\nB,3,1,{t}\n");
        let e = LinkCatalog::from_reader(dup_fp.as_bytes()).unwrap_err();
        assert!(e.to_string().contains("collides with A"), "{e}");
        let bad_count = format!("name,crossings,components,pd\nK3a1,4,1,{t}\n");
        let e = LinkCatalog::from_reader(bad_count.as_bytes()).unwrap_err();
        assert!(e.to_string().contains("K3a1"), "{e}");
        let dup_name = format!("name,crossings,components,pd\nX,3,1,{t}\nX,0,1,\n");
        assert!(LinkCatalog::from_reader(dup_name.as_bytes()).is_err());
    }
}
