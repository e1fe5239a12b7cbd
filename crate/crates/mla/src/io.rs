//! JSON file formats for groups, stars, extension data and pairings.
//!
//! Groups serialize as `{ "name", "order", "mul" }`; identity and inverses
//! are recomputed on load and any table failing validation is rejected.
//! Star files reference their group either by family spec / catalog name or
//! inline. All loaders re-run full validation, so round-tripping a file
//! reproduces bit-identical tables or fails loudly.

use crate::extension::{ExtensionData, ExtensionError};
use crate::families::FamilySpec;
use crate::group::{GroupError, GroupTable};
use crate::pairing::{CentralPairing, PairingError};
use crate::star::{LieRing, LieRingError, StarError, StarTable, Violation};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("group: {0}")]
    Group(#[from] GroupError),
    #[error("star: {0}")]
    Star(#[from] StarError),
    #[error("extension: {0}")]
    Extension(#[from] ExtensionError),
    #[error("pairing: {0}")]
    Pairing(#[from] PairingError),
    #[error("bracket fails the Lie ring laws: {0:?}")]
    Bracket(Vec<Violation>),
    #[error("{0}")]
    Format(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
}

impl GroupFile {
    pub fn from_group(g: &GroupTable) -> Self {
        GroupFile {
            name: g.name().to_string(),
            order: g.order(),
            mul: g.rows(),
        }
    }

    pub fn to_group(&self) -> Result<GroupTable, IoError> {
        if self.mul.len() != self.order {
            return Err(IoError::Format(format!(
                "declared order {} does not match table size {}",
                self.order,
                self.mul.len()
            )));
        }
        Ok(GroupTable::from_table(self.name.clone(), &self.mul)?)
    }
}

pub fn group_to_json(g: &GroupTable) -> String {
    serde_json::to_string_pretty(&GroupFile::from_group(g)).expect("plain data serializes")
}

pub fn group_from_json(text: &str) -> Result<GroupTable, IoError> {
    let file: GroupFile = serde_json::from_str(text)?;
    file.to_group()
}

/// A group referenced by family spec / catalog name, or inlined.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Inline(GroupFile),
}

impl GroupRef {
    pub fn resolve(&self) -> Result<GroupTable, IoError> {
        match self {
            GroupRef::Inline(f) => f.to_group(),
            GroupRef::Name(name) => resolve_group_name(name),
        }
    }
}

/// Accepts either the `name:params` family grammar or a catalog name like
/// `Q8`.
pub fn resolve_group_name(name: &str) -> Result<GroupTable, IoError> {
    if let Ok(spec) = FamilySpec::parse(name) {
        return Ok(spec.build()?);
    }
    for entry in crate::catalog::standard_catalog() {
        if entry.name == name {
            return Ok(entry.spec.build()?);
        }
    }
    Err(IoError::Format(format!(
        "unknown group name {name:?}; use a family spec like cyclic:6 or a catalog name"
    )))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StarFile {
    pub group: GroupRef,
    pub star: Vec<Vec<usize>>,
}

impl StarFile {
    pub fn new(group: &GroupTable, star: &StarTable) -> Self {
        StarFile {
            group: GroupRef::Inline(GroupFile::from_group(group)),
            star: star.rows(),
        }
    }

    pub fn resolve(&self) -> Result<(GroupTable, StarTable), IoError> {
        let g = self.group.resolve()?;
        let star = StarTable::from_rows(g.order(), &self.star)?;
        Ok((g, star))
    }
}

pub fn star_to_json(group: &GroupTable, star: &StarTable) -> String {
    serde_json::to_string_pretty(&StarFile::new(group, star)).expect("plain data serializes")
}

pub fn star_from_json(text: &str) -> Result<(GroupTable, StarTable), IoError> {
    let file: StarFile = serde_json::from_str(text)?;
    file.resolve()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionFile {
    #[serde(rename = "H")]
    pub h_group: GroupFile,
    #[serde(rename = "K")]
    pub k_group: GroupFile,
    #[serde(rename = "bracket_H")]
    pub bracket_h: Vec<Vec<usize>>,
    #[serde(rename = "bracket_K")]
    pub bracket_k: Vec<Vec<usize>>,
    pub sigma: Vec<Vec<usize>>,
    pub gamma: Vec<Vec<usize>>,
    pub f: Vec<Vec<usize>>,
    #[serde(rename = "h")]
    pub hmap: Vec<Vec<usize>>,
}

impl ExtensionFile {
    pub fn from_data(data: &ExtensionData) -> Self {
        let kn = data.k_ring().group().order();
        let rows = |flat: &[usize]| -> Vec<Vec<usize>> {
            (0..kn)
                .map(|x| flat[x * kn..(x + 1) * kn].to_vec())
                .collect()
        };
        ExtensionFile {
            h_group: GroupFile::from_group(data.h_ring().group()),
            k_group: GroupFile::from_group(data.k_ring().group()),
            bracket_h: data.h_ring().bracket().rows(),
            bracket_k: data.k_ring().bracket().rows(),
            sigma: data.sigma_tables().to_vec(),
            gamma: data.gamma_tables().to_vec(),
            f: rows(data.f_table()),
            hmap: rows(data.h_table()),
        }
    }

    pub fn to_data(&self) -> Result<ExtensionData, IoError> {
        let hg = self.h_group.to_group()?;
        let kg = self.k_group.to_group()?;
        let bh = StarTable::from_rows(hg.order(), &self.bracket_h)?;
        let bk = StarTable::from_rows(kg.order(), &self.bracket_k)?;
        let h_ring = LieRing::new(hg, bh).map_err(lie_ring_to_io)?;
        let k_ring = LieRing::new(kg, bk).map_err(lie_ring_to_io)?;
        let flatten = |rows: &[Vec<usize>], what: &str| -> Result<Vec<usize>, IoError> {
            let kn = k_ring.group().order();
            if rows.len() != kn || rows.iter().any(|r| r.len() != kn) {
                return Err(IoError::Format(format!("{what} must be a {kn}x{kn} table")));
            }
            Ok(rows.concat())
        };
        let f = flatten(&self.f, "f")?;
        let hmap = flatten(&self.hmap, "h")?;
        Ok(ExtensionData::new(
            h_ring,
            k_ring,
            self.sigma.clone(),
            self.gamma.clone(),
            f,
            hmap,
        )?)
    }
}

fn lie_ring_to_io(err: LieRingError) -> IoError {
    match err {
        LieRingError::NotAbelian => IoError::Format("H and K must be abelian".into()),
        LieRingError::NotCertified(v) => IoError::Bracket(v),
    }
}

pub fn extension_to_json(data: &ExtensionData) -> String {
    serde_json::to_string_pretty(&ExtensionFile::from_data(data)).expect("plain data serializes")
}

pub fn extension_from_json(text: &str) -> Result<ExtensionData, IoError> {
    let file: ExtensionFile = serde_json::from_str(text)?;
    file.to_data()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairingFile {
    pub quotient: GroupFile,
    pub target: GroupFile,
    pub pairing: Vec<Vec<usize>>,
}

impl PairingFile {
    pub fn from_pairing(p: &CentralPairing) -> Self {
        let qn = p.quotient_group().order();
        PairingFile {
            quotient: GroupFile::from_group(p.quotient_group()),
            target: GroupFile::from_group(p.target_group()),
            pairing: (0..qn)
                .map(|x| p.table()[x * qn..(x + 1) * qn].to_vec())
                .collect(),
        }
    }

    pub fn to_pairing(&self) -> Result<CentralPairing, IoError> {
        let q = self.quotient.to_group()?;
        let a = self.target.to_group()?;
        let qn = q.order();
        if self.pairing.len() != qn || self.pairing.iter().any(|r| r.len() != qn) {
            return Err(IoError::Format(format!(
                "pairing must be a {qn}x{qn} table"
            )));
        }
        Ok(CentralPairing::new(q, a, self.pairing.concat())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn group_round_trip_is_identical() {
        let g = families::heisenberg(2).unwrap();
        let text = group_to_json(&g);
        let back = group_from_json(&text).unwrap();
        assert_eq!(g, back);
        assert_eq!(group_to_json(&back), text);
    }

    #[test]
    fn loader_rejects_invalid_tables() {
        let text = r#"{"name":"bad","order":2,"mul":[[0,1],[1,1]]}"#;
        assert!(matches!(
            group_from_json(text),
            Err(IoError::Group(GroupError::MissingInverse(1)))
        ));
    }

    #[test]
    fn star_file_accepts_named_groups() {
        let text = r#"{"group":"heisenberg:3","star":null}"#;
        // malformed star payloads fail cleanly
        assert!(serde_json::from_str::<StarFile>(text).is_err());

        let g = families::dihedral(4).unwrap();
        let star = StarTable::improper(&g);
        let file = StarFile {
            group: GroupRef::Name("dihedral:4".into()),
            star: star.rows(),
        };
        let (g2, star2) = file.resolve().unwrap();
        assert_eq!(g2.order(), 8);
        assert_eq!(star2, star);
    }

    #[test]
    fn catalog_names_resolve() {
        assert_eq!(resolve_group_name("Q8").unwrap().order(), 8);
        assert_eq!(resolve_group_name("cyclic:7").unwrap().order(), 7);
        assert!(resolve_group_name("NoSuchGroup").is_err());
    }

    #[test]
    fn extension_round_trip() {
        let data = crate::extension::random_verified_instances(3, 1).remove(0);
        let text = extension_to_json(&data);
        let back = extension_from_json(&text).unwrap();
        assert_eq!(extension_to_json(&back), text);
    }
}
