use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::PiLattice;
use crate::error::{Error, Result};
use crate::groups::{build_group, FamilySpec};
use crate::mat::IMat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: Vec<Vec<i64>>,
}

/// On-disk lattice: group spec, rank and row-major generator matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
    pub generators: Vec<NamedMatrix>,
}

impl LatticeFile {
    pub fn from_lattice(m: &PiLattice) -> Self {
        let family = m.group().family();
        let table = match family {
            FamilySpec::Generic { mul } => Some(mul.clone()),
            _ => None,
        };
        LatticeFile {
            group: family.to_string(),
            table,
            rank: m.rank(),
            label: m.label().to_string(),
            generators: m
                .group()
                .generators()
                .iter()
                .zip(m.generator_matrices())
                .map(|((name, _), a)| NamedMatrix { name: name.clone(), matrix: a.to_rows() })
                .collect(),
        }
    }

    pub fn to_lattice(&self) -> Result<PiLattice> {
        let spec = match &self.table {
            Some(mul) => FamilySpec::Generic { mul: mul.clone() },
            None => self.group.parse()?,
        };
        let group = Arc::new(build_group(&spec)?);
        let mut gens = Vec::with_capacity(group.generators().len());
        for (name, _) in group.generators() {
            let nm = self
                .generators
                .iter()
                .find(|g| &g.name == name)
                .ok_or_else(|| Error::Parse(format!("missing generator {name}")))?;
            if nm.matrix.len() != self.rank || nm.matrix.iter().any(|r| r.len() != self.rank) {
                return Err(Error::Parse(format!("generator {name} is not {0}x{0}", self.rank)));
            }
            gens.push(IMat::from_rows_with(nm.matrix.clone(), self.rank));
        }
        let label = if self.label.is_empty() { "M".to_string() } else { self.label.clone() };
        PiLattice::from_generators(group, gens, label)
    }
}

impl PiLattice {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&LatticeFile::from_lattice(self)).expect("lattice serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: LatticeFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.to_lattice()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_group;

    #[test]
    fn round_trip() {
        let g = Arc::new(parse_group("C3xD5").unwrap());
        let m = PiLattice::regular(g.clone()).star_twist().unwrap();
        let back = PiLattice::from_json(&m.to_json()).unwrap();
        assert!(back.same_matrices(&m));
        assert_eq!(back.label(), m.label());
    }
}
