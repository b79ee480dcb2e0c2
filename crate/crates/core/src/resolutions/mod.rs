//! Short exact sequences of lattices, flabby and coflasque resolutions, the coflabby embedding
//! and stable-permutation certificates.

mod cover;
mod ext;
mod stable;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homalg::{elementary_divisors, hnf_cols, kernel_basis, rank};
use crate::lattices::{LatticeFile, LatticeMorphism, PiLattice};
use crate::mat::IMat;

pub use cover::{coflasque_resolution, flabby_resolution};
pub use ext::{coflabby_embedding, ext1_realize, h1_classes, H1Class};
pub use stable::{certify_stably_permutation, StablePermutationCertificate};

/// `0 -> left -> middle -> right -> 0`.
#[derive(Clone, Debug)]
pub struct ExactTriple {
    pub left: PiLattice,
    pub middle: PiLattice,
    pub right: PiLattice,
    pub inject: LatticeMorphism,
    pub project: LatticeMorphism,
}

impl ExactTriple {
    /// Builds and checks all exactness invariants.
    pub fn new(left: PiLattice, middle: PiLattice, right: PiLattice, inject: IMat, project: IMat) -> Result<Self> {
        let inject = LatticeMorphism::new(left.clone(), middle.clone(), inject)
            .map_err(|e| Error::InvalidTriple(format!("inject: {e}")))?;
        let project = LatticeMorphism::new(middle.clone(), right.clone(), project)
            .map_err(|e| Error::InvalidTriple(format!("project: {e}")))?;
        let t = ExactTriple { left, middle, right, inject, project };
        t.check()?;
        Ok(t)
    }

    /// Injectivity with saturated image, surjectivity, zero composite, rank additivity, and
    /// kernel equal to image.
    pub fn check(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::InvalidTriple(s.into()));
        let (i, p) = (&self.inject.matrix, &self.project.matrix);
        let (l, m, r) = (self.left.rank(), self.middle.rank(), self.right.rank());
        if l > 0 && (rank(i)? != l || elementary_divisors(i)?.iter().any(|d| *d != 1.into())) {
            return bad("inject is not injective with saturated image");
        }
        if r > 0 && (rank(p)? != r || elementary_divisors(p)?.iter().any(|d| *d != 1.into())) {
            return bad("project is not surjective");
        }
        if l > 0 && r > 0 && !p.mul(i)?.is_zero() {
            return bad("project . inject != 0");
        }
        if m != l + r {
            return bad("ranks are not additive");
        }
        let ker = if r == 0 { IMat::identity(m) } else { kernel_basis(p)? };
        let img = if l == 0 { IMat::zeros(m, 0) } else { hnf_cols(i)? };
        let ker = if ker.cols() == 0 { ker } else { hnf_cols(&ker)? };
        if ker != img {
            return bad("kernel of project differs from image of inject");
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TripleFile {
            left: LatticeFile::from_lattice(&self.left),
            middle: LatticeFile::from_lattice(&self.middle),
            right: LatticeFile::from_lattice(&self.right),
            inject: self.inject.matrix.to_rows(),
            project: self.project.matrix.to_rows(),
        })
        .expect("triple serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: TripleFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let (l, m, r) = (f.left.to_lattice()?, f.middle.to_lattice()?, f.right.to_lattice()?);
        let i = IMat::from_rows_with(f.inject, l.rank());
        let p = IMat::from_rows_with(f.project, m.rank());
        Self::new(l, m, r, i, p)
    }
}

#[derive(Serialize, Deserialize)]
struct TripleFile {
    left: LatticeFile,
    middle: LatticeFile,
    right: LatticeFile,
    inject: Vec<Vec<i64>>,
    project: Vec<Vec<i64>>,
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groups::parse_group;
    use crate::homalg::{find_isomorphism, flabby_coflabby};

    fn c2() -> Arc<crate::groups::FiniteGroup> {
        Arc::new(parse_group("C2").unwrap())
    }

    fn iso(a: &PiLattice, b: &PiLattice) -> bool {
        a.rank() == b.rank() && find_isomorphism(a, b, 4, 1).unwrap().certificate().is_some()
    }

    #[test]
    fn sign_c2_cover() {
        let g = c2();
        let m = PiLattice::sign(g.clone()).unwrap();
        let t = coflasque_resolution(&m).unwrap();
        assert!(iso(&t.middle, &PiLattice::regular(g.clone())));
        assert!(iso(&t.left, &PiLattice::trivial(g.clone())));
        let f = flabby_resolution(&m).unwrap();
        assert!(iso(&f.right, &PiLattice::trivial(g)));
    }

    #[test]
    fn sign_c2_extension() {
        let g = c2();
        let m = PiLattice::sign(g.clone()).unwrap();
        let whole: Vec<usize> = (0..2).collect();
        let classes = h1_classes(&m, &whole).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].order, 2);
        let t = ext1_realize(&m, &classes[0]).unwrap();
        assert!(iso(&t.middle, &PiLattice::regular(g.clone())));
        let e = coflabby_embedding(&m).unwrap();
        assert!(iso(&e.middle, &PiLattice::regular(g.clone())));
        assert!(iso(&e.right, &PiLattice::trivial(g)));
    }

    #[test]
    fn zero_class_rejected() {
        let g = c2();
        let m = PiLattice::regular(g);
        let class = H1Class { order: 1, elements: vec![0, 1], cocycle: vec![vec![0, 0], vec![1, -1]] };
        assert!(matches!(ext1_realize(&m, &class), Err(Error::ZeroClass)));
    }

    #[test]
    fn d3_trivial_resolutions() {
        let g = Arc::new(parse_group("D3").unwrap());
        let m = PiLattice::trivial(g.clone());
        let f = flabby_resolution(&m).unwrap();
        assert!(flabby_coflabby(&f.right).unwrap().flabby);
        let e = coflabby_embedding(&PiLattice::sign(g).unwrap()).unwrap();
        assert!(flabby_coflabby(&e.middle).unwrap().coflabby);
        let round = ExactTriple::from_json(&e.to_json()).unwrap();
        assert_eq!(round.inject.matrix, e.inject.matrix);
    }

    #[test]
    fn stable_certificates() {
        let g = c2();
        let m = PiLattice::regular(g.clone());
        let c = certify_stably_permutation(&m, 0, 3).unwrap().unwrap();
        assert!(c.complement.is_empty());
        let e = flabby_resolution(&PiLattice::sign(g).unwrap()).unwrap().right;
        assert!(certify_stably_permutation(&e, 4, 3).unwrap().is_some());
    }
}
