use super::{same_group, PiLattice};
use crate::error::{Error, Result};
use crate::homalg::{inverse_unimodular, is_unimodular};
use crate::mat::IMat;

/// Equivariant map given by a `target.rank x source.rank` matrix.
#[derive(Clone, Debug)]
pub struct LatticeMorphism {
    pub source: PiLattice,
    pub target: PiLattice,
    pub matrix: IMat,
}

impl LatticeMorphism {
    pub fn new(source: PiLattice, target: PiLattice, matrix: IMat) -> Result<Self> {
        let f = Self::new_unchecked(source, target, matrix);
        f.check()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: PiLattice, target: PiLattice, matrix: IMat) -> Self {
        LatticeMorphism { source, target, matrix }
    }

    pub fn identity(m: &PiLattice) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), IMat::identity(m.rank()))
    }

    /// Shape and `A rho_source(g) = rho_target(g) A` on generators.
    pub fn check(&self) -> Result<()> {
        if !same_group(self.source.group(), self.target.group()) {
            return Err(Error::GroupMismatch);
        }
        if self.matrix.rows() != self.target.rank() || self.matrix.cols() != self.source.rank() {
            return Err(Error::Dimension(format!(
                "morphism matrix {}x{} for ranks {} -> {}",
                self.matrix.rows(),
                self.matrix.cols(),
                self.source.rank(),
                self.target.rank()
            )));
        }
        for (i, (a, b)) in self.source.generator_matrices().iter().zip(self.target.generator_matrices()).enumerate() {
            if self.matrix.mul(a)? != b.mul(&self.matrix)? {
                let name = &self.source.group().generators()[i].0;
                return Err(Error::NotEquivariant(format!("fails to commute with {name}")));
            }
        }
        Ok(())
    }

    /// `other . self`.
    pub fn then(&self, other: &LatticeMorphism) -> Result<LatticeMorphism> {
        if other.source.rank() != self.target.rank() {
            return Err(Error::Dimension("composition of incompatible morphisms".into()));
        }
        Ok(Self::new_unchecked(self.source.clone(), other.target.clone(), other.matrix.mul(&self.matrix)?))
    }

    pub fn is_isomorphism(&self) -> Result<bool> {
        Ok(self.source.rank() == self.target.rank() && (self.source.rank() == 0 || is_unimodular(&self.matrix)?))
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<LatticeMorphism> {
        if !self.is_isomorphism()? {
            return Err(Error::NotSolvable);
        }
        let inv = if self.matrix.rows() == 0 { self.matrix.clone() } else { inverse_unimodular(&self.matrix)? };
        Ok(Self::new_unchecked(self.target.clone(), self.source.clone(), inv))
    }
}
