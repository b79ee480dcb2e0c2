use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lll::lll_reduce;
use super::normal::{inverse_unimodular, is_unimodular, kernel_basis};
use crate::error::{Error, Result};
use crate::lattices::{same_group, LatticeMorphism, PiLattice};
use crate::mat::IMat;

/// Integral basis of `Hom_π(A, B)` as `rank B x rank A` matrices.
pub fn hom_lattice(a: &PiLattice, b: &PiLattice) -> Result<Vec<IMat>> {
    if !same_group(a.group(), b.group()) {
        return Err(Error::GroupMismatch);
    }
    let (ra, rb) = (a.rank(), b.rank());
    let unknowns = ra * rb;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let idx = |i: usize, j: usize| i * ra + j;
    let mut rows = Vec::new();
    for (ma, mb) in a.generator_matrices().iter().zip(b.generator_matrices()) {
        for i in 0..rb {
            for j in 0..ra {
                let mut row = vec![0i64; unknowns];
                for k in 0..ra {
                    row[idx(i, k)] += ma[(k, j)];
                }
                for k in 0..rb {
                    row[idx(k, j)] -= mb[(i, k)];
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let ker = kernel_basis(&IMat::from_rows_with(rows, unknowns))?;
    Ok((0..ker.cols()).map(|c| IMat::from_vec(rb, ra, ker.col(c))).collect())
}

/// Mutually inverse equivariant maps.
#[derive(Clone, Debug)]
pub struct IsoCertificate {
    pub forward: LatticeMorphism,
    pub inverse: LatticeMorphism,
}

impl IsoCertificate {
    /// Both maps equivariant and both composites the identity.
    pub fn verify(&self) -> Result<()> {
        self.forward.check()?;
        self.inverse.check()?;
        let n = self.forward.source.rank();
        let m = self.forward.target.rank();
        let fwd = &self.forward.matrix;
        let inv = &self.inverse.matrix;
        if n != m || inv.mul(fwd)? != IMat::identity(n) || fwd.mul(inv)? != IMat::identity(m) {
            return Err(Error::InconsistentInvariants("certificate composites are not the identity".into()));
        }
        Ok(())
    }

    /// Certificate from an equivariant unimodular matrix.
    pub fn from_matrix(a: &PiLattice, b: &PiLattice, matrix: IMat) -> Result<Self> {
        let inv = if matrix.rows() == 0 { matrix.clone() } else { inverse_unimodular(&matrix)? };
        let cert = IsoCertificate {
            forward: LatticeMorphism::new(a.clone(), b.clone(), matrix)?,
            inverse: LatticeMorphism::new(b.clone(), a.clone(), inv)?,
        };
        cert.verify()?;
        Ok(cert)
    }
}

#[derive(Clone, Debug)]
pub enum IsoSearch {
    Found(Box<IsoCertificate>),
    Inconclusive,
}

impl IsoSearch {
    pub fn certificate(&self) -> Option<&IsoCertificate> {
        match self {
            IsoSearch::Found(c) => Some(c),
            IsoSearch::Inconclusive => None,
        }
    }
}

fn combine(basis: &[IMat], coeffs: &[i64]) -> Result<IMat> {
    let mut acc = IMat::zeros(basis[0].rows(), basis[0].cols());
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&b.scale(c)?)?;
        }
    }
    Ok(acc)
}

fn reduced_basis(basis: &[IMat]) -> Vec<IMat> {
    if basis.len() > 48 {
        return basis.to_vec();
    }
    let (r, c) = (basis[0].rows(), basis[0].cols());
    let rows: Vec<Vec<BigInt>> = basis.iter().map(|m| m.data().iter().map(|&x| BigInt::from(x)).collect()).collect();
    let red = lll_reduce(rows);
    let mut out = Vec::with_capacity(red.len());
    for v in red {
        match v.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>() {
            Some(data) => out.push(IMat::from_vec(r, c, data)),
            None => return basis.to_vec(),
        }
    }
    out
}

/// Budgeted search for an isomorphism `A -> B` among small combinations of a reduced hom basis.
/// Failure is never a disproof.
pub fn find_isomorphism(a: &PiLattice, b: &PiLattice, budget: u32, seed: u64) -> Result<IsoSearch> {
    if !same_group(a.group(), b.group()) {
        return Err(Error::GroupMismatch);
    }
    if a.rank() != b.rank() {
        return Ok(IsoSearch::Inconclusive);
    }
    if a.rank() == 0 {
        return Ok(IsoSearch::Found(Box::new(IsoCertificate::from_matrix(a, b, IMat::zeros(0, 0))?)));
    }
    if a.same_matrices(b) {
        return Ok(IsoSearch::Found(Box::new(IsoCertificate::from_matrix(a, b, IMat::identity(a.rank()))?)));
    }
    let raw = hom_lattice(a, b)?;
    if raw.is_empty() {
        return Ok(IsoSearch::Inconclusive);
    }
    let basis = reduced_basis(&raw);
    let t = basis.len();
    let accept = |m: IMat| -> Result<Option<IsoSearch>> {
        if is_unimodular(&m)? {
            Ok(Some(IsoSearch::Found(Box::new(IsoCertificate::from_matrix(a, b, m)?))))
        } else {
            Ok(None)
        }
    };
    for m in basis.iter().chain(&raw) {
        if let Some(found) = accept(m.clone())? {
            return Ok(found);
        }
    }
    for i in 0..t {
        for j in i + 1..t {
            for s in [1, -1] {
                let mut c = vec![0i64; t];
                c[i] = 1;
                c[j] = s;
                if let Some(found) = accept(combine(&basis, &c)?)? {
                    return Ok(found);
                }
            }
        }
    }
    let bound = budget.max(1) as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tries = 200 * budget.max(1) as usize + 20 * t;
    for _ in 0..tries {
        let density = rng.gen_range(1..=t.min(6));
        let mut c = vec![0i64; t];
        for _ in 0..density {
            c[rng.gen_range(0..t)] = rng.gen_range(-bound..=bound);
        }
        if c.iter().all(|&x| x == 0) {
            continue;
        }
        if let Some(found) = accept(combine(&basis, &c)?)? {
            return Ok(found);
        }
    }
    Ok(IsoSearch::Inconclusive)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groups::parse_group;

    #[test]
    fn hom_ranks() {
        let c2 = Arc::new(parse_group("C2").unwrap());
        let z = PiLattice::trivial(c2.clone());
        let s = PiLattice::sign(c2.clone()).unwrap();
        let r = PiLattice::regular(c2.clone());
        assert_eq!(hom_lattice(&z, &z).unwrap().len(), 1);
        assert_eq!(hom_lattice(&z, &s).unwrap().len(), 0);
        assert_eq!(hom_lattice(&r, &r).unwrap().len(), 2);
        assert!(find_isomorphism(&z, &s, 4, 1).unwrap().certificate().is_none());
        assert!(find_isomorphism(&r, &r, 4, 1).unwrap().certificate().is_some());
    }

    #[test]
    fn star_twist_of_regular() {
        let d3 = Arc::new(parse_group("D3").unwrap());
        let r = PiLattice::regular(d3.clone());
        let s = r.star_twist().unwrap();
        let cert = find_isomorphism(&s, &r, 3, 7).unwrap();
        cert.certificate().unwrap().verify().unwrap();
        let dual = PiLattice::permutation(d3.clone(), &[0, d3.generator("tau").unwrap()]).unwrap();
        let found = find_isomorphism(&dual.dual().unwrap(), &dual, 3, 7).unwrap();
        assert!(found.certificate().is_some());
    }
}
