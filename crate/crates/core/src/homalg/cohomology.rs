use serde::{Deserialize, Serialize};

use super::normal::{kernel_basis, Solver};
use super::AbelianInvariants;
use crate::error::{Error, Result};
use crate::groups::{sylow_profile, Elem, Subgroup};
use crate::lattices::{fixed_points, PiLattice};
use crate::mat::IMat;
use crate::par;

fn express(basis: &IMat, vectors: &IMat, what: &str) -> Result<IMat> {
    Solver::new(basis)
        .solve(vectors)?
        .ok_or_else(|| Error::InconsistentInvariants(format!("{what} leaves the expected sublattice")))
}

/// `M^H / N_H M`.
pub fn tate_h0(m: &PiLattice, sub: &[Elem]) -> Result<AbelianInvariants> {
    let fixed = fixed_points(m, sub)?;
    if fixed.cols() == 0 {
        return Ok(AbelianInvariants::zero());
    }
    let norm = m.norm(sub)?;
    AbelianInvariants::cokernel(&express(&fixed, &norm, "norm image")?)
}

/// `ker N_H / I_H M`.
pub fn tate_hm1(m: &PiLattice, sub: &[Elem]) -> Result<AbelianInvariants> {
    let r = m.rank();
    let ker = kernel_basis(&m.norm(sub)?)?;
    if ker.cols() == 0 {
        return Ok(AbelianInvariants::zero());
    }
    let mut aug = IMat::zeros(r, 0);
    for g in m.group().greedy_generators(sub) {
        aug = aug.hstack(&m.action(g).sub(&IMat::identity(r))?);
    }
    AbelianInvariants::cokernel(&express(&ker, &aug, "augmentation image")?)
}

/// `H^1(H, M)` as `H^-1(H, M^0)`; on cyclic `H` it is compared with `H^-1(H, M)`.
pub fn h1(m: &PiLattice, sub: &Subgroup) -> Result<AbelianInvariants> {
    let dual = m.dual()?;
    let via_dual = tate_hm1(&dual, &sub.elements)?;
    if sub.cyclic {
        let direct = tate_hm1(m, &sub.elements)?;
        if direct != via_dual {
            return Err(Error::DualityMismatch {
                subgroup: sub.describe(m.group()),
                h1: via_dual.to_string(),
                hm1: direct.to_string(),
            });
        }
    }
    Ok(via_dual)
}

/// Crossed homomorphisms `f(s h) = f(s) + s f(h)` on the sorted subgroup elements: a basis of
/// `Z^1` (columns of length `|H| rank`) and the coboundaries of the standard basis in those coordinates.
pub(crate) fn crossed_system(m: &PiLattice, sub: &[Elem]) -> Result<(Vec<Elem>, IMat, IMat)> {
    let g = m.group();
    let r = m.rank();
    let mut elems = sub.to_vec();
    elems.sort_unstable();
    let k = elems.len();
    let pos = |x: Elem| elems.binary_search(&x).expect("element of the subgroup");
    let gens = g.greedy_generators(&elems);
    let mut rows = Vec::new();
    for i in 0..r {
        let mut row = vec![0i64; k * r];
        row[pos(g.identity()) * r + i] = 1;
        rows.push(row);
    }
    for &s in &gens {
        let rho = m.action(s);
        for &h in &elems {
            let (a, b, c) = (pos(g.mul(s, h)), pos(s), pos(h));
            for i in 0..r {
                let mut row = vec![0i64; k * r];
                row[a * r + i] += 1;
                row[b * r + i] -= 1;
                for j in 0..r {
                    row[c * r + j] -= rho[(i, j)];
                }
                rows.push(row);
            }
        }
    }
    let z1 = if r == 0 { IMat::zeros(0, 0) } else { kernel_basis(&IMat::from_rows_with(rows, k * r))? };
    if z1.cols() == 0 {
        return Ok((elems, z1, IMat::zeros(0, r)));
    }
    let mut b1 = IMat::zeros(k * r, r);
    for &h in &elems {
        let d = m.action(h).sub(&IMat::identity(r))?;
        for i in 0..r {
            for j in 0..r {
                b1[(pos(h) * r + i, j)] = d[(i, j)];
            }
        }
    }
    let coords = express(&z1, &b1, "coboundaries")?;
    Ok((elems, z1, coords))
}

/// `H^1(H, M) = Z^1 / B^1` computed from crossed homomorphisms.
pub fn h1_crossed(m: &PiLattice, sub: &[Elem]) -> Result<AbelianInvariants> {
    let (_, z1, coords) = crossed_system(m, sub)?;
    if z1.cols() == 0 {
        return Ok(AbelianInvariants::zero());
    }
    AbelianInvariants::cokernel(&coords)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Invertibility {
    Invertible,
    NotInvertible,
    Undecidable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlabbyReport {
    pub flabby: bool,
    pub coflabby: bool,
    pub invertible: Invertibility,
    /// Subgroups (as descriptions) with nonzero `H^-1`.
    pub flabby_witnesses: Vec<String>,
    /// Subgroups with nonzero `H^1`.
    pub coflabby_witnesses: Vec<String>,
}

/// Flabby and coflabby tests over subgroup class representatives, with the invertibility verdict
/// the Sylow structure allows.
pub fn flabby_coflabby(m: &PiLattice) -> Result<FlabbyReport> {
    let g = m.group();
    let reps: Vec<&Subgroup> = g.subgroups().representatives().collect();
    let vals = par::try_map(&reps, |h| -> Result<(bool, bool)> {
        Ok((tate_hm1(m, &h.elements)?.is_zero(), h1(m, h)?.is_zero()))
    })?;
    let flabby_witnesses: Vec<String> =
        reps.iter().zip(&vals).filter(|(_, v)| !v.0).map(|(h, _)| h.describe(g)).collect();
    let coflabby_witnesses: Vec<String> =
        reps.iter().zip(&vals).filter(|(_, v)| !v.1).map(|(h, _)| h.describe(g)).collect();
    let flabby = flabby_witnesses.is_empty();
    let coflabby = coflabby_witnesses.is_empty();
    let profile = sylow_profile(g);
    let invertible = if !(flabby && coflabby) {
        Invertibility::NotInvertible
    } else if profile.all_sylow_cyclic || (profile.odd_sylow_cyclic && profile.two_sylow_cyclic_or_dihedral) {
        Invertibility::Invertible
    } else {
        Invertibility::Undecidable
    };
    Ok(FlabbyReport { flabby, coflabby, invertible, flabby_witnesses, coflabby_witnesses })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groups::parse_group;

    fn grp(s: &str) -> Arc<crate::groups::FiniteGroup> {
        Arc::new(parse_group(s).unwrap())
    }

    fn whole(g: &crate::groups::FiniteGroup) -> Vec<Elem> {
        (0..g.order()).collect()
    }

    #[test]
    fn small_examples() {
        let c5 = grp("C5");
        let all = whole(&c5);
        assert_eq!(tate_h0(&PiLattice::trivial(c5.clone()), &all).unwrap(), AbelianInvariants::cyclic(5));
        assert!(tate_hm1(&PiLattice::trivial(c5.clone()), &all).unwrap().is_zero());
        let c2 = grp("C2");
        let all = whole(&c2);
        let sign = PiLattice::sign(c2.clone()).unwrap();
        assert!(tate_h0(&PiLattice::regular(c2.clone()), &all).unwrap().is_zero());
        assert!(tate_h0(&sign, &all).unwrap().is_zero());
        assert_eq!(tate_hm1(&sign, &all).unwrap(), AbelianInvariants::cyclic(2));
        let whole_sub = c2.subgroups().whole().clone();
        assert_eq!(h1(&sign, &whole_sub).unwrap(), AbelianInvariants::cyclic(2));
        assert_eq!(h1_crossed(&sign, &all).unwrap(), AbelianInvariants::cyclic(2));
        let rep = flabby_coflabby(&sign).unwrap();
        assert!(!rep.flabby && !rep.coflabby);
        assert_eq!(rep.invertible, Invertibility::NotInvertible);
    }

    #[test]
    fn augmentation_kernel() {
        let c4 = grp("C4");
        let reg = PiLattice::regular(c4.clone());
        let ones = IMat::from_rows(vec![vec![1; 4]]);
        let ker = kernel_basis(&ones).unwrap();
        let ia = crate::lattices::sublattice(&reg, &ker).unwrap();
        let whole_sub = c4.subgroups().whole().clone();
        assert_eq!(h1(&ia, &whole_sub).unwrap(), AbelianInvariants::cyclic(4));
        assert_eq!(h1_crossed(&ia, &whole_sub.elements).unwrap(), AbelianInvariants::cyclic(4));
    }

    #[test]
    fn permutation_lattices() {
        for spec in ["D5", "D3", "Q8", "C6"] {
            let g = grp(spec);
            for h in g.subgroups().representatives() {
                let p = PiLattice::permutation(g.clone(), &h.elements).unwrap();
                let rep = flabby_coflabby(&p).unwrap();
                assert!(rep.flabby && rep.coflabby, "{spec}");
                let expect = if spec == "Q8" { Invertibility::Undecidable } else { Invertibility::Invertible };
                assert_eq!(rep.invertible, expect);
                for k in g.subgroups().representatives() {
                    assert_eq!(h1(&p, k).unwrap(), h1_crossed(&p, &k.elements).unwrap());
                }
            }
        }
    }
}
