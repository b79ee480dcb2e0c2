use super::ExactTriple;
use crate::error::{Error, Result};
use crate::homalg::{flabby_coflabby, kernel_basis};
use crate::lattices::{cosets, fixed_points, sublattice, PiLattice};
use crate::mat::IMat;

/// `0 -> Q -> P -> M -> 0` with `P = sum_H Z[π/H] ⊗ M^H` over subgroup class representatives.
pub fn coflasque_resolution(m: &PiLattice) -> Result<ExactTriple> {
    let g = m.group_arc().clone();
    let r = m.rank();
    let mut parts = Vec::new();
    let mut cols: Vec<Vec<i64>> = Vec::new();
    for h in g.subgroups().representatives() {
        let fixed = fixed_points(m, &h.elements)?;
        if fixed.cols() == 0 {
            continue;
        }
        let perm = PiLattice::permutation(g.clone(), &h.elements)?;
        let (reps, _) = cosets(&g, &h.elements);
        for j in 0..fixed.cols() {
            let f = fixed.col(j);
            for &x in &reps {
                cols.push(m.action(x).mul_vec(&f)?);
            }
            parts.push(perm.clone());
        }
    }
    let p = PiLattice::direct_sum_all(g.clone(), &parts)?.with_label("P");
    let phi = IMat::from_cols(&cols, r);
    let k = if p.rank() == 0 { IMat::zeros(0, 0) } else { kernel_basis(&phi)? };
    let q = sublattice(&p, &k)?.with_label("Q");
    let report = flabby_coflabby(&q)?;
    if !report.coflabby {
        return Err(Error::CoflasqueCheckFailed(format!("H^1 nonzero on {:?}", report.coflabby_witnesses)));
    }
    ExactTriple::new(q, p, m.clone(), k, phi)
}

/// `0 -> M -> P -> E -> 0` with `E` flabby, by dualizing the coflasque resolution of `M^0`.
pub fn flabby_resolution(m: &PiLattice) -> Result<ExactTriple> {
    let cover = coflasque_resolution(&m.dual()?)?;
    let p = cover.middle.dual()?.with_label("P");
    let e = cover.left.dual()?.with_label("E");
    let report = flabby_coflabby(&e)?;
    if !report.flabby {
        return Err(Error::FlabbyCheckFailed(format!("H^-1 nonzero on {:?}", report.flabby_witnesses)));
    }
    ExactTriple::new(m.clone(), p, e, cover.project.matrix.transpose(), cover.inject.matrix.transpose())
}
