use num_traits::ToPrimitive;

use super::ExactTriple;
use crate::error::{Error, Result};
use crate::groups::{Elem, Subgroup};
use crate::homalg::cohomology::crossed_system;
use crate::homalg::{h1, inverse_unimodular, snf, Solver};
use crate::lattices::{cosets, PiLattice};
use crate::mat::IMat;

/// A generator of a cyclic factor of `H^1(H, M)` with an explicit cocycle `h -> z(h)`,
/// values listed for the sorted elements of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Class {
    pub order: u64,
    pub elements: Vec<Elem>,
    pub cocycle: Vec<Vec<i64>>,
}

/// Generators of the nontrivial cyclic factors of `H^1(H, M)`.
pub fn h1_classes(m: &PiLattice, sub: &[Elem]) -> Result<Vec<H1Class>> {
    let r = m.rank();
    let (elems, z1, coords) = crossed_system(m, sub)?;
    let t = z1.cols();
    if t == 0 {
        return Ok(Vec::new());
    }
    let s = snf(&coords)?;
    let uinv = inverse_unimodular(&s.u)?;
    let diag = s.diagonal();
    let mut out = Vec::new();
    for i in 0..t {
        let d = diag.get(i).copied().unwrap_or(0);
        if d == 1 {
            continue;
        }
        if d == 0 {
            return Err(Error::InconsistentInvariants("H^1 has a free part".into()));
        }
        let x = z1.mul_vec(&uinv.col(i))?;
        let cocycle = (0..elems.len()).map(|j| x[j * r..(j + 1) * r].to_vec()).collect();
        out.push(H1Class { order: d.unsigned_abs(), elements: elems.clone(), cocycle });
    }
    Ok(out)
}

fn is_coboundary(m: &PiLattice, elems: &[Elem], cocycle: &[Vec<i64>]) -> Result<bool> {
    let r = m.rank();
    let mut stacked = IMat::zeros(0, r);
    let mut rhs = Vec::new();
    for (&h, z) in elems.iter().zip(cocycle) {
        stacked = stacked.vstack(&m.action(h).sub(&IMat::identity(r))?);
        rhs.extend_from_slice(z);
    }
    Ok(Solver::new(&stacked).solve_vec(&rhs)?.is_some())
}

/// Extension `0 -> M -> C -> Z[π/H] -> 0` attached to the class of `cocycle` in `H^1(H, M)`.
pub fn ext1_realize(m: &PiLattice, class: &H1Class) -> Result<ExactTriple> {
    let g = m.group_arc().clone();
    let r = m.rank();
    let elems = &class.elements;
    let z = |h: Elem| -> &Vec<i64> { &class.cocycle[elems.binary_search(&h).expect("element of H")] };
    for &a in elems {
        for &b in elems {
            let lhs = z(g.mul(a, b));
            let rhs: Vec<i64> = m.action(a).mul_vec(z(b))?.iter().zip(z(a)).map(|(x, y)| x + y).collect();
            if lhs != &rhs {
                return Err(Error::InvalidParameters("not a crossed homomorphism".into()));
            }
        }
    }
    if is_coboundary(m, elems, &class.cocycle)? {
        return Err(Error::ZeroClass);
    }
    let (reps, coset_of) = cosets(&g, elems);
    let n = reps.len();
    let mut gens = Vec::new();
    for (&(_, s), rho) in g.generators().iter().zip(m.generator_matrices()) {
        let mut big = IMat::zeros(r + n, r + n);
        for i in 0..r {
            for j in 0..r {
                big[(i, j)] = rho[(i, j)];
            }
        }
        for (c, &x) in reps.iter().enumerate() {
            let sx = g.mul(s, x);
            let c2 = coset_of[sx];
            let h = g.mul(g.inv(reps[c2]), sx);
            let col = m.action(reps[c2]).mul_vec(z(h))?;
            for i in 0..r {
                big[(i, r + c)] = col[i];
            }
            big[(r + c2, r + c)] = 1;
        }
        gens.push(big);
    }
    let c = PiLattice::from_generators(g.clone(), gens, format!("C({})", m.label()))?;
    for &h in elems {
        let act = c.action(h);
        let delta: Vec<i64> = (0..r).map(|i| act[(i, r)]).collect();
        if &delta != z(h) {
            return Err(Error::InconsistentInvariants("cocycle does not become a coboundary in C".into()));
        }
    }
    let quotient = PiLattice::permutation(g, elems)?;
    let inject = IMat::identity(r).vstack(&IMat::zeros(n, r));
    let project = IMat::zeros(n, r).hstack(&IMat::identity(n));
    ExactTriple::new(m.clone(), c, quotient, inject, project)
}

fn h1_measure(c: &PiLattice, reps: &[Subgroup]) -> Result<(u64, Option<usize>)> {
    let mut total = 0u64;
    let mut first = None;
    for (i, h) in reps.iter().enumerate() {
        let inv = h1(c, h)?;
        let ord = inv.order().to_u64().ok_or(Error::Overflow("H^1 order"))?;
        if ord > 1 && first.is_none() {
            first = Some(i);
        }
        total += ord;
    }
    Ok((total, first))
}

/// `0 -> M -> C -> P -> 0` with `C` coflabby and `P` permutation, killing `H^1` one class at a time.
pub fn coflabby_embedding(m: &PiLattice) -> Result<ExactTriple> {
    let g = m.group_arc().clone();
    let r0 = m.rank();
    let reps: Vec<Subgroup> = g.subgroups().representatives().cloned().collect();
    let mut c = m.clone();
    let mut parts: Vec<PiLattice> = Vec::new();
    let (mut measure, mut target) = h1_measure(&c, &reps)?;
    while let Some(idx) = target {
        let h = &reps[idx];
        let mut class = h1_classes(&c, &h.elements)?
            .into_iter()
            .max_by_key(|k| k.order)
            .ok_or_else(|| Error::InconsistentInvariants("H^1 nonzero but no class found".into()))?;
        let rc = c.rank();
        if rc > r0 {
            // make the cocycle M-valued by subtracting the coboundary of its permutation part
            let mut stacked = IMat::zeros(0, rc - r0);
            let mut rhs = Vec::new();
            for (&x, z) in class.elements.iter().zip(&class.cocycle) {
                let act = c.action(x);
                let mut block = IMat::zeros(rc - r0, rc - r0);
                for i in r0..rc {
                    for j in r0..rc {
                        block[(i - r0, j - r0)] = act[(i, j)] - i64::from(i == j);
                    }
                }
                stacked = stacked.vstack(&block);
                rhs.extend_from_slice(&z[r0..]);
            }
            let p = Solver::new(&stacked)
                .solve_vec(&rhs)?
                .ok_or_else(|| Error::InconsistentInvariants("permutation part carries H^1".into()))?;
            let mut lift = vec![0i64; r0];
            lift.extend(p);
            for (&x, z) in class.elements.iter().zip(class.cocycle.iter_mut()) {
                let moved = c.action(x).mul_vec(&lift)?;
                for i in 0..rc {
                    z[i] -= moved[i] - lift[i];
                }
                debug_assert!(z[r0..].iter().all(|&v| v == 0));
            }
        }
        let step = ext1_realize(&c, &class)?;
        parts.push(step.right.clone());
        c = step.middle;
        let (after, next) = h1_measure(&c, &reps)?;
        if after >= measure {
            return Err(Error::NonDecreasingMeasure { before: measure, after });
        }
        measure = after;
        target = next;
    }
    let p = PiLattice::direct_sum_all(g, &parts)?.with_label("P");
    let n = p.rank();
    let c = c.with_label("C");
    let inject = IMat::identity(r0).vstack(&IMat::zeros(n, r0));
    let project = IMat::zeros(n, r0).hstack(&IMat::identity(n));
    ExactTriple::new(m.clone(), c, p, inject, project)
}
