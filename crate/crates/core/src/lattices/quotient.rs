use super::{LatticeMorphism, PiLattice};
use crate::arith::divisors;
use crate::cyclo::{cyclotomic, IntPolynomial};
use crate::error::{Error, Result};
use crate::groups::Elem;
use crate::homalg::{kernel_basis, rank, saturate, Solver};
use crate::mat::IMat;

/// The π-stable sublattice spanned by the (independent) columns of `basis`.
pub fn sublattice(m: &PiLattice, basis: &IMat) -> Result<PiLattice> {
    if basis.rows() != m.rank() {
        return Err(Error::Dimension("sublattice basis has wrong height".into()));
    }
    if rank(&basis.transpose())? != basis.cols() {
        return Err(Error::Dimension("sublattice basis is not independent".into()));
    }
    let solver = Solver::new(basis);
    let gens = m
        .generator_matrices()
        .iter()
        .map(|g| solver.solve(&g.mul(basis)?)?.ok_or_else(|| Error::NotStable("sublattice is not π-stable".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(PiLattice::raw(m.group_arc().clone(), basis.cols(), gens, format!("sub {}", m.label())))
}

/// `(M/K)_0` for the π-stable span `K` of the columns of `sub`, with the quotient map.
pub fn quotient_lattice(m: &PiLattice, sub: &IMat) -> Result<(PiLattice, LatticeMorphism)> {
    let r = m.rank();
    if sub.rows() != r {
        return Err(Error::Dimension("quotient generators have wrong height".into()));
    }
    let q = if sub.cols() == 0 {
        IMat::identity(r)
    } else {
        let sat = saturate(sub)?;
        kernel_basis(&sat.transpose())?.transpose()
    };
    let k = q.rows();
    let section = Solver::new(&q)
        .solve(&IMat::identity(k))?
        .ok_or_else(|| Error::NotStable("quotient map is not surjective".into()))?;
    let mut gens = Vec::with_capacity(m.generator_matrices().len());
    for g in m.generator_matrices() {
        let qg = q.mul(g)?;
        let induced = qg.mul(&section)?;
        if induced.mul(&q)? != qg {
            return Err(Error::NotStable("kernel of the quotient is not π-stable".into()));
        }
        gens.push(induced);
    }
    let quot = PiLattice::raw(m.group_arc().clone(), k, gens, format!("({})/K", m.label()));
    let map = LatticeMorphism::new_unchecked(m.clone(), quot.clone(), q);
    Ok((quot, map))
}

/// Indices `d` with `f = prod Phi_d`, each `d | ord`.
fn cyclotomic_factors(f: &IntPolynomial, ord: u64) -> Result<Vec<u64>> {
    if !f.is_monic() {
        return Err(Error::BadPolynomial(format!("{f} is not monic")));
    }
    let mut rest = f.clone();
    let mut out = Vec::new();
    for d in divisors(ord) {
        let phi = cyclotomic(d);
        while rest.degree().unwrap_or(0) > 0 && phi.divides(&rest)? {
            rest = rest.div_exact(&phi)?;
            out.push(d);
        }
    }
    if rest != IntPolynomial::one() {
        return Err(Error::BadPolynomial(format!("{f} is not a product of Phi_d with d | {ord}")));
    }
    Ok(out)
}

/// `(M/f(sigma)M)_0` with its quotient map; `f` must be a product of `Phi_d`, `d | ord(sigma)`,
/// and `f(sigma)` must not vanish identically.
pub fn cyclotomic_quotient(
    m: &PiLattice,
    f: &IntPolynomial,
    sigma: Option<Elem>,
) -> Result<(PiLattice, LatticeMorphism)> {
    let g = m.group();
    let s = sigma
        .or_else(|| g.sigma())
        .ok_or_else(|| Error::InvalidParameters("group has no distinguished sigma".into()))?;
    let ord = g.element_order(s) as u64;
    let factors = cyclotomic_factors(f, ord)?;
    let mut once = factors.clone();
    once.dedup();
    if once.len() == divisors(ord).len() {
        return Err(Error::BadPolynomial(format!(
            "X^{ord} - 1 divides {f}; f(sigma) = 0, use the lattice itself"
        )));
    }
    let image = m.eval_poly(f.coeffs(), s)?;
    let (q, map) = quotient_lattice(m, &image)?;
    Ok((q.with_label(format!("({}/{}(σ))_0", m.label(), f)), map))
}

/// Saturated basis (columns) of the fixed points of the subgroup with the given elements.
pub fn fixed_points(m: &PiLattice, sub: &[Elem]) -> Result<IMat> {
    let r = m.rank();
    let gens = m.group().greedy_generators(sub);
    let mut stacked = IMat::zeros(0, r);
    for x in gens {
        stacked = stacked.vstack(&m.action(x).sub(&IMat::identity(r))?);
    }
    kernel_basis(&stacked)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::arith::euler_phi;
    use crate::groups::parse_group;

    #[test]
    fn cyclic_quotients() {
        let c6 = Arc::new(parse_group("C6").unwrap());
        let r = PiLattice::regular(c6.clone());
        let (q1, _) = cyclotomic_quotient(&r, &cyclotomic(1), None).unwrap();
        assert_eq!(q1.rank(), 1);
        assert!(q1.generator_matrices()[0].is_identity());
        let (q6, map) = cyclotomic_quotient(&r, &cyclotomic(6), None).unwrap();
        assert_eq!(q6.rank(), 2);
        map.check().unwrap();
        let s = &q6.generator_matrices()[0];
        let s2 = s.mul(s).unwrap();
        assert!(s2.sub(s).unwrap().add(&IMat::identity(2)).unwrap().is_zero());
        assert!(cyclotomic_quotient(&r, &IntPolynomial::x_pow_minus_one(6), None).is_err());
    }

    #[test]
    fn regular_quotient_ranks() {
        for spec in ["D3", "D5", "Q12", "C3xD5", "D6"] {
            let g = Arc::new(parse_group(spec).unwrap());
            let s = g.sigma().unwrap();
            let ord = g.element_order(s) as u64;
            let reg = PiLattice::regular(g.clone());
            for d in divisors(ord) {
                let (q, _) = cyclotomic_quotient(&reg, &cyclotomic(d), None).unwrap();
                assert_eq!(q.rank() as u64, euler_phi(d) * g.order() as u64 / ord, "{spec} d = {d}");
                q.validate().unwrap();
            }
        }
    }

    #[test]
    fn fixed_point_examples() {
        let c2 = Arc::new(parse_group("C2").unwrap());
        let all: Vec<Elem> = (0..2).collect();
        assert_eq!(fixed_points(&PiLattice::regular(c2.clone()), &all).unwrap().cols(), 1);
        assert_eq!(fixed_points(&PiLattice::sign(c2).unwrap(), &all).unwrap().cols(), 0);
        let d3 = Arc::new(parse_group("D3").unwrap());
        let p = PiLattice::permutation(d3.clone(), &[0, d3.generator("tau").unwrap()]).unwrap();
        let all: Vec<Elem> = (0..6).collect();
        assert_eq!(fixed_points(&p, &all).unwrap().cols(), 1);
    }
}
