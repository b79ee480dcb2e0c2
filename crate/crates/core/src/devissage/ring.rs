use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::euler_phi;
use crate::cyclo::{cyclotomic, IntPolynomial};
use crate::error::{Error, Result};
use crate::groups::{Elem, FiniteGroup};
use crate::homalg::{hnf_cols, is_saturated, Solver};
use crate::lattices::{quotient_lattice, PiLattice};
use crate::mat::IMat;

/// The distinguished `σ` of an ε-group with its order.
pub fn sigma_of(g: &FiniteGroup) -> Result<(Elem, u64)> {
    if !g.is_epsilon_group() {
        return Err(Error::NotEpsilonGroup(g.family().to_string()));
    }
    let s = g.sigma().ok_or_else(|| Error::NotEpsilonGroup(g.family().to_string()))?;
    Ok((s, g.element_order(s) as u64))
}

/// `σ^shift p(σ)` as a coefficient vector over `σ^0 .. σ^{ord-1}`.
pub fn cyclic_poly(p: &IntPolynomial, shift: i64, ord: u64) -> Vec<i64> {
    let mut out = vec![0i64; ord as usize];
    for (i, &c) in p.coeffs().iter().enumerate() {
        out[(i as i64 + shift).rem_euclid(ord as i64) as usize] += c;
    }
    out
}

fn cyclic_mul(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    let n = a.len();
    let mut acc = vec![0i128; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[(i + j) % n] += x as i128 * y as i128;
        }
    }
    acc.into_iter().map(|v| i64::try_from(v).map_err(|_| Error::Overflow("cyclic product"))).collect()
}

/// Product in `Zπ` with coefficient vectors indexed by group elements.
pub fn group_ring_mul(g: &FiniteGroup, a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    let mut acc = vec![0i128; g.order()];
    for (x, &u) in a.iter().enumerate() {
        if u == 0 {
            continue;
        }
        for (y, &v) in b.iter().enumerate() {
            if v != 0 {
                acc[g.mul(x, y)] += u as i128 * v as i128;
            }
        }
    }
    acc.into_iter().map(|v| i64::try_from(v).map_err(|_| Error::Overflow("group ring product"))).collect()
}

pub(crate) fn basis_elem(g: &FiniteGroup, x: Elem) -> Vec<i64> {
    let mut v = vec![0; g.order()];
    v[x] = 1;
    v
}

/// Embeds a cyclic coefficient vector as `Σ c_i σ^i` in `Zπ`.
pub fn sigma_to_group_ring(g: &FiniteGroup, sigma: Elem, c: &[i64]) -> Vec<i64> {
    let mut v = vec![0; g.order()];
    let mut x = g.identity();
    for &ci in c {
        v[x] += ci;
        x = g.mul(sigma, x);
    }
    v
}

/// `Σ c_i S^i` for a matrix `S`.
pub fn sigma_to_matrix(s: &IMat, c: &[i64]) -> Result<IMat> {
    let n = s.rows();
    let mut acc = IMat::zeros(n, n);
    for &ci in c.iter().rev() {
        acc = s.mul(&acc)?.add(&IMat::scalar(n, ci))?;
    }
    Ok(acc)
}

pub(crate) fn generator_matrix<'a>(m: &'a PiLattice, name: &str) -> Result<&'a IMat> {
    let idx = m
        .group()
        .generators()
        .iter()
        .position(|(n, _)| n == name)
        .ok_or_else(|| Error::UnsupportedFamily(format!("{} has no generator {name}", m.group().family())))?;
    Ok(&m.generator_matrices()[idx])
}

/// The matrix of `σ` on `M`, read from the generator list without expanding all elements.
pub(crate) fn sigma_matrix(m: &PiLattice) -> Result<&IMat> {
    sigma_of(m.group())?;
    generator_matrix(m, "sigma")
}

/// Two-sided ideal of `Zπ` given by generators, stored as a saturated Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSidedIdeal {
    pub generators: Vec<Vec<i64>>,
    pub basis: IMat,
}

impl TwoSidedIdeal {
    /// Right ideal `Σ x Zπ`, checked to be a left ideal and saturated.
    pub fn generated(g: &FiniteGroup, generators: Vec<Vec<i64>>) -> Result<Self> {
        let n = g.order();
        let mut cols = Vec::with_capacity(n * generators.len());
        for x in &generators {
            for h in 0..n {
                cols.push(group_ring_mul(g, x, &basis_elem(g, h))?);
            }
        }
        let basis = hnf_cols(&IMat::from_cols(&cols, n))?;
        let ideal = TwoSidedIdeal { generators, basis };
        ideal.check_two_sided(g)?;
        if ideal.basis.cols() > 0 && !is_saturated(&ideal.basis)? {
            return Err(Error::InconsistentInvariants("ideal is not saturated in Zπ".into()));
        }
        Ok(ideal)
    }

    pub fn principal(g: &FiniteGroup, x: Vec<i64>) -> Result<Self> {
        Self::generated(g, vec![x])
    }

    /// `<f(σ)>`.
    pub fn sigma_polynomial(g: &FiniteGroup, f: &IntPolynomial) -> Result<Self> {
        let (s, ord) = sigma_of(g)?;
        Self::principal(g, sigma_to_group_ring(g, s, &cyclic_poly(f, 0, ord)))
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    fn solver(&self) -> Solver {
        Solver::new(&self.basis)
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        if self.basis.cols() == 0 {
            return Ok(x.iter().all(|&v| v == 0));
        }
        Ok(self.solver().solve_vec(x)?.is_some())
    }

    pub fn contains_ideal(&self, other: &TwoSidedIdeal) -> Result<bool> {
        if other.basis.cols() == 0 {
            return Ok(true);
        }
        if self.basis.cols() == 0 {
            return Ok(false);
        }
        Ok(self.solver().solve(&other.basis)?.is_some())
    }

    /// Stability under left and right multiplication by the group generators. The span is a right
    /// ideal by construction, so left stability of the generators suffices.
    pub fn check_two_sided(&self, g: &FiniteGroup) -> Result<()> {
        if self.basis.cols() == 0 {
            return Ok(());
        }
        let solver = self.solver();
        for &(ref name, s) in g.generators() {
            let e = basis_elem(g, s);
            for x in &self.generators {
                if solver.solve_vec(&group_ring_mul(g, &e, x)?)?.is_none() {
                    return Err(Error::NotStable(format!("ideal is not stable under {name}")));
                }
            }
            let b = self.basis.col(0);
            if solver.solve_vec(&group_ring_mul(g, &b, &e)?)?.is_none() {
                return Err(Error::NotStable(format!("ideal is not a right ideal under {name}")));
            }
        }
        Ok(())
    }
}

/// `Zπ/I` with its ring structure on a fixed basis.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub lattice: PiLattice,
    pub ideal: TwoSidedIdeal,
    pub projection: IMat,
    pub section: IMat,
    /// `structure[i]` is the matrix of left multiplication by basis element `i`.
    pub structure: Vec<IMat>,
    pub one: Vec<i64>,
    pub zeta: Vec<i64>,
    pub u_tau: Option<Vec<i64>>,
    pub rho: Option<Vec<i64>>,
}

impl QuotientRing {
    pub fn new(group: Arc<FiniteGroup>, ideal: TwoSidedIdeal) -> Result<Self> {
        let g = group.as_ref();
        let reg = PiLattice::regular(group.clone());
        let (lattice, q) = quotient_lattice(&reg, &ideal.basis)?;
        let projection = q.matrix;
        let k = lattice.rank();
        let section = Solver::new(&projection)
            .solve(&IMat::identity(k))?
            .ok_or_else(|| Error::NotStable("quotient map is not surjective".into()))?;
        let lifts: Vec<Vec<i64>> = (0..k).map(|i| section.col(i)).collect();
        let mut structure = Vec::with_capacity(k);
        for a in &lifts {
            let cols = lifts
                .iter()
                .map(|b| projection.mul_vec(&group_ring_mul(g, a, b)?))
                .collect::<Result<Vec<_>>>()?;
            structure.push(IMat::from_cols(&cols, k));
        }
        let image = |x: Elem| projection.mul_vec(&basis_elem(g, x));
        let (s, _) = sigma_of(g)?;
        let named = |n: &str| g.generator(n).map(image).transpose();
        let ring = QuotientRing {
            one: image(g.identity())?,
            zeta: image(s)?,
            u_tau: named("tau")?,
            rho: named("rho")?,
            lattice: lattice.with_label("Λ"),
            ideal,
            projection,
            section,
            structure,
        };
        ring.check()?;
        Ok(ring)
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Image of a `Zπ` element.
    pub fn image(&self, x: &[i64]) -> Result<Vec<i64>> {
        self.projection.mul_vec(x)
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
        let k = self.rank();
        let mut acc = vec![0i64; k];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let col = self.structure[i].mul_vec(b)?;
            for (x, y) in acc.iter_mut().zip(col) {
                *x = y.checked_mul(ai).and_then(|v| x.checked_add(v)).ok_or(Error::Overflow("ring product"))?;
            }
        }
        Ok(acc)
    }

    /// Matrix of `x -> x a`.
    pub fn right_mul_matrix(&self, a: &[i64]) -> Result<IMat> {
        let k = self.rank();
        let cols = (0..k)
            .map(|i| {
                let mut e = vec![0; k];
                e[i] = 1;
                self.mul(&e, a)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IMat::from_cols(&cols, k))
    }

    /// Associativity on all basis triples, unitality, and agreement of the π-action with left
    /// multiplication.
    pub fn check(&self) -> Result<()> {
        let k = self.rank();
        let bad = |s: String| Err(Error::InconsistentInvariants(s));
        for i in 0..k {
            let mut e = vec![0; k];
            e[i] = 1;
            if self.mul(&self.one, &e)? != e || self.mul(&e, &self.one)? != e {
                return bad(format!("basis element {i} breaks unitality"));
            }
        }
        for i in 0..k {
            for j in 0..k {
                // L_{b_i b_j} = L_i L_j covers every triple (b_i b_j) b_l = b_i (b_j b_l)
                let prod = self.structure[i].col(j);
                let mut lhs = IMat::zeros(k, k);
                for (l, &c) in prod.iter().enumerate() {
                    if c != 0 {
                        lhs = lhs.add(&self.structure[l].scale(c)?)?;
                    }
                }
                if lhs != self.structure[i].mul(&self.structure[j])? {
                    return bad(format!("associativity fails at ({i}, {j})"));
                }
            }
        }
        let g = self.lattice.group();
        for ((_, s), m) in g.generators().iter().zip(self.lattice.generator_matrices()) {
            let img = self.image(&basis_elem(g, *s))?;
            let mut left = IMat::zeros(k, k);
            for (l, &c) in img.iter().enumerate() {
                if c != 0 {
                    left = left.add(&self.structure[l].scale(c)?)?;
                }
            }
            if &left != m {
                return bad(format!("action of {} differs from left multiplication", g.label(*s)));
            }
        }
        Ok(())
    }
}

/// `Λ_d = Zπ/<Φ_d(σ)>`.
pub fn lambda_ring(group: Arc<FiniteGroup>, d: u64) -> Result<QuotientRing> {
    let (_, ord) = sigma_of(&group)?;
    if d == 0 || ord % d != 0 {
        return Err(Error::BadDivisor(format!("{d} does not divide ord(σ) = {ord}")));
    }
    let ideal = TwoSidedIdeal::sigma_polynomial(&group, &cyclotomic(d))?;
    let ring = QuotientRing::new(group.clone(), ideal)?;
    let expect = euler_phi(d) as usize * group.order() / ord as usize;
    if ring.rank() != expect {
        return Err(Error::InconsistentInvariants(format!("Λ_{d} has rank {} not {expect}", ring.rank())));
    }
    Ok(ring)
}

/// `Φ̃_d` with its centrality verdict and ideal.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TildePhi {
    pub d: u64,
    /// Coefficients over `σ^0 .. σ^{ord-1}`.
    pub coeffs: Vec<i64>,
    pub central: bool,
}

/// `Φ̃_1 = σ - 1`, `Φ̃_2 = σ + 1`, `Φ̃_d = σ^{-φ(d)/2} Φ_d(σ)` for `d >= 3`.
pub fn tilde_phi(group: &FiniteGroup, d: u64) -> Result<(TildePhi, TwoSidedIdeal)> {
    let (s, ord) = sigma_of(group)?;
    if d == 0 || ord % d != 0 {
        return Err(Error::BadDivisor(format!("{d} does not divide ord(σ) = {ord}")));
    }
    let shift = if d >= 3 { -((euler_phi(d) / 2) as i64) } else { 0 };
    let coeffs = cyclic_poly(&cyclotomic(d), shift, ord);
    let x = sigma_to_group_ring(group, s, &coeffs);
    let mut central = true;
    for &(_, gen) in group.generators() {
        let e = basis_elem(group, gen);
        if group_ring_mul(group, &e, &x)? != group_ring_mul(group, &x, &e)? {
            central = false;
        }
    }
    if d >= 3 && !central {
        return Err(Error::InconsistentInvariants(format!("Φ̃_{d} is not central")));
    }
    let ideal = TwoSidedIdeal::principal(group, x)?;
    if ideal.basis != TwoSidedIdeal::sigma_polynomial(group, &cyclotomic(d))?.basis {
        return Err(Error::InconsistentInvariants(format!("<Φ̃_{d}> differs from <Φ_{d}(σ)>")));
    }
    Ok((TildePhi { d, coeffs, central }, ideal))
}

pub(crate) fn cyclic_product(factors: &[Vec<i64>], ord: u64) -> Result<Vec<i64>> {
    let mut one = vec![0i64; ord as usize];
    one[0] = 1;
    factors.iter().try_fold(one, |acc, f| cyclic_mul(&acc, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_group;

    fn grp(s: &str) -> Arc<FiniteGroup> {
        Arc::new(parse_group(s).unwrap())
    }

    #[test]
    fn lambda_examples() {
        let r = lambda_ring(grp("D3"), 3).unwrap();
        assert_eq!(r.rank(), 4);
        let u = r.u_tau.clone().unwrap();
        assert_eq!(r.mul(&u, &u).unwrap(), r.one);
        let q = lambda_ring(grp("Q12"), 6).unwrap();
        assert_eq!(q.rank(), 4);
        let u = q.u_tau.clone().unwrap();
        let minus_one: Vec<i64> = q.one.iter().map(|x| -x).collect();
        assert_eq!(q.mul(&u, &u).unwrap(), minus_one);
        let c = lambda_ring(grp("C6"), 6).unwrap();
        assert_eq!(c.rank(), 2);
        let z = c.zeta.clone();
        // ζ_6^2 = ζ_6 - 1
        let z2 = c.mul(&z, &z).unwrap();
        let expect: Vec<i64> = z.iter().zip(&c.one).map(|(a, b)| a - b).collect();
        assert_eq!(z2, expect);
        assert!(matches!(lambda_ring(grp("D3"), 2), Err(Error::BadDivisor(_))));
    }

    #[test]
    fn tilde_phi_examples() {
        let g = grp("D3");
        let (t3, _) = tilde_phi(&g, 3).unwrap();
        assert_eq!(t3.coeffs, vec![1, 1, 1]);
        assert!(t3.central);
        let (t1, _) = tilde_phi(&g, 1).unwrap();
        assert!(!t1.central);
        let g = grp("D5");
        let (s, ord) = sigma_of(&g).unwrap();
        let mut psi = vec![0i64; ord as usize];
        psi[1] = 1;
        psi[ord as usize - 1] = -1;
        let a = TwoSidedIdeal::principal(&g, sigma_to_group_ring(&g, s, &psi)).unwrap();
        let (_, b) = tilde_phi(&g, 1).unwrap();
        assert_eq!(a.basis, b.basis);
    }
}
