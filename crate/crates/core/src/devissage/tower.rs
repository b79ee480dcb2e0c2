use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ring::{
    basis_elem, cyclic_poly, cyclic_product, group_ring_mul, sigma_matrix, sigma_of, sigma_to_group_ring,
    sigma_to_matrix, tilde_phi, TwoSidedIdeal,
};
use crate::arith::divisors;
use crate::cyclo::{cyclotomic, devissage_schedule, DevissageSchedule, IntPolynomial};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::homalg::{hnf_cols, is_saturated, IsoCertificate, Solver};
use crate::lattices::{quotient_lattice, sublattice, PiLattice};
use crate::mat::IMat;
use crate::par;
use crate::resolutions::ExactTriple;

/// Verdicts for one index `k` of the tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerStep {
    pub k: usize,
    pub e: u64,
    /// `0 -> I/J -> Zπ/J -> Zπ/<σ^e - 1> -> 0`.
    pub ideal_sequence_exact: bool,
    /// `0 -> N_k -> N'_k -> M/(σ^e - 1)M -> 0`; absent when `M` is the regular lattice.
    pub module_sequence_exact: Option<bool>,
    /// `J^(k) = J^(k-1)` for even `k`.
    pub j_matches_previous: Option<bool>,
}

/// Multiplication isomorphism between `I^(a)/J^(a)` and `I^(b)/J^(b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoVerdict {
    pub from: usize,
    pub to: usize,
    /// The `d` with `Φ̃_d` in the multiplier.
    pub multiplier: Vec<u64>,
    pub certified: bool,
    pub module_certified: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TowerReport {
    pub group: String,
    pub lattice: String,
    pub n: u64,
    pub d: Vec<u64>,
    pub e: Vec<u64>,
    pub steps: Vec<TowerStep>,
    pub isomorphisms: Vec<IsoVerdict>,
    /// `Φ_n(σ) I^(1) ⊆ J^(1)`.
    pub top_annihilated: bool,
    /// `M/(σ^n - 1)M` is torsion-free.
    pub quotient_torsion_free: bool,
    #[serde(skip)]
    pub certificates: Vec<IsoCertificate>,
}

impl TowerReport {
    pub fn all_true(&self) -> bool {
        self.top_annihilated
            && self.quotient_torsion_free
            && self.steps.iter().all(|s| {
                s.ideal_sequence_exact && s.module_sequence_exact != Some(false) && s.j_matches_previous != Some(false)
            })
            && self.isomorphisms.iter().all(|i| i.certified && i.module_certified != Some(false))
    }

    pub fn to_text(&self) -> String {
        let yes = |b: bool| if b { "true" } else { "false" };
        let opt = |b: Option<bool>| b.map_or("-", yes);
        let mut s = String::new();
        let _ = writeln!(s, "tower {} lattice {} n {}", self.group, self.lattice, self.n);
        let _ = writeln!(s, "d {:?}", self.d);
        let _ = writeln!(s, "e {:?}", self.e);
        for st in &self.steps {
            let _ = writeln!(
                s,
                "k {} e {} exact {} module {} J=J_prev {}",
                st.k,
                st.e,
                yes(st.ideal_sequence_exact),
                opt(st.module_sequence_exact),
                opt(st.j_matches_previous)
            );
        }
        for iso in &self.isomorphisms {
            let _ = writeln!(
                s,
                "iso {} -> {} by {:?} certified {} module {}",
                iso.from,
                iso.to,
                iso.multiplier,
                yes(iso.certified),
                opt(iso.module_certified)
            );
        }
        let _ = writeln!(s, "top annihilated by Phi_n {}", yes(self.top_annihilated));
        let _ = writeln!(s, "M/(sigma^n - 1)M torsion-free {}", yes(self.quotient_torsion_free));
        let _ = writeln!(s, "all {}", yes(self.all_true()));
        s
    }
}

fn section(q: &IMat) -> Result<IMat> {
    Solver::new(q)
        .solve(&IMat::identity(q.rows()))?
        .ok_or_else(|| Error::NotStable("quotient map is not surjective".into()))
}

/// `I/J ⊂ Ω/J` for sublattices `J ⊆ I ⊆ Ω` with `Ω/I` torsion-free.
struct Layer {
    top_section: IMat,
    top_projection: IMat,
    sub: PiLattice,
    sub_basis: IMat,
}

/// Builds `0 -> I/J -> Ω/J -> Ω/I -> 0` from spans `i` and `j` inside the lattice `omega`.
fn layer(omega: &PiLattice, i: &IMat, j: &IMat) -> std::result::Result<Layer, String> {
    let run = || -> Result<Layer> {
        if i.cols() > 0 && !is_saturated(i)? {
            return Err(Error::InconsistentInvariants("I is not saturated".into()));
        }
        if j.cols() > 0 && (i.cols() == 0 || Solver::new(i).solve(j)?.is_none()) {
            return Err(Error::InconsistentInvariants("J is not contained in I".into()));
        }
        let (top, qj) = quotient_lattice(omega, j)?;
        let (bottom, qi) = quotient_lattice(omega, i)?;
        let top_section = section(&qj.matrix)?;
        let image = qj.matrix.mul(i)?;
        let sub_basis = if image.cols() == 0 { image } else { hnf_cols(&image)? };
        let sub = sublattice(&top, &sub_basis)?;
        let project = qi.matrix.mul(&top_section)?;
        ExactTriple::new(sub.clone(), top, bottom, sub_basis.clone(), project)?;
        Ok(Layer { top_section, top_projection: qj.matrix, sub, sub_basis })
    };
    run().map_err(|e| e.to_string())
}

/// Matrix of multiplication by `c` from one layer to another, in the sub-lattice bases.
fn layer_map(src: &Layer, dst: &Layer, mult: impl Fn(&[i64]) -> Result<Vec<i64>>) -> Result<IMat> {
    let solver = Solver::new(&dst.sub_basis);
    let mut cols = Vec::with_capacity(src.sub.rank());
    for c in 0..src.sub_basis.cols() {
        let lifted = src.top_section.mul_vec(&src.sub_basis.col(c))?;
        let moved = mult(&lifted)?;
        let down = dst.top_projection.mul_vec(&moved)?;
        cols.push(
            solver
                .solve_vec(&down)?
                .ok_or_else(|| Error::NotStable("multiplier leaves the target layer".into()))?,
        );
    }
    Ok(IMat::from_cols(&cols, dst.sub.rank()))
}

fn poly_key(p: &IntPolynomial) -> Vec<i64> {
    p.coeffs().to_vec()
}

/// The `tp_1` indices and the polynomial check for the isomorphism between `2k` and `2k+1`.
fn multiplier(s: &DevissageSchedule, k: usize) -> Result<(usize, usize, Vec<u64>)> {
    let p1 = s.primes[0];
    let (src, dst) = if k % 2 == 0 { (2 * k + 1, 2 * k) } else { (2 * k, 2 * k + 1) };
    let idx: Vec<u64> = divisors(s.e[src]).into_iter().map(|t| t * p1).collect();
    let mut prod = s.big_e(src).clone();
    for &d in &idx {
        prod = prod.mul(&cyclotomic(d))?;
    }
    if &prod != s.big_e(dst) {
        return Err(Error::IsoFailure { k: src, detail: format!("E_{src} * prod Phi_tp1 != E_{dst}") });
    }
    Ok((src, dst, idx))
}

/// Machine-checks the devissage tower of `Zπ` (and of `M` when it is not regular) for `n | ord(σ)`.
pub fn verify_tower(m: &PiLattice, n: u64) -> Result<TowerReport> {
    let group: Arc<FiniteGroup> = m.group_arc().clone();
    let g = group.as_ref();
    let (s, ord) = sigma_of(g)?;
    if n < 3 || ord % n != 0 {
        return Err(Error::BadDivisor(format!("n = {n} must be >= 3 and divide ord(σ) = {ord}")));
    }
    let sched = devissage_schedule(n)?;
    sched.check()?;
    let len = sched.len();
    let reg = PiLattice::regular(group.clone());
    let is_regular = m.same_matrices(&reg);
    let s_m = sigma_matrix(m)?.clone();

    let mut polys: Vec<IntPolynomial> = Vec::new();
    for k in 1..len {
        polys.push(sched.big_e(k).clone());
        polys.push(sched.big_f(k).clone());
    }
    polys.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    polys.dedup();
    let ideals: HashMap<Vec<i64>, TwoSidedIdeal> = par::try_map(&polys, |p| {
        Ok::<_, Error>((poly_key(p), TwoSidedIdeal::sigma_polynomial(g, p)?))
    })?
    .into_iter()
    .collect();

    let ks: Vec<usize> = (1..len).collect();
    let layers: Vec<(Layer, Option<Layer>)> = par::try_map(&ks, |&k| {
        let i = &ideals[&poly_key(sched.big_e(k))];
        let j = &ideals[&poly_key(sched.big_f(k))];
        let ideal_layer =
            layer(&reg, &i.basis, &j.basis).map_err(|detail| Error::ExactnessFailure { k, detail })?;
        let module_layer = if is_regular {
            None
        } else {
            let ei = sigma_to_matrix(&s_m, &cyclic_poly(sched.big_e(k), 0, ord))?;
            let fj = sigma_to_matrix(&s_m, &cyclic_poly(sched.big_f(k), 0, ord))?;
            let ib = if ei.is_zero() { IMat::zeros(m.rank(), 0) } else { hnf_cols(&ei)? };
            let jb = if fj.is_zero() { IMat::zeros(m.rank(), 0) } else { hnf_cols(&fj)? };
            Some(layer(m, &ib, &jb).map_err(|detail| Error::ExactnessFailure { k, detail: format!("module: {detail}") })?)
        };
        Ok::<_, Error>((ideal_layer, module_layer))
    })?;
    let at = |k: usize| &layers[k - 1];

    let mut steps = Vec::new();
    for k in 1..len {
        let j_matches_previous = if k % 2 == 0 && k + 2 <= len {
            let same = sched.big_f(k) == sched.big_f(k - 1)
                && ideals[&poly_key(sched.big_f(k))].basis == ideals[&poly_key(sched.big_f(k - 1))].basis;
            if !same {
                return Err(Error::ExactnessFailure { k, detail: format!("J^({k}) != J^({})", k - 1) });
            }
            Some(true)
        } else {
            None
        };
        steps.push(TowerStep {
            k,
            e: sched.e[k],
            ideal_sequence_exact: true,
            module_sequence_exact: at(k).1.as_ref().map(|_| true),
            j_matches_previous,
        });
    }

    let pairs: Vec<usize> = (1..).take_while(|&k| 2 * k + 1 < len).collect();
    let isos = par::try_map(&pairs, |&k| {
        let (src, dst, idx) = multiplier(&sched, k)?;
        let factors = idx
            .iter()
            .map(|&d| tilde_phi(g, d).map(|(t, _)| t.coeffs))
            .collect::<Result<Vec<_>>>()?;
        let c = cyclic_product(&factors, ord)?;
        let c_ring = sigma_to_group_ring(g, s, &c);
        let fail = |e: Error| Error::IsoFailure { k: src, detail: e.to_string() };
        let (a, b) = (&at(src).0, &at(dst).0);
        let mat = layer_map(a, b, |x| group_ring_mul(g, &c_ring, x)).map_err(fail)?;
        let cert = IsoCertificate::from_matrix(&a.sub, &b.sub, mat).map_err(fail)?;
        let mut certs = vec![cert];
        let module_certified = match (&at(src).1, &at(dst).1) {
            (Some(a), Some(b)) => {
                let cm = sigma_to_matrix(&s_m, &c)?;
                let mat = layer_map(a, b, |x| cm.mul_vec(x)).map_err(fail)?;
                certs.push(IsoCertificate::from_matrix(&a.sub, &b.sub, mat).map_err(fail)?);
                Some(true)
            }
            _ => None,
        };
        Ok::<_, Error>((IsoVerdict { from: src, to: dst, multiplier: idx, certified: true, module_certified }, certs))
    })?;
    let mut isomorphisms = Vec::new();
    let mut certificates = Vec::new();
    for (v, c) in isos {
        isomorphisms.push(v);
        certificates.extend(c);
    }

    let i1 = &ideals[&poly_key(sched.big_e(1))];
    let j1 = &ideals[&poly_key(sched.big_f(1))];
    let phi_n = sigma_to_group_ring(g, s, &cyclic_poly(&cyclotomic(n), 0, ord));
    let mut top_annihilated = true;
    for c in 0..i1.basis.cols() {
        if !j1.contains(&group_ring_mul(g, &phi_n, &i1.basis.col(c))?)? {
            top_annihilated = false;
        }
    }
    if !top_annihilated {
        return Err(Error::ExactnessFailure { k: 1, detail: "Phi_n(σ) does not annihilate I^(1)/J^(1)".into() });
    }
    let quotient_torsion_free = if is_regular {
        true
    } else {
        let a = sigma_to_matrix(&s_m, &cyclic_poly(&IntPolynomial::x_pow_minus_one(n as usize), 0, ord))?;
        a.is_zero() || is_saturated(&a)?
    };
    if !quotient_torsion_free {
        return Err(Error::ExactnessFailure { k: 0, detail: "M/(σ^n - 1)M has torsion".into() });
    }
    Ok(TowerReport {
        group: g.family().to_string(),
        lattice: m.label().to_string(),
        n,
        d: sched.d.clone(),
        e: sched.e.clone(),
        steps,
        isomorphisms,
        top_annihilated,
        quotient_torsion_free,
        certificates,
    })
}

/// The certified isomorphism `M*/Φ_n(σ)M* ≅ (I^(1)/J^(1)) ⊗ M`.
#[derive(Clone, Debug)]
pub struct PsiReport {
    /// The generator `u` over `σ^0 .. σ^{ord-1}`.
    pub u: Vec<i64>,
    pub source: PiLattice,
    pub target: PiLattice,
    pub certificate: IsoCertificate,
}

/// `ψ(x) = u x` from `(M*/Φ_n(σ)M*)_0` onto `E_1(σ)M / (F_1(σ)M)_sat`.
pub fn psi_isomorphism(m: &PiLattice, n: u64) -> Result<PsiReport> {
    let g = m.group();
    let (s, ord) = sigma_of(g)?;
    if n < 3 || ord % n != 0 {
        return Err(Error::BadDivisor(format!("n = {n} must be >= 3 and divide ord(σ) = {ord}")));
    }
    let sched = devissage_schedule(n)?;
    let e1 = sched.e[1];
    let mono = |k: i64| {
        let mut v = vec![0i64; ord as usize];
        v[k.rem_euclid(ord as i64) as usize] += 1;
        v
    };
    let sub = |a: Vec<i64>, b: Vec<i64>| a.iter().zip(&b).map(|(x, y)| x - y).collect::<Vec<i64>>();
    let u = if e1 % 2 == 0 {
        sub(mono(e1 as i64 / 2), mono(-(e1 as i64 / 2)))
    } else {
        let mut factors = vec![sub(mono(1), mono(-1))];
        for d in divisors(e1).into_iter().filter(|&d| d >= 3) {
            factors.push(tilde_phi(g, d)?.0.coeffs);
        }
        cyclic_product(&factors, ord)?
    };
    let u_ring = sigma_to_group_ring(g, s, &u);
    for l in 0..g.order() {
        let conj = group_ring_mul(g, &group_ring_mul(g, &basis_elem(g, l), &u_ring)?, &basis_elem(g, g.inv(l)))?;
        let eps = g.epsilon(l)?;
        if conj.iter().zip(&u_ring).any(|(a, b)| *a != eps * b) {
            return Err(Error::GeneratorRelationFailure(format!("λuλ^-1 != ε(λ)u at {}", g.label(l))));
        }
    }
    let i1 = TwoSidedIdeal::sigma_polynomial(g, sched.big_e(1))?;
    if !i1.contains(&u_ring)? {
        return Err(Error::GeneratorRelationFailure("u is not in I^(1)".into()));
    }

    let fail = |e: Error| Error::IsoFailure { k: 1, detail: e.to_string() };
    let mstar = m.star_twist()?;
    let sm = sigma_matrix(m)?.clone();
    let phi_n = sigma_to_matrix(&sm, &cyclic_poly(&cyclotomic(n), 0, ord))?;
    let (source, qs) = quotient_lattice(&mstar, &phi_n)?;
    let source = source.with_label(format!("({}*/Phi_{n})_0", m.label()));
    let sec = section(&qs.matrix)?;

    let e1m = sigma_to_matrix(&sm, &cyclic_poly(sched.big_e(1), 0, ord))?;
    let f1m = sigma_to_matrix(&sm, &cyclic_poly(sched.big_f(1), 0, ord))?;
    let a_basis = hnf_cols(&e1m)?;
    if !is_saturated(&a_basis)? {
        return Err(fail(Error::InconsistentInvariants("E_1(σ)M is not saturated".into())));
    }
    let a = sublattice(m, &a_basis)?;
    let a_solver = Solver::new(&a_basis);
    let f_in_a = a_solver
        .solve(&f1m)?
        .ok_or_else(|| fail(Error::InconsistentInvariants("F_1(σ)M is not inside E_1(σ)M".into())))?;
    let (target, qt) = quotient_lattice(&a, &f_in_a)?;
    let target = target.with_label(format!("(I1/J1 ⊗ {})_0", m.label()));

    let um = sigma_to_matrix(&sm, &u)?;
    let mut cols = Vec::with_capacity(source.rank());
    for c in 0..source.rank() {
        let y = um.mul_vec(&sec.col(c))?;
        let z = a_solver.solve_vec(&y)?.ok_or_else(|| fail(Error::NotSolvable))?;
        cols.push(qt.matrix.mul_vec(&z)?);
    }
    let mat = IMat::from_cols(&cols, target.rank());
    if source.rank() != target.rank() {
        return Err(fail(Error::Dimension(format!("ranks {} and {}", source.rank(), target.rank()))));
    }
    let certificate = IsoCertificate::from_matrix(&source, &target, mat).map_err(fail)?;
    Ok(PsiReport { u, source, target, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_group;

    fn grp(s: &str) -> Arc<FiniteGroup> {
        Arc::new(parse_group(s).unwrap())
    }

    #[test]
    fn small_towers() {
        let g = grp("D3");
        let r = verify_tower(&PiLattice::regular(g.clone()), 3).unwrap();
        assert!(r.all_true());
        assert_eq!(r.d, vec![1, 3]);
        let r = verify_tower(&PiLattice::regular(grp("D15")), 15).unwrap();
        assert!(r.all_true());
        assert_eq!(r.isomorphisms.len(), 1);
        let r = verify_tower(&PiLattice::regular(grp("Q12")), 6).unwrap();
        assert!(r.all_true(), "{}", r.to_text());
    }

    #[test]
    fn module_tower() {
        let g = grp("D15");
        let tau = g.generator("tau").unwrap();
        let m = PiLattice::permutation(g.clone(), &g.closure(&[tau])).unwrap();
        let r = verify_tower(&m, 15).unwrap();
        assert!(r.all_true());
        assert!(r.steps.iter().all(|s| s.module_sequence_exact == Some(true)));
    }

    #[test]
    fn psi_examples() {
        let g = grp("D3");
        let tau = g.generator("tau").unwrap();
        let m = PiLattice::permutation(g.clone(), &g.closure(&[tau])).unwrap();
        let p = psi_isomorphism(&m, 3).unwrap();
        assert_eq!(p.source.rank(), 2);
        psi_isomorphism(&PiLattice::regular(grp("D7")), 7).unwrap();
        let q = psi_isomorphism(&PiLattice::regular(grp("Q12")), 6).unwrap();
        assert_eq!(q.u[1], 1);
        assert_eq!(q.u[5], -1);
    }
}
