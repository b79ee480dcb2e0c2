use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ring::{basis_elem, generator_matrix, group_ring_mul, lambda_ring, sigma_of, sigma_to_matrix};
use crate::arith::{euler_phi, gcd, is_prime, odd_prime_power};
use crate::cyclo::{cyclotomic, IntPolynomial};
use crate::error::{Error, Result};
use crate::groups::{parse_group, FamilySpec, FiniteGroup};
use crate::homalg::{h1, hnf_cols, is_saturated, tate_h0, IsoCertificate, Solver};
use crate::lattices::{fixed_points, quotient_lattice, sublattice, PiLattice};
use crate::mat::IMat;
use crate::par;
use crate::resolutions::ExactTriple;

/// Coefficients of `X^k mod Φ_d` on the power basis.
fn power_mod(k: u64, d: u64) -> Result<Vec<i64>> {
    let phi = cyclotomic(d);
    let deg = phi.degree().unwrap_or(0);
    let r = IntPolynomial::monomial(1, k as usize).rem(&phi)?;
    Ok((0..deg).map(|i| r.coeff(i)).collect())
}

/// `Z[ζ_d]` on the power basis: `σ` multiplies by `ζ_d`, `τ` inverts, `ρ` acts trivially.
pub fn cyclotomic_integers(group: Arc<FiniteGroup>, d: u64) -> Result<PiLattice> {
    let deg = euler_phi(d) as usize;
    let mut gens = Vec::new();
    for (name, _) in group.generators() {
        let cols = (0..deg as u64)
            .map(|j| match name.as_str() {
                "sigma" => power_mod(j + 1, d),
                "tau" => power_mod((d - j % d) % d, d),
                "rho" => power_mod(j, d),
                other => Err(Error::UnsupportedFamily(format!("generator {other} on Z[ζ]"))),
            })
            .collect::<Result<Vec<_>>>()?;
        gens.push(IMat::from_cols(&cols, deg));
    }
    PiLattice::from_generators(group, gens, format!("Z[ζ{d}]"))
}

/// `Λ_d = Λ_d e ⊕ Λ_d (1 - e)` with `Λ_d e ≅ S_d` and `Λ_d (1 - e) ≅ Q_d`.
#[derive(Clone, Debug)]
pub struct SplitReport {
    pub d: u64,
    /// The idempotent in the basis of `Λ_d`.
    pub e: Vec<i64>,
    pub rank_lambda: usize,
    pub s_lattice: PiLattice,
    pub q_lattice: PiLattice,
    pub to_s: IsoCertificate,
    pub to_q: IsoCertificate,
    pub full: IsoCertificate,
}

/// The idempotent `e = -τ(w)(1 + u_τ)`, `w = ζ + ... + ζ^{(d-1)/2}`, over `D_{p^c}`.
pub fn idempotent_split(group: Arc<FiniteGroup>, d: u64) -> Result<SplitReport> {
    let n = match group.family() {
        FamilySpec::Dihedral { n } if odd_prime_power(*n).is_some() => *n,
        other => return Err(Error::UnsupportedFamily(format!("idempotent splitting needs D_(p^c), got {other}"))),
    };
    if d <= 1 || n % d != 0 {
        return Err(Error::BadDivisor(format!("{d} must be > 1 and divide {n}")));
    }
    let g = group.as_ref();
    let (s, _) = sigma_of(g)?;
    let tau = g.generator("tau").ok_or_else(|| Error::UnsupportedFamily("no tau".into()))?;
    let lam = lambda_ring(group.clone(), d)?;
    let el = |x| basis_elem(g, x);
    let add = |a: &[i64], b: &[i64], c: i64| a.iter().zip(b).map(|(x, y)| x + c * y).collect::<Vec<i64>>();
    let half = (d - 1) / 2;
    let mut w = vec![0i64; g.order()];
    let mut tw = vec![0i64; g.order()];
    for i in 1..=half as i64 {
        w[g.pow(s, i)] += 1;
        tw[g.pow(s, -i)] += 1;
    }
    let one = el(g.identity());
    if lam.image(&add(&add(&one, &w, 1), &tw, 1))?.iter().any(|&x| x != 0) {
        return Err(Error::IdempotentFailure("1 + w + τ(w) != 0".into()));
    }
    let one_plus_tau = add(&one, &el(tau), 1);
    let one_minus_tau = add(&one, &el(tau), -1);
    let e_ring: Vec<i64> = group_ring_mul(g, &tw, &one_plus_tau)?.iter().map(|x| -x).collect();
    let e = lam.image(&e_ring)?;
    if lam.mul(&e, &e)? != e {
        return Err(Error::IdempotentFailure("e^2 != e".into()));
    }
    let f: Vec<i64> = lam.one.iter().zip(&e).map(|(a, b)| a - b).collect();
    let piece = |idem: &[i64]| -> Result<(IMat, PiLattice)> {
        let basis = hnf_cols(&lam.right_mul_matrix(idem)?)?;
        if !is_saturated(&basis)? {
            return Err(Error::IdempotentFailure("summand is not saturated".into()));
        }
        let lat = sublattice(&lam.lattice, &basis)?;
        Ok((basis, lat))
    };
    let (be, le) = piece(&e)?;
    let (bf, lf) = piece(&f)?;
    if le.rank() + lf.rank() != lam.rank() {
        return Err(Error::IdempotentFailure("summand ranks do not add up".into()));
    }

    let s_lat = cyclotomic_integers(group.clone(), d)?.with_label(format!("S{d}"));
    let deg = s_lat.rank();
    let q_cols = (0..deg as u64)
        .map(|j| {
            let a = power_mod(j + 1, d)?;
            let b = power_mod((j + d - 1) % d, d)?;
            Ok(a.iter().zip(&b).map(|(x, y)| x - y).collect())
        })
        .collect::<Result<Vec<Vec<i64>>>>()?;
    let q_lat = sublattice(&s_lat, &IMat::from_cols(&q_cols, deg))?.with_label(format!("Q{d}"));

    let mut to_s_cols = Vec::new();
    let mut to_q_cols = Vec::new();
    for j in 0..deg as i64 {
        let sj = el(g.pow(s, j));
        to_s_cols.push(lam.image(&group_ring_mul(g, &sj, &one_plus_tau)?)?);
        let t = group_ring_mul(g, &group_ring_mul(g, &sj, &one_minus_tau)?, &w)?;
        to_q_cols.push(lam.image(&t)?);
    }
    let k = lam.rank();
    let in_basis = |basis: &IMat, cols: &[Vec<i64>]| -> Result<IMat> {
        let sol = Solver::new(basis)
            .solve(&IMat::from_cols(cols, k))?
            .ok_or_else(|| Error::IdempotentFailure("map leaves the summand".into()))?;
        Ok(sol)
    };
    let to_s = IsoCertificate::from_matrix(&s_lat, &le, in_basis(&be, &to_s_cols)?)?;
    let to_q = IsoCertificate::from_matrix(&q_lat, &lf, in_basis(&bf, &to_q_cols)?)?;
    let mut all = to_s_cols.clone();
    all.extend(to_q_cols);
    let full = IsoCertificate::from_matrix(&s_lat.direct_sum(&q_lat)?, &lam.lattice, IMat::from_cols(&all, k))?;
    Ok(SplitReport { d, e, rank_lambda: k, s_lattice: s_lat, q_lattice: q_lat, to_s, to_q, full })
}

/// `M ≅ Z^a ⊕ Z_-^b ⊕ (ZC_2)^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReinerDecomposition {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// Multiplicities read off from `Ĥ^0`, `H^1` and the fixed rank of a `C_2`-lattice.
pub fn reiner_c2_decompose(m: &PiLattice) -> Result<ReinerDecomposition> {
    let g = m.group();
    if g.order() != 2 {
        return Err(Error::InvalidParameters(format!("Reiner decomposition needs C2, got order {}", g.order())));
    }
    let whole = g.subgroups().whole();
    let h0 = tate_h0(m, &whole.elements)?;
    let h1v = h1(m, whole)?;
    let elementary = |x: &crate::homalg::AbelianInvariants| x.free_rank == 0 && x.torsion.iter().all(|&t| t == 2);
    if !elementary(&h0) || !elementary(&h1v) {
        return Err(Error::InconsistentInvariants("C2 cohomology is not elementary abelian".into()));
    }
    let (a, b) = (h0.torsion.len(), h1v.torsion.len());
    let rest = m.rank().checked_sub(a + b).filter(|r| r % 2 == 0);
    let c = rest.ok_or_else(|| Error::InconsistentInvariants("rank - a - b is not even".into()))? / 2;
    if fixed_points(m, &whole.elements)?.cols() != a + c {
        return Err(Error::InconsistentInvariants("fixed rank differs from a + c".into()));
    }
    Ok(ReinerDecomposition { a, b, c })
}

/// `Z[ζ_m]` with `τ ζ = ζ^{-1}` decomposed over `C_2`.
pub fn lemma45_decomposition(m: u64) -> Result<ReinerDecomposition> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::InvalidParameters(format!("m = {m} must be odd and >= 3")));
    }
    let c2 = Arc::new(parse_group("C2")?);
    let deg = euler_phi(m) as usize;
    let cols = (0..deg as u64).map(|j| power_mod((m - j) % m, m)).collect::<Result<Vec<_>>>()?;
    let lat = PiLattice::from_generators(c2, vec![IMat::from_cols(&cols, deg)], format!("Z[ζ{m}]"))?;
    reiner_c2_decompose(&lat)
}

/// Whether `Z[ζ_m] ≅ (ZC_2)^{φ(m)/2}`.
pub fn lemma45_verify(m: u64) -> Result<bool> {
    let r = lemma45_decomposition(m)?;
    Ok(r == ReinerDecomposition { a: 0, b: 0, c: euler_phi(m) as usize / 2 })
}

/// `0 -> N -> (M*/Φ_m(σ)M*)_0 -> M' -> 0` over `C_{q^f} x D_m` with all `Ĥ^0(π', N)` zero.
#[derive(Clone, Debug)]
pub struct Theorem46Report {
    pub triple: ExactTriple,
    pub m_prime: PiLattice,
    pub subgroups_checked: usize,
    /// `N` restricted to `<τ>`.
    pub restricted: ReinerDecomposition,
}

pub fn theorem46_sequence(q: u64, f: u32, m: u64, lattice: &PiLattice) -> Result<Theorem46Report> {
    if !is_prime(q) || q == 2 || f == 0 || m < 3 || m % 2 == 0 || gcd(q, m) != 1 {
        return Err(Error::InvalidParameters(format!("(q, f, m) = ({q}, {f}, {m})")));
    }
    let qf = q.pow(f);
    let g = lattice.group();
    match g.family() {
        FamilySpec::CyclicTimesDihedral { n, m: mm } if *n == qf && *mm == m => {}
        other => return Err(Error::InvalidParameters(format!("expected C{qf}xD{m}, got {other}"))),
    }
    let mstar = lattice.star_twist()?;
    let r = mstar.rank();
    let rho = generator_matrix(&mstar, "rho")?;
    let sigma = generator_matrix(&mstar, "sigma")?;
    let phi_rho = sigma_to_matrix(rho, cyclotomic(qf).coeffs())?;
    let phi_sigma = sigma_to_matrix(sigma, cyclotomic(m).coeffs())?;
    let shift = rho.pow(qf / q)?.sub(&IMat::identity(r))?;

    let (n_lat, qn) = quotient_lattice(&mstar, &phi_rho.hstack(&phi_sigma))?;
    let (mid, qm) = quotient_lattice(&mstar, &phi_sigma)?;
    let (right, qr) = quotient_lattice(&mstar, &shift.hstack(&phi_sigma))?;
    let sec = |q: &IMat| -> Result<IMat> {
        Solver::new(q).solve(&IMat::identity(q.rows()))?.ok_or(Error::NotSolvable)
    };
    let inject = qm.matrix.mul(&shift)?.mul(&sec(&qn.matrix)?)?;
    let project = qr.matrix.mul(&sec(&qm.matrix)?)?;
    let n_lat = n_lat.with_label("N");
    let right = right.with_label("M'");
    let triple = ExactTriple::new(n_lat.clone(), mid.with_label("(M*/Phi_m)_0"), right.clone(), inject, project)
        .map_err(|e| Error::ExactnessFailure { k: 0, detail: e.to_string() })?;

    let reps: Vec<_> = g.subgroups().representatives().cloned().collect();
    let h0 = par::try_map(&reps, |h| Ok::<_, Error>((h.describe(g), tate_h0(&n_lat, &h.elements)?.is_zero())))?;
    let bad: Vec<String> = h0.iter().filter(|(_, z)| !z).map(|(l, _)| l.clone()).collect();
    if !bad.is_empty() {
        return Err(Error::NonvanishingH0(bad));
    }
    let tau = g.generator("tau").ok_or_else(|| Error::UnsupportedFamily("no tau".into()))?;
    let restricted = reiner_c2_decompose(&n_lat.restrict(&g.closure(&[tau]))?)?;
    Ok(Theorem46Report { triple, m_prime: right, subgroups_checked: reps.len(), restricted })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(s: &str) -> Arc<FiniteGroup> {
        Arc::new(parse_group(s).unwrap())
    }

    #[test]
    fn splits() {
        let r = idempotent_split(grp("D3"), 3).unwrap();
        assert_eq!(r.rank_lambda, 4);
        let r = idempotent_split(grp("D9"), 9).unwrap();
        assert_eq!((r.rank_lambda, r.s_lattice.rank(), r.q_lattice.rank()), (12, 6, 6));
        idempotent_split(grp("D9"), 3).unwrap();
    }

    #[test]
    fn reiner_examples() {
        let c2 = grp("C2");
        let m = PiLattice::trivial(c2.clone()).direct_sum(&PiLattice::sign(c2.clone()).unwrap()).unwrap();
        assert_eq!(reiner_c2_decompose(&m).unwrap(), ReinerDecomposition { a: 1, b: 1, c: 0 });
        let r = reiner_c2_decompose(&PiLattice::regular(c2)).unwrap();
        assert_eq!(r, ReinerDecomposition { a: 0, b: 0, c: 1 });
        assert_eq!(lemma45_decomposition(3).unwrap().c, 1);
        assert_eq!(lemma45_decomposition(9).unwrap().c, 3);
        assert!(lemma45_verify(15).unwrap());
    }

    #[test]
    fn theorem46_small() {
        let g = grp("C3xD5");
        let r = theorem46_sequence(3, 1, 5, &PiLattice::regular(g.clone())).unwrap();
        assert_eq!(r.restricted.a + r.restricted.b, 0);
        let tau = g.generator("tau").unwrap();
        let m = PiLattice::permutation(g.clone(), &g.closure(&[tau])).unwrap();
        let r = theorem46_sequence(3, 1, 5, &m).unwrap();
        assert_eq!(r.restricted.a + r.restricted.b, 0);
    }
}
