//! The acceptance suite: twelve criteria, each a pass/fail check with a runtime budget.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::arith::{divisors, euler_phi, gcd, mobius, prime_divisors};
use crate::classgroup::{max_order_class_group, TotalOrder};
use crate::corpus::full_corpus;
use crate::cyclo::{cyclotomic, devissage_schedule, h_minus, h_minus_determinant, IntPolynomial};
use crate::devissage::{idempotent_split, lambda_ring, lemma45_verify, psi_isomorphism, theorem46_sequence, verify_tower};
use crate::error::{Error, Result};
use crate::groups::{condition_1prime, parse_group, theorem14_classify, FamilySpec, FiniteGroup};
use crate::homalg::flabby_coflabby;
use crate::lattices::PiLattice;
use crate::par;
use crate::resolutions::{certify_stably_permutation, coflabby_embedding, flabby_resolution};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub budget_seconds: u64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("{verdict} {:>2} {} ({:.2}s) {}", self.id, self.name, self.seconds, self.detail)
    }
}

type Check = fn() -> Result<String>;

/// `(id, name, budget in seconds, check)`.
pub const CRITERIA: [(u8, &str, u64, Check); 12] = [
    (1, "cyclotomic identities", 10, cyclotomic_identities),
    (2, "devissage schedules", 10, schedules),
    (3, "tower verification", 300, towers),
    (4, "psi isomorphism", 120, psi),
    (5, "idempotent splitting", 60, splitting),
    (6, "lemma45 decomposition", 60, lemma45),
    (7, "cyclic-times-dihedral building blocks", 300, building_blocks),
    (8, "cohomology suite", 300, cohomology_suite),
    (9, "resolutions", 120, resolutions),
    (10, "class numbers", 60, class_numbers),
    (11, "class-group reports", 30, class_groups),
    (12, "classification conditions agree", 30, classification_grid),
];

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InconsistentInvariants(msg.into()))
}

fn group(s: &str) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(parse_group(s)?))
}

pub fn run_criterion(id: u8) -> Result<CriterionResult> {
    let &(id, name, budget, check) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .ok_or_else(|| Error::InvalidParameters(format!("no criterion {id}")))?;
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let over = elapsed > Duration::from_secs(budget);
    let (passed, mut detail) = match outcome {
        Ok(d) => (!over, d),
        Err(e) => (false, e.to_string()),
    };
    if over {
        detail = format!("{detail}; exceeded the {budget}s budget");
    }
    Ok(CriterionResult { id, name, passed, detail, seconds: elapsed.as_secs_f64(), budget_seconds: budget })
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().map(|c| run_criterion(c.0).expect("criterion id from the table")).collect()
}

fn cyclotomic_identities() -> Result<String> {
    for n in 1..=300u64 {
        let prod = divisors(n).into_iter().try_fold(IntPolynomial::one(), |acc, d| acc.mul(&cyclotomic(d)))?;
        if prod != IntPolynomial::x_pow_minus_one(n as usize) {
            return fail(format!("prod Phi_d != X^{n} - 1"));
        }
    }
    for m in (3..=200u64).step_by(2) {
        let phi = cyclotomic(m);
        if phi.coeff((euler_phi(m) / 2) as usize) % 2 == 0 {
            return fail(format!("middle coefficient of Phi_{m} is even"));
        }
        if prime_divisors(m).len() >= 2 && phi.eval(1)?.abs() != 1 {
            return fail(format!("Phi_{m}(1) is not a unit"));
        }
    }
    Ok("n <= 300, odd m <= 200".into())
}

/// The e-list of `n = pqr` must read `(pqr, qr, r, pr, p, 1, q, pq)` under some labeling.
fn pqr_pattern(n: u64, e: &[u64]) -> bool {
    let ps = prime_divisors(n);
    if ps.len() != 3 {
        return false;
    }
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    perms.iter().any(|ix| {
        let (p, q, r) = (ps[ix[0]], ps[ix[1]], ps[ix[2]]);
        e == [p * q * r, q * r, r, p * r, p, 1, q, p * q]
    })
}

fn schedules() -> Result<String> {
    for n in 3..=300u64 {
        let s = devissage_schedule(n)?;
        s.check()?;
        for (k, &d) in s.d.iter().enumerate() {
            if mobius(d) != if k % 2 == 0 { 1 } else { -1 } {
                return fail(format!("n = {n}: mu(d_{k}) != (-1)^{k}"));
            }
        }
        if s.len() > 1 && s.big_g(1) != &cyclotomic(n) {
            return fail(format!("n = {n}: G_1 != Phi_n"));
        }
    }
    for n in [105, 165, 195] {
        let s = devissage_schedule(n)?;
        if !pqr_pattern(n, &s.e) {
            return fail(format!("n = {n}: e-list {:?} off pattern", s.e));
        }
    }
    Ok("3 <= n <= 300; pqr pattern for 105, 165, 195".into())
}

fn towers() -> Result<String> {
    let cases = [("D15", 15), ("D21", 21), ("D105", 105), ("Q12", 6), ("Q20", 10)];
    for (spec, n) in cases {
        let report = verify_tower(&PiLattice::regular(group(spec)?), n)?;
        if !report.all_true() {
            return fail(format!("{spec}, n = {n}: {}", report.to_text()));
        }
        for c in &report.certificates {
            c.verify()?;
        }
    }
    Ok(format!("{} towers all-true", cases.len()))
}

fn tau_subgroup(g: &FiniteGroup) -> Result<Vec<usize>> {
    let tau = g.generator("tau").ok_or_else(|| Error::InvalidParameters("no tau".into()))?;
    Ok(g.closure(&[tau]))
}

fn psi() -> Result<String> {
    let mut count = 0;
    for (spec, n) in [("D3", 3), ("D7", 7), ("D9", 9)] {
        let g = group(spec)?;
        let tau = tau_subgroup(&g)?;
        for m in [PiLattice::regular(g.clone()), PiLattice::permutation(g.clone(), &tau)?] {
            psi_isomorphism(&m, n)?.certificate.verify()?;
            count += 1;
        }
    }
    psi_isomorphism(&PiLattice::regular(group("Q12")?), 6)?.certificate.verify()?;
    Ok(format!("{} certificates", count + 1))
}

fn splitting() -> Result<String> {
    for (pc, d) in [(3, 3), (5, 5), (7, 7), (9, 3), (9, 9), (27, 27)] {
        let g = group(&format!("D{pc}"))?;
        let r = idempotent_split(g.clone(), d)?;
        let lam = lambda_ring(g, d)?;
        if lam.mul(&r.e, &r.e)? != r.e {
            return fail(format!("e^2 != e for ({pc}, {d})"));
        }
        r.to_s.verify()?;
        r.to_q.verify()?;
        r.full.verify()?;
    }
    Ok("6 splittings".into())
}

fn lemma45() -> Result<String> {
    for m in (3..=45).step_by(2) {
        if !lemma45_verify(m)? {
            return fail(format!("m = {m}"));
        }
    }
    Ok("odd 3 <= m <= 45".into())
}

fn building_blocks() -> Result<String> {
    let mut count = 0;
    for (q, f, m) in [(3u64, 1u32, 5u64), (3, 2, 5), (3, 1, 7)] {
        let g = group(&format!("C{}xD{m}", q.pow(f)))?;
        let tau = tau_subgroup(&g)?;
        for lat in [PiLattice::regular(g.clone()), PiLattice::permutation(g.clone(), &tau)?] {
            let r = theorem46_sequence(q, f, m, &lat)?;
            r.triple.check()?;
            if r.subgroups_checked == 0 {
                return fail("no subgroups checked");
            }
            count += 1;
        }
    }
    Ok(format!("{count} sequences"))
}

/// Family groups of order at most `bound`.
pub fn family_groups(bound: u64) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for n in 1..=bound {
        out.push(FamilySpec::Cyclic { n });
    }
    for n in 2..=bound / 2 {
        out.push(FamilySpec::Dihedral { n });
    }
    for n in 2..=bound / 4 {
        out.push(FamilySpec::Quaternion { n });
    }
    for n in 2..=bound {
        for m in 2..=bound {
            if 2 * n * m <= bound && gcd(n, m) == 1 {
                out.push(FamilySpec::CyclicTimesDihedral { n, m });
            }
        }
    }
    for t in 3..=9 {
        if 2u64 << t <= bound {
            out.push(FamilySpec::SemiDihedral { t });
            out.push(FamilySpec::Modular { t });
        }
    }
    out
}

fn cohomology_suite() -> Result<String> {
    let specs = family_groups(48);
    let counts = par::try_map(&specs, |spec| -> Result<usize> {
        let g = Arc::new(crate::groups::build_group(spec)?);
        let mut n = 0;
        for h in g.subgroups().representatives() {
            let p = PiLattice::permutation(g.clone(), &h.elements)?;
            let r = flabby_coflabby(&p)?;
            if !(r.flabby && r.coflabby) {
                return fail(format!("Z[{spec}/{}] is not flabby and coflabby", h.describe(&g)));
            }
            n += 1;
        }
        Ok(n)
    })?;
    let sign = flabby_coflabby(&PiLattice::sign(group("C2")?)?)?;
    if sign.flabby || sign.coflabby {
        return fail("sign(C2) is flabby or coflabby");
    }
    let corpus = full_corpus()?;
    let mut lattices = 0;
    for (name, ms) in &corpus {
        for m in ms {
            let (a, b) = (flabby_coflabby(m)?, flabby_coflabby(&m.dual()?)?);
            if a.flabby != b.coflabby || a.coflabby != b.flabby {
                return fail(format!("dual does not exchange the predicates on {} over {name}", m.label()));
            }
            lattices += 1;
        }
    }
    Ok(format!(
        "{} permutation lattices over {} groups; duality on {lattices} corpus lattices",
        counts.iter().sum::<usize>(),
        specs.len()
    ))
}

fn resolutions() -> Result<String> {
    let c2 = group("C2")?;
    let e = flabby_resolution(&PiLattice::sign(c2)?)?.right;
    let cert = certify_stably_permutation(&e, 4, 1)?.ok_or_else(|| Error::InconsistentInvariants("no certificate for E".into()))?;
    cert.certificate.verify()?;
    let corpus = full_corpus()?;
    let jobs: Vec<&PiLattice> = corpus.iter().flat_map(|(_, ms)| ms).collect();
    par::try_map(&jobs, |m| coflabby_embedding(m).map(|_| ()))?;
    Ok(format!("E certified; {} coflabby embeddings", jobs.len()))
}

fn valid_modulus(m: u64) -> bool {
    m >= 3 && m % 4 != 2
}

fn class_numbers() -> Result<String> {
    for m in (3..=22).filter(|&m| valid_modulus(m)) {
        if !h_minus(m)?.is_one() {
            return fail(format!("h-({m}) != 1"));
        }
    }
    if h_minus(23)? != BigInt::from(3) {
        return fail("h-(23) != 3");
    }
    let ms: Vec<u64> = (3..=40).filter(|&m| valid_modulus(m)).collect();
    let pairs = par::try_map(&ms, |&m| Ok::<_, Error>((m, h_minus(m)?, h_minus_determinant(m)?)))?;
    if let Some((m, a, b)) = pairs.iter().find(|(_, a, b)| a != b) {
        return fail(format!("oracles disagree at m = {m}: {a} vs {b}"));
    }
    Ok(format!("oracles agree on {} moduli", ms.len()))
}

fn class_groups() -> Result<String> {
    let one = TotalOrder::Known(BigInt::one());
    let mut specs: Vec<String> = (2..=60).map(|n| format!("D{n}")).collect();
    specs.extend([8, 16, 32, 64, 128].iter().map(|o| format!("Q{o}")));
    specs.extend(["M16", "M32", "M64"].map(String::from));
    for s in &specs {
        let r = max_order_class_group(&s.parse()?)?;
        if r.total != one {
            return fail(format!("{s}: total {}", r.total));
        }
    }
    let c23 = max_order_class_group(&"C23".parse()?)?;
    if c23.total != TotalOrder::Known(BigInt::from(3)) {
        return fail(format!("C23: total {}", c23.total));
    }
    let sd = max_order_class_group(&"SD32".parse()?)?;
    if sd.total != TotalOrder::Unknown {
        return fail(format!("SD32: total {}", sd.total));
    }
    Ok(format!("{} trivial totals, C23 = 3, SD32 unknown", specs.len()))
}

/// `C_n × (C_m ⋊ C_{2^d})` is in the classification list exactly when the condition on primes of
/// `m` holds, over `n` odd, `n 2^d <= 128`, `m <= 50` odd and coprime to `n`.
fn classification_grid() -> Result<String> {
    let mut count = 0;
    for d in 1..=7u32 {
        for n in (1..=(128u64 >> d)).step_by(2) {
            for m in (1..=50u64).step_by(2) {
                if gcd(n, m) != 1 {
                    continue;
                }
                let listed = if m == 1 {
                    true
                } else {
                    let spec = match (n, d) {
                        (1, 1) => Some(FamilySpec::Dihedral { n: m }),
                        (1, 2) => Some(FamilySpec::Quaternion { n: m }),
                        (n, 1) => Some(FamilySpec::CyclicTimesDihedral { n, m }),
                        _ => None,
                    };
                    match spec {
                        Some(s) => theorem14_classify(&s)?.in_list,
                        None => false,
                    }
                };
                if listed != condition_1prime(n, m, d) {
                    return fail(format!("disagreement at n = {n}, m = {m}, d = {d}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} parameter tuples"))
}
