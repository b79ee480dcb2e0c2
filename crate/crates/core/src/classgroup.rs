//! Class groups of maximal orders in rational group algebras, assembled from cyclotomic
//! class-number data, and the rationality verdicts that follow from them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, gcd, odd_prime_power};
use crate::cyclo::{
    class_number_record, emit_table, h_plus_status, imaginary_quadratic_class_number, ClassNumberRecord, HPlus,
    HTotal,
};
use crate::error::{Error, Result};
use crate::groups::{theorem14_classify, FamilySpec};
use crate::par;

/// Ring whose (ray) class group is a summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldDescriptor {
    /// `Z[ζ_d]`.
    CyclotomicFull(u64),
    /// `Z[ζ_d + ζ_d^-1]`.
    CyclotomicReal(u64),
    /// Ray class group of `Z[ζ_d + ζ_d^-1]` modulo the places ramified in the definite quaternion algebra.
    RayQuaternion(u64),
    /// `Z[ζ_n - ζ_n^-1]`.
    SemiDihedralSpecial(u64),
    /// `Z[ζ_a, ζ_b + ζ_b^-1]`.
    MixedCyclotomic(u64, u64),
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::CyclotomicFull(d) => write!(f, "C(Z[ζ_{d}])"),
            FieldDescriptor::CyclotomicReal(d) => write!(f, "C(Z[ζ_{d} + ζ_{d}^-1])"),
            FieldDescriptor::RayQuaternion(d) => write!(f, "C_A(Z[ζ_{d} + ζ_{d}^-1])"),
            FieldDescriptor::SemiDihedralSpecial(n) => write!(f, "C(Z[ζ_{n} - ζ_{n}^-1])"),
            FieldDescriptor::MixedCyclotomic(a, b) => write!(f, "C(Z[ζ_{a}, ζ_{b} + ζ_{b}^-1])"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassStatus {
    Known(BigInt),
    Unknown(String),
}

impl ClassStatus {
    pub fn known(&self) -> Option<&BigInt> {
        match self {
            ClassStatus::Known(h) => Some(h),
            ClassStatus::Unknown(_) => None,
        }
    }
}

impl fmt::Display for ClassStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassStatus::Known(h) => write!(f, "Known({h})"),
            ClassStatus::Unknown(r) => write!(f, "Unknown({r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub field: FieldDescriptor,
    pub multiplicity: u32,
    pub status: ClassStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TotalOrder {
    Known(BigInt),
    Unknown,
}

impl fmt::Display for TotalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TotalOrder::Known(h) => write!(f, "Known({h})"),
            TotalOrder::Unknown => write!(f, "Unknown"),
        }
    }
}

/// Order of `C(Ω_Zπ)` for a maximal order `Ω_Zπ ⊇ Zπ`, as a direct sum of summands.
/// Only orders are tracked; the group structure of each summand is not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroupReport {
    pub family: FamilySpec,
    pub summands: Vec<Summand>,
    pub total: TotalOrder,
    /// Cyclotomic class-number rows consulted, sorted by conductor.
    pub rows: Vec<ClassNumberRecord>,
}

impl ClassGroupReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("class group of a maximal order in Q[{}]\n", self.family);
        for s in &self.summands {
            let mult = if s.multiplicity > 1 { format!("^({})", s.multiplicity) } else { String::new() };
            out.push_str(&format!("  {}{}: {}\n", s.field, mult, s.status));
        }
        out.push_str(&format!("total: {}\n", self.total));
        out
    }

    /// The consulted class-number rows as a tab-separated table.
    pub fn table(&self) -> String {
        emit_table(&self.rows, "computed")
    }
}

fn real_status(d: u64) -> ClassStatus {
    match h_plus_status(d) {
        HPlus::Known(h) => ClassStatus::Known(BigInt::from(h)),
        HPlus::KnownUnderGRH(_) => ClassStatus::Unknown(format!("h+({d}) known only under GRH")),
        HPlus::Unknown => ClassStatus::Unknown(format!("h+({d}) not tabulated")),
    }
}

fn full_status(record: &ClassNumberRecord) -> ClassStatus {
    match &record.h_total {
        HTotal::Known(h) => ClassStatus::Known(h.clone()),
        HTotal::ConditionallyKnown(_) => ClassStatus::Unknown(format!("h+({}) known only under GRH", record.m)),
        HTotal::Unknown => ClassStatus::Unknown(format!("h+({}) not tabulated", record.m)),
    }
}

/// Status of the quaternion ray class summand at `d | 2n`, `d ∤ n`, `d >= 3`.
/// For `n` a power of two every sign pattern at the ramified real places is realized by a unit,
/// so the ray class group equals the ordinary class group of `Z[ζ_d + ζ_d^-1]`.
pub fn quaternion_ray_summand(n: u64, d: u64) -> Result<ClassStatus> {
    if n < 2 || d < 3 || (2 * n) % d != 0 || n % d == 0 {
        return Err(Error::BadDivisor(format!("need n >= 2, d >= 3, d | 2n and d ∤ n; got n = {n}, d = {d}")));
    }
    if n.is_power_of_two() {
        Ok(real_status(d))
    } else {
        Ok(ClassStatus::Unknown("unit signature data required".into()))
    }
}

fn mixed_status(a: u64, b: u64) -> ClassStatus {
    if a <= 2 {
        real_status(b)
    } else {
        ClassStatus::Unknown(format!("class number of Q(ζ_{a}, ζ_{b} + ζ_{b}^-1) not tabulated"))
    }
}

fn semidihedral_status(n: u64) -> Result<ClassStatus> {
    if n == 8 {
        // ζ_8 - ζ_8^-1 = sqrt(-2), and Z[sqrt(-2)] is the maximal order of discriminant -8.
        Ok(ClassStatus::Known(BigInt::from(imaginary_quadratic_class_number(-8)?)))
    } else {
        Ok(ClassStatus::Unknown(format!("class number of Q(ζ_{n} - ζ_{n}^-1) is open for n >= 16")))
    }
}

/// Summand layout before class numbers are resolved.
fn layout(spec: &FamilySpec) -> Result<Vec<(FieldDescriptor, u32)>> {
    use FieldDescriptor::*;
    let unsupported = || Err(Error::UnsupportedFamily(spec.to_string()));
    spec.validate_params()?;
    let out = match *spec {
        FamilySpec::Cyclic { n } => divisors(n).into_iter().map(|d| (CyclotomicFull(d), 1)).collect(),
        FamilySpec::Dihedral { n } if n >= 2 => divisors(n).into_iter().map(|d| (CyclotomicReal(d), 1)).collect(),
        FamilySpec::CyclicTimesDihedral { n, m } if m >= 2 && gcd(n, m) == 1 => {
            let mult = if m % 2 == 1 { 2 } else { 4 };
            let mut out: Vec<_> = divisors(n).into_iter().map(|d| (CyclotomicFull(d), mult)).collect();
            for d2 in divisors(m).into_iter().filter(|&d| d >= 3) {
                for d1 in divisors(n) {
                    out.push((MixedCyclotomic(d1, d2), 1));
                }
            }
            out
        }
        FamilySpec::Quaternion { n } => {
            let mut out: Vec<_> = divisors(n).into_iter().map(|d| (CyclotomicReal(d), 1)).collect();
            for d in divisors(2 * n).into_iter().filter(|&d| d >= 3 && n % d != 0) {
                out.push((RayQuaternion(d), 1));
            }
            out
        }
        FamilySpec::SemiDihedral { t } => {
            let mut out: Vec<_> = (0..t).map(|s| (CyclotomicReal(1 << s), 1)).collect();
            out.push((SemiDihedralSpecial(1 << t), 1));
            out
        }
        FamilySpec::Modular { t } => {
            let mut out: Vec<_> = (0..t).map(|s| (CyclotomicFull(1 << s), 2)).collect();
            out.push((CyclotomicFull(1 << (t - 1)), 1));
            out
        }
        _ => return unsupported(),
    };
    Ok(out)
}

fn resolve(spec: &FamilySpec, field: FieldDescriptor) -> Result<(ClassStatus, Vec<ClassNumberRecord>)> {
    use FieldDescriptor::*;
    let rec = |d: u64| class_number_record(d);
    Ok(match field {
        CyclotomicFull(d) => {
            let r = rec(d)?;
            (full_status(&r), vec![r])
        }
        CyclotomicReal(d) => (real_status(d), vec![rec(d)?]),
        RayQuaternion(d) => {
            let FamilySpec::Quaternion { n } = *spec else {
                return Err(Error::UnsupportedFamily(spec.to_string()));
            };
            (quaternion_ray_summand(n, d)?, vec![rec(d)?])
        }
        SemiDihedralSpecial(n) => (semidihedral_status(n)?, Vec::new()),
        MixedCyclotomic(a, b) => (mixed_status(a, b), vec![rec(b)?]),
    })
}

/// `C(Ω_Zπ)` as a sum over the simple components of `Qπ`, with class numbers resolved
/// from the cyclotomic tables. Unknown statuses propagate to the total.
pub fn max_order_class_group(spec: &FamilySpec) -> Result<ClassGroupReport> {
    let fields = layout(spec)?;
    let resolved = par::try_map(&fields, |(f, _)| resolve(spec, *f))?;
    let mut rows = BTreeMap::new();
    let mut summands = Vec::with_capacity(fields.len());
    let mut total = Some(BigInt::one());
    for ((field, multiplicity), (status, recs)) in fields.into_iter().zip(resolved) {
        for r in recs {
            rows.insert(r.m, r);
        }
        total = match (total, status.known()) {
            (Some(t), Some(h)) => Some(t * Pow::pow(h, multiplicity)),
            _ => None,
        };
        summands.push(Summand { field, multiplicity, status });
    }
    Ok(ClassGroupReport {
        family: spec.clone(),
        summands,
        total: total.map_or(TotalOrder::Unknown, TotalOrder::Known),
        rows: rows.into_values().collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::True => "True",
            Verdict::False => "False",
            Verdict::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalityVerdict {
    pub statement: String,
    pub verdict: Verdict,
    pub justification: Vec<String>,
}

fn citations(report: &ClassGroupReport) -> Vec<String> {
    report.summands.iter().map(|s| format!("{} = {}", s.field, s.status)).collect()
}

/// `True` if the total is 1, `False` if it is known and larger (only when `strict`), else `Unknown`.
fn trivial_verdict(report: &ClassGroupReport, strict: bool) -> Verdict {
    match &report.total {
        TotalOrder::Known(h) if h.is_one() => Verdict::True,
        TotalOrder::Known(_) if strict => Verdict::False,
        _ => Verdict::Unknown,
    }
}

/// Verdicts read off from the class-group total and the standard equivalences.
pub fn rationality_reports(spec: &FamilySpec) -> Result<Vec<RationalityVerdict>> {
    let report = max_order_class_group(spec)?;
    let cites = citations(&report);
    let mut out = vec![RationalityVerdict {
        statement: "C(Ω_Zπ) = 0".into(),
        verdict: trivial_verdict(&report, true),
        justification: {
            let mut j = cites.clone();
            j.push(format!("total {}", report.total));
            j
        },
    }];
    let class = theorem14_classify(spec)?;
    if class.in_list {
        out.push(RationalityVerdict {
            statement: "every π-torus is stably rational (T(π) = 0)".into(),
            verdict: trivial_verdict(&report, true),
            justification: vec![
                format!("{}: T(π) ≅ C(Zπ)/C^q(Zπ) ≅ C(Ω_Zπ)", class.witness),
                format!("C(Ω_Zπ) total {}", report.total),
            ],
        });
    }
    match *spec {
        FamilySpec::Dihedral { n } => {
            if let Some((p, c)) = odd_prime_power(n) {
                let h = h_plus_status(n);
                let verdict = match h {
                    HPlus::Known(1) => Verdict::True,
                    HPlus::Known(_) => Verdict::False,
                    _ => Verdict::Unknown,
                };
                out.push(RationalityVerdict {
                    statement: format!("all D_{{{p}^{c}}}-tori are stably rational iff h+({n}) = 1"),
                    verdict,
                    justification: vec![
                        format!("h+({n}) = {h}"),
                        "h+(p^c) = 1 forces h+(p^c') = 1 for c' <= c (one totally ramified prime)".into(),
                    ],
                });
            }
            if n.is_power_of_two() {
                out.push(RationalityVerdict {
                    statement: "flabby and coflabby ⟺ stably permutation".into(),
                    verdict: trivial_verdict(&report, true),
                    justification: vec![
                        "dihedral 2-group: C(Ω_Zπ) ≅ T^g(π)".into(),
                        "T^g(π) = 0 splits 0 -> M -> P1 -> P2 -> 0 for invertible M".into(),
                        format!("C(Ω_Zπ) total {}", report.total),
                    ],
                });
            }
        }
        FamilySpec::Quaternion { n } if n.is_power_of_two() => {
            out.push(invertible_verdict(&report, "quaternion 2-group: units realize all signs at the ramified places"));
        }
        FamilySpec::SemiDihedral { .. } => {
            out.push(invertible_verdict(&report, "C(Ω_Zπ) surjects onto C(Zπ)/C^q(Zπ) ≅ T^g(π)"));
        }
        FamilySpec::Modular { .. } => {
            out.push(invertible_verdict(&report, "C(Ω_Zπ) surjects onto C(Zπ)/C^q(Zπ) ≅ T^g(π)"));
        }
        _ => {}
    }
    Ok(out)
}

fn invertible_verdict(report: &ClassGroupReport, reason: &str) -> RationalityVerdict {
    RationalityVerdict {
        statement: "every invertible π-lattice is stably permutation".into(),
        verdict: trivial_verdict(report, false),
        justification: vec![
            reason.into(),
            "C(Ω_Zπ) = 0 forces T^g(π) = 0".into(),
            format!("C(Ω_Zπ) total {}", report.total),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::euler_phi;

    fn parse(s: &str) -> FamilySpec {
        s.parse().unwrap()
    }

    fn total(s: &str) -> TotalOrder {
        max_order_class_group(&parse(s)).unwrap().total
    }

    fn one() -> TotalOrder {
        TotalOrder::Known(BigInt::one())
    }

    #[test]
    fn examples() {
        let c23 = max_order_class_group(&parse("C23")).unwrap();
        assert_eq!(c23.total, TotalOrder::Known(BigInt::from(3)));
        assert_eq!(c23.summands[0].status, ClassStatus::Known(BigInt::one()));
        assert_eq!(total("D9"), one());
        assert_eq!(total("M32"), one());
        assert_eq!(total("SD16"), one());
        assert_eq!(total("SD32"), TotalOrder::Unknown);
        assert!(c23.table().contains("23\t3\tKnown(1)"));
    }

    #[test]
    fn families_with_trivial_class_group() {
        for n in 2..=60 {
            assert_eq!(total(&format!("D{n}")), one(), "D{n}");
        }
        for t in 1..=5 {
            assert_eq!(total(&format!("Q{}", 4u64 << t)), one());
        }
        for s in ["M16", "M32", "M64"] {
            assert_eq!(total(s), one(), "{s}");
        }
    }

    #[test]
    fn ray_summands() {
        assert_eq!(quaternion_ray_summand(4, 8).unwrap(), ClassStatus::Known(BigInt::one()));
        assert_eq!(quaternion_ray_summand(64, 128).unwrap(), ClassStatus::Known(BigInt::one()));
        assert!(matches!(quaternion_ray_summand(3, 6).unwrap(), ClassStatus::Unknown(r) if r == "unit signature data required"));
        assert!(matches!(quaternion_ray_summand(4, 4), Err(Error::BadDivisor(_))));
        assert_eq!(total("Q12"), TotalOrder::Unknown);
    }

    /// Each summand sits in a simple component of Qπ; their Q-dimensions add up to |π|.
    fn algebra_dimension(spec: &FamilySpec, s: &Summand) -> u64 {
        let phi = euler_phi;
        let per = match (spec, s.field) {
            (FamilySpec::Modular { .. }, FieldDescriptor::CyclotomicFull(d)) if s.multiplicity == 1 => 4 * phi(d),
            (_, FieldDescriptor::CyclotomicFull(d)) => phi(d),
            (_, FieldDescriptor::CyclotomicReal(d)) | (_, FieldDescriptor::RayQuaternion(d)) if d <= 2 => 2,
            (_, FieldDescriptor::CyclotomicReal(d)) | (_, FieldDescriptor::RayQuaternion(d)) => 2 * phi(d),
            (_, FieldDescriptor::SemiDihedralSpecial(n)) => 2 * phi(n),
            (_, FieldDescriptor::MixedCyclotomic(a, b)) => 2 * phi(a) * phi(b),
        };
        per * s.multiplicity as u64
    }

    #[test]
    fn dimension_accounting() {
        for s in ["C12", "D9", "D10", "C5xD3", "C3xD4", "C7xD10", "Q12", "Q16", "SD32", "M32"] {
            let spec = parse(s);
            let r = max_order_class_group(&spec).unwrap();
            let dim: u64 = r.summands.iter().map(|x| algebra_dimension(&spec, x)).sum();
            // Q(i) at d = 2 has class number 1 and is not listed when n is odd.
            let expected = match spec {
                FamilySpec::Quaternion { n } if n % 2 == 1 => spec.order() - 2,
                _ => spec.order(),
            };
            assert_eq!(dim, expected, "{s}");
        }
    }

    #[test]
    fn multiplicities() {
        let odd = max_order_class_group(&parse("C5xD3")).unwrap();
        assert!(odd.summands.iter().filter(|s| matches!(s.field, FieldDescriptor::CyclotomicFull(_))).all(|s| s.multiplicity == 2));
        let even = max_order_class_group(&parse("C5xD4")).unwrap();
        assert!(even.summands.iter().filter(|s| matches!(s.field, FieldDescriptor::CyclotomicFull(_))).all(|s| s.multiplicity == 4));
        assert!(max_order_class_group(&parse("C3xD3")).is_err());
    }

    #[test]
    fn verdicts() {
        let find = |s: &str, key: &str| {
            rationality_reports(&parse(s)).unwrap().into_iter().find(|v| v.statement.contains(key)).unwrap().verdict
        };
        assert_eq!(find("D9", "stably rational iff"), Verdict::True);
        assert_eq!(find("Q16", "invertible"), Verdict::True);
        assert_eq!(find("SD32", "invertible"), Verdict::Unknown);
        assert_eq!(find("C23", "T(π) = 0"), Verdict::False);
        assert_eq!(find("D8", "flabby and coflabby"), Verdict::True);
        let a = rationality_reports(&parse("M64")).unwrap();
        assert_eq!(a, rationality_reports(&parse("M64")).unwrap());
    }
}
