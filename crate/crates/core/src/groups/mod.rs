//! Finite groups stored by multiplication table, with the family constructors
//! `C_n`, `D_m`, `Q_{4n}`, `C_n x D_m`, `SD_{2n}`, `M_{2n}`.

mod classify;
mod subgroups;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use classify::{condition_1prime, theorem14_classify, Classification};
pub use subgroups::{enumerate_subgroups, sylow_profile, Subgroup, SubgroupLattice, SylowProfile};

/// Element index inside a [`FiniteGroup`].
pub type Elem = usize;

/// Largest supported group order.
pub const MAX_ORDER: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    Cyclic { n: u64 },
    Dihedral { n: u64 },
    /// Order `4n`.
    Quaternion { n: u64 },
    CyclicTimesDihedral { n: u64, m: u64 },
    /// Order `2 * 2^t`.
    SemiDihedral { t: u32 },
    /// Order `2 * 2^t`.
    Modular { t: u32 },
    Generic { mul: Vec<Vec<usize>> },
}

impl FamilySpec {
    pub fn order(&self) -> u64 {
        match self {
            FamilySpec::Cyclic { n } => *n,
            FamilySpec::Dihedral { n } => 2 * n,
            FamilySpec::Quaternion { n } => 4 * n,
            FamilySpec::CyclicTimesDihedral { n, m } => 2 * n * m,
            FamilySpec::SemiDihedral { t } | FamilySpec::Modular { t } => 2u64 << t,
            FamilySpec::Generic { mul } => mul.len() as u64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_params()?;
        if self.order() as usize > MAX_ORDER {
            return Err(Error::InvalidParameters("group order exceeds the supported maximum".into()));
        }
        Ok(())
    }

    /// Parameter checks without the order cap; enough for purely arithmetic questions.
    pub fn validate_params(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::InvalidParameters(s.to_string()));
        match self {
            FamilySpec::Cyclic { n } | FamilySpec::Dihedral { n } if *n == 0 => bad("parameter must be positive"),
            FamilySpec::Quaternion { n } if *n < 2 => bad("Quaternion requires n >= 2"),
            FamilySpec::CyclicTimesDihedral { n, m } if *n == 0 || *m == 0 => bad("parameters must be positive"),
            FamilySpec::SemiDihedral { t } | FamilySpec::Modular { t } if *t < 3 || *t > 9 => {
                bad("SemiDihedral/Modular require 3 <= t <= 9")
            }
            FamilySpec::Generic { mul } if mul.is_empty() => bad("empty multiplication table"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Cyclic { n } => write!(f, "C{n}"),
            FamilySpec::Dihedral { n } => write!(f, "D{n}"),
            FamilySpec::Quaternion { n } => write!(f, "Q{}", 4 * n),
            FamilySpec::CyclicTimesDihedral { n, m } => write!(f, "C{n}xD{m}"),
            FamilySpec::SemiDihedral { t } => write!(f, "SD{}", 2u64 << t),
            FamilySpec::Modular { t } => write!(f, "M{}", 2u64 << t),
            FamilySpec::Generic { mul } => write!(f, "G{}", mul.len()),
        }
    }
}

fn log2_exact(n: u64) -> Option<u32> {
    (n.is_power_of_two()).then(|| n.trailing_zeros())
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let num = |t: &str| -> Result<u64> {
            t.parse::<u64>().map_err(|_| Error::Parse(format!("bad number in group spec {s:?}")))
        };
        let spec = if let Some((a, b)) = s.split_once(['x', 'X']) {
            let n = num(a.strip_prefix('C').ok_or_else(|| Error::Parse(format!("expected C<n>xD<m>: {s:?}")))?)?;
            let m = num(b.strip_prefix('D').ok_or_else(|| Error::Parse(format!("expected C<n>xD<m>: {s:?}")))?)?;
            FamilySpec::CyclicTimesDihedral { n, m }
        } else if let Some(r) = s.strip_prefix("SD") {
            let o = num(r)?;
            let t = log2_exact(o).filter(|&t| t >= 4).ok_or_else(|| Error::InvalidParameters(format!("SD order {o}")))?;
            FamilySpec::SemiDihedral { t: t - 1 }
        } else if let Some(r) = s.strip_prefix('M') {
            let o = num(r)?;
            let t = log2_exact(o).filter(|&t| t >= 4).ok_or_else(|| Error::InvalidParameters(format!("M order {o}")))?;
            FamilySpec::Modular { t: t - 1 }
        } else if let Some(r) = s.strip_prefix('Q') {
            let o = num(r)?;
            if o % 4 != 0 {
                return Err(Error::InvalidParameters(format!("quaternion order {o} not divisible by 4")));
            }
            FamilySpec::Quaternion { n: o / 4 }
        } else if let Some(r) = s.strip_prefix('D') {
            FamilySpec::Dihedral { n: num(r)? }
        } else if let Some(r) = s.strip_prefix('C') {
            FamilySpec::Cyclic { n: num(r)? }
        } else {
            return Err(Error::Parse(format!("unknown group spec {s:?}")));
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Finite group by full multiplication table. Element 0 is the identity.
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inverses: Vec<Elem>,
    generators: Vec<(String, Elem)>,
    family: FamilySpec,
    labels: Vec<String>,
    sigma: Option<Elem>,
    subgroups: OnceLock<SubgroupLattice>,
    epsilon: OnceLock<std::result::Result<Vec<i8>, String>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.family, self.order)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.mul == other.mul && self.generators == other.generators
    }
}

impl Eq for FiniteGroup {}

/// Normal forms `s^i t^j` for the metacyclic families with `t s^b = s^{k b} t`, `t^2 = s^e`.
struct Metacyclic {
    n: u64,
    k: i64,
    tau_sq: u64,
}

impl Metacyclic {
    fn mul(&self, (i, j): (u64, u64), (p, l): (u64, u64)) -> (u64, u64) {
        let n = self.n as i64;
        let twist = if j == 1 { self.k.rem_euclid(n) } else { 1 };
        let mut e = (i as i64 + twist * p as i64).rem_euclid(n);
        let mut t = j + l;
        if t >= 2 {
            t -= 2;
            e = (e + self.tau_sq as i64).rem_euclid(n);
        }
        (e as u64, t)
    }
}

fn sup(i: u64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    i.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

fn word(parts: &[(&str, u64)]) -> String {
    let s: String = parts
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}{}", sup(*e)) })
        .collect();
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

impl FiniteGroup {
    fn from_parts(
        order: usize,
        mul: Vec<u32>,
        generators: Vec<(String, Elem)>,
        family: FamilySpec,
        labels: Vec<String>,
        sigma: Option<Elem>,
    ) -> Self {
        let mut inverses = vec![0; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == 0 {
                    inverses[a] = b;
                    break;
                }
            }
        }
        FiniteGroup {
            order,
            mul,
            inverses,
            generators,
            family,
            labels,
            sigma,
            subgroups: OnceLock::new(),
            epsilon: OnceLock::new(),
        }
    }

    fn metacyclic(family: FamilySpec, n: u64, k: i64, tau_sq: u64, with_tau: bool) -> Self {
        let tcount = if with_tau { 2 } else { 1 };
        let order = (n * tcount) as usize;
        let idx = |(i, j): (u64, u64)| (j * n + i) as usize;
        let m = Metacyclic { n, k, tau_sq };
        let mut mul = vec![0u32; order * order];
        let mut labels = Vec::with_capacity(order);
        for a in 0..order as u64 {
            let ea = (a % n, a / n);
            labels.push(word(&[("σ", ea.0), ("τ", ea.1)]));
            for b in 0..order as u64 {
                let eb = (b % n, b / n);
                mul[a as usize * order + b as usize] = idx(m.mul(ea, eb)) as u32;
            }
        }
        let sigma = idx((1 % n, 0));
        let mut generators = vec![("sigma".to_string(), sigma)];
        if with_tau {
            generators.push(("tau".to_string(), idx((0, 1))));
        }
        FiniteGroup::from_parts(order, mul, generators, family, labels, Some(sigma))
    }

    fn cyclic_times_dihedral(n: u64, m: u64) -> Self {
        let order = (2 * n * m) as usize;
        let idx = |i: u64, r: u64, j: u64| ((j * n + r) * m + i) as usize;
        let split = |a: u64| (a % m, (a / m) % n, a / (m * n));
        let mut mul = vec![0u32; order * order];
        let mut labels = Vec::with_capacity(order);
        for a in 0..order as u64 {
            let (i, r, j) = split(a);
            labels.push(word(&[("σ", i), ("ρ", r), ("τ", j)]));
            for b in 0..order as u64 {
                let (p, s, l) = split(b);
                let sp = if j == 1 { (m - p) % m } else { p };
                mul[a as usize * order + b as usize] = idx((i + sp) % m, (r + s) % n, (j + l) % 2) as u32;
            }
        }
        let sigma = idx(1 % m, 0, 0);
        let generators = vec![
            ("sigma".to_string(), sigma),
            ("rho".to_string(), idx(0, 1 % n, 0)),
            ("tau".to_string(), idx(0, 0, 1)),
        ];
        FiniteGroup::from_parts(
            order,
            mul,
            generators,
            FamilySpec::CyclicTimesDihedral { n, m },
            labels,
            Some(sigma),
        )
    }

    /// Group from an arbitrary table; elements are relabeled so the identity is 0.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 || n > MAX_ORDER || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidParameters("malformed multiplication table".into()));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidParameters("no identity element".into()))?;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(0, e);
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = table[perm[a]][perm[b]];
                mul[a * n + b] = perm.iter().position(|&x| x == c).unwrap() as u32;
            }
        }
        let relabeled: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| mul[a * n + b] as usize).collect()).collect();
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        let mut g = FiniteGroup::from_parts(n, mul, vec![], FamilySpec::Generic { mul: relabeled }, labels, None);
        g.generators = g.greedy_generators(&(0..n).collect::<Vec<_>>()).into_iter().enumerate()
            .map(|(i, x)| (format!("g{i}"), x))
            .collect();
        g.validate()?;
        Ok(g)
    }

    /// Subgroup given by elements as a group in its own right, with the embedding.
    pub fn subgroup_as_group(&self, elems: &[Elem]) -> Result<(FiniteGroup, Vec<Elem>)> {
        let mut elems = elems.to_vec();
        elems.sort_unstable();
        if elems.first() != Some(&0) {
            return Err(Error::InvalidParameters("subgroup must contain the identity".into()));
        }
        let pos = |x: Elem| elems.binary_search(&x).ok();
        let k = elems.len();
        let mut mul = vec![0u32; k * k];
        for (a, &x) in elems.iter().enumerate() {
            for (b, &y) in elems.iter().enumerate() {
                let p = pos(self.mul(x, y)).ok_or_else(|| Error::InvalidParameters("not closed".into()))?;
                mul[a * k + b] = p as u32;
            }
        }
        let table: Vec<Vec<usize>> = (0..k).map(|a| (0..k).map(|b| mul[a * k + b] as usize).collect()).collect();
        let labels = elems.iter().map(|&x| self.labels[x].clone()).collect();
        let mut g = FiniteGroup::from_parts(k, mul, vec![], FamilySpec::Generic { mul: table }, labels, None);
        let gens = self.greedy_generators(&elems);
        g.generators = gens
            .iter()
            .map(|&x| (self.labels[x].clone(), pos(x).unwrap()))
            .collect();
        if let Some(s) = self.sigma {
            // keep the distinguished cyclic subgroup when its generator survives
            if let Some(p) = pos(s) {
                g.sigma = Some(p);
            }
        }
        Ok((g, elems))
    }

    /// A small generating set of the subgroup spanned by `elems`, chosen greedily by descending order.
    pub fn greedy_generators(&self, elems: &[Elem]) -> Vec<Elem> {
        let mut cand: Vec<Elem> = elems.iter().copied().filter(|&x| x != 0).collect();
        cand.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens: Vec<Elem> = Vec::new();
        let mut span = vec![0usize];
        for x in cand {
            if span.binary_search(&x).is_ok() {
                continue;
            }
            gens.push(x);
            span = self.closure(&gens);
            if span.len() == elems.len() {
                break;
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    pub fn inverses(&self) -> &[Elem] {
        &self.inverses
    }

    pub fn generators(&self) -> &[(String, Elem)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<Elem> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, g)| *g)
    }

    pub fn family(&self) -> &FamilySpec {
        &self.family
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    /// Distinguished cyclic normal subgroup generator, when the family has one.
    pub fn sigma(&self) -> Option<Elem> {
        self.sigma
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut r = 0;
        for _ in 0..k.unsigned_abs() {
            r = self.mul(r, base);
        }
        r
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `g a g^{-1}`.
    pub fn conj(&self, g: Elem, a: Elem) -> Elem {
        self.mul(self.mul(g, a), self.inv(g))
    }

    /// Sorted subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exhaustive table checks: identity, inverses, associativity, generation, family relations.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        let fail = |s: String| Err(Error::InvalidParameters(s));
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return fail(format!("identity fails at {a}"));
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return fail(format!("no inverse for {a}"));
            }
            let mut row = vec![false; n];
            for b in 0..n {
                row[self.mul(a, b)] = true;
            }
            if row.iter().any(|x| !x) {
                return fail(format!("row {a} is not a permutation"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return fail(format!("associativity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        let gens: Vec<Elem> = self.generators.iter().map(|(_, g)| *g).collect();
        if self.closure(&gens).len() != n {
            return fail("generators do not generate".into());
        }
        self.check_presentation()
    }

    /// Defining relations of the family presentation.
    pub fn check_presentation(&self) -> Result<()> {
        let s = self.generator("sigma");
        let t = self.generator("tau");
        let ok = |c: bool, what: &str| {
            if c {
                Ok(())
            } else {
                Err(Error::InvalidParameters(format!("relation fails: {what}")))
            }
        };
        let tw = |k: i64| -> bool {
            let (s, t) = (s.unwrap(), t.unwrap());
            self.mul(self.mul(self.inv(t), s), t) == self.pow(s, k)
        };
        match self.family {
            FamilySpec::Cyclic { n } => ok(self.element_order(s.unwrap()) as u64 == n, "sigma^n = 1"),
            FamilySpec::Dihedral { n } => {
                let (s1, t1) = (s.unwrap(), t.unwrap());
                ok(self.element_order(s1) as u64 == n, "sigma^m = 1")?;
                ok(self.pow(t1, 2) == 0, "tau^2 = 1")?;
                ok(tw(-1), "tau^-1 sigma tau = sigma^-1")
            }
            FamilySpec::Quaternion { n } => {
                let (s1, t1) = (s.unwrap(), t.unwrap());
                ok(self.element_order(s1) as u64 == 2 * n, "sigma^2n = 1")?;
                ok(self.pow(t1, 2) == self.pow(s1, n as i64), "sigma^n = tau^2")?;
                ok(self.pow(t1, 4) == 0, "tau^4 = 1")?;
                ok(tw(-1), "tau^-1 sigma tau = sigma^-1")
            }
            FamilySpec::CyclicTimesDihedral { n, m } => {
                let (s1, t1) = (s.unwrap(), t.unwrap());
                let r = self.generator("rho").unwrap();
                ok(self.element_order(s1) as u64 == m, "sigma^m = 1")?;
                ok(self.element_order(r) as u64 == n, "rho^n = 1")?;
                ok(self.pow(t1, 2) == 0, "tau^2 = 1")?;
                ok(self.mul(r, t1) == self.mul(t1, r) && self.mul(r, s1) == self.mul(s1, r), "rho central")?;
                ok(tw(-1), "tau sigma tau^-1 = sigma^-1")
            }
            FamilySpec::SemiDihedral { t: e } | FamilySpec::Modular { t: e } => {
                let n = 1i64 << e;
                let k = if matches!(self.family, FamilySpec::SemiDihedral { .. }) { n / 2 - 1 } else { n / 2 + 1 };
                let (s1, t1) = (s.unwrap(), t.unwrap());
                ok(self.element_order(s1) as i64 == n, "sigma^n = 1")?;
                ok(self.pow(t1, 2) == 0, "tau^2 = 1")?;
                ok(tw(k), "tau^-1 sigma tau = sigma^k")
            }
            FamilySpec::Generic { .. } => Ok(()),
        }
    }

    /// Cached subgroup lattice.
    pub fn subgroups(&self) -> &SubgroupLattice {
        self.subgroups.get_or_init(|| subgroups::compute(self))
    }

    fn epsilon_table(&self) -> std::result::Result<&Vec<i8>, Error> {
        self.epsilon
            .get_or_init(|| {
                let s = self.sigma.ok_or_else(|| "group has no distinguished sigma".to_string())?;
                let inv_s = self.inv(s);
                (0..self.order)
                    .map(|l| {
                        let c = self.conj(l, s);
                        if c == s {
                            Ok(1)
                        } else if c == inv_s {
                            Ok(-1)
                        } else {
                            Err(format!("{} conjugates sigma to {}", self.labels[l], self.labels[c]))
                        }
                    })
                    .collect()
            })
            .as_ref()
            .map_err(|e| Error::NotEpsilonGroup(e.clone()))
    }

    /// Sign of conjugation on the distinguished `sigma`: `l sigma l^{-1} = sigma^{eps(l)}`.
    pub fn epsilon(&self, l: Elem) -> Result<i64> {
        Ok(self.epsilon_table()?[l] as i64)
    }

    pub fn is_epsilon_group(&self) -> bool {
        self.epsilon_table().is_ok()
    }
}

/// Construct a family group.
pub fn build_group(spec: &FamilySpec) -> Result<FiniteGroup> {
    spec.validate()?;
    let g = match spec {
        FamilySpec::Cyclic { n } => FiniteGroup::metacyclic(spec.clone(), *n, 1, 0, false),
        FamilySpec::Dihedral { n } => FiniteGroup::metacyclic(spec.clone(), *n, -1, 0, true),
        FamilySpec::Quaternion { n } => FiniteGroup::metacyclic(spec.clone(), 2 * n, -1, *n, true),
        FamilySpec::CyclicTimesDihedral { n, m } => FiniteGroup::cyclic_times_dihedral(*n, *m),
        FamilySpec::SemiDihedral { t } => {
            let n = 1u64 << t;
            FiniteGroup::metacyclic(spec.clone(), n, (n / 2) as i64 - 1, 0, true)
        }
        FamilySpec::Modular { t } => {
            let n = 1u64 << t;
            FiniteGroup::metacyclic(spec.clone(), n, (n / 2) as i64 + 1, 0, true)
        }
        FamilySpec::Generic { mul } => return FiniteGroup::from_table(mul),
    };
    Ok(g)
}

/// Parse and build in one step.
pub fn parse_group(s: &str) -> Result<FiniteGroup> {
    build_group(&s.parse()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_twelve() {
        let g = build_group(&FamilySpec::Quaternion { n: 3 }).unwrap();
        assert_eq!(g.order(), 12);
        let (s, t) = (g.generator("sigma").unwrap(), g.generator("tau").unwrap());
        assert_eq!(g.element_order(s), 6);
        assert_eq!(g.pow(t, 2), g.pow(s, 3));
        g.validate().unwrap();
    }

    #[test]
    fn semidihedral_relation() {
        let g = build_group(&FamilySpec::SemiDihedral { t: 3 }).unwrap();
        assert_eq!(g.order(), 16);
        let (s, t) = (g.generator("sigma").unwrap(), g.generator("tau").unwrap());
        assert_eq!(g.mul(g.mul(g.inv(t), s), t), g.pow(s, 3));
        g.validate().unwrap();
    }

    #[test]
    fn trivial_and_parse() {
        assert_eq!(build_group(&FamilySpec::Cyclic { n: 1 }).unwrap().order(), 1);
        assert!(build_group(&FamilySpec::Quaternion { n: 1 }).is_err());
        for s in ["C9xD5", "Q12", "SD32", "M16", "D15", "C7"] {
            assert_eq!(s.parse::<FamilySpec>().unwrap().to_string(), s);
        }
        assert_eq!("SD16".parse::<FamilySpec>().unwrap(), FamilySpec::SemiDihedral { t: 3 });
    }

    #[test]
    fn epsilon_values() {
        let d3 = parse_group("D3").unwrap();
        assert_eq!(d3.epsilon(d3.generator("tau").unwrap()).unwrap(), -1);
        assert_eq!(d3.epsilon(d3.generator("sigma").unwrap()).unwrap(), 1);
        let m16 = parse_group("M16").unwrap();
        assert!(matches!(m16.epsilon(m16.generator("tau").unwrap()), Err(Error::NotEpsilonGroup(_))));
    }

    #[test]
    fn generic_table_roundtrip() {
        let d3 = parse_group("D3").unwrap();
        let table: Vec<Vec<usize>> = (0..6).map(|a| (0..6).map(|b| d3.mul(a, b)).collect()).collect();
        let g = FiniteGroup::from_table(&table).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }
}
