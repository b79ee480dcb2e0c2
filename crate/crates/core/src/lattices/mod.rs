//! π-lattices as integer matrix representations, their constructors and functors.

mod io;
mod morphism;
mod quotient;

use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groups::{Elem, FamilySpec, FiniteGroup};
use crate::homalg::{inverse_unimodular, is_unimodular};
use crate::mat::IMat;

pub use io::LatticeFile;
pub use morphism::LatticeMorphism;
pub use quotient::{cyclotomic_quotient, fixed_points, quotient_lattice, sublattice};

/// Lattice over the integral group ring of a finite group.
#[derive(Clone)]
pub struct PiLattice {
    group: Arc<FiniteGroup>,
    rank: usize,
    gens: Vec<IMat>,
    label: String,
    elements: Arc<OnceLock<Vec<IMat>>>,
}

impl fmt::Debug for PiLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PiLattice({} over {}, rank {})", self.label, self.group.family(), self.rank)
    }
}

/// Same multiplication table.
pub fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    if std::ptr::eq(a, b) {
        return true;
    }
    let n = a.order();
    n == b.order()
        && a.generators().len() == b.generators().len()
        && a.generators().iter().zip(b.generators()).all(|(x, y)| x.1 == y.1)
        && (0..n).all(|x| (0..n).all(|y| a.mul(x, y) == b.mul(x, y)))
}

fn element_actions(group: &FiniteGroup, rank: usize, gens: &[IMat], check: bool) -> Result<Vec<IMat>> {
    let n = group.order();
    let mut acts: Vec<Option<IMat>> = vec![None; n];
    acts[group.identity()] = Some(IMat::identity(rank));
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        for ((_, s), m) in group.generators().iter().zip(gens) {
            let y = group.mul(*s, x);
            let prod = m.mul(acts[x].as_ref().expect("visited"))?;
            match &acts[y] {
                Some(existing) => {
                    if check && existing != &prod {
                        return Err(Error::InvalidParameters(format!(
                            "action violates a relation at {}",
                            group.label(y)
                        )));
                    }
                }
                None => {
                    acts[y] = Some(prod);
                    queue.push_back(y);
                }
            }
        }
    }
    acts.into_iter()
        .map(|a| a.ok_or_else(|| Error::InvalidParameters("generators do not generate the group".into())))
        .collect()
}

/// Left cosets `xH` ordered by least element: representatives and the coset index of each element.
pub fn cosets(group: &FiniteGroup, sub: &[Elem]) -> (Vec<Elem>, Vec<usize>) {
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] == usize::MAX {
            for &h in sub {
                coset_of[group.mul(x, h)] = reps.len();
            }
            reps.push(x);
        }
    }
    (reps, coset_of)
}

fn perm_of(group: &FiniteGroup, f: impl Fn(Elem) -> Elem) -> Vec<usize> {
    (0..group.order()).map(f).collect()
}

impl PiLattice {
    fn raw(group: Arc<FiniteGroup>, rank: usize, gens: Vec<IMat>, label: impl Into<String>) -> Self {
        PiLattice { group, rank, gens, label: label.into(), elements: Arc::new(OnceLock::new()) }
    }

    /// Lattice from generator matrices, one per entry of `group.generators()`, fully validated.
    pub fn from_generators(group: Arc<FiniteGroup>, gens: Vec<IMat>, label: impl Into<String>) -> Result<Self> {
        if gens.len() != group.generators().len() {
            return Err(Error::Dimension(format!(
                "{} generator matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        let rank = gens.first().map_or(0, IMat::rows);
        for m in &gens {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::Dimension("generator matrices must be square of equal size".into()));
            }
            if rank > 0 && !is_unimodular(m)? {
                return Err(Error::InvalidParameters("generator matrix is not invertible over Z".into()));
            }
        }
        let acts = element_actions(&group, rank, &gens, true)?;
        let lat = Self::raw(group, rank, gens, label);
        let _ = lat.elements.set(acts);
        Ok(lat)
    }

    /// Rank 1, trivial action.
    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let gens = vec![IMat::identity(1); group.generators().len()];
        Self::raw(group, 1, gens, "Z")
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let gens = vec![IMat::zeros(0, 0); group.generators().len()];
        Self::raw(group, 0, gens, "0")
    }

    /// Rank 1 via the sign character `eps`; a cyclic group of even order uses its unique character of order 2.
    pub fn sign(group: Arc<FiniteGroup>) -> Result<Self> {
        let even_cyclic = matches!(group.family(), FamilySpec::Cyclic { n } if n % 2 == 0);
        let gens = group
            .generators()
            .iter()
            .map(|&(_, s)| {
                let v = if even_cyclic { -1 } else { group.epsilon(s)? };
                Ok(IMat::scalar(1, v))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::raw(group, 1, gens, "Z-"))
    }

    /// Left regular lattice: `g e_h = e_{gh}`.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let gens = group
            .generators()
            .iter()
            .map(|&(_, s)| IMat::permutation(&perm_of(&group, |h| group.mul(s, h))))
            .collect();
        let n = group.order();
        Self::raw(group, n, gens, "Zπ")
    }

    /// Coset lattice `Z[π/H]`, cosets ordered by their least element.
    pub fn permutation(group: Arc<FiniteGroup>, sub: &[Elem]) -> Result<Self> {
        let closed = group.closure(sub);
        if closed.len() != sub.len() {
            return Err(Error::InvalidParameters("permutation lattice needs a subgroup".into()));
        }
        let (reps, coset_of) = cosets(&group, sub);
        let count = reps.len();
        let gens = group
            .generators()
            .iter()
            .map(|&(_, s)| IMat::permutation(&reps.iter().map(|&r| coset_of[group.mul(s, r)]).collect::<Vec<_>>()))
            .collect();
        let labels: Vec<String> = group.greedy_generators(sub).iter().map(|&x| group.label(x).to_string()).collect();
        Ok(Self::raw(group, count, gens, format!("Z[π/<{}>]", labels.join(","))))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Generator matrices aligned with `group().generators()`.
    pub fn generator_matrices(&self) -> &[IMat] {
        &self.gens
    }

    pub fn elements(&self) -> &[IMat] {
        self.elements.get_or_init(|| {
            element_actions(&self.group, self.rank, &self.gens, false).expect("lattice action is consistent")
        })
    }

    /// Matrix of a group element.
    pub fn action(&self, g: Elem) -> &IMat {
        &self.elements()[g]
    }

    /// Exhaustive check that the element matrices form a homomorphism.
    pub fn validate(&self) -> Result<()> {
        element_actions(&self.group, self.rank, &self.gens, true)?;
        let acts = self.elements();
        let n = self.group.order();
        for a in 0..n {
            for b in 0..n {
                if acts[a].mul(&acts[b])? != acts[self.group.mul(a, b)] {
                    return Err(Error::InvalidParameters("action is not multiplicative".into()));
                }
            }
        }
        Ok(())
    }

    /// Same action matrices, possibly over an equal but separately built group.
    pub fn same_matrices(&self, other: &PiLattice) -> bool {
        same_group(&self.group, &other.group) && self.gens == other.gens
    }

    fn require_same(&self, other: &PiLattice) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn map_gens(&self, label: String, f: impl Fn(Elem, &IMat) -> Result<IMat>) -> Result<Self> {
        let gens = self
            .group
            .generators()
            .iter()
            .zip(&self.gens)
            .map(|(&(_, s), m)| f(s, m))
            .collect::<Result<Vec<_>>>()?;
        let rank = gens.first().map_or(self.rank, IMat::rows);
        Ok(Self::raw(self.group.clone(), rank, gens, label))
    }

    pub fn direct_sum(&self, other: &PiLattice) -> Result<Self> {
        self.require_same(other)?;
        let gens = self.gens.iter().zip(&other.gens).map(|(a, b)| a.block_diag(b)).collect();
        Ok(Self::raw(self.group.clone(), self.rank + other.rank, gens, format!("{} + {}", self.label, other.label)))
    }

    pub fn direct_sum_all(group: Arc<FiniteGroup>, parts: &[PiLattice]) -> Result<Self> {
        parts.iter().try_fold(Self::zero(group), |acc, p| acc.direct_sum(p))
    }

    /// Tensor product over Z with diagonal action.
    pub fn tensor(&self, other: &PiLattice) -> Result<Self> {
        self.require_same(other)?;
        let gens = self.gens.iter().zip(&other.gens).map(|(a, b)| a.kron(b)).collect::<Result<Vec<_>>>()?;
        Ok(Self::raw(self.group.clone(), self.rank * other.rank, gens, format!("{} ⊗ {}", self.label, other.label)))
    }

    /// `Hom_Z(M, Z)` with `g -> rho(g^{-1})^T`.
    pub fn dual(&self) -> Result<Self> {
        let label = match self.label.strip_suffix("^0") {
            Some(base) => base.to_string(),
            None => format!("{}^0", self.label),
        };
        self.map_gens(label, |_, m| {
            if m.rows() == 0 {
                Ok(m.clone())
            } else {
                Ok(inverse_unimodular(m)?.transpose())
            }
        })
    }

    /// `lambda * x = eps(lambda) (lambda x)`.
    pub fn star_twist(&self) -> Result<Self> {
        let label = match self.label.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{}*", self.label),
        };
        let g = self.group.clone();
        self.map_gens(label, |s, m| m.scale(g.epsilon(s)?))
    }

    /// Restriction to the subgroup with the given elements.
    pub fn restrict(&self, sub: &[Elem]) -> Result<Self> {
        let (h, emb) = self.group.subgroup_as_group(sub)?;
        let gens = h.generators().iter().map(|&(_, s)| self.action(emb[s]).clone()).collect();
        Ok(Self::raw(Arc::new(h), self.rank, gens, format!("Res {}", self.label)))
    }

    /// Sum of `rho(g)` over the given elements.
    pub fn norm(&self, elems: &[Elem]) -> Result<IMat> {
        elems.iter().try_fold(IMat::zeros(self.rank, self.rank), |acc, &g| acc.add(self.action(g)))
    }

    /// Matrix of `f(rho(sigma))`.
    pub fn eval_poly(&self, coeffs: &[i64], s: Elem) -> Result<IMat> {
        let mut acc = IMat::zeros(self.rank, self.rank);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&self.action(self.group.pow(s, i as i64)).scale(c)?)?;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_group;

    fn grp(s: &str) -> Arc<FiniteGroup> {
        Arc::new(parse_group(s).unwrap())
    }

    #[test]
    fn constructors() {
        let c2 = grp("C2");
        let r = PiLattice::regular(c2.clone());
        assert_eq!(r.generator_matrices()[0], IMat::from_rows(vec![vec![0, 1], vec![1, 0]]));
        assert_eq!(PiLattice::sign(c2).unwrap().generator_matrices()[0], IMat::scalar(1, -1));
        let d3 = grp("D3");
        let tau = d3.generator("tau").unwrap();
        let p = PiLattice::permutation(d3.clone(), &[0, tau]).unwrap();
        assert_eq!(p.rank(), 3);
        p.validate().unwrap();
        PiLattice::regular(d3.clone()).validate().unwrap();
        assert!(PiLattice::sign(grp("M16")).is_err());
    }

    #[test]
    fn functors() {
        let d3 = grp("D3");
        let r = PiLattice::regular(d3.clone());
        let s = r.star_twist().unwrap();
        s.validate().unwrap();
        assert!(s.star_twist().unwrap().same_matrices(&r));
        assert!(r.dual().unwrap().dual().unwrap().same_matrices(&r));
        let sum = r.direct_sum(&PiLattice::trivial(d3.clone())).unwrap();
        assert_eq!(sum.rank(), 7);
        let a = sum.star_twist().unwrap();
        let b = r.star_twist().unwrap().direct_sum(&PiLattice::trivial(d3.clone()).star_twist().unwrap()).unwrap();
        assert!(a.same_matrices(&b));
        let t = PiLattice::sign(d3.clone()).unwrap().tensor(&r).unwrap();
        t.validate().unwrap();
        let res = r.restrict(&[0, d3.generator("tau").unwrap()]).unwrap();
        assert_eq!(res.group().order(), 2);
        res.validate().unwrap();
    }

    #[test]
    fn bad_generators_rejected() {
        let c3 = grp("C3");
        let bad = PiLattice::from_generators(c3.clone(), vec![IMat::scalar(1, -1)], "x");
        assert!(bad.is_err());
        let ok = PiLattice::from_generators(c3, vec![IMat::from_rows(vec![vec![0, -1], vec![1, -1]])], "x");
        assert!(ok.is_ok());
    }
}
