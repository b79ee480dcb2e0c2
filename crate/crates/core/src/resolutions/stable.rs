use std::sync::Arc;

use crate::error::Result;
use crate::groups::{Elem, FiniteGroup};
use crate::homalg::{find_isomorphism, IsoCertificate, IsoSearch};
use crate::lattices::{cosets, fixed_points, PiLattice};
use crate::par;

const MAX_CANDIDATES: usize = 4096;

/// `M ⊕ P1 ≅ P2`, with `P1` and `P2` given by the subgroups of their coset summands.
#[derive(Clone, Debug)]
pub struct StablePermutationCertificate {
    pub complement: Vec<Vec<Elem>>,
    pub target: Vec<Vec<Elem>>,
    pub certificate: IsoCertificate,
}

impl StablePermutationCertificate {
    pub fn complement_lattice(&self, g: Arc<FiniteGroup>) -> Result<PiLattice> {
        sum_of(g, &self.complement)
    }

    pub fn target_lattice(&self, g: Arc<FiniteGroup>) -> Result<PiLattice> {
        sum_of(g, &self.target)
    }
}

fn sum_of(g: Arc<FiniteGroup>, subs: &[Vec<Elem>]) -> Result<PiLattice> {
    let parts = subs.iter().map(|h| PiLattice::permutation(g.clone(), h)).collect::<Result<Vec<_>>>()?;
    PiLattice::direct_sum_all(g, &parts)
}

/// Multisets (non-increasing index sequences) of items with the given weights and exact total.
fn multisets(weights: &[usize], total: usize, max_index: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if out.len() >= MAX_CANDIDATES {
        return;
    }
    if total == 0 {
        out.push(prefix.clone());
        return;
    }
    for i in (0..max_index).rev() {
        if weights[i] <= total {
            prefix.push(i);
            multisets(weights, total - weights[i], i + 1, prefix, out);
            prefix.pop();
        }
    }
}

/// Number of `H`-orbits on `π/K`, the rank of `Z[π/K]^H`.
fn orbit_count(g: &FiniteGroup, h: &[Elem], k: &[Elem]) -> usize {
    let (reps, coset_of) = cosets(g, k);
    let mut seen = vec![false; reps.len()];
    let mut count = 0;
    for start in 0..reps.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        for &x in h {
            seen[coset_of[g.mul(x, reps[start])]] = true;
        }
    }
    count
}

/// Searches complements `P1` of rank at most `budget` and targets `P2` for `M ⊕ P1 ≅ P2`.
pub fn certify_stably_permutation(m: &PiLattice, budget: u32, seed: u64) -> Result<Option<StablePermutationCertificate>> {
    let g = m.group_arc().clone();
    let reps: Vec<Vec<Elem>> = g.subgroups().representatives().map(|h| h.elements.clone()).collect();
    let weights: Vec<usize> = reps.iter().map(|h| g.order() / h.len()).collect();
    let orbits: Vec<Vec<usize>> =
        reps.iter().map(|h| reps.iter().map(|k| orbit_count(&g, h, k)).collect()).collect();
    let m_fixed: Vec<usize> =
        reps.iter().map(|h| fixed_points(m, h).map(|f| f.cols())).collect::<Result<Vec<_>>>()?;
    let profile = |multi: &[usize]| -> Vec<usize> {
        (0..reps.len()).map(|h| multi.iter().map(|&k| orbits[h][k]).sum()).collect()
    };
    let mut candidates: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    'outer: for extra in 0..=budget as usize {
        let mut p1s = Vec::new();
        multisets(&weights, extra, reps.len(), &mut Vec::new(), &mut p1s);
        for p1 in p1s {
            let mut want = profile(&p1);
            for (w, f) in want.iter_mut().zip(&m_fixed) {
                *w += f;
            }
            let mut p2s = Vec::new();
            multisets(&weights, m.rank() + extra, reps.len(), &mut Vec::new(), &mut p2s);
            for p2 in p2s {
                if profile(&p2) == want {
                    candidates.push((p1.clone(), p2));
                    if candidates.len() >= MAX_CANDIDATES {
                        break 'outer;
                    }
                }
            }
        }
    }
    let subs = |idx: &[usize]| -> Vec<Vec<Elem>> { idx.iter().map(|&i| reps[i].clone()).collect() };
    let results = par::try_map(&candidates, |(p1, p2)| -> Result<Option<StablePermutationCertificate>> {
        let (c1, c2) = (subs(p1), subs(p2));
        let left = m.direct_sum(&sum_of(g.clone(), &c1)?)?;
        let right = sum_of(g.clone(), &c2)?;
        Ok(match find_isomorphism(&left, &right, budget.max(1), seed)? {
            IsoSearch::Found(cert) => {
                Some(StablePermutationCertificate { complement: c1, target: c2, certificate: *cert })
            }
            IsoSearch::Inconclusive => None,
        })
    })?;
    Ok(results.into_iter().flatten().next())
}
