//! Deterministic test corpus of lattices over small groups.

use std::sync::Arc;

use crate::arith::divisors;
use crate::cyclo::cyclotomic;
use crate::error::Result;
use crate::groups::{parse_group, FiniteGroup};
use crate::homalg::kernel_basis;
use crate::lattices::{cyclotomic_quotient, quotient_lattice, sublattice, PiLattice};
use crate::mat::IMat;

/// Corpus size per group.
pub const CORPUS_SIZE: usize = 20;

/// Groups carrying a corpus.
pub const CORPUS_GROUPS: [&str; 10] = ["C2", "C3", "C4", "C6", "D3", "D4", "D5", "Q8", "Q12", "D6"];

/// `I = ker(M -> Z)` for the augmentation sending every basis vector to 1, and its dual quotient
/// `M / Z·(sum of basis vectors)`.
fn augmentation_pair(p: &PiLattice) -> Result<Option<(PiLattice, PiLattice)>> {
    let r = p.rank();
    if r < 2 {
        return Ok(None);
    }
    let ones = IMat::from_rows_with(vec![vec![1; r]], r);
    let i = sublattice(p, &kernel_basis(&ones)?)?.with_label(format!("I({})", p.label()));
    let (j, _) = quotient_lattice(p, &ones.transpose())?;
    Ok(Some((i, j.with_label(format!("J({})", p.label())))))
}

/// Nondecreasing index tuples of the given length, in lexicographic order.
fn multisets(k: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for t in multisets(k, len - 1) {
        let from = t.last().copied().unwrap_or(0);
        for i in from..k {
            let mut next = t.clone();
            next.push(i);
            out.push(next);
        }
    }
    out.sort();
    out
}

/// [`CORPUS_SIZE`] pairwise distinct lattices of rank at most `max(2|π|, 4)`, in a fixed order:
/// trivial, sign, regular, coset lattices, augmentation ideals and their duals, cyclotomic
/// quotients, a twist and a tensor product, then direct sums of these in index order.
pub fn corpus(group: Arc<FiniteGroup>) -> Result<Vec<PiLattice>> {
    let g = group.as_ref();
    let cap = (2 * g.order()).max(4);
    let mut out: Vec<PiLattice> = Vec::new();
    let mut push = |m: PiLattice| {
        if out.len() < CORPUS_SIZE && m.rank() > 0 && m.rank() <= cap && !out.iter().any(|x| x.same_matrices(&m)) {
            out.push(m);
        }
    };
    let triv = PiLattice::trivial(group.clone());
    let sign = PiLattice::sign(group.clone()).ok();
    let reg = PiLattice::regular(group.clone());
    push(triv.clone());
    if let Some(s) = &sign {
        push(s.clone());
    }
    push(reg.clone());
    let mut perms = Vec::new();
    for h in g.subgroups().representatives() {
        if h.order() > 1 && h.order() < g.order() {
            perms.push(PiLattice::permutation(group.clone(), &h.elements)?.with_label(format!("Z[π/{}]", h.describe(g))));
        }
    }
    for p in perms.iter().take(3) {
        push(p.clone());
    }
    let mut aug = Vec::new();
    for p in std::iter::once(&reg).chain(perms.iter().take(2)) {
        if let Some(pair) = augmentation_pair(p)? {
            aug.push(pair);
        }
    }
    for (i, j) in &aug {
        push(i.clone());
        push(j.clone());
    }
    if let Some(s) = g.sigma() {
        let ord = g.element_order(s) as u64;
        for d in divisors(ord).into_iter().filter(|&d| d > 1) {
            let (q, _) = cyclotomic_quotient(&reg, &cyclotomic(d), Some(s))?;
            push(q.with_label(format!("Zπ/Φ{d}(σ)")));
        }
    }
    if g.is_epsilon_group() {
        if let Some((i, _)) = aug.first() {
            push(i.star_twist()?.with_label("I*"));
        }
    }
    if let (Some(s), Some((i, _))) = (&sign, aug.first()) {
        push(s.tensor(i)?.with_label("Z- (x) I"));
    }
    for p in perms.iter().skip(3) {
        push(p.clone());
    }
    let base = out.clone();
    let k = base.len();
    let sum = |parts: &[&PiLattice]| -> Result<PiLattice> {
        let label = parts.iter().map(|p| p.label()).collect::<Vec<_>>().join(" + ");
        Ok(PiLattice::direct_sum_all(group.clone(), &parts.iter().map(|&p| p.clone()).collect::<Vec<_>>())?
            .with_label(label))
    };
    for size in 2..=4 {
        for tuple in multisets(k, size) {
            let parts: Vec<&PiLattice> = tuple.iter().map(|&i| &base[i]).collect();
            if out.len() < CORPUS_SIZE && parts.iter().map(|p| p.rank()).sum::<usize>() <= cap {
                out.push(sum(&parts)?);
            }
        }
    }
    Ok(out)
}

/// The corpus of every group in [`CORPUS_GROUPS`].
pub fn full_corpus() -> Result<Vec<(String, Vec<PiLattice>)>> {
    CORPUS_GROUPS
        .iter()
        .map(|s| Ok((s.to_string(), corpus(Arc::new(parse_group(s)?))?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid_and_deterministic() {
        for s in CORPUS_GROUPS {
            let g = Arc::new(parse_group(s).unwrap());
            let a = corpus(g.clone()).unwrap();
            let b = corpus(g).unwrap();
            assert_eq!(a.len(), CORPUS_SIZE, "{s}");
            for (x, y) in a.iter().zip(&b) {
                x.validate().unwrap();
                assert!(x.same_matrices(y));
            }
        }
    }
}
