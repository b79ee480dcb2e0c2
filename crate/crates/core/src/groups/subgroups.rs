use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Elem, FiniteGroup};
use crate::arith::factorize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Bits(Vec<u64>);

impl Bits {
    fn from_elems(n: usize, elems: &[Elem]) -> Self {
        let mut b = vec![0u64; n.div_ceil(64)];
        for &e in elems {
            b[e / 64] |= 1 << (e % 64);
        }
        Bits(b)
    }

    fn has(&self, e: Elem) -> bool {
        self.0[e / 64] >> (e % 64) & 1 == 1
    }
}

/// Subgroup of a parent [`FiniteGroup`], identified by its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    pub elements: Vec<Elem>,
    pub generators: Vec<Elem>,
    pub cyclic: bool,
    pub normal: bool,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    /// Short human name, e.g. `<σ, τ>` (order 6).
    pub fn describe(&self, g: &FiniteGroup) -> String {
        if self.generators.is_empty() {
            return "1".into();
        }
        let gens: Vec<&str> = self.generators.iter().map(|&x| g.label(x)).collect();
        format!("<{}>", gens.join(", "))
    }
}

/// All subgroups, sorted by (order, elements), with conjugacy classes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubgroupLattice {
    pub subgroups: Vec<Subgroup>,
    /// Index of the class representative for each subgroup.
    pub class_of: Vec<usize>,
    /// Representatives, one per conjugacy class, ascending.
    pub class_reps: Vec<usize>,
}

impl SubgroupLattice {
    pub fn representatives(&self) -> impl Iterator<Item = &Subgroup> {
        self.class_reps.iter().map(move |&i| &self.subgroups[i])
    }

    pub fn whole(&self) -> &Subgroup {
        self.subgroups.last().expect("nonempty lattice")
    }

    pub fn trivial(&self) -> &Subgroup {
        &self.subgroups[0]
    }
}

pub(super) fn compute(g: &FiniteGroup) -> SubgroupLattice {
    let n = g.order();
    let mut index: HashMap<Bits, usize> = HashMap::new();
    let mut found: Vec<(Vec<Elem>, Vec<Elem>)> = Vec::new();
    let mut cyclic_gens: Vec<Elem> = Vec::new();
    let mut add = |elems: Vec<Elem>, gens: Vec<Elem>, found: &mut Vec<(Vec<Elem>, Vec<Elem>)>| -> bool {
        let key = Bits::from_elems(n, &elems);
        if index.contains_key(&key) {
            return false;
        }
        index.insert(key, found.len());
        found.push((elems, gens));
        true
    };
    for x in 0..n {
        let gens = if x == 0 { vec![] } else { vec![x] };
        if add(g.closure(&gens), gens, &mut found) && x != 0 {
            cyclic_gens.push(x);
        }
    }
    let mut head = 0;
    while head < found.len() {
        let (elems, gens) = found[head].clone();
        let bits = Bits::from_elems(n, &elems);
        for &c in &cyclic_gens {
            if bits.has(c) {
                continue;
            }
            let mut ng = gens.clone();
            ng.push(c);
            let closed = g.closure(&ng);
            add(closed, ng, &mut found);
        }
        head += 1;
    }
    found.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    let keys: HashMap<Bits, usize> =
        found.iter().enumerate().map(|(i, (e, _))| (Bits::from_elems(n, e), i)).collect();
    let mut class_of = vec![usize::MAX; found.len()];
    let mut class_reps = Vec::new();
    let mut normal = vec![false; found.len()];
    for i in 0..found.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        class_reps.push(i);
        let mut members = vec![i];
        for x in 0..n {
            let conj: Vec<Elem> = found[i].0.iter().map(|&h| g.conj(x, h)).collect();
            let j = keys[&Bits::from_elems(n, &conj)];
            if !members.contains(&j) {
                members.push(j);
            }
        }
        normal[i] = members.len() == 1;
        for j in members {
            class_of[j] = i;
        }
    }
    let subgroups = found
        .into_iter()
        .enumerate()
        .map(|(i, (elements, _))| {
            let cyclic = elements.iter().any(|&x| g.element_order(x) == elements.len());
            let generators = if cyclic {
                elements.iter().copied().filter(|&x| g.element_order(x) == elements.len()).take(1).collect()
            } else {
                g.greedy_generators(&elements)
            };
            Subgroup { elements, generators, cyclic, normal: normal[i] }
        })
        .collect();
    SubgroupLattice { subgroups, class_of, class_reps }
}

/// Every subgroup of `g` with conjugacy-class representatives.
pub fn enumerate_subgroups(g: &FiniteGroup) -> &SubgroupLattice {
    g.subgroups()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowProfile {
    pub all_sylow_cyclic: bool,
    pub two_sylow_cyclic_or_dihedral: bool,
    pub odd_sylow_cyclic: bool,
}

fn is_dihedral_2group(g: &FiniteGroup, h: &Subgroup) -> bool {
    let n = h.order();
    if n < 4 {
        return false;
    }
    h.elements.iter().filter(|&&a| g.element_order(a) == n / 2).any(|&a| {
        let ca = g.closure(&[a]);
        let ainv = g.inv(a);
        h.elements
            .iter()
            .any(|&b| ca.binary_search(&b).is_err() && g.mul(b, b) == 0 && g.conj(b, a) == ainv)
    })
}

/// Sylow structure from one Sylow subgroup per prime.
pub fn sylow_profile(g: &FiniteGroup) -> SylowProfile {
    let lat = g.subgroups();
    let mut all = true;
    let mut odd = true;
    let mut two = true;
    for (p, e) in factorize(g.order() as u64) {
        let size = p.pow(e) as usize;
        let syl = lat.subgroups.iter().find(|h| h.order() == size).expect("Sylow subgroup exists");
        if !syl.cyclic {
            all = false;
            if p == 2 {
                two = is_dihedral_2group(g, syl);
            } else {
                odd = false;
            }
        }
    }
    SylowProfile { all_sylow_cyclic: all, two_sylow_cyclic_or_dihedral: two, odd_sylow_cyclic: odd }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_group;

    #[test]
    fn counts() {
        assert_eq!(parse_group("C6").unwrap().subgroups().subgroups.len(), 4);
        assert_eq!(parse_group("D3").unwrap().subgroups().subgroups.len(), 6);
        assert_eq!(parse_group("Q8").unwrap().subgroups().subgroups.len(), 6);
    }

    #[test]
    fn sylow() {
        let p = sylow_profile(&parse_group("D15").unwrap());
        assert!(p.all_sylow_cyclic && p.two_sylow_cyclic_or_dihedral);
        let q = sylow_profile(&parse_group("Q8").unwrap());
        assert!(!q.all_sylow_cyclic && !q.two_sylow_cyclic_or_dihedral);
        let k = sylow_profile(&parse_group("D2").unwrap());
        assert!(!k.all_sylow_cyclic && k.two_sylow_cyclic_or_dihedral);
    }

    #[test]
    fn d3_classes() {
        let g = parse_group("D3").unwrap();
        let lat = g.subgroups();
        assert_eq!(lat.class_reps.len(), 4);
        assert!(lat.whole().normal);
    }
}
