//! Subgroups, cosets and normalizers.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef};
use crate::set::ElemSet;

pub const DEFAULT_SUBGROUP_MAX_ORDER: usize = 64;

/// A validated subgroup of `group`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    group: GroupRef,
    elements: ElemSet,
}

impl Subgroup {
    pub fn new(group: GroupRef, elements: ElemSet) -> Result<Self> {
        if elements.universe() != group.order() {
            return Err(Error::NotSubgroup(
                "set universe differs from group order".into(),
            ));
        }
        if !elements.contains(0) {
            return Err(Error::NotSubgroup("missing the identity".into()));
        }
        for a in &elements {
            if !elements.contains(group.inv(a)) {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for b in &elements {
                let ab = group.mul(a, b);
                if !elements.contains(ab) {
                    return Err(Error::NotSubgroup(format!("{a}*{b} = {ab} missing")));
                }
            }
        }
        if group.order() % elements.len() != 0 {
            return Err(Error::NotSubgroup(
                "size does not divide group order".into(),
            ));
        }
        Ok(Subgroup { group, elements })
    }

    pub fn from_elems(group: &GroupRef, elems: &[usize]) -> Result<Self> {
        let n = group.order();
        if let Some(&x) = elems.iter().find(|&&x| x >= n) {
            return Err(Error::UnknownElement(x.to_string()));
        }
        Self::new(group.clone(), ElemSet::from_elems(n, elems.iter().copied()))
    }

    pub fn trivial(group: &GroupRef) -> Self {
        Subgroup {
            elements: ElemSet::singleton(group.order(), 0),
            group: group.clone(),
        }
    }

    pub fn whole(group: &GroupRef) -> Self {
        Subgroup {
            elements: group.all(),
            group: group.clone(),
        }
    }

    /// Subgroup generated by `gens`.
    pub fn generated(group: &GroupRef, gens: &[usize]) -> Self {
        Subgroup {
            elements: closure(group, &ElemSet::singleton(group.order(), 0), gens),
            group: group.clone(),
        }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn elements(&self) -> &ElemSet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn is_normal(&self) -> bool {
        normalizer(self).len() == self.group.order()
    }

    /// `g^-1 H g`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        Subgroup {
            elements: self.elements.map(|h| self.group.conjugate(h, g)),
            group: self.group.clone(),
        }
    }

    /// Image under an element map assumed to be an automorphism.
    pub(crate) fn map_unchecked(&self, f: impl Fn(usize) -> usize) -> Subgroup {
        Subgroup {
            elements: self.elements.map(f),
            group: self.group.clone(),
        }
    }

    /// The subgroup as a group in its own right. Elements are renumbered in
    /// increasing order; the returned vector maps new indices to old ones.
    pub fn as_group(&self) -> Result<(FiniteGroup, Vec<usize>)> {
        let embed = self.elements.to_vec();
        let mut back = vec![usize::MAX; self.group.order()];
        for (i, &x) in embed.iter().enumerate() {
            back[x] = i;
        }
        let rows = embed
            .iter()
            .map(|&a| embed.iter().map(|&b| back[self.group.mul(a, b)]).collect())
            .collect();
        let names = Some(embed.iter().map(|&x| self.group.name(x)).collect());
        let g = FiniteGroup::from_table(
            format!("{}<{}>", self.group.id(), self.elements),
            rows,
            names,
        )?;
        Ok((g, embed))
    }
}

/// Smallest subgroup containing `start` and `gens`, by breadth-first
/// multiplication on the right.
pub fn closure(group: &FiniteGroup, start: &ElemSet, gens: &[usize]) -> ElemSet {
    let mut set = start.clone();
    set.insert(0);
    let mut all_gens: Vec<usize> = start.iter().chain(gens.iter().copied()).collect();
    all_gens.sort_unstable();
    all_gens.dedup();
    let mut queue: VecDeque<usize> = set.iter().collect();
    for &g in gens {
        if set.insert(g) {
            queue.push_back(g);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &g in &all_gens {
            let y = group.mul(x, g);
            if set.insert(y) {
                queue.push_back(y);
            }
        }
    }
    set
}

/// All subgroups, sorted by (size, elements).
pub fn enumerate_subgroups(group: &GroupRef) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_bounded(group, DEFAULT_SUBGROUP_MAX_ORDER)
}

/// Breadth-first closure: every subgroup is reached from a smaller one by
/// adjoining one element.
pub fn enumerate_subgroups_bounded(group: &GroupRef, max_order: usize) -> Result<Vec<Subgroup>> {
    let n = group.order();
    if n > max_order {
        return Err(Error::Threshold {
            what: "subgroup enumeration",
            order: n,
            limit: max_order,
        });
    }
    let trivial = ElemSet::singleton(n, 0);
    let mut seen: HashSet<ElemSet> = HashSet::from([trivial.clone()]);
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for g in 0..n {
            if h.contains(g) {
                continue;
            }
            let k = closure(group, &h, &[g]);
            if seen.insert(k.clone()) {
                frontier.push(k);
            }
        }
    }
    let sorted: BTreeSet<ElemSet> = seen.into_iter().collect();
    Ok(sorted
        .into_iter()
        .map(|elements| Subgroup {
            group: group.clone(),
            elements,
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Cosets `gH`.
    Left,
    /// Cosets `Hg`.
    Right,
}

/// Cosets listed in order of their least element; coset 0 is `H`.
#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    pub subgroup: Subgroup,
    pub side: Side,
    pub cosets: Vec<ElemSet>,
    pub rep_of: Vec<usize>,
}

impl CosetDecomposition {
    pub fn coset_of(&self, g: usize) -> usize {
        self.rep_of[g]
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Whether `t` contains exactly one element from every coset.
    pub fn is_transversal(&self, t: &ElemSet) -> bool {
        let mut hit = vec![false; self.cosets.len()];
        for x in t {
            let c = self.rep_of[x];
            if hit[c] {
                return false;
            }
            hit[c] = true;
        }
        hit.iter().all(|&b| b)
    }
}

pub fn cosets(h: &Subgroup, side: Side) -> CosetDecomposition {
    let g = &h.group;
    let n = g.order();
    let mut rep_of = vec![usize::MAX; n];
    let mut out = Vec::new();
    for x in 0..n {
        if rep_of[x] != usize::MAX {
            continue;
        }
        let c = match side {
            Side::Right => g.right_translate(&h.elements, x),
            Side::Left => g.left_translate(x, &h.elements),
        };
        for y in &c {
            rep_of[y] = out.len();
        }
        out.push(c);
    }
    CosetDecomposition {
        subgroup: h.clone(),
        side,
        cosets: out,
        rep_of,
    }
}

/// `N_G(H) = {g : g^-1 H g = H}`.
pub fn normalizer(h: &Subgroup) -> Subgroup {
    let g = &h.group;
    let elems = (0..g.order()).filter(|&x| {
        h.elements
            .iter()
            .all(|y| h.elements.contains(g.conjugate(y, x)))
    });
    Subgroup {
        elements: ElemSet::from_elems(g.order(), elems),
        group: g.clone(),
    }
}

/// Independent subgroup count: closes every generator set of size at most
/// two. Complete whenever all subgroups are 2-generated.
pub fn subgroups_two_generated(group: &GroupRef) -> Vec<ElemSet> {
    let n = group.order();
    let mut seen = BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            seen.insert(closure(group, &ElemSet::empty(n), &[a, b]));
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use std::sync::Arc;

    fn g(s: &str) -> GroupRef {
        Arc::new(s.parse::<GroupSpec>().unwrap().build().unwrap())
    }

    fn vecs(v: &[Subgroup]) -> Vec<Vec<usize>> {
        v.iter().map(|h| h.elements().to_vec()).collect()
    }

    #[test]
    fn z6_subgroups() {
        let subs = enumerate_subgroups(&g("Z6")).unwrap();
        assert_eq!(
            vecs(&subs),
            vec![vec![0], vec![0, 3], vec![0, 2, 4], vec![0, 1, 2, 3, 4, 5]]
        );
    }

    #[test]
    fn trivial_and_klein() {
        assert_eq!(vecs(&enumerate_subgroups(&g("Z1")).unwrap()), vec![vec![0]]);
        let v4 = enumerate_subgroups(&g("V4")).unwrap();
        assert_eq!(v4.len(), 5);
        assert_eq!(v4.iter().filter(|h| h.len() == 2).count(), 3);
    }

    #[test]
    fn threshold_enforced() {
        let err = enumerate_subgroups_bounded(&g("Z10"), 8).unwrap_err();
        assert!(err.is_threshold());
    }

    #[test]
    fn z6_right_cosets() {
        let grp = g("Z6");
        let h = Subgroup::from_elems(&grp, &[0, 3]).unwrap();
        let d = cosets(&h, Side::Right);
        let got: Vec<Vec<usize>> = d.cosets.iter().map(|c| c.to_vec()).collect();
        assert_eq!(got, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert_eq!(d.coset_of(5), 2);
        let whole = cosets(&Subgroup::whole(&grp), Side::Right);
        assert_eq!(whole.len(), 1);
    }

    #[test]
    fn index_two_cosets_coincide() {
        let d3 = g("D3");
        let rot = Subgroup::from_elems(&d3, &[0, 1, 2]).unwrap();
        let l = cosets(&rot, Side::Left);
        let r = cosets(&rot, Side::Right);
        assert_eq!(l.cosets, r.cosets);
        assert!(rot.is_normal());
    }

    #[test]
    fn left_and_right_differ_for_nonnormal() {
        let d3 = g("D3");
        let h = Subgroup::from_elems(&d3, &[0, 3]).unwrap();
        let l = cosets(&h, Side::Left);
        let r = cosets(&h, Side::Right);
        assert_ne!(l.cosets, r.cosets);
    }

    #[test]
    fn normalizers() {
        let z6 = g("Z6");
        for h in enumerate_subgroups(&z6).unwrap() {
            assert_eq!(normalizer(&h).len(), 6);
        }
        let d4 = g("D4");
        let refl = Subgroup::from_elems(&d4, &[0, 4]).unwrap();
        let n = normalizer(&refl);
        // brute force: conjugate each element
        let expect: Vec<usize> = (0..8)
            .filter(|&x| {
                let c = refl.conjugate(x);
                c.elements() == refl.elements()
            })
            .collect();
        assert_eq!(n.elements().to_vec(), expect);
        assert!(refl.len() < n.len() && n.len() < 8);
        assert!(refl.is_subgroup_of(&n));
        assert_eq!(normalizer(&Subgroup::whole(&d4)).len(), 8);
    }

    #[test]
    fn invalid_subgroups_rejected() {
        let z6 = g("Z6");
        assert!(Subgroup::from_elems(&z6, &[0, 1]).is_err());
        assert!(Subgroup::from_elems(&z6, &[3]).is_err());
        assert!(Subgroup::from_elems(&z6, &[0, 9]).is_err());
    }

    #[test]
    fn subgroup_as_group() {
        let s4 = g("S4");
        let subs = enumerate_subgroups(&s4).unwrap();
        assert_eq!(subs.len(), 30);
        for h in subs {
            let (k, embed) = h.as_group().unwrap();
            assert_eq!(k.order(), h.len());
            for a in 0..k.order() {
                for b in 0..k.order() {
                    assert_eq!(embed[k.mul(a, b)], s4.mul(embed[a], embed[b]));
                }
            }
        }
    }
}
