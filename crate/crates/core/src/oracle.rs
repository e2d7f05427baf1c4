//! Brute-force reference computations. Nothing here reuses the coset or
//! pairing machinery, so agreement with the fast deciders is meaningful.

use itertools::Itertools;

use crate::automorphism::{AlphaRef, Automorphism};
use crate::error::{Error, Result};
use crate::gencayley::{enumerate_subsets, GenCayleySubset};
use crate::group::{FiniteGroup, GroupRef};
use crate::set::ElemSet;
use crate::subgroup::{closure, Subgroup};

/// Largest order for the full-bijection automorphism scan.
pub const BIJECTION_SCAN_MAX_ORDER: usize = 8;

/// Largest order for the all-subsets subgroup scan.
pub const SUBSET_SCAN_MAX_ORDER: usize = 16;

/// Every bijection fixing 0 that respects the table, in lexicographic order.
pub fn automorphisms_by_bijection(group: &GroupRef) -> Result<Vec<Vec<usize>>> {
    let n = group.order();
    if n > BIJECTION_SCAN_MAX_ORDER {
        return Err(Error::Threshold {
            what: "bijection scan",
            order: n,
            limit: BIJECTION_SCAN_MAX_ORDER,
        });
    }
    let mut out = Vec::new();
    for tail in (1..n).permutations(n - 1) {
        let mut perm = Vec::with_capacity(n);
        perm.push(0);
        perm.extend(tail);
        let hom =
            (0..n).all(|a| (0..n).all(|b| perm[group.mul(a, b)] == group.mul(perm[a], perm[b])));
        if hom {
            out.push(perm);
        }
    }
    Ok(out)
}

pub fn involutions_by_bijection(
    group: &GroupRef,
    include_identity: bool,
) -> Result<Vec<Vec<usize>>> {
    Ok(automorphisms_by_bijection(group)?
        .into_iter()
        .filter(|p| (0..p.len()).all(|x| p[p[x]] == x))
        .filter(|p| include_identity || p.iter().enumerate().any(|(i, &x)| i != x))
        .collect())
}

/// Every subset containing 0 and closed under the product, by scanning all
/// `2^(n-1)` candidates.
pub fn subgroups_by_subset_scan(group: &FiniteGroup) -> Result<Vec<ElemSet>> {
    let n = group.order();
    if n > SUBSET_SCAN_MAX_ORDER {
        return Err(Error::Threshold {
            what: "subset scan",
            order: n,
            limit: SUBSET_SCAN_MAX_ORDER,
        });
    }
    let mut out = Vec::new();
    for mask in 0u64..1 << (n - 1) {
        let s = ElemSet::from_mask(n, mask << 1 | 1);
        if s.iter()
            .all(|a| s.iter().all(|b| s.contains(group.mul(a, b))))
        {
            out.push(s);
        }
    }
    out.sort();
    Ok(out)
}

/// Closures of every generator set of size at most three, deduplicated and
/// sorted. Complete for groups in which every subgroup is 3-generated.
pub fn subgroups_by_generator_triples(group: &FiniteGroup) -> Vec<ElemSet> {
    let n = group.order();
    let mut seen = std::collections::BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            let ab = closure(group, &ElemSet::empty(n), &[a, b]);
            for c in b..n {
                if ab.contains(c) {
                    seen.insert(ab.clone());
                } else {
                    seen.insert(closure(group, &ab, &[c]));
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Adjacency of the ordinary Cayley graph `Cay(G, S)`: `g ~ gs`.
pub fn cayley_adjacency(group: &FiniteGroup, s: &ElemSet) -> Vec<Vec<usize>> {
    (0..group.order())
        .map(|g| s.iter().map(|x| group.mul(g, x)).sorted().dedup().collect())
        .collect()
}

/// `#{s in S : alpha(g) s in X}`, the number of neighbors of `g` in `X`,
/// computed without a graph.
pub fn neighbor_count(ctx: &AlphaRef, s: &ElemSet, g: usize, x: &ElemSet) -> usize {
    let grp = ctx.group();
    let ag = ctx.alpha().apply(g);
    s.iter().filter(|&t| x.contains(grp.mul(ag, t))).count()
}

pub fn is_perfect_code_by_count(ctx: &AlphaRef, s: &ElemSet, x: &ElemSet) -> bool {
    (0..ctx.group().order()).all(|g| neighbor_count(ctx, s, g, x) == usize::from(!x.contains(g)))
}

pub fn is_total_perfect_code_by_count(ctx: &AlphaRef, s: &ElemSet, x: &ElemSet) -> bool {
    (0..ctx.group().order()).all(|g| neighbor_count(ctx, s, g, x) == 1)
}

/// The first admissible `S` (in enumeration order) making `H` a perfect
/// code. Only sizes `[G:H] - 1` can work, by counting.
pub fn pc_search(h: &Subgroup, ctx: &AlphaRef) -> Result<Option<GenCayleySubset>> {
    let want = h.index() - 1;
    Ok(enumerate_subsets(ctx, Some(want))?
        .find(|s| is_perfect_code_by_count(ctx, s.elements(), h.elements())))
}

/// As `pc_search` for total perfect codes; only `|S| = [G:H]` can work.
pub fn tpc_search(h: &Subgroup, ctx: &AlphaRef) -> Result<Option<GenCayleySubset>> {
    let want = h.index();
    Ok(enumerate_subsets(ctx, Some(want))?
        .find(|s| is_total_perfect_code_by_count(ctx, s.elements(), h.elements())))
}

/// Whether `t` meets every right coset `Kg` exactly once, with the cosets
/// recomputed from scratch.
pub fn is_right_transversal(k: &ElemSet, t: &ElemSet, group: &FiniteGroup) -> bool {
    let n = group.order();
    t.len() * k.len() == n
        && t.iter().all(|a| {
            t.iter()
                .filter(|&b| b != a)
                .all(|b| !k.contains(group.mul(a, group.inv(b))))
        })
}

/// Whether `t` meets every left coset `gK` exactly once.
pub fn is_left_transversal(k: &ElemSet, t: &ElemSet, group: &FiniteGroup) -> bool {
    let n = group.order();
    t.len() * k.len() == n
        && t.iter().all(|a| {
            t.iter()
                .filter(|&b| b != a)
                .all(|b| !k.contains(group.mul(group.inv(a), b)))
        })
}

/// The first admissible `S` that is a right transversal of `alpha(H)`.
pub fn transversal_search(h: &Subgroup, ctx: &AlphaRef) -> Result<Option<GenCayleySubset>> {
    let ah = h.elements().map(|x| ctx.alpha().apply(x));
    let grp = ctx.group().clone();
    Ok(enumerate_subsets(ctx, Some(h.index()))?
        .find(|s| is_right_transversal(&ah, s.elements(), &grp)))
}

/// Brute-force check of `alpha`'s defining sets against the cached ones.
pub fn alpha_sets_by_definition(alpha: &Automorphism) -> [ElemSet; 5] {
    let g = alpha.group();
    let n = g.order();
    let all = 0..n;
    let omega = ElemSet::from_elems(n, all.clone().map(|x| g.mul(alpha.apply(g.inv(x)), x)));
    let k = ElemSet::from_elems(n, all.clone().filter(|&x| g.mul(alpha.apply(x), x) == 0));
    let fix = ElemSet::from_elems(n, all.filter(|&x| alpha.apply(x) == x));
    let big_omega = k.difference(&omega);
    let mho = k.complement();
    [omega, big_omega, mho, fix, k]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::{inversion_automorphism, AlphaContext};
    use crate::group::GroupSpec;
    use std::sync::Arc;

    fn grp(s: &str) -> GroupRef {
        Arc::new(s.parse::<GroupSpec>().unwrap().build().unwrap())
    }

    #[test]
    fn bijection_scan_counts() {
        assert_eq!(automorphisms_by_bijection(&grp("Z6")).unwrap().len(), 2);
        assert_eq!(automorphisms_by_bijection(&grp("V4")).unwrap().len(), 6);
        assert_eq!(
            involutions_by_bijection(&grp("Z8"), false).unwrap().len(),
            3
        );
        assert!(automorphisms_by_bijection(&grp("Z9"))
            .unwrap_err()
            .is_threshold());
    }

    #[test]
    fn subset_scan_counts() {
        assert_eq!(subgroups_by_subset_scan(&grp("Z6")).unwrap().len(), 4);
        assert_eq!(
            subgroups_by_subset_scan(&grp("Z2xZ2xZ2")).unwrap().len(),
            16
        );
        assert_eq!(subgroups_by_subset_scan(&grp("Z1")).unwrap().len(), 1);
    }

    #[test]
    fn searches_on_z6() {
        let z6 = grp("Z6");
        let ctx = AlphaContext::shared(inversion_automorphism(&z6).unwrap()).unwrap();
        let h = Subgroup::from_elems(&z6, &[0, 3]).unwrap();
        assert!(pc_search(&h, &ctx).unwrap().is_some());
        assert!(tpc_search(&h, &ctx).unwrap().is_some());
        assert!(transversal_search(&h, &ctx).unwrap().is_some());
        let t = Subgroup::from_elems(&z6, &[0, 2, 4]).unwrap();
        assert!(tpc_search(&t, &ctx).unwrap().is_none());
        assert!(transversal_search(&t, &ctx).unwrap().is_none());
        assert!(pc_search(&Subgroup::trivial(&z6), &ctx).unwrap().is_none());
    }

    #[test]
    fn transversal_checks() {
        let z6 = grp("Z6");
        let k = ElemSet::from_elems(6, [0, 3]);
        assert!(is_right_transversal(
            &k,
            &ElemSet::from_elems(6, [0, 1, 5]),
            &z6
        ));
        assert!(!is_right_transversal(
            &k,
            &ElemSet::from_elems(6, [0, 1, 4]),
            &z6
        ));
        assert!(is_left_transversal(
            &k,
            &ElemSet::from_elems(6, [1, 3, 5]),
            &z6
        ));
    }
}
