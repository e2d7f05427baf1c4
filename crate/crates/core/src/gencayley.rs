//! Generalized Cayley subsets and graphs.
//!
//! For an involutory automorphism `alpha`, a subset `S` is admissible when it
//! misses `omega` and satisfies `alpha(S) = S^-1`; the graph `GC(G, S, alpha)`
//! joins `g` and `h` whenever `alpha(g^-1) h` lies in `S`. Equivalently the
//! neighbors of `g` are `alpha(g) S`.

use std::fmt::Write as _;

use itertools::Itertools;

use crate::automorphism::AlphaRef;
use crate::error::{Error, Result, SubsetViolation};
use crate::group::GroupRef;
use crate::set::ElemSet;

/// Upper bound on the number of tau-orbits `enumerate_subsets` will walk.
pub const DEFAULT_MAX_ORBITS: usize = 40;

#[derive(Clone, Debug)]
pub struct GenCayleySubset {
    ctx: AlphaRef,
    elements: ElemSet,
}

impl PartialEq for GenCayleySubset {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.ctx.alpha() == other.ctx.alpha()
    }
}

impl GenCayleySubset {
    pub fn ctx(&self) -> &AlphaRef {
        &self.ctx
    }

    pub fn group(&self) -> &GroupRef {
        self.ctx.group()
    }

    pub fn elements(&self) -> &ElemSet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Checks `S ∩ omega = ∅` and `alpha(S) = S^-1`, reporting the least
/// offending element.
pub fn validate_subset(ctx: &AlphaRef, s: ElemSet) -> Result<GenCayleySubset> {
    let n = ctx.group().order();
    if s.universe() != n {
        return Err(SubsetViolation::OutOfRange(s.universe()).into());
    }
    if let Some(w) = s.intersection(&ctx.omega).least() {
        return Err(SubsetViolation::MeetsOmega(w).into());
    }
    if let Some(x) = s.iter().find(|&x| !s.contains(ctx.tau(x))) {
        return Err(SubsetViolation::NotTauClosed {
            element: x,
            image: ctx.tau(x),
        }
        .into());
    }
    Ok(GenCayleySubset {
        ctx: ctx.clone(),
        elements: s,
    })
}

pub fn validate_elems(ctx: &AlphaRef, elems: &[usize]) -> Result<GenCayleySubset> {
    let n = ctx.group().order();
    if let Some(&x) = elems.iter().find(|&&x| x >= n) {
        return Err(SubsetViolation::OutOfRange(x).into());
    }
    validate_subset(ctx, ElemSet::from_elems(n, elems.iter().copied()))
}

pub type SubsetIter = Box<dyn Iterator<Item = GenCayleySubset> + Send>;

/// Every generalized Cayley subset, as unions of tau-orbits on
/// `G \ omega`; optionally only those of one size.
pub fn enumerate_subsets(ctx: &AlphaRef, size: Option<usize>) -> Result<SubsetIter> {
    enumerate_subsets_bounded(ctx, size, DEFAULT_MAX_ORBITS)
}

pub fn enumerate_subsets_bounded(
    ctx: &AlphaRef,
    size: Option<usize>,
    max_orbits: usize,
) -> Result<SubsetIter> {
    let orbits = ctx.tau_orbits();
    if orbits.len() > max_orbits.min(63) {
        return Err(Error::Threshold {
            what: "generalized Cayley subset enumeration (tau-orbits)",
            order: orbits.len(),
            limit: max_orbits.min(63),
        });
    }
    let n = ctx.group().order();
    let make = {
        let ctx = ctx.clone();
        move |elems: ElemSet| GenCayleySubset {
            ctx: ctx.clone(),
            elements: elems,
        }
    };
    match size {
        None => {
            let k = orbits.len();
            Ok(Box::new((0u64..1 << k).map(move |mask| {
                let elems = ElemSet::from_elems(
                    n,
                    (0..k)
                        .filter(|i| mask >> i & 1 == 1)
                        .flat_map(|i| orbits[i].iter().copied()),
                );
                make(elems)
            })))
        }
        Some(size) => {
            let (singles, pairs): (Vec<_>, Vec<_>) = orbits.into_iter().partition(|o| o.len() == 1);
            let singles: Vec<usize> = singles.into_iter().map(|o| o[0]).collect();
            let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|o| (o[0], o[1])).collect();
            let max_p = pairs.len().min(size / 2);
            let n_singles = singles.len();
            let iter = (0..=max_p)
                .filter(move |&p| size - 2 * p <= n_singles)
                .flat_map(move |p| {
                    let q = size - 2 * p;
                    let singles = singles.clone();
                    pairs
                        .clone()
                        .into_iter()
                        .combinations(p)
                        .flat_map(move |ps| {
                            singles.clone().into_iter().combinations(q).map(move |qs| {
                                ElemSet::from_elems(
                                    n,
                                    ps.iter()
                                        .flat_map(|&(a, b)| [a, b])
                                        .chain(qs.iter().copied()),
                                )
                            })
                        })
                })
                .map(make);
            Ok(Box::new(iter))
        }
    }
}

/// The graph `GC(G, S, alpha)`.
#[derive(Clone, Debug)]
pub struct GenCayleyGraph {
    subset: GenCayleySubset,
    adjacency: Vec<Vec<usize>>,
}

impl GenCayleyGraph {
    pub fn subset(&self) -> &GenCayleySubset {
        &self.subset
    }

    pub fn ctx(&self) -> &AlphaRef {
        &self.subset.ctx
    }

    pub fn group(&self) -> &GroupRef {
        self.subset.group()
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, g: usize) -> &[usize] {
        &self.adjacency[g]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    /// The defining edge rule, evaluated directly.
    pub fn edge_rule(&self, g: usize, h: usize) -> bool {
        let grp = self.group();
        self.subset
            .elements
            .contains(grp.mul(self.ctx().alpha().apply(grp.inv(g)), h))
    }

    pub fn is_adjacent(&self, g: usize, h: usize) -> bool {
        self.adjacency[g].binary_search(&h).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(g, ns)| ns.iter().filter(move |&&h| g < h).map(move |&h| (g, h)))
    }

    /// Number of neighbors of `v` inside `x`.
    pub fn neighbors_in(&self, v: usize, x: &ElemSet) -> usize {
        self.adjacency[v].iter().filter(|&&h| x.contains(h)).count()
    }

    /// Laws every generalized Cayley graph satisfies: no loops, symmetric
    /// adjacency, `|S|`-regular. Returns the first violation.
    pub fn check_laws(&self) -> std::result::Result<(), String> {
        let r = self.subset.len();
        for (g, ns) in self.adjacency.iter().enumerate() {
            if ns.len() != r {
                return Err(format!("vertex {g} has degree {} != |S| = {r}", ns.len()));
            }
            if ns.windows(2).any(|w| w[0] == w[1]) {
                return Err(format!("vertex {g} has a repeated neighbor"));
            }
            for &h in ns {
                if h == g {
                    return Err(format!("loop at {g}"));
                }
                if !self.is_adjacent(h, g) {
                    return Err(format!("edge {g}->{h} has no reverse"));
                }
            }
        }
        Ok(())
    }

    /// Graphviz rendering with vertices labelled by element names.
    pub fn to_dot(&self) -> String {
        let grp = self.group();
        let mut out = String::new();
        let _ = writeln!(out, "graph \"GC({})\" {{", grp.id());
        for v in 0..self.order() {
            let _ = writeln!(
                out,
                "  {v} [label=\"{}\"];",
                grp.name(v).replace('"', "\\\"")
            );
        }
        for (g, h) in self.edges() {
            let _ = writeln!(out, "  {g} -- {h};");
        }
        out.push_str("}\n");
        out
    }
}

/// Builds `GC(G, S, alpha)`. Panics if the result breaks the graph laws,
/// which would mean the subset was not admissible.
pub fn build_graph(subset: &GenCayleySubset) -> GenCayleyGraph {
    let ctx = subset.ctx();
    let grp = ctx.group();
    let adjacency = (0..grp.order())
        .map(|g| {
            let ag = ctx.alpha().apply(g);
            let mut ns: Vec<usize> = subset.elements.iter().map(|s| grp.mul(ag, s)).collect();
            ns.sort_unstable();
            ns
        })
        .collect();
    let graph = GenCayleyGraph {
        subset: subset.clone(),
        adjacency,
    };
    if let Err(e) = graph.check_laws() {
        panic!("generalized Cayley graph law broken: {e}");
    }
    graph
}

/// The three equivalent ways of saying every vertex has at most one
/// neighbor in `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtMostOneMode {
    /// Count neighbors directly.
    Graph,
    /// Translates `alpha(X) s` pairwise disjoint.
    Cosets,
    /// `alpha(X^-1) alpha(X) ∩ S S^-1 ⊆ {e}`.
    ProductSet,
}

pub const AT_MOST_ONE_MODES: [AtMostOneMode; 3] = [
    AtMostOneMode::Graph,
    AtMostOneMode::Cosets,
    AtMostOneMode::ProductSet,
];

/// `alpha(X) s` for each `s` in `S`, in order of `s`.
pub fn alpha_translates(graph: &GenCayleyGraph, x: &ElemSet) -> Vec<ElemSet> {
    let grp = graph.group();
    let ax = graph.ctx().alpha().image(x);
    graph
        .subset()
        .elements()
        .iter()
        .map(|s| grp.right_translate(&ax, s))
        .collect()
}

pub fn eval_at_most_one(graph: &GenCayleyGraph, x: &ElemSet, mode: AtMostOneMode) -> bool {
    let grp = graph.group();
    match mode {
        AtMostOneMode::Graph => (0..graph.order()).all(|v| graph.neighbors_in(v, x) <= 1),
        AtMostOneMode::Cosets => {
            let ts = alpha_translates(graph, x);
            ts.iter()
                .tuple_combinations()
                .all(|(a, b)| a.is_disjoint(b))
        }
        AtMostOneMode::ProductSet => {
            let ax = graph.ctx().alpha().image(x);
            let lhs = grp.product_set(&grp.inverse_set(&ax), &ax);
            let s = graph.subset().elements();
            let rhs = grp.product_set(s, &grp.inverse_set(s));
            lhs.intersection(&rhs).iter().all(|e| e == 0)
        }
    }
}

/// Evaluates the requested mode; debug builds also evaluate the other two
/// and assert agreement.
pub fn check_at_most_one(graph: &GenCayleyGraph, x: &ElemSet, mode: AtMostOneMode) -> bool {
    let v = eval_at_most_one(graph, x, mode);
    if cfg!(debug_assertions) {
        for m in AT_MOST_ONE_MODES {
            debug_assert_eq!(
                eval_at_most_one(graph, x, m),
                v,
                "mode {m:?} disagrees with {mode:?}"
            );
        }
    }
    v
}

/// Every vertex outside `X` has a neighbor in `X`, by neighbor scan.
pub fn dominates_by_graph(graph: &GenCayleyGraph, x: &ElemSet) -> bool {
    (0..graph.order())
        .filter(|&v| !x.contains(v))
        .all(|v| graph.neighbors_in(v, x) >= 1)
}

/// `G \ X ⊆ ∪_s alpha(X) s`.
pub fn dominates_by_translates(graph: &GenCayleyGraph, x: &ElemSet) -> bool {
    let cover = alpha_translates(graph, x)
        .into_iter()
        .fold(ElemSet::empty(graph.order()), |acc, t| acc.union(&t));
    x.complement().is_subset(&cover)
}

pub fn check_dominates(graph: &GenCayleyGraph, x: &ElemSet) -> bool {
    let v = dominates_by_graph(graph, x);
    debug_assert_eq!(v, dominates_by_translates(graph, x));
    v
}

pub fn independent_by_graph(graph: &GenCayleyGraph, x: &ElemSet) -> bool {
    x.iter().all(|v| graph.neighbors_in(v, x) == 0)
}

/// `alpha(X^-1) X ∩ S = ∅`.
pub fn independent_by_algebra(graph: &GenCayleyGraph, x: &ElemSet) -> bool {
    let grp = graph.group();
    let lhs = grp.product_set(&graph.ctx().alpha().image(&grp.inverse_set(x)), x);
    lhs.is_disjoint(graph.subset().elements())
}

pub fn check_independent(graph: &GenCayleyGraph, x: &ElemSet) -> bool {
    let v = independent_by_graph(graph, x);
    debug_assert_eq!(v, independent_by_algebra(graph, x));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::{inversion_automorphism, AlphaContext, Automorphism};
    use crate::group::GroupSpec;
    use std::sync::Arc;

    fn z6_iota() -> AlphaRef {
        let z6 = Arc::new(GroupSpec::Cyclic(6).build().unwrap());
        AlphaContext::shared(inversion_automorphism(&z6).unwrap()).unwrap()
    }

    fn v4_swap() -> AlphaRef {
        let v4 = Arc::new(GroupSpec::Abelian(vec![2, 2]).build().unwrap());
        AlphaContext::shared(Automorphism::new(v4, vec![0, 2, 1, 3]).unwrap()).unwrap()
    }

    fn set(n: usize, v: &[usize]) -> ElemSet {
        ElemSet::from_elems(n, v.iter().copied())
    }

    #[test]
    fn validation() {
        let ctx = z6_iota();
        assert!(validate_elems(&ctx, &[1, 5]).is_ok());
        assert!(validate_elems(&ctx, &[]).is_ok());
        let err = validate_elems(&ctx, &[2]).unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidSubset(SubsetViolation::MeetsOmega(2))
        ));
        let v = v4_swap();
        let err = validate_elems(&v, &[1]).unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidSubset(SubsetViolation::NotTauClosed {
                element: 1,
                image: 2
            })
        ));
        assert!(validate_elems(&v, &[7]).is_err());
    }

    #[test]
    fn subset_counts() {
        assert_eq!(enumerate_subsets(&z6_iota(), None).unwrap().count(), 8);
        let v: Vec<Vec<usize>> = enumerate_subsets(&v4_swap(), None)
            .unwrap()
            .map(|s| s.elements().to_vec())
            .collect();
        assert_eq!(v, vec![vec![], vec![1, 2]]);
        for ctx in [z6_iota(), v4_swap()] {
            let zero: Vec<_> = enumerate_subsets(&ctx, Some(0)).unwrap().collect();
            assert_eq!(zero.len(), 1);
            assert!(zero[0].is_empty());
        }
        assert_eq!(enumerate_subsets(&z6_iota(), Some(2)).unwrap().count(), 3);
        assert_eq!(enumerate_subsets(&v4_swap(), Some(1)).unwrap().count(), 0);
        assert!(enumerate_subsets_bounded(&z6_iota(), None, 2)
            .err()
            .unwrap()
            .is_threshold());
    }

    #[test]
    fn matching_graph() {
        let s = validate_elems(&z6_iota(), &[1]).unwrap();
        let g = build_graph(&s);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (2, 5), (3, 4)]);
    }

    #[test]
    fn complete_bipartite_graph() {
        let s = validate_elems(&z6_iota(), &[1, 3, 5]).unwrap();
        let g = build_graph(&s);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(g.is_adjacent(a, b), (a + b) % 2 == 1);
                assert_eq!(g.edge_rule(a, b), (a + b) % 2 == 1);
            }
        }
    }

    #[test]
    fn klein_four_cycle() {
        let s = validate_elems(&v4_swap(), &[1, 2]).unwrap();
        let g = build_graph(&s);
        // e–a–ab–b–e
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn neighborhood_checks_on_z6() {
        let ctx = z6_iota();
        let g1 = build_graph(&validate_elems(&ctx, &[1]).unwrap());
        let evens = set(6, &[0, 2, 4]);
        for m in AT_MOST_ONE_MODES {
            assert!(check_at_most_one(&g1, &evens, m));
            assert!(check_at_most_one(&g1, &ElemSet::empty(6), m));
        }
        assert!(check_dominates(&g1, &evens));
        assert!(check_dominates(&g1, &ElemSet::full(6)));
        assert!(!check_dominates(&g1, &set(6, &[0])));
        assert!(check_independent(&g1, &evens));
        assert!(check_independent(&g1, &set(6, &[3])));
        assert!(!check_independent(&g1, &set(6, &[0, 1])));

        let g15 = build_graph(&validate_elems(&ctx, &[1, 5]).unwrap());
        // neighbors(v) = {1 - v, 5 - v}; no vertex has both 0 and 1 as neighbors.
        let x = set(6, &[0, 1]);
        let brute = (0..6).all(|v: usize| {
            [(7 - v) % 6, (11 - v) % 6]
                .iter()
                .filter(|&&h| h <= 1)
                .count()
                <= 1
        });
        let verdicts: Vec<bool> = AT_MOST_ONE_MODES
            .iter()
            .map(|&m| eval_at_most_one(&g15, &x, m))
            .collect();
        assert_eq!(verdicts, vec![brute; 3]);
        assert!(brute);
        // vertex 1 sees both 0 and 4.
        let y = set(6, &[0, 4]);
        let verdicts: Vec<bool> = AT_MOST_ONE_MODES
            .iter()
            .map(|&m| eval_at_most_one(&g15, &y, m))
            .collect();
        assert_eq!(verdicts, vec![false; 3]);
    }

    #[test]
    fn dot_export() {
        let g = build_graph(&validate_elems(&z6_iota(), &[1]).unwrap());
        let dot = g.to_dot();
        assert!(dot.starts_with("graph \"GC(Z6)\" {"));
        assert!(dot.contains("  2 -- 5;"));
        assert_eq!(dot.matches("--").count(), 3);
    }
}
