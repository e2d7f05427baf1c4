//! Perfect codes and total perfect codes of a generalized Cayley graph, for
//! arbitrary vertex subsets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gencayley::{
    alpha_translates, eval_at_most_one, independent_by_algebra, AtMostOneMode, GenCayleyGraph,
};
use crate::set::ElemSet;

/// Largest order `brute_force_codes` will scan (it visits `2^|G|` sets).
pub const DEFAULT_BRUTE_FORCE_MAX_ORDER: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    Perfect,
    Total,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeMode {
    /// Neighbor counts straight from the definition.
    Graph,
    /// The translates `alpha(X) s` (with `X` itself for perfect codes)
    /// partition `G`.
    Partition,
    /// Counting plus the product-set conditions.
    Algebraic,
}

pub const CODE_MODES: [CodeMode; 3] = [CodeMode::Graph, CodeMode::Partition, CodeMode::Algebraic];

/// Whether `blocks` cover every vertex exactly once, counted with
/// multiplicity.
fn is_exact_cover(n: usize, blocks: &[ElemSet]) -> bool {
    let mut count = vec![0u32; n];
    for b in blocks {
        for x in b {
            count[x] += 1;
        }
    }
    count.iter().all(|&c| c == 1)
}

pub fn perfect_code_by(graph: &GenCayleyGraph, x: &ElemSet, mode: CodeMode) -> bool {
    let n = graph.order();
    match mode {
        CodeMode::Graph => (0..n).all(|v| {
            let c = graph.neighbors_in(v, x);
            if x.contains(v) {
                c == 0
            } else {
                c == 1
            }
        }),
        CodeMode::Partition => {
            let mut blocks = alpha_translates(graph, x);
            blocks.push(x.clone());
            is_exact_cover(n, &blocks)
        }
        CodeMode::Algebraic => {
            let r = graph.subset().len();
            n == x.len() * (r + 1)
                && independent_by_algebra(graph, x)
                && eval_at_most_one(graph, x, AtMostOneMode::ProductSet)
        }
    }
}

pub fn is_perfect_code(graph: &GenCayleyGraph, x: &ElemSet, mode: CodeMode) -> bool {
    let v = perfect_code_by(graph, x, mode);
    if cfg!(debug_assertions) {
        for m in CODE_MODES {
            debug_assert_eq!(
                perfect_code_by(graph, x, m),
                v,
                "perfect-code mode {m:?} disagrees with {mode:?}"
            );
        }
    }
    v
}

pub fn total_perfect_code_by(graph: &GenCayleyGraph, x: &ElemSet, mode: CodeMode) -> bool {
    let n = graph.order();
    match mode {
        CodeMode::Graph => (0..n).all(|v| graph.neighbors_in(v, x) == 1),
        CodeMode::Partition => is_exact_cover(n, &alpha_translates(graph, x)),
        CodeMode::Algebraic => {
            let r = graph.subset().len();
            n == x.len() * r && eval_at_most_one(graph, x, AtMostOneMode::ProductSet)
        }
    }
}

/// Always false when `S` is empty. A positive answer also checks that `X`
/// induces a perfect matching.
pub fn is_total_perfect_code(graph: &GenCayleyGraph, x: &ElemSet, mode: CodeMode) -> bool {
    let v = total_perfect_code_by(graph, x, mode);
    if cfg!(debug_assertions) {
        for m in CODE_MODES {
            debug_assert_eq!(
                total_perfect_code_by(graph, x, m),
                v,
                "total-code mode {m:?} disagrees with {mode:?}"
            );
        }
    }
    if v {
        assert!(
            induces_matching(graph, x),
            "total perfect code must induce a matching"
        );
    }
    v
}

/// Every member of `X` has exactly one neighbor in `X` (so `|X|` is even).
pub fn induces_matching(graph: &GenCayleyGraph, x: &ElemSet) -> bool {
    x.len() % 2 == 0 && x.iter().all(|v| graph.neighbors_in(v, x) == 1)
}

pub fn is_code(graph: &GenCayleyGraph, x: &ElemSet, kind: CodeKind) -> bool {
    match kind {
        CodeKind::Perfect => is_perfect_code(graph, x, CodeMode::Graph),
        CodeKind::Total => is_total_perfect_code(graph, x, CodeMode::Graph),
    }
}

/// All codes of the given kind by scanning every vertex subset, in
/// increasing bitmask order.
pub fn brute_force_codes(graph: &GenCayleyGraph, kind: CodeKind) -> Result<Vec<ElemSet>> {
    brute_force_codes_bounded(graph, kind, DEFAULT_BRUTE_FORCE_MAX_ORDER)
}

pub fn brute_force_codes_bounded(
    graph: &GenCayleyGraph,
    kind: CodeKind,
    max_order: usize,
) -> Result<Vec<ElemSet>> {
    let n = graph.order();
    if n > max_order.min(30) {
        return Err(Error::Threshold {
            what: "brute-force code search",
            order: n,
            limit: max_order.min(30),
        });
    }
    let nb: Vec<u64> = (0..n)
        .map(|v| graph.neighbors(v).iter().fold(0u64, |m, &h| m | 1 << h))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        let ok = (0..n).all(|v| {
            let c = (nb[v] & mask).count_ones();
            match kind {
                CodeKind::Total => c == 1,
                CodeKind::Perfect if mask >> v & 1 == 1 => c == 0,
                CodeKind::Perfect => c == 1,
            }
        });
        if ok {
            out.push(ElemSet::from_mask(n, mask));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::{inversion_automorphism, AlphaContext, AlphaRef};
    use crate::gencayley::{build_graph, validate_elems};
    use crate::group::GroupSpec;
    use std::sync::Arc;

    fn z6_iota() -> AlphaRef {
        let z6 = Arc::new(GroupSpec::Cyclic(6).build().unwrap());
        AlphaContext::shared(inversion_automorphism(&z6).unwrap()).unwrap()
    }

    fn graph(s: &[usize]) -> GenCayleyGraph {
        build_graph(&validate_elems(&z6_iota(), s).unwrap())
    }

    fn set(v: &[usize]) -> ElemSet {
        ElemSet::from_elems(6, v.iter().copied())
    }

    fn all_modes(g: &GenCayleyGraph, x: &ElemSet, kind: CodeKind) -> Vec<bool> {
        CODE_MODES
            .iter()
            .map(|&m| match kind {
                CodeKind::Perfect => perfect_code_by(g, x, m),
                CodeKind::Total => total_perfect_code_by(g, x, m),
            })
            .collect()
    }

    #[test]
    fn perfect_code_fixtures() {
        assert_eq!(
            all_modes(&graph(&[1]), &set(&[0, 2, 4]), CodeKind::Perfect),
            vec![true; 3]
        );
        assert_eq!(
            all_modes(&graph(&[1, 5]), &set(&[0, 3]), CodeKind::Perfect),
            vec![true; 3]
        );
        assert_eq!(
            all_modes(&graph(&[1]), &set(&[0, 1]), CodeKind::Perfect),
            vec![false; 3]
        );
        assert_eq!(
            all_modes(&graph(&[]), &ElemSet::full(6), CodeKind::Perfect),
            vec![true; 3]
        );
    }

    #[test]
    fn total_code_fixtures() {
        assert_eq!(
            all_modes(&graph(&[1, 3, 5]), &set(&[0, 3]), CodeKind::Total),
            vec![true; 3]
        );
        assert_eq!(
            all_modes(&graph(&[1]), &set(&[0, 2, 4]), CodeKind::Total),
            vec![false; 3]
        );
        assert_eq!(
            all_modes(&graph(&[1, 3, 5]), &ElemSet::empty(6), CodeKind::Total),
            vec![false; 3]
        );
        assert_eq!(
            all_modes(&graph(&[]), &ElemSet::full(6), CodeKind::Total),
            vec![false; 3]
        );
        // a 1-regular graph: the whole group is a total perfect code
        assert!(is_total_perfect_code(
            &graph(&[1]),
            &ElemSet::full(6),
            CodeMode::Graph
        ));
    }

    #[test]
    fn brute_force_lists() {
        let g = graph(&[1]);
        let pcs = brute_force_codes(&g, CodeKind::Perfect).unwrap();
        assert!(pcs.contains(&set(&[0, 2, 4])));
        // one endpoint from each of the three matching edges
        assert_eq!(pcs.len(), 8);
        for x in &pcs {
            assert!(perfect_code_by(&g, x, CodeMode::Algebraic));
        }
        assert_eq!(
            brute_force_codes(&graph(&[]), CodeKind::Perfect).unwrap(),
            vec![ElemSet::full(6)]
        );
        let tpcs = brute_force_codes(&graph(&[1, 3, 5]), CodeKind::Total).unwrap();
        assert!(tpcs.contains(&set(&[0, 3])));
        assert!(tpcs.iter().all(|x| x.len() == 2));
    }

    #[test]
    fn brute_force_threshold() {
        let g = graph(&[1]);
        assert!(brute_force_codes_bounded(&g, CodeKind::Perfect, 4)
            .unwrap_err()
            .is_threshold());
    }
}
