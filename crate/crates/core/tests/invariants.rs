use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use gencayley::automorphism::{enumerate_involutory_automorphisms, AlphaContext};
use gencayley::codes::{
    is_perfect_code, is_total_perfect_code, perfect_code_by, total_perfect_code_by, CODE_MODES,
};
use gencayley::gencayley::{build_graph, validate_subset};
use gencayley::group::catalog_up_to;
use gencayley::oracle::{
    is_perfect_code_by_count, is_total_perfect_code_by_count, pc_search, tpc_search,
};
use gencayley::subgroup::enumerate_subgroups;
use gencayley::subgroup_codes::{decide_subgroup_pc, decide_subgroup_tpc};
use gencayley::{AlphaRef, ElemSet};

fn contexts(max_order: usize) -> Vec<AlphaRef> {
    static ALL: OnceLock<Vec<AlphaRef>> = OnceLock::new();
    let all = ALL.get_or_init(|| build_contexts(16));
    all.iter()
        .filter(|c| c.group().order() <= max_order)
        .cloned()
        .collect()
}

fn build_contexts(max_order: usize) -> Vec<AlphaRef> {
    let mut out = Vec::new();
    for spec in catalog_up_to(max_order) {
        let g = Arc::new(spec.build().unwrap());
        for a in enumerate_involutory_automorphisms(&g, true).unwrap() {
            out.push(AlphaContext::shared(a).unwrap());
        }
    }
    out
}

fn admissible(ctx: &AlphaRef, pick: u64) -> ElemSet {
    let n = ctx.group().order();
    let mut s = ElemSet::empty(n);
    for (i, orbit) in ctx.tau_orbits().iter().enumerate() {
        if pick >> (i % 64) & 1 == 1 {
            for &x in orbit {
                s.insert(x);
            }
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn code_modes_agree_with_counting(ci in any::<prop::sample::Index>(), pick in any::<u64>(), xmask in any::<u64>()) {
        let all = contexts(12);
        let ctx = &all[ci.index(all.len())];
        let n = ctx.group().order();
        let s = validate_subset(ctx, admissible(ctx, pick)).unwrap();
        let graph = build_graph(&s);
        prop_assert!(graph.check_laws().is_ok());
        let x = ElemSet::from_mask(n, xmask & ((1u64 << n) - 1));
        let pc = is_perfect_code_by_count(ctx, s.elements(), &x);
        let tpc = is_total_perfect_code_by_count(ctx, s.elements(), &x);
        prop_assert_eq!(is_perfect_code(&graph, &x, CODE_MODES[0]), pc);
        prop_assert_eq!(is_total_perfect_code(&graph, &x, CODE_MODES[0]), tpc);
        for mode in CODE_MODES {
            prop_assert_eq!(perfect_code_by(&graph, &x, mode), pc, "{:?}", mode);
            prop_assert_eq!(total_perfect_code_by(&graph, &x, mode), tpc, "{:?}", mode);
        }
    }

    #[test]
    fn neighbors_are_symmetric(ci in any::<prop::sample::Index>(), pick in any::<u64>()) {
        let all = contexts(16);
        let ctx = &all[ci.index(all.len())];
        let graph = build_graph(&validate_subset(ctx, admissible(ctx, pick)).unwrap());
        for g in 0..graph.order() {
            for &h in graph.neighbors(g) {
                prop_assert!(h != g);
                prop_assert!(graph.is_adjacent(h, g));
            }
        }
    }

    #[test]
    fn subgroup_decisions_match_search(ci in any::<prop::sample::Index>(), hi in any::<prop::sample::Index>()) {
        let all = contexts(12);
        let ctx = &all[ci.index(all.len())];
        let subgroups = enumerate_subgroups(ctx.group()).unwrap();
        let h = &subgroups[hi.index(subgroups.len())];
        let pc = decide_subgroup_pc(h, ctx);
        prop_assert_eq!(pc.is_code(), pc_search(h, ctx).unwrap().is_some());
        if let Some(s) = pc.subset() {
            prop_assert!(is_perfect_code_by_count(ctx, s.elements(), h.elements()));
        }
        let tpc = decide_subgroup_tpc(h, ctx);
        prop_assert_eq!(tpc.is_code(), tpc_search(h, ctx).unwrap().is_some());
        if let Some(s) = tpc.subset() {
            prop_assert!(is_total_perfect_code_by_count(ctx, s.elements(), h.elements()));
        }
    }
}
