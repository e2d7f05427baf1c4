//! Property suites: every characterization and construction checked
//! against brute force over the catalog. Each suite returns the number of
//! cases it examined and every counterexample it found.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::automorphism::{
    enumerate_automorphisms, enumerate_involutory_automorphisms, product_automorphism,
    AlphaContext, AlphaRef, Automorphism,
};
use crate::census::with_workers;
use crate::codes::{perfect_code_by, total_perfect_code_by, CodeKind, CODE_MODES};
use crate::constructions::{
    restrict_to_normalizer, transport_automorphism, transport_combined, transport_conjugate,
    verify_product_props, CodePair, ProductReport,
};
use crate::error::Result;
use crate::gencayley::{
    build_graph, dominates_by_graph, dominates_by_translates, enumerate_subsets, eval_at_most_one,
    independent_by_algebra, independent_by_graph, GenCayleyGraph, GenCayleySubset,
    AT_MOST_ONE_MODES,
};
use crate::group::{catalog_up_to, FiniteGroup, GroupRef, GroupSpec};
use crate::oracle;
use crate::set::ElemSet;
use crate::subgroup::{cosets, enumerate_subgroups, normalizer, Side, Subgroup};
use crate::subgroup_codes::{
    alpha_image, build_witness_abelian, decide_subgroup_pc, decide_subgroup_tpc, revalidate_pair,
    thm3_predicate,
};

/// Names accepted by `run_suites`, in execution order.
pub const SUITES: [&str; 13] = [
    "groups",
    "automorphisms",
    "product-sets",
    "graph-laws",
    "modes",
    "pc-oracle",
    "tpc-oracle",
    "abelian",
    "census-audit",
    "transport",
    "products",
    "restriction",
    "census-records",
];

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Global cap on group order; each suite also has its own bound.
    pub max_order: usize,
    pub seed: u64,
    pub workers: usize,
    /// Random vertex sets per (alpha, S) where exhaustive scans stop.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_order: 24,
            seed: 0,
            workers: 0,
            samples: 1000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub group: String,
    pub order: usize,
    pub alpha: Option<Vec<usize>>,
    pub s: Option<Vec<usize>>,
    pub x: Option<Vec<usize>>,
    pub detail: String,
}

impl Counterexample {
    fn size_key(&self) -> (usize, usize, usize) {
        let len = |v: &Option<Vec<usize>>| v.as_ref().map_or(0, Vec::len);
        (self.order, len(&self.s), len(&self.x))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// The smallest counterexample by (order, |S|, |X|).
    pub fn minimized(&self) -> Option<&Counterexample> {
        self.violations.iter().min_by_key(|c| c.size_key())
    }
}

/// Collects results from parallel cases.
#[derive(Default)]
struct Tally {
    checked: usize,
    violations: Vec<Counterexample>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self
    }

    fn check(&mut self, ok: bool, cx: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if !ok {
            self.violations.push(cx());
        }
    }

    fn report(self, name: &str) -> SuiteReport {
        SuiteReport {
            name: name.to_string(),
            checked: self.checked,
            violations: self.violations,
        }
    }
}

fn cx(
    group: &FiniteGroup,
    alpha: Option<&Automorphism>,
    s: Option<&ElemSet>,
    x: Option<&ElemSet>,
    detail: impl Into<String>,
) -> Counterexample {
    Counterexample {
        group: group.id().to_string(),
        order: group.order(),
        alpha: alpha.map(|a| a.perm().to_vec()),
        s: s.map(ElemSet::to_vec),
        x: x.map(ElemSet::to_vec),
        detail: detail.into(),
    }
}

fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T) -> Tally + Sync + Send) -> Tally {
    items.par_iter().map(f).reduce(Tally::default, Tally::merge)
}

/// A catalog group with its involutions and subgroups.
pub struct Fixture {
    pub group: GroupRef,
    pub alphas: Vec<AlphaRef>,
    pub subgroups: Vec<Subgroup>,
}

pub fn fixtures(max_order: usize) -> Result<Vec<Fixture>> {
    catalog_up_to(max_order)
        .par_iter()
        .map(|spec| {
            let group = Arc::new(spec.build()?);
            let alphas = enumerate_involutory_automorphisms(&group, false)?
                .into_iter()
                .map(AlphaContext::shared)
                .collect::<Result<Vec<_>>>()?;
            let subgroups = enumerate_subgroups(&group)?;
            Ok(Fixture {
                group,
                alphas,
                subgroups,
            })
        })
        .collect()
}

/// (fixture, alpha) pairs flattened for parallel work.
fn alpha_cases(fx: &[Fixture]) -> Vec<(&Fixture, &AlphaRef)> {
    fx.iter()
        .flat_map(|f| f.alphas.iter().map(move |a| (f, a)))
        .collect()
}

fn all_subsets(ctx: &AlphaRef) -> Vec<GenCayleySubset> {
    enumerate_subsets(ctx, None)
        .expect("catalog orbit counts are within bounds")
        .collect()
}

pub fn suite_groups(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let specs = catalog_up_to(cfg.max_order.min(24));
    let t = par_tally(&specs, |spec| {
        let mut t = Tally::default();
        let g = match spec.build() {
            Ok(g) => Arc::new(g),
            Err(e) => {
                t.check(false, || Counterexample {
                    group: spec.to_string(),
                    order: spec.order().unwrap_or(0),
                    alpha: None,
                    s: None,
                    x: None,
                    detail: e.to_string(),
                });
                return t;
            }
        };
        t.check(g.check_axioms().is_ok(), || {
            cx(&g, None, None, None, "group axioms")
        });
        let subs = enumerate_subgroups(&g).expect("catalog orders are within the subgroup bound");
        let mine: Vec<ElemSet> = subs.iter().map(|h| h.elements().clone()).collect();
        let mut theirs = if g.order() <= oracle::SUBSET_SCAN_MAX_ORDER {
            oracle::subgroups_by_subset_scan(&g).expect("within scan bound")
        } else {
            oracle::subgroups_by_generator_triples(&g)
        };
        theirs.sort();
        t.check(mine == theirs, || {
            cx(
                &g,
                None,
                None,
                None,
                format!(
                    "{} subgroups enumerated, oracle found {}",
                    mine.len(),
                    theirs.len()
                ),
            )
        });
        for h in &subs {
            for side in [Side::Left, Side::Right] {
                let dec = cosets(h, side);
                let sizes_ok = dec.cosets.iter().all(|c| c.len() == h.len());
                let total: usize = dec.cosets.iter().map(ElemSet::len).sum();
                let union = dec
                    .cosets
                    .iter()
                    .fold(ElemSet::empty(g.order()), |a, c| a.union(c));
                let ok = sizes_ok
                    && total == g.order()
                    && union.len() == g.order()
                    && dec.cosets[0] == *h.elements();
                t.check(ok, || {
                    cx(
                        &g,
                        None,
                        None,
                        Some(h.elements()),
                        format!("{side:?} cosets do not partition"),
                    )
                });
            }
            let n = normalizer(h);
            let closed = n
                .elements()
                .iter()
                .all(|a| n.elements().iter().all(|b| n.contains(g.mul(a, b))));
            t.check(h.is_subgroup_of(&n) && closed, || {
                cx(&g, None, None, Some(h.elements()), "normalizer")
            });
        }
        t
    });
    Ok(t.report("groups"))
}

pub fn suite_automorphisms(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let fx = fixtures(cfg.max_order.min(24))?;
    let t = par_tally(&fx, |f| {
        let g = &f.group;
        let mut t = Tally::default();
        if g.order() <= oracle::BIJECTION_SCAN_MAX_ORDER {
            let mine: Vec<Vec<usize>> =
                f.alphas.iter().map(|a| a.alpha().perm().to_vec()).collect();
            let theirs = oracle::involutions_by_bijection(g, false).expect("within scan bound");
            t.check(mine == theirs, || {
                cx(
                    g,
                    None,
                    None,
                    None,
                    "involutions differ from bijection scan",
                )
            });
            let all = enumerate_automorphisms(g).expect("within bound").len();
            let all_o = oracle::automorphisms_by_bijection(g)
                .expect("within scan bound")
                .len();
            t.check(all == all_o, || {
                cx(
                    g,
                    None,
                    None,
                    None,
                    format!("|Aut| {all} vs bijection scan {all_o}"),
                )
            });
        }
        for ctx in &f.alphas {
            let a = ctx.alpha();
            let [omega, big_omega, mho, fix, k] = oracle::alpha_sets_by_definition(a);
            let cached = omega == ctx.omega
                && big_omega == ctx.big_omega
                && mho == ctx.mho
                && fix == ctx.fix
                && k == ctx.k_set;
            t.check(cached, || {
                cx(
                    g,
                    Some(a),
                    None,
                    None,
                    "derived sets differ from definition",
                )
            });
            let parts = omega.is_disjoint(&big_omega)
                && omega.is_disjoint(&mho)
                && big_omega.is_disjoint(&mho)
                && omega.union(&big_omega).union(&mho).len() == g.order();
            t.check(parts && omega.contains(0), || {
                cx(
                    g,
                    Some(a),
                    None,
                    None,
                    "omega, Omega, mho do not partition G",
                )
            });
            t.check(a.image(&omega) == omega, || {
                cx(g, Some(a), None, Some(&omega), "alpha(omega) != omega")
            });
            let tau_ok = (0..g.order()).all(|s| {
                let t1 = ctx.tau(s);
                ctx.tau(t1) == s
                    && (omega.contains(s) == omega.contains(t1))
                    && (!omega.contains(s) || t1 == s)
            });
            t.check(tau_ok, || {
                cx(
                    g,
                    Some(a),
                    None,
                    None,
                    "tau is not an involution preserving G \\ omega",
                )
            });
        }
        t
    });
    Ok(t.report("automorphisms"))
}

/// Identities for `omega` and `Omega` of componentwise involutions on
/// products of catalog groups up to order 8.
pub fn suite_product_sets(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let specs = catalog_up_to(cfg.max_order.min(8));
    let factors: Vec<(GroupRef, Vec<Automorphism>)> = specs
        .iter()
        .map(|s| {
            let g = Arc::new(s.build()?);
            let a = enumerate_involutory_automorphisms(&g, true)?;
            Ok((g, a))
        })
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..factors.len())
        .flat_map(|i| (0..factors.len()).map(move |j| (i, j)))
        .collect();
    let t = par_tally(&pairs, |&(i, j)| {
        let mut t = Tally::default();
        let (g1, a1s) = &factors[i];
        let (g2, a2s) = &factors[j];
        let prod =
            Arc::new(FiniteGroup::direct_product(g1, g2).expect("catalog products are groups"));
        let n2 = g2.order();
        for a1 in a1s {
            let c1 = AlphaContext::new(a1.clone()).expect("involutory");
            for a2 in a2s {
                let c2 = AlphaContext::new(a2.clone()).expect("involutory");
                let bar = product_automorphism(a1, a2, &prod).expect("componentwise involution");
                let c = AlphaContext::new(bar.clone()).expect("involutory");
                let times = |x: &ElemSet, y: &ElemSet| {
                    ElemSet::from_elems(
                        prod.order(),
                        x.iter().flat_map(|a| y.iter().map(move |b| a * n2 + b)),
                    )
                };
                let omega_ok = c.omega == times(&c1.omega, &c2.omega);
                let big_ok = c.big_omega == times(&c1.k_set, &c2.k_set).difference(&c.omega);
                t.check(omega_ok && big_ok && bar.is_involutory(), || {
                    cx(
                        &prod,
                        Some(&bar),
                        None,
                        None,
                        format!("product set identity fails (omega {omega_ok}, Omega {big_ok})"),
                    )
                });
            }
        }
        t
    });
    Ok(t.report("product-sets"))
}

pub fn suite_graph_laws(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let fx = fixtures(cfg.max_order.min(12))?;
    let mut cases = alpha_cases(&fx);
    cases.sort_by_key(|(f, _)| std::cmp::Reverse(f.group.order()));
    let mut t = par_tally(&cases, |(f, ctx)| {
        let mut t = Tally::default();
        for s in all_subsets(ctx) {
            let graph = build_graph(&s);
            let by_rule = (0..f.group.order()).all(|g| {
                let nb: Vec<usize> = (0..f.group.order())
                    .filter(|&h| graph.edge_rule(g, h))
                    .collect();
                nb == graph.neighbors(g)
            });
            let ok = graph.check_laws().is_ok() && by_rule;
            t.check(ok, || {
                cx(
                    &f.group,
                    Some(ctx.alpha()),
                    Some(s.elements()),
                    None,
                    "graph laws",
                )
            });
        }
        t
    });
    // With alpha = id the graph is the ordinary Cayley graph.
    let id_cases: Vec<&Fixture> = fx.iter().collect();
    t = t.merge(par_tally(&id_cases, |f| {
        let mut t = Tally::default();
        let id =
            AlphaContext::shared(Automorphism::identity(&f.group)).expect("identity is involutory");
        for s in all_subsets(&id) {
            let graph = build_graph(&s);
            let ok =
                graph.adjacency() == oracle::cayley_adjacency(&f.group, s.elements()).as_slice();
            t.check(ok, || {
                cx(
                    &f.group,
                    Some(id.alpha()),
                    Some(s.elements()),
                    None,
                    "identity alpha differs from Cayley graph",
                )
            });
        }
        t
    }));
    Ok(t.report("graph-laws"))
}

/// Disagreements among the equivalent evaluations for one vertex set.
pub fn mode_disagreements(graph: &GenCayleyGraph, x: &ElemSet) -> Vec<String> {
    let mut out = Vec::new();
    let amo: Vec<bool> = AT_MOST_ONE_MODES
        .iter()
        .map(|&m| eval_at_most_one(graph, x, m))
        .collect();
    if amo.iter().any(|&b| b != amo[0]) {
        out.push(format!("at-most-one modes {amo:?}"));
    }
    let dom = (
        dominates_by_graph(graph, x),
        dominates_by_translates(graph, x),
    );
    if dom.0 != dom.1 {
        out.push(format!("domination {dom:?}"));
    }
    let ind = (
        independent_by_graph(graph, x),
        independent_by_algebra(graph, x),
    );
    if ind.0 != ind.1 {
        out.push(format!("independence {ind:?}"));
    }
    let ctx = graph.ctx();
    let s = graph.subset().elements();
    let mut pc: Vec<bool> = CODE_MODES
        .iter()
        .map(|&m| perfect_code_by(graph, x, m))
        .collect();
    pc.push(oracle::is_perfect_code_by_count(ctx, s, x));
    if pc.iter().any(|&b| b != pc[0]) {
        out.push(format!("perfect-code modes {pc:?}"));
    }
    let mut tpc: Vec<bool> = CODE_MODES
        .iter()
        .map(|&m| total_perfect_code_by(graph, x, m))
        .collect();
    tpc.push(oracle::is_total_perfect_code_by_count(ctx, s, x));
    if tpc.iter().any(|&b| b != tpc[0]) {
        out.push(format!("total-code modes {tpc:?}"));
    }
    if tpc[0] && !(x.len() % 2 == 0 && x.iter().all(|v| graph.neighbors_in(v, x) == 1)) {
        out.push("total perfect code does not induce a matching".into());
    }
    out
}

/// Exhaustive over vertex sets up to order 8, `cfg.samples` seeded random
/// sets per (alpha, S) up to order 12.
pub fn suite_modes(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let fx = fixtures(cfg.max_order.min(12))?;
    let mut cases: Vec<(usize, usize, &Fixture, &AlphaRef)> = Vec::new();
    for (gi, f) in fx.iter().enumerate() {
        for (ai, a) in f.alphas.iter().enumerate() {
            cases.push((gi, ai, f, a));
        }
    }
    let seed = cfg.seed;
    let samples = cfg.samples;
    let t = par_tally(&cases, |&(gi, ai, f, ctx)| {
        let mut t = Tally::default();
        let n = f.group.order();
        for (si, s) in all_subsets(ctx).into_iter().enumerate() {
            let graph = build_graph(&s);
            let mut run = |x: ElemSet| {
                let bad = mode_disagreements(&graph, &x);
                t.check(bad.is_empty(), || {
                    cx(
                        &f.group,
                        Some(ctx.alpha()),
                        Some(s.elements()),
                        Some(&x),
                        bad.join("; "),
                    )
                });
            };
            if n <= 8 {
                for mask in 0u64..1 << n {
                    run(ElemSet::from_mask(n, mask));
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(
                    seed ^ ((gi as u64) << 40 | (ai as u64) << 20 | si as u64),
                );
                for _ in 0..samples {
                    run(ElemSet::from_mask(n, rng.gen::<u64>() & ((1u64 << n) - 1)));
                }
            }
        }
        t
    });
    Ok(t.report("modes"))
}

pub fn suite_pc_oracle(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let fx = fixtures(cfg.max_order.min(16))?;
    let cases = alpha_cases(&fx);
    let t = par_tally(&cases, |(f, ctx)| {
        let mut t = Tally::default();
        for h in &f.subgroups {
            let w = decide_subgroup_pc(h, ctx);
            let found = oracle::pc_search(h, ctx).expect("within bounds");
            let g = &f.group;
            t.check(w.is_code() == found.is_some(), || {
                cx(
                    g,
                    Some(ctx.alpha()),
                    found.as_ref().map(|s| s.elements()),
                    Some(h.elements()),
                    format!(
                        "decider says {}, brute force says {}",
                        w.is_code(),
                        found.is_some()
                    ),
                )
            });
            if let Some(s) = w.subset() {
                let ok = revalidate_pair(h, s, CodeKind::Perfect).is_ok()
                    && oracle::is_perfect_code_by_count(ctx, s.elements(), h.elements());
                t.check(ok, || {
                    cx(
                        g,
                        Some(ctx.alpha()),
                        Some(s.elements()),
                        Some(h.elements()),
                        "witness fails revalidation",
                    )
                });
            }
            if let Some(s) = &found {
                // A perfect-code subgroup is alpha-invariant and S misses alpha(H).
                let ah = alpha_image(h, ctx);
                let ok = ah.elements() == h.elements() && ah.elements().is_disjoint(s.elements());
                t.check(ok, || {
                    cx(
                        g,
                        Some(ctx.alpha()),
                        Some(s.elements()),
                        Some(h.elements()),
                        "alpha(H) != H or S meets alpha(H)",
                    )
                });
            }
        }
        t
    });
    Ok(t.report("pc-oracle"))
}

pub fn suite_tpc_oracle(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let fx = fixtures(cfg.max_order.min(16))?;
    let cases = alpha_cases(&fx);
    let t = par_tally(&cases, |(f, ctx)| {
        let mut t = Tally::default();
        let g = &f.group;
        for h in &f.subgroups {
            let w = decide_subgroup_tpc(h, ctx);
            let by_code = oracle::tpc_search(h, ctx).expect("within bounds");
            let by_transversal = oracle::transversal_search(h, ctx).expect("within bounds");
            let agree =
                w.is_code() == by_code.is_some() && by_code.is_some() == by_transversal.is_some();
            t.check(agree, || {
                cx(
                    g,
                    Some(ctx.alpha()),
                    None,
                    Some(h.elements()),
                    format!(
                        "decider {}, code search {}, transversal search {}",
                        w.is_code(),
                        by_code.is_some(),
                        by_transversal.is_some()
                    ),
                )
            });
            if let Some(s) = w.subset() {
                let ah = alpha_image(h, ctx);
                let ok = revalidate_pair(h, s, CodeKind::Total).is_ok()
                    && oracle::is_right_transversal(ah.elements(), s.elements(), g)
                    && oracle::is_left_transversal(ah.elements(), &g.inverse_set(s.elements()), g)
                    && oracle::is_total_perfect_code_by_count(ctx, s.elements(), h.elements());
                t.check(ok, || {
                    cx(
                        g,
                        Some(ctx.alpha()),
                        Some(s.elements()),
                        Some(h.elements()),
                        "total witness fails revalidation",
                    )
                });
            }
        }
        t
    });
    Ok(t.report("tpc-oracle"))
}

pub fn suite_abelian(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let fx: Vec<Fixture> = fixtures(cfg.max_order.min(24))?
        .into_iter()
        .filter(|f| f.group.is_abelian())
        .collect();
    let auts: Vec<Vec<Automorphism>> = fx
        .par_iter()
        .map(|f| enumerate_automorphisms(&f.group))
        .collect::<Result<_>>()?;
    let cases: Vec<(usize, &AlphaRef)> = fx
        .iter()
        .enumerate()
        .flat_map(|(i, f)| f.alphas.iter().map(move |a| (i, a)))
        .collect();
    let t = par_tally(&cases, |&(i, ctx)| {
        let f = &fx[i];
        let g = &f.group;
        let a = ctx.alpha();
        let mut t = Tally::default();
        let omega_is_subgroup = Subgroup::new(g.clone(), ctx.omega.clone()).is_ok();
        t.check(omega_is_subgroup, || {
            cx(
                g,
                Some(a),
                None,
                Some(&ctx.omega),
                "omega is not a subgroup",
            )
        });
        for h in &f.subgroups {
            let w = decide_subgroup_pc(h, ctx);
            let pred = thm3_predicate(h, ctx).expect("abelian");
            t.check(pred == w.is_code(), || {
                cx(
                    g,
                    Some(a),
                    None,
                    Some(h.elements()),
                    format!("criterion {pred}, decider {}", w.is_code()),
                )
            });
            if pred {
                let ok = build_witness_abelian(h, ctx)
                    .map_err(|e| e.to_string())
                    .and_then(|s| revalidate_pair(h, &s, CodeKind::Perfect));
                t.check(ok.is_ok(), || {
                    cx(
                        g,
                        Some(a),
                        None,
                        Some(h.elements()),
                        format!("constructed witness: {}", ok.unwrap_err()),
                    )
                });
            }
            if !h.elements().is_subset(&ctx.omega) {
                continue;
            }
            if h.len() % 2 == 1 {
                let expect = *h.elements() == ctx.omega;
                t.check(w.is_code() == expect, || {
                    cx(
                        g,
                        Some(a),
                        None,
                        Some(h.elements()),
                        format!(
                            "odd-order H inside omega: decider {}, H = omega {expect}",
                            w.is_code()
                        ),
                    )
                });
            }
            let characteristic = auts[i]
                .iter()
                .all(|b| b.image(h.elements()) == *h.elements());
            if characteristic {
                let squares_ok = (0..g.order()).all(|x| {
                    let y = g.mul(a.apply(x), x);
                    !h.contains(y) || y == 0
                });
                let expect = *h.elements() == ctx.omega && squares_ok;
                t.check(w.is_code() == expect, || {
                    cx(
                        g,
                        Some(a),
                        None,
                        Some(h.elements()),
                        format!(
                            "characteristic H inside omega: decider {}, expected {expect}",
                            w.is_code()
                        ),
                    )
                });
            }
        }
        t
    });
    Ok(t.report("abelian"))
}

/// A perfect or total perfect code found by the deciders.
pub struct Hit<'a> {
    pub fixture: &'a Fixture,
    pub ctx: &'a AlphaRef,
    pub pair: CodePair,
    pub kind: CodeKind,
}

pub fn census_hits<'a>(fx: &'a [Fixture], kinds: &[CodeKind]) -> Vec<Hit<'a>> {
    alpha_cases(fx)
        .par_iter()
        .flat_map_iter(|&(f, ctx)| {
            let mut out = Vec::new();
            for h in &f.subgroups {
                for &kind in kinds {
                    let w = match kind {
                        CodeKind::Perfect => decide_subgroup_pc(h, ctx),
                        CodeKind::Total => decide_subgroup_tpc(h, ctx),
                    };
                    if let Some(s) = w.subset() {
                        out.push(Hit {
                            fixture: f,
                            ctx,
                            pair: CodePair::new(h.clone(), s.clone()).expect("same group"),
                            kind,
                        });
                    }
                }
            }
            out
        })
        .collect()
}

/// Structural facts about every subgroup perfect-code witness in the
/// census: invariance, disjointness, two-sided transversal and the
/// exclusions for `mho` elements.
pub fn suite_census_audit(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let fx = fixtures(cfg.max_order.min(24))?;
    let hits = census_hits(&fx, &[CodeKind::Perfect]);
    let t = par_tally(&hits, |hit| {
        let mut t = Tally::default();
        let g = &hit.fixture.group;
        let a = hit.ctx.alpha();
        let h = &hit.pair.subgroup;
        let s = hit.pair.subset.elements();
        let c = |d: &str| cx(g, Some(a), Some(s), Some(h.elements()), d.to_string());
        let ah = alpha_image(h, hit.ctx);
        t.check(ah.elements() == h.elements(), || c("alpha(H) != H"));
        t.check(ah.elements().is_disjoint(s), || c("S meets alpha(H)"));
        let mut te = s.clone();
        te.insert(0);
        t.check(oracle::is_right_transversal(h.elements(), &te, g), || {
            c("{e} ∪ S is not a right transversal")
        });
        t.check(oracle::is_left_transversal(h.elements(), &te, g), || {
            c("{e} ∪ S is not a left transversal")
        });
        let right = cosets(h, Side::Right);
        for x in s.iter().filter(|&x| hit.ctx.mho.contains(x)) {
            let sq = g.mul(a.apply(x), x);
            t.check(!h.contains(sq), || {
                c(&format!("alpha(s)s in H for s = {x}"))
            });
            t.check(right.coset_of(hit.ctx.tau(x)) != right.coset_of(x), || {
                c(&format!("H alpha(s^-1) = Hs for s = {x}"))
            });
        }
        t
    });
    Ok(t.report("census-audit"))
}

/// Conjugation by fixed points, automorphism transport and their
/// combination, for perfect and total perfect codes up to order 12.
pub fn suite_transport(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let fx = fixtures(cfg.max_order.min(12))?;
    let auts: Vec<Vec<Automorphism>> = fx
        .par_iter()
        .map(|f| enumerate_automorphisms(&f.group))
        .collect::<Result<_>>()?;
    let hits = census_hits(&fx, &[CodeKind::Perfect, CodeKind::Total]);
    let t = par_tally(&hits, |hit| {
        let mut t = Tally::default();
        let g = &hit.fixture.group;
        let fi = fx
            .iter()
            .position(|f| Arc::ptr_eq(&f.group, g))
            .expect("hit belongs to a fixture");
        let a = hit.ctx.alpha();
        let c = |d: String| {
            cx(
                g,
                Some(a),
                Some(hit.pair.subset.elements()),
                Some(hit.pair.subgroup.elements()),
                d,
            )
        };
        for x in hit.ctx.fix.iter() {
            let r = transport_conjugate(&hit.pair, x)
                .map_err(|e| e.to_string())
                .and_then(|p| p.check(hit.kind));
            t.check(r.is_ok(), || {
                c(format!("conjugation by {x}: {}", r.clone().unwrap_err()))
            });
        }
        for beta in &auts[fi] {
            let r = transport_automorphism(&hit.pair, beta);
            let moved = match r {
                Ok(p) => p,
                Err(e) => {
                    t.check(false, || c(format!("transport by {:?}: {e}", beta.perm())));
                    continue;
                }
            };
            let ok = moved.check(hit.kind);
            t.check(ok.is_ok(), || {
                c(format!(
                    "transport by {:?}: {}",
                    beta.perm(),
                    ok.clone().unwrap_err()
                ))
            });
            for x in moved.ctx().fix.iter() {
                let r = transport_combined(&hit.pair, beta, x)
                    .map_err(|e| e.to_string())
                    .and_then(|p| p.check(hit.kind));
                t.check(r.is_ok(), || {
                    c(format!(
                        "transport by {:?} then {x}: {}",
                        beta.perm(),
                        r.clone().unwrap_err()
                    ))
                });
            }
        }
        t
    });
    Ok(t.report("transport"))
}

/// One pair of input codes and the product verdicts.
#[derive(Clone, Debug)]
pub struct ProductCase {
    pub label: String,
    pub report: ProductReport,
}

/// Product verdicts for every pair of subgroup perfect codes with nonempty
/// `S` (and every pair of total perfect codes) among catalog groups of
/// order at most `max_order`.
pub fn product_survey(max_order: usize) -> Result<Vec<ProductCase>> {
    let fx = fixtures(max_order)?;
    let mut pcs = census_hits(&fx, &[CodeKind::Perfect]);
    pcs.retain(|h| !h.pair.subset.is_empty());
    let tpcs = census_hits(&fx, &[CodeKind::Total]);
    let label = |h: &Hit| {
        format!(
            "{}:{:?}:{}:{}",
            h.fixture.group.id(),
            h.ctx.alpha().perm(),
            h.pair.subgroup.elements(),
            h.pair.subset.elements()
        )
    };
    let mut jobs = Vec::new();
    for list in [&pcs, &tpcs] {
        for i in 0..list.len() {
            for j in i..list.len() {
                jobs.push((&list[i], &list[j]));
            }
        }
    }
    jobs.par_iter()
        .map(|(a, b)| {
            Ok(ProductCase {
                label: format!("{} x {}", label(a), label(b)),
                report: verify_product_props(&a.pair, &b.pair)?,
            })
        })
        .collect()
}

pub fn suite_products(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let cases = product_survey(cfg.max_order.min(6))?;
    let mut t = Tally::default();
    for c in &cases {
        let r = &c.report;
        let bad = |d: &str| Counterexample {
            group: c.label.clone(),
            order: 0,
            alpha: None,
            s: None,
            x: None,
            detail: d.to_string(),
        };
        if let Some(v) = r.t2_perfect {
            t.check(v, || bad("H1 x H2 is not a perfect code for T2"));
        }
        if let Some(v) = r.t1_counting_from_perfect {
            t.check(!v && r.t1_total_from_perfect == Some(false), || {
                bad("perfect inputs gave a total perfect code for T1")
            });
        }
        if let Some(v) = r.t1_total_from_total {
            t.check(v, || {
                bad("total inputs did not give a total perfect code for T1")
            });
        }
    }
    Ok(t.report("products"))
}

pub fn suite_restriction(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let fx = fixtures(cfg.max_order.min(24))?;
    let hits = census_hits(&fx, &[CodeKind::Perfect]);
    let t = par_tally(&hits, |hit| {
        let mut t = Tally::default();
        let r = restrict_to_normalizer(&hit.pair);
        t.check(r.is_ok(), || {
            cx(
                &hit.fixture.group,
                Some(hit.ctx.alpha()),
                Some(hit.pair.subset.elements()),
                Some(hit.pair.subgroup.elements()),
                format!("restriction to the normalizer: {}", r.as_ref().unwrap_err()),
            )
        });
        t
    });
    Ok(t.report("restriction"))
}

/// Every stored census witness re-validates and every boolean matches a
/// fresh decision.
pub fn suite_census_records(cfg: &VerifyConfig) -> Result<SuiteReport> {
    use crate::census::{run_census, CensusConfig};
    let specs: Vec<GroupSpec> = catalog_up_to(cfg.max_order.min(24));
    let mut cc = CensusConfig::new(specs);
    cc.workers = cfg.workers;
    let records = run_census(&cc)?;
    let mut groups: std::collections::HashMap<String, GroupRef> = std::collections::HashMap::new();
    for spec in catalog_up_to(cfg.max_order.min(24)) {
        groups.insert(spec.to_string(), Arc::new(spec.build()?));
    }
    let t = par_tally(&records, |r| {
        let mut t = Tally::default();
        let Some(perm) = &r.alpha else {
            return t;
        };
        let g = &groups[&r.group];
        let ctx =
            AlphaContext::shared(Automorphism::new(g.clone(), perm.clone()).expect("stored alpha"))
                .expect("involutory");
        let h = Subgroup::from_elems(g, &r.subgroup).expect("stored subgroup");
        for (kind, flag, wit) in [
            (CodeKind::Perfect, r.is_pc, &r.pc_witness),
            (CodeKind::Total, r.is_tpc, &r.tpc_witness),
        ] {
            let ok = match wit {
                Some(s) => {
                    crate::gencayley::validate_elems(&ctx, s)
                        .map_err(|e| e.to_string())
                        .and_then(|s| revalidate_pair(&h, &s, kind))
                        .is_ok()
                        && flag == Some(true)
                }
                None => flag == Some(false),
            };
            t.check(ok, || {
                cx(
                    g,
                    Some(ctx.alpha()),
                    None,
                    Some(h.elements()),
                    format!("stored {kind:?} verdict does not re-validate"),
                )
            });
        }
        t
    });
    Ok(t.report("census-records"))
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    match name {
        "groups" => suite_groups(cfg),
        "automorphisms" => suite_automorphisms(cfg),
        "product-sets" => suite_product_sets(cfg),
        "graph-laws" => suite_graph_laws(cfg),
        "modes" => suite_modes(cfg),
        "pc-oracle" => suite_pc_oracle(cfg),
        "tpc-oracle" => suite_tpc_oracle(cfg),
        "abelian" => suite_abelian(cfg),
        "census-audit" => suite_census_audit(cfg),
        "transport" => suite_transport(cfg),
        "products" => suite_products(cfg),
        "restriction" => suite_restriction(cfg),
        "census-records" => suite_census_records(cfg),
        other => Err(crate::error::Error::UnsupportedSpec(format!(
            "unknown suite {other:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

/// Runs the named suites (all when `names` is empty) on a pool of
/// `cfg.workers` threads.
pub fn run_suites(names: &[String], cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    let names: Vec<String> = if names.is_empty() {
        SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        names.to_vec()
    };
    with_workers(cfg.workers, || {
        names.iter().map(|n| run_suite(n, cfg)).collect()
    })?
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            max_order: 6,
            samples: 20,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn small_suites_pass() {
        for name in SUITES {
            let r = run_suite(name, &small()).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.minimized());
            assert!(r.checked > 0, "{name} checked nothing");
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &small()).is_err());
    }

    #[test]
    fn minimized_picks_smallest() {
        let mk = |order, s: usize| Counterexample {
            group: String::new(),
            order,
            alpha: None,
            s: Some(vec![0; s]),
            x: None,
            detail: String::new(),
        };
        let r = SuiteReport {
            name: "t".into(),
            checked: 3,
            violations: vec![mk(8, 1), mk(6, 3), mk(6, 2)],
        };
        assert_eq!(r.minimized(), Some(&mk(6, 2)));
    }
}
