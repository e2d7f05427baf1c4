//! Deciding whether a subgroup is a (total) perfect code for some
//! generalized Cayley subset induced by a fixed involution.
//!
//! A subgroup `H` is a perfect code of `GC(G, S, alpha)` exactly when
//! `alpha(H) = H` and `{e} ∪ S` is a right transversal of `H`; it is a total
//! perfect code exactly when `S` is a right transversal of `alpha(H)`. Both
//! questions reduce to covering every (nontrivial) coset once by tau-orbits
//! outside `omega`: a `big_omega` element covers its own coset, and a `mho`
//! pair `{s, alpha(s^-1)}` covers two different cosets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automorphism::AlphaRef;
use crate::codes::{is_perfect_code, is_total_perfect_code, CodeKind, CodeMode};
use crate::error::{Error, Result};
use crate::gencayley::{build_graph, validate_subset, GenCayleySubset};
use crate::set::ElemSet;
use crate::subgroup::{cosets, CosetDecomposition, Side, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefutationReason {
    AlphaNotPreserving,
    #[serde(rename = "self-paired-coset-without-omega-element")]
    SelfPairedWithoutOmega,
    #[serde(rename = "coset-inside-omega")]
    CosetInsideOmega,
    SearchExhausted,
}

impl fmt::Display for RefutationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RefutationReason::AlphaNotPreserving => "alpha-not-preserving",
            RefutationReason::SelfPairedWithoutOmega => "self-paired-coset-without-omega-element",
            RefutationReason::CosetInsideOmega => "coset-inside-omega",
            RefutationReason::SearchExhausted => "search-exhausted",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub reason: RefutationReason,
    /// Offending coset index, when one is singled out.
    pub coset: Option<usize>,
    /// Offending element, when one is singled out.
    pub witness: Option<usize>,
}

/// Where tau sends the elements of a nontrivial right coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pairing {
    SelfPaired,
    PairedWith(usize),
    /// Images spread over several cosets; the coset map is not well defined.
    Mixed(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetClass {
    pub coset: usize,
    pub pairing: Pairing,
    /// Representative placed in `S`, once a witness is built.
    pub rep: Option<usize>,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Witness(GenCayleySubset),
    Refuted(Refutation),
}

/// Outcome of a subgroup-level decision.
#[derive(Clone, Debug)]
pub struct CodeWitness {
    pub subgroup: Subgroup,
    pub kind: CodeKind,
    pub verdict: Verdict,
    pub alpha_preserves: bool,
    pub coset_classification: Vec<CosetClass>,
}

impl CodeWitness {
    pub fn is_code(&self) -> bool {
        matches!(self.verdict, Verdict::Witness(_))
    }

    pub fn subset(&self) -> Option<&GenCayleySubset> {
        match &self.verdict {
            Verdict::Witness(s) => Some(s),
            Verdict::Refuted(_) => None,
        }
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        match &self.verdict {
            Verdict::Witness(_) => None,
            Verdict::Refuted(r) => Some(r),
        }
    }

    /// Re-checks a witness from scratch: subset admissibility, the
    /// transversal property and the graph-level code definition.
    pub fn revalidate(&self) -> std::result::Result<(), String> {
        let Some(s) = self.subset() else {
            return Ok(());
        };
        revalidate_pair(&self.subgroup, s, self.kind)
    }
}

/// Full check that `H` is a (total) perfect code of `GC(G, S, alpha)`.
pub fn revalidate_pair(
    h: &Subgroup,
    s: &GenCayleySubset,
    kind: CodeKind,
) -> std::result::Result<(), String> {
    let ctx = s.ctx();
    validate_subset(ctx, s.elements().clone()).map_err(|e| e.to_string())?;
    let alpha_h = alpha_image(h, ctx);
    match kind {
        CodeKind::Perfect => {
            if alpha_h.elements() != h.elements() {
                return Err("alpha(H) != H".into());
            }
            let mut t = s.elements().clone();
            t.insert(0);
            if t.len() != s.len() + 1 || !cosets(h, Side::Right).is_transversal(&t) {
                return Err("{e} ∪ S is not a right transversal of H".into());
            }
        }
        CodeKind::Total => {
            if !cosets(&alpha_h, Side::Right).is_transversal(s.elements()) {
                return Err("S is not a right transversal of alpha(H)".into());
            }
        }
    }
    let graph = build_graph(s);
    let ok = match kind {
        CodeKind::Perfect => is_perfect_code(&graph, h.elements(), CodeMode::Graph),
        CodeKind::Total => is_total_perfect_code(&graph, h.elements(), CodeMode::Graph),
    };
    if ok {
        Ok(())
    } else {
        Err(format!("H is not a {kind:?} code of the graph"))
    }
}

pub fn alpha_image(h: &Subgroup, ctx: &AlphaRef) -> Subgroup {
    h.map_unchecked(|x| ctx.alpha().apply(x))
}

/// `T` contains `e`, is a right transversal of `H`, and `T \ {e}` is a
/// generalized Cayley subset.
pub fn is_gc_transversal(h: &Subgroup, t: &ElemSet, ctx: &AlphaRef) -> bool {
    if !t.contains(0) || !cosets(h, Side::Right).is_transversal(t) {
        return false;
    }
    let mut s = t.clone();
    s.remove(0);
    validate_subset(ctx, s).is_ok()
}

fn preservation_witness(h: &Subgroup, ctx: &AlphaRef) -> Option<(usize, usize)> {
    h.elements()
        .iter()
        .map(|x| (x, ctx.alpha().apply(x)))
        .find(|&(_, y)| !h.contains(y))
}

/// Classifies each nontrivial right coset of `H` by where
/// `Hg ↦ H alpha(g^-1)` sends it. Requires `alpha(H) = H`.
pub fn coset_pairing(h: &Subgroup, ctx: &AlphaRef) -> Result<Vec<CosetClass>> {
    if let Some((witness, image)) = preservation_witness(h, ctx) {
        return Err(Error::AlphaNotPreserving { witness, image });
    }
    let dec = cosets(h, Side::Right);
    Ok(classify(&dec, ctx))
}

fn classify(dec: &CosetDecomposition, ctx: &AlphaRef) -> Vec<CosetClass> {
    let classes: Vec<CosetClass> = (1..dec.len())
        .map(|c| {
            let mut partners: Vec<usize> = dec.cosets[c]
                .iter()
                .map(|g| dec.coset_of(ctx.tau(g)))
                .collect();
            partners.sort_unstable();
            partners.dedup();
            let pairing = match partners[..] {
                [d] if d == c => Pairing::SelfPaired,
                [d] => Pairing::PairedWith(d),
                _ => Pairing::Mixed(partners),
            };
            CosetClass {
                coset: c,
                pairing,
                rep: None,
            }
        })
        .collect();
    for cl in &classes {
        if let Pairing::PairedWith(d) = cl.pairing {
            debug_assert_eq!(
                classes[d - 1].pairing,
                Pairing::PairedWith(cl.coset),
                "coset map is not an involution"
            );
        }
    }
    classes
}

/// Decides whether `H` is a perfect code of some `GC(G, S, alpha)`.
///
/// When the coset map is well defined (always for abelian `G`) this is a
/// single scan: a self-paired coset needs a `big_omega` element and a
/// paired coset needs an element outside `omega`, whose tau-image then
/// represents the partner. Otherwise an exact-cover search over
/// tau-orbits decides. Ties break to the least element index.
pub fn decide_subgroup_pc(h: &Subgroup, ctx: &AlphaRef) -> CodeWitness {
    let refuted = |reason, coset, witness, alpha_preserves, classes| CodeWitness {
        subgroup: h.clone(),
        kind: CodeKind::Perfect,
        verdict: Verdict::Refuted(Refutation {
            reason,
            coset,
            witness,
        }),
        alpha_preserves,
        coset_classification: classes,
    };
    if let Some((w, _)) = preservation_witness(h, ctx) {
        return refuted(
            RefutationReason::AlphaNotPreserving,
            None,
            Some(w),
            false,
            Vec::new(),
        );
    }
    let dec = cosets(h, Side::Right);
    let mut classes = classify(&dec, ctx);
    let n = h.group().order();
    let mut reps: Vec<Option<usize>> = vec![None; dec.len()];

    if classes
        .iter()
        .all(|c| !matches!(c.pairing, Pairing::Mixed(_)))
    {
        for i in 0..classes.len() {
            let c = classes[i].coset;
            let coset = &dec.cosets[c];
            match classes[i].pairing {
                Pairing::SelfPaired => match coset.intersection(&ctx.big_omega).least() {
                    Some(z) => reps[c] = Some(z),
                    None => {
                        let reason = if coset.is_subset(&ctx.omega) {
                            RefutationReason::CosetInsideOmega
                        } else {
                            RefutationReason::SelfPairedWithoutOmega
                        };
                        return refuted(reason, Some(c), coset.least(), true, classes);
                    }
                },
                Pairing::PairedWith(d) if d > c => match coset.difference(&ctx.omega).least() {
                    Some(t) => {
                        reps[c] = Some(t);
                        reps[d] = Some(ctx.tau(t));
                    }
                    None => {
                        return refuted(
                            RefutationReason::CosetInsideOmega,
                            Some(c),
                            coset.least(),
                            true,
                            classes,
                        )
                    }
                },
                _ => {}
            }
        }
    } else {
        match exact_cover(&dec, ctx, true) {
            Some(found) => reps = found,
            None => {
                let dead = dead_coset(&dec, ctx, true);
                let (reason, coset) = match dead {
                    Some(c) if dec.cosets[c].is_subset(&ctx.omega) => {
                        (RefutationReason::CosetInsideOmega, Some(c))
                    }
                    Some(c) => (RefutationReason::SelfPairedWithoutOmega, Some(c)),
                    None => (RefutationReason::SearchExhausted, None),
                };
                return refuted(reason, coset, None, true, classes);
            }
        }
    }
    for cl in &mut classes {
        cl.rep = reps[cl.coset];
    }
    let s = ElemSet::from_elems(n, reps.iter().flatten().copied());
    let subset = validate_subset(ctx, s).expect("coset representatives form an admissible subset");
    debug_assert!(revalidate_pair(h, &subset, CodeKind::Perfect).is_ok());
    CodeWitness {
        subgroup: h.clone(),
        kind: CodeKind::Perfect,
        verdict: Verdict::Witness(subset),
        alpha_preserves: true,
        coset_classification: classes,
    }
}

/// Decides whether `H` is a total perfect code of some `GC(G, S, alpha)`,
/// i.e. whether some admissible `S` is a right transversal of `alpha(H)`.
/// `alpha(H) = H` is recorded but not required.
pub fn decide_subgroup_tpc(h: &Subgroup, ctx: &AlphaRef) -> CodeWitness {
    let alpha_h = alpha_image(h, ctx);
    let alpha_preserves = alpha_h.elements() == h.elements();
    let dec = cosets(&alpha_h, Side::Right);
    let verdict = match exact_cover(&dec, ctx, false) {
        Some(reps) => {
            let s = ElemSet::from_elems(h.group().order(), reps.iter().flatten().copied());
            let subset = validate_subset(ctx, s).expect("transversal is an admissible subset");
            debug_assert!(revalidate_pair(h, &subset, CodeKind::Total).is_ok());
            Verdict::Witness(subset)
        }
        None => Verdict::Refuted(Refutation {
            reason: RefutationReason::SearchExhausted,
            coset: dead_coset(&dec, ctx, false),
            witness: None,
        }),
    };
    CodeWitness {
        subgroup: h.clone(),
        kind: CodeKind::Total,
        verdict,
        alpha_preserves,
        coset_classification: Vec::new(),
    }
}

/// Ways to cover coset `c`: its least `big_omega` element, or for each
/// other uncovered coset `d`, the least `s` in `c` outside `omega` with
/// `tau(s)` in `d`.
fn cover_options(
    dec: &CosetDecomposition,
    ctx: &AlphaRef,
    c: usize,
    skip_trivial: bool,
) -> (Option<usize>, Vec<(usize, usize)>) {
    let coset = &dec.cosets[c];
    let own = coset.intersection(&ctx.big_omega).least();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for s in coset.intersection(&ctx.mho).iter() {
        let d = dec.coset_of(ctx.tau(s));
        if d == c || (skip_trivial && d == 0) {
            continue;
        }
        if !pairs.iter().any(|&(dd, _)| dd == d) {
            pairs.push((d, s));
        }
    }
    pairs.sort_unstable();
    (own, pairs)
}

fn dead_coset(dec: &CosetDecomposition, ctx: &AlphaRef, skip_trivial: bool) -> Option<usize> {
    let start = usize::from(skip_trivial);
    (start..dec.len()).find(|&c| {
        let (own, pairs) = cover_options(dec, ctx, c, skip_trivial);
        own.is_none() && pairs.is_empty()
    })
}

/// Backtracking exact cover of the cosets (all, or all but coset 0) by
/// tau-orbits. Returns the chosen representative of each coset.
fn exact_cover(
    dec: &CosetDecomposition,
    ctx: &AlphaRef,
    skip_trivial: bool,
) -> Option<Vec<Option<usize>>> {
    let options: Vec<_> = (0..dec.len())
        .map(|c| cover_options(dec, ctx, c, skip_trivial))
        .collect();
    let mut reps = vec![None; dec.len()];
    let start = usize::from(skip_trivial);
    if (start..dec.len()).any(|c| options[c].0.is_none() && options[c].1.is_empty()) {
        return None;
    }
    fn go(
        options: &[(Option<usize>, Vec<(usize, usize)>)],
        ctx: &AlphaRef,
        start: usize,
        reps: &mut Vec<Option<usize>>,
    ) -> bool {
        let Some(c) = (start..reps.len()).find(|&c| reps[c].is_none()) else {
            return true;
        };
        if let Some(z) = options[c].0 {
            reps[c] = Some(z);
            if go(options, ctx, start, reps) {
                return true;
            }
            reps[c] = None;
        }
        for &(d, s) in &options[c].1 {
            if reps[d].is_some() {
                continue;
            }
            reps[c] = Some(s);
            reps[d] = Some(ctx.tau(s));
            if go(options, ctx, start, reps) {
                return true;
            }
            reps[c] = None;
            reps[d] = None;
        }
        false
    }
    go(&options, ctx, start, &mut reps).then_some(reps)
}

/// For abelian `G`: `alpha(H) = H`, and every `g ∉ H` with
/// `alpha(g) g ∈ H` has some `h ∈ H` with `hg ∈ big_omega`.
pub fn thm3_predicate(h: &Subgroup, ctx: &AlphaRef) -> Result<bool> {
    let g = h.group();
    g.require_abelian()?;
    if preservation_witness(h, ctx).is_some() {
        return Ok(false);
    }
    let a = ctx.alpha();
    Ok((0..g.order()).filter(|&x| !h.contains(x)).all(|x| {
        !h.contains(g.mul(a.apply(x), x))
            || h.elements()
                .iter()
                .any(|y| ctx.big_omega.contains(g.mul(y, x)))
    }))
}

/// Witness built coset by coset for abelian `G`: a coset fixed by the coset
/// map contributes some `h x` in `big_omega`; a swapped pair contributes
/// its representative `y` and `alpha(y^-1)`.
pub fn build_witness_abelian(h: &Subgroup, ctx: &AlphaRef) -> Result<GenCayleySubset> {
    if !thm3_predicate(h, ctx)? {
        return Err(Error::Precondition(
            "subgroup fails the abelian perfect-code criterion".into(),
        ));
    }
    let g = h.group();
    let dec = cosets(h, Side::Right);
    let mut s = ElemSet::empty(g.order());
    let mut done = vec![false; dec.len()];
    for c in 1..dec.len() {
        if done[c] {
            continue;
        }
        let x = dec.cosets[c].least().expect("cosets are nonempty");
        let partner = dec.coset_of(ctx.tau(x));
        if partner == c {
            let z = h
                .elements()
                .iter()
                .map(|y| g.mul(y, x))
                .find(|&z| ctx.big_omega.contains(z))
                .expect("criterion guarantees a big_omega element");
            s.insert(z);
        } else {
            s.insert(x);
            s.insert(ctx.tau(x));
            done[partner] = true;
        }
        done[c] = true;
    }
    Ok(validate_subset(ctx, s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::{inversion_automorphism, AlphaContext, Automorphism};
    use crate::group::{GroupRef, GroupSpec};
    use std::sync::Arc;

    fn grp(s: &str) -> GroupRef {
        Arc::new(s.parse::<GroupSpec>().unwrap().build().unwrap())
    }

    fn iota(g: &GroupRef) -> AlphaRef {
        AlphaContext::shared(inversion_automorphism(g).unwrap()).unwrap()
    }

    fn sub(g: &GroupRef, v: &[usize]) -> Subgroup {
        Subgroup::from_elems(g, v).unwrap()
    }

    fn witness_elems(w: &CodeWitness) -> Vec<usize> {
        w.subset().expect("witness").elements().to_vec()
    }

    #[test]
    fn z6_pairing() {
        let z6 = grp("Z6");
        let ctx = iota(&z6);
        let cl = coset_pairing(&sub(&z6, &[0, 3]), &ctx).unwrap();
        assert!(cl.iter().all(|c| c.pairing == Pairing::SelfPaired));
        assert_eq!(cl.len(), 2);
        let cl = coset_pairing(&sub(&z6, &[0, 2, 4]), &ctx).unwrap();
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].pairing, Pairing::SelfPaired);
    }

    #[test]
    fn klein_pairing_and_refutation() {
        let v4 = grp("V4");
        let ctx =
            AlphaContext::shared(Automorphism::new(v4.clone(), vec![0, 2, 1, 3]).unwrap()).unwrap();
        let h = sub(&v4, &[0, 3]);
        let cl = coset_pairing(&h, &ctx).unwrap();
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].pairing, Pairing::SelfPaired);
        let w = decide_subgroup_pc(&h, &ctx);
        let r = w.refutation().unwrap();
        assert_eq!(r.reason, RefutationReason::SelfPairedWithoutOmega);
        assert_eq!(r.coset, Some(1));
        // alpha moves {0,1}
        let err = coset_pairing(&sub(&v4, &[0, 1]), &ctx).unwrap_err();
        assert!(matches!(
            err,
            Error::AlphaNotPreserving {
                witness: 1,
                image: 2
            }
        ));
        let w = decide_subgroup_pc(&sub(&v4, &[0, 1]), &ctx);
        assert_eq!(
            w.refutation().unwrap().reason,
            RefutationReason::AlphaNotPreserving
        );
    }

    #[test]
    fn z6_decisions() {
        let z6 = grp("Z6");
        let ctx = iota(&z6);
        let w = decide_subgroup_pc(&sub(&z6, &[0, 3]), &ctx);
        assert_eq!(witness_elems(&w), vec![1, 5]);
        w.revalidate().unwrap();
        let w = decide_subgroup_pc(&sub(&z6, &[0, 2, 4]), &ctx);
        assert_eq!(witness_elems(&w), vec![1]);
        let w = decide_subgroup_pc(&Subgroup::whole(&z6), &ctx);
        assert!(witness_elems(&w).is_empty());
        let w = decide_subgroup_pc(&Subgroup::trivial(&z6), &ctx);
        assert!(!w.is_code());
    }

    #[test]
    fn z4_trivial_refuted() {
        let z4 = grp("Z4");
        let ctx = iota(&z4);
        let w = decide_subgroup_pc(&Subgroup::trivial(&z4), &ctx);
        let r = w.refutation().unwrap();
        assert_eq!(r.reason, RefutationReason::CosetInsideOmega);
        assert_eq!(r.witness, Some(2));
        assert!(!thm3_predicate(&Subgroup::trivial(&z4), &ctx).unwrap());
    }

    #[test]
    fn z6_total_decisions() {
        let z6 = grp("Z6");
        let ctx = iota(&z6);
        let w = decide_subgroup_tpc(&sub(&z6, &[0, 3]), &ctx);
        assert_eq!(witness_elems(&w), vec![1, 3, 5]);
        w.revalidate().unwrap();
        let w = decide_subgroup_tpc(&sub(&z6, &[0, 2, 4]), &ctx);
        let r = w.refutation().unwrap();
        assert_eq!(r.reason, RefutationReason::SearchExhausted);
        // coset 0 = {0,2,4} lies inside omega
        assert_eq!(r.coset, Some(0));
        let w = decide_subgroup_tpc(&Subgroup::whole(&z6), &ctx);
        assert_eq!(witness_elems(&w), vec![1]);
        w.revalidate().unwrap();
    }

    #[test]
    fn abelian_criterion() {
        let z6 = grp("Z6");
        let ctx = iota(&z6);
        assert!(thm3_predicate(&sub(&z6, &[0, 3]), &ctx).unwrap());
        assert!(thm3_predicate(&Subgroup::whole(&z6), &ctx).unwrap());
        let s = build_witness_abelian(&sub(&z6, &[0, 2, 4]), &ctx).unwrap();
        assert!([vec![1], vec![3], vec![5]].contains(&s.elements().to_vec()));
        revalidate_pair(&sub(&z6, &[0, 2, 4]), &s, CodeKind::Perfect).unwrap();
        let s = build_witness_abelian(&sub(&z6, &[0, 3]), &ctx).unwrap();
        assert_eq!(s.len(), 2);
        revalidate_pair(&sub(&z6, &[0, 3]), &s, CodeKind::Perfect).unwrap();
        assert!(build_witness_abelian(&Subgroup::trivial(&z6), &ctx).is_err());
        let d3 = grp("D3");
        let alpha = AlphaContext::shared(Automorphism::inner(&d3, 3)).unwrap();
        assert!(matches!(
            thm3_predicate(&Subgroup::trivial(&d3), &alpha),
            Err(Error::NonAbelian { .. })
        ));
    }

    #[test]
    fn z2_has_no_involution() {
        let z2 = grp("Z2");
        assert!(
            crate::automorphism::enumerate_involutory_automorphisms(&z2, false)
                .unwrap()
                .is_empty()
        );
    }
}
