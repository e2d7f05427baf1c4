//! Constructions that move subgroup codes between graphs: conjugation,
//! automorphism transport, direct products and restriction to an
//! intermediate subgroup.

use std::sync::Arc;

use crate::automorphism::{product_automorphism, same_group, AlphaContext, AlphaRef, Automorphism};
use crate::codes::CodeKind;
use crate::error::{Error, Result};
use crate::gencayley::{validate_subset, GenCayleySubset};
use crate::group::{FiniteGroup, GroupRef};
use crate::set::ElemSet;
use crate::subgroup::{normalizer, Subgroup};
use crate::subgroup_codes::{alpha_image, revalidate_pair};

/// A subgroup together with the subset it is claimed to be a code for.
#[derive(Clone, Debug)]
pub struct CodePair {
    pub subgroup: Subgroup,
    pub subset: GenCayleySubset,
}

impl CodePair {
    pub fn new(subgroup: Subgroup, subset: GenCayleySubset) -> Result<Self> {
        if !same_group(subgroup.group(), subset.group()) {
            return Err(Error::ParentMismatch);
        }
        Ok(CodePair { subgroup, subset })
    }

    pub fn ctx(&self) -> &AlphaRef {
        self.subset.ctx()
    }

    pub fn check(&self, kind: CodeKind) -> std::result::Result<(), String> {
        revalidate_pair(&self.subgroup, &self.subset, kind)
    }

    pub fn is(&self, kind: CodeKind) -> bool {
        self.check(kind).is_ok()
    }

    fn require(&self, kind: CodeKind) -> Result<()> {
        self.check(kind)
            .map_err(|e| Error::Precondition(format!("input pair is not a {kind:?} code: {e}")))
    }
}

/// `(g^-1 H g, g^-1 S g)` for `g` fixed by alpha; same alpha.
pub fn transport_conjugate(pair: &CodePair, g: usize) -> Result<CodePair> {
    let ctx = pair.ctx();
    if !ctx.fix.contains(g) {
        return Err(Error::NotFixed(g));
    }
    let grp = ctx.group();
    let s = pair.subset.elements().map(|x| grp.conjugate(x, g));
    Ok(CodePair {
        subgroup: pair.subgroup.conjugate(g),
        subset: validate_subset(ctx, s)?,
    })
}

/// `(beta(H), beta(S))` under `beta alpha beta^-1`.
pub fn transport_automorphism(pair: &CodePair, beta: &Automorphism) -> Result<CodePair> {
    let ctx = pair.ctx();
    let moved = AlphaContext::shared(ctx.alpha().conjugate_by(beta)?)?;
    let s = beta.image(pair.subset.elements());
    Ok(CodePair {
        subgroup: pair.subgroup.map_unchecked(|x| beta.apply(x)),
        subset: validate_subset(&moved, s)?,
    })
}

/// Automorphism transport followed by conjugation with `g` fixed by
/// `beta alpha beta^-1`: `(g^-1 beta(H) g, g^-1 beta(S) g)`.
pub fn transport_combined(pair: &CodePair, beta: &Automorphism, g: usize) -> Result<CodePair> {
    transport_conjugate(&transport_automorphism(pair, beta)?, g)
}

/// `G1 x G2` with the componentwise involution.
#[derive(Clone, Debug)]
pub struct ProductSetup {
    pub first: AlphaRef,
    pub second: AlphaRef,
    pub group: GroupRef,
    pub ctx: AlphaRef,
}

impl ProductSetup {
    pub fn new(first: &AlphaRef, second: &AlphaRef) -> Result<Self> {
        let group = Arc::new(FiniteGroup::direct_product(first.group(), second.group())?);
        let bar = product_automorphism(first.alpha(), second.alpha(), &group)?;
        Ok(ProductSetup {
            first: first.clone(),
            second: second.clone(),
            ctx: AlphaContext::shared(bar)?,
            group,
        })
    }

    pub fn pair_index(&self, a: usize, b: usize) -> usize {
        a * self.second.group().order() + b
    }

    pub fn product_set(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.group.order());
        for x in a {
            for y in b {
                out.insert(self.pair_index(x, y));
            }
        }
        out
    }

    fn check_inputs(&self, s1: &GenCayleySubset, s2: &GenCayleySubset) -> Result<()> {
        if s1.ctx().alpha() != self.first.alpha() || s2.ctx().alpha() != self.second.alpha() {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    /// `S1 x S2`.
    pub fn build_t1(&self, s1: &GenCayleySubset, s2: &GenCayleySubset) -> Result<GenCayleySubset> {
        self.check_inputs(s1, s2)?;
        Ok(validate_subset(
            &self.ctx,
            self.product_set(s1.elements(), s2.elements()),
        )?)
    }

    /// `S1 x S2 ∪ {e} x S2 ∪ S1 x {e}`.
    pub fn build_t2(&self, s1: &GenCayleySubset, s2: &GenCayleySubset) -> Result<GenCayleySubset> {
        self.check_inputs(s1, s2)?;
        let e1 = ElemSet::singleton(self.first.group().order(), 0);
        let e2 = ElemSet::singleton(self.second.group().order(), 0);
        let t = self
            .product_set(s1.elements(), s2.elements())
            .union(&self.product_set(&e1, s2.elements()))
            .union(&self.product_set(s1.elements(), &e2));
        Ok(validate_subset(&self.ctx, t)?)
    }

    pub fn product_subgroup(&self, h1: &Subgroup, h2: &Subgroup) -> Result<Subgroup> {
        Subgroup::new(
            self.group.clone(),
            self.product_set(h1.elements(), h2.elements()),
        )
    }
}

/// Which product-code statements held for two input pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductReport {
    pub first_perfect: bool,
    pub second_perfect: bool,
    pub first_total: bool,
    pub second_total: bool,
    pub t2_size: usize,
    /// Both inputs perfect: `H1 x H2` is a perfect code for `T2`.
    pub t2_perfect: Option<bool>,
    /// Both inputs perfect: `|G1 x G2| = |H1 x H2| |T1|`.
    pub t1_counting_from_perfect: Option<bool>,
    /// Both inputs perfect: `H1 x H2` is a total perfect code for `T1`.
    pub t1_total_from_perfect: Option<bool>,
    /// Both inputs total: `H1 x H2` is a total perfect code for `T1`.
    pub t1_total_from_total: Option<bool>,
}

pub fn verify_product_props(pair1: &CodePair, pair2: &CodePair) -> Result<ProductReport> {
    let (p1, p2) = (pair1.is(CodeKind::Perfect), pair2.is(CodeKind::Perfect));
    let (t1ok, t2ok) = (pair1.is(CodeKind::Total), pair2.is(CodeKind::Total));
    if !(p1 || t1ok) || !(p2 || t2ok) {
        return Err(Error::Precondition(
            "each input must be a perfect or total perfect code".into(),
        ));
    }
    let setup = ProductSetup::new(pair1.ctx(), pair2.ctx())?;
    let h = setup.product_subgroup(&pair1.subgroup, &pair2.subgroup)?;
    let t1 = setup.build_t1(&pair1.subset, &pair2.subset)?;
    let t2 = setup.build_t2(&pair1.subset, &pair2.subset)?;
    let both_perfect = p1 && p2;
    let holds = |s: &GenCayleySubset, kind| revalidate_pair(&h, s, kind).is_ok();
    Ok(ProductReport {
        first_perfect: p1,
        second_perfect: p2,
        first_total: t1ok,
        second_total: t2ok,
        t2_size: t2.len(),
        t2_perfect: both_perfect.then(|| holds(&t2, CodeKind::Perfect)),
        t1_counting_from_perfect: both_perfect.then(|| setup.group.order() == h.len() * t1.len()),
        t1_total_from_perfect: both_perfect.then(|| holds(&t1, CodeKind::Total)),
        t1_total_from_total: (t1ok && t2ok).then(|| holds(&t1, CodeKind::Total)),
    })
}

/// A code pair moved into a subgroup `K` viewed as a group of its own.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub group: GroupRef,
    /// `embedding[i]` is the element of `G` numbered `i` in `K`.
    pub embedding: Vec<usize>,
    pub pair: CodePair,
}

/// `(H, S ∩ K)` inside `K`, with alpha restricted to `K`.
pub fn restrict_witness(pair: &CodePair, k: &Subgroup) -> Result<Restriction> {
    pair.require(CodeKind::Perfect)?;
    let ctx = pair.ctx();
    if !pair.subgroup.is_subgroup_of(k) {
        return Err(Error::Precondition("H is not contained in K".into()));
    }
    if alpha_image(k, ctx).elements() != k.elements() {
        return Err(Error::Precondition("alpha(K) != K".into()));
    }
    let (kg, embedding) = k.as_group()?;
    let kg = Arc::new(kg);
    let mut back = vec![usize::MAX; ctx.group().order()];
    for (i, &x) in embedding.iter().enumerate() {
        back[x] = i;
    }
    let perm = embedding
        .iter()
        .map(|&x| back[ctx.alpha().apply(x)])
        .collect();
    let kctx = AlphaContext::shared(Automorphism::new(kg.clone(), perm)?)?;
    let local = |s: &ElemSet| {
        ElemSet::from_elems(
            kg.order(),
            s.intersection(k.elements()).iter().map(|x| back[x]),
        )
    };
    let subgroup = Subgroup::new(kg.clone(), local(pair.subgroup.elements()))?;
    let subset = validate_subset(&kctx, local(pair.subset.elements()))?;
    let out = CodePair { subgroup, subset };
    out.require(CodeKind::Perfect)?;
    Ok(Restriction {
        group: kg,
        embedding,
        pair: out,
    })
}

/// Restriction to `N_G(H)`, which alpha preserves whenever it preserves `H`.
pub fn restrict_to_normalizer(pair: &CodePair) -> Result<Restriction> {
    let n = normalizer(&pair.subgroup);
    assert_eq!(
        alpha_image(&n, pair.ctx()).elements(),
        n.elements(),
        "alpha preserves H but not its normalizer"
    );
    restrict_witness(pair, &n)
}
