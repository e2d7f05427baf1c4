//! Group automorphisms, involutions, and the subsets an involution induces.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef};
use crate::set::ElemSet;
use crate::subgroup::closure;

/// Largest order for which the full automorphism group is enumerated.
pub const DEFAULT_AUT_MAX_ORDER: usize = 48;

pub(crate) fn same_group(a: &GroupRef, b: &GroupRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug)]
pub struct Automorphism {
    group: GroupRef,
    perm: Vec<usize>,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm && same_group(&self.group, &other.group)
    }
}

impl Eq for Automorphism {}

impl Automorphism {
    pub fn new(group: GroupRef, perm: Vec<usize>) -> Result<Self> {
        let n = group.order();
        if perm.len() != n {
            return Err(Error::NotAutomorphism(format!(
                "perm has length {}, group order {n}",
                perm.len()
            )));
        }
        let mut hit = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut hit[p], true) {
                return Err(Error::NotAutomorphism("perm is not a bijection".into()));
            }
        }
        if perm[0] != 0 {
            return Err(Error::NotAutomorphism("identity is not fixed".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if perm[group.mul(a, b)] != group.mul(perm[a], perm[b]) {
                    return Err(Error::NotAutomorphism(format!(
                        "not a homomorphism at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Automorphism { group, perm })
    }

    pub fn identity(group: &GroupRef) -> Self {
        Automorphism {
            perm: (0..group.order()).collect(),
            group: group.clone(),
        }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.perm[g]
    }

    pub fn image(&self, s: &ElemSet) -> ElemSet {
        s.map(|x| self.perm[x])
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// First `g` with `alpha(alpha(g)) != g`, if any.
    pub fn involution_defect(&self) -> Option<(usize, usize)> {
        (0..self.perm.len())
            .map(|g| (g, self.perm[self.perm[g]]))
            .find(|&(g, gg)| g != gg)
    }

    /// `alpha^2 = id`; the identity map counts.
    pub fn is_involutory(&self) -> bool {
        self.involution_defect().is_none()
    }

    pub fn require_involutory(&self) -> Result<()> {
        match self.involution_defect() {
            Some((witness, image)) => Err(Error::NotInvolutory { witness, image }),
            None => Ok(()),
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::ParentMismatch);
        }
        Ok(Automorphism {
            perm: other.perm.iter().map(|&x| self.perm[x]).collect(),
            group: self.group.clone(),
        })
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        Automorphism {
            perm: inv,
            group: self.group.clone(),
        }
    }

    /// `beta ∘ self ∘ beta^-1`.
    pub fn conjugate_by(&self, beta: &Automorphism) -> Result<Automorphism> {
        beta.compose(self)?.compose(&beta.inverse())
    }

    /// Inner automorphism `x ↦ g^-1 x g`.
    pub fn inner(group: &GroupRef, g: usize) -> Automorphism {
        Automorphism {
            perm: (0..group.order()).map(|x| group.conjugate(x, g)).collect(),
            group: group.clone(),
        }
    }

    pub fn to_file(&self) -> AutomorphismFile {
        AutomorphismFile {
            perm: self.perm.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismFile {
    pub perm: Vec<usize>,
}

impl AutomorphismFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    pub fn into_automorphism(self, group: &GroupRef) -> Result<Automorphism> {
        Automorphism::new(group.clone(), self.perm)
    }
}

pub fn load_automorphism_file(path: &Path, group: &GroupRef) -> Result<Automorphism> {
    AutomorphismFile::parse(&std::fs::read_to_string(path)?)?.into_automorphism(group)
}

/// Greedy generating set: repeatedly adjoin the least element outside the
/// current closure.
pub fn generating_set(group: &FiniteGroup) -> Vec<usize> {
    let n = group.order();
    let mut gens = Vec::new();
    let mut span = ElemSet::singleton(n, 0);
    while span.len() < n {
        let g = (0..n).find(|&x| !span.contains(x)).expect("span is proper");
        gens.push(g);
        span = closure(group, &span, &[g]);
    }
    gens
}

/// Every automorphism, sorted by permutation.
pub fn enumerate_automorphisms(group: &GroupRef) -> Result<Vec<Automorphism>> {
    enumerate_automorphisms_bounded(group, DEFAULT_AUT_MAX_ORDER)
}

/// Backtracking over images of a generating set. Images must match the
/// generator's order and lie outside the span of earlier images; each
/// complete assignment is extended along right multiplication and then
/// checked in full.
pub fn enumerate_automorphisms_bounded(
    group: &GroupRef,
    max_order: usize,
) -> Result<Vec<Automorphism>> {
    let n = group.order();
    if n > max_order {
        return Err(Error::Threshold {
            what: "automorphism enumeration",
            order: n,
            limit: max_order,
        });
    }
    let gens = generating_set(group);
    let orders: Vec<usize> = (0..n).map(|g| group.element_order(g)).collect();
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    search_images(group, &gens, &orders, &mut images, &mut out);
    out.sort_by(|a: &Automorphism, b| a.perm.cmp(&b.perm));
    Ok(out)
}

fn search_images(
    group: &GroupRef,
    gens: &[usize],
    orders: &[usize],
    images: &mut Vec<usize>,
    out: &mut Vec<Automorphism>,
) {
    let n = group.order();
    if images.len() == gens.len() {
        if let Some(perm) = extend(group, gens, images) {
            out.push(Automorphism {
                group: group.clone(),
                perm,
            });
        }
        return;
    }
    let span = closure(group, &ElemSet::singleton(n, 0), images);
    let want = orders[gens[images.len()]];
    for cand in 0..n {
        if orders[cand] != want || span.contains(cand) {
            continue;
        }
        images.push(cand);
        search_images(group, gens, orders, images, out);
        images.pop();
    }
}

fn extend(group: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = group.order();
    let mut perm = vec![usize::MAX; n];
    perm[0] = 0;
    let mut queue = vec![0];
    while let Some(x) = queue.pop() {
        for (&g, &img) in gens.iter().zip(images) {
            let y = group.mul(x, g);
            let fy = group.mul(perm[x], img);
            if perm[y] == usize::MAX {
                perm[y] = fy;
                queue.push(y);
            } else if perm[y] != fy {
                return None;
            }
        }
    }
    let mut hit = vec![false; n];
    for &p in &perm {
        if std::mem::replace(&mut hit[p], true) {
            return None;
        }
    }
    for a in 0..n {
        for b in 0..n {
            if perm[group.mul(a, b)] != group.mul(perm[a], perm[b]) {
                return None;
            }
        }
    }
    Some(perm)
}

/// All `alpha` with `alpha^2 = id`, sorted by permutation. The identity is
/// included only on request.
pub fn enumerate_involutory_automorphisms(
    group: &GroupRef,
    include_identity: bool,
) -> Result<Vec<Automorphism>> {
    enumerate_involutory_automorphisms_bounded(group, include_identity, DEFAULT_AUT_MAX_ORDER)
}

pub fn enumerate_involutory_automorphisms_bounded(
    group: &GroupRef,
    include_identity: bool,
    max_order: usize,
) -> Result<Vec<Automorphism>> {
    Ok(enumerate_automorphisms_bounded(group, max_order)?
        .into_iter()
        .filter(|a| a.is_involutory() && (include_identity || !a.is_identity()))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InversionAbsent {
    Nonabelian,
    EqualsIdentity,
}

/// `g ↦ g^-1`, when it is an automorphism other than the identity.
pub fn inversion_automorphism(
    group: &GroupRef,
) -> std::result::Result<Automorphism, InversionAbsent> {
    if !group.is_abelian() {
        return Err(InversionAbsent::Nonabelian);
    }
    let perm: Vec<usize> = (0..group.order()).map(|g| group.inv(g)).collect();
    if perm.iter().enumerate().all(|(i, &p)| i == p) {
        return Err(InversionAbsent::EqualsIdentity);
    }
    Ok(Automorphism {
        group: group.clone(),
        perm,
    })
}

/// `(a1, a2)` acting componentwise on `G1 x G2` (pairs numbered
/// `x * |G2| + y`). `product` must be that group.
pub fn product_automorphism(
    a1: &Automorphism,
    a2: &Automorphism,
    product: &GroupRef,
) -> Result<Automorphism> {
    a1.require_involutory()?;
    a2.require_involutory()?;
    let n2 = a2.group.order();
    if product.order() != a1.group.order() * n2 {
        return Err(Error::ParentMismatch);
    }
    let perm = (0..product.order())
        .map(|x| a1.apply(x / n2) * n2 + a2.apply(x % n2))
        .collect();
    Automorphism::new(product.clone(), perm)
}

/// An involutory automorphism with the element sets it determines.
#[derive(Clone, Debug)]
pub struct AlphaContext {
    alpha: Automorphism,
    /// `{alpha(g^-1) g}`
    pub omega: ElemSet,
    /// `K \ omega`
    pub big_omega: ElemSet,
    /// `{g : alpha(g) != g^-1}`
    pub mho: ElemSet,
    /// `{g : alpha(g) = g}`
    pub fix: ElemSet,
    /// `{g : alpha(g) = g^-1}`
    pub k_set: ElemSet,
}

pub type AlphaRef = Arc<AlphaContext>;

impl AlphaContext {
    pub fn new(alpha: Automorphism) -> Result<Self> {
        alpha.require_involutory()?;
        let g = alpha.group.clone();
        let n = g.order();
        let omega = ElemSet::from_elems(n, (0..n).map(|x| g.mul(alpha.apply(g.inv(x)), x)));
        let k_set = ElemSet::from_elems(n, (0..n).filter(|&x| alpha.apply(x) == g.inv(x)));
        let fix = ElemSet::from_elems(n, (0..n).filter(|&x| alpha.apply(x) == x));
        let big_omega = k_set.difference(&omega);
        let mho = k_set.complement();
        Ok(AlphaContext {
            alpha,
            omega,
            big_omega,
            mho,
            fix,
            k_set,
        })
    }

    pub fn shared(alpha: Automorphism) -> Result<AlphaRef> {
        Ok(Arc::new(Self::new(alpha)?))
    }

    pub fn alpha(&self) -> &Automorphism {
        &self.alpha
    }

    pub fn group(&self) -> &GroupRef {
        &self.alpha.group
    }

    /// `s ↦ alpha(s^-1)`; an involution on the group fixing `omega`
    /// pointwise.
    #[inline]
    pub fn tau(&self, s: usize) -> usize {
        self.alpha.apply(self.alpha.group.inv(s))
    }

    /// Orbits of `tau` on `G \ omega`, each listed by its least element:
    /// singletons for `big_omega`, pairs for `mho`.
    pub fn tau_orbits(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for s in self.omega.complement().iter() {
            let t = self.tau(s);
            if t == s {
                out.push(vec![s]);
            } else if s < t {
                out.push(vec![s, t]);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn g(s: &str) -> GroupRef {
        Arc::new(s.parse::<GroupSpec>().unwrap().build().unwrap())
    }

    fn mult_map(n: usize, k: usize) -> Vec<usize> {
        (0..n).map(|x| x * k % n).collect()
    }

    #[test]
    fn cyclic_involutions() {
        let z6 = enumerate_involutory_automorphisms(&g("Z6"), false).unwrap();
        assert_eq!(z6.len(), 1);
        assert_eq!(z6[0].perm(), &mult_map(6, 5)[..]);
        let z8 = enumerate_involutory_automorphisms(&g("Z8"), false).unwrap();
        let perms: Vec<_> = z8.iter().map(|a| a.perm().to_vec()).collect();
        let mut want = vec![mult_map(8, 3), mult_map(8, 5), mult_map(8, 7)];
        want.sort();
        assert_eq!(perms, want);
    }

    #[test]
    fn klein_involutions() {
        let v4 = g("V4");
        let inv = enumerate_involutory_automorphisms(&v4, false).unwrap();
        assert_eq!(inv.len(), 3);
        for a in &inv {
            // each swaps two of the three involutions
            let moved = (1..4).filter(|&x| a.apply(x) != x).count();
            assert_eq!(moved, 2);
        }
        assert_eq!(
            enumerate_involutory_automorphisms(&v4, true).unwrap().len(),
            4
        );
    }

    #[test]
    fn aut_group_sizes() {
        for (s, size) in [
            ("Z1", 1),
            ("Z2", 1),
            ("Z8", 4),
            ("V4", 6),
            ("D4", 8),
            ("S3", 6),
            ("Z2xZ2xZ2", 168),
            ("S4", 24),
            ("Z3xZ3", 48),
        ] {
            assert_eq!(enumerate_automorphisms(&g(s)).unwrap().len(), size, "{s}");
        }
    }

    #[test]
    fn aut_threshold() {
        assert!(enumerate_automorphisms(&g("Z50"))
            .unwrap_err()
            .is_threshold());
    }

    #[test]
    fn inversion() {
        let z6 = g("Z6");
        assert_eq!(
            inversion_automorphism(&z6).unwrap().perm(),
            &[0, 5, 4, 3, 2, 1]
        );
        assert_eq!(
            inversion_automorphism(&g("V4")).unwrap_err(),
            InversionAbsent::EqualsIdentity
        );
        assert_eq!(
            inversion_automorphism(&g("D3")).unwrap_err(),
            InversionAbsent::Nonabelian
        );
    }

    #[test]
    fn z6_inversion_sets() {
        let ctx = AlphaContext::new(inversion_automorphism(&g("Z6")).unwrap()).unwrap();
        assert_eq!(ctx.omega.to_vec(), vec![0, 2, 4]);
        assert_eq!(ctx.big_omega.to_vec(), vec![1, 3, 5]);
        assert!(ctx.mho.is_empty());
        assert_eq!(ctx.fix.to_vec(), vec![0, 3]);
    }

    #[test]
    fn z4_inversion_sets() {
        let ctx = AlphaContext::new(inversion_automorphism(&g("Z4")).unwrap()).unwrap();
        assert_eq!(ctx.omega.to_vec(), vec![0, 2]);
        assert_eq!(ctx.big_omega.to_vec(), vec![1, 3]);
        assert!(ctx.mho.is_empty());
        assert_eq!(ctx.fix.to_vec(), vec![0, 2]);
    }

    #[test]
    fn klein_swap_sets() {
        // V4 numbering: a = (0,1) = 1, b = (1,0) = 2, ab = 3.
        let v4 = g("V4");
        let swap = Automorphism::new(v4, vec![0, 2, 1, 3]).unwrap();
        let ctx = AlphaContext::new(swap).unwrap();
        assert_eq!(ctx.omega.to_vec(), vec![0, 3]);
        assert!(ctx.big_omega.is_empty());
        assert_eq!(ctx.mho.to_vec(), vec![1, 2]);
        assert_eq!(ctx.tau_orbits(), vec![vec![1, 2]]);
    }

    #[test]
    fn non_involutory_rejected() {
        let v4 = g("V4");
        let three_cycle = Automorphism::new(v4, vec![0, 2, 3, 1]).unwrap();
        assert!(matches!(
            AlphaContext::new(three_cycle),
            Err(Error::NotInvolutory { .. })
        ));
    }

    #[test]
    fn conjugation() {
        let v4 = g("V4");
        let swap_ab = Automorphism::new(v4.clone(), vec![0, 2, 1, 3]).unwrap();
        let id = Automorphism::identity(&v4);
        assert_eq!(swap_ab.conjugate_by(&id).unwrap(), swap_ab);
        let cyc = Automorphism::new(v4, vec![0, 2, 3, 1]).unwrap();
        let conj = swap_ab.conjugate_by(&cyc).unwrap();
        // cyc ∘ swap ∘ cyc^-1: cyc^-1 = [0,3,1,2]; 1→3→3→1, 2→1→2→3, 3→2→1→2
        assert_eq!(conj.perm(), &[0, 1, 3, 2]);
        assert!(conj.is_involutory());
        assert_ne!(conj, swap_ab);
        let z6 = g("Z6");
        let iota = inversion_automorphism(&z6).unwrap();
        assert_eq!(iota.conjugate_by(&iota).unwrap(), iota);
        assert!(matches!(iota.compose(&swap_ab), Err(Error::ParentMismatch)));
    }

    #[test]
    fn product_of_inversions() {
        let z4 = g("Z4");
        let p = Arc::new(FiniteGroup::direct_product(&z4, &z4).unwrap());
        let iota = inversion_automorphism(&z4).unwrap();
        let bar = product_automorphism(&iota, &iota, &p).unwrap();
        assert_eq!(bar, inversion_automorphism(&p).unwrap());
        let id = Automorphism::identity(&z4);
        assert!(product_automorphism(&id, &id, &p).unwrap().is_identity());
    }

    #[test]
    fn bad_automorphisms() {
        let z6 = g("Z6");
        assert!(Automorphism::new(z6.clone(), vec![0, 2, 4, 1, 3, 5]).is_err());
        assert!(Automorphism::new(z6.clone(), vec![1, 0, 2, 3, 4, 5]).is_err());
        assert!(Automorphism::new(z6, vec![0, 1]).is_err());
        let f = AutomorphismFile::parse(r#"{"perm":[0,5,4,3,2,1]}"#).unwrap();
        assert!(f.into_automorphism(&g("Z6")).is_ok());
        assert!(AutomorphismFile::parse(r#"{"perm":[0,5,4,3,2,1], "x":1}"#).is_err());
    }
}
