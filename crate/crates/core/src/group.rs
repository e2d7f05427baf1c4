//! Finite groups as validated Cayley tables, plus the catalog of small groups.
//!
//! Element `0` is always the identity. Catalog numbering:
//!
//! * `cyclic:n`: residues `0..n`, operation addition mod `n`.
//! * `dihedral:n`: order `2n`; index `k < n` is `r^k`, index `n + k` is `r^k s`,
//!   with `s r = r^-1 s`.
//! * `abelian:d1xd2x...`: tuples in lexicographic (mixed-radix) order, first
//!   factor most significant.
//! * `symmetric:n`: permutations of `0..n` in lexicographic order of their
//!   one-line form; `(a*b)(i) = a(b(i))`.
//! * `product(A,B)`: pairs `(a, b)` numbered `a * |B| + b`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{AxiomViolation, Error, Result};
use crate::set::ElemSet;

/// Largest `symmetric:n` the catalog builds.
pub const MAX_SYMMETRIC_DEGREE: usize = 5;

/// Orders up to which construction re-checks every associativity triple.
const EXHAUSTIVE_ASSOC_ORDER: usize = 24;
const SAMPLED_ASSOC_TRIPLES: usize = 100_000;

pub type GroupRef = Arc<FiniteGroup>;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    id: String,
    order: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    names: Option<Vec<String>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("id", &self.id)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validates `rows` as a Cayley table. An identity that is not element 0
    /// is renumbered to 0 by swapping the two labels.
    pub fn from_table(
        id: impl Into<String>,
        rows: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(AxiomViolation::Empty.into());
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(AxiomViolation::Shape {
                    row,
                    len: r.len(),
                    order: n,
                }
                .into());
            }
            for (b, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(AxiomViolation::OutOfRange { a: row, b, value }.into());
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or(AxiomViolation::NoIdentity)?;
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel(a) * n + relabel(b)] = relabel(rows[a][b]);
            }
        }
        let names = names.map(|mut v| {
            v.swap(0, e);
            v
        });
        Self::assemble(id.into(), n, table, names, true)
    }

    /// Builds a group from a multiplication rule already known to be a
    /// group law; still validated, exhaustively for small orders.
    pub(crate) fn from_fn(
        id: String,
        n: usize,
        mul: impl Fn(usize, usize) -> usize,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = mul(a, b);
            }
        }
        Self::assemble(id, n, table, names, n <= EXHAUSTIVE_ASSOC_ORDER)
    }

    fn assemble(
        id: String,
        n: usize,
        table: Vec<usize>,
        names: Option<Vec<String>>,
        exhaustive: bool,
    ) -> Result<Self> {
        if let Some(v) = &names {
            if v.len() != n {
                return Err(Error::Parse {
                    location: "names".into(),
                    message: format!("expected {n} names, found {}", v.len()),
                });
            }
        }
        for a in 0..n {
            if table[a] != a || table[a * n] != a {
                return Err(AxiomViolation::NoIdentity.into());
            }
        }
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let v = table[a * n + b];
                if seen[v] == a {
                    return Err(AxiomViolation::RowNotPermutation(a).into());
                }
                seen[v] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..n {
            for a in 0..n {
                let v = table[a * n + b];
                if seen[v] == b {
                    return Err(AxiomViolation::ColumnNotPermutation(b).into());
                }
                seen[v] = b;
            }
        }
        let mut inv = vec![0; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&b| table[a * n + b] == 0)
                .expect("rows are permutations");
        }
        let g = FiniteGroup {
            id,
            order: n,
            table,
            inv,
            names,
        };
        if exhaustive || n <= 128 {
            g.check_associativity_exhaustive()?;
        } else {
            g.check_associativity_sampled(SAMPLED_ASSOC_TRIPLES, 0)?;
        }
        Ok(g)
    }

    fn check_associativity_exhaustive(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(AxiomViolation::Associativity { a, b, c }.into());
                    }
                }
            }
        }
        Ok(())
    }

    /// Seeded random associativity probe for tables too large to scan.
    pub fn check_associativity_sampled(&self, samples: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.order;
        for _ in 0..samples {
            let (a, b, c) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(AxiomViolation::Associativity { a, b, c }.into());
            }
        }
        Ok(())
    }

    /// Re-checks all table invariants: exhaustively up to order 24, by
    /// 10^5 sampled triples above.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(AxiomViolation::NoIdentity.into());
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(Error::Precondition(format!("inverse table wrong at {a}")));
            }
        }
        if n <= EXHAUSTIVE_ASSOC_ORDER {
            self.check_associativity_exhaustive()
        } else {
            self.check_associativity_sampled(SAMPLED_ASSOC_TRIPLES, 0)
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g^-1 x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.inv(g), self.mul(x, g))
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(v) => v[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// A non-commuting pair `(a, b)`, smallest first, if any.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.order;
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.mul(a, b) != self.mul(b, a))
    }

    pub fn is_abelian(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    pub fn require_abelian(&self) -> Result<()> {
        match self.noncommuting_pair() {
            Some((a, b)) => Err(Error::NonAbelian { a, b }),
            None => Ok(()),
        }
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.order)
    }

    /// `{x^-1 : x in X}`.
    pub fn inverse_set(&self, x: &ElemSet) -> ElemSet {
        x.map(|a| self.inv(a))
    }

    /// `XY = {xy}`.
    pub fn product_set(&self, x: &ElemSet, y: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.order);
        for a in x {
            for b in y {
                out.insert(self.mul(a, b));
            }
        }
        out
    }

    /// `Xg`.
    pub fn right_translate(&self, x: &ElemSet, g: usize) -> ElemSet {
        x.map(|a| self.mul(a, g))
    }

    /// `gX`.
    pub fn left_translate(&self, g: usize, x: &ElemSet) -> ElemSet {
        x.map(|a| self.mul(g, a))
    }

    /// Resolves an element given by index or by display name.
    pub fn parse_element(&self, token: &str) -> Result<usize> {
        let token = token.trim();
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == token) {
                return Ok(i);
            }
        }
        match token.parse::<usize>() {
            Ok(i) if i < self.order => Ok(i),
            _ => Err(Error::UnknownElement(token.to_string())),
        }
    }

    /// Parses a comma-separated element list. The empty string and `{}`
    /// denote the empty set.
    pub fn parse_set(&self, text: &str) -> Result<ElemSet> {
        let t = text
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .trim();
        let mut s = ElemSet::empty(self.order);
        if t.is_empty() {
            return Ok(s);
        }
        for tok in split_top_level(t, ',') {
            s.insert(self.parse_element(tok)?);
        }
        Ok(s)
    }

    pub fn format_set(&self, s: &ElemSet) -> String {
        let parts: Vec<String> = s.iter().map(|x| self.name(x)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// `G1 x G2` with pairs numbered `a * |G2| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
        let (na, nb) = (a.order, b.order);
        let names = if a.names.is_some() || b.names.is_some() {
            Some(
                (0..na * nb)
                    .map(|i| format!("({},{})", a.name(i / nb), b.name(i % nb)))
                    .collect(),
            )
        } else {
            None
        };
        FiniteGroup::from_fn(
            format!("product({},{})", a.id, b.id),
            na * nb,
            |x, y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb),
            names,
        )
    }

    /// Splits a product-group element into its components.
    pub fn product_components(index: usize, second_order: usize) -> (usize, usize) {
        (index / second_order, index % second_order)
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile {
            name: self.id.clone(),
            order: self.order,
            table: self.rows(),
            names: self.names.clone(),
        }
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// On-disk group description (JSON).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: GroupFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        if f.table.len() != f.order {
            return Err(Error::Parse {
                location: "field `table`".into(),
                message: format!("{} rows but order is {}", f.table.len(), f.order),
            });
        }
        if let Some((row, r)) = f.table.iter().enumerate().find(|(_, r)| r.len() != f.order) {
            return Err(Error::Parse {
                location: format!("field `table`, row {row}"),
                message: format!("{} entries but order is {}", r.len(), f.order),
            });
        }
        Ok(f)
    }

    pub fn into_group(self) -> Result<FiniteGroup> {
        FiniteGroup::from_table(self.name, self.table, self.names)
    }
}

pub fn load_group_file(path: &Path) -> Result<FiniteGroup> {
    GroupFile::parse(&std::fs::read_to_string(path)?)?.into_group()
}

/// Catalog description of a group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Abelian(Vec<usize>),
    Symmetric(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    File(PathBuf),
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }

    /// Group order, computed without building the table.
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::Dihedral(n) => Some(2 * n),
            GroupSpec::Abelian(f) => Some(f.iter().product()),
            GroupSpec::Symmetric(n) => Some((1..=*n).product()),
            GroupSpec::Product(a, b) => Some(a.order()? * b.order()?),
            GroupSpec::File(_) => None,
        }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        build_group(self)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Abelian(fs) => {
                let parts: Vec<String> = fs.iter().map(|d| format!("Z{d}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Product(a, b) => write!(f, "product({a},{b})"),
            GroupSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnsupportedSpec(s.to_string());
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            let parts = split_top_level(inner, ',');
            if parts.len() != 2 {
                return Err(bad());
            }
            return Ok(GroupSpec::product(parts[0].parse()?, parts[1].parse()?));
        }
        if let Some(p) = s.strip_prefix("file:") {
            return Ok(GroupSpec::File(PathBuf::from(p)));
        }
        if let Some((kind, arg)) = s.split_once(':') {
            return match kind.trim() {
                "cyclic" => Ok(GroupSpec::Cyclic(num(arg)?)),
                "dihedral" => Ok(GroupSpec::Dihedral(num(arg)?)),
                "symmetric" => Ok(GroupSpec::Symmetric(num(arg)?)),
                "abelian" => Ok(GroupSpec::Abelian(
                    arg.split(['x', ',']).map(num).collect::<Result<_>>()?,
                )),
                _ => Err(bad()),
            };
        }
        if s == "V4" {
            return Ok(GroupSpec::Abelian(vec![2, 2]));
        }
        if s.contains('x') {
            let factors = s
                .split('x')
                .map(|t| t.strip_prefix('Z').ok_or_else(bad).and_then(num))
                .collect::<Result<Vec<_>>>()?;
            return Ok(GroupSpec::Abelian(factors));
        }
        let (head, rest) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        match head {
            "Z" => Ok(GroupSpec::Cyclic(num(rest)?)),
            "D" => Ok(GroupSpec::Dihedral(num(rest)?)),
            "S" => Ok(GroupSpec::Symmetric(num(rest)?)),
            _ => Err(bad()),
        }
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    let unsupported = || Error::UnsupportedSpec(spec.to_string());
    match spec {
        GroupSpec::Cyclic(n) => {
            let n = *n;
            if n == 0 {
                return Err(unsupported());
            }
            FiniteGroup::from_fn(spec.to_string(), n, |a, b| (a + b) % n, None)
        }
        GroupSpec::Dihedral(n) => {
            let n = *n;
            if n < 3 {
                return Err(unsupported());
            }
            let names = (0..2 * n)
                .map(|i| {
                    let (k, refl) = (i % n, i >= n);
                    let rot = match k {
                        0 => String::new(),
                        1 => "r".to_string(),
                        _ => format!("r^{k}"),
                    };
                    match (rot.is_empty(), refl) {
                        (true, false) => "e".to_string(),
                        (_, true) => format!("{rot}s"),
                        (false, false) => rot,
                    }
                })
                .collect();
            FiniteGroup::from_fn(
                spec.to_string(),
                2 * n,
                |x, y| {
                    let (a, f) = (x % n, x >= n);
                    let (b, g) = (y % n, y >= n);
                    let k = if f { (a + n - b) % n } else { (a + b) % n };
                    k + if f != g { n } else { 0 }
                },
                Some(names),
            )
        }
        GroupSpec::Abelian(factors) => {
            if factors.is_empty() || factors.contains(&0) {
                return Err(unsupported());
            }
            let n: usize = factors.iter().product();
            let digits = |mut x: usize| {
                let mut d = vec![0; factors.len()];
                for (i, &m) in factors.iter().enumerate().rev() {
                    d[i] = x % m;
                    x /= m;
                }
                d
            };
            let names = (factors.len() > 1).then(|| {
                (0..n)
                    .map(|x| {
                        let d: Vec<String> = digits(x).iter().map(|v| v.to_string()).collect();
                        format!("({})", d.join(","))
                    })
                    .collect()
            });
            FiniteGroup::from_fn(
                spec.to_string(),
                n,
                |x, y| {
                    let (dx, dy) = (digits(x), digits(y));
                    factors
                        .iter()
                        .enumerate()
                        .fold(0, |acc, (i, &m)| acc * m + (dx[i] + dy[i]) % m)
                },
                names,
            )
        }
        GroupSpec::Symmetric(deg) => {
            let deg = *deg;
            if deg == 0 || deg > MAX_SYMMETRIC_DEGREE {
                return Err(unsupported());
            }
            let perms: Vec<Vec<usize>> = itertools::Itertools::permutations(0..deg, deg).collect();
            let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
            let names = perms.iter().map(|p| cycle_notation(p)).collect();
            let mut table = vec![0; perms.len() * perms.len()];
            for (i, a) in perms.iter().enumerate() {
                for (j, b) in perms.iter().enumerate() {
                    let c: Vec<usize> = (0..deg).map(|k| a[b[k]]).collect();
                    table[i * perms.len() + j] = index(&c);
                }
            }
            let n = perms.len();
            FiniteGroup::from_fn(spec.to_string(), n, |a, b| table[a * n + b], Some(names))
        }
        GroupSpec::Product(a, b) => {
            let (ga, gb) = (build_group(a)?, build_group(b)?);
            FiniteGroup::direct_product(&ga, &gb)
        }
        GroupSpec::File(path) => load_group_file(path),
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&x.to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

/// The default census catalog: cyclic, dihedral and non-cyclic abelian
/// groups of order at most 24, plus S3, S4, V4, Z2xZ4 and Z2xZ2xZ2.
/// Sorted by order, then by id.
pub fn default_catalog() -> Vec<GroupSpec> {
    let mut v: Vec<GroupSpec> = (1..=24).map(GroupSpec::Cyclic).collect();
    v.extend((3..=12).map(GroupSpec::Dihedral));
    for f in [
        vec![2, 2],
        vec![2, 4],
        vec![2, 2, 2],
        vec![3, 3],
        vec![2, 6],
        vec![2, 8],
        vec![4, 4],
        vec![2, 2, 4],
        vec![2, 2, 2, 2],
        vec![3, 6],
        vec![2, 10],
        vec![2, 12],
        vec![2, 2, 6],
    ] {
        v.push(GroupSpec::Abelian(f));
    }
    v.push(GroupSpec::Symmetric(3));
    v.push(GroupSpec::Symmetric(4));
    v.sort_by_key(|s| (s.order().unwrap_or(usize::MAX), s.to_string()));
    v
}

pub fn catalog_up_to(max_order: usize) -> Vec<GroupSpec> {
    default_catalog()
        .into_iter()
        .filter(|s| s.order().is_some_and(|o| o <= max_order))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FiniteGroup {
        s.parse::<GroupSpec>().unwrap().build().unwrap()
    }

    #[test]
    fn trivial_group() {
        let t = g("cyclic:1");
        assert_eq!(t.order(), 1);
        assert_eq!(t.mul(0, 0), 0);
    }

    #[test]
    fn cyclic_six_is_addition() {
        assert_eq!(g("cyclic:6").mul(2, 5), 1);
    }

    #[test]
    fn dihedral_three_is_nonabelian() {
        let d3 = g("dihedral:3");
        assert_eq!(d3.order(), 6);
        let (a, b) = d3.noncommuting_pair().expect("D3 is nonabelian");
        assert_ne!(d3.mul(a, b), d3.mul(b, a));
        assert_eq!(
            d3.require_abelian().unwrap_err().to_string(),
            format!("group is not abelian: {a}*{b} != {b}*{a}")
        );
    }

    #[test]
    fn dihedral_relation() {
        let d = g("D5");
        let (r, s) = (1, 5);
        // s r s^-1 = r^-1
        assert_eq!(d.mul(d.mul(s, r), d.inv(s)), d.inv(r));
        assert_eq!(d.name(7), "r^2s");
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "Z6",
            "D4",
            "Z2xZ4",
            "S3",
            "product(Z2,D3)",
            "product(Z2xZ2,product(Z3,S3))",
        ] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(
            "abelian:2,2".parse::<GroupSpec>().unwrap(),
            GroupSpec::Abelian(vec![2, 2])
        );
        assert_eq!(
            "V4".parse::<GroupSpec>().unwrap(),
            GroupSpec::Abelian(vec![2, 2])
        );
    }

    #[test]
    fn unsupported_specs() {
        for s in [
            "dihedral:2",
            "symmetric:6",
            "cyclic:0",
            "quaternion:8",
            "Q8",
        ] {
            let r = s.parse::<GroupSpec>().and_then(|spec| spec.build());
            assert!(matches!(r, Err(Error::UnsupportedSpec(_))), "{s}");
        }
    }

    #[test]
    fn catalog_groups_satisfy_axioms() {
        for spec in default_catalog() {
            let grp = spec.build().unwrap();
            assert_eq!(Some(grp.order()), spec.order());
            grp.check_axioms().unwrap();
        }
    }

    #[test]
    fn symmetric_group_sizes() {
        assert_eq!(g("S4").order(), 24);
        assert!(!g("S3").is_abelian());
        assert_eq!(g("S3").name(0), "e");
    }

    #[test]
    fn table_identity_is_renumbered() {
        // Z3 with identity labelled 2.
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let names = Some(vec!["a".into(), "b".into(), "e".into()]);
        let grp = FiniteGroup::from_table("z3", rows, names).unwrap();
        assert_eq!(grp.name(0), "e");
        assert_eq!(grp.mul(0, 1), 1);
        grp.check_axioms().unwrap();
    }

    #[test]
    fn table_violations_reported() {
        let latin_nonassoc = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table("bad", latin_nonassoc, None).unwrap_err();
        assert!(
            matches!(err, Error::Axiom(AxiomViolation::Associativity { .. })),
            "{err}"
        );

        let no_id = vec![vec![1, 0], vec![0, 1]];
        let err = FiniteGroup::from_table("bad", vec![vec![1, 1], vec![0, 0]], None).unwrap_err();
        assert!(matches!(err, Error::Axiom(AxiomViolation::NoIdentity)));
        // Identity is 1 here and the table is Z2.
        assert!(FiniteGroup::from_table("z2", no_id, None).is_ok());

        let err = FiniteGroup::from_table("bad", vec![vec![0, 1], vec![1, 1]], None).unwrap_err();
        assert!(
            matches!(err, Error::Axiom(AxiomViolation::RowNotPermutation(1))),
            "{err}"
        );
    }

    #[test]
    fn group_file_diagnostics() {
        let err = GroupFile::parse("{\"name\": \"x\", \"order\": 2,\n \"table\": [[0,1],[1]]}")
            .unwrap_err();
        assert!(err.to_string().contains("row 1"), "{err}");
        let err = GroupFile::parse("{\"name\": \"x\",\n \"order\": 2, \"tabel\": []}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let f = GroupFile::parse(r#"{"name":"z2","order":2,"table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(f.into_group().unwrap().order(), 2);
    }

    #[test]
    fn parse_sets_by_index_and_name() {
        let d = g("D3");
        assert_eq!(d.parse_set("e, r, s").unwrap().to_vec(), vec![0, 1, 3]);
        assert_eq!(d.parse_set("0,4").unwrap().to_vec(), vec![0, 4]);
        assert!(d.parse_set("{}").unwrap().is_empty());
        assert!(d.parse_set("9").is_err());
        let p = g("product(Z2,Z3)");
        assert!(p.names().is_none());
        let v = g("Z2xZ2");
        assert_eq!(v.parse_set("(0,1),(1,0)").unwrap().to_vec(), vec![1, 2]);
    }

    #[test]
    fn direct_product_numbering() {
        let a = g("Z2");
        let b = g("Z3");
        let p = FiniteGroup::direct_product(&a, &b).unwrap();
        // (1,2) * (1,2) = (0,1)
        assert_eq!(p.mul(5, 5), 1);
        assert_eq!(FiniteGroup::product_components(5, 3), (1, 2));
    }
}
