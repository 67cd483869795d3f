//! The monoids `OF_n` (order-preserving maps of `[n]` fixing `n`), the Catalan
//! monoid `C_n`, the order-preserving partial permutations `IO_n` and their
//! order-increasing part `IC_n`, all indexed by pairs of equal-size subsets.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{check_algebra_hom, check_iso, phi, SemigroupAlgebra};
use crate::category::{associated_category, is_isomorphism, FiniteCategory, Functor, Variance};
use crate::error::{Error, Result};
use crate::fountain::EStructure;
use crate::linalg::{rat, LinearMap, Rational};
use crate::partial_map::PartialMap;
use crate::relation::BitRelation;
use crate::semigroup::FiniteSemigroup;
use crate::verdict::Verdict;

/// Largest `n` accepted for `OF_n` and `C_n`; `|OF_8| = 3432`.
pub const MAX_OF_N: usize = 8;
/// Largest `n` accepted for `IO_n` and `IC_n`; `|IO_7| = 3432`.
pub const MAX_IO_N: usize = 7;

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub fn catalan(n: u64) -> u128 {
    binomial(2 * n, n) / (n as u128 + 1)
}

/// Subsets `X, Y` of `{1..universe}` with `|X| = |Y|`, as bitmasks with bit
/// `i - 1` standing for `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SubsetPair {
    pub universe: usize,
    pub x: u32,
    pub y: u32,
}

impl SubsetPair {
    pub fn new(universe: usize, x: u32, y: u32) -> Self {
        assert!(universe < 32 && (x | y) >> universe == 0, "subset out of range");
        assert_eq!(x.count_ones(), y.count_ones(), "subsets differ in size");
        SubsetPair { universe, x, y }
    }

    pub fn from_sets(universe: usize, x: &[usize], y: &[usize]) -> Self {
        let mask = |s: &[usize]| s.iter().fold(0u32, |m, &i| m | 1 << (i - 1));
        Self::new(universe, mask(x), mask(y))
    }

    pub fn rank(&self) -> usize {
        self.x.count_ones() as usize
    }

    /// The canonical enumeration key: size, then `X`, then `Y`.
    pub fn key(&self) -> (u32, u32, u32) {
        (self.x.count_ones(), self.x, self.y)
    }

    pub fn xs(&self) -> Vec<usize> {
        members(self.x)
    }

    pub fn ys(&self) -> Vec<usize> {
        members(self.y)
    }

    /// `X ≤ Y`: `x_i ≤ y_i` for all `i`, both sides listed in increasing order.
    pub fn is_increasing(&self) -> bool {
        self.xs().iter().zip(self.ys()).all(|(&a, b)| a <= b)
    }

    pub fn diagonal(&self) -> SubsetPair {
        SubsetPair { y: self.x, ..*self }
    }
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn set_label(mask: u32) -> String {
    let items: Vec<String> = members(mask).iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// All pairs of equal-size subsets of `{1..universe}` in canonical order.
pub fn subset_pairs(universe: usize) -> Vec<SubsetPair> {
    let mut by_rank: Vec<Vec<u32>> = vec![Vec::new(); universe + 1];
    for m in 0..1u32 << universe {
        by_rank[m.count_ones() as usize].push(m);
    }
    by_rank
        .iter()
        .flat_map(|sets| sets.iter().flat_map(move |&x| sets.iter().map(move |&y| SubsetPair::new(universe, x, y))))
        .collect()
}

/// `f_{X,Y}` as its image sequence `(f(1), …, f(n))`, with `X, Y ⊆ [n-1]`:
/// `f(x) = y_i` for `x_{i-1} < x ≤ x_i` and `f(x) = n` beyond `x_l`.
pub fn of_function(pair: &SubsetPair) -> Vec<usize> {
    let n = pair.universe + 1;
    let (xs, ys) = (pair.xs(), pair.ys());
    (1..=n)
        .map(|x| match xs.iter().position(|&xi| x <= xi) {
            Some(i) => ys[i],
            None => n,
        })
        .collect()
}

/// Recovers `(X, Y)` from an order-preserving `f` with `f(n) = n`: `X` holds the
/// maxima of the kernel classes other than the last, `Y = im(f) ∖ {n}`.
pub fn of_pair(images: &[usize]) -> SubsetPair {
    let n = images.len();
    let (mut x, mut y) = (0u32, 0u32);
    for i in 1..n {
        if images[i - 1] != images[i] {
            x |= 1 << (i - 1);
            y |= 1 << (images[i - 1] - 1);
        }
    }
    SubsetPair::new(n - 1, x, y)
}

/// `θ_{X,Y}` as a partial map on `0..n`, sending the `i`-th element of `X`
/// to the `i`-th element of `Y`.
pub fn io_partial_perm(pair: &SubsetPair) -> PartialMap {
    let n = pair.universe;
    let mut images = vec![None; n];
    for (a, b) in pair.xs().into_iter().zip(pair.ys()) {
        images[a - 1] = Some(b - 1);
    }
    PartialMap::new(n, n, images)
}

fn io_pair(n: usize, map: &PartialMap) -> SubsetPair {
    let (mut x, mut y) = (0u32, 0u32);
    for i in 0..n {
        if let Some(j) = map.get(i) {
            x |= 1 << i;
            y |= 1 << j;
        }
    }
    SubsetPair::new(n, x, y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyKind {
    OrderPreservingFixed,
    Catalan,
    OrderPreservingPartialPerm,
    OrderIncreasingPartialPerm,
}

/// A family selector such as `of:3`, `catalan:4`, `io:2` or `ic:2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFamily(format!("expected of:n, catalan:n, io:n or ic:n, got {s:?}"));
        let (name, n) = s.trim().split_once(':').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let kind = match name.trim().to_ascii_lowercase().as_str() {
            "of" => FamilyKind::OrderPreservingFixed,
            "catalan" | "c" => FamilyKind::Catalan,
            "io" => FamilyKind::OrderPreservingPartialPerm,
            "ic" => FamilyKind::OrderIncreasingPartialPerm,
            _ => return Err(bad()),
        };
        Ok(FamilySpec { kind, n })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            FamilyKind::OrderPreservingFixed => "of",
            FamilyKind::Catalan => "catalan",
            FamilyKind::OrderPreservingPartialPerm => "io",
            FamilyKind::OrderIncreasingPartialPerm => "ic",
        };
        write!(f, "{name}:{}", self.n)
    }
}

/// A member of one of the four families with its canonical `E = {(X, X)}`.
#[derive(Debug, Clone)]
pub struct Family {
    spec: FamilySpec,
    pairs: Vec<SubsetPair>,
    estructure: EStructure,
}

impl Family {
    pub fn build(spec: FamilySpec) -> Result<Family> {
        match spec.kind {
            FamilyKind::OrderPreservingFixed => build_of(spec.n),
            FamilyKind::Catalan => build_catalan(spec.n),
            FamilyKind::OrderPreservingPartialPerm => build_io(spec.n),
            FamilyKind::OrderIncreasingPartialPerm => build_ic(spec.n),
        }
    }

    fn assemble(spec: FamilySpec, pairs: Vec<SubsetPair>, s: FiniteSemigroup) -> Result<Family> {
        let e: Vec<usize> = pairs.iter().enumerate().filter(|(_, p)| p.x == p.y).map(|(i, _)| i).collect();
        let estructure = EStructure::new(Arc::new(s), &e)?;
        Ok(Family { spec, pairs, estructure })
    }

    pub fn spec(&self) -> FamilySpec {
        self.spec
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        self.estructure.semigroup()
    }

    pub fn estructure(&self) -> &EStructure {
        &self.estructure
    }

    pub fn e(&self) -> &[usize] {
        self.estructure.e()
    }

    /// Pairs in element order.
    pub fn pairs(&self) -> &[SubsetPair] {
        &self.pairs
    }

    pub fn pair(&self, a: usize) -> SubsetPair {
        self.pairs[a]
    }

    pub fn index_of(&self, pair: &SubsetPair) -> Option<usize> {
        self.pairs.binary_search_by_key(&pair.key(), SubsetPair::key).ok().filter(|&i| self.pairs[i] == *pair)
    }

    pub fn size(&self) -> usize {
        self.pairs.len()
    }
}

fn pair_label(prefix: &str, p: &SubsetPair) -> String {
    format!("{prefix}{}{}", set_label(p.x), set_label(p.y))
}

/// `OF_n` with elements in canonical pair order. Products are composites,
/// `(fg)(x) = f(g(x))`, so that `f_{Y,Z} f_{X,Y} = f_{X,Z}`.
pub fn build_of(n: usize) -> Result<Family> {
    if n == 0 || n > MAX_OF_N {
        return Err(Error::InvalidFamily(format!("OF_n needs 1 <= n <= {MAX_OF_N}, got {n}")));
    }
    let pairs = subset_pairs(n - 1);
    let maps: Vec<Vec<usize>> = pairs.iter().map(of_function).collect();
    let index: HashMap<&[usize], usize> = maps.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    assert_eq!(index.len(), pairs.len(), "pairs give distinct functions");
    for (p, f) in pairs.iter().zip(&maps) {
        assert!(f.windows(2).all(|w| w[0] <= w[1]) && f[n - 1] == n, "order-preserving with f(n) = n");
        assert_eq!(of_pair(f), *p, "pair and function correspond");
    }
    assert_eq!(pairs.len() as u128, binomial(2 * n as u64 - 2, n as u64 - 1));
    let size = pairs.len();
    let mut table = Vec::with_capacity(size * size);
    for f in &maps {
        for g in &maps {
            let fg: Vec<usize> = g.iter().map(|&v| f[v - 1]).collect();
            table.push(index[fg.as_slice()]);
        }
    }
    let labels = pairs.iter().map(|p| pair_label("f", p)).collect();
    let s = FiniteSemigroup::from_composition(size, table, labels);
    Family::assemble(FamilySpec { kind: FamilyKind::OrderPreservingFixed, n }, pairs, s)
}

fn restrict(parent: &Family, kind: FamilyKind) -> Result<Family> {
    let keep: Vec<usize> = (0..parent.size()).filter(|&a| parent.pair(a).is_increasing()).collect();
    let s = parent.semigroup().subsemigroup(&keep)?;
    let pairs = keep.iter().map(|&a| parent.pair(a)).collect();
    Family::assemble(FamilySpec { kind, n: parent.spec.n }, pairs, s)
}

/// `C_n`: the pairs of `OF_n` with `X ≤ Y`, i.e. the order-increasing maps.
pub fn build_catalan(n: usize) -> Result<Family> {
    let family = restrict(&build_of(n)?, FamilyKind::Catalan)?;
    assert_eq!(family.size() as u128, catalan(n as u64));
    Ok(family)
}

/// `IO_n` with elements `θ_{X,Y}` in canonical pair order and products
/// `(θτ)(x) = θ(τ(x))`.
pub fn build_io(n: usize) -> Result<Family> {
    if n > MAX_IO_N {
        return Err(Error::InvalidFamily(format!("IO_n needs n <= {MAX_IO_N}, got {n}")));
    }
    let pairs = subset_pairs(n);
    let maps: Vec<PartialMap> = pairs.iter().map(io_partial_perm).collect();
    let index: HashMap<SubsetPair, usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let size = pairs.len();
    let mut table = Vec::with_capacity(size * size);
    for a in &maps {
        for b in &maps {
            table.push(index[&io_pair(n, &a.compose(b))]);
        }
    }
    let labels = pairs.iter().map(|p| pair_label("t", p)).collect();
    let s = FiniteSemigroup::from_composition(size, table, labels);
    Family::assemble(FamilySpec { kind: FamilyKind::OrderPreservingPartialPerm, n }, pairs, s)
}

/// `IC_n`: the pairs of `IO_n` with `X ≤ Y`.
pub fn build_ic(n: usize) -> Result<Family> {
    restrict(&build_io(n)?, FamilyKind::OrderIncreasingPartialPerm)
}

/// The order `⪯` on `OF_n`: `f_{Z,W} ⪯ f_{X,Y}` iff `W ⊊ Y`, or `W = Y` and `Z ≤ X`.
pub fn lex_order(of: &Family) -> BitRelation {
    BitRelation::from_fn(of.size(), |a, b| {
        let (p, q) = (of.pair(a), of.pair(b));
        let proper_subset = p.y & !q.y == 0 && p.y != q.y;
        proper_subset || (p.y == q.y && SubsetPair::new(p.universe, p.x, q.x).is_increasing())
    })
}

/// `τ ≤ θ` iff `τ = θe` for an idempotent `e`.
pub fn natural_order(s: &FiniteSemigroup, tau: usize, theta: usize) -> Result<bool> {
    if !s.is_inverse_semigroup() {
        return Err(Error::NotInverse);
    }
    Ok(natural_leq_unchecked(s, &s.idempotents(), tau, theta))
}

fn natural_leq_unchecked(s: &FiniteSemigroup, idempotents: &[usize], tau: usize, theta: usize) -> bool {
    idempotents.iter().any(|&e| s.mul(theta, e) == tau)
}

/// The natural partial order of an inverse semigroup, `(τ, θ)` meaning `τ ≤ θ`.
pub fn natural_order_relation(s: &FiniteSemigroup) -> Result<BitRelation> {
    if !s.is_inverse_semigroup() {
        return Err(Error::NotInverse);
    }
    let idempotents = s.idempotents();
    Ok(BitRelation::from_fn(s.size(), |t, th| natural_leq_unchecked(s, &idempotents, t, th)))
}

/// The Möbius function of a finite poset; `get(x, y)` is `0` unless `x ≤ y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mobius {
    n: usize,
    mu: Vec<i64>,
}

impl Mobius {
    pub fn get(&self, x: usize, y: usize) -> i64 {
        self.mu[x * self.n + y]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// `μ(x, x) = 1` and `μ(x, y) = -Σ_{x ≤ z < y} μ(x, z)`.
pub fn mobius(leq: &BitRelation) -> Result<Mobius> {
    if !leq.is_reflexive() {
        return Err(Error::NotPartialOrder("not reflexive".into()));
    }
    if !leq.is_antisymmetric() {
        return Err(Error::NotPartialOrder("not antisymmetric".into()));
    }
    if !leq.is_transitive() {
        return Err(Error::NotPartialOrder("not transitive".into()));
    }
    let n = leq.len();
    // a linear extension: fewer elements below comes first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&y| ((0..n).filter(|&z| leq.contains(z, y)).count(), y));
    let mut mu = vec![0i64; n * n];
    for x in 0..n {
        for &y in &order {
            if !leq.contains(x, y) {
                continue;
            }
            mu[x * n + y] = if x == y {
                1
            } else {
                -(0..n).filter(|&z| z != y && leq.contains(x, z) && leq.contains(z, y)).map(|z| mu[x * n + z]).sum::<i64>()
            };
        }
    }
    Ok(Mobius { n, mu })
}

/// `Σ_{x ≤ z ≤ y} μ(z, y) = δ_{x,y}` for every `x ≤ y`.
pub fn mobius_delta_identity(leq: &BitRelation, mu: &Mobius) -> bool {
    let n = leq.len();
    (0..n).all(|x| {
        (0..n).filter(|&y| leq.contains(x, y)).all(|y| {
            let sum: i64 = (0..n).filter(|&z| leq.contains(x, z) && leq.contains(z, y)).map(|z| mu.get(z, y)).sum();
            sum == i64::from(x == y)
        })
    })
}

/// `ψ: ℚC(S) → ℚS`, `ψ(C(θ)) = Σ_{τ ≤ θ} μ(τ, θ) τ`, for an inverse `S`.
pub fn psi(s: &FiniteSemigroup) -> Result<LinearMap> {
    let leq = natural_order_relation(s)?;
    let mu = mobius(&leq)?;
    let n = s.size();
    Ok(LinearMap::from_fn(n, n, |tau, theta| {
        if leq.contains(tau, theta) {
            rat(mu.get(tau, theta))
        } else {
            Rational::zero()
        }
    }))
}

/// The matrix of `C(p) ↦ C(p)`, matching elements with equal pairs.
fn pair_matching(source: &Family, target: &Family) -> Result<(LinearMap, Vec<usize>)> {
    let images = source
        .pairs()
        .iter()
        .map(|p| target.index_of(&SubsetPair { universe: target.pair(0).universe, ..*p }))
        .collect::<Option<Vec<usize>>>()
        .filter(|v| v.len() == target.size())
        .ok_or_else(|| Error::DimensionMismatch("families are not indexed by the same pairs".into()))?;
    let m = LinearMap::from_sparse_columns(target.size(), images.iter().map(|&j| [(j, Rational::one())]));
    Ok((m, images))
}

fn pair_functor(source: &Family, target: &Family, morphisms: &[usize]) -> Functor {
    let object_map = source
        .e()
        .iter()
        .map(|&e| target.estructure().e_position(morphisms[e]).expect("diagonal pairs are in E"))
        .collect();
    Functor { object_map, morphism_map: morphisms.to_vec(), variance: Variance::Covariant }
}

/// An explicit algebra isomorphism between two family algebras, with its checks.
#[derive(Debug, Clone)]
pub struct FamilyIsomorphism {
    pub source: Family,
    pub target: Family,
    pub source_category: FiniteCategory,
    pub target_category: FiniteCategory,
    /// `C(p) ↦ C(p)` is an isomorphism of the associated categories.
    pub category_iso: bool,
    /// The map `ℚC(target) → ℚtarget` inverting `φ` of the target.
    pub psi: LinearMap,
    /// `ψ ∘ φ_target` is the identity.
    pub psi_phi_identity: bool,
    pub map: LinearMap,
    pub hom: Verdict,
    pub iso: bool,
}

impl FamilyIsomorphism {
    pub fn holds(&self) -> bool {
        self.category_iso && self.psi_phi_identity && self.hom.holds && self.iso
    }
}

fn compose_iso(source: Family, target: Family, psi: LinearMap) -> Result<FamilyIsomorphism> {
    let source_category = associated_category(source.estructure())?;
    let target_category = associated_category(target.estructure())?;
    let (matching, images) = pair_matching(&source, &target)?;
    let functor = pair_functor(&source, &target, &images);
    let category_iso = is_isomorphism(&source_category, &target_category, &functor);
    let phi_target = phi(target.estructure());
    let psi_phi_identity = psi.compose(&phi_target)? == LinearMap::identity(target.size());
    let map = psi.compose(&matching)?.compose(&phi(source.estructure()))?;
    let hom = check_algebra_hom(&map, &SemigroupAlgebra(source.semigroup()), &SemigroupAlgebra(target.semigroup()))?;
    let iso = check_iso(&map);
    Ok(FamilyIsomorphism {
        source,
        target,
        source_category,
        target_category,
        category_iso,
        psi,
        psi_phi_identity,
        map,
        hom,
        iso,
    })
}

/// `ℚOF_{n+1} → ℚIO_n` as `ψ ∘ (f_{X,Y} ↦ θ_{X,Y}) ∘ φ`.
pub fn iso_of_io(n: usize) -> Result<FamilyIsomorphism> {
    let source = build_of(n + 1)?;
    let target = build_io(n)?;
    let psi = psi(target.semigroup())?;
    compose_iso(source, target, psi)
}

/// `ℚC_{n+1} → ℚIC_n` as `φ_{IC}⁻¹ ∘ (f_{X,Y} ↦ θ_{X,Y}) ∘ φ`.
pub fn iso_c_ic(n: usize) -> Result<FamilyIsomorphism> {
    let source = build_catalan(n + 1)?;
    let target = build_ic(n)?;
    let psi = phi(target.estructure())
        .inverse()
        .ok_or_else(|| Error::DimensionMismatch("φ of IC_n is singular".into()))?;
    compose_iso(source, target, psi)
}
