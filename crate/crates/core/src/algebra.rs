//! Semigroup and category algebras over ℚ, the map `φ: ℚS → ℚC(S)`, the
//! modules `ℚL̃(e)`, their hom-spaces, and the trace-form semisimplicity test.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::category::FiniteCategory;
use crate::error::{Error, Result};
use crate::fountain::{class_action, EStructure};
use crate::linalg::{rat, LinearMap, Rational};
use crate::relation::BitRelation;
use crate::semigroup::FiniteSemigroup;
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BasisTag {
    Semigroup,
    Category,
}

/// A sparse vector over a finite basis. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    tag: BasisTag,
    dim: usize,
    coeffs: BTreeMap<usize, Rational>,
}

impl AlgebraElement {
    pub fn zero(tag: BasisTag, dim: usize) -> Self {
        AlgebraElement { tag, dim, coeffs: BTreeMap::new() }
    }

    pub fn basis(tag: BasisTag, dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index out of range");
        let mut x = Self::zero(tag, dim);
        x.coeffs.insert(i, Rational::one());
        x
    }

    pub fn from_dense(tag: BasisTag, coeffs: &[Rational]) -> Self {
        let mut x = Self::zero(tag, coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            x.add_term(i, c.clone());
        }
        x
    }

    pub fn from_terms(tag: BasisTag, dim: usize, terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut x = Self::zero(tag, dim);
        for (i, c) in terms {
            x.add_term(i, c);
        }
        x
    }

    pub fn tag(&self) -> BasisTag {
        self.tag
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        (0..self.dim).map(|i| self.coeff(i)).collect()
    }

    pub fn add_term(&mut self, i: usize, c: Rational) {
        assert!(i < self.dim, "basis index out of range");
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(i).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    fn check_same_space(&self, other: &AlgebraElement) -> Result<()> {
        if self.tag != other.tag || self.dim != other.dim {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Rational) -> AlgebraElement {
        let mut out = Self::zero(self.tag, self.dim);
        for (i, c) in self.terms() {
            out.add_term(i, c * k);
        }
        out
    }
}

/// A finite-dimensional algebra whose basis is closed under multiplication up
/// to zero: the product of two basis vectors is a basis vector or `0`.
pub trait BasisAlgebra {
    fn tag(&self) -> BasisTag;
    fn dim(&self) -> usize;
    fn basis_product(&self, i: usize, j: usize) -> Option<usize>;

    fn basis(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(self.tag(), self.dim(), i)
    }

    fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        for z in [x, y] {
            if z.tag() != self.tag() || z.dim() != self.dim() {
                return Err(Error::BasisMismatch);
            }
        }
        let mut out = AlgebraElement::zero(self.tag(), self.dim());
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                if let Some(k) = self.basis_product(i, j) {
                    out.add_term(k, a * b);
                }
            }
        }
        Ok(out)
    }
}

/// `ℚS` with the linear extension of the semigroup multiplication.
#[derive(Debug, Clone, Copy)]
pub struct SemigroupAlgebra<'a>(pub &'a FiniteSemigroup);

impl BasisAlgebra for SemigroupAlgebra<'_> {
    fn tag(&self) -> BasisTag {
        BasisTag::Semigroup
    }

    fn dim(&self) -> usize {
        self.0.size()
    }

    fn basis_product(&self, i: usize, j: usize) -> Option<usize> {
        Some(self.0.mul(i, j))
    }
}

/// `ℚC`: `m'·m` is the composite `m' ∘ m` when defined and `0` otherwise.
#[derive(Debug, Clone, Copy)]
pub struct CategoryAlgebra<'a>(pub &'a FiniteCategory);

impl BasisAlgebra for CategoryAlgebra<'_> {
    fn tag(&self) -> BasisTag {
        BasisTag::Category
    }

    fn dim(&self) -> usize {
        self.0.morphisms()
    }

    fn basis_product(&self, i: usize, j: usize) -> Option<usize> {
        self.0.after(i, j)
    }
}

pub fn semigroup_algebra_mult(s: &FiniteSemigroup, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    SemigroupAlgebra(s).mul(x, y)
}

pub fn category_algebra_mult(c: &FiniteCategory, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    CategoryAlgebra(c).mul(x, y)
}

/// The unit of `ℚC`: the sum of all identity morphisms.
pub fn category_unit(c: &FiniteCategory) -> AlgebraElement {
    AlgebraElement::from_terms(
        BasisTag::Category,
        c.morphisms(),
        (0..c.objects()).map(|o| (c.identity(o), Rational::one())),
    )
}

/// `a ⊴_l b` iff `a = be` for some `e ∈ E`.
pub fn triangle_left(es: &EStructure, a: usize, b: usize) -> bool {
    es.e().iter().any(|&e| es.mul(b, e) == a)
}

/// The relation `⊴_l` over an arbitrary set of idempotents, `(a, b)` meaning `a ⊴_l b`.
pub fn triangle_left_relation(s: &FiniteSemigroup, e: &[usize]) -> BitRelation {
    let mut r = BitRelation::new(s.size());
    for b in s.elements() {
        for &x in e {
            r.insert(s.mul(b, x), b);
        }
    }
    r
}

/// Whether the reflexive-transitive closure of `⊴_l` is antisymmetric, i.e.
/// `⊴_l` is contained in a partial order.
pub fn order_condition(s: &FiniteSemigroup, e: &[usize]) -> bool {
    triangle_left_relation(s, e).reflexive_transitive_closure().is_antisymmetric()
}

/// `φ(a) = Σ_{c ⊴_l a} C(c)`, as a square matrix over the element basis.
pub fn phi(es: &EStructure) -> LinearMap {
    let n = es.size();
    let rel = triangle_left_relation(es.semigroup(), es.e());
    LinearMap::from_fn(n, n, |c, a| if rel.contains(c, a) { Rational::one() } else { Rational::zero() })
}

fn columns(map: &LinearMap, tag: BasisTag) -> Vec<AlgebraElement> {
    (0..map.cols())
        .map(|j| AlgebraElement::from_dense(tag, &map.column(j)))
        .collect()
}

/// Checks `map(b_i b_j) = map(b_i)·map(b_j)` on every pair of basis vectors.
/// The witness is the first failing pair `(i, j)`.
pub fn check_algebra_hom(map: &LinearMap, source: &dyn BasisAlgebra, target: &dyn BasisAlgebra) -> Result<Verdict> {
    if map.cols() != source.dim() || map.rows() != target.dim() {
        return Err(Error::DimensionMismatch(format!(
            "map is {}x{}, algebras have dimensions {} and {}",
            map.rows(),
            map.cols(),
            source.dim(),
            target.dim()
        )));
    }
    let images = columns(map, target.tag());
    let zero = AlgebraElement::zero(target.tag(), target.dim());
    for i in 0..source.dim() {
        for j in 0..source.dim() {
            let lhs = source.basis_product(i, j).map_or(&zero, |k| &images[k]);
            let rhs = target.mul(&images[i], &images[j])?;
            if *lhs != rhs {
                return Ok(Verdict::fail(Witness::new("algebra homomorphism", vec![i, j])));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Whether the map is a linear isomorphism (square and invertible over ℚ).
pub fn check_iso(map: &LinearMap) -> bool {
    map.is_invertible()
}

/// `ℚL̃(e)` as a left `ℚS`-module: `s·x = sx` when `sx ∈ L̃(e)`, else `0`.
#[derive(Debug, Clone)]
pub struct LTildeModule {
    /// The class `L̃(e)`, ascending; positions index the module basis.
    pub class: Vec<usize>,
    /// `actions[s]` is the matrix of `s` on the module.
    pub actions: Vec<LinearMap>,
}

impl LTildeModule {
    pub fn dim(&self) -> usize {
        self.class.len()
    }

    /// First `(s, t)` with `(st)·x ≠ s·(t·x)` as matrices, if any.
    pub fn action_axiom_witness(&self, s: &FiniteSemigroup) -> Option<(usize, usize)> {
        s.elements().find_map(|a| {
            s.elements().find_map(|b| {
                let composite = self.actions[a].compose(&self.actions[b]).expect("square");
                (self.actions[s.mul(a, b)] != composite).then_some((a, b))
            })
        })
    }
}

pub fn ltilde_module(es: &EStructure, e: usize) -> Result<LTildeModule> {
    es.check_in_e(e)?;
    let class = es.ltilde_class(e).to_vec();
    let k = class.len();
    let actions = es
        .semigroup()
        .elements()
        .map(|s| {
            let cols = (0..k).map(|x| class_action(es, &class, s, x).map(|y| (y, Rational::one())));
            LinearMap::from_sparse_columns(k, cols)
        })
        .collect();
    Ok(LTildeModule { class, actions })
}

/// Right multiplication by `alpha` as a matrix `ℚL̃(α⁺) → ℚL̃(α*)`.
pub fn r_alpha_matrix(es: &EStructure, alpha: usize) -> LinearMap {
    let dom = es.ltilde_class(es.plus(alpha));
    let cod = es.ltilde_class(es.star(alpha));
    let cols = dom
        .iter()
        .map(|&x| cod.binary_search(&es.mul(x, alpha)).ok().map(|y| (y, Rational::one())));
    LinearMap::from_sparse_columns(cod.len(), cols)
}

/// `Hom(ℚL̃(e), ℚL̃(f))` computed by solving the intertwining equations.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub basis: Vec<LinearMap>,
    /// `#{α : α⁺ = e, α* = f}`.
    pub expected_dimension: usize,
    /// `(α, r_α)` for every `α` with `α⁺ = e` and `α* = f`.
    pub r_alphas: Vec<(usize, LinearMap)>,
    pub r_alphas_are_homs: bool,
    pub r_alphas_independent: bool,
}

impl HomSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// The linearized `r_α` form a basis of the solution space.
    pub fn r_alphas_form_basis(&self) -> bool {
        self.r_alphas_are_homs && self.r_alphas_independent && self.r_alphas.len() == self.dimension()
    }
}

/// Stacks the intertwining conditions `F·A_s = B_s·F` over all `s` as a
/// linear system in the entries of `F` (row-major, `F` is `|cod|×|dom|`).
fn intertwining_system(source: &LTildeModule, target: &LTildeModule) -> LinearMap {
    let (p, q) = (target.dim(), source.dim());
    let unknown = |r: usize, c: usize| r * q + c;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (a, b) in source.actions.iter().zip(&target.actions) {
        for i in 0..p {
            for j in 0..q {
                let mut row = vec![Rational::zero(); p * q];
                for k in 0..q {
                    if !a.get(k, j).is_zero() {
                        row[unknown(i, k)] += a.get(k, j);
                    }
                }
                for k in 0..p {
                    if !b.get(i, k).is_zero() {
                        row[unknown(k, j)] -= b.get(i, k);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    LinearMap::from_fn(rows.len(), p * q, |r, c| rows[r][c].clone())
}

fn flatten(m: &LinearMap) -> Vec<Rational> {
    (0..m.rows()).flat_map(|r| (0..m.cols()).map(move |c| (r, c))).map(|(r, c)| m.get(r, c).clone()).collect()
}

pub fn hom_space(es: &EStructure, e: usize, f: usize) -> Result<HomSpace> {
    let source = ltilde_module(es, e)?;
    let target = ltilde_module(es, f)?;
    let (p, q) = (target.dim(), source.dim());
    let system = intertwining_system(&source, &target);
    let basis = system
        .nullspace()
        .into_iter()
        .map(|v| LinearMap::from_fn(p, q, |r, c| v[r * q + c].clone()))
        .collect();
    let r_alphas: Vec<(usize, LinearMap)> = es
        .semigroup()
        .elements()
        .filter(|&a| es.plus(a) == e && es.star(a) == f)
        .map(|a| (a, r_alpha_matrix(es, a)))
        .collect();
    let r_alphas_are_homs = r_alphas.iter().all(|(_, m)| {
        let v = flatten(m);
        system.apply(&v).iter().all(Zero::is_zero)
    });
    let stacked = LinearMap::from_fn(p * q, r_alphas.len(), |r, c| flatten(&r_alphas[c].1)[r].clone());
    let r_alphas_independent = stacked.rank() == r_alphas.len();
    Ok(HomSpace {
        basis,
        expected_dimension: r_alphas.len(),
        r_alphas,
        r_alphas_are_homs,
        r_alphas_independent,
    })
}

/// Checks that `Φ: ℚL̃(e) → ℚC(S)·C(e)`, `x ↦ C(x)`, is a bijection onto the
/// span of morphisms with domain `e` and intertwines the module action with
/// `s ⋆ C(m) = φ(s)·C(m)`.
pub fn phi_module_iso(es: &EStructure, category: &FiniteCategory, e: usize) -> Result<bool> {
    let module = ltilde_module(es, e)?;
    let object = es.e_position(e).expect("checked in E");
    let target_basis: Vec<usize> = (0..category.morphisms()).filter(|&m| category.dom(m) == object).collect();
    if target_basis != module.class {
        return Ok(false);
    }
    let alg = CategoryAlgebra(category);
    let phi_cols = columns(&phi(es), BasisTag::Category);
    for s in es.semigroup().elements() {
        for (x_pos, &x) in module.class.iter().enumerate() {
            let lhs = match class_action(es, &module.class, s, x_pos) {
                Some(y) => alg.basis(module.class[y]),
                None => AlgebraElement::zero(BasisTag::Category, alg.dim()),
            };
            let rhs = alg.mul(&phi_cols[s], &alg.basis(x))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Hom-set sizes `|C(e, f)|`, indexed `[dom][cod]` by object position.
pub fn peirce_dims(c: &FiniteCategory) -> Vec<Vec<usize>> {
    c.hom_counts()
}

/// Solves for a two-sided unit of the algebra.
pub fn find_unit(alg: &dyn BasisAlgebra) -> Option<AlgebraElement> {
    let n = alg.dim();
    // unknown u_k; equations (u·b_j)_r = δ_{rj} and (b_j·u)_r = δ_{rj}
    let mut rows = Vec::with_capacity(2 * n * n);
    let mut rhs = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for left in [true, false] {
            let mut block = vec![vec![Rational::zero(); n]; n];
            for (k, col) in (0..n).map(|k| (k, if left { alg.basis_product(k, j) } else { alg.basis_product(j, k) })) {
                if let Some(r) = col {
                    block[r][k] += Rational::one();
                }
            }
            for (r, row) in block.into_iter().enumerate() {
                rows.push(row);
                rhs.push(if r == j { Rational::one() } else { Rational::zero() });
            }
        }
    }
    let system = LinearMap::from_fn(rows.len(), n, |r, c| rows[r][c].clone());
    system.solve(&rhs).map(|u| AlgebraElement::from_dense(alg.tag(), &u))
}

fn is_unit(alg: &dyn BasisAlgebra, u: &AlgebraElement) -> Result<bool> {
    for j in 0..alg.dim() {
        let b = alg.basis(j);
        if alg.mul(u, &b)? != b || alg.mul(&b, u)? != b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Gram matrix of the trace form `B(x, y) = tr(L_{xy})` of the regular
/// representation, on the basis.
pub fn trace_form(alg: &dyn BasisAlgebra) -> LinearMap {
    let n = alg.dim();
    let trace: Vec<i64> = (0..n)
        .map(|k| (0..n).filter(|&t| alg.basis_product(k, t) == Some(t)).count() as i64)
        .collect();
    LinearMap::from_fn(n, n, |i, j| alg.basis_product(i, j).map_or_else(Rational::zero, |k| rat(trace[k])))
}

/// Semisimplicity over ℚ: the trace form of the regular representation is
/// nondegenerate. Requires a unit, found by linear algebra when not supplied.
pub fn is_semisimple_char0(alg: &dyn BasisAlgebra, unit: Option<&AlgebraElement>) -> Result<bool> {
    match unit {
        Some(u) => {
            if !is_unit(alg, u)? {
                return Err(Error::NoUnit);
            }
        }
        None => {
            find_unit(alg).ok_or(Error::NoUnit)?;
        }
    }
    Ok(!trace_form(alg).determinant()?.is_zero())
}
