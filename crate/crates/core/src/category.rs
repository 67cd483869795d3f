//! Finite categories: the associated category `C(S)`, its opposite, the
//! category `D(S)` of partial-action homomorphisms, isomorphism checking and
//! DOT/JSON export.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fountain::{congruence_condition, enumerate_action_homs, r_alpha, EStructure};
use crate::green::GreenData;
use crate::partial_map::PartialMap;
use crate::semigroup::FiniteSemigroup;

/// Generic isomorphism search is only attempted up to these sizes.
pub const SEARCH_MAX_OBJECTS: usize = 12;
pub const SEARCH_MAX_MORPHISMS: usize = 64;
const SEARCH_MAX_STEPS: u64 = 5_000_000;

/// A category with finitely many objects and morphisms, stored densely.
/// `compose[m2 * morphisms + m1]` is `m2 ∘ m1`, defined iff `cod(m1) = dom(m2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    object_labels: Vec<String>,
    morphism_labels: Vec<String>,
    dom: Vec<usize>,
    cod: Vec<usize>,
    identity: Vec<usize>,
    compose: Vec<Option<usize>>,
}

impl FiniteCategory {
    /// Validates the category axioms exhaustively.
    pub fn new(
        object_labels: Vec<String>,
        morphism_labels: Vec<String>,
        dom: Vec<usize>,
        cod: Vec<usize>,
        identity: Vec<usize>,
        compose: Vec<Option<usize>>,
    ) -> Result<Self> {
        let c = FiniteCategory { object_labels, morphism_labels, dom, cod, identity, compose };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let (no, nm) = (self.objects(), self.morphisms());
        let bad = |msg: String| Err(Error::InvalidCategory(msg));
        if self.morphism_labels.len() != nm || self.cod.len() != nm || self.identity.len() != no {
            return bad("inconsistent sizes".into());
        }
        if self.compose.len() != nm * nm {
            return bad("composition table has wrong size".into());
        }
        if self.dom.iter().chain(&self.cod).any(|&o| o >= no) {
            return bad("dom/cod out of range".into());
        }
        for (o, &id) in self.identity.iter().enumerate() {
            if id >= nm || self.dom[id] != o || self.cod[id] != o {
                return bad(format!("identity of object {o} is not an endomorphism of it"));
            }
        }
        for m2 in 0..nm {
            for m1 in 0..nm {
                let composable = self.cod[m1] == self.dom[m2];
                match self.compose[m2 * nm + m1] {
                    Some(_) if !composable => return bad(format!("{m2}∘{m1} defined but not composable")),
                    None if composable => return bad(format!("{m2}∘{m1} composable but undefined")),
                    Some(c) if c >= nm || self.dom[c] != self.dom[m1] || self.cod[c] != self.cod[m2] => {
                        return bad(format!("{m2}∘{m1} has the wrong domain or codomain"))
                    }
                    _ => {}
                }
            }
        }
        for m in 0..nm {
            if self.after(self.identity[self.cod[m]], m) != Some(m)
                || self.after(m, self.identity[self.dom[m]]) != Some(m)
            {
                return bad(format!("identities are not neutral for {m}"));
            }
        }
        for m3 in 0..nm {
            for m2 in (0..nm).filter(|&m2| self.cod[m2] == self.dom[m3]) {
                let m32 = self.after(m3, m2).expect("composable");
                for m1 in (0..nm).filter(|&m1| self.cod[m1] == self.dom[m2]) {
                    let m21 = self.after(m2, m1).expect("composable");
                    if self.after(m32, m1) != self.after(m3, m21) {
                        return bad(format!("associativity fails at ({m3}, {m2}, {m1})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> usize {
        self.object_labels.len()
    }

    pub fn morphisms(&self) -> usize {
        self.dom.len()
    }

    pub fn dom(&self, m: usize) -> usize {
        self.dom[m]
    }

    pub fn cod(&self, m: usize) -> usize {
        self.cod[m]
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn object_label(&self, o: usize) -> &str {
        &self.object_labels[o]
    }

    pub fn morphism_label(&self, m: usize) -> &str {
        &self.morphism_labels[m]
    }

    /// `m2 ∘ m1` (apply `m1` first), if composable.
    pub fn after(&self, m2: usize, m1: usize) -> Option<usize> {
        self.compose[m2 * self.morphisms() + m1]
    }

    /// Morphisms with the given domain and codomain.
    pub fn hom(&self, dom: usize, cod: usize) -> Vec<usize> {
        (0..self.morphisms()).filter(|&m| self.dom[m] == dom && self.cod[m] == cod).collect()
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identity[self.dom[m]] == m
    }

    /// Hom-set sizes, indexed `[dom][cod]`.
    pub fn hom_counts(&self) -> Vec<Vec<usize>> {
        let mut counts = vec![vec![0; self.objects()]; self.objects()];
        for m in 0..self.morphisms() {
            counts[self.dom[m]][self.cod[m]] += 1;
        }
        counts
    }

    /// `{objects, morphisms: [{id, dom, cod, label}], compose: [[…]]}` with
    /// `compose[m2][m1] = m2 ∘ m1` or null.
    pub fn to_json(&self) -> Value {
        let nm = self.morphisms();
        let morphisms: Vec<Value> = (0..nm)
            .map(|m| json!({"id": m, "dom": self.dom[m], "cod": self.cod[m], "label": self.morphism_labels[m]}))
            .collect();
        let compose: Vec<Vec<Option<usize>>> =
            (0..nm).map(|m2| (0..nm).map(|m1| self.after(m2, m1)).collect()).collect();
        json!({ "objects": self.object_labels, "morphisms": morphisms, "compose": compose })
    }
}

/// `C(S)`: objects are `E` (in ascending order), the morphism with index `a`
/// is `C(a): a* → a⁺`, and `C(b)∘C(a) = C(ba)` when `b* = a⁺`.
pub fn associated_category(es: &EStructure) -> Result<FiniteCategory> {
    if let Some(w) = congruence_condition(es).witness {
        return Err(Error::CongruenceConditionFails(w.elements[0], w.elements[1]));
    }
    let s = es.semigroup();
    let n = s.size();
    let pos = |e: usize| es.e_position(e).expect("star and plus land in E");
    let mut compose = vec![None; n * n];
    for b in s.elements() {
        for a in s.elements() {
            if es.star(b) == es.plus(a) {
                let ba = s.mul(b, a);
                if es.plus(ba) != es.plus(b) || es.star(ba) != es.star(a) {
                    return Err(Error::InvalidCategory(format!(
                        "C({b})∘C({a}) = C({ba}) has the wrong domain or codomain"
                    )));
                }
                compose[b * n + a] = Some(ba);
            }
        }
    }
    FiniteCategory::new(
        es.e().iter().map(|&e| s.label(e).to_owned()).collect(),
        s.labels().iter().map(|l| format!("C({l})")).collect(),
        s.elements().map(|a| pos(es.star(a))).collect(),
        s.elements().map(|a| pos(es.plus(a))).collect(),
        es.e().to_vec(),
        compose,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CategoryFlags {
    pub groupoid: bool,
    pub locally_trivial: bool,
}

pub fn category_flags(c: &FiniteCategory) -> CategoryFlags {
    let nm = c.morphisms();
    let groupoid = (0..nm).all(|m| {
        (0..nm).any(|inv| {
            c.after(inv, m) == Some(c.identity(c.dom(m))) && c.after(m, inv) == Some(c.identity(c.cod(m)))
        })
    });
    let locally_trivial = (0..nm).all(|m| c.dom(m) != c.cod(m) || c.is_identity(m));
    CategoryFlags { groupoid, locally_trivial }
}

pub fn opposite(c: &FiniteCategory) -> FiniteCategory {
    let nm = c.morphisms();
    let compose = (0..nm * nm).map(|p| c.after(p % nm, p / nm)).collect();
    FiniteCategory {
        object_labels: c.object_labels.clone(),
        morphism_labels: c.morphism_labels.clone(),
        dom: c.cod.clone(),
        cod: c.dom.clone(),
        identity: c.identity.clone(),
        compose,
    }
}

/// `D(S)` together with the action homomorphism behind each morphism.
#[derive(Debug, Clone)]
pub struct DCategory {
    pub category: FiniteCategory,
    /// `maps[m]` is morphism `m` as positions within the sorted `L̃`-classes.
    pub maps: Vec<PartialMap>,
}

impl DCategory {
    pub fn find(&self, dom: usize, cod: usize, map: &PartialMap) -> Option<usize> {
        (0..self.maps.len()).find(|&m| {
            self.category.dom(m) == dom && self.category.cod(m) == cod && &self.maps[m] == map
        })
    }
}

/// Objects are `E`; `hom(e, f)` holds every homomorphism of partial left
/// actions `L̃(e) → L̃(f)`; composition is composition of maps.
pub fn d_category(es: &EStructure, budget: u128) -> Result<DCategory> {
    let s = es.semigroup();
    let e = es.e();
    let mut dom = Vec::new();
    let mut cod = Vec::new();
    let mut maps = Vec::new();
    let mut labels = Vec::new();
    for (pe, &x) in e.iter().enumerate() {
        for (pf, &y) in e.iter().enumerate() {
            for map in enumerate_action_homs(es, x, y, budget)? {
                dom.push(pe);
                cod.push(pf);
                labels.push(format!("{}->{}:{:?}", s.label(x), s.label(y), map));
                maps.push(map);
            }
        }
    }
    let index: HashMap<(usize, usize, &PartialMap), usize> =
        (0..maps.len()).map(|m| ((dom[m], cod[m], &maps[m]), m)).collect();
    let nm = maps.len();
    let mut compose = vec![None; nm * nm];
    for m2 in 0..nm {
        for m1 in (0..nm).filter(|&m1| cod[m1] == dom[m2]) {
            let c = maps[m2].compose(&maps[m1]);
            let id = index.get(&(dom[m1], cod[m2], &c)).copied().ok_or_else(|| {
                Error::InvalidCategory("composite of action homomorphisms is missing".into())
            })?;
            compose[m2 * nm + m1] = Some(id);
        }
    }
    let identity = e
        .iter()
        .enumerate()
        .map(|(p, &x)| index.get(&(p, p, &PartialMap::identity(es.ltilde_class(x).len()))).copied())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidCategory("identity map is not an action homomorphism".into()))?;
    let category = FiniteCategory::new(
        e.iter().map(|&x| format!("L~({})", s.label(x))).collect(),
        labels,
        dom,
        cod,
        identity,
        compose,
    )?;
    Ok(DCategory { category, maps })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// An assignment of objects and morphisms between two finite categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
    pub variance: Variance,
}

fn is_bijection(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.len() == n && map.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

/// Checks that `f` is an isomorphism `c1 → c2`: bijective on objects and
/// morphisms, compatible with domains, codomains and identities, and
/// `F(m2∘m1) = F(m2)∘F(m1)` (or `F(m1)∘F(m2)` when contravariant) on all
/// composable pairs.
pub fn is_isomorphism(c1: &FiniteCategory, c2: &FiniteCategory, f: &Functor) -> bool {
    if !is_bijection(&f.object_map, c2.objects()) || !is_bijection(&f.morphism_map, c2.morphisms()) {
        return false;
    }
    if c1.objects() != c2.objects() || c1.morphisms() != c2.morphisms() {
        return false;
    }
    let contra = f.variance == Variance::Contravariant;
    for m in 0..c1.morphisms() {
        let fm = f.morphism_map[m];
        let (d, c) = if contra { (c2.cod(fm), c2.dom(fm)) } else { (c2.dom(fm), c2.cod(fm)) };
        if d != f.object_map[c1.dom(m)] || c != f.object_map[c1.cod(m)] {
            return false;
        }
    }
    for o in 0..c1.objects() {
        if f.morphism_map[c1.identity(o)] != c2.identity(f.object_map[o]) {
            return false;
        }
    }
    for m2 in 0..c1.morphisms() {
        for m1 in 0..c1.morphisms() {
            let Some(m21) = c1.after(m2, m1) else { continue };
            let (a, b) = (f.morphism_map[m2], f.morphism_map[m1]);
            let image = if contra { c2.after(b, a) } else { c2.after(a, b) };
            if image != Some(f.morphism_map[m21]) {
                return false;
            }
        }
    }
    true
}

/// Returns a covariant isomorphism `c1 → c2` if one exists.
///
/// A supplied `candidate` is verified first. Otherwise a backtracking search is
/// run, which is limited to [`SEARCH_MAX_OBJECTS`] objects and
/// [`SEARCH_MAX_MORPHISMS`] morphisms.
pub fn category_isomorphic(
    c1: &FiniteCategory,
    c2: &FiniteCategory,
    candidate: Option<&Functor>,
) -> Result<Option<Functor>> {
    if let Some(f) = candidate {
        if is_isomorphism(c1, c2, f) {
            return Ok(Some(f.clone()));
        }
    }
    if c1.objects() != c2.objects() || c1.morphisms() != c2.morphisms() {
        return Ok(None);
    }
    if c1.objects() > SEARCH_MAX_OBJECTS || c1.morphisms() > SEARCH_MAX_MORPHISMS {
        return Err(Error::SearchBudgetExceeded { objects: c1.objects(), morphisms: c1.morphisms() });
    }
    Search::new(c1, c2).run()
}

struct Search<'a> {
    c1: &'a FiniteCategory,
    c2: &'a FiniteCategory,
    h1: Vec<Vec<usize>>,
    h2: Vec<Vec<usize>>,
    objects: Vec<Option<usize>>,
    morphisms: Vec<Option<usize>>,
    used_objects: Vec<bool>,
    used_morphisms: Vec<bool>,
    steps: u64,
}

impl<'a> Search<'a> {
    fn new(c1: &'a FiniteCategory, c2: &'a FiniteCategory) -> Self {
        Search {
            c1,
            c2,
            h1: c1.hom_counts(),
            h2: c2.hom_counts(),
            objects: vec![None; c1.objects()],
            morphisms: vec![None; c1.morphisms()],
            used_objects: vec![false; c2.objects()],
            used_morphisms: vec![false; c2.morphisms()],
            steps: 0,
        }
    }

    fn run(mut self) -> Result<Option<Functor>> {
        let found = self.assign_object(0)?;
        Ok(found.then(|| Functor {
            object_map: self.objects.iter().map(|o| o.unwrap()).collect(),
            morphism_map: self.morphisms.iter().map(|m| m.unwrap()).collect(),
            variance: Variance::Covariant,
        }))
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > SEARCH_MAX_STEPS {
            return Err(Error::SearchBudgetExceeded {
                objects: self.c1.objects(),
                morphisms: self.c1.morphisms(),
            });
        }
        Ok(())
    }

    fn assign_object(&mut self, o: usize) -> Result<bool> {
        if o == self.c1.objects() {
            return self.assign_morphism(0);
        }
        for t in 0..self.c2.objects() {
            if self.used_objects[t] {
                continue;
            }
            self.tick()?;
            let consistent = (0..=o).all(|p| {
                let tp = if p == o { t } else { self.objects[p].unwrap() };
                self.h1[o][p] == self.h2[t][tp] && self.h1[p][o] == self.h2[tp][t]
            });
            if !consistent {
                continue;
            }
            self.objects[o] = Some(t);
            self.used_objects[t] = true;
            if self.assign_object(o + 1)? {
                return Ok(true);
            }
            self.objects[o] = None;
            self.used_objects[t] = false;
        }
        Ok(false)
    }

    fn assign_morphism(&mut self, m: usize) -> Result<bool> {
        if m == self.c1.morphisms() {
            return Ok(true);
        }
        let d = self.objects[self.c1.dom(m)].unwrap();
        let c = self.objects[self.c1.cod(m)].unwrap();
        let candidates = if self.c1.is_identity(m) { vec![self.c2.identity(d)] } else { self.c2.hom(d, c) };
        for t in candidates {
            if self.used_morphisms[t] || (!self.c1.is_identity(m) && self.c2.is_identity(t)) {
                continue;
            }
            self.tick()?;
            self.morphisms[m] = Some(t);
            if self.compatible(m) {
                self.used_morphisms[t] = true;
                if self.assign_morphism(m + 1)? {
                    return Ok(true);
                }
                self.used_morphisms[t] = false;
            }
            self.morphisms[m] = None;
        }
        Ok(false)
    }

    /// Functor law on every composable pair among assigned morphisms involving `m`.
    fn compatible(&self, m: usize) -> bool {
        let assigned = |x: usize| self.morphisms[x];
        (0..=m).all(|other| {
            [(m, other), (other, m)].into_iter().all(|(a, b)| {
                let Some(ab) = self.c1.after(a, b) else { return true };
                match (assigned(a), assigned(b), assigned(ab)) {
                    (Some(fa), Some(fb), Some(fab)) => self.c2.after(fa, fb) == Some(fab),
                    _ => true,
                }
            })
        })
    }
}

/// The functor `C(S)^op → D(S)` sending `e` to `L̃(e)` and `C(α)` to `r_α`.
/// `None` if some `r_α` is not a morphism of `D(S)`.
pub fn op_to_d_functor(es: &EStructure, d: &DCategory) -> Option<Functor> {
    let pos = |e: usize| es.e_position(e).expect("in E");
    let morphism_map = es
        .semigroup()
        .elements()
        .map(|a| d.find(pos(es.plus(a)), pos(es.star(a)), &r_alpha(es, a)))
        .collect::<Option<Vec<_>>>()?;
    Some(Functor {
        object_map: (0..es.e().len()).collect(),
        morphism_map,
        variance: Variance::Covariant,
    })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn html_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Objects as nodes and every morphism (identities included) as a labelled edge.
pub fn export_dot_category(c: &FiniteCategory) -> String {
    let mut out = String::from("digraph category {\n");
    for o in 0..c.objects() {
        let _ = writeln!(out, "  o{o} [label=\"{}\"];", dot_escape(c.object_label(o)));
    }
    for m in 0..c.morphisms() {
        let _ = writeln!(
            out,
            "  o{} -> o{} [label=\"{}\"];",
            c.dom(m),
            c.cod(m),
            dot_escape(c.morphism_label(m))
        );
    }
    out.push_str("}\n");
    out
}

/// One HTML-table node per J-class (rows are R-classes, columns L-classes,
/// cells list the H-class), with edges for covers in the J-order.
pub fn export_dot_eggbox(s: &FiniteSemigroup, green: &GreenData) -> String {
    let mut out = String::from("digraph eggbox {\n  node [shape=plaintext];\n");
    let j = &green.j_class;
    for (ji, members) in j.classes().iter().enumerate() {
        let mut rows: Vec<usize> = members.iter().map(|&a| green.r_class.class_of(a)).collect();
        rows.sort_unstable();
        rows.dedup();
        let mut cols: Vec<usize> = members.iter().map(|&a| green.l_class.class_of(a)).collect();
        cols.sort_unstable();
        cols.dedup();
        let _ = write!(out, "  j{ji} [label=<<TABLE BORDER=\"0\" CELLBORDER=\"1\" CELLSPACING=\"0\">");
        for &r in &rows {
            out.push_str("<TR>");
            for &l in &cols {
                let cell: Vec<String> = members
                    .iter()
                    .filter(|&&a| green.r_class.class_of(a) == r && green.l_class.class_of(a) == l)
                    .map(|&a| {
                        let mark = if s.is_idempotent(a) { "*" } else { "" };
                        format!("{}{}", html_escape(s.label(a)), mark)
                    })
                    .collect();
                let _ = write!(out, "<TD>{}</TD>", cell.join(" "));
            }
            out.push_str("</TR>");
        }
        out.push_str("</TABLE>>];\n");
    }
    // covers of the J-order between classes, via class representatives
    let reps: Vec<usize> = j.classes().iter().map(|c| c[0]).collect();
    let below = |x: usize, y: usize| x != y && green.j_leq.contains(reps[x], reps[y]);
    for hi in 0..reps.len() {
        for lo in 0..reps.len() {
            if below(lo, hi) && !(0..reps.len()).any(|mid| below(lo, mid) && below(mid, hi)) {
                let _ = writeln!(out, "  j{hi} -> j{lo};");
            }
        }
    }
    out.push_str("}\n");
    out
}
