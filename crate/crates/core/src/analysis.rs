//! The end-to-end analysis pipeline behind `efountain analyze`.

use std::time::Instant;

use serde::ser::{Serialize, Serializer};
use serde::Serialize as DeriveSerialize;

use crate::algebra::{check_algebra_hom, check_iso, is_semisimple_char0, order_condition, phi, CategoryAlgebra, SemigroupAlgebra};
use crate::category::{associated_category, category_flags};
use crate::error::{Error, Result};
use crate::fountain::{congruence_condition, e_fountain_check, gla_check, gra_check, EStructure};
use crate::green::{green_classes, structure_flags};
use crate::semigroup::FiniteSemigroup;
use crate::verdict::{Verdict, Witness};

pub const SCHEMA: &str = "efountain.analysis/1";

/// Above this order the algebra stage is skipped.
pub const DEFAULT_MAX_ALGEBRA_ORDER: usize = 256;

/// A condition that was checked, or skipped because a prerequisite failed.
/// Serializes as `true`, `false` or `"skipped"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    Skipped,
}

impl Status {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Status::Holds
        } else {
            Status::Fails
        }
    }

    pub fn holds(self) -> bool {
        self == Status::Holds
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Status::Holds => serializer.serialize_bool(true),
            Status::Fails => serializer.serialize_bool(false),
            Status::Skipped => serializer.serialize_str("skipped"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, DeriveSerialize)]
pub struct LabelledWitness {
    pub condition: String,
    pub elements: Vec<usize>,
    pub labels: Vec<String>,
}

impl LabelledWitness {
    fn new(w: &Witness, s: &FiniteSemigroup) -> Self {
        LabelledWitness { condition: w.condition.clone(), elements: w.elements.clone(), labels: w.labelled(s) }
    }
}

#[derive(Debug, Clone, DeriveSerialize)]
pub struct InputSummary {
    pub source: String,
    pub order: usize,
    pub monoid: bool,
    pub e: Vec<usize>,
    pub e_labels: Vec<String>,
}

#[derive(Debug, Clone, DeriveSerialize)]
pub struct StructureSummary {
    pub h_trivial: bool,
    pub regular: bool,
    pub idempotents: usize,
    pub r_classes: usize,
    pub l_classes: usize,
    pub j_classes: usize,
    pub h_classes: usize,
}

#[derive(Debug, Clone, DeriveSerialize)]
pub struct TildeSummary {
    pub ltilde_classes: Vec<Vec<String>>,
    pub rtilde_classes: Vec<Vec<String>>,
}

#[derive(Debug, Clone, DeriveSerialize)]
pub struct Conditions {
    pub fountain: bool,
    pub reduced: bool,
    pub congruence: Status,
    pub gra: Status,
    pub gla: Status,
    pub witnesses: Vec<LabelledWitness>,
}

#[derive(Debug, Clone, DeriveSerialize)]
pub struct CategorySummary {
    pub objects: usize,
    pub morphisms: usize,
    pub groupoid: bool,
    pub locally_trivial: bool,
}

#[derive(Debug, Clone, DeriveSerialize)]
pub struct AlgebraSummary {
    pub order_condition: Status,
    pub phi_hom: Status,
    pub phi_invertible: Status,
    pub phi_iso: Status,
    pub semisimple: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<LabelledWitness>,
}

#[derive(Debug, Clone, DeriveSerialize)]
pub struct Timing {
    pub total_ms: u128,
}

#[derive(Debug, Clone, DeriveSerialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub input: InputSummary,
    pub structure: StructureSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tilde: Option<TildeSummary>,
    pub conditions: Conditions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub category: Option<CategorySummary>,
    pub algebra: AlgebraSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl AnalysisReport {
    /// Every checked structural condition holds: E-Fountain, reduced,
    /// congruence, GRA and GLA. Skipped conditions count as not holding.
    pub fn all_conditions_hold(&self) -> bool {
        let c = &self.conditions;
        c.fountain && c.reduced && c.congruence.holds() && c.gra.holds() && c.gla.holds()
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AnalysisOptions {
    pub max_algebra_order: usize,
    pub timing: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { max_algebra_order: DEFAULT_MAX_ALGEBRA_ORDER, timing: false }
    }
}

fn labels_of(s: &FiniteSemigroup, items: &[usize]) -> Vec<String> {
    items.iter().map(|&a| s.label(a).to_owned()).collect()
}

fn skipped_algebra() -> AlgebraSummary {
    AlgebraSummary {
        order_condition: Status::Skipped,
        phi_hom: Status::Skipped,
        phi_invertible: Status::Skipped,
        phi_iso: Status::Skipped,
        semisimple: Status::Skipped,
        witnesses: Vec::new(),
    }
}

/// Runs the pipeline in dependency order. Conditions whose prerequisites fail
/// are reported as skipped. Errors only on an invalid `E`.
pub fn analyze(source: &str, s: &FiniteSemigroup, e: &[usize], opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let start = Instant::now();
    let fv = e_fountain_check(s, e)?;
    let mut e_sorted = e.to_vec();
    e_sorted.sort_unstable();
    e_sorted.dedup();
    let green = green_classes(s);
    let flags = structure_flags(s, &green);
    let input = InputSummary {
        source: source.to_string(),
        order: s.size(),
        monoid: s.is_monoid(),
        e_labels: labels_of(s, &e_sorted),
        e: e_sorted.clone(),
    };
    let structure = StructureSummary {
        h_trivial: flags.h_trivial,
        regular: flags.regular,
        idempotents: s.idempotents().len(),
        r_classes: green.r_class.len(),
        l_classes: green.l_class.len(),
        j_classes: green.j_class.len(),
        h_classes: green.h_class.len(),
    };
    let mut witnesses: Vec<LabelledWitness> = fv.witnesses.iter().map(|w| LabelledWitness::new(w, s)).collect();
    let mut conditions = Conditions {
        fountain: fv.fountain,
        reduced: fv.reduced,
        congruence: Status::Skipped,
        gra: Status::Skipped,
        gla: Status::Skipped,
        witnesses: Vec::new(),
    };
    let mut report = AnalysisReport {
        schema: SCHEMA,
        input,
        structure,
        tilde: None,
        conditions: conditions.clone(),
        category: None,
        algebra: skipped_algebra(),
        timing: None,
    };
    if fv.fountain && fv.reduced {
        let es = match EStructure::new(std::sync::Arc::new(s.clone()), &e_sorted) {
            Ok(es) => es,
            Err(Error::NotReducedEFountain(msg)) => {
                witnesses.push(LabelledWitness { condition: msg, elements: Vec::new(), labels: Vec::new() });
                conditions.reduced = false;
                conditions.witnesses = witnesses;
                report.conditions = conditions;
                return Ok(finish(report, start, opts));
            }
            Err(other) => return Err(other),
        };
        let class_labels = |p: &crate::relation::Partition| p.classes().iter().map(|c| labels_of(s, c)).collect();
        report.tilde = Some(TildeSummary {
            ltilde_classes: class_labels(es.ltilde()),
            rtilde_classes: class_labels(es.rtilde()),
        });
        let cong = congruence_condition(&es);
        conditions.congruence = Status::from_bool(cong.holds);
        push_witness(&mut witnesses, &cong, s);
        if cong.holds {
            let gra = gra_check(&es);
            let gla = gla_check(&es);
            conditions.gra = Status::from_bool(gra.holds);
            conditions.gla = Status::from_bool(gla.holds);
            push_witness(&mut witnesses, &gra, s);
            push_witness(&mut witnesses, &gla, s);
            let category = associated_category(&es)?;
            let cf = category_flags(&category);
            report.category = Some(CategorySummary {
                objects: category.objects(),
                morphisms: category.morphisms(),
                groupoid: cf.groupoid,
                locally_trivial: cf.locally_trivial,
            });
            if s.size() <= opts.max_algebra_order {
                report.algebra = algebra_stage(&es, &category)?;
            }
        }
    }
    conditions.witnesses = witnesses;
    report.conditions = conditions;
    Ok(finish(report, start, opts))
}

fn push_witness(out: &mut Vec<LabelledWitness>, v: &Verdict, s: &FiniteSemigroup) {
    if let Some(w) = &v.witness {
        out.push(LabelledWitness::new(w, s));
    }
}

fn algebra_stage(es: &EStructure, category: &crate::category::FiniteCategory) -> Result<AlgebraSummary> {
    let s = es.semigroup();
    let map = phi(es);
    let hom = check_algebra_hom(&map, &SemigroupAlgebra(s), &CategoryAlgebra(category))?;
    let invertible = check_iso(&map);
    let semisimple = match is_semisimple_char0(&SemigroupAlgebra(s), None) {
        Ok(b) => Status::from_bool(b),
        // a finite-dimensional semisimple algebra is unital
        Err(Error::NoUnit) => Status::Fails,
        Err(other) => return Err(other),
    };
    let mut witnesses = Vec::new();
    if let Some(w) = &hom.witness {
        witnesses.push(LabelledWitness::new(w, s));
    }
    Ok(AlgebraSummary {
        order_condition: Status::from_bool(order_condition(s, es.e())),
        phi_hom: Status::from_bool(hom.holds),
        phi_invertible: Status::from_bool(invertible),
        phi_iso: Status::from_bool(hom.holds && invertible),
        semisimple,
        witnesses,
    })
}

fn finish(mut report: AnalysisReport, start: Instant, opts: &AnalysisOptions) -> AnalysisReport {
    if opts.timing {
        report.timing = Some(Timing { total_ms: start.elapsed().as_millis() });
    }
    report
}
