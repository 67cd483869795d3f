use serde::Serialize;

use crate::semigroup::FiniteSemigroup;

/// A failing tuple for a checked condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub condition: String,
    pub elements: Vec<usize>,
}

impl Witness {
    pub fn new(condition: impl Into<String>, elements: Vec<usize>) -> Self {
        Witness { condition: condition.into(), elements }
    }

    pub fn labelled(&self, s: &FiniteSemigroup) -> Vec<String> {
        self.elements.iter().map(|&a| s.label(a).to_owned()).collect()
    }
}

/// Outcome of an exhaustive check: the first failing tuple, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { holds: true, witness: None }
    }

    pub fn fail(witness: Witness) -> Self {
        Verdict { holds: false, witness: Some(witness) }
    }

    pub fn from_witness(witness: Option<Witness>) -> Self {
        match witness {
            Some(w) => Self::fail(w),
            None => Self::pass(),
        }
    }
}
