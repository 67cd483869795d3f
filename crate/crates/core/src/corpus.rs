//! Small reduced E-Fountain semigroups with the congruence condition, found
//! by closing sets of transformations and trying every choice of `E`.
//!
//! The committed bundle is the output of [`search`] and is what the theorem
//! sweeps run over.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fountain::{congruence_condition, e_fountain_check, EStructure};
use crate::semigroup::{parse_index_set, parse_table, BuildOptions, FiniteSemigroup};

/// The committed corpus bundle.
pub const BUNDLE: &str = include_str!("../corpus/corpus.txt");
/// A committed instance failing the generalized right ample identity.
pub const GRA_FAIL_TABLE: &str = include_str!("../corpus/gra_fail.tbl");
pub const GRA_FAIL_E: &str = include_str!("../corpus/gra_fail.e");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub semigroup: FiniteSemigroup,
    pub e: Vec<usize>,
}

impl CorpusEntry {
    pub fn estructure(&self) -> Result<EStructure> {
        EStructure::new(std::sync::Arc::new(self.semigroup.clone()), &self.e)
    }
}

/// A transformation of `0..k`; products compose right to left, `(fg)(x) = f(g(x))`.
type Transformation = Vec<u8>;

fn compose(f: &Transformation, g: &Transformation) -> Transformation {
    g.iter().map(|&x| f[x as usize]).collect()
}

/// The subsemigroup generated by `gens`, or `None` once it exceeds `limit`.
fn closure(gens: &[Transformation], limit: usize) -> Option<Vec<Transformation>> {
    let mut elements: Vec<Transformation> = Vec::new();
    let mut seen: BTreeSet<Transformation> = BTreeSet::new();
    for g in gens {
        if seen.insert(g.clone()) {
            elements.push(g.clone());
        }
    }
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            for p in [compose(&elements[i], g), compose(g, &elements[i])] {
                if seen.insert(p.clone()) {
                    elements.push(p);
                    if elements.len() > limit {
                        return None;
                    }
                }
            }
        }
        i += 1;
    }
    elements.sort();
    Some(elements)
}

fn table_of(elements: &[Transformation]) -> FiniteSemigroup {
    let index: BTreeMap<&Transformation, usize> = elements.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let n = elements.len();
    let table = (0..n * n).map(|p| index[&compose(&elements[p / n], &elements[p % n])]).collect();
    FiniteSemigroup::from_flat(n, table, None, BuildOptions::default()).expect("closed under composition")
}

/// All transformations of `0..k`, and the partial ones on `0..k-1` encoded
/// with `k-1` as an absorbing point.
fn transformations(k: usize, partial: bool) -> Vec<Transformation> {
    let total = k.pow(k as u32);
    (0..total)
        .map(|mut code| {
            (0..k)
                .map(|_| {
                    let d = (code % k) as u8;
                    code /= k;
                    d
                })
                .collect::<Transformation>()
        })
        .filter(|t| !partial || t[k - 1] as usize == k - 1)
        .collect()
}

/// `(table, E)` relabelled to its lexicographically least form over all
/// permutations of the elements.
pub fn canonical_form(s: &FiniteSemigroup, e: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = s.size();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    loop {
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[s.mul(a, b)];
            }
        }
        let mut e2: Vec<usize> = e.iter().map(|&x| perm[x]).collect();
        e2.sort_unstable();
        let candidate = (table, e2);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.expect("at least one permutation")
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every nonempty `E ⊆ E(S)` making `S` reduced E-Fountain with the
/// congruence condition.
pub fn admissible_e_sets(s: &FiniteSemigroup) -> Vec<Vec<usize>> {
    let idem = s.idempotents();
    (1u32..1 << idem.len())
        .map(|mask| (0..idem.len()).filter(|i| mask >> i & 1 == 1).map(|i| idem[i]).collect::<Vec<_>>())
        .filter(|e| {
            let v = e_fountain_check(s, e).expect("idempotents");
            v.fountain
                && v.reduced
                && EStructure::new(std::sync::Arc::new(s.clone()), e).is_ok_and(|es| congruence_condition(&es).holds)
        })
        .collect()
}

/// Searches subsemigroups of `T_3` and of `PT_2`, `PT_3` (as transformations
/// with an absorbing point) generated by up to `max_generators` elements, keeps
/// those of order at most `max_order`, adds their opposites, and returns one
/// representative per isomorphism class of `(S, E)` in canonical form, sorted
/// by order and then canonical table.
pub fn search(max_order: usize, max_generators: usize) -> Vec<CorpusEntry> {
    let mut tables: BTreeSet<Vec<Transformation>> = BTreeSet::new();
    let mut semigroups: Vec<FiniteSemigroup> = Vec::new();
    for (k, partial) in [(3, true), (4, true), (3, false)] {
        let pool = transformations(k, partial);
        let mut stack: Vec<Vec<usize>> = (0..pool.len()).map(|i| vec![i]).collect();
        while let Some(gens) = stack.pop() {
            let g: Vec<Transformation> = gens.iter().map(|&i| pool[i].clone()).collect();
            let Some(elements) = closure(&g, max_order) else { continue };
            if tables.insert(elements.clone()) {
                let s = table_of(&elements);
                semigroups.push(s.reversed());
                semigroups.push(s);
            }
            if gens.len() < max_generators {
                let last = *gens.last().expect("nonempty");
                for next in last + 1..pool.len() {
                    let mut more = gens.clone();
                    more.push(next);
                    stack.push(more);
                }
            }
        }
    }
    let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    let mut found: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    for s in &semigroups {
        for e in admissible_e_sets(s) {
            let (table, e) = canonical_form(s, &e);
            if seen.insert((table.clone(), e.clone())) {
                found.push((s.size(), table, e));
            }
        }
    }
    found.sort();
    found
        .into_iter()
        .enumerate()
        .map(|(i, (n, table, e))| CorpusEntry {
            name: format!("s{n}-{i:03}"),
            semigroup: FiniteSemigroup::from_flat(n, table, None, BuildOptions::default()).expect("canonical relabelling"),
            e,
        })
        .collect()
}

/// Blocks of `name: <id>`, a table in the text format, and `E: <indices>`.
pub fn write_bundle(entries: &[CorpusEntry]) -> String {
    let mut out = String::new();
    for entry in entries {
        let s = &entry.semigroup;
        writeln!(out, "name: {}", entry.name).expect("write to string");
        writeln!(out, "{}", s.size()).expect("write to string");
        for a in s.elements() {
            let row: Vec<String> = s.row(a).iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", row.join(" ")).expect("write to string");
        }
        let e: Vec<String> = entry.e.iter().map(|v| v.to_string()).collect();
        writeln!(out, "E: {}", e.join(" ")).expect("write to string");
        out.push('\n');
    }
    out
}

pub fn parse_bundle(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut entries = Vec::new();
    let mut current: Option<(usize, String, Vec<String>)> = None;
    let finish = |(line, name, body): (usize, String, Vec<String>)| -> Result<CorpusEntry> {
        let e_line = body
            .iter()
            .rposition(|l| l.trim_start().starts_with("E:"))
            .ok_or(Error::Parse { line, message: format!("entry {name} has no E line") })?;
        let table_text = body[..e_line].join("\n");
        let semigroup = parse_table(&table_text).map_err(|err| match err {
            Error::Parse { line: l, message } => Error::Parse { line: line + l, message },
            other => other,
        })?;
        let e = parse_index_set(body[e_line].trim_start().trim_start_matches("E:"))?;
        Ok(CorpusEntry { name, semigroup, e })
    };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(name) = line.strip_prefix("name:") {
            if let Some(block) = current.take() {
                entries.push(finish(block)?);
            }
            current = Some((i + 1, name.trim().to_string(), Vec::new()));
        } else if let Some((_, _, body)) = current.as_mut() {
            body.push(raw.to_string());
        } else if !line.is_empty() && !line.starts_with('#') {
            return Err(Error::Parse { line: i + 1, message: "content before the first name line".into() });
        }
    }
    if let Some(block) = current.take() {
        entries.push(finish(block)?);
    }
    Ok(entries)
}

/// The committed corpus.
pub fn committed() -> Result<Vec<CorpusEntry>> {
    parse_bundle(BUNDLE)
}

/// The committed GRA-failing instance.
pub fn gra_fail_fixture() -> Result<CorpusEntry> {
    Ok(CorpusEntry {
        name: "gra-fail".into(),
        semigroup: parse_table(GRA_FAIL_TABLE)?,
        e: parse_index_set(GRA_FAIL_E)?,
    })
}
