//! Partitions and dense boolean relations on `0..n`.

use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

/// A partition of `0..n`. Classes are sorted internally and ordered by their
/// smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    /// Groups `0..n` by equal keys.
    pub fn from_key<K: Hash + Eq>(n: usize, mut key: impl FnMut(usize) -> K) -> Self {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let mut class_of = Vec::with_capacity(n);
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            let next = classes.len();
            let id = *ids.entry(key(a)).or_insert(next);
            if id == next {
                classes.push(Vec::new());
            }
            classes[id].push(a);
            class_of.push(id);
        }
        Partition { class_of, classes }
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    /// Members of the class containing `a`.
    pub fn class_containing(&self, a: usize) -> &[usize] {
        &self.classes[self.class_of[a]]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.classes
            .iter()
            .all(|c| c.iter().all(|&a| coarser.same(a, c[0])))
    }

    /// Class sizes in class order.
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// A dense relation on `0..n`, stored as bit rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitRelation {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitRelation {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitRelation { n, words, bits: vec![0; n * words] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Self::new(n);
        for a in 0..n {
            for b in 0..n {
                if f(a, b) {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits[a * self.words + b / 64] |= 1 << (b % 64);
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|a| self.contains(a, a))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| !(self.contains(a, b) && self.contains(b, a))))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.n).all(|a| {
            (0..self.n)
                .filter(|&b| self.contains(a, b))
                .all(|b| (0..self.n).all(|c| !self.contains(b, c) || self.contains(a, c)))
        })
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_reflexive() && self.is_antisymmetric() && self.is_transitive()
    }

    /// Every pair of `self` is also a pair of `other`.
    pub fn is_subset_of(&self, other: &BitRelation) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(x, y)| x & !y == 0)
    }

    /// Reflexive-transitive closure (Warshall over bit rows).
    pub fn reflexive_transitive_closure(&self) -> BitRelation {
        let mut r = self.clone();
        for a in 0..self.n {
            r.insert(a, a);
        }
        for k in 0..self.n {
            let row_k = r.bits[k * r.words..(k + 1) * r.words].to_vec();
            for a in 0..self.n {
                if r.contains(a, k) {
                    for (w, bits) in row_k.iter().enumerate() {
                        r.bits[a * r.words + w] |= bits;
                    }
                }
            }
        }
        r
    }

    /// The relation `a ~ b` iff `a R b` and `b R a`, as a partition.
    /// Only meaningful for preorders.
    pub fn symmetric_classes(&self) -> Partition {
        let n = self.n;
        Partition::from_key(n, |a| (0..n).find(|&b| self.contains(a, b) && self.contains(b, a)).unwrap_or(a))
    }
}
