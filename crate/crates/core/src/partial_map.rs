use std::fmt;

use serde::Serialize;

/// A partial function `0..domain_size → 0..codomain_size`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartialMap {
    domain_size: usize,
    codomain_size: usize,
    images: Vec<Option<usize>>,
}

impl PartialMap {
    /// Panics if a defined image is out of range.
    pub fn new(domain_size: usize, codomain_size: usize, images: Vec<Option<usize>>) -> Self {
        assert_eq!(images.len(), domain_size, "one image slot per domain point");
        assert!(
            images.iter().flatten().all(|&y| y < codomain_size),
            "image out of range"
        );
        PartialMap { domain_size, codomain_size, images }
    }

    pub fn total(codomain_size: usize, images: Vec<usize>) -> Self {
        Self::new(images.len(), codomain_size, images.into_iter().map(Some).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::total(n, (0..n).collect())
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.images[x]
    }

    pub fn images(&self) -> Vec<Option<usize>> {
        self.images.clone()
    }

    pub fn is_total(&self) -> bool {
        self.images.iter().all(Option::is_some)
    }

    /// Images of a total map, or `None` if some point is undefined.
    pub fn total_images(&self) -> Option<Vec<usize>> {
        self.images.iter().copied().collect()
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &PartialMap) -> PartialMap {
        assert_eq!(inner.codomain_size, self.domain_size, "maps are not composable");
        let images = inner.images.iter().map(|x| x.and_then(|y| self.images[y])).collect();
        PartialMap::new(inner.domain_size, self.codomain_size, images)
    }
}

impl fmt::Debug for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, y) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match y {
                Some(y) => write!(f, "{y}")?,
                None => write!(f, "-")?,
            }
        }
        write!(f, "]")
    }
}
