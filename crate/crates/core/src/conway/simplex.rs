//! Weighted simplices: an invariant evaluated on every sublink.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::{DiagramError, LinkDiagram};

pub const MAX_COMPONENTS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplexError {
    #[error("{0} components exceed the limit of {MAX_COMPONENTS}")]
    TooManyComponents(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Values indexed by nonempty component subsets (bit masks).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSimplex<V> {
    pub vertices: usize,
    pub faces: BTreeMap<u32, V>,
}

pub fn weighted_simplex<V>(
    d: &LinkDiagram,
    invariant: impl Fn(&LinkDiagram) -> V,
) -> Result<WeightedSimplex<V>, SimplexError> {
    let n = d.component_count();
    if n > MAX_COMPONENTS {
        return Err(SimplexError::TooManyComponents(n));
    }
    let mut faces = BTreeMap::new();
    for mask in 1u32..(1 << n) {
        let keep: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        faces.insert(mask, invariant(&d.sublink(&keep)?));
    }
    Ok(WeightedSimplex { vertices: n, faces })
}

impl<V: PartialEq> WeightedSimplex<V> {
    /// Whether some bijection of vertices carries one weighting onto the other.
    pub fn equivalent(&self, other: &Self) -> bool {
        if self.vertices != other.vertices {
            return false;
        }
        let mut perm: Vec<usize> = (0..self.vertices).collect();
        loop {
            let ok = self.faces.iter().all(|(&mask, v)| {
                let image = (0..self.vertices).filter(|i| mask & (1 << i) != 0).fold(0u32, |m, i| m | (1 << perm[i]));
                other.faces.get(&image) == Some(v)
            });
            if ok {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
