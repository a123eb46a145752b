use serde::{Deserialize, Serialize};

use super::{rat, Rational};
use crate::error::{KrallError, Result};

/// Finite set of integers kept sorted and duplicate-free. `max` of the empty set is -1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexSet(Vec<i64>);

impl IndexSet {
    pub fn new(mut v: Vec<i64>) -> Self {
        v.sort_unstable();
        v.dedup();
        IndexSet(v)
    }

    pub fn range(lo: i64, hi: i64) -> Self {
        IndexSet((lo..=hi).collect())
    }

    pub fn elements(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> i64 {
        self.0.last().copied().unwrap_or(-1)
    }

    pub fn min(&self) -> i64 {
        self.0.first().copied().unwrap_or(-1)
    }

    pub fn contains(&self, v: i64) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        IndexSet::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.iter().filter(|v| !other.contains(*v)).collect())
    }
}

impl FromIterator<i64> for IndexSet {
    fn from_iter<I: IntoIterator<Item = i64>>(it: I) -> Self {
        IndexSet::new(it.into_iter().collect())
    }
}

/// I(F) = {1..max F} minus {max F - f}.
pub fn involution(f: &IndexSet) -> Result<IndexSet> {
    if let Some(bad) = f.iter().find(|&v| v < 1) {
        return Err(KrallError::InvalidParams(format!(
            "involution needs positive integers, got {bad}"
        )));
    }
    let m = f.max();
    if f.is_empty() {
        return Ok(IndexSet::default());
    }
    let excluded: IndexSet = f.iter().map(|v| m - v).collect();
    Ok((1..=m).filter(|v| !excluded.contains(*v)).collect())
}

/// V_F = prod_{i<j} (f_j - f_i).
pub fn vandermonde(f: &IndexSet) -> Rational {
    let e = f.elements();
    let mut acc = rat(1);
    for j in 0..e.len() {
        for i in 0..j {
            acc *= rat(e[j] - e[i]);
        }
    }
    acc
}
