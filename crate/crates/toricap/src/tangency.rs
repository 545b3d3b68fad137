//! Tangency constraints as pure combinatorics.
//!
//! A constraint is a nonempty list of per-point tangency index lists (each
//! sorted, entries >= 0) together with an even ambient dimension. The
//! entry `p` stands for tangency of order `p + 1` to a local divisor at
//! the point.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawConstraint", into = "RawConstraint")]
pub struct TangencyConstraint {
    points: Vec<Vec<u32>>,
    dim: u32,
}

/// Wire form: `{"points": [[0], [1, 2]], "dim": 4}`.
#[derive(Serialize, Deserialize)]
struct RawConstraint {
    points: Vec<Vec<u32>>,
    dim: u32,
}

impl TryFrom<RawConstraint> for TangencyConstraint {
    type Error = Error;
    fn try_from(raw: RawConstraint) -> Result<Self> {
        TangencyConstraint::new(raw.points, raw.dim)
    }
}

impl From<TangencyConstraint> for RawConstraint {
    fn from(p: TangencyConstraint) -> RawConstraint {
        RawConstraint {
            points: p.points,
            dim: p.dim,
        }
    }
}

impl TangencyConstraint {
    /// Sorts each per-point list; rejects empty lists and odd dimensions.
    pub fn new(mut points: Vec<Vec<u32>>, dim: u32) -> Result<Self> {
        if dim < 2 || dim % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "constraint dimension must be a positive even integer, got {dim}"
            )));
        }
        if points.is_empty() {
            return Err(Error::InvalidArgument(
                "constraint needs at least one point".into(),
            ));
        }
        if points.iter().any(|p| p.is_empty()) {
            return Err(Error::InvalidArgument(
                "every point needs at least one tangency entry".into(),
            ));
        }
        for p in &mut points {
            p.sort_unstable();
        }
        Ok(TangencyConstraint { points, dim })
    }

    /// The one-point constraint `((order))` in dimension `dim`.
    pub fn single(order: u32, dim: u32) -> Result<Self> {
        TangencyConstraint::new(vec![vec![order]], dim)
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// `sum over entries of (dim - 2 + 2 * entry)`.
    pub fn codim(&self) -> u64 {
        let per_entry_base = u64::from(self.dim) - 2;
        self.points
            .iter()
            .flatten()
            .map(|&p| per_entry_base + 2 * u64::from(p))
            .sum()
    }

    /// One entry per point.
    pub fn is_lax(&self) -> bool {
        self.points.iter().all(|p| p.len() == 1)
    }

    /// Imposes both constraints at disjoint point sets.
    pub fn union(&self, other: &TangencyConstraint) -> Result<TangencyConstraint> {
        if self.dim != other.dim {
            return Err(Error::InvalidArgument(format!(
                "union of constraints in dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        TangencyConstraint::new(points, self.dim)
    }

    /// Merges the constraints pointwise; each merged list is re-sorted.
    pub fn catenate(&self, other: &TangencyConstraint) -> Result<TangencyConstraint> {
        if self.dim != other.dim {
            return Err(Error::InvalidArgument(format!(
                "catenation of constraints in dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        if self.point_count() != other.point_count() {
            return Err(Error::InvalidArgument(format!(
                "catenation of constraints at {} and {} points",
                self.point_count(),
                other.point_count()
            )));
        }
        let points = self
            .points
            .iter()
            .zip(&other.points)
            .map(|(p, q)| {
                let mut merged = p.clone();
                merged.extend(q);
                merged
            })
            .collect();
        TangencyConstraint::new(points, self.dim)
    }
}
