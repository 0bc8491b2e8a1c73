//! Validated weight and degree sequences.
//!
//! An [`Instance`] stores vertices in canonical order: degrees non-increasing,
//! and among equal degrees, weights non-increasing. Vertices `0..q` are the
//! internal ones (degree at least 2), vertices `q..n` are pendants. The
//! permutation back to the caller's order is kept in [`Instance::original_index`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    weights: Vec<f64>,
    degrees: Vec<usize>,
    original_index: Vec<usize>,
    q: usize,
    total_weight: f64,
    pendant_weight: f64,
    pendant_square_sum: f64,
    monotone: bool,
}

/// On-disk form of an instance, in caller order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub weights: Vec<f64>,
    pub degrees: Vec<i64>,
}

impl Instance {
    /// Validates the sequences and applies the canonical ordering.
    pub fn new(weights: &[f64], degrees: &[i64]) -> Result<Self> {
        if weights.len() != degrees.len() {
            return Err(Error::LengthMismatch {
                weights: weights.len(),
                degrees: degrees.len(),
            });
        }
        if let Some((index, &value)) = degrees.iter().enumerate().find(|(_, &d)| d < 1) {
            return Err(Error::NonPositiveDegree { index, value });
        }
        if let Some((index, &value)) = weights
            .iter()
            .enumerate()
            .find(|(_, &w)| !(w.is_finite() && w >= 0.0))
        {
            return Err(Error::NegativeWeight { index, value });
        }
        let n = weights.len();
        let sum: usize = degrees.iter().map(|&d| d as usize).sum();
        let expected = 2 * n as i64 - 2;
        if sum as i64 != expected {
            return Err(Error::DegreeSumInvalid { sum, expected });
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            degrees[b]
                .cmp(&degrees[a])
                .then(weights[b].total_cmp(&weights[a]))
                .then(a.cmp(&b))
        });
        let weights: Vec<f64> = order.iter().map(|&i| weights[i]).collect();
        let degrees: Vec<usize> = order.iter().map(|&i| degrees[i] as usize).collect();
        Ok(Self::from_canonical(weights, degrees, order))
    }

    pub fn from_file(file: &InstanceFile) -> Result<Self> {
        Self::new(&file.weights, &file.degrees)
    }

    fn from_canonical(weights: Vec<f64>, degrees: Vec<usize>, original_index: Vec<usize>) -> Self {
        let q = degrees.iter().take_while(|&&d| d > 1).count();
        let total_weight = weights.iter().sum();
        let pendant_weight = weights[q..].iter().sum();
        let pendant_square_sum = weights[q..].iter().map(|w| w * w).sum();
        let monotone = weights[..q].windows(2).all(|w| w[0] >= w[1]);
        Self {
            weights,
            degrees,
            original_index,
            q,
            total_weight,
            pendant_weight,
            pendant_square_sum,
            monotone,
        }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Number of internal vertices, i.e. backbone positions of a caterpillar.
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn is_internal(&self, i: usize) -> bool {
        i < self.q
    }

    /// `original_index()[i]` is the caller-order index of canonical vertex `i`.
    pub fn original_index(&self) -> &[usize] {
        &self.original_index
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn pendant_weight(&self) -> f64 {
        self.pendant_weight
    }

    pub fn internal_weight(&self) -> f64 {
        self.weights[..self.q].iter().sum()
    }

    pub fn pendant_square_sum(&self) -> f64 {
        self.pendant_square_sum
    }

    /// Internal weights are non-increasing in canonical order.
    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    /// Part of the caterpillar index that does not depend on where vertices
    /// sit on the backbone: total weight times pendant weight, minus the
    /// squared pendant weights.
    pub fn caterpillar_constant(&self) -> f64 {
        self.total_weight * self.pendant_weight - self.pendant_square_sum
    }

    /// Number of backbone neighbours of position `k` (0-based).
    pub fn backbone_neighbours(&self, k: usize) -> usize {
        backbone_neighbours(self.q, k)
    }

    pub fn to_file(&self) -> InstanceFile {
        let n = self.n();
        let mut weights = vec![0.0; n];
        let mut degrees = vec![0; n];
        for (i, &orig) in self.original_index.iter().enumerate() {
            weights[orig] = self.weights[i];
            degrees[orig] = self.degrees[i] as i64;
        }
        InstanceFile { weights, degrees }
    }
}

pub fn validate_instance(weights: &[f64], degrees: &[i64]) -> Result<Instance> {
    Instance::new(weights, degrees)
}

/// Backbone neighbours of position `k` on a backbone of `q` positions.
pub fn backbone_neighbours(q: usize, k: usize) -> usize {
    if q <= 1 {
        0
    } else if k == 0 || k + 1 == q {
        1
    } else {
        2
    }
}
