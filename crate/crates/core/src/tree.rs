//! Vertex-weighted trees and distance-based index evaluation.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTree {
    weights: Vec<f64>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

/// On-disk form of a tree: weights and 0-based edge list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeFile {
    pub weights: Vec<f64>,
    pub edges: Vec<[usize; 2]>,
}

impl WeightedTree {
    pub fn new(weights: Vec<f64>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::InvalidTree("no vertices".into()));
        }
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w >= 0.0))
        {
            return Err(Error::NegativeWeight {
                index: i,
                value: *w,
            });
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{} edges for {} vertices, expected {}",
                edges.len(),
                n,
                n - 1
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidTree(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        // n-1 edges plus connectivity implies acyclic
        let reached = bfs_distances(&adjacency, 0)
            .iter()
            .filter(|d| **d != usize::MAX)
            .count();
        if reached != n {
            return Err(Error::InvalidTree(format!(
                "graph is disconnected ({reached} of {n} vertices reachable)"
            )));
        }
        Ok(Self {
            weights,
            edges,
            adjacency,
        })
    }

    pub fn from_file(file: &TreeFile) -> Result<Self> {
        Self::new(
            file.weights.clone(),
            file.edges.iter().map(|e| (e[0], e[1])).collect(),
        )
    }

    pub fn to_file(&self) -> TreeFile {
        TreeFile {
            weights: self.weights.clone(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Same edges, different vertex weights.
    pub fn with_weights(&self, weights: Vec<f64>) -> Result<Self> {
        Self::new(weights, self.edges.clone())
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::InvalidTree("permutation length mismatch".into()));
        }
        let mut weights = vec![0.0; n];
        for v in 0..n {
            weights[perm[v]] = self.weights[v];
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        Self::new(weights, edges)
    }

    /// Distance matrix from `n` breadth-first traversals.
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.n())
            .map(|s| bfs_distances(&self.adjacency, s))
            .collect()
    }
}

fn bfs_distances(adjacency: &[Vec<usize>], source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adjacency.len()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &v in &adjacency[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Half the sum over ordered vertex pairs of weight product times distance.
pub fn vwwi_tree(tree: &WeightedTree) -> f64 {
    let w = tree.weights();
    let mut total = 0.0;
    for u in 0..tree.n() {
        if w[u] == 0.0 {
            continue;
        }
        let dist = bfs_distances(&tree.adjacency, u);
        let row: f64 = dist
            .iter()
            .zip(w)
            .skip(u + 1)
            .map(|(&d, &wv)| d as f64 * wv)
            .sum();
        total += w[u] * row;
    }
    total
}

/// Classical Wiener index: all weights taken as 1.
pub fn wiener_index(tree: &WeightedTree) -> f64 {
    let n = tree.n();
    let mut total = 0usize;
    for u in 0..n {
        let dist = bfs_distances(&tree.adjacency, u);
        total += dist[u + 1..].iter().sum::<usize>();
    }
    total as f64
}

pub fn path(weights: Vec<f64>) -> Result<WeightedTree> {
    let edges = (1..weights.len()).map(|v| (v - 1, v)).collect();
    WeightedTree::new(weights, edges)
}

pub fn star(weights: Vec<f64>) -> Result<WeightedTree> {
    let edges = (1..weights.len()).map(|v| (0, v)).collect();
    WeightedTree::new(weights, edges)
}
