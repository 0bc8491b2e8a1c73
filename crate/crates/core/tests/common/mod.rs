//! Oracles shared by the integration tests. They deliberately avoid the
//! crate's own evaluation code: distances come from Floyd-Warshall and
//! caterpillars are enumerated from scratch.
#![allow(dead_code)]

use wiener_max::Instance;

/// Index of a tree given as an edge list, by Floyd-Warshall.
pub fn floyd_vwwi(weights: &[f64], edges: &[(usize, usize)]) -> f64 {
    let n = weights.len();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in edges {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            total += weights[i] * weights[j] * d[i][j] as f64;
        }
    }
    total
}

/// Edges of the caterpillar with the given backbone and pendant lists.
pub fn caterpillar_edges(backbone: &[usize], pendants: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = backbone.windows(2).map(|p| (p[0], p[1])).collect();
    for (k, list) in pendants.iter().enumerate() {
        for &p in list {
            edges.push((backbone[k], p));
        }
    }
    edges
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Every caterpillar of the instance (canonical vertex ids) whose vertex
/// positions agree with `pinned`, as `(backbone, pendant lists)`.
pub fn caterpillars(
    inst: &Instance,
    pinned: &[Option<usize>],
) -> Vec<(Vec<usize>, Vec<Vec<usize>>)> {
    let (n, q) = (inst.n(), inst.q());
    let internal: Vec<usize> = (0..q).collect();
    let mut out = Vec::new();
    for order in permutations(&internal) {
        if order
            .iter()
            .enumerate()
            .any(|(k, &v)| pinned[v].is_some_and(|p| p != k))
        {
            continue;
        }
        let capacity: Vec<usize> = order
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let neighbours = if q == 1 {
                    0
                } else if k == 0 || k == q - 1 {
                    1
                } else {
                    2
                };
                inst.degree(v) - neighbours
            })
            .collect();
        let mut lists = vec![Vec::new(); q];
        distribute(pinned, q, n, &capacity, &mut lists, &order, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn distribute(
    pinned: &[Option<usize>],
    j: usize,
    n: usize,
    capacity: &[usize],
    lists: &mut Vec<Vec<usize>>,
    order: &[usize],
    out: &mut Vec<(Vec<usize>, Vec<Vec<usize>>)>,
) {
    if j == n {
        if lists.iter().zip(capacity).all(|(l, &c)| l.len() == c) {
            out.push((order.to_vec(), lists.clone()));
        }
        return;
    }
    for k in 0..capacity.len() {
        if lists[k].len() < capacity[k] && pinned[j].is_none_or(|p| p == k) {
            lists[k].push(j);
            distribute(pinned, j + 1, n, capacity, lists, order, out);
            lists[k].pop();
        }
    }
}

/// Best caterpillar value under the pinning, evaluated by Floyd-Warshall.
pub fn best_caterpillar(inst: &Instance, pinned: &[Option<usize>]) -> Option<f64> {
    caterpillars(inst, pinned)
        .into_iter()
        .map(|(b, p)| floyd_vwwi(inst.weights(), &caterpillar_edges(&b, &p)))
        .max_by(f64::total_cmp)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

/// Instance satisfying the pairing conditions under which the bound is
/// attained: internal vertices come in equal (weight, degree) pairs, and so
/// do pendants, apart from those the structure leaves unpaired.
pub fn paired_instance(seed: u64) -> Instance {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let pairs = rng.gen_range(2..=4usize);
    let mut internal: Vec<(f64, i64)> = (0..pairs)
        .map(|_| (rng.gen_range(1..=5) as f64, rng.gen_range(2..=4)))
        .collect();
    // heavier weights go with larger degrees
    internal.sort_by(|a, b| b.1.cmp(&a.1).then(b.0.total_cmp(&a.0)));
    let mut weights_sorted: Vec<f64> = internal.iter().map(|p| p.0).collect();
    weights_sorted.sort_by(|a, b| b.total_cmp(a));
    for (p, w) in internal.iter_mut().zip(weights_sorted) {
        p.0 = w;
    }
    let mut weights = Vec::new();
    let mut degrees = Vec::new();
    for &(w, d) in &internal {
        weights.extend([w, w]);
        degrees.extend([d, d]);
    }
    let pendant_count: i64 = degrees.iter().map(|d| d - 2).sum::<i64>() + 2;
    let pendant_pairs = pendant_count / 2;
    let mut pendant_weights: Vec<f64> = (0..pendant_pairs)
        .map(|_| rng.gen_range(1..=6) as f64)
        .collect();
    pendant_weights.sort_by(|a, b| b.total_cmp(a));
    for w in pendant_weights {
        weights.extend([w, w]);
        degrees.extend([1, 1]);
    }
    Instance::new(&weights, &degrees).expect("valid paired instance")
}
