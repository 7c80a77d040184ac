//! Shell-wise hypercube recognition with a self-checking certificate.
//!
//! Subsets of `[D]` are `u64` bitmasks: element `i` is bit `i − 1`.
//! The root is labeled `∅`, its neighbors `{1}, …, {D}` in vertex order,
//! and every `z ∈ S_k` receives the union of its back-neighbor labels.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixtures::binomial;
use crate::graph::{Vertex, WeightedGraph};

pub const MAX_LABEL_DIM: usize = 62;

/// Elements of a bitmask subset, ascending, 1-based.
pub fn subset_elements(mask: u64) -> Vec<usize> {
    (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect()
}

/// A labeling of `B_radius(root)` by subsets of `[dimension]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CubeLabeling {
    pub dimension: usize,
    pub root: Vertex,
    pub radius: usize,
    /// `None` outside the labeled ball.
    pub labels: Vec<Option<u64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum FailureReason {
    NotBipartite {
        u: String,
        v: String,
    },
    NotRegular {
        vertex: String,
        degree: usize,
        expected: usize,
    },
    BackDegreeMismatch {
        vertex: String,
        expected: usize,
        got: usize,
    },
    UnionSizeViolation {
        vertex: String,
        labels: Vec<Vec<usize>>,
    },
    SphereSizeMismatch {
        shell: usize,
        got: usize,
        expected: usize,
    },
    LabelCollision {
        first: String,
        second: String,
        label: Vec<usize>,
    },
    NotSubsetConsistent {
        vertex: String,
    },
    /// The independent certificate check rejected the labeling.
    CertificateRejected {
        detail: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecognitionFailure {
    pub shell: usize,
    pub reason: FailureReason,
}

pub type Recognition = std::result::Result<CubeLabeling, RecognitionFailure>;

fn fail(shell: usize, reason: FailureReason) -> Recognition {
    Err(RecognitionFailure { shell, reason })
}

/// Labels shells `0..=radius`; with no radius every shell up to
/// `max(ecc, D)` is labeled and the whole graph is certified.
fn label_shells(g: &WeightedGraph, x0: Vertex, radius: Option<usize>) -> Result<Recognition> {
    let shells = g.connected_shells(x0)?;
    let d = g.combinatorial_degree(x0)?;
    if d > MAX_LABEL_DIM {
        return Err(Error::DimensionOutOfRange(d));
    }
    let last = radius.unwrap_or_else(|| shells.eccentricity.max(d));
    let sphere = |k: usize| shells.spheres.get(k).map(Vec::as_slice).unwrap_or(&[]);
    let dist = |v: Vertex| shells.dist[v].unwrap_or(usize::MAX);

    // Vertices whose whole neighborhood must look like a cube vertex.
    let interior = if radius.is_some() {
        last.saturating_sub(1)
    } else {
        usize::MAX
    };
    for k in 0..=shells.eccentricity.min(interior) {
        for &v in sphere(k) {
            let deg = g.neighbors(v).len();
            if deg != d {
                return Ok(fail(
                    k,
                    FailureReason::NotRegular {
                        vertex: g.id(v).to_owned(),
                        degree: deg,
                        expected: d,
                    },
                ));
            }
        }
    }

    let mut labels: Vec<Option<u64>> = vec![None; g.len()];
    labels[x0] = Some(0);
    for k in 1..=last {
        for &v in sphere(k) {
            if let Some(&(u, _)) = g.neighbors(v).iter().find(|&&(u, _)| dist(u) == k) {
                return Ok(fail(
                    k,
                    FailureReason::NotBipartite {
                        u: g.id(v).to_owned(),
                        v: g.id(u).to_owned(),
                    },
                ));
            }
        }
        let expected = binomial(d, k) as usize;
        if sphere(k).len() != expected {
            return Ok(fail(
                k,
                FailureReason::SphereSizeMismatch {
                    shell: k,
                    got: sphere(k).len(),
                    expected,
                },
            ));
        }
        if k == 1 {
            for (i, &y) in sphere(1).iter().enumerate() {
                labels[y] = Some(1 << i);
            }
            continue;
        }
        let mut seen: HashMap<u64, Vertex> = HashMap::new();
        for &z in sphere(k) {
            let back: Vec<u64> = g
                .neighbors(z)
                .iter()
                .filter(|&&(y, _)| dist(y) == k - 1)
                .map(|&(y, _)| labels[y].expect("previous shell is labeled"))
                .collect();
            if back.len() != k {
                return Ok(fail(
                    k,
                    FailureReason::BackDegreeMismatch {
                        vertex: g.id(z).to_owned(),
                        expected: k,
                        got: back.len(),
                    },
                ));
            }
            let union = back.iter().fold(0, |acc, a| acc | a);
            if union.count_ones() as usize != k {
                return Ok(fail(
                    k,
                    FailureReason::UnionSizeViolation {
                        vertex: g.id(z).to_owned(),
                        labels: back.iter().map(|&a| subset_elements(a)).collect(),
                    },
                ));
            }
            let mut distinct = back.clone();
            distinct.sort_unstable();
            distinct.dedup();
            let consistent = distinct.len() == k
                && back
                    .iter()
                    .all(|&a| a & !union == 0 && a.count_ones() as usize == k - 1);
            if !consistent {
                return Ok(fail(
                    k,
                    FailureReason::NotSubsetConsistent {
                        vertex: g.id(z).to_owned(),
                    },
                ));
            }
            if let Some(&other) = seen.get(&union) {
                return Ok(fail(
                    k,
                    FailureReason::LabelCollision {
                        first: g.id(other).to_owned(),
                        second: g.id(z).to_owned(),
                        label: subset_elements(union),
                    },
                ));
            }
            seen.insert(union, z);
            labels[z] = Some(union);
        }
    }

    let labeling = CubeLabeling {
        dimension: d,
        root: x0,
        radius: last,
        labels,
    };
    let check = if radius.is_some() {
        verify_ball_labeling(g, &labeling)
    } else {
        verify_labeling(g, &labeling)
    };
    match check {
        Ok(()) => Ok(Ok(labeling)),
        Err(detail) => Ok(fail(last, FailureReason::CertificateRejected { detail })),
    }
}

/// Recognizes `G` (through its unweighted representation) as `H_D`,
/// `D = deg(x0)`.
pub fn recognize(g: &WeightedGraph, x0: Vertex) -> Result<Recognition> {
    g.check_vertex(x0)?;
    label_shells(&g.unweighted_representation(), x0, None)
}

/// Certifies `B_k(x0) ≅ P_{≤k}([D])` with adjacency.
pub fn ball_recognize(g: &WeightedGraph, x0: Vertex, k: usize) -> Result<Recognition> {
    g.check_vertex(x0)?;
    label_shells(&g.unweighted_representation(), x0, Some(k))
}

/// Runs [`recognize`] at the smallest-identifier vertex.
pub fn is_hypercube(g: &WeightedGraph) -> Result<Option<CubeLabeling>> {
    g.require_connected()?;
    Ok(recognize(g, 0)?.ok())
}

/// Unconditional check that `labeling` is an isomorphism onto `H_D`:
/// bijection onto `P([D])`, adjacency exactly at symmetric difference one,
/// and `#Φ(v) = d(root, v)`.
pub fn verify_labeling(
    g: &WeightedGraph,
    labeling: &CubeLabeling,
) -> std::result::Result<(), String> {
    let d = labeling.dimension;
    if d > MAX_LABEL_DIM {
        return Err(format!("dimension {d} too large"));
    }
    if labeling.labels.len() != g.len() || g.len() as u128 != 1u128 << d {
        return Err(format!(
            "{} vertices cannot biject onto 2^{d} subsets",
            g.len()
        ));
    }
    let mut owner: HashMap<u64, Vertex> = HashMap::with_capacity(g.len());
    for (v, l) in labeling.labels.iter().enumerate() {
        let l = l.ok_or_else(|| format!("{:?} is unlabeled", g.id(v)))?;
        if l >> d != 0 {
            return Err(format!("label of {:?} leaves [D]", g.id(v)));
        }
        if let Some(u) = owner.insert(l, v) {
            return Err(format!("{:?} and {:?} share a label", g.id(u), g.id(v)));
        }
    }
    let dist = g.distances_from(labeling.root);
    for v in 0..g.len() {
        let l = labeling.labels[v].unwrap_or_default();
        if dist[v] != Some(l.count_ones() as usize) {
            return Err(format!(
                "label size of {:?} differs from its distance",
                g.id(v)
            ));
        }
        if g.neighbors(v).len() != d {
            return Err(format!("{:?} has degree {}", g.id(v), g.neighbors(v).len()));
        }
        for &(u, _) in g.neighbors(v) {
            let lu = labels_at(labeling, u);
            if (lu ^ l).count_ones() != 1 {
                return Err(format!(
                    "edge {:?}-{:?} is not a cube edge",
                    g.id(v),
                    g.id(u)
                ));
            }
        }
        for i in 0..d {
            let u = owner[&(l ^ (1 << i))];
            if !g.adjacent(u, v) {
                return Err(format!("cube edge {:?}-{:?} is missing", g.id(v), g.id(u)));
            }
        }
    }
    Ok(())
}

fn labels_at(labeling: &CubeLabeling, v: Vertex) -> u64 {
    labeling.labels[v].unwrap_or(u64::MAX)
}

/// The ball version of [`verify_labeling`]: `B_radius(root)` maps
/// bijectively onto subsets of size at most `radius`, with cube adjacency.
pub fn verify_ball_labeling(
    g: &WeightedGraph,
    labeling: &CubeLabeling,
) -> std::result::Result<(), String> {
    let d = labeling.dimension;
    let dist = g.distances_from(labeling.root);
    let in_ball = |v: Vertex| dist[v].is_some_and(|k| k <= labeling.radius);
    let expected: f64 = (0..=labeling.radius.min(d)).map(|k| binomial(d, k)).sum();
    let mut owner: HashMap<u64, Vertex> = HashMap::new();
    for v in 0..g.len() {
        match (in_ball(v), labeling.labels[v]) {
            (true, Some(l)) => {
                if l >> d != 0 || dist[v] != Some(l.count_ones() as usize) {
                    return Err(format!("bad label at {:?}", g.id(v)));
                }
                if let Some(u) = owner.insert(l, v) {
                    return Err(format!("{:?} and {:?} share a label", g.id(u), g.id(v)));
                }
            }
            (false, None) => {}
            _ => return Err(format!("labeling does not match the ball at {:?}", g.id(v))),
        }
    }
    if owner.len() as f64 != expected {
        return Err(format!(
            "ball has {} vertices, expected {expected}",
            owner.len()
        ));
    }
    for (&l, &v) in &owner {
        for &(u, _) in g.neighbors(v) {
            if in_ball(u) && (labels_at(labeling, u) ^ l).count_ones() != 1 {
                return Err(format!(
                    "edge {:?}-{:?} is not a cube edge",
                    g.id(v),
                    g.id(u)
                ));
            }
        }
        for i in 0..d {
            if let Some(&u) = owner.get(&(l ^ (1 << i))) {
                if !g.adjacent(u, v) {
                    return Err(format!("cube edge {:?}-{:?} is missing", g.id(v), g.id(u)));
                }
            }
        }
    }
    Ok(())
}

/// Brute-force quantities of the power-set lemma for `k + 1` distinct
/// `k`-subsets `A_i` of `[D]`: `(#⋃ P_{k−1}(A_i), C(k+1, 2), #⋃ A_i)`.
pub fn powerset_lemma_oracle(d: usize, k: usize, subsets: &[u64]) -> Result<(usize, usize, usize)> {
    if k == 0 || k >= d || d > MAX_LABEL_DIM {
        return Err(Error::MalformedInput(format!(
            "need 1 <= k < D <= 62, got k={k}, D={d}"
        )));
    }
    if subsets.len() != k + 1 {
        return Err(Error::MalformedInput(format!(
            "expected {} subsets, got {}",
            k + 1,
            subsets.len()
        )));
    }
    let mut sorted = subsets.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != subsets.len() {
        return Err(Error::MalformedInput("subsets are not distinct".into()));
    }
    if let Some(a) = subsets
        .iter()
        .find(|&&a| a.count_ones() as usize != k || a >> d != 0)
    {
        return Err(Error::MalformedInput(format!(
            "{:?} is not a {k}-subset of [{d}]",
            subset_elements(*a)
        )));
    }
    let mut faces: Vec<u64> = subsets
        .iter()
        .flat_map(|&a| {
            (0..d)
                .filter(move |i| a >> i & 1 == 1)
                .map(move |i| a & !(1 << i))
        })
        .collect();
    faces.sort_unstable();
    faces.dedup();
    let union = subsets.iter().fold(0u64, |acc, a| acc | a);
    Ok((faces.len(), k * (k + 1) / 2, union.count_ones() as usize))
}
