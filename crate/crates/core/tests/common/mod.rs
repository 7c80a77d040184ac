#![allow(dead_code)]

use becurv::fixtures::{
    cube_times_diagonal_square, diagonal_square, hss_negative_curvature, hypercube,
    laborde_hebbare, ncp2_counterexample, ou_chain, scaled,
};
use becurv::{Vertex, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The agreement corpus.
pub fn corpus() -> Vec<(String, WeightedGraph)> {
    let mut out = Vec::new();
    for d in 1..=6 {
        out.push((format!("H_{d}"), hypercube(d).unwrap()));
    }
    for kappa in [0.5, 2.0] {
        for d in 2..=4 {
            out.push((
                format!("H_{d} scaled by {kappa}"),
                scaled(&hypercube(d).unwrap(), kappa).unwrap(),
            ));
        }
    }
    for d in 1..=5 {
        out.push((format!("(H_{d})_P"), ou_chain(d).unwrap()));
    }
    out.push(("laborde-hebbare".into(), laborde_hebbare()));
    out.push(("hss-negative".into(), hss_negative_curvature()));
    out.push(("diagonal-square".into(), diagonal_square()));
    out.push(("H_2 x diagonal-square".into(), cube_times_diagonal_square()));
    out
}

/// Small fixtures for per-vertex exhaustive checks.
pub fn small_fixtures() -> Vec<(String, WeightedGraph)> {
    let mut out = vec![
        ("H_3".to_owned(), hypercube(3).unwrap()),
        ("H_4".to_owned(), hypercube(4).unwrap()),
        (
            "H_3 scaled by 0.5".to_owned(),
            scaled(&hypercube(3).unwrap(), 0.5).unwrap(),
        ),
        ("(H_4)_P".to_owned(), ou_chain(4).unwrap()),
        ("laborde-hebbare".to_owned(), laborde_hebbare()),
        ("hss-negative".to_owned(), hss_negative_curvature()),
        ("ncp2".to_owned(), ncp2_counterexample()),
        ("diagonal-square".to_owned(), diagonal_square()),
        (
            "H_2 x diagonal-square".to_owned(),
            cube_times_diagonal_square(),
        ),
    ];
    out.push(("path-5".to_owned(), becurv::fixtures::path(5)));
    out.push(("cycle-7".to_owned(), becurv::fixtures::cycle(7)));
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_function(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn distance_function(g: &WeightedGraph, x0: Vertex) -> Vec<f64> {
    g.distances_from(x0)
        .into_iter()
        .map(|d| d.expect("connected") as f64)
        .collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// A connected weighted graph on `n` vertices: a random spanning tree plus
/// extra edges, random weights and measures.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> WeightedGraph {
    let ids: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
    let vertices = ids
        .iter()
        .map(|id| (id.clone(), rng.gen_range(0.5..3.0)))
        .collect();
    let mut pairs = std::collections::BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        pairs.insert((j, i));
    }
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            pairs.insert((a.min(b), a.max(b)));
        }
    }
    let edges = pairs
        .into_iter()
        .map(|(a, b)| (ids[a].clone(), ids[b].clone(), rng.gen_range(0.2..2.0)))
        .collect();
    WeightedGraph::new(vertices, edges).unwrap()
}
