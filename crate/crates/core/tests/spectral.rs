mod common;

use std::collections::BTreeMap;

use becurv::curvature::{curvature_all, min_curvature};
use becurv::fixtures::{diagonal_square, hypercube, ou_chain};
use becurv::spectral::{
    eigenvalue_multiplicity, extend_from_ball, inner_m, lambda_index,
    semigroup_sharpness_deviation, spectrum,
};
use becurv::{Error, Vertex, WeightedGraph};
use common::{corpus, distance_function, max_abs_diff, random_connected, random_function, rng};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;

fn min_k(g: &WeightedGraph) -> f64 {
    min_curvature(&curvature_all(g, f64::INFINITY).unwrap())
        .unwrap()
        .1
}

fn ball(g: &WeightedGraph, x0: Vertex) -> Vec<Vertex> {
    std::iter::once(x0)
        .chain(g.neighbors(x0).iter().map(|&(y, _)| y))
        .collect()
}

fn trace_on(f: &[f64], vertices: &[Vertex]) -> BTreeMap<Vertex, f64> {
    vertices.iter().map(|&v| (v, f[v])).collect()
}

fn check_spectral_invariants(name: &str, g: &WeightedGraph) {
    let s = spectrum(g).unwrap();
    assert!(s.eigenvalues[0].abs() <= 1e-9, "{name}");
    if g.len() > 1 {
        assert!(s.eigenvalues[1] > 1e-9, "{name}");
    }
    let scale = s.max_eigenvalue().max(1.0);
    for (lambda, phi) in s.eigenvalues.iter().zip(&s.eigenbasis) {
        let lap = becurv::operators::laplacian(g, phi).unwrap();
        let res = lap
            .iter()
            .zip(phi)
            .map(|(l, p)| (l + lambda * p).abs())
            .fold(0.0, f64::max);
        assert!(res <= 1e-8 * scale, "{name}: residual {res}");
    }
    for i in 0..s.len() {
        for j in 0..s.len() {
            let expected = if i == j { 1.0 } else { 0.0 };
            let got = inner_m(g.measures(), &s.eigenbasis[i], &s.eigenbasis[j]);
            assert!(
                (got - expected).abs() <= 1e-9,
                "{name}: gram[{i},{j}] = {got}"
            );
            assert!((s.gram(i, j) - got).abs() <= 1e-12);
        }
    }
    let trace: f64 = s.eigenvalues.iter().sum();
    let degrees: f64 = (0..g.len()).map(|x| g.vertex_degree(x).unwrap()).sum();
    assert!(
        (trace - degrees).abs() <= 1e-8 * degrees.max(1.0),
        "{name}: trace"
    );
}

#[test]
fn spectral_invariants_on_corpus() {
    for (name, g) in corpus() {
        check_spectral_invariants(&name, &g);
    }
}

#[test]
fn spectrum_examples() {
    let close = |a: &[f64], b: &[f64]| max_abs_diff(a, b) <= 1e-9;
    let h3 = hypercube(3).unwrap();
    assert!(close(
        &spectrum(&h3).unwrap().eigenvalues,
        &[0.0, 2.0, 2.0, 2.0, 4.0, 4.0, 4.0, 6.0]
    ));
    assert!(close(
        &spectrum(&diagonal_square()).unwrap().eigenvalues,
        &[0.0, 2.0, 4.0, 4.0]
    ));
    let chain = ou_chain(4).unwrap();
    assert!(close(
        &spectrum(&chain).unwrap().eigenvalues,
        &[0.0, 2.0, 4.0, 6.0, 8.0]
    ));

    assert!((lambda_index(&h3, 3).unwrap() - 2.0).abs() <= 1e-9);
    assert!((lambda_index(&diagonal_square(), 3).unwrap() - 4.0).abs() <= 1e-9);
    assert!(lambda_index(&chain, 0).unwrap().abs() <= 1e-9);
    assert_eq!(
        lambda_index(&h3, 8),
        Err(Error::IndexOutOfRange { index: 8, len: 8 })
    );

    assert_eq!(
        eigenvalue_multiplicity(&hypercube(4).unwrap(), 2.0, 1e-6).unwrap(),
        4
    );
    assert_eq!(eigenvalue_multiplicity(&h3, 3.0, 1e-6).unwrap(), 0);
    assert_eq!(eigenvalue_multiplicity(&chain, 2.0, 1e-6).unwrap(), 1);

    let disconnected = WeightedGraph::from_lists(&[("a", 1.0), ("b", 1.0)], &[]).unwrap();
    assert!(matches!(spectrum(&disconnected), Err(Error::Disconnected)));
}

#[test]
fn lichnerowicz_and_multiplicity_bound() {
    for (name, g) in corpus() {
        let k = min_k(&g);
        if k <= 0.0 {
            continue;
        }
        let s = spectrum(&g).unwrap();
        assert!(
            s.eigenvalues[1] >= k - 1e-7,
            "{name}: lambda1 {} < K {k}",
            s.eigenvalues[1]
        );
        let mult = s.multiplicity(k, 1e-6);
        assert!(mult <= g.min_combinatorial_degree(), "{name}");
    }
}

#[test]
fn extension_reproduces_distance_eigenfunction() {
    let g = hypercube(3).unwrap();
    let psi: Vec<f64> = distance_function(&g, 0).iter().map(|d| 1.5 - d).collect();
    let ext = extend_from_ball(&g, 0, &trace_on(&psi, &ball(&g, 0)), 2.0).unwrap();
    assert!(max_abs_diff(&ext, &psi) <= 1e-12);

    let c = vec![0.25; g.len()];
    let ext = extend_from_ball(&g, 3, &trace_on(&c, &ball(&g, 3)), 2.0).unwrap();
    assert!(max_abs_diff(&ext, &c) <= 1e-12);
}

#[test]
fn extension_matches_multiplicity_eigenvectors() {
    let g = hypercube(3).unwrap();
    let s = spectrum(&g).unwrap();
    let mut r = rng(11);
    for _ in 0..10 {
        let c = random_function(&mut r, 3);
        let phi: Vec<f64> = (0..g.len())
            .map(|v| (0..3).map(|i| c[i] * s.eigenbasis[1 + i][v]).sum())
            .collect();
        for x0 in 0..g.len() {
            let ext = extend_from_ball(&g, x0, &trace_on(&phi, &ball(&g, x0)), 2.0).unwrap();
            let p = s.project_onto_eigenspace(&ext, 2.0, 1e-6);
            assert!(max_abs_diff(&p, &phi) <= 1e-8);
            assert!(max_abs_diff(&ext, &phi) <= 1e-8);
        }
    }
}

#[test]
fn extension_uniqueness_on_sharp_fixtures() {
    for (name, g) in corpus() {
        let k = min_k(&g);
        if k <= 0.0 {
            continue;
        }
        let s = spectrum(&g).unwrap();
        let idx: Vec<usize> = (0..s.len())
            .filter(|&i| (s.eigenvalues[i] - k).abs() <= 1e-6)
            .collect();
        if idx.is_empty() {
            continue;
        }
        for x0 in 0..g.len() {
            let b = ball(&g, x0);
            let restricted =
                DMatrix::from_fn(b.len(), idx.len(), |r, c| s.eigenbasis[idx[c]][b[r]]);
            let sv = restricted.singular_values();
            let smallest = sv.iter().copied().fold(f64::INFINITY, f64::min);
            assert!(
                smallest > 1e-6,
                "{name} at {}: an eigenfunction vanishes on the ball",
                g.id(x0)
            );
            let phi = &s.eigenbasis[idx[0]];
            let ext = extend_from_ball(&g, x0, &trace_on(phi, &b), k).unwrap();
            assert!(max_abs_diff(&ext, phi) <= 1e-8, "{name} at {}", g.id(x0));
        }
    }
}

#[test]
fn one_ball_surjectivity_on_cubes() {
    let mut r = rng(12);
    for d in 3..=5 {
        let g = hypercube(d).unwrap();
        for _ in 0..20 {
            let x0 = r.gen_range(0..g.len());
            let b = ball(&g, x0);
            let mut values: BTreeMap<Vertex, f64> = b[1..]
                .iter()
                .map(|&y| (y, r.gen_range(-1.0..1.0)))
                .collect();
            let sum: f64 = values.values().sum();
            values.insert(x0, sum / (d as f64 - 2.0));
            let ext = extend_from_ball(&g, x0, &values, 2.0).unwrap();
            let lap = becurv::operators::laplacian(&g, &ext).unwrap();
            let res = lap
                .iter()
                .zip(&ext)
                .map(|(l, f)| (l + 2.0 * f).abs())
                .fold(0.0, f64::max);
            assert!(res <= 1e-9, "H_{d}: residual {res}");
        }
    }
}

#[test]
fn extension_rejects_bad_input() {
    let g = hypercube(3).unwrap();
    let psi = vec![0.0; 8];
    let values = trace_on(&psi, &ball(&g, 0));
    assert_eq!(
        extend_from_ball(&g, 0, &values, 0.0),
        Err(Error::NonPositiveK(0.0))
    );
    let mut partial = values.clone();
    partial.remove(&1);
    assert!(matches!(
        extend_from_ball(&g, 0, &partial, 2.0),
        Err(Error::MalformedInput(_))
    ));
    let mut bumped = values;
    bumped.insert(1, 1.0);
    let ext = extend_from_ball(&g, 0, &bumped, 2.0).unwrap();
    let lap = becurv::operators::laplacian(&g, &ext).unwrap();
    assert!(lap
        .iter()
        .zip(&ext)
        .all(|(l, f)| (l + 2.0 * (f - 0.5)).abs() <= 1e-12));

    let lh = becurv::fixtures::laborde_hebbare();
    let x = lh.vertex("x").unwrap();
    let mut bump = vec![0.0; lh.len()];
    bump[lh.vertex("y1").unwrap()] = 1.0;
    assert!(matches!(
        extend_from_ball(&lh, x, &trace_on(&bump, &ball(&lh, x)), 2.0),
        Err(Error::InconsistentExtension { .. } | Error::NotEigenTrace { .. })
    ));
}

#[test]
fn semigroup_examples() {
    let g = hypercube(3).unwrap();
    let f0 = distance_function(&g, 0);
    assert!(semigroup_sharpness_deviation(&g, &f0, 2.0, &[0.1, 0.5, 1.0]).unwrap() <= 1e-8);
    let mut ind = vec![0.0; g.len()];
    ind[0] = 1.0;
    // Independent evaluation with a dense matrix exponential gives 0.1439.
    let dev = semigroup_sharpness_deviation(&g, &ind, 2.0, &[0.1]).unwrap();
    assert!((dev - 0.1439).abs() <= 1e-3, "{dev}");
    assert_eq!(
        semigroup_sharpness_deviation(&g, &ind, 2.0, &[0.0]).unwrap(),
        0.0
    );
    assert_eq!(
        semigroup_sharpness_deviation(&g, &ind, 2.0, &[]).unwrap(),
        0.0
    );
    assert_eq!(
        semigroup_sharpness_deviation(&g, &ind, 2.0, &[-0.5]),
        Err(Error::NegativeTime(-0.5))
    );
}

#[test]
fn radial_function_on_negative_example_is_sharp() {
    // Regression values from an independent dense evaluation: the example is
    // weakly spherically symmetric around x0 with the cube's projection.
    let g = becurv::fixtures::hss_negative_curvature();
    let x0 = g.vertex("x0").unwrap();
    let f0 = distance_function(&g, x0);
    assert!(semigroup_sharpness_deviation(&g, &f0, 2.0, &[0.1, 0.5, 1.0]).unwrap() <= 1e-8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_graph_spectra(seed in any::<u64>(), n in 2usize..12, extra in 0usize..15) {
        let g = random_connected(&mut rng(seed), n, extra);
        check_spectral_invariants("random", &g);
    }
}
