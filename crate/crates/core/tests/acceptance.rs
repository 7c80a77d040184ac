//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use becurv::curvature::{
    curvature_all, curvature_infty, min_curvature, one_sphere_laplacian, satisfies_cd,
};
use becurv::fixtures::{
    binomial, cube_times_diagonal_square, diagonal_square, hss_negative_curvature, hypercube,
    laborde_hebbare, ncp2_counterexample, ou_chain,
};
use becurv::operators::{gamma2, gamma_sq};
use becurv::recognizer::{
    ball_recognize, is_hypercube, powerset_lemma_oracle, recognize, FailureReason,
};
use becurv::rigidity::{
    check_hss, constant_edge_degree, diameter_sharpness, eigenvalue_sharpness, main_theorem_harness,
};
use becurv::spectral::{extend_from_ball, semigroup_sharpness_deviation, spectrum};
use becurv::symmetrize::{
    commutation_defect, is_weakly_spherically_symmetric, project, projection_curvature_check,
};
use becurv::{Vertex, WeightedGraph};
use common::{corpus, distance_function, max_abs_diff};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn min_k(g: &WeightedGraph) -> f64 {
    min_curvature(&curvature_all(g, f64::INFINITY).unwrap()).map_or(f64::INFINITY, |(_, k)| k)
}

fn c1_hypercube_curvature() -> Outcome {
    let mut worst: f64 = 0.0;
    for d in 2..=7 {
        let g = hypercube(d).map_err(|e| e.to_string())?;
        for c in curvature_all(&g, f64::INFINITY).map_err(|e| e.to_string())? {
            worst = worst.max((c.value - 2.0).abs());
            ensure((c.value - 2.0).abs() <= 1e-8, || {
                format!("H_{d} vertex {}: K = {}", g.id(c.vertex), c.value)
            })?;
        }
    }
    Ok(format!("max |K - 2| = {worst:.1e} over D = 2..7"))
}

fn c2_hypercube_spectrum() -> Outcome {
    for d in 1..=6usize {
        let g = hypercube(d).unwrap();
        let s = spectrum(&g).map_err(|e| e.to_string())?;
        let mut expected = Vec::new();
        for k in 0..=d {
            expected.extend(std::iter::repeat_n(2.0 * k as f64, binomial(d, k) as usize));
        }
        let err = max_abs_diff(&s.eigenvalues, &expected);
        ensure(err <= 1e-8, || format!("H_{d}: eigenvalue error {err:e}"))?;
        let trace: f64 = s.eigenvalues.iter().sum();
        let degrees: f64 = (0..g.len()).map(|x| g.vertex_degree(x).unwrap()).sum();
        ensure((trace - degrees).abs() <= 1e-8 * degrees, || {
            format!("H_{d}: trace {trace} vs degree sum {degrees}")
        })?;
        let l = s.lambda(g.max_combinatorial_degree()).unwrap();
        ensure((l - 2.0).abs() <= 1e-8, || {
            format!("H_{d}: lambda_deg_max = {l}")
        })?;
    }
    Ok("spectra {2k x C(D,k)} for D = 1..6, trace identity, lambda_D = 2".into())
}

fn c3_diameter_sharpness() -> Outcome {
    for d in 1..=7usize {
        let g = hypercube(d).unwrap();
        let k = min_k(&g);
        let diam = g.diameter().unwrap();
        let bound = 2.0 * g.max_vertex_degree() / k;
        ensure(diam == d && (bound - d as f64).abs() < 1e-8, || {
            format!("H_{d}: diam {diam}, 2 Deg_max / K = {bound}")
        })?;
        ensure(diameter_sharpness(&g, k).unwrap(), || {
            format!("H_{d}: not sharp")
        })?;
    }
    Ok("diam(H_D) = D = 2 Deg_max / K for D = 1..7".into())
}

fn c4_hss_volumes() -> Outcome {
    for d in 1..=6usize {
        let g = hypercube(d).unwrap();
        let expected: Vec<f64> = (0..=d).map(|k| binomial(d, k)).collect();
        for x0 in 0..g.len() {
            let r = check_hss(&g, d as f64, 1.0, x0).unwrap();
            ensure(r.holds, || format!("H_{d} root {}: {r:?}", g.id(x0)))?;
            ensure(r.volumes == expected && r.volumes_ok == Some(true), || {
                format!("H_{d} root {}: volumes {:?}", g.id(x0), r.volumes)
            })?;
        }
    }
    Ok("HSS(D,1,x0) at every root of H_1..H_6, volumes C(D,n)".into())
}

fn c5_ou_chain() -> Outcome {
    let h1 = ou_chain(1).unwrap();
    ensure(h1 == hypercube(1).unwrap(), || {
        "ou_chain(1) differs from H_1".into()
    })?;
    for d in 2..=5usize {
        let g = ou_chain(d).unwrap();
        let k = min_k(&g);
        ensure(k >= 2.0 - 1e-8, || format!("(H_{d})_P: min K = {k}"))?;
        ensure(g.diameter().unwrap() == d, || {
            format!("(H_{d})_P: diameter")
        })?;
        let root = g.vertex("0").unwrap();
        ensure(check_hss(&g, d as f64, 1.0, root).unwrap().holds, || {
            format!("(H_{d})_P: HSS({d},1,0) fails")
        })?;
        ensure(constant_edge_degree(&g).unwrap().is_none(), || {
            format!("(H_{d})_P: constant edge degree")
        })?;
        ensure(is_hypercube(&g).unwrap().is_none(), || {
            format!("(H_{d})_P: recognizer accepts")
        })?;
    }
    Ok("D = 2..5 pass; D = 1 is H_1 itself, so it is recognized as a cube".into())
}

fn c6_negative_hss() -> Outcome {
    let g = hss_negative_curvature();
    let x0 = g.vertex("x0").unwrap();
    let r = check_hss(&g, 4.0, 1.0, x0).unwrap();
    ensure(r.holds, || format!("HSS(4,1,x0) fails: {r:?}"))?;
    let k = curvature_infty(&g, x0).unwrap().value;
    ensure(k < 0.0, || format!("K(x0) = {k}"))?;
    Ok(format!("HSS(4,1,x0) holds, K(x0) = {k:.10}"))
}

fn c7_ncp2() -> Outcome {
    let g = ncp2_counterexample();
    let x = g.vertex("x").unwrap();
    let osl = one_sphere_laplacian(&g, x).unwrap();
    let r = osl.vertices.len();
    for i in 0..r {
        for j in 0..r {
            if i != j {
                let w = osl.weights[(i, j)];
                ensure((w - 0.5).abs() <= 1e-12, || format!("w''[{i},{j}] = {w}"))?;
            }
        }
    }
    ensure((osl.lambda1 - 2.0).abs() <= 1e-9, || {
        format!("lambda1 = {}", osl.lambda1)
    })?;
    let k = curvature_infty(&g, x).unwrap().value;
    ensure(k >= 2.0 - 1e-7, || format!("K(x) = {k}"))?;
    Ok(format!(
        "w'' = 1/2, lambda1 = {:.12}, K(x) = {k:.10}",
        osl.lambda1
    ))
}

fn c8_laborde_hebbare() -> Outcome {
    let g = laborde_hebbare();
    ensure(g.is_bipartite(), || "not bipartite".into())?;
    ensure(g.regular_degree() == Some(4), || "not 4-regular".into())?;
    for x in 0..g.len() {
        ensure(ball_recognize(&g, x, 2).unwrap().is_ok(), || {
            format!("two-ball recognition fails at {}", g.id(x))
        })?;
        let failure = recognize(&g, x)
            .unwrap()
            .err()
            .ok_or("recognized as cube")?;
        ensure(
            failure.shell == 3
                && failure.reason
                    == FailureReason::SphereSizeMismatch {
                        shell: 3,
                        got: 3,
                        expected: 4,
                    },
            || format!("root {}: {failure:?}", g.id(x)),
        )?;
    }
    Ok("every root: B_2 certified, full recognition fails at shell 3 (3 vs 4)".into())
}

fn c9_semigroup() -> Outcome {
    let mut worst_sg: f64 = 0.0;
    let mut worst_g2: f64 = 0.0;
    for d in 1..=5usize {
        let g = hypercube(d).unwrap();
        for x0 in [0, g.len() - 1] {
            let f0 = distance_function(&g, x0);
            let dev = semigroup_sharpness_deviation(&g, &f0, 2.0, &[0.1, 0.5, 1.0]).unwrap();
            worst_sg = worst_sg.max(dev);
            ensure(dev <= 1e-8, || {
                format!("H_{d}: semigroup deviation {dev:e}")
            })?;
            let g2 = gamma2(&g, &f0).unwrap();
            let g1 = gamma_sq(&g, &f0).unwrap();
            let dev = g2
                .iter()
                .zip(&g1)
                .map(|(a, b)| (a - 2.0 * b).abs())
                .fold(0.0, f64::max);
            worst_g2 = worst_g2.max(dev);
            ensure(dev <= 1e-10, || format!("H_{d}: gamma2 deviation {dev:e}"))?;
        }
    }
    Ok(format!("semigroup {worst_sg:.1e}, gamma2 {worst_g2:.1e}"))
}

fn c10_extension() -> Outcome {
    let g = hypercube(4).unwrap();
    let s = spectrum(&g).unwrap();
    let x0: Vertex = 0;
    let ball: Vec<Vertex> = std::iter::once(x0)
        .chain(g.neighbors(x0).iter().map(|&(y, _)| y))
        .collect();
    let mut rng = common::rng(10);
    let mut targets: Vec<Vec<f64>> = (1..=4).map(|i| s.eigenbasis[i].clone()).collect();
    let coeffs = common::random_function(&mut rng, 4);
    targets.push(
        (0..g.len())
            .map(|v| (0..4).map(|i| coeffs[i] * s.eigenbasis[i + 1][v]).sum())
            .collect(),
    );
    let mut worst: f64 = 0.0;
    for phi in &targets {
        let values: BTreeMap<Vertex, f64> = ball.iter().map(|&v| (v, phi[v])).collect();
        let ext = extend_from_ball(&g, x0, &values, 2.0).map_err(|e| e.to_string())?;
        let proj_ext = s.project_onto_eigenspace(&ext, 2.0, 1e-6);
        let proj_phi = s.project_onto_eigenspace(phi, 2.0, 1e-6);
        let err = max_abs_diff(&proj_ext, &proj_phi).max(max_abs_diff(&ext, &proj_ext));
        worst = worst.max(err);
        ensure(err <= 1e-8, || format!("extension error {err:e}"))?;
    }
    Ok(format!("5 eigenvectors reproduced, max error {worst:.1e}"))
}

fn c11_separation() -> Outcome {
    let g = diagonal_square();
    let s = spectrum(&g).unwrap();
    let l1 = s.lambda(1).unwrap();
    let l3 = s.lambda(3).unwrap();
    ensure((l1 - 2.0).abs() <= 1e-8, || format!("lambda1 = {l1}"))?;
    ensure((l3 - 4.0).abs() <= 1e-8, || format!("lambda3 = {l3}"))?;
    ensure(satisfies_cd(&g, 2.0, f64::INFINITY).unwrap().holds, || {
        "CD(2,inf) fails".into()
    })?;
    ensure(!eigenvalue_sharpness(&g, 2.0).unwrap(), || {
        "eigenvalue sharpness holds".into()
    })?;
    let p = cube_times_diagonal_square();
    let l1p = spectrum(&p).unwrap().lambda(1).unwrap();
    ensure((l1p - 2.0).abs() <= 1e-8, || {
        format!("product lambda1 = {l1p}")
    })?;
    let report = main_theorem_harness(&p).unwrap();
    ensure(!report.char2_eigen.holds, || "product satisfies (2)".into())?;
    ensure(satisfies_cd(&p, 2.0, f64::INFINITY).unwrap().holds, || {
        "product CD(2,inf) fails".into()
    })?;
    Ok(format!(
        "lambda1 = 2, lambda3 = {l3:.10}; product fails (2)"
    ))
}

fn c12_powerset() -> Outcome {
    let mut families = 0usize;
    let mut violations = 0usize;
    for d in 2..=6usize {
        for k in 1..d {
            let subsets: Vec<u64> = (0u64..1 << d)
                .filter(|a| a.count_ones() as usize == k)
                .collect();
            for_each_combination(subsets.len(), k + 1, &mut |idx| {
                let family: Vec<u64> = idx.iter().map(|&i| subsets[i]).collect();
                let (faces, bound, union) = powerset_lemma_oracle(d, k, &family).unwrap();
                families += 1;
                if faces < bound || (faces == bound && union != k + 1) {
                    violations += 1;
                }
            });
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok(format!("{families} families, 0 violations"))
}

fn for_each_combination(n: usize, r: usize, f: &mut impl FnMut(&[usize])) {
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        f(&idx);
        let mut i = r;
        while i > 0 && idx[i - 1] == n - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn c13_main_theorem() -> Outcome {
    let mut cubes = 0;
    for (name, g) in corpus() {
        let r = main_theorem_harness(&g).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.agree, || format!("{name}: verdicts {:?}", r.verdicts()))?;
        let cube =
            is_hypercube(&g).unwrap().is_some() && constant_edge_degree(&g).unwrap().is_some();
        ensure(r.verdicts() == [cube; 5], || {
            format!("{name}: verdicts {:?}, expected all {cube}", r.verdicts())
        })?;
        cubes += cube as usize;
    }
    Ok(format!("{} members agree ({cubes} cubes)", corpus().len()))
}

fn c14_multiplicity() -> Outcome {
    let mut checked = 0;
    for (name, g) in corpus() {
        let k = min_k(&g);
        if !(k > 0.0) {
            continue;
        }
        let s = spectrum(&g).unwrap();
        let mult = s.multiplicity(k, 1e-6);
        if mult == 0 {
            continue;
        }
        checked += 1;
        let min_deg = g.min_combinatorial_degree();
        ensure(mult <= min_deg, || {
            format!("{name}: multiplicity {mult} of K = {k} exceeds min deg {min_deg}")
        })?;
    }
    Ok(format!("{checked} members with K an eigenvalue"))
}

fn c15_symmetrization() -> Outcome {
    let mut pairs = 0;
    for (name, g) in corpus() {
        for x0 in 0..g.len() {
            if !is_weakly_spherically_symmetric(&g, x0).unwrap().symmetric {
                continue;
            }
            pairs += 1;
            let defect = commutation_defect(&g, x0).unwrap();
            ensure(defect <= 1e-10, || {
                format!("{name} at {}: defect {defect:e}", g.id(x0))
            })?;
            let c = projection_curvature_check(&g, x0, f64::INFINITY).unwrap();
            ensure(c.projected_min >= c.source_min - 1e-7, || {
                format!("{name} at {}: {c:?}", g.id(x0))
            })?;
        }
    }
    for d in 1..=8 {
        let h = hypercube(d).unwrap();
        ensure(project(&h, 0).unwrap() == ou_chain(d).unwrap(), || {
            format!("project(H_{d}) differs from the chain")
        })?;
    }
    Ok(format!(
        "{pairs} symmetric (graph, root) pairs; project(H_D) = chain for D <= 8"
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 15] = [
        ("hypercube curvature", c1_hypercube_curvature),
        ("hypercube spectrum", c2_hypercube_spectrum),
        ("diameter sharpness", c3_diameter_sharpness),
        ("HSS and shell volumes", c4_hss_volumes),
        ("OU chain", c5_ou_chain),
        ("negative-curvature HSS example", c6_negative_hss),
        ("NCP2 fixture", c7_ncp2),
        ("Laborde-Hebbare", c8_laborde_hebbare),
        ("semigroup rigidity", c9_semigroup),
        ("eigenfunction extension", c10_extension),
        ("diagonal-square separation", c11_separation),
        ("power-set lemma", c12_powerset),
        ("five-way agreement", c13_main_theorem),
        ("multiplicity bound", c14_multiplicity),
        ("symmetrization", c15_symmetrization),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
