//! Weak spherical symmetry and the projection onto a weighted path.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curvature::{curvature_all, min_curvature};
use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};
use crate::operators::{check_domain, laplacian};

/// Seed of the random level functions in [`commutation_defect`].
pub const COMMUTATION_SEED: u64 = 0x5eed_0f1e_7e15;
pub const COMMUTATION_SAMPLES: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Quantity {
    #[serde(rename = "m")]
    Measure,
    #[serde(rename = "d-")]
    Backward,
    #[serde(rename = "d+")]
    Forward,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryViolation {
    pub shell: usize,
    pub quantity: Quantity,
    pub vertices: (String, String),
    pub values: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub root: String,
    pub symmetric: bool,
    pub first_violation: Option<SymmetryViolation>,
}

/// Checks that `m`, `d₋` and `d₊` are constant on every sphere around `x0`.
pub fn is_weakly_spherically_symmetric(g: &WeightedGraph, x0: Vertex) -> Result<SymmetryReport> {
    let shells = g.connected_shells(x0)?;
    for (k, sphere) in shells.spheres.iter().enumerate() {
        let Some((&first, rest)) = sphere.split_first() else {
            continue;
        };
        let profile = |v: Vertex| -> Result<[(Quantity, f64); 3]> {
            Ok([
                (Quantity::Measure, g.measure(v)),
                (Quantity::Backward, shells.backward_degree(g, v)?),
                (Quantity::Forward, shells.forward_degree(g, v)?),
            ])
        };
        let reference = profile(first)?;
        for &v in rest {
            for ((q, a), (_, b)) in reference.iter().zip(profile(v)?) {
                if (a - b).abs() > 1e-10 * a.abs().max(b.abs()).max(1.0) {
                    return Ok(SymmetryReport {
                        root: g.id(x0).to_owned(),
                        symmetric: false,
                        first_violation: Some(SymmetryViolation {
                            shell: k,
                            quantity: *q,
                            vertices: (g.id(first).to_owned(), g.id(v).to_owned()),
                            values: (*a, b),
                        }),
                    });
                }
            }
        }
    }
    Ok(SymmetryReport {
        root: g.id(x0).to_owned(),
        symmetric: true,
        first_violation: None,
    })
}

/// `G_P^{x0}`: vertices `"0"..="ecc"`, `m(i) = m(S_i)`,
/// `w(i, i+1) = w(S_i, S_{i+1})`.
pub fn project(g: &WeightedGraph, x0: Vertex) -> Result<WeightedGraph> {
    let shells = g.connected_shells(x0)?;
    let ecc = shells.eccentricity;
    let dist = |v: Vertex| shells.dist[v].unwrap_or_default();
    let vertices: Vec<(String, f64)> = shells
        .spheres
        .iter()
        .enumerate()
        .map(|(k, s)| (k.to_string(), s.iter().map(|&v| g.measure(v)).sum()))
        .collect();
    let mut between = vec![0.0; ecc];
    for (u, v, w) in g.edges() {
        let (du, dv) = (dist(u), dist(v));
        if du != dv {
            between[du.min(dv)] += w;
        }
    }
    let edges = between
        .iter()
        .enumerate()
        .map(|(k, &w)| (k.to_string(), (k + 1).to_string(), w))
        .collect();
    WeightedGraph::new(vertices, edges)
}

/// Vertex of the projection standing for sphere `k`.
pub fn level_vertex(projection: &WeightedGraph, k: usize) -> Result<Vertex> {
    projection.vertex(&k.to_string())
}

/// `(P g)(x) = g(d(x, x0))`, with `levels[k]` the value on sphere `k`.
pub fn lift(g: &WeightedGraph, x0: Vertex, levels: &[f64]) -> Result<Vec<f64>> {
    let shells = g.connected_shells(x0)?;
    if levels.len() != shells.eccentricity + 1 {
        return Err(Error::DomainMismatch {
            expected: shells.eccentricity + 1,
            got: levels.len(),
        });
    }
    Ok(shells
        .dist
        .iter()
        .map(|d| levels[d.unwrap_or_default()])
        .collect())
}

/// Reorders a function on the projection (vertex order) into level order.
fn to_levels(projection: &WeightedGraph, f: &[f64]) -> Result<Vec<f64>> {
    check_domain(projection, f)?;
    (0..projection.len())
        .map(|k| Ok(f[level_vertex(projection, k)?]))
        .collect()
}

fn from_levels(projection: &WeightedGraph, levels: &[f64]) -> Result<Vec<f64>> {
    let mut f = vec![0.0; projection.len()];
    for (k, &v) in levels.iter().enumerate() {
        f[level_vertex(projection, k)?] = v;
    }
    Ok(f)
}

fn require_symmetric(g: &WeightedGraph, x0: Vertex) -> Result<()> {
    if is_weakly_spherically_symmetric(g, x0)?.symmetric {
        Ok(())
    } else {
        Err(Error::NotSymmetric(g.id(x0).to_owned()))
    }
}

/// `max |lift(Δ_P h) − Δ lift(h)|` over [`COMMUTATION_SAMPLES`] random
/// level functions drawn from a fixed seed.
pub fn commutation_defect(g: &WeightedGraph, x0: Vertex) -> Result<f64> {
    require_symmetric(g, x0)?;
    let projection = project(g, x0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(COMMUTATION_SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..COMMUTATION_SAMPLES {
        let levels: Vec<f64> = (0..projection.len())
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect();
        let lap_p = to_levels(
            &projection,
            &laplacian(&projection, &from_levels(&projection, &levels)?)?,
        )?;
        let lhs = lift(g, x0, &lap_p)?;
        let rhs = laplacian(g, &lift(g, x0, &levels)?)?;
        for (a, b) in lhs.iter().zip(&rhs) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProjectionCurvature {
    pub source_min: f64,
    pub projected_min: f64,
}

/// Minimal `K_n` of `G` and of `G_P^{x0}`.
pub fn projection_curvature_check(
    g: &WeightedGraph,
    x0: Vertex,
    n: f64,
) -> Result<ProjectionCurvature> {
    require_symmetric(g, x0)?;
    let projection = project(g, x0)?;
    let min_of = |h: &WeightedGraph| -> Result<f64> {
        Ok(min_curvature(&curvature_all(h, n)?).map_or(f64::INFINITY, |(_, k)| k))
    };
    Ok(ProjectionCurvature {
        source_min: min_of(g)?,
        projected_min: min_of(&projection)?,
    })
}
