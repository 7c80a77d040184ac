//! Spectrum of `−Δ` with respect to the measure `m`, the heat semigroup,
//! and eigenfunction extension from a one-ball.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};
use crate::operators::{check_domain, gamma_sq, laplacian, laplacian_at};

/// Eigenvalues of `−Δ` in ascending order with an `m`-orthonormal eigenbasis.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    pub eigenbasis: Vec<Vec<f64>>,
    measure: Vec<f64>,
}

/// `⟨f, h⟩_m = Σ f h m`.
pub fn inner_m(m: &[f64], f: &[f64], h: &[f64]) -> f64 {
    f.iter().zip(h).zip(m).map(|((a, b), w)| a * b * w).sum()
}

/// Solves `L_w φ = λ M φ` through `M^{-1/2} L_w M^{-1/2}`.
pub fn spectrum(g: &WeightedGraph) -> Result<SpectralData> {
    g.require_connected()?;
    let n = g.len();
    let inv_sqrt: Vec<f64> = g.measures().iter().map(|m| 1.0 / m.sqrt()).collect();
    let mut a = DMatrix::zeros(n, n);
    for x in 0..n {
        a[(x, x)] = g.degree_unchecked(x);
        for &(y, w) in g.neighbors(x) {
            a[(x, y)] = -w * inv_sqrt[x] * inv_sqrt[y];
        }
    }
    let eig = SymmetricEigen::try_new(a, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::SolverFailure("symmetric eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenbasis: Vec<Vec<f64>> = order
        .iter()
        .map(|&i| {
            (0..n)
                .map(|x| eig.eigenvectors[(x, i)] * inv_sqrt[x])
                .collect()
        })
        .collect();
    let data = SpectralData {
        eigenvalues,
        eigenbasis,
        measure: g.measures().to_vec(),
    };
    let scale = data.max_eigenvalue().max(1.0);
    for (lambda, phi) in data.eigenvalues.iter().zip(&data.eigenbasis) {
        let lap = laplacian(g, phi)?;
        let residual = lap
            .iter()
            .zip(phi)
            .map(|(l, p)| (l + lambda * p).abs())
            .fold(0.0, f64::max);
        if residual > 1e-8 * scale {
            return Err(Error::SolverFailure(format!(
                "eigenpair residual {residual:e} for eigenvalue {lambda}"
            )));
        }
    }
    Ok(data)
}

impl SpectralData {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// `λ_k`, counting multiplicity from `λ_0 = 0`.
    pub fn lambda(&self, k: usize) -> Result<f64> {
        self.eigenvalues
            .get(k)
            .copied()
            .ok_or(Error::IndexOutOfRange {
                index: k,
                len: self.len(),
            })
    }

    /// Number of eigenvalues within `tol` of `value`.
    pub fn multiplicity(&self, value: f64, tol: f64) -> usize {
        self.eigenvalues
            .iter()
            .filter(|&&l| (l - value).abs() <= tol)
            .count()
    }

    /// Default clustering tolerance `1e-6 · max(1, λ_max)`.
    pub fn default_tolerance(&self) -> f64 {
        1e-6 * self.max_eigenvalue().max(1.0)
    }

    /// `⟨φ_i, φ_j⟩_m`.
    pub fn gram(&self, i: usize, j: usize) -> f64 {
        inner_m(&self.measure, &self.eigenbasis[i], &self.eigenbasis[j])
    }

    /// `m`-orthogonal projection of `f` onto the eigenspace of `value`.
    pub fn project_onto_eigenspace(&self, f: &[f64], value: f64, tol: f64) -> Vec<f64> {
        let mut out = vec![0.0; f.len()];
        for (l, phi) in self.eigenvalues.iter().zip(&self.eigenbasis) {
            if (l - value).abs() <= tol {
                let c = inner_m(&self.measure, f, phi);
                for (o, p) in out.iter_mut().zip(phi) {
                    *o += c * p;
                }
            }
        }
        out
    }

    /// `P_t f = Σ_i e^{−λ_i t} ⟨f, φ_i⟩_m φ_i`.
    pub fn heat(&self, f: &[f64], t: f64) -> Result<Vec<f64>> {
        if f.len() != self.measure.len() {
            return Err(Error::DomainMismatch {
                expected: self.measure.len(),
                got: f.len(),
            });
        }
        if t < 0.0 || t.is_nan() {
            return Err(Error::NegativeTime(t));
        }
        if t == 0.0 {
            return Ok(f.to_vec());
        }
        let mut out = vec![0.0; f.len()];
        for (l, phi) in self.eigenvalues.iter().zip(&self.eigenbasis) {
            let c = (-l * t).exp() * inner_m(&self.measure, f, phi);
            for (o, p) in out.iter_mut().zip(phi) {
                *o += c * p;
            }
        }
        Ok(out)
    }
}

/// `λ_k` of `−Δ`.
pub fn lambda_index(g: &WeightedGraph, k: usize) -> Result<f64> {
    spectrum(g)?.lambda(k)
}

/// Number of eigenvalues of `−Δ` within `tol` of `value`.
pub fn eigenvalue_multiplicity(g: &WeightedGraph, value: f64, tol: f64) -> Result<usize> {
    Ok(spectrum(g)?.multiplicity(value, tol))
}

/// Extends data on `B₁(x0)` shell by shell, setting for `z ∈ S_{k+1}`
///
/// ```text
/// f(z) = −f(x) + 2 · Σ_y f(y) w(x,y) w(y,z)/m(y)  /  Σ_y w(x,y) w(y,z)/m(y)
/// ```
///
/// for every `x ∈ S_{k−1}` at distance two from `z`; all such `x` must agree
/// within `1e-7 · max(1, max |ball value|)`. The result is then checked to
/// be `φ + C` with `−Δφ = Kφ`.
pub fn extend_from_ball(
    g: &WeightedGraph,
    x0: Vertex,
    values: &BTreeMap<Vertex, f64>,
    k: f64,
) -> Result<Vec<f64>> {
    if !(k > 0.0) {
        return Err(Error::NonPositiveK(k));
    }
    let shells = g.connected_shells(x0)?;
    let mut f = vec![0.0; g.len()];
    let mut ball_scale: f64 = 1.0;
    for &v in shells.spheres.iter().take(2).flatten() {
        let val = *values
            .get(&v)
            .ok_or_else(|| Error::MalformedInput(format!("no ball value for {:?}", g.id(v))))?;
        f[v] = val;
        ball_scale = ball_scale.max(val.abs());
    }
    let tol = 1e-7 * ball_scale;
    let dist = |v: Vertex| shells.dist[v].unwrap_or(usize::MAX);
    for d in 2..=shells.eccentricity {
        for &z in &shells.spheres[d] {
            let mut mids: BTreeMap<Vertex, Vec<(Vertex, f64)>> = BTreeMap::new();
            for &(y, wyz) in g.neighbors(z) {
                if dist(y) != d - 1 {
                    continue;
                }
                for &(x, wxy) in g.neighbors(y) {
                    if dist(x) == d - 2 {
                        mids.entry(x)
                            .or_default()
                            .push((y, wxy * wyz / g.measure(y)));
                    }
                }
            }
            let mut first: Option<(Vertex, f64)> = None;
            for (&x, terms) in &mids {
                let total: f64 = terms.iter().map(|&(_, c)| c).sum();
                let mean: f64 = terms.iter().map(|&(y, c)| c * f[y]).sum::<f64>() / total;
                let value = 2.0 * mean - f[x];
                match first {
                    None => first = Some((x, value)),
                    Some((x1, v1)) if (v1 - value).abs() > tol => {
                        return Err(Error::InconsistentExtension {
                            vertex: g.id(z).to_owned(),
                            via_first: g.id(x1).to_owned(),
                            via_second: g.id(x).to_owned(),
                            first: v1,
                            second: value,
                        });
                    }
                    Some(_) => {}
                }
            }
            let (_, value) = first.ok_or_else(|| Error::NoMidpointPath(g.id(z).to_owned()))?;
            f[z] = value;
        }
    }
    let c = f[x0] + laplacian_at(g, x0, |v| f[v]) / k;
    let f_scale = f.iter().fold(1.0f64, |a, v| a.max(v.abs()));
    let residual_tol = 1e-7 * f_scale * g.max_vertex_degree().max(k).max(1.0);
    for x in 0..g.len() {
        let residual = (laplacian_at(g, x, |v| f[v]) + k * (f[x] - c)).abs();
        if residual > residual_tol {
            return Err(Error::NotEigenTrace {
                vertex: g.id(x).to_owned(),
                residual,
            });
        }
    }
    Ok(f)
}

/// `max_{t, x} |Γ P_t f(x) − e^{−2Kt} P_t Γf(x)|`.
pub fn semigroup_sharpness_deviation(
    g: &WeightedGraph,
    f: &[f64],
    k: f64,
    times: &[f64],
) -> Result<f64> {
    check_domain(g, f)?;
    if let Some(&t) = times.iter().find(|t| !(**t >= 0.0)) {
        return Err(Error::NegativeTime(t));
    }
    if times.is_empty() {
        return Ok(0.0);
    }
    let spec = spectrum(g)?;
    deviation_with(&spec, g, f, k, times)
}

pub(crate) fn deviation_with(
    spec: &SpectralData,
    g: &WeightedGraph,
    f: &[f64],
    k: f64,
    times: &[f64],
) -> Result<f64> {
    let gamma_f = gamma_sq(g, f)?;
    let mut worst: f64 = 0.0;
    for &t in times {
        let lhs = gamma_sq(g, &spec.heat(f, t)?)?;
        let rhs = spec.heat(&gamma_f, t)?;
        let decay = (-2.0 * k * t).exp();
        for (a, b) in lhs.iter().zip(&rhs) {
            worst = worst.max((a - decay * b).abs());
        }
    }
    Ok(worst)
}
