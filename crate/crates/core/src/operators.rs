//! Laplacian, carré du champ `Γ` and iterated form `Γ₂`.
//!
//! Functions on a graph are slices indexed by [`Vertex`], one value per
//! vertex. Pointwise operators return a new vector of the same length.
//!
//! ```text
//! Δf(x)       = (1/m(x)) Σ_y w(x,y) (f(y) − f(x))
//! 2Γ(f,g)     = Δ(fg) − fΔg − gΔf
//! 2Γ₂(f,g)    = ΔΓ(f,g) − Γ(f,Δg) − Γ(g,Δf)
//! ```

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};
use crate::spectral::spectrum;

pub(crate) fn check_domain(g: &WeightedGraph, f: &[f64]) -> Result<()> {
    if f.len() == g.len() {
        Ok(())
    } else {
        Err(Error::DomainMismatch {
            expected: g.len(),
            got: f.len(),
        })
    }
}

pub(crate) fn laplacian_at(g: &WeightedGraph, x: Vertex, f: impl Fn(Vertex) -> f64) -> f64 {
    let fx = f(x);
    g.neighbors(x)
        .iter()
        .map(|&(y, w)| w * (f(y) - fx))
        .sum::<f64>()
        / g.measure(x)
}

pub(crate) fn gamma_at(
    g: &WeightedGraph,
    x: Vertex,
    f: impl Fn(Vertex) -> f64,
    h: impl Fn(Vertex) -> f64,
) -> f64 {
    let (fx, hx) = (f(x), h(x));
    g.neighbors(x)
        .iter()
        .map(|&(y, w)| w * (f(y) - fx) * (h(y) - hx))
        .sum::<f64>()
        / (2.0 * g.measure(x))
}

/// `Γ₂(f, h)(x)`, reading `f` and `h` only on `B₂(x)`.
pub(crate) fn gamma2_at(
    g: &WeightedGraph,
    x: Vertex,
    f: impl Fn(Vertex) -> f64 + Copy,
    h: impl Fn(Vertex) -> f64 + Copy,
) -> f64 {
    let gamma_fh = |v: Vertex| gamma_at(g, v, f, h);
    let lap_f = |v: Vertex| laplacian_at(g, v, f);
    let lap_h = |v: Vertex| laplacian_at(g, v, h);
    let delta_gamma = laplacian_at(g, x, gamma_fh);
    let mixed = gamma_at(g, x, f, lap_h) + gamma_at(g, x, h, lap_f);
    0.5 * (delta_gamma - mixed)
}

/// `Δf`.
pub fn laplacian(g: &WeightedGraph, f: &[f64]) -> Result<Vec<f64>> {
    check_domain(g, f)?;
    Ok((0..g.len()).map(|x| laplacian_at(g, x, |v| f[v])).collect())
}

/// `Γ(f, h)` in its explicit edge-sum form.
pub fn gamma(g: &WeightedGraph, f: &[f64], h: &[f64]) -> Result<Vec<f64>> {
    check_domain(g, f)?;
    check_domain(g, h)?;
    Ok((0..g.len())
        .map(|x| gamma_at(g, x, |v| f[v], |v| h[v]))
        .collect())
}

/// `Γ(f, h)` from its definition through Laplacians of products.
pub fn gamma_from_definition(g: &WeightedGraph, f: &[f64], h: &[f64]) -> Result<Vec<f64>> {
    check_domain(g, f)?;
    check_domain(g, h)?;
    let fh: Vec<f64> = f.iter().zip(h).map(|(a, b)| a * b).collect();
    let lap_fh = laplacian(g, &fh)?;
    let lap_f = laplacian(g, f)?;
    let lap_h = laplacian(g, h)?;
    Ok((0..g.len())
        .map(|x| 0.5 * (lap_fh[x] - f[x] * lap_h[x] - h[x] * lap_f[x]))
        .collect())
}

/// `Γ₂(f, h)`.
pub fn gamma2_bilinear(g: &WeightedGraph, f: &[f64], h: &[f64]) -> Result<Vec<f64>> {
    check_domain(g, f)?;
    check_domain(g, h)?;
    let gam = gamma(g, f, h)?;
    let lap_f = laplacian(g, f)?;
    let lap_h = laplacian(g, h)?;
    let lap_gam = laplacian(g, &gam)?;
    let g1 = gamma(g, f, &lap_h)?;
    let g2 = gamma(g, h, &lap_f)?;
    Ok((0..g.len())
        .map(|x| 0.5 * (lap_gam[x] - g1[x] - g2[x]))
        .collect())
}

/// `Γ₂f = Γ₂(f, f)`.
pub fn gamma2(g: &WeightedGraph, f: &[f64]) -> Result<Vec<f64>> {
    gamma2_bilinear(g, f, f)
}

/// `Γf = Γ(f, f)`.
pub fn gamma_sq(g: &WeightedGraph, f: &[f64]) -> Result<Vec<f64>> {
    gamma(g, f, f)
}

/// A symmetric quadratic form on functions supported near a vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalForm {
    pub center: Vertex,
    /// Center, then `S₁` sorted, then (for `Γ₂`) `S₂` sorted.
    pub support: Vec<Vertex>,
    pub matrix: DMatrix<f64>,
}

impl LocalForm {
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.support.iter().position(|&s| s == v)
    }

    /// Coordinates of a graph function on the support.
    pub fn restrict(&self, f: &[f64]) -> nalgebra::DVector<f64> {
        nalgebra::DVector::from_iterator(self.support.len(), self.support.iter().map(|&v| f[v]))
    }

    /// `f_xᵀ A f_x`.
    pub fn quadratic(&self, f: &[f64]) -> f64 {
        let v = self.restrict(f);
        v.dot(&(&self.matrix * &v))
    }

    pub fn bilinear(&self, f: &[f64], h: &[f64]) -> f64 {
        self.restrict(f).dot(&(&self.matrix * self.restrict(h)))
    }
}

/// Sorted one- and two-spheres around `x`.
pub(crate) fn local_spheres(g: &WeightedGraph, x: Vertex) -> (Vec<Vertex>, Vec<Vertex>) {
    let s1: Vec<Vertex> = g.neighbors(x).iter().map(|&(y, _)| y).collect();
    let mut s2: Vec<Vertex> = s1
        .iter()
        .flat_map(|&y| g.neighbors(y).iter().map(|&(z, _)| z))
        .filter(|&z| z != x && s1.binary_search(&z).is_err())
        .collect();
    s2.sort_unstable();
    s2.dedup();
    (s1, s2)
}

fn polarize(support: &[Vertex], entry: impl Fn(Vertex, Vertex) -> f64) -> DMatrix<f64> {
    let n = support.len();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = entry(support[i], support[j]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

fn indicator(a: Vertex) -> impl Fn(Vertex) -> f64 + Copy {
    move |v| if v == a { 1.0 } else { 0.0 }
}

/// `Γ(x)` on `B₁(x)`.
pub fn local_gamma_matrix(g: &WeightedGraph, x: Vertex) -> Result<LocalForm> {
    g.check_vertex(x)?;
    let (s1, _) = local_spheres(g, x);
    let support: Vec<Vertex> = std::iter::once(x).chain(s1).collect();
    let matrix = polarize(&support, |a, b| gamma_at(g, x, indicator(a), indicator(b)));
    Ok(LocalForm {
        center: x,
        support,
        matrix,
    })
}

/// `Γ₂(x)` on `B₂(x)`.
pub fn local_gamma2_matrix(g: &WeightedGraph, x: Vertex) -> Result<LocalForm> {
    g.check_vertex(x)?;
    let (s1, s2) = local_spheres(g, x);
    let support: Vec<Vertex> = std::iter::once(x).chain(s1).chain(s2).collect();
    let matrix = polarize(&support, |a, b| gamma2_at(g, x, indicator(a), indicator(b)));
    Ok(LocalForm {
        center: x,
        support,
        matrix,
    })
}

/// `P_t f = e^{tΔ} f` through the eigen-decomposition of `−Δ`.
pub fn heat_apply(g: &WeightedGraph, f: &[f64], t: f64) -> Result<Vec<f64>> {
    check_domain(g, f)?;
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime(t));
    }
    spectrum(g)?.heat(f, t)
}
