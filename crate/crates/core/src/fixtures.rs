//! Generators for the named example graphs.
//!
//! Hand-drawn fixtures use shell-style vertex identifiers (`x`, `y1`,
//! `z3`, ...). Hypercube vertices are subsets of `[D]` written
//! as `D`-digit binary strings, most significant element first, so the
//! string order agrees with the numeric order of the bitmask.

use crate::error::{Error, Result};
use crate::graph::{cartesian_product, WeightedGraph};

pub const MAX_HYPERCUBE_DIM: usize = 14;

/// Identifier of the subset `mask` of `[dim]` in [`hypercube`].
pub fn subset_id(mask: u64, dim: usize) -> String {
    format!("{mask:0dim$b}")
}

/// `H_D`: subsets of `[D]`, adjacent when the symmetric difference has one element.
pub fn hypercube(dim: usize) -> Result<WeightedGraph> {
    if !(1..=MAX_HYPERCUBE_DIM).contains(&dim) {
        return Err(Error::DimensionOutOfRange(dim));
    }
    let n = 1u64 << dim;
    let vertices = (0..n).map(|a| (subset_id(a, dim), 1.0)).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for i in 0..dim {
            let b = a ^ (1 << i);
            if a < b {
                edges.push((subset_id(a, dim), subset_id(b, dim), 1.0));
            }
        }
    }
    WeightedGraph::new(vertices, edges)
}

/// Binomial coefficient as a float, exact for the sizes used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k)
        .fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
        .round()
}

/// The weighted path `0..=D` obtained by collapsing the spheres of `H_D`:
/// `m(k) = C(D, k)`, `w(k, k+1) = C(D, k) (D - k)`.
pub fn ou_chain(dim: usize) -> Result<WeightedGraph> {
    if dim == 0 || dim > 62 {
        return Err(Error::DimensionOutOfRange(dim));
    }
    let vertices = (0..=dim)
        .map(|k| (k.to_string(), binomial(dim, k)))
        .collect();
    let edges = (0..dim)
        .map(|k| {
            (
                k.to_string(),
                (k + 1).to_string(),
                binomial(dim, k) * (dim - k) as f64,
            )
        })
        .collect();
    WeightedGraph::new(vertices, edges)
}

fn unweighted(vertices: &[&str], edges: &[(&str, &str)]) -> WeightedGraph {
    let vs: Vec<(&str, f64)> = vertices.iter().map(|&v| (v, 1.0)).collect();
    let es: Vec<(&str, &str, f64)> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
    WeightedGraph::from_lists(&vs, &es).expect("fixture edge list is valid")
}

/// The 14-vertex bipartite 4-regular graph whose two-balls all look like
/// those of `H_4` but which is not a hypercube.
pub fn laborde_hebbare() -> WeightedGraph {
    let vertices = [
        "x", "y1", "y2", "y3", "y4", "z1", "z2", "z3", "z4", "z5", "z6", "w1", "w2", "w3",
    ];
    let edges = [
        ("x", "y1"),
        ("x", "y2"),
        ("x", "y3"),
        ("x", "y4"),
        ("y1", "z1"),
        ("y1", "z2"),
        ("y1", "z4"),
        ("y2", "z1"),
        ("y2", "z3"),
        ("y2", "z5"),
        ("y3", "z2"),
        ("y3", "z3"),
        ("y3", "z6"),
        ("y4", "z4"),
        ("y4", "z5"),
        ("y4", "z6"),
        ("z1", "w1"),
        ("z1", "w2"),
        ("z2", "w1"),
        ("z2", "w3"),
        ("z3", "w2"),
        ("z3", "w3"),
        ("z4", "w2"),
        ("z4", "w3"),
        ("z5", "w1"),
        ("z5", "w3"),
        ("z6", "w1"),
        ("z6", "w2"),
    ];
    unweighted(&vertices, &edges)
}

/// A 16-vertex graph with hypercube shell structure around `x0` whose
/// punctured two-ball at `x0` is disconnected, so the curvature at `x0` is
/// negative.
pub fn hss_negative_curvature() -> WeightedGraph {
    let vertices = [
        "x0", "y1", "y2", "y3", "y4", "z1", "z2", "z3", "z4", "z5", "z6", "v1", "v2", "v3", "v4",
        "w0",
    ];
    let mut edges = Vec::new();
    for y in ["y1", "y2", "y3", "y4"] {
        edges.push(("x0", y));
    }
    for z in ["z1", "z2", "z3"] {
        for other in ["y1", "y2", "v1", "v2"] {
            edges.push((z, other));
        }
    }
    for z in ["z4", "z5", "z6"] {
        for other in ["y3", "y4", "v3", "v4"] {
            edges.push((z, other));
        }
    }
    for v in ["v1", "v2", "v3", "v4"] {
        edges.push(("w0", v));
    }
    unweighted(&vertices, &edges)
}

/// Eleven vertices around `x`: two two-sphere vertices see all of
/// `y1..y4`, four see a single one. `x` has `CD(2, inf)` but two
/// neighbors share two common two-sphere vertices.
pub fn ncp2_counterexample() -> WeightedGraph {
    let vertices = [
        "x", "y1", "y2", "y3", "y4", "z1", "z2", "z3", "z4", "z5", "z6",
    ];
    let mut edges = Vec::new();
    for y in ["y1", "y2", "y3", "y4"] {
        edges.push(("x", y));
        edges.push(("z3", y));
        edges.push(("z4", y));
    }
    edges.extend([("z1", "y1"), ("z2", "y2"), ("z5", "y3"), ("z6", "y4")]);
    unweighted(&vertices, &edges)
}

/// `K_4` minus the edge `a-c`; the diagonal is `b-d`.
pub fn diagonal_square() -> WeightedGraph {
    unweighted(
        &["a", "b", "c", "d"],
        &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("b", "d")],
    )
}

/// Multiplies every weight of an unweighted graph by `kappa0`, keeping unit
/// measures, so every edge degree equals `kappa0`.
pub fn scaled(g: &WeightedGraph, kappa0: f64) -> Result<WeightedGraph> {
    if !g.is_unweighted() {
        return Err(Error::NotUnweighted);
    }
    if !(kappa0.is_finite() && kappa0 > 0.0) {
        return Err(Error::NonPositiveScale(kappa0));
    }
    Ok(g.with_scaled_weights(kappa0))
}

/// `H_2 x diagonal_square`.
pub fn cube_times_diagonal_square() -> WeightedGraph {
    cartesian_product(&hypercube(2).expect("dimension 2"), &diagonal_square())
        .expect("both factors are unweighted")
}

/// Path on `n` vertices `p0 - p1 - ...`.
pub fn path(n: usize) -> WeightedGraph {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    WeightedGraph::new(
        names.iter().map(|s| (s.clone(), 1.0)).collect(),
        names
            .windows(2)
            .map(|p| (p[0].clone(), p[1].clone(), 1.0))
            .collect(),
    )
    .expect("path is valid")
}

/// Cycle on `n >= 3` vertices `c0 - c1 - ... - c0`.
pub fn cycle(n: usize) -> WeightedGraph {
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    WeightedGraph::new(
        names.iter().map(|s| (s.clone(), 1.0)).collect(),
        (0..n)
            .map(|i| (names[i].clone(), names[(i + 1) % n].clone(), 1.0))
            .collect(),
    )
    .expect("cycle is valid")
}

/// Where an expected fixture value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Provenance {
    /// Stated in the source material.
    Stated,
    /// Follows directly from the construction.
    Trivial,
    /// Computed by an independent route and frozen.
    Derived,
}

/// A structural property with a checkable expected value.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub enum Property {
    VertexCount(usize),
    EdgeCount(usize),
    RegularDegree(usize),
    Bipartite(bool),
    Diameter(usize),
    /// Sphere sizes around the named root.
    SphereSizes {
        root: String,
        sizes: Vec<usize>,
    },
    /// `m(S_k)` around the named root.
    SphereVolumes {
        root: String,
        volumes: Vec<f64>,
    },
    /// Sorted spectrum of `-Laplacian`, compared at `1e-8`.
    Spectrum(Vec<f64>),
    /// Minimum over vertices of the curvature `K_inf`, compared at `1e-8`.
    MinCurvature(f64),
    /// Sign of the curvature at a vertex.
    NegativeCurvatureAt(String),
    IsHypercube(bool),
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct Expectation {
    pub property: Property,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct FixtureCatalogEntry {
    pub name: String,
    pub params: Vec<(String, f64)>,
    pub expected: Vec<Expectation>,
}

impl FixtureCatalogEntry {
    pub fn build(&self) -> Result<WeightedGraph> {
        build_fixture(&self.name, &self.params)
    }
}

fn param(params: &[(String, f64)], key: &str) -> Option<f64> {
    params.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
}

fn dim_param(params: &[(String, f64)]) -> Result<usize> {
    let d = param(params, "dim").ok_or_else(|| Error::MalformedInput("missing dim".into()))?;
    if d < 0.0 || d.fract() != 0.0 {
        return Err(Error::MalformedInput(format!(
            "dim must be a nonnegative integer, got {d}"
        )));
    }
    Ok(d as usize)
}

/// Builds a fixture by its catalog name.
///
/// Names: `hypercube` (dim), `ou-chain` (dim), `scaled-hypercube` (dim,
/// kappa), `laborde-hebbare`, `hss-negative`, `ncp2`, `diagonal-square`,
/// `cube-times-diagonal-square`, `path` (n), `cycle` (n).
pub fn build_fixture(name: &str, params: &[(String, f64)]) -> Result<WeightedGraph> {
    match name {
        "hypercube" => hypercube(dim_param(params)?),
        "ou-chain" => ou_chain(dim_param(params)?),
        "scaled-hypercube" => {
            let kappa = param(params, "kappa")
                .ok_or_else(|| Error::MalformedInput("missing kappa".into()))?;
            scaled(&hypercube(dim_param(params)?)?, kappa)
        }
        "laborde-hebbare" => Ok(laborde_hebbare()),
        "hss-negative" => Ok(hss_negative_curvature()),
        "ncp2" => Ok(ncp2_counterexample()),
        "diagonal-square" => Ok(diagonal_square()),
        "cube-times-diagonal-square" => Ok(cube_times_diagonal_square()),
        "path" | "cycle" => {
            let n = param(params, "n").ok_or_else(|| Error::MalformedInput("missing n".into()))?;
            if n.fract() != 0.0 || n < if name == "cycle" { 3.0 } else { 1.0 } {
                return Err(Error::MalformedInput(format!("bad vertex count {n}")));
            }
            Ok(if name == "path" {
                path(n as usize)
            } else {
                cycle(n as usize)
            })
        }
        other => Err(Error::UnknownFixture(other.to_owned())),
    }
}

fn entry(
    name: &str,
    params: &[(&str, f64)],
    expected: Vec<(Property, Provenance)>,
) -> FixtureCatalogEntry {
    FixtureCatalogEntry {
        name: name.to_owned(),
        params: params.iter().map(|&(k, v)| (k.to_owned(), v)).collect(),
        expected: expected
            .into_iter()
            .map(|(property, provenance)| Expectation {
                property,
                provenance,
            })
            .collect(),
    }
}

/// The named fixtures with their documented expected properties.
///
/// `Derived` values were computed once by hand or by brute-force routes in
/// the test suite (degree counts, BFS layer counts, characteristic
/// polynomials) before being frozen here.
pub fn catalog() -> Vec<FixtureCatalogEntry> {
    use Property::*;
    use Provenance::*;
    let mut out = Vec::new();
    for dim in 1..=6usize {
        let sizes: Vec<usize> = (0..=dim).map(|k| binomial(dim, k) as usize).collect();
        let mut spectrum = Vec::new();
        for k in 0..=dim {
            spectrum.extend(std::iter::repeat_n(2.0 * k as f64, binomial(dim, k) as usize));
        }
        out.push(entry(
            "hypercube",
            &[("dim", dim as f64)],
            vec![
                (VertexCount(1 << dim), Trivial),
                (EdgeCount(dim << (dim - 1)), Trivial),
                (RegularDegree(dim), Trivial),
                (Bipartite(true), Trivial),
                (Diameter(dim), Trivial),
                (
                    SphereSizes {
                        root: subset_id(0, dim),
                        sizes,
                    },
                    Trivial,
                ),
                (Spectrum(spectrum), Derived),
                (MinCurvature(2.0), Stated),
                (IsHypercube(true), Trivial),
            ],
        ));
    }
    for dim in 1..=5usize {
        out.push(entry(
            "ou-chain",
            &[("dim", dim as f64)],
            vec![
                (VertexCount(dim + 1), Trivial),
                (Diameter(dim), Stated),
                (
                    SphereVolumes {
                        root: "0".into(),
                        volumes: (0..=dim).map(|k| binomial(dim, k)).collect(),
                    },
                    Stated,
                ),
                (MinCurvature(2.0), Stated),
                (IsHypercube(dim == 1), Derived),
            ],
        ));
    }
    out.push(entry(
        "laborde-hebbare",
        &[],
        vec![
            (VertexCount(14), Stated),
            (EdgeCount(28), Derived),
            (RegularDegree(4), Stated),
            (Bipartite(true), Stated),
            (Diameter(3), Derived),
            (
                SphereSizes {
                    root: "x".into(),
                    sizes: vec![1, 4, 6, 3],
                },
                Derived,
            ),
            (
                Spectrum(
                    [0.0]
                        .into_iter()
                        .chain([4.0 - 2f64.sqrt(); 6])
                        .chain([4.0 + 2f64.sqrt(); 6])
                        .chain([8.0])
                        .collect(),
                ),
                Derived,
            ),
            (MinCurvature(2.0), Derived),
            (IsHypercube(false), Derived),
        ],
    ));
    out.push(entry(
        "hss-negative",
        &[],
        vec![
            (VertexCount(16), Stated),
            (EdgeCount(32), Derived),
            (RegularDegree(4), Derived),
            (Bipartite(true), Derived),
            (Diameter(4), Derived),
            (
                SphereSizes {
                    root: "x0".into(),
                    sizes: vec![1, 4, 6, 4, 1],
                },
                Stated,
            ),
            (
                Spectrum(
                    [0.0, 4.0 - 12f64.sqrt(), 2.0]
                        .into_iter()
                        .chain([4.0; 10])
                        .chain([6.0, 4.0 + 12f64.sqrt(), 8.0])
                        .collect(),
                ),
                Derived,
            ),
            (NegativeCurvatureAt("x0".into()), Stated),
            (MinCurvature(-2.0), Derived),
            (IsHypercube(false), Derived),
        ],
    ));
    out.push(entry(
        "ncp2",
        &[],
        vec![
            (VertexCount(11), Stated),
            (EdgeCount(16), Derived),
            (Bipartite(true), Stated),
            (
                SphereSizes {
                    root: "x".into(),
                    sizes: vec![1, 4, 6],
                },
                Stated,
            ),
            (Diameter(4), Derived),
            (MinCurvature(-1.0), Derived),
        ],
    ));
    out.push(entry(
        "diagonal-square",
        &[],
        vec![
            (VertexCount(4), Trivial),
            (EdgeCount(5), Trivial),
            (Bipartite(false), Trivial),
            (Diameter(2), Derived),
            (Spectrum(vec![0.0, 2.0, 4.0, 4.0]), Derived),
            (MinCurvature(2.0), Stated),
            (IsHypercube(false), Trivial),
        ],
    ));
    for kappa in [0.5, 2.0] {
        for dim in 2..=4usize {
            out.push(entry(
                "scaled-hypercube",
                &[("dim", dim as f64), ("kappa", kappa)],
                vec![
                    (VertexCount(1 << dim), Trivial),
                    (Diameter(dim), Trivial),
                    (MinCurvature(2.0 * kappa), Stated),
                    (IsHypercube(true), Stated),
                ],
            ));
        }
    }
    out.push(entry(
        "cube-times-diagonal-square",
        &[],
        vec![
            (VertexCount(16), Trivial),
            (EdgeCount(4 * 4 + 4 * 5), Trivial),
            (Bipartite(false), Derived),
            (Diameter(4), Derived),
            (
                Spectrum(vec![
                    0.0, 2.0, 2.0, 2.0, 4.0, 4.0, 4.0, 4.0, 4.0, 6.0, 6.0, 6.0, 6.0, 6.0, 8.0, 8.0,
                ]),
                Derived,
            ),
            (MinCurvature(2.0), Derived),
            (IsHypercube(false), Trivial),
        ],
    ));
    out
}

/// Catalog file stem, e.g. `hypercube-dim4` or `scaled-hypercube-dim3-kappa0.5`.
pub fn catalog_file_stem(entry: &FixtureCatalogEntry) -> String {
    let mut stem = entry.name.clone();
    for (k, v) in &entry.params {
        stem.push_str(&format!("-{k}{v}"));
    }
    stem
}
