//! Sharpness predicates and the equivalence harnesses.
//!
//! `K` is always the minimal vertex curvature `min_x K_∞(x)`, the largest
//! constant for which `CD(K, ∞)` holds.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::curvature::{curvature_all, min_curvature, VertexCurvature};
use crate::error::{Error, Result};
use crate::fixtures::binomial;
use crate::graph::{Bipartition, Vertex, WeightedGraph};
use crate::operators::{gamma2, gamma_sq};
use crate::recognizer::is_hypercube;
use crate::spectral::{deviation_with, extend_from_ball, spectrum, SpectralData};

/// Comparison of spectral quantities.
pub const SPECTRAL_TOL: f64 = 1e-6;
/// Comparison of pointwise forms.
pub const POINTWISE_TOL: f64 = 1e-8;

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// An observed value that differs from the expected one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub vertices: Vec<String>,
    pub observed: f64,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HssReport {
    pub root: String,
    pub n: f64,
    pub w: f64,
    pub degree_ok: bool,
    pub degree_witness: Option<Witness>,
    pub bipartite_ok: bool,
    /// Odd cycle through the graph when not bipartite.
    pub bipartite_witness: Option<Vec<String>>,
    pub backward_ok: bool,
    pub backward_witness: Option<Witness>,
    /// `m(S_k(x0))`.
    pub volumes: Vec<f64>,
    /// `m(x0) C(N, k)`; absent when `N` is not a nonnegative integer.
    pub expected_volumes: Option<Vec<f64>>,
    pub volumes_ok: Option<bool>,
    pub note: Option<String>,
    pub holds: bool,
}

/// `HSS(N, W, x0)`: `Deg ≡ NW`, bipartite, `d₋(x) = W d(x, x0)`.
pub fn check_hss(g: &WeightedGraph, n: f64, w: f64, x0: Vertex) -> Result<HssReport> {
    let shells = g.connected_shells(x0)?;
    let target = n * w;
    let degree_witness = (0..g.len()).find_map(|x| {
        let deg = g.degree_unchecked(x);
        (!rel_close(deg, target, POINTWISE_TOL)).then(|| Witness {
            vertices: vec![g.id(x).to_owned()],
            observed: deg,
            expected: target,
        })
    });
    let bipartite_witness = match g.bipartition() {
        Bipartition::Bipartite { .. } => None,
        Bipartition::OddCycle { cycle } => {
            Some(cycle.iter().map(|&v| g.id(v).to_owned()).collect())
        }
    };
    let mut backward_witness = None;
    'outer: for sphere in &shells.spheres {
        for &z in sphere {
            let observed = shells.backward_degree(g, z)?;
            let expected = w * shells.dist[z].unwrap_or_default() as f64;
            if !rel_close(observed, expected, POINTWISE_TOL) {
                backward_witness = Some(Witness {
                    vertices: vec![g.id(z).to_owned()],
                    observed,
                    expected,
                });
                break 'outer;
            }
        }
    }
    let volumes: Vec<f64> = shells
        .spheres
        .iter()
        .map(|s| s.iter().map(|&v| g.measure(v)).sum())
        .collect();
    let integral = n >= 0.0 && (n - n.round()).abs() <= 1e-9;
    let (expected_volumes, volumes_ok, note) = if integral {
        let big_n = n.round() as usize;
        let expected: Vec<f64> = (0..volumes.len().max(big_n + 1))
            .map(|k| g.measure(x0) * binomial(big_n, k))
            .collect();
        let ok = expected.len() == volumes.len()
            && volumes
                .iter()
                .zip(&expected)
                .all(|(a, b)| rel_close(*a, *b, 1e-12));
        (Some(expected), Some(ok), None)
    } else {
        (
            None,
            None,
            Some(format!(
                "N = {n} is not a nonnegative integer; volume check skipped"
            )),
        )
    };
    let degree_ok = degree_witness.is_none();
    let bipartite_ok = bipartite_witness.is_none();
    let backward_ok = backward_witness.is_none();
    Ok(HssReport {
        root: g.id(x0).to_owned(),
        n,
        w,
        degree_ok,
        degree_witness,
        bipartite_ok,
        bipartite_witness,
        backward_ok,
        backward_witness,
        volumes,
        expected_volumes,
        volumes_ok,
        note,
        holds: degree_ok && bipartite_ok && backward_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HssSearch {
    pub n: f64,
    pub w: f64,
    pub roots: Vec<String>,
}

/// Tries every root, inferring `W` from a neighbor's backward degree and
/// `N = Deg / W`. Returns the roots sharing the parameters of the first
/// passing root.
pub fn find_hss(g: &WeightedGraph) -> Option<HssSearch> {
    if g.is_empty() || !g.is_connected() {
        return None;
    }
    let deg = g.degree_unchecked(0);
    if !(0..g.len()).all(|x| rel_close(g.degree_unchecked(x), deg, POINTWISE_TOL)) {
        return None;
    }
    let mut found: Option<HssSearch> = None;
    for x0 in 0..g.len() {
        let Some(&(y, _)) = g.neighbors(x0).first() else {
            continue;
        };
        let w = g.weight(x0, y) / g.measure(y);
        let n = deg / w;
        if let Some(f) = &found {
            if !(rel_close(f.n, n, POINTWISE_TOL) && rel_close(f.w, w, POINTWISE_TOL)) {
                continue;
            }
        }
        if check_hss(g, n, w, x0).is_ok_and(|r| r.holds) {
            found
                .get_or_insert_with(|| HssSearch {
                    n,
                    w,
                    roots: Vec::new(),
                })
                .roots
                .push(g.id(x0).to_owned());
        }
    }
    found
}

fn require_unweighted_regular(g: &WeightedGraph) -> Result<usize> {
    if !g.is_unweighted() {
        return Err(Error::NotUnweighted);
    }
    let d = g.neighbors(0).len();
    if let Some(v) = (0..g.len()).find(|&v| g.neighbors(v).len() != d) {
        return Err(Error::NotRegular {
            vertex: g.id(v).to_owned(),
            degree: g.neighbors(v).len(),
            expected: d,
        });
    }
    Ok(d)
}

fn two_sphere(g: &WeightedGraph, x: Vertex) -> (Vec<Vertex>, Vec<Vertex>) {
    crate::operators::local_spheres(g, x)
}

/// Small sphere property `#S₂(x) ≤ C(D, 2)`.
pub fn check_ssp(g: &WeightedGraph, x: Vertex) -> Result<bool> {
    g.check_vertex(x)?;
    let d = require_unweighted_regular(g)?;
    Ok(two_sphere(g, x).1.len() as f64 <= binomial(d, 2))
}

/// Non-clustering property: if every `z ∈ S₂(x)` has `d₋(z) = 2`, no two
/// neighbors of `x` share two common two-sphere neighbors. Vacuously true
/// otherwise.
pub fn check_ncp(g: &WeightedGraph, x: Vertex) -> Result<bool> {
    g.check_vertex(x)?;
    require_unweighted_regular(g)?;
    let (s1, s2) = two_sphere(g, x);
    let mut pairs = HashSet::new();
    for &z in &s2 {
        let back: Vec<Vertex> = g
            .neighbors(z)
            .iter()
            .map(|&(y, _)| y)
            .filter(|y| s1.binary_search(y).is_ok())
            .collect();
        if back.len() != 2 {
            return Ok(true);
        }
        pairs.insert((back[0], back[1]));
    }
    Ok(pairs.len() == s2.len())
}

/// `κ₀` when every oriented edge has the same edge degree.
pub fn constant_edge_degree(g: &WeightedGraph) -> Result<Option<f64>> {
    g.require_connected()?;
    let mut kappa = None;
    for x in 0..g.len() {
        for &(_, w) in g.neighbors(x) {
            let k = w / g.measure(x);
            match kappa {
                None => kappa = Some(k),
                Some(k0) if !rel_close(k, k0, 1e-10) => return Ok(None),
                Some(_) => {}
            }
        }
    }
    Ok(kappa)
}

/// `diam ≥ 2 Deg_max / K`.
pub fn diameter_sharpness(g: &WeightedGraph, k: f64) -> Result<bool> {
    if !(k > 0.0) {
        return Err(Error::NonPositiveK(k));
    }
    let diam = g.diameter()? as f64;
    Ok(diam >= 2.0 * g.max_vertex_degree() / k - 1e-9)
}

/// `λ_{deg_max} = K` within [`SPECTRAL_TOL`].
pub fn eigenvalue_sharpness(g: &WeightedGraph, k: f64) -> Result<bool> {
    eigenvalue_sharpness_with(&spectrum(g)?, g, k)
}

pub(crate) fn eigenvalue_sharpness_with(
    spec: &SpectralData,
    g: &WeightedGraph,
    k: f64,
) -> Result<bool> {
    Ok((spec.lambda(g.max_combinatorial_degree())? - k).abs() <= SPECTRAL_TOL)
}

/// `max_x |Γ₂f(x) − K Γf(x)|`.
pub fn gamma2_sharpness(g: &WeightedGraph, f: &[f64], k: f64) -> Result<f64> {
    let g2 = gamma2(g, f)?;
    let g1 = gamma_sq(g, f)?;
    Ok(g2
        .iter()
        .zip(&g1)
        .map(|(a, b)| (a - k * b).abs())
        .fold(0.0, f64::max))
}

/// Times at which the semigroup identity is sampled.
pub const SEMIGROUP_TIMES: [f64; 3] = [0.1, 0.5, 1.0];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChengReport {
    pub root: String,
    pub k: f64,
    pub deg_max: f64,
    /// `∃ y: d(x0, y) = 2D/K`.
    pub diameter_attained: bool,
    /// `Deg(x0) = D` and `Γ P_t f0 = e^{−2Kt} P_t Γ f0`.
    pub semigroup: bool,
    pub semigroup_deviation: f64,
    /// `Deg(x0) = D` and `Γ₂ f0 = K Γ f0`.
    pub gamma2_sharp: bool,
    pub gamma2_deviation: f64,
    /// `Deg(x0) = D` and `f0 = φ + C` with `−Δφ = Kφ`.
    pub eigen_decomposition: bool,
    /// `HSS(2D/K, K/2, x0)`.
    pub hss: bool,
    pub agree: bool,
}

/// Minimal curvature over non-isolated vertices, or `+∞` if there are none.
fn min_k(table: &[VertexCurvature]) -> f64 {
    min_curvature(table).map_or(f64::INFINITY, |(_, k)| k)
}

/// The five diameter-sharpness statements for `f0 = d(x0, ·)`.
pub fn cheng_harness(g: &WeightedGraph, x0: Vertex) -> Result<ChengReport> {
    g.check_vertex(x0)?;
    g.require_connected()?;
    let k = min_k(&curvature_all(g, f64::INFINITY)?);
    if !(k > 0.0) {
        return Err(Error::NonPositiveCurvature(k));
    }
    cheng_with(g, x0, k, &spectrum(g)?)
}

pub(crate) fn cheng_with(
    g: &WeightedGraph,
    x0: Vertex,
    k: f64,
    spec: &SpectralData,
) -> Result<ChengReport> {
    let shells = g.connected_shells(x0)?;
    let d = g.max_vertex_degree();
    let target = 2.0 * d / k;
    let f0: Vec<f64> = shells
        .dist
        .iter()
        .map(|v| v.unwrap_or_default() as f64)
        .collect();
    let top_degree = rel_close(g.degree_unchecked(x0), d, POINTWISE_TOL);

    let diameter_attained = rel_close(shells.eccentricity as f64, target, SPECTRAL_TOL);
    let semigroup_deviation = deviation_with(spec, g, &f0, k, &SEMIGROUP_TIMES)?;
    let scale = (k * d).max(1.0);
    let semigroup = top_degree && semigroup_deviation <= 1e-7 * scale;
    let gamma2_deviation = gamma2_sharpness(g, &f0, k)?;
    let gamma2_sharp = top_degree && gamma2_deviation <= POINTWISE_TOL * scale;

    let shifted: Vec<f64> = f0.iter().map(|v| v - d / k).collect();
    let ball: BTreeMap<Vertex, f64> = shells
        .spheres
        .iter()
        .take(2)
        .flatten()
        .map(|&v| (v, shifted[v]))
        .collect();
    let eigen_decomposition = top_degree
        && match extend_from_ball(g, x0, &ball, k) {
            Ok(ext) => ext
                .iter()
                .zip(&shifted)
                .all(|(a, b)| (a - b).abs() <= 1e-7 * target.max(1.0)),
            Err(
                Error::InconsistentExtension { .. }
                | Error::NoMidpointPath(_)
                | Error::NotEigenTrace { .. },
            ) => false,
            Err(e) => return Err(e),
        };
    let hss = check_hss(g, target, k / 2.0, x0)?.holds;
    let all = [
        diameter_attained,
        semigroup,
        gamma2_sharp,
        eigen_decomposition,
        hss,
    ];
    Ok(ChengReport {
        root: g.id(x0).to_owned(),
        k,
        deg_max: d,
        diameter_attained,
        semigroup,
        semigroup_deviation,
        gamma2_sharp,
        gamma2_deviation,
        eigen_decomposition,
        hss,
        agree: all.iter().all(|&b| b == all[0]),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Characterization {
    pub holds: bool,
    /// Why it fails, when it does.
    pub witness: Option<String>,
}

impl Characterization {
    fn from_checks(checks: &[(bool, String)]) -> Self {
        match checks.iter().find(|(ok, _)| !ok) {
            None => Characterization {
                holds: true,
                witness: None,
            },
            Some((_, why)) => Characterization {
                holds: false,
                witness: Some(why.clone()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MainTheoremReport {
    /// `min_x K_∞(x)`.
    pub k: f64,
    pub k_vertex: Option<String>,
    /// `Deg_max`.
    pub deg_max: f64,
    /// `2 Deg_max / K`, when `K > 0`.
    pub dimension: Option<f64>,
    pub char1_hypercube: Characterization,
    pub char2_eigen: Characterization,
    pub char3_diam: Characterization,
    pub char4_hss: Characterization,
    pub char5_ssp_ncp: Characterization,
    pub agree: bool,
}

impl MainTheoremReport {
    pub fn verdicts(&self) -> [bool; 5] {
        [
            self.char1_hypercube.holds,
            self.char2_eigen.holds,
            self.char3_diam.holds,
            self.char4_hss.holds,
            self.char5_ssp_ncp.holds,
        ]
    }
}

/// Evaluates the five characterizations of the hypercube at `K = min K_∞`.
/// When `K ≤ 0` the last four are false and the first reduces to the
/// recognizer verdict.
pub fn main_theorem_harness(g: &WeightedGraph) -> Result<MainTheoremReport> {
    g.require_connected()?;
    let table = curvature_all(g, f64::INFINITY)?;
    let spec = spectrum(g)?;
    main_theorem_with(g, &table, &spec)
}

/// [`main_theorem_harness`] on a precomputed `K_∞` table and spectrum.
pub fn main_theorem_with(
    g: &WeightedGraph,
    table: &[VertexCurvature],
    spec: &SpectralData,
) -> Result<MainTheoremReport> {
    let (k_vertex, k) = match min_curvature(table) {
        Some((v, k)) => (Some(g.id(v).to_owned()), k),
        None => (None, f64::INFINITY),
    };
    let d = g.max_vertex_degree();
    let cube = is_hypercube(g)?;
    let kappa = constant_edge_degree(g)?;
    if !(k > 0.0 && k.is_finite()) {
        let why = format!("minimal curvature {k} is not positive");
        let off = || Characterization {
            holds: false,
            witness: Some(why.clone()),
        };
        let char1 = Characterization {
            holds: cube.is_some(),
            witness: cube.is_none().then(|| "recognizer rejects".to_owned()),
        };
        let agree = !char1.holds;
        return Ok(MainTheoremReport {
            k,
            k_vertex,
            deg_max: d,
            dimension: None,
            char1_hypercube: char1,
            char2_eigen: off(),
            char3_diam: off(),
            char4_hss: off(),
            char5_ssp_ncp: off(),
            agree,
        });
    }
    let dim = 2.0 * d / k;
    let kappa_const = (kappa.is_some(), "edge degree is not constant".to_owned());
    let kappa_half = (
        kappa.is_some_and(|k0| rel_close(k0, k / 2.0, SPECTRAL_TOL)),
        format!("edge degree {kappa:?} differs from K/2 = {}", k / 2.0),
    );

    let char1 = Characterization::from_checks(&[
        (
            cube.is_some(),
            "recognizer rejects the unweighted representation".to_owned(),
        ),
        (
            cube.as_ref()
                .is_some_and(|c| rel_close(c.dimension as f64, dim, SPECTRAL_TOL)),
            format!("cube dimension differs from 2D/K = {dim}"),
        ),
        kappa_half.clone(),
    ]);

    let lambda = spec.lambda(g.max_combinatorial_degree())?;
    let char2 = Characterization::from_checks(&[(
        (lambda - k).abs() <= SPECTRAL_TOL,
        format!("lambda_deg_max = {lambda} but K = {k}"),
    )]);

    let diam = g.diameter()? as f64;
    let char3 = Characterization::from_checks(&[
        kappa_const.clone(),
        (
            rel_close(diam, dim, SPECTRAL_TOL),
            format!("diameter {diam} but 2D/K = {dim}"),
        ),
    ]);

    let hss_root = |h: &WeightedGraph, w: f64| -> Result<Option<String>> {
        for x0 in 0..h.len() {
            if check_hss(h, dim, w, x0)?.holds {
                return Ok(Some(h.id(x0).to_owned()));
            }
        }
        Ok(None)
    };
    let char4 = Characterization::from_checks(&[
        kappa_const,
        (
            hss_root(g, k / 2.0)?.is_some(),
            format!("no root with HSS({dim}, {})", k / 2.0),
        ),
    ]);

    let unweighted = g.unweighted_representation();
    let mut char5_checks = vec![kappa_half];
    char5_checks.push((
        hss_root(&unweighted, 1.0)?.is_some(),
        format!("unweighted representation has no root with HSS({dim}, 1)"),
    ));
    if char5_checks.iter().all(|c| c.0) {
        for x in 0..unweighted.len() {
            let ssp = check_ssp(&unweighted, x)?;
            let ncp = check_ncp(&unweighted, x)?;
            if !(ssp && ncp) {
                char5_checks.push((
                    false,
                    format!("{} fails at {:?}", if ssp { "NCP" } else { "SSP" }, g.id(x)),
                ));
                break;
            }
        }
    }
    let char5 = Characterization::from_checks(&char5_checks);

    let mut report = MainTheoremReport {
        k,
        k_vertex,
        deg_max: d,
        dimension: Some(dim),
        char1_hypercube: char1,
        char2_eigen: char2,
        char3_diam: char3,
        char4_hss: char4,
        char5_ssp_ncp: char5,
        agree: false,
    };
    let v = report.verdicts();
    report.agree = v.iter().all(|&b| b == v[0]);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{
        hss_negative_curvature, hypercube, ncp2_counterexample, ou_chain, scaled,
    };

    #[test]
    fn hss_on_cubes_and_chains() {
        let h4 = hypercube(4).unwrap();
        let r = check_hss(&h4, 4.0, 1.0, 5).unwrap();
        assert!(r.holds && r.volumes_ok == Some(true));
        assert_eq!(r.volumes, vec![1.0, 4.0, 6.0, 4.0, 1.0]);
        let p = ou_chain(4).unwrap();
        let r = check_hss(&p, 4.0, 1.0, 0).unwrap();
        assert!(r.holds && r.volumes_ok == Some(true));
        let r = check_hss(&h4, 2.5, 1.6, 0).unwrap();
        assert!(!r.holds && r.volumes_ok.is_none() && r.note.is_some());
    }

    #[test]
    fn find_hss_scaled() {
        let g = scaled(&hypercube(3).unwrap(), 0.5).unwrap();
        let found = find_hss(&g).unwrap();
        assert_eq!((found.n, found.w, found.roots.len()), (3.0, 0.5, 8));
        assert!(find_hss(&crate::fixtures::diagonal_square()).is_none());
    }

    #[test]
    fn ssp_ncp_examples() {
        let ncp = ncp2_counterexample();
        let x = ncp.vertex("x").unwrap();
        assert!(matches!(check_ssp(&ncp, x), Err(Error::NotRegular { .. })));
        let neg = hss_negative_curvature();
        let x0 = neg.vertex("x0").unwrap();
        assert!(check_ssp(&neg, x0).unwrap());
        assert!(!check_ncp(&neg, x0).unwrap());
        let h4 = hypercube(4).unwrap();
        assert!(check_ssp(&h4, 0).unwrap() && check_ncp(&h4, 0).unwrap());
        let s = scaled(&h4, 2.0).unwrap();
        assert_eq!(check_ssp(&s, 0).unwrap_err(), Error::NotUnweighted);
    }

    #[test]
    fn edge_degree_and_diameter() {
        assert_eq!(
            constant_edge_degree(&hypercube(3).unwrap()).unwrap(),
            Some(1.0)
        );
        assert_eq!(constant_edge_degree(&ou_chain(4).unwrap()).unwrap(), None);
        let h3 = hypercube(3).unwrap();
        assert!(diameter_sharpness(&h3, 2.0).unwrap());
        assert!(!diameter_sharpness(&h3, 1.0).unwrap());
        assert_eq!(
            diameter_sharpness(&h3, 0.0).unwrap_err(),
            Error::NonPositiveK(0.0)
        );
    }

    #[test]
    fn negative_curvature_harnesses() {
        let neg = hss_negative_curvature();
        assert!(matches!(
            cheng_harness(&neg, 0),
            Err(Error::NonPositiveCurvature(_))
        ));
        let report = main_theorem_harness(&neg).unwrap();
        assert!(report.k < 0.0);
        assert_eq!(report.verdicts(), [false; 5]);
        assert!(report.agree);
    }
}
