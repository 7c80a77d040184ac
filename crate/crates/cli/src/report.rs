use std::collections::HashMap;

use becurv::curvature::{curvature_all, min_curvature, VertexCurvature};
use becurv::fixtures::binomial;
use becurv::json::CertificateJson;
use becurv::recognizer::{recognize, RecognitionFailure};
use becurv::rigidity::{
    check_hss, constant_edge_degree, find_hss, main_theorem_with, HssReport, MainTheoremReport,
};
use becurv::spectral::spectrum;
use becurv::symmetrize::{is_weakly_spherically_symmetric, SymmetryReport};
use becurv::{Bipartition, Vertex, WeightedGraph};
use serde::Serialize;

#[derive(Debug, Clone, Copy)]
pub struct AnalyzeOptions<'a> {
    pub skip_spectrum: bool,
    pub root: Option<&'a str>,
    pub tol: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub kind: &'static str,
    pub summary: GraphSummary,
    pub components: Vec<ComponentReport>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub edges: usize,
    #[serde(rename = "Deg_max")]
    pub weighted_deg_max: f64,
    pub deg_max: usize,
    pub connected: bool,
    pub component_count: usize,
    pub bipartite: bool,
    /// An odd cycle when the graph is not bipartite.
    pub odd_cycle: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct CurvatureRow {
    pub vertex: String,
    /// `null` for an isolated vertex.
    pub k_infinity: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct MinCurvature {
    pub vertex: String,
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct EdgeDegreeResult {
    pub constant: bool,
    pub kappa: Option<f64>,
    /// Two oriented edges with different edge degrees.
    pub witness: Option<[EdgeDegree; 2]>,
}

#[derive(Debug, Serialize)]
pub struct EdgeDegree {
    pub from: String,
    pub to: String,
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct HssResult {
    pub found: bool,
    pub n: Option<f64>,
    pub w: Option<f64>,
    pub roots: Vec<String>,
    /// Check at the first vertex with parameters inferred from its first
    /// neighbor, when no root passes.
    pub witness: Option<HssReport>,
}

#[derive(Debug, Serialize)]
pub struct SspNcpTable {
    pub applicable: bool,
    pub reason: Option<String>,
    pub rows: Vec<SspNcpRow>,
}

#[derive(Debug, Serialize)]
pub struct SspNcpRow {
    pub vertex: String,
    pub ssp: bool,
    pub sphere2_size: usize,
    pub sphere2_bound: f64,
    pub ncp: bool,
    /// Two neighbors sharing two two-sphere vertices.
    pub ncp_witness: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct RecognizerVerdict {
    pub is_hypercube: bool,
    pub root: String,
    pub certificate: Option<CertificateJson>,
    pub failure: Option<RecognitionFailure>,
}

#[derive(Debug, Serialize)]
pub struct RootReport {
    pub root: String,
    pub hss: HssReport,
    pub symmetry: SymmetryReport,
}

#[derive(Debug, Serialize)]
pub struct ComponentReport {
    pub vertices: Vec<String>,
    pub curvature: Vec<CurvatureRow>,
    pub min_curvature: Option<MinCurvature>,
    pub diameter: usize,
    pub spectrum_head: Option<Vec<f64>>,
    pub spectral_tolerance: Option<f64>,
    /// Multiplicity of the minimal curvature as an eigenvalue of `-Δ`.
    pub k_multiplicity: Option<usize>,
    pub constant_edge_degree: EdgeDegreeResult,
    pub hss: HssResult,
    pub ssp_ncp: SspNcpTable,
    pub recognizer: RecognizerVerdict,
    pub main_theorem: Option<MainTheoremReport>,
    pub root: Option<RootReport>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub kind: &'static str,
    pub agree: bool,
    pub verdicts: [bool; 5],
    pub report: MainTheoremReport,
}

#[derive(Debug, Serialize)]
pub struct SemigroupReport {
    pub kind: &'static str,
    pub root: String,
    pub k: f64,
    pub times: Vec<f64>,
    pub deviation: f64,
    pub warnings: Vec<String>,
}

pub fn analyze(g: &WeightedGraph, opts: AnalyzeOptions) -> anyhow::Result<AnalysisReport> {
    let components = g.components();
    let bip = g.bipartition();
    let summary = GraphSummary {
        n: g.len(),
        edges: g.edge_count(),
        weighted_deg_max: g.max_vertex_degree(),
        deg_max: g.max_combinatorial_degree(),
        connected: components.len() == 1,
        component_count: components.len(),
        bipartite: bip.is_bipartite(),
        odd_cycle: match bip {
            Bipartition::OddCycle { cycle } => Some(ids(g, &cycle)),
            Bipartition::Bipartite { .. } => None,
        },
    };
    if let Some(id) = opts.root {
        g.vertex(id)?;
    }
    let mut warnings = Vec::new();
    if components.len() > 1 {
        warnings.push(format!(
            "graph is disconnected; analyzing {} components separately",
            components.len()
        ));
    }
    if opts.skip_spectrum {
        warnings.push("spectrum skipped; main-theorem report omitted".to_owned());
    }
    let components = components
        .iter()
        .map(|keep| analyze_component(&g.induced_subgraph(keep), opts))
        .collect::<anyhow::Result<_>>()?;
    Ok(AnalysisReport {
        kind: "analysis",
        summary,
        components,
        warnings,
    })
}

fn ids(g: &WeightedGraph, vs: &[Vertex]) -> Vec<String> {
    vs.iter().map(|&v| g.id(v).to_owned()).collect()
}

fn analyze_component(g: &WeightedGraph, opts: AnalyzeOptions) -> anyhow::Result<ComponentReport> {
    let table = curvature_all(g, f64::INFINITY)?;
    let curvature = table
        .iter()
        .map(|c: &VertexCurvature| CurvatureRow {
            vertex: g.id(c.vertex).to_owned(),
            k_infinity: (!c.isolated).then_some(c.value),
        })
        .collect();
    let min = min_curvature(&table);

    let (spectrum_head, spectral_tolerance, k_multiplicity, main_theorem) = if opts.skip_spectrum {
        (None, None, None, None)
    } else {
        let spec = spectrum(g)?;
        let head_len = (g.max_combinatorial_degree() + 2).min(spec.len());
        let tol = opts.tol.unwrap_or_else(|| spec.default_tolerance());
        let mult = min.map(|(_, k)| spec.multiplicity(k, tol));
        let report = main_theorem_with(g, &table, &spec)?;
        (
            Some(spec.eigenvalues[..head_len].to_vec()),
            Some(tol),
            mult,
            Some(report),
        )
    };

    let root = opts.root.and_then(|id| g.vertex(id).ok());
    let start = root.unwrap_or(0);
    let recognizer = match recognize(g, start)? {
        Ok(lab) => RecognizerVerdict {
            is_hypercube: true,
            root: g.id(start).to_owned(),
            certificate: Some(CertificateJson::from_labeling(g, &lab)),
            failure: None,
        },
        Err(f) => RecognizerVerdict {
            is_hypercube: false,
            root: g.id(start).to_owned(),
            certificate: None,
            failure: Some(f),
        },
    };

    let root = match root {
        Some(x0) => Some(RootReport {
            root: g.id(x0).to_owned(),
            hss: inferred_hss(g, x0)?,
            symmetry: is_weakly_spherically_symmetric(g, x0)?,
        }),
        None => None,
    };

    Ok(ComponentReport {
        vertices: g.ids().to_vec(),
        curvature,
        min_curvature: min.map(|(v, value)| MinCurvature {
            vertex: g.id(v).to_owned(),
            value,
        }),
        diameter: g.diameter()?,
        spectrum_head,
        spectral_tolerance,
        k_multiplicity,
        constant_edge_degree: edge_degree_result(g)?,
        hss: hss_result(g)?,
        ssp_ncp: ssp_ncp_table(g)?,
        recognizer,
        main_theorem,
        root,
    })
}

fn inferred_hss(g: &WeightedGraph, x0: Vertex) -> anyhow::Result<HssReport> {
    let deg = g.vertex_degree(x0)?;
    let w = match g.neighbors(x0).first() {
        Some(&(y, _)) => g.weight(x0, y) / g.measure(y),
        None => 1.0,
    };
    Ok(check_hss(g, deg / w, w, x0)?)
}

fn hss_result(g: &WeightedGraph) -> anyhow::Result<HssResult> {
    Ok(match find_hss(g) {
        Some(s) => HssResult {
            found: true,
            n: Some(s.n),
            w: Some(s.w),
            roots: s.roots,
            witness: None,
        },
        None => HssResult {
            found: false,
            n: None,
            w: None,
            roots: Vec::new(),
            witness: Some(inferred_hss(g, 0)?),
        },
    })
}

fn edge_degree_result(g: &WeightedGraph) -> anyhow::Result<EdgeDegreeResult> {
    let kappa = constant_edge_degree(g)?;
    let witness = if kappa.is_some() {
        None
    } else {
        let oriented: Vec<EdgeDegree> = (0..g.len())
            .flat_map(|x| {
                g.neighbors(x).iter().map(move |&(y, w)| EdgeDegree {
                    from: g.id(x).to_owned(),
                    to: g.id(y).to_owned(),
                    value: w / g.measure(x),
                })
            })
            .collect();
        let mut it = oriented.into_iter();
        it.next().and_then(|first| {
            it.find(|e| e.value != first.value)
                .map(|second| [first, second])
        })
    };
    Ok(EdgeDegreeResult {
        constant: kappa.is_some(),
        kappa,
        witness,
    })
}

fn ssp_ncp_table(g: &WeightedGraph) -> anyhow::Result<SspNcpTable> {
    let reason = if !g.is_unweighted() {
        Some("graph is not unweighted")
    } else if g.regular_degree().is_none() {
        Some("graph is not regular")
    } else {
        None
    };
    if let Some(reason) = reason {
        return Ok(SspNcpTable {
            applicable: false,
            reason: Some(reason.to_owned()),
            rows: Vec::new(),
        });
    }
    let d = g.regular_degree().unwrap_or(0);
    let bound = binomial(d, 2);
    let mut rows = Vec::with_capacity(g.len());
    for x in 0..g.len() {
        let shells = g.shells(x)?;
        let s1 = shells.spheres.get(1).cloned().unwrap_or_default();
        let s2 = shells.spheres.get(2).cloned().unwrap_or_default();
        let mut back_pairs: HashMap<(Vertex, Vertex), Vertex> = HashMap::new();
        let mut all_two = true;
        let mut clustered = None;
        for &z in &s2 {
            let mut back: Vec<Vertex> = g
                .neighbors(z)
                .iter()
                .map(|&(y, _)| y)
                .filter(|y| s1.contains(y))
                .collect();
            back.sort_unstable();
            if back.len() != 2 {
                all_two = false;
                break;
            }
            if let Some(&other) = back_pairs.get(&(back[0], back[1])) {
                clustered.get_or_insert_with(|| ids(g, &[back[0], back[1], other, z]));
            }
            back_pairs.insert((back[0], back[1]), z);
        }
        let ncp_witness = if all_two { clustered } else { None };
        rows.push(SspNcpRow {
            vertex: g.id(x).to_owned(),
            ssp: s2.len() as f64 <= bound,
            sphere2_size: s2.len(),
            sphere2_bound: bound,
            ncp: ncp_witness.is_none(),
            ncp_witness,
        });
    }
    Ok(SspNcpTable {
        applicable: true,
        reason: None,
        rows,
    })
}
