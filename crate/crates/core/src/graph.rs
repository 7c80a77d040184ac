//! Finite weighted graphs `G = (V, w, m)`.
//!
//! A [`WeightedGraph`] is an immutable value: vertices carry a positive
//! measure `m`, unordered vertex pairs carry a nonnegative symmetric weight
//! `w`, and `x ~ y` means `w(x, y) > 0`. Vertices are addressed by their
//! position in sorted-identifier order, so every traversal and every report
//! is deterministic.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// Index of a vertex in sorted-identifier order.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    ids: Vec<String>,
    index: HashMap<String, Vertex>,
    measure: Vec<f64>,
    /// Neighbor lists sorted by vertex index.
    adj: Vec<Vec<(Vertex, f64)>>,
}

/// Breadth-first distance layers `S_0(x0), S_1(x0), ...` around a root.
#[derive(Debug, Clone, PartialEq)]
pub struct ShellDecomposition {
    pub root: Vertex,
    /// `None` for vertices in a different component.
    pub dist: Vec<Option<usize>>,
    /// Each sphere sorted by vertex index.
    pub spheres: Vec<Vec<Vertex>>,
    pub eccentricity: usize,
}

impl ShellDecomposition {
    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.spheres.iter().map(Vec::len).collect()
    }

    pub fn covers_all(&self) -> bool {
        self.dist.iter().all(Option::is_some)
    }

    /// `d_-^{x0}(z)`: measure-normalized weight from `z` towards the root.
    pub fn backward_degree(&self, g: &WeightedGraph, z: Vertex) -> Result<f64> {
        self.directed_degree(g, z, |dy, dz| dy < dz)
    }

    /// `d_+^{x0}(z)`: measure-normalized weight from `z` away from the root.
    pub fn forward_degree(&self, g: &WeightedGraph, z: Vertex) -> Result<f64> {
        self.directed_degree(g, z, |dy, dz| dy > dz)
    }

    fn directed_degree(
        &self,
        g: &WeightedGraph,
        z: Vertex,
        keep: impl Fn(usize, usize) -> bool,
    ) -> Result<f64> {
        g.check_vertex(z)?;
        let dz = self.dist[z].ok_or_else(|| Error::Unreachable {
            root: g.id(self.root).to_owned(),
            target: g.id(z).to_owned(),
        })?;
        let total: f64 = g
            .neighbors(z)
            .iter()
            .filter(|&&(y, _)| self.dist[y].is_some_and(|dy| keep(dy, dz)))
            .map(|&(_, w)| w)
            .sum();
        Ok(total / g.measure(z))
    }
}

/// Outcome of a two-coloring attempt.
#[derive(Debug, Clone, PartialEq)]
pub enum Bipartition {
    /// `side[v]` is the color of `v` (BFS parity per component).
    Bipartite { side: Vec<bool> },
    /// Vertices of an odd cycle, in cyclic order.
    OddCycle { cycle: Vec<Vertex> },
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Bipartite { .. })
    }
}

impl WeightedGraph {
    /// Validates and builds a graph from vertex `(id, measure)` pairs and
    /// undirected `(u, v, weight)` edges.
    pub fn new(vertices: Vec<(String, f64)>, edges: Vec<(String, String, f64)>) -> Result<Self> {
        let mut vertices = vertices;
        for (id, m) in &vertices {
            if !(m.is_finite() && *m > 0.0) {
                return Err(Error::NonPositiveMeasure(id.clone(), *m));
            }
        }
        vertices.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in vertices.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateVertex(pair[0].0.clone()));
            }
        }
        let ids: Vec<String> = vertices.iter().map(|(id, _)| id.clone()).collect();
        let measure: Vec<f64> = vertices.iter().map(|&(_, m)| m).collect();
        let index: HashMap<String, Vertex> = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();

        let mut adj: Vec<Vec<(Vertex, f64)>> = vec![Vec::new(); ids.len()];
        let mut seen = std::collections::HashSet::new();
        for (u, v, w) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let iu = *index
                .get(&u)
                .ok_or_else(|| Error::UnknownEndpoint(u.clone()))?;
            let iv = *index
                .get(&v)
                .ok_or_else(|| Error::UnknownEndpoint(v.clone()))?;
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::NonPositiveWeight(u, v, w));
            }
            if !seen.insert((iu.min(iv), iu.max(iv))) {
                return Err(Error::DuplicateEdge(u, v));
            }
            adj[iu].push((iv, w));
            adj[iv].push((iu, w));
        }
        for list in &mut adj {
            list.sort_by_key(|&(v, _)| v);
        }
        Ok(WeightedGraph {
            ids,
            index,
            measure,
            adj,
        })
    }

    /// Convenience constructor over borrowed identifiers.
    pub fn from_lists(vertices: &[(&str, f64)], edges: &[(&str, &str, f64)]) -> Result<Self> {
        WeightedGraph::new(
            vertices.iter().map(|&(id, m)| (id.to_owned(), m)).collect(),
            edges
                .iter()
                .map(|&(u, v, w)| (u.to_owned(), v.to_owned(), w))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: Vertex) -> &str {
        &self.ids[v]
    }

    pub fn vertex(&self, id: &str) -> Result<Vertex> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_owned()))
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{v}")))
        }
    }

    pub fn measure(&self, v: Vertex) -> f64 {
        self.measure[v]
    }

    pub fn measures(&self) -> &[f64] {
        &self.measure
    }

    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, f64)] {
        &self.adj[v]
    }

    /// `w(u, v)`, zero for non-adjacent pairs and on the diagonal.
    pub fn weight(&self, u: Vertex, v: Vertex) -> f64 {
        self.adj[u]
            .binary_search_by_key(&v, |&(x, _)| x)
            .map(|pos| self.adj[u][pos].1)
            .unwrap_or(0.0)
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.weight(u, v) > 0.0
    }

    /// Undirected edges `(u, v, w)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, f64)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, w)| (u, v, w))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// `Deg(x) = sum_y w(x, y) / m(x)`.
    pub fn vertex_degree(&self, x: Vertex) -> Result<f64> {
        self.check_vertex(x)?;
        Ok(self.degree_unchecked(x))
    }

    pub(crate) fn degree_unchecked(&self, x: Vertex) -> f64 {
        self.adj[x].iter().map(|&(_, w)| w).sum::<f64>() / self.measure[x]
    }

    /// `Deg_max`.
    pub fn max_vertex_degree(&self) -> f64 {
        (0..self.len())
            .map(|x| self.degree_unchecked(x))
            .fold(0.0, f64::max)
    }

    /// `deg(x) = #{y : y ~ x}`.
    pub fn combinatorial_degree(&self, x: Vertex) -> Result<usize> {
        self.check_vertex(x)?;
        Ok(self.adj[x].len())
    }

    pub fn max_combinatorial_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_combinatorial_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// The common combinatorial degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Edge degree `kappa(x, y) = w(x, y) / m(x)` of the oriented edge `(x, y)`.
    pub fn edge_degree(&self, x: Vertex, y: Vertex) -> Result<f64> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        let w = self.weight(x, y);
        if w > 0.0 {
            Ok(w / self.measure[x])
        } else {
            Err(Error::NotAdjacent(self.ids[x].clone(), self.ids[y].clone()))
        }
    }

    /// Hop distances from `x0`; `None` outside its component.
    pub fn distances_from(&self, x0: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        let mut queue = VecDeque::new();
        dist[x0] = Some(0);
        queue.push_back(x0);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or_default();
            for &(v, _) in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn shells(&self, x0: Vertex) -> Result<ShellDecomposition> {
        self.check_vertex(x0)?;
        let dist = self.distances_from(x0);
        let eccentricity = dist.iter().flatten().copied().max().unwrap_or(0);
        let mut spheres = vec![Vec::new(); eccentricity + 1];
        for (v, d) in dist.iter().enumerate() {
            if let Some(d) = d {
                spheres[*d].push(v);
            }
        }
        Ok(ShellDecomposition {
            root: x0,
            dist,
            spheres,
            eccentricity,
        })
    }

    /// Shells around `x0`, failing if some vertex is unreachable.
    pub(crate) fn connected_shells(&self, x0: Vertex) -> Result<ShellDecomposition> {
        let shells = self.shells(x0)?;
        if shells.covers_all() {
            Ok(shells)
        } else {
            Err(Error::Disconnected)
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.distances_from(0).iter().all(Option::is_some)
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() && !self.is_empty() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Hop distance between two vertices of a connected graph.
    pub fn distance(&self, x: Vertex, y: Vertex) -> Result<usize> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        self.distances_from(x)[y].ok_or(Error::Disconnected)
    }

    /// Combinatorial diameter.
    pub fn diameter(&self) -> Result<usize> {
        self.require_connected()?;
        Ok((0..self.len())
            .map(|x| {
                self.distances_from(x)
                    .into_iter()
                    .flatten()
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0))
    }

    pub fn backward_degree(&self, x0: Vertex, z: Vertex) -> Result<f64> {
        self.shells(x0)?.backward_degree(self, z)
    }

    pub fn forward_degree(&self, x0: Vertex, z: Vertex) -> Result<f64> {
        self.shells(x0)?.forward_degree(self, z)
    }

    /// Two-colors every component by BFS parity, or returns an odd cycle.
    pub fn bipartition(&self) -> Bipartition {
        let n = self.len();
        let mut depth: Vec<Option<usize>> = vec![None; n];
        let mut parent: Vec<Option<Vertex>> = vec![None; n];
        for start in 0..n {
            if depth[start].is_some() {
                continue;
            }
            depth[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let du = depth[u].unwrap_or_default();
                for &(v, _) in &self.adj[u] {
                    match depth[v] {
                        None => {
                            depth[v] = Some(du + 1);
                            parent[v] = Some(u);
                            queue.push_back(v);
                        }
                        Some(dv) if dv % 2 == du % 2 => {
                            return Bipartition::OddCycle {
                                cycle: odd_cycle(&parent, &depth, u, v),
                            };
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Bipartition::Bipartite {
            side: depth
                .iter()
                .map(|d| d.unwrap_or_default() % 2 == 1)
                .collect(),
        }
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_bipartite()
    }

    /// True when all weights are 1 and all measures are 1.
    pub fn is_unweighted(&self) -> bool {
        self.measure.iter().all(|&m| m == 1.0) && self.adj.iter().flatten().all(|&(_, w)| w == 1.0)
    }

    /// Same adjacency, unit weights and measures.
    pub fn unweighted_representation(&self) -> WeightedGraph {
        WeightedGraph {
            ids: self.ids.clone(),
            index: self.index.clone(),
            measure: vec![1.0; self.len()],
            adj: self
                .adj
                .iter()
                .map(|l| l.iter().map(|&(v, _)| (v, 1.0)).collect())
                .collect(),
        }
    }

    /// Returns a copy with every weight multiplied by `factor`.
    pub(crate) fn with_scaled_weights(&self, factor: f64) -> WeightedGraph {
        WeightedGraph {
            ids: self.ids.clone(),
            index: self.index.clone(),
            measure: self.measure.clone(),
            adj: self
                .adj
                .iter()
                .map(|l| l.iter().map(|&(v, w)| (v, w * factor)).collect())
                .collect(),
        }
    }

    /// Subgraph induced by `keep`, with weights and measures inherited.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> WeightedGraph {
        let set: std::collections::HashSet<Vertex> = keep.iter().copied().collect();
        let vertices = keep
            .iter()
            .map(|&v| (self.ids[v].clone(), self.measure[v]))
            .collect();
        let edges = self
            .edges()
            .filter(|(u, v, _)| set.contains(u) && set.contains(v))
            .map(|(u, v, w)| (self.ids[u].clone(), self.ids[v].clone(), w))
            .collect();
        WeightedGraph::new(vertices, edges).expect("induced subgraph of a valid graph is valid")
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let mut comp: Vec<Vertex> = self
                .distances_from(s)
                .iter()
                .enumerate()
                .filter_map(|(v, d)| d.map(|_| v))
                .collect();
            comp.sort_unstable();
            for &v in &comp {
                seen[v] = true;
            }
            out.push(comp);
        }
        out
    }
}

fn odd_cycle(
    parent: &[Option<Vertex>],
    depth: &[Option<usize>],
    mut u: Vertex,
    mut v: Vertex,
) -> Vec<Vertex> {
    let mut left = vec![u];
    let mut right = vec![v];
    // Walk both endpoints up the BFS tree until the paths meet.
    while depth[u] > depth[v] {
        u = parent[u].expect("non-root has parent");
        left.push(u);
    }
    while depth[v] > depth[u] {
        v = parent[v].expect("non-root has parent");
        right.push(v);
    }
    while u != v {
        u = parent[u].expect("non-root has parent");
        v = parent[v].expect("non-root has parent");
        left.push(u);
        right.push(v);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Cartesian product of two unweighted graphs; vertex `(a, b)` gets the
/// identifier `"a:b"`.
pub fn cartesian_product(g: &WeightedGraph, h: &WeightedGraph) -> Result<WeightedGraph> {
    if !g.is_unweighted() || !h.is_unweighted() {
        return Err(Error::NotUnweighted);
    }
    let pair = |a: Vertex, b: Vertex| format!("{}:{}", g.id(a), h.id(b));
    let mut vertices = Vec::with_capacity(g.len() * h.len());
    let mut edges = Vec::new();
    for a in 0..g.len() {
        for b in 0..h.len() {
            vertices.push((pair(a, b), 1.0));
        }
    }
    for (a1, a2, _) in g.edges() {
        for b in 0..h.len() {
            edges.push((pair(a1, b), pair(a2, b), 1.0));
        }
    }
    for a in 0..g.len() {
        for (b1, b2, _) in h.edges() {
            edges.push((pair(a, b1), pair(a, b2), 1.0));
        }
    }
    WeightedGraph::new(vertices, edges)
}
