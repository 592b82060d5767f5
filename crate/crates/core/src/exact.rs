//! Exact minimum cut graphs for small meshes, and the midpoint check that
//! every cut path of a minimum cut graph is made of two shortest paths.
//!
//! The search grows a subgraph `H` (cut edges, all boundary edges and any
//! required vertices) one incident edge at a time, branching on whether the
//! cheapest incident edge is taken. Cutting along `H` leaves a disk iff `H`
//! is connected, the faces stay connected across the edges outside `H`, and
//! the cycle rank of `H` equals `2 - χ`. Both the cycle rank and face
//! disconnection are monotone as `H` grows, which makes them prunes.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::mesh::{Cost, Mesh, PerturbedWeights};
use crate::paths::ShortestPathTree;
use crate::topology::{self, CutGraph};
use crate::unionfind::RollbackUnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_edges: usize,
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_edges: 25, max_nodes: 200_000_000 }
    }
}

impl Budget {
    pub fn unlimited_edges() -> Budget {
        Budget { max_edges: usize::MAX, ..Budget::default() }
    }
}

#[derive(Clone, Debug)]
pub struct ExactResult {
    pub cut_graph: CutGraph,
    pub cost: Cost,
    /// Search nodes visited.
    pub nodes: u64,
}

struct Search<'a> {
    mesh: &'a Mesh,
    costs: &'a PerturbedWeights,
    required: Vec<bool>,
    target_rank: i64,
    in_edge: Vec<bool>,
    excluded: Vec<bool>,
    in_vertex: Vec<u32>,
    h_vertices: Vec<usize>,
    uf: RollbackUnionFind,
    v_h: i64,
    e_h: i64,
    missing: usize,
    min_vertex: usize,
    min_step: f64,
    best: Option<(Cost, Vec<usize>, usize)>,
    nodes: u64,
    max_nodes: u64,
    start: usize,
}

impl<'a> Search<'a> {
    fn components(&self) -> i64 {
        self.uf.components() as i64 - (self.mesh.num_vertices() as i64 - self.v_h)
    }

    fn add_vertex(&mut self, v: usize) {
        if self.in_vertex[v] == 0 {
            self.v_h += 1;
            self.h_vertices.push(v);
            if self.required[v] {
                self.missing -= 1;
            }
        }
        self.in_vertex[v] += 1;
    }

    fn remove_vertex(&mut self, v: usize) {
        self.in_vertex[v] -= 1;
        if self.in_vertex[v] == 0 {
            self.v_h -= 1;
            self.h_vertices.pop();
            if self.required[v] {
                self.missing += 1;
            }
        }
    }

    fn add_edge(&mut self, e: usize) {
        let [a, b] = self.mesh.edge(e);
        self.add_vertex(a);
        self.add_vertex(b);
        self.uf.union(a, b);
        self.in_edge[e] = true;
        self.e_h += 1;
    }

    fn remove_edge(&mut self, e: usize) {
        let [a, b] = self.mesh.edge(e);
        self.in_edge[e] = false;
        self.e_h -= 1;
        self.uf.rollback();
        self.remove_vertex(b);
        self.remove_vertex(a);
    }

    fn faces_connected(&self) -> bool {
        self.mesh.face_components(|e| self.in_edge[e]).1 == 1
    }

    fn closes_cycle(&self, e: usize) -> bool {
        let [a, b] = self.mesh.edge(e);
        self.in_vertex[a] > 0 && self.in_vertex[b] > 0 && self.uf.find(a) == self.uf.find(b)
    }

    /// Cheapest edge touching `H` that may still be added.
    fn next_edge(&self, rank_full: bool) -> Option<usize> {
        let mut best: Option<(Cost, usize)> = None;
        for &v in &self.h_vertices {
            for &e in self.mesh.vertex_edges(v) {
                if self.in_edge[e] || self.excluded[e] || self.mesh.is_boundary_edge(e) {
                    continue;
                }
                let w = self.mesh.other_endpoint(e, v);
                if w < self.min_vertex || (rank_full && self.closes_cycle(e)) {
                    continue;
                }
                let key = (self.costs.cost(e), e);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        best.map(|b| b.1)
    }

    fn run(&mut self, cost: Cost) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::TooLarge(format!("exact search exceeded {} nodes", self.max_nodes)));
        }
        let comps = self.components();
        let needed = (comps - 1).max(0) as usize + self.missing;
        let bound = Cost::new(cost.base + needed as f64 * self.min_step, cost.eps);
        if self.best.as_ref().is_some_and(|b| bound >= b.0) {
            return Ok(());
        }
        let rank = self.e_h - self.v_h + comps;
        if rank == self.target_rank && comps == 1 && self.missing == 0 {
            let edges =
                (0..self.in_edge.len()).filter(|&e| self.in_edge[e] && !self.mesh.is_boundary_edge(e)).collect();
            self.best = Some((cost, edges, self.start));
            return Ok(());
        }
        let Some(e) = self.next_edge(rank == self.target_rank) else { return Ok(()) };

        let closing = self.closes_cycle(e);
        self.add_edge(e);
        if !closing || self.faces_connected() {
            self.run(cost + self.costs.cost(e))?;
        }
        self.remove_edge(e);

        self.excluded[e] = true;
        let r = self.run(cost);
        self.excluded[e] = false;
        r
    }
}

/// Minimum cut graph of `mesh` under `costs`, for meshes within the edge
/// budget.
pub fn exact_min_cut_graph(mesh: &Mesh, costs: &PerturbedWeights, budget: Budget) -> Result<CutGraph> {
    Ok(exact_min_cut_graph_with(mesh, costs, &[], budget, None)?.cut_graph)
}

/// Minimum-cost edge set whose removal, together with the `required`
/// vertices, leaves a disk. `warm` seeds the incumbent with a known cut
/// graph.
pub fn exact_min_cut_graph_with(
    mesh: &Mesh,
    costs: &PerturbedWeights,
    required: &[usize],
    budget: Budget,
    warm: Option<&CutGraph>,
) -> Result<ExactResult> {
    if mesh.num_edges() > budget.max_edges {
        return Err(Error::BudgetExceeded { edges: mesh.num_edges(), max: budget.max_edges });
    }
    let n = mesh.num_vertices();
    let mut req = vec![false; n];
    for &v in required {
        req[v] = true;
    }
    let boundary: Vec<usize> = (0..mesh.num_edges()).filter(|&e| mesh.is_boundary_edge(e)).collect();
    let min_step = (0..mesh.num_edges())
        .filter(|&e| !mesh.is_boundary_edge(e))
        .map(|e| costs.base[e])
        .fold(f64::INFINITY, f64::min);
    let mut s = Search {
        mesh,
        costs,
        missing: required.iter().collect::<BTreeSet<_>>().len(),
        required: req,
        target_rank: 2 - mesh.euler_characteristic(),
        in_edge: vec![false; mesh.num_edges()],
        excluded: vec![false; mesh.num_edges()],
        in_vertex: vec![0; n],
        h_vertices: Vec::new(),
        uf: RollbackUnionFind::new(n),
        v_h: 0,
        e_h: 0,
        min_vertex: 0,
        min_step: if min_step.is_finite() { min_step } else { 0.0 },
        best: None,
        nodes: 0,
        max_nodes: budget.max_nodes,
        start: 0,
    };
    if let Some(w) = warm {
        let mut with_required = w.clone();
        with_required.vertices.extend(required.iter().copied());
        if topology::is_cut_graph(mesh, &with_required) {
            let edges: Vec<usize> = w.edges.iter().copied().filter(|&e| !mesh.is_boundary_edge(e)).collect();
            let start = w.vertices.iter().next().copied().unwrap_or(0);
            s.best = Some((costs.path_cost(&edges), edges, start));
        }
    }

    let seeded = !boundary.is_empty() || !required.is_empty();
    if seeded {
        for &e in &boundary {
            s.add_edge(e);
        }
        for &v in required {
            s.add_vertex(v);
        }
        s.run(Cost::ZERO)?;
    } else {
        // the cut graph's smallest vertex is `u`
        for u in 0..n {
            s.min_vertex = u;
            s.start = u;
            s.add_vertex(u);
            s.run(Cost::ZERO)?;
            s.remove_vertex(u);
        }
    }

    let (cost, edges, start) = s.best.ok_or_else(|| Error::Input("no cut graph found".into()))?;
    let cut_graph = if edges.is_empty() {
        let v = if let Some(&r) = required.iter().min() {
            r
        } else if let Some(&e) = boundary.first() {
            let on = mesh.boundary_vertices();
            (0..n).find(|&v| on[v]).unwrap_or(mesh.edge(e)[0])
        } else {
            start
        };
        let mut g = CutGraph::vertex_only(v);
        g.vertices.extend(required.iter().copied());
        g
    } else {
        CutGraph::new(mesh, required.iter().copied(), edges)
    };
    Ok(ExactResult { cut_graph, cost, nodes: s.nodes })
}

/// Minimum cut graph by checking every subset of interior edges, in order
/// of size, with no pruning beyond the incumbent weight.
pub fn exhaustive_min_cut_graph(mesh: &Mesh, costs: &PerturbedWeights) -> Result<CutGraph> {
    let interior: Vec<usize> = (0..mesh.num_edges()).filter(|&e| !mesh.is_boundary_edge(e)).collect();
    if interior.len() > 22 {
        return Err(Error::BudgetExceeded { edges: interior.len(), max: 22 });
    }
    let on_boundary = mesh.boundary_vertices();
    let base_vertex = (0..mesh.num_vertices()).find(|&v| on_boundary[v]).unwrap_or(0);
    let mut best: Option<(Cost, CutGraph)> = None;
    for mask in 0u32..(1u32 << interior.len()) {
        let edges: Vec<usize> = (0..interior.len()).filter(|&i| mask >> i & 1 == 1).map(|i| interior[i]).collect();
        let c = costs.path_cost(&edges);
        if best.as_ref().is_some_and(|b| c >= b.0) {
            continue;
        }
        let g = if edges.is_empty() { CutGraph::vertex_only(base_vertex) } else { CutGraph::from_edges(mesh, edges) };
        if topology::is_cut_graph(mesh, &g) {
            best = Some((c, g));
        }
    }
    best.map(|b| b.1).ok_or_else(|| Error::Input("no cut graph found".into()))
}

/// Outcome of checking every cut path of a cut graph.
#[derive(Clone, Debug)]
pub struct TightCheck {
    pub arcs_checked: usize,
    /// Cut paths (as edge lists) whose halves are not shortest paths.
    pub failures: Vec<Vec<usize>>,
}

impl TightCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Relative slack allowed when comparing path lengths.
pub const TIGHT_TOLERANCE: f64 = 1e-9;

/// Checks that each cut path of the reduced cut graph splits at its weight
/// midpoint into two shortest paths. Distances treat boundary edges as
/// free, since travelling along the boundary never costs a cut graph
/// anything.
pub fn verify_tight_decomposition(mesh: &Mesh, g: &CutGraph) -> Result<TightCheck> {
    let reduced = topology::reduce(mesh, g)?;
    let base: Vec<f64> =
        (0..mesh.num_edges()).map(|e| if mesh.is_boundary_edge(e) { 0.0 } else { mesh.weight(e) }).collect();
    let metric = PerturbedWeights { base: base.clone(), rank: vec![0; mesh.num_edges()], seed: 0 };
    let mut check = TightCheck { arcs_checked: 0, failures: Vec::new() };
    for arc in reduced.cut_arcs() {
        check.arcs_checked += 1;
        let total = arc.edges.iter().map(|&e| base[e]).fold(0.0, |a, w| a + w);
        let half = total / 2.0;
        // locate the midpoint: edge index and offset from its first vertex
        let mut acc = 0.0;
        let mut k = 0;
        while k + 1 < arc.edges.len() && acc + base[arc.edges[k]] < half {
            acc += base[arc.edges[k]];
            k += 1;
        }
        let (x, y) = (arc.vertices[k], arc.vertices[k + 1]);
        let w = base[arc.edges[k]];
        let t = (half - acc).clamp(0.0, w);
        let tol = TIGHT_TOLERANCE * total.max(1.0);
        let mut ok = true;
        for end in [arc.from, arc.to] {
            let spt = ShortestPathTree::new(mesh, &metric, &[end]);
            let d = |v: usize| spt.dist[v].map_or(f64::INFINITY, |c| c.base);
            // the midpoint sits t past x on the edge xy
            let to_mid = (d(x) + t).min(d(y) + (w - t));
            if half > to_mid + tol {
                ok = false;
            }
        }
        if !ok {
            check.failures.push(arc.edges.clone());
        }
    }
    Ok(check)
}
