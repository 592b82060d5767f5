//! Cycle classification and shortest essential / non-separating cycles.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{Cost, Mesh, PerturbedWeights};
use crate::paths::ShortestPathTree;
use crate::topology::{self, SkeletonPath, SurfaceInvariants};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CycleKind {
    Trivial,
    EssentialSeparating,
    NonSeparating,
}

impl CycleKind {
    pub fn is_essential(self) -> bool {
        self != CycleKind::Trivial
    }
}

/// Which cycles a search is after.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Essential,
    NonSeparating,
}

impl Target {
    fn accepts(self, kind: CycleKind) -> bool {
        match self {
            Target::Essential => kind.is_essential(),
            Target::NonSeparating => kind == CycleKind::NonSeparating,
        }
    }
}

/// A simple closed walk: `edges[i]` joins `vertices[i]` and
/// `vertices[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclePath {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub weight: f64,
    pub kind: CycleKind,
}

impl CyclePath {
    pub fn cost(&self, costs: &PerturbedWeights) -> Cost {
        costs.path_cost(&self.edges)
    }

    pub fn to_json(&self, mesh: &Mesh) -> CyclePathJson {
        CyclePathJson {
            edges: self.edges.iter().map(|&e| mesh.edge(e)).collect(),
            weight: self.weight,
            kind: self.kind,
        }
    }

    /// Ordering key: perturbed cost, then the sorted edge ids.
    fn key(&self, costs: &PerturbedWeights) -> (Cost, Vec<usize>) {
        let mut ids = self.edges.clone();
        ids.sort_unstable();
        (self.cost(costs), ids)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclePathJson {
    pub edges: Vec<[usize; 2]>,
    pub weight: f64,
    pub kind: CycleKind,
}

/// Vertex sequence of a closed walk given by consecutive edges; fails unless
/// the walk is closed and simple.
pub fn cycle_vertices(mesh: &Mesh, edges: &[usize]) -> Result<Vec<usize>> {
    let bad = |msg: &str| Err(Error::NotSimpleCycle(msg.into()));
    if edges.len() < 2 {
        return bad("fewer than two edges");
    }
    if let Some(&e) = edges.iter().find(|&&e| e >= mesh.num_edges()) {
        return Err(Error::NotSimpleCycle(format!("edge id {e} out of range")));
    }
    let [a, b] = mesh.edge(edges[0]);
    let [c, d] = mesh.edge(edges[1]);
    let start = if b == c || b == d {
        a
    } else if a == c || a == d {
        b
    } else {
        return bad("first two edges do not share a vertex");
    };
    let mut vertices = vec![start];
    let mut at = start;
    for (i, &e) in edges.iter().enumerate() {
        let [p, q] = mesh.edge(e);
        at = if p == at {
            q
        } else if q == at {
            p
        } else {
            return Err(Error::NotSimpleCycle(format!("edge {i} does not continue the walk")));
        };
        if i + 1 < edges.len() {
            vertices.push(at);
        }
    }
    if at != start {
        return bad("walk is not closed");
    }
    let mut sorted = vertices.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return bad("walk repeats a vertex");
    }
    Ok(vertices)
}

/// Outcome of classifying a cycle, with the side that the searches may
/// discard when the cycle is trivial.
struct Classified {
    kind: CycleKind,
    trivial_side: Vec<usize>,
}

/// Classifies cycles of one mesh. Boundary circles are capped by cones so
/// that every cycle, including those running along the boundary, is judged
/// on a closed surface with marked apexes: a separating cycle is trivial
/// iff one side is a disk holding at most one apex.
pub struct Classifier {
    coned: topology::Coned,
    pub invariants: SurfaceInvariants,
    chi: i64,
}

impl Classifier {
    pub fn new(mesh: &Mesh) -> Classifier {
        let coned = topology::cone_boundaries(mesh);
        let chi = coned.mesh.euler_characteristic();
        Classifier { invariants: topology::invariants(mesh), coned, chi }
    }

    /// Kind of a simple cycle given as mesh edge ids; no validation.
    pub fn kind(&self, edges: &[usize]) -> CycleKind {
        self.classify(edges, false).kind
    }

    fn classify(&self, edges: &[usize], want_side: bool) -> Classified {
        let mesh = &self.coned.mesh;
        let mut in_gamma = vec![false; mesh.num_edges()];
        for &e in edges {
            in_gamma[e] = true;
        }

        // two face searches from the two sides of one cycle edge, in lockstep
        let sides = mesh.edge_sides(edges[0]);
        let nonsep = Classified { kind: CycleKind::NonSeparating, trivial_side: Vec::new() };
        let mut mark = vec![0u8; mesh.num_faces()];
        let mut queues = [VecDeque::from([sides[0].face]), VecDeque::from([sides[1].face])];
        let mut grown: [Vec<usize>; 2] = [vec![sides[0].face], vec![sides[1].face]];
        mark[sides[0].face] = 1;
        if mark[sides[1].face] == 1 {
            return nonsep;
        }
        mark[sides[1].face] = 2;
        let small = 'search: loop {
            for s in 0..2 {
                let Some(f) = queues[s].pop_front() else { break 'search s };
                for &e in mesh.face_edges(f) {
                    if in_gamma[e] {
                        continue;
                    }
                    for side in mesh.edge_sides(e) {
                        match mark[side.face] {
                            0 => {
                                mark[side.face] = s as u8 + 1;
                                queues[s].push_back(side.face);
                                grown[s].push(side.face);
                            }
                            m if m as usize != s + 1 => return nonsep,
                            _ => {}
                        }
                    }
                }
            }
        };

        let c_faces = std::mem::take(&mut grown[small]);
        let piece = topology::glue_faces(mesh, &c_faces, |e| in_gamma[e]);
        let chi_c = piece.mesh.euler_characteristic();
        let apex_c = self.coned.apexes.iter().filter(|&&a| piece.vertex_origin.contains(&a)).count();
        let apex_total = self.coned.apexes.len();
        let small_trivial = chi_c == 1 && apex_c <= 1;
        let other_trivial = self.chi - chi_c == 1 && apex_total - apex_c <= 1;
        if !small_trivial && !other_trivial {
            return Classified { kind: CycleKind::EssentialSeparating, trivial_side: Vec::new() };
        }
        let trivial_side = if !want_side {
            Vec::new()
        } else if small_trivial {
            c_faces
        } else {
            (0..mesh.num_faces()).filter(|&f| mark[f] as usize != small + 1).collect()
        };
        Classified { kind: CycleKind::Trivial, trivial_side }
    }
}

/// Classifies a simple cycle given as consecutive edges.
pub fn classify(mesh: &Mesh, edges: &[usize]) -> Result<CycleKind> {
    cycle_vertices(mesh, edges)?;
    Ok(Classifier::new(mesh).kind(edges))
}

pub fn cycle_path(mesh: &Mesh, edges: Vec<usize>) -> Result<CyclePath> {
    let vertices = cycle_vertices(mesh, &edges)?;
    let kind = Classifier::new(mesh).kind(&edges);
    let weight = edges.iter().map(|&e| mesh.weight(e)).fold(0.0, |a, w| a + w);
    Ok(CyclePath { vertices, edges, weight, kind })
}

/// True iff the surface has no cycle of the target kind at all.
fn none_exist(inv: &SurfaceInvariants, target: Target) -> bool {
    match target {
        Target::NonSeparating => inv.genus == 0,
        Target::Essential => inv.genus == 0 && inv.boundaries <= 3,
    }
}

/// Shortest cycle of the target kind among those passing through `path`
/// after contracting it to a point; the returned cycle is lifted back by
/// the subpath of `path` between the two ends of the contracted cycle.
///
/// Candidates are the non-tree edges of the shortest-path forest grown from
/// the path, taken in order of contracted length. A trivial candidate
/// removes its trivial side from further consideration.
pub fn shortest_through_path(
    mesh: &Mesh,
    costs: &PerturbedWeights,
    classifier: &Classifier,
    path: &SkeletonPath,
    target: Target,
) -> Option<CyclePath> {
    if none_exist(&classifier.invariants, target) {
        return None;
    }
    let n = mesh.num_vertices();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in path.vertices.iter().enumerate() {
        pos[v] = i;
    }
    let is_source = |v: usize| pos[v] != usize::MAX;
    let spt = ShortestPathTree::new(mesh, costs, &path.vertices);

    let mut events: Vec<(Cost, usize)> = Vec::new();
    for e in 0..mesh.num_edges() {
        let [v, w] = mesh.edge(e);
        if (is_source(v) && is_source(w)) || spt.is_tree_edge(mesh, e) {
            continue;
        }
        if let (Some(dv), Some(dw)) = (spt.dist[v], spt.dist[w]) {
            events.push((dv + costs.cost(e) + dw, e));
        }
    }
    events.sort_unstable();

    let mut discarded = vec![false; n];
    let mut on_cycle = vec![false; n];
    for &(_, e) in &events {
        let Some((vertices, edges)) = lift(mesh, &spt, path, &pos, e, &mut on_cycle) else { continue };
        if vertices.iter().any(|&x| discarded[x]) {
            continue;
        }
        let c = classifier.classify(&edges, true);
        if target.accepts(c.kind) {
            let weight = edges.iter().map(|&x| mesh.weight(x)).fold(0.0, |a, w| a + w);
            return Some(CyclePath { vertices, edges, weight, kind: c.kind });
        }
        if c.kind == CycleKind::Trivial {
            for &f in &c.trivial_side {
                for &x in classifier.coned.mesh.face(f) {
                    if x < n && !is_source(x) {
                        discarded[x] = true;
                    }
                }
            }
            for &x in &vertices {
                discarded[x] = false;
            }
        }
    }
    None
}

/// Closes the non-tree edge `e` into a cycle through the source path, or
/// `None` if the composed walk is not simple.
fn lift(
    mesh: &Mesh,
    spt: &ShortestPathTree,
    path: &SkeletonPath,
    pos: &[usize],
    e: usize,
    on_cycle: &mut [bool],
) -> Option<(Vec<usize>, Vec<usize>)> {
    let [v, w] = mesh.edge(e);
    let (ra, rb) = (spt.root[v], spt.root[w]);
    let mut vertices = spt.path_vertices(mesh, v);
    vertices.reverse();
    let mut edges = spt.path_edges(mesh, v);
    edges.reverse();
    edges.push(e);
    let wv = spt.path_vertices(mesh, w);
    edges.extend(spt.path_edges(mesh, w));

    let mut simple = true;
    for &x in &vertices {
        on_cycle[x] = true;
    }
    let tail = if ra == rb { &wv[..wv.len() - 1] } else { &wv[..] };
    for &x in tail {
        if on_cycle[x] {
            simple = false;
        }
        on_cycle[x] = true;
    }
    vertices.extend_from_slice(tail);
    if simple && ra != rb {
        // walk back along the source path from rb to ra
        let (i, j) = (pos[rb], pos[ra]);
        if i < j {
            edges.extend_from_slice(&path.edges[i..j]);
            vertices.extend_from_slice(&path.vertices[i + 1..j]);
        } else {
            edges.extend(path.edges[j..i].iter().rev());
            vertices.extend(path.vertices[j + 1..i].iter().rev());
        }
    }
    for &x in &vertices {
        on_cycle[x] = false;
    }
    for &x in &wv {
        on_cycle[x] = false;
    }
    (simple && edges.len() >= 2).then_some((vertices, edges))
}

fn single(u: usize) -> SkeletonPath {
    SkeletonPath { vertices: vec![u], edges: Vec::new() }
}

pub fn shortest_essential_through(mesh: &Mesh, costs: &PerturbedWeights, u: usize) -> Option<CyclePath> {
    shortest_through_path(mesh, costs, &Classifier::new(mesh), &single(u), Target::Essential)
}

pub fn shortest_nonseparating_through(mesh: &Mesh, costs: &PerturbedWeights, u: usize) -> Option<CyclePath> {
    shortest_through_path(mesh, costs, &Classifier::new(mesh), &single(u), Target::NonSeparating)
}

fn best_of(costs: &PerturbedWeights, candidates: impl Iterator<Item = Option<CyclePath>>) -> Option<CyclePath> {
    let mut best: Option<(Cost, Vec<usize>, CyclePath)> = None;
    for c in candidates.flatten() {
        let (k, ids) = c.key(costs);
        if best.as_ref().is_none_or(|(bk, bids, _)| (k, &ids) < (*bk, bids)) {
            best = Some((k, ids, c));
        }
    }
    best.map(|b| b.2)
}

/// Shortest cycle of the target kind over the whole mesh.
pub fn shortest_cycle(mesh: &Mesh, costs: &PerturbedWeights, target: Target) -> Option<CyclePath> {
    let cl = Classifier::new(mesh);
    if none_exist(&cl.invariants, target) {
        return None;
    }
    best_of(costs, (0..mesh.num_vertices()).map(|u| shortest_through_path(mesh, costs, &cl, &single(u), target)))
}

pub fn shortest_essential(mesh: &Mesh, costs: &PerturbedWeights) -> Option<CyclePath> {
    shortest_cycle(mesh, costs, Target::Essential)
}

pub fn shortest_nonseparating(mesh: &Mesh, costs: &PerturbedWeights) -> Option<CyclePath> {
    shortest_cycle(mesh, costs, Target::NonSeparating)
}

/// A cycle of the target kind at most twice as long as the shortest one,
/// found by searching through each root path of a tree-cotree cut graph.
pub fn approx_shortest_cycle(mesh: &Mesh, costs: &PerturbedWeights, target: Target) -> Result<Option<CyclePath>> {
    if mesh.has_boundary() {
        return Err(Error::HasBoundary);
    }
    let cl = Classifier::new(mesh);
    if none_exist(&cl.invariants, target) {
        return Ok(None);
    }
    let tc = topology::tree_cotree_cut_graph(mesh, costs, 0)?;
    Ok(best_of(costs, tc.paths.iter().map(|p| shortest_through_path(mesh, costs, &cl, p, target))))
}
