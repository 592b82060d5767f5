//! Greedy approximate minimum cut graph.
//!
//! Boundaries are coned off to punctures, then short cycles are cut one at
//! a time until every piece is a punctured sphere. Each new boundary pair
//! is coned again, so the pieces stay closed. A minimum puncture-spanning
//! tree finishes each sphere, and finally as many cut edges as possible
//! are glued back while the complement stays a single disk.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use crate::cycles::{self, CycleKind, Target};
use crate::error::{Error, Result};
use crate::mesh::{Cost, Mesh, PerturbedWeights};
use crate::punctures;
use crate::topology::{self, CutGraph};
use crate::unionfind::UnionFind;

/// One cycle cut made by the pipeline.
#[derive(Clone, Debug)]
pub struct CycleCut {
    /// Weight of the cycle on the surface it was cut from; edges already
    /// cut earlier count zero.
    pub weight: f64,
    pub kind: CycleKind,
    pub genus_before: i64,
    /// Genus of each piece left by the cut.
    pub genus_after: Vec<i64>,
    /// Original edges of the cycle.
    pub edges: BTreeSet<usize>,
}

#[derive(Clone, Debug)]
pub struct GreedyReport {
    pub cut_graph: CutGraph,
    pub cuts: Vec<CycleCut>,
    /// Original edges cut before regluing.
    pub unreglued: BTreeSet<usize>,
    pub unreglued_weight: f64,
}

/// A closed piece of the surface being cut, with marked punctures.
struct Piece {
    mesh: Mesh,
    costs: PerturbedWeights,
    /// Original edge behind each edge; `None` for spokes.
    origin: Vec<Option<usize>>,
    punctures: Vec<usize>,
}

impl Piece {
    fn genus(&self) -> i64 {
        topology::invariants(&self.mesh).genus
    }

    /// Cuts along a simple cycle and cones the new boundaries. Returns one
    /// piece per component.
    fn cut(&self, cycle: &[usize]) -> Result<Vec<Piece>> {
        let mut on_cycle = vec![false; self.mesh.num_edges()];
        for &e in cycle {
            on_cycle[e] = true;
        }
        let mut cycle_vertex = vec![false; self.mesh.num_vertices()];
        for &e in cycle {
            for v in self.mesh.edge(e) {
                cycle_vertex[v] = true;
            }
        }
        let cut = topology::cut_along_edges(&self.mesh, cycle)?;
        let mut out = Vec::new();
        for part in topology::split_components(&cut.mesh) {
            let coned = topology::cone_boundaries(&part.mesh);
            let m = part.mesh.num_edges();
            let source = |e: usize| cut.edge_origin[part.edge_origin[e]];
            let n_edges = coned.mesh.num_edges();
            let mut base = vec![0.0; n_edges];
            let mut rank = vec![0; n_edges];
            let mut origin = vec![None; n_edges];
            for e in 0..m {
                let s = source(e);
                base[e] = if on_cycle[s] { 0.0 } else { self.costs.base[s] };
                rank[e] = self.costs.rank[s];
                origin[e] = self.origin[s];
            }
            let mut punctures: Vec<usize> = (0..part.mesh.num_vertices())
                .filter(|&v| {
                    let s = cut.vertex_origin[part.vertex_origin[v]];
                    !cycle_vertex[s] && self.punctures.contains(&s)
                })
                .collect();
            punctures.extend(&coned.apexes);
            out.push(Piece {
                costs: PerturbedWeights { base, rank, seed: self.costs.seed },
                mesh: coned.mesh,
                origin,
                punctures,
            });
        }
        Ok(out)
    }
}

/// Greedy cut graph with default tie-breaking by `seed`.
pub fn approx_min_cut_graph(mesh: &Mesh, seed: u64, kind: Target) -> Result<CutGraph> {
    Ok(approx_min_cut_graph_report(mesh, seed, kind)?.cut_graph)
}

pub fn approx_min_cut_graph_report(mesh: &Mesh, seed: u64, kind: Target) -> Result<GreedyReport> {
    let costs = mesh.perturb(seed);
    let pm = punctures::collapse_boundaries(mesh, &costs);
    let mut done: Vec<Piece> = Vec::new();
    let mut work = vec![Piece { mesh: pm.mesh, costs: pm.costs, origin: pm.edge_origin, punctures: pm.punctures }];
    let mut cuts = Vec::new();
    let mut cut_set: BTreeSet<usize> = BTreeSet::new();

    while !work.is_empty() {
        // largest piece first
        let i = (0..work.len()).max_by_key(|&i| (work[i].mesh.complexity(), Reverse(i))).unwrap();
        let piece = work.swap_remove(i);
        let genus = piece.genus();
        if genus == 0 {
            done.push(piece);
            continue;
        }
        let cycle = cycles::approx_shortest_cycle(&piece.mesh, &piece.costs, kind)?
            .ok_or_else(|| Error::Input(format!("no cycle found on a genus {genus} piece")))?;
        let parts = piece.cut(&cycle.edges)?;
        let genus_after: Vec<i64> = parts.iter().map(Piece::genus).collect();
        assert!(
            genus_after.iter().all(|&g| g < genus),
            "cutting an essential cycle must lower the genus of every piece"
        );
        if kind == Target::NonSeparating && topology::is_orientable(&piece.mesh) {
            assert_eq!(genus_after, vec![genus - 1], "non-separating cut must lower the genus by one");
        }
        let edges: BTreeSet<usize> = cycle.edges.iter().filter_map(|&e| piece.origin[e]).collect();
        cut_set.extend(&edges);
        cuts.push(CycleCut {
            weight: cycle.edges.iter().map(|&e| piece.costs.base[e]).fold(0.0, |a, w| a + w),
            kind: cycle.kind,
            genus_before: genus,
            genus_after,
            edges,
        });
        work.extend(parts);
    }

    for piece in &done {
        if piece.punctures.is_empty() {
            continue;
        }
        let tree = punctures::spanning_tree_of(&piece.mesh, &piece.costs, &piece.punctures)?;
        cut_set.extend(tree.edges.iter().filter_map(|&e| piece.origin[e]));
    }
    let unreglued: BTreeSet<usize> = cut_set.into_iter().filter(|&e| !mesh.is_boundary_edge(e)).collect();
    let unreglued_weight = unreglued.iter().map(|&e| mesh.weight(e)).fold(0.0, |a, w| a + w);
    let cut_graph = reglue_with(mesh, &costs, &unreglued, &[])?;
    Ok(GreedyReport { cut_graph, cuts, unreglued, unreglued_weight })
}

/// Glues back a maximum-weight set of cut edges keeping the complement a
/// single disk, then drops dangling edges whose free end is neither on the
/// boundary nor in `keep`. Every component left by `cut_edges` must be a
/// disk.
pub fn reglue(mesh: &Mesh, cut_edges: &BTreeSet<usize>, keep: &[usize]) -> Result<CutGraph> {
    reglue_with(mesh, &PerturbedWeights::unperturbed(mesh), cut_edges, keep)
}

pub fn reglue_with(
    mesh: &Mesh,
    costs: &PerturbedWeights,
    cut_edges: &BTreeSet<usize>,
    keep: &[usize],
) -> Result<CutGraph> {
    let edges: Vec<usize> = cut_edges.iter().copied().filter(|&e| !mesh.is_boundary_edge(e)).collect();
    if edges.is_empty() {
        let on_boundary = mesh.boundary_vertices();
        let v = (0..mesh.num_vertices()).find(|&v| on_boundary[v]).or_else(|| keep.iter().min().copied()).unwrap_or(0);
        let g = CutGraph::vertex_only(v);
        return if topology::is_cut_graph(mesh, &g) { Ok(g) } else { Err(Error::NotDisks) };
    }
    let surgery = topology::cut_along_edges(mesh, &edges)?;
    if !topology::component_invariants(&surgery.mesh).iter().all(|c| c.is_disk()) {
        return Err(Error::NotDisks);
    }
    let mut cut = vec![false; mesh.num_edges()];
    for &e in &edges {
        cut[e] = true;
    }
    let (label, count) = mesh.face_components(|e| cut[e]);
    let mut arcs: Vec<(Reverse<Cost>, usize)> = edges
        .iter()
        .filter(|&&e| {
            let s = mesh.edge_sides(e);
            label[s[0].face] != label[s[1].face]
        })
        .map(|&e| (Reverse(costs.cost(e)), e))
        .collect();
    arcs.sort_unstable();
    let mut uf = UnionFind::new(count);
    let mut remaining: BTreeSet<usize> = edges.iter().copied().collect();
    for (_, e) in arcs {
        let s = mesh.edge_sides(e);
        if uf.union(label[s[0].face], label[s[1].face]) {
            remaining.remove(&e);
        }
    }
    let mut keep_mask = vec![false; mesh.num_vertices()];
    for &v in keep {
        keep_mask[v] = true;
    }
    let pruned = topology::prune_dangling(mesh, &remaining, &keep_mask);
    if pruned.is_empty() {
        return reglue_with(mesh, costs, &pruned, keep);
    }
    let g = CutGraph::new(mesh, keep.iter().copied(), pruned);
    if !topology::is_cut_graph(mesh, &g) {
        return Err(Error::NotCutGraph("regluing did not leave a single disk".into()));
    }
    Ok(g)
}
