//! Punctured manifolds and minimum puncture-spanning trees.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::mesh::{Cost, Mesh, PerturbedWeights};
use crate::paths::ShortestPathTree;
use crate::topology::{self, CutGraph};
use crate::unionfind::UnionFind;

/// A boundaryless surface with marked puncture vertices.
///
/// Built from a mesh by capping each boundary walk with a cone whose apex
/// is the puncture. Spokes and the capped boundary edges cost nothing, so
/// reaching any vertex of a boundary walk is the same as reaching its
/// puncture.
#[derive(Clone, Debug)]
pub struct PuncturedManifold {
    pub mesh: Mesh,
    pub punctures: Vec<usize>,
    /// Search costs on `mesh`.
    pub costs: PerturbedWeights,
    /// Original edge of each edge; `None` for spokes.
    pub edge_origin: Vec<Option<usize>>,
    /// Original vertex of each vertex; `None` for punctures.
    pub vertex_origin: Vec<Option<usize>>,
    /// Original boundary walk (edge ids) collapsed into each puncture.
    pub walks: Vec<Vec<usize>>,
}

pub fn collapse_boundaries(mesh: &Mesh, costs: &PerturbedWeights) -> PuncturedManifold {
    let coned = topology::cone_boundaries(mesh);
    let n_edges = coned.mesh.num_edges();
    let mut base = vec![0.0; n_edges];
    let mut rank = vec![0; n_edges];
    for e in 0..mesh.num_edges() {
        base[e] = if mesh.is_boundary_edge(e) { 0.0 } else { costs.base[e] };
        rank[e] = costs.rank[e];
    }
    let edge_origin = (0..n_edges).map(|e| (e < mesh.num_edges()).then_some(e)).collect();
    let vertex_origin = (0..coned.mesh.num_vertices()).map(|v| (v < mesh.num_vertices()).then_some(v)).collect();
    let walks = coned.walks.iter().map(|w| w.iter().map(|s| s.edge).collect()).collect();
    PuncturedManifold {
        punctures: coned.apexes.clone(),
        costs: PerturbedWeights { base, rank, seed: costs.seed },
        mesh: coned.mesh,
        edge_origin,
        vertex_origin,
        walks,
    }
}

impl PuncturedManifold {
    /// Maps an edge set of the punctured surface back to original edges,
    /// dropping spokes.
    pub fn original_edges(&self, edges: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        edges.into_iter().filter_map(|e| self.edge_origin[e]).collect()
    }
}

/// A tree of mesh edges spanning the punctures.
#[derive(Clone, Debug)]
pub struct PunctureTree {
    /// Edges of the punctured surface, spokes included.
    pub edges: BTreeSet<usize>,
    /// Weight of the minimum spanning tree of the punctures under the
    /// shortest-path metric.
    pub mst_weight: f64,
    /// Weight of the union of the realising paths; shared path prefixes
    /// make it at most `mst_weight`.
    pub tree_weight: f64,
    pub mst_cost: Cost,
}

/// Multi-source wavefronts from every puncture; every edge where two
/// fronts meet is a candidate connection, and Kruskal over the candidates
/// in order of path length yields the minimum spanning tree of the
/// shortest-path metric.
pub fn spanning_tree_of(mesh: &Mesh, costs: &PerturbedWeights, punctures: &[usize]) -> Result<PunctureTree> {
    if punctures.is_empty() {
        return Err(Error::NoPunctures);
    }
    let spt = ShortestPathTree::new(mesh, costs, punctures);
    let mut index = vec![usize::MAX; mesh.num_vertices()];
    for (i, &p) in punctures.iter().enumerate() {
        index[p] = i;
    }
    let mut collisions: Vec<(Cost, usize)> = Vec::new();
    for e in 0..mesh.num_edges() {
        let [v, w] = mesh.edge(e);
        if spt.root[v] == usize::MAX || spt.root[w] == usize::MAX || spt.root[v] == spt.root[w] {
            continue;
        }
        collisions.push((spt.dist[v].unwrap() + costs.cost(e) + spt.dist[w].unwrap(), e));
    }
    collisions.sort_unstable();
    let mut uf = UnionFind::new(punctures.len());
    let mut edges = BTreeSet::new();
    let mut mst_cost = Cost::ZERO;
    let mut joined = 1;
    for (c, e) in collisions {
        let [v, w] = mesh.edge(e);
        if uf.union(index[spt.root[v]], index[spt.root[w]]) {
            mst_cost += c;
            edges.insert(e);
            edges.extend(spt.path_edges(mesh, v));
            edges.extend(spt.path_edges(mesh, w));
            joined += 1;
            if joined == punctures.len() {
                break;
            }
        }
    }
    if joined < punctures.len() {
        return Err(Error::Disconnected);
    }
    let tree_weight = edges.iter().map(|&e| costs.base[e]).fold(0.0, |a, w| a + w);
    Ok(PunctureTree { edges, mst_weight: mst_cost.base, tree_weight, mst_cost })
}

pub fn puncture_spanning_tree(pm: &PuncturedManifold) -> Result<PunctureTree> {
    spanning_tree_of(&pm.mesh, &pm.costs, &pm.punctures)
}

/// The tree as a cut graph of the original mesh. A single puncture yields
/// one vertex of its boundary walk.
pub fn tree_cut_graph(original: &Mesh, pm: &PuncturedManifold, tree: &PunctureTree) -> CutGraph {
    let edges = pm.original_edges(tree.edges.iter().copied());
    let interior: Vec<usize> = edges.into_iter().filter(|&e| !original.is_boundary_edge(e)).collect();
    if interior.is_empty() {
        let v = pm.walks.first().and_then(|w| w.first()).map(|&e| original.edge(e)[0]).unwrap_or(0);
        return CutGraph::vertex_only(v);
    }
    CutGraph::from_edges(original, interior)
}

/// Largest number of Steiner-point subsets the brute-force check will try.
pub const STEINER_BRUTE_LIMIT: u128 = 2_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Exact minimum Steiner tree weight of the punctures by brute force: the
/// metric MST over the punctures plus every set of at most `|P| - 2` other
/// vertices.
pub fn brute_force_steiner(pm: &PuncturedManifold) -> Result<f64> {
    let n = pm.mesh.num_vertices();
    let k = pm.punctures.len();
    let extra = k.saturating_sub(2);
    let others: Vec<usize> = (0..n).filter(|v| !pm.punctures.contains(v)).collect();
    let trials: u128 = (0..=extra).map(|i| binomial(others.len(), i)).sum();
    if trials > STEINER_BRUTE_LIMIT || n > 2000 {
        return Err(Error::TooLarge(format!("{trials} Steiner subsets over {n} vertices")));
    }
    let dist: Vec<Vec<f64>> = pm
        .punctures
        .iter()
        .chain(&others)
        .map(|&s| {
            let spt = ShortestPathTree::new(&pm.mesh, &pm.costs, &[s]);
            spt.dist.iter().map(|d| d.map_or(f64::INFINITY, |c| c.base)).collect()
        })
        .collect();
    // rows are indexed by position in punctures ++ others
    let row = |v: usize| -> usize {
        pm.punctures.iter().position(|&p| p == v).unwrap_or_else(|| k + others.iter().position(|&o| o == v).unwrap())
    };
    let rows: Vec<usize> = (0..n).map(row).collect();
    let mst = |nodes: &[usize]| -> f64 {
        let mut best = vec![f64::INFINITY; nodes.len()];
        let mut used = vec![false; nodes.len()];
        best[0] = 0.0;
        let mut total = 0.0;
        for _ in 0..nodes.len() {
            let mut i = usize::MAX;
            for j in 0..nodes.len() {
                if !used[j] && (i == usize::MAX || best[j] < best[i]) {
                    i = j;
                }
            }
            used[i] = true;
            total += best[i];
            for j in 0..nodes.len() {
                let d = dist[rows[nodes[i]]][nodes[j]];
                if !used[j] && d < best[j] {
                    best[j] = d;
                }
            }
        }
        total
    };
    let mut best = mst(&pm.punctures);
    let mut nodes = pm.punctures.clone();
    fn rec(
        others: &[usize],
        from: usize,
        left: usize,
        nodes: &mut Vec<usize>,
        best: &mut f64,
        mst: &dyn Fn(&[usize]) -> f64,
    ) {
        if left == 0 {
            return;
        }
        for i in from..others.len() {
            nodes.push(others[i]);
            *best = best.min(mst(nodes));
            rec(others, i + 1, left - 1, nodes, best, mst);
            nodes.pop();
        }
    }
    rec(&others, 0, extra, &mut nodes, &mut best, &mst);
    Ok(best)
}

/// Ratio of the spanning-tree weight to the exact Steiner weight; at most 2.
pub fn steiner_lower_check(pm: &PuncturedManifold, tree: &PunctureTree) -> Result<f64> {
    let steiner = brute_force_steiner(pm)?;
    Ok(if steiner == 0.0 { 1.0 } else { tree.mst_weight / steiner })
}
