//! Dijkstra shortest-path trees under perturbed costs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::mesh::{Cost, Mesh, PerturbedWeights};

/// Multi-source shortest-path forest. Every source is its own root at
/// distance zero; equal tentative distances are resolved by vertex id.
#[derive(Clone, Debug)]
pub struct ShortestPathTree {
    pub dist: Vec<Option<Cost>>,
    pub parent_edge: Vec<Option<usize>>,
    pub root: Vec<usize>,
}

impl ShortestPathTree {
    pub fn new(mesh: &Mesh, costs: &PerturbedWeights, sources: &[usize]) -> Self {
        Self::with_filter(mesh, costs, sources, |_| true)
    }

    /// Like [`ShortestPathTree::new`] but only relaxes edges accepted by `usable`.
    pub fn with_filter(
        mesh: &Mesh,
        costs: &PerturbedWeights,
        sources: &[usize],
        usable: impl Fn(usize) -> bool,
    ) -> Self {
        let n = mesh.num_vertices();
        let mut dist: Vec<Option<Cost>> = vec![None; n];
        let mut parent_edge = vec![None; n];
        let mut root = vec![usize::MAX; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        for &s in sources {
            dist[s] = Some(Cost::ZERO);
            root[s] = s;
            heap.push(Reverse((Cost::ZERO, s)));
        }
        while let Some(Reverse((d, v))) = heap.pop() {
            if done[v] {
                continue;
            }
            done[v] = true;
            for &e in mesh.vertex_edges(v) {
                if !usable(e) {
                    continue;
                }
                let w = mesh.other_endpoint(e, v);
                if done[w] {
                    continue;
                }
                let nd = d + costs.cost(e);
                if dist[w].is_none_or(|old| nd < old) {
                    dist[w] = Some(nd);
                    parent_edge[w] = Some(e);
                    root[w] = root[v];
                    heap.push(Reverse((nd, w)));
                }
            }
        }
        ShortestPathTree { dist, parent_edge, root }
    }

    pub fn reached(&self, v: usize) -> bool {
        self.dist[v].is_some()
    }

    /// Vertices from `v` up to its root, inclusive.
    pub fn path_vertices(&self, mesh: &Mesh, mut v: usize) -> Vec<usize> {
        let mut out = vec![v];
        while let Some(e) = self.parent_edge[v] {
            v = mesh.other_endpoint(e, v);
            out.push(v);
        }
        out
    }

    /// Tree edges from `v` up to its root, in order.
    pub fn path_edges(&self, mesh: &Mesh, mut v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while let Some(e) = self.parent_edge[v] {
            out.push(e);
            v = mesh.other_endpoint(e, v);
        }
        out
    }

    pub fn is_tree_edge(&self, mesh: &Mesh, e: usize) -> bool {
        let [a, b] = mesh.edge(e);
        self.parent_edge[a] == Some(e) || self.parent_edge[b] == Some(e)
    }
}
