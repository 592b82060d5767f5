//! Polyhedral 2-manifold complexes.
//!
//! A [`Mesh`] stores faces as cyclic vertex sequences together with the id of
//! the edge on each face side, so the same structure can represent loaded
//! simplicial meshes and the more general complexes produced by surgery
//! (slits with two edges between the same pair of vertices, cones over
//! boundary circles).

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::ops::{Add, AddAssign};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// A face side: side `index` of `face` runs from corner `index` to corner
/// `index + 1` (cyclically).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Side {
    pub face: usize,
    pub index: usize,
}

#[derive(Clone, Debug)]
pub struct Mesh {
    coords: Vec<[f64; 3]>,
    faces: Vec<Vec<usize>>,
    face_edges: Vec<Vec<usize>>,
    edges: Vec<[usize; 2]>,
    edge_sides: Vec<SmallVec<[Side; 2]>>,
    weights: Vec<f64>,
    vertex_edges: Vec<Vec<usize>>,
}

impl Mesh {
    /// Builds and validates a mesh from polygons given as vertex cycles.
    ///
    /// Edge ids are assigned in order of first appearance while walking the
    /// faces in order. All weights start at 1.
    pub fn from_polygons(coords: Vec<[f64; 3]>, polygons: Vec<Vec<usize>>) -> Result<Mesh> {
        let nv = coords.len();
        let mut seen_faces: HashMap<Vec<usize>, usize> = HashMap::new();
        for (f, poly) in polygons.iter().enumerate() {
            if poly.len() < 3 {
                return Err(Error::InvalidFace { face: f, reason: "fewer than 3 vertices".into() });
            }
            if let Some(&v) = poly.iter().find(|&&v| v >= nv) {
                return Err(Error::InvalidFace { face: f, reason: format!("vertex {v} out of range") });
            }
            let mut key = poly.clone();
            key.sort_unstable();
            if key.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidFace { face: f, reason: "repeated vertex".into() });
            }
            if let Some(&first) = seen_faces.get(&key) {
                return Err(Error::DuplicateFace { face: f, first });
            }
            seen_faces.insert(key, f);
        }

        let mut pair_ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut face_edges = Vec::with_capacity(polygons.len());
        for poly in &polygons {
            let mut fe = Vec::with_capacity(poly.len());
            for i in 0..poly.len() {
                let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
                let key = (a.min(b), a.max(b));
                let id = *pair_ids.entry(key).or_insert_with(|| {
                    edges.push([key.0, key.1]);
                    edges.len() - 1
                });
                fe.push(id);
            }
            face_edges.push(fe);
        }
        let ne = edges.len();
        let mesh = Mesh::assemble(coords, polygons, face_edges, ne, vec![1.0; ne])?;

        for v in 0..nv {
            if mesh.vertex_edges[v].is_empty() {
                return Err(Error::Disconnected);
            }
        }
        mesh.check_manifold_vertices()?;
        mesh.check_cell_complex()?;
        if mesh.component_count() != 1 {
            return Err(Error::Disconnected);
        }
        Ok(mesh)
    }

    /// Builds a complex from faces with explicit per-side edge ids. Edge
    /// endpoints are read off the face sides. Used by surgery, which may
    /// produce parallel edges.
    pub(crate) fn from_parts(
        coords: Vec<[f64; 3]>,
        faces: Vec<Vec<usize>>,
        face_edges: Vec<Vec<usize>>,
        num_edges: usize,
        weights: Vec<f64>,
    ) -> Result<Mesh> {
        let mesh = Mesh::assemble(coords, faces, face_edges, num_edges, weights)?;
        debug_assert!(mesh.check_manifold_vertices().is_ok());
        Ok(mesh)
    }

    fn assemble(
        coords: Vec<[f64; 3]>,
        faces: Vec<Vec<usize>>,
        face_edges: Vec<Vec<usize>>,
        num_edges: usize,
        weights: Vec<f64>,
    ) -> Result<Mesh> {
        assert_eq!(weights.len(), num_edges);
        let mut edges = vec![[usize::MAX; 2]; num_edges];
        let mut edge_sides: Vec<SmallVec<[Side; 2]>> = vec![SmallVec::new(); num_edges];
        for (f, (poly, fe)) in faces.iter().zip(&face_edges).enumerate() {
            assert_eq!(poly.len(), fe.len());
            for (i, &e) in fe.iter().enumerate() {
                let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
                let key = [a.min(b), a.max(b)];
                if edges[e][0] == usize::MAX {
                    edges[e] = key;
                } else if edges[e] != key {
                    return Err(Error::InvalidFace { face: f, reason: format!("edge {e} has inconsistent endpoints") });
                }
                edge_sides[e].push(Side { face: f, index: i });
                if edge_sides[e].len() > 2 {
                    return Err(Error::NonManifoldEdge { u: key[0], v: key[1] });
                }
            }
        }
        if let Some(e) = edges.iter().position(|e| e[0] == usize::MAX) {
            return Err(Error::InvalidFace { face: 0, reason: format!("edge {e} bounds no face") });
        }
        let mut vertex_edges = vec![Vec::new(); coords.len()];
        for (e, &[a, b]) in edges.iter().enumerate() {
            vertex_edges[a].push(e);
            vertex_edges[b].push(e);
        }
        Ok(Mesh { coords, faces, face_edges, edges, edge_sides, weights, vertex_edges })
    }

    /// Each vertex's corners must form a single fan (closed or open).
    fn check_manifold_vertices(&self) -> Result<()> {
        let classes = self.corner_classes(|_| true);
        let mut count = vec![0usize; self.num_vertices()];
        let mut seen = HashSet::new();
        for (f, poly) in self.faces.iter().enumerate() {
            for (i, &v) in poly.iter().enumerate() {
                if seen.insert(classes.class_of(f, i)) {
                    count[v] += 1;
                }
            }
        }
        match count.iter().position(|&c| c > 1) {
            Some(v) => Err(Error::NonManifoldVertex { vertex: v }),
            None => Ok(()),
        }
    }

    /// Two faces may share nothing, one vertex, or one edge (with its two
    /// endpoints).
    fn check_cell_complex(&self) -> Result<()> {
        let mut vertex_faces = vec![Vec::new(); self.num_vertices()];
        for (f, poly) in self.faces.iter().enumerate() {
            for &v in poly {
                vertex_faces[v].push(f);
            }
        }
        let mut shared: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (v, fs) in vertex_faces.iter().enumerate() {
            for (i, &f) in fs.iter().enumerate() {
                for &g in &fs[i + 1..] {
                    shared.entry((f, g)).or_default().push(v);
                }
            }
        }
        for ((f, g), verts) in shared {
            if verts.len() < 2 {
                continue;
            }
            let common: Vec<usize> =
                self.face_edges[f].iter().filter(|e| self.face_edges[g].contains(e)).copied().collect();
            let ok = verts.len() == 2 && common.len() == 1 && {
                let [a, b] = self.edges[common[0]];
                verts.contains(&a) && verts.contains(&b)
            };
            if !ok {
                return Err(Error::NotCellComplex { faces: (f.min(g), f.max(g)) });
            }
        }
        Ok(())
    }

    /// Union-find over face corners, gluing the two corners at each endpoint
    /// of every edge accepted by `glue`.
    pub(crate) fn corner_classes(&self, glue: impl Fn(usize) -> bool) -> CornerClasses {
        let mut offsets = Vec::with_capacity(self.faces.len() + 1);
        let mut total = 0;
        for poly in &self.faces {
            offsets.push(total);
            total += poly.len();
        }
        offsets.push(total);
        let mut uf = UnionFind::new(total);
        for (e, sides) in self.edge_sides.iter().enumerate() {
            if sides.len() != 2 || !glue(e) {
                continue;
            }
            let (s, t) = (sides[0], sides[1]);
            for &v in &self.edges[e] {
                let cs = offsets[s.face] + self.corner_at(s, v);
                let ct = offsets[t.face] + self.corner_at(t, v);
                uf.union(cs, ct);
            }
        }
        CornerClasses { offsets, uf }
    }

    /// Corner index of vertex `v` on face side `s`.
    pub(crate) fn corner_at(&self, s: Side, v: usize) -> usize {
        let poly = &self.faces[s.face];
        if poly[s.index] == v {
            s.index
        } else {
            debug_assert_eq!(poly[(s.index + 1) % poly.len()], v);
            (s.index + 1) % poly.len()
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.coords.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Total number of cells `v + e + f`.
    pub fn complexity(&self) -> usize {
        self.num_vertices() + self.num_edges() + self.num_faces()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    pub fn coords(&self) -> &[[f64; 3]] {
        &self.coords
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    pub fn face_edges(&self, f: usize) -> &[usize] {
        &self.face_edges[f]
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    /// Endpoints of `e`, smaller id first.
    pub fn edge(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    pub fn edge_sides(&self, e: usize) -> &[Side] {
        &self.edge_sides[e]
    }

    pub fn vertex_edges(&self, v: usize) -> &[usize] {
        &self.vertex_edges[v]
    }

    pub fn other_endpoint(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Some edge joining `u` and `v`, preferring the smallest id.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let key = [u.min(v), u.max(v)];
        self.vertex_edges[u].iter().copied().find(|&e| self.edges[e] == key)
    }

    pub fn is_boundary_edge(&self, e: usize) -> bool {
        self.edge_sides[e].len() == 1
    }

    pub fn has_boundary(&self) -> bool {
        self.edge_sides.iter().any(|s| s.len() == 1)
    }

    pub fn boundary_vertices(&self) -> Vec<bool> {
        let mut on = vec![false; self.num_vertices()];
        for (e, s) in self.edge_sides.iter().enumerate() {
            if s.len() == 1 {
                let [a, b] = self.edges[e];
                on[a] = true;
                on[b] = true;
            }
        }
        on
    }

    pub fn weight(&self, e: usize) -> f64 {
        self.weights[e]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().fold(0.0, |a, w| a + w)
    }

    /// Replaces all edge weights; every weight must be finite and nonnegative.
    pub fn set_weights(&mut self, weights: Vec<f64>) -> Result<()> {
        if weights.len() != self.num_edges() {
            return Err(Error::Input(format!("expected {} weights, got {}", self.num_edges(), weights.len())));
        }
        if let Some(e) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
            let [u, v] = self.edges[e];
            return Err(Error::InvalidWeight { u, v, weight: weights[e] });
        }
        self.weights = weights;
        Ok(())
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Mesh> {
        self.set_weights(weights)?;
        Ok(self)
    }

    pub fn euclidean_weights(&self) -> Vec<f64> {
        self.edges
            .iter()
            .map(|&[a, b]| {
                let (p, q) = (self.coords[a], self.coords[b]);
                ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt()
            })
            .collect()
    }

    pub fn with_euclidean_weights(self) -> Mesh {
        let w = self.euclidean_weights();
        Mesh { weights: w, ..self }
    }

    pub fn with_unit_weights(self) -> Mesh {
        let n = self.num_edges();
        Mesh { weights: vec![1.0; n], ..self }
    }

    /// Number of face-connected components (faces glued across shared edges).
    pub fn component_count(&self) -> usize {
        self.face_components(|_| false).1
    }

    /// Labels faces by connected component, never crossing edges for which
    /// `blocked` is true. Returns `(labels, count)`.
    pub fn face_components(&self, blocked: impl Fn(usize) -> bool) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.num_faces()];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.num_faces() {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(f) = stack.pop() {
                for &e in &self.face_edges[f] {
                    if blocked(e) {
                        continue;
                    }
                    for s in &self.edge_sides[e] {
                        if label[s.face] == usize::MAX {
                            label[s.face] = count;
                            stack.push(s.face);
                        }
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Seeded tie-breaking ranks; see [`PerturbedWeights`].
    pub fn perturb(&self, seed: u64) -> PerturbedWeights {
        perturb(self, seed)
    }
}

pub(crate) struct CornerClasses {
    offsets: Vec<usize>,
    uf: UnionFind,
}

impl CornerClasses {
    pub(crate) fn class_of(&self, face: usize, corner: usize) -> usize {
        self.uf.find_const(self.offsets[face] + corner)
    }
}

/// Path length with an infinitesimal tie-breaking component. Comparison is
/// lexicographic: the `eps` part only decides between equal `base` sums.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Cost {
    pub base: f64,
    pub eps: u64,
}

impl Cost {
    pub const ZERO: Cost = Cost { base: 0.0, eps: 0 };

    pub fn new(base: f64, eps: u64) -> Cost {
        Cost { base, eps }
    }
}

impl Eq for Cost {}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base.total_cmp(&other.base).then(self.eps.cmp(&other.eps))
    }
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, o: Cost) -> Cost {
        Cost { base: self.base + o.base, eps: self.eps + o.eps }
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, o: Cost) {
        self.base += o.base;
        self.eps += o.eps;
    }
}

impl std::iter::Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, |a, b| a + b)
    }
}

/// Edge weights plus independent integer ranks in `[1, n²]` used as
/// infinitesimal tie-breakers, so shortest paths are unique with high
/// probability.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbedWeights {
    pub base: Vec<f64>,
    pub rank: Vec<u64>,
    pub seed: u64,
}

impl PerturbedWeights {
    pub fn cost(&self, e: usize) -> Cost {
        Cost { base: self.base[e], eps: self.rank[e] }
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn path_cost(&self, edges: &[usize]) -> Cost {
        edges.iter().map(|&e| self.cost(e)).sum()
    }

    /// Plain weights with every rank zero; shortest paths may tie.
    pub fn unperturbed(mesh: &Mesh) -> PerturbedWeights {
        PerturbedWeights { base: mesh.weights().to_vec(), rank: vec![0; mesh.num_edges()], seed: 0 }
    }
}

pub fn perturb(mesh: &Mesh, seed: u64) -> PerturbedWeights {
    let n = mesh.complexity() as u64;
    let hi = (n * n).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = (0..mesh.num_edges()).map(|_| rng.gen_range(1..=hi)).collect();
    PerturbedWeights { base: mesh.weights().to_vec(), rank, seed }
}

/// Map from sorted vertex pairs to edge ids. Only meaningful for meshes
/// without parallel edges (every loaded mesh).
pub fn edge_index(mesh: &Mesh) -> BTreeMap<(usize, usize), usize> {
    mesh.edges().iter().enumerate().map(|(e, &[a, b])| ((a, b), e)).collect()
}
