//! Surface invariants, surgery along edge sets, cut-graph validity,
//! tree-cotree cut graphs and reduced cut graphs.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{Mesh, PerturbedWeights};
use crate::paths::ShortestPathTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub chi: i64,
    pub orientable: bool,
    pub genus: i64,
    pub boundaries: usize,
}

impl SurfaceInvariants {
    fn from_parts(chi: i64, orientable: bool, boundaries: usize) -> Self {
        let deficit = 2 - chi - boundaries as i64;
        let genus = if orientable { deficit / 2 } else { deficit };
        SurfaceInvariants { chi, orientable, genus, boundaries }
    }

    pub fn is_disk(&self) -> bool {
        self.chi == 1 && self.boundaries == 1
    }

    pub fn is_sphere(&self) -> bool {
        self.chi == 2 && self.boundaries == 0
    }

    pub fn is_annulus(&self) -> bool {
        self.chi == 0 && self.boundaries == 2
    }
}

/// Invariants of a connected mesh.
pub fn invariants(mesh: &Mesh) -> SurfaceInvariants {
    SurfaceInvariants::from_parts(mesh.euler_characteristic(), is_orientable(mesh), boundary_walks(mesh).len())
}

/// Invariants of every face-connected component, in order of the smallest
/// face id they contain.
pub fn component_invariants(mesh: &Mesh) -> Vec<SurfaceInvariants> {
    split_components(mesh).iter().map(|s| invariants(&s.mesh)).collect()
}

/// Propagates face orientations across the dual graph; a conflict means the
/// surface is one-sided.
pub fn is_orientable(mesh: &Mesh) -> bool {
    let nf = mesh.num_faces();
    let mut flip: Vec<Option<bool>> = vec![None; nf];
    let forward = |f: usize, i: usize, e: usize| mesh.face(f)[i] == mesh.edge(e)[0];
    let mut queue = VecDeque::new();
    for start in 0..nf {
        if flip[start].is_some() {
            continue;
        }
        flip[start] = Some(false);
        queue.push_back(start);
        while let Some(f) = queue.pop_front() {
            let ff = flip[f].unwrap();
            for (i, &e) in mesh.face_edges(f).iter().enumerate() {
                let sides = mesh.edge_sides(e);
                if sides.len() != 2 {
                    continue;
                }
                let here = ff ^ forward(f, i, e);
                for s in sides {
                    if s.face == f && s.index == i {
                        continue;
                    }
                    // the neighbour must traverse the edge the other way
                    let want = !here ^ forward(s.face, s.index, e);
                    match flip[s.face] {
                        None => {
                            flip[s.face] = Some(want);
                            queue.push_back(s.face);
                        }
                        Some(g) if g != want => return false,
                        _ => {}
                    }
                }
            }
        }
    }
    true
}

/// One step of a boundary walk: `edge` traversed from `from` to `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkStep {
    pub edge: usize,
    pub from: usize,
    pub to: usize,
}

/// Closed boundary walks, each starting at its smallest edge id and
/// following the orientation of the face on that edge.
pub fn boundary_walks(mesh: &Mesh) -> Vec<Vec<WalkStep>> {
    let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); mesh.num_vertices()];
    for e in 0..mesh.num_edges() {
        if mesh.is_boundary_edge(e) {
            let [a, b] = mesh.edge(e);
            at_vertex[a].push(e);
            at_vertex[b].push(e);
        }
    }
    let mut used = vec![false; mesh.num_edges()];
    let mut walks = Vec::new();
    for start in 0..mesh.num_edges() {
        if used[start] || !mesh.is_boundary_edge(start) {
            continue;
        }
        let s = mesh.edge_sides(start)[0];
        let poly = mesh.face(s.face);
        let mut from = poly[s.index];
        let mut to = poly[(s.index + 1) % poly.len()];
        let mut e = start;
        let mut walk = Vec::new();
        loop {
            used[e] = true;
            walk.push(WalkStep { edge: e, from, to });
            let next = at_vertex[to].iter().copied().find(|&x| x != e && !used[x]);
            match next {
                Some(n) => {
                    from = to;
                    to = mesh.other_endpoint(n, from);
                    e = n;
                }
                None => break,
            }
        }
        walks.push(walk);
    }
    walks
}

/// A complex produced by gluing a subset of another complex's faces,
/// with maps back to the source cells.
#[derive(Clone, Debug)]
pub struct Surgery {
    pub mesh: Mesh,
    pub vertex_origin: Vec<usize>,
    pub edge_origin: Vec<usize>,
    pub face_origin: Vec<usize>,
}

/// Rebuilds the complex from the selected faces, gluing two faces along an
/// edge only when both are selected and `cut(edge)` is false. Vertices are
/// split into one copy per remaining corner fan.
pub fn glue_faces(mesh: &Mesh, faces: &[usize], cut: impl Fn(usize) -> bool) -> Surgery {
    let mut selected = vec![false; mesh.num_faces()];
    for &f in faces {
        selected[f] = true;
    }
    let glued = |e: usize| {
        let s = mesh.edge_sides(e);
        s.len() == 2 && selected[s[0].face] && selected[s[1].face] && !cut(e)
    };
    let classes = mesh.corner_classes(glued);

    // vertex copies ordered by (source vertex, first appearance)
    let mut class_key: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut order = 0;
    for &f in faces {
        for (i, &v) in mesh.face(f).iter().enumerate() {
            class_key.entry(classes.class_of(f, i)).or_insert_with(|| {
                order += 1;
                (v, order)
            });
        }
    }
    let mut keyed: Vec<(usize, usize, usize)> = class_key.iter().map(|(&c, &(v, o))| (v, o, c)).collect();
    keyed.sort_unstable();
    let mut new_vertex: HashMap<usize, usize> = HashMap::new();
    let mut vertex_origin = Vec::with_capacity(keyed.len());
    for (id, &(v, _, c)) in keyed.iter().enumerate() {
        new_vertex.insert(c, id);
        vertex_origin.push(v);
    }

    // edge copies ordered by (source edge, side rank)
    let mut side_keys: Vec<(usize, usize, usize, usize)> = Vec::new();
    for (fi, &f) in faces.iter().enumerate() {
        for (i, &e) in mesh.face_edges(f).iter().enumerate() {
            let rank =
                if glued(e) { 0 } else { mesh.edge_sides(e).iter().position(|s| s.face == f && s.index == i).unwrap() };
            side_keys.push((e, rank, fi, i));
        }
    }
    side_keys.sort_unstable();
    let mut edge_origin = Vec::new();
    let mut edge_id: HashMap<(usize, usize), usize> = HashMap::new();
    let mut new_face_edges: Vec<Vec<usize>> = faces.iter().map(|&f| vec![0; mesh.face(f).len()]).collect();
    for &(e, rank, fi, i) in &side_keys {
        let id = *edge_id.entry((e, rank)).or_insert_with(|| {
            edge_origin.push(e);
            edge_origin.len() - 1
        });
        new_face_edges[fi][i] = id;
    }

    let new_faces: Vec<Vec<usize>> =
        faces.iter().map(|&f| (0..mesh.face(f).len()).map(|i| new_vertex[&classes.class_of(f, i)]).collect()).collect();
    let coords = vertex_origin.iter().map(|&v| mesh.coords()[v]).collect();
    let weights = edge_origin.iter().map(|&e| mesh.weight(e)).collect();
    let out = Mesh::from_parts(coords, new_faces, new_face_edges, edge_origin.len(), weights)
        .expect("surgery preserves complex structure");
    Surgery { mesh: out, vertex_origin, edge_origin, face_origin: faces.to_vec() }
}

/// Cuts the mesh along the given edges. Boundary edges in the set are
/// already cut and are left alone.
pub fn cut_along_edges(mesh: &Mesh, edges: &[usize]) -> Result<Surgery> {
    let mut cut = vec![false; mesh.num_edges()];
    for &e in edges {
        if e >= mesh.num_edges() {
            return Err(Error::Input(format!("edge id {e} out of range")));
        }
        cut[e] = true;
    }
    let all: Vec<usize> = (0..mesh.num_faces()).collect();
    Ok(glue_faces(mesh, &all, |e| cut[e]))
}

pub fn cut_along(mesh: &Mesh, sub: &CutGraph) -> Result<Surgery> {
    let edges: Vec<usize> = sub.edges.iter().copied().collect();
    cut_along_edges(mesh, &edges)
}

/// Splits a complex into its face-connected components.
pub fn split_components(mesh: &Mesh) -> Vec<Surgery> {
    let (label, count) = mesh.face_components(|_| false);
    let mut groups = vec![Vec::new(); count];
    for (f, &l) in label.iter().enumerate() {
        groups[l].push(f);
    }
    groups.iter().map(|fs| glue_faces(mesh, fs, |_| false)).collect()
}

/// A boundaryless complex obtained by capping every boundary walk with a
/// cone over a new apex vertex. Original vertex, edge and face ids are
/// kept; apexes, spokes and cone faces come after them.
#[derive(Clone, Debug)]
pub struct Coned {
    pub mesh: Mesh,
    /// Apex of each boundary walk, in walk order.
    pub apexes: Vec<usize>,
    pub walks: Vec<Vec<WalkStep>>,
    /// Ids of the first spoke edge and the first cone face.
    pub first_spoke: usize,
    pub first_cone_face: usize,
}

impl Coned {
    pub fn is_apex(&self, v: usize) -> bool {
        v >= self.apexes.first().copied().unwrap_or(usize::MAX)
    }
}

/// Caps each boundary walk with a cone; spokes get weight 0.
pub fn cone_boundaries(mesh: &Mesh) -> Coned {
    let walks = boundary_walks(mesh);
    let mut coords = mesh.coords().to_vec();
    let mut faces = mesh.faces().to_vec();
    let mut face_edges: Vec<Vec<usize>> = (0..mesh.num_faces()).map(|f| mesh.face_edges(f).to_vec()).collect();
    let mut weights = mesh.weights().to_vec();
    let first_spoke = mesh.num_edges();
    let first_cone_face = mesh.num_faces();
    let mut apexes = Vec::with_capacity(walks.len());
    for walk in &walks {
        let apex = coords.len();
        let mut c = [0.0; 3];
        for st in walk {
            for (ck, x) in c.iter_mut().zip(mesh.coords()[st.from]) {
                *ck += x / walk.len() as f64;
            }
        }
        coords.push(c);
        apexes.push(apex);
        let mut spoke: HashMap<usize, usize> = HashMap::new();
        let mut spoke_to = |v: usize, weights: &mut Vec<f64>| {
            *spoke.entry(v).or_insert_with(|| {
                weights.push(0.0);
                weights.len() - 1
            })
        };
        for st in walk {
            // the cone face runs along the boundary edge against its face
            let sb = spoke_to(st.to, &mut weights);
            let sa = spoke_to(st.from, &mut weights);
            faces.push(vec![apex, st.to, st.from]);
            face_edges.push(vec![sb, st.edge, sa]);
        }
    }
    let n = weights.len();
    let coned = Mesh::from_parts(coords, faces, face_edges, n, weights)
        .expect("coning a boundary walk keeps the complex manifold");
    Coned { mesh: coned, apexes, walks, first_spoke, first_cone_face }
}

/// A subgraph of the 1-skeleton. The vertex set contains every edge
/// endpoint and may contain isolated vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct CutGraph {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
    pub total_weight: f64,
}

impl CutGraph {
    pub fn new(
        mesh: &Mesh,
        vertices: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = usize>,
    ) -> CutGraph {
        let edges: BTreeSet<usize> = edges.into_iter().collect();
        let mut vertices: BTreeSet<usize> = vertices.into_iter().collect();
        for &e in &edges {
            vertices.extend(mesh.edge(e));
        }
        let total_weight = edges.iter().map(|&e| mesh.weight(e)).fold(0.0, |a, w| a + w);
        CutGraph { vertices, edges, total_weight }
    }

    pub fn from_edges(mesh: &Mesh, edges: impl IntoIterator<Item = usize>) -> CutGraph {
        CutGraph::new(mesh, std::iter::empty(), edges)
    }

    pub fn vertex_only(v: usize) -> CutGraph {
        CutGraph { vertices: BTreeSet::from([v]), edges: BTreeSet::new(), total_weight: 0.0 }
    }

    pub fn is_vertex_only(&self) -> bool {
        self.edges.is_empty()
    }

    /// Sum of perturbed costs, for comparisons.
    pub fn cost(&self, pw: &PerturbedWeights) -> crate::mesh::Cost {
        self.edges.iter().map(|&e| pw.cost(e)).sum()
    }

    pub fn to_json(&self, mesh: &Mesh) -> CutGraphJson {
        CutGraphJson {
            vertices: self.vertices.iter().copied().collect(),
            edges: self.edges.iter().map(|&e| mesh.edge(e)).collect(),
            total_weight: self.total_weight,
            punctures: None,
        }
    }

    pub fn to_json_string(&self, mesh: &Mesh) -> String {
        serde_json::to_string(&self.to_json(mesh)).expect("cut graph serializes")
    }

    pub fn from_json(mesh: &Mesh, json: &CutGraphJson) -> Result<CutGraph> {
        let mut edges = Vec::with_capacity(json.edges.len());
        for &[u, v] in &json.edges {
            if u >= mesh.num_vertices() || v >= mesh.num_vertices() {
                return Err(Error::Input(format!("edge [{u}, {v}] out of range")));
            }
            let e = mesh.edge_between(u, v).ok_or_else(|| Error::Input(format!("[{u}, {v}] is not a mesh edge")))?;
            edges.push(e);
        }
        if let Some(&v) = json.vertices.iter().find(|&&v| v >= mesh.num_vertices()) {
            return Err(Error::Input(format!("vertex {v} out of range")));
        }
        Ok(CutGraph::new(mesh, json.vertices.iter().copied(), edges))
    }
}

/// Wire form of a cut graph: edges are given as vertex pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CutGraphJson {
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
    pub total_weight: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub punctures: Option<Vec<usize>>,
}

/// Plain edge-list text, one `u v` pair per line.
pub fn cut_graph_edge_list(mesh: &Mesh, g: &CutGraph) -> String {
    g.edges
        .iter()
        .map(|&e| {
            let [u, v] = mesh.edge(e);
            format!("{u} {v}\n")
        })
        .collect()
}

/// Result of cutting a mesh along a subgraph.
#[derive(Clone, Debug)]
pub struct CutOutcome {
    pub surgery: Surgery,
    /// Invariants per component; isolated interior vertices of the subgraph
    /// count as punctures of their component.
    pub components: Vec<SurfaceInvariants>,
}

impl CutOutcome {
    pub fn is_disk(&self) -> bool {
        self.components.len() == 1 && self.components[0].is_disk()
    }
}

pub fn cut_outcome(mesh: &Mesh, sub: &CutGraph) -> Result<CutOutcome> {
    let surgery = cut_along(mesh, sub)?;
    let (label, count) = surgery.mesh.face_components(|_| false);
    let mut components = if count == 1 { vec![invariants(&surgery.mesh)] } else { component_invariants(&surgery.mesh) };

    let mut touched = vec![false; mesh.num_vertices()];
    for &e in &sub.edges {
        if !mesh.is_boundary_edge(e) {
            for v in mesh.edge(e) {
                touched[v] = true;
            }
        }
    }
    let on_boundary = mesh.boundary_vertices();
    for &v in &sub.vertices {
        if touched[v] || on_boundary[v] {
            continue;
        }
        // removing an interior point punctures the surface around it
        let Some(&e) = mesh.vertex_edges(v).first() else { continue };
        let f = mesh.edge_sides(e)[0].face;
        let new_face = surgery.face_origin.iter().position(|&x| x == f).unwrap();
        let c = &mut components[label[new_face]];
        *c = SurfaceInvariants::from_parts(c.chi - 1, c.orientable, c.boundaries + 1);
    }
    Ok(CutOutcome { surgery, components })
}

/// True iff removing `sub` leaves a single open disk.
pub fn is_cut_graph(mesh: &Mesh, sub: &CutGraph) -> bool {
    if sub.vertices.is_empty() && !mesh.has_boundary() {
        return false;
    }
    match cut_outcome(mesh, sub) {
        Ok(o) => o.is_disk(),
        Err(_) => false,
    }
}

/// Spanning tree of the dual graph avoiding `primal_tree`, and the edges in
/// neither tree.
pub fn dual_spanning_cotree(mesh: &Mesh, primal_tree: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    if mesh.has_boundary() {
        return Err(Error::HasBoundary);
    }
    let mut in_tree = vec![false; mesh.num_edges()];
    for &e in primal_tree {
        in_tree[e] = true;
    }
    let mut seen = vec![false; mesh.num_faces()];
    let mut in_cotree = vec![false; mesh.num_edges()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(f) = queue.pop_front() {
        for &e in mesh.face_edges(f) {
            if in_tree[e] || in_cotree[e] {
                continue;
            }
            for s in mesh.edge_sides(e) {
                if !seen[s.face] {
                    seen[s.face] = true;
                    in_cotree[e] = true;
                    queue.push_back(s.face);
                }
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::Input("dual of the complement of the tree is disconnected".into()));
    }
    let cotree = (0..mesh.num_edges()).filter(|&e| in_cotree[e]).collect();
    let leftover = (0..mesh.num_edges()).filter(|&e| !in_tree[e] && !in_cotree[e]).collect();
    Ok((cotree, leftover))
}

/// A path in the 1-skeleton: `vertices.len() == edges.len() + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonPath {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct TreeCotree {
    pub cut_graph: CutGraph,
    /// Shortest paths from the root to each endpoint of a leftover edge.
    pub paths: Vec<SkeletonPath>,
    pub leftover: Vec<usize>,
    pub tree: ShortestPathTree,
}

/// Cut graph made of the leftover edges of a tree-cotree decomposition plus
/// the shortest paths from `root` to their endpoints.
pub fn tree_cotree_cut_graph(mesh: &Mesh, costs: &PerturbedWeights, root: usize) -> Result<TreeCotree> {
    let tree = ShortestPathTree::new(mesh, costs, &[root]);
    let primal: Vec<usize> = tree.parent_edge.iter().flatten().copied().collect();
    let (_, leftover) = dual_spanning_cotree(mesh, &primal)?;
    let endpoints: BTreeSet<usize> = leftover.iter().flat_map(|&e| mesh.edge(e)).collect();
    let mut paths = Vec::new();
    let mut edges: BTreeSet<usize> = leftover.iter().copied().collect();
    for &v in &endpoints {
        let mut vertices = tree.path_vertices(mesh, v);
        let mut pe = tree.path_edges(mesh, v);
        vertices.reverse();
        pe.reverse();
        edges.extend(pe.iter().copied());
        paths.push(SkeletonPath { vertices, edges: pe });
    }
    let cut_graph = if edges.is_empty() { CutGraph::vertex_only(root) } else { CutGraph::from_edges(mesh, edges) };
    Ok(TreeCotree { cut_graph, paths, leftover, tree })
}

/// A cut path or boundary path of a reduced cut graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub boundary: bool,
}

#[derive(Clone, Debug)]
pub struct ReducedCutGraph {
    pub nodes: Vec<usize>,
    pub arcs: Vec<Arc>,
    /// The cut graph after removing dangling trees.
    pub pruned: CutGraph,
}

/// Inclusive ranges for node and arc counts of a reduced cut graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeBounds {
    pub nodes: (i64, i64),
    pub arcs: (i64, i64),
}

impl SizeBounds {
    /// `None` for spheres and disks, whose reduced graphs are degenerate.
    pub fn for_surface(inv: &SurfaceInvariants) -> Option<SizeBounds> {
        let (g, k) = (inv.genus, inv.boundaries as i64);
        if 4 * g + 2 * k - 2 < 1 {
            return None;
        }
        let cyclic = if inv.orientable { 2 * g } else { g };
        Some(SizeBounds {
            nodes: (k.max(1), 4 * g + 2 * k - 2),
            arcs: (cyclic + (2 * k - 1).max(0), 6 * g + 3 * k - 3),
        })
    }

    pub fn contains(&self, nodes: usize, arcs: usize) -> bool {
        let (n, a) = (nodes as i64, arcs as i64);
        self.nodes.0 <= n && n <= self.nodes.1 && self.arcs.0 <= a && a <= self.arcs.1
    }
}

/// Removes dangling edges whose free end is not on the mesh boundary (and
/// not in `keep`), until none remain.
pub fn prune_dangling(mesh: &Mesh, edges: &BTreeSet<usize>, keep: &[bool]) -> BTreeSet<usize> {
    let on_boundary = mesh.boundary_vertices();
    let mut live: BTreeSet<usize> = edges.iter().copied().filter(|&e| !mesh.is_boundary_edge(e)).collect();
    let mut degree = vec![0usize; mesh.num_vertices()];
    for &e in &live {
        for v in mesh.edge(e) {
            degree[v] += 1;
        }
    }
    let mut stack: Vec<usize> =
        (0..mesh.num_vertices()).filter(|&v| degree[v] == 1 && !on_boundary[v] && !keep[v]).collect();
    while let Some(v) = stack.pop() {
        if degree[v] != 1 {
            continue;
        }
        let e = *mesh.vertex_edges(v).iter().find(|e| live.contains(e)).unwrap();
        live.remove(&e);
        degree[v] -= 1;
        let w = mesh.other_endpoint(e, v);
        degree[w] -= 1;
        if degree[w] == 1 && !on_boundary[w] && !keep[w] {
            stack.push(w);
        }
    }
    live
}

/// Removes dangling cuts, adds the mesh boundary and contracts every maximal
/// chain through degree-2 vertices into one arc.
pub fn reduce(mesh: &Mesh, sub: &CutGraph) -> Result<ReducedCutGraph> {
    if !is_cut_graph(mesh, sub) {
        return Err(Error::NotCutGraph("cutting does not leave a single disk".into()));
    }
    let no_keep = vec![false; mesh.num_vertices()];
    let cut = prune_dangling(mesh, &sub.edges, &no_keep);
    let pruned = if cut.is_empty() {
        let on_boundary = mesh.boundary_vertices();
        let v = sub
            .vertices
            .iter()
            .copied()
            .find(|&v| on_boundary[v])
            .or_else(|| sub.vertices.iter().next().copied())
            .unwrap_or(0);
        CutGraph::vertex_only(v)
    } else {
        CutGraph::from_edges(mesh, cut.iter().copied())
    };

    let mut h: BTreeSet<usize> = cut.clone();
    h.extend((0..mesh.num_edges()).filter(|&e| mesh.is_boundary_edge(e)));
    if h.is_empty() {
        let v = *pruned.vertices.iter().next().unwrap();
        return Ok(ReducedCutGraph { nodes: vec![v], arcs: Vec::new(), pruned });
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); mesh.num_vertices()];
    for &e in &h {
        let [a, b] = mesh.edge(e);
        incident[a].push(e);
        incident[b].push(e);
    }
    let mut is_node: Vec<bool> = incident.iter().map(|i| !i.is_empty() && i.len() != 2).collect();
    let mut used: BTreeSet<usize> = BTreeSet::new();
    let mut arcs = Vec::new();
    let walk_from = |start: usize, is_node: &Vec<bool>, used: &mut BTreeSet<usize>| {
        let mut out = Vec::new();
        for &first in &incident[start] {
            if used.contains(&first) {
                continue;
            }
            let mut vertices = vec![start];
            let mut edges = Vec::new();
            let (mut v, mut e) = (start, first);
            loop {
                used.insert(e);
                edges.push(e);
                v = mesh.other_endpoint(e, v);
                vertices.push(v);
                if is_node[v] {
                    break;
                }
                match incident[v].iter().copied().find(|x| !used.contains(x)) {
                    Some(n) => e = n,
                    None => break,
                }
            }
            let boundary = edges.iter().all(|&x| mesh.is_boundary_edge(x));
            out.push(Arc { from: start, to: v, vertices, edges, boundary });
        }
        out
    };
    let mut nodes: Vec<usize> = (0..mesh.num_vertices()).filter(|&v| is_node[v]).collect();
    for &n in &nodes {
        arcs.extend(walk_from(n, &is_node, &mut used));
    }
    // components that are plain cycles get one node on their smallest vertex
    for &e in &h {
        if used.contains(&e) {
            continue;
        }
        let v = mesh.edge(e)[0];
        is_node[v] = true;
        nodes.push(v);
        arcs.extend(walk_from(v, &is_node, &mut used));
    }
    nodes.sort_unstable();
    Ok(ReducedCutGraph { nodes, arcs, pruned })
}

impl ReducedCutGraph {
    pub fn node_degree(&self, v: usize) -> usize {
        self.arcs.iter().map(|a| usize::from(a.from == v) + usize::from(a.to == v)).sum()
    }

    /// Number of arcs in a shortest cycle of the reduced multigraph.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, arc) in self.arcs.iter().enumerate() {
            if arc.from == arc.to {
                return Some(1);
            }
            // BFS between the endpoints avoiding this arc
            let mut dist: HashMap<usize, usize> = HashMap::from([(arc.from, 0)]);
            let mut queue = VecDeque::from([arc.from]);
            while let Some(v) = queue.pop_front() {
                let d = dist[&v];
                for (j, other) in self.arcs.iter().enumerate() {
                    if j == i {
                        continue;
                    }
                    let w = if other.from == v {
                        other.to
                    } else if other.to == v {
                        other.from
                    } else {
                        continue;
                    };
                    if let std::collections::hash_map::Entry::Vacant(slot) = dist.entry(w) {
                        slot.insert(d + 1);
                        queue.push_back(w);
                    }
                }
            }
            if let Some(&d) = dist.get(&arc.to) {
                best = Some(best.map_or(d + 1, |b: usize| b.min(d + 1)));
            }
        }
        best
    }

    pub fn cut_arcs(&self) -> impl Iterator<Item = &Arc> {
        self.arcs.iter().filter(|a| !a.boundary)
    }
}

/// Boundary word of the disk obtained by cutting along `sub`: the source
/// edge of every boundary step, with `true` when the step runs from the
/// smaller to the larger source vertex id.
pub fn schema_boundary_word(mesh: &Mesh, sub: &CutGraph) -> Result<Vec<(usize, bool)>> {
    let outcome = cut_outcome(mesh, sub)?;
    if !outcome.is_disk() {
        return Err(Error::NotCutGraph("cutting does not leave a single disk".into()));
    }
    let s = &outcome.surgery;
    let walks = boundary_walks(&s.mesh);
    Ok(walks
        .first()
        .map(|w| {
            w.iter()
                .map(|st| {
                    let (a, b) = (s.vertex_origin[st.from], s.vertex_origin[st.to]);
                    (s.edge_origin[st.edge], a < b)
                })
                .collect()
        })
        .unwrap_or_default())
}

pub fn format_schema_word(word: &[(usize, bool)]) -> String {
    let tokens: Vec<String> = word.iter().map(|&(e, fwd)| format!("{}{}", if fwd { '+' } else { '-' }, e)).collect();
    tokens.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn invariants_examples() {
        let t = invariants(&gen::tetrahedron());
        assert_eq!(t, SurfaceInvariants { chi: 2, orientable: true, genus: 0, boundaries: 0 });
        let p = invariants(&gen::prism_shell());
        assert_eq!(p, SurfaceInvariants { chi: 0, orientable: true, genus: 0, boundaries: 2 });
        let c = invariants(&gen::csaszar_torus());
        assert_eq!((c.chi, c.orientable, c.genus), (0, true, 1));
        let k = invariants(&gen::klein_bottle(3, 3).unwrap());
        assert_eq!(k, SurfaceInvariants { chi: 0, orientable: false, genus: 2, boundaries: 0 });
        let rp2 = invariants(&gen::projective_plane());
        assert_eq!((rp2.chi, rp2.orientable, rp2.genus), (1, false, 1));
    }

    #[test]
    fn vertex_only_cut_is_identity() {
        let m = gen::tetrahedron();
        let s = cut_along(&m, &CutGraph::vertex_only(0)).unwrap();
        assert_eq!(s.mesh.faces(), m.faces());
        assert_eq!(s.mesh.edges(), m.edges());
    }

    #[test]
    fn sphere_cut_graphs() {
        let m = gen::tetrahedron();
        assert!(is_cut_graph(&m, &CutGraph::vertex_only(0)));
        let empty = CutGraph::new(&m, [], []);
        assert!(!is_cut_graph(&m, &empty));
        // a spanning tree of a sphere is a cut graph too
        let star: Vec<usize> = (1..4).map(|v| m.edge_between(0, v).unwrap()).collect();
        assert!(is_cut_graph(&m, &CutGraph::from_edges(&m, star)));
        let triangle = m.face_edges(0).to_vec();
        let outcome = cut_outcome(&m, &CutGraph::from_edges(&m, triangle)).unwrap();
        assert_eq!(outcome.components.len(), 2);
    }

    #[test]
    fn prism_rung_makes_disk() {
        let m = gen::prism_shell();
        let rung = (0..m.num_edges()).find(|&e| !m.is_boundary_edge(e)).unwrap();
        let g = CutGraph::from_edges(&m, [rung]);
        let o = cut_outcome(&m, &g).unwrap();
        assert_eq!(o.components.len(), 1);
        assert!(o.components[0].is_disk());
        assert!(is_cut_graph(&m, &g));
    }

    #[test]
    fn facial_triangle_is_not_a_cut_graph_of_torus() {
        let m = gen::csaszar_torus();
        let f = m.face_edges(0).to_vec();
        assert!(!is_cut_graph(&m, &CutGraph::from_edges(&m, f)));
    }

    #[test]
    fn cotree_counts() {
        let m = gen::tetrahedron();
        let pw = m.perturb(0);
        let spt = ShortestPathTree::new(&m, &pw, &[0]);
        let tree: Vec<usize> = spt.parent_edge.iter().flatten().copied().collect();
        let (cotree, leftover) = dual_spanning_cotree(&m, &tree).unwrap();
        assert_eq!((tree.len(), cotree.len(), leftover.len()), (3, 3, 0));

        let c = gen::csaszar_torus();
        let pw = c.perturb(0);
        let spt = ShortestPathTree::new(&c, &pw, &[0]);
        let tree: Vec<usize> = spt.parent_edge.iter().flatten().copied().collect();
        let (cotree, leftover) = dual_spanning_cotree(&c, &tree).unwrap();
        assert_eq!((tree.len(), cotree.len(), leftover.len()), (6, 13, 2));
    }

    #[test]
    fn cotree_rejects_boundary() {
        let m = gen::prism_shell();
        assert!(matches!(dual_spanning_cotree(&m, &[]), Err(Error::HasBoundary)));
    }

    #[test]
    fn tree_cotree_on_sphere_is_vertex_only() {
        let m = gen::tetrahedron();
        let tc = tree_cotree_cut_graph(&m, &m.perturb(0), 0).unwrap();
        assert_eq!(tc.cut_graph, CutGraph::vertex_only(0));
        assert!(tc.paths.is_empty());
    }

    #[test]
    fn tree_cotree_cuts_torus() {
        let m = gen::csaszar_torus();
        let tc = tree_cotree_cut_graph(&m, &m.perturb(3), 0).unwrap();
        assert!(is_cut_graph(&m, &tc.cut_graph));
        assert_eq!(tc.leftover.len(), 2);
    }

    #[test]
    fn theta_graph_reduces_to_two_nodes() {
        let m = gen::csaszar_torus();
        let tc = tree_cotree_cut_graph(&m, &m.perturb(1), 0).unwrap();
        let r = reduce(&m, &tc.cut_graph).unwrap();
        let inv = invariants(&m);
        let b = SizeBounds::for_surface(&inv).unwrap();
        assert_eq!(b, SizeBounds { nodes: (1, 2), arcs: (2, 3) });
        assert!(b.contains(r.nodes.len(), r.arcs.len()), "{} {}", r.nodes.len(), r.arcs.len());
        assert!(r.nodes.iter().all(|&n| r.node_degree(n) >= 3));
    }

    #[test]
    fn prism_bounds_coincide() {
        let inv = invariants(&gen::prism_shell());
        let b = SizeBounds::for_surface(&inv).unwrap();
        assert_eq!(b.arcs, (3, 3));
        assert_eq!(b.nodes, (2, 2));
    }

    #[test]
    fn dangling_path_is_pruned() {
        let m = gen::csaszar_torus();
        let tc = tree_cotree_cut_graph(&m, &m.perturb(1), 0).unwrap();
        let mut edges = tc.cut_graph.edges.clone();
        let extra = (0..m.num_edges()).find(|&e| {
            let [a, b] = m.edge(e);
            !edges.contains(&e) && (tc.cut_graph.vertices.contains(&a) != tc.cut_graph.vertices.contains(&b))
        });
        if let Some(e) = extra {
            edges.insert(e);
        }
        let g = CutGraph::from_edges(&m, edges);
        assert!(is_cut_graph(&m, &g));
        let r = reduce(&m, &g).unwrap();
        assert!(r.arcs.len() == 2 || r.arcs.len() == 3);
        assert_eq!(r.pruned.edges, tc.cut_graph.edges);
    }

    #[test]
    fn schema_word_covers_cut_edges_twice() {
        let m = gen::csaszar_torus();
        let tc = tree_cotree_cut_graph(&m, &m.perturb(0), 0).unwrap();
        let word = schema_boundary_word(&m, &tc.cut_graph).unwrap();
        assert_eq!(word.len(), 2 * tc.cut_graph.edges.len());
        for &e in &tc.cut_graph.edges {
            assert_eq!(word.iter().filter(|w| w.0 == e).count(), 2);
        }
    }
}
