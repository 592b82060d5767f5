//! Brute-force oracles shared by the integration tests. Everything here is
//! deliberately naive and independent of the library's search code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use cutgraph::cycles::CycleKind;
use cutgraph::mesh::{Cost, Mesh, PerturbedWeights};
use cutgraph::topology::{self, CutGraph};

/// Every simple cycle with at most `max_len` edges, each once, as
/// consecutive edge ids starting at its smallest vertex.
pub fn simple_cycles(mesh: &Mesh, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = mesh.num_vertices();
    let mut on_path = vec![false; n];
    for s in 0..n {
        let mut edges = Vec::new();
        on_path[s] = true;
        dfs(mesh, s, s, max_len, &mut on_path, &mut edges, &mut out);
        on_path[s] = false;
    }
    out
}

fn dfs(
    mesh: &Mesh,
    s: usize,
    at: usize,
    max_len: usize,
    on_path: &mut [bool],
    edges: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    for &e in mesh.vertex_edges(at) {
        if edges.last() == Some(&e) {
            continue;
        }
        let w = mesh.other_endpoint(e, at);
        if w == s && !edges.is_empty() {
            // each cycle is seen in both directions; keep one
            if edges[0] < e {
                let mut c = edges.clone();
                c.push(e);
                out.push(c);
            }
            continue;
        }
        if w <= s || on_path[w] || edges.len() + 1 >= max_len {
            continue;
        }
        on_path[w] = true;
        edges.push(e);
        dfs(mesh, s, w, max_len, on_path, edges, out);
        edges.pop();
        on_path[w] = false;
    }
}

/// The mesh with each boundary circle capped by a fan of triangles around a
/// new apex, built from scratch as polygons. Returns the capped mesh (same
/// ids for original vertices) and the apexes.
pub fn cap_boundaries(mesh: &Mesh) -> (Mesh, Vec<usize>) {
    let mut coords = mesh.coords().to_vec();
    let mut polys: Vec<Vec<usize>> = mesh.faces().to_vec();
    // boundary circles are simple, so each boundary vertex has two
    // boundary neighbours
    let mut nbrs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in 0..mesh.num_edges() {
        if mesh.is_boundary_edge(e) {
            let [a, b] = mesh.edge(e);
            nbrs.entry(a).or_default().push(b);
            nbrs.entry(b).or_default().push(a);
        }
    }
    let mut apexes = Vec::new();
    let mut seen = BTreeSet::new();
    for &s in nbrs.keys() {
        if seen.contains(&s) {
            continue;
        }
        let apex = coords.len();
        coords.push([0.0; 3]);
        apexes.push(apex);
        let (mut prev, mut a) = (usize::MAX, s);
        loop {
            seen.insert(a);
            let n = &nbrs[&a];
            assert_eq!(n.len(), 2, "boundary circles must be simple");
            let b = if n[0] != prev { n[0] } else { n[1] };
            polys.push(vec![apex, b, a]);
            prev = a;
            a = b;
            if a == s {
                break;
            }
        }
    }
    (Mesh::from_polygons(coords, polys).unwrap(), apexes)
}

/// Classification by explicit surgery on the capped surface: cut along the
/// cycle and inspect the pieces. A piece that is a disk containing at most
/// one apex makes the cycle trivial.
pub fn surgery_classify(mesh: &Mesh, cycle: &[usize]) -> CycleKind {
    let (capped, apexes) = cap_boundaries(mesh);
    let ids: Vec<usize> = cycle
        .iter()
        .map(|&e| {
            let [a, b] = mesh.edge(e);
            capped.edge_between(a, b).unwrap()
        })
        .collect();
    let cut = topology::cut_along_edges(&capped, &ids).unwrap();
    let (label, count) = cut.mesh.face_components(|_| false);
    if count == 1 {
        return CycleKind::NonSeparating;
    }
    for c in 0..count {
        let faces: Vec<usize> = (0..label.len()).filter(|&f| label[f] == c).collect();
        let verts: BTreeSet<usize> = faces.iter().flat_map(|&f| cut.mesh.face(f).to_vec()).collect();
        let edges: BTreeSet<usize> = faces.iter().flat_map(|&f| cut.mesh.face_edges(f).to_vec()).collect();
        let chi = verts.len() as i64 - edges.len() as i64 + faces.len() as i64;
        let holes = verts.iter().filter(|&&v| apexes.contains(&cut.vertex_origin[v])).count();
        if chi == 1 && holes <= 1 {
            return CycleKind::Trivial;
        }
    }
    CycleKind::EssentialSeparating
}

pub fn cycle_weight(mesh: &Mesh, cycle: &[usize]) -> f64 {
    cycle.iter().map(|&e| mesh.weight(e)).sum()
}

pub fn cycle_vertex_set(mesh: &Mesh, cycle: &[usize]) -> BTreeSet<usize> {
    cycle.iter().flat_map(|&e| mesh.edge(e)).collect()
}

/// All-pairs shortest distances; boundary edges cost zero when asked.
pub fn floyd_warshall(mesh: &Mesh, weights: &[f64], free_boundary: bool) -> Vec<Vec<f64>> {
    let n = mesh.num_vertices();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0.0;
    }
    for (e, &we) in weights.iter().enumerate() {
        let [a, b] = mesh.edge(e);
        let w = if free_boundary && mesh.is_boundary_edge(e) { 0.0 } else { we };
        if w < d[a][b] {
            d[a][b] = w;
            d[b][a] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Minimum spanning tree weight over a complete metric on `nodes`, by
/// trying Prim from scratch.
pub fn metric_mst(dist: &[Vec<f64>], nodes: &[usize]) -> f64 {
    if nodes.len() <= 1 {
        return 0.0;
    }
    let mut in_tree = vec![false; nodes.len()];
    let mut best = vec![f64::INFINITY; nodes.len()];
    best[0] = 0.0;
    let mut total = 0.0;
    for _ in 0..nodes.len() {
        let i = (0..nodes.len()).filter(|&i| !in_tree[i]).min_by(|&a, &b| best[a].total_cmp(&best[b])).unwrap();
        in_tree[i] = true;
        total += best[i];
        for j in 0..nodes.len() {
            let d = dist[nodes[i]][nodes[j]];
            if !in_tree[j] && d < best[j] {
                best[j] = d;
            }
        }
    }
    total
}

/// Minimum Steiner tree weight of `terminals` by enumerating every set of
/// at most `max_steiner` extra vertices and taking the metric MST.
pub fn brute_steiner(dist: &[Vec<f64>], terminals: &[usize], max_steiner: usize) -> f64 {
    let n = dist.len();
    let mut best = metric_mst(dist, terminals);
    let others: Vec<usize> = (0..n).filter(|v| !terminals.contains(v)).collect();
    let mut chosen = Vec::new();
    subsets(&others, 0, max_steiner, &mut chosen, &mut |extra| {
        let mut nodes = terminals.to_vec();
        nodes.extend_from_slice(extra);
        let w = metric_mst(dist, &nodes);
        if w < best {
            best = w;
        }
    });
    best
}

fn subsets(pool: &[usize], from: usize, left: usize, chosen: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    visit(chosen);
    if left == 0 {
        return;
    }
    for i in from..pool.len() {
        chosen.push(pool[i]);
        subsets(pool, i + 1, left - 1, chosen, visit);
        chosen.pop();
    }
}

/// Minimum-weight cut graph by trying every edge subset, smallest weight
/// first. Only for meshes with very few edges.
pub fn exhaustive_min_cut_weight(mesh: &Mesh) -> f64 {
    let m = mesh.num_edges();
    assert!(m <= 22, "exhaustive search limited to small meshes");
    let interior: Vec<usize> = (0..m).filter(|&e| !mesh.is_boundary_edge(e)).collect();
    let mut best = f64::INFINITY;
    if cutgraph::topology::is_cut_graph(mesh, &CutGraph::new(mesh, [], [])) {
        return 0.0;
    }
    for v in 0..mesh.num_vertices() {
        if topology::is_cut_graph(mesh, &CutGraph::vertex_only(v)) {
            return 0.0;
        }
    }
    for mask in 1u64..(1u64 << interior.len()) {
        let edges: Vec<usize> = (0..interior.len()).filter(|&i| mask >> i & 1 == 1).map(|i| interior[i]).collect();
        let w: f64 = edges.iter().map(|&e| mesh.weight(e)).sum();
        if w >= best {
            continue;
        }
        if topology::is_cut_graph(mesh, &CutGraph::from_edges(mesh, edges)) {
            best = w;
        }
    }
    best
}

/// Minimum rectilinear Steiner tree length of integer points, by checking
/// every subset of Hanan grid points as Steiner points and taking the
/// Manhattan MST.
pub fn rectilinear_steiner(points: &[(usize, usize)]) -> usize {
    let xs: BTreeSet<usize> = points.iter().map(|p| p.0).collect();
    let ys: BTreeSet<usize> = points.iter().map(|p| p.1).collect();
    let hanan: Vec<(usize, usize)> =
        xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).filter(|p| !points.contains(p)).collect();
    let manhattan = |a: (usize, usize), b: (usize, usize)| a.0.abs_diff(b.0) + a.1.abs_diff(b.1);
    let mst = |nodes: &[(usize, usize)]| -> usize {
        let dist: Vec<Vec<f64>> =
            nodes.iter().map(|&a| nodes.iter().map(|&b| manhattan(a, b) as f64).collect()).collect();
        let idx: Vec<usize> = (0..nodes.len()).collect();
        metric_mst(&dist, &idx) as usize
    };
    let mut best = mst(points);
    let limit = points.len().saturating_sub(2);
    let mut chosen = Vec::new();
    let pool: Vec<usize> = (0..hanan.len()).collect();
    subsets(&pool, 0, limit, &mut chosen, &mut |extra| {
        let mut nodes = points.to_vec();
        nodes.extend(extra.iter().map(|&i| hanan[i]));
        best = best.min(mst(&nodes));
    });
    best
}

/// Number of distinct minimum-cost paths between `s` and `t`, counted by
/// dynamic programming over the shortest-path DAG.
pub fn shortest_path_count(mesh: &Mesh, costs: &PerturbedWeights, s: usize, t: usize) -> u64 {
    let n = mesh.num_vertices();
    // Bellman-Ford style relaxation keeps this independent of Dijkstra
    let mut dist: Vec<Option<Cost>> = vec![None; n];
    dist[s] = Some(Cost::ZERO);
    for _ in 0..n {
        let mut changed = false;
        for e in 0..mesh.num_edges() {
            let [a, b] = mesh.edge(e);
            for (x, y) in [(a, b), (b, a)] {
                if let Some(dx) = dist[x] {
                    let nd = dx + costs.cost(e);
                    if dist[y].is_none_or(|dy| nd < dy) {
                        dist[y] = Some(nd);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| dist[v].is_some()).collect();
    order.sort_by_key(|&v| dist[v].unwrap());
    let mut count: HashMap<usize, u64> = HashMap::from([(s, 1)]);
    for &v in &order {
        if v == s {
            continue;
        }
        let mut c = 0;
        for &e in mesh.vertex_edges(v) {
            let u = mesh.other_endpoint(e, v);
            if let (Some(du), Some(dv)) = (dist[u], dist[v]) {
                if du + costs.cost(e) == dv {
                    c += count.get(&u).copied().unwrap_or(0);
                }
            }
        }
        count.insert(v, c);
    }
    count.get(&t).copied().unwrap_or(0)
}

/// The mesh without the listed faces, vertices renumbered in order of use.
pub fn remove_faces(mesh: &Mesh, drop: &[usize]) -> Mesh {
    let kept: Vec<&[usize]> = (0..mesh.num_faces()).filter(|f| !drop.contains(f)).map(|f| mesh.face(f)).collect();
    let mut new_id: HashMap<usize, usize> = HashMap::new();
    let mut coords = Vec::new();
    let mut polys = Vec::new();
    for f in kept {
        polys.push(
            f.iter()
                .map(|&v| {
                    *new_id.entry(v).or_insert_with(|| {
                        coords.push(mesh.coords()[v]);
                        coords.len() - 1
                    })
                })
                .collect(),
        );
    }
    Mesh::from_polygons(coords, polys).unwrap()
}

/// `count` pairwise vertex-disjoint faces, the lexicographically first
/// such set by face id; empty if none exists.
pub fn disjoint_faces(mesh: &Mesh, count: usize) -> Vec<usize> {
    fn search(mesh: &Mesh, from: usize, count: usize, used: &mut Vec<bool>, out: &mut Vec<usize>) -> bool {
        if out.len() == count {
            return true;
        }
        for f in from..mesh.num_faces() {
            if mesh.face(f).iter().all(|&v| !used[v]) {
                for &v in mesh.face(f) {
                    used[v] = true;
                }
                out.push(f);
                if search(mesh, f + 1, count, used, out) {
                    return true;
                }
                out.pop();
                for &v in mesh.face(f) {
                    used[v] = false;
                }
            }
        }
        false
    }
    let mut out = Vec::new();
    search(mesh, 0, count, &mut vec![false; mesh.num_vertices()], &mut out);
    out
}

/// Surfaces with boundary small enough for exhaustive cycle enumeration.
pub fn holed_meshes() -> Vec<(String, Mesh)> {
    use cutgraph::gen;
    let ico = gen::sphere(0);
    let cs = gen::csaszar_torus();
    let mut out = vec![
        ("triangle".to_string(), gen::triangle()),
        ("prism".to_string(), gen::prism_shell()),
        ("open-tetrahedron".to_string(), remove_faces(&gen::tetrahedron(), &[0])),
        ("punctured-csaszar".to_string(), remove_faces(&cs, &[0])),
        ("twice-punctured-csaszar".to_string(), remove_faces(&cs, &disjoint_faces(&cs, 2))),
        ("punctured-projective-plane".to_string(), remove_faces(&gen::projective_plane(), &[0])),
    ];
    for k in 1..=4 {
        let faces = disjoint_faces(&ico, k);
        assert_eq!(faces.len(), k);
        out.push((format!("icosahedron-minus-{k}"), remove_faces(&ico, &faces)));
    }
    out
}

/// Minimum weight of a simple cycle accepted by `keep`, through `through`
/// when given. Cycles are enumerated up to the length at which any longer
/// cycle must weigh more than `upper`, so the minimum is exact as long as
/// some accepted cycle weighs at most `upper`.
pub fn brute_min_cycle(
    mesh: &Mesh,
    upper: f64,
    through: Option<usize>,
    keep: impl Fn(&[usize]) -> bool,
) -> Option<f64> {
    let min_w = mesh.weights().iter().copied().fold(f64::INFINITY, f64::min);
    let max_len =
        if min_w > 0.0 { ((upper / min_w).floor() as usize).min(mesh.num_vertices()) } else { mesh.num_vertices() };
    let mut cycles: Vec<(f64, Vec<usize>)> = simple_cycles(mesh, max_len.max(1))
        .into_iter()
        .filter(|c| through.is_none_or(|u| c.iter().any(|&e| mesh.edge(e).contains(&u))))
        .map(|c| (cycle_weight(mesh, &c), c))
        .collect();
    cycles.sort_by(|a, b| a.0.total_cmp(&b.0));
    cycles.into_iter().find(|(_, c)| keep(c)).map(|(w, _)| w)
}

/// The mesh with weights drawn uniformly from `[lo, hi)`, seeded.
pub fn reweighted(mesh: &Mesh, seed: u64, lo: f64, hi: f64) -> Mesh {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let w = (0..mesh.num_edges()).map(|_| rng.gen_range(lo..hi)).collect();
    mesh.clone().with_weights(w).unwrap()
}
