mod common;

use cutgraph::exact::{self, Budget};
use cutgraph::topology::{self, CutGraph};
use cutgraph::{gen, greedy, Error, Mesh};

fn small() -> Vec<(String, Mesh)> {
    let mut out = vec![
        ("tetrahedron".to_string(), gen::tetrahedron()),
        ("csaszar".to_string(), gen::csaszar_torus()),
        ("projective-plane".to_string(), gen::projective_plane()),
    ];
    out.extend(common::holed_meshes().into_iter().filter(|(_, m)| m.num_edges() <= 22));
    out
}

#[test]
fn csaszar_minimum_is_five() {
    let mesh = gen::csaszar_torus();
    let g = exact::exact_min_cut_graph(&mesh, &mesh.perturb(0), Budget::default()).unwrap();
    assert_eq!(g.total_weight, 5.0);
    assert!(topology::is_cut_graph(&mesh, &g));
    assert_eq!(common::exhaustive_min_cut_weight(&mesh), 5.0);
}

#[test]
fn branch_and_bound_matches_exhaustive_search() {
    for (name, base) in small() {
        for seed in 0..3 {
            let mesh = common::reweighted(&base, seed, 1.0, 4.0);
            let pw = mesh.perturb(seed);
            let g = exact::exact_min_cut_graph(&mesh, &pw, Budget::default()).unwrap();
            let oracle = common::exhaustive_min_cut_weight(&mesh);
            assert!((g.total_weight - oracle).abs() < 1e-9, "{name} seed {seed}: {} vs {oracle}", g.total_weight);
            assert!(topology::is_cut_graph(&mesh, &g), "{name}");
            let lib = exact::exhaustive_min_cut_graph(&mesh, &pw).unwrap();
            assert_eq!(lib.edges, g.edges, "{name} seed {seed}");
        }
    }
}

#[test]
fn warm_start_does_not_change_the_answer() {
    for (name, mesh) in small() {
        let pw = mesh.perturb(4);
        let cold = exact::exact_min_cut_graph_with(&mesh, &pw, &[], Budget::default(), None).unwrap();
        let seed_graph = greedy::approx_min_cut_graph(&mesh, 4, cutgraph::cycles::Target::NonSeparating).unwrap();
        let warm = exact::exact_min_cut_graph_with(&mesh, &pw, &[], Budget::default(), Some(&seed_graph)).unwrap();
        assert_eq!(cold.cut_graph, warm.cut_graph, "{name}");
        assert!(warm.nodes <= cold.nodes, "{name}");
    }
}

#[test]
fn budgets_are_enforced() {
    let mesh = gen::torus(2, 3).unwrap().mesh;
    let err = exact::exact_min_cut_graph(&mesh, &mesh.perturb(0), Budget::default()).unwrap_err();
    assert!(matches!(err, Error::BudgetExceeded { max: 25, .. }), "{err}");
    let tiny = Budget { max_edges: 100, max_nodes: 10 };
    let cs = gen::csaszar_torus();
    let err = exact::exact_min_cut_graph(&cs, &cs.perturb(0), tiny).unwrap_err();
    assert!(matches!(err, Error::TooLarge(_)), "{err}");
}

#[test]
fn minimum_cut_paths_are_tight() {
    for (name, mesh) in small() {
        let g = exact::exact_min_cut_graph(&mesh, &mesh.perturb(0), Budget::default()).unwrap();
        let check = exact::verify_tight_decomposition(&mesh, &g).unwrap();
        assert!(check.holds(), "{name}: {:?}", check.failures);
    }
}

/// A simple path from one boundary circle to the other through interior
/// vertices, at least `extra` longer than the shortest such path.
fn detour(mesh: &Mesh, extra: usize) -> Vec<usize> {
    let walks = topology::boundary_walks(mesh);
    let on_boundary = mesh.boundary_vertices();
    let second: Vec<usize> = walks[1].iter().map(|s| s.from).collect();
    let start = walks[0][0].from;
    let target = |v: usize| second.contains(&v);
    // breadth-first distance to the second circle through interior vertices
    let mut best = usize::MAX;
    let mut frontier = vec![start];
    let mut seen = vec![false; mesh.num_vertices()];
    seen[start] = true;
    for d in 1.. {
        let mut next = Vec::new();
        for &v in &frontier {
            for &e in mesh.vertex_edges(v) {
                let w = mesh.other_endpoint(e, v);
                if target(w) {
                    best = best.min(d);
                }
                if !seen[w] && !on_boundary[w] {
                    seen[w] = true;
                    next.push(w);
                }
            }
        }
        if best != usize::MAX || next.is_empty() {
            break;
        }
        frontier = next;
    }
    fn dfs(
        mesh: &Mesh,
        v: usize,
        want: usize,
        path: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(usize) -> bool,
        boundary: &[bool],
    ) -> bool {
        for &e in mesh.vertex_edges(v) {
            let w = mesh.other_endpoint(e, v);
            if used[w] {
                continue;
            }
            if ok(w) {
                if path.len() + 1 >= want {
                    path.push(e);
                    return true;
                }
                continue;
            }
            if boundary[w] {
                continue;
            }
            used[w] = true;
            path.push(e);
            if dfs(mesh, w, want, path, used, ok, boundary) {
                return true;
            }
            path.pop();
            used[w] = false;
        }
        false
    }
    let mut path = Vec::new();
    let mut used = vec![false; mesh.num_vertices()];
    used[start] = true;
    assert!(dfs(mesh, start, best + extra, &mut path, &mut used, &target, &on_boundary));
    path
}

#[test]
fn detour_fails_the_tightness_check() {
    let mesh = gen::punctured_sphere(5, &[(0, 0), (4, 4)]).unwrap();
    let path = detour(&mesh, 6);
    let g = CutGraph::from_edges(&mesh, path);
    assert!(topology::is_cut_graph(&mesh, &g));
    let check = exact::verify_tight_decomposition(&mesh, &g).unwrap();
    assert_eq!(check.arcs_checked, 1);
    assert!(!check.holds());
}
