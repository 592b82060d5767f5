mod common;

use std::collections::BTreeSet;

use cutgraph::gen;
use cutgraph::topology::{self, CutGraph, SizeBounds};
use cutgraph::Mesh;

fn closed() -> Vec<(String, Mesh)> {
    vec![
        ("tetrahedron".into(), gen::tetrahedron()),
        ("icosahedron".into(), gen::sphere(0)),
        ("csaszar".into(), gen::csaszar_torus()),
        ("projective-plane".into(), gen::projective_plane()),
        ("klein-3-3".into(), gen::klein_bottle(3, 3).unwrap()),
        ("torus-1-3".into(), gen::torus(1, 3).unwrap().mesh),
        ("torus-2-3".into(), gen::torus(2, 3).unwrap().mesh),
    ]
}

#[test]
fn removing_faces_adds_boundaries() {
    for (name, mesh) in common::holed_meshes() {
        let inv = topology::invariants(&mesh);
        assert_eq!(inv.boundaries, topology::boundary_walks(&mesh).len(), "{name}");
        assert_eq!(inv.chi, mesh.euler_characteristic(), "{name}");
    }
    let cs = gen::csaszar_torus();
    let holed = common::remove_faces(&cs, &common::disjoint_faces(&cs, 2));
    let inv = topology::invariants(&holed);
    assert_eq!((inv.genus, inv.boundaries, inv.orientable), (1, 2, true));
}

#[test]
fn coning_closes_every_boundary() {
    for (name, mesh) in common::holed_meshes() {
        let coned = topology::cone_boundaries(&mesh);
        let before = topology::invariants(&mesh);
        let after = topology::invariants(&coned.mesh);
        assert!(!coned.mesh.has_boundary(), "{name}");
        assert_eq!(after.boundaries, 0, "{name}");
        assert_eq!(after.chi, before.chi + before.boundaries as i64, "{name}");
        assert_eq!(after.genus, before.genus, "{name}");
        assert_eq!(after.orientable, before.orientable, "{name}");
        assert_eq!(coned.apexes.len(), before.boundaries, "{name}");
        for e in coned.first_spoke..coned.mesh.num_edges() {
            assert_eq!(coned.mesh.weight(e), 0.0);
        }
    }
}

#[test]
fn cutting_a_tree_cotree_leaves_one_disk() {
    for (name, mesh) in closed() {
        for root in [0, mesh.num_vertices() - 1] {
            let tc = topology::tree_cotree_cut_graph(&mesh, &mesh.perturb(1), root).unwrap();
            assert!(topology::is_cut_graph(&mesh, &tc.cut_graph), "{name} root {root}");
            let inv = topology::invariants(&mesh);
            assert_eq!(tc.leftover.len() as i64, 2 - inv.chi, "{name}");
        }
    }
}

#[test]
fn sphere_cut_graphs_are_exactly_trees() {
    // every edge subset of the tetrahedron, against a union-find count
    let mesh = gen::tetrahedron();
    let n = mesh.num_edges();
    for mask in 1u32..(1 << n) {
        let edges: BTreeSet<usize> = (0..n).filter(|&e| mask >> e & 1 == 1).collect();
        let g = CutGraph::from_edges(&mesh, edges.iter().copied());
        let v = g.vertices.len() as i64;
        let e = edges.len() as i64;
        let mut uf: Vec<usize> = (0..mesh.num_vertices()).collect();
        fn find(uf: &mut Vec<usize>, x: usize) -> usize {
            if uf[x] != x {
                let r = find(uf, uf[x]);
                uf[x] = r;
            }
            uf[x]
        }
        for &x in &edges {
            let [a, b] = mesh.edge(x);
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            uf[ra] = rb;
        }
        let comps = g.vertices.iter().map(|&x| find(&mut uf, x)).collect::<BTreeSet<_>>().len();
        // on a sphere the complement is a disk iff H is a tree
        let want = comps == 1 && e == v - 1;
        assert_eq!(topology::is_cut_graph(&mesh, &g), want, "mask {mask:b}");
    }
}

#[test]
fn reduced_graph_of_tree_cotree_has_euler_rank() {
    for (name, mesh) in closed() {
        let tc = topology::tree_cotree_cut_graph(&mesh, &mesh.perturb(0), 0).unwrap();
        let r = topology::reduce(&mesh, &tc.cut_graph).unwrap();
        let inv = topology::invariants(&mesh);
        if inv.genus == 0 {
            assert!(r.arcs.is_empty(), "{name}");
            continue;
        }
        assert_eq!(r.arcs.len() as i64 - r.nodes.len() as i64 + 1, 2 - inv.chi, "{name}");
        // a single loop keeps one node of degree two
        let single_loop = r.nodes.len() == 1 && r.arcs.len() == 1;
        assert!(single_loop || r.nodes.iter().all(|&v| r.node_degree(v) >= 3), "{name}");
        let b = SizeBounds::for_surface(&inv).unwrap();
        assert!(b.contains(r.nodes.len(), r.arcs.len()), "{name}: {b:?}");
    }
}

#[test]
fn size_bounds_table() {
    let inv = |chi, orientable, boundaries| {
        let m = gen::tetrahedron();
        let mut i = topology::invariants(&m);
        i.chi = chi;
        i.orientable = orientable;
        i.boundaries = boundaries;
        let deficit = 2 - chi - boundaries as i64;
        i.genus = if orientable { deficit / 2 } else { deficit };
        i
    };
    assert_eq!(SizeBounds::for_surface(&inv(2, true, 0)), None);
    assert_eq!(SizeBounds::for_surface(&inv(1, true, 1)), None);
    let torus = SizeBounds::for_surface(&inv(0, true, 0)).unwrap();
    assert_eq!(torus, SizeBounds { nodes: (1, 2), arcs: (2, 3) });
    let annulus = SizeBounds::for_surface(&inv(0, true, 2)).unwrap();
    assert_eq!(annulus, SizeBounds { nodes: (2, 2), arcs: (3, 3) });
    let rp2 = SizeBounds::for_surface(&inv(1, false, 0)).unwrap();
    assert_eq!(rp2, SizeBounds { nodes: (1, 2), arcs: (1, 3) });
}

#[test]
fn schema_word_lists_each_interior_cut_edge_twice() {
    for (name, mesh) in closed() {
        let tc = topology::tree_cotree_cut_graph(&mesh, &mesh.perturb(0), 0).unwrap();
        let word = topology::schema_boundary_word(&mesh, &tc.cut_graph).unwrap();
        assert_eq!(word.len(), 2 * tc.cut_graph.edges.len(), "{name}");
        for &e in &tc.cut_graph.edges {
            assert_eq!(word.iter().filter(|s| s.0 == e).count(), 2, "{name} edge {e}");
        }
    }
}

#[test]
fn json_round_trip() {
    let mesh = gen::csaszar_torus();
    let tc = topology::tree_cotree_cut_graph(&mesh, &mesh.perturb(0), 0).unwrap();
    let json = tc.cut_graph.to_json(&mesh);
    let back = CutGraph::from_json(&mesh, &json).unwrap();
    assert_eq!(back, tc.cut_graph);
}
