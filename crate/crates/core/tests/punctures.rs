mod common;

use cutgraph::exact::{self, Budget};
use cutgraph::punctures;
use cutgraph::topology;
use cutgraph::{gen, Mesh};

fn punctured() -> Vec<(String, Mesh)> {
    let mut out = common::holed_meshes();
    out.push(("punctured-sphere-4-k3".into(), gen::punctured_sphere(4, &[(0, 0), (3, 0), (1, 3)]).unwrap()));
    out.push(("steiner-3".into(), gen::steiner_hardness(&[(1, 1), (3, 2), (2, 3)], 3).unwrap()));
    out
}

#[test]
fn mst_weight_equals_metric_mst() {
    for (name, mesh) in punctured() {
        for seed in 0..3 {
            let mesh = common::reweighted(&mesh, seed, 1.0, 2.0);
            let pm = punctures::collapse_boundaries(&mesh, &mesh.perturb(seed));
            let tree = punctures::puncture_spanning_tree(&pm).unwrap();
            let dist = common::floyd_warshall(&mesh, mesh.weights(), true);
            let terminals: Vec<usize> = topology::boundary_walks(&mesh).iter().map(|w| w[0].from).collect();
            let want = common::metric_mst(&dist, &terminals);
            assert!((tree.mst_weight - want).abs() < 1e-9, "{name} seed {seed}: {} vs {want}", tree.mst_weight);
            assert!(tree.tree_weight <= tree.mst_weight + 1e-9, "{name}");
        }
    }
}

#[test]
fn tree_cuts_genus_zero_surfaces_into_a_disk() {
    for (name, mesh) in punctured() {
        if topology::invariants(&mesh).genus != 0 {
            continue;
        }
        let pm = punctures::collapse_boundaries(&mesh, &mesh.perturb(0));
        let tree = punctures::puncture_spanning_tree(&pm).unwrap();
        let g = punctures::tree_cut_graph(&mesh, &pm, &tree);
        assert!(topology::is_cut_graph(&mesh, &g), "{name}");
    }
}

#[test]
fn tree_within_twice_steiner() {
    for (name, mesh) in punctured() {
        let pm = punctures::collapse_boundaries(&mesh, &mesh.perturb(0));
        if pm.punctures.len() > 4 {
            continue;
        }
        let tree = punctures::puncture_spanning_tree(&pm).unwrap();
        let steiner = punctures::brute_force_steiner(&pm).unwrap();
        let dist = common::floyd_warshall(&mesh, mesh.weights(), true);
        let terminals: Vec<usize> = pm.walks.iter().map(|w| mesh.edge(w[0])[0]).collect();
        let oracle = common::brute_steiner(&dist, &terminals, terminals.len().saturating_sub(2));
        assert!((steiner - oracle).abs() < 1e-9, "{name}: {steiner} vs {oracle}");
        assert!(tree.mst_weight <= 2.0 * steiner + 1e-9, "{name}");
    }
}

#[test]
fn closed_surface_has_no_punctures() {
    let mesh = gen::csaszar_torus();
    let pm = punctures::collapse_boundaries(&mesh, &mesh.perturb(0));
    assert!(pm.punctures.is_empty());
    assert!(punctures::puncture_spanning_tree(&pm).is_err());
}

#[test]
fn minimum_cut_graph_is_preserved_by_collapse() {
    // The minimum cut graph of a surface with boundary weighs the same as a
    // minimum cut graph of the collapsed surface required to reach every
    // puncture.
    for (name, mesh) in punctured() {
        let pw = mesh.perturb(0);
        let pm = punctures::collapse_boundaries(&mesh, &pw);
        // free spokes leave the search without a useful lower bound
        if pm.mesh.num_edges() > 30 {
            continue;
        }
        let direct = exact::exact_min_cut_graph(&mesh, &pw, Budget::unlimited_edges()).unwrap();
        let collapsed =
            exact::exact_min_cut_graph_with(&pm.mesh, &pm.costs, &pm.punctures, Budget::unlimited_edges(), None)
                .unwrap();
        assert!(
            (collapsed.cost.base - direct.total_weight).abs() < 1e-9,
            "{name}: collapsed {} vs direct {}",
            collapsed.cost.base,
            direct.total_weight
        );
        assert!(topology::is_cut_graph(&pm.mesh, &collapsed.cut_graph), "{name}");
    }
}
