//! Deterministic instance generators.

use std::collections::HashMap;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::mesh::Mesh;

/// A generated surface together with cycles whose type is known by
/// construction. Cycles are edge-id lists in walk order.
#[derive(Clone, Debug)]
pub struct Generated {
    pub mesh: Mesh,
    /// One non-separating cycle per handle.
    pub meridians: Vec<Vec<usize>>,
    /// Separating essential cycles between consecutive handles.
    pub waists: Vec<Vec<usize>>,
}

fn build(coords: Vec<[f64; 3]>, faces: Vec<Vec<usize>>) -> Mesh {
    Mesh::from_polygons(coords, faces).expect("generator emits a valid complex")
}

fn cycle_edges(mesh: &Mesh, vertices: &[usize]) -> Vec<usize> {
    (0..vertices.len())
        .map(|i| {
            let (a, b) = (vertices[i], vertices[(i + 1) % vertices.len()]);
            mesh.edge_between(a, b).expect("witness follows mesh edges")
        })
        .collect()
}

pub fn tetrahedron() -> Mesh {
    let coords = vec![[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
    build(coords, vec![vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]])
}

/// A single triangle.
pub fn triangle() -> Mesh {
    build(vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], vec![vec![0, 1, 2]])
}

/// Lateral surface of a triangular prism: an annulus with 6 vertices,
/// 12 edges and 6 triangles.
pub fn prism_shell() -> Mesh {
    let mut coords = Vec::new();
    for z in [0.0, 1.0] {
        for i in 0..3 {
            let t = TAU * i as f64 / 3.0;
            coords.push([t.cos(), t.sin(), z]);
        }
    }
    let mut faces = Vec::new();
    for i in 0..3 {
        let j = (i + 1) % 3;
        faces.push(vec![i, j, 3 + j]);
        faces.push(vec![i, 3 + j, 3 + i]);
    }
    build(coords, faces)
}

/// The 7-vertex torus: every pair of vertices is joined by an edge.
pub fn csaszar_torus() -> Mesh {
    let coords = (0..7)
        .map(|i| {
            let u = TAU * i as f64 / 7.0;
            let v = TAU * (3 * i) as f64 / 7.0;
            let r = 3.0 + v.cos();
            [r * u.cos(), r * u.sin(), v.sin()]
        })
        .collect();
    let mut faces = Vec::new();
    for i in 0..7 {
        faces.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        faces.push(vec![i, (i + 3) % 7, (i + 2) % 7]);
    }
    build(coords, faces)
}

/// Icosahedron refined by repeated midpoint subdivision, projected to the
/// unit sphere.
pub fn sphere(subdivisions: usize) -> Mesh {
    let p = (1.0 + 5f64.sqrt()) / 2.0;
    let mut coords: Vec<[f64; 3]> = vec![
        [-1.0, p, 0.0],
        [1.0, p, 0.0],
        [-1.0, -p, 0.0],
        [1.0, -p, 0.0],
        [0.0, -1.0, p],
        [0.0, 1.0, p],
        [0.0, -1.0, -p],
        [0.0, 1.0, -p],
        [p, 0.0, -1.0],
        [p, 0.0, 1.0],
        [-p, 0.0, -1.0],
        [-p, 0.0, 1.0],
    ];
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..subdivisions {
        let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, coords: &mut Vec<[f64; 3]>| {
            *mid.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let (x, y) = (coords[a], coords[b]);
                coords.push([(x[0] + y[0]) / 2.0, (x[1] + y[1]) / 2.0, (x[2] + y[2]) / 2.0]);
                coords.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for &[a, b, c] in &faces {
            let ab = midpoint(a, b, &mut coords);
            let bc = midpoint(b, c, &mut coords);
            let ca = midpoint(c, a, &mut coords);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    for c in &mut coords {
        let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
        for x in c.iter_mut() {
            *x /= n;
        }
    }
    build(coords, faces.iter().map(|f| f.to_vec()).collect())
}

/// Orientable closed surface of the given genus. Genus 1 is a `res`×`res`
/// grid torus; higher genus chains torus blocks, each glued to the next
/// along a removed grid square.
pub fn torus(genus: usize, res: usize) -> Result<Generated> {
    if genus < 1 {
        return Err(Error::Input("genus must be at least 1".into()));
    }
    if res < 3 {
        return Err(Error::Input("resolution must be at least 3".into()));
    }
    let mut coords: Vec<[f64; 3]> = Vec::new();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    let mut meridian_vertices = Vec::new();
    let mut waist_vertices = Vec::new();
    // the hole square of the previous block, corners a, b, c, d
    let mut pending: Option<[usize; 4]> = None;

    for block in 0..genus {
        let len = if genus == 1 || block == 0 || block == genus - 1 { res } else { 2 * res };
        let left_hole = if block > 0 { Some(1) } else { None };
        let right_hole = if block + 1 < genus { Some(len - 2) } else { None };
        let base = coords.len();
        let mut id = vec![usize::MAX; res * len];
        let at = |i: usize, j: usize| (i % res) * len + (j % len);

        // corners of a hole at column jh, rows 1..=2
        let corners = |jh: usize| [at(1, jh), at(2, jh), at(2, jh + 1), at(1, jh + 1)];
        if let (Some(jh), Some(prev)) = (left_hole, pending) {
            // reversed gluing keeps the orientation consistent
            let [a, b, c, d] = corners(jh);
            id[a] = prev[0];
            id[d] = prev[1];
            id[c] = prev[2];
            id[b] = prev[3];
        }
        let mut fresh = base;
        for i in 0..res {
            for j in 0..len {
                let k = at(i, j);
                if id[k] == usize::MAX {
                    id[k] = fresh;
                    fresh += 1;
                    let u = TAU * j as f64 / len as f64;
                    let v = TAU * i as f64 / res as f64;
                    let r = 2.0 + v.cos();
                    coords.push([6.0 * block as f64 + r * u.cos(), r * u.sin(), v.sin()]);
                }
            }
        }
        for i in 0..res {
            for j in 0..len {
                if (left_hole == Some(j) || right_hole == Some(j)) && i == 1 {
                    continue;
                }
                let a = id[at(i, j)];
                let b = id[at(i + 1, j)];
                let c = id[at(i + 1, j + 1)];
                let d = id[at(i, j + 1)];
                faces.push(vec![a, b, c]);
                faces.push(vec![a, c, d]);
            }
        }
        if let Some(jh) = left_hole {
            let [a, b, c, d] = corners(jh);
            waist_vertices.push(vec![id[a], id[b], id[c], id[d]]);
        }
        pending = right_hole.map(|jh| corners(jh).map(|k| id[k]));
        meridian_vertices.push((0..res).map(|i| id[at(i, 0)]).collect::<Vec<_>>());
    }
    let mesh = build(coords, faces);
    let meridians = meridian_vertices.iter().map(|c| cycle_edges(&mesh, c)).collect();
    let waists = waist_vertices.iter().map(|c| cycle_edges(&mesh, c)).collect();
    Ok(Generated { mesh, meridians, waists })
}

/// Sphere made of two `m`×`m` grid sheets sharing their perimeter, with
/// the listed front cells removed as holes. Every cell is a fan around a
/// centre vertex.
pub fn punctured_sphere(m: usize, cells: &[(usize, usize)]) -> Result<Mesh> {
    if m < 1 {
        return Err(Error::Input("grid size must be at least 1".into()));
    }
    for (i, &(x, y)) in cells.iter().enumerate() {
        if x >= m || y >= m {
            return Err(Error::Input(format!("cell ({x}, {y}) outside the {m}x{m} grid")));
        }
        for &(x2, y2) in &cells[..i] {
            if x.abs_diff(x2) <= 1 && y.abs_diff(y2) <= 1 {
                return Err(Error::Input(format!(
                    "overlapping cells ({x2}, {y2}) and ({x}, {y}): holes must not share vertices"
                )));
            }
        }
    }
    let mut coords: Vec<[f64; 3]> = Vec::new();
    let mut front = vec![0usize; (m + 1) * (m + 1)];
    let mut back = vec![0usize; (m + 1) * (m + 1)];
    let on_rim = |x: usize, y: usize| x == 0 || y == 0 || x == m || y == m;
    for y in 0..=m {
        for x in 0..=m {
            let k = y * (m + 1) + x;
            let (fx, fy) = (x as f64, y as f64);
            if on_rim(x, y) {
                coords.push([fx, fy, 0.0]);
                front[k] = coords.len() - 1;
                back[k] = front[k];
            } else {
                coords.push([fx, fy, 1.0]);
                front[k] = coords.len() - 1;
                coords.push([fx, fy, -1.0]);
                back[k] = coords.len() - 1;
            }
        }
    }
    let mut faces = Vec::new();
    for (sheet, z) in [(&front, 1.0), (&back, -1.0)] {
        for y in 0..m {
            for x in 0..m {
                if z > 0.0 && cells.contains(&(x, y)) {
                    continue;
                }
                let k = |x: usize, y: usize| sheet[y * (m + 1) + x];
                let mut quad = [k(x, y), k(x + 1, y), k(x + 1, y + 1), k(x, y + 1)];
                if z < 0.0 {
                    quad.reverse();
                }
                coords.push([x as f64 + 0.5, y as f64 + 0.5, 1.2 * z]);
                let c = coords.len() - 1;
                for i in 0..4 {
                    faces.push(vec![c, quad[i], quad[(i + 1) % 4]]);
                }
            }
        }
    }
    Ok(build(coords, faces))
}

/// Weight of grid segments and diamond sides in [`steiner_hardness`].
pub const STEINER_GRID_WEIGHT: f64 = 1.0;
/// Weight of the spokes inside each grid cell.
pub const STEINER_SPOKE_WEIGHT: f64 = 4.0;
/// Weight of the spokes of the cone that closes the grid into a sphere.
pub const STEINER_APEX_WEIGHT: f64 = 100.0;

/// Punctured sphere whose minimum cut graph encodes a rectilinear Steiner
/// tree of `points`.
///
/// The grid spans `0..=m+1` in both directions. Each terminal grid point is
/// replaced by a diamond-shaped hole whose corners sit on the terminal's
/// four grid edges; each cell is a fan around a centre vertex with heavy
/// spokes, so shortest paths between points on a cell's perimeter stay on
/// the perimeter; the outer perimeter is coned off by very heavy spokes.
/// Every grid segment weighs 1, so a cut graph's weight equals the number
/// of grid segments it uses.
pub fn steiner_hardness(points: &[(usize, usize)], m: usize) -> Result<Mesh> {
    if m < 1 {
        return Err(Error::Input("grid size must be at least 1".into()));
    }
    for (i, &(x, y)) in points.iter().enumerate() {
        if x < 1 || y < 1 || x > m || y > m {
            return Err(Error::Input(format!("point ({x}, {y}) outside [1, {m}]")));
        }
        if points[..i].contains(&(x, y)) {
            return Err(Error::Input(format!("point ({x}, {y}) listed twice")));
        }
    }
    let side = m + 2;
    let is_terminal = |p: (usize, usize)| points.contains(&p);
    let mut coords: Vec<[f64; 3]> = Vec::new();
    let mut grid = HashMap::new();
    for y in 0..side {
        for x in 0..side {
            if !is_terminal((x, y)) {
                grid.insert((x, y), coords.len());
                coords.push([x as f64, y as f64, 0.0]);
            }
        }
    }
    // diamond corner of terminal t on its edge toward q
    type Cell = (usize, usize);
    let mut diamond: HashMap<(Cell, Cell), usize> = HashMap::new();
    let mut diamond_at = |t: (usize, usize), q: (usize, usize), coords: &mut Vec<[f64; 3]>| {
        *diamond.entry((t, q)).or_insert_with(|| {
            let dx = q.0 as f64 - t.0 as f64;
            let dy = q.1 as f64 - t.1 as f64;
            coords.push([t.0 as f64 + 0.25 * dx, t.1 as f64 + 0.25 * dy, 0.0]);
            coords.len() - 1
        })
    };
    let mut faces = Vec::new();
    let mut spoke_vertex = vec![false; 0];
    for y in 0..side - 1 {
        for x in 0..side - 1 {
            let corners = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)];
            let mut poly = Vec::new();
            for i in 0..4 {
                let (p, q) = (corners[i], corners[(i + 1) % 4]);
                if is_terminal(p) {
                    poly.push(diamond_at(p, q, &mut coords));
                } else {
                    poly.push(grid[&p]);
                }
                if is_terminal(q) {
                    poly.push(diamond_at(q, p, &mut coords));
                }
            }
            // a terminal corner contributes its two diamond corners in a row
            poly.dedup();
            let c = coords.len();
            coords.push([x as f64 + 0.5, y as f64 + 0.5, 0.1]);
            spoke_vertex.resize(coords.len(), false);
            spoke_vertex[c] = true;
            for i in 0..poly.len() {
                faces.push(vec![c, poly[i], poly[(i + 1) % poly.len()]]);
            }
        }
    }
    let mut rim = Vec::new();
    for x in 0..side - 1 {
        rim.push(grid[&(x, 0)]);
    }
    for y in 0..side - 1 {
        rim.push(grid[&(side - 1, y)]);
    }
    for x in (1..side).rev() {
        rim.push(grid[&(x, side - 1)]);
    }
    for y in (1..side).rev() {
        rim.push(grid[&(0, y)]);
    }
    let apex = coords.len();
    let mid = (side - 1) as f64 / 2.0;
    coords.push([mid, mid, -mid]);
    for i in 0..rim.len() {
        faces.push(vec![apex, rim[(i + 1) % rim.len()], rim[i]]);
    }
    spoke_vertex.resize(coords.len(), false);

    let mesh = build(coords, faces);
    let weights = (0..mesh.num_edges())
        .map(|e| {
            let [a, b] = mesh.edge(e);
            if a == apex || b == apex {
                STEINER_APEX_WEIGHT
            } else if spoke_vertex[a] || spoke_vertex[b] {
                STEINER_SPOKE_WEIGHT
            } else {
                STEINER_GRID_WEIGHT
            }
        })
        .collect();
    mesh.with_weights(weights)
}

/// Klein bottle as an `a`×`b` grid whose `j` direction closes with a
/// reflection of the `i` direction.
pub fn klein_bottle(a: usize, b: usize) -> Result<Mesh> {
    if a < 3 || b < 3 {
        return Err(Error::Input("klein bottle grid needs at least 3x3 cells".into()));
    }
    let id = |i: usize, j: usize| -> usize {
        if j == b {
            ((a - i % a) % a) * b
        } else {
            (i % a) * b + j
        }
    };
    let coords = (0..a)
        .flat_map(|i| {
            (0..b).map(move |j| {
                let u = TAU * j as f64 / b as f64;
                let v = TAU * i as f64 / a as f64;
                [u.cos() * (2.0 + v.cos()), u.sin() * (2.0 + v.cos()), v.sin()]
            })
        })
        .collect();
    let mut faces = Vec::new();
    for i in 0..a {
        for j in 0..b {
            let (p, q, r, s) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            faces.push(vec![p, q, r]);
            faces.push(vec![p, r, s]);
        }
    }
    Mesh::from_polygons(coords, faces)
}

/// The 6-vertex projective plane (half of the icosahedron).
pub fn projective_plane() -> Mesh {
    let faces =
        [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2], [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4]];
    let mut coords = vec![[0.0, 0.0, 1.0]];
    for i in 0..5 {
        let t = TAU * i as f64 / 5.0;
        coords.push([t.cos(), t.sin(), 0.3]);
    }
    build(coords, faces.iter().map(|f| f.iter().map(|&v| v - 1).collect()).collect())
}

/// Names accepted by [`suite`].
pub const SUITES: [&str; 5] = ["sphere", "punctured", "g1", "g2", "all"];

/// Named instance families with unit weights, in a fixed order.
pub fn suite(name: &str) -> Result<Vec<(String, Mesh)>> {
    let mut out: Vec<(String, Mesh)> = Vec::new();
    let sphere_family = |out: &mut Vec<(String, Mesh)>| {
        out.push(("tetrahedron".into(), tetrahedron()));
        out.push(("icosahedron".into(), sphere(0)));
        out.push(("sphere-1".into(), sphere(1)));
    };
    let punctured_family = |out: &mut Vec<(String, Mesh)>| -> Result<()> {
        out.push(("triangle".into(), triangle()));
        out.push(("prism".into(), prism_shell()));
        out.push(("punctured-3-k1".into(), punctured_sphere(3, &[(1, 1)])?));
        out.push(("punctured-3-k2".into(), punctured_sphere(3, &[(0, 0), (2, 2)])?));
        out.push(("punctured-3-k4".into(), punctured_sphere(3, &[(0, 0), (0, 2), (2, 0), (2, 2)])?));
        Ok(())
    };
    let g1_family = |out: &mut Vec<(String, Mesh)>| -> Result<()> {
        out.push(("csaszar".into(), csaszar_torus()));
        out.push(("projective-plane".into(), projective_plane()));
        out.push(("torus-1-3".into(), torus(1, 3)?.mesh));
        out.push(("torus-1-4".into(), torus(1, 4)?.mesh));
        Ok(())
    };
    match name {
        "sphere" => sphere_family(&mut out),
        "punctured" => punctured_family(&mut out)?,
        "g1" => g1_family(&mut out)?,
        "g2" => {
            g1_family(&mut out)?;
            out.push(("klein-3-3".into(), klein_bottle(3, 3)?));
            out.push(("torus-2-3".into(), torus(2, 3)?.mesh));
        }
        "all" => {
            sphere_family(&mut out);
            punctured_family(&mut out)?;
            g1_family(&mut out)?;
            out.push(("klein-3-3".into(), klein_bottle(3, 3)?));
            out.push(("torus-2-3".into(), torus(2, 3)?.mesh));
            out.push(("torus-3-3".into(), torus(3, 3)?.mesh));
        }
        _ => return Err(Error::Input(format!("unknown suite '{name}'; expected one of {}", SUITES.join(", ")))),
    }
    Ok(out)
}
