//! C ABI over the `cutgraph` crate.
//!
//! Meshes and cut graphs are opaque heap handles released with their
//! `_free` functions. Every fallible call returns a [`CgStatus`]; on failure
//! [`cg_last_error`] describes the problem until the next call on the same
//! thread. Strings returned by the library are freed with
//! [`cg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cutgraph::cycles::{self, Target};
use cutgraph::exact::{self, Budget};
use cutgraph::off::{self, WeightPolicy};
use cutgraph::topology;
use cutgraph::{greedy, CutGraph, Error, Mesh};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidInput = 2,
    BudgetExceeded = 3,
    NotFound = 4,
    Panic = 5,
}

/// Opaque mesh handle.
pub struct CgMesh {
    mesh: Mesh,
}

/// Opaque cut graph handle. Edge and vertex ids refer to the mesh it was
/// computed on.
pub struct CgCutGraph {
    graph: CutGraph,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct CgInvariants {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub chi: i64,
    pub orientable: bool,
    pub genus: i64,
    pub boundaries: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> CgStatus {
    match err {
        Error::BudgetExceeded { .. } | Error::TooLarge(_) => CgStatus::BudgetExceeded,
        _ => CgStatus::InvalidInput,
    }
}

/// Runs `f`, recording any error or panic message.
fn guard(f: impl FnOnce() -> Result<(), (CgStatus, String)>) -> CgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CgStatus::Panic
        }
    }
}

fn lib<T>(r: cutgraph::Result<T>) -> Result<T, (CgStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn non_null<'a, T>(p: *const T, name: &str) -> Result<&'a T, (CgStatus, String)> {
    // SAFETY: callers pass either null or a pointer obtained from this library.
    unsafe { p.as_ref() }.ok_or((CgStatus::NullArgument, format!("{name} is null")))
}

fn out_ptr<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, (CgStatus, String)> {
    // SAFETY: callers pass either null or a valid writable location.
    unsafe { p.as_mut() }.ok_or((CgStatus::NullArgument, format!("{name} is null")))
}

fn target(essential: bool) -> Target {
    if essential {
        Target::Essential
    } else {
        Target::NonSeparating
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn cg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses NUL-terminated OFF text. Weights are unit, or euclidean when
/// `euclidean` is set.
///
/// # Safety
/// `text` must be null or a NUL-terminated string; `out` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cg_mesh_from_off(text: *const c_char, euclidean: bool, out: *mut *mut CgMesh) -> CgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        if text.is_null() {
            return Err((CgStatus::NullArgument, "text is null".into()));
        }
        let text =
            CStr::from_ptr(text).to_str().map_err(|_| (CgStatus::InvalidInput, "OFF text is not UTF-8".into()))?;
        let policy = if euclidean { WeightPolicy::Euclidean } else { WeightPolicy::Unit };
        let mesh = lib(off::load_off(text, &policy))?;
        *out = Box::into_raw(Box::new(CgMesh { mesh }));
        Ok(())
    })
}

/// Replaces all edge weights. `weights` holds one entry per edge id.
///
/// # Safety
/// `weights` must point to `len` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn cg_mesh_set_weights(mesh: *mut CgMesh, weights: *const f64, len: usize) -> CgStatus {
    guard(|| {
        let mesh = out_ptr(mesh, "mesh")?;
        if weights.is_null() {
            return Err((CgStatus::NullArgument, "weights is null".into()));
        }
        let w = std::slice::from_raw_parts(weights, len).to_vec();
        lib(mesh.mesh.set_weights(w))
    })
}

/// Endpoints of edge `e`.
///
/// # Safety
/// `mesh` must be a live handle; `u` and `v` writable.
#[no_mangle]
pub unsafe extern "C" fn cg_mesh_edge(mesh: *const CgMesh, e: usize, u: *mut usize, v: *mut usize) -> CgStatus {
    guard(|| {
        let mesh = &non_null(mesh, "mesh")?.mesh;
        if e >= mesh.num_edges() {
            return Err((CgStatus::InvalidInput, format!("edge {e} out of range")));
        }
        let [a, b] = mesh.edge(e);
        *out_ptr(u, "u")? = a;
        *out_ptr(v, "v")? = b;
        Ok(())
    })
}

/// # Safety
/// `mesh` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cg_mesh_invariants(mesh: *const CgMesh, out: *mut CgInvariants) -> CgStatus {
    guard(|| {
        let mesh = &non_null(mesh, "mesh")?.mesh;
        let inv = topology::invariants(mesh);
        *out_ptr(out, "out")? = CgInvariants {
            vertices: mesh.num_vertices(),
            edges: mesh.num_edges(),
            faces: mesh.num_faces(),
            chi: inv.chi,
            orientable: inv.orientable,
            genus: inv.genus,
            boundaries: inv.boundaries,
        };
        Ok(())
    })
}

/// # Safety
/// `mesh` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cg_mesh_free(mesh: *mut CgMesh) {
    if !mesh.is_null() {
        drop(Box::from_raw(mesh));
    }
}

/// Weight of the shortest non-separating (or essential) cycle. Returns
/// `CG_STATUS_NOT_FOUND` when the surface has none.
///
/// # Safety
/// `mesh` must be a live handle; `weight` writable.
#[no_mangle]
pub unsafe extern "C" fn cg_shortest_cycle(
    mesh: *const CgMesh,
    seed: u64,
    essential: bool,
    weight: *mut f64,
) -> CgStatus {
    guard(|| {
        let mesh = &non_null(mesh, "mesh")?.mesh;
        let w = out_ptr(weight, "weight")?;
        match cycles::shortest_cycle(mesh, &mesh.perturb(seed), target(essential)) {
            Some(c) => {
                *w = c.weight;
                Ok(())
            }
            None => Err((CgStatus::NotFound, "no such cycle".into())),
        }
    })
}

/// Greedy approximate minimum cut graph.
///
/// # Safety
/// `mesh` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cg_approx_cut_graph(
    mesh: *const CgMesh,
    seed: u64,
    essential: bool,
    out: *mut *mut CgCutGraph,
) -> CgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let mesh = &non_null(mesh, "mesh")?.mesh;
        let graph = lib(greedy::approx_min_cut_graph(mesh, seed, target(essential)))?;
        *out = Box::into_raw(Box::new(CgCutGraph { graph }));
        Ok(())
    })
}

/// Exact minimum cut graph; fails with `CG_STATUS_BUDGET_EXCEEDED` on
/// meshes with more than `max_edges` edges.
///
/// # Safety
/// `mesh` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cg_exact_cut_graph(
    mesh: *const CgMesh,
    seed: u64,
    max_edges: usize,
    out: *mut *mut CgCutGraph,
) -> CgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let mesh = &non_null(mesh, "mesh")?.mesh;
        let budget = Budget { max_edges, ..Budget::default() };
        let graph = lib(exact::exact_min_cut_graph(mesh, &mesh.perturb(seed), budget))?;
        *out = Box::into_raw(Box::new(CgCutGraph { graph }));
        Ok(())
    })
}

/// Builds a cut graph handle from edge ids, for checking with
/// [`cg_is_cut_graph`].
///
/// # Safety
/// `edges` must point to `len` readable ids (or be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn cg_cut_graph_from_edges(
    mesh: *const CgMesh,
    edges: *const usize,
    len: usize,
    out: *mut *mut CgCutGraph,
) -> CgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let mesh = &non_null(mesh, "mesh")?.mesh;
        let ids: &[usize] = if len == 0 {
            &[]
        } else {
            if edges.is_null() {
                return Err((CgStatus::NullArgument, "edges is null".into()));
            }
            std::slice::from_raw_parts(edges, len)
        };
        if let Some(&e) = ids.iter().find(|&&e| e >= mesh.num_edges()) {
            return Err((CgStatus::InvalidInput, format!("edge {e} out of range")));
        }
        let graph = CutGraph::from_edges(mesh, ids.iter().copied());
        *out = Box::into_raw(Box::new(CgCutGraph { graph }));
        Ok(())
    })
}

/// # Safety
/// Both handles must be live; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn cg_is_cut_graph(mesh: *const CgMesh, graph: *const CgCutGraph, result: *mut bool) -> CgStatus {
    guard(|| {
        let mesh = &non_null(mesh, "mesh")?.mesh;
        let g = &non_null(graph, "graph")?.graph;
        if !belongs(mesh, g) {
            return Err((CgStatus::InvalidInput, "cut graph does not belong to this mesh".into()));
        }
        *out_ptr(result, "result")? = topology::is_cut_graph(mesh, g);
        Ok(())
    })
}

/// Total weight, or NaN for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cg_cut_graph_weight(graph: *const CgCutGraph) -> f64 {
    graph.as_ref().map_or(f64::NAN, |g| g.graph.total_weight)
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cg_cut_graph_edge_count(graph: *const CgCutGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.edges.len())
}

/// Copies up to `cap` edge ids in increasing order and returns the number
/// of edges in the graph.
///
/// # Safety
/// `graph` must be a live handle; `ids` must have room for `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn cg_cut_graph_edges(graph: *const CgCutGraph, ids: *mut usize, cap: usize) -> usize {
    let Some(g) = graph.as_ref() else { return 0 };
    if !ids.is_null() {
        for (i, &e) in g.graph.edges.iter().take(cap).enumerate() {
            *ids.add(i) = e;
        }
    }
    g.graph.edges.len()
}

/// The cut graph as JSON `{vertices, edges, totalWeight}`; free the string
/// with [`cg_string_free`].
///
/// # Safety
/// Both handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cg_cut_graph_to_json(
    mesh: *const CgMesh,
    graph: *const CgCutGraph,
    out: *mut *mut c_char,
) -> CgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let mesh = &non_null(mesh, "mesh")?.mesh;
        let g = &non_null(graph, "graph")?.graph;
        let text = lib(json_string(mesh, g))?;
        *out = CString::new(text).map_err(|e| (CgStatus::InvalidInput, e.to_string()))?.into_raw();
        Ok(())
    })
}

fn belongs(mesh: &Mesh, g: &CutGraph) -> bool {
    g.edges.iter().all(|&e| e < mesh.num_edges()) && g.vertices.iter().all(|&v| v < mesh.num_vertices())
}

fn json_string(mesh: &Mesh, g: &CutGraph) -> cutgraph::Result<String> {
    if !belongs(mesh, g) {
        return Err(Error::Input("cut graph does not belong to this mesh".into()));
    }
    Ok(g.to_json_string(mesh))
}

/// # Safety
/// `graph` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cg_cut_graph_free(graph: *mut CgCutGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
