//! C ABI over `gowers-core`.
//!
//! Conventions:
//!
//! * Every function returns a [`GowersStatus`]; on failure a message is
//!   available from [`gowers_last_error`] on the same thread.
//! * Objects are opaque handles released with their `*_free` function.
//! * Strings returned through `char **` are owned by the caller and released
//!   with [`gowers_string_free`].
//! * Tuples cross the boundary as `uint64_t` arrays of length `dim`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use gowers_core::algebra::{check_scaling_identity, ScalingCheck};
use gowers_core::coloring::{parse_coloring, serialize_coloring, Coloring};
use gowers_core::domain::SearchBox;
use gowers_core::oracle::{
    exists_avoiding_coloring, find_witness, minimal_box_threshold, Avoidance, Budget,
    SearchOptions, StructureKind, StructureSpec, ThresholdOutcome, Witness,
};
use gowers_core::sat::{encode_avoidance, write_dimacs, EncodeOptions};
use gowers_core::subspace::{
    finite_products, finite_sums, gowers_product_values, gowers_sum_values, GeneratorSet,
};
use gowers_core::tuple::{KTuple, SpaceTag};
use gowers_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GowersStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    ParseError = 3,
    LimitExceeded = 4,
    SolverError = 5,
    Discrepancy = 6,
    IoError = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GowersKind {
    GowersSum = 0,
    GowersProduct = 1,
    FiniteSums = 2,
    FiniteProducts = 3,
    SumFpPair = 4,
    SumProductPair = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GowersSpace {
    Xk = 0,
    Yk = 1,
    N0k = 2,
    Nk = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GowersVerdict {
    Avoiding = 0,
    Unavoidable = 1,
    BudgetExceeded = 2,
}

/// Target structure description.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct GowersSpec {
    pub kind: GowersKind,
    pub m_sum: usize,
    /// Ignored unless `kind` is a pair kind.
    pub m_prod: usize,
    pub distinct_values: bool,
    pub closure: bool,
    pub sum_generators_positive: bool,
}

/// Result of a threshold scan. `upper` is 0 when unknown.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct GowersThreshold {
    pub resolved: bool,
    pub value: u64,
    pub lower: u64,
    pub upper: u64,
}

/// A finite coloring of a box.
pub struct GowersColoring(Coloring);

/// A list of tuples sharing one dimension.
pub struct GowersTupleList {
    dim: usize,
    items: Vec<KTuple>,
}

/// A monochromatic target inside a coloring.
pub struct GowersWitness(Witness);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GowersStatus {
    match e {
        Error::Parse { .. } | Error::Decode(_) | Error::Json(_) => GowersStatus::ParseError,
        Error::CandidateExplosion { .. } | Error::Overflow => GowersStatus::LimitExceeded,
        Error::Solver(_) => GowersStatus::SolverError,
        Error::Discrepancy { .. } | Error::Validation { .. } => GowersStatus::Discrepancy,
        Error::Io(_) => GowersStatus::IoError,
        _ => GowersStatus::InvalidArgument,
    }
}

struct Failure(GowersStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(GowersStatus::NullArgument, format!("`{what}` is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(GowersStatus::InvalidArgument, msg.into())
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GowersStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GowersStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            GowersStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(GowersStatus::ParseError, format!("`{what}` is not UTF-8")))
}

unsafe fn read_tuple(p: *const u64, dim: usize, what: &str) -> Result<KTuple, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    Ok(KTuple::new(slice::from_raw_parts(p, dim).to_vec())?)
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| invalid("string contains a NUL byte"))
}

fn kind_of(k: GowersKind) -> StructureKind {
    match k {
        GowersKind::GowersSum => StructureKind::GowersSum,
        GowersKind::GowersProduct => StructureKind::GowersProduct,
        GowersKind::FiniteSums => StructureKind::FiniteSums,
        GowersKind::FiniteProducts => StructureKind::FiniteProducts,
        GowersKind::SumFpPair => StructureKind::SumFpPair,
        GowersKind::SumProductPair => StructureKind::SumProductPair,
    }
}

fn space_of(s: GowersSpace) -> SpaceTag {
    match s {
        GowersSpace::Xk => SpaceTag::Xk,
        GowersSpace::Yk => SpaceTag::Yk,
        GowersSpace::N0k => SpaceTag::FullN0k,
        GowersSpace::Nk => SpaceTag::FullNk,
    }
}

fn spec_of(s: &GowersSpec) -> Result<StructureSpec, Failure> {
    let kind = kind_of(s.kind);
    let spec = StructureSpec {
        kind,
        m_sum: s.m_sum,
        m_prod: if kind.is_pair() { s.m_prod } else { 0 },
        distinct_values: s.distinct_values,
        closure: s.closure,
        sum_generators_positive: s.sum_generators_positive,
    };
    spec.validate()?;
    Ok(spec)
}

fn budget_of(max_nodes: u64) -> Budget {
    if max_nodes == 0 {
        Budget::unlimited()
    } else {
        Budget::nodes(max_nodes)
    }
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message describing the last failure on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn gowers_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gowers_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a coloring in the text file format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gowers_coloring_parse(
    text: *const c_char,
    out: *mut *mut GowersColoring,
) -> GowersStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let c = parse_coloring(read_str(text, "text")?)?;
        *out = boxed(GowersColoring(c));
        Ok(())
    })
}

/// Canonical text form of a coloring.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gowers_coloring_serialize(
    c: *const GowersColoring,
    out: *mut *mut c_char,
) -> GowersStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = to_c_string(serialize_coloring(&deref(c, "coloring")?.0))?;
        Ok(())
    })
}

/// Number of cells in the coloring's box; 0 for NULL.
///
/// # Safety
/// `c` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gowers_coloring_cell_count(c: *const GowersColoring) -> usize {
    c.as_ref().map_or(0, |c| c.0.cell_index().len())
}

/// Number of colors; 0 for NULL.
///
/// # Safety
/// `c` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gowers_coloring_num_colors(c: *const GowersColoring) -> u32 {
    c.as_ref().map_or(0, |c| c.0.num_colors())
}

/// Color of the cell at `coords` (length = the box dimension).
///
/// # Safety
/// `c` must be a live handle; `coords` must hold `dim` values; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn gowers_coloring_color_of(
    c: *const GowersColoring,
    coords: *const u64,
    dim: usize,
    out: *mut u32,
) -> GowersStatus {
    guard(|| {
        let c = &deref(c, "coloring")?.0;
        let out = out_ptr(out, "out")?;
        let t = read_tuple(coords, dim, "coords")?;
        *out = c
            .color_of(&t)
            .ok_or_else(|| invalid(format!("{t} is not a cell of the box")))?;
        Ok(())
    })
}

/// # Safety
/// `c` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gowers_coloring_free(c: *mut GowersColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Empty tuple list of dimension `dim` (positive).
#[no_mangle]
pub extern "C" fn gowers_tuple_list_new(dim: usize) -> *mut GowersTupleList {
    if dim == 0 {
        set_last_error("dimension must be positive".into());
        return ptr::null_mut();
    }
    boxed(GowersTupleList {
        dim,
        items: Vec::new(),
    })
}

/// Appends a tuple of the list's dimension.
///
/// # Safety
/// `list` must be a live handle; `coords` must hold `dim` values.
#[no_mangle]
pub unsafe extern "C" fn gowers_tuple_list_push(
    list: *mut GowersTupleList,
    coords: *const u64,
    dim: usize,
) -> GowersStatus {
    guard(|| {
        let list = out_ptr(list, "list")?;
        if dim != list.dim {
            return Err(invalid(format!(
                "expected dimension {}, got {dim}",
                list.dim
            )));
        }
        let t = read_tuple(coords, dim, "coords")?;
        list.items.push(t);
        Ok(())
    })
}

/// Number of tuples; 0 for NULL.
///
/// # Safety
/// `list` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gowers_tuple_list_len(list: *const GowersTupleList) -> usize {
    list.as_ref().map_or(0, |l| l.items.len())
}

/// Dimension of the tuples; 0 for NULL.
///
/// # Safety
/// `list` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gowers_tuple_list_dim(list: *const GowersTupleList) -> usize {
    list.as_ref().map_or(0, |l| l.dim)
}

/// Copies tuple `i` into `out`, which must hold the list's dimension.
///
/// # Safety
/// `list` must be a live handle; `out` must have room for `dim` values.
#[no_mangle]
pub unsafe extern "C" fn gowers_tuple_list_get(
    list: *const GowersTupleList,
    i: usize,
    out: *mut u64,
) -> GowersStatus {
    guard(|| {
        let list = deref(list, "list")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let t = list.items.get(i).ok_or_else(|| {
            invalid(format!(
                "index {i} out of range for {} tuples",
                list.items.len()
            ))
        })?;
        ptr::copy_nonoverlapping(t.coords().as_ptr(), out, list.dim);
        Ok(())
    })
}

/// # Safety
/// `list` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gowers_tuple_list_free(list: *mut GowersTupleList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Sorted distinct values of the structure generated by `gens`. `kind` must
/// be a single-structure kind.
///
/// # Safety
/// `gens` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gowers_structure_values(
    kind: GowersKind,
    gens: *const GowersTupleList,
    distinct_values: bool,
    out: *mut *mut GowersTupleList,
) -> GowersStatus {
    guard(|| {
        let gens = deref(gens, "gens")?;
        let out = out_ptr(out, "out")?;
        let g = GeneratorSet::new(gens.items.clone(), distinct_values)?;
        let items = match kind {
            GowersKind::GowersSum => gowers_sum_values(&g)?,
            GowersKind::GowersProduct => gowers_product_values(&g)?,
            GowersKind::FiniteSums => finite_sums(g.members())?,
            GowersKind::FiniteProducts => finite_products(g.members())?,
            GowersKind::SumFpPair | GowersKind::SumProductPair => {
                return Err(invalid("pair kinds do not generate a single structure"))
            }
        };
        *out = boxed(GowersTupleList {
            dim: gens.dim,
            items,
        });
        Ok(())
    })
}

/// First monochromatic target in `c`; `*out` is set to NULL when there is
/// none.
///
/// # Safety
/// `c` and `spec` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gowers_find_witness(
    c: *const GowersColoring,
    spec: *const GowersSpec,
    out: *mut *mut GowersWitness,
) -> GowersStatus {
    guard(|| {
        let c = &deref(c, "coloring")?.0;
        let spec = spec_of(deref(spec, "spec")?)?;
        let out = out_ptr(out, "out")?;
        *out = match find_witness(c, &spec)? {
            Some(w) => boxed(GowersWitness(w)),
            None => ptr::null_mut(),
        };
        Ok(())
    })
}

/// Color class of the witness; `u32::MAX` for NULL.
///
/// # Safety
/// `w` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gowers_witness_color(w: *const GowersWitness) -> u32 {
    w.as_ref().map_or(u32::MAX, |w| w.0.color)
}

/// Sorted cells covered by the witness.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gowers_witness_cells(
    w: *const GowersWitness,
    out: *mut *mut GowersTupleList,
) -> GowersStatus {
    guard(|| {
        let w = &deref(w, "witness")?.0;
        let out = out_ptr(out, "out")?;
        let items = w.generated_cells.clone();
        let dim = items.first().map_or(1, KTuple::dim);
        *out = boxed(GowersTupleList { dim, items });
        Ok(())
    })
}

/// # Safety
/// `w` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gowers_witness_free(w: *mut GowersWitness) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Decides whether some `r`-coloring of the box avoids every monochromatic
/// target. `max_nodes = 0` means no budget. `*coloring` receives the first
/// avoiding coloring, or NULL.
///
/// # Safety
/// `spec` must be valid; `verdict` and `coloring` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gowers_avoiding_coloring(
    k: usize,
    n: u64,
    space: GowersSpace,
    r: u32,
    spec: *const GowersSpec,
    max_nodes: u64,
    verdict: *mut GowersVerdict,
    coloring: *mut *mut GowersColoring,
) -> GowersStatus {
    guard(|| {
        let spec = spec_of(deref(spec, "spec")?)?;
        let verdict = out_ptr(verdict, "verdict")?;
        let coloring = out_ptr(coloring, "coloring")?;
        if k == 0 {
            return Err(invalid("k must be positive"));
        }
        let bounds = SearchBox::new(k, n, space_of(space));
        let rep = exists_avoiding_coloring(&bounds, r, &spec, budget_of(max_nodes))?;
        *coloring = ptr::null_mut();
        *verdict = match rep.outcome {
            Avoidance::Avoiding(c) => {
                *coloring = boxed(GowersColoring(c));
                GowersVerdict::Avoiding
            }
            Avoidance::Unavoidable => GowersVerdict::Unavoidable,
            Avoidance::BudgetExceeded { .. } => GowersVerdict::BudgetExceeded,
        };
        Ok(())
    })
}

/// Least box size up to `n_max` with no avoiding coloring.
///
/// # Safety
/// `spec` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gowers_threshold(
    k: usize,
    r: u32,
    spec: *const GowersSpec,
    space: GowersSpace,
    n_max: u64,
    max_nodes: u64,
    out: *mut GowersThreshold,
) -> GowersStatus {
    guard(|| {
        let spec = spec_of(deref(spec, "spec")?)?;
        let out = out_ptr(out, "out")?;
        if k == 0 || r == 0 {
            return Err(invalid("k and r must be positive"));
        }
        let opts = SearchOptions::with_budget(budget_of(max_nodes));
        let rep = minimal_box_threshold(k, r, &spec, space_of(space), n_max, &opts)?;
        *out = match rep.outcome {
            ThresholdOutcome::Threshold(v) => GowersThreshold {
                resolved: true,
                value: v,
                lower: v,
                upper: v,
            },
            ThresholdOutcome::Unresolved { lower, upper } => GowersThreshold {
                resolved: false,
                value: 0,
                lower,
                upper: upper.unwrap_or(0),
            },
        };
        Ok(())
    })
}

/// DIMACS text of the avoidance formula for one box.
///
/// # Safety
/// `spec` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gowers_encode_dimacs(
    k: usize,
    n: u64,
    space: GowersSpace,
    r: u32,
    spec: *const GowersSpec,
    out: *mut *mut c_char,
) -> GowersStatus {
    guard(|| {
        let spec = spec_of(deref(spec, "spec")?)?;
        let out = out_ptr(out, "out")?;
        if k == 0 {
            return Err(invalid("k must be positive"));
        }
        let bounds = SearchBox::new(k, n, space_of(space));
        let enc = encode_avoidance(&bounds, r, &spec, &EncodeOptions::default())?;
        *out = to_c_string(write_dimacs(&enc.formula))?;
        Ok(())
    })
}

/// Checks the scaling identity for one `(n̄, x, z, j)`. On a counterexample
/// the two sides are copied into `left` and `right` (`dim` values each) when
/// those are non-NULL.
///
/// # Safety
/// `nbar`, `x`, `z` must hold `dim` values; `passed` must be writable;
/// `left` and `right` must be NULL or have room for `dim` values.
#[no_mangle]
pub unsafe extern "C" fn gowers_check_scaling(
    nbar: *const u64,
    x: *const u64,
    z: *const u64,
    dim: usize,
    shift: usize,
    passed: *mut bool,
    left: *mut u64,
    right: *mut u64,
) -> GowersStatus {
    guard(|| {
        let nbar = read_tuple(nbar, dim, "nbar")?;
        let x = read_tuple(x, dim, "x")?;
        let z = read_tuple(z, dim, "z")?;
        let passed = out_ptr(passed, "passed")?;
        match check_scaling_identity(&nbar, &x, &z, shift)? {
            ScalingCheck::Pass => *passed = true,
            ScalingCheck::Counterexample { left: l, right: r } => {
                *passed = false;
                if !left.is_null() {
                    ptr::copy_nonoverlapping(l.coords().as_ptr(), left, dim);
                }
                if !right.is_null() {
                    ptr::copy_nonoverlapping(r.coords().as_ptr(), right, dim);
                }
            }
        }
        Ok(())
    })
}
