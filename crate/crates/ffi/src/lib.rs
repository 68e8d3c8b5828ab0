//! C ABI over the halo2d solver.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_build`
//! functions and released by the matching `*_free`. Every fallible call
//! returns a status code; on failure the message is kept per thread and can
//! be copied out with [`halo2d_last_error`].

use halo2d::angular::{solve_angular, AngularGrid, DEFAULT_BETA, DEFAULT_NODES};
use halo2d::channels::{
    build_channel_table, log_grid, rms_hyperradius, solve_bound_states, ChannelOptions, ChannelSource, ChannelTable,
    ThreeBodyState,
};
use halo2d::{twobody, zero_range, Error, PotentialSpec};
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Halo2dStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Numerical = 4,
    Contract = 5,
    BufferTooSmall = 6,
    NoScatteringLength = 7,
    Panic = 8,
}

/// Two-body potential handle.
pub struct Halo2dPotential(PotentialSpec);

/// Channel table handle.
pub struct Halo2dTable(ChannelTable);

/// Three-body levels handle.
pub struct Halo2dSpectrum(Vec<ThreeBodyState>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> Halo2dStatus {
    match e {
        Error::Config(_) | Error::Io(_) | Error::NotPointwise => Halo2dStatus::InvalidArgument,
        Error::Domain(_) => Halo2dStatus::Domain,
        Error::Contract(_) => Halo2dStatus::Contract,
        Error::ScatteringLengthUndefined(_) => Halo2dStatus::NoScatteringLength,
        _ => Halo2dStatus::Numerical,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Halo2dStatus>) -> Halo2dStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => Halo2dStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            Halo2dStatus::Panic
        }
    }
}

fn fail(e: Error) -> Halo2dStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn null() -> Halo2dStatus {
    set_error("null pointer argument");
    Halo2dStatus::NullPointer
}

/// Copies `values` into a caller buffer, always reporting the needed length.
///
/// # Safety
/// `buf` must hold `cap` doubles when non-null; `len` must be valid.
unsafe fn write_out(values: &[f64], buf: *mut f64, cap: usize, len: *mut usize) -> Result<(), Halo2dStatus> {
    if len.is_null() {
        return Err(null());
    }
    *len = values.len();
    if values.len() > cap {
        set_error(&format!("buffer holds {cap} values, {} needed", values.len()));
        return Err(Halo2dStatus::BufferTooSmall);
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null());
        }
        std::ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn halo2d_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `cap`). Returns the full message length.
///
/// # Safety
/// `buf` must point to `cap` writable bytes, or be null with `cap` = 0.
#[no_mangle]
pub unsafe extern "C" fn halo2d_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let bytes = e.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Gaussian pair V(r) = [S1·e^{−r²/2b²} + S2·e^{−2r²/b²}]/(2b²).
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn halo2d_potential_gaussian(b: f64, s1: f64, s2: f64, out: *mut *mut Halo2dPotential) -> Halo2dStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let spec = PotentialSpec::gaussian_pair(b, s1, s2).map_err(fail)?;
        *out = Box::into_raw(Box::new(Halo2dPotential(spec)));
        Ok(())
    })
}

/// Contact interaction with 2D scattering length `a`.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn halo2d_potential_zero_range(a: f64, out: *mut *mut Halo2dPotential) -> Halo2dStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let spec = PotentialSpec::zero_range(a).map_err(fail)?;
        *out = Box::into_raw(Box::new(Halo2dPotential(spec)));
        Ok(())
    })
}

/// # Safety
/// `p` must come from a `halo2d_potential_*` constructor and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn halo2d_potential_free(p: *mut Halo2dPotential) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// V(r).
///
/// # Safety
/// `p` must be a live handle and `v` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn halo2d_potential_evaluate(p: *const Halo2dPotential, r: f64, v: *mut f64) -> Halo2dStatus {
    guard(|| {
        let (Some(p), false) = (p.as_ref(), v.is_null()) else { return Err(null()) };
        *v = p.0.evaluate(r).map_err(fail)?;
        Ok(())
    })
}

/// Pair bound energies, ascending. `len` receives the count even when the
/// buffer is too small.
///
/// # Safety
/// `p` must be a live handle; `buf` must hold `cap` doubles; `len` valid.
#[no_mangle]
pub unsafe extern "C" fn halo2d_pair_energies(p: *const Halo2dPotential, buf: *mut f64, cap: usize, len: *mut usize) -> Halo2dStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(null)?;
        let levels = match &p.0 {
            PotentialSpec::ZeroRange { a } => vec![-twobody::weak_binding_energy(*a).map_err(fail)?.1],
            spec => twobody::bound_states(spec, twobody::default_e_min(spec)).map_err(fail)?,
        };
        write_out(&levels, buf, cap, len)
    })
}

/// 2D scattering length.
///
/// # Safety
/// `p` must be a live handle and `a` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn halo2d_scattering_length(p: *const Halo2dPotential, a: *mut f64) -> Halo2dStatus {
    guard(|| {
        let (Some(p), false) = (p.as_ref(), a.is_null()) else { return Err(null()) };
        *a = match &p.0 {
            PotentialSpec::ZeroRange { a } => *a,
            spec => twobody::scattering_length(spec).map_err(fail)?.a,
        };
        Ok(())
    })
}

/// The lowest `count` hyperangular eigenvalues at `rho`, spurious mode
/// included, on the default grid.
///
/// # Safety
/// `p` must be a live handle; `buf` must hold `count` doubles.
#[no_mangle]
pub unsafe extern "C" fn halo2d_angular_eigenvalues(p: *const Halo2dPotential, rho: f64, count: usize, buf: *mut f64) -> Halo2dStatus {
    guard(|| {
        let (Some(p), false) = (p.as_ref(), buf.is_null()) else { return Err(null()) };
        let grid = AngularGrid::for_range(p.0.effective_range_scale(), rho, DEFAULT_NODES, DEFAULT_BETA).map_err(fail)?;
        let sp = solve_angular(&p.0, rho, &grid, count).map_err(fail)?;
        let mut n = 0;
        write_out(&sp.lambdas, buf, count, &mut n)
    })
}

/// n-th (1-based) zero-range eigenvalue at ρ/a.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn halo2d_zero_range_lambda(rho_over_a: f64, n: usize, out: *mut f64) -> Halo2dStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = zero_range::solve_lambda_zero_range(rho_over_a, n).map_err(fail)?.lambda();
        Ok(())
    })
}

/// Lowest three-dimensional zero-range eigenvalue at ρ/a.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn halo2d_efimov3d_lowest(rho_over_a: f64, out: *mut f64) -> Halo2dStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = zero_range::efimov3d_lowest(rho_over_a).map_err(fail)?;
        Ok(())
    })
}

/// Channel table on a log grid with `per_decade` points per decade.
/// Zero-range potentials give the single-channel table.
///
/// # Safety
/// `p` must be a live handle and `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn halo2d_table_build(
    p: *const Halo2dPotential,
    rho_min: f64,
    rho_max: f64,
    per_decade: usize,
    channels: usize,
    out: *mut *mut Halo2dTable,
) -> Halo2dStatus {
    guard(|| {
        let (Some(p), false) = (p.as_ref(), out.is_null()) else { return Err(null()) };
        if !(rho_min > 0.0 && rho_max > rho_min) || per_decade == 0 {
            return Err(fail(Error::Config("need 0 < rho_min < rho_max and per_decade > 0".into())));
        }
        let grid = log_grid(rho_min, rho_max, per_decade);
        let source = match &p.0 {
            PotentialSpec::ZeroRange { a } => ChannelSource::ZeroRange { a: *a },
            spec => ChannelSource::FiniteRange(spec.clone()),
        };
        let table = build_channel_table(&source, &grid, channels, &ChannelOptions::default()).map_err(fail)?;
        *out = Box::into_raw(Box::new(Halo2dTable(table)));
        Ok(())
    })
}

/// # Safety
/// `t` must come from [`halo2d_table_build`] and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn halo2d_table_free(t: *mut Halo2dTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Lowest pair energy of the table, or 0.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn halo2d_table_threshold(t: *const Halo2dTable, out: *mut f64) -> Halo2dStatus {
    guard(|| {
        let (Some(t), false) = (t.as_ref(), out.is_null()) else { return Err(null()) };
        *out = t.0.threshold;
        Ok(())
    })
}

/// Three-body levels in the energy window (e_min, e_max).
///
/// # Safety
/// `t` must be a live handle and `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn halo2d_spectrum_solve(t: *const Halo2dTable, e_min: f64, e_max: f64, out: *mut *mut Halo2dSpectrum) -> Halo2dStatus {
    guard(|| {
        let (Some(t), false) = (t.as_ref(), out.is_null()) else { return Err(null()) };
        let states = solve_bound_states(&t.0, (e_min, e_max)).map_err(fail)?;
        *out = Box::into_raw(Box::new(Halo2dSpectrum(states)));
        Ok(())
    })
}

/// # Safety
/// `s` must come from [`halo2d_spectrum_solve`] and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn halo2d_spectrum_free(s: *mut Halo2dSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of levels; 0 for a null handle.
///
/// # Safety
/// `s` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn halo2d_spectrum_len(s: *const Halo2dSpectrum) -> usize {
    s.as_ref().map_or(0, |s| s.0.len())
}

/// Energy, excitation index and √⟨ρ²⟩ of level `i`.
///
/// # Safety
/// `s` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn halo2d_spectrum_level(
    s: *const Halo2dSpectrum,
    i: usize,
    e3: *mut f64,
    nodes: *mut usize,
    rms_rho: *mut f64,
) -> Halo2dStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(null)?;
        if e3.is_null() || nodes.is_null() || rms_rho.is_null() {
            return Err(null());
        }
        let st = s.0.get(i).ok_or_else(|| fail(Error::Config(format!("level {i} of {}", s.0.len()))))?;
        *e3 = st.e3;
        *nodes = st.nodes;
        *rms_rho = rms_hyperradius(st).map_err(fail)?;
        Ok(())
    })
}
