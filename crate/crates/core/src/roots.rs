//! Sign-change scanning on a geometric grid and bracketed refinement.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub(crate) struct Scan {
    pub lo: f64,
    pub hi: f64,
    pub panels: usize,
    /// Number of times the range may be widened on failure.
    pub expansions: usize,
    /// Factor applied to both ends on each widening.
    pub expand_by: f64,
}

impl Scan {
    pub(crate) const SOLVER: Scan = Scan {
        lo: 1e-8,
        hi: 1e8,
        panels: 400,
        expansions: 2,
        expand_by: 1e4,
    };

    pub(crate) const SHAPE: Scan = Scan {
        lo: 1e-6,
        hi: 1e6,
        panels: 400,
        expansions: 0,
        expand_by: 1.0,
    };
}

pub(crate) const ROOT_RTOL: f64 = 1e-12;

/// All sign changes of `f` on the scan range, each refined to `ROOT_RTOL`.
/// Evaluation errors at grid points are skipped; an error anywhere inside a
/// bracket aborts. If nothing is found, the range is widened up to
/// `scan.expansions` times.
pub(crate) fn find_all<F>(what: &str, scan: Scan, mut f: F) -> Result<Vec<f64>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let decades = (scan.hi / scan.lo).log10();
    let per_decade = scan.panels as f64 / decades;
    let (mut lo, mut hi) = (scan.lo, scan.hi);
    let mut trace = String::new();
    for attempt in 0..=scan.expansions {
        if attempt > 0 {
            lo /= scan.expand_by;
            hi *= scan.expand_by;
        }
        let panels = ((hi / lo).log10() * per_decade).round() as usize;
        let roots = scan_once(lo, hi, panels, &mut f, &mut trace)?;
        if !roots.is_empty() {
            return Ok(roots);
        }
    }
    Err(Error::NoRoot {
        what: what.to_string(),
        lo,
        hi,
        trace,
    })
}

fn scan_once<F>(lo: f64, hi: f64, panels: usize, f: &mut F, trace: &mut String) -> Result<Vec<f64>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let ratio = (hi / lo).powf(1.0 / panels as f64);
    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    let mut x = lo;
    let stride = (panels / 8).max(1);
    for i in 0..=panels {
        if i == panels {
            x = hi;
        }
        let fx = f(x).ok().filter(|v| v.is_finite());
        if i % stride == 0 {
            match fx {
                Some(v) => trace.push_str(&format!("f({x:.3e})={v:.3e}; ")),
                None => trace.push_str(&format!("f({x:.3e})=n/a; ")),
            }
        }
        if let Some(fx) = fx {
            if fx == 0.0 {
                roots.push(x);
            } else if let Some((xp, fp)) = prev {
                if fp != 0.0 && fp.signum() != fx.signum() {
                    roots.push(brent(f, xp, x, fp, fx)?);
                }
            }
            prev = Some((x, fx));
        } else {
            prev = None;
        }
        x *= ratio;
    }
    Ok(roots)
}

/// Brent–Dekker refinement of a bracketed root: inverse quadratic
/// interpolation and secant steps guarded by bisection.
pub(crate) fn brent<F>(f: &mut F, a: f64, b: f64, fa: f64, fb: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut bisected = true;
    for _ in 0..200 {
        if fb == 0.0 {
            return Ok(b);
        }
        let tol = ROOT_RTOL * b.abs() + f64::MIN_POSITIVE;
        if (b - a).abs() <= tol {
            return Ok(b);
        }
        let mut s = if fa != fc && fb != fc {
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let lo = (3.0 * a + b) / 4.0;
        let out_of_range = !((s > lo.min(b)) && (s < lo.max(b)));
        let slow = if bisected {
            (s - b).abs() >= (b - c).abs() / 2.0 || (b - c).abs() < tol
        } else {
            (s - b).abs() >= (c - d).abs() / 2.0 || (c - d).abs() < tol
        };
        if out_of_range || slow {
            s = 0.5 * (a + b);
            bisected = true;
        } else {
            bisected = false;
        }
        let fs = f(s)?;
        d = c;
        c = b;
        fc = fb;
        if fa.signum() != fs.signum() {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    Ok(b)
}
