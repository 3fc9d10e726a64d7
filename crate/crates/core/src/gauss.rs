//! Eight-point Gauss-Legendre rules, composite and adaptive.

use crate::scalar::{count, lit, CompensatedSum, Scalar};

const NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Gauss-Legendre nodes and weights mapped to `[a, b]`.
pub(crate) fn rule<T: Scalar>(a: T, b: T) -> [(T, T); 8] {
    let half = lit::<T>(0.5);
    let mid = (a + b) * half;
    let rad = (b - a) * half;
    let mut out = [(T::zero(), T::zero()); 8];
    for k in 0..4 {
        let x = lit::<T>(NODES[k]) * rad;
        let w = lit::<T>(WEIGHTS[k]) * rad;
        out[2 * k] = (mid - x, w);
        out[2 * k + 1] = (mid + x, w);
    }
    out
}

fn panel<T: Scalar, E, F: FnMut(T) -> Result<T, E>>(f: &mut F, a: T, b: T) -> Result<T, E> {
    let mut acc = CompensatedSum::new();
    for (x, w) in rule(a, b) {
        acc.add(w * f(x)?);
    }
    Ok(acc.total())
}

/// Composite rule over `panels` equal panels.
pub(crate) fn composite<T, E, F>(mut f: F, a: T, b: T, panels: usize) -> Result<T, E>
where
    T: Scalar,
    F: FnMut(T) -> Result<T, E>,
{
    let step = (b - a) / count::<T>(panels);
    let mut acc = CompensatedSum::new();
    for k in 0..panels {
        let lo = a + step * count::<T>(k);
        let hi = if k + 1 == panels { b } else { lo + step };
        acc.add(panel(&mut f, lo, hi)?);
    }
    Ok(acc.total())
}

/// Bisects until a panel and its two halves agree to `tol` (absolute, split
/// evenly between halves) or `depth` runs out.
pub(crate) fn adaptive<T, E, F>(mut f: F, a: T, b: T, tol: T, depth: u32) -> Result<T, E>
where
    T: Scalar,
    F: FnMut(T) -> Result<T, E>,
{
    let whole = panel(&mut f, a, b)?;
    adaptive_step(&mut f, a, b, whole, tol, depth)
}

fn adaptive_step<T, E, F>(f: &mut F, a: T, b: T, whole: T, tol: T, depth: u32) -> Result<T, E>
where
    T: Scalar,
    F: FnMut(T) -> Result<T, E>,
{
    let mid = (a + b) * lit(0.5);
    let left = panel(f, a, mid)?;
    let right = panel(f, mid, b)?;
    if depth == 0 || (left + right - whole).abs() <= tol {
        return Ok(left + right);
    }
    let half_tol = tol * lit(0.5);
    Ok(adaptive_step(f, a, mid, left, half_tol, depth - 1)?
        + adaptive_step(f, mid, b, right, half_tol, depth - 1)?)
}
