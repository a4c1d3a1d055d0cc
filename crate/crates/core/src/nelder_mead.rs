//! Derivative-free simplex maximizer (reflect / expand / contract / shrink).

use crate::scalar::Real;

#[derive(Debug, Clone)]
pub struct NelderMeadOptions<T> {
    /// Stop when every vertex is within `xtol` (max-norm) of the best one.
    pub xtol: T,
    /// Stop when the spread of vertex values is below `ftol`.
    pub ftol: T,
    pub max_iter: usize,
}

impl<T: Real> Default for NelderMeadOptions<T> {
    fn default() -> Self {
        Self { xtol: T::lit(1e-10), ftol: T::zero(), max_iter: 2000 }
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadResult<T> {
    pub x: Vec<T>,
    pub value: T,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// Best vertex value after each iteration.
    pub trace: Vec<T>,
}

/// Maximizes `f` starting from a simplex around `x0` with per-coordinate
/// offsets `step`.
pub fn maximize<T: Real, F: FnMut(&[T]) -> T>(
    mut f: F,
    x0: &[T],
    step: &[T],
    opts: &NelderMeadOptions<T>,
) -> NelderMeadResult<T> {
    let n = x0.len();
    assert_eq!(step.len(), n, "step length must match x0");
    let (alpha, gamma, rho, sigma) = (T::one(), T::lit(2.0), T::lit(0.5), T::lit(0.5));
    let mut evaluations = 0usize;
    // Internally minimize g = −f; NaN counts as worst.
    let mut g = |x: &[T]| {
        evaluations += 1;
        let v = -f(x);
        if v.is_nan() {
            T::infinity()
        } else {
            v
        }
    };

    let mut simplex: Vec<Vec<T>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] = x[i] + step[i];
        simplex.push(x);
    }
    let mut vals: Vec<T> = simplex.iter().map(|x| g(x)).collect();
    let mut trace = Vec::new();
    let mut iterations = 0;
    let mut converged = false;

    let combine = |a: &[T], b: &[T], t: T| -> Vec<T> {
        a.iter().zip(b).map(|(&ai, &bi)| ai + t * (bi - ai)).collect()
    };

    while iterations < opts.max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).expect("no NaN"));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let size = simplex[1..]
            .iter()
            .flat_map(|x| x.iter().zip(&simplex[0]).map(|(&a, &b)| (a - b).abs()))
            .fold(T::zero(), T::max);
        let spread = vals[n] - vals[0];
        if size <= opts.xtol || spread < opts.ftol {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = vec![T::zero(); n];
        for x in &simplex[..n] {
            for (c, &xi) in centroid.iter_mut().zip(x) {
                *c = *c + xi;
            }
        }
        let inv = T::one() / T::from_usize_exact(n);
        centroid.iter_mut().for_each(|c| *c = *c * inv);

        let xr = combine(&centroid, &simplex[n], -alpha);
        let fr = g(&xr);
        if fr < vals[0] {
            let xe = combine(&centroid, &simplex[n], -gamma);
            let fe = g(&xe);
            if fe < fr {
                simplex[n] = xe;
                vals[n] = fe;
            } else {
                simplex[n] = xr;
                vals[n] = fr;
            }
        } else if fr < vals[n - 1] {
            simplex[n] = xr;
            vals[n] = fr;
        } else {
            let (xc, fc) = if fr < vals[n] {
                let xc = combine(&centroid, &xr, rho);
                let fc = g(&xc);
                (xc, fc)
            } else {
                let xc = combine(&centroid, &simplex[n], rho);
                let fc = g(&xc);
                (xc, fc)
            };
            if fc < vals[n].min(fr) {
                simplex[n] = xc;
                vals[n] = fc;
            } else {
                for i in 1..=n {
                    simplex[i] = combine(&simplex[0], &simplex[i], sigma);
                    vals[i] = g(&simplex[i]);
                }
            }
        }
        let best = vals.iter().copied().fold(T::infinity(), T::min);
        trace.push(-best);
    }

    let (ib, _) = vals
        .iter()
        .enumerate()
        .fold((0, T::infinity()), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc });
    NelderMeadResult {
        x: simplex[ib].clone(),
        value: -vals[ib],
        iterations,
        evaluations,
        converged,
        trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximizes_concave_quadratic() {
        let f = |x: &[f64]| -(x[0] - 1.0).powi(2) - 3.0 * (x[1] + 2.0).powi(2) + 5.0;
        let r = maximize(f, &[0.0, 0.0], &[0.5, 0.5], &NelderMeadOptions::default());
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-8 && (r.x[1] + 2.0).abs() < 1e-8);
        assert!((r.value - 5.0).abs() < 1e-14);
    }

    #[test]
    fn trace_is_non_decreasing() {
        let f = |x: &[f64]| -((1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2));
        let r = maximize(f, &[-1.2, 1.0], &[0.1, 0.1], &NelderMeadOptions::default());
        assert!(r.trace.windows(2).all(|w| w[1] >= w[0]));
        assert!((r.x[0] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn nan_is_treated_as_worst() {
        let f = |x: &[f64]| if x[0] < 0.0 { f64::NAN } else { -(x[0] - 0.5).powi(2) };
        let r = maximize(f, &[0.1], &[0.3], &NelderMeadOptions::default());
        assert!((r.x[0] - 0.5).abs() < 1e-8);
    }

    #[test]
    fn respects_iteration_cap() {
        let f = |x: &[f64]| -x[0].abs();
        let opts = NelderMeadOptions { xtol: 0.0, ftol: -1.0, max_iter: 7 };
        let r = maximize(f, &[3.0], &[1.0], &opts);
        assert_eq!(r.iterations, 7);
        assert!(!r.converged);
    }
}
