//! Nelder–Mead simplex search, written as a maximizer.

use crate::scalar::Real;

#[derive(Debug, Clone, Copy)]
pub struct NelderMead<T> {
    pub max_iters: usize,
    /// Stop once `f_best − f_worst` over the simplex is at most this.
    pub tol: T,
    /// Edge length of the initial simplex along each axis.
    pub step: T,
}

#[derive(Debug, Clone)]
pub struct Outcome<T> {
    pub x: Vec<T>,
    pub value: T,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// `(iteration, best value so far)` each time the best vertex improves.
    pub trace: Vec<(usize, T)>,
}

impl<T: Real> NelderMead<T> {
    pub fn maximize(&self, mut f: impl FnMut(&[T]) -> T, x0: Vec<T>) -> Outcome<T> {
        let n = x0.len();
        let mut evals = 0usize;
        let mut eval = |x: &[T]| {
            evals += 1;
            let v = f(x);
            // Maximizing: a NaN must never win.
            if v.is_nan() {
                T::neg_infinity()
            } else {
                v
            }
        };

        let v0 = eval(&x0);
        if n == 0 {
            return Outcome { x: x0, value: v0, iterations: 0, evaluations: 1, converged: true, trace: vec![(0, v0)] };
        }
        let mut simplex: Vec<(Vec<T>, T)> = Vec::with_capacity(n + 1);
        simplex.push((x0.clone(), v0));
        for i in 0..n {
            let mut x = x0.clone();
            x[i] = x[i] + self.step;
            let v = eval(&x);
            simplex.push((x, v));
        }

        let (alpha, gamma, rho, sigma) = (T::one(), T::lit(2.0), T::lit(0.5), T::lit(0.5));
        let mut trace = vec![(0, v0)];
        let mut best_seen = v0;
        let mut converged = false;
        let mut iterations = 0;

        // Stable sort keeps earlier vertices first among ties; vertex 0 is the start.
        let sort = |s: &mut Vec<(Vec<T>, T)>| s.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());

        while iterations < self.max_iters {
            sort(&mut simplex);
            if simplex[0].1 > best_seen {
                best_seen = simplex[0].1;
                trace.push((iterations, best_seen));
            }
            if simplex[0].1 - simplex[n].1 <= self.tol {
                converged = true;
                break;
            }
            iterations += 1;

            let mut centroid = vec![T::zero(); n];
            for (x, _) in &simplex[..n] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c = *c + *xi;
                }
            }
            let inv = T::one() / T::lit(n as f64);
            centroid.iter_mut().for_each(|c| *c = *c * inv);

            let along =
                |t: T, x: &[T]| -> Vec<T> { centroid.iter().zip(x).map(|(c, xi)| *c + t * (*xi - *c)).collect() };
            let worst = simplex[n].0.clone();
            let (best_v, second_worst_v, worst_v) = (simplex[0].1, simplex[n - 1].1, simplex[n].1);

            let xr = along(-alpha, &worst);
            let vr = eval(&xr);
            if vr > best_v {
                let xe = along(-gamma, &worst);
                let ve = eval(&xe);
                simplex[n] = if ve > vr { (xe, ve) } else { (xr, vr) };
                continue;
            }
            if vr > second_worst_v {
                simplex[n] = (xr, vr);
                continue;
            }
            let accepted = if vr > worst_v {
                let xc = along(-rho, &worst);
                let vc = eval(&xc);
                (vc >= vr).then_some((xc, vc))
            } else {
                let xc = along(rho, &worst);
                let vc = eval(&xc);
                (vc > worst_v).then_some((xc, vc))
            };
            if let Some(vertex) = accepted {
                simplex[n] = vertex;
                continue;
            }
            // Shrink towards the best vertex.
            let best = simplex[0].0.clone();
            for vertex in simplex.iter_mut().skip(1) {
                let x: Vec<T> = best.iter().zip(&vertex.0).map(|(b, xi)| *b + sigma * (*xi - *b)).collect();
                let v = eval(&x);
                *vertex = (x, v);
            }
        }
        sort(&mut simplex);
        if simplex[0].1 > best_seen {
            trace.push((iterations, simplex[0].1));
        }
        let (x, value) = simplex.swap_remove(0);
        Outcome { x, value, iterations, evaluations: evals, converged, trace }
    }
}
