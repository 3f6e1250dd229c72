//! Levenberg–Marquardt fit of `F S Fᵀ` to the specified entries.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::cholesky_solve_in_place;

/// Iterations between stall checks.
const STALL_WINDOW: usize = 25;
/// Required relative improvement per stall window while above threshold.
const STALL_RATIO: f64 = 0.99;
/// Extra iterations spent driving an accepted fit towards exactness.
const POLISH_ITERS: usize = 200;

/// Specified entries in scaled units, 0-based, `i <= j`.
pub(crate) struct Problem {
    pub n: usize,
    pub entries: Vec<(usize, usize, f64)>,
    /// Success threshold on the sum of squared residuals.
    pub threshold: f64,
    /// Polishing stops once the sum of squares drops below this.
    pub polish_floor: f64,
    pub max_iter: usize,
}

pub(crate) struct Fit {
    /// `n × r` factor, row-major.
    pub f: Vec<f64>,
    pub success: bool,
}

/// Reusable buffers for one rank.
pub(crate) struct Workspace {
    r: usize,
    jac: Vec<f64>,
    normal: Vec<f64>,
    chol: Vec<f64>,
    grad: Vec<f64>,
    step: Vec<f64>,
    trial: Vec<f64>,
    res: Vec<f64>,
    trial_res: Vec<f64>,
}

impl Workspace {
    pub fn new(p: &Problem, r: usize) -> Self {
        let np = p.n * r;
        Workspace {
            r,
            jac: vec![0.0; p.entries.len() * np],
            normal: vec![0.0; np * np],
            chol: vec![0.0; np * np],
            grad: vec![0.0; np],
            step: vec![0.0; np],
            trial: vec![0.0; np],
            res: vec![0.0; p.entries.len()],
            trial_res: vec![0.0; p.entries.len()],
        }
    }
}

fn residuals(p: &Problem, r: usize, signs: &[f64], f: &[f64], out: &mut [f64]) -> f64 {
    let mut cost = 0.0;
    for (e, &(i, j, t)) in p.entries.iter().enumerate() {
        let mut v = 0.0;
        for k in 0..r {
            v += signs[k] * f[i * r + k] * f[j * r + k];
        }
        let d = v - t;
        out[e] = d;
        cost += d * d;
    }
    cost
}

/// One multi-iteration fit from a random start with entries of standard
/// deviation `sigma`.
pub(crate) fn fit<R: Rng + ?Sized>(p: &Problem, signs: &[f64], sigma: f64, ws: &mut Workspace, rng: &mut R) -> Fit {
    let r = ws.r;
    let np = p.n * r;
    let m = p.entries.len();
    let mut f: Vec<f64> = (0..np).map(|_| sigma * rng.sample::<f64, _>(StandardNormal)).collect();
    let mut cost = residuals(p, r, signs, &f, &mut ws.res);
    let mut mu = -1.0;
    let mut nu = 2.0;
    let mut window_start = cost;
    let mut success = false;
    let mut polish = 0;

    for it in 0..p.max_iter + POLISH_ITERS {
        if !success && cost <= p.threshold {
            success = true;
        }
        if success {
            if cost <= p.polish_floor || polish >= POLISH_ITERS {
                break;
            }
            polish += 1;
        } else if it >= p.max_iter {
            break;
        } else if it > 0 && it % STALL_WINDOW == 0 {
            if cost > STALL_RATIO * window_start {
                break;
            }
            window_start = cost;
        }

        // Jacobian rows touch only the factor rows i and j.
        ws.jac.iter_mut().for_each(|x| *x = 0.0);
        for (e, &(i, j, _)) in p.entries.iter().enumerate() {
            let row = &mut ws.jac[e * np..(e + 1) * np];
            for k in 0..r {
                row[i * r + k] += signs[k] * f[j * r + k];
                row[j * r + k] += signs[k] * f[i * r + k];
            }
        }
        ws.normal.iter_mut().for_each(|x| *x = 0.0);
        ws.grad.iter_mut().for_each(|x| *x = 0.0);
        for e in 0..m {
            let row = &ws.jac[e * np..(e + 1) * np];
            let (i, j, _) = p.entries[e];
            let idx: [usize; 2] = [i, j];
            for (s, &a) in idx.iter().enumerate() {
                if s == 1 && j == i {
                    break;
                }
                for k in 0..r {
                    let ca = a * r + k;
                    let va = row[ca];
                    if va == 0.0 {
                        continue;
                    }
                    ws.grad[ca] += va * ws.res[e];
                    for (t, &b) in idx.iter().enumerate() {
                        if t == 1 && j == i {
                            break;
                        }
                        for l in 0..r {
                            let cb = b * r + l;
                            ws.normal[ca * np + cb] += va * row[cb];
                        }
                    }
                }
            }
        }
        let gmax = ws.grad.iter().fold(0.0f64, |a, g| a.max(g.abs()));
        if gmax < 1e-300 {
            break;
        }
        if mu < 0.0 {
            let dmax = (0..np).fold(0.0f64, |a, d| a.max(ws.normal[d * np + d]));
            mu = 1e-3 * dmax.max(1e-12);
        }

        ws.chol.copy_from_slice(&ws.normal);
        for d in 0..np {
            ws.chol[d * np + d] += mu;
        }
        ws.step.iter_mut().zip(&ws.grad).for_each(|(s, g)| *s = -g);
        if !cholesky_solve_in_place(&mut ws.chol, np, &mut ws.step) {
            mu *= nu;
            nu *= 2.0;
            continue;
        }
        for ((t, &x), &s) in ws.trial.iter_mut().zip(&f).zip(&ws.step) {
            *t = x + s;
        }
        let new_cost = residuals(p, r, signs, &ws.trial, &mut ws.trial_res);
        // Gain ratio against the linear model, costs being ½‖res‖².
        let predicted: f64 = 0.5 * (0..np).map(|q| ws.step[q] * (mu * ws.step[q] - ws.grad[q])).sum::<f64>();
        let actual = 0.5 * (cost - new_cost);
        if new_cost.is_finite() && actual > 0.0 {
            let rho = if predicted > 0.0 { actual / predicted } else { 1.0 };
            f.copy_from_slice(&ws.trial);
            cost = new_cost;
            core::mem::swap(&mut ws.res, &mut ws.trial_res);
            let t = 2.0 * rho - 1.0;
            mu *= (1.0f64 / 3.0).max(1.0 - t * t * t);
            nu = 2.0;
        } else {
            mu *= nu;
            nu *= 2.0;
            if !mu.is_finite() || mu > 1e300 {
                break;
            }
        }
    }
    let success = success || cost <= p.threshold;
    Fit { f, success }
}
