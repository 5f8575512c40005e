use super::{InscribedTriangle, SolverOptions};
use crate::curve::{wrap, Curve};
use crate::error::{Error, Result};
use crate::shape::TriangleShape;

/// Bracket search for the fallback starts this far from the guess and doubles.
const FALLBACK_START_WIDTH: f64 = 1e-4;
const FALLBACK_BISECTIONS: usize = 200;

struct System<'a> {
    curve: &'a Curve,
    shape: &'a TriangleShape,
}

impl System<'_> {
    fn g(&self, t: f64, s: f64) -> Option<[f64; 2]> {
        let o = self.curve.base();
        let (r, rp) = self.shape.residuals(o, &self.curve.eval(t), &self.curve.eval(s)).ok()?;
        Some([r, rp])
    }

    fn triangle(&self, t: f64, s: f64) -> Result<InscribedTriangle> {
        let (t, s) = (wrap(t), wrap(s));
        let o = self.curve.base().clone();
        let p = self.curve.eval(t);
        let q = self.curve.eval(s);
        let (residual_r, residual_r_prime) = self.shape.residuals(&o, &p, &q)?;
        Ok(InscribedTriangle {
            t_p: t,
            t_q: s,
            point_o: o,
            point_p: p,
            point_q: q,
            residual_r,
            residual_r_prime,
        })
    }
}

fn norm_inf(g: [f64; 2]) -> f64 {
    g[0].abs().max(g[1].abs())
}

/// Polishes a seed `(t0, s0)` into a triangle `△o γ(t) γ(s)` similar to
/// `shape`, with `o = γ(0)`.
///
/// Damped Newton with central differences first; when it stalls, a nested
/// bisection (inner: `s` with `‖γ(s) − o‖ = r‖γ(t) − o‖`, outer: `t` on the
/// remaining residual) takes over, which copes with the kinks of a polyline.
pub fn refine_similar(curve: &Curve, shape: &TriangleShape, t0: f64, s0: f64, opts: &SolverOptions) -> Result<InscribedTriangle> {
    if !(t0.is_finite() && s0.is_finite()) {
        return Err(Error::invalid("seed parameters must be finite"));
    }
    let sys = System { curve, shape };
    let (t, s) = newton(&sys, t0, s0, opts);
    if let Some(g) = sys.g(t, s) {
        if norm_inf(g) < opts.residual_tol {
            return sys.triangle(t, s);
        }
    }
    if let Some((tb, sb)) = nested_bisection(&sys, t0, s0) {
        if let Some(g) = sys.g(tb, sb) {
            if norm_inf(g) < opts.residual_tol {
                return sys.triangle(tb, sb);
            }
        }
    }
    let best = sys.triangle(t, s).or_else(|_| sys.triangle(t0, s0))?;
    Err(Error::RefineFailed {
        residual: best.max_residual(),
        best: Box::new(best),
    })
}

fn newton(sys: &System, t0: f64, s0: f64, opts: &SolverOptions) -> (f64, f64) {
    let (mut t, mut s) = (t0, s0);
    let Some(mut g) = sys.g(t, s) else {
        return (t, s);
    };
    let h = opts.fd_step;
    for _ in 0..opts.max_iterations {
        if norm_inf(g) < opts.residual_tol {
            break;
        }
        let (Some(gtp), Some(gtm), Some(gsp), Some(gsm)) =
            (sys.g(t + h, s), sys.g(t - h, s), sys.g(t, s + h), sys.g(t, s - h))
        else {
            break;
        };
        let j = [
            [(gtp[0] - gtm[0]) / (2.0 * h), (gsp[0] - gsm[0]) / (2.0 * h)],
            [(gtp[1] - gtm[1]) / (2.0 * h), (gsp[1] - gsm[1]) / (2.0 * h)],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if !det.is_finite() || det.abs() < 1e-300 {
            break;
        }
        let dt = -(j[1][1] * g[0] - j[0][1] * g[1]) / det;
        let ds = -(-j[1][0] * g[0] + j[0][0] * g[1]) / det;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let (tn, sn) = (t + lambda * dt, s + lambda * ds);
            if let Some(gn) = sys.g(tn, sn) {
                if norm_inf(gn) < norm_inf(g) {
                    t = tn;
                    s = sn;
                    g = gn;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (t, s)
}

/// Root of `f` near `guess`: expands a symmetric window until `f` changes
/// sign on one side (nearer side first), then bisects.
fn root_near(f: &impl Fn(f64) -> Option<f64>, guess: f64, max_width: f64) -> Option<f64> {
    let f0 = f(guess)?;
    if f0 == 0.0 {
        return Some(guess);
    }
    let mut w = FALLBACK_START_WIDTH;
    while w <= max_width {
        for side in [1.0, -1.0] {
            let x = guess + side * w;
            if let Some(fx) = f(x) {
                if fx.signum() != f0.signum() {
                    return bisect_root(f, guess, f0, x);
                }
            }
        }
        w *= 2.0;
    }
    None
}

fn bisect_root(f: &impl Fn(f64) -> Option<f64>, mut a: f64, fa: f64, mut b: f64) -> Option<f64> {
    for _ in 0..FALLBACK_BISECTIONS {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
        } else {
            b = mid;
        }
    }
    Some(0.5 * (a + b))
}

fn nested_bisection(sys: &System, t0: f64, s0: f64) -> Option<(f64, f64)> {
    let o = sys.curve.base();
    let inner = |t: f64, guess: f64| -> Option<f64> {
        let target = sys.shape.r * sys.curve.eval(t).distance(o);
        root_near(&|s: f64| Some(sys.curve.eval(s).distance(o) - target), guess, 0.25)
    };
    let s_guess = std::cell::Cell::new(s0);
    let outer = |t: f64| -> Option<f64> {
        let s = inner(t, s_guess.get())?;
        Some(sys.g(t, s)?[1])
    };
    let t = root_near(&outer, t0, 0.25)?;
    let s = inner(t, s_guess.get())?;
    s_guess.set(s);
    Some((t, s))
}
