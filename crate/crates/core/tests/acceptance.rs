//! Acceptance suite: runs every criterion at its pinned tolerance and prints
//! one PASS/FAIL line each. Exits non-zero if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use inscribed_tri::curve::{generate, param_distance, Generator, ParamInterval};
use inscribed_tri::frames::{build_frame, tri_sphere};
use inscribed_tri::report::RunReport;
use inscribed_tri::solvers::{
    check_hypothesis, check_strong_monotone, estimate_theta_bounds, projected_curve, ratio_loop, ratio_path,
    ratio_path_on_vertices, solve_equilateral, solve_similar, sphere_winding, strongly_monotone_window,
    WindingStatus, WINDOW_LADDER,
};
use inscribed_tri::winding::{passes_through, segment_distance, winding_closed, PlanarPath};
use inscribed_tri::{Curve, InscribedTriangle, SolverOptions, TriangleShape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn circle() -> Curve {
    generate(Generator::Circle { radius: 1.0 }, 4096).unwrap()
}

fn ellipse() -> Curve {
    generate(Generator::Ellipse { a: 2.0, b: 1.0 }, 4096).unwrap()
}

fn fourier(seed: u64, dim: usize) -> Curve {
    generate(Generator::Fourier { seed, dim, harmonics: 4, amplitude: 0.15 }, 4096).unwrap()
}

fn run_cli(args: &[&str]) -> (i32, RunReport, Duration) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["inscribed-tri"];
    argv.extend_from_slice(args);
    let start = Instant::now();
    let code = inscribed_tri::cli::run(argv, &mut out, &mut err);
    let elapsed = start.elapsed();
    let report: RunReport = serde_json::from_slice(&out)
        .unwrap_or_else(|e| panic!("bad report ({e}): {}", String::from_utf8_lossy(&err)));
    (code, report, elapsed)
}

fn pair_close(tp: f64, tq: f64, a: f64, b: f64, tol: f64) -> bool {
    (param_distance(tp, a) < tol && param_distance(tq, b) < tol) || (param_distance(tp, b) < tol && param_distance(tq, a) < tol)
}

fn regular_triangle() -> Outcome {
    let (code, report, elapsed) =
        run_cli(&["solve-similar", "--curve", "gen:circle,samples=4096", "--angles", "60,60,60", "--base", "0", "--no-timing"]);
    ensure!(code == 0, "exit code {code}");
    ensure!(report.triangles.len() == 1, "{} triangles", report.triangles.len());
    let t = &report.triangles[0];
    ensure!(pair_close(t.t_p, t.t_q, 1.0 / 3.0, 2.0 / 3.0, 1e-6), "params ({}, {})", t.t_p, t.t_q);
    let res = t.residual_r.abs().max(t.residual_r_prime.abs());
    ensure!(res < 1e-9, "residual {res:e}");
    ensure!(elapsed < Duration::from_secs(2), "runtime {elapsed:?}");
    Ok(format!("params ({:.9}, {:.9}), residual {res:.1e}, {:.0} ms", t.t_p, t.t_q, elapsed.as_secs_f64() * 1e3))
}

fn right_isoceles() -> Outcome {
    let (code, report, _) =
        run_cli(&["solve-similar", "--curve", "gen:circle,samples=4096", "--angles", "90,45,45", "--base", "0", "--no-timing"]);
    ensure!(code == 0, "exit code {code}");
    let hit = report.triangles.iter().find(|t| pair_close(t.t_p, t.t_q, 0.25, 0.75, 1e-6));
    let Some(t) = hit else {
        return Err(format!("no triangle near {{0.25, 0.75}}: {:?}", report.triangles.iter().map(|t| (t.t_p, t.t_q)).collect::<Vec<_>>()));
    };
    let res = t.residual_r.abs().max(t.residual_r_prime.abs());
    ensure!(res < 1e-9, "residual {res:e}");
    let near = |p: &[f64], x: f64, y: f64| (p[0] - x).hypot(p[1] - y) < 1e-5;
    ensure!(near(t.point_o.coords(), 1.0, 0.0), "o = {:?}", t.point_o);
    let (p, q) = (t.point_p.coords(), t.point_q.coords());
    ensure!(
        (near(p, 0.0, 1.0) && near(q, 0.0, -1.0)) || (near(p, 0.0, -1.0) && near(q, 0.0, 1.0)),
        "p = {p:?}, q = {q:?}"
    );
    Ok(format!("params ({:.9}, {:.9}), residual {res:.1e}", t.t_p, t.t_q))
}

/// Dense-sampling estimate of the chord-angle bounds, independent of the
/// library's estimator: plain acos of normalized dot products on a finer grid.
fn dense_theta_bounds(curve: &Curve, delta: f64, n: usize) -> (f64, f64) {
    let o = curve.base().coords().to_vec();
    let chord = |t: f64| -> Vec<f64> {
        let x = curve.eval(t);
        let v: Vec<f64> = x.coords().iter().zip(&o).map(|(a, b)| a - b).collect();
        let len = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        v.into_iter().map(|c| c / len).collect()
    };
    let angle = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>().clamp(-1.0, 1.0).acos();
    let after: Vec<Vec<f64>> = (1..n).map(|i| chord(delta * i as f64 / n as f64)).collect();
    let before: Vec<Vec<f64>> = (1..n).map(|i| chord(1.0 - delta * i as f64 / n as f64)).collect();
    let mut sup: f64 = 0.0;
    let mut inf = PI;
    for a in &after {
        for b in &after {
            sup = sup.max(angle(a, b));
        }
        for b in &before {
            inf = inf.min(angle(a, b));
        }
    }
    (sup, inf)
}

fn angle_condition_on_ellipse() -> Outcome {
    let e = ellipse();
    let b = estimate_theta_bounds(&e, 0.01, 64).map_err(|e| e.to_string())?;
    ensure!(b.sup_theta < 0.2, "sup Θ = {}", b.sup_theta);
    ensure!(b.inf_theta_prime > 2.9, "inf Θ' = {}", b.inf_theta_prime);
    let (sup_o, inf_o) = dense_theta_bounds(&e, 0.01, 200);
    ensure!((sup_o - b.sup_theta).abs() < 1e-2 && (inf_o - b.inf_theta_prime).abs() < 1e-2,
        "oracle ({sup_o}, {inf_o}) vs estimate ({}, {})", b.sup_theta, b.inf_theta_prime);
    ensure!(sup_o < 0.2 && inf_o > 2.9, "oracle bounds ({sup_o}, {inf_o})");
    for deg in [30.0f64, 60.0, 90.0, 120.0] {
        ensure!(check_hypothesis(&b, deg.to_radians()), "θ_v = {deg}° rejected");
    }
    Ok(format!("sup Θ = {:.4}, inf Θ' = {:.4} (oracle {sup_o:.4}, {inf_o:.4})", b.sup_theta, b.inf_theta_prime))
}

fn winding_endpoints() -> Outcome {
    let start = Instant::now();
    let opts = SolverOptions::default();
    let shape = TriangleShape::equilateral();
    let mut notes = Vec::new();
    for dim in [2usize, 3, 5] {
        let c = if dim == 2 { circle() } else { generate(Generator::TiltedCircle { dim, radius: 1.0 }, 4096).unwrap() };
        let o = c.base().clone();
        let t1 = c.farthest_param(&o);
        // t₂: ‖γ(t) − o‖ = d_min / r, d_min half the distance to the curve outside the window.
        let eps = WINDOW_LADDER[0];
        let d_min = c.min_distance_excluding(&o, &ParamInterval::around_zero(eps)).unwrap() / 2.0;
        let target = d_min / shape.r;
        let t2 = (1..100_000)
            .map(|i| i as f64 * 1e-5 * eps)
            .find(|&t| c.eval(t).distance(&o) >= target)
            .ok_or("no t₂")?;
        let w1 = sphere_winding(&c, t1, &shape, &opts).map_err(|e| e.to_string())?;
        let w2 = sphere_winding(&c, t2, &shape, &opts).map_err(|e| e.to_string())?;
        ensure!(w1 == WindingStatus::Value { winding: 0 }, "n = {dim}: w(t₁) = {w1:?}");
        let WindingStatus::Value { winding } = w2 else {
            return Err(format!("n = {dim}: w(t₂) = {w2:?}"));
        };
        ensure!(winding != 0, "n = {dim}: w(t₂) = 0");
        // Cross-check both with the ray-crossing oracle on the projected path.
        for (t, w) in [(t1, 0), (t2, winding)] {
            let sphere = tri_sphere(&o, &c.eval(t), &shape).unwrap();
            let (path, _) = projected_curve(&c, &build_frame(&sphere));
            let oracle = winding_by_crossing_count(&path, [1.0, 0.0]);
            ensure!(oracle == w, "n = {dim}, t = {t}: oracle {oracle} vs {w}");
        }
        notes.push(format!("n={dim}: w(t₁)=0, w(t₂)={winding}"));
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "runtime {elapsed:?}");
    Ok(format!("{}; {:.0} ms", notes.join(", "), elapsed.as_secs_f64() * 1e3))
}

fn ratio_loop_winding() -> Outcome {
    let opts = SolverOptions::default();
    let mut notes = Vec::new();
    for (name, c) in [("circle", circle()), ("ellipse", ellipse())] {
        let sol = solve_equilateral(&c, 0.0, &opts).map_err(|e| format!("{name}: {e}"))?;
        ensure!(sol.monotone, "{name}: base point not strongly monotone");
        ensure!(sol.loop_winding == 1, "{name}: solver winding {}", sol.loop_winding);
        let l = ratio_loop(&sol.curve, sol.s1, sol.s2).map_err(|e| e.to_string())?;
        let w = winding_closed(&l, [0.0, 0.0]).map_err(|e| e.to_string())?;
        let oracle = winding_by_crossing_count(&l, [0.0, 0.0]);
        ensure!(w == 1 && oracle == 1, "{name}: winding {w}, oracle {oracle}");
        notes.push(format!("{name}: η = {w} (ε = {})", sol.epsilon));
    }
    Ok(notes.join(", "))
}

fn ratio_path_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_x: f64 = f64::NEG_INFINITY;
    let mut checked_s2 = 0;
    for i in 0..100 {
        let base = rng.gen_range(0.0..1.0);
        let (name, c) = match i % 3 {
            0 => ("circle", generate(Generator::Circle { radius: 1.0 }, 1024).unwrap().rebased(base)),
            1 => ("ellipse", generate(Generator::Ellipse { a: 2.0, b: 1.0 }, 1024).unwrap().rebased(base)),
            _ => ("fourier", generate(Generator::Fourier { seed: rng.gen(), dim: 2, harmonics: 4, amplitude: 0.15 }, 1024).unwrap()),
        };
        let s = rng.gen_range(0.01..0.99);
        let p = ratio_path(&c, s, 257).map_err(|e| e.to_string())?;
        ensure!(p.points[0] == [-1.0, 0.0], "#{i} {name}: R_s(0) = {:?}", p.points[0]);
        ensure!(*p.points.last().unwrap() == [0.0, -1.0], "#{i} {name}: R_s(1) = {:?}", p.points.last());

        let o = c.base().clone();
        let s1 = c.farthest_param(&o);
        for path in [ratio_path(&c, s1, 2049).unwrap(), ratio_path_on_vertices(&c, s1).unwrap()] {
            let x = path.points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
            worst_x = worst_x.max(x);
            ensure!(x <= 1e-12, "#{i} {name}: R_s₁ reaches x = {x:e}");
        }

        if let Some(eps) = strongly_monotone_window(&c, 32).map_err(|e| e.to_string())? {
            let d = c.min_distance_excluding(&o, &ParamInterval::around_zero(eps)).unwrap() / 3.0;
            let s2 = c.first_param_at_distance(&o, d, 1.0, 1.0 - eps).ok_or("no s₂")?;
            for path in [ratio_path(&c, s2, 2049).unwrap(), ratio_path_on_vertices(&c, s2).unwrap()] {
                let bad = path.points.iter().find(|p| p[0] < -1e-12 && p[1] < -1e-12);
                ensure!(bad.is_none(), "#{i} {name}: R_s₂ enters the third quadrant at {bad:?}");
            }
            checked_s2 += 1;
        }
    }
    ensure!(checked_s2 > 0, "no strongly monotone base point among the samples");
    Ok(format!("100 paths exact at both ends; max x on R_s₁ = {worst_x:.1e}; R_s₂ checked on {checked_s2}"))
}

fn match_oracle(tri: &InscribedTriangle, minima: &[GridOptimum]) -> Option<GridOptimum> {
    minima
        .iter()
        .copied()
        .min_by(|a, b| lattice_distance(tri, a).total_cmp(&lattice_distance(tri, b)))
        .filter(|m| lattice_distance(tri, m) <= m.grid_step)
}

fn oracle_equivalence() -> Outcome {
    let opts = SolverOptions::default();
    let n = 512;
    let step = 1.0 / n as f64;
    let shapes = [TriangleShape::equilateral(), TriangleShape::from_degrees(50.0, 60.0, 70.0).unwrap()];
    let mut count = 0;
    let mut worst_oracle: f64 = 0.0;
    for seed in 1..=10u64 {
        let c = fourier(seed, 2);
        for (k, shape) in shapes.iter().enumerate() {
            let minima = lattice_local_minima(&c, shape, n, 0.1);
            let mut tris = solve_similar(&c, shape, 0.0, &opts).map_err(|e| format!("seed {seed}: {e}"))?.triangles;
            if k == 0 {
                tris.push(solve_equilateral(&c, 0.0, &opts).map_err(|e| format!("seed {seed}: {e}"))?.triangle);
            }
            ensure!(!tris.is_empty(), "seed {seed}: no triangles");
            for t in &tris {
                ensure!(t.max_residual() < 1e-9, "seed {seed}: residual {:e}", t.max_residual());
                let m = match_oracle(t, &minima)
                    .ok_or_else(|| format!("seed {seed}: ({}, {}) not within one lattice step of an oracle optimum", t.t_p, t.t_q))?;
                ensure!(m.residual_inf < 16.0 * step, "seed {seed}: oracle residual {}", m.residual_inf);
                worst_oracle = worst_oracle.max(m.residual_inf);
                count += 1;
            }
        }
    }
    Ok(format!("{count} triangles matched; refined < 1e-9, oracle residuals ≤ {worst_oracle:.2e} (step {step:.2e})"))
}

fn random_polyline(rng: &mut ChaCha8Rng) -> (PlanarPath, [f64; 2]) {
    loop {
        let m = rng.gen_range(3..40);
        let path = PlanarPath::closed((0..m).map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]).collect());
        let base = [rng.gen_range(-1.2..1.2), rng.gen_range(-1.2..1.2)];
        let clear = passes_through(&path, base, 1e-6).is_none()
            && path.points.iter().all(|p| segment_distance(base, *p, *p) > 1e-6);
        if clear {
            return (path, base);
        }
    }
}

fn winding_oracle_agreement() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut nonzero = 0;
    for i in 0..10_000 {
        let (path, base) = random_polyline(&mut rng);
        let w = winding_closed(&path, base).map_err(|e| format!("#{i}: {e}"))?;
        let oracle = winding_by_crossing_count(&path, base);
        ensure!(w == oracle, "#{i}: winding {w} vs crossing count {oracle}");
        nonzero += usize::from(w != 0);
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "runtime {elapsed:?}");
    Ok(format!("10000/10000 agree ({nonzero} nonzero), {:.0} ms", elapsed.as_secs_f64() * 1e3))
}

fn similarity_invariance() -> Outcome {
    let opts = SolverOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let shapes = [TriangleShape::equilateral(), TriangleShape::from_degrees(80.0, 55.0, 45.0).unwrap()];
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for seed in [11u64, 12, 13] {
        let c = fourier(seed, 3);
        let rot = random_rotation(3, &mut rng);
        let k = rng.gen_range(0.1..10.0);
        let shift: Vec<f64> = (0..3).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let moved = similarity(&c, &rot, k, &shift);
        for shape in &shapes {
            let a = solve_similar(&c, shape, 0.0, &opts).map_err(|e| e.to_string())?.triangles;
            let b = solve_similar(&moved, shape, 0.0, &opts).map_err(|e| e.to_string())?.triangles;
            ensure!(!a.is_empty() && a.len() == b.len(), "seed {seed}: {} vs {} triangles", a.len(), b.len());
            for t in &a {
                let d = b
                    .iter()
                    .map(|u| param_distance(t.t_p, u.t_p).max(param_distance(t.t_q, u.t_q)))
                    .fold(f64::INFINITY, f64::min);
                ensure!(d < 1e-6, "seed {seed}: parameters moved by {d:e}");
                worst = worst.max(d);
                count += 1;
            }
        }
    }
    Ok(format!("{count} triangles, max parameter change {worst:.1e}"))
}

fn monotonicity_classifier() -> Outcome {
    let wedge = generate(Generator::CornerWedge { angle_deg: 90.0, arm: 1.0 }, 4096).unwrap();
    let u_turn = generate(Generator::UTurn { angle_deg: 30.0, arm: 1.0 }, 4096).unwrap();
    let w = check_strong_monotone(&wedge, 0.05, 32).map_err(|e| e.to_string())?;
    let c = check_strong_monotone(&circle(), 0.05, 32).map_err(|e| e.to_string())?;
    let u = check_strong_monotone(&u_turn, 0.05, 32).map_err(|e| e.to_string())?;
    ensure!(w && c && !u, "corner_wedge {w}, circle {c}, u_turn {u}");
    Ok("corner_wedge true, circle true, u_turn false".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("regular triangle on the circle", regular_triangle),
        ("right-isoceles triangle on the circle", right_isoceles),
        ("angle condition on the 2:1 ellipse", angle_condition_on_ellipse),
        ("sweep invariant at t₁ and t₂ (n = 2, 3, 5)", winding_endpoints),
        ("ratio loop winding is 1", ratio_loop_winding),
        ("ratio path invariants", ratio_path_invariants),
        ("oracle equivalence on Fourier curves", oracle_equivalence),
        ("winding vs ray-crossing oracle", winding_oracle_agreement),
        ("similarity invariance in R³", similarity_invariance),
        ("strong monotonicity classifier", monotonicity_classifier),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
