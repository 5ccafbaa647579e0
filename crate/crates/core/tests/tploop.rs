use std::sync::Arc;

use rug::{Complex, Float};
use uniform_airy::besselmap::BesselModel;
use uniform_airy::mpnum::cabs;
use uniform_airy::oracle::exact_ab;
use uniform_airy::tploop::{cauchy_ab_pair, cauchy_sum, l0_kernel, l0_quadrature, LoopGeometry, LoopOptions};
use uniform_airy::PrecisionContext;

const M: usize = 1;
const N: usize = 2 * M + 2;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(40).unwrap()
}

fn model() -> BesselModel {
    BesselModel::new(N + 1).unwrap()
}

fn geometry(samples: usize) -> Arc<LoopGeometry> {
    let opts = LoopOptions { samples, ..LoopOptions::default() };
    LoopGeometry::cached(&model(), N, &opts, &ctx()).unwrap()
}

#[test]
fn l0_closed_form_matches_quadrature() {
    let ctx = ctx();
    let z0 = ctx.complex(1);
    let r0 = ctx.float(0.5);
    for off in [(0.15, 0.0), (0.0, -0.1), (0.2, 0.2)] {
        let z = Complex::with_val(ctx.prec(), &z0 + ctx.complex(off));
        let k = l0_kernel(&z, &z0, &r0, &ctx).unwrap();
        let q = l0_quadrature(&z, &z0, &r0, &ctx).unwrap();
        assert!((Float::with_val(ctx.prec(), &k - &q) / &q).abs().to_f64() < 1e-18, "{off:?}");
    }
}

#[test]
fn l0_grows_logarithmically_at_the_rim() {
    let ctx = ctx();
    let z0 = ctx.complex(1);
    let r0 = ctx.float(0.5);
    let at = |f: f64| l0_kernel(&ctx.complex(1.0 + 0.5 * f), &z0, &r0, &ctx).unwrap().to_f64();
    // l₀ ≈ 2 ln(1/(1 - |z - z₀|/r₀)) + const
    let step = at(0.999) - at(0.99);
    assert!((step / (2.0 * 10f64.ln()) - 1.0).abs() < 0.02, "{step}");
}

#[test]
fn geometry_is_sane() {
    let g = geometry(720);
    assert_eq!(g.n, N);
    assert_eq!(g.paths.len(), 8);
    assert!(g.rho > 0 && g.upsilon > 0 && g.upsilon_tilde > 0);
    assert!(g.theta_b < g.theta_a && g.theta_a < std::f64::consts::PI);
    assert!(g.raw_max.iter().all(|v| v.is_finite() && *v >= 0));
    assert!(g.m_s.iter().chain(&g.n_s).all(|v| v.is_finite()));
}

#[test]
fn suprema_are_stable_under_denser_sampling() {
    let (a, b) = (geometry(720), geometry(1440));
    for (x, y) in a.m_s.iter().zip(&b.m_s).chain(a.n_s.iter().zip(&b.n_s)) {
        let d = Float::with_val(x.prec(), x - y).abs().to_f64();
        assert!(d <= 1e-6 * x.to_f64().abs().max(1e-3), "{x} vs {y}");
    }
    let d = Float::with_val(a.rho.prec(), &a.rho - &b.rho).abs().to_f64();
    assert!(d <= 1e-6 * a.rho.to_f64() * 2.0);
}

#[test]
fn trapezoid_sums_converge_spectrally() {
    let ctx = ctx();
    let model = model();
    let nu = ctx.float(100);
    let ld = geometry(720).at(&model, &nu, &ctx).unwrap();
    let z = ctx.complex((1.05, 0.05));
    let sum = |k: usize, shift: bool| cauchy_sum(&model, &z, &nu, M, &ld, k, shift, &ctx).unwrap().0;
    let (s128, s256, s512) = (sum(128, false), sum(256, false), sum(512, false));
    let d1 = cabs(&Complex::with_val(ctx.prec(), &s128 - &s256)).to_f64();
    let d2 = cabs(&Complex::with_val(ctx.prec(), &s256 - &s512)).to_f64();
    assert!(d2 < d1 * 1e-6 || d2 < 1e-32, "{d1:e} then {d2:e}");

    // the half-shifted node set gives the same value: the integrand is single-valued on Γ
    let h = sum(512, true);
    let d = cabs(&Complex::with_val(ctx.prec(), &h - &s512)) / cabs(&s512);
    assert!(d < ctx.tol(8), "{d}");
}

#[test]
fn loop_values_are_within_their_bounds() {
    let ctx = ctx();
    let model = model();
    let nu = ctx.float(100);
    let ld = geometry(720).at(&model, &nu, &ctx).unwrap();
    let opts = LoopOptions::default();
    for zc in [(1.0, 0.1), (0.9, 0.0)] {
        let z = ctx.complex(zc);
        let (a, b) = cauchy_ab_pair(&model, &z, M, &ld, &opts, &ctx).unwrap();
        let (ea, eb) = exact_ab(&nu, &z, M, &ctx).unwrap();
        let ta = cabs(&Complex::with_val(ctx.prec(), &a.value - &ea));
        let tb = cabs(&Complex::with_val(ctx.prec(), &b.value - &eb));
        assert!(ta <= a.certified_bound, "𝓐 at {zc:?}: {ta} > {}", a.certified_bound);
        assert!(tb <= b.certified_bound, "𝓑 at {zc:?}: {tb} > {}", b.certified_bound);
    }
    assert!(cauchy_ab_pair(&model, &ctx.complex(1.45), M, &ld, &opts, &ctx).is_err());
}

#[test]
fn odd_orders_are_rejected() {
    assert!(LoopGeometry::build(&model(), 5, &LoopOptions::default(), &ctx()).is_err());
}
