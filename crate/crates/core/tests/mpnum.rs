use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Complex, Float};
use uniform_airy::mpnum::{
    elliptic_k, gamma, gauss_legendre_nodes, integrate_contour, ContourSpec, QuadratureMode, Segment,
};
use uniform_airy::PrecisionContext;

fn rel_err(a: &Float, b: &Float) -> f64 {
    (Float::with_val(a.prec(), a - b).abs() / b.clone().abs()).to_f64()
}

#[test]
fn agm_matches_defining_integral() {
    let ctx = PrecisionContext::new(40).unwrap();
    let nodes = gauss_legendre_nodes(80, &ctx).unwrap();
    let half_pi = ctx.pi() / 2u32;
    for i in 1..=9 {
        let k = ctx.float(i as f64 / 10.0);
        let kk = Float::with_val(ctx.prec(), k.square_ref());
        // ∫_0^{π/2} (1 - k² sin²θ)^{-1/2} dθ
        let mut q = ctx.float(0);
        for (x, w) in &nodes {
            let th = Float::with_val(ctx.prec(), x + 1u32) * &half_pi / 2u32;
            let s2 = Float::with_val(ctx.prec(), th.sin().square_ref());
            let den = (Float::with_val(ctx.prec(), 1) - s2 * &kk).sqrt();
            q += Float::with_val(ctx.prec(), w / den);
        }
        q = q * &half_pi / 2u32;
        let agm = elliptic_k(&k, &ctx).unwrap();
        assert!(rel_err(&agm, &q) < 1e-20, "k = {}", i as f64 / 10.0);
    }
}

#[test]
fn gauss_is_exact_for_low_degree_monomials() {
    let ctx = PrecisionContext::new(50).unwrap();
    for n in 1..=12usize {
        let nodes = gauss_legendre_nodes(n, &ctx).unwrap();
        for d in 0..2 * n {
            let q = nodes.iter().fold(ctx.float(0), |acc, (x, w)| {
                acc + Float::with_val(ctx.prec(), x.clone().pow(d as u32) * w)
            });
            let want = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
            assert!((q.to_f64() - want).abs() < 1e-40, "n = {n}, degree {d}");
        }
    }
}

fn line(a: (f64, f64), b: (f64, f64), ctx: &PrecisionContext) -> Segment {
    Segment::Line { a: ctx.complex(a), b: ctx.complex(b) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gamma_recurrence(x in 0.05f64..40.0) {
        let ctx = PrecisionContext::new(40).unwrap();
        let xf = ctx.float(x);
        let g = gamma(&xf, &ctx).unwrap();
        let g1 = gamma(&Float::with_val(ctx.prec(), &xf + 1u32), &ctx).unwrap();
        prop_assert!(rel_err(&g1, &(g * &xf)) < 1e-35);
    }

    #[test]
    fn path_integrals_are_additive(
        ax in -1.0f64..1.0, ay in -1.0f64..1.0,
        bx in -1.0f64..1.0, by in -1.0f64..1.0,
        cx in -1.0f64..1.0, cy in -1.0f64..1.0,
        t in 0.05f64..0.95,
    ) {
        let ctx = PrecisionContext::new(30).unwrap();
        let f = |z: &Complex| Ok(Complex::with_val(ctx.prec(), z.square_ref()) + 3u32);
        let mode = QuadratureMode::FixedGauss(20);
        let integral = |segs: Vec<Segment>| {
            integrate_contour(&f, &ContourSpec::new(segs, &ctx).unwrap(), mode, &ctx).unwrap().to_f64()
        };
        let (a, b, c) = ((ax, ay), (bx, by), (cx, cy));
        let joined = integral(vec![line(a, b, &ctx), line(b, c, &ctx)]);
        let parts = integral(vec![line(a, b, &ctx)]) + integral(vec![line(b, c, &ctx)]);
        prop_assert!((joined - parts).abs() <= 1e-14 * (1.0 + joined));
        // cutting a straight segment at an interior point changes nothing
        let m = (ax + t * (cx - ax), ay + t * (cy - ay));
        let whole = integral(vec![line(a, c, &ctx)]);
        let cut = integral(vec![line(a, m, &ctx), line(m, c, &ctx)]);
        prop_assert!((whole - cut).abs() <= 1e-14 * (1.0 + whole));
    }
}
