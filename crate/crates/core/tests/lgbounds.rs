use rug::ops::Pow;
use rug::{Complex, Float};
use uniform_airy::besselmap::{BesselModel, TurningPointModel};
use uniform_airy::lgbounds::{
    lg_integrand, lg_solution_w, matching_constant_c, raw_bound_integrals, script_ab_with, section3_integrals,
    QuadraturePlan, SectionThreeOptions,
};
use uniform_airy::mpnum::{cabs, gamma, integrate_contour_vec, ContourSpec, QuadratureMode, Segment};
use uniform_airy::oracle::{airy, bessel_j, exact_ab, AiryKind};
use uniform_airy::PrecisionContext;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(40).unwrap()
}

fn rel(a: &Float, b: &Float) -> f64 {
    (Float::with_val(a.prec(), a - b).abs() / b.clone().abs()).to_f64()
}

#[test]
fn raw_integrals_are_additive_over_a_split_path() {
    let ctx = ctx();
    let model = BesselModel::new(5).unwrap();
    let n = 4;
    let f = |t: &Complex| lg_integrand(&model, t, n, &ctx);
    let line = |a: &Complex, b: &Complex| Segment::Line { a: a.clone(), b: b.clone() };
    let mode = QuadratureMode::FixedGauss(30);
    let (a, b) = (ctx.complex(3) / 10u32, ctx.complex((5, 4)) / 10u32);
    let mid = Complex::with_val(ctx.prec(), &a + &b) / 2u32;
    let whole = ContourSpec::new(vec![line(&a, &b)], &ctx).unwrap();
    let split = ContourSpec::new(vec![line(&a, &mid), line(&mid, &b)], &ctx).unwrap();
    let w = integrate_contour_vec(&f, 2 * n - 1, &whole, mode, &ctx).unwrap();
    let s = integrate_contour_vec(&f, 2 * n - 1, &split, mode, &ctx).unwrap();
    for (a, b) in w.iter().zip(&s) {
        assert!(rel(a, b) < 1e-25, "{a} vs {b}");
    }
}

#[test]
fn quadrature_order_does_not_matter() {
    let ctx = ctx();
    let model = BesselModel::new(13).unwrap();
    let z = ctx.complex(0.5);
    let plan = |k| QuadraturePlan { finite: QuadratureMode::FixedGauss(k), ..QuadraturePlan::default() };
    let a = raw_bound_integrals(&model, &z, 0, 12, &plan(30), &ctx).unwrap();
    let b = raw_bound_integrals(&model, &z, 0, 12, &plan(60), &ctx).unwrap();
    for (x, y) in a.raw.iter().zip(&b.raw) {
        assert!(rel(x, y) < 1e-12, "{x} vs {y}");
    }
}

#[test]
fn expansion_at_one_half() {
    let ctx = ctx();
    let m = 5;
    let model = BesselModel::new(2 * m + 3).unwrap();
    let opts = SectionThreeOptions::default();
    let z = ctx.complex(0.5);
    let pi = section3_integrals(&model, &z, m, &opts, &ctx).unwrap();
    assert_eq!(pi.pair, (-1, 0));

    let eval = |nu: f64| {
        let nuf = ctx.float(nu);
        let (a, b) = script_ab_with(&model, &pi, &nuf, &opts, &ctx).unwrap();
        let (ea, eb) = exact_ab(&nuf, &z, m, &ctx).unwrap();
        let ta = cabs(&Complex::with_val(ctx.prec(), &a.value - &ea));
        let tb = cabs(&Complex::with_val(ctx.prec(), &b.value - &eb));
        (a, b, ta, tb)
    };
    let (a100, b100, ta, tb) = eval(100.0);
    assert!(ta <= a100.certified_bound, "𝓐: {ta} > {}", a100.certified_bound);
    assert!(tb <= b100.certified_bound, "𝓑: {tb} > {}", b100.certified_bound);

    // O(ν^{-2m-2}) bound
    let (a50, b50, _, _) = eval(50.0);
    let r = (a100.certified_bound.clone() / &a50.certified_bound).to_f64() * 4096.0;
    assert!((1.0 / 3.0..=3.0).contains(&r), "𝓐 bound ratio × 2¹² = {r}");

    // the 𝓑 overestimate grows with ν
    let (_, b10, _, tb10) = eval(10.0);
    let over = |b: &Float, t: &Float| (b.clone() / t).to_f64();
    assert!(over(&b100.certified_bound, &tb) > over(&b10.certified_bound, &tb10));
    let _ = b50;

    // the e-terms are O(1) in ν
    let e = |v: &uniform_airy::lgbounds::ExpansionValue| v.report.as_ref().unwrap().e_j.to_f64();
    let (x, y) = (e(&a100), e(&b10));
    assert!(x > 0.0 && y > 0.0 && x / y < 10.0 && y / x < 10.0, "e_j {x} vs {y}");
}

#[test]
fn matching_constant_tends_to_its_leading_form() {
    let ctx = ctx();
    let m = 5;
    let model = BesselModel::new(2 * m + 3).unwrap();
    let opts = SectionThreeOptions::default();
    let norm = |nu: f64| {
        let nuf = ctx.float(nu);
        let (mid, hw) = matching_constant_c(&model, &nuf, m, &opts, &ctx).unwrap();
        let g = gamma(&nuf, &ctx).unwrap();
        let pw = Float::with_val(ctx.prec(), (&nuf).pow(Float::with_val(ctx.prec(), 5) / 6u32 - &nuf));
        let lead = ctx.pi().sqrt() * 2u32 / (Float::with_val(ctx.prec(), nuf.exp_ref()) * g * pw);
        ((mid.clone() / &lead).to_f64(), (hw / mid).to_f64())
    };
    let (c20, h20) = norm(20.0);
    let (c40, h40) = norm(40.0);
    // the gap is exp(C_1/ν) - 1 + O(ν⁻³), so about 1/(12ν)
    for (c, nu) in [(c20, 20.0), (c40, 40.0)] {
        assert!(((c - 1.0) * 12.0 * nu - 1.0).abs() < 0.05, "ν={nu}: {c}");
    }
    let r = h20 / h40 / 4096.0;
    assert!((1.0 / 3.0..=3.0).contains(&r), "halfwidth ratio / 2¹² = {r}");
}

#[test]
fn bessel_j_from_the_matched_expansion() {
    let ctx = ctx();
    let m = 5;
    let prec = ctx.prec();
    let model = BesselModel::new(2 * m + 3).unwrap();
    let opts = SectionThreeOptions::default();
    let nu = ctx.float(10);
    let z = ctx.complex(0.3);
    let (c, hw) = matching_constant_c(&model, &nu, m, &opts, &ctx).unwrap();
    let pi = section3_integrals(&model, &z, m, &opts, &ctx).unwrap();
    let (a, b) = script_ab_with(&model, &pi, &nu, &opts, &ctx).unwrap();
    let p = model.point(&z, &ctx).unwrap();
    let x = Complex::with_val(prec, &p.zeta * Float::with_val(prec, (&nu).pow(Float::with_val(prec, 2) / 3u32)));
    let ai = airy(&x, AiryKind::Ai, &ctx).unwrap().value;
    let aip = airy(&x, AiryKind::AiPrime, &ctx).unwrap().value;
    let inner = Complex::with_val(prec, &ai * &a.value) + Complex::with_val(prec, &aip * &b.value);
    let zs = Complex::with_val(prec, z.sqrt_ref());
    let approx = Complex::with_val(prec, &inner * &c) / &zs;
    let exact = bessel_j(&nu, &Complex::with_val(prec, &z * &nu), &ctx).unwrap().value;
    let err = cabs(&(approx - &exact));
    let mut allowed = Float::with_val(prec, cabs(&ai) * &a.certified_bound) + cabs(&aip) * &b.certified_bound;
    allowed *= &c;
    allowed += cabs(&inner) * &hw;
    allowed /= cabs(&zs);
    assert!(err <= allowed, "{err} > {allowed}");
    assert!(err < cabs(&exact) * 1e-6f64);
}

#[test]
fn recessive_solution_is_proportional_to_j() {
    let ctx = ctx();
    let prec = ctx.prec();
    let n = 8;
    let model = BesselModel::new(n + 1).unwrap();
    let nu = ctx.float(50);
    let z = ctx.complex(0.4);
    let w = lg_solution_w(&model, &z, 0, n, &nu, &QuadraturePlan::default(), &ctx).unwrap();
    let p = model.point(&z, &ctx).unwrap();
    let g = gamma(&Float::with_val(prec, &nu + 1u32), &ctx).unwrap();
    let scale = Float::with_val(prec, (&nu).pow(&nu)) / (Float::with_val(prec, nu.exp_ref()) * g);
    let one_minus = Complex::with_val(prec, 1) - Complex::with_val(prec, z.square_ref());
    let q = Complex::with_val(prec, &p.zeta / one_minus);
    let q = Complex::with_val(prec, q.pow(Float::with_val(prec, 0.25)));
    let approx = Complex::with_val(prec, &w.value * &q) * &scale;
    let exact = bessel_j(&nu, &Complex::with_val(prec, &z * &nu), &ctx).unwrap().value;
    let eta = cabs(&(Complex::with_val(prec, &approx / &exact) - 1u32));
    assert!(eta <= w.eta_bound, "{eta} > {}", w.eta_bound);
}

#[test]
fn recessive_solution_is_normalized_at_the_origin() {
    let ctx = ctx();
    let prec = ctx.prec();
    let n = 6;
    let model = BesselModel::new(n + 1).unwrap();
    let nu = ctx.float(20);
    for z in [1e-4, 1e-6] {
        let z = ctx.complex(z);
        let w = lg_solution_w(&model, &z, 0, n, &nu, &QuadraturePlan::default(), &ctx).unwrap();
        let p = model.point(&z, &ctx).unwrap();
        let e = Complex::with_val(prec, &p.xi * &nu).exp();
        let v = Complex::with_val(prec, &w.value * p.zeta_pow(0.25)) * e;
        assert!(cabs(&(v - 1u32)).to_f64() < 1e-6);
    }
}
