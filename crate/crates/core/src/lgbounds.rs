//! Bounds away from the turning point: LG error terms and the 𝓐, 𝓑 expansions.

use rug::ops::Pow;
use rug::{Complex, Float};
use serde::Serialize;

use crate::airylg::{bound_inputs, eta_bound};
use crate::besselmap::{BesselModel, LiouvillePoint, SectorLabel, TurningPointModel, Variant};
use crate::error::{Error, Result};
use crate::mpnum::{self, cabs, ContourSpec, PrecisionContext, QuadratureMode, Segment};
use crate::seqcoeff;

/// Quadrature rules used for the ω and ϖ integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraturePlan {
    pub finite: QuadratureMode,
    pub ray: QuadratureMode,
    /// Digits used for the bound integrals; they only need to be accurate to a few figures.
    pub digits: u32,
}

impl Default for QuadraturePlan {
    fn default() -> Self {
        Self { finite: QuadratureMode::FixedGauss(30), ray: QuadratureMode::Adaptive(1e-14), digits: 34 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionThreeOptions {
    pub plan: QuadraturePlan,
    /// Reject points with |ξ| ν below this; 0 disables the guard.
    pub turning_guard: f64,
}

impl Default for SectionThreeOptions {
    fn default() -> Self {
        Self { plan: QuadraturePlan::default(), turning_guard: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Kind {
    ScriptA,
    ScriptB,
}

/// ∫|...| integrals over the path from z^{(j)} to z, before the |u|-weighting.
#[derive(Debug, Clone, PartialEq)]
pub struct RawBoundIntegrals {
    pub n: usize,
    pub j: i8,
    /// [F̂_n], [Σ F̂_k F̂_{s+n-k-1}] for s = 1..n-1, [F̂_{s+1}] for s = 0..n-2; all times f^{1/2}.
    pub raw: Vec<Float>,
    pub path: ContourSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LGBoundTerms {
    pub omega: Float,
    pub varpi: Float,
    pub path: ContourSpec,
}

impl RawBoundIntegrals {
    pub fn zero(n: usize, j: i8, prec: u32) -> Self {
        Self { n, j, raw: vec![Float::with_val(prec, 0); 2 * n - 1], path: ContourSpec::empty() }
    }

    pub fn terms(&self, u_abs: &Float) -> LGBoundTerms {
        let (omega, varpi) = weight_raw(&self.raw, self.n, u_abs);
        LGBoundTerms { omega, varpi, path: self.path.clone() }
    }
}

/// ω = 2 I_0 + Σ_{s≥1} I_s/|u|^s and ϖ = 4 Σ_{s≥0} I_{n+s}/|u|^s.
pub fn weight_raw(raw: &[Float], n: usize, u_abs: &Float) -> (Float, Float) {
    let prec = u_abs.prec();
    let mut omega = Float::with_val(prec, &raw[0] * 2u32);
    let mut up = Float::with_val(prec, 1);
    for v in &raw[1..n] {
        up *= u_abs;
        omega += Float::with_val(prec, v / &up);
    }
    let mut varpi = Float::with_val(prec, 0);
    let mut up = Float::with_val(prec, 1);
    for v in &raw[n..2 * n - 1] {
        varpi += Float::with_val(prec, v / &up);
        up *= u_abs;
    }
    (omega, varpi * 4u32)
}

/// The 2n-1 integrands of ω and ϖ at t.
pub fn lg_integrand<M: TurningPointModel + ?Sized>(
    model: &M,
    t: &Complex,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<Complex>> {
    let p = model.point(t, ctx)?;
    let f = model.fhat_values(&p, n, ctx)?;
    let fs = model.dxi_dz(&p);
    let prec = ctx.prec();
    let mut out = Vec::with_capacity(2 * n - 1);
    out.push(Complex::with_val(prec, &f[n - 1] * &fs));
    for s in 1..n {
        let mut acc = Complex::with_val(prec, 0);
        for k in s..n {
            acc += Complex::with_val(prec, &f[k - 1] * &f[s + n - k - 2]);
        }
        out.push(acc * &fs);
    }
    for s in 0..n - 1 {
        out.push(Complex::with_val(prec, &f[s] * &fs));
    }
    Ok(out)
}

/// |η| ≤ |u|^{-n} ω exp(ϖ/|u| + ω/|u|^n).
pub fn eta_lg_bound(terms: &LGBoundTerms, u_abs: &Float, n: usize) -> Float {
    eta_bound(&terms.omega, &terms.varpi, u_abs, n)
}

fn sample_taus(seg: &Segment, prec: u32) -> Vec<Float> {
    if seg.is_ray() {
        let mut v = vec![Float::with_val(prec, 0)];
        for i in 0..63 {
            v.push(Float::with_val(prec, 10f64.powf(-3.0 + 9.0 * i as f64 / 62.0)));
        }
        v
    } else {
        (0..64).map(|i| Float::with_val(prec, (i as f64 / 63.0).max(1e-9))).collect()
    }
}

/// Checks that Re(uξ) is monotone along the path, sampled at 64 points per segment.
pub fn check_progressive<M: TurningPointModel + ?Sized>(
    model: &M,
    path: &ContourSpec,
    u: &Complex,
    ctx: &PrecisionContext,
) -> Result<()> {
    let prec = ctx.prec();
    let mut vals: Vec<f64> = Vec::new();
    for seg in path.segments() {
        for tau in sample_taus(seg, prec) {
            let t = seg.point(&tau);
            let p = model.point(&t, ctx)?;
            vals.push(Complex::with_val(prec, u * &p.xi).real().to_f64());
        }
    }
    let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-12 * scale;
    let up = vals.windows(2).all(|w| w[1] >= w[0] - tol);
    let down = vals.windows(2).all(|w| w[1] <= w[0] + tol);
    if up || down {
        Ok(())
    } else {
        Err(Error::Path("Re(uξ) is not monotone along the sampled path".into()))
    }
}

/// Candidate paths from z to z^{(j)} for the Bessel model, most direct first.
pub fn reference_paths(z: &Complex, j: i8, ctx: &PrecisionContext) -> Result<Vec<ContourSpec>> {
    let prec = ctx.prec();
    let z = ctx.complex(z);
    match j {
        0 => Ok(vec![ContourSpec::new(vec![Segment::Line { a: ctx.complex(0), b: z }], ctx)?]),
        -1 | 1 => {
            let dir = ctx.complex((0, -(j as i32)));
            let mut out = vec![ContourSpec::new(vec![Segment::Ray { start: z.clone(), direction: dir.clone() }], ctx)?];
            let x = z.real().to_f64();
            let mut stops: Vec<f64> = Vec::new();
            if x < 1.0 {
                stops.extend((1..8).map(|k| x + (1.0 - x) * k as f64 / 8.0));
            }
            stops.extend((1..8).map(|k| x * k as f64 / 8.0).filter(|v| *v > 0.0));
            for xs in stops {
                let star = Complex::with_val(prec, (xs, 0.0));
                let segs = vec![
                    Segment::Line { a: z.clone(), b: star.clone() },
                    Segment::Ray { start: star, direction: dir.clone() },
                ];
                out.push(ContourSpec::new(segs, ctx)?);
            }
            Ok(out)
        }
        _ => Err(Error::Domain(format!("reference index must be 0 or ±1, got {j}"))),
    }
}

fn integrate_raw<M: TurningPointModel + ?Sized>(
    model: &M,
    path: &ContourSpec,
    n: usize,
    plan: &QuadraturePlan,
    qctx: &PrecisionContext,
) -> Result<Vec<Float>> {
    let f = |t: &Complex| lg_integrand(model, t, n, qctx);
    let mut total = vec![qctx.float(0); 2 * n - 1];
    for seg in path.segments() {
        let mode = if seg.is_ray() { plan.ray } else { plan.finite };
        let part = mpnum::integrate_segment(&f, 2 * n - 1, seg, mode, qctx)?;
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    Ok(total)
}

/// The raw integrals along the first progressive candidate path.
pub fn raw_bound_integrals<M: TurningPointModel + ?Sized>(
    model: &M,
    z: &Complex,
    j: i8,
    n: usize,
    plan: &QuadraturePlan,
    ctx: &PrecisionContext,
) -> Result<RawBoundIntegrals> {
    if n < 2 {
        return Err(Error::Domain("order must be at least 2".into()));
    }
    let qctx = PrecisionContext::new(plan.digits.max(30))?;
    if j == 0 && z.is_zero() {
        return Ok(RawBoundIntegrals::zero(n, j, ctx.prec()));
    }
    let u = ctx.complex(1);
    let mut last_err = None;
    for path in reference_paths(z, j, ctx)? {
        match check_progressive(model, &path, &u, ctx) {
            Ok(()) => {
                let qpath = requantize(&path, &qctx)?;
                let raw = integrate_raw(model, &qpath, n, plan, &qctx)?;
                let raw = raw.into_iter().map(|v| Float::with_val(ctx.prec(), v)).collect();
                return Ok(RawBoundIntegrals { n, j, raw, path });
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Path("no candidate path".into())))
}

fn requantize(path: &ContourSpec, ctx: &PrecisionContext) -> Result<ContourSpec> {
    let c = |z: &Complex| ctx.complex(z);
    let f = |x: &Float| ctx.float(x);
    let segs = path
        .segments()
        .iter()
        .map(|s| match s {
            Segment::Line { a, b } => Segment::Line { a: c(a), b: c(b) },
            Segment::Arc { center, radius, theta0, theta1 } => Segment::Arc {
                center: c(center),
                radius: f(radius),
                theta0: f(theta0),
                theta1: f(theta1),
            },
            Segment::Ray { start, direction } => Segment::Ray { start: c(start), direction: c(direction) },
        })
        .collect();
    ContourSpec::new(segs, ctx)
}

/// ω_{n,j} and ϖ_{n,j} at z for parameter size |u|.
pub fn lg_bound_terms<M: TurningPointModel + ?Sized>(
    model: &M,
    z: &Complex,
    j: i8,
    n: usize,
    u_abs: &Float,
    plan: &QuadraturePlan,
    ctx: &PrecisionContext,
) -> Result<LGBoundTerms> {
    Ok(raw_bound_integrals(model, z, j, n, plan, ctx)?.terms(u_abs))
}

/// Every intermediate quantity behind one certified bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub omega_j: Float,
    pub varpi_j: Float,
    pub omega_k: Float,
    pub varpi_k: Float,
    pub gamma: Float,
    pub beta: Float,
    pub gamma_tilde: Float,
    pub beta_tilde: Float,
    pub delta: Float,
    pub e_j: Float,
    pub e_k: Float,
    pub e_tilde_j: Float,
    pub e_tilde_k: Float,
    pub epsilon: Float,
    pub epsilon_tilde: Float,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionValue {
    pub value: Complex,
    pub certified_bound: Float,
    pub m: usize,
    pub pair: (i8, i8),
    pub kind: Kind,
    pub report: Option<BoundReport>,
}

/// Per-point data for the Liouville–Green bounds that does not depend on ν.
#[derive(Debug, Clone)]
pub struct PointIntegrals {
    pub z: Complex,
    pub m: usize,
    pub pair: (i8, i8),
    pub conjugated: bool,
    pub far: RawBoundIntegrals,
    pub near: RawBoundIntegrals,
}

fn pair_for(label: SectorLabel) -> Result<(i8, i8)> {
    match (label.j, label.k) {
        (0, -1) | (-1, 0) => Ok((-1, 0)),
        (0, 1) | (1, 0) => Ok((1, 0)),
        (j, k) => Err(Error::Domain(format!(
            "z lies in T_({j},{k}); only T_(0,±1) and T_(±1,0) are covered"
        ))),
    }
}

/// Sector pair and path integrals for the 𝓐, 𝓑 bounds at z, with n = 2m+2.
pub fn section3_integrals(
    model: &BesselModel,
    z: &Complex,
    m: usize,
    opts: &SectionThreeOptions,
    ctx: &PrecisionContext,
) -> Result<PointIntegrals> {
    let n = 2 * m + 2;
    let conjugated = z.imag().is_sign_negative() && !z.imag().is_zero();
    let zu = if conjugated { Complex::with_val(ctx.prec(), z.conj_ref()) } else { ctx.complex(z) };
    let label = model.classify_sector(&zu, &ctx.complex(1), ctx)?;
    let pair = pair_for(label)?;
    let far = raw_bound_integrals(model, &zu, pair.0, n, &opts.plan, ctx)?;
    let near = raw_bound_integrals(model, &zu, pair.1, n, &opts.plan, ctx)?;
    let pair = if conjugated { (-pair.0, pair.1) } else { pair };
    Ok(PointIntegrals { z: ctx.complex(z), m, pair, conjugated, far, near })
}

fn e_term(nun: &Float, delta: &Float, terms: &LGBoundTerms, g: &Float, b: &Float, nu: &Float, n: usize) -> Float {
    let prec = nu.prec();
    let mut e = Float::with_val(prec, nun * Float::with_val(prec, delta.abs_ref()));
    e += eta_bound(&terms.omega, &terms.varpi, nu, n) * nun;
    e += eta_bound(g, b, nu, n) * nun;
    e
}

fn re_exp_sum(e: &[Complex], nu: &Float, alternate: bool) -> Float {
    let prec = nu.prec();
    let mut acc = Float::with_val(prec, 0);
    let mut np = Float::with_val(prec, 1);
    for (i, v) in e.iter().enumerate() {
        np *= nu;
        let mut t = Float::with_val(prec, v.real() / &np);
        if alternate && (i + 1) % 2 == 1 {
            t = -t;
        }
        acc += t;
    }
    acc.exp()
}

fn eps_bound(e_plus: &Float, e_alt: &Float, ej: &Float, ek: &Float, nun: &Float) -> Float {
    let prec = nun.prec();
    let sq = |e: &Float| {
        let v = Float::with_val(prec, e / Float::with_val(prec, nun * 2u32)) + 1u32;
        Float::with_val(prec, v.square_ref())
    };
    let a = Float::with_val(prec, e_plus * ej) * sq(ej);
    let b = Float::with_val(prec, e_alt * ek) * sq(ek);
    (a + b) / nun
}

/// 𝓐_{2m+2} and 𝓑_{2m+2} with their certified bounds, reusing precomputed path integrals.
pub fn script_ab_with(
    model: &BesselModel,
    pi: &PointIntegrals,
    nu: &Float,
    opts: &SectionThreeOptions,
    ctx: &PrecisionContext,
) -> Result<(ExpansionValue, ExpansionValue)> {
    let m = pi.m;
    let n = 2 * m + 2;
    let prec = ctx.prec();
    let nu = Float::with_val(prec, nu);
    if !(nu.is_finite() && nu > 0) {
        return Err(Error::Domain("ν must be positive".into()));
    }
    let zu = if pi.conjugated { Complex::with_val(prec, pi.z.conj_ref()) } else { pi.z.clone() };
    let p = model.point(&zu, ctx)?;
    let xi_abs = cabs(&p.xi);
    if opts.turning_guard > 0.0 && Float::with_val(prec, &xi_abs * &nu) < opts.turning_guard {
        return Err(Error::Domain(format!(
            "|ξ|ν = {:.3e} is below the guard {}; use the loop bounds",
            Float::with_val(prec, &xi_abs * &nu).to_f64(),
            opts.turning_guard
        )));
    }
    let (a_val, b_val, et, es) = script_values(model, &p, &nu, m, ctx)?;
    let (fac, facb) = model.prefactors(&p, &nu)?;

    let conn = model.connection(&nu, n, ctx)?;
    let far = pi.far.terms(&nu);
    let near = pi.near.terms(&nu);
    let inputs = bound_inputs(&nu, &xi_abs, n, ctx)?;
    let nun = Float::with_val(prec, (&nu).pow(n as u32));
    let zero = Float::with_val(prec, 0);
    let delta_j = conn.delta_for(pi.pair.0);
    let e_j = e_term(&nun, &delta_j, &far, &inputs.gamma_n, &inputs.beta_n, &nu, n);
    let e_k = e_term(&nun, &zero, &near, &inputs.gamma_n, &inputs.beta_n, &nu, n);
    let et_j = e_term(&nun, &delta_j, &far, &inputs.gamma_tilde_n, &inputs.beta_tilde_n, &nu, n);
    let et_k = e_term(&nun, &zero, &near, &inputs.gamma_tilde_n, &inputs.beta_tilde_n, &nu, n);

    let eps_t = eps_bound(&re_exp_sum(&et, &nu, false), &re_exp_sum(&et, &nu, true), &et_j, &et_k, &nun);
    let eps = eps_bound(&re_exp_sum(&es, &nu, false), &re_exp_sum(&es, &nu, true), &e_j, &e_k, &nun);
    let bound_a = Float::with_val(prec, cabs(&fac) * &eps_t) / 2u32;
    let bound_b = Float::with_val(prec, cabs(&facb) * &eps) / 2u32;

    let report = BoundReport {
        omega_j: far.omega,
        varpi_j: far.varpi,
        omega_k: near.omega,
        varpi_k: near.varpi,
        gamma: inputs.gamma_n,
        beta: inputs.beta_n,
        gamma_tilde: inputs.gamma_tilde_n,
        beta_tilde: inputs.beta_tilde_n,
        delta: delta_j,
        e_j,
        e_k,
        e_tilde_j: et_j,
        e_tilde_k: et_k,
        epsilon: eps,
        epsilon_tilde: eps_t,
    };
    let fix = |v: Complex| if pi.conjugated { v.conj() } else { v };
    let a = ExpansionValue {
        value: fix(a_val),
        certified_bound: bound_a,
        m,
        pair: pi.pair,
        kind: Kind::ScriptA,
        report: Some(report.clone()),
    };
    let b = ExpansionValue {
        value: fix(b_val),
        certified_bound: bound_b,
        m,
        pair: pi.pair,
        kind: Kind::ScriptB,
        report: Some(report),
    };
    Ok((a, b))
}

/// The truncated exp·cosh and exp·sinh forms, plus 𝓔̃_s and 𝓔_s for s < 2m+2.
pub fn script_values(
    model: &BesselModel,
    p: &LiouvillePoint,
    nu: &Float,
    m: usize,
    ctx: &PrecisionContext,
) -> Result<(Complex, Complex, Vec<Complex>, Vec<Complex>)> {
    let prec = ctx.prec();
    let n = 2 * m + 2;
    let et = model.modified_coefficients(p, n - 1, Variant::ScriptETilde, ctx)?;
    let es = model.modified_coefficients(p, n - 1, Variant::ScriptE, ctx)?;
    let split = |e: &[Complex]| -> (Complex, Complex) {
        let mut even = Complex::with_val(prec, 0);
        let mut odd = Complex::with_val(prec, 0);
        let mut np = Float::with_val(prec, 1);
        for (i, v) in e.iter().enumerate() {
            np *= nu;
            let t = Complex::with_val(prec, v / &np);
            if (i + 1) % 2 == 0 {
                even += t;
            } else {
                odd += t;
            }
        }
        (even, odd)
    };
    let (fac, facb) = model.prefactors(p, nu)?;
    let (ev, od) = split(&et);
    let a = fac * ev.exp() * od.cosh();
    let (ev, od) = split(&es);
    let b = facb * ev.exp() * od.sinh();
    Ok((a, b, et, es))
}

/// One of 𝓐_{2m+2}, 𝓑_{2m+2} at z with its certified bound.
pub fn script_ab(
    model: &BesselModel,
    z: &Complex,
    nu: &Float,
    m: usize,
    kind: Kind,
    ctx: &PrecisionContext,
) -> Result<ExpansionValue> {
    let opts = SectionThreeOptions::default();
    let pi = section3_integrals(model, z, m, &opts, ctx)?;
    let (a, b) = script_ab_with(model, &pi, nu, &opts, ctx)?;
    Ok(match kind {
        Kind::ScriptA => a,
        Kind::ScriptB => b,
    })
}

/// c_{m,0}(ν) as midpoint and enclosure halfwidth.
pub fn matching_constant_c(
    model: &BesselModel,
    nu: &Float,
    m: usize,
    opts: &SectionThreeOptions,
    ctx: &PrecisionContext,
) -> Result<(Float, Float)> {
    let n = 2 * m + 2;
    let prec = ctx.prec();
    let nu = Float::with_val(prec, nu);
    let raw = raw_bound_integrals(model, &ctx.complex(0), -1, n, &opts.plan, ctx)?;
    let terms = raw.terms(&nu);
    let conn = model.connection(&nu, n, ctx)?;
    let nun = Float::with_val(prec, (&nu).pow(n as u32));
    let mut et = Float::with_val(prec, &nun * Float::with_val(prec, conn.delta.abs_ref()));
    et += eta_bound(&terms.omega, &terms.varpi, &nu, n) * &nun;
    let mut csum = Float::with_val(prec, 0);
    for j in 0..=m {
        let s = 2 * j + 1;
        csum += Float::with_val(prec, &seqcoeff::stirling_c(s)) / Float::with_val(prec, (&nu).pow(s as u32));
    }
    let expc = Float::with_val(prec, csum.exp_ref());
    let e0 = Float::with_val(prec, expc.clone().recip());
    let sq = Float::with_val(prec, &et / Float::with_val(prec, &nun * 2u32)) + 1u32;
    let b0 = Float::with_val(prec, &expc * &et) * Float::with_val(prec, sq.square_ref()) / &nun;
    if e0 <= b0 {
        return Err(Error::Indeterminate("enclosure for c_{m,0} contains a pole".into()));
    }
    let g = mpnum::gamma(&nu, ctx)?;
    let pw = Float::with_val(prec, (&nu).pow(Float::with_val(prec, &nu - Float::with_val(prec, 5) / 6u32)));
    let p = ctx.pi().sqrt() * 2u32 * pw / (Float::with_val(prec, nu.exp_ref()) * g);
    let mid = Float::with_val(prec, &p * &expc);
    let hw = Float::with_val(prec, &p * &b0) / (Float::with_val(prec, &e0 - &b0) * &e0);
    Ok((mid, hw))
}

/// Truncated LG solution W_j with its relative error bound.
#[derive(Debug, Clone, PartialEq)]
pub struct LgSolution {
    pub value: Complex,
    /// Bound on |η_{n,j}|.
    pub eta_bound: Float,
    pub j: i8,
    pub terms: LGBoundTerms,
}

pub fn lg_solution_w(
    model: &BesselModel,
    z: &Complex,
    j: i8,
    n: usize,
    nu: &Float,
    plan: &QuadraturePlan,
    ctx: &PrecisionContext,
) -> Result<LgSolution> {
    let prec = ctx.prec();
    let nu = Float::with_val(prec, nu);
    let p = model.point(z, ctx)?;
    let e = model.ehat_values(&p, n - 1, ctx)?;
    let uxi = Complex::with_val(prec, &p.xi * &nu);
    let mut expo = if j == 0 { -uxi } else { uxi };
    let mut np = Float::with_val(prec, 1);
    for (i, es) in e.iter().enumerate() {
        let s = i + 1;
        np *= &nu;
        let t = if j == 0 {
            let c = Complex::with_val(prec, es - Float::with_val(prec, &model.ehat_at_reference(s)));
            if s % 2 == 1 { -c } else { c }
        } else {
            es.clone()
        };
        expo += t / &np;
    }
    let value = expo.exp() / p.zeta_pow(0.25);
    let terms = lg_bound_terms(model, z, j, n, &nu, plan, ctx)?;
    let eta = eta_lg_bound(&terms, &nu, n);
    Ok(LgSolution { value, eta_bound: eta, j, terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_path_gives_zero() {
        let ctx = PrecisionContext::new(30).unwrap();
        let model = BesselModel::new(12).unwrap();
        let t = lg_bound_terms(&model, &ctx.complex(0), 0, 4, &ctx.float(10), &QuadraturePlan::default(), &ctx).unwrap();
        assert!(t.omega.is_zero() && t.varpi.is_zero());
    }

    #[test]
    fn sector_pair_for_real_points() {
        let ctx = PrecisionContext::new(30).unwrap();
        let model = BesselModel::new(4).unwrap();
        let l = model.classify_sector(&ctx.complex(0.5), &ctx.complex(1), &ctx).unwrap();
        assert_eq!(pair_for(l).unwrap(), (-1, 0));
        let l = model.classify_sector(&ctx.complex(1.5), &ctx.complex(1), &ctx).unwrap();
        assert!(pair_for(l).is_err());
    }
}
