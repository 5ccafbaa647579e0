//! Near the turning point: Cauchy-loop values of 𝓐, 𝓑 with the κ bounds.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::ops::Pow;
use rug::{Complex, Float};

use crate::airylg::{bound_inputs, eta_bound};
use crate::besselmap::{BesselModel, TurningPointModel, Variant};
use crate::error::{Error, Result};
use crate::exec::par_map;
use crate::lgbounds::{check_progressive, lg_integrand, weight_raw, ExpansionValue, Kind, QuadraturePlan};
use crate::mpnum::{self, cabs, carg, expi, ContourSpec, PrecisionContext, Segment};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopOptions {
    pub r0: f64,
    /// Points on Γ for the suprema before refinement.
    pub samples: usize,
    /// Inflation applied to sampled suprema and infima.
    pub safety: f64,
    pub plan: QuadraturePlan,
    /// Starting trapezoid node count for the Cauchy sums.
    pub nodes: usize,
}

impl Default for LoopOptions {
    fn default() -> Self {
        Self { r0: 0.5, samples: 720, safety: 1.01, plan: QuadraturePlan::default(), nodes: 256 }
    }
}

/// l₀(z) = ∮|dt/(t-z)| over |t-z₀| = r₀, via the complete elliptic integral.
pub fn l0_kernel(z: &Complex, z0: &Complex, r0: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.prec();
    let a = cabs(&Complex::with_val(prec, z - z0));
    if a >= *r0 {
        return Err(Error::Domain("l₀ needs z strictly inside the loop".into()));
    }
    let sum = Float::with_val(prec, &a + r0);
    let k = Float::with_val(prec, &a * r0).sqrt() * 2u32 / &sum;
    let kk = mpnum::elliptic_k(&k, ctx)?;
    Ok(Float::with_val(prec, r0 * 4u32) * kk / sum)
}

/// ∮|dt/(t-z)| by direct contour quadrature, for checking `l0_kernel`.
pub fn l0_quadrature(z: &Complex, z0: &Complex, r0: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let pi = ctx.pi();
    let seg = Segment::Arc {
        center: ctx.complex(z0),
        radius: ctx.float(r0),
        theta0: ctx.float(0),
        theta1: Float::with_val(ctx.prec(), &pi * 2u32),
    };
    let path = ContourSpec::new(vec![seg], ctx)?;
    let f = |t: &Complex| -> Result<Complex> { Ok(Complex::with_val(ctx.prec(), t - z).recip()) };
    mpnum::integrate_contour(&f, &path, mpnum::QuadratureMode::Adaptive(1e-20), ctx)
}

/// The ν-independent part of the loop data.
#[derive(Debug, Clone)]
pub struct LoopGeometry {
    pub n: usize,
    pub r0: Float,
    pub center: Complex,
    pub upsilon: Float,
    pub upsilon_tilde: Float,
    pub rho: Float,
    /// M_s, N_s, M̃_s, Ñ_s for s = 1..n-1.
    pub m_s: Vec<Float>,
    pub n_s: Vec<Float>,
    pub m_tilde_s: Vec<Float>,
    pub n_tilde_s: Vec<Float>,
    /// Componentwise maxima of the raw ω/ϖ integrals over the six paths.
    pub raw_max: Vec<Float>,
    /// (j, l) and the pieces of γ_{j,l}; arcs in T_{±1} may be split in two.
    pub paths: Vec<((i8, i8), ContourSpec)>,
    pub theta_a: f64,
    pub theta_b: f64,
}

#[derive(Debug, Clone)]
pub struct LoopData {
    pub geometry: LoopGeometry,
    pub nu: Float,
    pub omega_n: Float,
    pub varpi_n: Float,
    pub delta_n: Float,
    pub e_n: Float,
    pub e_tilde_n: Float,
    pub d: Float,
    pub d_tilde: Float,
}

fn circle_point(center: &Complex, r0: &Float, theta: f64) -> Complex {
    let prec = r0.prec();
    Complex::with_val(prec, center + expi(&Float::with_val(prec, theta)) * r0)
}

/// Angle on the upper arc where arg ζ crosses `target`; arg ζ rises from -π at θ = 0 to 0 at θ = π.
fn crossing<M: TurningPointModel + ?Sized>(
    model: &M,
    center: &Complex,
    r0: &Float,
    target: f64,
    ctx: &PrecisionContext,
) -> Result<f64> {
    let (mut lo, mut hi) = (1e-9, std::f64::consts::PI - 1e-9);
    let g = |th: f64| -> Result<f64> { Ok(model.point(&circle_point(center, r0, th), ctx)?.zeta_arg.to_f64() - target) };
    let (glo, ghi) = (g(lo)?, g(hi)?);
    if glo.signum() == ghi.signum() {
        return Err(Error::LoopData(format!("arg ζ does not cross {target:.4} on the upper arc")));
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if g(mid)?.signum() == glo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn arc(center: &Complex, r0: &Float, t0: f64, t1: f64, ctx: &PrecisionContext) -> Segment {
    Segment::Arc { center: ctx.complex(center), radius: ctx.float(r0), theta0: ctx.float(t0), theta1: ctx.float(t1) }
}

/// Angle in [lo, hi] where Re ξ is smallest on Γ: 64 samples then golden-section refinement.
fn argmin_re_xi<M: TurningPointModel + ?Sized>(
    model: &M,
    center: &Complex,
    r0: &Float,
    lo: f64,
    hi: f64,
    ctx: &PrecisionContext,
) -> Result<f64> {
    let g = |th: f64| -> Result<f64> { Ok(model.point(&circle_point(center, r0, th), ctx)?.xi.real().to_f64()) };
    let step = (hi - lo) / 63.0;
    let mut best = (lo, g(lo)?);
    for i in 1..64 {
        let th = lo + step * i as f64;
        let v = g(th)?;
        if v < best.1 {
            best = (th, v);
        }
    }
    let invphi = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = ((best.0 - step).max(lo), (best.0 + step).min(hi));
    for _ in 0..60 {
        let c = b - invphi * (b - a);
        let d = a + invphi * (b - a);
        if g(c)? < g(d)? {
            b = d;
        } else {
            a = c;
        }
    }
    Ok(0.5 * (a + b))
}

/// γ_{j,l} pieces for the upper half plane. The arcs in T_{-1} are split where Re ξ is
/// smallest and joined to +i∞ by a vertical ray from that point, so that each piece is progressive.
fn upper_paths<M: TurningPointModel + ?Sized>(
    model: &M,
    center: &Complex,
    r0: &Float,
    ta: f64,
    tb: f64,
    ctx: &PrecisionContext,
) -> Result<Vec<((i8, i8), ContourSpec)>> {
    let pi = std::f64::consts::PI;
    let up = ctx.complex((0, 1));
    let left = circle_point(center, r0, pi);
    let mut out = vec![(
        (0, -1),
        ContourSpec::new(vec![Segment::Line { a: ctx.complex(0), b: left }, arc(center, r0, pi, ta, ctx)], ctx)?,
    )];
    for (label, lo, hi) in [((-1i8, 0i8), tb, ta), ((-1, 1), 0.0, tb)] {
        let star = argmin_re_xi(model, center, r0, lo, hi, ctx)?;
        for end in [lo, hi] {
            if (end - star).abs() < 1e-12 {
                continue;
            }
            let segs = vec![
                arc(center, r0, end, star, ctx),
                Segment::Ray { start: circle_point(center, r0, star), direction: up.clone() },
            ];
            out.push((label, ContourSpec::new(segs, ctx)?));
        }
    }
    Ok(out)
}

fn conjugate_path(path: &ContourSpec, ctx: &PrecisionContext) -> Result<ContourSpec> {
    let c = |z: &Complex| Complex::with_val(ctx.prec(), z.conj_ref());
    let segs = path
        .segments()
        .iter()
        .map(|s| match s {
            Segment::Line { a, b } => Segment::Line { a: c(a), b: c(b) },
            Segment::Arc { center, radius, theta0, theta1 } => Segment::Arc {
                center: c(center),
                radius: radius.clone(),
                theta0: Float::with_val(ctx.prec(), -theta0),
                theta1: Float::with_val(ctx.prec(), -theta1),
            },
            Segment::Ray { start, direction } => Segment::Ray { start: c(start), direction: c(direction) },
        })
        .collect();
    ContourSpec::new(segs, ctx)
}

/// Quantities sampled on Γ; the first three are minimised, the rest maximised.
fn circle_quantities(model: &BesselModel, t: &Complex, n: usize, ctx: &PrecisionContext) -> Result<Vec<f64>> {
    let p = model.point(t, ctx)?;
    let prec = ctx.prec();
    let one = ctx.float(1);
    let (fac, facb) = model.prefactors(&p, &one)?;
    let mut out = vec![
        cabs(&facb).recip().to_f64(),
        -cabs(&fac).to_f64(),
        cabs(&p.xi).to_f64(),
    ];
    let es = model.modified_coefficients(&p, n - 1, Variant::ScriptE, ctx)?;
    let et = model.modified_coefficients(&p, n - 1, Variant::ScriptETilde, ctx)?;
    for e in [&es, &et] {
        for (i, v) in e.iter().enumerate() {
            let r = Float::with_val(prec, v.real()).to_f64();
            out.push(-r);
            out.push(if (i + 1) % 2 == 0 { -r } else { r });
        }
    }
    Ok(out)
}

/// Minimises each component over the circle: 720-point sampling then golden-section refinement.
fn circle_minima(model: &BesselModel, center: &Complex, r0: &Float, n: usize, samples: usize, ctx: &PrecisionContext) -> Result<Vec<f64>> {
    let step = 2.0 * std::f64::consts::PI / samples as f64;
    let thetas: Vec<f64> = (0..samples).map(|i| i as f64 * step).collect();
    let vals = par_map(&thetas, |th| circle_quantities(model, &circle_point(center, r0, *th), n, ctx));
    let vals: Vec<Vec<f64>> = vals.into_iter().collect::<Result<_>>()?;
    let dim = vals[0].len();
    let mut out = Vec::with_capacity(dim);
    for q in 0..dim {
        let (ib, _) = vals
            .iter()
            .enumerate()
            .min_by(|a, b| a.1[q].total_cmp(&b.1[q]))
            .expect("samples");
        let g = |th: f64| -> Result<f64> { Ok(circle_quantities(model, &circle_point(center, r0, th), n, ctx)?[q]) };
        let invphi = 0.5 * (5f64.sqrt() - 1.0);
        let (mut a, mut b) = (thetas[ib] - step, thetas[ib] + step);
        let mut c = b - invphi * (b - a);
        let mut d = a + invphi * (b - a);
        let (mut fc, mut fd) = (g(c)?, g(d)?);
        let mut best = vals[ib][q].min(fc).min(fd);
        let mut converged = false;
        for _ in 0..200 {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - invphi * (b - a);
                fc = g(c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + invphi * (b - a);
                fd = g(d)?;
            }
            let nb = best.min(fc).min(fd);
            let stable = (nb - best).abs() <= 1e-6 * nb.abs().max(1e-300);
            best = nb;
            if stable && (b - a) < 1e-6 * step {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::LoopData(format!("supremum refinement did not settle for quantity {q}")));
        }
        out.push(best);
    }
    Ok(out)
}

impl LoopGeometry {
    pub fn build(model: &BesselModel, n: usize, opts: &LoopOptions, ctx: &PrecisionContext) -> Result<Self> {
        if n < 2 || n % 2 != 0 {
            return Err(Error::Domain(format!("loop bounds need even n = 2m+2, got {n}")));
        }
        let qctx = PrecisionContext::new(opts.plan.digits.max(30))?;
        let r0 = qctx.float(opts.r0);
        let center = model.turning_point(&qctx);
        if !(opts.r0 > 0.0 && opts.r0 < 1.0) {
            return Err(Error::Domain("r₀ must lie in (0, 1) so that Γ avoids z = 0".into()));
        }
        let pi = std::f64::consts::PI;
        let ta = crossing(model, &center, &r0, -pi / 3.0, &qctx)?;
        let tb = crossing(model, &center, &r0, -2.0 * pi / 3.0, &qctx)?;

        let u = qctx.complex(1);
        let mut paths = Vec::new();
        for ((j, l), c) in upper_paths(model, &center, &r0, ta, tb, &qctx)? {
            check_progressive(model, &c, &u, &qctx)
                .map_err(|e| Error::Path(format!("γ_({j},{l}): {e}")))?;
            let lower = conjugate_path(&c, &qctx)?;
            paths.push(((j, l), c));
            paths.push(((-j, -l), lower));
        }

        let dim = 2 * n - 1;
        let raws = par_map(&paths, |(_, p)| -> Result<Vec<Float>> {
            let f = |t: &Complex| lg_integrand(model, t, n, &qctx);
            let mut tot = vec![qctx.float(0); dim];
            for seg in p.segments() {
                let mode = if seg.is_ray() { opts.plan.ray } else { opts.plan.finite };
                let part = mpnum::integrate_segment(&f, dim, seg, mode, &qctx)?;
                for (t, v) in tot.iter_mut().zip(part) {
                    *t += v;
                }
            }
            Ok(tot)
        });
        let mut raw_max = vec![ctx.float(0); dim];
        for r in raws {
            for (m, v) in raw_max.iter_mut().zip(r?) {
                if v > *m {
                    *m = ctx.float(&v);
                }
            }
        }

        let mins = circle_minima(model, &center, &r0, n, opts.samples, &qctx)?;
        let sf = opts.safety;
        let inflate = |v: f64| v + (sf - 1.0) * v.abs();
        let upsilon = ctx.float(mins[0] / sf);
        let upsilon_tilde = ctx.float(-mins[1] * sf);
        let rho = ctx.float(mins[2] / sf);
        if !(mins[0] > 0.0 && mins[2] > 0.0) {
            return Err(Error::LoopData("Υ or ρ vanished on Γ".into()));
        }
        let mut m_s = Vec::new();
        let mut n_s = Vec::new();
        let mut m_tilde_s = Vec::new();
        let mut n_tilde_s = Vec::new();
        for s in 0..n - 1 {
            m_s.push(ctx.float(inflate(-mins[3 + 2 * s])));
            n_s.push(ctx.float(inflate(-mins[4 + 2 * s])));
            let o = 3 + 2 * (n - 1);
            m_tilde_s.push(ctx.float(inflate(-mins[o + 2 * s])));
            n_tilde_s.push(ctx.float(inflate(-mins[o + 1 + 2 * s])));
        }
        Ok(Self {
            n,
            r0: ctx.float(&r0),
            center: ctx.complex(&center),
            upsilon,
            upsilon_tilde,
            rho,
            m_s,
            n_s,
            m_tilde_s,
            n_tilde_s,
            raw_max,
            paths,
            theta_a: ta,
            theta_b: tb,
        })
    }

    /// Bessel loop geometry, built once per (n, options, digits) and shared.
    pub fn cached(model: &BesselModel, n: usize, opts: &LoopOptions, ctx: &PrecisionContext) -> Result<Arc<Self>> {
        type Key = (usize, u64, usize, u64, u32, u32);
        static CACHE: OnceLock<Mutex<HashMap<Key, Arc<LoopGeometry>>>> = OnceLock::new();
        let key = (n, opts.r0.to_bits(), opts.samples, opts.safety.to_bits(), opts.plan.digits, ctx.digits);
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(g) = cache.lock().expect("loop cache").get(&key) {
            return Ok(g.clone());
        }
        let g = Arc::new(Self::build(model, n, opts, ctx)?);
        cache.lock().expect("loop cache").insert(key, g.clone());
        Ok(g)
    }

    /// Completes the loop data for a given ν > 0.
    pub fn at(&self, model: &BesselModel, nu: &Float, ctx: &PrecisionContext) -> Result<LoopData> {
        let prec = ctx.prec();
        let nu = Float::with_val(prec, nu);
        if !(nu.is_finite() && nu > 0) {
            return Err(Error::Domain("ν must be positive".into()));
        }
        let n = self.n;
        let (omega_n, varpi_n) = weight_raw(&self.raw_max, n, &nu);
        let delta_n = Float::with_val(prec, model.connection(&nu, n, ctx)?.delta.abs_ref());
        let inputs = bound_inputs(&nu, &self.rho, n, ctx)?;
        let nun = Float::with_val(prec, (&nu).pow(n as u32));
        let base = Float::with_val(prec, &nun * &delta_n) + Float::with_val(prec, eta_bound(&omega_n, &varpi_n, &nu, n) * &nun);
        let e_n = Float::with_val(prec, &base + eta_bound(&inputs.gamma_n, &inputs.beta_n, &nu, n) * &nun);
        let e_tilde_n = Float::with_val(prec, &base + eta_bound(&inputs.gamma_tilde_n, &inputs.beta_tilde_n, &nu, n) * &nun);
        let sums = |v: &[Float]| -> Float {
            let mut acc = Float::with_val(prec, 0);
            let mut np = Float::with_val(prec, 1);
            for x in v {
                np *= &nu;
                acc += Float::with_val(prec, x / &np);
            }
            acc.exp()
        };
        let dfun = |e: &Float, m: &[Float], nn: &[Float]| -> Float {
            let sq = Float::with_val(prec, e / Float::with_val(prec, &nun * 2u32)) + 1u32;
            (sums(m) + sums(nn)) * e * Float::with_val(prec, sq.square_ref())
        };
        let d = dfun(&e_n, &self.m_s, &self.n_s);
        let d_tilde = dfun(&e_tilde_n, &self.m_tilde_s, &self.n_tilde_s);
        Ok(LoopData { geometry: self.clone(), nu, omega_n, varpi_n, delta_n, e_n, e_tilde_n, d, d_tilde })
    }
}

pub fn build_loop_data(model: &BesselModel, nu: &Float, n: usize, opts: &LoopOptions, ctx: &PrecisionContext) -> Result<LoopData> {
    LoopGeometry::build(model, n, opts, ctx)?.at(model, nu, ctx)
}

/// The 𝓐 and 𝓑 Cauchy integrands, without the 1/(t-z) factor, at t.
fn loop_integrands(model: &BesselModel, t: &Complex, nu: &Float, m: usize, ctx: &PrecisionContext) -> Result<(Complex, Complex)> {
    let p = model.point(t, ctx)?;
    let (a, b, _, _) = crate::lgbounds::script_values(model, &p, nu, m, ctx)?;
    Ok((a, b))
}

/// N-node trapezoid sums for 𝓐 and 𝓑, nodes at φ_k = 2πk/N, shifted by π/N if `half_shift`.
pub fn cauchy_sum(
    model: &BesselModel,
    z: &Complex,
    nu: &Float,
    m: usize,
    loop_data: &LoopData,
    nodes: usize,
    half_shift: bool,
    ctx: &PrecisionContext,
) -> Result<(Complex, Complex)> {
    let idx: Vec<usize> = (0..nodes).collect();
    let parts = par_map(&idx, |k| node_term(model, z, nu, m, loop_data, nodes, *k, half_shift, ctx));
    let prec = ctx.prec();
    let mut sa = Complex::with_val(prec, 0);
    let mut sb = Complex::with_val(prec, 0);
    for p in parts {
        let (a, b) = p?;
        sa += a;
        sb += b;
    }
    Ok((sa / nodes as u32, sb / nodes as u32))
}

fn node_term(
    model: &BesselModel,
    z: &Complex,
    nu: &Float,
    m: usize,
    ld: &LoopData,
    nodes: usize,
    k: usize,
    half_shift: bool,
    ctx: &PrecisionContext,
) -> Result<(Complex, Complex)> {
    let prec = ctx.prec();
    let mut phi = Float::with_val(prec, ctx.pi() * 2u32) * (2 * k + usize::from(half_shift)) as u32;
    phi /= (2 * nodes) as u32;
    let w = Complex::with_val(prec, expi(&phi) * &ld.geometry.r0);
    let t = Complex::with_val(prec, &ld.geometry.center + &w);
    let (a, b) = loop_integrands(model, &t, nu, m, ctx)?;
    let k = Complex::with_val(prec, &w / Complex::with_val(prec, &t - z));
    Ok((a * &k, b * k))
}

/// Loop-integral 𝓐 or 𝓑 at z with its κ bound.
pub fn cauchy_ab(
    model: &BesselModel,
    z: &Complex,
    m: usize,
    kind: Kind,
    loop_data: &LoopData,
    opts: &LoopOptions,
    ctx: &PrecisionContext,
) -> Result<ExpansionValue> {
    let (a, b) = cauchy_ab_pair(model, z, m, loop_data, opts, ctx)?;
    Ok(match kind {
        Kind::ScriptA => a,
        Kind::ScriptB => b,
    })
}

/// Both loop values, sharing the node evaluations.
pub fn cauchy_ab_pair(
    model: &BesselModel,
    z: &Complex,
    m: usize,
    ld: &LoopData,
    opts: &LoopOptions,
    ctx: &PrecisionContext,
) -> Result<(ExpansionValue, ExpansionValue)> {
    let g = &ld.geometry;
    if g.n != 2 * m + 2 {
        return Err(Error::Domain(format!("loop data built for n = {}, not 2m+2 = {}", g.n, 2 * m + 2)));
    }
    let prec = ctx.prec();
    let dist = cabs(&Complex::with_val(prec, z - &g.center));
    if dist > Float::with_val(prec, &g.r0 * 0.8f64) {
        return Err(Error::Domain("loop values need |z - z₀| ≤ 0.8 r₀".into()));
    }
    let nu = &ld.nu;
    let tol = ctx.tol(8);
    let mut nodes = opts.nodes.max(8);
    let (mut sa, mut sb) = cauchy_sum(model, z, nu, m, ld, nodes, false, ctx)?;
    let mut prev = f64::NAN;
    loop {
        if nodes > 1 << 15 {
            return Err(Error::Quadrature { last: cabs(&sa).to_f64(), previous: prev });
        }
        // doubling: the new nodes are the old ones shifted by half a spacing
        let (ha, hb) = cauchy_sum(model, z, nu, m, ld, nodes, true, ctx)?;
        let na = Complex::with_val(prec, &sa + &ha) / 2u32;
        let nb = Complex::with_val(prec, &sb + &hb) / 2u32;
        let da = cabs(&Complex::with_val(prec, &na - &sa));
        let db = cabs(&Complex::with_val(prec, &nb - &sb));
        let ok_a = da <= Float::with_val(prec, cabs(&na) * &tol) || da.is_zero();
        let ok_b = db <= Float::with_val(prec, cabs(&nb) * &tol) || db.is_zero();
        prev = cabs(&sa).to_f64();
        sa = na;
        sb = nb;
        nodes *= 2;
        if ok_a && ok_b {
            break;
        }
    }
    let l0 = l0_kernel(z, &g.center, &g.r0, ctx)?;
    let nun = Float::with_val(prec, nu.pow(g.n as u32));
    let two_pi = Float::with_val(prec, ctx.pi() * 2u32);
    let denom = Float::with_val(prec, &two_pi * &nun);
    let ka = Float::with_val(prec, &g.upsilon_tilde * &ld.d_tilde) * &l0 / &denom;
    let nu13 = Float::with_val(prec, nu.pow(Float::with_val(prec, 1) / 3u32));
    let kb = Float::with_val(prec, &ld.d * &l0) / (denom * &g.upsilon * nu13);
    let mk = |value: Complex, bound: Float, kind: Kind| ExpansionValue {
        value,
        certified_bound: bound / 2u32,
        m,
        pair: (0, 0),
        kind,
        report: None,
    };
    Ok((mk(sa, ka, Kind::ScriptA), mk(sb, kb, Kind::ScriptB)))
}

/// Angle of z about the loop centre, in (-π, π].
pub fn loop_angle(z: &Complex, ld: &LoopData) -> f64 {
    carg(&Complex::with_val(z.prec().0, z - &ld.geometry.center)).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l0_at_centre_is_two_pi() {
        let ctx = PrecisionContext::new(40).unwrap();
        let v = l0_kernel(&ctx.complex(1), &ctx.complex(1), &ctx.float(0.5), &ctx).unwrap();
        let d = Float::with_val(ctx.prec(), &v - ctx.pi() * 2u32).abs();
        assert!(d < ctx.tol(2));
    }

    #[test]
    fn l0_rejects_rim() {
        let ctx = PrecisionContext::new(30).unwrap();
        assert!(l0_kernel(&ctx.complex(1.5), &ctx.complex(1), &ctx.float(0.5), &ctx).is_err());
    }
}
