//! Exponential-form LG expansions of Ai and Ai′ with explicit error bounds.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::mpnum::{cabs, carg, expi, PrecisionContext};
use crate::oracle::AiryKind;
use crate::seqcoeff::{airy_sequences, LambdaTable};

#[derive(Debug, Clone, PartialEq)]
pub struct AiryBoundInputs {
    pub gamma_n: Float,
    pub beta_n: Float,
    pub gamma_tilde_n: Float,
    pub beta_tilde_n: Float,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AiryExpansionResult {
    pub value: Complex,
    /// Bound on the relative error |η|.
    pub bound: Float,
    pub n: usize,
    pub j: i8,
}

/// γ_n, β_n and their tilde versions; they depend on u and ξ only through |u| and |ξ|.
pub fn bound_inputs(u_abs: &Float, xi_abs: &Float, n: usize, ctx: &PrecisionContext) -> Result<AiryBoundInputs> {
    if n < 2 {
        return Err(Error::Domain(format!("order must be at least 2, got {n}")));
    }
    if xi_abs.is_zero() {
        return Err(Error::Domain("ξ = 0 is the turning point".into()));
    }
    let prec = ctx.prec();
    let seq = airy_sequences(2 * n);
    let lam = LambdaTable::new(2 * n, ctx)?;
    let ux = Float::with_val(prec, u_abs * xi_abs);
    let part = |tilde: bool| -> (Float, Float) {
        let a = |k: usize| Float::with_val(prec, seq.get(k, tilde).clone().abs());
        let mut g = Float::with_val(prec, a(n) * lam.get(n + 1)) * 2u32;
        g /= Float::with_val(prec, xi_abs.pow(n as u32));
        let mut tail = Float::with_val(prec, 0);
        let mut uxs = Float::with_val(prec, 1);
        for s in 0..=n - 2 {
            let mut inner = Float::with_val(prec, 0);
            for k in s + 1..n {
                inner += a(k) * a(s + n - k);
            }
            tail += Float::with_val(prec, lam.get(n + s + 2) / &uxs) * inner;
            uxs *= &ux;
        }
        tail /= Float::with_val(prec, u_abs * Float::with_val(prec, xi_abs.pow((n + 1) as u32)));
        g += tail;
        let mut b = Float::with_val(prec, 0);
        let mut uxs = Float::with_val(prec, 1);
        for s in 0..=n - 2 {
            b += Float::with_val(prec, a(s + 1) * lam.get(s + 2)) / &uxs;
            uxs *= &ux;
        }
        b = b * 4u32 / xi_abs;
        (g, b)
    };
    let (gamma_n, beta_n) = part(false);
    let (gamma_tilde_n, beta_tilde_n) = part(true);
    Ok(AiryBoundInputs { gamma_n, beta_n, gamma_tilde_n, beta_tilde_n })
}

/// |u|^{-n} γ exp(β/|u| + γ/|u|^n).
pub fn eta_bound(gamma: &Float, beta: &Float, u_abs: &Float, n: usize) -> Float {
    let prec = gamma.prec().max(u_abs.prec());
    let un = Float::with_val(prec, u_abs.pow(n as u32));
    let g = Float::with_val(prec, gamma / &un);
    let e = Float::with_val(prec, beta / u_abs) + &g;
    g * e.exp()
}

fn principal_arg_reduce(th: Float, pi: &Float) -> Float {
    let prec = th.prec();
    let two_pi = Float::with_val(prec, pi * 2u32);
    let mut t = th;
    while t > *pi {
        t -= &two_pi;
    }
    while t <= -pi.clone() {
        t += &two_pi;
    }
    t
}

/// Ai_j(u^{2/3}ζ) (or Ai′_j) from its Liouville–Green expansion at ζe^{-2πij/3}, with its error bound.
pub fn airy_lg(
    u: &Complex,
    zeta: &Complex,
    n: usize,
    which: AiryKind,
    j: i8,
    ctx: &PrecisionContext,
) -> Result<AiryExpansionResult> {
    if !(-1..=1).contains(&j) {
        return Err(Error::Domain(format!("branch must be 0 or ±1, got {j}")));
    }
    if zeta.is_zero() {
        return Err(Error::Domain("ξ = 0: use the turning-point machinery".into()));
    }
    let prec = ctx.prec();
    let pi = Float::with_val(prec, Constant::Pi);
    let rot = Float::with_val(prec, &pi * (-2 * j as i32)) / 3u32;
    let zarg = principal_arg_reduce(carg(zeta) + &rot, &pi);
    let zabs = cabs(zeta);
    let uarg = carg(u);
    let uabs = cabs(u);
    // ξ' = (2/3) ζ'^{3/2} with the principal branch
    let xi_arg = Float::with_val(prec, &zarg * 1.5f64);
    let xi_abs = Float::with_val(prec, zabs.clone().pow(Float::with_val(prec, 1.5f64))) * 2u32 / 3u32;
    let sector = Float::with_val(prec, &uarg + &xi_arg).abs();
    if sector > Float::with_val(prec, &pi * (1.0 + 1e-30)) {
        return Err(Error::Domain("|arg(uξ)| exceeds π for this branch".into()));
    }
    let xi = expi(&xi_arg) * &xi_abs;
    let uxi = Complex::with_val(prec, u * &xi);

    let tilde = which == AiryKind::AiPrime;
    let seq = airy_sequences(n.max(2));
    let mut expo = -uxi.clone();
    let mut pw = Complex::with_val(prec, 1);
    for s in 1..n {
        pw *= &uxi;
        let mut t = Complex::with_val(prec, Float::with_val(prec, seq.get(s, tilde)) / s as u32) / &pw;
        if s % 2 == 1 {
            t = -t;
        }
        expo += t;
    }
    let sqrt_pi2 = Float::with_val(prec, pi.sqrt_ref()) * 2u32;
    let u16 = expi(&Float::with_val(prec, &uarg / 6u32)) * Float::with_val(prec, uabs.clone().pow(Float::with_val(prec, 1) / 6u32));
    let z14 = expi(&Float::with_val(prec, &zarg / 4u32)) * Float::with_val(prec, zabs.pow(Float::with_val(prec, 0.25f64)));
    let e = expo.exp();
    let mut value = match which {
        AiryKind::Ai => e / (Complex::with_val(prec, &u16 * &z14) * &sqrt_pi2),
        AiryKind::AiPrime => -(e * Complex::with_val(prec, &u16 * &z14)) / &sqrt_pi2,
    };
    if tilde && j != 0 {
        value *= expi(&rot);
    }
    let inputs = bound_inputs(&uabs, &xi_abs, n, ctx)?;
    let bound = if tilde {
        eta_bound(&inputs.gamma_tilde_n, &inputs.beta_tilde_n, &uabs, n)
    } else {
        eta_bound(&inputs.gamma_n, &inputs.beta_n, &uabs, n)
    };
    Ok(AiryExpansionResult { value, bound, n, j })
}

/// Convenience form taking a principal ξ, with ζ = (3ξ/2)^{2/3}.
pub fn airy_lg_xi(
    u: &Complex,
    xi: &Complex,
    n: usize,
    which: AiryKind,
    ctx: &PrecisionContext,
) -> Result<AiryExpansionResult> {
    let prec = ctx.prec();
    let w = Complex::with_val(prec, xi * 1.5f64);
    let zeta = Complex::with_val(prec, w.pow(Float::with_val(prec, 2) / 3u32));
    airy_lg(u, &zeta, n, which, 0, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::airy;

    #[test]
    fn order_two_inputs() {
        let ctx = PrecisionContext::new(40).unwrap();
        let (u, xi) = (ctx.float(10), ctx.float(2));
        let b = bound_inputs(&u, &xi, 2, &ctx).unwrap();
        let pi = ctx.pi().to_f64();
        let g = 5.0 / 36.0 / 4.0 + 25.0 * pi / 20736.0 / (10.0 * 8.0);
        assert!((b.gamma_n.to_f64() - g).abs() < 1e-15);
        assert!((b.beta_n.to_f64() - 5.0 * pi / 36.0 / 2.0).abs() < 1e-15);
    }

    #[test]
    fn eta_bound_trivia() {
        let u = Float::with_val(64, 3);
        assert!(eta_bound(&Float::with_val(64, 0), &Float::with_val(64, 5), &u, 4).is_zero());
        let g = Float::with_val(64, 81);
        let v = eta_bound(&g, &Float::with_val(64, 0), &u, 4).to_f64();
        assert!((v - std::f64::consts::E).abs() < 1e-12);
    }

    #[test]
    fn real_axis_bound_holds() {
        let ctx = PrecisionContext::new(40).unwrap();
        let u = ctx.complex(10);
        let xi = ctx.complex(2);
        for which in [AiryKind::Ai, AiryKind::AiPrime] {
            let r = airy_lg_xi(&u, &xi, 6, which, &ctx).unwrap();
            let zeta = Complex::with_val(ctx.prec(), Complex::with_val(ctx.prec(), &xi * 1.5f64).pow(Float::with_val(ctx.prec(), 2) / 3u32));
            let x = zeta * Float::with_val(ctx.prec(), Float::with_val(ctx.prec(), 10).pow(Float::with_val(ctx.prec(), 2) / 3u32));
            let exact = airy(&x, which, &ctx).unwrap().value;
            let eta = cabs(&(Complex::with_val(ctx.prec(), &r.value / &exact) - 1u32));
            assert!(eta <= r.bound, "{which:?}: {eta} > {}", r.bound);
        }
    }

    #[test]
    fn outside_sector_is_rejected() {
        let ctx = PrecisionContext::new(30).unwrap();
        let zeta = expi(&(ctx.pi() * 0.9f64)) * ctx.float(2);
        assert!(airy_lg(&ctx.complex(5), &zeta, 3, AiryKind::Ai, 0, &ctx).is_err());
        assert!(airy_lg(&ctx.complex(5), &ctx.complex(0), 3, AiryKind::Ai, 0, &ctx).is_err());
    }
}
