//! The Bessel model: Liouville map, exact coefficient functions and connection data.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mpnum::{self, cabs, carg, expi, PrecisionContext};
use crate::seqcoeff::{self, airy_sequences};

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn padd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = vec![Rational::new(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        r[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        r[i] += c;
    }
    trim(&mut r);
    r
}

fn pmul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![Rational::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += Rational::from(x * y);
        }
    }
    trim(&mut r);
    r
}

fn pscale(a: &[Rational], c: &Rational) -> Vec<Rational> {
    let mut r: Vec<Rational> = a.iter().map(|x| Rational::from(x * c)).collect();
    trim(&mut r);
    r
}

fn pder(a: &[Rational]) -> Vec<Rational> {
    let mut r: Vec<Rational> = a.iter().enumerate().skip(1).map(|(i, c)| Rational::from(c * i as u64)).collect();
    trim(&mut r);
    r
}

fn one_minus_z2() -> Vec<Rational> {
    vec![Rational::from(1), Rational::new(), Rational::from(-1)]
}

/// Exact division by 1 - z², if it leaves no remainder.
fn div_one_minus_z2(p: &[Rational]) -> Option<Vec<Rational>> {
    if p.len() < 3 {
        return None;
    }
    // p = (1 - z²) q, so q_i = q_{i-2} + p_i read from the bottom up.
    let mut q = vec![Rational::new(); p.len() - 2];
    for i in 0..q.len() {
        let mut v = p[i].clone();
        if i >= 2 {
            v += &q[i - 2];
        }
        q[i] = v;
    }
    let mut rebuilt = pmul(&q, &one_minus_z2());
    rebuilt.resize(p.len(), Rational::new());
    if rebuilt.as_slice() == p {
        trim(&mut q);
        Some(q)
    } else {
        None
    }
}

/// P(z) z^{-m} (1 - z²)^{-k/2} with exact rational P.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraicFunction {
    pub poly: Vec<Rational>,
    pub pow_z: i64,
    pub pow_surd: i64,
}

impl fmt::Debug for AlgebraicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.poly.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] z^-{} (1-z^2)^-{}/2", p.join(", "), self.pow_z, self.pow_surd)
    }
}

impl AlgebraicFunction {
    pub fn new(poly: Vec<Rational>, pow_z: i64, pow_surd: i64) -> Self {
        Self { poly, pow_z, pow_surd }.normalized()
    }

    pub fn zero() -> Self {
        Self { poly: Vec::new(), pow_z: 0, pow_surd: 0 }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c], 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty()
    }

    /// Strip factors of z and of (1 - z²) from the polynomial.
    pub fn normalized(mut self) -> Self {
        trim(&mut self.poly);
        if self.poly.is_empty() {
            return Self::zero();
        }
        let lead = self.poly.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.poly.drain(..lead);
            self.pow_z -= lead as i64;
        }
        while let Some(q) = div_one_minus_z2(&self.poly) {
            self.poly = q;
            self.pow_surd -= 2;
        }
        self
    }

    /// Polynomial numerator over z^{-m} (1 - z²)^{-k/2}.
    pub fn lift(&self, m: i64, k: i64) -> Result<Vec<Rational>> {
        if self.is_zero() {
            return Ok(Vec::new());
        }
        if m < self.pow_z || k < self.pow_surd || (k - self.pow_surd) % 2 != 0 {
            return Err(Error::Internal(format!("cannot lift {self:?} to m={m}, k={k}")));
        }
        let mut p = vec![Rational::new(); (m - self.pow_z) as usize];
        p.extend(self.poly.iter().cloned());
        for _ in 0..(k - self.pow_surd) / 2 {
            p = pmul(&p, &one_minus_z2());
        }
        Ok(p)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if (self.pow_surd - other.pow_surd) % 2 != 0 {
            return Err(Error::Internal("sum of terms with different surd parity".into()));
        }
        let m = self.pow_z.max(other.pow_z);
        let k = self.pow_surd.max(other.pow_surd);
        Ok(Self::new(padd(&self.lift(m, k)?, &other.lift(m, k)?), m, k))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(pmul(&self.poly, &other.poly), self.pow_z + other.pow_z, self.pow_surd + other.pow_surd)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(pscale(&self.poly, c), self.pow_z, self.pow_surd)
    }

    fn derivative_numerator(&self) -> Vec<Rational> {
        // P' z w - m P w + k z² P, with w = 1 - z²
        let w = one_minus_z2();
        let t1 = pmul(&pmul(&pder(&self.poly), &[Rational::new(), Rational::from(1)]), &w);
        let t2 = pscale(&pmul(&self.poly, &w), &Rational::from(-self.pow_z));
        let t3 = pscale(&pmul(&self.poly, &[Rational::new(), Rational::new(), Rational::from(1)]), &Rational::from(self.pow_surd));
        padd(&padd(&t1, &t2), &t3)
    }

    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self::new(self.derivative_numerator(), self.pow_z + 1, self.pow_surd + 2)
    }

    /// z / (2 √(1 - z²)) · d/dz.
    pub fn d_operator(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let p = pscale(&self.derivative_numerator(), &Rational::from((1, 2)));
        Self::new(p, self.pow_z, self.pow_surd + 3)
    }

    /// Exact value at z = 0, if finite.
    pub fn value_at_zero(&self) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::new());
        }
        match self.pow_z {
            m if m > 0 => Err(Error::Domain("pole at z = 0".into())),
            0 => Ok(self.poly[0].clone()),
            _ => Ok(Rational::new()),
        }
    }

    /// Exact value at a rational point with |z| < 1 and an even surd power.
    pub fn value_at_rational(&self, z: &Rational) -> Result<Rational> {
        if self.pow_surd % 2 != 0 {
            return Err(Error::Domain("odd surd power has no rational value".into()));
        }
        if z.is_zero() {
            return self.value_at_zero();
        }
        let mut p = Rational::new();
        for c in self.poly.iter().rev() {
            p = p * z + c;
        }
        let zm = Rational::from(z.pow(self.pow_z as i32)).recip();
        let w = Rational::from(1) - Rational::from(z * z);
        let wk = Rational::from(w.pow((self.pow_surd / 2) as i32)).recip();
        Ok(p * zm * wk)
    }

    /// Numerator polynomial Q with self = Q(z)/(1 - z²)^{k/2}, when m ≤ 0.
    pub fn numerator_over_surd(&self, k: i64) -> Option<Vec<Rational>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        if self.pow_z > 0 {
            return None;
        }
        self.lift(0, k).ok()
    }
}

/// P(z) (1 - z²)^{-K/2} with derivative R, and no additive constant.
fn antiderivative(r: &AlgebraicFunction) -> Result<AlgebraicFunction> {
    if r.is_zero() {
        return Ok(AlgebraicFunction::zero());
    }
    if r.pow_z > 0 {
        return Err(Error::Internal("antiderivative of a term with a pole at 0".into()));
    }
    let kr = r.pow_surd;
    let big_k = kr - 2;
    let rp = r.lift(0, kr)?;
    let top_len = rp.len() + big_k.unsigned_abs() as usize + 8;
    let rv = |i: usize| rp.get(i).cloned().unwrap_or_default();
    let run = |q0: Rational| -> Vec<Rational> {
        let mut q = vec![Rational::new(); top_len + 2];
        q[0] = q0;
        q[1] = rv(0);
        for j in 0..top_len {
            let v = Rational::from(rv(j + 1) - Rational::from(&q[j] * (big_k - j as i64)));
            q[j + 2] = v / Rational::from(j as u64 + 2);
        }
        q
    };
    let a = run(Rational::new());
    let b = run(Rational::from(1));
    let top = if top_len % 2 == 0 { top_len } else { top_len - 1 };
    let diff = Rational::from(&b[top] - &a[top]);
    let q0 = if diff.is_zero() {
        Rational::new()
    } else {
        Rational::from(-&a[top]) / diff
    };
    let q = run(q0);
    if q[top.saturating_sub(4)..].iter().any(|c| !c.is_zero()) {
        return Err(Error::Internal("antiderivative ansatz did not terminate".into()));
    }
    Ok(AlgebraicFunction::new(q, 0, big_k))
}

/// F̂_1..=F̂_S; entry `s-1` holds F̂_s.
pub fn fhat_coefficients(s_max: usize) -> Result<Vec<AlgebraicFunction>> {
    if s_max < 1 {
        return Err(Error::Domain("need at least one coefficient".into()));
    }
    let r = |n: i64, d: i64| Rational::from((n, d));
    // z²(z²+4) / (8 (z²-1)³) = -(z⁴ + 4z²)/8 · (1 - z²)^{-3}
    let f1 = AlgebraicFunction::new(vec![r(0, 1), r(0, 1), r(-1, 2), r(0, 1), r(-1, 8)], 0, 6);
    let mut f = vec![f1];
    for s in 1..s_max {
        let mut acc = f[s - 1].d_operator();
        let mut conv = AlgebraicFunction::zero();
        for j in 1..s {
            conv = conv.add(&f[j - 1].mul(&f[s - j - 1]))?;
        }
        acc = acc.add(&conv.scale(&r(-1, 2)))?;
        f.push(acc);
    }
    Ok(f)
}

/// Ê_1..=Ê_S; entry `s-1` holds Ê_s.
pub fn ehat_coefficients(s_max: usize) -> Result<Vec<AlgebraicFunction>> {
    let f = fhat_coefficients(s_max.max(1))?;
    ehat_from_fhat(&f, s_max)
}

fn ehat_from_fhat(f: &[AlgebraicFunction], s_max: usize) -> Result<Vec<AlgebraicFunction>> {
    let mut e = vec![AlgebraicFunction::zero(); s_max];
    for s in (1..=s_max).step_by(2) {
        let fs = &f[s - 1];
        // dÊ/dz = -F̂ √(1 - z²)/z
        let integrand = AlgebraicFunction::new(
            fs.poly.iter().map(|c| Rational::from(-c)).collect(),
            fs.pow_z + 1,
            fs.pow_surd - 1,
        );
        e[s - 1] = antiderivative(&integrand)?;
    }
    // -1/2 log(1 + Σ F̂_{2s+1} v^{s+1}) gives the even terms.
    let half = s_max / 2;
    if half > 0 {
        let x: Vec<AlgebraicFunction> = (0..=half)
            .map(|i| if i == 0 { AlgebraicFunction::zero() } else { f[2 * i - 2].clone() })
            .collect();
        let mut l = vec![AlgebraicFunction::zero(); half + 1];
        for k in 1..=half {
            let mut acc = AlgebraicFunction::zero();
            for j in 1..k {
                let t = l[j].mul(&x[k - j]).scale(&Rational::from(j as u64));
                acc = acc.add(&t)?;
            }
            l[k] = x[k].add(&acc.scale(&Rational::from((-1, k as i64))))?;
        }
        for s in 1..=half {
            let mut es = l[s].scale(&Rational::from((-1, 2)));
            let alpha = -es.value_at_zero()?;
            if !alpha.is_zero() {
                es = es.add(&AlgebraicFunction::constant(alpha))?;
            }
            e[2 * s - 1] = es;
        }
    }
    Ok(e)
}

/// F̂ and Ê tables shared by all evaluations.
#[derive(Debug, Clone)]
pub struct CoefficientTables {
    pub fhat: Vec<AlgebraicFunction>,
    pub ehat: Vec<AlgebraicFunction>,
}

impl CoefficientTables {
    pub fn new(s_max: usize) -> Result<Self> {
        let fhat = fhat_coefficients(s_max)?;
        let ehat = ehat_from_fhat(&fhat, s_max)?;
        Ok(Self { fhat, ehat })
    }

    pub fn order(&self) -> usize {
        self.fhat.len()
    }
}

fn shared_tables(s_max: usize) -> Result<Arc<CoefficientTables>> {
    static CACHE: OnceLock<Mutex<Option<Arc<CoefficientTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(None));
    let mut guard = cache.lock().expect("coefficient cache");
    if let Some(t) = guard.as_ref() {
        if t.order() >= s_max {
            return Ok(t.clone());
        }
    }
    let t = Arc::new(CoefficientTables::new(s_max.max(14))?);
    *guard = Some(t.clone());
    Ok(t)
}

struct FloatAf {
    poly: Vec<Float>,
    pow_z: i64,
    pow_surd: i64,
}

impl FloatAf {
    fn new(af: &AlgebraicFunction, prec: u32) -> Self {
        Self {
            poly: af.poly.iter().map(|c| Float::with_val(prec, c)).collect(),
            pow_z: af.pow_z,
            pow_surd: af.pow_surd,
        }
    }

    fn eval(&self, z: &Complex, s: &Complex) -> Complex {
        let prec = z.prec().0;
        let mut p = Complex::with_val(prec, 0);
        for c in self.poly.iter().rev() {
            p *= z;
            p += c;
        }
        if self.pow_z != 0 {
            p *= Complex::with_val(prec, z.pow(-self.pow_z as i32));
        }
        if self.pow_surd != 0 {
            p *= Complex::with_val(prec, s.pow(-self.pow_surd as i32));
        }
        p
    }
}

struct Evaluators {
    fhat: Vec<FloatAf>,
    ehat: Vec<FloatAf>,
}

/// Liouville data at one point.
#[derive(Debug, Clone)]
pub struct LiouvillePoint {
    pub z: Complex,
    /// √(1 - z²) on the documented branch.
    pub s: Complex,
    pub xi: Complex,
    pub zeta: Complex,
    /// arg ζ, in [-π, 0] on the closed upper half plane and [0, π] below it.
    pub zeta_arg: Float,
}

impl LiouvillePoint {
    /// ζ^p for real p using the stored argument.
    pub fn zeta_pow(&self, p: f64) -> Complex {
        let prec = self.zeta.prec().0;
        let r = cabs(&self.zeta);
        if r.is_zero() {
            return Complex::with_val(prec, 0);
        }
        let mag = r.pow(Float::with_val(prec, p));
        let th = Float::with_val(prec, &self.zeta_arg * p);
        expi(&th) * mag
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SectorLabel {
    pub j: i8,
    pub k: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    ScriptE,
    ScriptETilde,
}

/// λ_{±1}, δ_{n,±1} and μ_n for given ν and n.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionData {
    pub lambda_plus: Float,
    pub lambda_minus: Float,
    pub delta: Float,
    pub mu: Float,
    pub n: usize,
}

impl ConnectionData {
    pub fn delta_for(&self, j: i8) -> Float {
        if j == 0 {
            Float::with_val(self.delta.prec(), 0)
        } else {
            self.delta.clone()
        }
    }
}

/// What the expansion and loop machinery needs from a turning-point problem.
pub trait TurningPointModel: Sync {
    fn turning_point(&self, ctx: &PrecisionContext) -> Complex;
    fn point(&self, z: &Complex, ctx: &PrecisionContext) -> Result<LiouvillePoint>;
    fn f(&self, z: &Complex, ctx: &PrecisionContext) -> Result<Complex>;
    fn g(&self, z: &Complex, ctx: &PrecisionContext) -> Result<Complex>;
    fn phi(&self, z: &Complex, ctx: &PrecisionContext) -> Result<Complex>;
    /// f^{1/2} = dξ/dz.
    fn dxi_dz(&self, p: &LiouvillePoint) -> Complex;
    /// F̂_1..=F̂_n at the point.
    fn fhat_values(&self, p: &LiouvillePoint, n: usize, ctx: &PrecisionContext) -> Result<Vec<Complex>>;
    /// Ê_1..=Ê_n at the point.
    fn ehat_values(&self, p: &LiouvillePoint, n: usize, ctx: &PrecisionContext) -> Result<Vec<Complex>>;
    /// Ê_s at the reference point z^{(0)}.
    fn ehat_at_reference(&self, s: usize) -> Rational;
    fn connection(&self, nu: &Float, n: usize, ctx: &PrecisionContext) -> Result<ConnectionData>;
}

/// w = z^{1/2} J_ν(νz) and the Hankel companions.
pub struct BesselModel {
    tables: Arc<CoefficientTables>,
    evaluators: Mutex<HashMap<u32, Arc<Evaluators>>>,
}

impl fmt::Debug for BesselModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BesselModel").field("order", &self.tables.order()).finish()
    }
}

impl BesselModel {
    pub fn new(order: usize) -> Result<Self> {
        Ok(Self { tables: shared_tables(order)?, evaluators: Mutex::new(HashMap::new()) })
    }

    pub fn tables(&self) -> &CoefficientTables {
        &self.tables
    }

    fn evaluators(&self, prec: u32) -> Arc<Evaluators> {
        let mut map = self.evaluators.lock().expect("evaluator cache");
        map.entry(prec)
            .or_insert_with(|| {
                Arc::new(Evaluators {
                    fhat: self.tables.fhat.iter().map(|a| FloatAf::new(a, prec)).collect(),
                    ehat: self.tables.ehat.iter().map(|a| FloatAf::new(a, prec)).collect(),
                })
            })
            .clone()
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if n > self.tables.order() {
            return Err(Error::Domain(format!(
                "model built to order {}, {n} requested",
                self.tables.order()
            )));
        }
        Ok(())
    }

    pub fn xi_zeta(&self, z: &Complex, ctx: &PrecisionContext) -> Result<(Complex, Complex)> {
        let p = self.point(z, ctx)?;
        Ok((p.xi, p.zeta))
    }

    /// 𝓔_s or 𝓔̃_s for s = 1..=upto.
    pub fn modified_coefficients(
        &self,
        p: &LiouvillePoint,
        upto: usize,
        variant: Variant,
        ctx: &PrecisionContext,
    ) -> Result<Vec<Complex>> {
        if p.xi.is_zero() {
            return Err(Error::Domain("modified coefficients are singular at the turning point".into()));
        }
        let e = self.ehat_values(p, upto, ctx)?;
        let seq = airy_sequences(upto.max(2));
        let prec = ctx.prec();
        let mut xs = Complex::with_val(prec, 1);
        let mut out = Vec::with_capacity(upto);
        for (i, es) in e.into_iter().enumerate() {
            let s = i + 1;
            xs *= &p.xi;
            let b = seq.get(s, variant == Variant::ScriptETilde);
            let mut t = Complex::with_val(prec, Float::with_val(prec, b) / s as u32) / &xs;
            if s % 2 == 1 {
                t = -t;
            }
            out.push(es + t);
        }
        Ok(out)
    }

    pub fn modified_coefficient(&self, s: usize, z: &Complex, variant: Variant, ctx: &PrecisionContext) -> Result<Complex> {
        let p = self.point(z, ctx)?;
        let mut v = self.modified_coefficients(&p, s, variant, ctx)?;
        Ok(v.remove(s - 1))
    }

    /// The analytic (z²ζ/(1-z²))^{1/4} and ν^{-1/3}(z²/(ζ(1-z²)))^{1/4}.
    pub fn prefactors(&self, p: &LiouvillePoint, nu: &Float) -> Result<(Complex, Complex)> {
        if p.zeta.is_zero() {
            return Err(Error::Domain("prefactors are evaluated off the turning point".into()));
        }
        if p.z.imag().is_sign_negative() && !p.z.imag().is_zero() {
            let c = Complex::with_val(p.z.prec().0, p.z.conj_ref());
            let q = reflect(p, &c);
            let (a, b) = self.prefactors(&q, nu)?;
            return Ok((a.conj(), b.conj()));
        }
        let prec = p.z.prec().0;
        let z12 = Complex::with_val(prec, p.z.sqrt_ref());
        let s12 = Complex::with_val(prec, p.s.sqrt_ref());
        let zq = p.zeta_pow(0.25);
        let fac = Complex::with_val(prec, &z12 * &zq) / &s12;
        let third = Float::with_val(prec, nu.pow(Float::with_val(prec, -1) / 3u32));
        let facb = Complex::with_val(prec, z12 / (zq * s12)) * third;
        Ok((fac, facb))
    }

    /// Sector of z for parameter u, ties broken toward T_{0,-1}.
    pub fn classify_sector(&self, z: &Complex, u: &Complex, ctx: &PrecisionContext) -> Result<SectorLabel> {
        let p = self.point(z, ctx)?;
        let prec = ctx.prec();
        let pi = ctx.pi();
        let two_pi_3 = Float::with_val(prec, &pi * 2u32) / 3u32;
        let base = Float::with_val(prec, carg(u) * 2u32) / 3u32 + &p.zeta_arg;
        let wrap = |x: Float| -> Float {
            let mut x = x;
            let tp = Float::with_val(prec, &pi * 2u32);
            while x > pi {
                x -= &tp;
            }
            while x <= -pi.clone() {
                x += &tp;
            }
            x
        };
        let eps = ctx.tol(8);
        let mut best: Option<(i8, Float)> = None;
        for j in [0i8, -1, 1] {
            let phi = wrap(Float::with_val(prec, &base - Float::with_val(prec, &two_pi_3 * j as i32)));
            let a = Float::with_val(prec, phi.abs_ref());
            let better = match &best {
                None => true,
                Some((_, b)) => a < Float::with_val(prec, b.abs_ref()) - &eps,
            };
            if better {
                best = Some((j, phi));
            }
        }
        let (j, phi) = best.expect("three candidates");
        // T_{j,k} is the half of T_j next to T_k; j+1 lies on the positive side.
        let k = if Float::with_val(prec, phi.abs_ref()) <= eps {
            if j == 0 { -1 } else { 0 }
        } else {
            let nb = if phi > 0 { j + 1 } else { j - 1 };
            match nb {
                2 => -1,
                -2 => 1,
                v => v,
            }
        };
        Ok(SectorLabel { j, k })
    }
}

fn reflect(p: &LiouvillePoint, z: &Complex) -> LiouvillePoint {
    LiouvillePoint {
        z: z.clone(),
        s: Complex::with_val(p.s.prec().0, p.s.conj_ref()),
        xi: Complex::with_val(p.xi.prec().0, p.xi.conj_ref()),
        zeta: Complex::with_val(p.zeta.prec().0, p.zeta.conj_ref()),
        zeta_arg: Float::with_val(p.zeta_arg.prec(), -&p.zeta_arg),
    }
}

/// √(1 - z²): principal for Im z ≥ 0, -i√(z² - 1) on z > 1, reflected below.
pub fn sqrt_one_minus_z2(z: &Complex) -> Complex {
    let prec = z.prec().0;
    if z.imag().is_sign_negative() && !z.imag().is_zero() {
        let c = Complex::with_val(prec, z.conj_ref());
        return sqrt_one_minus_z2(&c).conj();
    }
    let w = Complex::with_val(prec, 1 - Complex::with_val(prec, z.square_ref()));
    if w.imag().is_zero() && w.real().is_sign_negative() {
        let r = Float::with_val(prec, -w.real()).sqrt();
        return Complex::with_val(prec, (Float::with_val(prec, 0), -r));
    }
    w.sqrt()
}

fn upper_point(z: &Complex, prec: u32) -> LiouvillePoint {
    let s = sqrt_one_minus_z2(z);
    let one = Complex::with_val(prec, 1);
    if Complex::with_val(prec, z - &one).is_zero() {
        let zero = Complex::with_val(prec, 0);
        return LiouvillePoint { z: z.clone(), s, xi: zero.clone(), zeta: zero, zeta_arg: Float::with_val(prec, 0) };
    }
    let ratio = Complex::with_val(prec, &one + &s) / z;
    let xi = ratio.ln() - &s;
    let pi = Float::with_val(prec, Constant::Pi);
    let mut ar = carg(&xi);
    if xi.imag().is_sign_positive() && !xi.imag().is_zero() || (xi.imag().is_zero() && xi.real().is_sign_negative()) {
        ar -= Float::with_val(prec, &pi * 2u32);
    }
    let mag = Float::with_val(prec, cabs(&xi) * 1.5f64);
    let two_thirds = Float::with_val(prec, 2) / 3u32;
    let r = mag.pow(&two_thirds);
    let th = Float::with_val(prec, &ar * &two_thirds);
    let zeta = expi(&th) * &r;
    LiouvillePoint { z: z.clone(), s, xi, zeta, zeta_arg: th }
}

impl TurningPointModel for BesselModel {
    fn turning_point(&self, ctx: &PrecisionContext) -> Complex {
        ctx.complex(1)
    }

    fn point(&self, z: &Complex, ctx: &PrecisionContext) -> Result<LiouvillePoint> {
        mpnum::ensure_finite(z, "z")?;
        if z.imag().is_zero() && !z.real().is_sign_positive() || z.is_zero() {
            return Err(Error::Domain("z lies on the cut (-inf, 0]".into()));
        }
        let prec = ctx.prec();
        let z = Complex::with_val(prec, z);
        if z.imag().is_sign_negative() && !z.imag().is_zero() {
            let c = Complex::with_val(prec, z.conj_ref());
            let p = upper_point(&c, prec);
            return Ok(reflect(&p, &z));
        }
        Ok(upper_point(&z, prec))
    }

    fn f(&self, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
        let z = ctx.complex(z);
        let z2 = Complex::with_val(ctx.prec(), z.square_ref());
        Ok(Complex::with_val(ctx.prec(), 1 - &z2) / z2)
    }

    fn g(&self, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
        let z = ctx.complex(z);
        let z2 = Complex::with_val(ctx.prec(), z.square_ref());
        Ok(Complex::with_val(ctx.prec(), -0.25f64) / z2)
    }

    fn phi(&self, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
        let z = ctx.complex(z);
        let s = sqrt_one_minus_z2(&z);
        let v = self.evaluators(ctx.prec()).fhat[0].eval(&z, &s);
        Ok(v * 2u32)
    }

    fn dxi_dz(&self, p: &LiouvillePoint) -> Complex {
        -Complex::with_val(p.s.prec().0, &p.s / &p.z)
    }

    fn fhat_values(&self, p: &LiouvillePoint, n: usize, ctx: &PrecisionContext) -> Result<Vec<Complex>> {
        self.check_order(n)?;
        let ev = self.evaluators(ctx.prec());
        Ok(ev.fhat[..n].iter().map(|f| f.eval(&p.z, &p.s)).collect())
    }

    fn ehat_values(&self, p: &LiouvillePoint, n: usize, ctx: &PrecisionContext) -> Result<Vec<Complex>> {
        self.check_order(n)?;
        let ev = self.evaluators(ctx.prec());
        Ok(ev.ehat[..n].iter().map(|f| f.eval(&p.z, &p.s)).collect())
    }

    fn ehat_at_reference(&self, s: usize) -> Rational {
        seqcoeff::stirling_c(s)
    }

    fn connection(&self, nu: &Float, n: usize, ctx: &PrecisionContext) -> Result<ConnectionData> {
        connection_constants(nu, n, ctx)
    }
}

/// λ_{±1} = (2πν)^{-1/2} e^ν Γ(ν+1)/ν^ν and δ_{n,±1} = λ exp(-Σ_{s<n} C_s/ν^s) - 1.
pub fn connection_constants(nu: &Float, n: usize, ctx: &PrecisionContext) -> Result<ConnectionData> {
    if !(nu.is_finite() && *nu > 0) {
        return Err(Error::Domain("ν must be positive".into()));
    }
    let wctx = ctx.widened(10);
    let prec = wctx.prec();
    let nu = Float::with_val(prec, nu);
    let g = mpnum::gamma(&Float::with_val(prec, &nu + 1u32), &wctx)?;
    let two_pi_nu = Float::with_val(prec, Constant::Pi) * 2u32 * &nu;
    let mut lambda = Float::with_val(prec, nu.exp_ref()) * g / two_pi_nu.sqrt();
    lambda /= Float::with_val(prec, (&nu).pow(&nu));
    let mut sum = Float::with_val(prec, 0);
    for s in (1..n).step_by(2) {
        sum += Float::with_val(prec, &seqcoeff::stirling_c(s)) / Float::with_val(prec, (&nu).pow(s as u32));
    }
    let delta = Float::with_val(prec, &lambda * Float::with_val(prec, -&sum).exp()) - 1u32;
    let mu = sum.exp();
    let out = |x: Float| Float::with_val(ctx.prec(), x);
    Ok(ConnectionData {
        lambda_plus: out(lambda.clone()),
        lambda_minus: out(lambda),
        delta: out(delta),
        mu: out(mu),
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn fhat1_closed_form() {
        let f = fhat_coefficients(2).unwrap();
        assert_eq!(f[0].value_at_rational(&r(1, 2)).unwrap(), r(-17, 54));
        assert_eq!(f[0].value_at_zero().unwrap(), r(0, 1));
        assert_eq!(f[1].pow_surd % 2, 1);
    }

    #[test]
    fn ehat_at_zero_is_stirling() {
        let e = ehat_coefficients(9).unwrap();
        for (i, es) in e.iter().enumerate() {
            assert_eq!(es.value_at_zero().unwrap(), seqcoeff::stirling_c(i + 1), "s = {}", i + 1);
        }
    }

    #[test]
    fn first_ehat_derivative() {
        let f = fhat_coefficients(1).unwrap();
        let e = ehat_coefficients(1).unwrap();
        let rhs = AlgebraicFunction::new(f[0].poly.clone(), f[0].pow_z + 1, f[0].pow_surd - 1);
        assert!(e[0].derivative().add(&rhs).unwrap().is_zero());
    }

    #[test]
    fn zero_is_additive_identity() {
        let f = fhat_coefficients(1).unwrap();
        assert_eq!(f[0].add(&AlgebraicFunction::zero()).unwrap(), f[0]);
    }
}
