//! Exact coefficient sequences and truncated formal power series.

use std::sync::{Mutex, OnceLock};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::mpnum::PrecisionContext;

/// b_{s+1} = (s+1) b_s / 2 + (1/2) Σ_{j=1}^{s-1} b_j b_{s-j}; entry `i` holds b_{i+1}.
pub fn extend_sequence(b1: &Rational, b2: &Rational, len: usize) -> Result<Vec<Rational>> {
    if len < 2 {
        return Err(Error::Domain(format!("sequence length must be at least 2, got {len}")));
    }
    let mut b = vec![b1.clone(), b2.clone()];
    for s in 2..len {
        let mut next = Rational::from(&b[s - 1] * Rational::from((s as i64 + 1, 2)));
        let mut conv = Rational::new();
        for j in 1..s {
            conv += Rational::from(&b[j - 1] * &b[s - j - 1]);
        }
        conv /= 2;
        next += conv;
        b.push(next);
    }
    Ok(b)
}

/// The two Airy sequences a_s and ã_s, 1-indexed through [`AirySeqTable::a`].
#[derive(Debug, Clone, PartialEq)]
pub struct AirySeqTable {
    pub a: Vec<Rational>,
    pub a_tilde: Vec<Rational>,
}

impl AirySeqTable {
    pub fn new(len: usize) -> Result<Self> {
        let five = Rational::from((5, 72));
        let seven = Rational::from((-7, 72));
        Ok(Self {
            a: extend_sequence(&five, &five, len)?,
            a_tilde: extend_sequence(&seven, &seven, len)?,
        })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn a(&self, s: usize) -> &Rational {
        &self.a[s - 1]
    }

    pub fn a_tilde(&self, s: usize) -> &Rational {
        &self.a_tilde[s - 1]
    }

    pub fn get(&self, s: usize, tilde: bool) -> &Rational {
        if tilde { self.a_tilde(s) } else { self.a(s) }
    }
}

/// Shared table, grown on demand.
pub fn airy_sequences(len: usize) -> AirySeqTable {
    static CACHE: OnceLock<Mutex<AirySeqTable>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(AirySeqTable::new(32).expect("valid length")));
    let mut t = cache.lock().expect("sequence cache");
    if t.len() < len {
        *t = AirySeqTable::new(len).expect("valid length");
    }
    AirySeqTable { a: t.a[..len.max(2)].to_vec(), a_tilde: t.a_tilde[..len.max(2)].to_vec() }
}

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1)]))
}

/// Bernoulli number B_n with B_1 = -1/2.
pub fn bernoulli(n: usize) -> Rational {
    let mut b = bernoulli_cache().lock().expect("bernoulli cache");
    while b.len() <= n {
        let m = b.len();
        // Σ_{k=0}^{m} C(m+1,k) B_k = 0
        let mut acc = Rational::new();
        for (k, bk) in b.iter().enumerate() {
            if k > 1 && k % 2 == 1 {
                continue;
            }
            let c = Integer::from(Integer::binomial_u((m + 1) as u32, k as u32));
            acc += Rational::from(bk * c);
        }
        let bm = -acc / Rational::from(m as u64 + 1);
        b.push(bm);
    }
    b[n].clone()
}

/// C_s from ln Γ(x) ~ (x-1/2)ln x - x + ln(2π)/2 + Σ C_s/x^s; zero for even s.
pub fn stirling_c(s: usize) -> Rational {
    if s == 0 || s % 2 == 0 {
        return Rational::new();
    }
    let b = bernoulli(s + 1);
    b / Rational::from((s as u64 + 1) * s as u64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StirlingTable {
    /// c[s] = C_s for s = 0..=2J+1 (c[0] unused and zero).
    pub c: Vec<Rational>,
}

impl StirlingTable {
    pub fn get(&self, s: usize) -> Rational {
        self.c.get(s).cloned().unwrap_or_else(|| stirling_c(s))
    }

    /// Σ_{j=0}^{m} C_{2j+1} / x^{2j+1}.
    pub fn partial_sum(&self, x: &Float, m: usize) -> Float {
        let prec = x.prec();
        let mut acc = Float::with_val(prec, 0);
        for j in 0..=m {
            let s = 2 * j + 1;
            let p = Float::with_val(prec, x.pow(s as i32));
            acc += Float::with_val(prec, &self.get(s)) / p;
        }
        acc
    }
}

pub fn stirling_constants(j: usize) -> Result<StirlingTable> {
    if j < 1 {
        return Err(Error::Domain("need at least one Stirling coefficient".into()));
    }
    Ok(StirlingTable { c: (0..=2 * j + 1).map(stirling_c).collect() })
}

/// Λ_p as rational × (π if `times_pi`).
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaExact {
    pub rational: Rational,
    pub times_pi: bool,
}

pub fn lambda_exact(p: usize) -> Result<LambdaExact> {
    if p < 2 {
        return Err(Error::Domain(format!("Λ_p needs p >= 2, got {p}")));
    }
    let fact = |n: usize| Integer::from(Integer::factorial(n as u32));
    if p % 2 == 0 {
        let q = p / 2;
        let num = fact(2 * q - 2);
        let qm1 = fact(q - 1);
        let den = Integer::from(Integer::u_pow_u(4, (q - 1) as u32)) * &qm1 * &qm1 * 2u32;
        Ok(LambdaExact { rational: Rational::from((num, den)), times_pi: true })
    } else {
        let q = (p - 1) / 2;
        let num = fact(q - 1) * fact(q) * Integer::from(Integer::u_pow_u(4, q as u32));
        let den = fact(2 * q) * 2u32;
        Ok(LambdaExact { rational: Rational::from((num, den)), times_pi: false })
    }
}

/// Λ_p = √π Γ(p/2 - 1/2) / (2 Γ(p/2)).
pub fn lambda_cap(p: usize, ctx: &PrecisionContext) -> Result<Float> {
    let e = lambda_exact(p)?;
    let mut v = ctx.float(&e.rational);
    if e.times_pi {
        v *= ctx.pi();
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaTable {
    pub values: Vec<Float>,
    pub exact: Vec<LambdaExact>,
}

impl LambdaTable {
    /// Λ_2..=Λ_p_max.
    pub fn new(p_max: usize, ctx: &PrecisionContext) -> Result<Self> {
        let mut values = Vec::new();
        let mut exact = Vec::new();
        for p in 2..=p_max {
            exact.push(lambda_exact(p)?);
            values.push(lambda_cap(p, ctx)?);
        }
        Ok(Self { values, exact })
    }

    pub fn get(&self, p: usize) -> &Float {
        &self.values[p - 2]
    }
}

/// Truncated power series c_0 + c_1 y + ... + c_N y^N, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSeries {
    coeffs: Vec<Rational>,
}

impl FormalSeries {
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::new());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![Rational::from(1)], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Domain(format!(
                "series orders differ: {} and {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| Rational::from(a + b)).collect();
        Ok(Self { coeffs: c })
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| Rational::from(c * k)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut c = vec![Rational::new(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                c[i + j] += Rational::from(a * b);
            }
        }
        Ok(Self { coeffs: c })
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("exp needs a zero constant term to stay rational".into()));
        }
        let n = self.order();
        let mut e = vec![Rational::new(); n + 1];
        e[0] = Rational::from(1);
        for k in 1..=n {
            let mut acc = Rational::new();
            for j in 1..=k {
                acc += Rational::from(&self.coeffs[j] * &e[k - j]) * Rational::from(j as u64);
            }
            e[k] = acc / Rational::from(k as u64);
        }
        Ok(Self { coeffs: e })
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != 1 {
            return Err(Error::Domain("log needs constant term 1".into()));
        }
        let n = self.order();
        let mut l = vec![Rational::new(); n + 1];
        for k in 1..=n {
            let mut acc = Rational::new();
            for j in 1..k {
                acc += Rational::from(&l[j] * &self.coeffs[k - j]) * Rational::from(j as u64);
            }
            l[k] = Rational::from(&self.coeffs[k] - acc / Rational::from(k as u64));
        }
        Ok(Self { coeffs: l })
    }

    /// c_k -> (-1)^k c_k.
    pub fn neg_alternate(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { Rational::from(-c) } else { c.clone() })
            .collect();
        Self { coeffs: c }
    }
}

/// Σ_{s=1}^{N} (-1)^s b_s / s · y^s, the exponent of the Airy LG series.
pub fn exponent_series(b: &[Rational], order: usize) -> FormalSeries {
    let mut c = vec![Rational::new(); order + 1];
    for s in 1..=order.min(b.len()) {
        let mut t = Rational::from(&b[s - 1] / Rational::from(s as u64));
        if s % 2 == 1 {
            t = -t;
        }
        c[s] = t;
    }
    FormalSeries::new(c, order)
}

/// Classical Airy coefficients (u_k, v_k) for k = 0..=order, DLMF 9.7.
pub fn poincare_uv(order: usize) -> (Vec<Rational>, Vec<Rational>) {
    let mut u = vec![Rational::from(1)];
    let mut v = vec![Rational::from(1)];
    for k in 1..=order as i64 {
        let num = Integer::from((6 * k - 5) * (6 * k - 3) * (6 * k - 1));
        let den = Integer::from((2 * k - 1) * 216 * k);
        let uk = Rational::from(&u[(k - 1) as usize] * Rational::from((num, den)));
        let vk = Rational::from(&uk * Rational::from((-(6 * k + 1), 6 * k - 1)));
        u.push(uk);
        v.push(vk);
    }
    (u, v)
}

/// a + b + ab ≤ (b+c+d)(1 + (b+c+d)/2)² with a = c + d + cd.
pub fn product_inequality_holds(b: &Rational, c: &Rational, d: &Rational) -> bool {
    let a = Rational::from(c + d) + Rational::from(c * d);
    let lhs = Rational::from(&a + b) + Rational::from(&a * b);
    let t = Rational::from(b + c) + d;
    let half = Rational::from(&t / 2u32) + 1u32;
    let rhs = t * Rational::from(half.square_ref());
    lhs <= rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn third_terms() {
        let t = AirySeqTable::new(3).unwrap();
        assert_eq!(*t.a(3), r(1105, 10368));
        assert_eq!(*t.a_tilde(3), r(-1463, 10368));
        let two = extend_sequence(&r(5, 72), &r(5, 72), 2).unwrap();
        assert_eq!(two, vec![r(5, 72), r(5, 72)]);
        assert!(extend_sequence(&r(1, 1), &r(1, 1), 1).is_err());
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling_c(1), r(1, 12));
        assert_eq!(stirling_c(2), r(0, 1));
        assert_eq!(stirling_c(3), r(-1, 360));
        assert_eq!(stirling_c(5), r(1, 1260));
        let t = stirling_constants(4).unwrap();
        assert_eq!(t.c.len(), 10);
        assert!(t.c.iter().step_by(2).all(|c| c.is_zero()));
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(1), r(-1, 2));
        assert_eq!(bernoulli(2), r(1, 6));
        assert_eq!(bernoulli(12), r(-691, 2730));
        assert_eq!(bernoulli(13), r(0, 1));
    }

    #[test]
    fn lambda_small() {
        let e2 = lambda_exact(2).unwrap();
        assert_eq!((e2.rational, e2.times_pi), (r(1, 2), true));
        let e3 = lambda_exact(3).unwrap();
        assert_eq!((e3.rational, e3.times_pi), (r(1, 1), false));
        let e4 = lambda_exact(4).unwrap();
        assert_eq!((e4.rational, e4.times_pi), (r(1, 4), true));
        assert!(lambda_exact(1).is_err());
    }

    #[test]
    fn exp_of_airy_exponent() {
        let t = AirySeqTable::new(2).unwrap();
        let e = exponent_series(&t.a, 2).exp().unwrap();
        assert_eq!(e.coeffs(), &[r(1, 1), r(-5, 72), r(385, 10368)]);
        assert_eq!(FormalSeries::zero(4).exp().unwrap(), FormalSeries::one(4));
    }

    #[test]
    fn log_rejects_bad_constant() {
        let s = FormalSeries::new(vec![r(2, 1), r(1, 1)], 3);
        assert!(s.log().is_err());
        assert!(s.exp().is_err());
    }

    #[test]
    fn orders_must_match() {
        assert!(FormalSeries::one(3).mul(&FormalSeries::one(4)).is_err());
    }
}
