use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A function `N → Q≥0` (or into the reals, for roots and logarithms)
/// compared exactly against rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowthFunction {
    /// `coeff^coeff_exp · n^alpha`, with `alpha ≥ 0` and `coeff > 0`.
    Power {
        alpha: Ratio<i64>,
        coeff: BigRational,
        coeff_exp: Ratio<i64>,
    },
    /// `log_base(n)`.
    Log { base: u64 },
    /// `values[n − 1]`, continued by the last value.
    Table(Vec<BigRational>),
    /// `c · inner(n)`, `c > 0`.
    Scaled(BigRational, Box<GrowthFunction>),
    /// `n · inner(peak) / peak` below `peak`, `inner(n)` from there on.
    RatioPeak { inner: Box<GrowthFunction>, peak: u64 },
}

impl GrowthFunction {
    pub fn power(alpha: Ratio<i64>) -> Result<Self> {
        GrowthFunction::power_with_coeff(alpha, BigRational::one(), Ratio::zero())
    }

    pub fn power_with_coeff(alpha: Ratio<i64>, coeff: BigRational, coeff_exp: Ratio<i64>) -> Result<Self> {
        if alpha.is_negative() {
            return Err(Error::Input(format!("power exponent {alpha} is negative")));
        }
        if !coeff.is_positive() {
            return Err(Error::Input("power coefficient must be positive".into()));
        }
        Ok(GrowthFunction::Power { alpha, coeff, coeff_exp })
    }

    pub fn log(base: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::Input(format!("logarithm base {base} must be at least 2")));
        }
        Ok(GrowthFunction::Log { base })
    }

    pub fn table(values: Vec<BigRational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Input("empty table".into()));
        }
        if values.iter().any(Signed::is_negative) {
            return Err(Error::Input("table values must be non-negative".into()));
        }
        Ok(GrowthFunction::Table(values))
    }

    pub fn scaled(c: BigRational, inner: GrowthFunction) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::Input("scale factor must be positive".into()));
        }
        Ok(GrowthFunction::Scaled(c, Box::new(inner)))
    }

    /// Sign of `self(n) − r`. `n` must be positive.
    pub fn cmp_at(&self, n: &BigUint, r: &BigRational) -> Ordering {
        debug_assert!(!n.is_zero(), "growth functions live on positive integers");
        match self {
            GrowthFunction::Power { alpha, coeff, coeff_exp } => {
                if !r.is_positive() {
                    return Ordering::Greater;
                }
                let l = alpha.denom().lcm(coeff_exp.denom());
                let a = alpha.numer() * (l / alpha.denom());
                let c = coeff_exp.numer() * (l / coeff_exp.denom());
                let lhs = rat_pow(coeff, c) * BigRational::from_integer(BigInt::from(n.clone()).pow(a as u32));
                lhs.cmp(&rat_pow(r, l))
            }
            GrowthFunction::Log { base } => cmp_log(*base, n, r),
            GrowthFunction::Table(values) => table_value(values, n).cmp(r),
            GrowthFunction::Scaled(c, inner) => inner.cmp_at(n, &(r / c)),
            GrowthFunction::RatioPeak { inner, peak } => {
                let p = BigUint::from(*peak);
                if n < &p {
                    let scaled = r * BigRational::from_integer(p.clone().into()) / BigRational::from_integer(n.clone().into());
                    inner.cmp_at(&p, &scaled)
                } else {
                    inner.cmp_at(n, r)
                }
            }
        }
    }

    /// Floating-point value, for display only.
    pub fn to_f64(&self, n: &BigUint) -> f64 {
        let nf = n.to_f64().unwrap_or(f64::INFINITY);
        match self {
            GrowthFunction::Power { alpha, coeff, coeff_exp } => {
                let e = |q: &Ratio<i64>| *q.numer() as f64 / *q.denom() as f64;
                (e(alpha) * nf.ln() + e(coeff_exp) * rat_f64(coeff).ln()).exp()
            }
            GrowthFunction::Log { base } => nf.ln() / (*base as f64).ln(),
            GrowthFunction::Table(values) => rat_f64(&table_value(values, n)),
            GrowthFunction::Scaled(c, inner) => rat_f64(c) * inner.to_f64(n),
            GrowthFunction::RatioPeak { inner, peak } => {
                if nf < *peak as f64 {
                    nf * inner.to_f64(&BigUint::from(*peak)) / *peak as f64
                } else {
                    inner.to_f64(n)
                }
            }
        }
    }

    /// Whether `self(n)/n → 0` is known in closed form.
    pub fn is_sublinear_ratio(&self) -> bool {
        match self {
            GrowthFunction::Power { alpha, .. } => *alpha < Ratio::one(),
            GrowthFunction::Log { .. } => true,
            GrowthFunction::Table(_) => false,
            GrowthFunction::Scaled(_, inner) | GrowthFunction::RatioPeak { inner, .. } => inner.is_sublinear_ratio(),
        }
    }

    /// Whether `self(n) → ∞` is known in closed form.
    pub fn is_unbounded(&self) -> bool {
        match self {
            GrowthFunction::Power { alpha, .. } => alpha.is_positive(),
            GrowthFunction::Log { .. } => true,
            GrowthFunction::Table(_) => false,
            GrowthFunction::Scaled(_, inner) | GrowthFunction::RatioPeak { inner, .. } => inner.is_unbounded(),
        }
    }
}

fn table_value(values: &[BigRational], n: &BigUint) -> BigRational {
    let k = n.to_usize().unwrap_or(usize::MAX).min(values.len());
    values[k.max(1) - 1].clone()
}

fn rat_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn rat_pow(q: &BigRational, e: i64) -> BigRational {
    let mag = e.unsigned_abs() as u32;
    let p = BigRational::new_raw(q.numer().pow(mag), q.denom().pow(mag));
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Sign of `log_base(n) − r`.
fn cmp_log(base: u64, n: &BigUint, r: &BigRational) -> Ordering {
    if n.is_one() {
        return BigRational::zero().cmp(r);
    }
    if !r.is_positive() {
        return Ordering::Greater;
    }
    // log_b n ≥ a/c  ⇔  n^c ≥ b^a
    let (a, c) = (r.numer().magnitude(), r.denom().magnitude());
    let b = BigUint::from(base);
    let (nb, bb) = (n.bits(), b.bits());
    // n^c has between c(nb−1)+1 and c·nb bits
    let lhs_lo = c * BigUint::from(nb - 1) + 1u32;
    let lhs_hi = c * BigUint::from(nb);
    let rhs_lo = a * BigUint::from(bb - 1) + 1u32;
    let rhs_hi = a * BigUint::from(bb);
    if lhs_lo > rhs_hi {
        return Ordering::Greater;
    }
    if lhs_hi < rhs_lo {
        return Ordering::Less;
    }
    let c = c.to_u32().expect("exponent fits after the bit-length test");
    let a = a.to_u32().expect("exponent fits after the bit-length test");
    n.pow(c).cmp(&b.pow(a))
}

/// Pointwise maximum of `g(1), …, g(n)`.
pub fn monotone_increasing_envelope(g: &GrowthFunction) -> GrowthFunction {
    match g {
        GrowthFunction::Table(values) => {
            let mut best = values[0].clone();
            GrowthFunction::Table(
                values
                    .iter()
                    .map(|v| {
                        if *v > best {
                            best = v.clone();
                        }
                        best.clone()
                    })
                    .collect(),
            )
        }
        GrowthFunction::Scaled(c, inner) => GrowthFunction::Scaled(c.clone(), Box::new(monotone_increasing_envelope(inner))),
        // powers with α ≥ 0 and logarithms are non-decreasing; a peak
        // envelope of a non-decreasing function is non-decreasing
        GrowthFunction::Power { .. } | GrowthFunction::Log { .. } => g.clone(),
        GrowthFunction::RatioPeak { inner, peak } => GrowthFunction::RatioPeak {
            inner: Box::new(monotone_increasing_envelope(inner)),
            peak: *peak,
        },
    }
}

/// `n ↦ n · sup_{m ≥ n} f(m)/m`. Closed form for powers and logarithms;
/// tables need a horizon over which the supremum is taken.
pub fn ratio_decreasing_envelope(f: &GrowthFunction, horizon: Option<u64>) -> Result<GrowthFunction> {
    match f {
        GrowthFunction::Power { alpha, .. } => {
            if *alpha > Ratio::one() {
                Err(Error::Input(format!("n^{alpha}/n is unbounded; no ratio envelope")))
            } else {
                Ok(f.clone())
            }
        }
        // log_b(m)/m increases up to m = 3 and decreases from there
        GrowthFunction::Log { .. } => Ok(GrowthFunction::RatioPeak {
            inner: Box::new(f.clone()),
            peak: 3,
        }),
        GrowthFunction::RatioPeak { .. } => Ok(f.clone()),
        GrowthFunction::Scaled(c, inner) => Ok(GrowthFunction::Scaled(
            c.clone(),
            Box::new(ratio_decreasing_envelope(inner, horizon)?),
        )),
        GrowthFunction::Table(values) => {
            let h = horizon.ok_or_else(|| Error::Input("ratio envelope of a table needs a horizon".into()))?;
            let h = usize::try_from(h).map_err(|_| Error::Input("horizon too large".into()))?;
            if h == 0 {
                return Err(Error::Input("horizon must be positive".into()));
            }
            let at = |m: usize| values[m.min(values.len()) - 1].clone();
            let mut out = vec![BigRational::zero(); h];
            let mut best = BigRational::zero();
            for m in (1..=h).rev() {
                let ratio = at(m) / BigRational::from_integer(m.into());
                if ratio > best {
                    best = ratio;
                }
                out[m - 1] = &best * BigRational::from_integer(m.into());
            }
            Ok(GrowthFunction::Table(out))
        }
    }
}

fn fmt_ratio<T: fmt::Display + Clone + Integer>(q: &Ratio<T>) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GrowthFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthFunction::Power { alpha, coeff, coeff_exp } => {
                if coeff_exp.is_zero() || coeff.is_one() {
                    write!(f, "power:{}", fmt_ratio(alpha))
                } else {
                    write!(f, "({})^({})*power:{}", fmt_ratio(coeff), fmt_ratio(coeff_exp), fmt_ratio(alpha))
                }
            }
            GrowthFunction::Log { base } => write!(f, "log:{base}"),
            GrowthFunction::Table(values) => {
                let vs: Vec<String> = values.iter().map(fmt_ratio).collect();
                write!(f, "table:{}", vs.join(","))
            }
            GrowthFunction::Scaled(c, inner) => write!(f, "{}*{inner}", fmt_ratio(c)),
            GrowthFunction::RatioPeak { inner, peak } => write!(f, "peak{peak}({inner})"),
        }
    }
}

/// Parses `12`, `-3`, `1/2` or `0.25` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Input(format!("cannot parse '{s}' as a rational number"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" { BigInt::zero() } else { int.parse().map_err(|_| bad())? };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = int.abs() * &scale + frac;
        let numer = if negative { -magnitude } else { magnitude };
        return Ok(BigRational::new(numer, scale));
    }
    Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
}

fn small_ratio(q: &BigRational, what: &str) -> Result<Ratio<i64>> {
    match (q.numer().to_i64(), q.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(Ratio::new(n, d)),
        _ => Err(Error::Input(format!("{what} {q} is too large"))),
    }
}

impl FromStr for GrowthFunction {
    type Err = Error;

    /// `power:α`, `log:b`, `table:v1,v2,…`, each optionally prefixed by a
    /// scale factor `c*`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((c, rest)) = s.split_once('*') {
            return GrowthFunction::scaled(parse_rational(c)?, rest.parse()?);
        }
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Input(format!("growth function '{s}' must look like kind:parameters")))?;
        match kind.trim() {
            "power" => GrowthFunction::power(small_ratio(&parse_rational(arg)?, "exponent")?),
            "log" => GrowthFunction::log(
                arg.trim()
                    .parse()
                    .map_err(|_| Error::Input(format!("logarithm base '{arg}' must be an integer")))?,
            ),
            "table" => GrowthFunction::table(arg.split(',').map(parse_rational).collect::<Result<_>>()?),
            other => Err(Error::Input(format!("unknown growth function kind '{other}'"))),
        }
    }
}
