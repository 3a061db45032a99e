use std::cmp::Ordering;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::Zero;
use serde::Serialize;

use super::growth::GrowthFunction;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `measured ≥ target(argument)`.
    LowerBound,
    /// `measured ≤ target(argument)`.
    UpperBound,
}

/// One exact comparison between a measured integer and a growth function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub argument: BigUint,
    pub measured: BigUint,
    pub target: GrowthFunction,
    pub mode: Mode,
    pub holds: bool,
}

impl Check {
    pub fn new(argument: BigUint, measured: BigUint, target: GrowthFunction, mode: Mode) -> Self {
        let mut c = Check {
            argument,
            measured,
            target,
            mode,
            holds: false,
        };
        c.holds = c.evaluate();
        c
    }

    fn evaluate(&self) -> bool {
        let m = BigRational::from_integer(self.measured.clone().into());
        let ord = self.target.cmp_at(&self.argument, &m);
        match self.mode {
            Mode::LowerBound => ord != Ordering::Greater,
            Mode::UpperBound => ord != Ordering::Less,
        }
    }

    /// Target value as a float, for reports.
    pub fn target_f64(&self) -> f64 {
        self.target.to_f64(&self.argument)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    /// The check fails but its recorded precondition fails too, so the
    /// implication holds.
    Vacuous,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Vacuous => "vacuous",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateRecord {
    pub i: usize,
    pub check: Check,
    pub precondition: Option<Check>,
}

impl CertificateRecord {
    pub fn verdict(&self) -> Verdict {
        match (&self.precondition, self.check.holds) {
            (_, true) => Verdict::Holds,
            (Some(pre), false) if !pre.holds => Verdict::Vacuous,
            _ => Verdict::Fails,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthCertificate {
    pub mode: Mode,
    pub epsilon: Option<Ratio<i64>>,
    pub records: Vec<CertificateRecord>,
}

impl GrowthCertificate {
    pub fn new(mode: Mode, epsilon: Option<Ratio<i64>>) -> Self {
        GrowthCertificate {
            mode,
            epsilon,
            records: Vec::new(),
        }
    }

    /// No record fails outright.
    pub fn holds(&self) -> bool {
        self.records.iter().all(|r| r.verdict() != Verdict::Fails)
    }

    /// Recomputes every stored verdict from the stored numbers.
    pub fn recheck(&self) -> bool {
        self.records.iter().all(|r| {
            r.check.evaluate() == r.check.holds && r.precondition.as_ref().is_none_or(|p| p.evaluate() == p.holds)
        })
    }

    pub fn record(&self, i: usize) -> Option<&CertificateRecord> {
        self.records.iter().find(|r| r.i == i)
    }
}

/// Which normalized exponent bound to certify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentBound {
    /// `b_1(π_i) ≥ [π:π_i]^{1/(2k)}`.
    Betti,
    /// `d(π_i) ≤ k^{−ε}·[π:π_i]^ε` with `ε = (2k−1)/(2k)`.
    Rank,
}

impl ExponentBound {
    pub fn epsilon(self, k: u64) -> Result<Ratio<i64>> {
        let k = i64::try_from(k).ok().filter(|k| (1..i64::MAX / 2).contains(k));
        let k = k.ok_or_else(|| Error::Input("ambient index must be a positive integer".into()))?;
        Ok(match self {
            ExponentBound::Betti => Ratio::new(1, 2 * k),
            ExponentBound::Rank => Ratio::new(2 * k - 1, 2 * k),
        })
    }
}

/// Data of one term for the exponent certificates: the `Γ`-level term and
/// its normalization `π_i` in `π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentInput {
    pub i: usize,
    /// `[Γ:Γ_i]`.
    pub gamma_index: BigUint,
    /// `[π:π_i]`.
    pub pi_index: BigUint,
    pub gamma_b1: Option<usize>,
    pub pi_b1: Option<usize>,
    /// Upper bound on `d(Γ_i)`.
    pub gamma_rank_upper: Option<usize>,
}

fn k_power(alpha: Ratio<i64>, k: u64, coeff_exp: Ratio<i64>) -> Result<GrowthFunction> {
    GrowthFunction::power_with_coeff(alpha, BigRational::from_integer(k.into()), coeff_exp)
}

/// Per-term exponent checks for a normalized filtration of `π ⊇ Γ` with
/// `[π:Γ] = k`.
///
/// Betti: precondition `b_1(Γ_i) ≥ k^{1/(2k)}·√[Γ:Γ_i]`, check
/// `b_1(π_i) ≥ [π:π_i]^{1/(2k)}`.
///
/// Rank: with `s_i = [Γ_i:π_i]`, precondition `d(Γ_i) ≤ √[Γ:Γ_i]`, check
/// `s_i·d(Γ_i) ≤ k^{−ε}·[π:π_i]^ε`; the left side bounds `d(π_i)` from
/// above. The arithmetic fact `s_i ≤ [Γ:Γ_i]^{k−1}` is asserted.
pub fn exponent_certificate(inputs: &[ExponentInput], k: u64, bound: ExponentBound) -> Result<GrowthCertificate> {
    let eps = bound.epsilon(k)?;
    let missing = |what: &str, i: usize| Error::Input(format!("term {i} has no {what}"));
    let half = Ratio::new(1, 2);
    let mode = match bound {
        ExponentBound::Betti => Mode::LowerBound,
        ExponentBound::Rank => Mode::UpperBound,
    };
    let mut cert = GrowthCertificate::new(mode, Some(eps));
    for t in inputs {
        let kk = BigUint::from(k);
        let (s, rem) = t.pi_index.div_rem(&(&kk * &t.gamma_index));
        if !rem.is_zero() || s.is_zero() {
            return Err(Error::Internal(format!(
                "term {}: [π:π_i] = {} is not a multiple of k·[Γ:Γ_i] = {}",
                t.i,
                t.pi_index,
                &kk * &t.gamma_index
            )));
        }
        let record = match bound {
            ExponentBound::Betti => {
                let gb = t.gamma_b1.ok_or_else(|| missing("b1 of the Γ-term", t.i))?;
                let pb = t.pi_b1.ok_or_else(|| missing("b1 of the normalized term", t.i))?;
                let pre_target = k_power(half, k, Ratio::new(1, 2 * k as i64))?;
                CertificateRecord {
                    i: t.i,
                    precondition: Some(Check::new(t.gamma_index.clone(), gb.into(), pre_target, Mode::LowerBound)),
                    check: Check::new(t.pi_index.clone(), pb.into(), GrowthFunction::power(eps)?, Mode::LowerBound),
                }
            }
            ExponentBound::Rank => {
                let d = t.gamma_rank_upper.ok_or_else(|| missing("rank bound of the Γ-term", t.i))?;
                if s > t.gamma_index.pow(k as u32 - 1) {
                    return Err(Error::Internal(format!(
                        "term {}: s_i = {s} exceeds [Γ:Γ_i]^(k−1)",
                        t.i
                    )));
                }
                CertificateRecord {
                    i: t.i,
                    precondition: Some(Check::new(
                        t.gamma_index.clone(),
                        d.into(),
                        GrowthFunction::power(half)?,
                        Mode::UpperBound,
                    )),
                    check: Check::new(t.pi_index.clone(), &s * BigUint::from(d), k_power(eps, k, -eps)?, Mode::UpperBound),
                }
            }
        };
        cert.records.push(record);
    }
    Ok(cert)
}

/// `n ↦ c·f(n)` with `c = k` or `c = 1/k`.
pub fn rescaled(f: &GrowthFunction, k: u64, inverse: bool) -> Result<GrowthFunction> {
    if k == 0 {
        return Err(Error::Input("ambient index must be positive".into()));
    }
    if k == 1 {
        return Ok(f.clone());
    }
    let c = BigRational::from_integer(k.into());
    GrowthFunction::scaled(if inverse { c.recip() } else { c }, f.clone())
}

/// Re-checks a `Γ`-level certificate in the ambient group: each term has
/// index `k·[Γ:Γ_i]` in `π`, and the original target `f` is compared at that
/// index. The `Γ`-level check becomes the precondition.
pub fn ambient_certificate(gamma_level: &GrowthCertificate, f: &GrowthFunction, k: u64) -> GrowthCertificate {
    let mut cert = GrowthCertificate::new(gamma_level.mode, gamma_level.epsilon);
    for r in &gamma_level.records {
        let argument = &r.check.argument * BigUint::from(k);
        cert.records.push(CertificateRecord {
            i: r.i,
            check: Check::new(argument, r.check.measured.clone(), f.clone(), r.check.mode),
            precondition: Some(r.check.clone()),
        });
    }
    cert
}
