//! Run configuration, orchestration of the constructions, and CSV/JSON
//! reports.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::{BigRational, Ratio};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::coset_actions::{subgroup_from_abelian_quotient, AbelianTargetMap, CosetTable, TableDump};
use crate::error::{Error, Result};
use crate::filtrations::{
    derived_p_filtration, excludes_word, exponent_certificate, fast_betti_schedule, normalize_schedule,
    ratio_decreasing_envelope, rescaled, sanov_congruence_filtration, slow_rank_schedule, Caps, CertificateRecord,
    Check, ExponentBound, ExponentInput, Filtration, FiltrationTerm, GrowthCertificate, GrowthFunction, Mode,
    TermSubgroup, Truncation, Verdict,
};
use crate::homology::is_prime;
use crate::presentations::{
    catalog_entry, mk_free_group, mk_semidirect_z, parse_presentation, FinitePresentation, FreeQuotient,
    GroupAutomorphism,
};
use crate::schreier::Rewriting;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERDICT_FAILED: i32 = 1;
    pub const TRUNCATED: i32 = 2;
    pub const UNKNOWN_CATALOG: i32 = 3;
    pub const MALFORMED_FILE: i32 = 4;
    pub const INPUT: i32 = 5;
    pub const INTERNAL: i32 = 6;
}

/// Exit status for a run that stopped with an error.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownCatalog(_) => exit::UNKNOWN_CATALOG,
        Error::Parse { .. } | Error::UnknownLetter { .. } => exit::MALFORMED_FILE,
        Error::Resource { .. } => exit::TRUNCATED,
        Error::Internal(_) => exit::INTERNAL,
        _ => exit::INPUT,
    }
}

pub const CSV_HEADER: [&str; 12] = [
    "i", "d_i", "n_i", "index", "b1", "b1_mod", "torsion", "rank_lo", "rank_hi", "target", "verdict", "ratio",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    DerivedP,
    Sanov,
    FastBetti,
    SlowRank,
    Normalized,
    Exponent,
}

impl Construction {
    pub const NAMES: [&'static str; 6] = ["derived_p", "sanov", "fast_betti", "slow_rank", "normalized", "exponent"];

    pub fn as_str(self) -> &'static str {
        match self {
            Construction::DerivedP => "derived_p",
            Construction::Sanov => "sanov",
            Construction::FastBetti => "fast_betti",
            Construction::SlowRank => "slow_rank",
            Construction::Normalized => "normalized",
            Construction::Exponent => "exponent",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "derived_p" => Construction::DerivedP,
            "sanov" => Construction::Sanov,
            "fast_betti" => Construction::FastBetti,
            "slow_rank" => Construction::SlowRank,
            "normalized" => Construction::Normalized,
            "exponent" => Construction::Exponent,
            other => return Err(Error::Input(format!("unknown construction '{other}'"))),
        })
    }
}

/// Base family under the growth schedules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    DerivedP,
    Sanov,
}

impl FromStr for BaseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "derived_p" => Ok(BaseKind::DerivedP),
            "sanov" => Ok(BaseKind::Sanov),
            other => Err(Error::Input(format!("unknown base filtration '{other}'"))),
        }
    }
}

impl FromStr for ExponentBound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "betti" => Ok(ExponentBound::Betti),
            "rank" => Ok(ExponentBound::Rank),
            other => Err(Error::Input(format!("unknown exponent bound '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    Csv,
    Json,
}

impl FromStr for Emit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Emit::Csv),
            "json" => Ok(Emit::Json),
            other => Err(Error::Input(format!("unknown output format '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSource {
    Catalog(String),
    File(PathBuf),
}

/// Finite-index subgroup `Γ = α⁻¹(ker(F → Z/m))` of the input group, the
/// character on the free quotient `F` given by one residue per generator.
/// Written `m:r1,r2,…`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub modulus: u64,
    pub residues: Vec<i64>,
}

impl FromStr for Cover {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("cover '{s}' is not of the form m:r1,r2,..."));
        let (m, rs) = s.split_once(':').ok_or_else(bad)?;
        let modulus: u64 = m.trim().parse().map_err(|_| bad())?;
        let residues = rs
            .split(',')
            .map(|r| r.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if modulus < 1 {
            return Err(bad());
        }
        Ok(Cover { modulus, residues })
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub source: GroupSource,
    pub construction: Construction,
    pub terms: usize,
    pub target: Option<GrowthFunction>,
    /// Prime of the derived series.
    pub prime: u64,
    /// Primes for `b_1` with `F_p` coefficients.
    pub primes: Vec<u64>,
    pub emit: Emit,
    pub caps: Caps,
    pub probes: Vec<String>,
    pub base: BaseKind,
    pub sanov_modulus: u64,
    pub cover: Option<Cover>,
    pub bound: ExponentBound,
    /// Keep coset tables of the terms in the report.
    pub dump: bool,
}

impl RunConfig {
    pub fn new(source: GroupSource, construction: Construction) -> Self {
        RunConfig {
            source,
            construction,
            terms: 2,
            target: None,
            prime: 2,
            primes: vec![2, 3],
            emit: Emit::Csv,
            caps: Caps::default(),
            probes: Vec::new(),
            base: BaseKind::DerivedP,
            sanov_modulus: 3,
            cover: None,
            bound: ExponentBound::Betti,
            dump: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        use Construction::*;
        if self.terms == 0 {
            return Err(Error::Input("terms must be positive".into()));
        }
        if self.caps.max_index == 0 || self.caps.max_image == 0 {
            return Err(Error::Input("caps must be positive".into()));
        }
        if !is_prime(self.prime) {
            return Err(Error::Input(format!("p = {} is not prime", self.prime)));
        }
        if let Some(q) = self.primes.iter().find(|&&q| !is_prime(q)) {
            return Err(Error::Input(format!("{q} in the prime list is not prime")));
        }
        if self.sanov_modulus < 2 {
            return Err(Error::Input("the Sanov modulus must be at least 2".into()));
        }
        match self.construction {
            FastBetti | SlowRank | Normalized if self.target.is_none() => {
                return Err(Error::Input(format!("{} needs a target function", self.construction)))
            }
            Exponent if self.target.is_some() => {
                return Err(Error::Input("exponent fixes its own target; drop the target option".into()))
            }
            _ => {}
        }
        if self.cover.is_some() && !matches!(self.construction, Normalized | Exponent) {
            return Err(Error::Input("a cover only applies to normalized and exponent".into()));
        }
        if self.construction == Exponent && self.bound == ExponentBound::Rank && self.cover.is_some() {
            return Err(Error::Unsupported(
                "the rank bound needs the fibered group itself; covers are not supported".into(),
            ));
        }
        if self.construction == SlowRank && self.base == BaseKind::Sanov {
            return Err(Error::Input("slow_rank needs a characteristic base; use derived_p".into()));
        }
        Ok(())
    }
}

/// Reads a presentation in the `gens:`/`rel:` text format.
pub fn parse_presentation_file(path: &Path) -> Result<FinitePresentation> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_presentation(&text)
}

struct Group {
    name: String,
    presentation: Arc<FinitePresentation>,
    free_quotient: Option<FreeQuotient>,
    fibering: Option<(FinitePresentation, GroupAutomorphism)>,
}

fn load_group(source: &GroupSource) -> Result<Group> {
    match source {
        GroupSource::Catalog(name) => {
            let e = catalog_entry(name)?;
            Ok(Group {
                name: e.name,
                presentation: Arc::new(e.presentation),
                free_quotient: e.free_quotient,
                fibering: e.fibering.map(|f| (f.fiber, f.monodromy)),
            })
        }
        GroupSource::File(path) => {
            let p = parse_presentation_file(path)?;
            Ok(Group {
                name: path.display().to_string(),
                free_quotient: p.is_free().then(|| FreeQuotient::identity(p.num_generators())),
                presentation: Arc::new(p),
                fibering: None,
            })
        }
    }
}

/// Fiber and monodromy: the catalog witness, or `Z × G` for a surface
/// presentation.
fn fibering(group: &Group) -> Result<(Arc<FinitePresentation>, GroupAutomorphism)> {
    if let Some((fiber, phi)) = &group.fibering {
        return Ok((Arc::new(fiber.clone()), phi.clone()));
    }
    if group.presentation.is_surface_presentation() {
        let n = group.presentation.num_generators();
        return Ok((group.presentation.clone(), GroupAutomorphism::identity(n)));
    }
    Err(Error::Input(format!("{} has no fibering witness and is not a surface group", group.name)))
}

fn free_quotient(group: &Group) -> Result<&FreeQuotient> {
    group
        .free_quotient
        .as_ref()
        .ok_or_else(|| Error::Input(format!("{} has no free quotient witness", group.name)))
}

fn base_filtration(
    cfg: &RunConfig,
    kind: BaseKind,
    p: &Arc<FinitePresentation>,
    alpha: Option<&FreeQuotient>,
) -> Result<Filtration> {
    match kind {
        BaseKind::DerivedP => derived_p_filtration(p, cfg.prime, cfg.terms, &cfg.caps),
        BaseKind::Sanov => {
            let identity;
            let alpha = match alpha {
                _ if p.is_free() => {
                    identity = FreeQuotient::identity(p.num_generators());
                    &identity
                }
                Some(a) => a,
                None => return Err(Error::Input("the Sanov base needs a free quotient witness".into())),
            };
            let on_free = sanov_congruence_filtration(alpha.rank(), cfg.sanov_modulus, cfg.terms, &cfg.caps)?;
            let mut out = Filtration {
                terms: Vec::new(),
                truncation: on_free.truncation.clone(),
            };
            for t in &on_free.terms {
                let table = t.table().expect("congruence terms are tables");
                out.terms.push(FiltrationTerm::from_table(t.i, table.pullback(p.clone(), alpha.images())?));
            }
            Ok(out)
        }
    }
}

/// `Γ ≤ π` of index `k` together with `α_Γ: Γ → ker(F → Z/m)`.
struct GammaCover {
    table: CosetTable,
    presentation: Arc<FinitePresentation>,
    alpha: FreeQuotient,
}

fn build_cover(pi: &Arc<FinitePresentation>, alpha: &FreeQuotient, cover: &Cover, cap: usize) -> Result<GammaCover> {
    if cover.residues.len() != alpha.rank() {
        return Err(Error::Input(format!(
            "cover has {} residues for a free quotient of rank {}",
            cover.residues.len(),
            alpha.rank()
        )));
    }
    let free = Arc::new(mk_free_group(alpha.rank())?);
    let k_table = subgroup_from_abelian_quotient(&free, &AbelianTargetMap::cyclic(cover.modulus, cover.residues.clone())?, cap)?;
    let table = k_table.pullback(pi.clone(), alpha.images())?;
    if table.degree() != k_table.degree() {
        return Err(Error::Internal("pulled-back cover changed its index".into()));
    }
    let rw = Rewriting::new(&table);
    let rw_free = Rewriting::new(&k_table);
    let images = (0..rw.num_subgroup_generators())
        .map(|j| rw_free.rewrite_word(&alpha.apply(&rw.schreier_generator(j))))
        .collect::<Result<Vec<_>>>()?;
    let alpha_gamma = FreeQuotient::new(rw.presentation(), rw_free.num_subgroup_generators(), images)?;
    Ok(GammaCover {
        presentation: rw.presentation().clone(),
        table,
        alpha: alpha_gamma,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub i: usize,
    pub d_i: String,
    pub n_i: String,
    pub index: String,
    pub b1: usize,
    pub b1_mod: BTreeMap<u64, usize>,
    pub torsion: String,
    pub rank_lo: usize,
    pub rank_hi: usize,
    /// Target value at the checked argument, six decimals; empty when the
    /// construction checks nothing.
    pub target: String,
    pub verdict: String,
    /// `b_1 / index`, informational.
    pub ratio: String,
}

impl Row {
    fn new(t: &FiltrationTerm, record: Option<&CertificateRecord>) -> Result<Self> {
        let m = t
            .measures
            .as_ref()
            .ok_or_else(|| Error::Internal(format!("term {} was not measured", t.i)))?;
        let b1 = m.homology.b1;
        let ratio = b1 as f64 / t.total_index.to_f64().unwrap_or(f64::INFINITY);
        Ok(Row {
            i: t.i,
            d_i: t.d_i.to_string(),
            n_i: t.n_i.to_string(),
            index: t.total_index.to_string(),
            b1,
            b1_mod: m.homology.b1_mod.clone(),
            torsion: m.homology.torsion_order.to_string(),
            rank_lo: m.rank_lo,
            rank_hi: m.rank_hi,
            target: record.map(|r| format!("{:.6}", r.check.target_f64())).unwrap_or_default(),
            verdict: record.map_or("unchecked", |r| r.verdict().as_str()).to_string(),
            ratio: format!("{ratio:.6e}"),
        })
    }

    fn b1_mod_field(&self) -> String {
        self.b1_mod.iter().map(|(p, v)| format!("{p}:{v}")).collect::<Vec<_>>().join(";")
    }

    fn csv_fields(&self) -> [String; 12] {
        [
            self.i.to_string(),
            self.d_i.clone(),
            self.n_i.clone(),
            self.index.clone(),
            self.b1.to_string(),
            self.b1_mod_field(),
            self.torsion.clone(),
            self.rank_lo.to_string(),
            self.rank_hi.to_string(),
            self.target.clone(),
            self.verdict.clone(),
            self.ratio.clone(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Probe {
    pub word: String,
    pub excluded_at: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TermDump {
    pub i: usize,
    /// Present for symbolic terms, whose table is the fiber subgroup's.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
    pub table: TableDump,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub group: String,
    pub construction: Construction,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    pub rows: Vec<Row>,
    pub truncation: Option<Truncation>,
    pub probes: Vec<Probe>,
    #[serde(skip)]
    pub tables: Vec<TermDump>,
}

impl Report {
    /// 1 if any verdict fails, else 2 if the run stopped at a cap, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.rows.iter().any(|r| r.verdict == Verdict::Fails.as_str()) {
            exit::VERDICT_FAILED
        } else if self.truncation.is_some() {
            exit::TRUNCATED
        } else {
            exit::OK
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Internal(format!("csv: {e}"));
        w.write_record(CSV_HEADER).map_err(io)?;
        for r in &self.rows {
            w.write_record(r.csv_fields()).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Internal(format!("json: {e}")))
    }

    pub fn render(&self, emit: Emit) -> Result<String> {
        match emit {
            Emit::Csv => self.to_csv(),
            Emit::Json => self.to_json().map(|s| s + "\n"),
        }
    }

    pub fn tables_json(&self) -> Result<String> {
        serde_json::to_string(&self.tables).map_err(|e| Error::Internal(format!("json: {e}")))
    }
}

fn records(cert: Option<&GrowthCertificate>, terms: &[FiltrationTerm]) -> Result<Vec<Row>> {
    terms.iter().map(|t| Row::new(t, cert.and_then(|c| c.record(t.i)))).collect()
}

fn probes(cfg: &RunConfig, p: &FinitePresentation, terms: &[FiltrationTerm]) -> Result<Vec<Probe>> {
    cfg.probes
        .iter()
        .map(|s| {
            let w = p
                .parse_word(s)
                .map_err(|e| Error::Input(format!("probe '{s}': {e}")))?;
            if w.is_empty() {
                return Err(Error::Input(format!("probe '{s}' is the identity")));
            }
            Ok(Probe {
                word: s.clone(),
                excluded_at: excludes_word(terms, &w),
            })
        })
        .collect()
}

fn dumps(cfg: &RunConfig, terms: &[FiltrationTerm]) -> Vec<TermDump> {
    if !cfg.dump {
        return Vec::new();
    }
    terms
        .iter()
        .map(|t| match &t.subgroup {
            TermSubgroup::Table(h) => TermDump {
                i: t.i,
                modulus: None,
                table: h.dump(),
            },
            TermSubgroup::Symbolic(s) => TermDump {
                i: t.i,
                modulus: Some(s.modulus().to_string()),
                table: s.fiber().dump(),
            },
        })
        .collect()
}

/// Γ-level data for the normalized constructions: the subgroup, its
/// presentation and free quotient, and its index `k`.
fn gamma_level(group: &Group, cfg: &RunConfig) -> Result<(Option<GammaCover>, Arc<FinitePresentation>, FreeQuotient, u64)> {
    let alpha = free_quotient(group)?;
    match &cfg.cover {
        None => Ok((None, group.presentation.clone(), alpha.clone(), 1)),
        Some(c) => {
            let cover = build_cover(&group.presentation, alpha, c, cfg.caps.max_index)?;
            let (p, a, k) = (cover.presentation.clone(), cover.alpha.clone(), cover.table.degree() as u64);
            Ok((Some(cover), p, a, k))
        }
    }
}

/// Normal cores in `π` of the Γ-level terms; the identity when `Γ = π`.
fn normalize_terms(cover: &Option<GammaCover>, gamma_terms: &Filtration, cfg: &RunConfig) -> Result<Filtration> {
    match cover {
        None => Ok(gamma_terms.clone()),
        Some(c) => Ok(normalize_schedule(&c.table, gamma_terms, &cfg.primes, &cfg.caps)?.0),
    }
}

fn b1_of(t: &FiltrationTerm) -> Option<usize> {
    t.measures.as_ref().map(|m| m.homology.b1)
}

/// Runs one configuration and collects its report.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let group = load_group(&cfg.source)?;
    let mut report = Report {
        group: group.name.clone(),
        construction: cfg.construction,
        target: cfg.target.as_ref().map(|t| t.to_string()),
        epsilon: None,
        rows: Vec::new(),
        truncation: None,
        probes: Vec::new(),
        tables: Vec::new(),
    };
    let (terms, cert, probe_group) = match cfg.construction {
        Construction::DerivedP | Construction::Sanov => {
            let kind = if cfg.construction == Construction::Sanov { BaseKind::Sanov } else { BaseKind::DerivedP };
            let mut f = base_filtration(cfg, kind, &group.presentation, group.free_quotient.as_ref())?;
            f.measure(&cfg.primes)?;
            f.check_chain()?;
            (f, None, group.presentation.clone())
        }
        Construction::FastBetti => {
            let alpha = free_quotient(&group)?;
            let base = base_filtration(cfg, cfg.base, &group.presentation, Some(alpha))?;
            let target = cfg.target.as_ref().expect("validated");
            let (f, cert) =
                fast_betti_schedule(&group.presentation, alpha, &base, target, cfg.terms, &cfg.primes, &cfg.caps)?;
            (f, Some(cert), group.presentation.clone())
        }
        Construction::SlowRank => {
            let (fiber, phi) = fibering(&group)?;
            let base = base_filtration(cfg, BaseKind::DerivedP, &fiber, None)?;
            let target = cfg.target.as_ref().expect("validated");
            let (f, cert) = slow_rank_schedule(&fiber, &phi, &base, target, cfg.terms, &cfg.primes)?;
            (f, Some(cert), Arc::new(mk_semidirect_z(&fiber, &phi)?))
        }
        Construction::Normalized => {
            let (cover, p_gamma, alpha_gamma, k) = gamma_level(&group, cfg)?;
            let f = cfg.target.as_ref().expect("validated");
            let horizon = (cfg.caps.max_index as u64).saturating_mul(k);
            let g = rescaled(&ratio_decreasing_envelope(f, Some(horizon))?, k, false)?;
            let base = base_filtration(cfg, cfg.base, &p_gamma, Some(&alpha_gamma))?;
            let (gamma_terms, gamma_cert) =
                fast_betti_schedule(&p_gamma, &alpha_gamma, &base, &g, cfg.terms, &cfg.primes, &cfg.caps)?;
            let pi_terms = normalize_terms(&cover, &gamma_terms, cfg)?;
            // b1(π_i) ≥ b1(Γ_i) ≥ g([Γ:Γ_i]) ≥ f(k·[Γ:Γ_i])
            let mut cert = GrowthCertificate::new(Mode::LowerBound, None);
            for (pt, gt) in pi_terms.terms.iter().zip(&gamma_terms.terms) {
                let (pb, gb) = (b1_of(pt), b1_of(gt));
                if pb < gb {
                    return Err(Error::Internal(format!("b1 drops from Γ_{0} to π_{0}", pt.i)));
                }
                cert.records.push(CertificateRecord {
                    i: pt.i,
                    check: Check::new(
                        &gt.total_index * BigUint::from(k),
                        pb.unwrap_or(0).into(),
                        f.clone(),
                        Mode::LowerBound,
                    ),
                    precondition: gamma_cert.record(gt.i).map(|r| r.check.clone()),
                });
            }
            (pi_terms, Some(cert), group.presentation.clone())
        }
        Construction::Exponent => match cfg.bound {
            ExponentBound::Betti => {
                let (cover, p_gamma, alpha_gamma, k) = gamma_level(&group, cfg)?;
                let coeff_exp = Ratio::new(1, 2 * i64::try_from(k).map_err(|_| Error::Input("index too large".into()))?);
                let g = GrowthFunction::power_with_coeff(Ratio::new(1, 2), BigRational::from_integer(k.into()), coeff_exp)?;
                let base = base_filtration(cfg, cfg.base, &p_gamma, Some(&alpha_gamma))?;
                let (gamma_terms, _) =
                    fast_betti_schedule(&p_gamma, &alpha_gamma, &base, &g, cfg.terms, &cfg.primes, &cfg.caps)?;
                let pi_terms = normalize_terms(&cover, &gamma_terms, cfg)?;
                let inputs: Vec<_> = pi_terms
                    .terms
                    .iter()
                    .zip(&gamma_terms.terms)
                    .map(|(pt, gt)| ExponentInput {
                        i: pt.i,
                        gamma_index: gt.total_index.clone(),
                        pi_index: pt.total_index.clone(),
                        gamma_b1: b1_of(gt),
                        pi_b1: b1_of(pt),
                        gamma_rank_upper: gt.measures.as_ref().map(|m| m.rank_hi),
                    })
                    .collect();
                report.target = Some(g.to_string());
                (pi_terms, Some(exponent_certificate(&inputs, k, ExponentBound::Betti)?), group.presentation.clone())
            }
            ExponentBound::Rank => {
                let (fiber, phi) = fibering(&group)?;
                let base = base_filtration(cfg, BaseKind::DerivedP, &fiber, None)?;
                let f = GrowthFunction::power(Ratio::new(1, 2))?;
                let (terms, _) = slow_rank_schedule(&fiber, &phi, &base, &f, cfg.terms, &cfg.primes)?;
                let inputs: Vec<_> = terms
                    .terms
                    .iter()
                    .map(|t| ExponentInput {
                        i: t.i,
                        gamma_index: t.total_index.clone(),
                        pi_index: t.total_index.clone(),
                        gamma_b1: b1_of(t),
                        pi_b1: b1_of(t),
                        gamma_rank_upper: t.measures.as_ref().map(|m| m.rank_hi),
                    })
                    .collect();
                report.target = Some(f.to_string());
                (terms, Some(exponent_certificate(&inputs, 1, ExponentBound::Rank)?), Arc::new(mk_semidirect_z(&fiber, &phi)?))
            }
        },
    };
    if let Some(c) = &cert {
        if !c.recheck() {
            return Err(Error::Internal("stored verdicts disagree with their numbers".into()));
        }
        report.epsilon = c.epsilon.map(|e| e.to_string());
    }
    report.rows = records(cert.as_ref(), &terms.terms)?;
    report.truncation = terms.truncation.clone();
    report.probes = probes(cfg, &probe_group, &terms.terms)?;
    report.tables = dumps(cfg, &terms.terms);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog(name: &str, c: Construction) -> RunConfig {
        RunConfig::new(GroupSource::Catalog(name.into()), c)
    }

    #[test]
    fn cover_syntax() {
        assert_eq!(
            "2:1,0".parse::<Cover>().unwrap(),
            Cover {
                modulus: 2,
                residues: vec![1, 0]
            }
        );
        assert!("2".parse::<Cover>().is_err());
        assert!("x:1".parse::<Cover>().is_err());
    }

    #[test]
    fn validation() {
        let mut cfg = catalog("free2", Construction::FastBetti);
        assert!(cfg.validate().is_err());
        cfg.target = Some("power:1/2".parse().unwrap());
        cfg.validate().unwrap();
        cfg.prime = 4;
        assert!(cfg.validate().is_err());
        let mut cfg = catalog("free2", Construction::Exponent);
        cfg.target = Some("log:2".parse().unwrap());
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn fast_betti_run() {
        let mut cfg = catalog("free2", Construction::FastBetti);
        cfg.target = Some("power:1/2".parse().unwrap());
        let r = run(&cfg).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert!(r.rows.iter().all(|row| row.verdict == "holds"));
        assert_eq!(r.rows[0].n_i, "5");
        assert_eq!(r.exit_code(), exit::OK);
        let csv = r.to_csv().unwrap();
        assert_eq!(csv.lines().next().unwrap(), CSV_HEADER.join(","));
    }

    #[test]
    fn slow_rank_run() {
        let mut cfg = catalog("surface_g2", Construction::SlowRank);
        cfg.target = Some("log:2".parse().unwrap());
        cfg.terms = 1;
        let r = run(&cfg).unwrap();
        assert_eq!(r.rows[0].n_i, (BigUint::from(1u32) << 61u32).to_string());
        assert_eq!(r.rows[0].rank_hi, 35);
        assert_eq!(r.rows[0].verdict, "holds");
        assert_eq!(r.rows[0].target, "65.000000");
    }

    #[test]
    fn stable_letter_probe() {
        let mut cfg = catalog("fig8", Construction::DerivedP);
        cfg.terms = 1;
        cfg.probes = vec!["t".into()];
        let r = run(&cfg).unwrap();
        assert_eq!(r.probes[0].excluded_at, Some(1));
        assert_eq!(r.rows[0].verdict, "unchecked");
        cfg.probes = vec!["tT".into()];
        assert!(run(&cfg).is_err());
    }

    #[test]
    fn error_codes() {
        let cfg = catalog("klein", Construction::DerivedP);
        assert_eq!(error_exit_code(&run(&cfg).unwrap_err()), exit::UNKNOWN_CATALOG);
        assert_eq!(
            error_exit_code(&Error::UnknownLetter { line: 2, letter: 'c' }),
            exit::MALFORMED_FILE
        );
    }

    #[test]
    fn truncation_is_reported() {
        let mut cfg = catalog("surface_g2", Construction::DerivedP);
        cfg.terms = 2;
        let r = run(&cfg).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.exit_code(), exit::TRUNCATED);
    }

    #[test]
    fn normalized_with_cover() {
        let mut cfg = catalog("free2", Construction::Normalized);
        cfg.target = Some("power:1/2".parse().unwrap());
        cfg.cover = Some("2:1,0".parse().unwrap());
        cfg.terms = 1;
        cfg.probes = vec!["a".into()];
        let r = run(&cfg).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].verdict, "holds");
        assert_eq!(r.probes[0].excluded_at, Some(1));
    }

    #[test]
    fn exponent_bounds() {
        let mut cfg = catalog("free2", Construction::Exponent);
        cfg.cover = Some("2:1,0".parse().unwrap());
        cfg.terms = 1;
        let r = run(&cfg).unwrap();
        assert_eq!(r.epsilon.as_deref(), Some("1/4"));
        assert!(r.rows.iter().all(|row| row.verdict != "fails"));

        let mut cfg = catalog("surface_g2_twist", Construction::Exponent);
        cfg.bound = ExponentBound::Rank;
        cfg.terms = 1;
        let r = run(&cfg).unwrap();
        assert_eq!(r.epsilon.as_deref(), Some("1/2"));
        assert_eq!(r.rows[0].verdict, "holds");
    }

    #[test]
    fn failing_verdict_outranks_truncation() {
        let mut cfg = catalog("free2", Construction::FastBetti);
        cfg.target = Some("power:1/2".parse().unwrap());
        let mut r = run(&cfg).unwrap();
        r.truncation = Some(Truncation {
            at_term: 3,
            reason: "cap".into(),
        });
        assert_eq!(r.exit_code(), exit::TRUNCATED);
        r.rows[1].verdict = Verdict::Fails.as_str().into();
        assert_eq!(r.exit_code(), exit::VERDICT_FAILED);
    }
}
