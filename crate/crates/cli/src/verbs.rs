//! The verbs. Each returns its data lines and whether the result was
//! negative (a collision, a failed identity, an unrepresentable input).

use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use zeckgen::collections::{enumerate_desc, AscendingIter};
use zeckgen::integer::{decode_int, encode_int, enumerate_subset, shift_psi, NumerationError};
use zeckgen::padic::{
    check_unique_padic, decode_padic, eval_padic, max_member_digit, valuations_agree, weak_converse_probe, PadicApprox,
    PadicError, PadicUniqueOutcome, ProbeOutcome,
};
use zeckgen::real::{
    dominance_criterion, eval_expansion, expand_real, positive_root, verify_maximal_identity, Dominance,
    IdentityStatus, PolyCoeffs, Real, StopReason, StopRule, TailModel,
};
use zeckgen::recurrences::{verify_recurrence, RecurrenceVerdict};
use zeckgen::unique::{test_unique, OrderBound, UniqueOutcome};
use zeckgen::CoeffFn;

use crate::config::{parse_real, Affine, ConfigError, ModeKind, SystemConfig, DEFAULT_PRECISION};

#[derive(Debug, thiserror::Error)]
pub enum VerbError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl VerbError {
    pub fn exit_code(&self) -> i32 {
        match self {
            VerbError::Config(_) | VerbError::Usage(_) => 2,
            VerbError::Failed(_) => 1,
        }
    }
}

fn failed(e: impl ToString) -> VerbError {
    VerbError::Failed(e.to_string())
}

#[derive(Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    /// Set when some record is a negative result.
    pub negative: bool,
}

impl Report {
    fn push(&mut self, fields: &[&dyn std::fmt::Display]) {
        let parts: Vec<String> = fields.iter().map(|f| f.to_string()).collect();
        self.lines.push(parts.join("\t"));
    }
}

fn parse_uint(s: &str) -> Result<BigUint, VerbError> {
    s.trim().parse().map_err(|_| VerbError::Usage(format!("not a nonnegative integer: {s:?}")))
}

/// Sparse `i:d,…` or term form `10,5,3`.
fn parse_coeff(s: &str) -> Result<CoeffFn, VerbError> {
    let r = if s.contains(':') { CoeffFn::from_str(s) } else { CoeffFn::parse_terms(s) };
    r.map_err(|e| VerbError::Usage(e.to_string()))
}

pub fn encode(cfg: &SystemConfig, args: &[String]) -> Result<Report, VerbError> {
    let fam = cfg.ascending_family()?;
    let q = cfg.integer_sequence(&fam)?;
    let mut out = Report::default();
    for a in args {
        let x = parse_uint(a)?;
        match encode_int(&x, &q, &fam) {
            Ok(mu) => out.push(&[&mu.to_term_string()]),
            Err(NumerationError::NotRepresentable(x)) => {
                out.push(&[&"NOT-REPRESENTABLE", &x]);
                out.negative = true;
            }
            Err(e) => return Err(failed(e)),
        }
    }
    Ok(out)
}

pub fn decode(cfg: &SystemConfig, args: &[String]) -> Result<Report, VerbError> {
    let fam = cfg.ascending_family()?;
    let q = cfg.integer_sequence(&fam)?;
    let mut out = Report::default();
    for a in args {
        let mu = parse_coeff(a)?;
        out.push(&[&decode_int(&mu, &q).map_err(failed)?]);
    }
    Ok(out)
}

pub fn shift(cfg: &SystemConfig, args: &[String]) -> Result<Report, VerbError> {
    let fam = cfg.ascending_family()?;
    let q = cfg.integer_sequence(&fam)?;
    let mut out = Report::default();
    for a in args {
        let x = parse_uint(a)?;
        match shift_psi(&x, &q, &fam) {
            Ok(y) => out.push(&[&y]),
            Err(NumerationError::NotRepresentable(x)) => {
                out.push(&[&"NOT-REPRESENTABLE", &x]);
                out.negative = true;
            }
            Err(e) => return Err(failed(e)),
        }
    }
    Ok(out)
}

pub fn enumerate(cfg: &SystemConfig, args: &[String]) -> Result<Report, VerbError> {
    let count: usize = match args.first() {
        Some(a) => a.parse().map_err(|_| VerbError::Usage(format!("not a count: {a:?}")))?,
        None => cfg.n_max(20)? as usize,
    };
    let mut out = Report::default();
    match cfg.mode()?.kind {
        ModeKind::Integer => {
            let fam = cfg.ascending_family()?;
            let q = cfg.integer_sequence(&fam)?;
            for (rank, mu) in AscendingIter::new(&fam).take(count).enumerate() {
                let mu = mu.map_err(failed)?;
                out.push(&[&(rank + 1), &decode_int(&mu, &q).map_err(failed)?, &mu]);
            }
        }
        ModeKind::Rational | ModeKind::Decimal => {
            let fam = cfg.maximal_family()?;
            let q = cfg.real_sequence()?;
            let horizon = cfg.horizon(6)?;
            for (rank, eps) in enumerate_desc(&fam, horizon, count).map_err(failed)?.iter().enumerate() {
                out.push(&[&rank, &eval_expansion(eps, &q), eps]);
            }
        }
        ModeKind::Padic => return Err(ConfigError::Incompatible("enumerate has no p-adic form".into()).into()),
    }
    Ok(out)
}

pub fn verify_unique(cfg: &SystemConfig) -> Result<Report, VerbError> {
    match cfg.mode()?.kind {
        ModeKind::Integer => verify_unique_integer(cfg),
        ModeKind::Padic => verify_unique_padic(cfg),
        _ => Err(ConfigError::Incompatible("verify-unique needs integer or padic mode".into()).into()),
    }
}

fn collision_line(out: &mut Report, value: &dyn std::fmt::Display, first: &CoeffFn, second: &CoeffFn) {
    out.push(&[&"COLLISION", &format!("value={value}"), first, second]);
    out.negative = true;
}

fn verify_unique_integer(cfg: &SystemConfig) -> Result<Report, VerbError> {
    let mut out = Report::default();
    if let Some(l) = cfg.multiplicity_list()? {
        let seeds = cfg.seeds()?;
        match test_unique(&l, &seeds, cfg.order_bound()?).map_err(failed)? {
            UniqueOutcome::Pass { count } => out.push(&[&format!("PASS count={count}")]),
            UniqueOutcome::Collision(c) => collision_line(&mut out, &c.value, &c.first, &c.second),
        }
        return Ok(out);
    }
    let OrderBound::Exact(bound) = cfg.order_bound()? else {
        return Err(VerbError::Usage("families other than l-list need an explicit order_bound".into()));
    };
    let fam = cfg.ascending_family()?;
    let q = cfg.integer_sequence(&fam)?;
    let mut seen: HashMap<BigUint, CoeffFn> = HashMap::new();
    for mu in AscendingIter::new(&fam) {
        let mu = mu.map_err(failed)?;
        if mu.order_asc() > bound {
            break;
        }
        let v = decode_int(&mu, &q).map_err(failed)?;
        if let Some(prev) = seen.get(&v) {
            collision_line(&mut out, &v, prev, &mu);
            return Ok(out);
        }
        seen.insert(v, mu);
    }
    out.push(&[&format!("PASS count={}", seen.len())]);
    Ok(out)
}

fn padic_order(cfg: &SystemConfig) -> Result<u64, VerbError> {
    let n = cfg.multiplicity_list()?.map(|l| l.len());
    match (cfg.order_bound()?, n) {
        (OrderBound::Exact(k), _) => Ok(k),
        (b, Some(n)) => Ok(b.resolve(n)),
        _ => Err(VerbError::Usage("families other than l-list need an explicit order_bound".into())),
    }
}

fn verify_unique_padic(cfg: &SystemConfig) -> Result<Report, VerbError> {
    let fam = cfg.ascending_family()?;
    let q = cfg.padic_sequence()?;
    let order = padic_order(cfg)?;
    let mut out = Report::default();
    let top = max_member_digit(&fam, order).map_err(failed)?;
    if top >= q.prime() {
        return Err(failed(PadicError::DigitTooLarge { index: 0, digit: top, p: q.prime() }));
    }
    match check_unique_padic(&q, &fam, order).map_err(failed)? {
        PadicUniqueOutcome::Pass { members, residues } => {
            out.push(&[&format!("PASS members={members} residues={residues}")])
        }
        PadicUniqueOutcome::Collision(c) => collision_line(&mut out, &c.value, &c.first, &c.second),
    }
    if let Some(z) = cfg.compare_padic_sequence()? {
        let probe = match weak_converse_probe(&q, &z, &fam, order).map_err(failed)? {
            ProbeOutcome::Agree => "agree".to_string(),
            ProbeOutcome::FirstDifference(k) => format!("first-difference={k}"),
            ProbeOutcome::ValueSetsDiffer => "value-sets-differ".to_string(),
        };
        out.push(&[&"PROBE", &probe]);
        let v = if valuations_agree(&q, &z) { "agree" } else { "differ" };
        out.push(&[&"VALUATIONS", &v]);
    }
    Ok(out)
}

pub fn real_expand(cfg: &SystemConfig, args: &[String]) -> Result<Report, VerbError> {
    let mode = cfg.require_mode(&[ModeKind::Rational, ModeKind::Decimal])?;
    let fam = cfg.maximal_family()?;
    let q = cfg.real_sequence()?;
    let mut stop = StopRule { max_blocks: cfg.max_blocks(8)?, ..StopRule::default() };
    if let Some(t) = cfg.residual_tol()? {
        stop.residual_tol = t.value().clone();
    }
    let digits = mode.precision.unwrap_or(DEFAULT_PRECISION);
    let mut out = Report::default();
    for a in args {
        let x = parse_real(a).map_err(VerbError::Usage)?;
        let exp = expand_real(&x, &q, &fam, &stop).map_err(|e| match e {
            zeckgen::real::RealError::Domain(_) => VerbError::Usage(e.to_string()),
            e => failed(e),
        })?;
        for b in &exp.blocks {
            out.push(&[&"block", &b.start, &b.end, &b.digits]);
        }
        let residual = match mode.kind {
            ModeKind::Decimal => exp.residual.to_decimal_string(digits),
            _ => exp.residual.to_string(),
        };
        out.push(&[&"residual", &residual]);
        let stop = match exp.stop {
            StopReason::ExactZero => "exact-zero",
            StopReason::ResidualTolerance => "residual-tolerance",
            StopReason::MaxBlocks => "max-blocks",
        };
        out.push(&[&"stop", &stop]);
    }
    Ok(out)
}

pub fn padic_expand(cfg: &SystemConfig, args: &[String], eval: bool) -> Result<Report, VerbError> {
    let mode = cfg.require_mode(&[ModeKind::Padic])?;
    let (p, k) = mode.padic.expect("padic mode");
    let q = cfg.padic_sequence()?;
    let fam = cfg.ascending_family().ok();
    let mut out = Report::default();
    for a in args {
        if eval {
            let v = eval_padic(&parse_coeff(a)?, &q).map_err(failed)?;
            out.push(&[&"value", v.residue(), &format!("valuation={}", v.valuation())]);
            continue;
        }
        let x: BigInt = a.trim().parse().map_err(|_| VerbError::Usage(format!("not an integer: {a:?}")))?;
        match decode_padic(&PadicApprox::new(p, k, &x), &q, fam.as_ref()) {
            Ok(eps) => out.push(&[&"digits", &eps]),
            Err(PadicError::NotInCollection { witness, digits }) => {
                out.push(&[&"NOT-IN-COLLECTION", &format!("witness={witness}"), &digits]);
                out.negative = true;
            }
            Err(PadicError::NotRepresentable(why)) => {
                out.push(&[&"NOT-REPRESENTABLE", &why]);
                out.negative = true;
            }
            Err(e) => return Err(failed(e)),
        }
    }
    Ok(out)
}

pub fn verify_recurrence_verb(cfg: &SystemConfig) -> Result<Report, VerbError> {
    let spec = cfg
        .recurrence
        .as_ref()
        .ok_or_else(|| ConfigError::Incompatible("verify-recurrence needs a [recurrence] table".into()))?;
    let coeffs: Vec<Affine> =
        spec.coeffs.iter().map(|c| Affine::parse(c).map_err(VerbError::Usage)).collect::<Result<_, _>>()?;
    let from: u64 = spec.from.trim().parse().map_err(|_| VerbError::Usage("recurrence.from".into()))?;
    let to: u64 = spec.to.trim().parse().map_err(|_| VerbError::Usage("recurrence.to".into()))?;
    let fam = cfg.ascending_family()?;
    let q = cfg.integer_sequence(&fam)?;
    let rule = move |n: u64| coeffs.iter().map(|a| BigInt::from(a.eval(n))).collect();
    let mut out = Report::default();
    match verify_recurrence(&q, rule, from..=to).map_err(failed)? {
        RecurrenceVerdict::Holds => out.push(&[&"HOLDS", &format!("n={from}..{to}")]),
        RecurrenceVerdict::FailsAt { n, term, combination } => {
            out.push(&[&"FAILS", &format!("n={n}"), &format!("term={term}"), &format!("combination={combination}")]);
            out.negative = true;
        }
    }
    Ok(out)
}

pub fn verify_maximal(cfg: &SystemConfig, args: &[String]) -> Result<Report, VerbError> {
    let mode = cfg.require_mode(&[ModeKind::Rational, ModeKind::Decimal])?;
    let fam = cfg.maximal_family()?;
    let q = cfg.real_sequence()?;
    let horizon = cfg.horizon(400)?;
    let tol = cfg.tolerance(30)?;
    let model = match cfg.tail_model()? {
        Some(m) => m,
        None if fam.periodic_from(1).is_some() => TailModel::Periodic,
        None => TailModel::SelfSimilar,
    };
    let ns: Vec<u64> = if args.is_empty() {
        (1..=cfg.n_max(10)?).collect()
    } else {
        args.iter()
            .map(|a| a.parse().map_err(|_| VerbError::Usage(format!("not an index: {a:?}"))))
            .collect::<Result<_, _>>()?
    };
    let digits = mode.precision.unwrap_or(DEFAULT_PRECISION);
    let mut out = Report::default();
    for n in ns {
        if n == 0 {
            return Err(VerbError::Usage("indices start at 1".into()));
        }
        let r = verify_maximal_identity(&q, &fam, n, horizon, &tol, model).map_err(failed)?;
        let disc = format!("discrepancy={}", r.discrepancy.to_decimal_string(digits));
        match r.status {
            IdentityStatus::Holds => out.push(&[&n, &"HOLDS", &disc]),
            IdentityStatus::Fails => {
                out.push(&[&n, &"FAILS", &disc]);
                out.negative = true;
            }
            IdentityStatus::Inconclusive(why) => out.push(&[&n, &"INCONCLUSIVE", &why]),
        }
    }
    Ok(out)
}

pub fn dominant_check(cfg: &SystemConfig, args: &[String]) -> Result<Report, VerbError> {
    let mut out = Report::default();
    let poly = match args.first() {
        Some(a) => {
            let coeffs: Vec<BigRational> = a
                .split(',')
                .map(|c| parse_real(c).map(|r| r.value().clone()).map_err(VerbError::Usage))
                .collect::<Result<_, _>>()?;
            PolyCoeffs::new(coeffs).map_err(|e| VerbError::Usage(e.to_string()))?
        }
        None => {
            let l = cfg.multiplicity_list()?.ok_or_else(|| {
                ConfigError::Incompatible("dominant-check needs an l-list family or coefficients".into())
            })?;
            let digits = cfg.mode()?.precision.unwrap_or(DEFAULT_PRECISION);
            let tol = Real::ten_to_minus(digits + 10).value().clone();
            let root = positive_root(&l, &tol).map_err(failed)?;
            out.push(&[&"root", &root.to_real(digits).to_decimal_string(digits)]);
            PolyCoeffs::reciprocal_of(&l)
        }
    };
    match dominance_criterion(&poly) {
        Dominance::Dominant { m, l } => out.push(&[&"DOMINANT", &format!("m={m}"), &format!("l={l}")]),
        Dominance::Inconclusive => out.push(&[&"INCONCLUSIVE"]),
    }
    Ok(out)
}

pub fn subset(cfg: &SystemConfig, args: &[String]) -> Result<Report, VerbError> {
    let bound = match args.first() {
        Some(a) => parse_uint(a)?,
        None => return Err(VerbError::Usage("subset needs a bound".into())),
    };
    let fam = cfg.ascending_family()?;
    let q = cfg.integer_sequence(&fam)?;
    let report = enumerate_subset(&q, &fam, &bound).map_err(failed)?;
    let mut out = Report::default();
    out.push(&[&"count", &report.values.len()]);
    match &report.collision {
        Some(c) => collision_line(&mut out, &c.value, &c.first, &c.second),
        None => out.push(&[&"collision", &"none"]),
    }
    for v in &report.values {
        out.push(&[&"value", v]);
    }
    Ok(out)
}
