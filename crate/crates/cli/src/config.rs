//! System configuration files.
//!
//! Integers are written as decimal strings and fractions as `"p/q"` so that
//! large values survive the TOML layer untouched.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use zeckgen::collections::{MaximalFamily, PredecessorFamily};
use zeckgen::integer::{family_from_sequence, FundamentalSeq};
use zeckgen::padic::PadicSeq;
use zeckgen::real::{geometric_fundamental, lead_tail_polynomial, positive_root_poly, Real, RealSeq, TailModel};
use zeckgen::recurrences::{
    block_system_maximal, factorial_family, family_from_l, family_from_neg_recurrence, family_from_tail_rule,
    fixed_blocks_family, harmonic_maximal, j_plus_family, k_bounded_family, lead_tail_maximal, maximal_from_l,
    odd_index_maximal, sevenths_maximal, trivial_family, DigitFn, NegRecurrence,
};
use zeckgen::unique::OrderBound;
use zeckgen::{CoeffFn, MultiplicityList};

/// Default number of decimal places in decimal mode.
pub const DEFAULT_PRECISION: u32 = 60;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("cannot render config: {0}")]
    Render(#[from] toml::ser::Error),
    #[error("field {field}: {msg}")]
    Field { field: &'static str, msg: String },
    #[error("{0}")]
    Incompatible(String),
    #[error("{0}")]
    Build(String),
}

fn field_err(field: &'static str, msg: impl ToString) -> ConfigError {
    ConfigError::Field { field, msg: msg.to_string() }
}

fn build_err(e: impl ToString) -> ConfigError {
    ConfigError::Build(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    /// Fixture name, echoed in report headers.
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    /// Default verb arguments, used when none are given on the command line.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<String>,
    pub family: FamilySpec,
    #[serde(default)]
    pub sequence: SequenceSpec,
    /// A second sequence for comparisons (`verify-unique` in p-adic mode).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compare: Option<SequenceSpec>,
    #[serde(default)]
    pub mode: ModeSpec,
    #[serde(default)]
    pub bounds: Bounds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recurrence: Option<RecurrenceSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// Multiplicity list `(e_1, …, e_N)`; usable in both directions.
    LList {
        e: Vec<String>,
    },
    NegRecurrence {
        c: Vec<String>,
    },
    /// Head digits at the top indices as affine rules in `n`, and a tail
    /// digit rule in `k`.
    TailRule {
        head: Vec<String>,
        tail: String,
    },
    /// Blocks as digit lists, lowest index first.
    FixedBlocks {
        blocks: Vec<String>,
    },
    KBounded,
    Factorial,
    Trivial,
    JPlus {
        j: String,
    },
    /// Rows `δ^2, δ^3, …` in sparse form.
    Table {
        rows: Vec<String>,
    },
    /// The greedy family of the configured integer sequence.
    Greedy,
    Harmonic,
    /// `a` digits and the rows of `b`, each row a digit list.
    BlockSystem {
        a: Vec<String>,
        b: Vec<String>,
    },
    Sevenths,
    LeadTail {
        lead: String,
        tail: String,
    },
    OddIndex,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SequenceSpec {
    /// Determined by the family.
    #[default]
    Derived,
    /// Integers, or fractions in rational and decimal mode.
    Explicit {
        terms: Vec<String>,
    },
    /// `Q_n = Σ c_j Q_{n−j}` after the seeds.
    Linear {
        seeds: Vec<String>,
        coeffs: Vec<String>,
    },
    /// `Q_k = j + k` for `k ≤ j`, then `j(k − j)`.
    JPlus {
        j: String,
    },
    Geometric {
        ratio: String,
    },
    Harmonic,
    BlockGeometric {
        head: Vec<String>,
        ratio: String,
    },
    PowerBasis,
    ScaledPower {
        unit: String,
    },
    GoldenRatio,
    /// `valuation:unit` pairs.
    PadicTable {
        rows: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModeSpec {
    #[default]
    Integer,
    Rational,
    Decimal {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        precision: Option<String>,
    },
    Padic {
        p: String,
        k: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bounds {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<String>,
    /// `4N`, `2N` or an explicit order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_blocks: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_tol: Option<String>,
    /// `ratio-estimate`, `periodic` or `self-similar`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_model: Option<String>,
}

/// Coefficients as affine rules in `n` for `Q_n = Σ c_j(n) Q_{n−j}`,
/// checked for `from ≤ n ≤ to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecurrenceSpec {
    pub coeffs: Vec<String>,
    pub from: String,
    pub to: String,
}

impl SystemConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &str) -> Result<Self, ConfigError> {
        let text = if path == "-" {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                .map_err(|source| ConfigError::Io { path: path.into(), source })?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?
        };
        Self::from_toml(&text)
    }

    pub fn render(&self) -> Result<String, ConfigError> {
        Ok(toml::to_string(self)?)
    }

    /// The classical Fibonacci system, used when no config is given.
    pub fn fibonacci() -> Self {
        SystemConfig {
            name: "fib".into(),
            description: None,
            inputs: Vec::new(),
            family: FamilySpec::LList { e: vec!["1".into(), "1".into()] },
            sequence: SequenceSpec::Derived,
            compare: None,
            mode: ModeSpec::Integer,
            bounds: Bounds::default(),
            recurrence: None,
        }
    }

    pub fn multiplicity_list(&self) -> Result<Option<MultiplicityList>, ConfigError> {
        match &self.family {
            FamilySpec::LList { e } => {
                let e = parse_list::<u64>("family.e", e)?;
                Ok(Some(MultiplicityList::new(e).map_err(|m| field_err("family.e", m))?))
            }
            _ => Ok(None),
        }
    }

    /// The family in ascending form.
    pub fn ascending_family(&self) -> Result<PredecessorFamily, ConfigError> {
        let fam = match &self.family {
            FamilySpec::LList { .. } => family_from_l(&self.multiplicity_list()?.expect("l-list")),
            FamilySpec::NegRecurrence { c } => {
                let r = NegRecurrence::new(parse_list("family.c", c)?).map_err(|m| field_err("family.c", m))?;
                family_from_neg_recurrence(&r).map_err(build_err)?.family
            }
            FamilySpec::TailRule { head, tail } => {
                let head: Vec<DigitFn> = head
                    .iter()
                    .map(|h| Affine::parse(h).and_then(Affine::digit_fn).map_err(|m| field_err("family.head", m)))
                    .collect::<Result<_, _>>()?;
                let tail = Affine::parse(tail).and_then(Affine::digit_fn).map_err(|m| field_err("family.tail", m))?;
                family_from_tail_rule(self.name.clone(), head, tail)
            }
            FamilySpec::FixedBlocks { blocks } => {
                let blocks: Vec<Vec<u64>> =
                    blocks.iter().map(|b| parse_digits("family.blocks", b)).collect::<Result<_, _>>()?;
                let len = blocks.first().map_or(0, Vec::len);
                fixed_blocks_family(len, &blocks).map_err(build_err)?.family
            }
            FamilySpec::KBounded => k_bounded_family(),
            FamilySpec::Factorial => factorial_family(),
            FamilySpec::Trivial => trivial_family(),
            FamilySpec::JPlus { j } => j_plus_family(parse_one("family.j", j)?),
            FamilySpec::Table { rows } => {
                let rows: Vec<CoeffFn> = rows
                    .iter()
                    .map(|r| CoeffFn::from_str(r).map_err(|m| field_err("family.rows", m)))
                    .collect::<Result<_, _>>()?;
                PredecessorFamily::from_table(self.name.clone(), rows)
            }
            FamilySpec::Greedy => {
                let seq = self.user_integer_sequence()?.ok_or_else(|| {
                    ConfigError::Incompatible("the greedy family needs an explicit or linear sequence".into())
                })?;
                family_from_sequence(&seq, self.n_max(16)?).map_err(build_err)?
            }
            other => {
                return Err(ConfigError::Incompatible(format!(
                    "family kind {} has no ascending form",
                    kind_name(other)
                )))
            }
        };
        Ok(fam)
    }

    /// The family in descending form.
    pub fn maximal_family(&self) -> Result<MaximalFamily, ConfigError> {
        Ok(match &self.family {
            FamilySpec::LList { .. } => maximal_from_l(&self.multiplicity_list()?.expect("l-list")),
            FamilySpec::Harmonic => harmonic_maximal(),
            FamilySpec::BlockSystem { a, b } => {
                let a = parse_list("family.a", a)?;
                let b = b.iter().map(|r| parse_digits("family.b", r)).collect::<Result<_, _>>()?;
                block_system_maximal(a, b).map_err(build_err)?
            }
            FamilySpec::Sevenths => sevenths_maximal(),
            FamilySpec::LeadTail { lead, tail } => {
                lead_tail_maximal(parse_one("family.lead", lead)?, parse_one("family.tail", tail)?)
            }
            FamilySpec::OddIndex => odd_index_maximal(),
            other => {
                return Err(ConfigError::Incompatible(format!(
                    "family kind {} has no descending form",
                    kind_name(other)
                )))
            }
        })
    }

    /// A caller-supplied integer sequence, if the config has one.
    fn user_integer_sequence(&self) -> Result<Option<FundamentalSeq>, ConfigError> {
        integer_sequence_from(&self.name, &self.sequence)
    }

    /// The integer sequence for `fam`.
    pub fn integer_sequence(&self, fam: &PredecessorFamily) -> Result<FundamentalSeq, ConfigError> {
        self.require_mode(&[ModeKind::Integer])?;
        match self.user_integer_sequence()? {
            Some(seq) => Ok(seq),
            None => Ok(FundamentalSeq::from_family(fam)),
        }
    }

    /// Seeds for the uniqueness tester: explicit terms or linear seeds.
    pub fn seeds(&self) -> Result<Vec<BigUint>, ConfigError> {
        match &self.sequence {
            SequenceSpec::Explicit { terms } => parse_list("sequence.terms", terms),
            SequenceSpec::Linear { seeds, .. } => parse_list("sequence.seeds", seeds),
            SequenceSpec::Derived => {
                let fam = self.ascending_family()?;
                let n = self.multiplicity_list()?.map_or(1, |l| l.len() as u64);
                FundamentalSeq::from_family(&fam).terms_upto(n).map_err(build_err)
            }
            _ => Err(ConfigError::Incompatible("the uniqueness tester needs integer seeds".into())),
        }
    }

    pub fn real_sequence(&self) -> Result<RealSeq, ConfigError> {
        let precision = self.require_mode(&[ModeKind::Rational, ModeKind::Decimal])?.precision;
        self.real_sequence_from(&self.sequence, precision)
    }

    fn real_sequence_from(&self, spec: &SequenceSpec, precision: Option<u32>) -> Result<RealSeq, ConfigError> {
        let num = |field: &'static str, s: &str| -> Result<Real, ConfigError> {
            let r = parse_real(s).map_err(|m| field_err(field, m))?;
            Ok(match precision {
                Some(p) if !r.is_exact() || !is_terminating(r.value(), p) => Real::approx(r.value(), p),
                _ => r,
            })
        };
        let seq = match spec {
            SequenceSpec::Derived => match &self.family {
                FamilySpec::LList { .. } => {
                    let l = self.multiplicity_list()?.expect("l-list");
                    geometric_fundamental(&l, precision.unwrap_or(DEFAULT_PRECISION)).map_err(build_err)?
                }
                FamilySpec::LeadTail { lead, tail } => {
                    let poly = lead_tail_polynomial(parse_one("family.lead", lead)?, parse_one("family.tail", tail)?);
                    let p = precision.unwrap_or(DEFAULT_PRECISION);
                    let tol = Real::ten_to_minus(p + 10).value().clone();
                    let root = positive_root_poly(&poly, &BigRational::zero(), &BigRational::one(), &tol)
                        .map_err(build_err)?;
                    RealSeq::geometric(self.name.clone(), root.to_real(p))
                }
                FamilySpec::Harmonic => RealSeq::harmonic(),
                FamilySpec::Sevenths => RealSeq::sevenths(),
                other => {
                    return Err(ConfigError::Incompatible(format!(
                        "family kind {} does not determine a real sequence",
                        kind_name(other)
                    )))
                }
            },
            SequenceSpec::Explicit { terms } => {
                let terms: Vec<Real> = terms.iter().map(|t| num("sequence.terms", t)).collect::<Result<_, _>>()?;
                let len = terms.len() as u64;
                RealSeq::from_fn(
                    self.name.clone(),
                    move |k| {
                        if k <= len {
                            terms[k as usize - 1].clone()
                        } else {
                            Real::zero()
                        }
                    },
                )
            }
            SequenceSpec::Geometric { ratio } => RealSeq::geometric(self.name.clone(), num("sequence.ratio", ratio)?),
            SequenceSpec::Harmonic => RealSeq::harmonic(),
            SequenceSpec::BlockGeometric { head, ratio } => {
                let head = head.iter().map(|h| num("sequence.head", h)).collect::<Result<_, _>>()?;
                RealSeq::block_geometric(self.name.clone(), head, num("sequence.ratio", ratio)?)
            }
            other => {
                return Err(ConfigError::Incompatible(format!(
                    "sequence kind {} is not a real sequence",
                    sequence_kind_name(other)
                )))
            }
        };
        Ok(seq)
    }

    pub fn padic_sequence(&self) -> Result<PadicSeq, ConfigError> {
        self.padic_sequence_from(&self.sequence)
    }

    pub fn compare_padic_sequence(&self) -> Result<Option<PadicSeq>, ConfigError> {
        self.compare.as_ref().map(|s| self.padic_sequence_from(s)).transpose()
    }

    fn padic_sequence_from(&self, spec: &SequenceSpec) -> Result<PadicSeq, ConfigError> {
        let mode = self.require_mode(&[ModeKind::Padic])?;
        let (p, k) = mode.padic.expect("padic mode");
        let n = self.n_max(u64::from(k) + 1)?;
        let seq = match spec {
            SequenceSpec::PowerBasis => PadicSeq::power_basis(p, k, n),
            SequenceSpec::ScaledPower { unit } => PadicSeq::scaled_power(p, parse_one("sequence.unit", unit)?, k, n),
            SequenceSpec::GoldenRatio => PadicSeq::golden_ratio(p, k, n),
            SequenceSpec::PadicTable { rows } => {
                let rows = rows
                    .iter()
                    .map(|r| {
                        let (v, u) = r.split_once(':').ok_or_else(|| field_err("sequence.rows", r))?;
                        Ok((parse_one("sequence.rows", v)?, parse_one("sequence.rows", u)?))
                    })
                    .collect::<Result<Vec<_>, ConfigError>>()?;
                PadicSeq::table(p, k, &rows)
            }
            SequenceSpec::Explicit { terms } => {
                let terms: Vec<BigInt> = parse_list("sequence.terms", terms)?;
                PadicSeq::from_fn(self.name.clone(), p, k, terms.len() as u64, |i| terms[i as usize - 1].clone())
            }
            other => {
                return Err(ConfigError::Incompatible(format!(
                    "sequence kind {} is not a p-adic sequence",
                    sequence_kind_name(other)
                )))
            }
        };
        seq.map_err(build_err)
    }

    pub fn mode(&self) -> Result<Mode, ConfigError> {
        Ok(match &self.mode {
            ModeSpec::Integer => Mode { kind: ModeKind::Integer, precision: None, padic: None },
            ModeSpec::Rational => Mode { kind: ModeKind::Rational, precision: None, padic: None },
            ModeSpec::Decimal { precision } => {
                let p = match precision {
                    Some(p) => parse_one("mode.precision", p)?,
                    None => env_precision()?,
                };
                Mode { kind: ModeKind::Decimal, precision: Some(p), padic: None }
            }
            ModeSpec::Padic { p, k } => {
                let p: u64 = parse_one("mode.p", p)?;
                let k: u32 = parse_one("mode.k", k)?;
                Mode { kind: ModeKind::Padic, precision: None, padic: Some((p, k)) }
            }
        })
    }

    pub fn require_mode(&self, allowed: &[ModeKind]) -> Result<Mode, ConfigError> {
        let mode = self.mode()?;
        if !allowed.contains(&mode.kind) {
            return Err(ConfigError::Incompatible(format!(
                "this operation needs {} mode, config is in {} mode",
                allowed.iter().map(|k| k.name()).collect::<Vec<_>>().join(" or "),
                mode.kind.name()
            )));
        }
        Ok(mode)
    }

    pub fn n_max(&self, default: u64) -> Result<u64, ConfigError> {
        opt_parse("bounds.n_max", &self.bounds.n_max, default)
    }

    pub fn horizon(&self, default: u64) -> Result<u64, ConfigError> {
        opt_parse("bounds.horizon", &self.bounds.horizon, default)
    }

    pub fn max_blocks(&self, default: usize) -> Result<usize, ConfigError> {
        opt_parse("bounds.max_blocks", &self.bounds.max_blocks, default)
    }

    pub fn order_bound(&self) -> Result<OrderBound, ConfigError> {
        match self.bounds.order_bound.as_deref().map(str::trim) {
            None | Some("4N") => Ok(OrderBound::FourN),
            Some("2N") => Ok(OrderBound::TwoN),
            Some(k) => Ok(OrderBound::Exact(parse_one("bounds.order_bound", k)?)),
        }
    }

    pub fn tolerance(&self, default: u32) -> Result<Real, ConfigError> {
        match &self.bounds.tolerance {
            Some(t) => parse_tolerance(t).map_err(|m| field_err("bounds.tolerance", m)),
            None => Ok(Real::ten_to_minus(default)),
        }
    }

    pub fn residual_tol(&self) -> Result<Option<Real>, ConfigError> {
        self.bounds
            .residual_tol
            .as_deref()
            .map(|t| parse_tolerance(t).map_err(|m| field_err("bounds.residual_tol", m)))
            .transpose()
    }

    pub fn tail_model(&self) -> Result<Option<TailModel>, ConfigError> {
        Ok(match self.bounds.tail_model.as_deref() {
            None => None,
            Some("ratio-estimate") => Some(TailModel::RatioEstimate),
            Some("periodic") => Some(TailModel::Periodic),
            Some("self-similar") => Some(TailModel::SelfSimilar),
            Some(other) => return Err(field_err("bounds.tail_model", format!("unknown model {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    Integer,
    Rational,
    Decimal,
    Padic,
}

impl ModeKind {
    pub fn name(self) -> &'static str {
        match self {
            ModeKind::Integer => "integer",
            ModeKind::Rational => "rational",
            ModeKind::Decimal => "decimal",
            ModeKind::Padic => "padic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mode {
    pub kind: ModeKind,
    pub precision: Option<u32>,
    pub padic: Option<(u64, u32)>,
}

fn env_precision() -> Result<u32, ConfigError> {
    match std::env::var("ZECKGEN_PRECISION") {
        Ok(v) => parse_one("ZECKGEN_PRECISION", &v),
        Err(_) => Ok(DEFAULT_PRECISION),
    }
}

fn integer_sequence_from(name: &str, spec: &SequenceSpec) -> Result<Option<FundamentalSeq>, ConfigError> {
    let seq = match spec {
        SequenceSpec::Derived => return Ok(None),
        SequenceSpec::Explicit { terms } => {
            let terms: Vec<BigUint> = parse_list("sequence.terms", terms)?;
            let increasing = terms.windows(2).all(|w| w[0] < w[1]);
            FundamentalSeq::explicit(name, terms, increasing)
        }
        SequenceSpec::Linear { seeds, coeffs } => {
            let seeds: Vec<BigUint> = parse_list("sequence.seeds", seeds)?;
            let coeffs: Vec<BigInt> = parse_list("sequence.coeffs", coeffs)?;
            let increasing = seeds.windows(2).all(|w| w[0] < w[1]) && coeffs.iter().all(|c| *c >= BigInt::zero());
            FundamentalSeq::linear_recurrence(name, seeds, coeffs, increasing)
        }
        SequenceSpec::JPlus { j } => {
            let j: u64 = parse_one("sequence.j", j)?;
            FundamentalSeq::from_generator(name, Vec::new(), false, move |k, _| {
                Ok(BigUint::from(if k <= j { j + k } else { j * (k - j) }))
            })
        }
        other => {
            return Err(ConfigError::Incompatible(format!(
                "sequence kind {} is not an integer sequence",
                sequence_kind_name(other)
            )))
        }
    };
    seq.map(Some).map_err(build_err)
}

pub fn kind_name(f: &FamilySpec) -> &'static str {
    match f {
        FamilySpec::LList { .. } => "l-list",
        FamilySpec::NegRecurrence { .. } => "neg-recurrence",
        FamilySpec::TailRule { .. } => "tail-rule",
        FamilySpec::FixedBlocks { .. } => "fixed-blocks",
        FamilySpec::KBounded => "k-bounded",
        FamilySpec::Factorial => "factorial",
        FamilySpec::Trivial => "trivial",
        FamilySpec::JPlus { .. } => "j-plus",
        FamilySpec::Table { .. } => "table",
        FamilySpec::Greedy => "greedy",
        FamilySpec::Harmonic => "harmonic",
        FamilySpec::BlockSystem { .. } => "block-system",
        FamilySpec::Sevenths => "sevenths",
        FamilySpec::LeadTail { .. } => "lead-tail",
        FamilySpec::OddIndex => "odd-index",
    }
}

fn sequence_kind_name(s: &SequenceSpec) -> &'static str {
    match s {
        SequenceSpec::Derived => "derived",
        SequenceSpec::Explicit { .. } => "explicit",
        SequenceSpec::Linear { .. } => "linear",
        SequenceSpec::JPlus { .. } => "j-plus",
        SequenceSpec::Geometric { .. } => "geometric",
        SequenceSpec::Harmonic => "harmonic",
        SequenceSpec::BlockGeometric { .. } => "block-geometric",
        SequenceSpec::PowerBasis => "power-basis",
        SequenceSpec::ScaledPower { .. } => "scaled-power",
        SequenceSpec::GoldenRatio => "golden-ratio",
        SequenceSpec::PadicTable { .. } => "padic-table",
    }
}

fn parse_one<T: FromStr>(field: &'static str, s: &str) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    s.trim().parse().map_err(|e: T::Err| field_err(field, format!("{s:?}: {e}")))
}

fn parse_list<T: FromStr>(field: &'static str, items: &[String]) -> Result<Vec<T>, ConfigError>
where
    T::Err: std::fmt::Display,
{
    items.iter().map(|s| parse_one(field, s)).collect()
}

fn opt_parse<T: FromStr>(field: &'static str, v: &Option<String>, default: T) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    v.as_deref().map_or(Ok(default), |s| parse_one(field, s))
}

/// A comma-separated digit list such as `0,1,1`.
fn parse_digits(field: &'static str, s: &str) -> Result<Vec<u64>, ConfigError> {
    s.split(',').map(|d| parse_one(field, d)).collect()
}

/// Reads `a`, `p/q` or a quotient of two decimals such as `3.14159/8`.
pub fn parse_real(s: &str) -> Result<Real, String> {
    let s = s.trim();
    if let Some((a, b)) = s.rsplit_once('/') {
        if a.contains('.') || b.contains('.') {
            let a = Real::from_str(a).map_err(|e| e.to_string())?;
            let b = Real::from_str(b).map_err(|e| e.to_string())?;
            if b.is_zero() {
                return Err(format!("{s:?}: division by zero"));
            }
            return Ok(a.div(&b));
        }
    }
    Real::from_str(s).map_err(|e| e.to_string())
}

/// `1e-30`, or any number [`parse_real`] accepts.
pub fn parse_tolerance(s: &str) -> Result<Real, String> {
    if let Some(exp) = s.trim().strip_prefix("1e-") {
        let e: u32 = exp.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
        return Ok(Real::ten_to_minus(e));
    }
    parse_real(s)
}

fn is_terminating(x: &BigRational, places: u32) -> bool {
    let scaled = x * BigRational::from_integer(Pow::pow(BigInt::from(10), places));
    scaled.is_integer()
}

/// An affine rule `a·n + b` with integer coefficients, written like
/// `3n+1`, `-n+3`, `n` or `7`. The variable may be spelled `n` or `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub slope: i64,
    pub offset: i64,
}

impl Affine {
    pub fn parse(s: &str) -> Result<Affine, String> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err("empty expression".into());
        }
        let mut slope = 0i64;
        let mut offset = 0i64;
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let bad = || format!("cannot read {s:?}");
            match term.strip_suffix(['n', 'k']) {
                Some(c) => {
                    let c = c.strip_suffix('*').unwrap_or(c);
                    let c: i64 = if c.is_empty() { 1 } else { c.parse().map_err(|_| bad())? };
                    slope += sign * c;
                }
                None => offset += sign * term.parse::<i64>().map_err(|_| bad())?,
            }
        }
        Ok(Affine { slope, offset })
    }

    pub fn eval(&self, n: u64) -> i64 {
        self.slope * n as i64 + self.offset
    }

    fn digit_fn(self) -> Result<DigitFn, String> {
        if self.slope < 0 {
            return Err("digit rules must not decrease".into());
        }
        Ok(Arc::new(move |n| self.eval(n).max(0) as u64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_forms() {
        assert_eq!(Affine::parse("3n+1").unwrap(), Affine { slope: 3, offset: 1 });
        assert_eq!(Affine::parse("-n+3").unwrap(), Affine { slope: -1, offset: 3 });
        assert_eq!(Affine::parse("n - 1").unwrap(), Affine { slope: 1, offset: -1 });
        assert_eq!(Affine::parse("7").unwrap(), Affine { slope: 0, offset: 7 });
        assert_eq!(Affine::parse("2*k").unwrap(), Affine { slope: 2, offset: 0 });
        assert!(Affine::parse("x").is_err());
    }

    #[test]
    fn default_config_round_trips() {
        let cfg = SystemConfig::fibonacci();
        assert_eq!(SystemConfig::from_toml(&cfg.render().unwrap()).unwrap(), cfg);
    }

    #[test]
    fn decimal_quotient() {
        assert_eq!(parse_real("1.5/3").unwrap(), Real::ratio(1, 2));
        assert_eq!(parse_real("2/6").unwrap(), Real::ratio(1, 3));
    }
}
