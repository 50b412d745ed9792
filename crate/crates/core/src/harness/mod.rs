//! Identity registry, comparison engine, suites and JSON reports.

mod registry;
mod sampling;
mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::closed_forms::FormError;
use crate::partition::PartitionError;
use crate::qpoly::{LaurentPoly, QpolyError, Rational, TruncatedSeries};

pub use registry::{list_identities, lookup, Entry, ModeKind, ParamSpec};
pub use sampling::{RationalSampler, DEFAULT_POINTS, DEFAULT_SEED};
pub use suites::{suite_instances, Suite};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("unknown identity id {0:?}")]
    UnknownId(String),
    #[error("missing parameter {0:?}")]
    MissingParam(String),
    #[error("unknown parameter {0:?}")]
    UnknownParam(String),
    #[error("parameter {name} = {value} outside {min}..={max}")]
    OutOfRange {
        name: String,
        value: i64,
        min: i64,
        max: i64,
    },
    #[error("mode {mode} is not legal for {id}")]
    IllegalMode { id: String, mode: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("could not find {0} pole-free rational points")]
    SamplingExhausted(u32),
    #[error(
        "malformed mode {0:?}; expected exact, truncated:<cutoff> or rational:<points>:<seed>"
    )]
    BadMode(String),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Qpoly(#[from] QpolyError),
}

pub type Result<T> = std::result::Result<T, HarnessError>;

/// How the two sides are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Exact,
    /// Compare through the given grade.
    Truncated(i64),
    /// Evaluate at `count` rational points drawn from `seed`.
    RationalPoints {
        count: u32,
        seed: u64,
    },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => write!(f, "exact"),
            Mode::Truncated(c) => write!(f, "truncated:{c}"),
            Mode::RationalPoints { count, seed } => write!(f, "rational:{count}:{seed}"),
        }
    }
}

impl FromStr for Mode {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Mode> {
        let bad = || HarnessError::BadMode(s.to_string());
        let fields: Vec<&str> = s.split(':').collect();
        match fields.as_slice() {
            ["exact"] => Ok(Mode::Exact),
            ["truncated", c] => Ok(Mode::Truncated(c.parse().map_err(|_| bad())?)),
            ["rational", n, seed] => Ok(Mode::RationalPoints {
                count: n.parse().map_err(|_| bad())?,
                seed: seed.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Mode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Mode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Mode, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub type Params = BTreeMap<String, i64>;

/// One identity with concrete parameters and a comparison mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityInstance {
    pub id: String,
    pub params: Params,
    pub mode: Mode,
}

impl IdentityInstance {
    /// Instance in the identity's default mode. Unknown ids fall back to exact
    /// mode; `verify` reports them as errors.
    pub fn new(id: &str, params: &[(&str, i64)]) -> Self {
        let params: Params = params.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        let mode = lookup(id).map_or(Mode::Exact, |e| e.default_mode(&params));
        IdentityInstance {
            id: id.to_string(),
            params,
            mode,
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }
}

impl fmt::Display for IdentityInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        write!(f, " [{}]", self.mode)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

/// What a check compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// Closed form against brute-force enumeration.
    Oracle,
    /// The two sides of an identity, both closed forms.
    Identity,
    /// An additional builder-against-builder comparison.
    Cross,
    /// A structural property checked element by element.
    Property,
}

/// One side of a comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Poly(LaurentPoly),
    Series(TruncatedSeries),
    Count(BigInt),
    /// Labelled values at rational points.
    Values(Vec<(String, Rational)>),
}

impl From<LaurentPoly> for Side {
    fn from(p: LaurentPoly) -> Side {
        Side::Poly(p)
    }
}

impl From<TruncatedSeries> for Side {
    fn from(s: TruncatedSeries) -> Side {
        Side::Series(s)
    }
}

impl From<u64> for Side {
    fn from(n: u64) -> Side {
        Side::Count(n.into())
    }
}

impl From<BigInt> for Side {
    fn from(n: BigInt) -> Side {
        Side::Count(n)
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Poly(p) => write!(f, "{p}"),
            Side::Series(s) => write!(f, "{s}"),
            Side::Count(n) => write!(f, "{n}"),
            Side::Values(vs) => {
                let items: Vec<String> = vs.iter().map(|(_, v)| v.to_string()).collect();
                write!(f, "[{}]", items.join(", "))
            }
        }
    }
}

impl Side {
    /// Negates the leading term, or turns a zero side into 1 since negation
    /// would leave it unchanged; used to inject a deliberate fault.
    fn flip_sign(&mut self) {
        match self {
            Side::Poly(p) => flip_leading(p),
            Side::Series(s) => {
                let mut body = s.body().clone();
                flip_leading(&mut body);
                *s = TruncatedSeries::new(body, s.grading().clone()).expect("same support");
            }
            Side::Count(n) => {
                *n = if n.is_zero() {
                    BigInt::one()
                } else {
                    -n.clone()
                }
            }
            Side::Values(vs) => {
                if let Some((_, v)) = vs.first_mut() {
                    *v = if v.is_zero() {
                        Rational::one()
                    } else {
                        -v.clone()
                    };
                }
            }
        }
    }
}

fn flip_leading(p: &mut LaurentPoly) {
    let last = p.terms().next_back().map(|(e, c)| (*e, c.clone()));
    match last {
        Some((e, c)) => p.add_term(e, -(c * BigInt::from(2))),
        None => *p = LaurentPoly::one(),
    }
}

/// Named comparison of two sides.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub lhs: Side,
    pub rhs: Side,
    /// Extra context reported when the check fails, such as the offending element.
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: &str, kind: CheckKind, lhs: impl Into<Side>, rhs: impl Into<Side>) -> Check {
        Check {
            name: name.to_string(),
            kind,
            lhs: lhs.into(),
            rhs: rhs.into(),
            detail: None,
        }
    }

    /// First point of disagreement, or `None` when the sides agree.
    pub fn discrepancy(&self) -> Option<Discrepancy> {
        let found = |monomial: String, lhs: String, rhs: String| Discrepancy {
            check: self.name.clone(),
            monomial,
            lhs,
            rhs,
        };
        let polys = match (&self.lhs, &self.rhs) {
            (Side::Poly(a), Side::Poly(b)) => Some((a.clone(), b.clone())),
            (Side::Series(a), Side::Series(b)) => Some((a.body().clone(), b.body().clone())),
            (Side::Series(a), Side::Poly(b)) => {
                let b = TruncatedSeries::new(b.clone(), a.grading().clone()).ok()?;
                Some((a.body().clone(), b.into_body()))
            }
            (Side::Poly(a), Side::Series(b)) => {
                let a = TruncatedSeries::new(a.clone(), b.grading().clone()).ok()?;
                Some((a.into_body(), b.body().clone()))
            }
            _ => None,
        };
        if let Some((a, b)) = polys {
            return a
                .first_difference(&b)
                .map(|(e, l, r)| found(e.to_string(), l.to_string(), r.to_string()));
        }
        match (&self.lhs, &self.rhs) {
            (Side::Count(a), Side::Count(b)) if a != b => Some(found(
                self.detail.clone().unwrap_or_else(|| "count".into()),
                a.to_string(),
                b.to_string(),
            )),
            (Side::Values(a), Side::Values(b)) => {
                if a.len() != b.len() {
                    return Some(found(
                        "point count".into(),
                        a.len().to_string(),
                        b.len().to_string(),
                    ));
                }
                a.iter()
                    .zip(b)
                    .find(|(x, y)| x.1 != y.1)
                    .map(|(x, y)| found(x.0.clone(), x.1.to_string(), y.1.to_string()))
            }
            (Side::Count(_), Side::Count(_)) => None,
            _ => Some(found(
                "side kinds".into(),
                format!("{:?}", kind_name(&self.lhs)),
                format!("{:?}", kind_name(&self.rhs)),
            )),
        }
    }
}

fn kind_name(s: &Side) -> &'static str {
    match s {
        Side::Poly(_) => "polynomial",
        Side::Series(_) => "series",
        Side::Count(_) => "count",
        Side::Values(_) => "values",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub check: String,
    /// Grlex-least differing monomial, or the label of the first differing point.
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub kind: CheckKind,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: Params,
    pub mode: Mode,
    pub status: Status,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub first_discrepancy: Option<Discrepancy>,
    pub checks: Vec<CheckOutcome>,
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn instance(&self) -> IdentityInstance {
        IdentityInstance {
            id: self.id.clone(),
            params: self.params.clone(),
            mode: self.mode,
        }
    }

    /// The report with its timing zeroed, for byte-level comparisons.
    pub fn without_timing(&self) -> VerificationReport {
        VerificationReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

/// Options shared by `verify` and `run_suite`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Negate the leading term of the closed-form side of this identity's
    /// primary check; used to confirm the harness notices wrong builders.
    pub inject_fault: Option<String>,
}

/// Evaluates both sides of an instance and compares them.
pub fn verify(inst: &IdentityInstance) -> VerificationReport {
    verify_with(inst, &RunOptions::default())
}

pub fn verify_with(inst: &IdentityInstance, opts: &RunOptions) -> VerificationReport {
    let start = Instant::now();
    let outcome = lookup(&inst.id)
        .ok_or_else(|| HarnessError::UnknownId(inst.id.clone()))
        .and_then(|entry| entry.evaluate(inst));
    let mut report = VerificationReport {
        id: inst.id.clone(),
        params: inst.params.clone(),
        mode: inst.mode,
        status: Status::Error,
        lhs: None,
        rhs: None,
        first_discrepancy: None,
        checks: Vec::new(),
        error: None,
        elapsed_ms: 0,
    };
    match outcome {
        Err(e) => report.error = Some(e.to_string()),
        Ok(mut checks) => {
            if opts.inject_fault.as_deref() == Some(inst.id.as_str()) {
                if let Some(c) = checks.first_mut() {
                    c.lhs.flip_sign();
                }
            }
            report.status = Status::Pass;
            for c in &checks {
                let d = c.discrepancy();
                report.checks.push(CheckOutcome {
                    name: c.name.clone(),
                    kind: c.kind,
                    status: if d.is_some() {
                        Status::Fail
                    } else {
                        Status::Pass
                    },
                });
                if d.is_some() && report.first_discrepancy.is_none() {
                    report.first_discrepancy = d;
                    report.status = Status::Fail;
                }
            }
            if let Some(primary) = checks.first() {
                report.lhs = Some(primary.lhs.to_string());
                report.rhs = Some(primary.rhs.to_string());
            }
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Error => s.error += 1,
            }
        }
        s
    }

    pub fn all_pass(&self) -> bool {
        self.fail == 0 && self.error == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub reports: Vec<VerificationReport>,
    pub summary: Summary,
}

/// Verifies a list of instances on `jobs` threads (0 picks the default).
/// Reports come back in input order whatever the thread count.
pub fn verify_all(
    insts: &[IdentityInstance],
    jobs: usize,
    opts: &RunOptions,
) -> Vec<VerificationReport> {
    let run = || {
        insts
            .par_iter()
            .map(|i| verify_with(i, opts))
            .collect::<Vec<_>>()
    };
    if jobs == 1 {
        return insts.iter().map(|i| verify_with(i, opts)).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}

/// Runs every instance of a named suite.
pub fn run_suite(suite: Suite, jobs: usize, opts: &RunOptions) -> SuiteResult {
    let reports = verify_all(&suite_instances(suite), jobs, opts);
    let summary = Summary::of(&reports);
    SuiteResult {
        suite: suite.to_string(),
        reports,
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_round_trip() {
        for m in [
            Mode::Exact,
            Mode::Truncated(14),
            Mode::RationalPoints {
                count: 20,
                seed: 182,
            },
        ] {
            assert_eq!(m.to_string().parse::<Mode>().unwrap(), m);
        }
        assert!("truncated".parse::<Mode>().is_err());
        assert!("rational:x:1".parse::<Mode>().is_err());
    }

    #[test]
    fn spec_examples() {
        let r = verify(&IdentityInstance::new(
            "T1_1",
            &[("n", 14), ("i", 1), ("j", 1)],
        ));
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert_eq!(r.lhs.as_deref(), Some("10"));
        assert_eq!(r.rhs.as_deref(), Some("10"));

        let r = verify(&IdentityInstance::new(
            "T5_7",
            &[("N", 3), ("n", 10), ("k", 2)],
        ));
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert_eq!(r.lhs.as_deref(), Some("9"));

        let r = verify(&IdentityInstance::new(
            "T2_1",
            &[("bound", 3), ("i", 1), ("j", 0)],
        ));
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert_eq!(r.lhs.as_deref(), Some("q + q^3 + q^5"));
    }

    #[test]
    fn errors_are_reports() {
        let r = verify(&IdentityInstance::new("NOPE", &[]));
        assert_eq!(r.status, Status::Error);
        let r = verify(&IdentityInstance::new("T2_1", &[("bound", 3), ("i", 1)]));
        assert_eq!(r.status, Status::Error);
        let r = verify(&IdentityInstance::new(
            "T2_1",
            &[("bound", 3), ("i", 1), ("j", 0), ("zz", 1)],
        ));
        assert_eq!(r.status, Status::Error);
        let r = verify(
            &IdentityInstance::new("T2_1", &[("bound", 3), ("i", 1), ("j", 0)])
                .with_mode(Mode::RationalPoints { count: 3, seed: 1 }),
        );
        assert_eq!(r.status, Status::Error);
    }

    #[test]
    fn injected_fault_fails_with_discrepancy() {
        let inst = IdentityInstance::new("T2_1", &[("bound", 3), ("i", 1), ("j", 0)]);
        let opts = RunOptions {
            inject_fault: Some("T2_1".into()),
        };
        let r = verify_with(&inst, &opts);
        assert_eq!(r.status, Status::Fail);
        let d = r.first_discrepancy.unwrap();
        assert_eq!(d.monomial, "q^5");
        assert_eq!((d.lhs.as_str(), d.rhs.as_str()), ("-1", "1"));
    }

    #[test]
    fn report_json_round_trip() {
        let r = verify(&IdentityInstance::new("T3_1", &[("bound", 5), ("k", -1)]));
        let text = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
