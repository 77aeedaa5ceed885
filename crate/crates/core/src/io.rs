//! JSON interchange for braces, catalogs, solutions, matrices and tensors,
//! and the verification pipeline that assembles suite reports per brace.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::{algebra_from_brace, verify_universal_suites, AlgebraContext, TensorElement};
use crate::brace::{
    check_brace_theorem_properties, check_braid, derive_sigma_tau, enumerate_braces, is_involutive, validate_brace,
    BraceError, SkewBrace, YbMap,
};
use crate::finite::{GroupTable, ValidationFailure};
use crate::limits::{LimitExceeded, Limits};
use crate::matrix::{verify_matrix_suites, ExactMatrix, SparseZOMatrix};
use crate::rational::{parse_ratio, to_ratio_string};
use crate::report::{Check, CheckStatus, PropertyReport, Witness};
use crate::yangian::verify_yangian_suites;

pub const CATALOG_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("field `{field}`: {source}")]
    Table {
        field: String,
        #[source]
        source: ValidationFailure,
    },
    #[error(transparent)]
    Brace(#[from] BraceError),
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

fn field(name: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Field { field: name.into(), message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTableJson {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
}

impl GroupTableJson {
    pub fn from_table(g: &GroupTable) -> Self {
        GroupTableJson { n: g.n(), table: g.rows() }
    }

    pub fn to_table(&self) -> Result<GroupTable, IoError> {
        check_rows("table", self.n, &self.table)?;
        GroupTable::from_rows(&self.table).map_err(|source| IoError::Table { field: "table".into(), source })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewBraceJson {
    pub n: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

fn check_rows(name: &str, n: usize, rows: &[Vec<usize>]) -> Result<(), IoError> {
    if rows.len() != n {
        return Err(field(name, format!("{} rows, expected {}", rows.len(), n)));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(field(format!("{}[{}]", name, i), format!("{} entries, expected {}", r.len(), n)));
    }
    Ok(())
}

impl SkewBraceJson {
    pub fn from_brace(b: &SkewBrace) -> Self {
        SkewBraceJson { n: b.n(), add: b.add().rows(), mul: b.mul().rows() }
    }

    pub fn to_brace(&self) -> Result<SkewBrace, IoError> {
        check_rows("add", self.n, &self.add)?;
        check_rows("mul", self.n, &self.mul)?;
        let table = |name: &str, rows: &[Vec<usize>]| {
            GroupTable::from_rows(rows).map_err(|source| IoError::Table { field: name.to_string(), source })
        };
        Ok(validate_brace(table("add", &self.add)?, table("mul", &self.mul)?)?)
    }
}

/// The canonical JSON text of a brace: compact, keys in the order `n`,
/// `add`, `mul`.
pub fn canonical_json(b: &SkewBrace) -> String {
    serde_json::to_string(&SkewBraceJson::from_brace(b)).expect("plain data serializes")
}

/// Hex SHA-256 of [`canonical_json`].
pub fn digest(b: &SkewBrace) -> String {
    Sha256::digest(canonical_json(b).as_bytes()).iter().map(|byte| format!("{:02x}", byte)).collect()
}

pub fn parse_brace(text: &str) -> Result<SkewBrace, IoError> {
    serde_json::from_str::<SkewBraceJson>(text)?.to_brace()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogCounts {
    pub total: usize,
    /// Braces whose additive group is abelian.
    pub abelian: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub version: u32,
    pub order: usize,
    pub skew: bool,
    pub counts: CatalogCounts,
    pub braces: Vec<SkewBraceJson>,
}

impl CatalogFile {
    pub fn from_braces(order: usize, skew: bool, braces: &[SkewBrace]) -> Self {
        CatalogFile {
            version: CATALOG_VERSION,
            order,
            skew,
            counts: CatalogCounts { total: braces.len(), abelian: braces.iter().filter(|b| b.is_brace()).count() },
            braces: braces.iter().map(SkewBraceJson::from_brace).collect(),
        }
    }

    /// Validates the header against the records and re-validates each brace.
    pub fn to_braces(&self) -> Result<Vec<SkewBrace>, IoError> {
        if self.version != CATALOG_VERSION {
            return Err(field("version", format!("unsupported version {}", self.version)));
        }
        if self.counts.total != self.braces.len() {
            return Err(field(
                "counts.total",
                format!("{} but the catalog lists {} braces", self.counts.total, self.braces.len()),
            ));
        }
        let mut out = Vec::with_capacity(self.braces.len());
        for (i, rec) in self.braces.iter().enumerate() {
            if rec.n != self.order {
                return Err(field(format!("braces[{}].n", i), format!("{}, catalog order is {}", rec.n, self.order)));
            }
            out.push(rec.to_brace().map_err(|e| field(format!("braces[{}]", i), e.to_string()))?);
        }
        let abelian = out.iter().filter(|b| b.is_brace()).count();
        if abelian != self.counts.abelian {
            return Err(field("counts.abelian", format!("{} but {} records are braces", self.counts.abelian, abelian)));
        }
        Ok(out)
    }
}

/// Enumerates the braces (or skew braces) of one order into a catalog.
pub fn build_catalog(order: usize, skew: bool, limits: &Limits) -> Result<CatalogFile, IoError> {
    let braces = enumerate_braces(order, skew, limits)?;
    Ok(CatalogFile::from_braces(order, skew, &braces))
}

/// A verification input: a single brace or a catalog.
#[derive(Clone, Debug)]
pub enum Input {
    Brace(SkewBrace),
    Catalog(Vec<SkewBrace>),
}

impl Input {
    pub fn braces(&self) -> &[SkewBrace] {
        match self {
            Input::Brace(b) => std::slice::from_ref(b),
            Input::Catalog(bs) => bs,
        }
    }
}

pub fn parse_input(text: &str) -> Result<Input, IoError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("braces").is_some() {
        let catalog: CatalogFile = serde_json::from_str(text)?;
        Ok(Input::Catalog(catalog.to_braces()?))
    } else {
        Ok(Input::Brace(parse_brace(text)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YbMapJson {
    pub n: usize,
    /// `sigma[a][b] = sigma_a(b)`.
    pub sigma: Vec<Vec<usize>>,
    /// `tau[b][a] = tau_b(a)`.
    pub tau: Vec<Vec<usize>>,
}

impl YbMapJson {
    pub fn from_map(m: &YbMap) -> Self {
        YbMapJson { n: m.n(), sigma: m.sigma_rows(), tau: m.tau_rows() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZoMatrixJson {
    pub dim: usize,
    pub entries: Vec<[usize; 2]>,
}

impl ZoMatrixJson {
    pub fn from_matrix(m: &SparseZOMatrix) -> Self {
        ZoMatrixJson { dim: m.dim(), entries: m.entries().map(|(r, c)| [r, c]).collect() }
    }

    pub fn to_matrix(&self) -> Result<SparseZOMatrix, IoError> {
        SparseZOMatrix::new(self.dim, self.entries.iter().map(|&[r, c]| (r, c)))
            .map_err(|e| field("entries", e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactMatrixJson {
    pub dim: usize,
    pub rows: Vec<Vec<String>>,
}

impl ExactMatrixJson {
    pub fn from_matrix(m: &ExactMatrix) -> Self {
        ExactMatrixJson {
            dim: m.dim(),
            rows: m.dense_rows().iter().map(|row| row.iter().map(to_ratio_string).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ExactMatrix, IoError> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            let mut parsed = Vec::with_capacity(row.len());
            for (j, s) in row.iter().enumerate() {
                parsed.push(
                    parse_ratio(s)
                        .ok_or_else(|| field(format!("rows[{}][{}]", i, j), format!("`{}` is not a rational", s)))?,
                );
            }
            rows.push(parsed);
        }
        let m = ExactMatrix::from_dense(&rows).map_err(|e| field("rows", e.to_string()))?;
        if m.dim() != self.dim {
            return Err(field("dim", format!("{} but rows give {}", self.dim, m.dim())));
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermJson {
    /// `[a, g]` per tensor factor, for the basis element `h_a w_g`.
    pub basis: Vec<[usize; 2]>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub n: usize,
    pub order: usize,
    pub terms: Vec<TensorTermJson>,
}

impl TensorJson {
    pub fn from_element(ctx: &AlgebraContext, x: &TensorElement) -> Self {
        TensorJson {
            n: ctx.n(),
            order: x.order(),
            terms: x.pair_terms().map(|(basis, q)| TensorTermJson { basis, coeff: to_ratio_string(q) }).collect(),
        }
    }

    pub fn to_element(&self, ctx: &AlgebraContext) -> Result<TensorElement, IoError> {
        let n = ctx.n();
        if self.n != n {
            return Err(field("n", format!("{}, algebra order is {}", self.n, n)));
        }
        let mut x = ctx.zero(self.order);
        for (i, t) in self.terms.iter().enumerate() {
            if t.basis.len() != self.order || t.basis.iter().any(|&[a, g]| a >= n || g >= n) {
                return Err(field(format!("terms[{}].basis", i), "wrong length or index out of range"));
            }
            let q = parse_ratio(&t.coeff)
                .ok_or_else(|| field(format!("terms[{}].coeff", i), format!("`{}` is not a rational", t.coeff)))?;
            let digits: Vec<usize> = t.basis.iter().map(|&[a, g]| a * n + g).collect();
            let prev = x.coeff(&digits);
            x.set_coeff(&digits, prev + q);
        }
        Ok(x)
    }
}

/// Which suites a verification run executes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Map,
    Matrix,
    Universal,
    Yangian,
    All,
}

impl Level {
    fn includes(self, suite: Level) -> bool {
        self == Level::All || self == suite
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "map" => Ok(Level::Map),
            "matrix" => Ok(Level::Matrix),
            "universal" => Ok(Level::Universal),
            "yangian" => Ok(Level::Yangian),
            "all" => Ok(Level::All),
            other => Err(format!("unknown level `{}`", other)),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Map => "map",
            Level::Matrix => "matrix",
            Level::Universal => "universal",
            Level::Yangian => "yangian",
            Level::All => "all",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subject {
    pub digest: String,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: Subject,
    pub level: Level,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    /// True iff no executed check failed.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn zero_timings(&mut self) {
        for c in &mut self.checks {
            c.millis = 0;
        }
    }
}

/// Non-degeneracy, the left-inverse law, the braid relation and
/// involutivity of the derived map, plus the brace-level identities.
pub fn verify_map_suites(b: &SkewBrace) -> PropertyReport {
    let mut report = PropertyReport::new();
    let map = match derive_sigma_tau(b) {
        Ok(m) => {
            report.record("map.non_degenerate", "sigma_a and tau_b are bijections", None);
            m
        }
        Err(e) => {
            report.record("map.non_degenerate", "sigma_a and tau_b are bijections", Some(Witness::note(e.to_string())));
            return report;
        }
    };
    report.timed("map.left_inverse_law", "sigma_{sigma_a(b)}(tau_b(a)) = a", || {
        map.left_inverse_violation().map(|(a, x)| Witness::indices(&[a, x]))
    });
    report.timed("map.braid", "r_12 r_23 r_12 = r_23 r_12 r_23", || check_braid(&map).verdict().witness().cloned());
    let anchor = "r(r(a, b)) = (a, b)";
    if b.is_brace() {
        report.timed("map.involutive", anchor, || {
            (!is_involutive(&map)).then(|| Witness::note("r o r is not the identity"))
        });
    } else {
        report.skip(
            "map.involutive",
            anchor,
            format!("exploratory (nonabelian addition); holds: {}", is_involutive(&map)),
        );
    }
    report.extend(check_brace_theorem_properties(b));
    report
}

/// Runs the suites selected by `level` on one brace.
pub fn verify_brace(b: &SkewBrace, level: Level, limits: &Limits) -> VerificationReport {
    let mut report = PropertyReport::new();
    if level.includes(Level::Map) {
        report.extend(verify_map_suites(b));
    }
    let needs_algebra = [Level::Matrix, Level::Universal, Level::Yangian].iter().any(|&s| level.includes(s));
    if needs_algebra {
        match algebra_from_brace(b) {
            Err(e) => report.record(
                "algebra.construction",
                "the algebra on h_a w_g is associative and unital",
                Some(Witness::note(e.to_string())),
            ),
            Ok(ctx) => {
                if level.includes(Level::Matrix) {
                    report.extend(verify_matrix_suites(&ctx, limits));
                }
                if level.includes(Level::Universal) {
                    if b.n() > limits.max_universal_order {
                        report.skip(
                            "universal",
                            "universal suites",
                            format!(
                                "{}",
                                LimitExceeded {
                                    what: "universal suites order",
                                    requested: b.n(),
                                    ceiling: limits.max_universal_order,
                                }
                            ),
                        );
                    } else {
                        report.extend(verify_universal_suites(&ctx, limits));
                    }
                }
                if level.includes(Level::Yangian) {
                    report.extend(verify_yangian_suites(&ctx, limits));
                }
            }
        }
    }
    VerificationReport { subject: Subject { digest: digest(b), order: b.n() }, level, checks: report.checks }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub reports: usize,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// Several reports with totals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub summary: Summary,
    pub reports: Vec<VerificationReport>,
}

impl ReportBundle {
    pub fn new(reports: Vec<VerificationReport>) -> Self {
        let mut summary = Summary { reports: reports.len(), ..Summary::default() };
        for c in reports.iter().flat_map(|r| &r.checks) {
            summary.checks += 1;
            match c.status {
                CheckStatus::Pass => summary.passed += 1,
                CheckStatus::Fail => summary.failed += 1,
                CheckStatus::Skipped => summary.skipped += 1,
            }
        }
        ReportBundle { summary, reports }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Reads a single report or a bundle.
pub fn parse_reports(text: &str) -> Result<Vec<VerificationReport>, IoError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("reports").is_some() {
        Ok(serde_json::from_str::<ReportBundle>(text)?.reports)
    } else {
        Ok(vec![serde_json::from_str::<VerificationReport>(text)?])
    }
}

/// Concatenates reports in the given order.
pub fn merge_reports(inputs: Vec<Vec<VerificationReport>>) -> ReportBundle {
    ReportBundle::new(inputs.into_iter().flatten().collect())
}
