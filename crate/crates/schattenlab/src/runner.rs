//! Declarative experiment runner: flat-text experiment specs, seeded
//! deterministic dispatch into the computational modules, and emission as
//! CSV / JSON / tables / SVG plots under a manifest-hashed results directory.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::{
    lp_threshold_probe, random_function, Group, GroupFunction, Word, LETTERS,
};
use crate::kernels::{
    chh_sequence, product_pd_multiplier, random_kernel, schur_multiply, ProductKernel,
};
use crate::matrix::{self, ComplexMatrix, SchattenIndex};
use crate::norms::{max_norm_sandwich, schatten_op_norm, verify_interpolation};
use crate::spectral::{gap_report, growth_bound_check, l1_radius, z_reduced_norm};
use crate::tensor::{random_tensor, TensorElement};
use crate::tol;

/// Closed list of runnable experiment kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    TensorNorm,
    InterpolationSweep,
    MaxSandwich,
    HaagerupGap,
    GroupThreshold,
    Chh,
    SchurBound,
    SpectralGap,
    ZEquality,
    GrowthBound,
}

pub const ALL_KINDS: [ExperimentKind; 10] = [
    ExperimentKind::TensorNorm,
    ExperimentKind::InterpolationSweep,
    ExperimentKind::MaxSandwich,
    ExperimentKind::HaagerupGap,
    ExperimentKind::GroupThreshold,
    ExperimentKind::Chh,
    ExperimentKind::SchurBound,
    ExperimentKind::SpectralGap,
    ExperimentKind::ZEquality,
    ExperimentKind::GrowthBound,
];

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::TensorNorm => "tensor_norm",
            ExperimentKind::InterpolationSweep => "interpolation_sweep",
            ExperimentKind::MaxSandwich => "max_sandwich",
            ExperimentKind::HaagerupGap => "haagerup_gap",
            ExperimentKind::GroupThreshold => "group_threshold",
            ExperimentKind::Chh => "chh",
            ExperimentKind::SchurBound => "schur_bound",
            ExperimentKind::SpectralGap => "spectral_gap",
            ExperimentKind::ZEquality => "z_equality",
            ExperimentKind::GrowthBound => "growth_bound",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        ALL_KINDS
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Validation(format!("unknown experiment kind `{s}`")))
    }

    /// The closed list of required parameter keys for this kind.
    pub fn required_keys(self) -> &'static [&'static str] {
        match self {
            ExperimentKind::TensorNorm => &["dim_a", "dim_b", "p", "count"],
            ExperimentKind::InterpolationSweep => &["dim_a", "dim_b", "terms", "count"],
            ExperimentKind::MaxSandwich => &["dim_a", "dim_b", "terms", "count", "k"],
            ExperimentKind::HaagerupGap => &["dim", "count"],
            ExperimentKind::GroupThreshold => &["group", "p", "t", "r_max"],
            ExperimentKind::Chh => &["fixture", "q", "n_max"],
            ExperimentKind::SchurBound => &["t", "r", "count"],
            ExperimentKind::SpectralGap => &["r", "n_max"],
            ExperimentKind::ZEquality => &["count", "n_max", "radius"],
            ExperimentKind::GrowthBound => &["count", "n_max", "radius"],
        }
    }
}

/// A single parameter value in the flat key = value spec format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Number(f64),
    List(Vec<f64>),
    Text(String),
}

impl ParamValue {
    fn render(&self) -> String {
        match self {
            ParamValue::Number(x) => format!("{x}"),
            ParamValue::List(xs) => xs
                .iter()
                .map(|x| format!("{x}"))
                .collect::<Vec<_>>()
                .join(", "),
            ParamValue::Text(s) => s.clone(),
        }
    }
}

/// Parsed and validated experiment description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub name: String,
    pub kind: ExperimentKind,
    pub seed: u64,
    pub parameters: BTreeMap<String, ParamValue>,
}

impl ExperimentSpec {
    /// Parses the flat text format: one `key = value` per line, `#` comments.
    /// `name`, `kind`, and `seed` are reserved header keys.
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut kind = None;
        let mut seed = None;
        let mut parameters = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Validation(format!(
                    "line {}: expected `key = value`, got `{line}`",
                    lineno + 1
                )));
            };
            let key = key.trim();
            let value = value.trim();
            match key {
                "name" => name = Some(value.to_string()),
                "kind" => kind = Some(ExperimentKind::parse(value)?),
                "seed" => {
                    seed = Some(value.parse::<u64>().map_err(|_| {
                        Error::Validation(format!("seed `{value}` is not a u64"))
                    })?)
                }
                _ => {
                    if parameters.contains_key(key) {
                        return Err(Error::Validation(format!("duplicate key `{key}`")));
                    }
                    parameters.insert(key.to_string(), parse_value(value));
                }
            }
        }
        let spec = ExperimentSpec {
            name: name.ok_or_else(|| Error::Validation("missing `name`".into()))?,
            kind: kind.ok_or_else(|| Error::Validation("missing `kind`".into()))?,
            seed: seed.ok_or_else(|| Error::Validation("missing `seed`".into()))?,
            parameters,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn parse_file(path: &Path) -> Result<Self> {
        ExperimentSpec::parse(&std::fs::read_to_string(path)?)
    }

    /// Round-trippable text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "name = {}", self.name).unwrap();
        writeln!(out, "kind = {}", self.kind.name()).unwrap();
        writeln!(out, "seed = {}", self.seed).unwrap();
        for (k, v) in &self.parameters {
            writeln!(out, "{k} = {}", v.render()).unwrap();
        }
        out
    }

    /// Checks the closed key list: every required key present, nothing else.
    pub fn validate(&self) -> Result<()> {
        let required = self.kind.required_keys();
        for key in required {
            if !self.parameters.contains_key(*key) {
                return Err(Error::Validation(format!(
                    "kind {} requires key `{key}`",
                    self.kind.name()
                )));
            }
        }
        for key in self.parameters.keys() {
            if !required.contains(&key.as_str()) {
                return Err(Error::Validation(format!(
                    "kind {} does not accept key `{key}`",
                    self.kind.name()
                )));
            }
        }
        if self.name.is_empty()
            || !self
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            return Err(Error::Validation(format!(
                "name `{}` must be a nonempty [A-Za-z0-9_-]+ token",
                self.name
            )));
        }
        Ok(())
    }

    fn number(&self, key: &str) -> Result<f64> {
        match self.parameters.get(key) {
            Some(ParamValue::Number(x)) => Ok(*x),
            Some(ParamValue::Text(s)) if s == "inf" => Ok(f64::INFINITY),
            other => Err(Error::Validation(format!(
                "key `{key}` must be a number, got {other:?}"
            ))),
        }
    }

    fn usize_at(&self, key: &str) -> Result<usize> {
        let x = self.number(key)?;
        if x < 0.0 || x.fract() != 0.0 || !x.is_finite() {
            return Err(Error::Validation(format!(
                "key `{key}` must be a nonnegative integer, got {x}"
            )));
        }
        Ok(x as usize)
    }

    fn text(&self, key: &str) -> Result<&str> {
        match self.parameters.get(key) {
            Some(ParamValue::Text(s)) => Ok(s),
            other => Err(Error::Validation(format!(
                "key `{key}` must be text, got {other:?}"
            ))),
        }
    }

    fn schatten(&self, key: &str) -> Result<SchattenIndex> {
        SchattenIndex::new(self.number(key)?)
    }

    fn group(&self, key: &str) -> Result<Group> {
        match self.text(key)? {
            "F2" => Ok(Group::FreeRank2),
            "Z" => Ok(Group::Integers),
            other => Err(Error::Validation(format!(
                "key `{key}` must be F2 or Z, got `{other}`"
            ))),
        }
    }
}

fn parse_value(value: &str) -> ParamValue {
    if value.contains(',') {
        let parts: std::result::Result<Vec<f64>, _> =
            value.split(',').map(|p| p.trim().parse::<f64>()).collect();
        if let Ok(xs) = parts {
            return ParamValue::List(xs);
        }
    }
    // "inf"/"nan" would parse as floats; keep bare words textual so group
    // and fixture names survive, and handle "inf" where numbers are read.
    if value
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_digit() || c == '-' || c == '+' || c == '.')
    {
        if let Ok(x) = value.parse::<f64>() {
            return ParamValue::Number(x);
        }
    }
    ParamValue::Text(value.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Info => "info",
        }
    }
}

/// One named numeric tuple of a result, matching the CSV schema.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub key: String,
    /// The swept index (instance number, power n, or exponent p).
    pub n_or_p: f64,
    pub value: f64,
    pub bound: f64,
    pub slack: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub spec: ExperimentSpec,
    pub rows: Vec<ResultRow>,
    pub verdict: Verdict,
    pub wall_time: f64,
    pub tool_version: String,
}

/// Runs one validated spec. Deterministic given (spec, seed, tool_version):
/// all randomness flows from one counter-based generator seeded by the spec.
pub fn run(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    spec.validate()?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let rows = dispatch(spec, &mut rng)?;
    let verdict = overall_verdict(&rows);
    if rows.is_empty() && verdict != Verdict::Info {
        return Err(Error::Validation(
            "result rows empty on a pass/fail verdict".into(),
        ));
    }
    Ok(ExperimentResult {
        spec: spec.clone(),
        rows,
        verdict,
        wall_time: start.elapsed().as_secs_f64(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

fn overall_verdict(rows: &[ResultRow]) -> Verdict {
    if rows.iter().any(|r| r.verdict == Verdict::Fail) {
        Verdict::Fail
    } else if rows.iter().any(|r| r.verdict == Verdict::Pass) {
        Verdict::Pass
    } else {
        Verdict::Info
    }
}

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn dispatch(spec: &ExperimentSpec, rng: &mut ChaCha8Rng) -> Result<Vec<ResultRow>> {
    match spec.kind {
        ExperimentKind::TensorNorm => run_tensor_norm(spec, rng),
        ExperimentKind::InterpolationSweep => run_interpolation_sweep(spec, rng),
        ExperimentKind::MaxSandwich => run_max_sandwich(spec, rng),
        ExperimentKind::HaagerupGap => run_haagerup_gap(spec, rng),
        ExperimentKind::GroupThreshold => run_group_threshold(spec),
        ExperimentKind::Chh => run_chh(spec),
        ExperimentKind::SchurBound => run_schur_bound(spec, rng),
        ExperimentKind::SpectralGap => run_spectral_gap(spec),
        ExperimentKind::ZEquality => run_z_equality(spec, rng),
        ExperimentKind::GrowthBound => run_growth_bound(spec, rng),
    }
}

/// Cross-norm check on `a (x) I` fixtures: the estimate at p must match
/// `sigma_max(a)` (exactly at p in {1,2,inf}, loosely elsewhere).
fn run_tensor_norm(spec: &ExperimentSpec, rng: &mut ChaCha8Rng) -> Result<Vec<ResultRow>> {
    let d_a = spec.usize_at("dim_a")?;
    let d_b = spec.usize_at("dim_b")?;
    let p = spec.schatten("p")?;
    let count = spec.usize_at("count")?;
    let rel_tol = if p.is_one() || p.is_two() || p.is_infinity() {
        tol::CROSS_NORM_EXACT_REL
    } else {
        tol::CROSS_NORM_GENERAL_REL
    };
    let mut rows = Vec::with_capacity(count);
    for i in 0..count {
        let a = matrix::random_matrix(rng, d_a, d_a);
        let x = TensorElement::elementary(a.clone(), ComplexMatrix::identity(d_b))?;
        let est = schatten_op_norm(&x, p, 1, 4)?;
        let want = matrix::sigma_max(&a);
        let rel = (est.value - want).abs() / want.max(1e-300);
        rows.push(ResultRow {
            key: "cross_norm".into(),
            n_or_p: i as f64,
            value: est.value,
            bound: want,
            slack: rel_tol - rel,
            verdict: pass_if(rel <= rel_tol),
        });
    }
    Ok(rows)
}

fn random_endpoint(rng: &mut ChaCha8Rng) -> SchattenIndex {
    match rng.gen_range(0..3) {
        0 => SchattenIndex::ONE,
        1 => SchattenIndex::TWO,
        _ => SchattenIndex::Infinity,
    }
}

fn run_interpolation_sweep(spec: &ExperimentSpec, rng: &mut ChaCha8Rng) -> Result<Vec<ResultRow>> {
    let d_a = spec.usize_at("dim_a")?;
    let d_b = spec.usize_at("dim_b")?;
    let terms = spec.usize_at("terms")?;
    let count = spec.usize_at("count")?;
    let mut rows = Vec::with_capacity(count);
    for i in 0..count {
        let x = random_tensor(rng, d_a, d_b, terms);
        let (p0, p1) = loop {
            let p0 = random_endpoint(rng);
            let p1 = random_endpoint(rng);
            if p0 != p1 {
                break (p0, p1);
            }
        };
        let theta = rng.gen_range(0.05..0.95);
        let rep = verify_interpolation(&x, p0, p1, theta, 1)?;
        rows.push(ResultRow {
            key: "interpolation_slack".into(),
            n_or_p: rep.p.value(),
            value: rep.left.value,
            bound: rep.left.value + rep.slack,
            slack: rep.slack,
            verdict: pass_if(rep.slack >= -tol::BOUND_ORDER_SLACK),
        });
        let _ = i;
    }
    Ok(rows)
}

fn run_max_sandwich(spec: &ExperimentSpec, rng: &mut ChaCha8Rng) -> Result<Vec<ResultRow>> {
    let d_a = spec.usize_at("dim_a")?;
    let d_b = spec.usize_at("dim_b")?;
    let terms = spec.usize_at("terms")?;
    let count = spec.usize_at("count")?;
    let k = spec.usize_at("k")?;
    let mut rows = Vec::with_capacity(2 * count);
    for i in 0..count {
        let x = random_tensor(rng, d_a, d_b, terms);
        let rep = max_norm_sandwich(&x, k)?;
        rows.push(ResultRow {
            key: "geo_mean".into(),
            n_or_p: i as f64,
            value: rep.min_norm,
            bound: rep.geo_mean_lower,
            slack: rep.slack_geo,
            verdict: pass_if(rep.slack_geo >= -tol::BOUND_ORDER_SLACK),
        });
        rows.push(ResultRow {
            key: "symmetrized".into(),
            n_or_p: i as f64,
            value: rep.min_norm,
            bound: rep.symmetrized,
            slack: rep.slack_sym,
            verdict: pass_if(rep.slack_sym >= -tol::BOUND_ORDER_SLACK),
        });
    }
    Ok(rows)
}

fn run_haagerup_gap(spec: &ExperimentSpec, rng: &mut ChaCha8Rng) -> Result<Vec<ResultRow>> {
    let dim = spec.usize_at("dim")?;
    let count = spec.usize_at("count")?;
    let mut rows = Vec::with_capacity(count);
    for i in 0..count {
        let x = random_tensor(rng, dim, dim, 2);
        let upper = crate::norms::haagerup_norm(&x, 4)?;
        let lower = schatten_op_norm(&x, SchattenIndex::Infinity, 4, 4)?;
        let gap = (upper.value - lower.value) / lower.value.max(1e-300);
        rows.push(ResultRow {
            key: "haagerup_gap".into(),
            n_or_p: i as f64,
            value: upper.value,
            bound: lower.value,
            slack: tol::HAAGERUP_GAP_REL - gap,
            verdict: pass_if(gap <= tol::HAAGERUP_GAP_REL && gap >= -tol::BOUND_ORDER_SLACK),
        });
    }
    Ok(rows)
}

fn run_group_threshold(spec: &ExperimentSpec) -> Result<Vec<ResultRow>> {
    let group = spec.group("group")?;
    let p = spec.number("p")?;
    let t = spec.number("t")?;
    let r_max = spec.usize_at("r_max")? as u32;
    let rep = lp_threshold_probe(group, p, t, r_max)?;
    let mut rows = vec![ResultRow {
        key: "ratio".into(),
        n_or_p: p,
        value: rep.ratio,
        bound: 1.0,
        slack: 1.0 - rep.ratio,
        verdict: Verdict::Info,
    }];
    for (r, s) in &rep.partial_sums {
        rows.push(ResultRow {
            key: "partial_sum".into(),
            n_or_p: *r as f64,
            value: *s,
            bound: f64::NAN,
            slack: f64::NAN,
            verdict: Verdict::Info,
        });
    }
    Ok(rows)
}

/// The one built-in chh fixture: the diagonal generator kernel on F2 x F2.
pub fn diag_generator_kernel() -> ProductKernel {
    let mut k = ProductKernel::zero(Group::FreeRank2, Group::FreeRank2, 1, 1);
    for &l in &LETTERS {
        k.add_to(
            Word::Free(vec![l]),
            Word::Free(vec![l]),
            Complex64::new(1.0, 0.0),
        )
        .expect("generators lie in ball(1)");
    }
    k
}

fn run_chh(spec: &ExperimentSpec) -> Result<Vec<ResultRow>> {
    let fixture = spec.text("fixture")?;
    if fixture != "diag_generators" {
        return Err(Error::Validation(format!(
            "unknown chh fixture `{fixture}` (expected diag_generators)"
        )));
    }
    let q = spec.schatten("q")?;
    let n_max = spec.usize_at("n_max")?;
    let f = diag_generator_kernel();
    let seq = chh_sequence(&f, q, n_max)?;
    Ok(seq
        .entries
        .iter()
        .map(|&(n, c)| ResultRow {
            key: "c_n".into(),
            n_or_p: n as f64,
            value: c,
            bound: f64::NAN,
            slack: f64::NAN,
            verdict: Verdict::Info,
        })
        .collect())
}

fn run_schur_bound(spec: &ExperimentSpec, rng: &mut ChaCha8Rng) -> Result<Vec<ResultRow>> {
    let t = spec.number("t")?;
    let r = spec.usize_at("r")? as u32;
    let count = spec.usize_at("count")?;
    let u = product_pd_multiplier(Group::FreeRank2, Group::FreeRank2, t, t, r, r)?;
    let ps = [
        SchattenIndex::ONE,
        SchattenIndex::TWO,
        SchattenIndex::new(4.0)?,
        SchattenIndex::Infinity,
    ];
    let mut rows = Vec::with_capacity(count * ps.len());
    for i in 0..count {
        let f = random_kernel(rng, Group::FreeRank2, Group::FreeRank2, r, r, 12);
        let uf = schur_multiply(&u, &f)?;
        for p in ps {
            let before = f.schatten_norm(p)?;
            let after = uf.schatten_norm(p)?;
            let slack = before - after;
            rows.push(ResultRow {
                key: format!("contraction_p_{p}"),
                n_or_p: i as f64,
                value: after,
                bound: before,
                slack,
                verdict: pass_if(slack >= -tol::CONTRACTION_SLACK * before.max(1.0)),
            });
        }
    }
    Ok(rows)
}

fn run_spectral_gap(spec: &ExperimentSpec) -> Result<Vec<ResultRow>> {
    let r = spec.usize_at("r")? as u32;
    let n_max = spec.usize_at("n_max")?;
    let mut f = GroupFunction::zero(Group::FreeRank2);
    for &l in &LETTERS {
        f.add_to(Word::Free(vec![l]), Complex64::new(1.0, 0.0));
    }
    let rep = gap_report(&f, r, n_max)?;
    Ok(vec![
        ResultRow {
            key: "l1_radius".into(),
            n_or_p: n_max as f64,
            value: rep.l1_radius.value,
            bound: f64::NAN,
            slack: f64::NAN,
            verdict: Verdict::Info,
        },
        ResultRow {
            key: "reduced_sq".into(),
            n_or_p: r as f64,
            value: rep.reduced_norm_sq,
            bound: f64::NAN,
            slack: f64::NAN,
            verdict: Verdict::Info,
        },
        ResultRow {
            key: "gap".into(),
            n_or_p: r as f64,
            value: rep.gap,
            bound: 1.0,
            slack: rep.gap - 1.0,
            verdict: Verdict::Info,
        },
    ])
}

fn random_real_symmetric_z(rng: &mut ChaCha8Rng, radius: u32) -> GroupFunction {
    let mut f = GroupFunction::zero(Group::Integers);
    for n in 0..=radius as i64 {
        let v = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
        f.add_to(Word::Int(n), v);
        if n != 0 {
            f.add_to(Word::Int(-n), v);
        }
    }
    f
}

fn run_z_equality(spec: &ExperimentSpec, rng: &mut ChaCha8Rng) -> Result<Vec<ResultRow>> {
    let count = spec.usize_at("count")?;
    let n_max = spec.usize_at("n_max")?;
    let radius = spec.usize_at("radius")? as u32;
    let mut rows = Vec::with_capacity(count);
    for i in 0..count {
        let f = random_real_symmetric_z(rng, radius);
        if f.support_size() == 0 {
            continue;
        }
        let l1 = l1_radius(&f, n_max)?;
        let red = z_reduced_norm(&f)?;
        let rel = (l1.value - red.value).abs() / red.value.max(1e-300);
        rows.push(ResultRow {
            key: "radius_equality".into(),
            n_or_p: i as f64,
            value: l1.value,
            bound: red.value,
            slack: 0.01 - rel,
            verdict: pass_if(rel <= 0.01),
        });
    }
    Ok(rows)
}

fn run_growth_bound(spec: &ExperimentSpec, rng: &mut ChaCha8Rng) -> Result<Vec<ResultRow>> {
    let count = spec.usize_at("count")?;
    let n_max = spec.usize_at("n_max")?;
    let radius = spec.usize_at("radius")? as u32;
    let mut rows = Vec::new();
    for i in 0..count {
        let f = random_function(rng, Group::Integers, radius, 5);
        if f.support_size() == 0 {
            continue;
        }
        let rep = growth_bound_check(&f, n_max)?;
        for row in rep.rows {
            rows.push(ResultRow {
                key: format!("growth_instance_{i}"),
                n_or_p: row.n as f64,
                value: row.lhs,
                bound: row.rhs,
                slack: row.rhs - row.lhs,
                verdict: pass_if(row.holds),
            });
        }
    }
    Ok(rows)
}

// --- emission -------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmitFormat {
    Csv,
    Json,
    Table,
    Plot,
}

impl EmitFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(EmitFormat::Csv),
            "json" => Ok(EmitFormat::Json),
            "table" => Ok(EmitFormat::Table),
            "plot" => Ok(EmitFormat::Plot),
            other => Err(Error::Validation(format!("unknown format `{other}`"))),
        }
    }
}

pub const CSV_HEADER: &str = "experiment,kind,key,n_or_p,value,bound,slack,verdict";

/// Fixed-schema CSV. `wall_time` is JSON-only so CSV bytes are reproducible.
pub fn to_csv(result: &ExperimentResult) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &result.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            result.spec.name,
            result.spec.kind.name(),
            row.key,
            row.n_or_p,
            row.value,
            row.bound,
            row.slack,
            row.verdict.name()
        )
        .unwrap();
    }
    out
}

pub fn to_json(result: &ExperimentResult) -> Result<String> {
    Ok(serde_json::to_string_pretty(result)?)
}

pub fn to_table(result: &ExperimentResult) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "experiment {} (kind {}, seed {}) -> {}",
        result.spec.name,
        result.spec.kind.name(),
        result.spec.seed,
        result.verdict.name()
    )
    .unwrap();
    writeln!(
        out,
        "{:<24} {:>10} {:>14} {:>14} {:>14} {:>8}",
        "key", "n_or_p", "value", "bound", "slack", "verdict"
    )
    .unwrap();
    for row in &result.rows {
        writeln!(
            out,
            "{:<24} {:>10} {:>14.6e} {:>14.6e} {:>14.6e} {:>8}",
            row.key,
            row.n_or_p,
            row.value,
            row.bound,
            row.slack,
            row.verdict.name()
        )
        .unwrap();
    }
    out
}

/// One SVG line plot per distinct row key: x the swept index, y the values
/// and (where finite) the bounds.
pub fn to_plots(result: &ExperimentResult) -> Vec<(String, String)> {
    let mut keys: Vec<&str> = result.rows.iter().map(|r| r.key.as_str()).collect();
    keys.dedup();
    keys.sort_unstable();
    keys.dedup();
    let mut plots = Vec::new();
    for key in keys {
        let pts: Vec<&ResultRow> = result.rows.iter().filter(|r| r.key == key).collect();
        if pts.len() < 2 {
            continue;
        }
        plots.push((format!("plot_{key}.svg"), render_svg(key, &pts)));
    }
    plots
}

fn render_svg(key: &str, rows: &[&ResultRow]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const M: f64 = 50.0;
    let xs: Vec<f64> = rows.iter().map(|r| r.n_or_p).collect();
    let mut ys: Vec<f64> = rows.iter().map(|r| r.value).collect();
    ys.extend(rows.iter().map(|r| r.bound).filter(|b| b.is_finite()));
    let (x0, x1) = min_max(&xs);
    let (y0, y1) = min_max(&ys);
    let sx = |x: f64| M + (x - x0) / (x1 - x0).max(1e-12) * (W - 2.0 * M);
    let sy = |y: f64| H - M - (y - y0) / (y1 - y0).max(1e-12) * (H - 2.0 * M);
    let path = |get: &dyn Fn(&ResultRow) -> f64| -> String {
        rows.iter()
            .filter(|r| get(r).is_finite())
            .enumerate()
            .map(|(i, r)| {
                format!(
                    "{}{:.2},{:.2}",
                    if i == 0 { "M" } else { "L" },
                    sx(r.n_or_p),
                    sy(get(r))
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let value_path = path(&|r: &ResultRow| r.value);
    let bound_path = path(&|r: &ResultRow| r.bound);
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
    writeln!(
        svg,
        r#"<text x="{}" y="24" font-family="monospace" font-size="14" text-anchor="middle">{key}</text>"#,
        W / 2.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"<line x1="{M}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        H - M,
        W - M,
        H - M
    )
    .unwrap();
    writeln!(
        svg,
        r#"<line x1="{M}" y1="{M}" x2="{M}" y2="{}" stroke="black"/>"#,
        H - M
    )
    .unwrap();
    for (label, x, y, anchor) in [
        (format!("{x0:.3}"), M, H - M + 18.0, "middle"),
        (format!("{x1:.3}"), W - M, H - M + 18.0, "middle"),
        (format!("{y0:.3}"), M - 6.0, H - M, "end"),
        (format!("{y1:.3}"), M - 6.0, M, "end"),
    ] {
        writeln!(
            svg,
            r#"<text x="{x:.1}" y="{y:.1}" font-family="monospace" font-size="11" text-anchor="{anchor}">{label}</text>"#
        )
        .unwrap();
    }
    if !value_path.is_empty() {
        writeln!(
            svg,
            r##"<path d="{value_path}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>"##
        )
        .unwrap();
    }
    if !bound_path.is_empty() {
        writeln!(
            svg,
            r##"<path d="{bound_path}" fill="none" stroke="#d62728" stroke-width="1.5" stroke-dasharray="5,3"/>"##
        )
        .unwrap();
    }
    writeln!(svg, "</svg>").unwrap();
    svg
}

fn min_max(xs: &[f64]) -> (f64, f64) {
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo.is_finite() && hi.is_finite() {
        (lo, hi)
    } else {
        (0.0, 1.0)
    }
}

/// Writes the requested formats plus a spec copy and a sha256 manifest into
/// `out_root/<name>/<timestamp>/` and returns the directory.
pub fn emit_to_dir(
    result: &ExperimentResult,
    out_root: &Path,
    formats: &[EmitFormat],
) -> Result<PathBuf> {
    let stamp = timestamp();
    let dir = out_root.join(&result.spec.name).join(stamp);
    std::fs::create_dir_all(&dir)?;
    let mut files: Vec<(String, Vec<u8>)> =
        vec![("spec.txt".into(), result.spec.to_text().into_bytes())];
    for format in formats {
        match format {
            EmitFormat::Csv => files.push(("result.csv".into(), to_csv(result).into_bytes())),
            EmitFormat::Json => files.push(("result.json".into(), to_json(result)?.into_bytes())),
            EmitFormat::Table => files.push(("result.txt".into(), to_table(result).into_bytes())),
            EmitFormat::Plot => {
                for (name, svg) in to_plots(result) {
                    files.push((name, svg.into_bytes()));
                }
            }
        }
    }
    let mut manifest = String::new();
    for (name, bytes) in &files {
        std::fs::write(dir.join(name), bytes)?;
        let digest = Sha256::digest(bytes);
        writeln!(manifest, "{}  {name}", hex::encode(digest)).unwrap();
    }
    std::fs::write(dir.join("manifest.txt"), manifest)?;
    Ok(dir)
}

/// Filesystem-safe UTC timestamp with nanosecond tiebreak so repeated runs
/// of the same experiment land in distinct directories.
fn timestamp() -> String {
    let now = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .unwrap_or_default();
    let secs = now.as_secs();
    let days = secs / 86_400;
    let (y, m, d) = civil_from_days(days as i64);
    let tod = secs % 86_400;
    format!(
        "{y:04}{m:02}{d:02}T{:02}{:02}{:02}.{:09}Z",
        tod / 3600,
        (tod % 3600) / 60,
        tod % 60,
        now.subsec_nanos()
    )
}

fn civil_from_days(z: i64) -> (i64, u32, u32) {
    let z = z + 719_468;
    let era = z.div_euclid(146_097);
    let doe = z.rem_euclid(146_097);
    let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
    let y = yoe + era * 400;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let d = (doy - (153 * mp + 2) / 5 + 1) as u32;
    let m = if mp < 10 { mp + 3 } else { mp - 9 } as u32;
    (if m <= 2 { y + 1 } else { y }, m, d)
}
