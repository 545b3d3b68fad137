//! Batch command layer behind the `toricap` binary.
//!
//! Every command is a pure function from parsed inputs to rendered output,
//! so the whole surface is testable without spawning processes. The
//! binary only parses flags, reads files, and maps [`Error`] variants to
//! exit codes (0 ok, 1 parse/domain, 2 unsupported domain, 3 failed
//! verification).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::capacity::{
    asymptotic_slope, gh_capacity, CapacityTable, RsftInterval,
};
use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::fan::normal_fan;
use crate::geom::RationalPolytope;
use crate::oracle::l_k_bruteforce;
use crate::rational::{format_rational, Rational};
use crate::tangency::TangencyConstraint;
use crate::toric::CurveClass;

/// Quantities selectable in a capacity report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Lk,
    Uk,
    Gh,
    Slope,
    Width,
}

impl Quantity {
    pub fn parse_list(text: &str) -> Result<Vec<Quantity>> {
        let mut out = Vec::new();
        for part in text.split(',') {
            let q = match part.trim() {
                "lk" => Quantity::Lk,
                "uk" => Quantity::Uk,
                "gh" => Quantity::Gh,
                "slope" => Quantity::Slope,
                "width" => Quantity::Width,
                other => {
                    return Err(Error::Parse(format!(
                        "unknown quantity {other:?} (expected lk, uk, gh, slope, width)"
                    )))
                }
            };
            if !out.contains(&q) {
                out.push(q);
            }
        }
        if out.is_empty() {
            return Err(Error::Parse("empty quantity list".into()));
        }
        out.sort();
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(text: &str) -> Result<OutputFormat> {
        match text {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Parse(format!(
                "unknown format {other:?} (expected table, csv, json)"
            ))),
        }
    }
}

/// Report configuration; flags override the optional config file, which
/// overrides these defaults.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub k_max: usize,
    pub quantities: Vec<Quantity>,
    pub format: OutputFormat,
    pub oracle_check: bool,
    /// Compute through the brute-force oracle instead of the fan DP;
    /// the fallback for weakly convex domains.
    pub oracle_only: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            k_max: 5,
            quantities: vec![Quantity::Lk, Quantity::Uk, Quantity::Gh],
            format: OutputFormat::Table,
            oracle_check: false,
            oracle_only: false,
        }
    }
}

/// Config-file form of [`RunConfig`]; all fields optional.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub k_max: Option<usize>,
    pub quantities: Option<Vec<Quantity>>,
    pub format: Option<OutputFormat>,
    pub oracle_check: Option<bool>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<ConfigFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("config file: {e}")))
    }

    pub fn apply(&self, config: &mut RunConfig) {
        if let Some(k) = self.k_max {
            config.k_max = k;
        }
        if let Some(q) = &self.quantities {
            config.quantities = q.clone();
        }
        if let Some(f) = self.format {
            config.format = f;
        }
        if let Some(b) = self.oracle_check {
            config.oracle_check = b;
        }
    }
}

fn rational_value(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn class_value(class: &CurveClass) -> Value {
    let mut map = serde_json::Map::new();
    for (ray, &m) in class.fan().rays().iter().zip(class.multiplicities()) {
        if m > 0 {
            map.insert(format!("{},{}", ray.x(), ray.y()), json!(m));
        }
    }
    Value::Object(map)
}

fn check_k_max(k_max: usize) -> Result<usize> {
    if k_max < 1 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    Ok(k_max)
}

/// `caps`: the per-k capacity report.
pub fn run_caps(spec: &DomainSpec, config: &RunConfig) -> Result<String> {
    let omega = spec.resolve()?;
    check_k_max(config.k_max)?;
    if config.oracle_only {
        return run_caps_oracle(spec, &omega, config);
    }
    if !omega.is_strongly_convex() {
        return Err(Error::UnsupportedDomain(
            "domain is not strongly convex; rerun with --oracle for the \
             brute-force oracle-only report (lk/uk, small k)"
                .into(),
        ));
    }
    let table = CapacityTable::build(&omega, config.k_max)?;
    let widths = table.widths().clone();
    let slope = asymptotic_slope(&omega)?;

    let mut rows: Vec<(usize, Vec<(Quantity, Rational)>, CurveClass, CurveClass)> = Vec::new();
    for k in 1..=config.k_max {
        let (lk, lw) = table.l_k(k)?;
        let (uk, uw) = table.u_k(k)?;
        let mut cells = Vec::new();
        for q in &config.quantities {
            match q {
                Quantity::Lk => cells.push((Quantity::Lk, lk.clone())),
                Quantity::Uk => cells.push((Quantity::Uk, uk.clone())),
                Quantity::Gh => cells.push((Quantity::Gh, gh_capacity(&omega, k)?)),
                _ => {}
            }
        }
        if config.oracle_check && k <= 5 {
            let oracle_l = l_k_bruteforce(&omega, k, false)?;
            let oracle_u = l_k_bruteforce(&omega, k, true)?;
            if oracle_l != lk || oracle_u != uk {
                return Err(Error::Verification(format!(
                    "oracle mismatch at k = {k}: dp ({}, {}) vs oracle ({}, {})",
                    format_rational(&lk),
                    format_rational(&uk),
                    format_rational(&oracle_l),
                    format_rational(&oracle_u)
                )));
            }
        }
        rows.push((k, cells, lw, uw));
    }

    let scalar_quantities: Vec<(String, String)> = config
        .quantities
        .iter()
        .filter_map(|q| match q {
            Quantity::Slope => Some((
                "slope".to_string(),
                format!("{} (ray {})", format_rational(&slope.0), slope.1),
            )),
            Quantity::Width => Some((
                "widths".to_string(),
                format!(
                    "a = {}, b = {}",
                    format_rational(&widths.a),
                    format_rational(&widths.b)
                ),
            )),
            _ => None,
        })
        .collect();
    let column_quantities: Vec<Quantity> = config
        .quantities
        .iter()
        .copied()
        .filter(|q| matches!(q, Quantity::Lk | Quantity::Uk | Quantity::Gh))
        .collect();

    match config.format {
        OutputFormat::Csv => {
            let mut out = String::from("k");
            for q in &column_quantities {
                let name = match q {
                    Quantity::Lk => "lk",
                    Quantity::Uk => "uk",
                    Quantity::Gh => "gh",
                    _ => unreachable!(),
                };
                write!(out, ",{name}").unwrap();
            }
            out.push('\n');
            for (k, cells, _, _) in &rows {
                write!(out, "{k}").unwrap();
                for (_, value) in cells {
                    write!(out, ",{}", format_rational(value)).unwrap();
                }
                out.push('\n');
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let exact = widths.a == widths.b;
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|(k, cells, lw, uw)| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("k".into(), json!(k));
                    for (q, value) in cells {
                        let name = match q {
                            Quantity::Lk => "lk",
                            Quantity::Uk => "uk",
                            Quantity::Gh => "gh",
                            _ => unreachable!(),
                        };
                        obj.insert(name.into(), rational_value(value));
                    }
                    obj.insert("lk_witness".into(), class_value(lw));
                    obj.insert("uk_witness".into(), class_value(uw));
                    Value::Object(obj)
                })
                .collect();
            let value = json!({
                "domain": spec,
                "widths": {"a": rational_value(&widths.a), "b": rational_value(&widths.b)},
                "slope": rational_value(&slope.0),
                "exact": exact,
                "rows": json_rows,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&value).unwrap()))
        }
        OutputFormat::Table => {
            let mut out = format!("domain: {}\n", spec.describe());
            for (name, value) in &scalar_quantities {
                writeln!(out, "{name}: {value}").unwrap();
            }
            let header: Vec<String> = std::iter::once("k".to_string())
                .chain(column_quantities.iter().map(|q| {
                    match q {
                        Quantity::Lk => "lk",
                        Quantity::Uk => "uk",
                        Quantity::Gh => "gh",
                        _ => unreachable!(),
                    }
                    .to_string()
                }))
                .collect();
            let mut body: Vec<Vec<String>> = vec![header];
            for (k, cells, _, _) in &rows {
                let mut row = vec![k.to_string()];
                row.extend(cells.iter().map(|(_, v)| format_rational(v)));
                body.push(row);
            }
            out.push_str(&render_table(&body));
            Ok(out)
        }
    }
}

/// Oracle-only report for weakly convex domains: lk (and uk) for small k.
fn run_caps_oracle(spec: &DomainSpec, omega: &RationalPolytope, config: &RunConfig) -> Result<String> {
    let k_max = config.k_max.min(5);
    let want_uk = config.quantities.contains(&Quantity::Uk);
    let mut body = vec![if want_uk {
        vec!["k".into(), "lk".into(), "uk".into()]
    } else {
        vec!["k".into(), "lk".into()]
    }];
    for k in 1..=k_max {
        let lk = l_k_bruteforce(omega, k, false)?;
        let mut row = vec![k.to_string(), format_rational(&lk)];
        if want_uk {
            row.push(format_rational(&l_k_bruteforce(omega, k, true)?));
        }
        body.push(row);
    }
    let mut out = format!(
        "domain: {} (oracle-only mode, k <= {k_max})\n",
        spec.describe()
    );
    out.push_str(&render_table(&body));
    Ok(out)
}

fn render_table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut width = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            width[i] = width[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            write!(out, "{cell:>w$}", w = width[i]).unwrap();
        }
        out.push('\n');
    }
    out
}

/// `interval`: capacity interval for a tangency constraint.
pub fn run_interval(
    spec: &DomainSpec,
    constraint: &TangencyConstraint,
    format: OutputFormat,
) -> Result<String> {
    let omega = spec.resolve()?;
    let interval = crate::capacity::rsft_interval(&omega, constraint)?;
    match format {
        OutputFormat::Json => Ok(format!(
            "{}\n",
            serde_json::to_string_pretty(&interval_value(spec, &interval)).unwrap()
        )),
        _ => Ok(render_interval(spec, &interval)),
    }
}

fn interval_value(spec: &DomainSpec, interval: &RsftInterval) -> Value {
    json!({
        "domain": spec,
        "k": interval.k,
        "lower": rational_value(&interval.lower),
        "upper": interval.upper.as_ref().map(rational_value),
        "stable_upper": interval.stable_upper.as_ref().map(rational_value),
        "exact": interval.exact,
        "lax": interval.lax,
    })
}

fn render_interval(spec: &DomainSpec, interval: &RsftInterval) -> String {
    let mut out = format!("domain: {}\nk = {}\n", spec.describe(), interval.k);
    match &interval.upper {
        Some(upper) => {
            writeln!(
                out,
                "capacity interval: [{}, {}]",
                format_rational(&interval.lower),
                format_rational(upper)
            )
            .unwrap();
            writeln!(out, "exact: {}", if interval.exact { "yes (a = b)" } else { "no" })
                .unwrap();
            if let Some(stable) = &interval.stable_upper {
                writeln!(
                    out,
                    "stable upper bound (products with a closed factor): {}",
                    format_rational(stable)
                )
                .unwrap();
            }
        }
        None => {
            writeln!(
                out,
                "warning: constraint is not lax; only the lower bound applies"
            )
            .unwrap();
            writeln!(out, "lower bound: {}", format_rational(&interval.lower)).unwrap();
        }
    }
    out
}

/// `fan`: ray listing with support values and item weights.
pub fn run_fan(spec: &DomainSpec, resolve: bool, format: OutputFormat) -> Result<String> {
    let omega = spec.resolve()?;
    let base = normal_fan(&omega);
    let fan = if resolve { base.refine_smooth() } else { base.clone() };

    let mut rows = vec![vec![
        "ray".to_string(),
        "support".to_string(),
        "weight".to_string(),
        "inserted".to_string(),
    ]];
    let mut json_rays = Vec::new();
    for ray in fan.rays() {
        let support = omega.support_value(ray);
        let weight = if ray.is_nonnegative() {
            Some(num_bigint::BigInt::from(1) + ray.x() + ray.y())
        } else {
            None
        };
        let inserted = base.ray_index(ray).is_none();
        rows.push(vec![
            format!("{ray}{}", if inserted { " *" } else { "" }),
            format_rational(&support),
            weight.as_ref().map_or("-".into(), |w| w.to_string()),
            if inserted { "yes".into() } else { "".into() },
        ]);
        json_rays.push(json!({
            "ray": [ray.x().to_string(), ray.y().to_string()],
            "support": rational_value(&support),
            "weight": weight.map(|w| w.to_string()),
            "inserted": inserted,
        }));
    }

    match format {
        OutputFormat::Json => {
            let value = json!({
                "domain": spec,
                "resolved": resolve,
                "smooth": fan.is_smooth(),
                "rays": json_rays,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&value).unwrap()))
        }
        _ => {
            let mut out = format!(
                "domain: {}\nfan: {} rays ({}){}\n",
                spec.describe(),
                fan.ray_count(),
                if fan.is_smooth() { "smooth" } else { "singular" },
                if resolve { ", resolved" } else { "" },
            );
            out.push_str(&render_table(&rows));
            if resolve && fan.ray_count() > base.ray_count() {
                out.push_str("* = ray inserted by the resolution\n");
            }
            Ok(out)
        }
    }
}

/// `plot`: CSV of `(k, lk, uk, gh, slope * k)` for `k = 1 ..= k_max`.
pub fn run_plot(spec: &DomainSpec, k_max: usize) -> Result<String> {
    let omega = spec.resolve()?;
    check_k_max(k_max)?;
    if !omega.is_strongly_convex() {
        return Err(Error::UnsupportedDomain(
            "plot data needs a strongly convex domain".into(),
        ));
    }
    let table = CapacityTable::build(&omega, k_max)?;
    let (slope, _) = asymptotic_slope(&omega)?;
    let mut out = String::from("k,lk,uk,gh,slope_k\n");
    for k in 1..=k_max {
        let (lk, _) = table.l_k(k)?;
        let (uk, _) = table.u_k(k)?;
        let gh = gh_capacity(&omega, k)?;
        let slope_k = &slope * Rational::from_integer(k.into());
        writeln!(
            out,
            "{k},{},{},{},{}",
            format_rational(&lk),
            format_rational(&uk),
            format_rational(&gh),
            format_rational(&slope_k)
        )
        .unwrap();
    }
    Ok(out)
}

/// One golden fixture case: a domain plus expected per-k values.
#[derive(Clone, Debug, Deserialize)]
struct GoldenCase {
    name: String,
    domain: DomainSpec,
    rows: Vec<GoldenRow>,
}

#[derive(Clone, Debug, Deserialize)]
struct GoldenRow {
    k: usize,
    lk: String,
    #[serde(default)]
    uk: Option<String>,
    #[serde(default)]
    gh: Option<String>,
}

/// The golden fixtures compiled into the binary.
pub const GOLDEN_FIXTURES: &str = include_str!("../fixtures/golden.json");

/// `verify --golden`: recompute every fixture row and compare exactly.
pub fn run_verify_golden() -> Result<String> {
    let cases: Vec<GoldenCase> = serde_json::from_str(GOLDEN_FIXTURES)
        .map_err(|e| Error::Parse(format!("golden fixtures: {e}")))?;
    let mut out = String::new();
    for case in &cases {
        let omega = case.domain.resolve()?;
        let k_max = case.rows.iter().map(|r| r.k).max().unwrap_or(1);
        let table = CapacityTable::build(&omega, k_max)?;
        for row in &case.rows {
            let (lk, _) = table.l_k(row.k)?;
            expect_equal(&case.name, row.k, "lk", &lk, &row.lk)?;
            if let Some(uk) = &row.uk {
                let (value, _) = table.u_k(row.k)?;
                expect_equal(&case.name, row.k, "uk", &value, uk)?;
            }
            if let Some(gh) = &row.gh {
                let value = gh_capacity(&omega, row.k)?;
                expect_equal(&case.name, row.k, "gh", &value, gh)?;
            }
        }
        writeln!(out, "ok: {} ({} rows)", case.name, case.rows.len()).unwrap();
    }
    writeln!(out, "all {} golden cases passed", cases.len()).unwrap();
    Ok(out)
}

fn expect_equal(
    case: &str,
    k: usize,
    what: &str,
    got: &Rational,
    expected: &str,
) -> Result<()> {
    let expected_value = crate::rational::parse_rational(expected)?;
    if *got != expected_value {
        return Err(Error::Verification(format!(
            "golden case {case:?}, k = {k}: {what} = {} but fixture says {expected}",
            format_rational(got)
        )));
    }
    Ok(())
}

/// `verify --domain`: cross-check the DP against the oracle on one domain.
pub fn run_verify_domain(spec: &DomainSpec, k_max: usize) -> Result<String> {
    let omega = spec.resolve()?;
    let k_max = check_k_max(k_max)?.min(5);
    if !omega.is_strongly_convex() {
        return Err(Error::UnsupportedDomain(
            "cross-check needs a strongly convex domain (the DP side); \
             weakly convex domains only have the oracle"
                .into(),
        ));
    }
    let table = CapacityTable::build(&omega, k_max)?;
    let mut out = String::new();
    for k in 1..=k_max {
        let (lk, _) = table.l_k(k)?;
        let (uk, _) = table.u_k(k)?;
        let oracle_l = l_k_bruteforce(&omega, k, false)?;
        let oracle_u = l_k_bruteforce(&omega, k, true)?;
        if lk != oracle_l || uk != oracle_u {
            return Err(Error::Verification(format!(
                "oracle mismatch at k = {k}: dp ({}, {}) vs oracle ({}, {})",
                format_rational(&lk),
                format_rational(&uk),
                format_rational(&oracle_l),
                format_rational(&oracle_u)
            )));
        }
        writeln!(
            out,
            "ok: k = {k}: lk = {}, uk = {} (dp == oracle)",
            format_rational(&lk),
            format_rational(&uk)
        )
        .unwrap();
    }
    Ok(out)
}

/// Parses a tangency-constraint file.
pub fn parse_constraint(text: &str) -> Result<TangencyConstraint> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("constraint: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::parse_domain;

    fn spec(text: &str) -> DomainSpec {
        parse_domain(text).unwrap()
    }

    #[test]
    fn caps_table_for_the_example_region() {
        let config = RunConfig::default();
        let out = run_caps(&spec(r#"{"kind":"example_r","r":"4"}"#), &config).unwrap();
        assert!(out.contains("7/4"));
        assert!(out.contains("11/4"));
        assert!(out.contains("13/4"));
    }

    #[test]
    fn caps_csv_is_exact() {
        let config = RunConfig {
            format: OutputFormat::Csv,
            quantities: vec![Quantity::Lk, Quantity::Gh],
            ..RunConfig::default()
        };
        let out = run_caps(&spec(r#"{"kind":"example_r","r":"4"}"#), &config).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "k,lk,gh");
        assert_eq!(lines[1], "1,1,1");
        assert_eq!(lines[2], "2,7/4,7/4");
        assert_eq!(lines[3], "3,2,5/2");
        assert_eq!(lines[4], "4,11/4,13/4");
        assert_eq!(lines[5], "5,3,4");
    }

    #[test]
    fn caps_json_round_trips_the_domain() {
        let config = RunConfig {
            format: OutputFormat::Json,
            k_max: 2,
            ..RunConfig::default()
        };
        let out = run_caps(&spec(r#"{"kind":"polydisk","a":"1","b":"2"}"#), &config).unwrap();
        let value: Value = serde_json::from_str(&out).unwrap();
        let domain: DomainSpec = serde_json::from_value(value["domain"].clone()).unwrap();
        assert_eq!(domain, spec(r#"{"kind":"polydisk","a":"1","b":"2"}"#));
        assert_eq!(value["rows"][1]["lk"], "2");
        assert_eq!(value["rows"][1]["uk"], "3");
        assert_eq!(value["exact"], Value::Bool(false));
    }

    #[test]
    fn caps_rejects_weakly_convex_without_oracle_mode() {
        let skew = r#"{"kind":"polytope","vertices":[["0","0"],["1","0"],["2","1"],["0","1"]]}"#;
        let err = run_caps(&spec(skew), &RunConfig::default()).unwrap_err();
        assert!(matches!(err, Error::UnsupportedDomain(_)));
        assert_eq!(err.exit_code(), 2);

        let config = RunConfig {
            oracle_only: true,
            ..RunConfig::default()
        };
        let out = run_caps(&spec(skew), &config).unwrap();
        assert!(out.contains("oracle-only"));
    }

    #[test]
    fn caps_oracle_check_passes() {
        let config = RunConfig {
            oracle_check: true,
            k_max: 3,
            ..RunConfig::default()
        };
        run_caps(&spec(r#"{"kind":"example_r","r":"4"}"#), &config).unwrap();
    }

    #[test]
    fn interval_command_output() {
        let pt = parse_constraint(r#"{"points":[[0]],"dim":4}"#).unwrap();
        let out = run_interval(&spec(r#"{"kind":"example_r","r":"4"}"#), &pt, OutputFormat::Table)
            .unwrap();
        assert!(out.contains("[1, 1]"));
        assert!(out.contains("exact: yes"));

        let non_lax = parse_constraint(r#"{"points":[[0,0]],"dim":4}"#).unwrap();
        let out = run_interval(
            &spec(r#"{"kind":"example_r","r":"4"}"#),
            &non_lax,
            OutputFormat::Table,
        )
        .unwrap();
        assert!(out.contains("not lax"));
        assert!(out.contains("7/4"));

        let codim4 = parse_constraint(r#"{"points":[[0],[0]],"dim":4}"#).unwrap();
        let out = run_interval(
            &spec(r#"{"kind":"polydisk","a":"1","b":"2"}"#),
            &codim4,
            OutputFormat::Table,
        )
        .unwrap();
        assert!(out.contains("[2, 3]"));
        assert!(out.contains("exact: no"));
    }

    #[test]
    fn fan_listing_marks_inserted_rays() {
        let out = run_fan(&spec(r#"{"kind":"example_r","r":"4"}"#), true, OutputFormat::Table)
            .unwrap();
        assert!(out.contains("(1,0) *"));
        assert!(out.contains("(3,1) *"));
        assert!(out.contains("(2,1) *"));
        assert!(out.contains("(1,1) *"));
        assert!(out.contains("(4,1)"));
        let out = run_fan(&spec(r#"{"kind":"ball","capacity":"1"}"#), true, OutputFormat::Table)
            .unwrap();
        assert!(!out.contains('*'),
            "already smooth fan should have no inserted rays:\n{out}");
    }

    #[test]
    fn plot_rows_match_published_square_values() {
        let out = run_plot(&spec(r#"{"kind":"polydisk","a":"1","b":"1"}"#), 4).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "k,lk,uk,gh,slope_k");
        assert_eq!(lines[1], "1,1,1,1,1/2");
        assert_eq!(lines[2], "2,2,2,2,1");
        assert_eq!(lines[3], "3,2,2,3,3/2");
        assert_eq!(lines[4], "4,3,3,4,2");
    }

    #[test]
    fn golden_fixtures_pass() {
        let out = run_verify_golden().unwrap();
        assert!(out.contains("all"));
        assert!(out.contains("passed"));
    }

    #[test]
    fn verify_domain_cross_checks() {
        let out = run_verify_domain(&spec(r#"{"kind":"example_r","r":"4"}"#), 4).unwrap();
        assert!(out.contains("dp == oracle"));
    }

    #[test]
    fn config_file_merging() {
        let file = ConfigFile::parse(r#"{"k_max": 7, "format": "csv"}"#).unwrap();
        let mut config = RunConfig::default();
        file.apply(&mut config);
        assert_eq!(config.k_max, 7);
        assert_eq!(config.format, OutputFormat::Csv);
        assert_eq!(config.quantities, RunConfig::default().quantities);
        assert!(ConfigFile::parse(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn quantity_parsing() {
        assert_eq!(
            Quantity::parse_list("lk,uk,gh").unwrap(),
            vec![Quantity::Lk, Quantity::Uk, Quantity::Gh]
        );
        assert!(Quantity::parse_list("lk,bogus").is_err());
        assert!(Quantity::parse_list("").is_err());
    }
}
