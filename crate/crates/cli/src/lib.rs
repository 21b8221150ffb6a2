//! Argument handling and output formatting for the `irred` binary.
//!
//! Every command produces a JSON value `{"schema": 1, "command": .., "result": ..}`.
//! Text and CSV output are renderings of that same value, so the three
//! formats always carry the same numbers.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use irred_core::counting::oracle::{irreducible_census, Ring};
use irred_core::counting::{classify_element, compare_report, count_m, ElementClass};
use irred_core::group::{
    davenport_constant, enumerate_minimal_zero_sums, groups_up_to_order, make_group, FiniteAbelianGroup,
};
use irred_core::number_field::ImaginaryQuadraticField;
use irred_core::series::coefficients::{c_mu_general, coefficients_top};
use irred_core::series::tauberian::{im_constants, EULER_GAMMA};
use irred_core::series::{g_inputs_for_field, g_value_h2, theorem2_check_h2, truncation_for_tolerance};
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

const CSV_HELP: &str = "\
CSV columns (one row per record; nested values are written as compact JSON):
  davenport  davenport,group,order
  zerosums   index,pattern.counts,pattern.total
  coeffs     B,C,c_d,c_dm1,c_dm2,davenport,h,inputs.g_class,inputs.z2_class
  gvalue     S,a_K,a_L,bound,d,g,x
  count      M,P,error_scale,pair_count,predicted,ratio,x
  classify   a,b,class,d,norm
  compare    same columns as count, one row per x
  selftest   check,pass

Exit status: 0 success, 1 computation error or failed self-test, 2 usage error.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "irred", version, about = "Counts of irreducible elements and their asymptotic constants", after_help = CSV_HELP)]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Significant digits for floating-point values
    #[arg(long, default_value_t = 10, global = true, value_parser = clap::value_parser!(u32).range(1..=17))]
    pub precision: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GroupArg {
    /// Invariant factors n1|n2|.., comma separated; empty for the trivial group
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub group: Vec<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Davenport constant of a finite abelian group
    Davenport(GroupArg),
    /// Minimal zero-sum multisets of a given length
    Zerosums {
        #[command(flatten)]
        group: GroupArg,
        /// Pattern length
        #[arg(long)]
        m: u32,
    },
    /// Top expansion coefficients and the constants C, B
    Coeffs {
        /// Cyclic class group of this order
        #[arg(long, conflicts_with = "group")]
        h: Option<u64>,
        /// Invariant factors of a general class group
        #[arg(long, value_delimiter = ',')]
        group: Option<Vec<u64>>,
        /// Per-class g_c(1), comma separated in class order; one value is used for every class
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        g: Vec<f64>,
        /// Per-class sums of N p^-2, same layout as --g
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "0")]
        z2: Vec<f64>,
    },
    /// g_c(1) of the nonprincipal class for a class-number-two field
    Gvalue {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        /// Tolerance for the truncated prime sum; fixes the cutoff x
        #[arg(long, default_value_t = 5e-5)]
        tol: f64,
    },
    /// Exact M(x) with the two-term prediction
    Count {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        x: f64,
    },
    /// Classify a + b w as zero, unit, prime, irreducible_nonprime or reducible
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
    },
    /// M(x) against the prediction for several cutoffs
    Compare {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, value_delimiter = ',', required = true)]
        xs: Vec<f64>,
    },
    /// Oracle equivalence checks
    Selftest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::Davenport(_) => "davenport",
            Self::Zerosums { .. } => "zerosums",
            Self::Coeffs { .. } => "coeffs",
            Self::Gvalue { .. } => "gvalue",
            Self::Count { .. } => "count",
            Self::Classify { .. } => "classify",
            Self::Compare { .. } => "compare",
            Self::Selftest => "selftest",
        }
    }
}

#[derive(Debug)]
enum Failure {
    Computation(String),
    /// The command ran but reported a failed check; output is still written.
    Checks(Value),
}

impl From<irred_core::Error> for Failure {
    fn from(e: irred_core::Error) -> Self {
        Self::Computation(e.to_string())
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn broadcast(what: &str, v: &[f64], h: usize) -> Result<Vec<f64>, Failure> {
    match v.len() {
        1 => Ok(vec![v[0]; h]),
        n if n == h => Ok(v.to_vec()),
        n => Err(Failure::Computation(format!(
            "--{what} has {n} values; expected 1 or {h}"
        ))),
    }
}

fn group_from(factors: &[u64]) -> Result<FiniteAbelianGroup, Failure> {
    Ok(make_group(factors)?)
}

#[derive(Serialize)]
struct GValueReport {
    d: i64,
    x: f64,
    #[serde(rename = "a_K")]
    a_k: f64,
    #[serde(rename = "a_L")]
    a_l: f64,
    #[serde(rename = "S")]
    s: f64,
    g: f64,
    bound: f64,
}

#[derive(Serialize)]
struct Classification {
    d: i64,
    a: i64,
    b: i64,
    norm: i64,
    class: ElementClass,
}

#[derive(Serialize)]
struct CheckRow {
    check: &'static str,
    pass: bool,
}

fn execute(command: &Command) -> Result<Value, Failure> {
    match command {
        Command::Davenport(g) => {
            let group = group_from(&g.group)?;
            Ok(json!({
                "group": group.invariant_factors(),
                "order": group.order(),
                "davenport": davenport_constant(&group)?,
            }))
        }
        Command::Zerosums { group, m } => {
            let g = group_from(&group.group)?;
            let patterns = enumerate_minimal_zero_sums(&g, *m)?;
            let rows: Vec<Value> = patterns
                .iter()
                .enumerate()
                .map(|(i, p)| json!({"index": i, "pattern": to_value(p)}))
                .collect();
            Ok(Value::Array(rows))
        }
        Command::Coeffs { h, group, g, z2 } => {
            let grp = match (h, group) {
                (Some(h), _) => FiniteAbelianGroup::cyclic(*h)?,
                (None, Some(f)) => group_from(f)?,
                (None, None) => return Err(Failure::Computation("give --h or --group".into())),
            };
            let n = grp.order() as usize;
            let set = coefficients_top(&grp, &broadcast("g", g, n)?, &broadcast("z2", z2, n)?)?;
            Ok(to_value(&set))
        }
        Command::Gvalue { d, tol } => {
            let field = ImaginaryQuadraticField::new(*d)?;
            let x = truncation_for_tolerance(*tol)?;
            let inputs = g_inputs_for_field(&field, x)?;
            let g = g_value_h2(&inputs)?;
            Ok(to_value(&GValueReport {
                d: *d,
                x,
                a_k: inputs.a_k,
                a_l: inputs.a_l,
                s: inputs.s.value,
                g: g.value,
                bound: g.error_bound,
            }))
        }
        Command::Count { d, x } => {
            let field = ImaginaryQuadraticField::new(*d)?;
            Ok(to_value(&count_m(&field, *x)?))
        }
        Command::Classify { d, a, b } => {
            let field = ImaginaryQuadraticField::new(*d)?;
            Ok(to_value(&Classification {
                d: *d,
                a: *a,
                b: *b,
                norm: field.norm(*a, *b),
                class: classify_element(&field, *a, *b)?,
            }))
        }
        Command::Compare { d, xs } => {
            let field = ImaginaryQuadraticField::new(*d)?;
            Ok(to_value(&compare_report(&field, xs)?))
        }
        Command::Selftest => {
            let rows = selftest()?;
            let value = to_value(&rows);
            if rows.iter().all(|r| r.pass) {
                Ok(value)
            } else {
                Err(Failure::Checks(value))
            }
        }
    }
}

fn counts_match_oracle(d: i64, max: u32) -> Result<bool, Failure> {
    let field = ImaginaryQuadraticField::new(d)?;
    let xs: Vec<f64> = (0..=max).map(f64::from).collect();
    let rows = compare_report(&field, &xs)?;
    let census = irreducible_census(&field, max as f64)?;
    Ok(xs
        .iter()
        .zip(&rows)
        .all(|(x, r)| r.m == census.irreducibles.iter().filter(|a| a.norm as f64 <= *x).count() as u64))
}

fn classification_matches_oracle(d: i64, max: i64) -> Result<bool, Failure> {
    let field = ImaginaryQuadraticField::new(d)?;
    let ring = Ring::new(&field);
    let units = ring.units();
    let census = irreducible_census(&field, max as f64)?;
    let reps: std::collections::HashSet<_> = census.irreducibles.iter().cloned().collect();
    for e in ring.elements_up_to(max) {
        let class = classify_element(&field, e.a, e.b)?;
        let says = matches!(class, ElementClass::Prime | ElementClass::IrreducibleNonprime);
        if says != reps.contains(&ring.canonical(&e, &units)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn coefficients_agree() -> Result<bool, Failure> {
    for group in groups_up_to_order(6) {
        let h = group.order() as usize;
        let d = davenport_constant(&group)?;
        let g: Vec<f64> = (0..h).map(|i| 0.1 * i as f64 - 0.2).collect();
        let z: Vec<Vec<f64>> = (0..h).map(|i| vec![0.05 * (i + 1) as f64; d.max(1) as usize]).collect();
        let z2: Vec<f64> = z.iter().map(|r| r[0]).collect();
        let top = coefficients_top(&group, &g, &z2)?;
        let mut want = vec![(d, top.c_d), (d - 1, top.c_dm1)];
        if let Some(c) = top.c_dm2 {
            want.push((d - 2, c));
        }
        for (mu, c) in want {
            if (c_mu_general(&group, mu, &g, &z)? - c).abs() > 1e-12 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn selftest() -> Result<Vec<CheckRow>, Failure> {
    let i = im_constants(3)?;
    let k1 = ImaginaryQuadraticField::new(-5)?;
    let k2 = ImaginaryQuadraticField::new(-15)?;
    Ok(vec![
        CheckRow {
            check: "count_vs_oracle_d-5",
            pass: counts_match_oracle(-5, 300)?,
        },
        CheckRow {
            check: "count_vs_oracle_d-15",
            pass: counts_match_oracle(-15, 300)?,
        },
        CheckRow {
            check: "count_vs_oracle_d-1",
            pass: counts_match_oracle(-1, 300)?,
        },
        CheckRow {
            check: "count_vs_oracle_d-2",
            pass: counts_match_oracle(-2, 300)?,
        },
        CheckRow {
            check: "classify_vs_oracle_d-5",
            pass: classification_matches_oracle(-5, 300)?,
        },
        CheckRow {
            check: "classify_vs_oracle_d-15",
            pass: classification_matches_oracle(-15, 300)?,
        },
        CheckRow {
            check: "c_mu_vs_closed_forms",
            pass: coefficients_agree()?,
        },
        CheckRow {
            check: "tauberian_low_order",
            pass: i[0] == 0.0 && (i[1] - 1.0).abs() < 1e-14 && (i[2] - EULER_GAMMA).abs() < 1e-10,
        },
        CheckRow {
            check: "class_number_two_identity",
            pass: theorem2_check_h2(&k1)? <= 1e-12 && theorem2_check_h2(&k2)? <= 1e-12,
        },
    ])
}

/// Rounds every non-integer number to `digits` significant digits.
fn round_floats(v: &mut Value, digits: u32) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            let r: f64 = format!("{:.*e}", digits as usize - 1, x)
                .parse()
                .expect("formatted float");
            *v = serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(|i| round_floats(i, digits)),
        Value::Object(map) => map.values_mut().for_each(|i| round_floats(i, digits)),
        _ => {}
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Number(_) | Value::Bool(_) => v.to_string(),
        other => serde_json::to_string(other).expect("serializable"),
    }
}

/// Flattens one record into `(column, cell)` pairs, descending into nested
/// objects with dotted names; arrays stay whole.
fn flatten_record(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                if inner.is_object() {
                    flatten_record(&key, inner, out);
                } else {
                    out.push((key, scalar_text(inner)));
                }
            }
        }
        other => out.push((prefix.to_string(), scalar_text(other))),
    }
}

fn records(result: &Value) -> Vec<Vec<(String, String)>> {
    let items: Vec<&Value> = match result {
        Value::Array(a) => a.iter().collect(),
        other => vec![other],
    };
    items
        .into_iter()
        .map(|item| {
            let mut row = Vec::new();
            flatten_record("", item, &mut row);
            row
        })
        .collect()
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render(format: Format, command: &str, result: &Value) -> String {
    match format {
        Format::Json => {
            let mut env = Map::new();
            env.insert("schema".into(), json!(SCHEMA_VERSION));
            env.insert("command".into(), json!(command));
            env.insert("result".into(), result.clone());
            let mut s = serde_json::to_string_pretty(&Value::Object(env)).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let rows = records(result);
            let mut s = String::new();
            if let Some(first) = rows.first() {
                let header: Vec<String> = first.iter().map(|(k, _)| csv_cell(k)).collect();
                s.push_str(&header.join(","));
                s.push('\n');
            }
            for row in &rows {
                let cells: Vec<String> = row.iter().map(|(_, v)| csv_cell(v)).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            s
        }
        Format::Text => {
            let rows = records(result);
            let mut s = String::new();
            for (i, row) in rows.iter().enumerate() {
                if i > 0 {
                    s.push('\n');
                }
                let width = row.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in row {
                    s.push_str(&format!("{k:<width$}  {v}\n"));
                }
            }
            s
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// writes to `out` / `err`. Returns the process exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let name = cli.command.name();
    let (mut value, code) = match execute(&cli.command) {
        Ok(v) => (v, 0),
        Err(Failure::Checks(v)) => (v, 1),
        Err(Failure::Computation(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 1;
        }
    };
    round_floats(&mut value, cli.precision);
    if out.write_all(render(cli.format, name, &value).as_bytes()).is_err() {
        return 1;
    }
    if code != 0 {
        let _ = writeln!(err, "error: self-test failed");
    }
    code
}
