//! Command-line front end: sequence export, path enumeration, bijection
//! and identity verification.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use latpath::bijection::{map_f, map_g, weighted_count};
use latpath::brute::{enumerate_free, enumerate_primary, EnumerationBudget};
use latpath::count::{
    count_free_coeff, count_free_convolution, count_free_rec, count_primary1,
    count_primary1_convolution, count_primary_direct,
};
use latpath::paths::Classification;
use latpath::riordan::{delannoy, riordan_for, riordan_transform, schroeder};
use latpath::series::solve_system;
use latpath::stats::{census, delannoy_diag_expectation, expected_steps, expected_vertical, psi, zeta};
use latpath::steps::{Family, StepSet};
use latpath::Error;

#[derive(Parser)]
#[command(name = "latpath", version, about = "Exact enumeration of lattice paths with vertical steps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print counting sequences over a range of widths.
    Count {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum)]
        kind: CountKind,
        /// Depth, required for the free and primary kinds.
        #[arg(long)]
        m: Option<i64>,
        /// Width range, inclusive: "a..b" or a single value.
        #[arg(long)]
        n: RangeArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the paths themselves at small sizes.
    Enumerate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum)]
        kind: PathKind,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: RangeArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify the weighted-path bijection and print the common counts.
    Bijection {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: RangeArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Step statistics over depth-one primary paths.
    Stats {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum)]
        kind: StatKind,
        #[arg(long)]
        n: RangeArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Riordan array entries and their specialisations.
    Riordan {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum)]
        kind: RiordanKind,
        /// Largest row index for the array kinds.
        #[arg(long, default_value_t = 8)]
        rows: usize,
        /// Index range for the Schroeder kind.
        #[arg(long, default_value = "0..8")]
        n: RangeArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Coefficients of the solved generating-function system.
    Series {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 10)]
        order: usize,
        /// Restrict the output to one depth.
        #[arg(long)]
        m: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the identity suite and report pass/fail per identity.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 5)]
        max_n: i64,
        /// Run a single identity by name.
        #[arg(long)]
        identity: Option<String>,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// One of A, B, C, D, E, or "custom" with --steps.
    #[arg(long)]
    family: String,
    /// Serialized step set for --family custom, e.g. "V,U1,U0,D1".
    #[arg(long)]
    steps: Option<String>,
    /// Maximal rise N for the lettered families.
    #[arg(long = "N")]
    big_n: Option<u64>,
    /// Maximal drop K for the families that take one.
    #[arg(long = "K")]
    big_k: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    Free,
    Primary,
    Primary0,
    Primary1,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathKind {
    Free,
    Primary,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatKind {
    Census,
    ExpectedVertical,
    ExpectedSteps,
    DelannoyDiag,
}

#[derive(Clone, Copy, ValueEnum)]
enum RiordanKind {
    Array,
    Delannoy,
    Schroeder,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

/// Inclusive "a..b" range (a single value stands for "a..a").
#[derive(Clone, Copy)]
struct RangeArg {
    lo: i64,
    hi: i64,
}

impl RangeArg {
    fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<RangeArg, String> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad bound {t:?}: {e}"));
        if let Some((a, b)) = s.split_once("..") {
            let lo = parse(a)?;
            let hi = parse(b)?;
            if lo > hi {
                return Err(format!("empty range {s:?}"));
            }
            Ok(RangeArg { lo, hi })
        } else {
            let v = parse(s)?;
            Ok(RangeArg { lo: v, hi: v })
        }
    }
}

impl FamilyArgs {
    fn resolve(&self) -> Result<(StepSet, serde_json::Value), Error> {
        let label = self.family.to_ascii_uppercase();
        if label == "CUSTOM" {
            let text = self.steps.as_deref().ok_or_else(|| {
                Error::Parameter("--family custom needs --steps".into())
            })?;
            let set: StepSet = text.parse()?;
            let params = json!({ "steps": set_to_string(&set) });
            return Ok((set, params));
        }
        let family: Family = label.parse()?;
        let need_n = !matches!(family, Family::E);
        let need_k = matches!(family, Family::A | Family::D);
        let big_n = match (need_n, self.big_n) {
            (true, Some(v)) => v,
            (true, None) => {
                return Err(Error::Parameter(format!("family {label} needs --N")))
            }
            (false, _) => 0,
        };
        let big_k = match (need_k, self.big_k) {
            (true, Some(v)) => v,
            (true, None) => {
                return Err(Error::Parameter(format!("family {label} needs --K")))
            }
            (false, _) => 1,
        };
        let set = StepSet::family(family, big_n, big_k)?;
        let mut params = serde_json::Map::new();
        if need_n {
            params.insert("N".into(), json!(big_n));
        }
        if need_k {
            params.insert("K".into(), json!(big_k));
        }
        Ok((set, serde_json::Value::Object(params)))
    }

    fn label(&self) -> String {
        self.family.to_ascii_uppercase()
    }
}

fn set_to_string(set: &StepSet) -> String {
    format!("{set}")
}

fn budget() -> EnumerationBudget {
    let mut b = EnumerationBudget::default();
    if let Ok(text) = std::env::var("LATPATH_BUDGET") {
        if let Ok(v) = text.parse::<usize>() {
            b.max_paths = v;
        }
    }
    b
}

/// Rows of labelled output, rendered per format.
struct Document {
    family: String,
    params: serde_json::Value,
    rows: Vec<(String, Vec<String>)>,
}

impl Document {
    fn emit(&self, format: Format) {
        match format {
            Format::Text => {
                if self.rows.len() == 1 {
                    println!("{}", self.rows[0].1.join(","));
                } else {
                    for (key, values) in &self.rows {
                        println!("{key}: {}", values.join(","));
                    }
                }
            }
            Format::Csv => {
                for (key, values) in &self.rows {
                    println!("{key},{}", values.join(","));
                }
            }
            Format::Json => {
                let values: Vec<serde_json::Value> = if self.rows.len() == 1 {
                    self.rows[0].1.iter().map(|v| json!(v)).collect()
                } else {
                    self.rows
                        .iter()
                        .map(|(key, values)| json!({ "key": key, "values": values }))
                        .collect()
                };
                let doc = json!({
                    "family": self.family,
                    "params": self.params,
                    "values": values,
                });
                println!("{doc}");
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parameter(_) | Error::Parse(_) | Error::Precondition(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Count { family, kind, m, n, format } => {
            let (set, params) = family.resolve()?;
            let mut values = Vec::new();
            for width in n.iter() {
                let v = match kind {
                    CountKind::Free => {
                        let m = m.ok_or_else(|| Error::Parameter("--kind free needs --m".into()))?;
                        count_free_rec(&set, m, width)
                    }
                    CountKind::Primary => {
                        let m = m.ok_or_else(|| Error::Parameter("--kind primary needs --m".into()))?;
                        count_primary_direct(&set, m, width)?
                    }
                    CountKind::Primary0 => count_primary_direct(&set, 0, width)?,
                    CountKind::Primary1 => count_primary_direct(&set, 1, width)?,
                };
                values.push(v.to_string());
            }
            Document {
                family: family.label(),
                params,
                rows: vec![("values".into(), values)],
            }
            .emit(format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { family, kind, m, n, format } => {
            let (set, params) = family.resolve()?;
            let budget = budget();
            let mut rows = Vec::new();
            for width in n.iter() {
                let paths = match kind {
                    PathKind::Free => enumerate_free(&set, m, width, &budget)?,
                    PathKind::Primary => enumerate_primary(&set, m, width, &budget)?,
                };
                rows.push((format!("n={width}"), paths.iter().map(|p| p.to_string()).collect()));
            }
            Document { family: family.label(), params, rows }.emit(format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bijection { family, m, n, format } => {
            let (set, params) = family.resolve()?;
            let budget = budget();
            let mut values = Vec::new();
            for width in n.iter() {
                let primaries = enumerate_primary(&set, m, width, &budget)?;
                for pi in &primaries {
                    if pi.is_empty() {
                        // the length-zero path carries no weights
                        continue;
                    }
                    let wp = map_g(&set, pi)?;
                    let back = map_f(&set, &wp, m)?;
                    if back != *pi {
                        return Err(Error::Internal(format!(
                            "bijection round trip failed on {pi}"
                        )));
                    }
                }
                let count = BigInt::from(primaries.len());
                if width >= 1 {
                    let weighted = weighted_count(&set, m, width)?;
                    if weighted != count {
                        return Err(Error::Internal(format!(
                            "weighted count {weighted} disagrees with the enumeration {count} at n = {width}"
                        )));
                    }
                }
                values.push(count.to_string());
            }
            Document {
                family: family.label(),
                params,
                rows: vec![("values".into(), values)],
            }
            .emit(format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Stats { family, kind, n, format } => {
            let (set, params) = family.resolve()?;
            let budget = budget();
            let mut rows = Vec::new();
            match kind {
                StatKind::Census => {
                    for width in n.iter() {
                        let c = census(&set, width, &budget)?;
                        let mut values: Vec<String> = c
                            .counts
                            .iter()
                            .map(|(s, v)| format!("{s}={v}"))
                            .collect();
                        values.push(format!("total={}", c.total));
                        rows.push((format!("n={width}"), values));
                    }
                }
                StatKind::ExpectedVertical => {
                    let values = n
                        .iter()
                        .map(|w| expected_vertical(&set, w).map(|v| v.to_string()))
                        .collect::<Result<Vec<_>, _>>()?;
                    rows.push(("values".into(), values));
                }
                StatKind::ExpectedSteps => {
                    let values = n
                        .iter()
                        .map(|w| expected_steps(&set, w).map(|v| v.to_string()))
                        .collect::<Result<Vec<_>, _>>()?;
                    rows.push(("values".into(), values));
                }
                StatKind::DelannoyDiag => {
                    let values = n
                        .iter()
                        .map(|w| delannoy_diag_expectation(w).map(|v| v.to_string()))
                        .collect::<Result<Vec<_>, _>>()?;
                    rows.push(("values".into(), values));
                }
            }
            Document { family: family.label(), params, rows }.emit(format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Riordan { family, kind, rows: size, n, format } => {
            let (set, params) = family.resolve()?;
            let mut rows = Vec::new();
            match kind {
                RiordanKind::Array => {
                    let pair = riordan_for(&set, size)?;
                    for i in 0..=size {
                        rows.push((
                            format!("row{i}"),
                            pair.row(i).iter().map(|v| v.to_string()).collect(),
                        ));
                    }
                }
                RiordanKind::Delannoy => {
                    for i in 0..=size as i64 {
                        rows.push((
                            format!("row{i}"),
                            (0..=size as i64).map(|j| delannoy(i, j).to_string()).collect(),
                        ));
                    }
                }
                RiordanKind::Schroeder => {
                    let values = n
                        .iter()
                        .map(|w| schroeder(w).map(|v| v.to_string()))
                        .collect::<Result<Vec<_>, _>>()?;
                    rows.push(("values".into(), values));
                }
            }
            Document { family: family.label(), params, rows }.emit(format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Series { family, order, m, format } => {
            let (set, params) = family.resolve()?;
            let solution = solve_system(&set, order)?;
            let depths: Vec<usize> = match m {
                Some(m) => {
                    if m < 0 || m as usize >= solution.len() {
                        return Err(Error::Parameter(format!(
                            "depth {m} is outside the system's range 0..{}",
                            solution.len() - 1
                        )));
                    }
                    vec![m as usize]
                }
                None => (0..solution.len()).collect(),
            };
            let mut rows = Vec::new();
            for depth in depths {
                let coeffs = solution[depth].integer_coefficients()?;
                rows.push((
                    format!("P{depth}"),
                    coeffs.iter().map(|c| c.to_string()).collect(),
                ));
            }
            Document { family: family.label(), params, rows }.emit(format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { family, max_n, identity } => {
            let (set, _) = family.resolve()?;
            verify_suite(&set, max_n, identity.as_deref())
        }
    }
}

type IdentityResult = Result<Option<String>, Error>; // Some(reason) means skipped

fn verify_suite(set: &StepSet, max_n: i64, only: Option<&str>) -> Result<ExitCode, Error> {
    let checks: Vec<(&str, fn(&StepSet, i64) -> IdentityResult)> = vec![
        ("primary1-ratio", check_primary1_ratio),
        ("free-convolution", check_free_convolution),
        ("primary1-convolution", check_primary1_convolution),
        ("coefficient-extraction", check_coefficient_extraction),
        ("primary-census", check_census),
        ("bijection-roundtrip", check_bijection),
        ("series-counts", check_series),
        ("riordan-entries", check_riordan),
        ("rotation-pairing", check_rotation),
    ];
    if let Some(name) = only {
        if !checks.iter().any(|(n, _)| *n == name) {
            return Err(Error::Parameter(format!("unknown identity {name:?}")));
        }
    }
    let mut failed = false;
    for (name, check) in checks {
        if let Some(filter) = only {
            if filter != name {
                continue;
            }
        }
        match check(set, max_n) {
            Ok(None) => println!("PASS {name}"),
            Ok(Some(reason)) => println!("SKIP {name}: {reason}"),
            Err(e) => {
                println!("FAIL {name}: {e}");
                failed = true;
            }
        }
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn check_primary1_ratio(set: &StepSet, max_n: i64) -> IdentityResult {
    if !set.has_vertical() {
        return Ok(Some("needs the vertical step".into()));
    }
    for n in 1..=max_n {
        let lhs = BigInt::from(n) * count_primary1(set, n)?;
        let rhs = count_free_rec(set, 1, n) - count_free_rec(set, 0, n);
        if lhs != rhs {
            return Err(Error::Internal(format!("n = {n}: {lhs} != {rhs}")));
        }
    }
    Ok(None)
}

fn check_free_convolution(set: &StepSet, max_n: i64) -> IdentityResult {
    if !set.has_vertical() {
        return Ok(Some("needs the vertical step".into()));
    }
    for m in 0..=2i64 {
        for n in 0..=max_n {
            let lhs = count_free_convolution(set, m, n)?;
            let rhs = count_free_rec(set, m, n);
            if lhs != rhs {
                return Err(Error::Internal(format!("m = {m}, n = {n}: {lhs} != {rhs}")));
            }
        }
    }
    Ok(None)
}

fn check_primary1_convolution(set: &StepSet, max_n: i64) -> IdentityResult {
    if !set.has_vertical() {
        return Ok(Some("needs the vertical step".into()));
    }
    for n in 1..=max_n {
        let lhs = count_primary1_convolution(set, n)?;
        let rhs = count_primary1(set, n)?;
        if lhs != rhs {
            return Err(Error::Internal(format!("n = {n}: {lhs} != {rhs}")));
        }
    }
    Ok(None)
}

fn check_coefficient_extraction(set: &StepSet, max_n: i64) -> IdentityResult {
    for m in 0..=2i64 {
        for n in 0..=max_n {
            let lhs = count_free_coeff(set, m, n, set.has_vertical())?;
            let rhs = count_free_rec(set, m, n);
            if lhs != rhs {
                return Err(Error::Internal(format!("m = {m}, n = {n}: {lhs} != {rhs}")));
            }
        }
    }
    Ok(None)
}

fn check_census(set: &StepSet, max_n: i64) -> IdentityResult {
    let budget = budget();
    for n in 1..=max_n.min(5) {
        let c = census(set, n, &budget)?;
        if c.total != count_free_rec(set, 1, n) {
            return Err(Error::Internal(format!("total mismatch at n = {n}")));
        }
        if set.has_vertical() {
            let verticals = c
                .counts
                .get(&latpath::steps::Step::Vertical)
                .cloned()
                .unwrap_or_default();
            if verticals != count_free_rec(set, 0, n) {
                return Err(Error::Internal(format!("vertical census mismatch at n = {n}")));
            }
        }
    }
    Ok(None)
}

fn check_bijection(set: &StepSet, max_n: i64) -> IdentityResult {
    if !set.has_vertical() {
        return Ok(Some("needs the vertical step".into()));
    }
    if !set.is_finite() {
        return Ok(Some("needs a finite step set".into()));
    }
    let budget = budget();
    for m in 0..=2i64 {
        for n in 0..=max_n.min(4) {
            let primaries = enumerate_primary(set, m, n, &budget)?;
            for pi in &primaries {
                if pi.is_empty() {
                    continue;
                }
                let wp = map_g(set, pi)?;
                let back = map_f(set, &wp, m)?;
                if back != *pi {
                    return Err(Error::Internal(format!("round trip failed on {pi}")));
                }
            }
            if n >= 1 {
                let weighted = weighted_count(set, m, n)?;
                if weighted != BigInt::from(primaries.len()) {
                    return Err(Error::Internal(format!(
                        "weighted count mismatch at m = {m}, n = {n}"
                    )));
                }
            }
        }
    }
    Ok(None)
}

fn check_series(set: &StepSet, max_n: i64) -> IdentityResult {
    if !set.has_vertical() {
        return Ok(Some("needs the vertical step".into()));
    }
    if !set.is_finite() {
        return Ok(Some("needs a finite step set".into()));
    }
    let order = max_n.clamp(1, 8) as usize;
    let solution = solve_system(set, order)?;
    for (depth, series) in solution.iter().enumerate() {
        for n in 0..=order {
            let expect = count_primary_direct(set, depth as i64, n as i64)?;
            if series.coefficient(n) != num_rational::BigRational::from_integer(expect.clone()) {
                return Err(Error::Internal(format!(
                    "P{depth} coefficient mismatch at n = {n}"
                )));
            }
        }
    }
    Ok(None)
}

fn check_riordan(set: &StepSet, max_n: i64) -> IdentityResult {
    if !set.has_vertical() {
        return Ok(Some("needs the vertical step".into()));
    }
    let size = max_n.clamp(1, 8) as usize;
    let pair = riordan_for(set, size)?;
    let big_n = set.max_rise() as i64;
    for i in 0..=size {
        for j in 0..=size {
            let expect = count_free_rec(set, i as i64 - (big_n + 1) * j as i64, j as i64);
            if pair.entry(i, j) != expect {
                return Err(Error::Internal(format!("entry mismatch at ({i},{j})")));
            }
        }
    }
    // the transform corollary exercises both evaluation routes
    let ones: Vec<BigInt> = vec![BigInt::from(1); size + 1];
    riordan_transform(set, &ones, size)?;
    Ok(None)
}

fn check_rotation(set: &StepSet, max_n: i64) -> IdentityResult {
    let budget = budget();
    for n in 1..=max_n.min(4) {
        for free in enumerate_free(set, 1, n, &budget)? {
            let (mu, k) = zeta(&free)?;
            if mu.classify(set) != Classification::Primary(1) {
                return Err(Error::Internal(format!("rotation of {free} is not primary")));
            }
            if psi(&mu, k)? != free {
                return Err(Error::Internal(format!("rotation index wrong for {free}")));
            }
        }
    }
    Ok(None)
}
