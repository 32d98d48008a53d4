use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use daehee_core::identities::{self, all_passed, RunConfig};
use daehee_core::sequences::{NorlundExponent, SequenceDump};
use daehee_core::{
    Argument, BiPoly, Exec, IdentityId, Rational, SeqFamily, StirlingKind, StirlingTable,
};
use serde::Serialize;

use crate::args::{CheckArgs, Command, FamilyArgs, Format, GenArgs, LimitArgs};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    IdentityFailure,
}

pub fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Gen(args) => cmd_gen(&args),
        Command::Check(args) => cmd_check(&args),
        Command::Limit(args) => cmd_limit(&args),
    }
}

pub const TABLE_NAMES: [(&str, StirlingKind); 4] = [
    ("stirling-first", StirlingKind::First),
    ("stirling-second", StirlingKind::Second),
    ("stirling-first-degenerate", StirlingKind::FirstDegenerate),
    ("stirling-second-degenerate", StirlingKind::SecondDegenerate),
];

#[derive(Debug, Clone, PartialEq)]
enum Target {
    Sequence(SeqFamily),
    Table(StirlingKind),
}

/// A resolved `gen`/`limit` request.
#[derive(Debug, Clone)]
struct Request {
    target: Target,
    nmax: usize,
    series_order: usize,
    /// x to substitute after generation; `None` when x stays symbolic or was
    /// already consumed (x = 0 numbers, Nörlund exponent).
    x: Option<Rational>,
    x_label: Option<String>,
    lambda: Option<Rational>,
}

fn takes_order(name: &str) -> bool {
    name.ends_with("-higher") || name == "multiple-degen-daehee"
}

fn resolve(args: &FamilyArgs) -> Result<Request, CliError> {
    let name = args.family.as_str();
    let nmax = args.nmax as usize;
    let order = match (args.r, args.k) {
        (Some(r), Some(k)) if r != k => return usage("--r and --k disagree"),
        (r, k) => r.or(k),
    };
    let table = TABLE_NAMES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, k)| *k);
    let known = table.is_some() || SeqFamily::NAMES.contains(&name);
    if !known {
        let mut all: Vec<&str> = SeqFamily::NAMES.to_vec();
        all.extend(TABLE_NAMES.iter().map(|(n, _)| *n));
        return usage(format!(
            "unknown family {name:?}; expected one of {}",
            all.join(", ")
        ));
    }
    if order.is_some() && !takes_order(name) {
        return usage(format!("family {name} takes no --r/--k"));
    }
    let order = order.unwrap_or(1);
    if order == 0 {
        return usage("--r/--k must be at least 1");
    }

    let needed = nmax + order as usize + 1;
    let series_order = match args.series_order {
        Some(s) if (s as usize) < needed => {
            return usage(format!(
                "--series-order {s} is below nmax + r + 1 = {needed}"
            ))
        }
        Some(s) => s as usize,
        None => needed,
    };

    let mut request = Request {
        target: Target::Table(StirlingKind::First),
        nmax,
        series_order,
        x: None,
        x_label: None,
        lambda: args.lambda.clone(),
    };
    if let Some(kind) = table {
        if args.x.is_some() {
            return usage("Stirling tables do not depend on x");
        }
        request.target = Target::Table(kind);
        return Ok(request);
    }

    let x = args.x.clone();
    let family = match name {
        "norlund-second" => {
            let exponent = match x {
                Some(v) => NorlundExponent::Value(v),
                None => NorlundExponent::Symbolic,
            };
            SeqFamily::from_name(name, order, Argument::Number, exponent)
        }
        "multiple-degen-daehee" => {
            if x.is_some() {
                return usage("multiple-degen-daehee is a number family; --x does not apply");
            }
            SeqFamily::from_name(name, order, Argument::Number, NorlundExponent::Symbolic)
        }
        _ => {
            let argument = match &x {
                Some(v) if v.is_zero() => Argument::Number,
                _ => Argument::Polynomial,
            };
            if let Some(v) = x.as_ref().filter(|v| !v.is_zero()) {
                request.x = Some(v.clone());
                request.x_label = Some(format!("x={v}"));
            }
            SeqFamily::from_name(name, order, argument, NorlundExponent::Symbolic)
        }
    };
    request.target = Target::Sequence(family.expect("name validated above"));
    Ok(request)
}

fn specialize(values: Vec<BiPoly>, x: Option<&Rational>, lambda: Option<&Rational>) -> Vec<BiPoly> {
    values
        .into_iter()
        .map(|v| {
            let v = match x {
                Some(x) => v.eval_x(x),
                None => v,
            };
            match lambda {
                Some(l) => v.eval_lambda(l),
                None => v,
            }
        })
        .collect()
}

fn generate(family: &SeqFamily, req: &Request) -> Result<Vec<BiPoly>, CliError> {
    family
        .generate_at(req.nmax, req.series_order)
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn constant_text(v: &BiPoly) -> Result<String, CliError> {
    match v.as_constant() {
        Some(c) => Ok(c.to_string()),
        None => usage(format!(
            "csv output needs constant values but got {v}; pass --lambda (and --x for polynomial families)"
        )),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn cmd_gen(args: &GenArgs) -> Result<Outcome, CliError> {
    let fa = &args.family;
    let req = resolve(fa)?;
    let text = match &req.target {
        Target::Table(kind) => {
            let mut table = StirlingTable::build(*kind, req.nmax);
            if let Some(l) = &req.lambda {
                table = table.eval_lambda(l);
            }
            let rows = table.dump();
            match fa.format {
                Format::Json => to_json(&rows),
                Format::Csv => {
                    let mut s = String::from("n,l,value\n");
                    for row in &rows {
                        let v = constant_text(table.get(row.n, row.l))?;
                        writeln!(s, "{},{},{v}", row.n, row.l).expect("string write");
                    }
                    s
                }
            }
        }
        Target::Sequence(family) => {
            let values = specialize(generate(family, &req)?, req.x.as_ref(), req.lambda.as_ref());
            match fa.format {
                Format::Json => {
                    let mut dump = SequenceDump::new(family, &values);
                    if let Some(label) = &req.x_label {
                        dump.argument = label.clone();
                    }
                    dump.lambda = req.lambda.as_ref().map(Rational::to_string);
                    to_json(&dump)
                }
                Format::Csv => {
                    let mut s = String::from("n,value\n");
                    for (n, v) in values.iter().enumerate() {
                        writeln!(s, "{n},{}", constant_text(v)?).expect("string write");
                    }
                    s
                }
            }
        }
    };
    emit(fa.out.as_deref(), &text)?;
    Ok(Outcome::Success)
}

/// One row of a `limit` comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitRow {
    pub n: usize,
    pub degenerate: String,
    pub at_lambda_zero: String,
    pub classical: String,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitTable {
    pub family: String,
    pub classical: String,
    pub order: Option<u32>,
    pub argument: String,
    pub all_equal: bool,
    pub rows: Vec<LimitRow>,
}

fn cmd_limit(args: &LimitArgs) -> Result<Outcome, CliError> {
    let fa = &args.family;
    let req = resolve(fa)?;
    if req.lambda.as_ref().is_some_and(|l| !l.is_zero()) {
        return usage("limit compares at λ = 0; --lambda accepts only 0");
    }
    let family = match &req.target {
        Target::Sequence(f) => f.clone(),
        Target::Table(_) => {
            return usage("limit applies to sequence families, not Stirling tables")
        }
    };
    let Some(classical) = family.classical_counterpart() else {
        return usage(format!(
            "family {} has no classical counterpart",
            family.name()
        ));
    };
    let zero = Rational::zero();
    let degenerate = specialize(generate(&family, &req)?, req.x.as_ref(), None);
    let at_zero = specialize(degenerate.clone(), None, Some(&zero));
    let classical_values = specialize(generate(&classical, &req)?, req.x.as_ref(), None);
    let rows: Vec<LimitRow> = degenerate
        .iter()
        .zip(&at_zero)
        .zip(&classical_values)
        .enumerate()
        .map(|(n, ((d, z), c))| LimitRow {
            n,
            degenerate: d.to_string(),
            at_lambda_zero: z.to_string(),
            classical: c.to_string(),
            equal: z == c,
        })
        .collect();
    let all_equal = rows.iter().all(|r| r.equal);
    let table = LimitTable {
        family: family.name().to_string(),
        classical: classical.name().to_string(),
        order: family.order(),
        argument: req
            .x_label
            .clone()
            .unwrap_or_else(|| family.argument_label()),
        all_equal,
        rows,
    };
    let text = match fa.format {
        Format::Json => to_json(&table),
        Format::Csv => {
            let mut s = String::from("n,at_lambda_zero,classical,equal\n");
            for (row, (z, c)) in table.rows.iter().zip(at_zero.iter().zip(&classical_values)) {
                writeln!(
                    s,
                    "{},{},{},{}",
                    row.n,
                    constant_text(z)?,
                    constant_text(c)?,
                    row.equal
                )
                .expect("string write");
            }
            s
        }
    };
    emit(fa.out.as_deref(), &text)?;
    Ok(if all_equal {
        Outcome::Success
    } else {
        Outcome::IdentityFailure
    })
}

pub fn check_config(args: &CheckArgs) -> Result<RunConfig, CliError> {
    let nmax = args.nmax as usize;
    let config = RunConfig {
        nmax,
        rmax: args.r,
        kmax: args.k,
        series_order: args
            .series_order
            .map(|s| s as usize)
            .unwrap_or_else(|| RunConfig::min_series_order(nmax, args.r)),
        ..RunConfig::default()
    };
    config
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(config)
}

fn cmd_check(args: &CheckArgs) -> Result<Outcome, CliError> {
    let config = check_config(args)?;
    let ids: Vec<IdentityId> = if args.all {
        IdentityId::ALL.to_vec()
    } else {
        let mut ids = args.id.clone();
        ids.sort();
        ids.dedup();
        ids
    };
    let exec = if args.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let reports =
        identities::run_selected(config, &ids, exec).map_err(|e| CliError::Usage(e.to_string()))?;
    emit(args.out.as_deref(), &to_json(&reports))?;
    Ok(if all_passed(&reports) {
        Outcome::Success
    } else {
        Outcome::IdentityFailure
    })
}
