use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use daehee_core::{IdentityId, Rational};

#[derive(Debug, Parser)]
#[command(
    name = "daehee",
    version,
    about = "Degenerate Daehee, Bernoulli and Stirling tables over ℚ[λ, x]"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit terms 0..=nmax of a sequence family or a Stirling table.
    Gen(GenArgs),
    /// Run identity checks and emit a JSON report array.
    Check(CheckArgs),
    /// Compare a degenerate family at λ = 0 with its classical counterpart.
    Limit(LimitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Parameters shared by `gen` and `limit`.
#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Family name, e.g. degen-daehee or stirling-second-degenerate.
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value = "12", value_parser = parse_count)]
    pub nmax: u32,
    /// Order r of a higher-order family.
    #[arg(long, value_parser = parse_count)]
    pub r: Option<u32>,
    /// Index k of the multiple family (an alias of --r elsewhere).
    #[arg(long, value_parser = parse_count)]
    pub k: Option<u32>,
    /// Specialize x (the exponent for norlund-second).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    pub x: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    pub lambda: Option<Rational>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long = "series-order", value_parser = parse_count)]
    pub series_order: Option<u32>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("which").required(true).args(["id", "all"])))]
pub struct CheckArgs {
    /// Identity to check (T1..T11, C2', E6); repeatable.
    #[arg(long, value_parser = parse_id)]
    pub id: Vec<IdentityId>,
    #[arg(long)]
    pub all: bool,
    #[arg(long, default_value = "12", value_parser = parse_count)]
    pub nmax: u32,
    #[arg(long, alias = "rmax", default_value = "4", value_parser = parse_count)]
    pub r: u32,
    #[arg(long, alias = "kmax", default_value = "4", value_parser = parse_count)]
    pub k: u32,
    #[arg(long = "series-order", value_parser = parse_count)]
    pub series_order: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run on one thread.
    #[arg(long)]
    pub sequential: bool,
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

/// A non-negative integer, written plainly or as `p/q` with `q | p`.
pub fn parse_count(s: &str) -> Result<u32, String> {
    let v = parse_rational(s)?;
    if !v.is_integer() || v.is_negative() {
        return Err(format!("{s:?} is not a non-negative integer"));
    }
    v.to_i64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| format!("{s:?} is out of range"))
}

fn parse_id(s: &str) -> Result<IdentityId, String> {
    s.parse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn counts_accept_integral_fractions() {
        assert_eq!(parse_count("12"), Ok(12));
        assert_eq!(parse_count("8/2"), Ok(4));
        assert!(parse_count("3/2").is_err());
        assert!(parse_count("-1").is_err());
        assert!(parse_count("x").is_err());
    }

    #[test]
    fn check_requires_selection() {
        assert!(Cli::try_parse_from(["daehee", "check"]).is_err());
        assert!(Cli::try_parse_from(["daehee", "check", "--all", "--id", "T1"]).is_err());
        let cli = Cli::try_parse_from(["daehee", "check", "--id", "T8", "--rmax", "3"]).unwrap();
        match cli.command {
            Command::Check(a) => {
                assert_eq!(a.id, vec![IdentityId::T8]);
                assert_eq!(a.r, 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn check_rejects_specialization_flags() {
        assert!(Cli::try_parse_from(["daehee", "check", "--all", "--lambda", "0"]).is_err());
        assert!(Cli::try_parse_from(["daehee", "check", "--all", "--x", "1"]).is_err());
    }

    #[test]
    fn gen_parses_rationals() {
        let cli =
            Cli::try_parse_from(["daehee", "gen", "--family", "daehee", "--x", "-3/6"]).unwrap();
        match cli.command {
            Command::Gen(a) => assert_eq!(a.family.x, Some(Rational::frac(-1, 2))),
            other => panic!("{other:?}"),
        }
        assert!(
            Cli::try_parse_from(["daehee", "gen", "--family", "daehee", "--lambda", "1/0"])
                .is_err()
        );
    }
}
