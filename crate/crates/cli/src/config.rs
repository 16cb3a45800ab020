use std::fmt;

use aw_core::numerics::parse_rational;
use aw_core::Rational;
use clap::{Parser, ValueEnum};

use crate::CliError;

/// Environment variable holding the default float precision in bits.
pub const PRECISION_ENV: &str = "AW_PRECISION";

/// Largest degree any command accepts.
pub const MAX_N: usize = 32;

#[derive(Parser, Debug)]
#[command(
    name = "aw",
    version,
    about = "Askey-Wilson polynomial calculus: evaluation, zeros, extreme-zero bounds and identity checks"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    /// The fourth root of the base, u = q^(1/4).
    #[arg(long, conflicts_with = "q")]
    pub u: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    /// A degree N or an inclusive range LO..HI.
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, value_enum)]
    pub backend: Option<BackendKind>,
    /// Significand bits of the float backend; rounded up to 64, 128, 256,
    /// 512 or 1024, and 53 or less means f64.
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub seed: Option<u64>,
    /// verify: product-rules, dde, structure, contiguous, expansion,
    /// koornwinder, band or shift. limits: a family name.
    #[arg(long)]
    pub check: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Eval,
    Zeros,
    Bounds,
    Table1,
    Verify,
    Limits,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Eval => "eval",
            Command::Zeros => "zeros",
            Command::Bounds => "bounds",
            Command::Table1 => "table1",
            Command::Verify => "verify",
            Command::Limits => "limits",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendKind {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Float widths the binary is compiled for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Width {
    F64,
    B64,
    B128,
    B256,
    B512,
    B1024,
}

impl Width {
    pub fn from_bits(bits: u32) -> Result<Width, CliError> {
        Ok(match bits {
            0 => return Err(CliError::usage("precision must be positive")),
            1..=53 => Width::F64,
            54..=64 => Width::B64,
            65..=128 => Width::B128,
            129..=256 => Width::B256,
            257..=512 => Width::B512,
            513..=1024 => Width::B1024,
            _ => {
                return Err(CliError::usage(format!(
                    "precision {} exceeds 1024 bits",
                    bits
                )))
            }
        })
    }

    pub fn bits(self) -> u32 {
        match self {
            Width::F64 => 53,
            Width::B64 => 64,
            Width::B128 => 128,
            Width::B256 => 256,
            Width::B512 => 512,
            Width::B1024 => 1024,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float(Width),
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Float(_) => f.write_str("float"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Base {
    U(Rational),
    Q(Rational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NRange {
    pub lo: usize,
    pub hi: usize,
}

impl NRange {
    pub fn parse(s: &str) -> Result<NRange, CliError> {
        let bad = || CliError::usage(format!("--n expects N or LO..HI, got {:?}", s));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (num(lo)?, num(hi)?),
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        if lo > hi {
            return Err(CliError::usage(format!(
                "empty degree range {}..{}",
                lo, hi
            )));
        }
        if hi > MAX_N {
            return Err(CliError::usage(format!(
                "degree {} exceeds the maximum {}",
                hi, MAX_N
            )));
        }
        Ok(NRange { lo, hi })
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

/// A parsed and validated invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    /// `a, b, c, d` in order, absent ones as `None`.
    pub params: [Option<Rational>; 4],
    pub base: Option<Base>,
    pub n: Option<NRange>,
    pub x: Option<Rational>,
    pub backend: Backend,
    pub tolerance: Option<f64>,
    pub format: Format,
    pub seed: u64,
    pub check: Option<String>,
    /// The literals as typed, echoed in the JSON config.
    pub literals: Vec<(&'static str, String)>,
}

fn is_exact_literal(s: &str) -> bool {
    !s.contains(['.', 'e', 'E'])
}

impl RunConfig {
    /// Validates the flags. `env_precision` is the value of [`PRECISION_ENV`].
    pub fn from_cli(cli: Cli, env_precision: Option<&str>) -> Result<RunConfig, CliError> {
        let mut literals = Vec::new();
        let mut parse =
            |name: &'static str, v: &Option<String>| -> Result<Option<Rational>, CliError> {
                match v {
                    None => Ok(None),
                    Some(s) => {
                        literals.push((name, s.clone()));
                        parse_rational(s).map(Some).map_err(|_| {
                            CliError::usage(format!("--{} is not a number: {:?}", name, s))
                        })
                    }
                }
            };
        let params = [
            parse("a", &cli.a)?,
            parse("b", &cli.b)?,
            parse("c", &cli.c)?,
            parse("d", &cli.d)?,
        ];
        let base = match (parse("u", &cli.u)?, parse("q", &cli.q)?) {
            (Some(u), None) => Some(Base::U(u)),
            (None, Some(q)) => Some(Base::Q(q)),
            _ => None,
        };
        let x = parse("x", &cli.x)?;
        let all_exact = literals.iter().all(|(_, s)| is_exact_literal(s));

        let env_bits = match env_precision {
            Some(s) if !s.trim().is_empty() => Some(s.trim().parse::<u32>().map_err(|_| {
                CliError::usage(format!("{} is not a bit count: {:?}", PRECISION_ENV, s))
            })?),
            _ => None,
        };
        let backend = match (cli.backend, cli.precision) {
            (Some(BackendKind::Exact), Some(_)) => {
                return Err(CliError::usage(
                    "--precision applies to the float backend, not exact",
                ))
            }
            (Some(BackendKind::Exact), None) => Backend::Exact,
            (Some(BackendKind::Float), bits) | (None, bits @ Some(_)) => {
                Backend::Float(Width::from_bits(bits.or(env_bits).unwrap_or(53))?)
            }
            (None, None) => {
                let needs_roots = matches!(cli.command, Command::Bounds | Command::Table1);
                if all_exact && !needs_roots {
                    Backend::Exact
                } else {
                    Backend::Float(Width::from_bits(env_bits.unwrap_or(53))?)
                }
            }
        };
        if let Some(t) = cli.tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::usage("--tolerance must be a positive number"));
            }
        }
        let n = cli.n.as_deref().map(NRange::parse).transpose()?;
        if let Some(n) = n {
            literals.push(("n", n.to_string()));
        }
        Ok(RunConfig {
            command: cli.command,
            params,
            base,
            n,
            x,
            backend,
            tolerance: cli.tolerance,
            format: cli.format,
            seed: cli.seed.unwrap_or(0),
            check: cli.check,
            literals,
        })
    }

    pub fn require_base(&self) -> Result<&Base, CliError> {
        self.base.as_ref().ok_or_else(|| {
            CliError::usage(format!(
                "{} needs exactly one of --u or --q",
                self.command.as_str()
            ))
        })
    }

    pub fn require_params(&self) -> Result<[Rational; 4], CliError> {
        let names = ["a", "b", "c", "d"];
        let mut out = Vec::with_capacity(4);
        for (v, name) in self.params.iter().zip(names) {
            out.push(v.clone().ok_or_else(|| {
                CliError::usage(format!(
                    "{} needs --a, --b, --c and --d (missing --{})",
                    self.command.as_str(),
                    name
                ))
            })?);
        }
        Ok(out.try_into().expect("four parameters"))
    }

    pub fn require_n(&self) -> Result<NRange, CliError> {
        self.n
            .ok_or_else(|| CliError::usage(format!("{} needs --n", self.command.as_str())))
    }

    pub fn precision_bits(&self) -> Option<u32> {
        match self.backend {
            Backend::Exact => None,
            Backend::Float(w) => Some(w.bits()),
        }
    }

    /// The JSON `config` object.
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        m.insert("backend".into(), self.backend.to_string().into());
        m.insert(
            "precision".into(),
            self.precision_bits()
                .map_or(serde_json::Value::Null, Into::into),
        );
        for (name, lit) in &self.literals {
            m.insert((*name).into(), lit.clone().into());
        }
        if let Some(t) = self.tolerance {
            m.insert("tolerance".into(), t.into());
        }
        if let Some(c) = &self.check {
            m.insert("check".into(), c.clone().into());
        }
        m.insert("seed".into(), self.seed.into());
        serde_json::Value::Object(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str], env: Option<&str>) -> Result<RunConfig, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("aw").chain(args.iter().copied())).unwrap();
        RunConfig::from_cli(cli, env)
    }

    #[test]
    fn ranges() {
        assert_eq!(NRange::parse("3").unwrap(), NRange { lo: 3, hi: 3 });
        assert_eq!(NRange::parse("1..8").unwrap(), NRange { lo: 1, hi: 8 });
        assert!(NRange::parse("8..1").is_err());
        assert!(NRange::parse("0..33").is_err());
        assert!(NRange::parse("x").is_err());
    }

    #[test]
    fn widths_round_up() {
        assert_eq!(Width::from_bits(53).unwrap(), Width::F64);
        assert_eq!(Width::from_bits(100).unwrap(), Width::B128);
        assert_eq!(Width::from_bits(1024).unwrap(), Width::B1024);
        assert!(Width::from_bits(0).is_err());
        assert!(Width::from_bits(2000).is_err());
    }

    #[test]
    fn backend_is_inferred_from_literals() {
        let exact = config(&["eval", "--a", "1/2", "--u", "1/2"], None).unwrap();
        assert_eq!(exact.backend, Backend::Exact);
        let float = config(&["eval", "--a", "0.5", "--u", "1/2"], None).unwrap();
        assert_eq!(float.backend, Backend::Float(Width::F64));
        let env = config(&["eval", "--a", "0.5", "--u", "1/2"], Some("128")).unwrap();
        assert_eq!(env.backend, Backend::Float(Width::B128));
        let bounds = config(&["bounds", "--a", "1/2", "--u", "1/2"], None).unwrap();
        assert_eq!(bounds.backend, Backend::Float(Width::F64));
    }

    #[test]
    fn exact_with_precision_is_a_usage_error() {
        assert!(config(&["eval", "--backend", "exact", "--precision", "128"], None).is_err());
        assert!(config(&["eval", "--backend", "exact"], Some("128")).is_ok());
        assert!(config(&["eval"], Some("lots")).is_err());
    }
}
