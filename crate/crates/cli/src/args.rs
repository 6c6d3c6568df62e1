use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(name = "genquat", version, about = "Generalized quaternion rotations over a signature (α, β)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Mul,
    Rotate,
    Matrix,
    Polar,
    FromAxisAngle,
    Verify,
    Suite,
    Errata,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Product q·p.
    Mul(Options),
    /// Image of v under the rotation of q.
    Rotate(Options),
    /// Rotation matrix of q, row-major.
    Matrix(Options),
    /// Polar form of a unit quaternion.
    Polar(Options),
    /// Unit quaternion from a polar form.
    FromAxisAngle(Options),
    /// Quasi-orthogonality check of a 3×3 matrix.
    Verify(Options),
    /// Run the conformance suite.
    Suite(Options),
    /// Print the errata ledger.
    Errata(Options),
}

impl Command {
    pub fn split(self) -> (CommandKind, Options) {
        match self {
            Command::Mul(o) => (CommandKind::Mul, o),
            Command::Rotate(o) => (CommandKind::Rotate, o),
            Command::Matrix(o) => (CommandKind::Matrix, o),
            Command::Polar(o) => (CommandKind::Polar, o),
            Command::FromAxisAngle(o) => (CommandKind::FromAxisAngle, o),
            Command::Verify(o) => (CommandKind::Verify, o),
            Command::Suite(o) => (CommandKind::Suite, o),
            Command::Errata(o) => (CommandKind::Errata, o),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Elliptic,
    Hyperbolic,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    #[arg(long, allow_hyphen_values = true, value_parser = finite)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = finite)]
    pub beta: Option<f64>,
    #[command(flatten)]
    pub payload: Payload,
    #[arg(long, allow_hyphen_values = true, value_parser = finite, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub cases: u64,
    /// Significant digits in printed numbers.
    #[arg(long, default_value_t = 17, value_parser = clap::value_parser!(u32).range(1..=17))]
    pub precision: u32,
    /// Read JSON Lines payloads from stdin, one result per line.
    #[arg(long)]
    pub batch: bool,
}

/// Operands; in batch mode each input line supplies or overrides these.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Payload {
    #[arg(long, allow_hyphen_values = true, value_parser = components::<4>)]
    pub q: Option<Components>,
    #[arg(long, allow_hyphen_values = true, value_parser = components::<4>)]
    pub p: Option<Components>,
    #[arg(long, allow_hyphen_values = true, value_parser = components::<3>)]
    pub v: Option<Components>,
    #[arg(long, allow_hyphen_values = true, value_parser = components::<3>)]
    pub axis: Option<Components>,
    #[arg(long, allow_hyphen_values = true, value_parser = finite)]
    pub angle: Option<f64>,
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    /// Row-major `m11,…,m33`.
    #[arg(long, allow_hyphen_values = true, value_parser = components::<9>)]
    pub matrix: Option<Components>,
}

impl Payload {
    pub fn or(self, fallback: &Payload) -> Payload {
        Payload {
            q: self.q.or_else(|| fallback.q.clone()),
            p: self.p.or_else(|| fallback.p.clone()),
            v: self.v.or_else(|| fallback.v.clone()),
            axis: self.axis.or_else(|| fallback.axis.clone()),
            angle: self.angle.or(fallback.angle),
            kind: self.kind.or(fallback.kind),
            matrix: self.matrix.or_else(|| fallback.matrix.clone()),
        }
    }
}

/// A fixed-arity list of finite numbers; the arity is checked by the parser
/// or, for batch lines, by the command.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(transparent)]
pub struct Components(pub Vec<f64>);

fn finite(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(_) => Err("not finite".into()),
        Err(_) => Err("not a number".into()),
    }
}

/// Comma-separated list of exactly `N` finite numbers.
fn components<const N: usize>(s: &str) -> Result<Components, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!("expected {N} components, got {}", parts.len()));
    }
    parts
        .iter()
        .enumerate()
        .map(|(i, part)| finite(part).map_err(|e| format!("component {} {e}", i + 1)))
        .collect::<Result<_, _>>()
        .map(Components)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_errors_name_the_position() {
        assert_eq!(components::<4>("1,2,x,0"), Err("component 3 not a number".to_string()));
        assert_eq!(components::<4>("1,2,inf,0"), Err("component 3 not finite".to_string()));
        assert_eq!(components::<3>("1,2"), Err("expected 3 components, got 2".to_string()));
        assert_eq!(components::<3>("-1, 2.5,3e2"), Ok(Components(vec![-1.0, 2.5, 300.0])));
    }

    #[test]
    fn negative_values_parse() {
        let cli = Cli::try_parse_from(["genquat", "mul", "--alpha", "-2", "--beta", "-1e-3", "--q", "-1,0,0,0"]).unwrap();
        let (kind, opts) = cli.command.split();
        assert_eq!(kind, CommandKind::Mul);
        assert_eq!(opts.alpha, Some(-2.0));
        assert_eq!(opts.beta, Some(-1e-3));
        assert_eq!(opts.payload.q, Some(Components(vec![-1.0, 0.0, 0.0, 0.0])));
    }
}
