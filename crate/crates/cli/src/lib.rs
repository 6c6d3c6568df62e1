//! Command-line front end for the `genquat` library.
//!
//! Every command prints one compact JSON object per result on stdout.
//! Failures print `{"error": name, "detail": message}` on stderr, or on
//! stdout in place of the result line in batch mode. Exit codes: 0 success,
//! 1 verification or suite failure, 2 usage error, 3 domain error.

use std::ffi::OsString;
use std::io::{BufRead, Write};

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use genquat::conformance::{erratum_report, run_suite, SuiteConfig, Verdict};
use genquat::{Error, GQuat, Mat3, PolarForm, Signature, Vec3};

pub mod args;
pub mod output;

use args::{Cli, CommandKind, Components, Kind, Options, Payload};
pub use output::{format_number, render};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// A failed request: exit code plus the error object.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub error: String,
    pub detail: String,
}

impl Failure {
    fn usage(detail: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, error: "usage".into(), detail: detail.into() }
    }

    fn to_json(&self) -> Value {
        json!({"error": self.error, "detail": self.detail})
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: EXIT_DOMAIN, error: e.name().into(), detail: e.to_string() }
    }
}

/// A successful result; `code` is 1 when it reports a failed verification.
pub struct Outcome {
    pub value: Value,
    pub code: i32,
}

impl From<Value> for Outcome {
    fn from(value: Value) -> Self {
        Outcome { value, code: EXIT_OK }
    }
}

/// Parses `argv`, executes and returns the exit code.
pub fn run<I, T>(argv: I, stdin: impl BufRead, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or_default();
            let detail = first.strip_prefix("error: ").unwrap_or(first);
            return fail(stderr, &Failure::usage(detail), 17);
        }
    };
    let (kind, opts) = cli.command.split();
    let precision = opts.precision;

    if !opts.batch {
        return match execute(kind, &opts, &opts.payload) {
            Ok(outcome) => {
                let _ = writeln!(stdout, "{}", render(&outcome.value, precision));
                outcome.code
            }
            Err(f) => fail(stderr, &f, precision),
        };
    }

    if matches!(kind, CommandKind::Suite | CommandKind::Errata) {
        return fail(stderr, &Failure::usage("--batch is not supported by this command"), precision);
    }
    if let Err(f) = signature(&opts) {
        return fail(stderr, &f, precision);
    }
    let mut code = EXIT_OK;
    for line in stdin.lines() {
        let result = match line {
            Ok(line) => serde_json::from_str::<Payload>(&line)
                .map_err(|e| Failure::usage(format!("line is not a valid payload: {e}")))
                .and_then(|payload| execute(kind, &opts, &payload.or(&opts.payload))),
            Err(e) => Err(Failure::usage(format!("unreadable input line: {e}"))),
        };
        let (value, line_code) = match result {
            Ok(outcome) => (outcome.value, outcome.code),
            Err(f) => (f.to_json(), f.code),
        };
        code = code.max(line_code);
        let _ = writeln!(stdout, "{}", render(&value, precision));
    }
    code
}

fn fail(stderr: &mut impl Write, failure: &Failure, precision: u32) -> i32 {
    let _ = writeln!(stderr, "{}", render(&failure.to_json(), precision));
    failure.code
}

fn signature(opts: &Options) -> Result<Signature, Failure> {
    match (opts.alpha, opts.beta) {
        (Some(a), Some(b)) => Ok(Signature::new(a, b)?),
        (None, _) => Err(Failure::usage("missing required flag --alpha")),
        (_, None) => Err(Failure::usage("missing required flag --beta")),
    }
}

fn operand<'a>(c: &'a Option<Components>, flag: &str, arity: usize) -> Result<&'a [f64], Failure> {
    let c = c.as_ref().ok_or_else(|| Failure::usage(format!("missing required flag --{flag}")))?;
    if c.0.len() != arity {
        return Err(Failure::usage(format!("--{flag}: expected {arity} components, got {}", c.0.len())));
    }
    Ok(&c.0)
}

fn quat(payload: &Payload, flag: &str) -> Result<GQuat, Failure> {
    let c = operand(if flag == "q" { &payload.q } else { &payload.p }, flag, 4)?;
    Ok(GQuat::new(c[0], c[1], c[2], c[3]))
}

fn vec3(c: &Option<Components>, flag: &str) -> Result<Vec3, Failure> {
    let c = operand(c, flag, 3)?;
    Ok(Vec3::new(c[0], c[1], c[2]))
}

/// Runs one request against `payload`.
pub fn execute(kind: CommandKind, opts: &Options, payload: &Payload) -> Result<Outcome, Failure> {
    match kind {
        CommandKind::Suite => return suite(opts),
        CommandKind::Errata => return Ok(json!({ "errata": erratum_report() }).into()),
        _ => {}
    }
    let sig = signature(opts)?;
    Ok(match kind {
        CommandKind::Mul => {
            let (q, p) = (quat(payload, "q")?, quat(payload, "p")?);
            json!({ "q": sig.multiply(&q, &p).to_array() }).into()
        }
        CommandKind::Rotate => {
            let (q, v) = (quat(payload, "q")?, vec3(&payload.v, "v")?);
            json!({ "v": sig.conjugation_map(&q, &v)?.0 }).into()
        }
        CommandKind::Matrix => {
            let q = quat(payload, "q")?;
            json!({ "m": sig.rotation_matrix(&q)?.to_row_major() }).into()
        }
        CommandKind::Polar => {
            let pf = sig.polar_form(&quat(payload, "q")?)?;
            json!({
                "kind": pf.kind().as_str(),
                "angle": pf.angle(),
                "axis": pf.axis().map(|a| a.0),
            })
            .into()
        }
        CommandKind::FromAxisAngle => {
            let axis = vec3(&payload.axis, "axis")?;
            let angle = payload.angle.ok_or_else(|| Failure::usage("missing required flag --angle"))?;
            let pf = match payload.kind.ok_or_else(|| Failure::usage("missing required flag --kind"))? {
                Kind::Elliptic => PolarForm::Elliptic { angle, axis },
                Kind::Hyperbolic => PolarForm::Hyperbolic { angle, axis },
            };
            json!({ "q": sig.from_axis_angle(&pf)?.to_array() }).into()
        }
        CommandKind::Verify => {
            let c = operand(&payload.matrix, "matrix", 9)?;
            let m = Mat3::from_row_major(c.try_into().expect("arity checked"));
            let report = sig.quasi_orthogonality(&m, opts.tol)?;
            Outcome {
                value: json!({
                    "quasi_orthogonal": report.passed,
                    "residual": report.residual,
                    "det": report.det,
                }),
                code: if report.passed { EXIT_OK } else { EXIT_FAILED },
            }
        }
        CommandKind::Suite | CommandKind::Errata => unreachable!(),
    })
}

fn suite(opts: &Options) -> Result<Outcome, Failure> {
    let mut cfg = SuiteConfig::new(opts.seed, opts.cases as usize);
    if opts.alpha.is_some() || opts.beta.is_some() {
        cfg.signatures = vec![signature(opts)?];
    }
    let report = run_suite(&cfg);
    let code = if report.verdict == Verdict::Pass { EXIT_OK } else { EXIT_FAILED };
    let value = serde_json::to_value(&report).expect("report serializes");
    Ok(Outcome { value, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let argv = std::iter::once("genquat").chain(args.iter().copied());
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(argv, stdin.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors() {
        let (code, out, err) = call(&["mul", "--alpha", "2", "--q", "1,1,1,0", "--p", "2,0,1,1"], "");
        assert_eq!((code, out.as_str()), (EXIT_USAGE, ""));
        assert!(err.contains("--beta"), "{err}");
        let (code, _, err) = call(&["mul", "--alpha", "2", "--beta", "3", "--q", "1,2,x,0", "--p", "2,0,1,1"], "");
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("component 3 not a number") && err.contains("--q"), "{err}");
        let (code, _, _) = call(&["mul", "--alpha", "2", "--beta", "3", "--q", "1,1,1,0"], "");
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = call(&["rotate", "--alpha", "nan", "--beta", "3"], "");
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = call(&["frobnicate"], "");
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn domain_errors_go_to_stderr() {
        let (code, out, err) = call(&["matrix", "--alpha", "1", "--beta", "-1", "--q", "1,0,1,0"], "");
        assert_eq!((code, out.as_str()), (EXIT_DOMAIN, ""));
        let v: Value = serde_json::from_str(&err).unwrap();
        assert_eq!(v["error"], "NonInvertible");
        let (code, _, err) = call(&["polar", "--alpha", "1", "--beta", "1", "--q", "2,0,0,0"], "");
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.contains("NotUnit"));
        let args = ["from-axis-angle", "--alpha", "1", "--beta", "1", "--kind", "hyperbolic", "--angle", "1", "--axis", "1,0,0"];
        assert_eq!(call(&args, "").0, EXIT_DOMAIN);
    }

    #[test]
    fn matrix_output_verifies() {
        for (a, b, q) in [("2", "3", "0.5,0.3,-0.2,0.4"), ("1", "-1", "1.2,0.3,0.1,-0.2"), ("-0.5", "2", "1,0.1,0.2,0.3")] {
            let (code, out, _) = call(&["matrix", "--alpha", a, "--beta", b, "--q", q], "");
            assert_eq!(code, EXIT_OK);
            let v: Value = serde_json::from_str(&out).unwrap();
            let m: Vec<String> = v["m"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
            let (code, out, _) = call(&["verify", "--alpha", a, "--beta", b, "--matrix", &m.join(",")], "");
            assert_eq!(code, EXIT_OK, "{out}");
        }
    }

    #[test]
    fn batch_keeps_one_line_per_input() {
        let input = "{\"q\":[1,0,0,0],\"p\":[0,1,0,0]}\nnot json\n{\"q\":[1,0,1,0],\"p\":[1,0,0,0],\"extra\":1}\n{\"p\":[0,0,1,0]}\n";
        let (code, out, err) = call(&["mul", "--alpha", "1", "--beta", "-1", "--q", "0,1,0,0", "--batch"], input);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 4, "{out}");
        assert_eq!(lines[0], r#"{"q":[0,1,0,0]}"#);
        assert!(lines[1].starts_with(r#"{"error":"usage""#));
        assert!(lines[2].starts_with(r#"{"error":"usage""#));
        // Flag operands fill what the line leaves out: i·j = k.
        assert_eq!(lines[3], r#"{"q":[0,0,0,1]}"#);
        assert_eq!((code, err.as_str()), (EXIT_USAGE, ""));

        let (code, out, _) = call(&["rotate", "--alpha", "1", "--beta", "-1", "--batch"], "{\"q\":[1,0,1,0],\"v\":[1,0,0]}\n");
        assert_eq!(code, EXIT_DOMAIN);
        assert!(out.starts_with(r#"{"error":"NonInvertible""#));
    }

    #[test]
    fn precision_caps_digits() {
        let args = ["matrix", "--alpha", "1", "--beta", "1", "--q", "0.7071067811865476,0.5,-0.5,0", "--precision", "3"];
        let (code, out, _) = call(&args, "");
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "{\"m\":[0.5,-0.5,-0.707,-0.5,0.5,-0.707,0.707,0.707,0]}\n");
    }

    #[test]
    fn polar_and_back() {
        let (_, out, _) = call(&["polar", "--alpha", "1", "--beta", "-1", "--q", "1.25,0,0.75,0"], "");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["kind"], "hyperbolic");
        let angle = v["angle"].to_string();
        let axis: Vec<String> = v["axis"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
        let args = ["from-axis-angle", "--alpha", "1", "--beta", "-1", "--kind", "hyperbolic", "--angle", &angle, "--axis", &axis.join(",")];
        let (code, out, _) = call(&args, "");
        assert_eq!((code, out.as_str()), (EXIT_OK, "{\"q\":[1.25,0,0.75,0]}\n"));
        let (_, out, _) = call(&["polar", "--alpha", "2", "--beta", "3", "--q", "1,0,0,0"], "");
        assert_eq!(out, "{\"kind\":\"identity\",\"angle\":0,\"axis\":null}\n");
    }

    #[test]
    fn suite_and_errata() {
        let (code, out, _) = call(&["suite", "--seed", "3", "--cases", "5"], "");
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "pass");
        let (code, out, _) = call(&["suite", "--alpha", "2", "--beta", "-3", "--cases", "5"], "");
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["signatures"], serde_json::json!([[2, -3]]));
        let (code, out, _) = call(&["errata"], "");
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["errata"].as_array().unwrap().len(), 4);
        assert_eq!(call(&["errata", "--batch"], "").0, EXIT_USAGE);
    }
}
