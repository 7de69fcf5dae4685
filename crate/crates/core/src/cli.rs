//! Batch front end shared by the `bifset` binary and the C interface.

use std::str::FromStr;

use num_rational::BigRational;
use serde_json::{Map, Value as Json};

use crate::atypical::{bifurcation_superset, check_nondegenerate_at_infinity, verify_s_smooth, Outcome};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::family::stability_report;
use crate::instance::{Instance, InstanceFile};
use crate::newton::{is_convenient, newton_polyhedron};
use crate::poly::ComplexPoint;
use crate::probe::asymptotic_profile;
use crate::report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Polyhedron,
    Nondeg,
    Bifurcation,
    Stability,
    Probe,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Polyhedron => "polyhedron",
            Command::Nondeg => "nondeg",
            Command::Bifurcation => "bifurcation",
            Command::Stability => "stability",
            Command::Probe => "probe",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "polyhedron" => Command::Polyhedron,
            "nondeg" => Command::Nondeg,
            "bifurcation" => Command::Bifurcation,
            "stability" => Command::Stability,
            "probe" => Command::Probe,
            other => return Err(Error::Instance(format!("unknown subcommand `{other}`"))),
        })
    }
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 1;
    pub const DEGENERATE: i32 = 2;
    pub const BUDGET: i32 = 3;
    pub const COMPUTATION: i32 = 4;
}

/// Command-line overrides of the instance options.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub budget_pairs: Option<usize>,
    pub tolerance: Option<f64>,
    pub samples: Option<Vec<BigRational>>,
    pub curve: Option<Vec<ComplexPoint>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub exit_code: i32,
    /// Pretty-printed JSON, newline-terminated.
    pub report: String,
    /// The error message when the run failed.
    pub error: Option<String>,
}

pub fn exit_code_for(e: &Error) -> i32 {
    if e.is_parse() {
        exit::PARSE
    } else if e.is_budget() {
        exit::BUDGET
    } else {
        exit::COMPUTATION
    }
}

fn error_kind(e: &Error) -> &'static str {
    match exit_code_for(e) {
        exit::PARSE => "parse",
        exit::BUDGET => "budget",
        _ => "computation",
    }
}

fn header(cmd: Command, file: Option<&InstanceFile>, cfg: &Config) -> Map<String, Json> {
    let mut m = Map::new();
    m.insert("format".into(), report::FORMAT_VERSION.into());
    m.insert("command".into(), cmd.as_str().into());
    m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    if let Some(file) = file {
        m.insert(
            "instance".into(),
            serde_json::json!({
                "variables": file.variables,
                "f": file.f,
                "constraints": file.constraints,
                "family_parameter": file.family_parameter,
            }),
        );
    }
    m.insert(
        "config".into(),
        serde_json::json!({
            "budget_pairs": cfg.max_pairs,
            "tolerance": report::fmt_f64(cfg.root_tolerance),
            "value_tolerance": report::fmt_f64(cfg.value_tolerance),
        }),
    );
    m
}

fn render(m: Map<String, Json>) -> String {
    let mut s = serde_json::to_string_pretty(&Json::Object(m)).expect("JSON rendering");
    s.push('\n');
    s
}

fn require_plain(inst: &Instance, cmd: Command) -> Result<()> {
    if inst.family.is_some() {
        return Err(Error::Instance(format!("`{}` does not accept a family instance", cmd.as_str())));
    }
    Ok(())
}

fn execute(cmd: Command, inst: &Instance, opts: &RunOptions, cfg: &Config, out: &mut Map<String, Json>) -> Result<i32> {
    let f = &inst.f;
    let gs = &inst.constraints;
    match cmd {
        Command::Polyhedron => {
            let all: Vec<usize> = (0..inst.ring.nvars()).collect();
            let mut list = vec![report::polyhedron("f", f, &newton_polyhedron(f, &all)?)];
            for (j, g) in gs.iter().enumerate() {
                list.push(report::polyhedron(&format!("g{}", j + 1), g, &newton_polyhedron(g, &all)?));
            }
            out.insert("convenient".into(), is_convenient(f).into());
            out.insert("polyhedra".into(), list.into());
            Ok(exit::OK)
        }
        Command::Nondeg => {
            require_plain(inst, cmd)?;
            let smooth = verify_s_smooth(gs, cfg)?;
            out.insert("smoothness".into(), report::verdict(&smooth, f, gs));
            if !smooth.passes() {
                out.insert("nondegeneracy".into(), Json::Null);
                return Ok(exit::DEGENERATE);
            }
            let v = check_nondegenerate_at_infinity(f, gs, cfg)?;
            out.insert("nondegeneracy".into(), report::verdict(&v, f, gs));
            Ok(if v.passes() { exit::OK } else { exit::DEGENERATE })
        }
        Command::Bifurcation => {
            require_plain(inst, cmd)?;
            let r = bifurcation_superset(f, gs, cfg)?;
            out.extend(report::bifurcation(&r, f, gs));
            Ok(match r.outcome {
                Outcome::Exact | Outcome::Superset => exit::OK,
                _ => exit::DEGENERATE,
            })
        }
        Command::Stability => {
            let family = inst
                .family
                .as_ref()
                .ok_or_else(|| Error::Instance("`stability` needs `family_parameter`".into()))?;
            let samples = match &opts.samples {
                Some(s) => s.clone(),
                None => inst.file.samples()?,
            };
            let r = stability_report(family, gs, &samples, cfg)?;
            out.extend(report::stability(&r, f, gs, family.parameter_name()));
            Ok(if r.stable { exit::OK } else { exit::DEGENERATE })
        }
        Command::Probe => {
            require_plain(inst, cmd)?;
            let curve = opts.curve.as_ref().ok_or_else(|| Error::Instance("`probe` needs curve points".into()))?;
            out.insert("profile".into(), report::probe(&asymptotic_profile(f, gs, curve)));
            Ok(exit::OK)
        }
    }
}

/// Runs one subcommand on an instance given as TOML text.
pub fn run_toml(cmd: Command, toml: &str, opts: &RunOptions) -> RunOutput {
    match InstanceFile::from_toml(toml) {
        Ok(file) => run(cmd, &file, opts),
        Err(e) => error_output(cmd, None, &Config::default(), &e),
    }
}

fn error_output(cmd: Command, file: Option<&InstanceFile>, cfg: &Config, e: &Error) -> RunOutput {
    let mut m = header(cmd, file, cfg);
    m.insert("error".into(), serde_json::json!({ "kind": error_kind(e), "message": e.to_string() }));
    RunOutput { exit_code: exit_code_for(e), report: render(m), error: Some(e.to_string()) }
}

pub fn run(cmd: Command, file: &InstanceFile, opts: &RunOptions) -> RunOutput {
    let mut cfg = file.config();
    if let Some(b) = opts.budget_pairs {
        cfg.max_pairs = b;
    }
    if let Some(t) = opts.tolerance {
        cfg.root_tolerance = t;
    }
    let inst = match file.to_instance() {
        Ok(i) => i,
        Err(e) => return error_output(cmd, Some(file), &cfg, &e),
    };
    let mut m = header(cmd, Some(file), &cfg);
    match execute(cmd, &inst, opts, &cfg, &mut m) {
        Ok(code) => RunOutput { exit_code: code, report: render(m), error: None },
        Err(e) => error_output(cmd, Some(file), &cfg, &e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toml(f: &str, gs: &[&str]) -> String {
        let gs: Vec<String> = gs.iter().map(|g| format!("\"{g}\"")).collect();
        format!("variables = [\"x\", \"y\"]\nf = \"{f}\"\nconstraints = [{}]\n", gs.join(", "))
    }

    fn json(out: &RunOutput) -> Json {
        serde_json::from_str(&out.report).unwrap()
    }

    #[test]
    fn bifurcation_examples() {
        let out = run_toml(Command::Bifurcation, &toml("x + x^2*y", &[]), &RunOptions::default());
        assert_eq!(out.exit_code, exit::OK);
        let j = json(&out);
        assert_eq!(j["superset"], serde_json::json!(["0"]));
        assert_eq!(j["nondegeneracy"]["status"], "certified");
        assert!(out.report.starts_with("{\n  \"format\": 1,"));

        let out = run_toml(Command::Bifurcation, &toml("x", &["x*y - 1"]), &RunOptions::default());
        let j = json(&out);
        assert_eq!(j["superset"], serde_json::json!(["0"]));
        assert_eq!(j["smoothness"]["status"], "certified");
    }

    #[test]
    fn degenerate_exit_code() {
        let out = run_toml(Command::Nondeg, &toml("(x+y)^2", &[]), &RunOptions::default());
        assert_eq!(out.exit_code, exit::DEGENERATE);
        assert!(!json(&out)["nondegeneracy"]["witnesses"].as_array().unwrap().is_empty());
    }

    #[test]
    fn parse_errors_exit_one() {
        let out = run_toml(Command::Nondeg, &toml("x^(-1)", &[]), &RunOptions::default());
        assert_eq!(out.exit_code, exit::PARSE);
        assert!(json(&out)["error"]["message"].as_str().unwrap().contains("negative exponent"));
        let out = run_toml(Command::Nondeg, "variables = 3", &RunOptions::default());
        assert_eq!(out.exit_code, exit::PARSE);
    }

    #[test]
    fn budget_exit_code() {
        let opts = RunOptions { budget_pairs: Some(1), ..RunOptions::default() };
        let out = run_toml(Command::Bifurcation, &toml("x^2*y^2 - x*y", &[]), &opts);
        assert_eq!(out.exit_code, exit::BUDGET);
    }

    #[test]
    fn missing_subcommand_fields() {
        let out = run_toml(Command::Stability, &toml("x", &[]), &RunOptions::default());
        assert_eq!(out.exit_code, exit::PARSE);
        let out = run_toml(Command::Probe, &toml("x", &[]), &RunOptions::default());
        assert_eq!(out.exit_code, exit::PARSE);
    }
}
