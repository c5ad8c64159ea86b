//! Argument parsing, dispatch and report rendering for the `nij` binary.

use std::fs;
use std::io::Read;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use nijenhuis::linearize::{
    brjuno, formal_linearize, gen_counterexample, gen_counterexample_irrational, separating_invariant,
    verdict, verdict_irrational, BrjunoOutcome, CFrac, Category, LinearizationReport, LinearizationStatus,
    VerdictValue,
};
use nijenhuis::nij::{is_scalar_point, isotropy_algebra, torsion};
use nijenhuis::quad::parse_rat;
use nijenhuis::{classify, Error, Lsa, Matrix, NormalForm, OperatorField, Quad};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "nij", version, about = "Nijenhuis operators, left-symmetric algebras and linearization")]
pub struct Cli {
    /// Emit a JSON report.
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Emit a human-readable report (default).
    #[arg(long, global = true)]
    pub text: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct OperatorInput {
    /// File path, `-` for stdin, or inline text (`;` separates lines).
    pub input: Option<String>,
    /// Variables for headerless inline rows such as `y, x; -x, y`.
    #[arg(long, default_value = "x,y")]
    pub vars: String,
    /// Use the polynomial counterexample of a normal form, e.g. `b1,1/2`.
    #[arg(long, conflicts_with = "input")]
    pub counterexample: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct FormArgs {
    /// Normal form label, optionally with its parameter: `b1`, `b1,1/2`, `c5-`.
    #[arg(long)]
    pub form: String,
    /// Rational parameter for b1 and b3.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Torsion of an operator field.
    CheckNijenhuis(OperatorInput),
    /// Normal form and witness of a left-symmetric algebra.
    ClassifyLsa {
        /// File path, `-` for stdin, or inline text (`;` separates lines).
        input: String,
    },
    /// Scalar-type test and isotropy algebra at a point.
    Isotropy {
        #[command(flatten)]
        op: OperatorInput,
        /// Comma-separated coordinates.
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        at: String,
    },
    /// Degeneracy verdict for a normal form.
    Verdict {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value = "smooth")]
        category: String,
        /// Continued fraction of an irrational b1 parameter, e.g. `[-1; (1)]`.
        #[arg(long, conflicts_with = "alpha", allow_hyphen_values = true)]
        cf: Option<String>,
        #[arg(long, default_value_t = 50)]
        depth: usize,
    },
    /// Degree-by-degree formal linearization at the origin.
    LinearizeJet {
        #[command(flatten)]
        op: OperatorInput,
        #[arg(long, env = "NIJ_MAXDEG", default_value_t = 6)]
        maxdeg: u32,
    },
    /// Brjuno series of a continued fraction.
    Brjuno {
        #[arg(long, allow_hyphen_values = true)]
        cf: String,
        #[arg(long, default_value_t = 50)]
        depth: usize,
    },
    /// Polynomial operator whose linear part is the given degenerate algebra.
    GenCounterexample {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, conflicts_with = "alpha", allow_hyphen_values = true)]
        cf: Option<String>,
    },
    /// Structure constants and multiplication matrices of a normal form.
    NormalForm {
        #[command(flatten)]
        form: FormArgs,
    },
    /// One command per line, run concurrently.
    Batch {
        /// File path or `-` for stdin.
        file: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Positive,
    Negative,
    Unknown,
    InputError,
    DataError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Positive => 0,
            Status::Negative => 1,
            Status::Unknown => 2,
            Status::InputError => 64,
            Status::DataError => 65,
        }
    }

    fn is_error(self) -> bool {
        matches!(self, Status::InputError | Status::DataError)
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub status: Status,
    pub json: Value,
    pub text: String,
}

impl Report {
    fn new(status: Status, json: Value, text: impl Into<String>) -> Self {
        Report {
            status,
            json,
            text: text.into(),
        }
    }

    fn error(err: &Error) -> Self {
        let status = match err {
            Error::Parse { .. } | Error::InvalidInput(_) | Error::InvalidNormalForm(_) | Error::Dimension { .. } => {
                Status::InputError
            }
            _ => Status::DataError,
        };
        Report::new(status, json!({ "status": "error", "error": err.to_string() }), format!("error: {err}"))
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).expect("serializable report")
        } else {
            self.text.clone()
        }
    }
}

fn read_source(src: &str) -> Result<String, Error> {
    if src == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
        return Ok(s);
    }
    if Path::new(src).is_file() {
        return fs::read_to_string(src).map_err(|e| Error::InvalidInput(format!("{src}: {e}")));
    }
    Ok(src.replace(';', "\n"))
}

fn load_operator(input: &OperatorInput) -> Result<OperatorField, Error> {
    if let Some(form) = &input.counterexample {
        return gen_counterexample(&form.parse()?);
    }
    let src = input
        .input
        .as_deref()
        .ok_or_else(|| Error::InvalidInput("missing operator input".into()))?;
    let text = read_source(src)?;
    if text.trim_start().starts_with("op") {
        return OperatorField::parse(&text);
    }
    let rows = text.lines().filter(|l| !l.trim().is_empty()).count();
    OperatorField::parse(&format!("op dim={rows} vars={}\n{text}", input.vars)).map_err(|e| match e {
        Error::Parse { line, column, message } => Error::Parse {
            line: line.saturating_sub(1).max(1),
            column,
            message,
        },
        other => other,
    })
}

fn load_form(args: &FormArgs) -> Result<NormalForm, Error> {
    match &args.alpha {
        Some(a) if args.form.contains(',') => Err(Error::InvalidInput(format!(
            "parameter given twice: `{}` and --alpha {a}",
            args.form
        ))),
        Some(a) => NormalForm::new(args.form.parse()?, Some(parse_rat(a)?)),
        None => args.form.parse(),
    }
}

fn matrix_json(m: &Matrix) -> Value {
    Value::from(
        m.to_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    )
}

fn matrix_text(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn op_text(op: &OperatorField) -> String {
    op.to_string().trim_end().to_string()
}

fn check_nijenhuis(input: &OperatorInput) -> Result<Report, Error> {
    let r = load_operator(input)?;
    let t = torsion(&r);
    let n = r.dim();
    let nonzero: Vec<Value> = t
        .components()
        .filter(|(_, _, _, p)| !p.is_zero())
        .map(|(k, i, j, p)| json!({ "k": k + 1, "i": i + 1, "j": j + 1, "value": p.to_string() }))
        .collect();
    let ok = nonzero.is_empty();
    let text = if ok {
        "torsion ≡ 0".to_string()
    } else {
        let mut lines = vec!["torsion ≢ 0".to_string()];
        for (k, i, j, p) in t.components().filter(|(_, _, _, p)| !p.is_zero()) {
            lines.push(format!("N^{}_{}{} = {p}", k + 1, i + 1, j + 1));
        }
        lines.join("\n")
    };
    Ok(Report::new(
        if ok { Status::Positive } else { Status::Negative },
        json!({
            "status": if ok { "nijenhuis" } else { "not_nijenhuis" },
            "is_nijenhuis": ok,
            "dim": n,
            "torsion": nonzero,
        }),
        text,
    ))
}

fn classification_json(a: &Lsa) -> Result<(Value, String), Error> {
    let res = classify(a)?;
    let field = res.witness_field().map(|d| d.to_string());
    let value = json!({
        "label": res.form.label.as_str(),
        "alpha": res.form.alpha.as_ref().map(nijenhuis::quad::fmt_rat),
        "form": res.form.to_string(),
        "witness": matrix_json(&res.witness),
        "witness_field_d": field,
        "verified": res.verified,
    });
    let text = format!(
        "{}\nwitness: {}\nverified: {}",
        res.form,
        matrix_text(&res.witness),
        res.verified
    );
    Ok((value, text))
}

fn classify_lsa(input: &str) -> Result<Report, Error> {
    let a = Lsa::parse(&read_source(input)?)?;
    if !a.is_left_symmetric() {
        return Ok(Report::new(
            Status::Negative,
            json!({ "status": "not_left_symmetric" }),
            "algebra is not left-symmetric",
        ));
    }
    let (mut value, text) = classification_json(&a)?;
    value["status"] = "classified".into();
    Ok(Report::new(Status::Positive, value, text))
}

fn parse_point(s: &str) -> Result<Vec<Quad>, Error> {
    s.split(',').map(|c| c.trim().replace('−', "-").parse()).collect()
}

fn isotropy(op: &OperatorInput, at: &str) -> Result<Report, Error> {
    let r = load_operator(op)?;
    let point = parse_point(at)?;
    let Some(lambda) = is_scalar_point(&r, &point)? else {
        return Ok(Report::new(
            Status::Negative,
            json!({ "status": "not_scalar_type", "scalar_type": false }),
            format!("({at}) is not a point of scalar type"),
        ));
    };
    let a = isotropy_algebra(&r, &point)?;
    let left = a.is_left_symmetric();
    let mut value = json!({
        "status": "scalar_type",
        "scalar_type": true,
        "lambda": lambda.to_string(),
        "algebra": a.to_text(),
        "left_symmetric": left,
    });
    let mut text = format!("scalar type, λ = {lambda}\n{}", a.to_text().trim_end());
    if left && a.dim() == 2 {
        let (c, t) = classification_json(&a)?;
        value["classification"] = c;
        text.push('\n');
        text.push_str(&t);
    }
    Ok(Report::new(Status::Positive, value, text))
}

fn verdict_cmd(form: &FormArgs, category: &str, cf: Option<&str>, depth: usize) -> Result<Report, Error> {
    let category: Category = category.parse()?;
    let (name, v) = match cf {
        Some(cf) => {
            let label: nijenhuis::Label = form.form.parse()?;
            if label != nijenhuis::Label::B1 {
                return Err(Error::InvalidInput("--cf applies to b1 only".into()));
            }
            let cf: CFrac = cf.parse()?;
            (format!("b1,{cf}"), verdict_irrational(&cf, category, depth)?)
        }
        None => {
            let nf = load_form(form)?;
            (nf.to_string(), verdict(&nf, category))
        }
    };
    let status = match v.value {
        VerdictValue::NonDegenerate => Status::Positive,
        VerdictValue::Degenerate => Status::Negative,
        VerdictValue::Unknown => Status::Unknown,
    };
    Ok(Report::new(
        status,
        json!({
            "status": v.value.to_string(),
            "form": name,
            "category": category.to_string(),
            "value": v.value.to_string(),
            "justification": v.justification,
        }),
        v.to_string(),
    ))
}

fn linearize(op: &OperatorInput, maxdeg: u32) -> Result<Report, Error> {
    let r = load_operator(op)?;
    let outcome = formal_linearize(&r, maxdeg);
    let report = LinearizationReport::new(maxdeg, &outcome);
    let status = match report.status {
        LinearizationStatus::Linearized => Status::Positive,
        LinearizationStatus::Obstructed => Status::Negative,
        LinearizationStatus::Error => match &outcome {
            Err(e) => Report::error(e).status,
            Ok(_) => Status::DataError,
        },
    };
    let text = match (&report.status, &report.map, &report.obstruction, &report.error) {
        (LinearizationStatus::Linearized, Some(map), _, _) => {
            format!("linearized to degree {maxdeg}\nmap: ({})", map.join(", "))
        }
        (LinearizationStatus::Obstructed, _, Some(o), _) => format!("obstructed: {o}"),
        (_, _, _, Some(e)) => format!("error: {e}"),
        _ => String::new(),
    };
    Ok(Report::new(
        status,
        serde_json::to_value(&report).expect("serializable report"),
        text,
    ))
}

fn brjuno_cmd(cf: &str, depth: usize) -> Result<Report, Error> {
    let cf: CFrac = cf.parse()?;
    let out = brjuno(&cf, depth)?;
    let (status, name, sum, used) = match out {
        BrjunoOutcome::BrjunoYes { partial_sum, depth } => (Status::Positive, "BrjunoYes", Some(partial_sum), Some(depth)),
        BrjunoOutcome::Undetermined { partial_sum, depth } => {
            (Status::Unknown, "Undetermined", Some(partial_sum), Some(depth))
        }
        BrjunoOutcome::NotIrrational => (Status::Negative, "NotIrrational", None, None),
    };
    let text = match sum {
        Some(s) => format!("{name} (partial sum {s:.6} at depth {})", used.unwrap_or(0)),
        None => name.to_string(),
    };
    Ok(Report::new(
        status,
        json!({ "status": name, "cf": cf.to_string(), "partial_sum": sum, "depth": used }),
        text,
    ))
}

fn counterexample_cmd(form: &FormArgs, cf: Option<&str>) -> Result<Report, Error> {
    let (name, result, nf) = match cf {
        Some(cf) => {
            let cf: CFrac = cf.parse()?;
            (format!("b1,{cf}"), gen_counterexample_irrational(&cf), None)
        }
        None => {
            let nf = load_form(form)?;
            (nf.to_string(), gen_counterexample(&nf), Some(nf))
        }
    };
    let r = match result {
        Ok(r) => r,
        Err(Error::NotDegenerate(_)) => {
            return Ok(Report::new(
                Status::Negative,
                json!({ "status": "non_degenerate", "form": name }),
                format!("{name} is non-degenerate: no counterexample"),
            ))
        }
        Err(e) => return Err(e),
    };
    let mut value = json!({
        "status": "generated",
        "form": name,
        "operator": r.to_string(),
        "rows": r.to_rows_string(),
    });
    let mut text = op_text(&r);
    if let Some(inv) = nf.as_ref().and_then(|f| separating_invariant(f).ok()) {
        value["separating_invariant"] = json!({
            "name": inv.name,
            "linear": inv.linear.to_string(),
            "perturbed": inv.perturbed.to_string(),
        });
        text.push_str(&format!("\n# {}: {} for the linear part, {} here", inv.name, inv.linear, inv.perturbed));
    }
    Ok(Report::new(Status::Positive, value, text))
}

fn normal_form_cmd(form: &FormArgs) -> Result<Report, Error> {
    let nf = load_form(form)?;
    let a = nf.algebra();
    let (l, r) = a.mult_matrices();
    let inv = a.invariant_polys();
    let text = format!(
        "{nf}\n{}\nL = {}\nR = {}",
        a.to_text().trim_end(),
        matrix_rows(&l),
        matrix_rows(&r)
    );
    Ok(Report::new(
        Status::Positive,
        json!({
            "status": "ok",
            "form": nf.to_string(),
            "algebra": a.to_text(),
            "L": l.to_rows_string(),
            "R": r.to_rows_string(),
            "invariants": {
                "trL": inv.tr_l.to_string(),
                "detL": inv.det_l.to_string(),
                "trR": inv.tr_r.to_string(),
                "detR": inv.det_r.to_string(),
            },
        }),
        text,
    ))
}

fn matrix_rows(op: &OperatorField) -> String {
    let rows: Vec<String> = op.to_rows_string().iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn batch(file: &str) -> Result<Report, Error> {
    let text = if file == "-" {
        read_source("-")?
    } else {
        fs::read_to_string(file).map_err(|e| Error::InvalidInput(format!("{file}: {e}")))?
    };
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let entries: Vec<(bool, Value, String)> = lines
        .par_iter()
        .map(|&(lineno, line)| batch_entry(lineno, line))
        .collect();
    let errors = entries.iter().filter(|e| !e.0).count();
    let status = if errors > 0 { Status::InputError } else { Status::Positive };
    let results: Vec<Value> = entries.iter().map(|e| e.1.clone()).collect();
    let text: Vec<String> = entries.iter().map(|e| e.2.clone()).collect();
    Ok(Report::new(
        status,
        json!({
            "status": if errors > 0 { "errors" } else { "ok" },
            "count": results.len(),
            "errors": errors,
            "results": results,
        }),
        text.join("\n"),
    ))
}

fn batch_entry(lineno: usize, line: &str) -> (bool, Value, String) {
    let fail = |msg: String| {
        (
            false,
            json!({ "line": lineno, "command": line, "error": msg }),
            format!("{lineno}: error: {msg}"),
        )
    };
    let Some(words) = shlex::split(line) else {
        return fail("unbalanced quotes".into());
    };
    let cli = match Cli::try_parse_from(std::iter::once("nij".to_string()).chain(words)) {
        Ok(c) => c,
        Err(e) => return fail(e.to_string().lines().next().unwrap_or("bad command").to_string()),
    };
    if matches!(cli.command, Command::Batch { .. }) {
        return fail("nested batch".into());
    }
    let report = execute(&cli.command);
    if report.status.is_error() {
        let msg = report.json["error"].as_str().unwrap_or("error").to_string();
        return fail(msg);
    }
    let summary = report.text.lines().next().unwrap_or("").to_string();
    (
        true,
        json!({
            "line": lineno,
            "command": line,
            "exit": report.status.exit_code(),
            "report": report.json,
        }),
        format!("{lineno}: exit {} {summary}", report.status.exit_code()),
    )
}

pub fn execute(cmd: &Command) -> Report {
    let out = match cmd {
        Command::CheckNijenhuis(op) => check_nijenhuis(op),
        Command::ClassifyLsa { input } => classify_lsa(input),
        Command::Isotropy { op, at } => isotropy(op, at),
        Command::Verdict {
            form,
            category,
            cf,
            depth,
        } => verdict_cmd(form, category, cf.as_deref(), *depth),
        Command::LinearizeJet { op, maxdeg } => linearize(op, *maxdeg),
        Command::Brjuno { cf, depth } => brjuno_cmd(cf, *depth),
        Command::GenCounterexample { form, cf } => counterexample_cmd(form, cf.as_deref()),
        Command::NormalForm { form } => normal_form_cmd(form),
        Command::Batch { file } => batch(file),
    };
    out.unwrap_or_else(|e| Report::error(&e))
}
