//! `homalg` subcommands. [`run`] returns the exit code and the text the binary prints,
//! so every command can be exercised in tests without a process.
//!
//! Exit codes: 0 when every check passes, 1 when a check or a construction's
//! precondition fails, 2 for unreadable input or bad arguments.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::exactla::Matrix;
use crate::homcore::{check_algebra, check_morphism, yau_twist};
use crate::homrep::{check_representation, regular_representation, semidirect_product, twist_representation, Representation};
use crate::matched::{check_matched_pair, matched_sum, MatchedPair};
use crate::rbops::{
    check_induced_structures, check_nijenhuis, check_relative_rbo, induced_algebra, induced_representation, nijenhuis_deform,
    OperatorContext,
};
use crate::rbosolve::{format_solution, generate_constraints, solve, verify_solution, SolutionSet};
use crate::report::CheckReport;

use super::{parse, serialize, Document, Item};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MapRole {
    Morphism,
    /// Relative Rota-Baxter operator; a self-map of an algebra uses the regular representation.
    Rbo,
    Nijenhuis,
}

#[derive(Debug, Parser)]
#[command(name = "homalg", version, about = "Check and construct Hom-type algebras with exact rational arithmetic")]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every applicable check on an algebra, a map or a representation.
    Check {
        file: PathBuf,
        name: String,
        /// What to check a map as. Defaults to a morphism for maps between algebras
        /// and to a relative Rota-Baxter operator for maps out of a representation.
        #[arg(long = "as", value_enum)]
        role: Option<MapRole>,
    },
    /// Check a representation against an algebra.
    CheckRep { file: PathBuf, alg: String, rep: String },
    /// Solve for all relative Rota-Baxter operators on an algebra.
    SolveRbo {
        file: PathBuf,
        alg: String,
        /// Representation to use instead of the regular one.
        #[arg(long)]
        rep: Option<String>,
        /// Check every point and sampled family members.
        #[arg(long)]
        verify: bool,
    },
    /// Semidirect product of an algebra with a representation (the regular one if omitted).
    Semidirect {
        file: PathBuf,
        alg: String,
        rep: Option<String>,
        #[arg(long)]
        verify: bool,
    },
    /// Sum of a matched pair: two algebras and their actions on each other.
    MatchedSum {
        file: PathBuf,
        a1: String,
        a2: String,
        /// Representation of the first algebra on the second one's space.
        on_2: String,
        /// Representation of the second algebra on the first one's space.
        on_1: String,
        #[arg(long)]
        verify: bool,
    },
    /// Yau twist of an algebra by a self-morphism, optionally twisting a representation too.
    Twist {
        file: PathBuf,
        alg: String,
        #[arg(long)]
        by: String,
        #[arg(long)]
        rep: Option<String>,
        #[arg(long)]
        verify: bool,
    },
    /// Deformation of an algebra by a Nijenhuis operator.
    Deform {
        file: PathBuf,
        alg: String,
        #[arg(long)]
        nijenhuis: String,
        #[arg(long)]
        verify: bool,
    },
    /// Algebra and representation induced by a relative Rota-Baxter operator.
    Induce {
        file: PathBuf,
        alg: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        rep: Option<String>,
        #[arg(long)]
        verify: bool,
    },
}

/// Accumulated command output.
struct Out {
    format: Format,
    text: String,
    code: i32,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn json(&mut self, v: Value) {
        self.line(v.to_string());
    }

    /// Emits a report; text lines get `prefix` so construction output stays parseable.
    fn report(&mut self, object: &str, report: &CheckReport, prefix: &str) {
        for c in &report.checks {
            match self.format {
                Format::Text => self.line(format!("{prefix}{c}")),
                Format::Json => self.json(check_json(object, c)),
            }
        }
        if !report.passed() {
            self.code = 1;
        }
    }

    fn fail(&mut self, err: &Error) {
        self.code = exit_code(err);
        match (self.format, err) {
            (Format::Text, Error::Precondition { what, report }) => {
                self.line(format!("precondition failed: {what}"));
                for c in report.failures() {
                    self.line(format!("  {c}"));
                }
            }
            (Format::Text, e) => self.line(format!("error: {e}")),
            (Format::Json, Error::Precondition { what, report }) => {
                self.json(json!({ "error": "precondition", "message": what }));
                for c in &report.checks {
                    self.json(check_json(what, c));
                }
            }
            (Format::Json, e) => self.json(json!({ "error": error_kind(e), "message": e.to_string() })),
        }
    }
}

fn check_json(object: &str, c: &crate::report::Check) -> Value {
    let witness = c.witness.as_ref().map(|w| {
        json!({
            "tuple": w.tuple.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "residual": w.residual.entries().iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    });
    json!({ "object": object, "identity": c.identity, "pass": c.pass, "witness": witness })
}

fn matrix_json(m: &Matrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect();
    json!(rows)
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Precondition { .. } | Error::Soundness(_) => 1,
        _ => 2,
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::Shape(_) => "shape",
        Error::Kind(_) => "kind",
        Error::Precondition { .. } => "precondition",
        Error::Soundness(_) => "soundness",
        Error::Invalid(_) => "invalid",
        Error::UnknownName(_) => "unknown-name",
        Error::Parse(_) => "parse",
    }
}

fn load(path: &PathBuf) -> Result<Document, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let mut out = Out {
        format: cli.format,
        text: String::new(),
        code: 0,
    };
    if let Err(e) = execute(cli.command, &mut out) {
        out.fail(&e);
    }
    (out.code, out.text)
}

/// The representation named by `rep`, or the regular one, checked to sit on `alg_name`.
fn chosen_rep(doc: &Document, alg_name: &str, rep: Option<&str>) -> Result<Representation, Error> {
    let alg = doc.algebra(alg_name)?;
    match rep {
        None => Ok(regular_representation(alg)),
        Some(r) => {
            let (base, rep) = doc.representation(r)?;
            if base != alg_name {
                return Err(Error::Invalid(format!("representation `{r}` is on `{base}`, not `{alg_name}`")));
            }
            Ok(rep.clone())
        }
    }
}

fn check_map(doc: &Document, src: &str, dst: &str, m: &Matrix, role: Option<MapRole>) -> Result<CheckReport, Error> {
    let from_rep = matches!(doc.get(src), Some(Item::Representation { .. }));
    let role = role.unwrap_or(if from_rep { MapRole::Rbo } else { MapRole::Morphism });
    let target = doc.algebra(dst)?;
    match role {
        MapRole::Morphism => check_morphism(m, doc.algebra(src)?, target),
        MapRole::Rbo => {
            let rep = if from_rep { chosen_rep(doc, dst, Some(src))? } else { chosen_rep(doc, dst, None)? };
            if !from_rep && src != dst {
                return Err(Error::Invalid(format!("a relative Rota-Baxter operator needs a map into `{dst}` from `{dst}` or one of its representations")));
            }
            Ok(check_relative_rbo(&OperatorContext::new(target.clone(), rep, m.clone())?))
        }
        MapRole::Nijenhuis => {
            if src != dst {
                return Err(Error::Invalid(format!("a Nijenhuis operator is a self-map, not {src} -> {dst}")));
            }
            check_nijenhuis(target, m)
        }
    }
}

/// A self-map of `alg_name`.
fn self_map<'a>(doc: &'a Document, alg_name: &str, map: &str) -> Result<&'a Matrix, Error> {
    let (src, dst, m) = doc.map(map)?;
    if src != alg_name || dst != alg_name {
        return Err(Error::Invalid(format!("map `{map}` goes {src} -> {dst}, expected {alg_name} -> {alg_name}")));
    }
    Ok(m)
}

/// Prints `new` items (with whatever they reference from `doc`) in DSL form.
fn emit(out: &mut Out, doc: &Document, new: Vec<(String, Item)>, checks: Vec<(String, CheckReport)>) -> Result<(), Error> {
    let mut result = Document::new();
    for (name, item) in &new {
        for r in match item {
            Item::Algebra(_) => vec![],
            Item::Map { src, dst, .. } => vec![src.clone(), dst.clone()],
            Item::Representation { base, .. } => vec![base.clone()],
        } {
            if new.iter().all(|(n, _)| *n != r) {
                doc.copy_with_dependencies(&r, &mut result)?;
            }
        }
        result.push(name.clone(), item.clone())?;
    }
    match out.format {
        Format::Text => {
            for (object, r) in &checks {
                out.report(object, r, "# ");
            }
            out.text.push_str(&serialize(&result));
        }
        Format::Json => {
            for (object, r) in &checks {
                out.report(object, r, "");
            }
            let names: Vec<&str> = new.iter().map(|(n, _)| n.as_str()).collect();
            out.json(json!({ "objects": names, "dsl": serialize(&result) }));
        }
    }
    Ok(())
}

fn execute(command: Command, out: &mut Out) -> Result<(), Error> {
    match command {
        Command::Check { file, name, role } => {
            let doc = load(&file)?;
            let report = match doc.get(&name).ok_or_else(|| Error::UnknownName(name.clone()))? {
                Item::Algebra(a) => check_algebra(a),
                Item::Map { src, dst, matrix } => check_map(&doc, src, dst, matrix, role)?,
                Item::Representation { base, rep } => check_representation(rep, doc.algebra(base)?)?,
            };
            out.report(&name, &report, "");
        }
        Command::CheckRep { file, alg, rep } => {
            let doc = load(&file)?;
            let r = chosen_rep(&doc, &alg, Some(&rep))?;
            let report = check_representation(&r, doc.algebra(&alg)?)?;
            out.report(&rep, &report, "");
        }
        Command::SolveRbo { file, alg, rep, verify } => {
            let doc = load(&file)?;
            let a = doc.algebra(&alg)?;
            let r = chosen_rep(&doc, &alg, rep.as_deref())?;
            let sys = generate_constraints(a, &r)?;
            let sol = solve(&sys);
            let verified = if verify { Some(verify_solution(a, &r, &sol, 4)?) } else { None };
            match out.format {
                Format::Text => {
                    out.line(format_solution(&sys, &sol));
                    if let Some(v) = &verified {
                        out.line(format!("verified: {} checks passed", v.checks.len()));
                    }
                }
                Format::Json => {
                    if let Some(v) = &verified {
                        out.report(&alg, v, "");
                    }
                    let body = match &sol {
                        SolutionSet::Finite(points) => json!({
                            "status": "finite",
                            "points": points.iter().map(matrix_json).collect::<Vec<_>>(),
                        }),
                        SolutionSet::AffineFamily(fams) => json!({
                            "status": "family",
                            "families": fams.iter().map(|f| json!({
                                "params": f.params,
                                "particular": matrix_json(&f.particular),
                                "basis": f.basis.iter().map(matrix_json).collect::<Vec<_>>(),
                            })).collect::<Vec<_>>(),
                        }),
                        SolutionSet::Residual(rest) => json!({
                            "status": "residual",
                            "equations": rest.equations.iter()
                                .map(|e| format!("{} = 0", e.display(&rest.names)))
                                .collect::<Vec<_>>(),
                        }),
                    };
                    let mut v = json!({ "object": alg, "text": format_solution(&sys, &sol) });
                    v.as_object_mut().expect("object").extend(body.as_object().expect("object").clone());
                    out.json(v);
                }
            }
        }
        Command::Semidirect { file, alg, rep, verify } => {
            let doc = load(&file)?;
            let r = chosen_rep(&doc, &alg, rep.as_deref())?;
            let sum = semidirect_product(doc.algebra(&alg)?, &r)?;
            let name = format!("{alg}_semidirect_{}", rep.as_deref().unwrap_or("regular"));
            let checks = if verify { vec![(name.clone(), check_algebra(&sum))] } else { vec![] };
            emit(out, &doc, vec![(name, Item::Algebra(sum))], checks)?;
        }
        Command::MatchedSum { file, a1, a2, on_2, on_1, verify } => {
            let doc = load(&file)?;
            let r2 = chosen_rep(&doc, &a1, Some(&on_2))?;
            let r1 = chosen_rep(&doc, &a2, Some(&on_1))?;
            let (s2, s1) = (doc.space(&on_2)?, doc.space(&on_1)?);
            if s2.dim != doc.algebra(&a2)?.dim() || s1.dim != doc.algebra(&a1)?.dim() {
                return Err(Error::shape("each action must act on the other algebra's space"));
            }
            let mp = MatchedPair::new(doc.algebra(&a1)?.clone(), doc.algebra(&a2)?.clone(), r2, r1)?;
            let report = check_matched_pair(&mp)?;
            if !report.passed() {
                return Err(Error::precondition("the actions do not form a matched pair", report));
            }
            let sum = matched_sum(&mp)?;
            let name = format!("{a1}_sum_{a2}");
            let checks = if verify { vec![(name.clone(), check_algebra(&sum))] } else { vec![] };
            emit(out, &doc, vec![(name, Item::Algebra(sum))], checks)?;
        }
        Command::Twist { file, alg, by, rep, verify } => {
            let doc = load(&file)?;
            let a = doc.algebra(&alg)?;
            let beta = self_map(&doc, &alg, &by)?;
            let twisted = yau_twist(a, beta)?;
            let name = format!("{alg}_twist_{by}");
            let mut checks = Vec::new();
            if verify {
                checks.push((name.clone(), check_algebra(&twisted)));
            }
            let mut items = vec![(name, Item::Algebra(twisted))];
            if let Some(r) = rep {
                let base = chosen_rep(&doc, &alg, Some(&r))?;
                let tr = twist_representation(&base, beta, a)?;
                let rname = format!("{r}_twist_{by}");
                if verify {
                    checks.push((rname.clone(), check_representation(&tr, a)?));
                }
                items.push((rname, Item::Representation { base: alg.clone(), rep: tr }));
            }
            emit(out, &doc, items, checks)?;
        }
        Command::Deform { file, alg, nijenhuis, verify } => {
            let doc = load(&file)?;
            let a = doc.algebra(&alg)?;
            let n = self_map(&doc, &alg, &nijenhuis)?;
            let deformed = nijenhuis_deform(a, n)?;
            let name = format!("{alg}_deform_{nijenhuis}");
            let checks = if verify {
                vec![
                    (name.clone(), check_algebra(&deformed)),
                    (format!("{nijenhuis}: {name} -> {alg}"), check_morphism(n, &deformed, a)?),
                ]
            } else {
                vec![]
            };
            emit(out, &doc, vec![(name, Item::Algebra(deformed))], checks)?;
        }
        Command::Induce { file, alg, t, rep, verify } => {
            let doc = load(&file)?;
            let a = doc.algebra(&alg)?;
            let r = chosen_rep(&doc, &alg, rep.as_deref())?;
            let (src, dst, m) = doc.map(&t)?;
            let expected_src = rep.as_deref().unwrap_or(&alg);
            if src != expected_src || dst != alg {
                return Err(Error::Invalid(format!("map `{t}` goes {src} -> {dst}, expected {expected_src} -> {alg}")));
            }
            let ctx = OperatorContext::new(a.clone(), r, m.clone())?;
            let induced = induced_algebra(&ctx)?;
            let irep = induced_representation(&ctx)?;
            let name = format!("{alg}_induced_{t}");
            let rname = format!("{name}_on_{alg}");
            let checks = if verify { vec![(name.clone(), check_induced_structures(&ctx)?)] } else { vec![] };
            emit(
                out,
                &doc,
                vec![
                    (name.clone(), Item::Algebra(induced)),
                    (rname, Item::Representation { base: name, rep: irep }),
                ],
                checks,
            )?;
        }
    }
    Ok(())
}

