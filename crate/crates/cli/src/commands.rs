use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::{json, Value};

use gaussloop::invariants::{phi_fr, phi_general, phi_ijk, symmetry_report};
use gaussloop::reidemeister::{derivative_group, derivative_int, Move};
use gaussloop::surface::{commuting_check, gv_functional, phi_sigma, HomologyClass, LabeledSurfaceDiagram};
use gaussloop::verify::{certify, replay as replay_moves, Invariant, Transcript, WalkPlan};
use gaussloop::weights::weights;
use gaussloop::{AElement, GaussDiagram};

use crate::input::{diagrams, read_text, CliError};
use crate::{ComputeArgs, FiniteTypeArgs, InputArg, SurfaceArgs, VerifyArgs};

#[derive(Debug, Serialize)]
pub struct Report {
    pub input_echo: String,
    pub results: BTreeMap<String, Value>,
    pub diagnostics: Vec<String>,
}

impl Report {
    fn new(input_echo: String) -> Report {
        Report {
            input_echo,
            results: BTreeMap::new(),
            diagnostics: Vec::new(),
        }
    }
}

fn emit(report: &Report) -> Result<(), CliError> {
    println!("{}", serde_json::to_string(report)?);
    Ok(())
}

fn support(x: &AElement) -> Value {
    json!(x.support())
}

fn parse_indices(s: &str) -> Result<(u64, u64, u64), CliError> {
    let bad = || CliError::Usage(format!("--phi expects three indices `i,j,k`, got `{s}`"));
    let v: Vec<u64> = s
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [i, j, k] if i != j && j != k && i != k => Ok((i, j, k)),
        [i, j, k] => Err(CliError::Usage(format!("indices {i},{j},{k} are not pairwise distinct"))),
        _ => Err(bad()),
    }
}

pub fn compute(args: &ComputeArgs) -> Result<ExitCode, CliError> {
    let indices: Vec<_> = args.phi.iter().map(|s| parse_indices(s)).collect::<Result<_, _>>()?;
    if indices.is_empty() && !(args.phifr || args.phigen || args.weights || args.writhe) {
        return Err(CliError::Usage(
            "nothing to compute: pass --phi, --phifr, --phigen, --weights or --writhe".into(),
        ));
    }
    for (_, d) in diagrams(&args.input.input)? {
        let mut r = Report::new(d.to_string());
        if !indices.is_empty() {
            let mut phi = BTreeMap::new();
            for &(i, j, k) in &indices {
                phi.insert(format!("({i},{j},{k})"), phi_ijk(&d, i, j, k)?);
            }
            r.results.insert("phi".into(), json!(phi));
        }
        if args.phifr {
            let v = phi_fr(&d)?;
            r.diagnostics.push(format!("phi_fr = {v}"));
            r.results.insert("phi_fr".into(), support(&v));
        }
        if args.phigen {
            r.results.insert("phigen".into(), json!(phi_general(&d)?.records()));
        }
        if args.weights {
            r.results.insert("weights".into(), json!(weights(&d)?));
        }
        if args.writhe {
            r.results.insert("writhe".into(), json!(d.writhe()?));
        }
        emit(&r)?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: &VerifyArgs) -> Result<ExitCode, CliError> {
    let plan = WalkPlan {
        frame_preserving: args.frame_preserving,
        parity_aware: args.parity_aware,
        check_every: args.check_every.max(1),
        ..WalkPlan::new(args.moves, args.seed)
    };
    let mut violations: Vec<Transcript> = Vec::new();
    for (line, d) in diagrams(&args.input.input)? {
        let out = certify(&d, &args.invariants, &plan)?;
        let mut r = Report::new(d.to_string());
        let names: Vec<String> = args.invariants.iter().map(Invariant::to_string).collect();
        r.results.insert("invariants".into(), json!(names));
        r.results.insert("walk".into(), json!(out.stats));
        r.results.insert("violation".into(), json!(out.violation));
        let s = &out.stats;
        let summary = match &out.violation {
            None => format!("line {line}: {} moves ({} R1, {} R2, {} R3), no violation", s.steps, s.r1, s.r2, s.r3),
            Some(t) => format!("line {line}: {} changed after {} moves", t.check, t.moves.len()),
        };
        eprintln!("{summary}");
        r.diagnostics.push(summary);
        violations.extend(out.violation);
        emit(&r)?;
    }
    if violations.is_empty() {
        return Ok(ExitCode::SUCCESS);
    }
    let path = &args.transcript;
    fs::write(path, serde_json::to_string_pretty(&violations)?).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    eprintln!("transcript written to {}", path.display());
    Ok(ExitCode::from(1))
}

pub fn symmetry(args: &InputArg) -> Result<ExitCode, CliError> {
    for (_, d) in diagrams(&args.input)? {
        let s = symmetry_report(&d)?;
        let mut r = Report::new(d.to_string());
        r.diagnostics.push(format!("phi_fr = {}, reflected = {}", s.phi_fr, s.reflected));
        r.results.insert("phi_fr".into(), support(&s.phi_fr));
        r.results.insert("reflected".into(), support(&s.reflected));
        r.results.insert("detects_noninvertible".into(), json!(s.detects_noninvertible));
        r.results.insert("detects_chiral".into(), json!(s.detects_chiral));
        r.results.insert("detects_switch".into(), json!(s.detects_switch));
        emit(&r)?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn finite_type(args: &FiniteTypeArgs) -> Result<ExitCode, CliError> {
    for (_, d) in diagrams(&args.input.input)? {
        let mut r = Report::new(d.to_string());
        let value = match args.invariant {
            Invariant::Phi(i, j, k) => json!(derivative_int(&d, |x| phi_ijk(x, i, j, k))?),
            Invariant::PhiFr => {
                let v = derivative_group(&d, phi_fr)?;
                r.diagnostics.push(format!("derivative = {v}"));
                support(&v)
            }
            Invariant::PhiGeneral => {
                return Err(CliError::Usage("finite-type supports phi:i,j,k and phifr".into()));
            }
        };
        r.diagnostics.push(format!("{} singular arrows", d.singular_arrows().len()));
        r.results.insert("derivative".into(), value);
        emit(&r)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_classes(s: &str, genus: usize) -> Result<[HomologyClass; 3], CliError> {
    let bad = || CliError::Usage(format!("--gv expects three classes of {} integers `a;b;c`, got `{s}`", 2 * genus));
    let classes: Vec<HomologyClass> = s
        .split(';')
        .map(|c| {
            let v: Vec<i64> = c.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
            if v.len() == 2 * genus {
                Ok(HomologyClass(v))
            } else {
                Err(bad())
            }
        })
        .collect::<Result<_, _>>()?;
    classes.try_into().map_err(|_| bad())
}

pub fn surface(args: &SurfaceArgs) -> Result<ExitCode, CliError> {
    if !(args.check_commute || args.phi_sigma || args.gv.is_some()) {
        return Err(CliError::Usage("nothing to compute: pass --check-commute, --phi-sigma or --gv".into()));
    }
    let text = read_text(args.input.as_deref())?;
    let d = LabeledSurfaceDiagram::parse(&text).map_err(|e| match e {
        gaussloop::Error::Format { line, message } => CliError::Parse { line, column: 1, message },
        other => CliError::Library(other),
    })?;
    let mut r = Report::new(d.to_string());
    let p = phi_sigma(&d);
    if args.phi_sigma {
        r.results.insert("phi_sigma".into(), json!(p.records()));
    }
    if let Some(spec) = &args.gv {
        let [al, be, ga] = parse_classes(spec, d.genus())?;
        let v = gv_functional(&p, &al, &be, &ga).map_err(|e| CliError::Usage(format!("--gv {al} {be} {ga}: {e}")))?;
        r.results.insert("gv".into(), json!(v));
    }
    if args.check_commute {
        let c = commuting_check(&d)?;
        r.diagnostics.push(format!("commutes: {}", c.commutes));
        r.results.insert(
            "commute".into(),
            json!({ "commutes": c.commutes, "lhs": c.lhs.records(), "rhs": c.rhs.records() }),
        );
    }
    emit(&r)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(serde::Deserialize)]
struct Replayable {
    start: String,
    moves: Vec<Move>,
}

pub fn replay(path: &Path) -> Result<ExitCode, CliError> {
    let text = read_text(Some(path))?;
    let value: Value = serde_json::from_str(&text)?;
    // A transcript file holds a list; a single transcript object also works.
    let items: Vec<Replayable> = match value {
        Value::Array(_) => serde_json::from_value(value)?,
        other => vec![serde_json::from_value(other)?],
    };
    for t in items {
        let start: GaussDiagram = t.start.parse()?;
        let path = replay_moves(&start, &t.moves)?;
        let mut r = Report::new(start.to_string());
        let codes: Vec<String> = path.iter().map(GaussDiagram::to_string).collect();
        r.diagnostics.push(format!("{} moves replayed", t.moves.len()));
        r.results.insert("diagrams".into(), json!(codes));
        emit(&r)?;
    }
    Ok(ExitCode::SUCCESS)
}
