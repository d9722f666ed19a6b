use std::fmt;
use std::fs;
use std::path::Path;

use outclass::bratteli::{
    check_certificate, check_intertwining, equivalent, k0_equal, k0_positive, to_dot, BratteliDiagram,
    Decision, K0Element, SearchBounds, Verdict,
};
use outclass::matcat::{enumerate_homs, export_as_spec, hom_exists, AlgebraObject, HomFilter, MultiplicityMorphism};
use outclass::metric::{
    approximate_intertwine, EpsilonSchedule, ExhaustiveCorrector, FirstWithinTolerance, GroupHomCategory,
    IntertwineError, IntertwiningProblem, IntertwiningResult, MetricCategory,
};
use outclass::permgrp::{alternating_group, verify_nonclosure_a3_a6_a7, GroupCaps, GroupHom, HomRecord};
use outclass::quotient::{
    cantor_bernstein_check, finite_sets_all_maps_instance, finite_sets_injections_instance,
    group_endomorphism_category, is_super_strong, quotient, verify_inner_axiom, FiniteCategorySpec,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::{BoundArgs, Command, HomArgs, Oracle, Schedule};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Data(_) => 65,
            CliError::Io(_) => 66,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Data(m) => write!(f, "invalid input: {m}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

fn data(e: impl fmt::Display) -> CliError {
    CliError::Data(e.to_string())
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T) {
    print!("{}", crate::render::to_json_text(value));
}

const TRUE: u8 = 0;
const FALSE: u8 = 1;
const UNKNOWN: u8 = 2;

fn decision_code(d: Decision) -> u8 {
    match d {
        Decision::True => TRUE,
        Decision::False => FALSE,
        Decision::Unknown => UNKNOWN,
    }
}

pub fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Compose { left, right } => {
            let f: MultiplicityMorphism = read_json(&left)?;
            let g: MultiplicityMorphism = read_json(&right)?;
            print_json(&f.then(&g).map_err(data)?);
            Ok(TRUE)
        }
        Command::HomExists(args) => {
            let (a, b, filter) = hom_args(&args)?;
            let exists = hom_exists(&a, &b, filter);
            print_json(&json!({
                "source": a,
                "target": b,
                "unital": filter.unital,
                "allow_zero": filter.allow_zero,
                "exists": exists,
            }));
            Ok(if exists { TRUE } else { FALSE })
        }
        Command::EnumerateHoms(args) => {
            let (a, b, filter) = hom_args(&args)?;
            let homs = enumerate_homs(&a, &b, filter);
            let matrices: Vec<_> = homs.iter().map(|h| h.matrix().to_rows()).collect();
            print_json(&json!({
                "source": a,
                "target": b,
                "unital": filter.unital,
                "allow_zero": filter.allow_zero,
                "count": homs.len(),
                "matrices": matrices,
            }));
            Ok(TRUE)
        }
        Command::Telescope { diagram, indices } => {
            let d: BratteliDiagram = read_json(&diagram)?;
            print_json(&d.telescope(&indices).map_err(data)?);
            Ok(TRUE)
        }
        Command::Equiv { first, second, bounds } => equiv(&read_json(&first)?, &read_json(&second)?, bounds),
        Command::K0Eq { diagram, x, y, depth } => {
            let d: BratteliDiagram = read_json(&diagram)?;
            let (x, y) = (parse_element(&x)?, parse_element(&y)?);
            let v = k0_equal(&d, &x, &y, depth).map_err(data)?;
            print_json(&json!({ "x": x, "y": y, "depth": depth, "decision": v.decision, "level": v.level }));
            Ok(decision_code(v.decision))
        }
        Command::K0Pos { diagram, x, depth } => {
            let d: BratteliDiagram = read_json(&diagram)?;
            let x = parse_element(&x)?;
            let v = k0_positive(&d, &x, depth).map_err(data)?;
            print_json(&json!({ "x": x, "depth": depth, "decision": v.decision, "level": v.level }));
            Ok(decision_code(v.decision))
        }
        Command::Dot { diagram, levels, output } => {
            let mut d: BratteliDiagram = read_json(&diagram)?;
            if let Some(n) = levels {
                d = d.extended(n).map_err(data)?;
            }
            let text = to_dot(&d);
            match output {
                Some(path) => fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(TRUE)
        }
        Command::Intertwine {
            problem,
            schedule,
            oracle,
            max_rounds,
        } => intertwine(&read_json(&problem)?, schedule, oracle, max_rounds),
        Command::VerifyCounterexample => {
            let report = verify_nonclosure_a3_a6_a7().map_err(data)?;
            let holds = report.holds();
            let mut value = serde_json::to_value(&report).expect("serializable");
            value["holds"] = json!(holds);
            print_json(&value);
            Ok(if holds { TRUE } else { FALSE })
        }
        Command::QuotientCheck { spec, builtin, emit_spec } => {
            let spec = match (spec, builtin) {
                (Some(path), _) => {
                    let text = fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    FiniteCategorySpec::from_json(&text).map_err(data)?
                }
                (None, Some(name)) => builtin_spec(&name)?,
                (None, None) => return Err(CliError::Usage("give a spec file or --builtin".into())),
            };
            if emit_spec {
                print!("{}", spec.to_json());
                return Ok(TRUE);
            }
            quotient_check(&spec)
        }
    }
}

fn hom_args(args: &HomArgs) -> Result<(AlgebraObject, AlgebraObject, HomFilter), CliError> {
    let a = AlgebraObject::parse(&args.source).map_err(|e| CliError::Usage(e.to_string()))?;
    let b = AlgebraObject::parse(&args.target).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok((
        a,
        b,
        HomFilter {
            unital: args.unital,
            allow_zero: !args.no_zero,
        },
    ))
}

/// `LEVEL:V1,V2,..`
fn parse_element(text: &str) -> Result<K0Element, CliError> {
    let bad = || CliError::Usage(format!("expected LEVEL:V1,V2,.. but got {text:?}"));
    let (level, vector) = text.split_once(':').ok_or_else(bad)?;
    let level = level.trim().parse().map_err(|_| bad())?;
    let vector = vector
        .split(',')
        .map(|v| v.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| bad())?;
    Ok(K0Element::new(level, vector))
}

fn equiv(d: &BratteliDiagram, e: &BratteliDiagram, b: BoundArgs) -> Result<u8, CliError> {
    let bounds = SearchBounds {
        depth: b.depth,
        level_bound: b.level_bound,
        entry_bound: b.entry_bound,
    };
    let verdict = equivalent(d, e, bounds);
    let (code, checked) = match &verdict {
        Verdict::Equivalent { witness } => (TRUE, check_intertwining(d, e, witness).map_err(data)?),
        Verdict::Distinct { certificate } => (FALSE, check_certificate(d, e, certificate)),
        Verdict::Unknown { .. } => (UNKNOWN, true),
    };
    if !checked {
        return Err(CliError::Data("emitted evidence failed its own check".into()));
    }
    let mut value = serde_json::to_value(&verdict).expect("serializable");
    value["bounds"] = json!(bounds);
    value["checked"] = json!(checked);
    print_json(&value);
    Ok(code)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    f1: HomRecord,
    g1: HomRecord,
}

fn intertwine(p: &ProblemFile, schedule: Schedule, oracle: Oracle, max_rounds: usize) -> Result<u8, CliError> {
    let caps = GroupCaps::default();
    let f1 = p.f1.to_hom(&caps).map_err(data)?;
    let g1 = p.g1.to_hom(&caps).map_err(data)?;
    if f1.target().kind() != g1.source().kind() || g1.target().kind() != f1.source().kind() {
        return Err(CliError::Data("f1 and g1 must go a → b and b → a".into()));
    }
    let mut groups = vec![f1.source().clone()];
    if f1.target().kind() != f1.source().kind() {
        groups.push(f1.target().clone());
    }
    let cat = GroupHomCategory::new(groups);
    let problem = IntertwiningProblem {
        schedule: match schedule {
            Schedule::Adaptive => EpsilonSchedule::Adaptive,
            Schedule::Geometric => EpsilonSchedule::Geometric,
        },
        max_rounds,
        ..IntertwiningProblem::new(f1.source().kind().clone(), f1.target().kind().clone(), f1.clone(), g1.clone())
    };
    let outcome = match oracle {
        Oracle::Exhaustive => approximate_intertwine(&cat, &problem, &ExhaustiveCorrector),
        Oracle::First => approximate_intertwine(&cat, &problem, &FirstWithinTolerance),
    };
    let settings = json!({
        "schedule": format!("{schedule:?}").to_lowercase(),
        "oracle": format!("{oracle:?}").to_lowercase(),
        "max_rounds": max_rounds,
    });
    match outcome {
        Ok(r) => {
            print_json(&converged_json(&cat, &f1, &g1, &r, settings)?);
            Ok(TRUE)
        }
        Err(IntertwineError::Precondition {
            f_then_g_inner,
            g_then_f_inner,
        }) => {
            print_json(&json!({
                "settings": settings,
                "status": "precondition_failed",
                "f_then_g_inner": f_then_g_inner,
                "g_then_f_inner": g_then_f_inner,
            }));
            Ok(FALSE)
        }
        Err(IntertwineError::NotConverged(failure)) => {
            print_json(&json!({
                "settings": settings,
                "status": "not_converged",
                "reason": failure.reason,
                "f": HomRecord::from(&failure.f),
                "g": HomRecord::from(&failure.g),
                "residual_a": failure.residual_a.to_string(),
                "residual_b": failure.residual_b.to_string(),
                "steps": failure.steps,
            }));
            Ok(UNKNOWN)
        }
        Err(IntertwineError::Metric(e)) => Err(data(e)),
    }
}

fn converged_json(
    cat: &GroupHomCategory,
    f1: &GroupHom,
    g1: &GroupHom,
    r: &IntertwiningResult<GroupHom>,
    settings: Value,
) -> Result<Value, CliError> {
    let id_a = GroupHom::identity(f1.source());
    let id_b = GroupHom::identity(f1.target());
    let mutually_inverse = r.f.then(&r.g).map_err(data)? == id_a && r.g.then(&r.f).map_err(data)? == id_b;
    let inner_b = cat.inner(f1.target().kind()).map_err(data)?;
    let inner_a = cat.inner(f1.source().kind()).map_err(data)?;
    let f_in_class = inner_b.iter().any(|k| f1.then(k).is_ok_and(|x| x == r.f));
    let g_in_class = inner_a.iter().any(|k| g1.then(k).is_ok_and(|x| x == r.g));
    Ok(json!({
        "settings": settings,
        "status": "converged",
        "f": HomRecord::from(&r.f),
        "g": HomRecord::from(&r.g),
        "mutually_inverse": mutually_inverse,
        "f_in_class_of_f1": f_in_class,
        "g_in_class_of_g1": g_in_class,
        "cauchy_bounds_hold": r.cauchy_bounds_hold(),
        "steps": r.steps,
        "f_bounds": r.f_bounds,
        "g_bounds": r.g_bounds,
    }))
}

fn builtin_spec(name: &str) -> Result<FiniteCategorySpec, CliError> {
    let usage = || CliError::Usage(format!("unknown builtin {name:?}; use a5, matcat:N, injections:N or all-maps:N"));
    let (kind, arg) = match name.split_once(':') {
        Some((k, n)) => (k, Some(n.parse::<usize>().map_err(|_| usage())?)),
        None => (name, None),
    };
    match (kind, arg) {
        ("a5", None) => {
            let a5 = alternating_group(5).map_err(data)?;
            group_endomorphism_category(&a5).map_err(data)
        }
        ("matcat", Some(n)) => export_as_spec(n as u64).map(|e| e.spec).map_err(data),
        ("injections", Some(n)) => finite_sets_injections_instance(n).map_err(data),
        ("all-maps", Some(n)) => finite_sets_all_maps_instance(n).map_err(data),
        _ => Err(usage()),
    }
}

fn quotient_check(spec: &FiniteCategorySpec) -> Result<u8, CliError> {
    spec.validate().map_err(data)?;
    let axiom = verify_inner_axiom(spec).map_err(data)?;
    let mut report = json!({
        "objects": spec.object_count(),
        "morphisms": spec.morphism_count(),
        "axiom_violations": axiom,
    });
    let holds = match quotient(spec) {
        Ok(q) => {
            let super_strong = is_super_strong(&q);
            let cantor_bernstein = if q.is_thin() {
                Some(cantor_bernstein_check(&q).map_err(data)?)
            } else {
                None
            };
            report["quotient"] = json!({
                "classes": q.class_count(),
                "thin": q.is_thin(),
                "cantor_bernstein_violations": cantor_bernstein,
            });
            report["super_strong_violations"] = json!(super_strong);
            super_strong.is_empty()
        }
        Err(e) => {
            report["quotient_error"] = json!(e.to_string());
            false
        }
    };
    report["holds"] = json!(holds && axiom.is_empty());
    print_json(&report);
    Ok(if holds && axiom.is_empty() { TRUE } else { FALSE })
}
