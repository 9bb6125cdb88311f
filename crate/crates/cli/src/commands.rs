use std::collections::BTreeMap;

use predict_core::constructions::adversarial_sequence;
use predict_core::predictor::{
    martingale_to_predictor, predictor_to_martingale, table_predictor, TableRule,
};
use predict_core::process::{
    digit_aligned_process_with, distribution_to_endless_process_with,
    endless_process_to_distribution, predictor_to_process_with, MonotoneProcess, ProcessTable,
};
use predict_core::randomness::{calibration_report, check_window, growth_profile, GrowthFunction};
use predict_core::ratio::format_log2;
use predict_core::{BitStr, Error, Predictor, StagedPredictor};
use serde_json::Value;

use crate::args::{AdversaryArgs, AnalyzeArgs, CalibrateArgs, ConvertArgs, Target};
use crate::error::{CliError, CliResult};
use crate::input::{read_process, read_stream, value_table_text};
use crate::report::{Report, Table};
use crate::spec::PredictorSpec;

/// A report plus, for conversions, the text of the produced object.
pub struct Outcome {
    pub report: Report,
    pub object: Option<Vec<String>>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Self {
            report,
            object: None,
        }
    }
}

fn text(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn predictor(spec: &str) -> CliResult<(PredictorSpec, Predictor)> {
    let spec = PredictorSpec::parse(spec)?;
    let p = spec.build()?;
    Ok((spec, p))
}

pub fn analyze(a: &AnalyzeArgs) -> CliResult<Outcome> {
    let spec = PredictorSpec::parse(&a.predictor)?;
    let g: GrowthFunction = a
        .growth
        .parse()
        .map_err(|e: Error| CliError::usage(e.to_string()))?;
    let p = spec.build()?;
    let z = read_stream(&a.stream)?;
    let rows = growth_profile(p.as_ref(), &z, &g, a.stages);

    let mut r = Report::new("analyze");
    r.param("stream", text(a.stream.display()))
        .param("predictor", text(&spec))
        .param("growth", text(&g))
        .param("stages", a.stages);
    r.field("length", z.len());
    r.table = Some((
        "profile",
        Table {
            columns: vec!["n", "ratio", "redundancy", "growth", "over_growth"],
            rows: rows
                .iter()
                .map(|row| {
                    vec![
                        row.n.into(),
                        text(&row.ratio),
                        text(row.redundancy_display()),
                        row.growth.into(),
                        text(row.over_growth_display()),
                    ]
                })
                .collect(),
        },
    ));
    Ok(r.into())
}

pub fn calibrate(a: &CalibrateArgs) -> CliResult<Outcome> {
    let (rr, ss) = (&a.window[0], &a.window[1]);
    check_window(rr, ss)?;
    let (spec, p) = predictor(&a.predictor)?;
    let z = read_stream(&a.stream)?;
    let rep = calibration_report(p.as_ref(), &z, rr, ss, &a.tolerance)?;

    let mut r = Report::new("calibrate");
    r.param("stream", text(a.stream.display()))
        .param("predictor", text(&spec))
        .param("window", Value::Array(vec![text(rr), text(ss)]))
        .param("tolerance", text(&a.tolerance));
    r.field("length", z.len())
        .field("predictions", rep.predictions)
        .field("confirmed", rep.confirmed)
        .field("ratio", rep.ratio.as_ref().map_or(Value::Null, text))
        .field("verdict", rep.verdict.as_str());
    Ok(r.into())
}

pub fn adversary(a: &AdversaryArgs) -> CliResult<Outcome> {
    let (spec, p) = predictor(&a.predictor)?;
    let trace = adversarial_sequence(p.as_ref(), a.length)?;
    let certs = trace.certificates();

    let mut r = Report::new("adversary");
    r.param("predictor", text(&spec)).param("length", a.length);
    r.field("sequence", text(&trace.sequence))
        .field("certified", if trace.verify() { "yes" } else { "no" });
    r.table = Some((
        "steps",
        Table {
            columns: vec![
                "n",
                "digit",
                "threshold",
                "log2_bound",
                "log2_ceiling",
                "holds",
            ],
            rows: trace
                .steps
                .iter()
                .zip(&certs)
                .map(|(s, c)| {
                    vec![
                        c.n.into(),
                        s.digit.into(),
                        text(&s.threshold),
                        text(format_log2(&c.product, 9)),
                        text(format_log2(&c.ceiling.to_ratio(), 9)),
                        text(if c.holds() { "yes" } else { "no" }),
                    ]
                })
                .collect(),
        },
    ));
    Ok(r.into())
}

pub fn convert(a: &ConvertArgs) -> CliResult<Outcome> {
    let mut r = Report::new(format!("convert {}", a.target.name()));
    let closure = !a.no_closure;
    if a.target == Target::Distribution {
        let path = a
            .process
            .as_ref()
            .ok_or_else(|| CliError::usage("convert distribution needs --process FILE"))?;
        r.param("process", text(path.display()))
            .param("depth", a.depth)
            .param("budget", a.budget);
        let table = read_process(path)?;
        return process_to_distribution(r, table, a);
    }
    let spec = a.predictor.as_deref().ok_or_else(|| {
        CliError::usage(format!(
            "convert {} needs --predictor SPEC",
            a.target.name()
        ))
    })?;
    let (spec, p) = predictor(spec)?;
    r.param("predictor", text(&spec)).param("depth", a.depth);
    match a.target {
        Target::Process => {
            let distribution = p.caps().is_distribution();
            if !distribution {
                r.param("stages", a.stages);
            }
            r.param("closure", closure);
            to_process(r, p.as_ref(), a, distribution, closure)
        }
        Target::Martingale => to_martingale(r, p, a.depth),
        Target::DigitAligned => {
            r.param("closure", closure);
            to_digit_aligned(r, p.as_ref(), a.depth, closure)
        }
        Target::Distribution => unreachable!("handled above"),
    }
}

fn dyadic_required(distribution: bool) -> impl Fn(Error) -> CliError {
    move |e| match e {
        Error::NotDyadic { .. } if distribution => CliError::usage(format!(
            "binary-computable (dyadic) distribution required: {e}"
        )),
        Error::NotDyadic { .. } => CliError::usage(format!("dyadic staged values required: {e}")),
        other => other.into(),
    }
}

fn verification(mismatch: Option<String>) -> Value {
    text(mismatch.as_deref().unwrap_or("exact"))
}

fn process_lines(t: &ProcessTable) -> Vec<String> {
    t.iter().map(|(x, y)| format!("{x}\t{y}")).collect()
}

fn to_process(
    mut r: Report,
    p: &dyn StagedPredictor,
    a: &ConvertArgs,
    distribution: bool,
    closure: bool,
) -> CliResult<Outcome> {
    let (f, method) = if distribution {
        let f = distribution_to_endless_process_with(p, a.depth, closure)
            .map_err(dyadic_required(true))?;
        (f, "endless")
    } else {
        let f = predictor_to_process_with(p, a.stages, a.depth, closure)
            .map_err(dyadic_required(false))?;
        (f, "staged")
    };
    let table = f.table();
    let mut rows = Vec::new();
    let mut mismatch = None;
    for y in BitStr::all_up_to(a.depth) {
        let want = if distribution {
            p.value(&y).expect("distributions are exact")
        } else {
            p.approx(&y, a.stages)
        };
        let got = table.solomonoff(&y);
        if got != want && mismatch.is_none() {
            mismatch = Some(format!("mismatch at {y}: {got} != {want}"));
        }
        rows.push(vec![text(&y), text(&got)]);
    }
    r.field("method", method)
        .field("pairs", table.len())
        .field("verification", verification(mismatch));
    r.table = Some((
        "solomonoff",
        Table {
            columns: vec!["y", "value"],
            rows,
        },
    ));
    Ok(Outcome {
        report: r,
        object: Some(process_lines(table)),
    })
}

fn process_to_distribution(
    mut r: Report,
    table: ProcessTable,
    a: &ConvertArgs,
) -> CliResult<Outcome> {
    let f = MonotoneProcess::from(table).declare_endless();
    let mut values = BTreeMap::new();
    for y in BitStr::all_up_to(a.depth) {
        let v = endless_process_to_distribution(&f, &y, a.budget)?;
        values.insert(y, v.to_ratio());
    }
    let inverse = table_predictor(values.clone(), TableRule::UniformBelowLeaves)
        .and_then(|q| distribution_to_endless_process_with(q.as_ref(), a.depth, true));
    let mismatch = match inverse {
        Ok(g) => values
            .iter()
            .find(|(y, v)| g.table().solomonoff(y) != **v)
            .map(|(y, _)| format!("mismatch at {y}")),
        Err(e) => Some(format!("no inverse: {e}")),
    };
    r.field("verification", verification(mismatch));
    r.table = Some((
        "distribution",
        Table {
            columns: vec!["y", "value"],
            rows: BitStr::all_up_to(a.depth)
                .map(|y| vec![text(&y), text(&values[&y])])
                .collect(),
        },
    ));
    Ok(Outcome {
        report: r,
        object: Some(value_table_text(&values)),
    })
}

fn to_martingale(mut r: Report, p: Predictor, depth: usize) -> CliResult<Outcome> {
    let m = predictor_to_martingale(p.as_ref(), depth)?;
    let q = martingale_to_predictor(&m)?;
    let mismatch = BitStr::all_up_to(depth)
        .find(|x| q.value(x) != p.value(x))
        .map(|x| format!("mismatch at {x}"));
    let fair = m.check_fairness().is_ok();
    r.field("fair", if fair { "yes" } else { "no" })
        .field("verification", verification(mismatch));
    r.table = Some((
        "martingale",
        Table {
            columns: vec!["x", "value"],
            rows: BitStr::all_up_to(depth)
                .map(|x| vec![text(&x), text(&m.values()[&x])])
                .collect(),
        },
    ));
    Ok(Outcome {
        report: r,
        object: Some(value_table_text(m.values())),
    })
}

fn to_digit_aligned(
    mut r: Report,
    p: &dyn StagedPredictor,
    depth: usize,
    closure: bool,
) -> CliResult<Outcome> {
    let f = digit_aligned_process_with(p, depth, closure).map_err(dyadic_required(true))?;
    let table = f.table();
    let horizon = table.max_input_len() + 1;
    let mut rows = Vec::new();
    let mut mismatch = None;
    for y in BitStr::all_up_to(depth) {
        let py = p.value(&y).expect("distributions are exact");
        let digits = py.floor_dyadic(horizon as u64 + 64).set_digits();
        let reduced = table.reduced_encodings(&y, horizon);
        let mut lens: Vec<u64> = reduced.iter().map(|x| x.len() as u64).collect();
        lens.sort_unstable();
        let mut sorted = digits.clone();
        sorted.sort_unstable();
        if (lens != sorted || table.solomonoff(&y) != py) && mismatch.is_none() {
            mismatch = Some(format!("mismatch at {y}"));
        }
        let join = |items: Vec<String>| {
            if items.is_empty() {
                "-".to_string()
            } else {
                items.join(",")
            }
        };
        rows.push(vec![
            text(&y),
            text(&py),
            text(join(digits.iter().map(u64::to_string).collect())),
            text(join(reduced.iter().map(BitStr::to_string).collect())),
        ]);
    }
    r.field("pairs", table.len())
        .field("verification", verification(mismatch));
    r.table = Some((
        "digits",
        Table {
            columns: vec!["y", "value", "digits", "reduced"],
            rows,
        },
    ));
    Ok(Outcome {
        report: r,
        object: Some(process_lines(table)),
    })
}
