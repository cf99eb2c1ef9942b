//! `eqcm` — command-line front end for the equatorial-qubit cloning-machine
//! toolkit.
//!
//! Subcommands:
//! - `reproduce` recomputes the special-point constants through the numeric
//!   pipeline and compares them with their analytic values (exit 1 when any
//!   comparison fails),
//! - `sweep` tabulates numeric and closed-form quality metrics over a λ grid,
//! - `clone` runs one input state through the machine and reports everything
//!   it produces,
//! - `optimize` locates the extremum of a metric over a λ bracket.
//!
//! Exit codes: 0 success, 1 reproduction failure, 2 usage or domain error.

use clap::{Parser, Subcommand, ValueEnum};
use eqcm_core::{
    analytic_reference, bloch_of_density, clone_state, lambda_opt, numeric_metric, optimize_scalar,
    reproduce_constants_with_offset, state_vector, sweep, to_density, BlochVector, ComplexMatrix,
    ConstantRow, Direction, EquatorPlane, EquatorialInput, MetricKind, OptimumReport, SweepRecord,
};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

const SWEEP_HEADER: &str = "plane,lambda,d_a_numeric,d_a_closed,d_ab_numeric,d_ab_closed,\
                            f1_numeric,f1_closed,f2_numeric,f2_closed,angle_spread";

#[derive(Parser)]
#[command(
    name = "eqcm",
    version,
    about = "Simulate and cross-check the one-parameter family of equatorial-qubit cloning machines"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write the output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Copy, Clone, ValueEnum)]
enum MetricArg {
    /// Hilbert-Schmidt distance between one output copy and the input.
    HsOne,
    /// Hilbert-Schmidt distance between the copy pair and two ideal copies.
    HsTwo,
    /// Bures/Uhlmann fidelity of one output copy with the input.
    BuresOne,
    /// Bures/Uhlmann fidelity of the copy pair with two ideal copies.
    BuresTwo,
}

impl From<MetricArg> for MetricKind {
    fn from(arg: MetricArg) -> Self {
        match arg {
            MetricArg::HsOne => MetricKind::HsOne,
            MetricArg::HsTwo => MetricKind::HsTwo,
            MetricArg::BuresOne => MetricKind::BuresOne,
            MetricArg::BuresTwo => MetricKind::BuresTwo,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Recompute the special-point constants and compare with analytic values.
    Reproduce {
        /// Shift the machine's lambda by this amount before deriving its
        /// parameters (testing hook: any nonzero shift must fail the run).
        #[arg(long, hide = true, value_name = "DELTA", allow_hyphen_values = true)]
        perturb_lambda: Option<f64>,
    },
    /// Tabulate quality metrics over a uniform lambda grid.
    Sweep {
        /// Equator plane: xz, xy, or yz.
        #[arg(long, value_parser = parse_plane, default_value = "xz")]
        plane: EquatorPlane,
        /// Lower end of the lambda grid.
        #[arg(long, value_parser = parse_lambda, default_value = "-0.5", allow_hyphen_values = true)]
        min: f64,
        /// Upper end of the lambda grid.
        #[arg(long, value_parser = parse_lambda, default_value = "0.9", allow_hyphen_values = true)]
        max: f64,
        /// Number of grid points (at least 2, endpoints included).
        #[arg(long, default_value_t = 33)]
        steps: usize,
        /// Angles per spread estimate (at least 8).
        #[arg(long, default_value_t = 32)]
        angles: usize,
    },
    /// Clone one input state and report the machine's full output.
    Clone {
        /// Equator plane: xz, xy, or yz.
        #[arg(long, value_parser = parse_plane, default_value = "xz")]
        plane: EquatorPlane,
        /// Input angle on the chosen equator, in radians.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        angle: f64,
        /// Machine parameter in (-1, 1); accepts "opt" and "1/3".
        #[arg(long, value_parser = parse_lambda, default_value = "0", allow_hyphen_values = true)]
        lambda: f64,
    },
    /// Locate the extremum of a quality metric over a lambda bracket.
    Optimize {
        /// Metric to optimize.
        #[arg(long, value_enum)]
        metric: MetricArg,
        /// Minimize the metric.
        #[arg(long = "min", conflicts_with = "maximize")]
        minimize: bool,
        /// Maximize the metric.
        #[arg(long = "max")]
        maximize: bool,
        /// Lower end of the search bracket.
        #[arg(long, value_parser = parse_lambda, default_value = "0", allow_hyphen_values = true)]
        lo: f64,
        /// Upper end of the search bracket.
        #[arg(long, value_parser = parse_lambda, default_value = "0.9", allow_hyphen_values = true)]
        hi: f64,
    },
}

fn parse_plane(s: &str) -> Result<EquatorPlane, String> {
    s.parse::<EquatorPlane>().map_err(|e| e.to_string())
}

fn parse_lambda(s: &str) -> Result<f64, String> {
    let value = match s.trim() {
        "opt" => lambda_opt(),
        "1/3" => 1.0 / 3.0,
        other => other
            .parse::<f64>()
            .map_err(|_| format!("expected a number, \"opt\", or \"1/3\", got {other:?}"))?,
    };
    if !(value > -1.0 && value < 1.0) {
        return Err(format!(
            "lambda must lie strictly inside (-1, 1), got {value}"
        ));
    }
    Ok(value)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let (content, code) = match cli.command {
        Command::Reproduce { perturb_lambda } => cmd_reproduce(cli.format, perturb_lambda)?,
        Command::Sweep {
            plane,
            min,
            max,
            steps,
            angles,
        } => cmd_sweep(cli.format, plane, min, max, steps, angles)?,
        Command::Clone {
            plane,
            angle,
            lambda,
        } => cmd_clone(cli.format, plane, angle, lambda)?,
        Command::Optimize {
            metric,
            minimize,
            maximize,
            lo,
            hi,
        } => cmd_optimize(cli.format, metric, minimize, maximize, lo, hi)?,
    };
    emit(&cli.out, &content)?;
    Ok(ExitCode::from(code))
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------- reproduce

fn cmd_reproduce(format: Format, perturb: Option<f64>) -> Result<(String, u8), String> {
    let offset = perturb.unwrap_or(0.0);
    let rows = reproduce_constants_with_offset(offset).map_err(|e| e.to_string())?;
    let passed = rows.iter().filter(|r| r.pass).count();
    let all_pass = passed == rows.len();

    let content = match format {
        Format::Table => reproduce_table(&rows, passed),
        Format::Csv => reproduce_csv(&rows),
        Format::Json => pretty(json!({
            "inputs": { "lambda_offset": offset },
            "outputs": {
                "rows": rows.iter().map(constant_row_json).collect::<Vec<_>>(),
                "all_pass": all_pass,
            },
        })),
    };
    Ok((content, u8::from(!all_pass)))
}

fn reproduce_table(rows: &[ConstantRow], passed: usize) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{:<14} {:>14} {:>14} {:>10}  status",
        "constant", "analytic", "computed", "|error|"
    )
    .unwrap();
    for row in rows {
        writeln!(
            s,
            "{:<14} {:>14.6} {:>14.6} {:>10.2e}  {}",
            row.name,
            row.analytic,
            row.computed,
            row.abs_error,
            if row.pass { "ok" } else { "FAIL" }
        )
        .unwrap();
    }
    writeln!(
        s,
        "result: {} ({passed}/{} constants reproduced)",
        if passed == rows.len() { "PASS" } else { "FAIL" },
        rows.len()
    )
    .unwrap();
    s
}

fn reproduce_csv(rows: &[ConstantRow]) -> String {
    let mut s = String::from("name,analytic,computed,abs_error,tolerance,pass\n");
    for row in rows {
        writeln!(
            s,
            "{},{:.16e},{:.16e},{:.16e},{:.1e},{}",
            row.name, row.analytic, row.computed, row.abs_error, row.tolerance, row.pass
        )
        .unwrap();
    }
    s
}

fn constant_row_json(row: &ConstantRow) -> Value {
    json!({
        "name": row.name,
        "analytic": row.analytic,
        "computed": row.computed,
        "abs_error": row.abs_error,
        "tolerance": row.tolerance,
        "pass": row.pass,
    })
}

// -------------------------------------------------------------------- sweep

fn cmd_sweep(
    format: Format,
    plane: EquatorPlane,
    min: f64,
    max: f64,
    steps: usize,
    angles: usize,
) -> Result<(String, u8), String> {
    if steps < 2 {
        return Err(format!("sweep needs at least 2 steps, got {steps}"));
    }
    if min >= max {
        return Err(format!("sweep needs min < max, got [{min}, {max}]"));
    }
    let grid: Vec<f64> = (0..steps)
        .map(|i| min + i as f64 * (max - min) / (steps - 1) as f64)
        .collect();
    let records = sweep(plane, &grid, angles).map_err(|e| e.to_string())?;

    let content = match format {
        Format::Table => sweep_table(&records),
        Format::Csv => sweep_csv(&records),
        Format::Json => pretty(json!({
            "inputs": {
                "plane": plane.name(),
                "min": min,
                "max": max,
                "steps": steps,
                "angles": angles,
            },
            "outputs": {
                "records": records.iter().map(sweep_record_json).collect::<Vec<_>>(),
            },
        })),
    };
    Ok((content, 0))
}

fn sweep_table(records: &[SweepRecord]) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "lambda",
        "d_a num",
        "d_a cl",
        "d_ab num",
        "d_ab cl",
        "f1 num",
        "f1 cl",
        "f2 num",
        "f2 cl",
        "spread"
    )
    .unwrap();
    for r in records {
        writeln!(
            s,
            "{:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.2e}",
            r.lambda,
            r.d_a_numeric,
            r.d_a_closed,
            r.d_ab_numeric,
            r.d_ab_closed,
            r.f1_numeric,
            r.f1_closed,
            r.f2_numeric,
            r.f2_closed,
            r.angle_spread
        )
        .unwrap();
    }
    s
}

fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for r in records {
        writeln!(
            s,
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.plane.name(),
            r.lambda,
            r.d_a_numeric,
            r.d_a_closed,
            r.d_ab_numeric,
            r.d_ab_closed,
            r.f1_numeric,
            r.f1_closed,
            r.f2_numeric,
            r.f2_closed,
            r.angle_spread
        )
        .unwrap();
    }
    s
}

fn sweep_record_json(r: &SweepRecord) -> Value {
    json!({
        "plane": r.plane.name(),
        "lambda": r.lambda,
        "d_a_numeric": r.d_a_numeric,
        "d_a_closed": r.d_a_closed,
        "d_ab_numeric": r.d_ab_numeric,
        "d_ab_closed": r.d_ab_closed,
        "f1_numeric": r.f1_numeric,
        "f1_closed": r.f1_closed,
        "f2_numeric": r.f2_numeric,
        "f2_closed": r.f2_closed,
        "angle_spread": r.angle_spread,
    })
}

// -------------------------------------------------------------------- clone

fn cmd_clone(
    format: Format,
    plane: EquatorPlane,
    angle: f64,
    lambda: f64,
) -> Result<(String, u8), String> {
    if format == Format::Csv {
        return Err("clone output contains nested matrices; use --format table or json".into());
    }
    let input = EquatorialInput::new(plane, angle).map_err(|e| e.to_string())?;
    let psi = state_vector(&input);
    let rho_in = to_density(&psi).map_err(|e| e.to_string())?;
    let bloch_in = bloch_of_density(&rho_in).map_err(|e| e.to_string())?;
    let out = clone_state(&input, lambda).map_err(|e| e.to_string())?;
    let bloch_out = bloch_of_density(&out.rho_a).map_err(|e| e.to_string())?;
    let values: Vec<f64> = MetricKind::ALL
        .iter()
        .map(|&kind| numeric_metric(plane, lambda, angle, kind))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let [d_a, d_ab, f1, f2] = [values[0], values[1], values[2], values[3]];

    let content = match format {
        Format::Table => clone_table(
            plane,
            angle,
            lambda,
            &out.joint,
            &out.rho_a,
            &out.rho_ab,
            bloch_in,
            bloch_out,
            d_a,
            d_ab,
            f1,
            f2,
        ),
        Format::Json => pretty(json!({
            "inputs": { "plane": plane.name(), "angle": angle, "lambda": lambda },
            "outputs": {
                "joint": vector_json(&out.joint),
                "rho_a": matrix_json(&out.rho_a),
                "rho_ab": matrix_json(&out.rho_ab),
                "bloch_in": bloch_json(bloch_in),
                "bloch_out": bloch_json(bloch_out),
                "d_a": d_a,
                "d_ab": d_ab,
                "f1": f1,
                "f2": f2,
            },
        })),
        Format::Csv => unreachable!(),
    };
    Ok((content, 0))
}

#[allow(clippy::too_many_arguments)]
fn clone_table(
    plane: EquatorPlane,
    angle: f64,
    lambda: f64,
    joint: &ComplexMatrix,
    rho_a: &ComplexMatrix,
    rho_ab: &ComplexMatrix,
    bloch_in: BlochVector,
    bloch_out: BlochVector,
    d_a: f64,
    d_ab: f64,
    f1: f64,
    f2: f64,
) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "input:  plane={} angle={angle:.6} lambda={lambda:.6}",
        plane.name()
    )
    .unwrap();
    writeln!(s, "joint state (amplitudes on |input copy machine>):").unwrap();
    for i in 0..joint.rows() {
        let amp = joint.get(i, 0);
        if amp.norm() > 1e-15 {
            writeln!(s, "  |{i:03b}>  {:>10.6} {:+.6}i", amp.re, amp.im).unwrap();
        }
    }
    writeln!(s, "rho_a (either output copy):").unwrap();
    write_matrix(&mut s, rho_a);
    writeln!(s, "rho_ab (copy pair):").unwrap();
    write_matrix(&mut s, rho_ab);
    writeln!(
        s,
        "bloch_in:  ({:.6}, {:.6}, {:.6})  |r|={:.6}",
        bloch_in.x,
        bloch_in.y,
        bloch_in.z,
        bloch_in.norm()
    )
    .unwrap();
    writeln!(
        s,
        "bloch_out: ({:.6}, {:.6}, {:.6})  |r|={:.6}",
        bloch_out.x,
        bloch_out.y,
        bloch_out.z,
        bloch_out.norm()
    )
    .unwrap();
    writeln!(s, "d_a={d_a:.6}  d_ab={d_ab:.6}  f1={f1:.6}  f2={f2:.6}").unwrap();
    s
}

fn write_matrix(s: &mut String, m: &ComplexMatrix) {
    for i in 0..m.rows() {
        s.push(' ');
        for j in 0..m.cols() {
            let v = m.get(i, j);
            write!(s, " {:>9.6}{:+.6}i", v.re, v.im).unwrap();
        }
        s.push('\n');
    }
}

fn vector_json(v: &ComplexMatrix) -> Value {
    Value::Array(
        (0..v.rows())
            .map(|i| {
                let amp = v.get(i, 0);
                json!({ "re": amp.re, "im": amp.im })
            })
            .collect(),
    )
}

fn matrix_json(m: &ComplexMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| {
                            let v = m.get(i, j);
                            json!({ "re": v.re, "im": v.im })
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

fn bloch_json(b: BlochVector) -> Value {
    json!({ "x": b.x, "y": b.y, "z": b.z })
}

// ----------------------------------------------------------------- optimize

fn cmd_optimize(
    format: Format,
    metric: MetricArg,
    minimize: bool,
    maximize: bool,
    lo: f64,
    hi: f64,
) -> Result<(String, u8), String> {
    let direction = match (minimize, maximize) {
        (true, false) => Direction::Minimize,
        (false, true) => Direction::Maximize,
        _ => return Err("specify exactly one of --min or --max".into()),
    };
    let kind = MetricKind::from(metric);
    let report = optimize_scalar(kind, direction, (lo, hi)).map_err(|e| e.to_string())?;
    let reference = analytic_reference(kind, direction);

    let content = match format {
        Format::Table => optimize_table(&report, reference),
        Format::Csv => optimize_csv(&report, reference),
        Format::Json => pretty(json!({
            "inputs": {
                "metric": kind.name(),
                "direction": report.direction.to_string(),
                "lo": report.bracket.0,
                "hi": report.bracket.1,
            },
            "outputs": {
                "lambda_star": report.lambda_star,
                "value_star": report.value_star,
                "numeric_at_star": report.numeric_at_star,
                "analytic": reference.map_or(Value::Null, |(l, v)| {
                    json!({ "lambda": l, "value": v })
                }),
            },
        })),
    };
    Ok((content, 0))
}

fn optimize_table(report: &OptimumReport, reference: Option<(f64, f64)>) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{} {} on [{:.6}, {:.6}]",
        report.direction,
        report.metric.name(),
        report.bracket.0,
        report.bracket.1
    )
    .unwrap();
    writeln!(s, "lambda* = {:.6}", report.lambda_star).unwrap();
    writeln!(s, "value*  = {:.6}", report.value_star).unwrap();
    writeln!(s, "numeric spot check = {:.6}", report.numeric_at_star).unwrap();
    if let Some((l_ref, v_ref)) = reference {
        writeln!(
            s,
            "analytic reference: lambda = {:.6}, value = {:.6} \
             (|dl| = {:.2e}, |dv| = {:.2e})",
            l_ref,
            v_ref,
            (report.lambda_star - l_ref).abs(),
            (report.value_star - v_ref).abs()
        )
        .unwrap();
    }
    s
}

fn optimize_csv(report: &OptimumReport, reference: Option<(f64, f64)>) -> String {
    let mut s = String::from(
        "metric,direction,lo,hi,lambda_star,value_star,numeric_at_star,analytic_lambda,analytic_value\n",
    );
    let (al, av) = match reference {
        Some((l, v)) => (format!("{l:.16e}"), format!("{v:.16e}")),
        None => (String::new(), String::new()),
    };
    writeln!(
        s,
        "{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{}",
        report.metric.name(),
        report.direction,
        report.bracket.0,
        report.bracket.1,
        report.lambda_star,
        report.value_star,
        report.numeric_at_star,
        al,
        av
    )
    .unwrap();
    s
}

fn pretty(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("JSON serialization cannot fail");
    s.push('\n');
    s
}
