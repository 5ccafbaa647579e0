use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use uniform_airy::exec::Execution;
use uniform_airy::suites::{self, GridRow, Mode, SuiteConfig, SweepConfig};
use uniform_airy::tploop::LoopOptions;
use uniform_airy::PrecisionContext;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Section3,
    Section4,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Section3 => Mode::Section3,
            ModeArg::Section4 => Mode::Section4,
            ModeArg::Both => Mode::Both,
        }
    }
}

/// Bounds for the uniform Airy-type expansion of J_ν(νz), compared with exact values.
#[derive(Debug, Parser)]
#[command(name = "uairy", version)]
struct Args {
    #[arg(long, default_value_t = 100.0)]
    nu: f64,
    #[arg(long, default_value_t = 5)]
    m: usize,
    /// Either `start:stop:step` along a line or a comma-separated list; points may be complex, e.g. 0.5+0.3i.
    #[arg(long, default_value = "0.05:0.75:0.05")]
    grid: String,
    #[arg(long, value_enum, default_value = "section3")]
    mode: ModeArg,
    /// Loop radius for the near-turning-point mode.
    #[arg(long, default_value_t = 0.5)]
    r0: f64,
    #[arg(long, default_value_t = 80)]
    digits: u32,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run an acceptance suite instead of a sweep and print a JSON summary.
    #[arg(long)]
    suite: Option<String>,
    /// Evaluate grid points one after another.
    #[arg(long)]
    sequential: bool,
}

fn parse_point(s: &str) -> Result<Complex64, String> {
    let t = s.trim().replace(' ', "");
    t.parse::<Complex64>().map_err(|e| format!("bad grid point '{s}': {e}"))
}

fn parse_grid(spec: &str) -> Result<Vec<(f64, f64)>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    let pts = match parts.as_slice() {
        [a, b, h] => {
            let (a, b) = (parse_point(a)?, parse_point(b)?);
            let h: f64 = h.trim().parse().map_err(|e| format!("bad grid step '{h}': {e}"))?;
            if !(h > 0.0) {
                return Err("grid step must be positive".into());
            }
            let len = (b - a).norm();
            let k = (len / h + 1e-9).floor() as usize;
            let dir = if len > 0.0 { (b - a) / len } else { Complex64::new(0.0, 0.0) };
            (0..=k).map(|i| a + dir * (h * i as f64)).collect()
        }
        [_] => spec.split(',').map(parse_point).collect::<Result<Vec<_>, _>>()?,
        _ => return Err(format!("grid '{spec}' is neither start:stop:step nor a list")),
    };
    if pts.is_empty() {
        return Err("empty grid".into());
    }
    // keep the printed abscissae free of accumulated rounding
    Ok(pts.into_iter().map(|z| (round12(z.re), round12(z.im))).collect())
}

fn round12(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

fn complex_cell(v: (f64, f64)) -> String {
    let sign = if v.1.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", sci(v.0), sci(v.1.abs()))
}

const HEADER: [&str; 12] = [
    "z_re", "z_im", "A_value", "A_bound", "A_true_err", "A_ratio", "B_value", "B_bound", "B_true_err", "B_ratio", "mode",
    "seconds",
];

fn csv_record(r: &GridRow) -> [String; 12] {
    [
        sci(r.z_re),
        sci(r.z_im),
        complex_cell(r.a_value),
        sci(r.a_bound),
        sci(r.a_true_err),
        sci(r.a_ratio),
        complex_cell(r.b_value),
        sci(r.b_bound),
        sci(r.b_true_err),
        sci(r.b_ratio),
        r.mode.as_str().to_string(),
        format!("{:.3}", r.seconds),
    ]
}

fn output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

#[derive(Serialize)]
struct SuiteSummary<'a> {
    suite: &'a str,
    digits: u32,
    passed: bool,
    criteria: Vec<suites::CriterionReport>,
}

fn run_suite(name: &str, args: &Args, exec: Execution) -> ExitCode {
    if !suites::SUITES.contains(&name) {
        eprintln!("error: unknown suite '{name}'; expected one of {}", suites::SUITES.join(", "));
        return ExitCode::from(2);
    }
    let cfg = SuiteConfig { digits: args.digits, exec };
    let reports = match suites::run_suite(name, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    for r in &reports {
        eprintln!("{}", r.line());
    }
    let passed = reports.iter().all(|r| r.passed());
    let summary = SuiteSummary { suite: name, digits: args.digits, passed, criteria: reports };
    let res = output(&args.out).and_then(|mut w| {
        serde_json::to_writer_pretty(&mut w, &summary)?;
        writeln!(w)?;
        w.flush()
    });
    if let Err(e) = res {
        eprintln!("error: {e}");
        return ExitCode::from(3);
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    if let Some(name) = &args.suite {
        return run_suite(name, &args, exec);
    }
    let grid = match parse_grid(&args.grid) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let ctx = match PrecisionContext::new(args.digits) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cfg = SweepConfig {
        nu: args.nu,
        m: args.m,
        mode: args.mode.into(),
        loop_options: LoopOptions { r0: args.r0, ..LoopOptions::default() },
        exec,
        ..SweepConfig::default()
    };
    let mut rows = Vec::new();
    for (z, r) in grid.iter().zip(suites::sweep(&grid, &cfg, &ctx)) {
        match r {
            Ok(rs) => rows.extend(rs),
            Err(e) => {
                eprintln!("error at z = {}{:+}i: {e}", z.0, z.1);
                return ExitCode::from(3);
            }
        }
    }
    let res = output(&args.out).map_err(csv::Error::from).and_then(|w| {
        let mut w = csv::Writer::from_writer(w);
        w.write_record(HEADER)?;
        for r in &rows {
            w.write_record(csv_record(r))?;
        }
        w.flush().map_err(csv::Error::from)
    });
    if let Err(e) = res {
        eprintln!("error: {e}");
        return ExitCode::from(3);
    }
    let violations: Vec<&GridRow> = rows.iter().filter(|r| !r.bounds_hold()).collect();
    for r in &violations {
        eprintln!("bound violated at z = {}{:+}i ({})", r.z_re, r.z_im, r.mode.as_str());
    }
    if violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_has_fifteen_points() {
        let g = parse_grid("0.05:0.75:0.05").unwrap();
        assert_eq!(g.len(), 15);
        assert_eq!(g[0], (0.05, 0.0));
        assert_eq!(g[14], (0.75, 0.0));
    }

    #[test]
    fn list_grid_accepts_complex_points() {
        let g = parse_grid("0.3+0.2i, 0.5-0.3i,0.7").unwrap();
        assert_eq!(g, vec![(0.3, 0.2), (0.5, -0.3), (0.7, 0.0)]);
        assert!(parse_grid("0.1:0.2").is_err());
        assert!(parse_grid("0.1:0.2:0").is_err());
    }

    #[test]
    fn complex_cells_are_signed() {
        assert_eq!(complex_cell((1.0, -0.5)), "1.0000000000000000e0-5.0000000000000000e-1i");
    }
}
