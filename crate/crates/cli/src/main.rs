mod args;
mod format;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use kickwalk::verify::{compare, CompareOptions};
use kickwalk::{
    evolve_to, limit_law, limit_moment, make_params, probabilities, symmetric_state, LimitCase,
    WalkParams,
};
use serde::Serialize;
use thiserror::Error;

use args::{Cli, Command, CompareArgs, LimitArgs, MomentsArgs, SimulateArgs, StateArgs};
use format::{complex, sig15};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Walk(#[from] kickwalk::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kickwalk: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    let output = match &command {
        Command::Simulate(a) => &a.output,
        Command::Limit(a) => &a.output,
        Command::Compare(a) => &a.output,
        Command::Moments(a) => &a.output,
    };
    let workers = output.workers;
    let out = output.out.clone();
    let text = in_pool(workers, || match &command {
        Command::Simulate(a) => simulate(a),
        Command::Limit(a) => limit(a),
        Command::Compare(a) => compare_cmd(a),
        Command::Moments(a) => moments(a),
    })?;
    emit(out.as_deref(), &text)
}

fn in_pool<T: Send>(
    workers: Option<usize>,
    job: impl FnOnce() -> CliResult<T> + Send,
) -> CliResult<T> {
    match workers {
        None => job(),
        Some(0) => Err(CliError::Config("--workers must be at least 1".into())),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()?
            .install(job),
    }
}

fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    let io_err = |path: &Path| {
        let path = path.display().to_string();
        move |source| CliError::Io { path, source }
    };
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(io_err(p))?);
            w.write_all(text.as_bytes()).map_err(io_err(p))?;
            w.flush().map_err(io_err(p))
        }
        None => {
            let stdout = PathBuf::from("<stdout>");
            io::stdout()
                .lock()
                .write_all(text.as_bytes())
                .map_err(io_err(&stdout))
        }
    }
}

fn state(a: &StateArgs) -> CliResult<(num_complex::Complex64, num_complex::Complex64)> {
    match (a.alpha, a.beta) {
        (Some(alpha), Some(beta)) => Ok((alpha, beta)),
        (None, None) => Ok(symmetric_state()),
        _ => Err(CliError::Config(
            "--alpha and --beta must be given together".into(),
        )),
    }
}

/// Parameters for a law-level command; `tau` only matters for simulation.
fn case_params(a: &StateArgs, case: LimitCase, tau: i64) -> CliResult<WalkParams> {
    case.ensure_supported()?;
    let (m, n) = match case {
        LimitCase::Usual => (1, 1),
        LimitCase::Kicked { m, n } => (m as i64, n as i64),
    };
    let (alpha, beta) = state(a)?;
    Ok(make_params(a.theta, tau, m, n, alpha, beta)?)
}

fn header(p: &WalkParams) -> String {
    format!(
        "# theta={} tau={} m={} n={} alpha={} beta={}\n",
        sig15(p.theta),
        p.tau,
        p.m,
        p.n,
        complex(p.alpha),
        complex(p.beta)
    )
}

fn simulate(a: &SimulateArgs) -> CliResult<String> {
    let (mut m, mut n) = (a.m, a.n);
    if let Some(LimitCase::Kicked { m: cm, n: cn }) = a.case {
        let agree =
            |given: Option<i64>, from_case: u32| given.is_none_or(|g| g == from_case as i64);
        if !agree(m, cm) || !agree(n, cn) {
            return Err(CliError::Config("--case disagrees with --m/--n".into()));
        }
        m = Some(cm as i64);
        n = Some(cn as i64);
    }
    let (m, n) = match (m, n, a.case) {
        (Some(m), Some(n), _) => (m, n),
        (None, None, Some(LimitCase::Usual)) => (1, 1),
        _ => return Err(CliError::Config("give --m and --n, or --case".into())),
    };
    let (alpha, beta) = state(&a.state)?;
    let p = make_params(a.state.theta, a.tau, m, n, alpha, beta)?;
    let t = match (a.t, a.case) {
        (Some(t), _) => t,
        (None, Some(LimitCase::Usual)) => p.tau as u64,
        (None, _) => p.analysis_time(),
    };
    let dist = probabilities(&evolve_to(&p, t))?;

    let mut s = header(&p);
    s.push_str(&format!("# t={t}\n"));
    s.push_str("x,probability\n");
    for &(x, prob) in &dist.entries {
        s.push_str(&format!("{x},{}\n", sig15(prob)));
    }
    Ok(s)
}

fn limit(a: &LimitArgs) -> CliResult<String> {
    let g = a.grid_points;
    if g < 101 || g.is_multiple_of(2) {
        return Err(CliError::Config(format!(
            "--grid-points must be odd and at least 101, got {g}"
        )));
    }
    let p = case_params(&a.state, a.case, 1)?;
    let law = limit_law(a.case, &p)?;

    let mut s = header(&p);
    s.push_str(&format!("# case={}\n", a.case));
    s.push_str(&format!(
        "# delta_weight_at_zero={}\n",
        sig15(law.delta_weight)
    ));
    s.push_str("x,density\n");
    for i in 0..g {
        let x = -1.0 + 2.0 * (i + 1) as f64 / (g + 1) as f64;
        s.push_str(&format!("{},{}\n", sig15(x), sig15(law.density(x))));
    }
    Ok(s)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn compare_cmd(a: &CompareArgs) -> CliResult<String> {
    let p = case_params(&a.state, a.case, a.tau)?;
    let options = CompareOptions {
        window_fraction: a.window_fraction,
        orders: a.orders.clone(),
    };
    Ok(to_json(&compare(&p, a.case, &options)?))
}

#[derive(Serialize)]
struct MomentsReport {
    case: String,
    theta: f64,
    alpha: num_complex::Complex64,
    beta: num_complex::Complex64,
    moments: BTreeMap<u32, f64>,
}

fn moments(a: &MomentsArgs) -> CliResult<String> {
    let p = case_params(&a.state, a.case, 1)?;
    let mut moments = BTreeMap::new();
    for &r in &a.orders {
        moments.insert(r, limit_moment(a.case, &p, r)?);
    }
    Ok(to_json(&MomentsReport {
        case: a.case.to_string(),
        theta: p.theta,
        alpha: p.alpha,
        beta: p.beta,
        moments,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Config("x".into()).exit_code(), 2);
        assert_eq!(
            CliError::Walk(kickwalk::Error::UnsupportedCase { m: 3, n: 1 }).exit_code(),
            2
        );
        let io = CliError::Io {
            path: "p".into(),
            source: io::Error::other("x"),
        };
        assert_eq!(io.exit_code(), 3);
    }
}
