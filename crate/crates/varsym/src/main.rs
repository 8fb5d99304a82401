//! Command-line frontend: single simulations, convergence studies and
//! exact-oracle sampling, all emitted as CSV.

use clap::{Args, Parser, Subcommand};
use std::f64::consts::{FRAC_PI_2, PI};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::process::ExitCode;

use varsym::diagnostics::{convergence_study, error_norms, ConvergenceReport};
use varsym::elliptic::ExactPendulum;
use varsym::integrators::{run_trajectory, NewtonConfig, Scheme, SchemeConfig};
use varsym::model::{PendulumParams, PhaseState};
use varsym::output;
use varsym::Error;

const EXIT_VALIDATION: u8 = 2;
const EXIT_SOLVER: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "varsym",
    about = "Variational symplectic integrators (Newmark and Simpson) for the nonlinear pendulum"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the pendulum with one scheme and compare against the exact solution
    Simulate(SimulateArgs),
    /// Run both schemes over a mesh sequence for one nonlinear period and report errors and orders
    Convergence(ConvergenceArgs),
    /// Sample the exact elliptic-function solution
    Exact(ExactArgs),
}

#[derive(Args)]
struct PhysicalArgs {
    /// Initial angle in radians, in (0, pi)
    #[arg(long, default_value_t = FRAC_PI_2)]
    theta0: f64,
    /// Angular frequency in rad/time
    #[arg(long, default_value_t = 2.0 * PI)]
    omega: f64,
    /// Particle mass
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
}

#[derive(Args)]
struct NewtonArgs {
    /// Newton residual tolerance (scaled by problem magnitude)
    #[arg(long = "newton-tol", default_value_t = 1e-13)]
    newton_tol: f64,
    /// Maximum Newton iterations per step
    #[arg(long = "newton-max-iters", default_value_t = 25)]
    newton_max_iters: usize,
}

impl NewtonArgs {
    fn config(&self) -> NewtonConfig {
        NewtonConfig {
            residual_tol: self.newton_tol,
            max_iters: self.newton_max_iters,
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    /// Integration scheme: newmark or simpson
    #[arg(long)]
    scheme: String,
    #[command(flatten)]
    physical: PhysicalArgs,
    /// Number of nonlinear periods to integrate
    #[arg(long, default_value_t = 5.0)]
    periods: f64,
    /// Time steps per nonlinear period
    #[arg(long = "steps-per-period", default_value_t = 10)]
    steps_per_period: usize,
    /// Output CSV path
    #[arg(long)]
    out: String,
    /// Also write a gnuplot script next to the CSV
    #[arg(long = "plot-script", default_value_t = false)]
    plot_script: bool,
    #[command(flatten)]
    newton: NewtonArgs,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[command(flatten)]
    physical: PhysicalArgs,
    /// Mesh sizes (steps per period), comma separated
    #[arg(long, value_delimiter = ',', default_values_t = vec![50, 100, 200])]
    meshes: Vec<usize>,
    /// Output CSV path (the aligned table always goes to stdout)
    #[arg(long)]
    out: Option<String>,
    #[command(flatten)]
    newton: NewtonArgs,
}

#[derive(Args)]
struct ExactArgs {
    #[command(flatten)]
    physical: PhysicalArgs,
    /// Number of nonlinear periods to sample
    #[arg(long, default_value_t = 5.0)]
    periods: f64,
    /// Number of equispaced samples (at least 2)
    #[arg(long, default_value_t = 500)]
    samples: usize,
    /// Output CSV path
    #[arg(long)]
    out: String,
    /// Also write a gnuplot script next to the CSV
    #[arg(long = "plot-script", default_value_t = false)]
    plot_script: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Convergence(args) => cmd_convergence(&args),
        Command::Exact(args) => cmd_exact(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidParameter(_) | Error::Domain(_) => EXIT_VALIDATION,
                Error::NewtonDivergence { .. } | Error::SingularJacobian { .. } => EXIT_SOLVER,
                Error::Io(_) => EXIT_IO,
            })
        }
    }
}

fn setup(physical: &PhysicalArgs) -> Result<(PendulumParams, ExactPendulum), Error> {
    let params = PendulumParams::new(physical.mass, physical.omega, physical.theta0)?;
    let oracle = ExactPendulum::new(params)?;
    Ok((params, oracle))
}

fn positive_periods(periods: f64) -> Result<f64, Error> {
    if !(periods.is_finite() && periods > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "periods must be > 0, got {periods}"
        )));
    }
    Ok(periods)
}

fn create_out(path: &str) -> Result<BufWriter<File>, Error> {
    Ok(BufWriter::new(File::create(path)?))
}

fn maybe_plot_script(enabled: bool, csv_path: &str) -> Result<(), Error> {
    if enabled {
        let script_path = format!("{csv_path}.gnuplot");
        let mut w = create_out(&script_path)?;
        output::write_plot_script(&mut w, csv_path)?;
        w.flush()?;
        println!("plot script written to {script_path}");
    }
    Ok(())
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), Error> {
    let scheme: Scheme = args.scheme.parse()?;
    let periods = positive_periods(args.periods)?;
    let (params, oracle) = setup(&args.physical)?;
    let pot = params.potential();

    if args.steps_per_period == 0 {
        return Err(Error::InvalidParameter("steps-per-period must be >= 1".into()));
    }
    let h = oracle.period / args.steps_per_period as f64;
    let n_steps = (periods * args.steps_per_period as f64).round().max(1.0) as usize;
    let cfg = SchemeConfig::new(scheme, h, n_steps, args.newton.config())?;

    let initial = PhaseState::new(0.0, params.theta0, 0.0);
    let traj = run_trajectory(&pot, initial, &cfg)?;
    let report = error_norms(&pot, &traj, &oracle)?;

    let mut w = create_out(&args.out)?;
    output::write_simulation_csv(&mut w, &pot, &traj, &oracle)?;
    w.flush()?;
    maybe_plot_script(args.plot_script, &args.out)?;

    println!(
        "scheme={scheme} N={n_steps} h={h:.6e} T={:.6e} err_p={:.6e} err_q={:.6e} err_H={:.6e} max_newton_iters={}",
        oracle.period, report.err_p, report.err_q, report.err_h, traj.max_newton_iters
    );
    Ok(())
}

fn print_convergence_table(reports: &[ConvergenceReport]) {
    println!(
        "{:<10} {:>6} {:>13} {:>13} {:>13} {:>8} {:>8} {:>8}",
        "scheme", "N", "err_p", "err_q", "err_H", "ord_p", "ord_q", "ord_H"
    );
    for report in reports {
        for (i, row) in report.rows.iter().enumerate() {
            let ord = |o: Option<f64>| o.map(|v| format!("{v:.2}")).unwrap_or_else(|| "-".into());
            let (op, oq, oh) = if i == 0 {
                ("-".into(), "-".into(), "-".into())
            } else {
                let est = &report.orders[i - 1];
                (ord(est.order_p), ord(est.order_q), ord(est.order_h))
            };
            println!(
                "{:<10} {:>6} {:>13.4e} {:>13.4e} {:>13.4e} {:>8} {:>8} {:>8}",
                report.scheme.name(),
                row.n_steps,
                row.err_p,
                row.err_q,
                row.err_h,
                op,
                oq,
                oh
            );
        }
    }
}

fn cmd_convergence(args: &ConvergenceArgs) -> Result<(), Error> {
    if args.meshes.is_empty() {
        return Err(Error::InvalidParameter("at least one mesh is required".into()));
    }
    if args.meshes.contains(&0) {
        return Err(Error::InvalidParameter("meshes must be >= 1".into()));
    }
    if args.meshes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "meshes must be strictly increasing".into(),
        ));
    }
    let (params, oracle) = setup(&args.physical)?;
    let pot = params.potential();
    let newton = args.newton.config();

    let reports = vec![
        convergence_study(&pot, &oracle, Scheme::Newmark, &args.meshes, newton)?,
        convergence_study(&pot, &oracle, Scheme::Simpson, &args.meshes, newton)?,
    ];

    print_convergence_table(&reports);
    if let Some(path) = &args.out {
        let mut w = create_out(path)?;
        output::write_convergence_csv(&mut w, &reports)?;
        w.flush()?;
        println!("report written to {path}");
    }
    Ok(())
}

fn cmd_exact(args: &ExactArgs) -> Result<(), Error> {
    let periods = positive_periods(args.periods)?;
    let (params, oracle) = setup(&args.physical)?;
    let pot = params.potential();

    let mut w = create_out(&args.out)?;
    output::write_exact_csv(&mut w, &pot, &oracle, periods * oracle.period, args.samples)?;
    w.flush()?;
    maybe_plot_script(args.plot_script, &args.out)?;

    println!("T={:.9e} samples={} out={}", oracle.period, args.samples, args.out);
    Ok(())
}
