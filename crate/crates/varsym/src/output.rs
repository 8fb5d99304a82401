//! CSV emission and re-reading.
//!
//! Plain comma-separated files with a one-line header, decimal dot, no
//! quoting. Floats are written with 17 significant digits so a re-read
//! reproduces the in-memory values bit for bit.

use crate::diagnostics::ConvergenceReport;
use crate::elliptic::ExactPendulum;
use crate::integrators::Trajectory;
use crate::model::{hamiltonian, Potential};
use crate::{Error, Result};
use std::io::{BufRead, Write};

/// Header of the per-node simulation CSV.
pub const SIMULATION_HEADER: &str = "step,t,q,p,H,q_exact,p_exact,err_q,err_p";

/// Header of the convergence report CSV.
pub const CONVERGENCE_HEADER: &str = "scheme,N,h,err_p,err_q,err_H,order_p,order_q,order_H";

/// Header of the exact-oracle sampling CSV.
pub const EXACT_HEADER: &str = "step,t,q,p,H";

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

/// One parsed row of a simulation CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationRow {
    pub step: usize,
    pub t: f64,
    pub q: f64,
    pub p: f64,
    pub energy: f64,
    pub q_exact: f64,
    pub p_exact: f64,
    pub err_q: f64,
    pub err_p: f64,
}

/// Write one row per trajectory node, with the exact solution and node-wise
/// errors alongside.
pub fn write_simulation_csv<P: Potential, W: Write>(
    w: &mut W,
    pot: &P,
    traj: &Trajectory,
    oracle: &ExactPendulum,
) -> Result<()> {
    writeln!(w, "{SIMULATION_HEADER}")?;
    for (j, s) in traj.states.iter().enumerate() {
        let exact = oracle.state(s.t)?;
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            j,
            fmt(s.t),
            fmt(s.q),
            fmt(s.p),
            fmt(hamiltonian(pot, s)),
            fmt(exact.q),
            fmt(exact.p),
            fmt((s.q - exact.q).abs()),
            fmt((s.p - exact.p).abs()),
        )?;
    }
    Ok(())
}

/// Parse a simulation CSV produced by [`write_simulation_csv`].
pub fn read_simulation_csv<R: BufRead>(r: R) -> Result<Vec<SimulationRow>> {
    let mut rows = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if i == 0 {
            if line != SIMULATION_HEADER {
                return Err(Error::InvalidParameter(format!(
                    "unexpected CSV header: {line}"
                )));
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(Error::InvalidParameter(format!(
                "expected 9 fields on line {}, got {}",
                i + 1,
                fields.len()
            )));
        }
        let parse = |s: &str| -> Result<f64> {
            s.parse()
                .map_err(|e| Error::InvalidParameter(format!("bad float '{s}': {e}")))
        };
        rows.push(SimulationRow {
            step: fields[0]
                .parse()
                .map_err(|e| Error::InvalidParameter(format!("bad step index: {e}")))?,
            t: parse(fields[1])?,
            q: parse(fields[2])?,
            p: parse(fields[3])?,
            energy: parse(fields[4])?,
            q_exact: parse(fields[5])?,
            p_exact: parse(fields[6])?,
            err_q: parse(fields[7])?,
            err_p: parse(fields[8])?,
        });
    }
    Ok(rows)
}

/// Write one row per (scheme, mesh); order columns are empty on the first
/// mesh of each scheme.
pub fn write_convergence_csv<W: Write>(w: &mut W, reports: &[ConvergenceReport]) -> Result<()> {
    writeln!(w, "{CONVERGENCE_HEADER}")?;
    for report in reports {
        for (i, row) in report.rows.iter().enumerate() {
            let fmt_order = |o: Option<f64>| o.map(|v| format!("{v:.3}")).unwrap_or_default();
            let (op, oq, oh) = if i == 0 {
                (String::new(), String::new(), String::new())
            } else {
                let est = &report.orders[i - 1];
                (
                    fmt_order(est.order_p),
                    fmt_order(est.order_q),
                    fmt_order(est.order_h),
                )
            };
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{}",
                report.scheme,
                row.n_steps,
                fmt(row.h),
                fmt(row.err_p),
                fmt(row.err_q),
                fmt(row.err_h),
                op,
                oq,
                oh,
            )?;
        }
    }
    Ok(())
}

/// Sample the exact oracle on `samples` equispaced nodes covering
/// `[0, t_total]` and write one row per sample.
pub fn write_exact_csv<P: Potential, W: Write>(
    w: &mut W,
    pot: &P,
    oracle: &ExactPendulum,
    t_total: f64,
    samples: usize,
) -> Result<()> {
    if samples < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    writeln!(w, "{EXACT_HEADER}")?;
    for j in 0..samples {
        let t = t_total * j as f64 / (samples - 1) as f64;
        let s = oracle.state(t)?;
        writeln!(
            w,
            "{},{},{},{},{}",
            j,
            fmt(t),
            fmt(s.q),
            fmt(s.p),
            fmt(hamiltonian(pot, &s)),
        )?;
    }
    Ok(())
}

/// Emit a small gnuplot script that plots `q` and `p` against `t` from one
/// of the CSV files above.
pub fn write_plot_script<W: Write>(w: &mut W, csv_path: &str) -> Result<()> {
    writeln!(w, "# gnuplot script, usage: gnuplot <this file>")?;
    writeln!(w, "set datafile separator ','")?;
    writeln!(w, "set key autotitle columnhead")?;
    writeln!(w, "set xlabel 't'")?;
    writeln!(
        w,
        "plot '{csv_path}' using 2:3 with lines title 'q', \\\n     '{csv_path}' using 2:4 with lines title 'p'"
    )?;
    writeln!(w, "pause -1")?;
    Ok(())
}
