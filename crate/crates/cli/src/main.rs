//! `halfplane`: field maps, verification suites, limiting-amplitude and jump studies, kernel
//! dumps.
//!
//! Exit status: 0 success, 1 a verification check failed, 2 usage or configuration error,
//! 3 numerical precision failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use halfplane::config::{Mode, RunConfig};
use halfplane::diagnostics::{self, SuiteContext, SUITES};
use halfplane::frequency::{Deriv, FrequencyDomain, Ray};
use halfplane::lap::lap_study;
use halfplane::sommerfeld::StationaryAmplitude;
use halfplane::timedomain::TimeDomain;
use halfplane::{Component, Error, FieldPoint, Kernel};

#[derive(Parser, Debug)]
#[command(name = "halfplane", version, about = "Diffraction of a modulated plane wave by a half-plane")]
struct Cli {
    /// key = value configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true)]
    rel_tol: Option<f64>,

    #[arg(long, global = true)]
    abs_tol: Option<f64>,

    #[arg(long, global = true)]
    max_subdiv: Option<usize>,

    /// Worker threads; 0 picks the number of cores. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// CSV of field components on the configured (ρ, φ) grid
    FieldMap,
    /// Run verification suites and write a JSON report
    Verify {
        /// Suite to run (repeatable); all suites when omitted
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
    /// CSV of limiting-amplitude errors against time
    LapStudy,
    /// CSV of the kernel 𝒵(β, φ) on the real β axis
    KernelDump,
    /// CSV of extrapolated jumps across both rays against ρ
    JumpStudy,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Precision { .. } | Error::Extrapolation { .. } | Error::PoleProximity { .. } => 3,
        _ => 2,
    }
}

fn load(cli: &Cli) -> halfplane::Result<RunConfig> {
    let mut c = match &cli.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    if let Some(v) = cli.rel_tol {
        c.spec.rel_tol = v;
    }
    if let Some(v) = cli.abs_tol {
        c.spec.abs_tol = v;
    }
    if let Some(v) = cli.max_subdiv {
        c.spec.max_subdivisions = v;
    }
    c.validate()?;
    Ok(c)
}

fn sink(out: &Option<PathBuf>) -> halfplane::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| io_err(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn io_err(p: &Path, e: io::Error) -> Error {
    Error::Io(format!("{}: {e}", p.display()))
}

// 17 significant digits, so equal configs give byte-identical files
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn field_map(c: &RunConfig, w: &mut dyn Write) -> halfplane::Result<()> {
    let needs_integral = c
        .components
        .iter()
        .any(|k| !matches!(k, Component::Incident | Component::Incident0 | Component::Incident1 | Component::Reflected));
    if needs_integral && c.rho.min <= 0.0 {
        return Err(Error::Config("grid.rho must start above 0 for kernel-integral components".into()));
    }
    let mut points = Vec::new();
    for &rho in &c.rho.points() {
        for &phi in &c.phi.points() {
            points.push(FieldPoint::new(rho, phi)?);
        }
    }
    let td = TimeDomain::new(&c.scenario, &c.profile, c.spec);
    let fd = FrequencyDomain::new(&c.scenario, &c.profile, c.spec);
    let st = StationaryAmplitude::new(&c.scenario, c.spec);
    let rows = halfplane::par::try_map(&points, |&p| {
        c.components
            .iter()
            .map(|&k| match c.mode {
                Mode::Time(t) => td.component_averaged(k, p, t),
                Mode::Frequency(om) => fd.component(k, p, om, Deriv::Value),
                Mode::Stationary => st.component(k, p),
            })
            .collect::<halfplane::Result<Vec<Complex64>>>()
    })?;
    let coord = match c.mode {
        Mode::Time(t) => vec![num(t)],
        Mode::Frequency(om) => vec![num(om.re), num(om.im)],
        Mode::Stationary => vec![],
    };
    let header = match c.mode {
        Mode::Time(_) => "rho,phi,t,component,re,im",
        Mode::Frequency(_) => "rho,phi,omega_re,omega_im,component,re,im",
        Mode::Stationary => "rho,phi,component,re,im",
    };
    writeln!(w, "{header}")?;
    for (p, vals) in points.iter().zip(&rows) {
        for (k, v) in c.components.iter().zip(vals) {
            let mut fields = vec![num(p.rho), num(p.phi)];
            fields.extend(coord.iter().cloned());
            fields.push(k.name().to_string());
            fields.push(num(v.re));
            fields.push(num(v.im));
            writeln!(w, "{}", fields.join(","))?;
        }
    }
    Ok(())
}

fn verify(c: &RunConfig, suites: &[String], w: &mut dyn Write) -> halfplane::Result<bool> {
    let suites: Vec<String> = if suites.is_empty() {
        SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        suites.to_vec()
    };
    let ctx = SuiteContext::from_config(c);
    let reports = diagnostics::run_suites(&suites, &ctx)?;
    writeln!(w, "{}", diagnostics::to_json(&reports))?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.check.as_str()).collect();
    eprintln!("{} checks, {} failed", reports.len(), failed.len());
    for f in &failed {
        eprintln!("FAIL {f}");
    }
    Ok(failed.is_empty())
}

fn lap(c: &RunConfig, w: &mut dyn Write) -> halfplane::Result<()> {
    let r = lap_study(&c.scenario, &c.profile, c.lap_point, &c.lap_times, &c.spec)?;
    writeln!(w, "t,err_total,err_scattered")?;
    for ((t, a), b) in r.times.iter().zip(&r.errors_total).zip(&r.errors_scattered) {
        writeln!(w, "{},{},{}", num(*t), num(*a), num(*b))?;
    }
    eprintln!("fitted rate {:.4}", r.fitted_rate);
    Ok(())
}

fn kernel_dump(c: &RunConfig, w: &mut dyn Write) -> halfplane::Result<()> {
    let k = Kernel::new(&c.scenario);
    writeln!(w, "phi,beta,re,im,abs_times_envelope")?;
    for &phi in &c.dump_phis {
        for &b in &c.beta.points() {
            // a pole on the real axis (φ on a ray, β = 0) is written as NaN
            let v = match k.eval_calz(Complex64::new(b, 0.0), phi) {
                Ok(v) => v,
                Err(Error::PoleProximity { .. }) => Complex64::new(f64::NAN, f64::NAN),
                Err(e) => return Err(e),
            };
            let scaled = v.norm() * (0.5 * b.abs()).exp();
            writeln!(w, "{},{},{},{},{}", num(phi), num(b), num(v.re), num(v.im), num(scaled))?;
        }
    }
    Ok(())
}

fn jump_study(c: &RunConfig, w: &mut dyn Write) -> halfplane::Result<()> {
    let fd = FrequencyDomain::new(&c.scenario, &c.profile, c.spec);
    let om = c.jump_omega;
    let g = fd.gain(om)?;
    let cases = [
        (Ray::PhiMinus, Component::Reflected, 1.0),
        (Ray::PhiMinus, Component::Diffracted, -1.0),
        (Ray::PhiMinus, Component::Scattered, 0.0),
        (Ray::PhiPlus, Component::Incident1, 1.0),
        (Ray::PhiPlus, Component::Diffracted, 1.0),
        (Ray::PhiPlus, Component::Scattered, 0.0),
    ];
    let jobs: Vec<(f64, usize)> = c.jump_rhos.iter().flat_map(|&r| (0..cases.len()).map(move |k| (r, k))).collect();
    let rows = halfplane::par::try_map(&jobs, |&(rho, k)| {
        let (ray, comp, _) = cases[k];
        fd.jump(comp, Deriv::Value, rho, om, ray, 1e-2, 6)
    })?;
    writeln!(w, "rho,ray,component,jump_re,jump_im,extrapolation_error,expected_re,expected_im")?;
    for (&(rho, k), j) in jobs.iter().zip(&rows) {
        let (ray, comp, s) = cases[k];
        // both jumping plane waves equal f̂(ω−ω₀)e^{iωρ} on their ray
        let want = s * g * (Complex64::new(0.0, 1.0) * om * rho).exp();
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            num(rho),
            ray.name(),
            comp.name(),
            num(j.value.re),
            num(j.value.im),
            num(j.error),
            num(want.re),
            num(want.im)
        )?;
    }
    Ok(())
}

fn run(cli: &Cli) -> halfplane::Result<bool> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| Error::Usage(e.to_string()))?;
    }
    let c = load(cli)?;
    let mut w = sink(&cli.out)?;
    let ok = match &cli.command {
        Command::FieldMap => field_map(&c, &mut *w).map(|_| true)?,
        Command::Verify { suites } => verify(&c, suites, &mut *w)?,
        Command::LapStudy => lap(&c, &mut *w).map(|_| true)?,
        Command::KernelDump => kernel_dump(&c, &mut *w).map(|_| true)?,
        Command::JumpStudy => jump_study(&c, &mut *w).map(|_| true)?,
    };
    w.flush()?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("halfplane: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
