//! Command handlers. Each returns its stdout text; files are written as a
//! side effect.

use std::f64::consts::TAU;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use sdlab_core::companion::{
    self, build_interp_example, det_re_closed_form, det_re_direct, interp_expected, zdi_bounds,
};
use sdlab_core::dilation::{zdi, DEFAULT_RANK_TOL};
use sdlab_core::kms::{
    self, kms_similar, kms_unitarily_similar_upto, nk_formula, zdi_kms, zdi_kms2, KmsSpec,
    UnitarySimilarityVerdict,
};
use sdlab_core::numrange::{boundary, circularity, CircularityVerdict, DEFAULT_CIRCLE_TOL};
use sdlab_core::ComplexMatrix;

use crate::args::{Cli, Command, CompanionCmd, KmsCmd};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::io::{
    load, load_matrix, to_json, write_text, CompanionFile, KmsFile, MatrixFile, RangeInput,
};
use crate::plot::{boundary_csv, boundary_svg};
use crate::verify::{run_suite, Suite};

/// What a command produced: stdout text and the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            exit_code: 0,
        }
    }
}

pub fn run(cli: &Cli, progress: &mut dyn Write) -> Result<Outcome, CliError> {
    let cfg = cli.global.config();
    cfg.validate()?;
    let out = cli.global.out.as_deref();
    match &cli.command {
        Command::Zdi { file } => cmd_zdi(&load_matrix(file)?, &cfg).map(Outcome::ok),
        Command::Companion(sub) => cmd_companion(sub, &cfg, out).map(Outcome::ok),
        Command::Kms(sub) => cmd_kms(sub, &cfg, out).map(Outcome::ok),
        Command::Numrange { file } => cmd_numrange(file, &cfg, out).map(Outcome::ok),
        Command::Verify { suite, fixture } => {
            cmd_verify((*suite).into(), &cfg, out, fixture.as_deref(), progress)
        }
    }
}

pub fn cmd_zdi(a: &ComplexMatrix, cfg: &RunConfig) -> Result<String, CliError> {
    let r = zdi(a, cfg.grid_size, cfg.tol)?;
    Ok(format!(
        "d = {}\nargmin theta = {:.12}\nprofile over {} angles: min {}, max {}, refined {}\n",
        r.index,
        r.argmin_theta,
        r.grid_size,
        r.profile_min(),
        r.profile_max(),
        r.refined
    ))
}

fn emit_matrix(m: &ComplexMatrix, out: Option<&Path>) -> Result<String, CliError> {
    let text = to_json(&MatrixFile::from_matrix(m));
    match out {
        Some(path) => {
            write_text(path, &text)?;
            Ok(format!(
                "wrote {}x{} matrix to {}\n",
                m.rows(),
                m.cols(),
                path.display()
            ))
        }
        None => Ok(text),
    }
}

fn cmd_companion(
    sub: &CompanionCmd,
    cfg: &RunConfig,
    out: Option<&Path>,
) -> Result<String, CliError> {
    match sub {
        CompanionCmd::Build { spec } => {
            let spec = load::<CompanionFile>(spec)?.to_spec()?;
            emit_matrix(&companion::build(&spec), out)
        }
        CompanionCmd::Det { spec } => {
            let spec = load::<CompanionFile>(spec)?.to_spec()?;
            let mut text = String::new();
            for i in 0..8 {
                let theta = TAU * i as f64 / 8.0;
                let w = Complex64::from_polar(1.0, theta);
                let closed = det_re_closed_form(&spec, w)?;
                let direct = det_re_direct(&spec, w)?;
                text.push_str(&format!(
                    "theta {theta:.6}: closed form {closed:.12e}, direct {direct:.12e}\n"
                ));
            }
            Ok(text)
        }
        CompanionCmd::Bounds { spec } => {
            let spec = load::<CompanionFile>(spec)?.to_spec()?;
            let b = zdi_bounds(&spec)?;
            let d = zdi(&companion::build(&spec), cfg.grid_size, cfg.tol)?.index;
            let head = match b.exact {
                Some(e) => format!("exact d = {e}"),
                None => format!("bounds [{}, {}]", b.lower, b.upper),
            };
            let agrees = match b.exact {
                Some(e) => d == e,
                None => b.contains(d),
            };
            if !agrees {
                return Err(CliError::Verification(format!(
                    "{head}, oracle {d} disagrees"
                )));
            }
            Ok(match b.exact {
                Some(_) => format!("{head}, oracle agrees\n"),
                None => format!("{head}, oracle {d}\n"),
            })
        }
        CompanionCmd::Interp { m, n, k } => {
            let spec = build_interp_example(*m, *n, *k)?;
            let want = interp_expected(*m, *n, *k);
            let d = zdi(&companion::build(&spec), cfg.grid_size, cfg.tol)?.index;
            if let Some(path) = out {
                write_text(path, &to_json(&CompanionFile::from_spec(&spec)))?;
            }
            if d != want {
                return Err(CliError::Verification(format!(
                    "expected {want}, oracle {d}"
                )));
            }
            Ok(format!("expected {want}, oracle {d}\n"))
        }
    }
}

fn kms_spec(m: usize, file: &Path) -> Result<KmsSpec, CliError> {
    Ok(KmsSpec::new(m, load_matrix(file)?)?)
}

fn instability_warning(flag: bool) -> &'static str {
    if flag {
        "warning: a rank decision fell within a factor 10 of the threshold\n"
    } else {
        ""
    }
}

fn cmd_kms(sub: &KmsCmd, cfg: &RunConfig, out: Option<&Path>) -> Result<String, CliError> {
    match sub {
        KmsCmd::Build { m, file } => emit_matrix(&kms::build(&kms_spec(*m, file)?), out),
        KmsCmd::Zdi { m, file } => {
            let spec = kms_spec(*m, file)?;
            let formula = if *m == 2 {
                zdi_kms2(spec.a(), DEFAULT_RANK_TOL)?
            } else {
                zdi_kms(*m, spec.a(), cfg.tol)?
            };
            let oracle = zdi(&kms::build(&spec), cfg.grid_size, cfg.tol)?.index;
            if formula != oracle {
                return Err(CliError::Verification(format!(
                    "formula {formula}, sweep {oracle}"
                )));
            }
            Ok(format!("d = {formula} (formula and sweep agree)\n"))
        }
        KmsCmd::Similar { m, a, b } => {
            let (a, b) = (load_matrix(a)?, load_matrix(b)?);
            let (similar, unstable) = kms_similar(*m, &a, &b, DEFAULT_RANK_TOL)?;
            let mut text = instability_warning(unstable).to_string();
            if similar {
                text.push_str("similar\n");
            } else {
                let (na, nb) = (
                    nk_formula(*m, &a, DEFAULT_RANK_TOL)?,
                    nk_formula(*m, &b, DEFAULT_RANK_TOL)?,
                );
                let k = (1..=*m)
                    .rev()
                    .find(|&k| na.get(k) != nb.get(k))
                    .unwrap_or(*m);
                text.push_str(&format!(
                    "not similar (N_{k}: {} vs {})\n",
                    na.get(k),
                    nb.get(k)
                ));
            }
            Ok(text)
        }
        KmsCmd::Usim { m, a, b } => {
            let (a, b) = (load_matrix(a)?, load_matrix(b)?);
            Ok(
                match kms_unitarily_similar_upto(*m, &a, &b, cfg.max_word_degree, 1e-10)? {
                    UnitarySimilarityVerdict::Distinguished {
                        word,
                        trace_a,
                        trace_b,
                    } => format!(
                        "distinguished by word {word} (traces {:.12} vs {:.12})\n",
                        trace_a, trace_b
                    ),
                    UnitarySimilarityVerdict::IndistinguishableUpTo(d) => format!(
                        "indistinguishable up to degree {d} (not a proof of unitary similarity)\n"
                    ),
                },
            )
        }
        KmsCmd::Nk { m, file } => {
            let counts = nk_formula(*m, &load_matrix(file)?, DEFAULT_RANK_TOL)?;
            let list: Vec<String> = counts.counts.iter().map(usize::to_string).collect();
            Ok(format!(
                "{}N = [{}]\n",
                instability_warning(counts.unstable),
                list.join(", ")
            ))
        }
    }
}

fn with_extension(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_os_string();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn cmd_numrange(file: &Path, cfg: &RunConfig, out: Option<&Path>) -> Result<String, CliError> {
    let (matrix, spec) = match load::<RangeInput>(file)? {
        RangeInput::Kms(k) => {
            let spec = KmsFile::to_spec(&k)?;
            (kms::build(&spec), Some(spec))
        }
        RangeInput::Matrix(m) => (m.to_matrix()?, None),
    };
    let samples = boundary(&matrix, cfg.boundary_samples)?;
    let prefix = out.unwrap_or(Path::new("numrange"));
    let (csv, svg) = (with_extension(prefix, "csv"), with_extension(prefix, "svg"));
    write_text(&csv, &boundary_csv(&samples))?;
    write_text(&svg, &boundary_svg(&samples))?;
    let lo = samples
        .iter()
        .map(|s| s.support)
        .fold(f64::INFINITY, f64::min);
    let hi = samples
        .iter()
        .map(|s| s.support)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut text = format!(
        "wrote {} and {} ({} angles)\nsupport range [{lo:.12}, {hi:.12}]\n",
        csv.display(),
        svg.display(),
        samples.len()
    );
    if let Some(spec) = spec {
        match circularity(&spec, cfg.boundary_samples, DEFAULT_CIRCLE_TOL)? {
            CircularityVerdict::CircularDisk { radius } => text.push_str(&format!(
                "verdict: circular disk centred at 0, radius {radius:.12}\n"
            )),
            CircularityVerdict::NotCircular { max_deviation } => text.push_str(&format!(
                "verdict: not circular, support deviation {max_deviation:.6e}\n"
            )),
        }
    }
    Ok(text)
}

fn cmd_verify(
    suite: Suite,
    cfg: &RunConfig,
    out: Option<&Path>,
    fixture: Option<&Path>,
    progress: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let fixture = match fixture {
        Some(p) => Some(load::<CompanionFile>(p)?.to_spec()?),
        None => None,
    };
    let report = run_suite(suite, cfg, fixture.as_ref(), |c| {
        // Progress is best effort; the report is the result.
        let _ = writeln!(progress, "{}", c.line());
    })?;
    let json = to_json(&report);
    let stdout = match out {
        Some(path) => {
            write_text(path, &json)?;
            let passed = report.checks.iter().filter(|c| c.passed).count();
            format!(
                "{passed}/{} checks passed; report written to {}\n",
                report.checks.len(),
                path.display()
            )
        }
        None => json,
    };
    Ok(Outcome {
        stdout,
        exit_code: if report.passed { 0 } else { 1 },
    })
}
