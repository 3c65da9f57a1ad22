use std::fmt::Write as _;
use std::path::Path;

use pmx_core::diagram::{self, ChainOrdering, ChainSpec, DiagramSpec, Panel};
use pmx_core::measures::{self, Extended};
use pmx_core::sample::{self, Sample};
use pmx_core::verify::{self, SuiteConfig, VerificationReport};
use pmx_core::{
    Backend, Decomposition, Distribution, DistributionFile, Error, ErrorCategory, Mass, Rational,
    Result, Var,
};
use serde_json::json;

use crate::{Command, DiagramFormat, Format, Mode, Numeric};

pub fn exit_code(err: &Error) -> u8 {
    match err.category() {
        ErrorCategory::Input => 2,
        ErrorCategory::UnknownLabel => 3,
        ErrorCategory::Undefined => 4,
    }
}

/// Runs one command, returning its exit code on success.
pub fn run(command: Command) -> Result<u8> {
    match command {
        Command::Decompose {
            input,
            x,
            y,
            z,
            mode,
            numeric,
            format,
        } => {
            let file = DistributionFile::load(&input)?;
            let request = Request { x, y, z, mode };
            let text = match numeric.backend {
                Backend::Float => decompose::<f64>(&file, &request, &numeric, format)?,
                Backend::Rational => decompose::<Rational>(&file, &request, &numeric, format)?,
            };
            print!("{text}");
            Ok(0)
        }
        Command::Classify {
            input,
            x,
            y,
            backend,
            format,
        } => {
            let file = DistributionFile::load(&input)?;
            let text = match backend {
                Backend::Float => classify::<f64>(&file, &x, &y, format)?,
                Backend::Rational => classify::<Rational>(&file, &x, &y, format)?,
            };
            print!("{text}");
            Ok(0)
        }
        Command::Verify {
            seed,
            trials,
            shape,
            numeric,
            format,
            fault,
        } => {
            let config = SuiteConfig {
                seed,
                trials,
                shape,
                backend: numeric.backend,
                base: numeric.base,
                fault,
            };
            let report = verify::run_suite(&config)?;
            match format {
                Format::Json => print!("{}", report.to_json()),
                Format::Text => print!("{}", report_text(&report)),
            }
            Ok(if report.all_passed() { 0 } else { 1 })
        }
        Command::Diagram {
            input,
            x,
            y,
            z,
            panels,
            ordering,
            format,
            backend,
            width,
            height,
            unit_height,
            out,
        } => {
            let file = DistributionFile::load(&input)?;
            let request = DiagramRequest {
                x,
                y,
                z,
                panels,
                ordering,
                format,
                width,
                height,
                unit_height,
            };
            let text = match backend {
                Backend::Float => draw::<f64>(&file, &request)?,
                Backend::Rational => draw::<Rational>(&file, &request)?,
            };
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Gen {
            seed,
            shape,
            backend,
            out,
        } => {
            let file = match backend {
                Backend::Float => generate::<f64>(seed, &shape)?,
                Backend::Rational => generate::<Rational>(seed, &shape)?,
            };
            emit(out.as_deref(), &file.to_json())?;
            Ok(0)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

struct Request {
    x: String,
    y: String,
    z: Option<String>,
    mode: Mode,
}

fn arity_error(what: &str, needed: usize, found: usize) -> Error {
    Error::InvalidParameters(format!(
        "{what} needs a {needed}-variable distribution, the file has {found} variables"
    ))
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Plain => "plain",
        Mode::Conditional => "conditional",
        Mode::JointSource => "joint-source",
        Mode::JointTarget => "joint-target",
    }
}

fn decompose<T: Mass>(
    file: &DistributionFile,
    request: &Request,
    numeric: &Numeric,
    format: Format,
) -> Result<String> {
    let base = numeric.base;
    let dist = file.to_distribution::<T>()?;
    let (d, expression) = match (&dist, request.mode) {
        (Distribution::Two(j), Mode::Plain) => {
            if request.z.is_some() {
                return Err(Error::InvalidParameters(
                    "--z has no role in plain mode on a two-variable file".into(),
                ));
            }
            let (x, y) = (j.x_index(&request.x)?, j.y_index(&request.y)?);
            (
                measures::decompose(j, x, y, base)?,
                format!("i({} -> {})", request.y, request.x),
            )
        }
        (Distribution::Two(_), mode) => {
            return Err(arity_error(&format!("mode {}", mode_name(mode)), 3, 2))
        }
        (Distribution::Three(j), mode) => {
            let ex = j.event(Var::X, &request.x)?;
            let ey = j.event(Var::Y, &request.y)?;
            let (x, y) = (&request.x, &request.y);
            if mode == Mode::Plain {
                if request.z.is_some() {
                    return Err(Error::InvalidParameters(
                        "--z has no role in plain mode; use conditional, joint-source or joint-target".into(),
                    ));
                }
                (
                    measures::decompose_events(j, &[ey], &[ex], &[], base)?,
                    format!("i({y} -> {x})"),
                )
            } else {
                let z = request.z.as_deref().ok_or_else(|| {
                    Error::InvalidParameters(format!("mode {} needs --z", mode_name(mode)))
                })?;
                let ez = j.event(Var::Z, z)?;
                match mode {
                    Mode::Conditional => (
                        measures::decompose_conditional(j, ey, ex, ez, base)?,
                        format!("i({y} -> {x} | {z})"),
                    ),
                    Mode::JointSource => (
                        measures::decompose_joint_source(j, ey, ez, ex, base)?,
                        format!("i({y}{z} -> {x})"),
                    ),
                    Mode::JointTarget => (
                        measures::decompose_joint_target(j, ey, ex, ez, base)?,
                        format!("i({y} -> {x}{z})"),
                    ),
                    Mode::Plain => unreachable!(),
                }
            }
        }
    };
    Ok(match format {
        Format::Json => json_line(serde_json::to_value(&d).expect("serializable")),
        Format::Text => decomposition_text(&expression, &d),
    })
}

fn json_line(value: serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(&value).expect("serializable");
    text.push('\n');
    text
}

fn mass_text<T: Mass>(m: &T) -> String {
    match T::BACKEND {
        Backend::Rational => m.to_literal().to_string(),
        Backend::Float => format!("{:.6}", m.to_f64()),
    }
}

fn decomposition_text<T: Mass>(expression: &str, d: &Decomposition<T>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{expression}  [base {}]", d.base());
    let _ = writeln!(s, "pmi             {:.6}", Extended(d.pmi_value()));
    let _ = writeln!(s, "i_plus          {:.6}", Extended(d.i_plus_value()));
    let _ = writeln!(s, "i_minus         {:.6}", Extended(d.i_minus_value()));
    let _ = writeln!(s, "informative     {}", mass_text(&d.split.informative));
    let _ = writeln!(s, "misinformative  {}", mass_text(&d.split.misinformative));
    let _ = writeln!(s, "kind            {}", d.split.kind);
    s
}

fn classify<T: Mass>(file: &DistributionFile, x: &str, y: &str, format: Format) -> Result<String> {
    let joint = match file.to_distribution::<T>()? {
        Distribution::Two(j) => j,
        Distribution::Three(j) => j.pair(Var::X, Var::Y),
    };
    let split = joint.exclusion_split(x, y)?;
    Ok(match format {
        Format::Json => json_line(json!({
            "x": x,
            "y": y,
            "informative": split.informative.to_literal(),
            "misinformative": split.misinformative.to_literal(),
            "kind": split.kind,
        })),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "observing {y}, target {x}");
            let _ = writeln!(s, "informative     {}", mass_text(&split.informative));
            let _ = writeln!(s, "misinformative  {}", mass_text(&split.misinformative));
            let _ = writeln!(s, "kind            {}", split.kind);
            s
        }
    })
}

fn report_text(report: &VerificationReport) -> String {
    let mut s = String::new();
    let shape: Vec<String> = report.shape.iter().map(usize::to_string).collect();
    let _ = writeln!(
        s,
        "seed {}  trials {}  shape {}  backend {}",
        report.seed,
        report.trials,
        shape.join(","),
        report.backend
    );
    for c in &report.checks {
        let status = match c.status {
            verify::CheckStatus::Pass => "PASS",
            verify::CheckStatus::Fail => "FAIL",
            verify::CheckStatus::Skip => "SKIP",
        };
        let _ = write!(
            s,
            "{status}  {:<34} evaluated {:>6}  skipped {:>5}  max_residual {:e}",
            c.name, c.evaluated, c.skipped, c.max_residual.0
        );
        for (reason, n) in &c.skip_reasons {
            let _ = write!(s, "  {reason}={n}");
        }
        s.push('\n');
        if let Some(w) = &c.witness {
            let _ = writeln!(
                s,
                "      witness: {}",
                serde_json::to_string(w).expect("serializable")
            );
        }
    }
    for o in &report.observations {
        let _ = writeln!(
            s,
            "note  {:<34} observed in {} of {}",
            o.name, o.occurrences, o.evaluated
        );
    }
    s
}

struct DiagramRequest {
    x: String,
    y: String,
    z: Option<String>,
    panels: Vec<Panel>,
    ordering: ChainOrdering,
    format: DiagramFormat,
    width: u32,
    height: u32,
    unit_height: usize,
}

fn draw<T: Mass>(file: &DistributionFile, r: &DiagramRequest) -> Result<String> {
    match file.to_distribution::<T>()? {
        Distribution::Two(joint) => {
            if r.z.is_some() {
                return Err(arity_error("a chained diagram", 3, 2));
            }
            let mut spec = DiagramSpec::new(joint, r.x.clone(), r.y.clone()).with_panels(r.panels.clone());
            spec.width_px = r.width;
            spec.height_px = r.height;
            spec.unit_height = r.unit_height;
            match r.format {
                DiagramFormat::Ascii => diagram::render_ascii(&spec),
                DiagramFormat::Svg => diagram::render_svg(&spec),
            }
        }
        Distribution::Three(joint) => {
            let z = r.z.clone().ok_or_else(|| {
                Error::InvalidParameters("a three-variable diagram needs --z".into())
            })?;
            let mut spec = ChainSpec::new(joint, r.x.clone(), r.y.clone(), z, r.ordering);
            spec.width_px = r.width;
            spec.height_px = r.height;
            spec.unit_height = r.unit_height;
            match r.format {
                DiagramFormat::Ascii => diagram::render_chain_ascii(&spec),
                DiagramFormat::Svg => diagram::render_chain(&spec),
            }
        }
    }
}

fn generate<T: Sample>(seed: u64, shape: &[usize]) -> Result<DistributionFile> {
    if shape.contains(&0) {
        return Err(Error::InvalidParameters("shape dimensions must be at least 1".into()));
    }
    match *shape {
        [nx, ny] => Ok(DistributionFile::from_joint2(&sample::random_joint2::<T>(seed, nx, ny))),
        [nx, ny, nz] => Ok(DistributionFile::from_joint3(&sample::random_joint3::<T>(
            seed, nx, ny, nz,
        ))),
        _ => Err(Error::InvalidParameters(format!(
            "shape needs 2 or 3 dimensions, got {}",
            shape.len()
        ))),
    }
}
