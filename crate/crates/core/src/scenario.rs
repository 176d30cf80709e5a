//! Scenario-file parsing: UTF-8 `key = value` lines.
//!
//! Recognized keys: `protocol` (ideal|swm|stwm|nswm|validity, required),
//! `pre`, `post`, `observable` (axis specs), `lambda`, `delta`,
//! `n_particles`, `n_trials`, `seed`, `grid_count`, `grid_step`,
//! `output_dir`. Missing keys fall back to documented defaults
//! (pre = x+, post = y+, observable = angle:45, lambda = 0.1, delta = 1,
//! n_particles = 20, n_trials = 100000, seed = 42, grid_count = 1024,
//! grid_step sized automatically from the protocol's expected shifts).
//! Unknown keys are rejected. Lines starting with `#` are comments.

use crate::pointer::GridSpec;
use crate::protocols::{Protocol, Scenario};
use crate::spin::{BlochAxis, Sign};
use std::fmt;
use std::path::PathBuf;

/// One line-numbered parse problem. Line 0 marks file-level problems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// Axis spec grammar: `x|y|z`, `angle:<degrees>` (x–y plane), or
/// `axis:<nx>,<ny>,<nz>`; any form takes an optional trailing `+` or `-`.
pub fn parse_axis_spec(text: &str) -> Result<(BlochAxis, Sign), String> {
    let trimmed = text.trim();
    let (body, sign) = match trimmed.strip_suffix('+') {
        Some(b) => (b, Sign::Plus),
        None => match trimmed.strip_suffix('-') {
            Some(b) => (b, Sign::Minus),
            None => (trimmed, Sign::Plus),
        },
    };
    let axis = match body {
        "x" => BlochAxis::x(),
        "y" => BlochAxis::y(),
        "z" => BlochAxis::z(),
        _ if body.starts_with("angle:") => {
            let deg: f64 = body["angle:".len()..]
                .trim()
                .parse()
                .map_err(|_| format!("bad angle in axis spec `{trimmed}`"))?;
            BlochAxis::xy_angle_deg(deg)
        }
        _ if body.starts_with("axis:") => {
            let parts: Vec<&str> = body["axis:".len()..].split(',').collect();
            if parts.len() != 3 {
                return Err(format!("axis spec `{trimmed}` needs three components"));
            }
            let mut comps = [0.0; 3];
            for (c, p) in comps.iter_mut().zip(&parts) {
                *c = p
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad component in axis spec `{trimmed}`"))?;
            }
            BlochAxis::normalized(comps[0], comps[1], comps[2])
                .map_err(|e| format!("axis spec `{trimmed}`: {e}"))?
        }
        _ => {
            return Err(format!(
                "unknown axis spec `{trimmed}` (expected x|y|z|angle:<deg>|axis:nx,ny,nz with optional +/-)"
            ))
        }
    };
    Ok((axis, sign))
}

struct RawScenario {
    protocol: Option<Protocol>,
    pre: (BlochAxis, Sign),
    post: (BlochAxis, Sign),
    observable: (BlochAxis, Sign),
    lambda: f64,
    delta: f64,
    n_particles: usize,
    n_trials: u64,
    seed: u64,
    grid_count: usize,
    grid_step: Option<f64>,
    output_dir: Option<PathBuf>,
}

impl Default for RawScenario {
    fn default() -> Self {
        RawScenario {
            protocol: None,
            pre: (BlochAxis::x(), Sign::Plus),
            post: (BlochAxis::y(), Sign::Plus),
            observable: (BlochAxis::xy_angle_deg(45.0), Sign::Plus),
            lambda: 0.1,
            delta: 1.0,
            n_particles: 20,
            n_trials: 100_000,
            seed: 42,
            grid_count: 1024,
            grid_step: None,
            output_dir: None,
        }
    }
}

/// Parses scenario text into a validated [`Scenario`], or collects every
/// problem found, each tagged with its line number.
pub fn parse_scenario(text: &str) -> Result<Scenario, Vec<Diagnostic>> {
    let mut raw = RawScenario::default();
    let mut diagnostics = Vec::new();
    let mut seen: Vec<&str> = Vec::new();

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((key, value)) = trimmed.split_once('=') else {
            diagnostics.push(Diagnostic {
                line: lineno,
                message: format!("malformed line `{trimmed}`, expected `key = value`"),
            });
            continue;
        };
        let key = key.trim();
        let value = value.trim();
        let diag = |message: String| Diagnostic { line: lineno, message };

        if seen.contains(&key) {
            diagnostics.push(diag(format!("duplicate key `{key}`")));
            continue;
        }

        match key {
            "protocol" => match value {
                "ideal" => raw.protocol = Some(Protocol::Ideal),
                "swm" => raw.protocol = Some(Protocol::Swm),
                "stwm" => raw.protocol = Some(Protocol::Stwm),
                "nswm" => raw.protocol = Some(Protocol::Nswm),
                "validity" => raw.protocol = Some(Protocol::Validity),
                other => diagnostics.push(diag(format!(
                    "unknown protocol `{other}` (expected ideal|swm|stwm|nswm|validity)"
                ))),
            },
            "pre" | "post" | "observable" => match parse_axis_spec(value) {
                Ok(axis) => match key {
                    "pre" => raw.pre = axis,
                    "post" => raw.post = axis,
                    _ => raw.observable = axis,
                },
                Err(e) => diagnostics.push(diag(e)),
            },
            "lambda" => match value.parse::<f64>() {
                Ok(v) if v >= 0.0 && v.is_finite() => raw.lambda = v,
                Ok(v) => diagnostics.push(diag(format!("lambda must be ≥ 0, got {v}"))),
                Err(_) => diagnostics.push(diag(format!("bad number `{value}` for lambda"))),
            },
            "delta" => match value.parse::<f64>() {
                Ok(v) if v > 0.0 && v.is_finite() => raw.delta = v,
                Ok(v) => diagnostics.push(diag(format!("delta must be > 0, got {v}"))),
                Err(_) => diagnostics.push(diag(format!("bad number `{value}` for delta"))),
            },
            "n_particles" => match value.parse::<usize>() {
                Ok(v) if v >= 1 => raw.n_particles = v,
                Ok(v) => diagnostics.push(diag(format!("n_particles must be ≥ 1, got {v}"))),
                Err(_) => diagnostics.push(diag(format!("bad integer `{value}` for n_particles"))),
            },
            "n_trials" => match value.parse::<u64>() {
                Ok(v) if v >= 1 => raw.n_trials = v,
                Ok(v) => diagnostics.push(diag(format!("n_trials must be ≥ 1, got {v}"))),
                Err(_) => diagnostics.push(diag(format!("bad integer `{value}` for n_trials"))),
            },
            "seed" => match value.parse::<u64>() {
                Ok(v) => raw.seed = v,
                Err(_) => diagnostics.push(diag(format!("bad integer `{value}` for seed"))),
            },
            "grid_count" => match value.parse::<usize>() {
                Ok(v) if v >= 64 && v.is_power_of_two() => raw.grid_count = v,
                Ok(v) => diagnostics.push(diag(format!(
                    "grid_count must be a power of two ≥ 64, got {v}"
                ))),
                Err(_) => diagnostics.push(diag(format!("bad integer `{value}` for grid_count"))),
            },
            "grid_step" => match value.parse::<f64>() {
                Ok(v) if v > 0.0 && v.is_finite() => raw.grid_step = Some(v),
                Ok(v) => diagnostics.push(diag(format!("grid_step must be > 0, got {v}"))),
                Err(_) => diagnostics.push(diag(format!("bad number `{value}` for grid_step"))),
            },
            "output_dir" => raw.output_dir = Some(PathBuf::from(value)),
            other => diagnostics.push(diag(format!("unknown key `{other}`"))),
        }
        seen.push(match key {
            "protocol" => "protocol",
            "pre" => "pre",
            "post" => "post",
            "observable" => "observable",
            "lambda" => "lambda",
            "delta" => "delta",
            "n_particles" => "n_particles",
            "n_trials" => "n_trials",
            "seed" => "seed",
            "grid_count" => "grid_count",
            "grid_step" => "grid_step",
            "output_dir" => "output_dir",
            _ => continue,
        });
    }

    let Some(protocol) = raw.protocol else {
        diagnostics.push(Diagnostic {
            line: 0,
            message: "protocol required".into(),
        });
        return Err(diagnostics);
    };
    if !diagnostics.is_empty() {
        return Err(diagnostics);
    }

    let observable_axis = match raw.observable.1 {
        Sign::Plus => raw.observable.0,
        Sign::Minus => raw.observable.0.flipped(),
    };
    let mut scenario = Scenario {
        protocol,
        pre_axis: raw.pre,
        post_axis: raw.post,
        observable_axis,
        lambda: raw.lambda,
        pointer_spread: raw.delta,
        particle_count: raw.n_particles,
        trial_count: raw.n_trials,
        seed: raw.seed,
        grid: GridSpec::centered(raw.grid_count, 0.1).expect("count validated"),
        output_dir: raw.output_dir,
    };
    scenario.grid = match raw.grid_step {
        Some(step) => match GridSpec::centered(raw.grid_count, step) {
            Ok(g) => g,
            Err(e) => {
                return Err(vec![Diagnostic { line: 0, message: e.to_string() }]);
            }
        },
        None => match scenario.auto_grid(raw.grid_count) {
            Ok(g) => g,
            Err(e) => {
                return Err(vec![Diagnostic { line: 0, message: e.to_string() }]);
            }
        },
    };
    Ok(scenario)
}
