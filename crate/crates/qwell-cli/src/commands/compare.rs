use std::collections::BTreeMap;

use serde::Serialize;

use qwell_core::piecewise::PiecewiseWavefunction;

use crate::config::{resolve_config, resolve_potential};
use crate::output::emit;
use crate::{CliError, CompareArgs, Method};

#[derive(Serialize)]
struct CompareDoc<'a> {
    schema: u32,
    command: &'a str,
    potential: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    z0sq: Option<f64>,
    zmax: f64,
    points: usize,
    config: ConfigEcho,
    levels: Vec<LevelReport>,
}

#[derive(Serialize)]
struct ConfigEcho {
    zc: f64,
    nmax: usize,
    quad_tol: f64,
    root_tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_z: Option<f64>,
}

#[derive(Serialize)]
struct LevelReport {
    n: usize,
    parity: &'static str,
    exact_eps: f64,
    methods: BTreeMap<&'static str, MethodReport>,
}

#[derive(Serialize)]
struct MethodReport {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps: Option<f64>,
    /// |eps - exact_eps|
    #[serde(skip_serializing_if = "Option::is_none")]
    eps_error: Option<f64>,
    /// max |psi_method - psi_exact| over the grid
    #[serde(skip_serializing_if = "Option::is_none")]
    max_deviation: Option<f64>,
    /// same, divided by the exact wavefunction's peak
    #[serde(skip_serializing_if = "Option::is_none")]
    max_relative_deviation: Option<f64>,
    /// largest |jump| over the internal region boundaries
    #[serde(skip_serializing_if = "Option::is_none")]
    max_jump: Option<f64>,
    /// largest jump relative to the wavefunction peak
    #[serde(skip_serializing_if = "Option::is_none")]
    max_relative_jump: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    boundaries: Option<usize>,
}

fn method_report(
    wf: &PiecewiseWavefunction,
    eps: f64,
    exact_eps: f64,
    exact_values: &[f64],
    half: &[f64],
    exact_peak: f64,
) -> MethodReport {
    let candidate: Vec<f64> = half.iter().map(|&z| wf.eval(z)).collect();
    let sign = super::alignment_sign(exact_values, &candidate);
    let mut dev = 0.0f64;
    for (e, c) in exact_values.iter().zip(candidate.iter()) {
        dev = dev.max((e - sign * c).abs());
    }
    let report = wf.discontinuity_report();
    let max_jump = report.iter().map(|d| d.jump).fold(0.0, f64::max);
    let max_rel = report.iter().map(|d| d.relative).fold(0.0, f64::max);
    MethodReport {
        status: "ok",
        eps: Some(eps),
        eps_error: Some((eps - exact_eps).abs()),
        max_deviation: Some(dev),
        max_relative_deviation: Some(dev / exact_peak),
        max_jump: Some(max_jump),
        max_relative_jump: Some(max_rel),
        boundaries: Some(report.len()),
    }
}

fn exhausted() -> MethodReport {
    MethodReport {
        status: "exhausted",
        eps: None,
        eps_error: None,
        max_deviation: None,
        max_relative_deviation: None,
        max_jump: None,
        max_relative_jump: None,
        boundaries: None,
    }
}

pub fn run(args: &CompareArgs) -> Result<(), CliError> {
    if args.levels == 0 {
        return Err(CliError::Usage("--levels must be positive".into()));
    }
    if args.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    for m in &args.methods {
        if *m == Method::Exact {
            return Err(CliError::Usage(
                "compare measures wkb/maf against the exact solver; drop exact from --methods"
                    .into(),
            ));
        }
    }
    let potential = resolve_potential(args.potential, args.z0sq)?;
    let cfg = resolve_config(&potential, &args.solver)?;
    let zmax = match args.zmax {
        Some(z) if z > 0.0 => z,
        Some(z) => return Err(CliError::Usage(format!("--zmax must be positive, got {z}"))),
        None => super::default_zmax(&potential, args.levels - 1, &cfg, true),
    };
    let half: Vec<f64> = (0..args.points)
        .map(|i| zmax * i as f64 / (args.points - 1) as f64)
        .collect();

    let mut levels = Vec::new();
    for n in 0..args.levels {
        let exact = super::exact_wave(&potential, &cfg, n, &half)?;
        let exact_peak = exact.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let mut methods = BTreeMap::new();
        for &method in &args.methods {
            let entry = match method {
                Method::Wkb => match super::wkb_level(&potential, &cfg, n) {
                    Ok(level) => {
                        let wf = super::wkb_wavefunction(&potential, &cfg, &level, zmax)?;
                        method_report(&wf, level.eps, exact.eps, &exact.values, &half, exact_peak)
                    }
                    Err(CliError::Usage(_)) => exhausted(),
                    Err(e) => return Err(e),
                },
                Method::Maf => match super::maf_level(&potential, &cfg, n) {
                    Ok(level) => {
                        let wf = super::maf_wavefunction(&potential, &level, zmax)?;
                        method_report(&wf, level.eps, exact.eps, &exact.values, &half, exact_peak)
                    }
                    Err(CliError::Usage(_)) => exhausted(),
                    Err(e) => return Err(e),
                },
                Method::Exact => unreachable!(),
            };
            methods.insert(method.name(), entry);
        }
        levels.push(LevelReport {
            n,
            parity: exact.parity.name(),
            exact_eps: exact.eps,
            methods,
        });
    }

    let doc = CompareDoc {
        schema: 1,
        command: "compare",
        potential: match args.potential {
            crate::PotentialArg::Sho => "sho",
            crate::PotentialArg::Dwp => "dwp",
        },
        z0sq: args.z0sq,
        zmax,
        points: args.points,
        config: ConfigEcho {
            zc: cfg.z_c,
            nmax: cfg.n_max,
            quad_tol: cfg.quad_tol,
            root_tol: cfg.root_tol,
            delta_z: cfg.delta_z,
        },
        levels,
    };
    let mut s =
        serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(format!("json: {e}")))?;
    s.push('\n');
    emit(&args.out, &s)
}
