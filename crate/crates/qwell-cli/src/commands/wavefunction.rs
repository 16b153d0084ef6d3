use serde::Serialize;

use qwell_core::piecewise::{BranchKind, PiecewiseWavefunction};

use crate::config::{resolve_config, resolve_potential};
use crate::output::{emit, full, full_opt};
use crate::{CliError, Format, Method, WavefunctionArgs};

#[derive(Serialize)]
struct WavefunctionDoc<'a> {
    schema: u32,
    command: &'a str,
    potential: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    z0sq: Option<f64>,
    level: usize,
    zmax: f64,
    points: usize,
    records: Vec<Record>,
}

#[derive(Serialize, Default, Clone)]
struct Record {
    z: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wkb: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wkb_bare: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wkb_patch: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wkb_region: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    maf: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    maf_region: Option<&'static str>,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

pub fn run(args: &WavefunctionArgs) -> Result<(), CliError> {
    if args.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let potential = resolve_potential(args.potential, args.z0sq)?;
    let cfg = resolve_config(&potential, &args.solver)?;
    let with_exact = args.methods.contains(&Method::Exact);
    let zmax = match args.zmax {
        Some(z) if z > 0.0 => z,
        Some(z) => return Err(CliError::Usage(format!("--zmax must be positive, got {z}"))),
        None => super::default_zmax(&potential, args.level, &cfg, with_exact),
    };
    // a grid that is mirror-symmetric by construction; the negative half of
    // every column is generated by parity reflection, not recomputed
    let n_pts = args.points;
    let mut grid = vec![0.0f64; n_pts];
    for i in 0..n_pts / 2 {
        let v = -zmax + 2.0 * zmax * i as f64 / (n_pts - 1) as f64;
        grid[i] = v;
        grid[n_pts - 1 - i] = -v;
    }
    // odd point counts hit the origin exactly
    let half: Vec<f64> = grid.iter().map(|z| z.abs()).collect();

    let exact = if with_exact {
        Some(super::exact_wave(&potential, &cfg, args.level, &half)?)
    } else {
        None
    };
    let wkb = if args.methods.contains(&Method::Wkb) {
        let level = super::wkb_level(&potential, &cfg, args.level)?;
        Some(super::wkb_wavefunction(&potential, &cfg, &level, zmax)?)
    } else {
        None
    };
    let maf = if args.methods.contains(&Method::Maf) {
        let level = super::maf_level(&potential, &cfg, args.level)?;
        Some(super::maf_wavefunction(&potential, &level, zmax)?)
    } else {
        None
    };

    // sign-align the piecewise methods to the exact samples where available
    let align = |wf: &PiecewiseWavefunction| -> f64 {
        match &exact {
            Some(e) => {
                let candidate: Vec<f64> = half.iter().map(|&z| wf.eval(z)).collect();
                super::alignment_sign(&e.values, &candidate)
            }
            None => 1.0,
        }
    };
    let wkb_sign = wkb.as_ref().map(align).unwrap_or(1.0);
    let maf_sign = maf.as_ref().map(align).unwrap_or(1.0);

    let mut records = Vec::with_capacity(n_pts);
    for (i, &z) in grid.iter().enumerate() {
        let mirror = if z < 0.0 { n_pts - 1 - i } else { i };
        let az = half[mirror];
        let mut rec = Record {
            z,
            ..Record::default()
        };
        if let Some(e) = &exact {
            let sign = if z < 0.0 { e.parity.sign() } else { 1.0 };
            rec.exact = Some(sign * e.values[mirror]);
        }
        if let Some(wf) = &wkb {
            let sign = wkb_sign * if z < 0.0 { wf.parity().sign() } else { 1.0 };
            rec.wkb = finite(sign * wf.eval(az));
            rec.wkb_bare = wf
                .eval_kind(az, BranchKind::Bare)
                .and_then(finite)
                .map(|v| sign * v);
            rec.wkb_patch = wf
                .eval_kind(az, BranchKind::Patch)
                .and_then(finite)
                .map(|v| sign * v);
            rec.wkb_region = Some(wf.region_label(az));
        }
        if let Some(wf) = &maf {
            let sign = maf_sign * if z < 0.0 { wf.parity().sign() } else { 1.0 };
            rec.maf = finite(sign * wf.eval(az));
            rec.maf_region = Some(wf.region_label(az));
        }
        records.push(rec);
    }

    let content = match args.output.format {
        Format::Csv => {
            let mut header = vec!["z"];
            if exact.is_some() {
                header.push("exact");
            }
            if wkb.is_some() {
                header.extend(["wkb", "wkb_bare", "wkb_patch", "wkb_region"]);
            }
            if maf.is_some() {
                header.extend(["maf", "maf_region"]);
            }
            let mut out = header.join(",");
            out.push('\n');
            for r in &records {
                let mut fields = vec![full(r.z)];
                if exact.is_some() {
                    fields.push(full_opt(r.exact));
                }
                if wkb.is_some() {
                    fields.push(full_opt(r.wkb));
                    fields.push(full_opt(r.wkb_bare));
                    fields.push(full_opt(r.wkb_patch));
                    fields.push(r.wkb_region.unwrap_or("").to_string());
                }
                if maf.is_some() {
                    fields.push(full_opt(r.maf));
                    fields.push(r.maf_region.unwrap_or("").to_string());
                }
                out.push_str(&fields.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let doc = WavefunctionDoc {
                schema: 1,
                command: "wavefunction",
                potential: match args.potential {
                    crate::PotentialArg::Sho => "sho",
                    crate::PotentialArg::Dwp => "dwp",
                },
                z0sq: args.z0sq,
                level: args.level,
                zmax,
                points: args.points,
                records,
            };
            let mut s = serde_json::to_string_pretty(&doc)
                .map_err(|e| CliError::Io(format!("json: {e}")))?;
            s.push('\n');
            s
        }
    };
    emit(&args.output.out, &content)
}
