use serde::Serialize;

use qwell_core::exact::Potential;

use crate::config::{resolve_config, validate_z0sq};
use crate::output::{emit, full, full_opt};
use crate::{CliError, Format, SplittingArgs};

#[derive(Serialize)]
struct SplittingDoc<'a> {
    schema: u32,
    command: &'a str,
    rows: Vec<Row<'a>>,
}

#[derive(Serialize)]
struct Row<'a> {
    method: &'a str,
    z0sq: f64,
    pair: String,
    even_eps: Option<f64>,
    odd_eps: Option<f64>,
    delta: Option<f64>,
    status: &'a str,
}

fn parse_pair(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || {
        CliError::Usage(format!(
            "--pairs entries must be odd-even like 1-0 or 3-2, got {s}"
        ))
    };
    let (hi, lo) = s.split_once('-').ok_or_else(bad)?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    if !lo.is_multiple_of(2) || hi != lo + 1 {
        return Err(bad());
    }
    Ok((hi, lo))
}

pub fn run(args: &SplittingArgs) -> Result<(), CliError> {
    for &z in &args.z0sq {
        validate_z0sq(z)?;
    }
    let pairs: Vec<(usize, usize)> = args
        .pairs
        .iter()
        .map(|s| parse_pair(s))
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for &method in &args.methods {
        for &(hi, lo) in &pairs {
            for &z0sq in &args.z0sq {
                let potential = Potential::Dwp { z0: z0sq.sqrt() };
                let cfg = resolve_config(&potential, &args.solver)?;
                let levels = super::eigenvalues(method, &potential, &cfg, hi + 1)?;
                let row = if levels.len() > hi {
                    let even = levels[lo].eps;
                    let odd = levels[hi].eps;
                    Row {
                        method: method.name(),
                        z0sq,
                        pair: format!("{hi}-{lo}"),
                        even_eps: Some(even),
                        odd_eps: Some(odd),
                        delta: Some(odd - even),
                        status: "ok",
                    }
                } else {
                    Row {
                        method: method.name(),
                        z0sq,
                        pair: format!("{hi}-{lo}"),
                        even_eps: levels.get(lo).map(|l| l.eps),
                        odd_eps: None,
                        delta: None,
                        status: "exhausted",
                    }
                };
                rows.push(row);
            }
        }
    }
    let content = match args.output.format {
        Format::Csv => {
            let mut out = String::from("method,z0sq,pair,even_eps,odd_eps,delta,status\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.method,
                    full(r.z0sq),
                    r.pair,
                    full_opt(r.even_eps),
                    full_opt(r.odd_eps),
                    full_opt(r.delta),
                    r.status
                ));
            }
            out
        }
        Format::Json => {
            let doc = SplittingDoc {
                schema: 1,
                command: "splitting",
                rows,
            };
            let mut s = serde_json::to_string_pretty(&doc)
                .map_err(|e| CliError::Io(format!("json: {e}")))?;
            s.push('\n');
            s
        }
    };
    emit(&args.output.out, &content)
}
