use serde::Serialize;

use qwell_core::exact::{Potential, SolverConfig};

use crate::config::{resolve_config, validate_z0sq};
use crate::output::{emit, significant};
use crate::{CliError, Format, TablesArgs};

#[derive(Serialize)]
struct TablesDoc<'a> {
    schema: u32,
    command: &'a str,
    z0sq: &'a [f64],
    levels: usize,
    entries: Vec<Entry<'a>>,
}

#[derive(Serialize)]
struct Entry<'a> {
    method: &'a str,
    n: usize,
    /// one value per z0sq column; null marks levels above the barrier
    values: Vec<Option<f64>>,
}

pub fn run(args: &TablesArgs) -> Result<(), CliError> {
    if args.levels == 0 {
        return Err(CliError::Usage("--levels must be positive".into()));
    }
    if args.digits == 0 || args.digits > 17 {
        return Err(CliError::Usage("--digits must be in 1..=17".into()));
    }
    for &z in &args.z0sq {
        validate_z0sq(z)?;
    }
    // columns[method][column][n]
    let mut per_method: Vec<(&str, Vec<Vec<Option<f64>>>)> = Vec::new();
    for &method in &args.methods {
        let mut columns = Vec::new();
        for &z0sq in &args.z0sq {
            let potential = Potential::Dwp { z0: z0sq.sqrt() };
            let cfg: SolverConfig = resolve_config(&potential, &args.solver)?;
            let found = super::eigenvalues(method, &potential, &cfg, args.levels)?;
            let mut col: Vec<Option<f64>> = vec![None; args.levels];
            for l in found {
                col[l.n] = Some(l.eps);
            }
            columns.push(col);
        }
        per_method.push((method.name(), columns));
    }
    let content = match args.output.format {
        Format::Csv => {
            let mut out = String::from("method,n");
            for &z in &args.z0sq {
                out.push_str(&format!(",z0sq={z}"));
            }
            out.push('\n');
            for (name, columns) in &per_method {
                for n in 0..args.levels {
                    out.push_str(&format!("{name},{n}"));
                    for col in columns {
                        match col[n] {
                            Some(v) => out.push_str(&format!(",{}", significant(v, args.digits))),
                            None => out.push_str(",N/A"),
                        }
                    }
                    out.push('\n');
                }
            }
            out
        }
        Format::Json => {
            let mut entries = Vec::new();
            for (name, columns) in &per_method {
                for n in 0..args.levels {
                    entries.push(Entry {
                        method: name,
                        n,
                        values: columns.iter().map(|col| col[n]).collect(),
                    });
                }
            }
            let doc = TablesDoc {
                schema: 1,
                command: "tables",
                z0sq: &args.z0sq,
                levels: args.levels,
                entries,
            };
            let mut s = serde_json::to_string_pretty(&doc)
                .map_err(|e| CliError::Io(format!("json: {e}")))?;
            s.push('\n');
            s
        }
    };
    emit(&args.output.out, &content)
}
