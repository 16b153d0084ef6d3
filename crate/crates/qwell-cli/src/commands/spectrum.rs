use serde::Serialize;

use crate::config::{resolve_config, resolve_potential};
use crate::output::{emit, full};
use crate::{CliError, Format, SpectrumArgs};

#[derive(Serialize)]
struct SpectrumDoc<'a> {
    schema: u32,
    command: &'a str,
    potential: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    z0sq: Option<f64>,
    levels: Vec<Row<'a>>,
}

#[derive(Serialize)]
struct Row<'a> {
    method: &'a str,
    n: usize,
    parity: &'a str,
    eps: f64,
}

pub fn run(args: &SpectrumArgs) -> Result<(), CliError> {
    if args.levels == 0 {
        return Err(CliError::Usage("--levels must be positive".into()));
    }
    let potential = resolve_potential(args.potential, args.z0sq)?;
    let cfg = resolve_config(&potential, &args.solver)?;
    let mut rows = Vec::new();
    for &method in &args.methods {
        for l in super::eigenvalues(method, &potential, &cfg, args.levels)? {
            rows.push(Row {
                method: method.name(),
                n: l.n,
                parity: l.parity.name(),
                eps: l.eps,
            });
        }
    }
    let content = match args.output.format {
        Format::Csv => {
            let mut out = String::from("method,n,parity,eps\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    r.method,
                    r.n,
                    r.parity,
                    full(r.eps)
                ));
            }
            out
        }
        Format::Json => {
            let doc = SpectrumDoc {
                schema: 1,
                command: "spectrum",
                potential: match args.potential {
                    crate::PotentialArg::Sho => "sho",
                    crate::PotentialArg::Dwp => "dwp",
                },
                z0sq: args.z0sq,
                levels: rows,
            };
            let mut s = serde_json::to_string_pretty(&doc)
                .map_err(|e| CliError::Io(format!("json: {e}")))?;
            s.push('\n');
            s
        }
    };
    emit(&args.output.out, &content)
}
