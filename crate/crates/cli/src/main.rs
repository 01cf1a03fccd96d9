mod codefile;
mod render;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use quotient_codes::fexpand::{acode_of, f_dual, is_acode};
use quotient_codes::selfdual::{
    classify_length2, enumerate_selfdual, is_isodual, is_self_dual, is_self_reciprocal_dual,
    selfdual_existence, Length2Class,
};
use quotient_codes::{
    dual_code, gen_mat_dual, reverse_cgm, Code, ParseError, QuotRing, DEFAULT_BUDGET,
};
use serde_json::{json, Value};

use codefile::{parse_code_file, parse_modulus, parse_prime, render_code_file, CodeFile};
use render::yes_no;

#[derive(Parser)]
#[command(name = "qcodes", version, about = "Linear codes over F_q[x]/<f(x)>")]
struct Cli {
    /// Emit JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical generator matrix.
    Cgm {
        file: PathBuf,
        /// Print a complete code file instead of the bare matrix.
        #[arg(long)]
        as_file: bool,
    },
    /// Print a generator matrix of the dual code.
    Dual {
        file: PathBuf,
        /// Print the CGM of the dual instead of the raw construction.
        #[arg(long, conflicts_with = "reverse")]
        cgm: bool,
        /// Print the reversed dual matrix, the CGM of the reciprocal dual.
        #[arg(long)]
        reverse: bool,
        /// Print a complete code file instead of the bare matrix.
        #[arg(long)]
        as_file: bool,
    },
    /// Print a basis of the dual over F and whether it is an A-code.
    Fdual { file: PathBuf },
    /// Test self-duality properties.
    #[command(group(ArgGroup::new("property").required(true).multiple(true)))]
    Check {
        file: PathBuf,
        #[arg(long, group = "property")]
        self_dual: bool,
        #[arg(long, group = "property")]
        self_reciprocal: bool,
        #[arg(long, group = "property")]
        isodual: bool,
        #[arg(long, group = "property")]
        classify2: bool,
    },
    /// List every self-dual code of length 1 or 2.
    EnumerateSelfdual {
        #[arg(long)]
        q: String,
        #[arg(long)]
        f: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        length: u8,
    },
    /// Report which lengths admit self-dual codes.
    Existence {
        #[arg(long)]
        q: String,
        #[arg(long)]
        f: String,
    },
    /// Cross-check every computation on this input against brute force.
    Verify { file: PathBuf },
}

enum Failure {
    Parse(String),
    Domain(String),
}

impl From<quotient_codes::Error> for Failure {
    fn from(e: quotient_codes::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<(String, Value, bool), Failure>;

fn load(path: &PathBuf) -> Result<CodeFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    let cf = parse_code_file(&text).map_err(|e| {
        Failure::Parse(format!(
            "{}:{}:{}: {}",
            path.display(),
            e.line,
            e.column,
            e.message
        ))
    })?;
    for w in &cf.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(cf)
}

fn ring_from_args(q: &str, f: &str) -> Result<QuotRing, Failure> {
    let arg_err = |flag: &str, e: ParseError| {
        Failure::Parse(format!("{flag}, column {}: {}", e.column, e.message))
    };
    let field = parse_prime(q.trim(), 1, 1).map_err(|e| arg_err("--q", e))?;
    parse_modulus(&field, f.trim(), 1, 1).map_err(|e| arg_err("--f", e))
}

fn matrix_output(m: &quotient_codes::CodeMatrix, as_file: bool) -> Outcome {
    let text = if as_file {
        render_code_file(m)
    } else {
        render::text(m)
    };
    Ok((text, render::matrix(m), true))
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Cgm { file, as_file } => {
            let cf = load(&file)?;
            matrix_output(Code::from_generators(&cf.matrix).cgm(), as_file)
        }
        Command::Dual {
            file,
            cgm,
            reverse,
            as_file,
        } => {
            let cf = load(&file)?;
            let c = Code::from_generators(&cf.matrix);
            if cgm {
                matrix_output(dual_code(&c)?.cgm(), as_file)
            } else {
                let res = gen_mat_dual(c.cgm())?;
                if reverse {
                    matrix_output(&reverse_cgm(&res)?, as_file)
                } else {
                    matrix_output(&res.h, as_file)
                }
            }
        }
        Command::Fdual { file } => {
            let cf = load(&file)?;
            let (r, l) = (&cf.ring, cf.matrix.ncols());
            let c = Code::from_generators(&cf.matrix);
            let fd = f_dual(&c);
            let acode = is_acode(&fd, r, l)?;
            let mut text = format!("dimension: {}\nbasis:\n", fd.dim());
            text += &render::fmatrix_text(fd.basis(), r.degree());
            text += &format!("A-code: {}\n", yes_no(acode));
            let mut obj = render::header(r);
            obj.insert("dimension".into(), json!(fd.dim()));
            obj.insert("basis".into(), json!(fd.basis().rows()));
            obj.insert("acode".into(), json!(acode));
            if acode {
                let cgm = acode_of(&fd, r, l)?;
                text += "cgm:\n";
                text += &render::text(cgm.cgm());
                obj.insert("rows".into(), render::rows(cgm.cgm()));
            }
            Ok((text, Value::Object(obj), true))
        }
        Command::Check {
            file,
            self_dual,
            self_reciprocal,
            isodual,
            classify2,
        } => {
            let cf = load(&file)?;
            let c = Code::from_generators(&cf.matrix);
            let mut text = String::new();
            let mut obj = serde_json::Map::new();
            if classify2 {
                if c.len() != 2 {
                    return Err(Failure::Domain(format!(
                        "--classify2 needs length 2, got {}",
                        c.len()
                    )));
                }
                if c.is_zero() {
                    return Err(Failure::Domain("the zero code has no class".into()));
                }
                let (name, entries) = match classify_length2(&c)? {
                    Length2Class::I { g1, g2 } => ("I", vec![("g1", g1), ("g2", g2)]),
                    Length2Class::II { g2 } => ("II", vec![("g2", g2)]),
                    Length2Class::III { g1, g2, g3 } => {
                        ("III", vec![("g1", g1), ("g2", g2), ("g3", g3)])
                    }
                };
                let parts: Vec<String> =
                    entries.iter().map(|(k, p)| format!("{k} = {p}")).collect();
                text += &format!("class: {name} ({})\n", parts.join(", "));
                let mut cls = serde_json::Map::new();
                cls.insert("class".into(), json!(name));
                for (k, p) in &entries {
                    cls.insert((*k).into(), render::poly(p));
                }
                obj.insert("classify2".into(), Value::Object(cls));
            }
            if self_dual {
                let v = is_self_dual(&c)?;
                text += &format!("self-dual: {}\n", yes_no(v));
                obj.insert("self_dual".into(), json!(v));
            }
            if self_reciprocal {
                let v = is_self_reciprocal_dual(&c)?;
                text += &format!("self-reciprocal-dual: {}\n", yes_no(v));
                obj.insert("self_reciprocal_dual".into(), json!(v));
            }
            if isodual {
                let v = is_isodual(&c)?;
                match &v {
                    Some(p) => {
                        let p: Vec<String> = p.iter().map(|i| i.to_string()).collect();
                        text += &format!("isodual: yes (permutation {})\n", p.join(" "));
                    }
                    None => text += "isodual: no\n",
                }
                obj.insert("isodual".into(), json!(v.is_some()));
                obj.insert("permutation".into(), json!(v));
            }
            Ok((text, Value::Object(obj), true))
        }
        Command::EnumerateSelfdual { q, f, length } => {
            let r = ring_from_args(&q, &f)?;
            let codes = enumerate_selfdual(&r, length as usize, DEFAULT_BUDGET)?;
            let mut text = format!("{} self-dual codes of length {length}\n", codes.len());
            for (i, c) in codes.iter().enumerate() {
                text += &format!("\n# code {}\n{}", i + 1, render::text(c.cgm()));
            }
            let mut obj = render::header(&r);
            obj.insert("length".into(), json!(length));
            obj.insert(
                "codes".into(),
                Value::Array(codes.iter().map(|c| render::rows(c.cgm())).collect()),
            );
            Ok((text, Value::Object(obj), true))
        }
        Command::Existence { q, f } => {
            let r = ring_from_args(&q, &f)?;
            let rep = selfdual_existence(&r)?;
            let text = format!(
                "multiples_of_4: {}, all_even: {}, all: {}\n",
                yes_no(rep.multiples_of_4),
                yes_no(rep.all_even_lengths),
                yes_no(rep.all_lengths)
            );
            let value = json!({
                "multiples_of_4": rep.multiples_of_4,
                "all_even": rep.all_even_lengths,
                "all": rep.all_lengths,
            });
            Ok((text, value, true))
        }
        Command::Verify { file } => {
            let cf = load(&file)?;
            let checks = verify::run(&cf.matrix);
            let failed = checks.iter().filter(|c| c.failed()).count();
            let mut text: String = checks.iter().map(|c| c.line() + "\n").collect();
            text += &format!("{} checks, {failed} failed\n", checks.len());
            let value = json!({
                "checks": checks.iter().map(|c| c.json()).collect::<Vec<_>>(),
                "failed": failed,
            });
            Ok((text, value, failed == 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((text, value, ok)) => {
            if cli.json {
                println!("{value}");
            } else {
                print!("{text}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
