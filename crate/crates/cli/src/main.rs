//! Command-line surface for the knotsig library: knot analysis, signature
//! evaluation and export, family planning with machine verification,
//! coprimality tests, independence certificates, and the matrix catalog.
//!
//! Exit codes: 0 success, 1 usage, 2 parse, 3 verification failure.

mod emit;
mod render;

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use knotsig::angle::Angle;
use knotsig::laurent::{
    strongly_coprime, strongly_coprime_bounded, BoundedCoprimality, LaurentPoly, PolyTuple,
    StrongCoprimality,
};
use knotsig::obstruct::independence_certificate;
use knotsig::planner::{build_family, full_construction, CopyConvention};
use knotsig::stepfn::{JumpRule, StepFunction};
use knotsig::{knot, seifert};

use render::{pair, pairs_text, Format};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VERIFICATION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "knotsig",
    version,
    about = "Exact knot signature calculus and concordance obstruction certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report Alexander polynomial, Arf, signature jumps and tags of a knot file
    Analyze {
        /// Knot description file (seifert matrix or spectral data)
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate the signature at an angle or export the whole step function
    Signature {
        file: PathBuf,
        /// Angle as a fraction of the full circle, e.g. 1/6
        #[arg(long)]
        at: Option<String>,
        /// Value at a jump: `average` of the adjacent arcs, or `strict` (errors on jumps)
        #[arg(long, default_value = "average")]
        rule: String,
        /// Write the step function as CSV (header angle_turns,value)
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write a static SVG step plot
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Select, build and verify an independent family with its towers
    Plan {
        /// Tower height (at least 2)
        #[arg(long)]
        n: i64,
        /// Number of family members
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Copy-count convention: strict-half or figure-one
        #[arg(long, default_value = "strict-half")]
        convention: String,
        /// Lower twist parameter of the first item
        #[arg(long = "start-m", default_value_t = 1)]
        start_m: i64,
        /// Write the summed bump functions of the family as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the summed bump functions as an SVG step plot
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a polynomial tuple against the admissibility clauses
    Verify {
        /// Semicolon- or comma-separated Laurent polynomials, first entry 0
        #[arg(long)]
        tuple: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Test two Laurent polynomials for coprimality
    Coprime {
        p: String,
        q: String,
        /// Exact strong coprimality (decidable for rational-root inputs)
        #[arg(long)]
        strong: bool,
        /// Bounded substitution scan up to the given exponent
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Rebuild a plan and certify a subset of the family
    Independence {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value = "strict-half")]
        convention: String,
        #[arg(long = "start-m", default_value_t = 1)]
        start_m: i64,
        /// 1-based item indices, comma separated
        #[arg(long)]
        subset: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the built-in Seifert matrices
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

impl From<knotsig::Error> for Failure {
    fn from(e: knotsig::Error) -> Failure {
        let code = match &e {
            knotsig::Error::Parse { .. } => EXIT_PARSE,
            _ => EXIT_VERIFICATION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    // A closed pipe must not turn a finished computation into a panic.
    let _ = io::stdout().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = writeln!(io::stderr(), "error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn write_output(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content)
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn parse_turn_fraction(text: &str) -> Result<Angle, Failure> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let r: i64 = num
        .parse()
        .map_err(|_| usage(format!("invalid turn fraction '{text}'")))?;
    let d: i64 = den
        .parse()
        .map_err(|_| usage(format!("invalid turn fraction '{text}'")))?;
    if d < 1 {
        return Err(usage(format!("turn denominator must be positive in '{text}'")));
    }
    Ok(Angle::turn(r, d))
}

fn parse_convention(text: &str) -> Result<CopyConvention, Failure> {
    CopyConvention::parse(text)
        .ok_or_else(|| usage(format!("unknown convention '{text}' (strict-half or figure-one)")))
}

fn validate_plan_flags(n: i64, count: usize, start_m: i64) -> Result<(), Failure> {
    if n < 2 {
        return Err(usage(format!("--n {n} is below the minimum tower height 2")));
    }
    if count < 1 {
        return Err(usage("--count must be at least 1"));
    }
    if start_m < 1 {
        return Err(usage("--start-m must be at least 1"));
    }
    Ok(())
}

fn parse_poly(text: &str) -> Result<LaurentPoly, Failure> {
    Ok(LaurentPoly::parse(text)?)
}

fn run(command: Command, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Analyze { file, format } => {
            let knot = knot::parse_description(&read_input(&file)?)?;
            out.push_str(&pairs_text(format, &render::knot_pairs(&knot)?));
            Ok(())
        }
        Command::Signature {
            file,
            at,
            rule,
            csv,
            svg,
            format,
        } => {
            let rule = match rule.as_str() {
                "average" => JumpRule::Average,
                "strict" => JumpRule::Strict,
                other => return Err(usage(format!("unknown jump rule '{other}'"))),
            };
            let knot = knot::parse_description(&read_input(&file)?)?;
            let mut pairs = vec![pair("name", knot.name())];
            if let Some(text) = at {
                let angle = parse_turn_fraction(&text)?;
                let value = knot.signature_at(&angle, rule)?;
                pairs.push(pair("at_turns", text.trim()));
                pairs.push(pair("value", value.to_string()));
            } else {
                let sf = knot.signature_function()?;
                pairs.push(pair("jumps", sf.jumps().len().to_string()));
                pairs.push(pair(
                    "average",
                    render::average_label(&knot.average_signature()?),
                ));
            }
            emit_function(knot.signature_function()?, knot.name(), &csv, &svg, &mut pairs)?;
            out.push_str(&pairs_text(format, &pairs));
            Ok(())
        }
        Command::Plan {
            n,
            count,
            convention,
            start_m,
            csv,
            svg,
            format,
        } => {
            validate_plan_flags(n, count, start_m)?;
            let convention = parse_convention(&convention)?;
            let fc = full_construction(n, count, convention, start_m, &[])?;
            match format {
                Format::Text => out.push_str(&render::construction_text(&fc)?),
                Format::Records => {
                    out.push_str(&pairs_text(format, &render::construction_pairs(&fc)?))
                }
            }
            if csv.is_some() || svg.is_some() {
                let mut bumps = StepFunction::zero();
                for item in &fc.plan.items {
                    bumps = bumps.add(item.s.signature_function()?);
                }
                let mut pairs = Vec::new();
                emit_function(&bumps, "family bumps", &csv, &svg, &mut pairs)?;
                out.push_str(&pairs_text(format, &pairs));
            }
            Ok(())
        }
        Command::Verify { tuple, format } => {
            let entries: Vec<&str> = tuple
                .split([';', ','])
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            if entries.len() < 2 {
                return Err(usage("a tuple needs at least two entries"));
            }
            let mut polys = Vec::with_capacity(entries.len());
            for e in entries {
                polys.push(parse_poly(e)?);
            }
            let tuple = PolyTuple::new(polys)?;
            let report = tuple.admissibility();
            let mut pairs = Vec::new();
            for check in &report.clauses {
                let status = match (check.required, check.passed) {
                    (true, true) => "pass",
                    (true, false) => "FAIL",
                    (false, true) => "note",
                    (false, false) => "note (not satisfied)",
                };
                pairs.push(pair(
                    format!("clause.{}", check.clause),
                    format!("{status}: {}", check.detail),
                ));
            }
            pairs.push(pair(
                "admissible",
                if report.admissible { "yes" } else { "no" },
            ));
            if let Some(m) = report.m {
                pairs.push(pair("m", m.to_string()));
            }
            out.push_str(&pairs_text(format, &pairs));
            if report.admissible {
                Ok(())
            } else {
                let clause = report
                    .failed_clause()
                    .map(|c| c.clause.to_string())
                    .unwrap_or_else(|| "admissibility".into());
                Err(Failure {
                    code: EXIT_VERIFICATION,
                    message: format!("tuple is not admissible: failed clause '{clause}'"),
                })
            }
        }
        Command::Coprime {
            p,
            q,
            strong,
            bound,
            format,
        } => {
            let p = parse_poly(&p)?;
            let q = parse_poly(&q)?;
            if p.is_zero() || q.is_zero() {
                return Err(usage("coprimality is not defined for the zero polynomial"));
            }
            let mut pairs = Vec::new();
            if let Some(bound) = bound {
                if bound < 1 {
                    return Err(usage("--bound must be at least 1"));
                }
                pairs.push(pair("mode", format!("bounded scan, exponents up to {bound}")));
                match strongly_coprime_bounded(&p, &q, bound)? {
                    BoundedCoprimality::No(w) => {
                        pairs.push(pair("verdict", "no"));
                        pairs.push(pair("witness", format!("(m,n) = ({},{})", w.m, w.n)));
                        pairs.push(pair("common_factor", format!("{}", w.common_factor)));
                    }
                    BoundedCoprimality::Unknown => {
                        pairs.push(pair("verdict", "unknown"));
                    }
                }
            } else if strong {
                pairs.push(pair("mode", "strong coprimality, exact"));
                match strongly_coprime(&p, &q)? {
                    StrongCoprimality::Yes => pairs.push(pair("verdict", "yes")),
                    StrongCoprimality::No(w) => {
                        pairs.push(pair("verdict", "no"));
                        pairs.push(pair("witness", format!("(m,n) = ({},{})", w.m, w.n)));
                        pairs.push(pair("common_factor", format!("{}", w.common_factor)));
                    }
                    StrongCoprimality::Unsupported => {
                        pairs.push(pair("verdict", "unsupported"));
                        pairs.push(pair(
                            "hint",
                            "irrational roots present; use --bound for a refutation scan",
                        ));
                    }
                }
            } else {
                pairs.push(pair("mode", "gcd over the rationals"));
                let verdict = knotsig::laurent::coprime(&p, &q)?;
                pairs.push(pair("verdict", if verdict { "yes" } else { "no" }));
            }
            out.push_str(&pairs_text(format, &pairs));
            Ok(())
        }
        Command::Independence {
            n,
            count,
            convention,
            start_m,
            subset,
            format,
        } => {
            validate_plan_flags(n, count, start_m)?;
            let convention = parse_convention(&convention)?;
            let mut indices = Vec::new();
            for part in subset.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let i: usize = part
                    .parse()
                    .map_err(|_| usage(format!("invalid subset index '{part}'")))?;
                indices.push(i);
            }
            if indices.is_empty() {
                return Err(usage("--subset must list at least one 1-based index"));
            }
            let mut sorted = indices.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != indices.len() {
                return Err(usage("--subset indices must be distinct"));
            }
            if let Some(&worst) = sorted.iter().find(|&&i| i == 0 || i > count) {
                return Err(usage(format!(
                    "subset index {worst} is outside 1..={count}"
                )));
            }
            let plan = build_family(n, count, convention, start_m)?;
            let cert = independence_certificate(&plan, &indices)?;
            match format {
                Format::Text => out.push_str(&cert.text()),
                Format::Records => {
                    let subset = cert
                        .subset
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    out.push_str(&pairs_text(
                        format,
                        &[
                            pair("subset", subset),
                            pair("d", cert.d.to_string()),
                            pair("witness", cert.witness_sum.to_string()),
                            pair("bound_c", cert.bound_c.to_string()),
                            pair("margin", cert.margin.to_string()),
                            pair("valid", if cert.is_valid() { "yes" } else { "no" }),
                        ],
                    ));
                }
            }
            if cert.is_valid() {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_VERIFICATION,
                    message: format!("margin {} is not positive", cert.margin),
                })
            }
        }
        Command::Catalog { format } => {
            let mut pairs = Vec::new();
            for entry in seifert::catalog() {
                let key = |field: &str| format!("{}.{field}", entry.name);
                pairs.push(pair(key("size"), entry.matrix.size().to_string()));
                pairs.push(pair(
                    key("alexander"),
                    format!("{}", seifert::alexander(&entry.matrix)?),
                ));
                pairs.push(pair(key("arf"), seifert::arf(&entry.matrix)?.to_string()));
                match entry.crossing_bound {
                    Some(b) => pairs.push(pair(key("crossing_bound"), b.to_string())),
                    None => pairs.push(pair(key("crossing_bound"), "none")),
                }
            }
            out.push_str(&pairs_text(format, &pairs));
            Ok(())
        }
    }
}

fn emit_function(
    sf: &StepFunction,
    title: &str,
    csv: &Option<PathBuf>,
    svg: &Option<PathBuf>,
    pairs: &mut Vec<(String, String)>,
) -> Result<(), Failure> {
    if let Some(path) = csv {
        write_output(path, &emit::csv_of_step(sf))?;
        pairs.push(pair("csv", path.display().to_string()));
    }
    if let Some(path) = svg {
        write_output(path, &emit::svg_of_step(sf, title))?;
        pairs.push(pair("svg", path.display().to_string()));
    }
    Ok(())
}
