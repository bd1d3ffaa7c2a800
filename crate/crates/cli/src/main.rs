//! Command-line front end: emit presentations and normal forms, run the
//! verification suites, and produce machine-readable reports.
//!
//! Exit codes: 0 success/pass, 1 verification failure, 2 usage error,
//! 3 resource limit exceeded.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use necklace::builtin::{self, Flavor};
use necklace::garside::CircularGroup;
use necklace::isomaps::{self, MapName, Report, RoundTrip};
use necklace::necklaces::{build, NecklaceKind};
use necklace::presentations::from_braid;
use necklace::presentations::{abelianization, coset_enumeration, simplify, FinitePresentation};
use necklace::words::Word;
use necklace::{coset::Enumeration, Error};

#[derive(Parser)]
#[command(
    name = "necklace",
    about = "Torus-necklace link groups, J-braid presentations and circular Garside groups",
    long_about = "Builds the link-group presentations of torus necklaces and key-chain \
links, solves the word problem in circular groups G(n,m) via Garside normal forms, and \
mechanically verifies the homomorphisms relating the two families.\n\n\
Flavor names follow the necklace cores: full keeps both extra circles, internal keeps \
the internal-core circle (kills z), external keeps the external-core circle (kills y), \
plain is the bare torus link (kills y and z)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct ParamArgs {
    /// first parameter (strand/generator count)
    #[arg(long)]
    n: u64,
    /// second parameter (torus winding / window length)
    #[arg(long)]
    m: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a built-in presentation as a JSON document
    Present {
        /// presentation family
        #[arg(value_parser = ["necklace", "circular", "jbraid", "jreflection",
                              "torusknot", "toruslink", "cor526", "keychain"])]
        family: String,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        /// torsion exponent of the x generators (jreflection) or the
        /// key-chain size (keychain)
        #[arg(long)]
        k: Option<u64>,
        /// torsion exponent of y (jreflection)
        #[arg(long)]
        b: Option<u64>,
        /// torsion exponent of z (jreflection)
        #[arg(long)]
        c: Option<u64>,
        /// necklace flavor: full | internal | external | plain
        #[arg(long)]
        flavor: Option<String>,
        /// braid builder for the necklace family:
        /// necklace | keychain | u | d | v | beta | halftwist
        #[arg(long)]
        kind: Option<String>,
        /// lower crossing index for --kind u|d
        #[arg(long)]
        s: Option<u32>,
        /// upper crossing index for --kind u|d
        #[arg(long)]
        t: Option<u32>,
        /// cyclically reduce and deduplicate the relators
        #[arg(long)]
        simplified: bool,
        /// emit flavors outside their defined parameter range (warns)
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Garside normal form of a word in G(n,m)
    Nf {
        #[command(flatten)]
        params: ParamArgs,
        /// word over a1..an, e.g. "a1.a2^-1.a1"
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite; exit 1 on any failure
    Verify {
        /// check: phi | psi | roundtrip | special | thm47 | thm57 | conj56 | all
        #[arg(value_parser = ["phi", "psi", "roundtrip", "special",
                              "thm47", "thm57", "conj56", "all"])]
        check: String,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        /// with "all": run every check for all cells 1 <= n,m <= max
        #[arg(long, default_value_t = 4)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Rank and invariant factors of a presentation's abelianization
    Abelianize {
        /// presentation JSON file (standard input when omitted)
        #[arg(long)]
        file: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Todd-Coxeter enumeration of a presentation over the trivial subgroup
    Coset {
        /// coset table limit
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
        /// presentation JSON file (standard input when omitted)
        #[arg(long)]
        file: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Equality classes of positive words of bounded length in G(n,m)
    Ball {
        #[command(flatten)]
        params: ParamArgs,
        /// maximum word length
        #[arg(long)]
        len: u32,
        /// word-count budget
        #[arg(long, default_value_t = 200_000)]
        limit: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::LimitExceeded(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Present {
            family,
            n,
            m,
            k,
            b,
            c,
            flavor,
            kind,
            s,
            t,
            simplified,
            force,
            format,
        } => {
            let need_nm = |n: Option<u64>, m: Option<u64>| -> Result<(u64, u64), Error> {
                match (n, m) {
                    (Some(n), Some(m)) => Ok((n, m)),
                    _ => Err(Error::Param(format!("family {family} needs --n and --m"))),
                }
            };
            let flavor_of = |s: &Option<String>| -> Result<Flavor, Error> {
                s.as_deref().map_or(Ok(Flavor::Full), Flavor::parse)
            };
            let p = match family.as_str() {
                "necklace" => match kind.as_deref().unwrap_or("necklace") {
                    "necklace" => {
                        let (n, m) = need_nm(n, m)?;
                        builtin::necklace_closure(n, m, flavor_of(&flavor)?)?
                    }
                    "keychain" => {
                        let k = k.ok_or_else(|| Error::Param("kind keychain needs --k".into()))?;
                        builtin::keychain(k)?
                    }
                    other => {
                        let need = |v: Option<u32>, what: &str| {
                            v.ok_or_else(|| Error::Param(format!("kind {other} needs --{what}")))
                        };
                        let need_n = || -> Result<u32, Error> {
                            Ok(
                                n.ok_or_else(|| Error::Param(format!("kind {other} needs --n")))?
                                    as u32,
                            )
                        };
                        let braid_kind = match other {
                            "u" => NecklaceKind::U {
                                s: need(s, "s")?,
                                t: need(t, "t")?,
                            },
                            "d" => NecklaceKind::D {
                                s: need(s, "s")?,
                                t: need(t, "t")?,
                            },
                            "v" => NecklaceKind::V { n: need_n()? },
                            "beta" => NecklaceKind::Beta { n: need_n()? },
                            "halftwist" => NecklaceKind::HalfTwist { n: need_n()? },
                            bad => return Err(Error::Param(format!("unknown kind {bad:?}"))),
                        };
                        from_braid(&build(&braid_kind.spec()?)?)?
                    }
                },
                "circular" => {
                    let (n, m) = need_nm(n, m)?;
                    builtin::circular(n, m)?
                }
                "jbraid" => {
                    let (n, m) = need_nm(n, m)?;
                    let fl = flavor_of(&flavor)?;
                    if force && builtin::jbraid(n, m, fl, false).is_err() {
                        eprintln!(
                            "warning: flavor {} at ({n},{m}) is outside the defined range",
                            fl.name()
                        );
                    }
                    builtin::jbraid(n, m, fl, force)?
                }
                "jreflection" => {
                    let (n, m) = need_nm(n, m)?;
                    let k = k.ok_or_else(|| Error::Param("jreflection needs --k".into()))?;
                    let (b, c) = (b.unwrap_or(1), c.unwrap_or(1));
                    if force && builtin::jreflection(k, b, n, c, m, false).is_err() {
                        eprintln!("warning: parameters outside the defined range");
                    }
                    builtin::jreflection(k, b, n, c, m, force)?
                }
                "torusknot" => {
                    let (n, m) = need_nm(n, m)?;
                    builtin::torus_knot(n, m)?
                }
                "toruslink" => {
                    let (n, m) = need_nm(n, m)?;
                    builtin::torus_link(n, m)?
                }
                "cor526" => {
                    let (n, m) = need_nm(n, m)?;
                    builtin::cor526(n, m)?
                }
                "keychain" => {
                    let k = k.ok_or_else(|| Error::Param("keychain needs --k".into()))?;
                    builtin::keychain(k)?
                }
                _ => unreachable!("clap validates the family"),
            };
            let p = if simplified { simplify(&p)? } else { p };
            match format {
                Format::Json => println!("{}", p.to_json()),
                Format::Text => print_presentation(&p),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Nf {
            params,
            word,
            format,
        } => {
            let group = CircularGroup::new(params.n as u32, params.m as u32)?;
            let w: Word = word.parse()?;
            let nf = group.normal_form(&w)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "n": params.n, "m": params.m,
                        "word": w.to_string(),
                        "normal_form": nf.to_string(),
                    })
                ),
                Format::Text => println!("{nf}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            check,
            n,
            m,
            max,
            format,
        } => {
            let mut reports: Vec<Report> = Vec::new();
            if check == "all" {
                for n in 1..=max {
                    for m in 1..=max {
                        reports.extend(isomaps::all_checks(n, m)?);
                    }
                }
            } else {
                let (n, m) = match (n, m) {
                    (Some(n), Some(m)) => (n, m),
                    _ => return Err(Error::Param("verify needs --n and --m".into())),
                };
                match check.as_str() {
                    "phi" => reports.push(isomaps::verify_relators(&isomaps::build_map(
                        MapName::Phi,
                        n,
                        m,
                    )?)?),
                    "psi" => reports.push(isomaps::psi_shadow(n, m)?),
                    "roundtrip" => {
                        reports.push(isomaps::round_trip(n, m, RoundTrip::PhiPsi)?);
                        reports.push(isomaps::round_trip(n, m, RoundTrip::PsiStarPhiStar)?);
                    }
                    "special" => reports.push(isomaps::special_elements(n, m)?.1),
                    "thm47" => reports.push(isomaps::theorem47_check(n, m)?),
                    "thm57" => reports.push(isomaps::theorem57_check(n, m)?),
                    "conj56" => reports.push(isomaps::conjecture56_evidence(n, m)?),
                    _ => unreachable!("clap validates the check"),
                }
            }
            let all_pass = reports.iter().all(|r| r.passed());
            match format {
                Format::Json => {
                    let body: Vec<String> = reports.iter().map(|r| r.to_json()).collect();
                    println!("[{}]", body.join(","));
                }
                Format::Text => {
                    for r in &reports {
                        for item in &r.items {
                            println!(
                                "{} ({},{}): {} -- {}",
                                r.check,
                                r.n,
                                r.m,
                                item.name,
                                match item.status {
                                    isomaps::Status::Pass => "pass",
                                    isomaps::Status::Fail => "FAIL",
                                    isomaps::Status::Vacuous => "vacuous",
                                }
                            );
                        }
                    }
                }
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Abelianize { file, format } => {
            let p = read_presentation(file.as_deref())?;
            let ab = abelianization(&p)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({ "rank": ab.rank, "torsion": ab.torsion })
                ),
                Format::Text => println!("rank {} torsion {:?}", ab.rank, ab.torsion),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Coset {
            limit,
            file,
            format,
        } => {
            let p = read_presentation(file.as_deref())?;
            match coset_enumeration(&p, limit)? {
                Enumeration::Order(order) => {
                    match format {
                        Format::Json => println!("{}", serde_json::json!({ "order": order })),
                        Format::Text => println!("order {order}"),
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Enumeration::LimitExceeded => {
                    match format {
                        Format::Json => {
                            println!("{}", serde_json::json!({ "limit_exceeded": true }))
                        }
                        Format::Text => println!("limit exceeded"),
                    }
                    Ok(ExitCode::from(3))
                }
            }
        }
        Command::Ball {
            params,
            len,
            limit,
            format,
        } => {
            let group = CircularGroup::new(params.n as u32, params.m as u32)?;
            let mut ball = group.positive_ball(len, limit)?;
            let reps: Vec<String> = ball
                .representatives()
                .iter()
                .map(|w| {
                    if w.is_empty() {
                        "1".to_string()
                    } else {
                        w.iter()
                            .map(|i| format!("a{i}"))
                            .collect::<Vec<_>>()
                            .join(".")
                    }
                })
                .collect();
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({ "classes": reps.len(), "representatives": reps })
                ),
                Format::Text => {
                    println!("{} classes", reps.len());
                    for r in &reps {
                        println!("{r}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_presentation(p: &FinitePresentation) {
    let gens: Vec<String> = p.generators.iter().map(|g| g.to_string()).collect();
    println!("generators: {}", gens.join(", "));
    for (l, r) in &p.relations {
        println!("  {l} = {r}");
    }
}

fn read_presentation(file: Option<&str>) -> Result<FinitePresentation, Error> {
    let text = match file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Parse(format!("cannot read standard input: {e}")))?;
            buf
        }
    };
    FinitePresentation::from_json(&text)
}
