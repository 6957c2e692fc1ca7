//! Command-line front end: load instances, run checks, emit human-readable
//! and machine-readable reports.
//!
//! Exit codes: 0 = success, 1 = semantic failure (axioms, verdicts),
//! 2 = input error (unreadable, malformed or invalid files).

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use trunkan::gpd::{self, GroupoidMap};
use trunkan::homspaces;
use trunkan::kan;
use trunkan::serial;
use trunkan::sset::SimplexIx;
use trunkan::testkit;
use trunkan::yoneda;

#[derive(Parser)]
#[command(name = "trunkan", version, about = "finite truncated Kan complexes and groupoids")]
struct Cli {
    /// Emit a machine-readable report (stable across runs with one seed)
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Category,
    Groupoid,
}

#[derive(Subcommand)]
enum Command {
    /// Check the n-category or n-groupoid axioms of a complex file
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "groupoid")]
        level: Level,
        /// Expected truncation level (checked against the file)
        #[arg(long)]
        n: Option<usize>,
    },
    /// Homotopy class count at a base object
    Pi {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        base: Option<String>,
    },
    /// Weak-equivalence verdict for a simplicial map file
    Weq { file: PathBuf },
    /// Pushout of groupoids H <- K -> G along identifier inclusions
    Pushout {
        file_k: PathBuf,
        file_g: PathBuf,
        file_h: PathBuf,
    },
    /// Hom-groupoid of a complex from an object to an object or edge
    Hom {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: Option<String>,
        #[arg(long)]
        edge: Option<String>,
    },
    /// Edge and 2-cell recovery round-trips over a 2-groupoid file
    Yoneda {
        file: PathBuf,
        #[arg(long)]
        roundtrip: bool,
    },
    /// Emit a generated instance as JSON (`nerve-z N`, `nerve-s3`,
    /// `nerve-v4`, `cm-h N`, `cm-q N`, `cm-id N`, `disc L`,
    /// `codiscrete N`, `discrete N`, `random`)
    Gen {
        name: String,
        arg: Option<usize>,
        /// Seed for the random generator (overridden by TRUNKAN_SEED)
        #[arg(long, default_value = "0")]
        seed: u64,
    },
}

#[derive(Serialize)]
struct Verdict {
    name: String,
    ok: bool,
    detail: String,
}

#[derive(Serialize)]
struct Report {
    schema: &'static str,
    command: String,
    verdicts: Vec<Verdict>,
    witnesses: Vec<String>,
}

struct Output {
    report: Report,
    json: bool,
    started: Instant,
}

impl Output {
    fn new(json: bool, command: String) -> Output {
        Output {
            report: Report {
                schema: "trunkan-report/1",
                command,
                verdicts: Vec::new(),
                witnesses: Vec::new(),
            },
            json,
            started: Instant::now(),
        }
    }

    fn verdict(&mut self, name: &str, ok: bool, detail: String) {
        self.report.verdicts.push(Verdict {
            name: name.to_string(),
            ok,
            detail,
        });
    }

    fn witness(&mut self, w: String) {
        self.report.witnesses.push(w);
    }

    fn finish(self) -> ExitCode {
        let ok = self.report.verdicts.iter().all(|v| v.ok);
        if self.json {
            // wall time omitted deliberately: machine output is stable
            print!("{}", serial::to_canonical_json(&self.report));
        } else {
            for v in &self.report.verdicts {
                println!(
                    "{}: {} {}",
                    v.name,
                    if v.ok { "ok" } else { "FAIL" },
                    v.detail
                );
            }
            for w in &self.report.witnesses {
                println!("  witness: {w}");
            }
            println!("elapsed: {:?}", self.started.elapsed());
        }
        if ok {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    }
}

fn input_error(msg: String) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn load_complex(path: &PathBuf) -> Result<trunkan::sset::TruncatedSSet, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: serial::ComplexFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    serial::complex_from_file(&file).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_groupoid(path: &PathBuf) -> Result<gpd::FiniteGroupoid, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: serial::GroupoidFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    serial::groupoid_from_file(&file).map_err(|e| format!("{}: {e}", path.display()))
}

fn inclusion_by_ids(
    sub: &Arc<gpd::FiniteGroupoid>,
    big: &Arc<gpd::FiniteGroupoid>,
) -> Result<GroupoidMap, String> {
    let on_obj = sub
        .objects()
        .map(|a| {
            big.object(sub.object_id(a))
                .ok_or_else(|| format!("object `{}` missing in the target", sub.object_id(a)))
        })
        .collect::<Result<_, _>>()?;
    let on_mor = sub
        .morphisms()
        .map(|m| {
            big.morphism(sub.morphism_id(m))
                .ok_or_else(|| format!("morphism `{}` missing in the target", sub.morphism_id(m)))
        })
        .collect::<Result<_, _>>()?;
    GroupoidMap::new(sub.clone(), big.clone(), on_obj, on_mor).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => input_error(msg),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Check { file, level, n } => {
            let x = load_complex(&file)?;
            if let Some(expect) = n {
                if x.n() != expect {
                    return Err(format!("file has truncation level {}, expected {expect}", x.n()));
                }
            }
            let mut out = Output::new(cli.json, format!("check {}", file.display()));
            let report = match level {
                Level::Category => kan::check_n_category(&x),
                Level::Groupoid => kan::check_n_groupoid(&x),
            };
            let kind = match level {
                Level::Category => "category axioms",
                Level::Groupoid => "groupoid axioms",
            };
            out.verdict(
                kind,
                report.ok(),
                format!("{} failures", report.failures.len()),
            );
            // the lexicographically least counterexample comes first
            let mut fails: Vec<String> = report
                .failures
                .iter()
                .map(|f| format!("{} at m={}, i={}: {:?}", f.axiom, f.m, f.i, f.witness))
                .collect();
            fails.sort();
            for f in fails {
                out.witness(f);
            }
            Ok(out.finish())
        }
        Command::Pi { file, k, base } => {
            let x = load_complex(&file)?;
            let a: SimplexIx = match base {
                Some(id) => x
                    .lookup(0, &id)
                    .ok_or_else(|| format!("no object `{id}`"))?,
                None => 0,
            };
            let mut out = Output::new(cli.json, format!("pi {}", file.display()));
            match kan::pi_k(&x, a, k) {
                Ok(table) => {
                    out.verdict(
                        &format!("pi_{k} at `{}`", x.id(0, a)),
                        true,
                        format!("{} classes", table.count()),
                    );
                }
                Err(e) => return Err(e.to_string()),
            }
            Ok(out.finish())
        }
        Command::Weq { file } => {
            let text =
                std::fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            let mf: serial::MapFile =
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let f = serial::map_from_file(&mf).map_err(|e| e.to_string())?;
            let mut out = Output::new(cli.json, format!("weq {}", file.display()));
            let rep = kan::is_weak_equivalence(&f).map_err(|e| e.to_string())?;
            let agree = [
                rep.by_pi_bijectivity,
                rep.by_class_conditions,
                rep.by_sphere_surjectivity,
            ]
            .iter()
            .filter(|&&b| b == rep.verdict)
            .count();
            out.verdict(
                "weak equivalence",
                rep.verdict,
                format!(
                    "{} ({agree}/3 criteria agree)",
                    if rep.verdict { "yes" } else { "no" }
                ),
            );
            for f in rep.failures.into_iter().take(5) {
                out.witness(f);
            }
            Ok(out.finish())
        }
        Command::Pushout {
            file_k,
            file_g,
            file_h,
        } => {
            let k = Arc::new(load_groupoid(&file_k)?);
            let g = Arc::new(load_groupoid(&file_g)?);
            let h = Arc::new(load_groupoid(&file_h)?);
            let gm = inclusion_by_ids(&k, &g)?;
            let hm = inclusion_by_ids(&k, &h)?;
            let mut out = Output::new(
                cli.json,
                format!(
                    "pushout {} {} {}",
                    file_k.display(),
                    file_g.display(),
                    file_h.display()
                ),
            );
            match gpd::pushout(&gm, &hm) {
                Ok(po) => {
                    out.verdict(
                        "pushout",
                        true,
                        format!(
                            "{} objects, {} morphisms",
                            po.p.n_objects(),
                            po.p.n_morphisms()
                        ),
                    );
                    out.verdict(
                        "second leg fully faithful",
                        po.from_h.is_fully_faithful(),
                        String::new(),
                    );
                    if gm.is_equivalence() {
                        out.verdict(
                            "second leg weak equivalence",
                            po.from_h.is_equivalence(),
                            String::new(),
                        );
                    }
                }
                Err(e) => {
                    out.verdict("pushout", false, e.to_string());
                }
            }
            Ok(out.finish())
        }
        Command::Hom {
            file,
            from,
            to,
            edge,
        } => {
            let x = Arc::new(load_complex(&file)?);
            let a = x
                .lookup(0, &from)
                .ok_or_else(|| format!("no object `{from}`"))?;
            let mut out = Output::new(cli.json, format!("hom {}", file.display()));
            let hom = match (to, edge) {
                (Some(b), None) => {
                    let b = x.lookup(0, &b).ok_or_else(|| format!("no object `{b}`"))?;
                    homspaces::hom_left(x.clone(), a, b).map_err(|e| e.to_string())?
                }
                (None, Some(e)) => {
                    let f = x.lookup(1, &e).ok_or_else(|| format!("no edge `{e}`"))?;
                    let w = homspaces::canonical_edge_witness(&x, f)
                        .ok_or_else(|| format!("edge `{e}` has no inverse witness"))?;
                    let gamma =
                        homspaces::edge_disc_map(x.clone(), f, w).map_err(|e| e.to_string())?;
                    homspaces::hom_left_disc(x.clone(), a, &gamma).map_err(|e| e.to_string())?
                }
                _ => return Err("pass exactly one of --to or --edge".into()),
            };
            let level_ok = kan::check_n_groupoid(&hom.result).ok();
            out.verdict(
                "hom groupoid",
                level_ok,
                format!(
                    "level {}, {} objects",
                    hom.result.n(),
                    hom.result.card(0),
                ),
            );
            let fib = homspaces::is_kan_fibration(&hom.projection);
            out.verdict("projection is a Kan fibration", fib.ok, String::new());
            Ok(out.finish())
        }
        Command::Yoneda { file, roundtrip } => {
            let x = Arc::new(load_complex(&file)?);
            let mut out = Output::new(cli.json, format!("yoneda {}", file.display()));
            if !roundtrip {
                return Err("pass --roundtrip".into());
            }
            let ctx = yoneda::YonedaContext::new(x.clone()).map_err(|e| e.to_string())?;
            let mut edge_ok = 0usize;
            let edges = x.card(1);
            for f in 0..edges as SimplexIx {
                let kf = yoneda::omega_morphism(&ctx, f).map_err(|e| e.to_string())?;
                match yoneda::recover_morphism(&ctx, &kf) {
                    Ok(rec) if rec.edge == f => edge_ok += 1,
                    Ok(rec) => out.witness(format!(
                        "edge `{}` recovered as `{}`",
                        x.id(1, f),
                        x.id(1, rec.edge)
                    )),
                    Err(e) => out.witness(format!("edge `{}`: {e}", x.id(1, f))),
                }
            }
            out.verdict("edges", edge_ok == edges, format!("{edge_ok}/{edges} ok"));
            let mut cell_ok = 0usize;
            let cells = x.card(2);
            for gamma in 0..cells as SimplexIx {
                let alpha = yoneda::omega_2cell(&ctx, gamma).map_err(|e| e.to_string())?;
                match yoneda::recover_2cell(&ctx, &alpha) {
                    Ok(back) if back == gamma => cell_ok += 1,
                    Ok(back) => out.witness(format!(
                        "cell `{}` recovered as `{}`",
                        x.id(2, gamma),
                        x.id(2, back)
                    )),
                    Err(e) => out.witness(format!("cell `{}`: {e}", x.id(2, gamma))),
                }
            }
            out.verdict("2-cells", cell_ok == cells, format!("{cell_ok}/{cells} ok"));
            Ok(out.finish())
        }
        Command::Gen { name, arg, seed } => {
            let seed = std::env::var("TRUNKAN_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
                .unwrap_or(seed);
            let text = generate(&name, arg, seed)?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn generate(name: &str, arg: Option<usize>, seed: u64) -> Result<String, String> {
    let n = arg.unwrap_or(2);
    let complex =
        |x: trunkan::sset::TruncatedSSet| serial::to_canonical_json(&serial::complex_to_file(&x));
    let groupoid =
        |g: gpd::FiniteGroupoid| serial::to_canonical_json(&serial::groupoid_to_file(&g));
    match name {
        "nerve-z" => Ok(complex(
            testkit::nerve_group(&testkit::cyclic(n)).map_err(|e| e.to_string())?,
        )),
        "nerve-s3" => Ok(complex(
            testkit::nerve_group(&testkit::sym3()).map_err(|e| e.to_string())?,
        )),
        "nerve-v4" => Ok(complex(
            testkit::nerve_group(&testkit::klein_four()).map_err(|e| e.to_string())?,
        )),
        "cm-h" => Ok(complex(
            testkit::nerve_crossed_module(&testkit::cm_from_h(testkit::cyclic(n)))
                .map_err(|e| e.to_string())?,
        )),
        "cm-q" => Ok(complex(
            testkit::nerve_crossed_module(&testkit::cm_from_q(testkit::cyclic(n)))
                .map_err(|e| e.to_string())?,
        )),
        "cm-id" => Ok(complex(
            testkit::nerve_crossed_module(&testkit::cm_identity(testkit::cyclic(n)))
                .map_err(|e| e.to_string())?,
        )),
        "disc" => Ok(complex(trunkan::sset::disc(n, 1))),
        "codiscrete" => {
            let names: Vec<String> = (0..n).map(|k| format!("o{k}")).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            Ok(groupoid(
                testkit::codiscrete(&refs).map_err(|e| e.to_string())?,
            ))
        }
        "discrete" => {
            let names: Vec<String> = (0..n).map(|k| format!("o{k}")).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            Ok(groupoid(
                testkit::discrete(&refs).map_err(|e| e.to_string())?,
            ))
        }
        "random" => Ok(groupoid(
            testkit::random_groupoid(seed, testkit::RandomBounds::default())
                .map_err(|e| e.to_string())?,
        )),
        other => Err(format!("unknown generator `{other}`")),
    }
}
