use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use fracdom::constructions::{
    clip_to_one, frac_dom_from_lp, frac_dom_recursive, greedy_dominating_set, half_cover,
    log2_rounds, ConstructionError, FracDomWitness,
};
use fracdom::exact::{domination_number, independence_number};
use fracdom::generators::{
    directed_cycle, disjoint_union, random_digraph, random_tournament, rotational_tournament,
};
use fracdom::harness::{
    check_bounds_batch, random_family, random_tournament_experiment, tightness_suite, BoundReport,
    HarnessError,
};
use fracdom::io::{emit_dgf, emit_weights, parse_dgf, parse_weights};
use fracdom::lp::{farkas_weights, gamma_star, gamma_star_problem};
use fracdom::rational::{self, Rational};
use fracdom::{CapError, Digraph, Limits, Seed, VertexSet, WeightFn};

#[derive(Parser)]
#[command(name = "fracdom", version, about = "Exact (fractional) domination and independence of digraphs")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a digraph in DGF format.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Independence number.
    Alpha { file: Option<PathBuf> },
    /// Domination number.
    Gamma { file: Option<PathBuf> },
    /// Fractional domination number.
    GammaStar {
        file: Option<PathBuf>,
        /// Print the covering LP instead of solving it.
        #[arg(long)]
        emit_lp: bool,
    },
    /// A distribution p with p(N⁻(v)) ≥ p(N⁺(v)) for every v.
    Farkas { file: Option<PathBuf> },
    /// A stable set covering at least half of the given weight.
    HalfCover {
        file: Option<PathBuf>,
        /// Weight file; every vertex has weight 1 when omitted.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Greedy dominating set by repeated half covers.
    GreedyDom { file: Option<PathBuf> },
    /// Fractional dominating function of total at most 2α.
    FracDom {
        #[arg(value_enum)]
        method: FracMethod,
        file: Option<PathBuf>,
        /// Lower every value above 1 to 1.
        #[arg(long)]
        clip: bool,
    },
    /// Check every bound on the given files or on a seeded random batch.
    Verify {
        files: Vec<PathBuf>,
        /// Number of random instances to generate.
        #[arg(long)]
        random: Option<usize>,
        /// Vertex count of random instances.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Arc probability of random instances; cycles through 1/4, 1/2, 1 when omitted.
        #[arg(long)]
        p: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print CSV instead of text.
        #[arg(long)]
        csv: bool,
    },
    /// Disjoint union of rotational tournaments with α = k and γ* > 2k − eps.
    Tightness {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        eps: String,
    },
    /// Random tournament experiment.
    Experiment {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest dominating-set size refuted per trial.
        #[arg(long, default_value_t = 3)]
        k_max: usize,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// Rotational tournament on 2r − 1 vertices.
    Rotational {
        #[arg(long)]
        r: usize,
    },
    /// Uniform random tournament.
    Tournament {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Directed cycle.
    Cycle {
        #[arg(long)]
        n: usize,
    },
    /// Random oriented graph with arc probability p.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Disjoint union of DGF files.
    Union { files: Vec<PathBuf> },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FracMethod {
    Recursive,
    Lp,
}

enum Failure {
    Violated(String),
    Input(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Violated(_) => 1,
            Failure::Input(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Violated(m) | Failure::Input(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<CapError> for Failure {
    fn from(e: CapError) -> Self {
        Failure::Cap(e.to_string())
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Cap(c) => c.into(),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Cap(c) => c.into(),
            e => Failure::Input(e.to_string()),
        }
    }
}

fn input(msg: impl ToString) -> Failure {
    Failure::Input(msg.to_string())
}

type Outcome = Result<String, Failure>;

fn read_text(file: Option<&PathBuf>) -> Result<String, Failure> {
    match file {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| input(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(input)?;
            Ok(s)
        }
    }
}

fn read_graph(file: Option<&PathBuf>) -> Result<Digraph, Failure> {
    let text = read_text(file)?;
    let name = file.map_or("<stdin>".into(), |p| p.display().to_string());
    parse_dgf(&text).map_err(|e| input(format!("{name}: {e}")))
}

fn parse_rational(s: &str) -> Result<Rational, Failure> {
    rational::parse(s).map_err(|e| input(format!("{s}: {e}")))
}

fn set_text(s: &VertexSet) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("json value") + "\n"
}

fn gen(family: GenFamily) -> Outcome {
    let g = match family {
        GenFamily::Rotational { r } => rotational_tournament(r).map_err(input)?,
        GenFamily::Tournament { n, seed } => random_tournament(n, Seed(seed)),
        GenFamily::Cycle { n } => directed_cycle(n).map_err(input)?,
        GenFamily::Random { n, p, seed } => {
            random_digraph(n, &parse_rational(&p)?, Seed(seed)).map_err(input)?
        }
        GenFamily::Union { files } => {
            let parts = files
                .iter()
                .map(|f| read_graph(Some(f)))
                .collect::<Result<Vec<_>, _>>()?;
            disjoint_union(&parts)
        }
    };
    Ok(emit_dgf(&g))
}

fn witness_output(w: &FracDomWitness, json: bool) -> String {
    if json {
        pretty(json!({
            "g": w.g,
            "total": rational::format(&w.g.total()),
            "certified_bound": rational::format(&w.certified_bound),
        }))
    } else {
        format!(
            "# total {} <= {}\n{}",
            rational::Canonical(&w.g.total()),
            rational::Canonical(&w.certified_bound),
            emit_weights(&w.g)
        )
    }
}

fn report_output(rep: &BoundReport, json: bool, csv: bool) -> Outcome {
    let out = if json {
        rep.to_json()
    } else if csv {
        rep.to_csv()
    } else {
        let mut s = String::new();
        for r in &rep.records {
            let failed: Vec<&str> = r
                .flags()
                .into_iter()
                .filter(|(_, f)| *f == Some(false))
                .map(|(name, _)| name)
                .collect();
            let gamma = r.gamma.map_or("-".to_string(), |g| g.to_string());
            s.push_str(&format!(
                "{}: n={} alpha={} gamma={} gamma*={} {}\n",
                r.id,
                r.n,
                r.alpha,
                gamma,
                rational::Canonical(&r.gamma_star),
                if failed.is_empty() { "ok".to_string() } else { format!("VIOLATED {}", failed.join(",")) }
            ));
        }
        for t in &rep.tightness {
            s.push_str(&format!(
                "k={} eps={} r={}: gamma*={} expected={} {}\n",
                t.k,
                rational::Canonical(&t.eps),
                t.r,
                rational::Canonical(&t.gamma_star),
                rational::Canonical(&t.expected_gamma_star()),
                if t.holds() { "ok" } else { "VIOLATED" }
            ));
        }
        s
    };
    if rep.holds() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Violated("a verified bound does not hold".into()))
    }
}

fn run(cli: Cli, limits: &Limits) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Gen { family } => gen(family),
        Command::Alpha { file } => {
            let (a, w) = independence_number(&read_graph(file.as_ref())?);
            Ok(if json { pretty(json!({ "alpha": a, "witness": w })) } else { format!("{a}\n") })
        }
        Command::Gamma { file } => {
            let (k, w) = domination_number(&read_graph(file.as_ref())?, limits)?;
            Ok(if json { pretty(json!({ "gamma": k, "witness": w })) } else { format!("{k}\n") })
        }
        Command::GammaStar { file, emit_lp } => {
            let g = read_graph(file.as_ref())?;
            if emit_lp {
                return Ok(gamma_star_problem(&g).to_text());
            }
            let gs = gamma_star(&g);
            Ok(if json {
                pretty(serde_json::to_value(&gs).expect("gamma star serializes"))
            } else {
                format!("{}\n", rational::Canonical(&gs.value))
            })
        }
        Command::Farkas { file } => {
            let p = farkas_weights(&read_graph(file.as_ref())?);
            Ok(if json { pretty(json!({ "p": p })) } else { emit_weights(&p) })
        }
        Command::HalfCover { file, weights } => {
            let g = read_graph(file.as_ref())?;
            let p = match weights {
                Some(path) => {
                    let text = read_text(Some(&path))?;
                    parse_weights(&text, g.n()).map_err(|e| input(format!("{}: {e}", path.display())))?
                }
                None => WeightFn::constant(g.n(), rational::one()),
            };
            let s = half_cover(&g, &p)?;
            let covered = p.weight_sum(&g.out_closed(&s));
            Ok(if json {
                pretty(json!({
                    "stable_set": s,
                    "covered_weight": rational::format(&covered),
                    "total_weight": rational::format(&p.total()),
                }))
            } else {
                format!("{}\n", set_text(&s))
            })
        }
        Command::GreedyDom { file } => {
            let g = read_graph(file.as_ref())?;
            let t = greedy_dominating_set(&g);
            Ok(if json {
                pretty(json!({
                    "dominating_set": t.dominating_set,
                    "rounds": t.rounds,
                    "round_bound": log2_rounds(g.n()),
                }))
            } else {
                let mut s = format!("{}\n", set_text(&t.dominating_set));
                for (i, r) in t.rounds.iter().enumerate() {
                    s.push_str(&format!("# round {}: {}\n", i + 1, set_text(&r.stable)));
                }
                s
            })
        }
        Command::FracDom { method, file, clip } => {
            let g = read_graph(file.as_ref())?;
            let mut w = match method {
                FracMethod::Recursive => frac_dom_recursive(&g)?,
                FracMethod::Lp => frac_dom_from_lp(&g, limits)?,
            };
            if clip {
                w.g = clip_to_one(&g, &w.g)?;
            }
            Ok(witness_output(&w, json))
        }
        Command::Verify { files, random, n, p, seed, csv } => {
            let mut instances = Vec::new();
            for f in &files {
                instances.push((f.display().to_string(), read_graph(Some(f))?));
            }
            if let Some(count) = random {
                let probs = match p {
                    Some(p) => vec![parse_rational(&p)?],
                    None => vec![rational::ratio(1, 4), rational::ratio(1, 2), rational::one()],
                };
                if probs.iter().any(|q| q > &rational::one() || q < &rational::zero()) {
                    return Err(input("p must lie in [0, 1]"));
                }
                instances.extend(random_family(count, |_| n, &probs, Seed(seed)));
            }
            if instances.is_empty() {
                return Err(input("verify needs input files or --random"));
            }
            report_output(&check_bounds_batch(&instances, limits)?, json, csv)
        }
        Command::Tightness { k, eps } => {
            let rep = tightness_suite(k, &parse_rational(&eps)?, limits)?;
            report_output(&rep, json, false)
        }
        Command::Experiment { n, trials, seed, k_max } => {
            let stats = random_tournament_experiment(n, trials, Seed(seed), k_max, limits)?;
            let out = if json {
                stats.to_json()
            } else {
                format!(
                    "n={n} trials={trials} seed={seed}\nmean gamma* = {}\nmin gamma* = {}\nfraction gamma >= {} = {}\nfraction max out-degree within threshold = {}\n",
                    rational::Canonical(&stats.mean_gamma_star()),
                    rational::Canonical(&stats.min_gamma_star()),
                    k_max + 1,
                    rational::Canonical(&stats.fraction_gamma_at_least(k_max + 1)),
                    rational::Canonical(&stats.fraction_within_chernoff()),
                )
            };
            if stats.outdegree_bounds_hold() {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Violated("gamma* < n/(max out-degree + 1) in some trial".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = Limits::from_env()
        .map_err(input)
        .and_then(|limits| run(cli, &limits));
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("fracdom: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
