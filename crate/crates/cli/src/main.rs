use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use boolsep::circuits::{parse_circuit, Circuit};
use boolsep::generate::{mm_bent, padded_plateaued, random_function, random_ltf, random_ptf, MmSpec, RandomModel};
use boolsep::harness::{self, ExperimentRow};
use boolsep::{classify, Budget, Error, TruthTable};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "boolsep", version, about = "Spectral and influence analysis of Boolean functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum, influences, entropy and class verdicts.
    Analyze(TableArgs),
    /// Class verdicts only.
    Classify(TableArgs),
    #[command(subcommand)]
    Generate(Generate),
    #[command(subcommand)]
    Circuit(CircuitCmd),
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Args)]
struct TableArgs {
    /// Truth table in hex.
    #[arg(long)]
    tt: String,
    #[arg(short)]
    n: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Uniform,
    Normal,
}

impl Model {
    fn build(self, seed: u64) -> RandomModel {
        match self {
            Model::Uniform => RandomModel::uniform(seed),
            Model::Normal => RandomModel::normal(seed),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Model::Uniform => "uniform",
            Model::Normal => "normal",
        }
    }
}

#[derive(Subcommand)]
enum Generate {
    /// Maiorana-McFarland bent function on 2m variables. Without a seed the
    /// permutation is the identity and g = 0.
    MmBent {
        #[arg(short)]
        m: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Bent function on 2m variables padded with k dummy variables.
    Plateaued {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    Ltf {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value = "normal")]
        model: Model,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Ptf {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(long, value_enum, default_value = "normal")]
        model: Model,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Random {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum CircuitCmd {
    /// Validate a circuit file and print its canonical form.
    Parse { file: PathBuf },
    /// Print the truth table computed by a circuit file.
    Eval {
        file: PathBuf,
        /// Print the canonical DNF of the computed table instead.
        #[arg(long)]
        dnf: bool,
    },
    /// Canonical DNF circuit of a truth table.
    Dnf {
        #[arg(long)]
        tt: String,
        #[arg(short)]
        n: usize,
    },
}

#[derive(Args)]
struct Output {
    /// Write the rows to this CSV file instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Experiment {
    /// Classify every n-variable function.
    Census {
        #[arg(short)]
        n: usize,
        /// Allow n = 5.
        #[arg(long)]
        long: bool,
        /// Print the full census as JSON.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Monotone influence bound over every monotone function.
    Fact2 {
        #[arg(short)]
        n: usize,
        /// Allow n = 6.
        #[arg(long)]
        long: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Random LTFs against the square-root influence bound.
    Fact3 {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Padded bent functions as k-plateaued witnesses.
    Fact4 {
        #[arg(short)]
        k: usize,
        /// Comma-separated variable counts.
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Random PTFs against the conjectured d·sqrt(n) bound.
    Probe {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Influence of tribes and read-once formulas by depth.
    Fact1 {
        #[command(flatten)]
        out: Output,
    },
    /// Entropy/influence inequality on sampled functions.
    Lhe {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        c: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

enum Failure {
    Usage(String),
    Assertion,
}

/// Attach the command-line flag that most likely caused a library error.
fn usage(err: Error) -> Failure {
    let flag = match &err {
        Error::HexLength { .. } | Error::HexDigit { .. } | Error::HexPadding(_) => "--tt".to_string(),
        Error::VarCount(_) | Error::Guard { .. } | Error::ThresholdTooLarge { .. } => "-n".to_string(),
        Error::Parameter { name, .. } if name.len() == 1 => format!("-{name}"),
        Error::Parameter { name, .. } => format!("--{name}"),
        _ => String::new(),
    };
    if let Error::Guard { hint, .. } = &err {
        if !hint.is_empty() {
            return Failure::Usage(format!("invalid -n: {err}; pass --long to allow it"));
        }
    }
    if flag.is_empty() {
        Failure::Usage(err.to_string())
    } else {
        Failure::Usage(format!("invalid {flag}: {err}"))
    }
}

fn read_circuit(path: &Path) -> Result<Circuit, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_circuit(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit_rows(rows: &[ExperimentRow], out: &Output) -> Result<(), Failure> {
    match &out.csv {
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| Failure::Usage(format!("invalid --csv {}: {e}", path.display())))?;
            harness::write_csv(rows, file).map_err(usage)?;
        }
        None => print!("{}", harness::csv_string(rows).map_err(usage)?),
    }
    for row in rows.iter().filter(|r| r.failed()) {
        eprintln!("FAILED {} n={} {}", row.experiment, row.n, row.statistic);
    }
    if rows.iter().any(ExperimentRow::failed) {
        Err(Failure::Assertion)
    } else {
        Ok(())
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze(a) => {
            let tt = TruthTable::from_hex(&a.tt, a.n).map_err(usage)?;
            let report = harness::analyze(&tt).map_err(usage)?;
            if a.json {
                println!("{}", json(&report));
            } else {
                println!("truth table: {} (n={})", report.truth_table, report.n);
                println!("spectrum: {:?}", report.spectrum.coeffs());
                let per: Vec<String> = report.influence.per_variable.iter().map(|d| d.to_string()).collect();
                println!("influences: [{}]", per.join(", "));
                println!("total influence: {}", report.influence.total);
                println!("fourier entropy: {}", report.entropy);
                print_classes(&report.classes);
            }
        }
        Command::Classify(a) => {
            let tt = TruthTable::from_hex(&a.tt, a.n).map_err(usage)?;
            let report = classify(&tt).map_err(usage)?;
            if a.json {
                println!("{}", json(&report));
            } else {
                print_classes(&report);
            }
        }
        Command::Generate(g) => generate(g)?,
        Command::Circuit(c) => match c {
            CircuitCmd::Parse { file } => {
                let circuit = read_circuit(&file)?;
                print!("{circuit}");
                println!("# n={} depth={} size={}", circuit.n(), circuit.depth(), circuit.size());
            }
            CircuitCmd::Eval { file, dnf } => {
                let tt = read_circuit(&file)?.evaluate();
                if dnf {
                    print!("{}", Circuit::canonical_dnf(&tt).map_err(usage)?);
                } else {
                    println!("{tt}");
                }
            }
            CircuitCmd::Dnf { tt, n } => {
                let tt = TruthTable::from_hex(&tt, n).map_err(usage)?;
                print!("{}", Circuit::canonical_dnf(&tt).map_err(usage)?);
            }
        },
        Command::Experiment(e) => experiment(e)?,
    }
    Ok(())
}

fn print_classes(c: &boolsep::ClassReport) {
    let opt = |v: Option<u32>| v.map_or("none".to_string(), |k| k.to_string());
    println!("bent: {}", serde_json::to_value(c.bent).expect("enum").as_str().unwrap_or("?"));
    println!("plateaued order: {}", opt(c.plateaued_order));
    println!("sac: {} (max order {})", c.sac, opt(c.sac_order));
    println!("pc degree: {}", c.pc_degree);
    println!("monotone: {}", c.monotone);
    match &c.ltf {
        Some(cert) => println!("ltf: {}", cert.is_member()),
        None => println!("ltf: not decided (too many variables)"),
    }
    println!("chow: {:?}", c.chow);
}

fn seed_note(seed: Option<u64>) -> String {
    seed.map_or("none".into(), |s| s.to_string())
}

fn generate(g: Generate) -> Result<(), Failure> {
    let mm = |m: usize, seed: Option<u64>| match seed {
        Some(s) => MmSpec::random(m, s),
        None => Ok(MmSpec::identity(m)),
    };
    let (tt, provenance) = match g {
        Generate::MmBent { m, seed } => {
            let spec = mm(m, seed).map_err(usage)?;
            (
                mm_bent(&spec).map_err(usage)?,
                format!("construction=mm-bent m={m} seed={}", seed_note(seed)),
            )
        }
        Generate::Plateaued { m, k, seed } => {
            let g = mm_bent(&mm(m, seed).map_err(usage)?).map_err(usage)?;
            (
                padded_plateaued(&g, k).map_err(usage)?,
                format!("construction=padded-bent m={m} k={k} seed={}", seed_note(seed)),
            )
        }
        Generate::Ltf { n, model, seed } => {
            let (tt, w) = random_ltf(n, &model.build(seed)).map_err(usage)?;
            let w: Vec<String> = w.iter().map(|x| format!("{x:.6}")).collect();
            (
                tt,
                format!("construction=ltf n={n} model={} seed={seed} weights={}", model.name(), w.join(",")),
            )
        }
        Generate::Ptf { n, d, model, seed } => (
            random_ptf(n, d, &model.build(seed)).map_err(usage)?,
            format!("construction=ptf n={n} d={d} model={} seed={seed}", model.name()),
        ),
        Generate::Random { n, seed } => (
            random_function(n, seed).map_err(usage)?,
            format!("construction=random n={n} seed={seed}"),
        ),
    };
    println!("{tt}");
    println!("# {provenance}");
    Ok(())
}

fn experiment(e: Experiment) -> Result<(), Failure> {
    let budget = |long: bool| if long { Budget::Long } else { Budget::Standard };
    match e {
        Experiment::Census { n, long, json: as_json, out } => {
            let result = harness::census(n, budget(long)).map_err(usage)?;
            if as_json {
                println!("{}", json(&result));
            } else {
                eprintln!(
                    "census n={}: {} functions, bent={} sac={} pc1={} monotone={} ltf={}",
                    n,
                    result.functions,
                    result.counts.bent,
                    result.counts.sac,
                    result.counts.pc_ge1,
                    result.counts.monotone,
                    result.counts.ltf
                );
                for cell in &result.intersections {
                    let shown = if cell.witnesses.is_empty() {
                        "empty".to_string()
                    } else {
                        cell.witnesses.join(" ")
                    };
                    eprintln!("  {}: {} [{}]", cell.name, cell.count, shown);
                }
            }
            if as_json && out.csv.is_none() {
                return if result.passed() { Ok(()) } else { Err(Failure::Assertion) };
            }
            emit_rows(&result.rows, &out)
        }
        Experiment::Fact2 { n, long, out } => {
            let result = harness::fact2_experiment(n, budget(long)).map_err(usage)?;
            eprintln!(
                "fact2 n={n}: {} monotone functions, max I = {} at {}",
                result.monotone_count, result.max_total_influence, result.argmax
            );
            emit_rows(&result.rows, &out)
        }
        Experiment::Fact3 { n, samples, seed, out } => {
            emit_rows(&harness::fact3_experiment(n, samples, seed).map_err(usage)?.rows, &out)
        }
        Experiment::Fact4 { k, n_list, out } => emit_rows(&harness::fact4_experiment(k, &n_list).map_err(usage)?, &out),
        Experiment::Probe { n, d, samples, seed, out } => {
            emit_rows(&harness::conjecture_probe(n, d, samples, seed).map_err(usage)?, &out)
        }
        Experiment::Fact1 { out } => emit_rows(&harness::fact1_trend().map_err(usage)?, &out),
        Experiment::Lhe { n, c, samples, seed, out } => {
            emit_rows(&harness::lhe_experiment(n, c, samples, seed).map_err(usage)?, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Assertion) => ExitCode::from(1),
    }
}
