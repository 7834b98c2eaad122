use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use posetlab::document::{load_document, DocumentError, LoadedPoset, PosetDocument};
use posetlab::dot::export_dot;
use posetlab::error::Error;
use posetlab::families::{generate, Family};
use posetlab::labelling::{
    check_el_labelling, check_interpolating, check_sn_el_labelling, induce_labelling, EdgeLabelling, LabelSet,
};
use posetlab::order::{check_chain_left_modular, check_chain_viable, find_left_modular_chains, find_viable_chains};
use posetlab::poset::{Chain, Poset};
use posetlab::report::{CheckReport, Witness};
use posetlab::supersolvable::{is_distributive_lattice, is_supersolvable};
use posetlab::verify::{run_claims, Preset};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_SIZE: u8 = 3;

#[derive(Parser)]
#[command(name = "posetlab", version, about = "Edge-labellings, left modularity and supersolvability of finite posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a family member as a poset document.
    Gen {
        /// One of pi, nc, ns, tamari, chain, boolean.
        family: Family,
        n: usize,
    },
    /// Decide a property of the poset in FILE.
    Check {
        property: Property,
        file: PathBuf,
        /// Named chain from the document, for left-modular and viable.
        #[arg(long)]
        chain: Option<String>,
    },
    /// Attach the labelling induced by a left modular chain.
    Label {
        file: PathBuf,
        #[arg(long)]
        chain: String,
        /// Comma-separated increasing labels; defaults to 1..n.
        #[arg(long)]
        labels: Option<String>,
    },
    /// Re-emit FILE canonically, or as Graphviz with --dot.
    Export {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Run the claim suites; one JSON object per line.
    Verify {
        #[arg(long, value_delimiter = ',', default_value = "all")]
        scope: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    El,
    SnEl,
    Interpolating,
    LeftModular,
    Viable,
    Graded,
    Distributive,
    Supersolvable,
}

enum Failure {
    Input(String),
    Size(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeLimit(m) => Failure::Size(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Validation(inner) => inner.into(),
            parse => Failure::Input(parse.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn read(file: &PathBuf) -> Result<LoadedPoset, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    Ok(load_document(&text)?)
}

fn gen(family: Family, n: usize) -> Outcome {
    let g = generate(family, n)?;
    let doc = PosetDocument::from_poset(&g.name, &g.poset, Some(&g.labelling), &[("M".into(), g.m_chain)]);
    Ok((doc.serialize(), true))
}

fn report(p: &Poset, r: &CheckReport) -> Outcome {
    let mut s = serde_json::to_string_pretty(&r.to_json(p)).expect("reports serialize");
    s.push('\n');
    Ok((s, r.verdict))
}

fn labelling(doc: &LoadedPoset) -> Result<&EdgeLabelling, Failure> {
    doc.labelling
        .as_ref()
        .ok_or_else(|| Failure::Input("the document has no labels".into()))
}

fn named_chain<'a>(doc: &'a LoadedPoset, name: &str) -> Result<&'a Chain, Failure> {
    doc.chains
        .get(name)
        .ok_or_else(|| Failure::Input(format!("no chain named `{name}`")))
}

/// Passes when some maximal chain is found; the witness is that chain.
fn some_chain(p: &Poset, chains: Vec<Chain>, what: &str) -> CheckReport {
    match chains.into_iter().next() {
        Some(c) => CheckReport::pass(format!("{what} maximal chain {}", c.display(p))).with_witness(Witness::Chain(c)),
        None => CheckReport::fail(Witness::Elements(Vec::new()), format!("no {what} maximal chain")),
    }
}

fn check(property: Property, file: &PathBuf, chain: Option<&str>) -> Outcome {
    let doc = read(file)?;
    let p = &doc.poset;
    let r = match property {
        Property::El => check_el_labelling(p, labelling(&doc)?)?,
        Property::Interpolating => check_interpolating(p, labelling(&doc)?)?,
        Property::SnEl => match check_sn_el_labelling(p, labelling(&doc)?) {
            Err(Error::NotGraded) => CheckReport::fail(Witness::Elements(Vec::new()), "not graded"),
            other => other?,
        },
        Property::LeftModular => match chain {
            Some(name) => check_chain_left_modular(p, named_chain(&doc, name)?)?,
            None => some_chain(p, find_left_modular_chains(p)?, "left modular"),
        },
        Property::Viable => match chain {
            Some(name) => check_chain_viable(p, named_chain(&doc, name)?)?,
            None => some_chain(p, find_viable_chains(p)?, "viable"),
        },
        Property::Graded => {
            let (bot, top) = p.bounds()?;
            match p.graded_rank()? {
                Some(n) => CheckReport::pass(format!("graded of rank {n}")),
                None => {
                    let chains = p.maximal_chains(bot, top)?;
                    let short = chains.iter().min_by_key(|c| c.length()).unwrap().clone();
                    let long = chains.iter().max_by_key(|c| c.length()).unwrap().clone();
                    CheckReport::fail(
                        Witness::Interval {
                            y: bot,
                            z: top,
                            chains: vec![short, long],
                        },
                        "maximal chains of different lengths",
                    )
                }
            }
        }
        Property::Distributive => {
            p.bounds()?;
            is_distributive_lattice(p)
        }
        Property::Supersolvable => is_supersolvable(p)?,
    };
    report(p, &r)
}

fn label(file: &PathBuf, chain: &str, labels: Option<&str>) -> Outcome {
    let doc = read(file)?;
    let m = named_chain(&doc, chain)?.clone();
    let ls = match labels {
        None => LabelSet::standard(m.length()),
        Some(csv) => LabelSet::new(
            csv.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|_| Failure::Input(format!("bad label `{}`", t.trim())))
                })
                .collect::<Result<Vec<_>, _>>()?,
        )?,
    };
    let lab = induce_labelling(&doc.poset, &m, &ls)?;
    let chains: Vec<(String, Chain)> = doc.chains.clone().into_iter().collect();
    let out = PosetDocument::from_poset(&doc.name, &doc.poset, Some(&lab), &chains);
    Ok((out.serialize(), true))
}

fn export(file: &PathBuf, dot: bool) -> Outcome {
    let doc = read(file)?;
    if dot {
        return Ok((export_dot(&doc.poset, doc.labelling.as_ref()), true));
    }
    let chains: Vec<(String, Chain)> = doc.chains.clone().into_iter().collect();
    let out = PosetDocument::from_poset(&doc.name, &doc.poset, doc.labelling.as_ref(), &chains);
    Ok((out.serialize(), true))
}

fn verify(scope: &[String]) -> Outcome {
    let presets = scope.iter().map(|s| s.parse::<Preset>()).collect::<Result<Vec<_>, _>>()?;
    let results = run_claims(&presets)?;
    let mut out = String::new();
    for r in &results {
        out.push_str(&serde_json::to_string(&r.to_json()).expect("results serialize"));
        out.push('\n');
    }
    Ok((out, results.iter().all(|r| r.passed)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Gen { family, n } => gen(*family, *n),
        Command::Check { property, file, chain } => check(*property, file, chain.as_deref()),
        Command::Label { file, chain, labels } => label(file, chain, labels.as_deref()),
        Command::Export { file, dot } => export(file, *dot),
        Command::Verify { scope } => verify(scope),
    };
    match outcome {
        Ok((text, passed)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_INPUT);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Size(m)) => {
            eprintln!("size limit: {m}");
            ExitCode::from(EXIT_SIZE)
        }
    }
}
