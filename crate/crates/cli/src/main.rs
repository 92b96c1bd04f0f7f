use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use graphop::cli::{
    cmd_compose, cmd_generators, cmd_hilbert, cmd_verify, ComposeKind, Format, GraphOperadName, GraphText,
    HilbertTarget, ResultDocument, Suite, VerifyOptions,
};

/// Exact computations in graph insertion operads.
///
/// Graphs are written `vertices=a,b,*; edges=a-*,*-b[; root=a]`; oriented
/// edges carry an end mark per end, `.` plain and `>` arrow (`a.>b`).
#[derive(Parser, Debug)]
#[command(name = "graphop", version)]
struct Cli {
    /// Output format: text or structured (JSON)
    #[arg(long, global = true, default_value = "text", value_parser = parse::<Format>)]
    format: Format,

    /// Write the result document to this file instead of standard output
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partial composition g1 ∘_hole g2 as an exact linear combination
    Compose {
        /// mg, g, rooted or plie
        #[arg(value_parser = parse::<ComposeKind>)]
        kind: ComposeKind,
        g1: String,
        g2: String,
        /// Vertex of g1 to insert into
        #[arg(long, default_value = "*")]
        hole: String,
    },
    /// Generator search: dimensions and generator shapes per arity
    Generators {
        /// G, T, MGc or MG
        #[arg(value_parser = parse::<GraphOperadName>)]
        operad: GraphOperadName,
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        /// Allow arity 5 for G
        #[arg(long)]
        opt_in_arity5: bool,
        /// Largest edge count considered (required for MGc and MG)
        #[arg(long)]
        edge_bound: Option<usize>,
    },
    /// Run a property suite: axioms, nf, psi, lemmfond, koszul, lp, lemma or sp
    Verify {
        #[arg(value_parser = parse::<Suite>)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_arity: Option<usize>,
        #[arg(long)]
        edge_bound: Option<usize>,
        #[arg(long)]
        opt_in_arity5: bool,
    },
    /// Hilbert series dimensions of sp-dual or of a closure `<operad>:<graph>|<graph>...`
    Hilbert {
        #[arg(value_parser = parse::<HilbertTarget>)]
        target: HilbertTarget,
        /// Order of the series (largest arity)
        #[arg(long, alias = "order", default_value_t = 5)]
        max_arity: usize,
        #[arg(long)]
        edge_bound: Option<usize>,
    },
}

fn parse<T: std::str::FromStr<Err = graphop::Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: graphop::Error| e.to_string())
}

fn run(command: Command) -> graphop::Result<ResultDocument> {
    match command {
        Command::Compose { kind, g1, g2, hole } => {
            cmd_compose(kind, &GraphText(g1), &hole, &GraphText(g2))
        }
        Command::Generators { operad, max_arity, opt_in_arity5, edge_bound } => {
            cmd_generators(operad, max_arity, opt_in_arity5, edge_bound)
        }
        Command::Verify { suite, seed, max_arity, edge_bound, opt_in_arity5 } => {
            cmd_verify(suite, &VerifyOptions { seed, max_arity, edge_bound, opt_in_arity5 })
        }
        Command::Hilbert { target, max_arity, edge_bound } => cmd_hilbert(&target, max_arity, edge_bound),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let doc = match run(cli.command) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = doc.render(cli.format);
    match cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(doc.exit_code() as u8)
}
