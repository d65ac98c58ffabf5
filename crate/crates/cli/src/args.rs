use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "ramsey-lab", version, about = "Blowup Ramsey computations, copy hypergraphs, recolourings and unavoidable patterns")]
pub struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, env = "RAMSEY_LAB_THREADS", value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,

    /// Base seed for every randomised step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the report here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether every r-colouring of G has a monochromatic H.
    Arrows(ArrowsArgs),
    /// Decide whether G is Ramsey-minimal for H.
    Minimal(PairArgs),
    /// Least n with G[n] forcing a monochromatic canonical H[t].
    BlowupRamsey(BlowupRamseyArgs),
    /// Girth of the copy hypergraph H(G), or of a hypergraph file.
    Girth(GirthArgs),
    /// Test 3-chromatic connectivity by subset enumeration.
    #[command(name = "check-3cc")]
    Check3cc(GraphArg),
    /// Run both recolouring stages and verify the blown colouring.
    Recolour(RecolourArgs),
    /// List monochromatic canonical K_3[2] of a colouring of G[s].
    Verify(VerifyArgs),
    /// Minimal coloured cliques, their blowups and detection.
    #[command(subcommand)]
    Unavoidable(UnavoidableCommand),
    /// Partial colourings, coherence and tree blowup tables.
    #[command(subcommand)]
    Trees(TreesCommand),
}

#[derive(Args, Debug, Serialize)]
pub struct SearchArgs {
    /// Search nodes allowed before the run is declared inconclusive.
    #[arg(long)]
    pub node_budget: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct PairArgs {
    /// Host graph file.
    #[arg(long)]
    pub graph: PathBuf,
    /// Pattern graph file.
    #[arg(long)]
    pub target: PathBuf,
    #[arg(short = 'r', long, default_value_t = 2)]
    pub r: usize,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct ArrowsArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Also write an avoiding colouring here, if one exists.
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct BlowupRamseyArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(short = 't', long)]
    pub t: usize,
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct GirthArgs {
    /// Host graph file.
    #[arg(long, requires = "target", conflicts_with = "hypergraph")]
    pub graph: Option<PathBuf>,
    /// Pattern graph file.
    #[arg(long, requires = "graph")]
    pub target: Option<PathBuf>,
    /// Hypergraph file: one hyperedge per line.
    #[arg(long, required_unless_present = "graph")]
    pub hypergraph: Option<PathBuf>,
    /// Also check the recolouring preconditions for this step count.
    #[arg(short = 's', long, requires = "graph")]
    pub s: Option<usize>,
    /// Dump the hypergraph here.
    #[arg(long)]
    pub hypergraph_out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct GraphArg {
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct RecolourArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// The base edge, as "u v".
    #[arg(long)]
    pub edge: String,
    #[arg(long)]
    pub pivot: usize,
    /// Initial colouring of G.
    #[arg(long)]
    pub colouring: PathBuf,
    #[arg(short = 's', long)]
    pub s: usize,
    #[arg(short = 'r', long, default_value_t = 2)]
    pub r: usize,
    /// Write the colouring of G[s] here.
    #[arg(long)]
    pub blown_out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    /// Base graph G.
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(short = 's', long)]
    pub s: usize,
    /// Colouring of G[s], with blown vertex x*s + i for copy i of x.
    #[arg(long)]
    pub colouring: PathBuf,
    #[arg(short = 'r', long, default_value_t = 2)]
    pub r: usize,
}

#[derive(Subcommand, Debug)]
pub enum UnavoidableCommand {
    /// All r-minimal coloured cliques, colours fixed.
    Enumerate(EnumerateArgs),
    /// The t-blowups of the r-minimal cliques.
    Family(FamilyArgs),
    /// Find a family member inside a coloured clique.
    Detect(ColouredInput),
    /// Dependent random choice on a graph.
    Drc(DrcArgs),
    /// Constructive search through rich sets and refinements.
    Pipeline(ColouredInput),
    /// Detection rate on random colourings with a minimum per colour.
    Experiment(ExperimentArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct EnumerateArgs {
    #[arg(short = 'r', long)]
    pub r: usize,
    /// Also count classes up to permutation of the colours.
    #[arg(long)]
    pub quotient_colours: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct FamilyArgs {
    #[arg(short = 'r', long)]
    pub r: usize,
    #[arg(short = 't', long)]
    pub t: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct ColouredInput {
    /// Coloured clique file ("k r", vertex colours, "u v c" lines).
    #[arg(long, conflicts_with_all = ["graph", "random"])]
    pub clique: Option<PathBuf>,
    /// Complete host graph file, used with --colouring.
    #[arg(long, requires = "colouring")]
    pub graph: Option<PathBuf>,
    #[arg(long, requires = "graph")]
    pub colouring: Option<PathBuf>,
    /// Uniformly random colouring of K_n drawn from the seed.
    #[arg(long, conflicts_with = "graph")]
    pub random: Option<usize>,
    #[arg(short = 'r', long, default_value_t = 2)]
    pub r: usize,
    #[arg(short = 't', long, default_value_t = 2)]
    pub t: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct DrcArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Size K of the rich set.
    #[arg(short = 'k', long)]
    pub k: usize,
    #[arg(short = 't', long)]
    pub t: usize,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct ExperimentArgs {
    #[arg(short = 'n', long)]
    pub n: usize,
    #[arg(short = 'r', long, default_value_t = 2)]
    pub r: usize,
    #[arg(short = 't', long, default_value_t = 2)]
    pub t: usize,
    /// Least number of edges per colour.
    #[arg(long)]
    pub min_edges: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
}

#[derive(Subcommand, Debug)]
pub enum TreesCommand {
    /// Possible monochromatic copies of a tree.
    Copies(CopiesArgs),
    /// Check f-coherence of a blown colouring.
    Coherent(CoherentArgs),
    /// Search a pair of subtree copies that combine.
    Lemma32(Lemma32Args),
    /// Blowup Ramsey numbers of a tree over several ground graphs.
    Table(TableArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct CopiesArgs {
    #[arg(long)]
    pub tree: PathBuf,
    #[arg(long)]
    pub graph: PathBuf,
    /// Partial colouring of the graph; absent edges are uncoloured.
    #[arg(long)]
    pub colouring: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub colour: u8,
}

#[derive(Args, Debug, Serialize)]
pub struct CoherentArgs {
    /// Base graph G.
    #[arg(long)]
    pub graph: PathBuf,
    /// Partial colouring of G.
    #[arg(long)]
    pub colouring: PathBuf,
    /// Multiplicity of each vertex of G, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub multiplicities: Vec<usize>,
    /// Table of f, as "m f(m)" lines.
    #[arg(long)]
    pub f_table: PathBuf,
    /// Total colouring of the blowup.
    #[arg(long)]
    pub blown_colouring: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct Lemma32Args {
    /// Instance as JSON.
    #[arg(long)]
    pub instance: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct TableArgs {
    /// Ground graph files, one row each.
    #[arg(long, num_args = 1.., required = true)]
    pub graphs: Vec<PathBuf>,
    #[arg(long)]
    pub tree: PathBuf,
    #[arg(short = 'r', long, default_value_t = 2)]
    pub r: usize,
    #[arg(short = 't', long)]
    pub t: usize,
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
    #[command(flatten)]
    pub search: SearchArgs,
}
