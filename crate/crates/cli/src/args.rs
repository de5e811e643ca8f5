use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "pvconv", version, about = "Bernoulli convolutions in Pisot bases")]
pub struct Cli {
    /// worker threads for sweeps (default: all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Build the translation set I(β, d) and its relation automaton
    Iset(IsetArgs),
    /// Transition matrices M_0..M_{b-1} for digit probabilities
    Matrices(MatricesArgs),
    /// Basic intervals of an adapted net
    Net(NetArgs),
    /// Measure of a basic interval
    Measure(MeasureArgs),
    /// Brute-force enclosure of μ([a, b])
    Oracle(OracleArgs),
    /// Evaluate a generalized continued fraction
    Cf(CfArgs),
    /// Convergence of n-step potentials and Gibbs diagnostics
    Gibbs(GibbsArgs),
    /// Quasi-Bernoulli probe on mⁿ(m+1)ⁿ
    Probe(ProbeArgs),
    /// τ(q) and f(α) estimates
    Spectrum(SpectrumArgs),
    /// Connectedness of the local-dimension set of the Erdős measure
    Domain(DomainArgs),
    /// Run the acceptance suite
    Accept(AcceptArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Iset(_) => "iset",
            Command::Matrices(_) => "matrices",
            Command::Net(_) => "net",
            Command::Measure(_) => "measure",
            Command::Oracle(_) => "oracle",
            Command::Cf(_) => "cf",
            Command::Gibbs(_) => "gibbs",
            Command::Probe(_) => "probe",
            Command::Spectrum(_) => "spectrum",
            Command::Domain(_) => "domain",
            Command::Accept(_) => "accept",
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct IsetArgs {
    /// field descriptor such as "x^2-5x-3@5.5"
    #[arg(long)]
    pub field: String,
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value_t = 64)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 4096)]
    pub max_size: usize,
    /// write the automaton as DOT ("-" for stdout)
    #[arg(long)]
    pub dot: Option<String>,
    /// write JSON ("-" for stdout, the default when --dot is absent)
    #[arg(long)]
    pub json: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct MatricesArgs {
    #[arg(long)]
    pub field: String,
    #[arg(long)]
    pub d: u32,
    /// comma-separated digit probabilities, rationals or decimals
    #[arg(long)]
    pub probs: String,
    /// treat decimal probabilities as exact rationals
    #[arg(long)]
    pub exact: bool,
    #[arg(long, num_args = 0..=1, default_missing_value = "-")]
    pub json: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct NetArgs {
    /// multinacci net of degree m
    #[arg(long, conflicts_with_all = ["erdos", "field"])]
    pub multinacci: Option<usize>,
    /// scaled Erdős net of [0, β)
    #[arg(long, conflicts_with = "field")]
    pub erdos: bool,
    /// finite-type net of a field descriptor
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub depth: u32,
    #[arg(long, default_value_t = 100_000)]
    pub budget: usize,
    #[arg(long, num_args = 0..=1, default_missing_value = "-")]
    pub json: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Erdos,
    Multinacci,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Which {
    /// the Bernoulli convolution itself
    Mu,
    /// the Erdős measure with the uniform head
    MuTildeStar,
    /// the 2×2 reduced multinacci measure
    MuStar,
}

#[derive(Args, Debug, Serialize)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value_t = ModelKind::Erdos)]
    pub model: ModelKind,
    /// probability of digit 0, rational or decimal
    #[arg(long, default_value = "1/2")]
    pub p: String,
    /// multinacci degree
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = Which::Mu)]
    pub which: Which,
}

#[derive(Args, Debug, Serialize)]
pub struct MeasureArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// net letters, either as digits ("200") or comma-separated ("2,0,0")
    #[arg(long)]
    pub word: String,
    /// evaluate in exact rational arithmetic
    #[arg(long)]
    pub exact: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct OracleArgs {
    #[arg(long, default_value = "x^2-x-1@1.6")]
    pub field: String,
    #[arg(long, default_value = "1/2,1/2")]
    pub probs: String,
    /// endpoints as expressions in β, e.g. "1,phi"
    #[arg(long)]
    pub interval: String,
    #[arg(long, default_value_t = 24)]
    pub digits: usize,
    #[arg(long, default_value_t = 1 << 24)]
    pub budget: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct CfArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub kappa: u8,
    /// a₀, a₁, …, a_n
    #[arg(long)]
    pub digits: String,
    /// evaluate at the vector (x, y) instead of the canonical one
    #[arg(long)]
    pub vector: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct GibbsArgs {
    #[arg(long, value_enum, default_value_t = ModelKind::Multinacci)]
    pub model: ModelKind,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value = "0.3")]
    pub p: String,
    #[arg(long, default_value_t = 14)]
    pub nmax: usize,
    /// first level of the decay fit window
    #[arg(long, default_value_t = 6)]
    pub window: usize,
    /// seed for the sampled tails
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub random_tails: usize,
    #[arg(long, value_enum, default_value_t = Report::Json)]
    pub report: Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Report {
    Json,
    Text,
}

#[derive(Args, Debug, Serialize)]
pub struct ProbeArgs {
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    #[arg(long, default_value = "0.3")]
    pub p: String,
    #[arg(long, default_value_t = 4)]
    pub nmin: usize,
    #[arg(long, default_value_t = 12)]
    pub nmax: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct SpectrumArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 14)]
    pub depth: u32,
    #[arg(long, default_value_t = -20.0, allow_hyphen_values = true)]
    pub qmin: f64,
    #[arg(long, default_value_t = 20.0, allow_hyphen_values = true)]
    pub qmax: f64,
    #[arg(long, default_value_t = 0.25)]
    pub qstep: f64,
    /// number of cover levels in the fit
    #[arg(long, default_value_t = 4)]
    pub scales: usize,
    /// write q,tau,err
    #[arg(long)]
    pub csv: Option<String>,
    /// write alpha,f
    #[arg(long)]
    pub csv_f: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct DomainArgs {
    #[arg(long)]
    pub p: String,
    #[arg(long, default_value_t = 14)]
    pub depth: u32,
    /// decide from the exact comparison alone
    #[arg(long)]
    pub skip_spectrum: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct AcceptArgs {
    #[arg(long, default_value = "primary")]
    pub suite: String,
    /// comma-separated criterion ids to run instead of the whole suite
    #[arg(long)]
    pub only: Option<String>,
}
