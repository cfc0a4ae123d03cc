use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "modcanon", version, about = "Rhythmic tiling canons, exact and modulo p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Style {
    Text,
    Svg,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write to a file instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal compact complement of a pattern by the greedy tiler.
    Tile {
        /// Comma-separated onsets containing 0, or `@path`.
        #[arg(short = 'a', long = "pattern")]
        pattern: String,
        /// A prime.
        #[arg(short = 'p', long = "modulus", default_value = "2")]
        modulus: String,
        #[arg(long = "max-n", default_value_t = 1 << 25)]
        max_n: usize,
        /// When the greedy tiler is stuck, build a non-compact canon from
        /// the order of `A(X)(X - 1)`.
        #[arg(long)]
        fallback: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The canon `({0, 1, 2^k}, B_k)` read off the array `T(k)`.
    Construct {
        #[arg(short, long)]
        k: u32,
        /// Also replay the greedy tiler against `T(k)` and check the counts.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sizes of the minimal compact mod-2 canons of `{0, 1, n}`.
    Table1 {
        #[arg(long = "max", default_value_t = 16)]
        max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check a canon document.
    Verify {
        /// Document path, or `-` for stdin.
        document: PathBuf,
        /// Check under this modulus (`1` for exact) instead of the document's.
        #[arg(short = 'p', long = "modulus")]
        modulus: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Draw a canon document as a grid.
    Render {
        document: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        style: Style,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Whether Vuza canons of `Z_N` exist.
    VuzaN {
        n: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Brute-force ground truth.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Minimal compact complement by exhaustive search.
    Complement {
        #[arg(short = 'a', long = "pattern")]
        pattern: String,
        #[arg(short = 'p', long = "modulus", default_value = "2")]
        modulus: String,
        #[arg(long = "max-n", default_value_t = 1 << 16)]
        max_n: usize,
        #[arg(long = "max-entries", default_value_t = 1 << 16)]
        max_entries: usize,
        #[arg(long = "node-limit", default_value_t = 1 << 24)]
        node_limit: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Every exact tiling of `Z_N`, `N <= 40`.
    Census {
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}
