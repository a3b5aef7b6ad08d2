use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use mutinv_core::diophantine::PRESETS;

#[derive(Parser, Debug)]
#[command(name = "mutinv", version, about = "Exact mutations, d-vectors and mutation invariants of rank-2 cluster algebras")]
pub struct Cli {
    /// Print JSON instead of canonical text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for brute-force scans and search grids.
    #[arg(long, global = true, value_name = "K", value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Exchange {
    /// Exponent in the direction-2 exchange `x2' = (x1^m + 1)/x2`.
    #[arg(long)]
    pub m: u32,
    /// Exponent in the direction-1 exchange `x1' = (x2^n + 1)/x1`.
    #[arg(long)]
    pub n: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mutate the initial seed along a word, apply M-actions, or check that
    /// the two agree.
    Mutate {
        #[command(flatten)]
        ex: Exchange,
        /// Directions applied left to right, e.g. `12121`.
        #[arg(long, default_value = "")]
        word: String,
        /// Apply the word as M-actions to `(x1, x2)` instead of mutating.
        #[arg(long)]
        maction: bool,
        /// Check mutation/M-action equivalence for all `k <= K`.
        #[arg(long, value_name = "K", conflicts_with_all = ["word", "maction"])]
        equivalence: Option<usize>,
        /// Evaluate the identities exactly at this many rational points
        /// instead of comparing them symbolically.
        #[arg(long, value_name = "COUNT", requires = "equivalence", value_parser = clap::value_parser!(u32).range(1..))]
        points: Option<u32>,
        /// Smallest `k` checked with `--points`.
        #[arg(long, default_value_t = 0, requires = "points")]
        k_min: usize,
        /// Check that every numerator at tree distance >= 2 along the
        /// alternating walks of length LEN has constant term 1.
        #[arg(long, value_name = "LEN", conflicts_with_all = ["word", "maction", "equivalence"])]
        constant_terms: Option<usize>,
        /// Track lowest terms instead of expanding the cluster variables.
        #[arg(long, requires = "constant_terms")]
        lowest_terms: bool,
    },
    /// Labeled clusters along `t0, t1, ...` until the initial seed recurs.
    Clusters {
        #[command(flatten)]
        ex: Exchange,
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
    },
    /// Denominator vectors: tables, closed forms, engine cross-check,
    /// classification and growth.
    Dvectors {
        #[command(flatten)]
        ex: Exchange,
        #[arg(long, value_enum, default_value_t = DMode::Recurrence)]
        mode: DMode,
        /// Tree distance covered by `recurrence`, `check` and `growth`.
        #[arg(long, default_value_t = 10)]
        k_max: usize,
        /// Single index for `closed-form` and `matrix-form` (positions `t2k`,
        /// `t2k+1`); without it every `1 <= k <= k-max` is printed.
        #[arg(long)]
        k: Option<u64>,
        /// Use lowest-term tracking instead of expanded fractions in `check`.
        #[arg(long)]
        lowest_terms: bool,
    },
    /// Check whether an expression is a mutation invariant.
    Verify {
        #[command(flatten)]
        ex: Exchange,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        /// Also check that the numerator degrees are twice the denominator's.
        #[arg(long)]
        degree: bool,
    },
    /// Build `Phi(F(c) for every cluster c)` for a finite type.
    Construct {
        #[command(flatten)]
        ex: Exchange,
        /// `F` as an expression in x1, x2.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// `mean`, `e<k>`, `p<k>`, `p<k>/<d>`, or a symmetric polynomial in
        /// X1 .. Xp with p the number of clusters.
        #[arg(long, default_value = "mean")]
        phi: String,
    },
    /// Bounded-degree search for Laurent invariants with denominator
    /// `x1^s x2^t`.
    Search {
        #[command(flatten)]
        ex: Exchange,
        #[arg(long, requires = "t")]
        s: Option<u32>,
        #[arg(long, requires = "s")]
        t: Option<u32>,
        /// Grid size used when `--s`/`--t` are absent.
        #[arg(long, default_value_t = 3, conflicts_with = "s")]
        s_max: u32,
        #[arg(long, default_value_t = 3, conflicts_with = "t")]
        t_max: u32,
        /// Report whether each space contains this expression up to an
        /// additive constant.
        #[arg(long, allow_hyphen_values = true)]
        contains: Option<String>,
    },
    /// Write an invariant of type (0, 0) as `G(x1 + 2/x1, x2 + 2/x2)`.
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        /// Decompose a one-variable `f(x) = g(x + 2/x)` instead.
        #[arg(long)]
        half: bool,
    },
    /// Positive integer solutions reached from the initial solution by
    /// mutation.
    DioSolve {
        #[command(flatten)]
        eq: Equation,
        #[arg(long, default_value_t = 100)]
        bound: u64,
        /// Scan `[1, bound]^2` directly instead.
        #[arg(long)]
        brute_force: bool,
    },
    /// Compare the mutation orbit with a brute-force scan.
    DioCertify {
        #[command(flatten)]
        eq: Equation,
        #[arg(long, default_value_t = 200)]
        bound: u64,
        /// Check the descent inequalities on every solution with a, b != 1
        /// (type (1, 4) only).
        #[arg(long)]
        descent: bool,
    },
    /// Check that matrix mutation only ever produces `B` and `-B`.
    ImrCheck {
        /// Rows separated by `;`, entries by `,`, e.g. `0,2,-2;-2,0,2;2,-2,0`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_matrix)]
        matrix: MatrixArg,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Print the mutation of the matrix at this index instead.
        #[arg(long, value_name = "K")]
        mutate: Option<usize>,
    },
    /// Exact arithmetic on expressions.
    Expr {
        #[command(subcommand)]
        op: ExprOp,
    },
}

#[derive(Args, Debug)]
pub struct Equation {
    /// Built-in equation.
    #[arg(
        long,
        value_parser = clap::builder::PossibleValuesParser::new(PRESETS.map(|p| p.0)),
        conflicts_with_all = ["expr", "m", "n", "initial", "level"],
        required_unless_present = "expr",
    )]
    pub preset: Option<String>,
    /// The invariant `T(x1, x2)`.
    #[arg(long, allow_hyphen_values = true, requires_all = ["m", "n"])]
    pub expr: Option<String>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Initial solution `a,b`.
    #[arg(long, default_value = "1,1", value_parser = parse_pair)]
    pub initial: (BigInt, BigInt),
    /// Required value of `T` at the initial solution.
    #[arg(long)]
    pub level: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DMode {
    Recurrence,
    ClosedForm,
    MatrixForm,
    Check,
    Classify,
    Growth,
}

#[derive(Subcommand, Debug)]
pub enum ExprOp {
    /// Canonical form.
    Print {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Parse tree.
    Parse {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    Add {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    Sub {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    Div {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Exact polynomial division; fails unless the remainder is zero.
    ExactDiv {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    Pow {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        k: i64,
    },
    /// Equality by cross-multiplication.
    Equal {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// `f(s1, s2)`.
    Substitute {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, default_value = "x1", allow_hyphen_values = true)]
        s1: String,
        #[arg(long, default_value = "x2", allow_hyphen_values = true)]
        s2: String,
    },
    /// `num / (x1^d1 x2^d2)` with the monomial content moved into the
    /// exponents.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        num: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        d1: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        d2: i64,
    },
}

fn parse_pair(text: &str) -> Result<(BigInt, BigInt), String> {
    let (a, b) = text.split_once(',').ok_or("expected a,b")?;
    let num = |s: &str| s.trim().parse::<BigInt>().map_err(|e| format!("{s:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

/// Square integer matrix as typed on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixArg(pub Vec<Vec<i64>>);

fn parse_matrix(text: &str) -> Result<MatrixArg, String> {
    let rows = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|e| e.trim().parse::<i64>().map_err(|err| format!("{e:?}: {err}")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(format!("{} rows of unequal or mismatched length", rows.len()));
    }
    Ok(MatrixArg(rows))
}
