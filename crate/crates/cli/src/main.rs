use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use biunitary::divfun::{abundancy, divisor_sum, list_divisors};
use biunitary::factorint::factor;
use biunitary::proof_replay::{
    branch_bound_reports, check_lemma_22, check_lemma_23, check_lemma_24, check_lemma_a, check_lemma_b,
    ledger_reports, verify_theorem_desk, Lemma24Part,
};
use biunitary::report::VerificationReport;
use biunitary::sieve_search::{export_bfile, run_search, PerfectHit, SearchConfig, MAX_BOUND};
use biunitary::zsigmondy::{check_bang_range, check_lemma_c_range, primitive_prime_factors, Sign};
use biunitary::DivisorClass;

#[derive(Parser)]
#[command(name = "biunitary", version, about = "Biunitary divisor sums, multiperfect search and proof replay")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    All,
    Unitary,
    Biunitary,
}

impl From<ClassArg> for DivisorClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::All => DivisorClass::All,
            ClassArg::Unitary => DivisorClass::Unitary,
            ClassArg::Biunitary => DivisorClass::Biunitary,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Minus,
    Plus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Lemmas,
    Ledger,
    Bounds,
    Theorem,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print the prime factorization of N
    Factor { n: u128 },
    /// Print the divisor sum of N and its ratio to N
    Sigma {
        n: u128,
        #[arg(long, value_enum, default_value = "biunitary")]
        class: ClassArg,
    },
    /// List the divisors of N in a class
    Divisors {
        n: u128,
        #[arg(long, value_enum, default_value = "biunitary")]
        class: ClassArg,
    },
    /// Find every n <= bound with sigma_class(n) = k*n
    Search {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        bound: u64,
        #[arg(long, value_enum, default_value = "biunitary")]
        class: ClassArg,
        /// Keep only n congruent to --residue modulo this
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long)]
        residue: Option<u64>,
        #[arg(long, default_value_t = 1 << 20)]
        segment: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Append-only progress log; an existing log is resumed
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Also write the hits as a b-file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Stop after this many segments (resume later from --checkpoint)
        #[arg(long)]
        halt_after: Option<u64>,
        #[arg(long, value_enum, default_value = "records")]
        format: Format,
    },
    /// Primitive prime factors of a^n - 1 or a^n + 1
    Zsigmondy {
        a: u128,
        n: u32,
        #[arg(long, value_enum, default_value = "minus")]
        sign: SignArg,
    },
    /// Replay the finite checks and print one line per check
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Lemma a sweep bound
        #[arg(long, default_value_t = 1_000_000)]
        n_max: u64,
        /// Lemma b grid: largest prime
        #[arg(long, default_value_t = 100)]
        p_max: u64,
        /// Lemma b grid: largest exponent
        #[arg(long, default_value_t = 20)]
        b_e_max: u32,
        /// Lemma b grid: largest m
        #[arg(long, default_value_t = 5)]
        m_max: u32,
        /// Largest exponent of 3 for lemma 22 and lemma 24(III)
        #[arg(long, default_value_t = 40)]
        f_max: u32,
        /// Largest exponent of 2 for lemma 23
        #[arg(long, default_value_t = 40)]
        e_max: u32,
        #[arg(long, default_value_t = 64)]
        s_max: u32,
        #[arg(long, default_value_t = 64)]
        t_max: u32,
        /// Zsigmondy grids: largest base
        #[arg(long, default_value_t = 20)]
        a_max: u128,
        #[arg(long, default_value_t = 20)]
        bang_n_max: u32,
        #[arg(long, default_value_t = 15)]
        plus_n_max: u32,
        /// Theorem sieve bound
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Print report notes as `#` lines
        #[arg(long)]
        notes: bool,
    },
    /// Convert hit records (file or `-` for stdin) to a b-file
    ExportBfile {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn positive(flag: &str, n: u128) -> Result<()> {
    if n == 0 {
        bail!("{flag}: must be a positive integer");
    }
    Ok(())
}

/// `Ok(false)` when a requested check fails.
fn run(command: Command) -> Result<bool> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Factor { n } => {
            positive("N", n)?;
            writeln!(out, "{n} = {}", factor(n))?;
        }
        Command::Sigma { n, class } => {
            positive("N", n)?;
            let f = factor(n);
            let class = class.into();
            writeln!(out, "{} (ratio {})", divisor_sum(&f, class), abundancy(&f, class))?;
        }
        Command::Divisors { n, class } => {
            positive("N", n)?;
            let ds = list_divisors(&factor(n), class.into()).context("N")?;
            let line: Vec<String> = ds.iter().map(u64::to_string).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Command::Search {
            k,
            bound,
            class,
            modulus,
            residue,
            segment,
            workers,
            checkpoint,
            out: bfile,
            halt_after,
            format,
        } => {
            if k < 2 {
                bail!("--k: must be at least 2");
            }
            if bound == 0 || bound > MAX_BOUND {
                bail!("--bound: must be in [1, {MAX_BOUND}]");
            }
            if segment < 2 {
                bail!("--segment: must be at least 2");
            }
            if workers == 0 {
                bail!("--workers: must be at least 1");
            }
            let residue_filter = match (modulus, residue) {
                (None, None) => None,
                (Some(0), _) => bail!("--mod: must be at least 1"),
                (Some(m), r) => Some((m, r.unwrap_or(0))),
                (None, Some(_)) => bail!("--residue: requires --mod"),
            };
            if halt_after == Some(0) {
                bail!("--halt-after: must be at least 1");
            }
            let config = SearchConfig {
                bound,
                k,
                class: class.into(),
                segment_size: segment,
                worker_count: workers,
                residue_filter,
                checkpoint_path: checkpoint,
                halt_after_segments: halt_after,
            };
            let outcome = run_search(&config)?;
            for hit in &outcome.hits {
                match format {
                    Format::Records => writeln!(out, "{hit}")?,
                    Format::Text => writeln!(out, "{} = {}", hit.n, hit.factorization)?,
                }
            }
            if !outcome.finished {
                eprintln!(
                    "halted: all n < {} examined; rerun with the same --checkpoint to resume",
                    outcome.completed_hi
                );
            }
            if let Some(path) = bfile {
                export_bfile(&outcome.hits, &path).with_context(|| format!("--out {}", path.display()))?;
            }
        }
        Command::Zsigmondy { a, n, sign } => {
            let sign = match sign {
                SignArg::Minus => Sign::Minus,
                SignArg::Plus => Sign::Plus,
            };
            if a < 2 {
                bail!("A: must be at least 2");
            }
            if n == 0 {
                bail!("N: must be at least 1");
            }
            writeln!(out, "{}", primitive_prime_factors(a, n, sign)?)?;
        }
        Command::Verify {
            suite,
            n_max,
            p_max,
            b_e_max,
            m_max,
            f_max,
            e_max,
            s_max,
            t_max,
            a_max,
            bang_n_max,
            plus_n_max,
            bound,
            workers,
            notes,
        } => {
            let mut report = VerificationReport::default();
            let wants = |s: Suite| suite == s || suite == Suite::All;
            if wants(Suite::Lemmas) {
                report.push(check_lemma_a(n_max).context("--n-max")?);
                report.push(check_lemma_b(p_max, b_e_max, m_max).context("--p-max/--b-e-max/--m-max")?);
                report.push(check_lemma_22(5, f_max).context("--f-max")?);
                report.push(check_lemma_23(6, e_max).context("--e-max")?);
                for part in Lemma24Part::ALL {
                    let upper = if part == Lemma24Part::III { f_max } else { part.default_upper() };
                    report.push(check_lemma_24(part, upper).context("--f-max")?);
                }
                report.push(check_bang_range(a_max, bang_n_max).context("--a-max/--bang-n-max")?);
                report.push(check_lemma_c_range(a_max, plus_n_max).context("--a-max/--plus-n-max")?);
            }
            if wants(Suite::Ledger) {
                report.extend(ledger_reports()?);
            }
            if wants(Suite::Bounds) {
                report.extend(branch_bound_reports(s_max, t_max).context("--s-max/--t-max")?);
            }
            if wants(Suite::Theorem) {
                if bound > MAX_BOUND {
                    bail!("--bound: must be at most {MAX_BOUND}");
                }
                if workers == 0 {
                    bail!("--workers: must be at least 1");
                }
                report.push(verify_theorem_desk(bound, workers).context("--bound")?);
            }
            // The theorem's hit list is always shown.
            write!(out, "{}", report.render_with(|r| notes || r.lemma_id == "theorem"))?;
            return Ok(report.all_passed());
        }
        Command::ExportBfile { input, out: path } => {
            let reader: Box<dyn BufRead> = if input.as_os_str() == "-" {
                Box::new(BufReader::new(io::stdin()))
            } else {
                let f = fs::File::open(&input).with_context(|| format!("--input {}", input.display()))?;
                Box::new(BufReader::new(f))
            };
            let mut hits = Vec::new();
            for (i, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let hit: PerfectHit = line
                    .parse()
                    .with_context(|| format!("--input line {}", i + 1))?;
                hits.push(hit);
            }
            export_bfile(&hits, &path).with_context(|| format!("--out {}", path.display()))?;
        }
    }
    Ok(true)
}
