use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use gcisfm::format::{deserialize, section_sizes, serialize};
use gcisfm::oracle::{gen_artificial, gen_random_instance, sample_substrings, DNA};
use gcisfm::{GrammarIndex, RlfmIndex};

#[derive(Parser)]
#[command(
    name = "gcisfm",
    version,
    about = "Grammar-compressed FM-index for substring counting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index file from a text file
    Build {
        #[arg(short = 'i', long)]
        input: PathBuf,
        #[arg(short = 'o', long)]
        output: PathBuf,
        #[arg(long)]
        lambda: usize,
        /// Also store the plain level-0 RLFM
        #[arg(long)]
        baseline: bool,
    },
    /// Count every line of a pattern file
    Count {
        #[arg(short = 'x', long)]
        index: PathBuf,
        #[arg(short = 'p', long)]
        patterns: PathBuf,
    },
    /// Time counts of random substrings of lengths 2^a..=2^b
    Bench {
        #[arg(short = 'x', long)]
        index: PathBuf,
        #[arg(long)]
        text: PathBuf,
        /// Exponent range, e.g. 8..15
        #[arg(long)]
        lengths: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate a dataset
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Print size and run statistics of an index
    Stats {
        #[arg(short = 'x', long)]
        index: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Base DNA string plus 100 mutated copies
    Artificial {
        /// Mutation probability in percent
        #[arg(long)]
        mutation: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Uniform random text over the first sigma lowercase letters
    Random {
        #[arg(long)]
        sigma: usize,
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
}

fn load(path: &Path) -> Result<GrammarIndex> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    deserialize(&bytes).with_context(|| format!("loading {}", path.display()))
}

fn print_stats(out: &mut impl Write, idx: &GrammarIndex) -> Result<()> {
    let s = idx.stats();
    let z = section_sizes(idx)?;
    writeln!(
        out,
        "lambda,n,sigma,sigma1,level1_len,r0,r1,alphabet_bytes,grammar_bytes,level1_bytes,trie_bytes,baseline_bytes,file_bytes"
    )?;
    writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        s.lambda,
        s.n,
        s.sigma,
        s.sigma1,
        s.level1_len,
        s.r0.map(|r| r.to_string()).unwrap_or_default(),
        s.r1,
        z.alphabet,
        z.grammar,
        z.level1,
        z.trie,
        z.baseline,
        z.total()
    )?;
    Ok(())
}

fn build(input: &Path, output: &Path, lambda: usize, baseline: bool) -> Result<()> {
    let raw = fs::read(input).with_context(|| format!("reading {}", input.display()))?;
    let idx = GrammarIndex::build(&raw, lambda, baseline)?;
    fs::write(output, serialize(&idx)?).with_context(|| format!("writing {}", output.display()))?;
    print_stats(&mut io::stdout().lock(), &idx)
}

// returns whether every line was answered
fn count(index: &Path, patterns: &Path) -> Result<bool> {
    let idx = load(index)?;
    let data = fs::read(patterns).with_context(|| format!("reading {}", patterns.display()))?;
    let mut lines: Vec<&[u8]> = data.split(|&b| b == b'\n').collect();
    if data.ends_with(b"\n") {
        lines.pop();
    }
    let mut out = BufWriter::new(io::stdout().lock());
    let mut all_ok = true;
    for (k, line) in lines.iter().enumerate() {
        let line = line.strip_suffix(b"\r").unwrap_or(line);
        match idx.count(line) {
            Ok(c) => writeln!(out, "{c}")?,
            Err(e) => {
                all_ok = false;
                writeln!(out, "error")?;
                eprintln!("line {}: {e}", k + 1);
            }
        }
    }
    out.flush()?;
    Ok(all_ok)
}

fn parse_lengths(s: &str) -> Result<(u32, u32)> {
    let (a, b) = s.split_once("..").context("lengths must look like a..b")?;
    let (a, b): (u32, u32) = (a.trim().parse()?, b.trim().parse()?);
    if a > b || b >= 48 {
        bail!("bad exponent range {a}..{b}");
    }
    Ok((a, b))
}

fn bench_one(idx: &RlfmIndex, patterns: &[Vec<u32>]) -> (f64, u64) {
    idx.reset_counters();
    let start = Instant::now();
    for p in patterns {
        std::hint::black_box(idx.count(p));
    }
    (start.elapsed().as_nanos() as f64, idx.rank_calls())
}

fn bench(index: &Path, text: &Path, lengths: &str, samples: usize, seed: u64) -> Result<()> {
    let idx = load(index)?;
    let raw = fs::read(text).with_context(|| format!("reading {}", text.display()))?;
    let raw = raw.strip_suffix(&[0]).unwrap_or(&raw);
    let codes = idx
        .alphabet()
        .encode(raw)
        .context("text contains bytes the index has never seen")?;
    if codes.len() != idx.text_len() {
        bail!(
            "text length {} differs from the indexed {}",
            codes.len(),
            idx.text_len()
        );
    }
    let (a, b) = parse_lengths(lengths)?;
    let mut out = BufWriter::new(io::stdout().lock());
    writeln!(
        out,
        "index,length,ns_per_char,rank_calls,rank_calls_per_char"
    )?;
    for x in a..=b {
        let len = 1usize << x;
        let patterns = sample_substrings(&codes, len, samples, seed.wrapping_add(x as u64))?;
        let chars = (len * samples) as f64;
        idx.level1().reset_counters();
        let start = Instant::now();
        for p in &patterns {
            std::hint::black_box(idx.count_codes(p));
        }
        let ns = start.elapsed().as_nanos() as f64;
        let rank = idx.level1().rank_calls();
        writeln!(
            out,
            "grammar,{len},{:.3},{rank},{:.4}",
            ns / chars,
            rank as f64 / chars
        )?;
        if let Some(base) = idx.baseline() {
            let wide: Vec<Vec<u32>> = patterns
                .iter()
                .map(|p| p.iter().map(|&c| c as u32).collect())
                .collect();
            let (ns, rank) = bench_one(base, &wide);
            writeln!(
                out,
                "baseline,{len},{:.3},{rank},{:.4}",
                ns / chars,
                rank as f64 / chars
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

fn gen(kind: GenKind) -> Result<()> {
    let (bytes, output) = match kind {
        GenKind::Artificial {
            mutation,
            seed,
            output,
        } => {
            if !(0.0..=100.0).contains(&mutation) {
                bail!("mutation must be a percentage in 0..=100");
            }
            let t = gen_artificial(mutation, seed);
            let bytes: Vec<u8> = t.symbols().iter().map(|&c| DNA[c as usize - 1]).collect();
            (bytes, output)
        }
        GenKind::Random {
            sigma,
            n,
            seed,
            output,
        } => {
            if !(1..=26).contains(&sigma) || n == 0 {
                bail!("need 1 <= sigma <= 26 and n >= 1");
            }
            let t = gen_random_instance(sigma, n, seed);
            (t.symbols().iter().map(|&c| b'a' + c - 1).collect(), output)
        }
    };
    fs::write(&output, bytes).with_context(|| format!("writing {}", output.display()))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Build {
            input,
            output,
            lambda,
            baseline,
        } => build(&input, &output, lambda, baseline)?,
        Command::Count { index, patterns } => return count(&index, &patterns),
        Command::Bench {
            index,
            text,
            lengths,
            samples,
            seed,
        } => bench(&index, &text, &lengths, samples, seed)?,
        Command::Gen { kind } => gen(kind)?,
        Command::Stats { index } => print_stats(&mut io::stdout().lock(), &load(&index)?)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
