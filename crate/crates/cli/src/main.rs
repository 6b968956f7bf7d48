use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use gyroloop::corpus::{read_corpus, Corpus};
use gyroloop::enumeration::{enumerate_left_bol_with, write_corpus, EnumOptions};
use gyroloop::gyration::{gyr, gyration_table, is_gyrogroup};
use gyroloop::morphisms::{are_isomorphic, automorphism_group};
use gyroloop::report::{classify, emit_report, ReportFormat};
use gyroloop::structure::{commutativity_sweep, commutators, generated_subsystem};
use gyroloop::table::Loop;

/// Finite loops, left Bol loops and gyrogroups from Cayley tables.
///
/// Elements are the 0-based labels used in the table files. Permutations are
/// printed in 1-based cycle notation.
#[derive(Parser)]
#[command(name = "gyroloop", version)]
struct Cli {
    /// Abort on the first malformed table instead of skipping it.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check that every table is a loop.
    Validate { files: Vec<PathBuf> },
    /// Print loop, left Bol, Moufang and group flags.
    Props { files: Vec<PathBuf> },
    /// Print gyr[a,b] for the first table of a file.
    Gyr {
        file: PathBuf,
        /// Two 0-based elements
        #[arg(long, value_name = "A,B")]
        pair: String,
    },
    /// Print the gyration table.
    Gyrtable { file: PathBuf },
    /// Decide whether each table is a gyrogroup.
    Isgyro { file: PathBuf },
    /// Classify a corpus and write a report.
    Classify {
        files: Vec<PathBuf>,
        /// Report destination
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Enumerate left Bol loops of one order up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Drop groups from the output
        #[arg(long)]
        non_associative: bool,
        /// Table file to write
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide whether the first tables of two files are isomorphic.
    Iso { file_a: PathBuf, file_b: PathBuf },
    /// Print the automorphism group.
    Aut { file: PathBuf },
    /// Print commutators and the derived subgyrogroup.
    Derived { file: PathBuf },
    /// List gyrogroups that are commutative but not associative.
    SweepCommutative { files: Vec<PathBuf> },
}

enum Outcome {
    Holds,
    Fails,
}

fn load(files: &[PathBuf], strict: bool) -> Result<Corpus> {
    if files.is_empty() {
        bail!("no input files");
    }
    let corpus = read_corpus(files, strict)?;
    for d in &corpus.diagnostics {
        eprintln!("warning: skipped {d}");
    }
    Ok(corpus)
}

fn first_loop(file: &Path, strict: bool) -> Result<(String, Loop)> {
    let corpus = load(&[file.to_path_buf()], strict)?;
    let entry = corpus
        .entries
        .into_iter()
        .next()
        .with_context(|| format!("{}: no tables", file.display()))?;
    let l = Loop::new(entry.table).with_context(|| format!("{}", entry.name))?;
    Ok((entry.name, l))
}

fn parse_pair(s: &str, n: usize) -> Result<(usize, usize)> {
    let (a, b) = s.split_once(',').context("expected --pair a,b")?;
    let a: usize = a.trim().parse().context("bad element in --pair")?;
    let b: usize = b.trim().parse().context("bad element in --pair")?;
    if a >= n || b >= n {
        bail!("pair ({a},{b}) out of range for order {n}");
    }
    Ok((a, b))
}

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let strict = cli.strict;
    match cli.command {
        Command::Validate { files } => {
            let corpus = load(&files, strict)?;
            let mut ok = corpus.diagnostics.is_empty();
            for e in &corpus.entries {
                match Loop::new(e.table.clone()) {
                    Ok(_) => println!("{}: loop of order {}", e.name, e.table.order()),
                    Err(err) => {
                        ok = false;
                        println!("{}: not a loop ({err})", e.name);
                    }
                }
            }
            Ok(if ok { Outcome::Holds } else { Outcome::Fails })
        }
        Command::Props { files } => {
            let corpus = load(&files, strict)?;
            println!("name\torder\tloop\tleft_bol\tmoufang\tgroup");
            for e in &corpus.entries {
                let n = e.table.order();
                match Loop::new(e.table.clone()) {
                    Ok(l) => println!(
                        "{}\t{n}\tyes\t{}\t{}\t{}",
                        e.name,
                        flag(l.is_left_bol()),
                        flag(l.is_moufang()),
                        flag(l.is_associative())
                    ),
                    Err(_) => println!("{}\t{n}\tno\t-\t-\t-", e.name),
                }
            }
            Ok(Outcome::Holds)
        }
        Command::Gyr { file, pair } => {
            let (_, l) = first_loop(&file, strict)?;
            let (a, b) = parse_pair(&pair, l.order())?;
            let g = gyr(&l, a, b);
            match g.to_perm() {
                Some(p) => println!("{}", p.format_cycles(true)),
                None => bail!("gyr[{a},{b}] is not a bijection"),
            }
            Ok(Outcome::Holds)
        }
        Command::Gyrtable { file } => {
            let (_, l) = first_loop(&file, strict)?;
            print!("{}", gyration_table(&l).render_table());
            Ok(Outcome::Holds)
        }
        Command::Isgyro { file } => {
            let corpus = load(&[file], strict)?;
            let mut all = true;
            for e in &corpus.entries {
                let verdict = match Loop::new(e.table.clone()) {
                    Ok(l) => is_gyrogroup(&l).map_err(|f| f.to_string()),
                    Err(err) => Err(err.to_string()),
                };
                match verdict {
                    Ok(()) => println!("{}: true", e.name),
                    Err(reason) => {
                        all = false;
                        println!("{}: false ({reason})", e.name);
                    }
                }
            }
            Ok(if all { Outcome::Holds } else { Outcome::Fails })
        }
        Command::Classify { files, out, format } => {
            let corpus = load(&files, strict)?;
            let report = classify(&corpus);
            let fmt = match format {
                Format::Csv => ReportFormat::Csv,
                Format::Json => ReportFormat::Json,
            };
            emit_report(&report, fmt, &out).with_context(|| format!("writing {}", out.display()))?;
            for s in &report.summary {
                eprintln!("order {}: alpha={} beta={} ({})", s.order, s.alpha, s.beta, s.status);
            }
            Ok(Outcome::Holds)
        }
        Command::Enumerate { order, non_associative, out } => {
            let opts = EnumOptions { non_associative_only: non_associative, ..EnumOptions::from_env() };
            let loops = enumerate_left_bol_with(order, &opts)?;
            std::fs::write(&out, write_corpus(&loops))
                .with_context(|| format!("writing {}", out.display()))?;
            eprintln!("{} isomorphism classes written to {}", loops.len(), out.display());
            Ok(Outcome::Holds)
        }
        Command::Iso { file_a, file_b } => {
            let (_, a) = first_loop(&file_a, strict)?;
            let (_, b) = first_loop(&file_b, strict)?;
            match are_isomorphic(&a, &b) {
                Some(p) => {
                    println!("isomorphic via {}", p.format_cycles(true));
                    Ok(Outcome::Holds)
                }
                None => {
                    println!("not isomorphic");
                    Ok(Outcome::Fails)
                }
            }
        }
        Command::Aut { file } => {
            let (_, l) = first_loop(&file, strict)?;
            let group = automorphism_group(&l);
            println!("order {}", group.len());
            for p in &group {
                println!("{}", p.format_cycles(true));
            }
            Ok(Outcome::Holds)
        }
        Command::Derived { file } => {
            let (name, l) = first_loop(&file, strict)?;
            if let Err(f) = is_gyrogroup(&l) {
                println!("{name}: not a gyrogroup ({f})");
                return Ok(Outcome::Fails);
            }
            let comms = commutators(&l);
            let d = generated_subsystem(&l, &comms);
            println!("commutators: {comms:?}");
            println!("derived: {:?}", d.members());
            println!("order: {}", d.len());
            println!("subgroup: {}", d.is_subgroup());
            println!("normal: {}", d.is_normal().is_ok());
            Ok(Outcome::Holds)
        }
        Command::SweepCommutative { files } => {
            let corpus = load(&files, strict)?;
            let loops: Vec<(String, Loop)> = corpus
                .entries
                .into_iter()
                .filter_map(|e| Loop::new(e.table).ok().map(|l| (e.name, l)))
                .collect();
            let hits = commutativity_sweep(loops.iter().map(|(_, l)| l));
            for &i in &hits {
                println!("{}", loops[i].0);
            }
            println!("{} counterexample(s)", hits.len());
            Ok(if hits.is_empty() { Outcome::Holds } else { Outcome::Fails })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Holds) => ExitCode::SUCCESS,
        Ok(Outcome::Fails) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
