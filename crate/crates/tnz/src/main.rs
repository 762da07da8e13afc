//! Thin command-line front end. All logic lives in the library; this binary
//! only parses arguments, reads and writes files, and maps outcomes to exit
//! codes: 0 for YES/success, 1 for a definite NO, 2 for any error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tnz::certify::{
    basis_witness_peel, check_injective, count_via_gtnz, injective_certificate, ExactOracle,
    InjectivePartition, TnzOracle,
};
use tnz::contract::contract_closed;
use tnz::hamiltonian::solve_stoquastic_sat;
use tnz::io;
use tnz::reduce::{add_scalar, compile_edge_coloring, compile_sharp2sat, GtnzInstance};
use tnz::{Budget, Error, NodeId, Scalar};

#[derive(Parser)]
#[command(
    name = "tnz",
    about = "Exact tensor-network contraction and non-zero certification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest labeling or search space an enumeration may visit.
    #[arg(long, global = true, default_value_t = Budget::default().max_labelings)]
    max_labelings: u64,

    /// Largest dense matrix dimension for Hamiltonian checks.
    #[arg(long, global = true, default_value_t = Budget::default().max_dense_dim)]
    max_dense: usize,

    /// Largest number of cells in one injectivity block map.
    #[arg(long, global = true, default_value_t = Budget::default().max_block_cells)]
    max_block_cells: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Contract a closed network file exactly and print its value.
    Contract {
        /// Network JSON file.
        network: PathBuf,
    },
    /// Decide whether some value of the network reaches alpha in magnitude
    /// (prints YES/NO; open networks are scanned over all basis points).
    Tnz {
        /// Network JSON file.
        network: PathBuf,
        /// Exact rational threshold: YES means some |value| >= alpha.
        #[arg(long)]
        alpha: String,
        /// Promise bound: on NO instances every |value| <= beta.
        #[arg(long, default_value = "0")]
        beta: String,
        /// On YES, write a basis point with non-zero value here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Compile a problem into a network JSON file.
    Reduce {
        #[command(subcommand)]
        kind: ReduceKind,
    },
    /// Print the exact number of satisfying assignments of a 2-CNF formula,
    /// computed through single-call threshold queries.
    Count {
        /// DIMACS CNF file with exactly two literals per clause.
        formula: PathBuf,
    },
    /// Check a partition of the nodes for injectivity (YES/NO).
    Injective {
        /// Network JSON file.
        network: PathBuf,
        /// Blocks as node ids: comma inside a block, semicolon between
        /// blocks, e.g. "0,1;2;3,4".
        #[arg(long)]
        blocks: String,
        /// On YES, write a product-form certificate here.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Decide satisfiability of a commuting non-negative projector
    /// Hamiltonian (YES/NO).
    Stoq {
        /// Hamiltonian JSON file.
        hamiltonian: PathBuf,
        /// Restrict the search to one basis string (1-based values,
        /// comma-separated, one per qudit).
        #[arg(long)]
        x: Option<String>,
        /// On YES, write the satisfying string and its positive point here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ReduceKind {
    /// Model-counting network from a DIMACS 2-CNF file.
    Sharp2sat {
        formula: PathBuf,
        /// Output file (stdout when omitted).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Proper edge-coloring counting network from an edge list.
    Coloring {
        graph: PathBuf,
        /// Number of colors.
        #[arg(long)]
        colors: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Shift the value of a closed network by an exact constant.
    Shift {
        network: PathBuf,
        /// The constant, as "re" or "re,im" with exact rationals.
        #[arg(long)]
        by: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let budget = Budget {
        max_labelings: cli.max_labelings,
        max_dense_dim: cli.max_dense,
        max_block_cells: cli.max_block_cells,
    };
    match run(cli.command, &budget) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {}", path.display(), e)))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        None => {
            println!("{}", text);
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {}", path.display(), e))),
    }
}

fn parse_shift(text: &str) -> Result<Scalar, Error> {
    match text.split_once(',') {
        None => Ok(Scalar::from_rational(io::parse_rational(text)?)),
        Some((re, im)) => Ok(Scalar::new(
            io::parse_rational(re)?,
            io::parse_rational(im)?,
        )),
    }
}

fn parse_blocks(text: &str) -> Result<InjectivePartition, Error> {
    let mut blocks = Vec::new();
    for part in text.split(';') {
        let mut block = Vec::new();
        for id in part.split(',') {
            let id = id.trim();
            if id.is_empty() {
                continue;
            }
            let id = id
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("node id {:?}: {}", id, e)))?;
            block.push(NodeId(id));
        }
        if !block.is_empty() {
            blocks.push(block);
        }
    }
    Ok(InjectivePartition::new(blocks))
}

fn parse_basis_string(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|v| {
            let v = v
                .trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("basis value {:?}: {}", v, e)))?;
            v.checked_sub(1)
                .ok_or_else(|| Error::Parse("basis values are 1-based".into()))
        })
        .collect()
}

fn run(command: Command, budget: &Budget) -> Result<u8, Error> {
    match command {
        Command::Contract { network } => {
            let net = io::network_from_json(&read(&network)?)?;
            println!("{}", contract_closed(&net)?);
            Ok(0)
        }
        Command::Tnz {
            network,
            alpha,
            beta,
            witness,
        } => {
            let net = io::network_from_json(&read(&network)?)?;
            let instance =
                GtnzInstance::new(net, io::parse_rational(&alpha)?, io::parse_rational(&beta)?)?;
            let oracle = ExactOracle::new(budget.clone());
            if oracle.decide(&instance)? {
                if let Some(path) = witness {
                    let x = basis_witness_peel(&instance.network, budget)?
                        .expect("YES instance has a non-zero point");
                    write_output(Some(&path), &io::basis_witness_to_json(&x))?;
                }
                println!("YES");
                Ok(0)
            } else {
                println!("NO");
                Ok(1)
            }
        }
        Command::Reduce { kind } => {
            let (text, output) = match kind {
                ReduceKind::Sharp2sat { formula, output } => {
                    let f = io::parse_dimacs(&read(&formula)?)?;
                    (io::network_to_json(&compile_sharp2sat(&f)), output)
                }
                ReduceKind::Coloring {
                    graph,
                    colors,
                    output,
                } => {
                    let g = io::parse_edge_list(&read(&graph)?)?;
                    (io::network_to_json(&compile_edge_coloring(&g, colors)?), output)
                }
                ReduceKind::Shift {
                    network,
                    by,
                    output,
                } => {
                    let net = io::network_from_json(&read(&network)?)?;
                    let shifted = add_scalar(&net, &parse_shift(&by)?)?;
                    (io::network_to_json(&shifted), output)
                }
            };
            write_output(output.as_deref(), &text)?;
            Ok(0)
        }
        Command::Count { formula } => {
            let f = io::parse_dimacs(&read(&formula)?)?;
            let oracle = ExactOracle::new(budget.clone());
            println!("{}", count_via_gtnz(&f, &oracle)?);
            Ok(0)
        }
        Command::Injective {
            network,
            blocks,
            certificate,
        } => {
            let net = io::network_from_json(&read(&network)?)?;
            let partition = parse_blocks(&blocks)?;
            if check_injective(&net, &partition, budget)? {
                if let Some(path) = certificate {
                    let cert = injective_certificate(&net, &partition, budget)?;
                    write_output(Some(&path), &io::vector_input_to_json(&cert))?;
                }
                println!("YES");
                Ok(0)
            } else {
                println!("NO");
                Ok(1)
            }
        }
        Command::Stoq {
            hamiltonian,
            x,
            witness,
        } => {
            let (instance, guesses) = io::parse_hamiltonian(&read(&hamiltonian)?)?;
            let point = x.as_deref().map(parse_basis_string).transpose()?;
            let solution = solve_stoquastic_sat(
                &instance,
                guesses.as_deref(),
                point.as_deref(),
                budget,
            )?;
            match solution {
                Some(found) => {
                    if let Some(path) = witness {
                        write_output(Some(&path), &io::stoq_witness_to_json(&found))?;
                    }
                    println!("YES");
                    Ok(0)
                }
                None => {
                    println!("NO");
                    Ok(1)
                }
            }
        }
    }
}
