//! `splitfield`: command-line access to the algebra and module toolkit.
//!
//! Exit codes: 0 success or true verdict, 1 false verdict, 2 input error,
//! 3 inconclusive or unknown, 4 internal invariant breach.

mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::json;

use splitfield::acceptance::{run_criterion, CriterionResult};
use splitfield::algebra::{algebra_validate, AlgebraDesc};
use splitfield::basechange::{descend_module, extend_algebra, extend_module, pull_back_algebra, write_in};
use splitfield::corpus;
use splitfield::document::{self, Document, Kind};
use splitfield::field::{embed_find, FieldElement};
use splitfield::module::{end_algebra, module_validate, ModuleDesc};
use splitfield::split::{find_splitting_field, is_split, is_splitting_field, verify_chain_theorem, verify_split_radical, Verdict};
use splitfield::structure::oracle::oracle_composition_dims;
use splitfield::structure::{composition_dims, radical, radical_of_module, simple_modules};
use splitfield::{Error, Result};

use io::{parse_field, read_document, read_vectors, vectors_json, Output};

#[derive(Parser)]
#[command(name = "splitfield", version, about = "Exact algebras, modules and splitting fields")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Document format version; only "1" is supported.
    #[arg(long, global = true, default_value = "1")]
    format_version: String,
    /// Write the output document here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the algebra or module axioms of a document.
    Validate { input: PathBuf },
    /// Jacobson radical of an algebra, or the radical of a module.
    Radical { input: PathBuf },
    /// Simple modules of an algebra with their multiplicities.
    Simples { input: PathBuf },
    /// Endomorphism algebra of a module.
    End { input: PathBuf },
    /// Extend scalars of an algebra or module to a larger field.
    Extend {
        input: PathBuf,
        /// Target field: `Q`, `F<q>`, `Q[c0,c1,...,1]` or a field document.
        #[arg(long)]
        field: String,
    },
    /// Descend a module to the field generated by its action entries.
    Descend { input: PathBuf },
    /// Rewrite a module in a basis and pull it back to a subfield.
    WrittenIn {
        input: PathBuf,
        #[arg(long)]
        subfield: String,
        /// JSON list of basis vectors; defaults to the standard basis.
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Is the algebra split (over an optional extension field)?
    SplitCheck {
        input: PathBuf,
        #[arg(long)]
        field: Option<String>,
    },
    /// Search for a splitting field of finite degree.
    SplitFind {
        input: PathBuf,
        /// Degree cap; defaults to the square of the algebra's dimension.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Compare both sides of the chain theorem for a tower k ⊆ E ⊆ F.
    ChainVerify {
        input: PathBuf,
        #[arg(long)]
        middle: String,
        #[arg(long)]
        top: String,
    },
    /// Check that the radical of a split algebra commutes with extension.
    RadicalExtendVerify {
        input: PathBuf,
        #[arg(long)]
        field: String,
    },
    /// Compare composition factors from the splitter with the brute-force oracle.
    OracleCompare {
        /// Module documents; defaults to the bundled and random corpora.
        inputs: Vec<PathBuf>,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run a single criterion (1 to 8).
        #[arg(long)]
        criterion: Option<usize>,
    },
    /// Write the bundled algebra and module documents to a directory.
    Examples {
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Output::new(cli.output.clone());
    let code = match run(&cli, &out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}

fn verdict_code(v: bool) -> i32 {
    if v {
        0
    } else {
        1
    }
}

fn name_of(doc: &Document) -> Option<String> {
    doc.name.clone()
}

fn report(out: &Output, name: Option<String>, kind: &str, body: serde_json::Value) -> Result<()> {
    out.write(&Document::report(name, kind, body))
}

fn algebra_of(doc: &Document) -> Result<Arc<AlgebraDesc>> {
    let a = doc.to_algebra()?;
    algebra_validate(&a).map_err(|v| Error::InvalidAlgebra(v.to_string()))?;
    Ok(Arc::new(a))
}

fn module_of(doc: &Document) -> Result<ModuleDesc> {
    let m = doc.to_module()?;
    algebra_validate(m.algebra()).map_err(|v| Error::InvalidAlgebra(v.to_string()))?;
    module_validate(&m).map_err(|v| Error::InvalidModule(v.to_string()))?;
    Ok(m)
}

fn load_algebra(path: &Path) -> Result<(Document, Arc<AlgebraDesc>)> {
    let doc = read_document(path)?;
    let a = algebra_of(&doc)?;
    Ok((doc, a))
}

fn load_module(path: &Path) -> Result<(Document, ModuleDesc)> {
    let doc = read_document(path)?;
    let m = module_of(&doc)?;
    Ok((doc, m))
}

/// The algebra over the prime field that `m`'s algebra extends, with the
/// corresponding extension context.
fn base_context(m: &ModuleDesc) -> Result<splitfield::basechange::ExtensionContext> {
    let f = m.field();
    let emb = embed_find(&f.prime_field(), f)?;
    let base = pull_back_algebra(m.algebra(), &emb)
        .map_err(|_| Error::PreconditionFailed("algebra is not defined over the prime field".into()))?;
    let ctx = extend_algebra(&Arc::new(base), &emb)?;
    Ok(splitfield::basechange::ExtensionContext { extended: m.algebra().clone(), ..ctx })
}

fn run(cli: &Cli, out: &Output) -> Result<i32> {
    if cli.format_version != document::FORMAT_VERSION {
        return Err(Error::Document(format!("unsupported format version {:?}", cli.format_version)));
    }
    let seed = cli.seed;
    match &cli.command {
        Command::Validate { input } => {
            let doc = read_document(input)?;
            match doc.kind {
                Kind::Algebra => {
                    algebra_of(&doc)?;
                }
                Kind::Module => {
                    module_of(&doc)?;
                }
                Kind::Field => {
                    doc.to_field()?;
                }
                Kind::Report => {
                    doc.to_report()?;
                }
            }
            report(out, name_of(&doc), "validate", json!({ "valid": true }))?;
            Ok(0)
        }
        Command::Radical { input } => {
            let doc = read_document(input)?;
            let (basis, len) = match doc.kind {
                Kind::Module => {
                    let m = module_of(&doc)?;
                    (radical_of_module(&m, seed)?, m.dim())
                }
                _ => {
                    let a = algebra_of(&doc)?;
                    (radical(&a, seed)?, a.dim())
                }
            };
            report(out, name_of(&doc), "radical", json!({ "ambient_dim": len, "dim": basis.len(), "basis": vectors_json(&basis) }))?;
            Ok(0)
        }
        Command::Simples { input } => {
            let (doc, a) = load_algebra(input)?;
            let list = simple_modules(&a, seed)?;
            report(out, name_of(&doc), "simples", document::simple_list_body(&list))?;
            Ok(0)
        }
        Command::End { input } => {
            let (doc, m) = load_module(input)?;
            out.write(&Document::algebra(name_of(&doc).map(|n| format!("End({n})")), &end_algebra(&m)?))?;
            Ok(0)
        }
        Command::Extend { input, field } => {
            let doc = read_document(input)?;
            let target = parse_field(field)?;
            match doc.kind {
                Kind::Module => {
                    let m = module_of(&doc)?;
                    let ctx = extend_algebra(m.algebra(), &embed_find(m.field(), &target)?)?;
                    out.write(&Document::module(name_of(&doc), &extend_module(&m, &ctx)?))?;
                }
                _ => {
                    let a = algebra_of(&doc)?;
                    let ctx = extend_algebra(&a, &embed_find(a.field(), &target)?)?;
                    out.write(&Document::algebra(name_of(&doc), &ctx.extended))?;
                }
            }
            Ok(0)
        }
        Command::Descend { input } => {
            let (doc, v) = load_module(input)?;
            let ctx = base_context(&v)?;
            let w = descend_module(&v, &ctx)?;
            out.write(&Document::module(name_of(&doc), &w.module))?;
            Ok(0)
        }
        Command::WrittenIn { input, subfield, basis } => {
            let (doc, v) = load_module(input)?;
            let e = parse_field(subfield)?;
            let ctx = base_context(&v)?;
            let emb_ef = embed_find(&e, v.field())?;
            let basis = match basis {
                Some(p) => read_vectors(p, v.field())?,
                None => standard_basis(&v),
            };
            match write_in(&v, &ctx, &emb_ef, &basis) {
                Ok(w) => {
                    out.write(&Document::module(name_of(&doc), &w.module))?;
                    Ok(0)
                }
                Err(Error::NotOverE) => {
                    report(out, name_of(&doc), "written-in", json!({ "written_in": false, "subfield": document::field_to_doc(&e) }))?;
                    Ok(1)
                }
                Err(e) => Err(e),
            }
        }
        Command::SplitCheck { input, field } => {
            let (doc, a) = load_algebra(input)?;
            let mut r = match field {
                Some(f) => is_splitting_field(&a, &embed_find(a.field(), &parse_field(f)?)?, seed)?,
                None => is_split(&a, seed)?,
            };
            if let Some(n) = name_of(&doc) {
                r.algebra = n;
            }
            report(out, name_of(&doc), "split", document::split_report_body(&r))?;
            Ok(verdict_code(r.verdict))
        }
        Command::SplitFind { input, max_degree } => {
            let (doc, a) = load_algebra(input)?;
            let mut r = find_splitting_field(&a, *max_degree, seed)?;
            if let Some(n) = name_of(&doc) {
                r.certificate.algebra = n;
            }
            report(out, name_of(&doc), "splitting-field", document::splitting_field_body(&r))?;
            Ok(0)
        }
        Command::ChainVerify { input, middle, top } => {
            let (doc, a) = load_algebra(input)?;
            let e = parse_field(middle)?;
            let f = parse_field(top)?;
            let r = verify_chain_theorem(&a, &embed_find(a.field(), &e)?, &embed_find(&e, &f)?, seed)?;
            report(out, name_of(&doc), "chain", serde_json::to_value(&r).expect("serializable"))?;
            Ok(match (r.consistent, r.side_written_in) {
                (Some(false), _) => 4,
                (None, _) | (_, Verdict::Unknown) => 3,
                _ => verdict_code(r.side_splitting),
            })
        }
        Command::RadicalExtendVerify { input, field } => {
            let (doc, a) = load_algebra(input)?;
            let emb = embed_find(a.field(), &parse_field(field)?)?;
            let r = verify_split_radical(&a, &emb, seed)?;
            report(out, name_of(&doc), "radical-extension", serde_json::to_value(&r).expect("serializable"))?;
            Ok(verdict_code(r.holds()))
        }
        Command::OracleCompare { inputs } => oracle_compare(inputs, seed, out),
        Command::Selftest { criterion } => {
            let ids: Vec<usize> = match criterion {
                Some(c) if (1..=8).contains(c) => vec![*c],
                Some(c) => return Err(Error::BadParams(format!("no criterion {c}"))),
                None => (1..=8).collect(),
            };
            let results: Vec<CriterionResult> = ids
                .iter()
                .map(|&id| {
                    let r = run_criterion(id, seed);
                    eprintln!("{r}");
                    r
                })
                .collect();
            let body = json!({
                "criteria": results.iter().map(|r| json!({
                    "id": r.id, "title": r.title, "passed": r.passed, "cases": r.cases, "detail": r.detail,
                })).collect::<Vec<_>>(),
            });
            report(out, None, "selftest", body)?;
            Ok(if results.iter().any(|r| r.breach) {
                4
            } else {
                verdict_code(results.iter().all(|r| r.passed))
            })
        }
        Command::Examples { out: dir } => {
            io::write_examples(dir)?;
            Ok(0)
        }
    }
}

fn standard_basis(v: &ModuleDesc) -> Vec<Vec<FieldElement>> {
    let f = v.field();
    (0..v.dim()).map(|i| (0..v.dim()).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect()
}

fn oracle_compare(inputs: &[PathBuf], seed: u64, out: &Output) -> Result<i32> {
    let modules: Vec<(String, ModuleDesc)> = if inputs.is_empty() {
        let mut v: Vec<(String, ModuleDesc)> = corpus::bundled_modules()
            .into_iter()
            .filter(|m| m.value.field().is_finite())
            .map(|m| (m.name, m.value))
            .collect();
        v.extend(corpus::random_modules(50, seed)?.into_iter().map(|m| (m.name, m.value)));
        v
    } else {
        inputs
            .iter()
            .map(|p| load_module(p).map(|(d, m)| (d.name.unwrap_or_else(|| p.display().to_string()), m)))
            .collect::<Result<_>>()?
    };
    let mut compared = 0;
    let mut skipped = Vec::new();
    let mut mismatches = Vec::new();
    for (name, m) in &modules {
        let oracle = match oracle_composition_dims(m) {
            Ok(mut d) => {
                d.sort_unstable();
                d
            }
            Err(Error::TooLarge(_)) => {
                skipped.push(name.clone());
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut dims = composition_dims(m, seed)?;
        dims.sort_unstable();
        compared += 1;
        if dims != oracle {
            mismatches.push(json!({ "module": name, "oracle": oracle, "splitter": dims }));
        }
    }
    let ok = mismatches.is_empty();
    report(out, None, "oracle-compare", json!({ "compared": compared, "skipped": skipped, "mismatches": mismatches }))?;
    Ok(if ok { 0 } else { 4 })
}
