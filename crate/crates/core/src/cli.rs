//! Batch front end. `run` parses arguments, reads documents, dispatches and renders.
//!
//! Exit codes: 0 success, 1 mathematical failure (invalid object, unsupported input, a
//! failing table line), 2 I/O, usage or parse error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::adams::{adams_cyclic_hom, adams_dihedral, generator_table};
use crate::burnside::{hasse_decompose, named, restrict, BurnsideElement, DihedralBurnside};
use crate::error::{Error, Result};
use crate::format::{self, Document};
use crate::model_c::{hom_set_c, tensor_c, CObject};
use crate::model_d::{hom_ext, homology_d, tensor_d, truncated::hom_ext_truncated, DObject};
use crate::model_t::{cover, dual, hom_set, hom_window, is_dualisable, tensor_t, TObject};

/// Set to any non-empty value other than `0` for progress notes on stderr.
pub const VERBOSE_ENV: &str = "O2MODEL_VERBOSE";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "o2model", version, about = "Algebraic models for rational O(2)-spectra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Degrees `lo:hi` for finite hom tables.
    #[arg(long, global = true, value_parser = parse_window, allow_hyphen_values = true)]
    pub degree_window: Option<(i64, i64)>,
    /// Size of the finite oracle for dihedral Hom/Ext.
    #[arg(long, global = true)]
    pub truncation: Option<u64>,
    /// Input documents, in addition to positional ones.
    #[arg(long = "input", global = true)]
    pub inputs: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the invariants of an object.
    Validate { files: Vec<PathBuf> },
    /// Tensor product of two objects of the same model.
    Tensor { files: Vec<PathBuf> },
    /// Degreewise dimensions of the maps between two objects.
    Hom { files: Vec<PathBuf> },
    /// Ext between dihedral objects.
    Ext { files: Vec<PathBuf> },
    /// Homology of a dihedral object.
    Homology { files: Vec<PathBuf> },
    /// Primitive idempotents of A(D_2n).
    Idempotents {
        #[arg(long)]
        n: u64,
    },
    /// Restrict a Burnside element (a name such as `e_C`, `e_3`, `f_2`, or a file) to D_2n.
    Restrict {
        #[arg(long)]
        n: u64,
        element: Option<String>,
    },
    /// Split a Burnside element into its germ and its values at SO(2) and O(2).
    Hasse { element: Option<String> },
    /// A wide sphere mapping onto a given element.
    Cover {
        files: Vec<PathBuf>,
        #[arg(long)]
        element: PathBuf,
    },
    /// The functional dual of a torus object.
    Dual { files: Vec<PathBuf> },
    /// Hom and Ext terms of the Adams short exact sequence.
    Adams { files: Vec<PathBuf> },
    /// Check maps between the standard dihedral generators against their known dimensions.
    GeneratorTable {
        #[arg(long, default_value_t = 4)]
        max_power: u32,
    },
}

fn parse_window(s: &str) -> std::result::Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower degree {lo:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper degree {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Exit code for a failure: parse problems are 2, mathematical ones 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        _ => 1,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let verbose = std::env::var(VERBOSE_ENV).is_ok_and(|v| !v.is_empty() && v != "0");
    let mut log = String::new();
    match dispatch(&cli, verbose, &mut log) {
        Ok((doc, failed)) => {
            let stdout = match cli.format {
                OutputFormat::Text => format::render_text(&doc),
                OutputFormat::Machine => format::print(&doc),
            };
            Outcome {
                code: if failed { 1 } else { 0 },
                stdout,
                stderr: log,
            }
        }
        Err(e) => {
            log.push_str(&format!("error: {e}\n"));
            Outcome {
                code: exit_code(&e),
                stdout: String::new(),
                stderr: log,
            }
        }
    }
}

enum Obj {
    Burnside(BurnsideElement),
    Dihedral(DihedralBurnside),
    T(TObject),
    C(CObject),
    D(DObject),
    Other(Document),
}

fn read(path: &PathBuf) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::parse(format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| match e {
        Error::Parse(m) => Error::parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn load(doc: Document) -> Result<Obj> {
    Ok(match doc {
        Document::Burnside(d) => Obj::Burnside(format::burnside_from_doc(&d)?),
        Document::DihedralBurnside(d) => Obj::Dihedral(format::dihedral_from_doc(&d)?),
        Document::TObject(d) => Obj::T(format::t_from_doc(&d)?),
        Document::CObject(d) => Obj::C(format::c_from_doc(&d)?),
        Document::DObject(d) => Obj::D(format::d_from_doc(&d)?),
        other => Obj::Other(other),
    })
}

fn inputs(cli: &Cli, files: &[PathBuf], want: usize, verbose: bool, log: &mut String) -> Result<Vec<Obj>> {
    let all: Vec<&PathBuf> = cli.inputs.iter().chain(files).collect();
    if all.len() != want {
        return Err(Error::parse(format!("expected {want} input file(s), got {}", all.len())));
    }
    let mut out = Vec::new();
    for p in all {
        let doc = read(p)?;
        if verbose {
            log.push_str(&format!("read {} ({})\n", p.display(), doc.kind()));
        }
        out.push(load(doc).map_err(|e| e.context(p.display()))?);
    }
    Ok(out)
}

fn burnside_arg(cli: &Cli, name: &Option<String>) -> Result<BurnsideElement> {
    let from_file = |p: &PathBuf| match load(read(p)?)? {
        Obj::Burnside(b) => Ok(b),
        _ => Err(Error::unsupported("expected a burnside document")),
    };
    match (name, cli.inputs.as_slice()) {
        (Some(n), []) if std::path::Path::new(n).is_file() => from_file(&PathBuf::from(n)),
        (Some(n), []) => named(n),
        (None, [p]) => from_file(p),
        _ => Err(Error::parse("expected one Burnside element")),
    }
}

fn t_window(a: &TObject, b: &TObject, cli: &Cli) -> (i64, i64) {
    cli.degree_window.or_else(|| hom_window(a, b)).unwrap_or((0, 0))
}

fn hom_ext_doc(a: &DObject, b: &DObject, cli: &Cli) -> Result<Document> {
    let he = hom_ext(a, b)?;
    let truncated = match cli.truncation {
        None => None,
        Some(k) => {
            let t = hom_ext_truncated(a, b, k)?;
            Some(format::TruncatedDoc {
                truncation: k,
                hom: t.iter().filter(|(_, v)| v.0 > 0).map(|(&d, v)| (d, v.0)).collect(),
                ext: t.iter().filter(|(_, v)| v.1 > 0).map(|(&d, v)| (d, v.1)).collect(),
            })
        }
    };
    Ok(Document::HomExt(format::HomExtDoc {
        hom: format::sections_doc(&he.hom),
        ext: he.ext.dims().clone(),
        ext_all_germs: format::tail_doc(&he.ext_all_germs),
        truncated,
    }))
}

fn mismatch(what: &str) -> Error {
    Error::unsupported(format!("{what} needs two objects of the same supported kind"))
}

fn dispatch(cli: &Cli, verbose: bool, log: &mut String) -> Result<(Document, bool)> {
    let ok = |d: Document| Ok((d, false));
    match &cli.command {
        Command::Validate { files } => {
            let [obj] = <[Obj; 1]>::try_from(inputs(cli, files, 1, verbose, log)?).ok().unwrap();
            let (object, facts) = match obj {
                Obj::Burnside(b) => ("burnside", vec![format!("idempotent: {}", b.is_idempotent())]),
                Obj::Dihedral(d) => ("dihedral_burnside", vec![format!("D_{}", 2 * d.n)]),
                Obj::T(t) => (
                    "t_object",
                    vec![
                        format!("vertex dimension: {}", t.vertex.len()),
                        format!("dualisable: {}", is_dualisable(&t)?),
                    ],
                ),
                Obj::C(c) => ("c_object", vec![format!("vertex dimension: {}", c.base.vertex.len())]),
                Obj::D(d) => (
                    "d_object",
                    vec![
                        format!("bound: {}", d.bound()),
                        format!("zero differential: {}", d.has_zero_differential()),
                    ],
                ),
                Obj::Other(doc) => (doc.kind(), vec![]),
            };
            ok(Document::Validation(format::ValidationDoc {
                object: object.to_string(),
                facts,
            }))
        }
        Command::Tensor { files } => match <[Obj; 2]>::try_from(inputs(cli, files, 2, verbose, log)?).ok().unwrap() {
            [Obj::Burnside(a), Obj::Burnside(b)] => ok(Document::Burnside(format::burnside_doc(&a.mul(&b)))),
            [Obj::Dihedral(a), Obj::Dihedral(b)] if a.n == b.n => {
                ok(Document::DihedralBurnside(format::dihedral_doc(&a.mul(&b))))
            }
            [Obj::T(a), Obj::T(b)] => ok(Document::TObject(format::t_doc(&tensor_t(&a, &b)?))),
            [Obj::C(a), Obj::C(b)] => ok(Document::CObject(format::c_doc(&tensor_c(&a, &b)?))),
            [Obj::D(a), Obj::D(b)] => ok(Document::DObject(format::d_doc(&tensor_d(&a, &b)))),
            _ => Err(mismatch("tensor")),
        },
        Command::Hom { files } => match <[Obj; 2]>::try_from(inputs(cli, files, 2, verbose, log)?).ok().unwrap() {
            [Obj::T(a), Obj::T(b)] => {
                let (lo, hi) = t_window(&a, &b, cli);
                let mut dims = format::Dims::new();
                for t in lo..=hi {
                    dims.insert(t, hom_set(&a, &b, t)?.dim());
                }
                ok(Document::HomDims(format::HomDimsDoc { dims }))
            }
            [Obj::C(a), Obj::C(b)] => {
                let (lo, hi) = t_window(&a.base, &b.base, cli);
                let mut dims = format::Dims::new();
                for t in lo..=hi {
                    dims.insert(t, hom_set_c(&a, &b, t)?.dim());
                }
                ok(Document::HomDims(format::HomDimsDoc { dims }))
            }
            [Obj::D(a), Obj::D(b)] => ok(hom_ext_doc(&a, &b, cli)?),
            _ => Err(mismatch("hom")),
        },
        Command::Ext { files } => match <[Obj; 2]>::try_from(inputs(cli, files, 2, verbose, log)?).ok().unwrap() {
            [Obj::D(a), Obj::D(b)] => ok(hom_ext_doc(&a, &b, cli)?),
            [Obj::C(_), Obj::C(_)] => Err(Error::unsupported("Ext in the cyclic model is not computed")),
            _ => Err(mismatch("ext")),
        },
        Command::Homology { files } => match <[Obj; 1]>::try_from(inputs(cli, files, 1, verbose, log)?).ok().unwrap() {
            [Obj::D(a)] => ok(Document::DObject(format::d_doc(&homology_d(&a)))),
            _ => Err(Error::unsupported("homology needs a d_object")),
        },
        Command::Idempotents { n } => {
            if *n == 0 {
                return Err(Error::invalid("n must be at least 1"));
            }
            ok(Document::Idempotents(format::IdempotentsDoc {
                n: *n,
                elements: DihedralBurnside::idempotents(*n).iter().map(format::dihedral_doc).collect(),
            }))
        }
        Command::Restrict { n, element } => {
            let e = burnside_arg(cli, element)?;
            ok(Document::DihedralBurnside(format::dihedral_doc(&restrict(&e, *n)?)))
        }
        Command::Hasse { element } => {
            let h = hasse_decompose(&burnside_arg(cli, element)?);
            let doc = format::burnside_doc(&BurnsideElement::new(h.corner.0.clone(), h.germ.clone()));
            ok(Document::Hasse(format::HasseDoc {
                germ: doc.dihedral,
                so2: format::Q(h.corner.0),
                o2: format::Q(h.corner.1),
            }))
        }
        Command::Cover { files, element } => {
            let [obj] = <[Obj; 1]>::try_from(inputs(cli, files, 1, verbose, log)?).ok().unwrap();
            let Obj::T(a) = obj else {
                return Err(Error::unsupported("cover needs a t_object"));
            };
            let n = match read(element)? {
                Document::ModuleElement(d) => format::element_from_doc(&d)?,
                _ => return Err(Error::parse("--element must be a module_element document")),
            };
            let r = cover(&a, &n)?;
            ok(Document::Cover(format::CoverDoc {
                projective: is_dualisable(&r.sphere)?,
                sphere: format::t_doc(&r.sphere),
                augmented: r.augmented.clone(),
                exponents: format::GermDoc {
                    exceptional: r.exponents.exceptional().clone(),
                    generic: *r.exponents.generic(),
                },
            }))
        }
        Command::Dual { files } => match <[Obj; 1]>::try_from(inputs(cli, files, 1, verbose, log)?).ok().unwrap() {
            [Obj::T(a)] => {
                if !is_dualisable(&a)? {
                    return Err(Error::invalid("the nub is not finitely generated projective, so the object is not dualisable"));
                }
                ok(Document::TObject(format::t_doc(&dual(&a)?)))
            }
            _ => Err(Error::unsupported("dual needs a t_object")),
        },
        Command::Adams { files } => match <[Obj; 2]>::try_from(inputs(cli, files, 2, verbose, log)?).ok().unwrap() {
            [Obj::D(x), Obj::D(y)] => ok(Document::Adams(format::adams_doc(&adams_dihedral(&x, &y)?))),
            [Obj::C(x), Obj::C(y)] => {
                let (lo, hi) = t_window(&x.base, &y.base, cli);
                ok(Document::Adams(format::adams_doc(&adams_cyclic_hom(&x, &y, lo, hi)?)))
            }
            _ => Err(mismatch("adams")),
        },
        Command::GeneratorTable { max_power } => {
            let lines = generator_table(*max_power)?;
            let all_pass = lines.iter().all(|l| l.pass);
            Ok((
                Document::GeneratorTable(format::TableDoc {
                    lines: lines.iter().map(format::line_doc).collect(),
                    all_pass,
                }),
                !all_pass,
            ))
        }
    }
}
