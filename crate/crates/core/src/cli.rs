//! Command-line front end. `run` is pure: it returns the exit code and the
//! text that `main` prints.
//!
//! Exit codes: 0 success or property true, 1 property false, 2 invalid
//! input, 3 internal error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::diagram::Diagram;
use crate::error::Error;
use crate::oracle::{alexander_from_braid, alexander_from_diagram, components_of_word};
use crate::pipeline::homogenize;
use crate::plumbing::{deplumb, plumb, ShufflePattern};
use crate::poly::{Laurent, LaurentRepr};
use crate::stars::{reduce_to_disc, Star};
use crate::surface::{BraidedSurface, MoveSpec};
use crate::word::{braids_equal, parse_word, Word};

#[derive(Parser, Debug)]
#[command(name = "braidhom", version, about = "Homogeneous braids, braided surfaces and plumbing")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    #[command(subcommand)]
    Braid(BraidCmd),
    #[command(subcommand)]
    Diagram(DiagramCmd),
    #[command(subcommand)]
    Surface(SurfaceCmd),
    #[command(subcommand)]
    Star(StarCmd),
    /// Braided plumbing of two band words.
    Plumb {
        w1: String,
        w2: String,
        #[arg(long)]
        strands1: Option<usize>,
        #[arg(long)]
        strands2: Option<usize>,
        /// Interleaving such as 2121212; default is w1 then w2.
        #[arg(long)]
        pattern: Option<String>,
    },
    /// Split a band word along disc `n1`.
    Deplumb {
        w: String,
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        strands: Option<usize>,
    },
    /// Homogeneous band word for a homogeneous diagram.
    Homogenize {
        diagram: PathBuf,
        #[arg(long)]
        tree: bool,
    },
    #[command(subcommand)]
    Invariant(InvariantCmd),
}

#[derive(Subcommand, Debug)]
enum BraidCmd {
    /// Artin word to band word or back.
    Translate {
        word: String,
        #[arg(long)]
        strands: Option<usize>,
    },
    CheckHomogeneous {
        word: String,
        #[arg(long)]
        strands: Option<usize>,
    },
    Equal {
        u: String,
        v: String,
        #[arg(long)]
        strands: Option<usize>,
    },
    Components {
        word: String,
        #[arg(long)]
        strands: Option<usize>,
    },
    ExponentSum {
        word: String,
        #[arg(long)]
        strands: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum DiagramCmd {
    Seifert { file: PathBuf },
    Homogeneous { file: PathBuf },
    PrimitiveFlat { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum SurfaceCmd {
    FromWord {
        word: String,
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Apply moves such as `slip:3`, `inflate:2:+:0`, `twirl` in order.
    Apply {
        surface: PathBuf,
        #[arg(long = "move", required = true)]
        moves: Vec<String>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    Genus { surface: PathBuf },
}

#[derive(Subcommand, Debug)]
enum StarCmd {
    /// Reduce a star into one disc.
    Reduce {
        surface: PathBuf,
        star: PathBuf,
        #[arg(long)]
        trace: bool,
    },
}

#[derive(clap::Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long)]
    word: Option<String>,
    #[arg(long)]
    diagram: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum InvariantCmd {
    Alexander {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        strands: Option<usize>,
    },
    Components {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        strands: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Reply {
    code: i32,
    text: String,
    json: Value,
}

impl Reply {
    fn ok(text: impl Into<String>, json: Value) -> Reply {
        Reply { code: 0, text: text.into(), json }
    }

    fn check(holds: bool, yes: &str, no: &str, json: Value) -> Reply {
        Reply { code: if holds { 0 } else { 1 }, text: if holds { yes } else { no }.to_string(), json }
    }
}

pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.cmd) {
        Ok(r) => {
            let stdout = if cli.json {
                serde_json::to_string_pretty(&r.json).expect("json output") + "\n"
            } else {
                r.text + "\n"
            };
            Output { code: r.code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = match e {
                Error::Invalid(_) | Error::Precondition { .. } => 2,
                Error::Unsupported(_) | Error::Internal(_) => 3,
            };
            let stderr = if cli.json {
                json!({ "error": e.to_string(), "code": code }).to_string() + "\n"
            } else {
                format!("error: {e}\n")
            };
            Output { code, stdout: String::new(), stderr }
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}

fn load_diagram(path: &Path) -> Result<Diagram, Error> {
    Diagram::from_json(&read(path)?)
}

fn load_surface(path: &Path) -> Result<BraidedSurface, Error> {
    BraidedSurface::from_json(&read(path)?)
}

fn poly_json(p: &Laurent) -> Value {
    json!({ "text": p.to_string(), "polynomial": LaurentRepr::from(p) })
}

fn surface_json(s: &BraidedSurface) -> Value {
    serde_json::to_value(s.to_repr()).expect("surface json")
}

fn dispatch(cmd: Cmd) -> Result<Reply, Error> {
    match cmd {
        Cmd::Braid(c) => braid(c),
        Cmd::Diagram(c) => diagram(c),
        Cmd::Surface(c) => surface(c),
        Cmd::Star(StarCmd::Reduce { surface, star, trace }) => {
            let s = load_surface(&surface)?;
            let phi = Star::from_json(&read(&star)?)?;
            let r = reduce_to_disc(&s, &phi)?;
            let mut text = String::new();
            if trace {
                for t in &r.trace {
                    text.push_str(&format!("{:<16} δ_b={:<3} {}\n", t.label, t.delta_b, t.word));
                }
            }
            text.push_str(&r.surface.to_word().to_string());
            let mut j = json!({
                "word": r.surface.to_word().to_string(),
                "surface": surface_json(&r.surface),
                "star": r.star,
                "steps": r.steps,
                "delta_b": r.star.delta_b(),
            });
            if trace {
                j["trace"] = serde_json::to_value(&r.trace).expect("trace json");
            }
            Ok(Reply::ok(text, j))
        }
        Cmd::Plumb { w1, w2, strands1, strands2, pattern } => {
            let a = parse_word(&w1, strands1)?.to_bkl();
            let b = parse_word(&w2, strands2)?.to_bkl();
            let p = match pattern {
                Some(p) => p.parse()?,
                None => ShufflePattern::concatenation(a.len(), b.len()),
            };
            let w = plumb(&a, &b, &p)?;
            let j = json!({ "word": w.to_string(), "strands": w.strands(), "pattern": p.to_string() });
            Ok(Reply::ok(w.to_string(), j))
        }
        Cmd::Deplumb { w, n1, strands } => {
            let w = parse_word(&w, strands)?.to_bkl();
            let d = deplumb(&w, n1)?;
            let j = json!({
                "first": d.first.to_string(),
                "first_strands": d.first.strands(),
                "second": d.second.to_string(),
                "second_strands": d.second.strands(),
                "pattern": d.pattern.to_string(),
            });
            let text = format!("{}\n{}\n{}", d.first, d.second, d.pattern);
            Ok(Reply::ok(text, j))
        }
        Cmd::Homogenize { diagram, tree } => {
            let d = load_diagram(&diagram)?;
            let h = homogenize(&d)?;
            let mut j = json!({ "word": h.word.to_string(), "strands": h.word.strands() });
            let mut text = h.word.to_string();
            if tree {
                j["tree"] = serde_json::to_value(&h.tree).expect("tree json");
                text.push('\n');
                text.push_str(&serde_json::to_string_pretty(&h.tree).expect("tree json"));
            }
            Ok(Reply::ok(text, j))
        }
        Cmd::Invariant(c) => invariant(c),
    }
}

/// Parses both words over the larger inferred strand count.
fn parse_pair(u: &str, v: &str, strands: Option<usize>) -> Result<(Word, Word), Error> {
    let n = match strands {
        Some(n) => n,
        None => parse_word(u, None)?.strands().max(parse_word(v, None)?.strands()),
    };
    Ok((parse_word(u, Some(n))?, parse_word(v, Some(n))?))
}

fn braid(c: BraidCmd) -> Result<Reply, Error> {
    match c {
        BraidCmd::Translate { word, strands } => {
            let w = parse_word(&word, strands)?;
            let out = match &w {
                Word::Artin(a) => a.to_bkl().to_string(),
                Word::Bkl(b) => b.to_artin().to_string(),
            };
            Ok(Reply::ok(out.clone(), json!({ "input": w.to_string(), "output": out, "strands": w.strands() })))
        }
        BraidCmd::CheckHomogeneous { word, strands } => {
            let w = parse_word(&word, strands)?;
            let h = w.homogeneity();
            let no = format!("not homogeneous: {}", h.mixed.join(" "));
            let j = json!({ "homogeneous": h.homogeneous, "mixed": h.mixed });
            Ok(Reply::check(h.homogeneous, "homogeneous", &no, j))
        }
        BraidCmd::Equal { u, v, strands } => {
            let (a, b) = parse_pair(&u, &v, strands)?;
            let eq = braids_equal(&a.to_artin(), &b.to_artin())?;
            Ok(Reply::check(eq, "equal", "not equal", json!({ "equal": eq })))
        }
        BraidCmd::Components { word, strands } => {
            let w = parse_word(&word, strands)?;
            let k = components_of_word(&w);
            let cycles = w.permutation().cycles();
            Ok(Reply::ok(k.to_string(), json!({ "components": k, "cycles": cycles })))
        }
        BraidCmd::ExponentSum { word, strands } => {
            let w = parse_word(&word, strands)?;
            let e = w.exponent_sum();
            Ok(Reply::ok(e.to_string(), json!({ "exponent_sum": e })))
        }
    }
}

fn diagram(c: DiagramCmd) -> Result<Reply, Error> {
    let load = |p: &Path| -> Result<_, Error> { load_diagram(p)?.seifert() };
    match c {
        DiagramCmd::Seifert { file } => {
            let r = load(&file)?.report();
            let j = serde_json::to_value(&r).expect("report json");
            Ok(Reply::ok(serde_json::to_string_pretty(&j).expect("report json"), j))
        }
        DiagramCmd::Homogeneous { file } => {
            let s = load(&file)?;
            let h = s.is_homogeneous();
            let j = json!({ "homogeneous": h, "block_signs": s.block_signs() });
            Ok(Reply::check(h, "homogeneous", "not homogeneous", j))
        }
        DiagramCmd::PrimitiveFlat { file } => {
            let s = load(&file)?;
            let p = s.is_primitive_flat();
            let j = json!({ "primitive_flat": p, "one_sign": s.all_one_sign(), "max_depth": s.nesting_forest().max_depth() });
            Ok(Reply::check(p, "primitive flat", "not primitive flat", j))
        }
    }
}

fn surface(c: SurfaceCmd) -> Result<Reply, Error> {
    let emit = |s: &BraidedSurface, svg: Option<PathBuf>| -> Result<Reply, Error> {
        if let Some(p) = svg {
            write(&p, &s.to_svg())?;
        }
        let j = surface_json(s);
        Ok(Reply::ok(s.to_json(), j))
    };
    match c {
        SurfaceCmd::FromWord { word, strands, svg } => {
            let w = parse_word(&word, strands)?.to_bkl();
            emit(&BraidedSurface::from_word(&w), svg)
        }
        SurfaceCmd::Apply { surface, moves, svg } => {
            let mut s = load_surface(&surface)?;
            for m in &moves {
                s = s.apply(MoveSpec::parse(m)?)?;
            }
            emit(&s, svg)
        }
        SurfaceCmd::Genus { surface } => {
            let g = load_surface(&surface)?.euler_genus()?;
            let text = format!("chi {} boundary {} genus {}", g.chi, g.boundary_components, g.genus);
            Ok(Reply::ok(text, serde_json::to_value(g).expect("genus json")))
        }
    }
}

fn invariant(c: InvariantCmd) -> Result<Reply, Error> {
    let (source, strands, alexander) = match c {
        InvariantCmd::Alexander { source, strands } => (source, strands, true),
        InvariantCmd::Components { source, strands } => (source, strands, false),
    };
    if let Some(w) = source.word {
        let w = parse_word(&w, strands)?;
        if alexander {
            let p = alexander_from_braid(&w)?;
            Ok(Reply::ok(p.to_string(), poly_json(&p)))
        } else {
            let k = components_of_word(&w);
            Ok(Reply::ok(k.to_string(), json!({ "components": k })))
        }
    } else {
        let d = load_diagram(&source.diagram.expect("clap requires a source"))?;
        if alexander {
            let p = alexander_from_diagram(&d)?;
            Ok(Reply::ok(p.to_string(), poly_json(&p)))
        } else {
            let k = d.link_components()?;
            Ok(Reply::ok(k.to_string(), json!({ "components": k })))
        }
    }
}
