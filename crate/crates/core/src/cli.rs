//! The `laundry` command line. [`run`] takes explicit streams so the whole
//! front end can be driven from tests.
//!
//! Exit codes: 0 success, 1 invalid input, 2 internal verification failure.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::braid::{apply_braid_move, BraidMoveSpec, ClosedBraidDiagram};
use crate::error::{Error, Result};
use crate::forms::{gl_form, m_prime, restore_m_from_gl, seifert_matrix, GlForm};
use crate::fuzz::run_fuzz;
use crate::invariants::LinkInvariants;
use crate::laundry_model::{circle_with_chords, interior_first_edges, overlap_graph, twisted_band_chords, CircleWithChords};
use crate::linking::{decode, encode, validate, LinkingMatrix};
use crate::matrix::IntMatrix;
use crate::moves::{apply_matrix_move, MatrixMoveSpec};

#[derive(Parser, Debug)]
#[command(name = "laundry", version, about = "Closed braid diagrams as linking matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Braid word or matrix text; `-` reads standard input.
    input: Option<String>,
    /// Read the input from a file.
    #[arg(long, conflicts_with = "input")]
    file: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Form {
    Mprime,
    Gl,
    Seifert,
}

#[derive(Copy, Clone, Debug, ValueEnum, PartialEq, Eq)]
enum Level {
    Braid,
    Matrix,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Braid word to linking matrix.
    Encode(Input),
    /// Linking matrix to canonical braid word.
    Decode(Input),
    /// Check a matrix against the linking-matrix rules.
    Validate(Input),
    /// Orientable-surface matrix, Gordon-Litherland form or Seifert matrix.
    Convert {
        #[arg(long)]
        to: Form,
        #[command(flatten)]
        input: Input,
    },
    /// Gordon-Litherland form back to the linking matrix.
    Restore(Input),
    /// Apply a braid or matrix move.
    Move {
        /// r2-insert:<col>:<height>:<+|->, r2-delete:<height>, stab:<+|->,
        /// destab, conj or r3:<height>:<l|r>
        #[arg(long = "move")]
        spec: String,
        #[arg(long, value_enum, default_value = "braid")]
        level: Level,
        /// Also print the congruence matrix of size-preserving moves.
        #[arg(long)]
        witness: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Determinant, signature and Alexander polynomial.
    Invariants(Input),
    /// Chord diagram, overlap graph and interior first-edges.
    Gauss {
        /// Remove the crossing-band chords first.
        #[arg(long)]
        drop_twisted: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Draw the chord diagram as SVG.
    Svg {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        drop_twisted: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Check decode∘encode (braid input) or encode∘decode (matrix input).
    Roundtrip(Input),
    /// Run the property suite on seeded random diagrams.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: u64,
    },
}

enum Parsed {
    Braid(ClosedBraidDiagram),
    Matrix(IntMatrix),
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> Result<String> {
    if let Some(path) = &input.file {
        return std::fs::read_to_string(path)
            .map_err(|e| Error::Inconsistent(format!("cannot read {}: {e}", path.display())));
    }
    match input.input.as_deref() {
        Some("-") | None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Inconsistent(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
        Some(text) => Ok(text.to_string()),
    }
}

/// Braid words contain `:`, matrices never do.
fn parse_any(text: &str) -> Result<Parsed> {
    if text.contains(':') {
        Ok(Parsed::Braid(text.trim().parse()?))
    } else {
        Ok(Parsed::Matrix(text.parse()?))
    }
}

fn diagram_of(p: Parsed) -> Result<ClosedBraidDiagram> {
    match p {
        Parsed::Braid(d) => Ok(d),
        Parsed::Matrix(m) => decode(&LinkingMatrix::new(m)?),
    }
}

fn linking_of(p: Parsed) -> Result<LinkingMatrix> {
    match p {
        Parsed::Braid(d) => Ok(encode(&d)),
        Parsed::Matrix(m) => LinkingMatrix::new(m),
    }
}

fn braid_input(input: &Input, stdin: &mut dyn Read) -> Result<ClosedBraidDiagram> {
    diagram_of(parse_any(&read_input(input, stdin)?)?)
}

fn chords_for(d: &ClosedBraidDiagram, drop_twisted: bool) -> CircleWithChords {
    let c = circle_with_chords(d);
    if drop_twisted {
        c.without_chords(&twisted_band_chords(d))
    } else {
        c
    }
}

/// Chord text, then `vertices:`, `edges:` and `interior:` lines.
pub fn gauss_report(c: &CircleWithChords) -> String {
    let g = overlap_graph(c);
    let join = |v: Vec<String>| v.join(" ");
    let mut s = c.to_string();
    let _ = writeln!(s, "vertices: {}", join(g.vertices.iter().map(|v| v.to_string()).collect()));
    let _ = writeln!(s, "edges: {}", join(g.edges.iter().map(|(i, j)| format!("{i}-{j}")).collect()));
    let _ = writeln!(s, "interior: {}", join(interior_first_edges(c).iter().map(|e| e.to_string()).collect()));
    s
}

/// `J` as a horizontal line with the chords as half circles below it.
pub fn chord_svg(c: &CircleWithChords) -> String {
    let points = c.endpoints().len();
    let step = 40.0;
    let margin = 30.0;
    let width = margin * 2.0 + step * (points.saturating_sub(1)) as f64;
    let height = margin * 2.0 + step * points as f64 / 2.0;
    let y = margin;
    let x = |k: usize| margin + step * k as f64;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r#"  <line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="black" stroke-width="2"/>"#,
        x(0),
        x(points.saturating_sub(1))
    );
    for chord in std::iter::once(0).chain(c.chords()) {
        let Some((a, b)) = c.span(chord) else { continue };
        let r = (x(b) - x(a)) / 2.0;
        let color = if chord == 0 { "gray" } else { "steelblue" };
        let _ = writeln!(
            s,
            r#"  <path d="M {} {y} A {r} {r} 0 0 0 {} {y}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            x(a),
            x(b)
        );
    }
    for (k, e) in c.endpoints().iter().enumerate() {
        let _ = writeln!(s, r#"  <circle cx="{}" cy="{y}" r="3" fill="black"/>"#, x(k));
        let _ = writeln!(
            s,
            r#"  <text x="{}" y="{}" font-size="11" text-anchor="middle">{e}</text>"#,
            x(k),
            y - 8.0
        );
    }
    s.push_str("</svg>\n");
    s
}

fn execute(cmd: Command, stdin: &mut dyn Read, out: &mut String) -> Result<()> {
    match cmd {
        Command::Encode(input) => {
            out.push_str(&encode(&braid_input(&input, stdin)?).to_string());
        }
        Command::Decode(input) => {
            let m: IntMatrix = read_input(&input, stdin)?.parse()?;
            let _ = writeln!(out, "{}", decode(&LinkingMatrix::new(m)?)?);
        }
        Command::Validate(input) => {
            let m: IntMatrix = read_input(&input, stdin)?.parse()?;
            let report = validate(&m);
            if !report.is_valid() {
                return Err(Error::InvalidMatrix(report.violations));
            }
            out.push_str("valid\n");
        }
        Command::Convert { to, input } => {
            let p = parse_any(&read_input(&input, stdin)?)?;
            let text = match to {
                Form::Gl => gl_form(&linking_of(p)?).to_string(),
                Form::Mprime => m_prime(&diagram_of(p)?)?.to_string(),
                Form::Seifert => seifert_matrix(&diagram_of(p)?)?.to_string(),
            };
            out.push_str(&text);
        }
        Command::Restore(input) => {
            let f = GlForm::from_matrix(read_input(&input, stdin)?.parse()?)?;
            out.push_str(&restore_m_from_gl(&f)?.to_string());
        }
        Command::Move {
            spec,
            level,
            witness,
            input,
        } => {
            let spec: BraidMoveSpec = spec.parse()?;
            let p = parse_any(&read_input(&input, stdin)?)?;
            match level {
                Level::Braid => {
                    let _ = writeln!(out, "{}", apply_braid_move(&diagram_of(p)?, &spec)?);
                }
                Level::Matrix => {
                    let m = linking_of(p)?;
                    let ms = MatrixMoveSpec::from_braid(&spec, &m)?;
                    let (result, w) = apply_matrix_move(&m, &ms)?;
                    out.push_str(&result.to_string());
                    if witness {
                        match w {
                            Some(w) => {
                                out.push_str("witness\n");
                                out.push_str(&w.matrix().to_string());
                            }
                            None => out.push_str("witness none\n"),
                        }
                    }
                }
            }
        }
        Command::Invariants(input) => {
            let _ = writeln!(out, "{}", LinkInvariants::of(&braid_input(&input, stdin)?)?);
        }
        Command::Gauss { drop_twisted, input } => {
            out.push_str(&gauss_report(&chords_for(&braid_input(&input, stdin)?, drop_twisted)));
        }
        Command::Svg {
            out: path,
            drop_twisted,
            input,
        } => {
            let svg = chord_svg(&chords_for(&braid_input(&input, stdin)?, drop_twisted));
            std::fs::write(&path, svg)
                .map_err(|e| Error::Inconsistent(format!("cannot write {}: {e}", path.display())))?;
            let _ = writeln!(out, "wrote {}", path.display());
        }
        Command::Roundtrip(input) => match parse_any(&read_input(&input, stdin)?)? {
            Parsed::Braid(d) => {
                let back = decode(&encode(&d))?;
                if back != d {
                    return Err(Error::Verification(format!("decode(encode({d})) = {back}")));
                }
                let _ = writeln!(out, "ok {d}");
            }
            Parsed::Matrix(m) => {
                let lm = LinkingMatrix::new(m)?;
                let back = encode(&decode(&lm)?);
                if back != lm {
                    return Err(Error::Verification("encode(decode(M)) differs from M".into()));
                }
                let _ = writeln!(out, "ok {}", decode(&lm)?);
            }
        },
        Command::Fuzz { seed, cases } => {
            let report = run_fuzz(seed, cases);
            out.push_str(&report.to_string());
            if !report.all_passed() {
                return Err(Error::Verification("property failures".into()));
            }
        }
    }
    Ok(())
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut out = String::new();
    let result = execute(cli.command, stdin, &mut out);
    let _ = stdout.write_all(out.as_bytes());
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_internal() {
                2
            } else {
                1
            }
        }
    }
}
