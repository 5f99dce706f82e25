use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use ivp_funnel::gadgets::{decode_with, DecodeConfig, DecodeReport, Source};
use ivp_funnel::io::{
    self, AtPoint, DecodeBody, Document, ExtendBody, ExtendDocument, InstanceFile, IoError, SolveBody, SolveDocument,
    DECODE_FORMAT, EXTEND_FORMAT, SOLVE_FORMAT,
};
use ivp_funnel::suites::{run_suite, SuiteOptions};
use ivp_funnel::{
    enclose_all, extend, BitStream, GadgetRef, IvpInstance, Rhs, SolveConfig,
};

use crate::{Command, Format, OutFlags};

pub const EXIT_NO_LOCAL_BOX: u8 = 2;
pub const EXIT_USAGE: u8 = 3;
pub const EXIT_UNCERTIFIED: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn solve(e: impl std::fmt::Display) -> Failure {
        Failure {
            code: EXIT_NO_LOCAL_BOX,
            message: e.to_string(),
        }
    }

    fn io(e: std::io::Error, path: &Path) -> Failure {
        Failure {
            code: 1,
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Failure {
        Failure::usage(e.to_string())
    }
}

pub fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Solve { instance, at, solve, out } => {
            let cfg = solve.apply(SolveConfig::default())?;
            cmd_solve(&instance, at, &cfg, &out)
        }
        Command::Extend {
            instance,
            rounds,
            solve,
            out,
        } => {
            let cfg = solve.apply(SolveConfig::default())?;
            cmd_extend(&instance, rounds, &cfg, &out)
        }
        Command::Gadget {
            streams,
            cell_budget,
            out,
        } => cmd_gadget(&streams, cell_budget, out.as_deref()),
        Command::Decode {
            result,
            instance,
            bits,
            max_cell,
            solve,
            out,
        } => {
            let base = DecodeConfig::default();
            let cfg = DecodeConfig {
                solve: solve.apply(base.solve)?,
                max_cell,
                ..base
            };
            cmd_decode(&result, &instance, bits, &cfg, &out)
        }
        Command::Verify {
            suite,
            samples,
            seed,
            format,
        } => cmd_verify(&suite, SuiteOptions { samples, seed }, format),
    }
}

fn load(path: &Path) -> Result<(InstanceFile, IvpInstance), Failure> {
    let file = io::read_instance(path)?;
    let inst = file.to_instance()?;
    Ok((file, inst))
}

fn out_dir(out: &OutFlags) -> Result<&Path, Failure> {
    std::fs::create_dir_all(&out.out).map_err(|e| Failure::io(e, &out.out))?;
    Ok(&out.out)
}

fn write(path: PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(&path, text).map_err(|e| Failure::io(e, &path))
}

fn stdout_line(text: &str) {
    let mut s = std::io::stdout().lock();
    let _ = s.write_all(text.as_bytes());
    if !text.ends_with('\n') {
        let _ = s.write_all(b"\n");
    }
    let _ = s.flush();
}

fn cmd_solve(path: &Path, at: Option<Vec<f64>>, cfg: &SolveConfig, out: &OutFlags) -> Result<u8, Failure> {
    let (file, inst) = load(path)?;
    let (x, y) = match at {
        None => (inst.x0, inst.y0.clone()),
        Some(v) if v.len() == inst.dim() + 1 => (v[0], v[1..].to_vec()),
        Some(v) => {
            return Err(Failure::usage(format!(
                "--at needs {} values (x then y), got {}",
                inst.dim() + 1,
                v.len()
            )))
        }
    };
    // every solve failure means no certified local box at this point
    let result = enclose_all(&inst, x, &y, cfg).map_err(Failure::solve)?;
    let dir = out_dir(out)?;
    for (kind, recs) in [("confirmed", &result.confirmed), ("undecided", &result.undecided)] {
        for (k, r) in recs.iter().enumerate() {
            write(dir.join(format!("tube-{kind}-{k:03}.csv")), &r.tube.to_csv())?;
        }
    }
    let cover = result.cover();
    if let Some(c) = &cover {
        write(dir.join("tube-cover.csv"), &c.to_csv())?;
    }
    let summary = serde_json::json!({
        "confirmed": result.confirmed.len(),
        "undecided": result.undecided.len(),
        "pruned": result.pruned,
        "bisections": result.bisections,
        "interval": [result.local_box.a, result.local_box.b],
        "delta": result.local_box.delta,
        "m_bound": result.local_box.m_bound,
    });
    let doc: SolveDocument = Document::new(
        SOLVE_FORMAT,
        SolveBody {
            instance: file,
            config: *cfg,
            at: AtPoint { x, y },
            result,
        },
    );
    write(dir.join("solve-result.json"), &io::to_string(&doc))?;
    match out.format {
        Format::Structured => stdout_line(&summary.to_string()),
        Format::Csv => stdout_line(&cover.map(|c| c.to_csv()).unwrap_or_default()),
    }
    Ok(0)
}

fn cmd_extend(path: &Path, rounds: usize, cfg: &SolveConfig, out: &OutFlags) -> Result<u8, Failure> {
    if rounds == 0 {
        return Err(Failure::usage("--rounds must be at least 1"));
    }
    let (file, inst) = load(path)?;
    let dir = out_dir(out)?.to_path_buf();
    if out.format == Format::Csv {
        stdout_line("round,a,b,left,right");
    }
    let format = out.format;
    let state = extend(&inst, rounds, cfg, |r| match format {
        Format::Structured => stdout_line(&serde_json::to_string(r).expect("records serialize")),
        Format::Csv => stdout_line(&format!(
            "{},{},{},{},{}",
            r.round,
            ivp_funnel::interval::round::exact_decimal(r.a),
            ivp_funnel::interval::round::exact_decimal(r.b),
            r.left.label(),
            r.right.label()
        )),
    })
    .map_err(Failure::solve)?;
    for (side, status) in [("left", &state.left), ("right", &state.right)] {
        if !status.is_growing() {
            eprintln!("{side} end frozen: {status}");
        }
    }
    write(dir.join("glued.csv"), &state.glued_csv())?;
    let doc: ExtendDocument = Document::new(
        EXTEND_FORMAT,
        ExtendBody {
            instance: file,
            config: *cfg,
            state,
        },
    );
    write(dir.join("extension.json"), &io::to_string(&doc))?;
    Ok(0)
}

fn cmd_gadget(streams: &str, cell_budget: u32, out: Option<&Path>) -> Result<u8, Failure> {
    let lists: Vec<Vec<u64>> =
        serde_json::from_str(streams).map_err(|e| Failure::usage(format!("--streams is not a list of lists: {e}")))?;
    let parsed = BitStream::parse_list(&lists).map_err(|e| Failure::usage(e.to_string()))?;
    if cell_budget == 0 {
        return Err(Failure::usage("--cell-budget must be at least 1"));
    }
    let text = io::to_string(&InstanceFile::gadget(&parsed, cell_budget));
    match out {
        Some(p) => write(p.to_path_buf(), &text)?,
        None => stdout_line(&text),
    }
    Ok(0)
}

enum Loaded {
    Solve(Box<SolveDocument>),
    Extend(Box<ExtendDocument>),
}

fn load_result(path: &Path) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    match io::from_str::<SolveDocument>(&text, SOLVE_FORMAT) {
        Ok(d) => Ok(Loaded::Solve(Box::new(d))),
        Err(IoError::Format { .. }) => Ok(Loaded::Extend(Box::new(io::from_str(&text, EXTEND_FORMAT)?))),
        Err(e) => Err(e.into()),
    }
}

fn decode_csv(report: &DecodeReport) -> String {
    let mut s = String::from("index,bit,certified,cell,sample_point,threshold,lo,hi,witness\n");
    for (i, r) in &report.bits {
        let (lo, hi) = r.enclosure.map_or((String::new(), String::new()), |e| (e.lo().to_string(), e.hi().to_string()));
        writeln!(
            s,
            "{i},{},{},{},{},{},{lo},{hi},\"{}\"",
            r.bit,
            r.certified,
            r.cell,
            r.sample_point,
            r.threshold,
            r.witness.as_deref().unwrap_or("")
        )
        .unwrap();
    }
    for i in &report.unavailable {
        writeln!(s, "{i},,false,,,,,,").unwrap();
    }
    s
}

fn cmd_decode(result: &Path, instance: &Path, bits: usize, cfg: &DecodeConfig, out: &OutFlags) -> Result<u8, Failure> {
    let loaded = load_result(result)?;
    let (_, inst) = load(instance)?;
    if !matches!(inst.rhs, Rhs::Gadget(GadgetRef::Parallel { .. })) {
        return Err(Failure::usage("decode needs a parallel gadget instance"));
    }
    let id = result.display().to_string();
    let source = match &loaded {
        Loaded::Solve(d) => Source::Result(&id, &d.body.result),
        Loaded::Extend(d) => Source::Extension(&id, &d.body.state),
    };
    let indices: Vec<usize> = (0..bits).collect();
    let report = match decode_with(&inst, &[source], &indices, cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            DecodeReport {
                bits: Default::default(),
                unavailable: indices.clone(),
            }
        }
    };
    let dir = out_dir(out)?;
    let doc = Document::new(DECODE_FORMAT, DecodeBody { indices, report });
    write(dir.join("decode-report.json"), &io::to_string(&doc))?;
    match out.format {
        Format::Structured => stdout_line(&io::to_string(&doc)),
        Format::Csv => stdout_line(&decode_csv(&doc.body.report)),
    }
    for i in &doc.body.report.unavailable {
        eprintln!("bit {i}: no cell available");
    }
    for (i, r) in doc.body.report.bits.iter().filter(|(_, r)| !r.certified) {
        eprintln!("bit {i}: uncertified (heuristic {})", r.bit);
    }
    Ok(if doc.body.report.all_certified() && doc.body.report.unavailable.is_empty() {
        0
    } else {
        EXIT_UNCERTIFIED
    })
}

fn cmd_verify(suite: &str, opts: SuiteOptions, format: Format) -> Result<u8, Failure> {
    let report = run_suite(suite, &opts).map_err(|e| Failure::usage(e.to_string()))?;
    match format {
        Format::Structured => stdout_line(&io::to_string(&report)),
        Format::Csv => {
            let mut s = String::from("suite,check,passed,margin,detail\n");
            for c in &report.checks {
                let margin = c.margin.map(|m| m.to_string()).unwrap_or_default();
                writeln!(s, "{},\"{}\",{},{margin},\"{}\"", report.suite, c.name, c.passed, c.detail.replace('"', "'"))
                    .unwrap();
            }
            stdout_line(&s);
        }
    }
    Ok(if report.passed { 0 } else { EXIT_UNCERTIFIED })
}
