//! The `symdyn` command line: argument parsing, dispatch and exit codes.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use symdyn_core::check::{check_into, window_diameter};
use symdyn_core::freegroup::{describe, SearchParams, SiVerdict};
use symdyn_core::glue::{build_retraction, fep_check, stitch, with_blank, FepVerdict};
use symdyn_core::homotopy::verify_contraction_with;
use symdyn_core::onedim::analyze_1d;
use symdyn_core::sft::DEFAULT_BUDGET;
use symdyn_core::zddim::{corner_partition, greedy_net_completion, is_net, zd_coloring, Points, Torus};
use symdyn_core::{Error, Group, Homotopy, PeriodicConfig, Sft, Sym, Verdict};

use crate::format::{
    read_json, write_json, FormatError, GroupKind, GroupSpec, HomotopyFile, HomotopySpec, MapFile, MapSpec, SftFile,
};
use crate::plot::write_grid;
use crate::report::{
    numeric, sft_summary, witness_json, Outcome, Report, Timing, EXIT_CANDIDATES, EXIT_COUNTEREXAMPLE,
    EXIT_MALFORMED, EXIT_PASS, EXIT_UNKNOWN, VERSION,
};
use crate::search::search_parallel;

/// Environment variable capping every enumeration budget.
pub const BUDGET_ENV: &str = "SYMDYN_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "symdyn", version, about = "Symbolic dynamics toolkit: SFTs, block maps and contraction homotopies")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Summarize an SFT: safe symbols, fixed points and, on the line, mixing data.
    Analyze {
        sft: PathBuf,
        #[arg(long, default_value_t = 12)]
        period_bound: usize,
    },
    /// Write a builtin homotopy descriptor.
    HomotopyBuild(BuildArgs),
    /// Verify a homotopy descriptor as a contraction.
    HomotopyVerify {
        homotopy: PathBuf,
        #[arg(long)]
        margin: Option<usize>,
        /// Also prove h(t, x, x) = x.
        #[arg(long)]
        diagonal: bool,
    },
    /// Build a retraction of the full shift onto an SFT.
    RetractBuild {
        #[arg(long)]
        sft: PathBuf,
        #[arg(long)]
        homotopy: PathBuf,
        /// Name of a symbol whose constant configuration lies in the SFT.
        #[arg(long)]
        fixed: String,
        #[arg(long, default_value_t = 3)]
        cap: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Stitch partial morphisms into the target with blank `#`.
    Stitch {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        homotopy: PathBuf,
        #[arg(long = "map", required = true, num_args = 1..)]
        maps: Vec<PathBuf>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Build x -> h(t(g x), f x, g x) onto a contractible target.
    FactorBuild {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        homotopy: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check the finite extension property with a given gap.
    FepCheck {
        sft: PathBuf,
        #[arg(long, default_value_t = 1)]
        gap: usize,
        #[arg(long, default_value_t = 5)]
        radius: usize,
    },
    /// Random search for strongly irreducible free-group SFTs without periodic points.
    FreeSearch {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        alphabet: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        rmax: usize,
        #[arg(long, default_value_t = 3)]
        degree_bound: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write one line per SFT to this file.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Build and check the periodic (d+1)-coloring with finite r-components.
    ZdColoring {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        #[arg(long = "N")]
        n: usize,
    },
    /// Greedy net completion on a torus.
    Net {
        /// Torus side lengths, e.g. `200,200`.
        #[arg(long)]
        torus: String,
        #[arg(long)]
        r: usize,
        /// Starting packing, one point per line.
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Also partition the torus into corner cells.
        #[arg(long)]
        partition: bool,
    },
    /// Render images.
    Plot {
        #[command(subcommand)]
        what: PlotCmd,
    },
}

#[derive(Args, Debug)]
struct BuildArgs {
    /// naive, safe-symbol, z0, mixing, burton-steif or coloring.
    #[arg(long)]
    name: String,
    #[arg(long)]
    sft: Option<PathBuf>,
    /// Safe or zero symbol name.
    #[arg(long)]
    symbol: Option<String>,
    /// line, grid or free.
    #[arg(long, default_value = "line")]
    group: String,
    #[arg(long, default_value_t = 1)]
    rank: usize,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Lift time to this many symbols.
    #[arg(long)]
    lift: Option<usize>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum PlotCmd {
    /// The plane coloring of zd-coloring over one period.
    Zd {
        #[arg(long)]
        r: usize,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, short)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        scale: usize,
    },
    /// A point set on a plane torus.
    Points {
        #[arg(long)]
        torus: String,
        #[arg(long)]
        points: PathBuf,
        #[arg(long, short)]
        out: PathBuf,
        #[arg(long, default_value_t = 2)]
        scale: usize,
    },
    /// Rows h(t_k, x, y) of a line homotopy, where t_k is 1 on the first k cells of a period.
    Sweep {
        homotopy: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 32)]
        width: usize,
        #[arg(long, short)]
        out: PathBuf,
        #[arg(long, default_value_t = 8)]
        scale: usize,
    },
}

/// Command failures, mapped to exit codes.
#[derive(Debug, thiserror::Error)]
enum Fail {
    #[error("{0}")]
    Malformed(String),
    #[error("{0}")]
    Budget(String),
}

impl From<FormatError> for Fail {
    fn from(e: FormatError) -> Fail {
        match e {
            FormatError::Core(c) => c.into(),
            other => Fail::Malformed(other.to_string()),
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::Budget { .. } => Fail::Budget(e.to_string()),
            Error::Input(m) => Fail::Malformed(m),
        }
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Fail {
        Fail::Malformed(e.to_string())
    }
}

type CmdResult = Result<(Value, Outcome), Fail>;

fn malformed<T>(msg: impl Into<String>) -> Result<T, Fail> {
    Err(Fail::Malformed(msg.into()))
}

/// Budget ceiling from the environment, or the library default.
fn budget() -> Result<u64, Fail> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s.trim().parse().or_else(|_| malformed(format!("{BUDGET_ENV}={s:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run(argv: &[String]) -> (i32, Report) {
    let start = Instant::now();
    let echo: Vec<String> = argv.iter().skip(1).cloned().collect();
    let command = echo.first().cloned().unwrap_or_default();
    let (params, out) = match Cli::try_parse_from(argv) {
        Ok(cli) => match dispatch(cli.cmd) {
            Ok(r) => r,
            Err(f) => (Value::Null, failure(f)),
        },
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_MALFORMED,
            };
            let verdict = if code == EXIT_PASS { "help" } else { "malformed" };
            (Value::Null, Outcome::new(verdict, code, json!({ "message": e.render().to_string() })))
        }
    };
    let report = Report {
        command,
        argv: echo,
        params,
        verdict: out.verdict,
        exit_code: out.exit_code,
        details: out.details,
        witness: out.witness,
        timing: Timing { seconds: start.elapsed().as_secs_f64() },
        version: VERSION.into(),
    };
    (report.exit_code, report)
}

fn failure(f: Fail) -> Outcome {
    match f {
        Fail::Malformed(m) => Outcome::new("malformed", EXIT_MALFORMED, json!({ "error": m })),
        Fail::Budget(m) => Outcome::new("unknown", EXIT_UNKNOWN, json!({ "reason": m })),
    }
}

fn dispatch(cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::Analyze { sft, period_bound } => analyze(&sft, period_bound),
        Cmd::HomotopyBuild(a) => homotopy_build(a),
        Cmd::HomotopyVerify { homotopy, margin, diagonal } => homotopy_verify(&homotopy, margin, diagonal),
        Cmd::RetractBuild { sft, homotopy, fixed, cap, out } => retract_build(&sft, &homotopy, &fixed, cap, out),
        Cmd::Stitch { source, target, homotopy, maps, out } => stitch_cmd(&source, &target, &homotopy, &maps, out),
        Cmd::FactorBuild { f, g, source, target, homotopy, out } => factor_build(&f, &g, &source, &target, &homotopy, out),
        Cmd::FepCheck { sft, gap, radius } => fep(&sft, gap, radius),
        Cmd::FreeSearch { k, alphabet, density, count, rmax, degree_bound, seed, jobs, log } => {
            let p = SearchParams { k, alphabet, density, count, rmax, degree_bound, seed };
            free_search(p, jobs, log)
        }
        Cmd::ZdColoring { d, r, n } => zd(d, r, n),
        Cmd::Net { torus, r, points, horizon, out, partition } => net(&torus, r, points, horizon, out, partition),
        Cmd::Plot { what } => plot(what),
    }
}

fn path(p: &Path) -> Value {
    json!(p.display().to_string())
}

fn verdict_outcome(v: &Verdict, witness: impl FnOnce(&symdyn_core::Witness) -> Value, details: Value) -> Outcome {
    match v {
        Verdict::Proved => Outcome::new("proved", EXIT_PASS, details),
        Verdict::Counterexample(w) => Outcome::new("counterexample", EXIT_COUNTEREXAMPLE, details).with_witness(witness(w)),
        Verdict::Unknown(r) => {
            let mut d = details;
            d["reason"] = json!(r);
            Outcome::new("unknown", EXIT_UNKNOWN, d)
        }
    }
}

fn analyze(file: &Path, period_bound: usize) -> CmdResult {
    let x: Sft = read_json::<SftFile>(file)?.build()?;
    let params = json!({ "sft": path(file), "period_bound": period_bound });
    let names = |ss: Vec<Sym>| -> Vec<String> { ss.into_iter().map(|s| x.alphabet[s as usize].clone()).collect() };
    let safe = names((0..x.size() as Sym).filter(|&s| x.check_safe_symbol(s).is_ok()).collect());
    let fixed = names((0..x.size() as Sym).filter(|&s| x.has_fixed_point(s)).collect());
    let mut details = sft_summary(&x);
    details["safe_symbols"] = json!(safe);
    details["fixed_points"] = json!(fixed);
    if x.group == Group::Line {
        let r = analyze_1d(&x, period_bound)?;
        details["line"] = json!({
            "empty": r.empty,
            "essential_alphabet": names(r.essential_alphabet),
            "vertices": r.vertices,
            "transitive": r.transitive,
            "mixing": r.mixing,
            "gap": r.gap,
            "period": r.period,
            "period_set": r.period_set,
        });
    }
    Ok((params, Outcome::new("analyzed", EXIT_PASS, details)))
}

fn homotopy_build(a: BuildArgs) -> CmdResult {
    let params = json!({
        "name": a.name, "sft": a.sft.as_deref().map(path), "symbol": a.symbol, "group": a.group,
        "rank": a.rank, "m": a.m, "k": a.k, "lift": a.lift, "out": a.out.as_deref().map(path),
    });
    let sft = || -> Result<SftFile, Fail> {
        match &a.sft {
            Some(p) => Ok(read_json::<SftFile>(p)?),
            None => malformed(format!("--sft is required for {}", a.name)),
        }
    };
    let symbol = || -> Result<String, Fail> { a.symbol.clone().map_or_else(|| malformed("--symbol is required"), Ok) };
    let kind = match a.group.as_str() {
        "line" => GroupKind::Line,
        "grid" => GroupKind::Grid,
        "free" => GroupKind::Free,
        g => return malformed(format!("unknown group kind {g:?}")),
    };
    let group = GroupSpec { kind, rank: a.rank };
    let need = |v: Option<usize>, flag: &str| v.map_or_else(|| malformed(format!("--{flag} is required")), Ok);
    let mut spec = match a.name.as_str() {
        "naive" => HomotopySpec::Naive { sft: sft()? },
        "safe-symbol" => HomotopySpec::SafeSymbol { sft: sft()?, safe: symbol()? },
        "z0" => HomotopySpec::Z0 { sft: sft()?, zero: symbol()? },
        "mixing" => HomotopySpec::Mixing { sft: sft()? },
        "burton-steif" => HomotopySpec::BurtonSteif { group, m: need(a.m, "m")? },
        "coloring" => HomotopySpec::Coloring { group, k: need(a.k, "k")? },
        n => return malformed(format!("unknown homotopy {n:?}")),
    };
    if let Some(m) = a.lift {
        spec = HomotopySpec::Lift { inner: Box::new(spec), m };
    }
    let h = Homotopy::from_desc(&spec.desc()?)?;
    let file = HomotopyFile::of(&h)?;
    if let Some(o) = &a.out {
        write_json(o, &file)?;
    }
    let details = json!({
        "time": h.time,
        "tracks": h.tracks(),
        "neighborhood": h.map.nbhd.len(),
        "sft": sft_summary(&h.sft),
        "homotopy": file,
    });
    Ok((params, Outcome::new("built", EXIT_PASS, details)))
}

fn homotopy_verify(file: &Path, margin: Option<usize>, diagonal: bool) -> CmdResult {
    let params = json!({ "homotopy": path(file), "margin": margin, "diagonal": diagonal });
    let h = read_json::<HomotopyFile>(file)?.build()?;
    let v = verify_contraction_with(&h, margin, diagonal, budget()?);
    let mut alphabets = vec![numeric(h.time)];
    alphabets.extend(std::iter::repeat_n(h.sft.alphabet.clone(), h.tracks()));
    let details = json!({ "time": h.time, "neighborhood": h.map.nbhd.len(), "sft": sft_summary(&h.sft) });
    let w = |w: &symdyn_core::Witness| witness_json(h.sft.group, w, &alphabets, &h.sft.alphabet);
    Ok((params, verdict_outcome(&v, w, details)))
}

fn retract_build(sft: &Path, hfile: &Path, fixed: &str, cap: usize, out: Option<PathBuf>) -> CmdResult {
    let params = json!({ "sft": path(sft), "homotopy": path(hfile), "fixed": fixed, "cap": cap, "out": out.as_deref().map(path) });
    let sft_file: SftFile = read_json(sft)?;
    let x = sft_file.build()?;
    let hf: HomotopyFile = read_json(hfile)?;
    let h = hf.build()?;
    let Some(c) = x.symbol(fixed) else {
        return malformed(format!("{fixed:?} is not a symbol of the SFT"));
    };
    if !x.has_fixed_point(c) {
        return malformed(format!("the constant configuration of {fixed:?} is not in the SFT"));
    }
    match build_retraction(&x, &h, c, cap) {
        Ok(r) => {
            let file = MapFile::Builtin(MapSpec::Retraction { sft: sft_file, homotopy: hf, fixed: fixed.into(), cap: r.radius });
            if let Some(o) = &out {
                write_json(o, &file)?;
            }
            let details = json!({ "radius": r.radius, "neighborhood": r.map.nbhd.len() });
            Ok((params, Outcome::new("proved", EXIT_PASS, details)))
        }
        Err(Error::Input(m)) if m.starts_with("no retraction") => {
            Ok((params, Outcome::new("unknown", EXIT_UNKNOWN, json!({ "reason": m }))))
        }
        Err(e) => Err(e.into()),
    }
}

fn stitch_cmd(source: &Path, target: &Path, hfile: &Path, maps: &[PathBuf], out: Option<PathBuf>) -> CmdResult {
    let params = json!({
        "source": path(source), "target": path(target), "homotopy": path(hfile),
        "maps": maps.iter().map(|m| path(m)).collect::<Vec<_>>(), "out": out.as_deref().map(path),
    });
    let x = read_json::<SftFile>(source)?.build()?;
    let yf: SftFile = read_json(target)?;
    let y = yf.build()?;
    let hf: HomotopyFile = read_json(hfile)?;
    let h = hf.build()?;
    let files = maps.iter().map(|m| read_json::<MapFile>(m)).collect::<Result<Vec<_>, _>>()?;
    let parts = files.iter().map(MapFile::build).collect::<Result<Vec<_>, _>>()?;
    if parts.iter().any(|f| f.sources != vec![x.size()]) {
        return malformed("every partial morphism must read one track of the source SFT");
    }
    let k = stitch(&parts, &y, &h)?;
    let ysharp = with_blank(&y);
    let v = check_into(&k, &x, &ysharp, window_diameter(&y.window));
    if v.is_proved() {
        if let Some(o) = &out {
            write_json(o, &MapFile::Builtin(MapSpec::Stitch { parts: files, target: yf, homotopy: hf }))?;
        }
    }
    let details = json!({ "parts": parts.len(), "neighborhood": k.nbhd.len() });
    let w = |w: &symdyn_core::Witness| witness_json(x.group, w, &[x.alphabet.clone()], &ysharp.alphabet);
    Ok((params, verdict_outcome(&v, w, details)))
}

fn factor_build(f: &Path, g: &Path, source: &Path, target: &Path, hfile: &Path, out: Option<PathBuf>) -> CmdResult {
    let params = json!({
        "f": path(f), "g": path(g), "source": path(source), "target": path(target),
        "homotopy": path(hfile), "out": out.as_deref().map(path),
    });
    let (ff, gf): (MapFile, MapFile) = (read_json(f)?, read_json(g)?);
    let (xf, yf): (SftFile, SftFile) = (read_json(source)?, read_json(target)?);
    let hf: HomotopyFile = read_json(hfile)?;
    let (fm, gm, x, y, h) = (ff.build()?, gf.build()?, xf.build()?, yf.build()?, hf.build()?);
    match symdyn_core::glue::factor_onto_contractible(&fm, &gm, &x, &y, &h) {
        Ok(k) => {
            let file = MapFile::Builtin(MapSpec::Factor {
                f: Box::new(ff),
                g: Box::new(gf),
                source: xf,
                target: yf,
                homotopy: hf,
            });
            if let Some(o) = &out {
                write_json(o, &file)?;
            }
            Ok((params, Outcome::new("proved", EXIT_PASS, json!({ "neighborhood": k.nbhd.len() }))))
        }
        Err(Error::Input(m)) if m.starts_with("composite not proved") => {
            Ok((params, Outcome::new("unknown", EXIT_UNKNOWN, json!({ "reason": m }))))
        }
        Err(e) => Err(e.into()),
    }
}

fn fep(file: &Path, gap: usize, radius: usize) -> CmdResult {
    let params = json!({ "sft": path(file), "gap": gap, "radius": radius });
    let x = read_json::<SftFile>(file)?.build()?;
    let out = match fep_check(&x, gap, radius, budget()?)? {
        FepVerdict::PassedUpTo { radius, method } => {
            Outcome::new("passed", EXIT_PASS, json!({ "radius": radius, "method": format!("{method:?}").to_lowercase() }))
        }
        FepVerdict::Failed(w) => {
            let verified = w.verify(&x);
            let domain: Vec<String> = w.domain.iter().map(|e| e.to_string()).collect();
            Outcome::new("failed", EXIT_COUNTEREXAMPLE, json!({ "verified": verified })).with_witness(json!({
                "group": GroupSpec::of(x.group),
                "domain": domain,
                "gap": w.gap,
                "alphabet": x.alphabet,
                "pattern": crate::format::pattern_to_cells(&w.pattern, &x.alphabet),
            }))
        }
        FepVerdict::Partial { radius, reason } => {
            Outcome::new("unknown", EXIT_UNKNOWN, json!({ "radius": radius, "reason": reason }))
        }
    };
    Ok((params, out))
}

fn free_search(p: SearchParams, jobs: usize, log: Option<PathBuf>) -> CmdResult {
    let params = json!({
        "k": p.k, "alphabet": p.alphabet, "density": p.density, "count": p.count, "rmax": p.rmax,
        "degree_bound": p.degree_bound, "seed": p.seed, "jobs": jobs, "log": log.as_deref().map(path),
    });
    let r = search_parallel(&p, jobs)?;
    if let Some(l) = &log {
        let lines: String = r.verdicts.iter().map(|v| describe(v) + "\n").collect();
        std::fs::write(l, lines)?;
    }
    let count = |f: &dyn Fn(&symdyn_core::freegroup::SftVerdict) -> bool| r.verdicts.iter().filter(|v| f(v)).count();
    let details = json!({
        "searched": r.verdicts.len(),
        "nonempty": count(&|v| v.nonempty),
        "strongly_irreducible": count(&|v| matches!(v.si, Some(SiVerdict::Gap { .. }))),
        "periodic": count(&|v| v.periodic.is_some()),
        "candidates": r.candidates.iter().map(|&i| describe(&r.verdicts[i])).collect::<Vec<_>>(),
    });
    let out = if r.candidates.is_empty() {
        Outcome::new("no-candidates", EXIT_PASS, details)
    } else {
        Outcome::new("candidates", EXIT_CANDIDATES, details)
    };
    Ok((params, out))
}

fn zd(d: usize, r: usize, n: usize) -> CmdResult {
    let params = json!({ "d": d, "r": r, "N": n });
    let c = zd_coloring(d, r, n)?;
    let details = json!({ "colors": d + 1, "period": n, "cells": c.config.cell_count(), "m": c.m });
    Ok((params, Outcome::new("member", EXIT_PASS, details)))
}

fn parse_torus(s: &str) -> Result<Torus, Fail> {
    let dims: Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse()).collect();
    match dims {
        Ok(d) if !d.is_empty() => Ok(Torus::new(d)?),
        _ => malformed(format!("bad torus {s:?}")),
    }
}

/// Reads points: one per line, coordinates separated by commas or spaces, `#` comments.
pub fn parse_points(text: &str) -> Result<Points, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let p: Result<Vec<i64>, _> =
            line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(str::parse).collect();
        out.push(p.map_err(|e| format!("line {}: {e}", i + 1))?);
    }
    Ok(out)
}

pub fn format_points(pts: &[Vec<i64>]) -> String {
    pts.iter()
        .map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

fn read_points(p: &Path) -> Result<Points, Fail> {
    parse_points(&std::fs::read_to_string(p)?).map_err(Fail::Malformed)
}

fn net(torus: &str, r: usize, points: Option<PathBuf>, horizon: Option<usize>, out: Option<PathBuf>, partition: bool) -> CmdResult {
    let horizon = horizon.unwrap_or(2 * r);
    let params = json!({
        "torus": torus, "r": r, "points": points.as_deref().map(path), "horizon": horizon,
        "out": out.as_deref().map(path), "partition": partition,
    });
    let t = parse_torus(torus)?;
    if r == 0 {
        return malformed("r must be positive");
    }
    let start = match &points {
        Some(p) => read_points(p)?,
        None => vec![vec![0; t.dims.len()]],
    };
    let net = match greedy_net_completion(&t, r, &start, horizon) {
        Ok(n) => n,
        Err(Error::Input(m)) if m.starts_with("horizon") => {
            return Ok((params, Outcome::new("uncovered", EXIT_COUNTEREXAMPLE, json!({ "reason": m }))));
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(o) = &out {
        std::fs::write(o, format_points(&net))?;
    }
    let mut details = json!({ "points": net.len(), "net": is_net(&t, &net, r) });
    if partition {
        let p = corner_partition(&t, r, &net, 1)?;
        details["partition"] = json!({ "cells": p.corners.len(), "meeting": p.meeting, "ball": p.ball });
    }
    let ok = details["net"] == json!(true);
    Ok((params, if ok { Outcome::new("net", EXIT_PASS, details) } else { Outcome::new("not-net", EXIT_COUNTEREXAMPLE, details) }))
}

fn parse_word(s: &str, x: &Sft) -> Result<Vec<Sym>, Fail> {
    let toks: Vec<String> = if s.contains(',') {
        s.split(',').map(|t| t.trim().to_string()).collect()
    } else {
        s.chars().map(String::from).collect()
    };
    toks.iter()
        .map(|t| x.symbol(t).map_or_else(|| malformed(format!("unknown symbol {t:?}")), Ok))
        .collect()
}

fn plot(what: PlotCmd) -> CmdResult {
    match what {
        PlotCmd::Zd { r, n, out, scale } => {
            let params = json!({ "plot": "zd", "r": r, "N": n, "out": path(&out), "scale": scale });
            let c = zd_coloring(2, r, n)?;
            let labels = c.config.labels();
            // Rolled by half a period so the bands around the lattice lines sit mid-image.
            let h = n / 2;
            let rows: Vec<Vec<Sym>> =
                (0..n).map(|y| (0..n).map(|x| labels[((y + h) % n) * n + (x + h) % n]).collect()).collect();
            write_grid(&out, &rows, scale)?;
            Ok((params, Outcome::new("written", EXIT_PASS, json!({ "width": n, "height": n, "m": c.m }))))
        }
        PlotCmd::Points { torus, points, out, scale } => {
            let params = json!({ "plot": "points", "torus": torus, "points": path(&points), "out": path(&out), "scale": scale });
            let t = parse_torus(&torus)?;
            if t.dims.len() != 2 {
                return malformed("point plots need a plane torus");
            }
            let pts = read_points(&points)?;
            let mut rows = vec![vec![0 as Sym; t.dims[0]]; t.dims[1]];
            for p in &pts {
                if p.len() != 2 {
                    return malformed("points must have two coordinates");
                }
                let c = t.coords(t.index(p));
                rows[c[1] as usize][c[0] as usize] = 1;
            }
            write_grid(&out, &rows, scale)?;
            Ok((params, Outcome::new("written", EXIT_PASS, json!({ "points": pts.len() }))))
        }
        PlotCmd::Sweep { homotopy, x, y, width, out, scale } => {
            let params = json!({ "plot": "sweep", "homotopy": path(&homotopy), "x": x, "y": y, "width": width, "out": path(&out), "scale": scale });
            let h = read_json::<HomotopyFile>(&homotopy)?.build()?;
            if h.sft.group != Group::Line || h.tracks() != 2 {
                return malformed("sweeps need a contraction homotopy on the line");
            }
            let (xw, yw) = (parse_word(&x, &h.sft)?, parse_word(&y, &h.sft)?);
            if xw.is_empty() || yw.is_empty() {
                return malformed("words must be nonempty");
            }
            let lcm = xw.len() / gcd(xw.len(), yw.len()) * yw.len();
            let w = width.max(1).div_ceil(lcm) * lcm;
            let rep = |v: &[Sym]| (0..w).map(|i| v[i % v.len()]).collect::<Vec<Sym>>();
            let (xc, yc) = (PeriodicConfig::line(rep(&xw))?, PeriodicConfig::line(rep(&yw))?);
            let mut rows = Vec::with_capacity(w + 1);
            for k in 0..=w {
                let t: Vec<Sym> = (0..w).map(|i| if i < k { h.right() } else { h.left() }).collect();
                let img = h.map.apply_periodic(&[PeriodicConfig::line(t)?, xc.clone(), yc.clone()])?;
                rows.push(img.labels().to_vec());
            }
            write_grid(&out, &rows, scale)?;
            Ok((params, Outcome::new("written", EXIT_PASS, json!({ "width": w, "rows": rows.len() }))))
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
