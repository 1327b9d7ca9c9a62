use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use oreindex::families::{
    dpr_family_check, mono_family_check, MonoFamilyInstance, DEFAULT_TRIAL_BOUND,
};
use oreindex::ffield::DEFAULT_SEED;
use oreindex::ore::{
    dedekind_divides_index, index_divisor_verdict_seeded, ore_analysis, Divides, FactorReport,
};
use oreindex::parse::{parse_int, parse_poly};
use oreindex::polygon::{phi_expand, render_svg, residue_field_of};
use oreindex::quintic::{quintic_verdict_with, QuinticOptions, QuinticVerdict, Readings};
use oreindex::scan::{render_summary, run_scan, write_outputs, ScanConfig};
use oreindex::zx::{IntPoly, Prime};
use oreindex::Error;

#[derive(Parser)]
#[command(
    name = "oreindex",
    version,
    about = "Newton polygons, Ore's theorem and common index divisors"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Newton polygon of F with respect to phi.
    Polygon {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value = "x", allow_hyphen_values = true)]
        phi: String,
        #[arg(short, long = "prime")]
        p: u64,
        /// Write an SVG drawing of the polygon here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Dedekind's criterion.
    Dedekind {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(short, long = "prime")]
        p: u64,
    },
    /// Ore's theorem for every factor of F mod p.
    Ore {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(short, long = "prime")]
        p: u64,
    },
    /// Decide whether p divides the common index of the field of F.
    IndexDivisor {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(short, long = "prime")]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Common index divisors of the field of x^5 + a x^2 + b.
    #[command(allow_negative_numbers = true)]
    Quintic {
        a: String,
        b: String,
        /// Evaluate the closed forms with the corrected readings.
        #[arg(long)]
        proof_readings: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Scan a grid of (a, b) for x^5 + a x^2 + b.
    Scan {
        /// key = value configuration file.
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        ledger: Option<PathBuf>,
        /// Write the JSON rows here.
        #[arg(long = "json-out")]
        json_out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The two degree p^r families.
    Families {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Subcommand)]
enum Family {
    /// x^(p^r) + p^v a x^m + p^u b.
    #[command(allow_negative_numbers = true)]
    Mono {
        #[arg(short, long = "prime")]
        p: u64,
        #[arg(short)]
        r: u32,
        #[arg(short)]
        v: u32,
        #[arg(short)]
        u: u32,
        #[arg(short)]
        m: u64,
        #[arg(short)]
        a: String,
        #[arg(short)]
        b: String,
        #[arg(long, default_value_t = DEFAULT_TRIAL_BOUND)]
        trial_bound: u64,
    },
    /// x^(p^r) + a x^m + b.
    #[command(allow_negative_numbers = true)]
    Dpr {
        #[arg(short, long = "prime")]
        p: u64,
        #[arg(short)]
        r: u32,
        #[arg(short)]
        m: u64,
        #[arg(short)]
        a: String,
        #[arg(short)]
        b: String,
    },
}

/// Text plus JSON for one command, and the exit status it implies.
struct Output {
    text: String,
    json: String,
    code: u8,
}

impl Output {
    fn new<T: Serialize>(text: String, value: &T, code: u8) -> Self {
        Output {
            text,
            json: serde_json::to_string_pretty(value).unwrap(),
            code,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } | Error::PolygonMismatch(_) | Error::NonIntegral(_) => 1,
        _ => 2,
    }
}

fn poly(s: &str) -> Result<IntPoly, Error> {
    parse_poly(s)
}

#[derive(Serialize)]
struct PolygonSide {
    start: (u64, u64),
    end: (u64, u64),
    slope: String,
    length: u64,
    height: u64,
    degree: u64,
    residual: String,
}

#[derive(Serialize)]
struct PolygonJson {
    schema: &'static str,
    f: String,
    phi: String,
    p: u64,
    points: Vec<(u64, Option<u64>)>,
    vertices: Vec<(u64, u64)>,
    sides: Vec<PolygonSide>,
    index: u64,
}

fn cmd_polygon(f: &str, phi: &str, p: u64, svg: Option<&PathBuf>) -> Result<Output, Error> {
    let (f, phi, p) = (poly(f)?, poly(phi)?, Prime::new(p)?);
    let exp = phi_expand(&f, &phi, p)?;
    let field = residue_field_of(&phi, p)?;
    let np = exp.newton_polygon();
    let mut sides = Vec::new();
    for s in np.principal_sides() {
        sides.push(PolygonSide {
            start: s.start,
            end: s.end,
            slope: s.slope_string(),
            length: s.length(),
            height: s.height(),
            degree: s.degree(),
            residual: exp.residual(s, &field)?.poly.to_string(),
        });
    }
    let index = phi.degree().unwrap() as u64 * np.lattice_count();
    if let Some(path) = svg {
        std::fs::write(path, render_svg(&np)).map_err(|e| Error::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
    }
    let doc = PolygonJson {
        schema: "oreindex.polygon/1",
        f: f.to_string(),
        phi: phi.to_string(),
        p: p.get(),
        points: np.points().iter().map(|(i, v)| (*i, v.finite())).collect(),
        vertices: np.principal_vertices().to_vec(),
        sides,
        index,
    };
    let mut t = String::new();
    let _ = writeln!(t, "F = {}, phi = {}, p = {}", doc.f, doc.phi, doc.p);
    if doc.sides.is_empty() {
        let _ = writeln!(t, "principal polygon is empty");
    } else {
        let v: Vec<String> = doc
            .vertices
            .iter()
            .map(|(x, y)| format!("({x},{y})"))
            .collect();
        let _ = writeln!(t, "vertices: {}", v.join(" "));
        for s in &doc.sides {
            let _ = writeln!(
                t,
                "side ({},{})-({},{}): slope {}, degree {}, residual {}",
                s.start.0, s.start.1, s.end.0, s.end.1, s.slope, s.degree, s.residual
            );
        }
    }
    let _ = writeln!(t, "ind_phi = {}", doc.index);
    Ok(Output::new(t, &doc, 0))
}

fn cmd_dedekind(f: &str, p: u64) -> Result<Output, Error> {
    let (f, p) = (poly(f)?, Prime::new(p)?);
    let d = dedekind_divides_index(&f, p)?;
    let t = if d {
        format!("{} divides the index of {f}\n", p.get())
    } else {
        format!("{} does not divide the index of {f}\n", p.get())
    };
    #[derive(Serialize)]
    struct J {
        schema: &'static str,
        f: String,
        p: u64,
        divides_index: bool,
    }
    let j = J {
        schema: "oreindex.dedekind/1",
        f: f.to_string(),
        p: p.get(),
        divides_index: d,
    };
    Ok(Output::new(t, &j, 0))
}

fn render_factor(t: &mut String, r: &FactorReport) {
    let _ = writeln!(
        t,
        "phi = {} (multiplicity {}): ind_phi = {}, {}",
        r.phi,
        r.multiplicity,
        r.index,
        if r.regular { "regular" } else { "not regular" }
    );
    for s in &r.sides {
        let _ = writeln!(
            t,
            "  side ({},{})-({},{}) slope {}: residual {}{}",
            s.side.start.0,
            s.side.start.1,
            s.side.end.0,
            s.side.end.1,
            s.slope,
            s.residual,
            if s.squarefree {
                ""
            } else {
                " (not squarefree)"
            }
        );
    }
}

fn shapes_text(shapes: &[oreindex::ore::IdealShape]) -> String {
    let s: Vec<String> = shapes
        .iter()
        .map(|s| format!("({},{})", s.e, s.f))
        .collect();
    s.join(" ")
}

fn cmd_ore(f: &str, p: u64) -> Result<Output, Error> {
    let (f, p) = (poly(f)?, Prime::new(p)?);
    let r = ore_analysis(&f, p)?;
    let mut t = String::new();
    for fr in &r.factors {
        render_factor(&mut t, fr);
    }
    let _ = writeln!(
        t,
        "v_p(index) >= {}{}",
        r.index_lower_bound,
        if r.p_regular {
            " (equality: p-regular)"
        } else {
            ""
        }
    );
    let _ = writeln!(t, "prime ideal shapes (e,f): {}", shapes_text(&r.shapes));
    Ok(Output::new(t, &r, 0))
}

fn cmd_index_divisor(f: &str, p: u64, seed: u64) -> Result<Output, Error> {
    let (f, p) = (poly(f)?, Prime::new(p)?);
    let v = index_divisor_verdict_seeded(&f, p, seed)?;
    let mut t = String::new();
    for line in &v.trace {
        let _ = writeln!(t, "{line}");
    }
    let _ = writeln!(t, "shapes (e,f): {}", shapes_text(&v.shapes));
    let _ = writeln!(
        t,
        "{}",
        match v.divides {
            Divides::Yes => format!("{} | i(K)", p.get()),
            Divides::No => format!("{} does not divide i(K)", p.get()),
            Divides::Undetermined => "undetermined".to_string(),
        }
    );
    let code = if v.divides == Divides::Undetermined {
        3
    } else {
        0
    };
    Ok(Output::new(t, &v, code))
}

fn quintic_text(v: &QuinticVerdict) -> (String, u8) {
    if !v.irreducible {
        return ("reducible\n".into(), 2);
    }
    let mut t = String::new();
    let mut code = 0;
    for (p, e) in &v.by_engine {
        let closed = v.by_theorem.get(p);
        let tag = closed
            .and_then(|c| c.matched_condition)
            .map(|c| c.to_string());
        let closed_yes = closed.is_some_and(|c| c.divides == Divides::Yes);
        match e.divides {
            Divides::Yes => {
                let tag = tag.unwrap_or_else(|| "no condition".into());
                let agree = if closed.is_none() || closed_yes {
                    "engine agrees"
                } else {
                    "closed form disagrees"
                };
                let _ = writeln!(t, "{p} | i(K) [{tag}, {agree}]");
            }
            Divides::No if closed_yes => {
                let _ = writeln!(
                    t,
                    "closed form claims {p} | i(K) [{}], engine finds it does not",
                    tag.unwrap_or_default()
                );
            }
            Divides::No => {}
            Divides::Undetermined => {
                code = 3;
                let _ = writeln!(t, "{p}: undetermined");
            }
        }
    }
    if v.common_index_divisors().is_empty() && code == 0 {
        let _ = writeln!(t, "no common index divisor");
    }
    for n in &v.notes {
        let _ = writeln!(t, "note: {n}");
    }
    (t, code)
}

fn cmd_quintic(a: &str, b: &str, proof: bool, seed: u64) -> Result<Output, Error> {
    let (a, b) = (parse_int(a)?, parse_int(b)?);
    let opts = QuinticOptions {
        readings: if proof {
            Readings::proof()
        } else {
            Readings::default()
        },
        seed,
        ..QuinticOptions::default()
    };
    let v = quintic_verdict_with(&a, &b, &opts)?;
    let (t, code) = quintic_text(&v);
    Ok(Output::new(t, &v, code))
}

fn cmd_scan(
    config: &Path,
    csv: Option<PathBuf>,
    ledger: Option<PathBuf>,
    json_out: Option<PathBuf>,
    jobs: Option<usize>,
    seed: Option<u64>,
) -> Result<Output, Error> {
    let mut cfg = ScanConfig::load(config)?;
    cfg.csv = csv.or(cfg.csv);
    cfg.ledger = ledger.or(cfg.ledger);
    cfg.json = json_out.or(cfg.json);
    cfg.jobs = jobs.unwrap_or(cfg.jobs);
    cfg.seed = seed.unwrap_or(cfg.seed);
    cfg.validate()?;
    let out = run_scan(&cfg)?;
    write_outputs(&cfg, &out)?;
    Ok(Output::new(render_summary(&out.summary), &out.summary, 0))
}

fn cmd_mono(
    p: u64,
    (r, v, u, m): (u32, u32, u32, u64),
    a: &str,
    b: &str,
    bound: u64,
) -> Result<Output, Error> {
    let inst = MonoFamilyInstance::new(Prime::new(p)?, r, v, u, m, parse_int(a)?, parse_int(b)?)?;
    let rep = mono_family_check(&inst, bound)?;
    let mut t = String::new();
    let _ = writeln!(t, "F = {}", inst.f);
    let _ = writeln!(t, "single side of degree one: {}", rep.single_side);
    let _ = writeln!(t, "ind_phi = {}", rep.index);
    let _ = writeln!(
        t,
        "theta = {}, minimal polynomial {}",
        rep.theta, rep.theta_minpoly
    );
    let _ = writeln!(t, "{p}-Eisenstein: {}", rep.eisenstein_at_p);
    let _ = writeln!(
        t,
        "p-free discriminant part {} squarefree: {:?}",
        inst.delta_p, rep.delta_p_squarefree
    );
    Ok(Output::new(t, &rep, 0))
}

fn cmd_dpr(p: u64, r: u32, m: u64, a: &str, b: &str) -> Result<Output, Error> {
    let rep = dpr_family_check(Prime::new(p)?, r, m, &parse_int(a)?, &parse_int(b)?)?;
    let mut t = String::new();
    let v: Vec<String> = rep
        .polygon
        .principal_vertices()
        .iter()
        .map(|(x, y)| format!("({x},{y})"))
        .collect();
    let _ = writeln!(t, "vertices: {}", v.join(" "));
    for s in &rep.segments {
        let _ = writeln!(t, "segment j = {}: {:?}-{:?} found", s.j, s.start, s.end);
    }
    let _ = writeln!(t, "degree-one sides: {}", rep.side_count_ge);
    let _ = writeln!(t, "P_1 = {}, N_1 = {}", rep.p1, rep.n1);
    let _ = writeln!(
        t,
        "{}",
        if rep.common_index_divisor {
            format!("{p} | i(K)")
        } else {
            format!("no conclusion at {p}")
        }
    );
    let code = if rep.engine == Divides::Undetermined {
        3
    } else {
        0
    };
    Ok(Output::new(t, &rep, code))
}

fn run(cli: Cli) -> Result<Output, Error> {
    match cli.cmd {
        Cmd::Polygon { poly, phi, p, svg } => cmd_polygon(&poly, &phi, p, svg.as_ref()),
        Cmd::Dedekind { poly, p } => cmd_dedekind(&poly, p),
        Cmd::Ore { poly, p } => cmd_ore(&poly, p),
        Cmd::IndexDivisor { poly, p, seed } => cmd_index_divisor(&poly, p, seed),
        Cmd::Quintic {
            a,
            b,
            proof_readings,
            seed,
        } => cmd_quintic(&a, &b, proof_readings, seed),
        Cmd::Scan {
            config,
            csv,
            ledger,
            json_out,
            jobs,
            seed,
        } => cmd_scan(&config, csv, ledger, json_out, jobs, seed),
        Cmd::Families { family } => match family {
            Family::Mono {
                p,
                r,
                v,
                u,
                m,
                a,
                b,
                trial_bound,
            } => cmd_mono(p, (r, v, u, m), &a, &b, trial_bound),
            Family::Dpr { p, r, m, a, b } => cmd_dpr(p, r, m, &a, &b),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
