mod workspace;

use a2ext_core::cobar::cobar_ext;
use a2ext_core::gf2::PivotOrder;
use a2ext_core::may::may_run;
use a2ext_core::module::{builtin, check_consistency, dualize, suspend, tensor, ModulePresentation};
use a2ext_core::render::{emit_svg, render_text};
use a2ext_core::resolver::{ext_chart, lift_cocycle, map_aug, product_table};
use a2ext_core::tmf::{assemble_e1_with, enumerate_summands, resolve_for_window, E1Options};
use a2ext_core::{Budget, CompletionMode, Error, Label, Resolution, SubalgebraProfile, Window};
use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use workspace::{read_module, Workspace};

#[derive(Parser)]
#[command(name = "a2ext", version, about = "Ext over subalgebras of the mod 2 Steenrod algebra")]
struct Cli {
    /// Workspace directory holding installed modules and caches.
    #[arg(long, env = "A2EXT_WORKSPACE", default_value = "a2ext-workspace", global = true)]
    workspace: PathBuf,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a definition file and install it under <NAME>.
    Newmodule { name: String, deffile: PathBuf },
    /// Write the definition file of a builtin module.
    Builtin { name: String, out: PathBuf },
    /// Resolve an installed module (resumes from the cache).
    Dims {
        name: String,
        #[arg(long, default_value = "A2", value_parser = parse_profile)]
        profile: SubalgebraProfile,
        #[arg(long)]
        tmax: i32,
        #[arg(long, default_value_t = 20)]
        smax: u32,
        /// Abort when a free module exceeds this dimension in one degree.
        #[arg(long, default_value_t = Budget::default().max_cell_dim)]
        max_cell_dim: usize,
    },
    /// Print "s g t stem" generator records and Hopf edges.
    Report {
        name: String,
        #[arg(long, default_value = "A2", value_parser = parse_profile)]
        profile: SubalgebraProfile,
        /// Omit the Hopf edge lines.
        #[arg(long)]
        no_edges: bool,
    },
    /// Draw the chart of a resolved module.
    Chart {
        name: String,
        #[arg(long, default_value = "A2", value_parser = parse_profile)]
        profile: SubalgebraProfile,
        #[arg(long, conflicts_with = "text")]
        svg: Option<PathBuf>,
        #[arg(long)]
        text: bool,
        #[arg(long, value_parser = parse_range)]
        stems: Option<RangeInclusive<i32>>,
        #[arg(long, value_parser = parse_range)]
        filt: Option<RangeInclusive<i32>>,
    },
    /// Dual module: degrees negated, actions through the antipode.
    Dualize { input: String, out: PathBuf },
    /// Tensor product with the diagonal action.
    Tensor { a: String, b: String, out: PathBuf },
    /// Shift every degree by K.
    Suspend {
        input: String,
        #[arg(allow_hyphen_values = true)]
        k: i32,
        out: PathBuf,
    },
    /// Products of Ext(S0) with the class s_g, written as Map.aug lines "s g1 g".
    Dolifts {
        name: String,
        s: u32,
        g: usize,
        #[arg(long)]
        depth: u32,
        #[arg(long, default_value = "A2", value_parser = parse_profile)]
        profile: SubalgebraProfile,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ext dims from the cobar complex, as "s t stem dim" lines.
    Cobar {
        module: String,
        #[arg(long, default_value = "A2", value_parser = parse_profile)]
        profile: SubalgebraProfile,
        #[arg(long)]
        tmax: i32,
        #[arg(long)]
        smax: Option<u32>,
    },
    /// May spectral sequence pages E2..E5 for Ext_{A(2)}(A1).
    May {
        #[arg(long)]
        tmax: u32,
        #[arg(long)]
        max_stem: Option<i32>,
    },
    /// E1 page of the algebraic tmf spectral sequence.
    TmfE1 {
        module: String,
        #[arg(long, value_parser = parse_range)]
        stems: RangeInclusive<i32>,
        #[arg(long, value_parser = parse_range)]
        filt: RangeInclusive<i32>,
        /// Skip cells ruled out by the vanishing line (valid for A1 smash DA1).
        #[arg(long)]
        prune: bool,
        #[arg(long)]
        max_n: Option<u32>,
        /// Print "stem s n indices dim" records instead of the grid.
        #[arg(long)]
        records: bool,
        #[arg(long, default_value_t = Budget::default().max_cell_dim)]
        max_cell_dim: usize,
    },
    /// Summands the vanishing line allows in a window (arithmetic only).
    TmfEnum {
        #[arg(long, value_parser = parse_range)]
        stems: RangeInclusive<i32>,
        #[arg(long, value_parser = parse_range)]
        filt: RangeInclusive<i32>,
        #[arg(long)]
        max_n: Option<u32>,
    },
}

fn parse_profile(s: &str) -> Result<SubalgebraProfile, String> {
    let t = s.trim();
    if let Some(d) = t.strip_prefix("A<=") {
        return d
            .parse()
            .map(|max_degree| SubalgebraProfile::Truncated { max_degree })
            .map_err(|_| format!("bad degree in {s:?}"));
    }
    let p = t
        .strip_prefix('A')
        .map(|r| r.trim_start_matches('(').trim_end_matches(')'))
        .and_then(|r| r.parse::<u32>().ok())
        .ok_or_else(|| format!("expected A0..A3 or A<=D, got {s:?}"))?;
    if p > 3 {
        return Err("only A(0) through A(3) are supported".into());
    }
    Ok(SubalgebraProfile::A(p))
}

/// "a..b", "a..=b" (both inclusive) or a single number.
fn parse_range(s: &str) -> Result<RangeInclusive<i32>, String> {
    let num = |x: &str| x.trim().parse::<i32>().map_err(|_| format!("bad range {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

fn filtrations(r: &RangeInclusive<i32>) -> Result<RangeInclusive<u32>> {
    if *r.start() < 0 {
        bail!("filtrations start at 0");
    }
    Ok(*r.start() as u32..=*r.end() as u32)
}

fn write_module(m: &ModulePresentation, out: &PathBuf) -> Result<()> {
    fs::write(out, m.serialize()).with_context(|| format!("writing {}", out.display()))?;
    println!("wrote {} ({} cells)", out.display(), m.dim());
    Ok(())
}

/// Extend column by column, saving after every few columns so an abort can resume.
fn resolve_with_progress(
    ws: &Workspace,
    name: &str,
    res: &mut Resolution,
    smax: u32,
    tmax: i32,
    budget: &Budget,
) -> Result<()> {
    let smax = smax.max(res.s_bound());
    if smax > res.s_bound() && res.t_bound() >= res.min_degree() {
        eprintln!("extending {name} to s <= {smax} through t = {}", res.t_bound());
        let r = res.extend(smax, res.t_bound(), budget);
        ws.save(name, res)?;
        r?;
    }
    let start = res.t_bound() + 1;
    for t in start..=tmax {
        let r = res.extend(smax, t, budget);
        if r.is_err() || (t - start) % 5 == 4 || t == tmax {
            ws.save(name, res)?;
        }
        r?;
        let gens: usize = (0..=smax).map(|s| res.generators(s).len()).sum();
        eprintln!("checkpoint (s <= {smax}, t = {t}): {gens} generators");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let ws = Workspace::new(cli.workspace);
    match cli.cmd {
        Command::Newmodule { name, deffile } => {
            let m = read_module(&deffile, &name)?;
            let report = check_consistency(&m, CompletionMode::Generate);
            if !report.passed() {
                eprint!("{report}");
                return Err(Error::Consistency(format!("{name} fails the consistency check")).into());
            }
            let _lock = ws.lock()?;
            let path = ws.install(&name, &m)?;
            if let Some(q) = report.scope {
                println!("note: {name} only determines an A({q})-module");
            }
            println!("installed {name} ({} cells) at {}", m.dim(), path.display());
        }
        Command::Builtin { name, out } => write_module(&builtin(&name)?, &out)?,
        Command::Dims {
            name,
            profile,
            tmax,
            smax,
            max_cell_dim,
        } => {
            let _lock = ws.lock()?;
            let mut res = ws.resolution(&name, profile)?;
            resolve_with_progress(&ws, &name, &mut res, smax, tmax, &Budget { max_cell_dim })?;
            let chart = ext_chart(&res);
            let w = Window::new(res.min_degree()..=res.t_bound().max(res.min_degree()), 0..=res.s_bound());
            print!("{}", render_text(&chart, &w));
            println!("{} generators, s <= {}, t <= {}", chart.degrees.len(), res.s_bound(), res.t_bound());
        }
        Command::Report {
            name,
            profile,
            no_edges,
        } => {
            let chart = ext_chart(&ws.cached(&name, profile)?);
            print!("{}", chart.summary());
            if !no_edges {
                print!("{}", chart.edge_list());
            }
        }
        Command::Chart {
            name,
            profile,
            svg,
            text,
            stems,
            filt,
        } => {
            let res = ws.cached(&name, profile)?;
            let chart = ext_chart(&res);
            let stems = stems.unwrap_or(res.min_degree()..=res.t_bound().max(res.min_degree()));
            let filt = match filt {
                Some(f) => filtrations(&f)?,
                None => 0..=res.s_bound(),
            };
            let w = Window::new(stems, filt);
            match svg {
                Some(path) => {
                    fs::write(&path, emit_svg(&chart, &w))?;
                    println!("wrote {}", path.display());
                }
                None if text => print!("{}", render_text(&chart, &w)),
                None => bail!("pass --svg <file> or --text"),
            }
        }
        Command::Dualize { input, out } => write_module(&dualize(&ws.module(&input)?)?, &out)?,
        Command::Tensor { a, b, out } => write_module(&tensor(&ws.module(&a)?, &ws.module(&b)?)?, &out)?,
        Command::Suspend { input, k, out } => write_module(&suspend(&ws.module(&input)?, k), &out)?,
        Command::Dolifts {
            name,
            s,
            g,
            depth,
            profile,
            out,
        } => {
            let _lock = ws.lock()?;
            let res = ws.cached(&name, profile)?;
            let class = Label { s, g };
            let t0 = res
                .generators(s)
                .get(g)
                .with_context(|| format!("no generator {class} in the cached resolution"))?
                .degree;
            let t_need = res.t_bound() - t0;
            let s0 = Resolution::resolve(&ModulePresentation::sphere(), profile, depth, t_need)?;
            let lift = lift_cocycle(&res, class, &s0, depth, PivotOrder::First)?;
            let records = product_table(&lift, &s0);
            let text = map_aug(&records);
            let out = out.unwrap_or_else(|| ws.module_dir(&name).join(format!("Map.aug.{s}_{g}")));
            fs::write(&out, &text)?;
            print!("{text}");
            eprintln!("wrote {} products to {}", text.lines().count(), out.display());
        }
        Command::Cobar {
            module,
            profile,
            tmax,
            smax,
        } => {
            let m = ws.module(&module)?;
            let smax = smax.unwrap_or((tmax - m.min_degree()).max(0) as u32);
            for ((s, t), d) in cobar_ext(&m, profile, smax, tmax)? {
                println!("{s} {t} {} {d}", t - s as i32);
            }
        }
        Command::May { tmax, max_stem } => {
            let run = may_run(tmax)?;
            print!("{}", run.report(max_stem.unwrap_or(tmax as i32)));
        }
        Command::TmfE1 {
            module,
            stems,
            filt,
            prune,
            max_n,
            records,
            max_cell_dim,
        } => {
            let budget = Budget { max_cell_dim };
            let w = Window::new(stems, filtrations(&filt)?);
            let opts = E1Options { prune, max_n };
            let profile = SubalgebraProfile::A(2);
            let table = if ws.def_path(&module).exists() {
                let _lock = ws.lock()?;
                let mut res = ws.resolution(&module, profile)?;
                let t = assemble_e1_with(&mut res, &w, opts, &budget);
                ws.save(&module, &res)?;
                t?
            } else {
                let x = ws.module(&module)?;
                let mut res = resolve_for_window(&x, &w, &budget)?;
                assemble_e1_with(&mut res, &w, opts, &budget)?
            };
            if records {
                print!("{}", table.records());
            } else {
                print!("{}", table.render_text());
            }
        }
        Command::TmfEnum { stems, filt, max_n } => {
            let w = Window::new(stems, filtrations(&filt)?);
            for key in enumerate_summands(&w, max_n) {
                let ix: Vec<String> = key.indices().iter().map(u32::to_string).collect();
                let ix = if ix.is_empty() { "-".to_string() } else { ix.join(",") };
                println!("{} {ix} {} {key}", key.n(), key.glyph());
            }
        }
    }
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::Parse { .. }) => 2,
        Some(Error::Consistency(_) | Error::Completion { .. }) => 3,
        Some(Error::Budget(_)) => 4,
        Some(Error::Invariant(_)) => 5,
        _ => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::debug!("{e:?}");
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
