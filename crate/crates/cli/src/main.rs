use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hardknots::constructions::{
    discover_gadget, hardify_split, rigid_hardify, shaky_hardify, triangle_pairing,
    trivial_rigid_hard, DiscoveryOptions, GadgetLibrary, GadgetName, Mode,
};
use hardknots::exec::Exec;
use hardknots::invariants::{fingerprint, jones};
use hardknots::moves::{apply_move, find_sites, MoveKinds};
use hardknots::render::render_svg;
use hardknots::search::{
    bootstrap_catalog, classify_hardness, enumerate_diagrams, index_from_levels, survey_with,
    Enumerator, SearchBudget, ShapeFilter, SurveyLevel, SurveyOptions, REPORT_SCHEMA_VERSION,
};
use hardknots::{Diagram, LinkCatalog, Symmetry};

const SCHEMA_VERSION: u32 = REPORT_SCHEMA_VERSION;

#[derive(Parser, Debug)]
#[command(
    name = "hardknots",
    version,
    about = "Reidemeister moves, hard diagrams and their constructions"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Link table CSV (`name,crossings,components,pd`); the bundled table
    /// is used otherwise.
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,
    /// Gadget cache (`name<TAB>attach<TAB>pd`); the bundled cache is used
    /// otherwise.
    #[arg(long, global = true, value_name = "PATH")]
    gadgets: Option<PathBuf>,
    /// State cap for closure and reachability searches.
    #[arg(long, global = true, value_name = "N", default_value_t = SearchBudget::default().max_states)]
    budget_states: usize,
    /// Extra crossings allowed when identifying a link by explicit moves.
    #[arg(long, global = true, value_name = "K", default_value_t = SearchBudget::default().max_crossings_up)]
    up_budget: usize,
    /// Allow searches beyond desk scale (12-crossing gadgets, large surveys).
    #[arg(long, global = true)]
    extended: bool,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Identify diagrams that differ by a reflection of the sphere.
    #[arg(long, global = true)]
    quotient_mirror: bool,
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a diagram and print its normalized PD code.
    Parse { diagram: String },
    /// Structural summary of a diagram.
    Info { diagram: String },
    /// List move sites, or apply the site with the given index.
    Moves {
        diagram: String,
        /// Only these kinds (comma separated: r1-down,r1-up,r2-down,r2-up,r3).
        #[arg(long, value_delimiter = ',')]
        kinds: Vec<KindArg>,
        /// Apply the site with this index and print the result.
        #[arg(long)]
        apply: Option<usize>,
    },
    /// Jones polynomial in t^(1/2) exponents.
    Jones {
        diagram: String,
        /// Components to reverse (strand indices, comma separated).
        #[arg(long, value_delimiter = ',')]
        reverse: Vec<usize>,
    },
    /// Hardness report.
    Classify { diagram: String },
    /// Stream diagrams (or shadows) with N crossings as JSON lines.
    Enumerate {
        n: usize,
        #[arg(long, value_enum, default_value_t = FilterArg::Reduced)]
        filter: FilterArg,
        /// Emit shadows rather than diagrams.
        #[arg(long)]
        shadows: bool,
    },
    /// Rigid hard diagrams with N crossings, grouped up to mirror image.
    Survey {
        n: usize,
        #[arg(long, value_enum, default_value_t = FilterArg::Prime)]
        filter: FilterArg,
        /// Keep only hits identified as this catalog name.
        #[arg(long)]
        only: Option<String>,
    },
    /// Rigid hard index of catalog links.
    Index {
        #[arg(required = true)]
        names: Vec<String>,
        /// Largest diagram size to survey.
        #[arg(long, default_value_t = 10)]
        max: usize,
    },
    /// Run a construction.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Draw a diagram as SVG.
    Render {
        diagram: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Catalog maintenance.
    Catalog {
        #[command(subcommand)]
        what: CatalogCmd,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// One 7s per Omega3 triangle.
    Thm2 { diagram: String },
    /// One 7s per isolated triangle or adjacent pair.
    Cor1 { diagram: String },
    /// 9s at one triangle, 7s at the rest.
    Shaky { diagram: String },
    /// Rigid hard diagram of the K-component unlink.
    Trivial { components: usize },
    /// Rediscover gadgets from their defining properties.
    Gadgets {
        /// Only these gadgets.
        names: Vec<String>,
        /// Write the cache file here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Triangle pairing used by cor1.
    Pairing { diagram: String },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    /// Load and audit a link table.
    Import { path: PathBuf },
    /// Rebuild minimal prime diagrams by enumeration and compare.
    Bootstrap {
        #[arg(long, default_value_t = 6)]
        max: usize,
    },
    /// List entries.
    List,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FilterArg {
    All,
    Reduced,
    Prime,
}

impl From<FilterArg> for ShapeFilter {
    fn from(f: FilterArg) -> ShapeFilter {
        match f {
            FilterArg::All => ShapeFilter::ALL,
            FilterArg::Reduced => ShapeFilter::REDUCED,
            FilterArg::Prime => ShapeFilter::PRIME,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    R1Down,
    R1Up,
    R2Down,
    R2Up,
    R3,
}

impl From<KindArg> for MoveKinds {
    fn from(k: KindArg) -> MoveKinds {
        match k {
            KindArg::R1Down => MoveKinds::R1_DOWN,
            KindArg::R1Up => MoveKinds::R1_UP,
            KindArg::R2Down => MoveKinds::R2_DOWN,
            KindArg::R2Up => MoveKinds::R2_UP,
            KindArg::R3 => MoveKinds::R3,
        }
    }
}

struct Ctx {
    g: Global,
    catalog: LinkCatalog,
    exec: Exec,
}

impl Ctx {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_states: self.g.budget_states,
            max_crossings_up: self.g.up_budget,
        }
    }

    fn gadgets(&self) -> Result<GadgetLibrary> {
        match &self.g.gadgets {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading {}", p.display()))?;
                Ok(GadgetLibrary::parse(&text)?)
            }
            None => Ok(GadgetLibrary::bundled()),
        }
    }

    /// A PD code, `-` for standard input, a gadget or catalog name, or a
    /// file holding a PD code.
    fn diagram(&self, arg: &str) -> Result<Diagram> {
        if arg.contains("X[") || arg.contains("PD[") || arg.trim().is_empty() {
            return Ok(Diagram::parse_pd(arg)?);
        }
        if arg == "-" {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            return Ok(Diagram::parse_pd(&s)?);
        }
        if let Ok(name) = arg.parse::<GadgetName>() {
            if let Some(g) = self.gadgets()?.get(name) {
                return Ok(g.diagram.clone());
            }
        }
        if let Some(c) = self.catalog.get(arg) {
            return Ok(c.diagram.clone());
        }
        if Path::new(arg).is_file() {
            let s = std::fs::read_to_string(arg)?;
            return Ok(Diagram::parse_pd(&s)?);
        }
        bail!("`{arg}` is neither a PD code, a gadget, a catalog name nor a file")
    }
}

fn emit<T: Serialize>(out: &mut impl Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn emit_line<T: Serialize>(out: &mut impl Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct InfoOut {
    schema_version: u32,
    pd: String,
    crossings: usize,
    components: usize,
    free_loops: usize,
    faces: usize,
    connected: bool,
    reduced: bool,
    prime: bool,
    alternating: bool,
    omega3_triangles: usize,
    code: String,
}

fn info(d: &Diagram) -> InfoOut {
    InfoOut {
        schema_version: SCHEMA_VERSION,
        pd: d.emit_pd(),
        crossings: d.crossing_count(),
        components: d.components(),
        free_loops: d.free_loops(),
        faces: d.face_count(),
        connected: d.is_connected(),
        reduced: d.is_reduced(),
        prime: d.is_prime(),
        alternating: d.is_alternating(),
        omega3_triangles: hardknots::moves::omega3_triangle_count(d),
        code: d.canonical_code(Symmetry::Oriented).to_hex(),
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<()> {
    let catalog = match &cli.global.catalog {
        Some(p) => LinkCatalog::from_path(p)?,
        None => LinkCatalog::bundled(),
    };
    let exec = if cli.global.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let ctx = Ctx {
        g: cli.global.clone(),
        catalog,
        exec,
    };
    let json = ctx.g.json;
    match cli.command {
        Command::Parse { diagram } => {
            let d = ctx.diagram(&diagram)?;
            if json {
                emit(out, &info(&d))?;
            } else {
                writeln!(out, "{}", d.emit_pd())?;
            }
        }
        Command::Info { diagram } => {
            let i = info(&ctx.diagram(&diagram)?);
            if json {
                emit(out, &i)?;
            } else {
                writeln!(out, "crossings   {}", i.crossings)?;
                writeln!(out, "components  {}", i.components)?;
                writeln!(out, "faces       {}", i.faces)?;
                writeln!(out, "connected   {}", i.connected)?;
                writeln!(out, "reduced     {}", i.reduced)?;
                writeln!(out, "prime       {}", i.prime)?;
                writeln!(out, "alternating {}", i.alternating)?;
                writeln!(out, "omega3      {}", i.omega3_triangles)?;
                writeln!(out, "code        {}", i.code)?;
            }
        }
        Command::Moves {
            diagram,
            kinds,
            apply,
        } => {
            let d = ctx.diagram(&diagram)?;
            let mask = if kinds.is_empty() {
                MoveKinds::all()
            } else {
                kinds
                    .into_iter()
                    .map(MoveKinds::from)
                    .fold(MoveKinds::empty(), |a, b| a | b)
            };
            let sites = find_sites(&d, mask);
            match apply {
                Some(i) => {
                    let site = sites.get(i).ok_or_else(|| {
                        anyhow!("site index {i} out of range ({} sites)", sites.len())
                    })?;
                    let next = apply_move(&d, site)?;
                    if json {
                        emit(out, &info(&next))?;
                    } else {
                        writeln!(out, "{}", next.emit_pd())?;
                    }
                }
                None if json => emit(out, &sites)?,
                None => {
                    for (i, s) in sites.iter().enumerate() {
                        writeln!(out, "{i:>4}  {}", serde_json::to_string(s)?)?;
                    }
                }
            }
        }
        Command::Jones { diagram, reverse } => {
            let d = ctx.diagram(&diagram)?;
            let strands = d.strands().len();
            let mut reversed = vec![false; strands];
            for r in reverse {
                *reversed
                    .get_mut(r)
                    .ok_or_else(|| anyhow!("component {r} out of range ({strands} strands)"))? =
                    true;
            }
            let j = jones(&d, &reversed)?;
            if json {
                #[derive(Serialize)]
                struct J {
                    schema_version: u32,
                    jones: hardknots::Laurent,
                    variable: &'static str,
                }
                emit(
                    out,
                    &J {
                        schema_version: SCHEMA_VERSION,
                        jones: j,
                        variable: "t^(1/2)",
                    },
                )?;
            } else {
                writeln!(out, "{j}")?;
            }
        }
        Command::Classify { diagram } => {
            let d = ctx.diagram(&diagram)?;
            let r = classify_hardness(&d, &ctx.catalog, &ctx.budget())?;
            if json {
                emit(out, &r)?;
            } else {
                let name = r
                    .identified
                    .as_ref()
                    .map_or("unidentified".to_string(), |i| i.name.clone());
                writeln!(out, "link        {name}")?;
                writeln!(out, "verdict     {:?}", r.verdict)?;
                writeln!(out, "hard        {}", r.is_hard)?;
                writeln!(out, "rigid       {}", r.is_rigid)?;
                writeln!(out, "shaky       {}", r.is_shaky)?;
                writeln!(
                    out,
                    "closure     {} diagrams, min {} crossings ({:?})",
                    r.closure_size, r.min_crossings_reached, r.status
                )?;
            }
        }
        Command::Enumerate { n, filter, shadows } => {
            let filter = ShapeFilter::from(filter);
            if shadows {
                let en = Enumerator::new(ctx.exec);
                for s in en.shadows(n, filter).iter() {
                    #[derive(Serialize)]
                    struct S<'a> {
                        code: &'a hardknots::CanonicalCode,
                        pd: String,
                        automorphisms: usize,
                    }
                    emit_line(
                        out,
                        &S {
                            code: &s.code,
                            pd: s.diagram.emit_pd(),
                            automorphisms: s.roots.len(),
                        },
                    )?;
                }
            } else {
                let sym = if ctx.g.quotient_mirror {
                    Symmetry::Mirror
                } else {
                    Symmetry::Oriented
                };
                for d in enumerate_diagrams(n, filter, ctx.g.quotient_mirror, ctx.exec) {
                    #[derive(Serialize)]
                    struct D {
                        code: hardknots::CanonicalCode,
                        pd: String,
                        components: usize,
                        alternating: bool,
                        omega3_triangles: usize,
                    }
                    emit_line(
                        out,
                        &D {
                            code: d.canonical_code(sym),
                            pd: d.emit_pd(),
                            components: d.components(),
                            alternating: d.is_alternating(),
                            omega3_triangles: hardknots::moves::omega3_triangle_count(&d),
                        },
                    )?;
                }
            }
        }
        Command::Survey { n, filter, only } => {
            warn_scale(&ctx, n, filter)?;
            let opts = SurveyOptions {
                filter: filter.into(),
                budget: ctx.budget(),
                exec: ctx.exec,
            };
            let en = Enumerator::new(ctx.exec);
            let mut level = survey_with(&en, n, &ctx.catalog, &opts);
            if let Some(name) = only {
                level
                    .hard
                    .retain(|h| h.report.identified.as_ref().is_some_and(|i| i.name == name));
            }
            print_level(out, &level, json)?;
        }
        Command::Index { names, max } => {
            let classes = names
                .iter()
                .map(|n| {
                    ctx.catalog
                        .get(n)
                        .ok_or_else(|| anyhow!("`{n}` is not in the catalog"))
                })
                .collect::<Result<Vec<_>>>()?;
            let from = classes
                .iter()
                .map(|c| c.crossing_number + 1)
                .min()
                .unwrap_or(1);
            warn_scale(&ctx, max, FilterArg::Reduced)?;
            let opts = SurveyOptions {
                filter: ShapeFilter::REDUCED,
                budget: ctx.budget(),
                exec: ctx.exec,
            };
            let en = Enumerator::new(ctx.exec);
            let mut levels: Vec<SurveyLevel> = Vec::new();
            let mut entries = Vec::new();
            for class in classes {
                // Survey lazily: stop as soon as this class has a witness.
                for n in from.max(1)..=max {
                    if levels.iter().any(|l| l.crossings == n) {
                        if levels
                            .iter()
                            .any(|l| l.crossings == n && l.hits_for(&class.name).next().is_some())
                        {
                            break;
                        }
                        continue;
                    }
                    if n <= class.crossing_number {
                        continue;
                    }
                    let l = survey_with(&en, n, &ctx.catalog, &opts);
                    let hit = l.hits_for(&class.name).next().is_some();
                    levels.push(l);
                    if hit {
                        break;
                    }
                }
                levels.sort_by_key(|l| l.crossings);
                entries.push(index_from_levels(class, &levels, &ctx.budget()));
            }
            if json {
                emit(out, &entries)?;
            } else {
                for e in &entries {
                    let v = match e.value {
                        hardknots::search::IndexValue::Exact(v) => format!("{v}"),
                        hardknots::search::IndexValue::AtLeast(v) => format!(">= {v}"),
                        hardknots::search::IndexValue::AtMost(v) => format!("<= {v}"),
                    };
                    writeln!(out, "{}\t{v}", e.name)?;
                }
            }
        }
        Command::Construct { what } => construct(&ctx, what, out)?,
        Command::Render { diagram, output } => {
            let svg = render_svg(&ctx.diagram(&diagram)?);
            match output {
                Some(p) => {
                    std::fs::write(&p, svg).with_context(|| format!("writing {}", p.display()))?
                }
                None => out.write_all(svg.as_bytes())?,
            }
        }
        Command::Catalog { what } => match what {
            CatalogCmd::Import { path } => {
                let cat = LinkCatalog::from_path(&path)?;
                if json {
                    emit(out, &cat.entries())?;
                } else {
                    writeln!(out, "{} entries, names and fingerprints unique", cat.len())?;
                }
            }
            CatalogCmd::List => {
                if json {
                    emit(out, &ctx.catalog.entries())?;
                } else {
                    for e in ctx.catalog.entries() {
                        writeln!(out, "{}\t{}\t{}", e.name, e.crossing_number, e.components)?;
                    }
                }
            }
            CatalogCmd::Bootstrap { max } => {
                if max > 8 && !ctx.g.extended {
                    bail!("bootstrap beyond 8 crossings needs --extended");
                }
                let r = bootstrap_catalog(max, &ctx.catalog, &Enumerator::new(ctx.exec));
                if json {
                    emit(out, &r)?;
                } else {
                    let certified = r.classes.iter().filter(|c| c.certified).count();
                    writeln!(
                        out,
                        "{certified} certified classes up to {max} crossings, {} uncatalogued",
                        r.uncatalogued
                    )?;
                    for m in &r.mismatches {
                        writeln!(
                            out,
                            "mismatch {} (catalog {}, observed {:?})",
                            m.name, m.catalog_crossings, m.observed
                        )?;
                    }
                }
                if !r.mismatches.is_empty() {
                    bail!(
                        "{} catalog entries disagree with the enumeration",
                        r.mismatches.len()
                    );
                }
            }
        },
    }
    Ok(())
}

fn warn_scale(ctx: &Ctx, n: usize, filter: FilterArg) -> Result<()> {
    let heavy = match filter {
        FilterArg::Prime => n > 11,
        _ => n > 10,
    };
    if heavy && !ctx.g.extended {
        bail!("surveys at {n} crossings are beyond desk scale; pass --extended to run anyway");
    }
    if heavy {
        eprintln!("warning: {n}-crossing survey may take hours");
    }
    Ok(())
}

fn print_level(out: &mut impl Write, level: &SurveyLevel, json: bool) -> Result<()> {
    if json {
        #[derive(Serialize)]
        struct Head {
            schema_version: u32,
            crossings: usize,
            shadows: usize,
            exhaustive: bool,
            diagrams: u64,
            rigid: u64,
            hard: usize,
            unidentified: usize,
            exhausted: usize,
            alternating_hard: usize,
        }
        emit_line(
            out,
            &Head {
                schema_version: SCHEMA_VERSION,
                crossings: level.crossings,
                shadows: level.shadows,
                exhaustive: level.exhaustive,
                diagrams: level.diagrams,
                rigid: level.rigid,
                hard: level.hard.len(),
                unidentified: level.unidentified.len(),
                exhausted: level.exhausted.len(),
                alternating_hard: level.alternating_hard,
            },
        )?;
        for h in &level.hard {
            emit_line(out, h)?;
        }
        return Ok(());
    }
    writeln!(
        out,
        "{} crossings: {} shadows, {} diagrams, {} rigid, {} rigid hard classes{}",
        level.crossings,
        level.shadows,
        level.diagrams,
        level.rigid,
        level.hard.len(),
        if level.exhaustive {
            ""
        } else {
            " (shadow list not known to be complete)"
        }
    )?;
    for h in &level.hard {
        let name = h
            .report
            .identified
            .as_ref()
            .map_or("?", |i| i.name.as_str());
        writeln!(
            out,
            "  {name}\t{} components\t{}",
            h.report.components,
            h.pd.replace('\n', " ")
        )?;
    }
    if !level.unidentified.is_empty() || !level.exhausted.is_empty() {
        writeln!(
            out,
            "  set aside: {} uncatalogued, {} over budget",
            level.unidentified.len(),
            level.exhausted.len()
        )?;
    }
    Ok(())
}

fn construct(ctx: &Ctx, what: Construct, out: &mut impl Write) -> Result<()> {
    let json = ctx.g.json;
    let budget = ctx.budget();
    let show = |out: &mut dyn Write, d: &Diagram, cert: &dyn erased::Cert| -> Result<()> {
        if json {
            cert.emit(out)?;
        } else {
            writeln!(out, "{}", d.emit_pd())?;
            writeln!(out, "# {}", cert.summary())?;
        }
        Ok(())
    };
    match what {
        Construct::Thm2 { diagram } => one(ctx, &diagram, Mode::Thm2, out, &show)?,
        Construct::Cor1 { diagram } => one(ctx, &diagram, Mode::Cor1, out, &show)?,
        Construct::Shaky { diagram } => one(ctx, &diagram, Mode::Shaky, out, &show)?,
        Construct::Trivial { components } => {
            let lib = ctx.gadgets()?;
            let c = trivial_rigid_hard(components, &lib, &budget)?;
            show(out, &c.diagram, &c)?;
        }
        Construct::Pairing { diagram } => {
            let d = ctx.diagram(&diagram)?;
            let p = triangle_pairing(&d);
            if json {
                emit(out, &p)?;
            } else {
                writeln!(
                    out,
                    "|S| = {}, |Q| = {}, CS = {} (n = {})",
                    p.singles.len(),
                    p.pairs.len(),
                    p.planned_sums(),
                    d.crossing_count()
                )?;
            }
        }
        Construct::Gadgets { names, output } => {
            let names: Vec<GadgetName> = if names.is_empty() {
                GadgetName::ALL
                    .into_iter()
                    .filter(|g| ctx.g.extended || !g.is_extended())
                    .collect()
            } else {
                names
                    .iter()
                    .map(|n| n.parse())
                    .collect::<hardknots::Result<_>>()?
            };
            let en = Enumerator::new(ctx.exec);
            let opts = DiscoveryOptions {
                budget,
                extended: ctx.g.extended,
            };
            let mut lib = GadgetLibrary::default();
            for name in names {
                if name.is_extended() {
                    eprintln!("warning: {name} needs a 12-crossing search (minutes)");
                }
                lib.insert(discover_gadget(name, &en, &ctx.catalog, &opts)?);
            }
            let text = format!("# name\tattach\tpd\n{}", lib.to_tsv());
            match output {
                Some(p) => {
                    std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?
                }
                None => out.write_all(text.as_bytes())?,
            }
        }
    }
    Ok(())
}

mod erased {
    use super::*;

    /// Uniform output for construction results.
    pub trait Cert {
        fn emit(&self, out: &mut dyn Write) -> Result<()>;
        fn summary(&self) -> String;
    }

    impl Cert for hardknots::constructions::Construction {
        fn emit(&self, out: &mut dyn Write) -> Result<()> {
            serde_json::to_writer_pretty(&mut *out, self)?;
            writeln!(out)?;
            Ok(())
        }
        fn summary(&self) -> String {
            let c = &self.certificate;
            format!(
                "{:?}: {} crossings <= bound {}, {} sums, hard={} rigid={} shaky={}",
                c.mode,
                c.output_crossings,
                c.bound,
                c.sums,
                c.report.is_hard,
                c.report.is_rigid,
                c.report.is_shaky
            )
        }
    }

    impl Cert for hardknots::constructions::SplitConstruction {
        fn emit(&self, out: &mut dyn Write) -> Result<()> {
            serde_json::to_writer_pretty(&mut *out, self)?;
            writeln!(out)?;
            Ok(())
        }
        fn summary(&self) -> String {
            format!(
                "{} pieces, {} crossings",
                self.pieces.len(),
                self.diagram.crossing_count()
            )
        }
    }
}

fn one(
    ctx: &Ctx,
    arg: &str,
    mode: Mode,
    out: &mut impl Write,
    show: &dyn Fn(&mut dyn Write, &Diagram, &dyn erased::Cert) -> Result<()>,
) -> Result<()> {
    let d = ctx.diagram(arg)?;
    let lib = ctx.gadgets()?;
    let budget = ctx.budget();
    if d.piece_count() + d.free_loops() > 1 {
        let s = hardify_split(&d, mode, &lib, &ctx.catalog, &budget)?;
        return show(out, &s.diagram, &s);
    }
    let c = match mode {
        Mode::Shaky => shaky_hardify(&d, &lib, &ctx.catalog, &budget)?,
        _ => rigid_hardify(&d, mode, &lib, &ctx.catalog, &budget)?,
    };
    // Sanity check the link type survived, independent of the certificate.
    debug_assert_eq!(fingerprint(&c.diagram).ok(), fingerprint(&d).ok());
    show(out, &c.diagram, &c)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result.and(flushed.map_err(Into::into)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
