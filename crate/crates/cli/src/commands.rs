use pseudoherm_core::blockcirc::{self, BlockEnsemble};
use pseudoherm_core::circulant::{self, cdf_cc, cdf_generic, cdf_rc, pdf_cc, pdf_generic, pdf_rc};
use pseudoherm_core::pseudo2x2::{self, spacing_cdf_f1, spacing_pdf_f1};
use pseudoherm_core::stats::{histogram, ks_statistic, normalize_unit_mean, sorted, uniform_edges};
use pseudoherm_core::walk::{self, rmt_decay_asymptotic, rmt_decay_monte_carlo, rmt_decay_scaled, WalkConfig, WalkState};
use pseudoherm_core::{ClassifiedSpacings, Family, GofReport, PairSelection, SpacingClass, SpacingSample};

use crate::args::{BlocksArg, ClassArg, Command, CyclicArgs, DecayArgs, PairsArg, Sector, Spacing2x2Args, WalkArgs};
use crate::config::FlatConfig;
use crate::error::{CliError, CliResult};
use crate::output::{Artifact, Table};

/// Settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub seed: u64,
    pub bins: usize,
}

/// A goodness-of-fit outcome; `enforced` reports count towards `--assert`.
#[derive(Debug, Clone)]
pub struct Fit {
    pub label: String,
    pub report: GofReport,
    pub enforced: bool,
}

#[derive(Debug)]
pub struct Outcome {
    /// The command with every default and config-file value filled in.
    pub resolved: Command,
    pub artifacts: Vec<Artifact>,
    pub fits: Vec<Fit>,
}

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

pub fn run(cmd: &Command, ctx: Context) -> CliResult<Outcome> {
    if ctx.bins == 0 {
        return usage("--bins must be at least 1");
    }
    match cmd {
        Command::Spacing2x2(a) => spacing2x2(a, ctx),
        Command::SpacingCyclic(a) => spacing_cyclic(a, ctx),
        Command::Walk(a) => walk_cmd(a),
        Command::RmtDecay(a) => rmt_decay(a, ctx),
        Command::Replay(_) => usage("replay cannot be nested"),
    }
}

fn density_table(
    sample: &[f64],
    range_max: f64,
    bins: usize,
    units: (&str, &str),
    analytic: Option<(&str, &dyn Fn(f64) -> f64)>,
) -> CliResult<Table> {
    let h = histogram(sample, &uniform_edges(0.0, range_max, bins))?.with_density();
    let mut header = vec![format!("bin_center[{}]", units.0), format!("empirical_density[{}]", units.1)];
    if let Some((name, _)) = analytic {
        header.push(format!("{name}[{}]", units.1));
    }
    let mut table = Table::new(header);
    for (x, d) in h.centers().into_iter().zip(h.values()) {
        let mut row = vec![x, d];
        if let Some((_, f)) = analytic {
            row.push(f(x));
        }
        table.push(row);
    }
    Ok(table)
}

fn spacing2x2(args: &Spacing2x2Args, ctx: Context) -> CliResult<Outcome> {
    let family = Family::from_tag(&args.family, args.epsilon)?;
    if !(args.sigma > 0.0) || args.count == 0 || !(args.range_max > 0.0) {
        return usage("spacing2x2 needs sigma > 0, count >= 1 and range-max > 0");
    }
    let spacings = pseudo2x2::ensemble_spacings(&family, args.count, args.sigma, ctx.seed)?;
    let (sample, sector) = match args.sector {
        Sector::Real => (&spacings.real, "real"),
        Sector::Cc => (&spacings.cc, "cc"),
    };
    if sample.is_empty() {
        return Err(CliError::Numeric(format!("no draws of {} fell in the {sector} sector", family.tag())));
    }
    let sigma = args.sigma;
    let with_law = matches!(family, Family::AntidiagImag) && args.sector == Sector::Real;
    let pdf = move |s: f64| spacing_pdf_f1(s, sigma);
    let analytic: Option<(&str, &dyn Fn(f64) -> f64)> = with_law.then_some(("analytic_density", &pdf as _));
    let stem = format!("spacing2x2_{}_{sector}", family.tag());
    let table = density_table(&sample.values, args.range_max * sigma, ctx.bins, ("S", "1/S"), analytic)?;
    let mut artifacts = vec![table.into_artifact(format!("{stem}.csv"))?];
    let mut fits = Vec::new();
    if with_law {
        let report = ks_statistic(&sorted(&sample.values), |s| spacing_cdf_f1(s, sigma), args.ks_threshold)?;
        artifacts.push(Artifact::json(format!("{stem}_gof.json"), &report)?);
        fits.push(Fit { label: stem.clone(), report, enforced: true });
    }
    Ok(Outcome { resolved: Command::Spacing2x2(args.clone()), artifacts, fits })
}

type Law = (fn(f64) -> f64, fn(f64) -> f64);

fn law_of(class: SpacingClass) -> Law {
    match class {
        SpacingClass::Cc => (pdf_cc, cdf_cc),
        SpacingClass::Rc => (pdf_rc, cdf_rc),
        _ => (pdf_generic, cdf_generic),
    }
}

fn spacing_cyclic(args: &CyclicArgs, ctx: Context) -> CliResult<Outcome> {
    let n = args.n;
    if n < 3 {
        return usage(format!("spacing-cyclic needs N >= 3, got {n}"));
    }
    if args.count == 0 || !(args.range_max > 0.0) {
        return usage("spacing-cyclic needs count >= 1 and range-max > 0");
    }
    // conjugate pairs per spectrum; generic spacings need at least two
    let pairs = match args.blocks {
        BlocksArg::None => (n - 1) / 2,
        _ => n,
    };
    let mut classes = match args.class {
        ClassArg::Cc => vec![SpacingClass::Cc],
        ClassArg::Rc => vec![SpacingClass::Rc],
        ClassArg::Generic => vec![SpacingClass::Generic],
        ClassArg::All => vec![SpacingClass::Cc, SpacingClass::Rc, SpacingClass::Generic],
    };
    if pairs < 2 {
        if args.class == ClassArg::Generic {
            return usage(format!("no generic pairs at N={n}"));
        }
        classes.retain(|c| *c != SpacingClass::Generic);
    }
    let selection = match args.pairs {
        PairsArg::All => PairSelection::AllPairs,
        PairsArg::Nearest => PairSelection::NearestNeighbor,
    };
    let spacings: ClassifiedSpacings = match args.blocks {
        BlocksArg::None => circulant::ensemble_spacings(n, args.a, args.count, ctx.seed, selection)?,
        BlocksArg::Gaussian => blockcirc::ensemble_spacings(BlockEnsemble::Gaussian, n, args.count, ctx.seed, selection)?,
        BlocksArg::Ising => blockcirc::ensemble_spacings(
            BlockEnsemble::Ising { std: args.ising_std },
            n,
            args.count,
            ctx.seed,
            selection,
        )?,
    };
    let threshold = args.ks_threshold.unwrap_or(match args.blocks {
        BlocksArg::None => 0.015,
        BlocksArg::Gaussian => 0.02,
        BlocksArg::Ising => 0.05,
    });
    let mut artifacts = Vec::new();
    let mut fits = Vec::new();
    for class in classes {
        let raw: &SpacingSample = spacings.get(class).expect("cyclic class");
        if raw.is_empty() {
            return Err(CliError::Numeric(format!("no {} spacings were produced", class.name())));
        }
        let values = sorted(&normalize_unit_mean(raw)?.values);
        let (pdf, cdf) = law_of(class);
        let reference_only = args.blocks == BlocksArg::Ising && class != SpacingClass::Cc;
        let column = if reference_only { "reference_density" } else { "analytic_density" };
        let table = density_table(&values, args.range_max, ctx.bins, ("1", "1"), Some((column, &pdf)))?;
        let stem = format!("spacing_cyclic_{}", class.name());
        artifacts.push(table.into_artifact(format!("{stem}.csv"))?);
        let report = ks_statistic(&values, cdf, threshold)?;
        artifacts.push(Artifact::json(format!("{stem}_gof.json"), &report)?);
        fits.push(Fit { label: stem, report, enforced: !reference_only });
    }
    Ok(Outcome { resolved: Command::SpacingCyclic(args.clone()), artifacts, fits })
}

const WALK_KEYS: [&str; 6] = ["sites", "w", "p", "row", "start", "t_max"];
const DEFAULT_T_MAX: u64 = 2000;

/// Merges the config file (if any) under the command-line flags.
pub fn resolve_walk(args: &WalkArgs) -> CliResult<WalkArgs> {
    let file = match &args.config {
        Some(path) => FlatConfig::load(path)?,
        None => FlatConfig::default(),
    };
    file.check_keys(&WALK_KEYS)?;
    Ok(WalkArgs {
        config: None,
        sites: args.sites.or(file.get("sites")?),
        w: args.w.or(file.get("w")?),
        p: args.p.or(file.get("p")?),
        row: args.row.clone().or(file.get_list("row")?),
        start: Some(args.start.or(file.get("start")?).unwrap_or(1)),
        t_max: Some(args.t_max.or(file.get("t_max")?).unwrap_or(DEFAULT_T_MAX)),
    })
}

fn walk_config(r: &WalkArgs) -> CliResult<WalkConfig> {
    let cfg = match (&r.row, r.sites, r.w, r.p) {
        (Some(row), sites, _, _) => {
            if let Some(s) = sites {
                if s != row.len() {
                    return usage(format!("sites = {s} but the hop row has {} entries", row.len()));
                }
            }
            WalkConfig::general(row.clone())
        }
        (None, Some(sites), Some(w), Some(p)) => WalkConfig::biased(sites, w, p),
        _ => return usage("walk needs either row, or all of sites, w and p"),
    };
    Ok(cfg?)
}

fn walk_cmd(args: &WalkArgs) -> CliResult<Outcome> {
    let resolved = resolve_walk(args)?;
    let cfg = walk_config(&resolved)?;
    let sites = cfg.sites();
    let start = resolved.start.expect("resolved");
    if start == 0 || start > sites {
        return usage(format!("start site must lie in 1..={sites}, got {start}"));
    }
    let p0 = WalkState::delta(sites, start - 1)?;
    let traj = walk::trajectory(&cfg, &p0, resolved.t_max.expect("resolved"))?;
    let mut table = Table::new(["t[steps]", "entropy[k_B]", "max_abs_deviation[probability]"]);
    for s in &traj {
        table.push(vec![s.t as f64, s.entropy, s.max_deviation]);
    }
    Ok(Outcome {
        resolved: Command::Walk(resolved),
        artifacts: vec![table.into_artifact("walk.csv")?],
        fits: Vec::new(),
    })
}

fn rmt_decay(args: &DecayArgs, ctx: Context) -> CliResult<Outcome> {
    if args.t_max < 1 {
        return usage("rmt-decay needs t-max >= 1");
    }
    if args.realizations > 0 && args.n < 3 {
        return usage(format!("Monte Carlo column needs N >= 3, got {}", args.n));
    }
    if let Some(bad) = args.sizes.iter().find(|&&n| n < 2) {
        return usage(format!("lattice sizes must be at least 2, got {bad}"));
    }
    let mut header = vec!["t[steps]", "closed_form[N*p]", "asymptotic[N*p]", "percent_difference[%]"];
    let monte_carlo = args.realizations > 0;
    if monte_carlo {
        header.push("monte_carlo[N*p]");
    }
    let mut curves = Table::new(header);
    let mut errors = Table::new(["t[steps]", "monte_carlo[N*p]", "std_err[N*p]"]);
    // Long format keeps every curve file within a handful of columns.
    let mut sizes = Table::new(["t[steps]", "N[sites]", "mean_deviation[probability]", "scaled_deviation[N*p]"]);
    for t in 0..=args.t_max {
        let exact = rmt_decay_scaled(t)?;
        let asym = rmt_decay_asymptotic(t);
        let mut row = vec![t as f64, exact, asym, 100.0 * (asym - exact).abs() / exact];
        if monte_carlo {
            let mc = rmt_decay_monte_carlo(args.n, t, args.realizations, ctx.seed)?;
            row.push(mc.mean);
            errors.push(vec![t as f64, mc.mean, mc.std_err]);
        }
        curves.push(row);
        for &n in &args.sizes {
            sizes.push(vec![t as f64, n as f64, exact / n as f64, exact]);
        }
    }
    let mut artifacts = vec![curves.into_artifact("rmt_decay.csv")?];
    if monte_carlo {
        artifacts.push(errors.into_artifact("rmt_decay_monte_carlo.csv")?);
    }
    if !args.sizes.is_empty() {
        artifacts.push(sizes.into_artifact("rmt_decay_sizes.csv")?);
    }
    Ok(Outcome {
        resolved: Command::RmtDecay(args.clone()),
        artifacts,
        fits: Vec::new(),
    })
}
