//! `bigrr`: batch classification of pairs (R, M) — a finite group with an
//! index-2 subgroup — for bipartite digraphical/graphical regular
//! representations.
//!
//! Exit codes: 0 success, 1 usage error (bad flags, malformed specs, bad
//! indices), 2 computational-cap error (group/digraph/subset-space too
//! large). Identical invocations produce byte-identical payloads.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bigrr::aut::AutError;
use bigrr::bounds::{bound_crossover, drr_lower_bound};
use bigrr::catalog::find_group;
use bigrr::cayley::CayleyError;
use bigrr::graph_aut::GraphAutError;
use bigrr::group::{build_group, FiniteGroup, GroupError, GroupSpec, Subgroup};
use bigrr::obstruction::obstruction_status;
use bigrr::search::{
    exhaustive_count, search_representation, verify_counting_lemmas, SearchError, SearchMode,
    SearchReport, SearchStatus,
};
use bigrr::tables::{reproduce_tables, TablesConfig};

#[derive(Parser)]
#[command(
    name = "bigrr",
    version,
    about = "Bipartite DRR/GRR classification for (group, index-2 subgroup) pairs",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (default: $BIGRR_WORKERS, else one per core). Output
    /// does not depend on this.
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Report format. CSV is available for `search` and `count`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Drr,
    Grr,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> SearchMode {
        match m {
            ModeArg::Drr => SearchMode::Drr,
            ModeArg::Grr => SearchMode::Grr,
        }
    }
}

/// Exactly one way of naming the group R.
#[derive(Args)]
#[group(id = "spec", required = true, multiple = false)]
struct GroupSpecArgs {
    /// Cyclic group of order N.
    #[arg(long, value_name = "N", group = "spec")]
    cyclic: Option<usize>,
    /// Abelian group as comma-separated cyclic factors, e.g. `4,2`.
    #[arg(long, value_name = "LIST", value_delimiter = ',', group = "spec")]
    abelian: Option<Vec<usize>>,
    /// Generalized dihedral group over the given abelian factors.
    #[arg(long = "gen-dihedral", value_name = "LIST", value_delimiter = ',', group = "spec")]
    gen_dihedral: Option<Vec<usize>>,
    /// Dicyclic group of order 4N (N=2 gives Q8).
    #[arg(long, value_name = "N", group = "spec")]
    dicyclic: Option<usize>,
    /// Cayley-table file: JSON `{order, table, name?}` or plain text.
    #[arg(long, value_name = "PATH", group = "spec")]
    table_file: Option<PathBuf>,
    /// Catalog entry by label, e.g. `D4`, `Q8xC2`, `SL2(3)`.
    #[arg(long, value_name = "LABEL", group = "spec")]
    catalog: Option<String>,
}

/// Which index-2 subgroups a pair command works on.
#[derive(Args)]
#[group(id = "selector", required = true, multiple = false)]
struct SubgroupArgs {
    /// Index into the ordered list printed by `subgroups`.
    #[arg(long, value_name = "IDX", group = "selector")]
    subgroup: Option<usize>,
    /// Run over every index-2 subgroup.
    #[arg(long, group = "selector")]
    all: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group and print structural facts.
    Group {
        #[command(flatten)]
        spec: GroupSpecArgs,
    },
    /// List the index-2 subgroups of a group.
    Subgroups {
        #[command(flatten)]
        spec: GroupSpecArgs,
    },
    /// GRR obstruction status (half-inverting automorphism witnesses).
    Obstruct {
        #[command(flatten)]
        spec: GroupSpecArgs,
        #[command(flatten)]
        selector: SubgroupArgs,
    },
    /// Randomized search for a bipartite DRR/GRR connection set.
    Search {
        #[command(flatten)]
        spec: GroupSpecArgs,
        #[command(flatten)]
        selector: SubgroupArgs,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Randomized trial budget (≥ 1).
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Exhaustively count bipartite DRR/GRR connection sets.
    Count {
        #[command(flatten)]
        spec: GroupSpecArgs,
        #[command(flatten)]
        selector: SubgroupArgs,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Replay the no-DRR / no-GRR classification tables over the catalog.
    Tables {
        /// Process catalog pairs with |R| ≤ this order.
        #[arg(long, default_value_t = 24)]
        max_order: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Exhaustive confirmation cap: subset spaces with more bits than
        /// this get randomized (non-proof) evidence instead.
        #[arg(long, default_value_t = 16, value_name = "BITS")]
        exhaustive_bits: usize,
    },
    /// Evaluate the bipartite-DRR count lower bound.
    Bounds {
        /// Evaluate at a single even order.
        #[arg(
            long,
            value_name = "ORDER",
            required_unless_present = "crossover",
            conflicts_with = "crossover"
        )]
        n: Option<u64>,
        /// Print the smallest even order from which the bound stays positive.
        #[arg(long)]
        crossover: bool,
    },
    /// Check the subset-counting identities for pairs (R, M).
    Verify {
        #[command(flatten)]
        spec: GroupSpecArgs,
        #[command(flatten)]
        selector: SubgroupArgs,
    },
}

struct AppError {
    message: String,
    code: i32,
}

impl AppError {
    fn usage(message: impl Into<String>) -> Self {
        AppError { message: message.into(), code: 1 }
    }

    fn cap(message: impl Into<String>) -> Self {
        AppError { message: message.into(), code: 2 }
    }
}

impl From<GroupError> for AppError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::OrderCap { .. } => AppError::cap(e.to_string()),
            _ => AppError::usage(e.to_string()),
        }
    }
}

impl From<AutError> for AppError {
    fn from(e: AutError) -> Self {
        match e {
            AutError::CapExceeded { .. } => AppError::cap(e.to_string()),
            AutError::Group(inner) => inner.into(),
            AutError::NotInvariant => AppError::usage(e.to_string()),
        }
    }
}

impl From<CayleyError> for AppError {
    fn from(e: CayleyError) -> Self {
        match e {
            CayleyError::SizeExceeded { .. } => AppError::cap(e.to_string()),
            _ => AppError::usage(e.to_string()),
        }
    }
}

impl From<GraphAutError> for AppError {
    fn from(e: GraphAutError) -> Self {
        match e {
            GraphAutError::SizeExceeded { .. } => AppError::cap(e.to_string()),
            GraphAutError::Cayley(inner) => inner.into(),
            GraphAutError::InvalidPartition(_) => AppError::usage(e.to_string()),
        }
    }
}

impl From<SearchError> for AppError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::SpaceTooLarge { .. } => AppError::cap(e.to_string()),
            SearchError::GraphAut(inner) => inner.into(),
            SearchError::Cayley(inner) => inner.into(),
            SearchError::Aut(inner) => inner.into(),
        }
    }
}

/// The group named on the command line, with its display label and GAP id
/// (when the catalog knows one).
struct ResolvedGroup {
    group: FiniteGroup,
    label: String,
    gap: Option<(u32, u32)>,
}

fn resolve_group(args: &GroupSpecArgs) -> Result<ResolvedGroup, AppError> {
    if let Some(label) = &args.catalog {
        let entry = find_group(label)
            .ok_or_else(|| AppError::usage(format!("unknown catalog label `{label}`")))?;
        let group = entry.build()?;
        return Ok(ResolvedGroup { group, label: entry.label.clone(), gap: entry.gap });
    }
    let spec = if let Some(n) = args.cyclic {
        GroupSpec::Cyclic(n)
    } else if let Some(invs) = &args.abelian {
        GroupSpec::Abelian(invs.clone())
    } else if let Some(invs) = &args.gen_dihedral {
        GroupSpec::GeneralizedDihedral(invs.clone())
    } else if let Some(n) = args.dicyclic {
        GroupSpec::Dicyclic(n)
    } else if let Some(path) = &args.table_file {
        GroupSpec::TableFile(path.clone())
    } else {
        unreachable!("clap enforces exactly one spec flag");
    };
    let group = build_group(&spec)?;
    let label = group.name().unwrap_or("G").to_string();
    Ok(ResolvedGroup { group, label, gap: None })
}

fn selected_pairs(
    r: &FiniteGroup,
    selector: &SubgroupArgs,
) -> Result<Vec<(usize, Subgroup)>, AppError> {
    let subs = r.index2_subgroups();
    if selector.all {
        return Ok(subs.into_iter().enumerate().collect());
    }
    let idx = selector.subgroup.expect("clap enforces subgroup or --all");
    let count = subs.len();
    subs.into_iter().nth(idx).map(|m| vec![(idx, m)]).ok_or_else(|| {
        AppError::usage(format!(
            "subgroup index {idx} out of range: the group has {count} index-2 subgroup(s)"
        ))
    })
}

#[derive(Serialize)]
struct GroupInfo {
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    gap: Option<(u32, u32)>,
    order: usize,
    abelian: bool,
    order_census: BTreeMap<usize, usize>,
    center_order: usize,
    derived_order: usize,
    index2_subgroups: usize,
}

#[derive(Serialize)]
struct SubgroupInfo {
    index: usize,
    order: usize,
    abelian: bool,
    members: Vec<usize>,
}

#[derive(Serialize)]
struct SubgroupsInfo {
    label: String,
    order: usize,
    subgroups: Vec<SubgroupInfo>,
}

#[derive(Serialize)]
struct ObstructionRow {
    group: String,
    subgroup: usize,
    witness: bigrr::obstruction::ObstructionWitness,
}

fn json_payload<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Single-pair invocations print one object; `--all` prints an array.
fn pair_payload<T: Serialize>(rows: &[T], all: bool) -> String {
    if all {
        json_payload(&rows)
    } else {
        json_payload(&rows[0])
    }
}

fn csv_field(value: &str) -> String {
    if value.contains([',', '"', '\n']) {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

fn csv_payload(resolved: &ResolvedGroup, reports: &[SearchReport]) -> String {
    let mut out = String::from("group,label,subgroup,mode,status,trials,seed,found_set\n");
    let gap = resolved.gap.map(|(o, i)| format!("{o}.{i}")).unwrap_or_default();
    for rep in reports {
        let found = match &rep.status {
            SearchStatus::Found { set } => {
                set.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(";")
            }
            _ => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            csv_field(&rep.group),
            csv_field(&gap),
            rep.subgroup,
            rep.mode,
            rep.status.label(),
            rep.trials,
            rep.seed,
            csv_field(&found),
        ));
    }
    out
}

fn run(cli: &Cli) -> Result<String, AppError> {
    if cli.format == Format::Csv
        && !matches!(cli.command, Command::Search { .. } | Command::Count { .. })
    {
        return Err(AppError::usage("--format csv is only available for `search` and `count`"));
    }
    match &cli.command {
        Command::Group { spec } => {
            let resolved = resolve_group(spec)?;
            let g = &resolved.group;
            let info = GroupInfo {
                label: resolved.label,
                gap: resolved.gap,
                order: g.order(),
                abelian: g.is_abelian(),
                order_census: g.order_census(),
                center_order: g.center().len(),
                derived_order: g.derived_subgroup().len(),
                index2_subgroups: g.index2_subgroups().len(),
            };
            Ok(json_payload(&info))
        }
        Command::Subgroups { spec } => {
            let resolved = resolve_group(spec)?;
            let g = &resolved.group;
            let subgroups = g
                .index2_subgroups()
                .into_iter()
                .enumerate()
                .map(|(index, m)| SubgroupInfo {
                    index,
                    order: m.len(),
                    abelian: m.is_abelian(g),
                    members: m.members().to_vec(),
                })
                .collect();
            let info =
                SubgroupsInfo { label: resolved.label, order: resolved.group.order(), subgroups };
            Ok(json_payload(&info))
        }
        Command::Obstruct { spec, selector } => {
            let resolved = resolve_group(spec)?;
            let rows: Vec<ObstructionRow> = selected_pairs(&resolved.group, selector)?
                .into_iter()
                .map(|(idx, m)| ObstructionRow {
                    group: resolved.label.clone(),
                    subgroup: idx,
                    witness: obstruction_status(&resolved.group, &m),
                })
                .collect();
            Ok(pair_payload(&rows, selector.all))
        }
        Command::Search { spec, selector, mode, trials, seed } => {
            if *trials == 0 {
                return Err(AppError::usage("--trials must be ≥ 1"));
            }
            let resolved = resolve_group(spec)?;
            let mut reports = Vec::new();
            for (idx, m) in selected_pairs(&resolved.group, selector)? {
                reports.push(search_representation(
                    &resolved.group,
                    &m,
                    &resolved.label,
                    idx,
                    (*mode).into(),
                    *trials,
                    *seed,
                )?);
            }
            Ok(match cli.format {
                Format::Json => pair_payload(&reports, selector.all),
                Format::Csv => csv_payload(&resolved, &reports),
            })
        }
        Command::Count { spec, selector, mode } => {
            let resolved = resolve_group(spec)?;
            let mut reports = Vec::new();
            for (idx, m) in selected_pairs(&resolved.group, selector)? {
                reports.push(exhaustive_count(
                    &resolved.group,
                    &m,
                    &resolved.label,
                    idx,
                    (*mode).into(),
                )?);
            }
            Ok(match cli.format {
                Format::Json => pair_payload(&reports, selector.all),
                Format::Csv => csv_payload(&resolved, &reports),
            })
        }
        Command::Tables { max_order, trials, seed, exhaustive_bits } => {
            if *trials == 0 {
                return Err(AppError::usage("--trials must be ≥ 1"));
            }
            let config = TablesConfig {
                max_order: *max_order,
                trials: *trials,
                seed: *seed,
                exhaustive_cap_bits: *exhaustive_bits,
            };
            let report = reproduce_tables(&config)?;
            Ok(json_payload(&report))
        }
        Command::Bounds { n, crossover } => {
            if *crossover {
                return Ok(format!("{}\n", bound_crossover()));
            }
            let n = n.expect("clap requires --n unless --crossover");
            if n < 2 || n % 2 != 0 {
                return Err(AppError::usage("--n must be an even order ≥ 2"));
            }
            Ok(json_payload(&drr_lower_bound(n)))
        }
        Command::Verify { spec, selector } => {
            let resolved = resolve_group(spec)?;
            let mut reports = Vec::new();
            for (idx, m) in selected_pairs(&resolved.group, selector)? {
                reports.push(verify_counting_lemmas(&resolved.group, &m, idx)?);
            }
            Ok(pair_payload(&reports, selector.all))
        }
    }
}

fn configure_workers(cli: &Cli) -> Result<(), AppError> {
    let workers = match cli.workers {
        Some(n) => Some(n),
        None => match std::env::var("BIGRR_WORKERS") {
            Ok(v) => Some(v.parse::<usize>().map_err(|_| {
                AppError::usage(format!("BIGRR_WORKERS must be a positive integer, got `{v}`"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = workers {
        if n == 0 {
            return Err(AppError::usage("worker count must be ≥ 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("worker pool is configured once, before any parallel work");
    }
    Ok(())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let result = configure_workers(&cli).and_then(|()| run(&cli));
    match result {
        Ok(payload) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &payload) {
                    eprintln!("error: writing {}: {e}", path.display());
                    std::process::exit(1);
                }
            } else {
                print!("{payload}");
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}
