//! Subcommand implementations. Everything measured goes to `out` as CSV
//! with '#' comment lines; diagnostics go to stderr via `log`.

use std::fmt::Display;
use std::io::Write;
use std::path::Path;

use log::{info, warn};
use statdim::dimension::CONTINUUM_BALL_FORMULA;
use statdim::io::{load_graph_with_stats, save_names, save_types};
use statdim::{
    ball_profile, build_as_graph, build_device_graph, calibration_suite, confinement_report, degree_distribution,
    generate_hypercube, run_ensemble, save_graph, validate_lattice, EnsembleSpec, Graph, ItdkBundle, LatticeSpec,
    NodeId, OriginFilter,
};

use crate::{Channel, Command, Failure, IngestArgs};

type Out<'a> = &'a mut dyn Write;

/// Echoes the effective configuration. Thread count is deliberately left
/// out: output must not depend on it.
fn provenance(out: Out, command: &str, fields: &[(&str, &dyn Display)]) -> std::io::Result<()> {
    writeln!(out, "# statdim {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(out, "# command,{command}")?;
    for (k, v) in fields {
        writeln!(out, "# {k},{v}")?;
    }
    Ok(())
}

fn load(path: &Path) -> Result<Graph, Failure> {
    let (g, stats) = load_graph_with_stats(path)?;
    if stats.dropped() > 0 {
        info!("{}: canonicalization dropped {} edge line(s)", path.display(), stats.dropped());
    }
    Ok(g)
}

fn opt<T: Display>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |v| v.to_string())
}

pub(crate) fn run(cmd: &Command, out: Out) -> Result<(), Failure> {
    match cmd {
        Command::GenHypercube { dim, side, out: path } => {
            let spec = LatticeSpec::new(*dim, *side)?;
            let g = generate_hypercube(&spec)?;
            save_graph(&g, path)?;
            info!("wrote {} nodes, {} edges to {}", g.node_count(), g.edge_count(), path.display());
            Ok(())
        }
        Command::ValidateLattice { graph, dim, side } => {
            let spec = LatticeSpec::new(*dim, *side)?;
            let g = load(graph)?;
            let report = validate_lattice(&g, &spec);
            provenance(
                out,
                "validate-lattice",
                &[("graph", &graph.display()), ("dim", dim), ("side", side)],
            )?;
            write!(out, "{report}")?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Validation)
            }
        }
        Command::IngestItdk(args) => ingest(args, out),
        Command::Degree { graph, loglog } => {
            let g = load(graph)?;
            let dist = degree_distribution(&g)?;
            provenance(out, "degree", &[("graph", &graph.display()), ("loglog", loglog)])?;
            if *loglog {
                writeln!(out, "log(k),log(N(k))")?;
                for (lk, ln) in dist.loglog() {
                    writeln!(out, "{lk},{ln}")?;
                }
            } else {
                writeln!(out, "k,N(k)")?;
                for (k, n) in &dist.histogram {
                    writeln!(out, "{k},{n}")?;
                }
            }
            writeln!(out, "# nodes,{}", g.node_count())?;
            writeln!(out, "# edges,{}", g.edge_count())?;
            writeln!(out, "# mean_degree,{}", dist.mean_degree)?;
            writeln!(out, "# degree_dimension,{}", dist.degree_dimension)?;
            Ok(())
        }
        Command::Ball {
            graph,
            origin,
            rmax,
            exclude_origin,
        } => {
            let g = load(graph)?;
            let p = ball_profile(&g, NodeId(*origin), *rmax, !exclude_origin)?;
            provenance(
                out,
                "ball",
                &[
                    ("graph", &graph.display()),
                    ("origin", origin),
                    ("rmax", rmax),
                    ("include_origin", &!exclude_origin),
                ],
            )?;
            writeln!(out, "R,N")?;
            for (r, n) in p.cumulative.iter().enumerate() {
                writeln!(out, "{r},{n}")?;
            }
            writeln!(out, "# saturation_radius,{}", opt(p.eccentricity_reached()))?;
            Ok(())
        }
        Command::Dimension {
            graph,
            samples,
            rmax,
            seed,
            exclude_origin,
            giant_only,
        } => {
            let g = load(graph)?;
            let filter = if *giant_only {
                OriginFilter::GiantComponentOnly
            } else {
                OriginFilter::AllNodes
            };
            let spec = EnsembleSpec::new(*samples, *rmax, *seed)
                .include_origin(!exclude_origin)
                .origin_filter(filter);
            let stats = run_ensemble(&g, &spec)?;
            provenance(
                out,
                "dimension",
                &[
                    ("graph", &graph.display()),
                    ("nodes", &g.node_count()),
                    ("edges", &g.edge_count()),
                    ("samples", samples),
                    ("rmax", rmax),
                    ("seed", seed),
                    ("include_origin", &!exclude_origin),
                    ("origin_filter", &if *giant_only { "giant" } else { "all" }),
                    ("eligible_origins", &stats.eligible_count),
                ],
            )?;
            writeln!(out, "R,mean_raw,mean_calibrated,std,min,max")?;
            for r in &stats.rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.radius, r.mean_raw, r.mean_calibrated, r.std_calibrated, r.min_calibrated, r.max_calibrated
                )?;
            }
            let report = confinement_report(&stats, &g);
            writeln!(out, "# confinement")?;
            writeln!(out, "# samples,{}", report.sample_count)?;
            writeln!(out, "# confined_samples,{}", report.confined_samples)?;
            writeln!(out, "# confined_fraction,{}", report.confined_fraction)?;
            writeln!(out, "# mean_confinement_radius,{}", opt(report.mean_radius))?;
            writeln!(out, "# max_confinement_radius,{}", opt(report.max_radius))?;
            writeln!(out, "# components,{}", report.graph_components)?;
            writeln!(out, "# peak_radius,{}", stats.peak.0)?;
            writeln!(out, "# peak_mean_calibrated,{}", stats.peak.1)?;
            writeln!(out, "# decay,R,saturated_samples,mean_calibrated")?;
            for (r, n, m) in &report.decay {
                writeln!(out, "# decay,{r},{n},{m}")?;
            }
            Ok(())
        }
        Command::Calibrate {
            dims,
            side,
            samples,
            seed,
            rmax,
            exclude_origin,
        } => {
            let spec = EnsembleSpec::new(*samples, *rmax, *seed).include_origin(!exclude_origin);
            let rows = calibration_suite(dims, *side, &spec)?;
            let dims_text = dims.iter().map(u32::to_string).collect::<Vec<_>>().join(";");
            provenance(
                out,
                "calibrate",
                &[
                    ("dims", &dims_text),
                    ("side", side),
                    ("samples", samples),
                    ("rmax", rmax),
                    ("seed", seed),
                    ("include_origin", &!exclude_origin),
                ],
            )?;
            writeln!(out, "n,side,nodes,edges,samples,mean_calibrated,std,max_mean_calibrated,peak_R")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    r.dim,
                    r.side,
                    r.nodes,
                    r.edges,
                    r.samples,
                    r.mean_calibrated,
                    r.std_calibrated,
                    r.max_mean_calibrated,
                    r.peak_radius
                )?;
            }
            writeln!(out, "# continuum_ball_volume,{CONTINUUM_BALL_FORMULA}")?;
            for r in &rows {
                writeln!(out, "# continuum_ball_volume,n={},R={},{}", r.dim, rmax, r.continuum_volume)?;
            }
            Ok(())
        }
    }
}

fn ingest(args: &IngestArgs, out: Out) -> Result<(), Failure> {
    let bundle = ItdkBundle::new(&args.nodes, &args.links, args.node_as.clone());
    let parsed = bundle.parse()?;
    let device = build_device_graph(&parsed)?;
    let (graph, excluded) = match args.channel {
        Channel::Device => (device, None),
        Channel::As => {
            if args.node_as.is_none() {
                return Err(Failure::Usage("--channel as requires --node-as".into()));
            }
            let ch = build_as_graph(&parsed, &device)?;
            if ch.excluded > 0 {
                warn!("{} device(s) without an AS assignment excluded", ch.excluded);
            }
            (ch.graph, Some(ch.excluded))
        }
    };
    save_graph(&graph, &args.out)?;
    if let Some(path) = &args.names {
        if let Some(names) = graph.names() {
            save_names(names, path)?;
        }
    }
    if let Some(path) = &args.types {
        save_types(graph.types(), path)?;
    }
    let channel = match args.channel {
        Channel::Device => "device",
        Channel::As => "as",
    };
    provenance(
        out,
        "ingest-itdk",
        &[
            ("nodes_file", &args.nodes.display()),
            ("links_file", &args.links.display()),
            ("node_as_file", &opt(args.node_as.as_ref().map(|p| p.display()))),
            ("channel", &channel),
            ("out", &args.out.display()),
        ],
    )?;
    writeln!(out, "# itdk_nodes,{}", parsed.node_count())?;
    writeln!(out, "# itdk_links,{}", parsed.link_count())?;
    writeln!(out, "# as_assigned_devices,{}", parsed.assigned_count())?;
    writeln!(out, "# warnings,{}", parsed.warnings.len())?;
    writeln!(out, "# graph_nodes,{}", graph.node_count())?;
    writeln!(out, "# graph_edges,{}", graph.edge_count())?;
    writeln!(out, "# excluded_devices,{}", opt(excluded))?;
    Ok(())
}
