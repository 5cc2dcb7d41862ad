//! Randomized-origin ensembles of ball probes and their per-radius
//! statistics, plus the hypercube calibration table built on them.
//!
//! Origins are drawn once, up front, from a ChaCha stream seeded by the
//! caller, then sorted. Probes fan out over rayon's current pool and are
//! folded back in origin order, so results are bit-identical for any
//! thread count.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::ball::BallProber;
use crate::dimension::{continuum_ball_volume, dimension_profile, DimensionProfile, MIN_HOPS};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::lattice::{generate_hypercube, LatticeSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OriginFilter {
    #[default]
    AllNodes,
    GiantComponentOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnsembleSpec {
    pub sample_count: usize,
    pub r_max: u32,
    pub seed: u64,
    pub include_origin: bool,
    pub origin_filter: OriginFilter,
}

impl EnsembleSpec {
    pub fn new(sample_count: usize, r_max: u32, seed: u64) -> Self {
        EnsembleSpec {
            sample_count,
            r_max,
            seed,
            include_origin: true,
            origin_filter: OriginFilter::AllNodes,
        }
    }

    pub fn include_origin(mut self, include: bool) -> Self {
        self.include_origin = include;
        self
    }

    pub fn origin_filter(mut self, filter: OriginFilter) -> Self {
        self.origin_filter = filter;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.sample_count == 0 {
            return Err(Error::InvalidArgument("sample count must be at least 1".into()));
        }
        if self.r_max < MIN_HOPS {
            return Err(Error::InvalidArgument(format!(
                "r_max must be at least {MIN_HOPS}, got {}",
                self.r_max
            )));
        }
        Ok(())
    }
}

/// Statistics of the ensemble at one radius.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusStats {
    pub radius: u32,
    pub mean_raw: f64,
    pub mean_calibrated: f64,
    /// Population standard deviation of the calibrated dimension.
    pub std_calibrated: f64,
    pub min_calibrated: f64,
    pub max_calibrated: f64,
    /// Samples whose ball had stopped growing by this radius.
    pub saturated_samples: usize,
    /// Mean calibrated dimension over those saturated samples.
    pub saturated_mean_calibrated: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleStats {
    pub spec: EnsembleSpec,
    /// Sampled origins, ascending.
    pub origins: Vec<NodeId>,
    pub eligible_count: usize,
    pub rows: Vec<RadiusStats>,
    /// Per-origin saturation radius, aligned with `origins`.
    pub confinement_radii: Vec<Option<u32>>,
    pub confined_fraction: f64,
    pub mean_confinement_radius: Option<f64>,
    /// `(R*, max over R of mean_calibrated)`.
    pub peak: (u32, f64),
}

impl EnsembleStats {
    pub fn sample_count(&self) -> usize {
        self.origins.len()
    }

    pub fn at(&self, radius: u32) -> Option<&RadiusStats> {
        self.rows.iter().find(|r| r.radius == radius)
    }

    pub fn last(&self) -> &RadiusStats {
        self.rows.last().expect("r_max >= 2 gives at least one row")
    }

    pub fn max_confinement_radius(&self) -> Option<u32> {
        self.confinement_radii.iter().flatten().copied().max()
    }
}

fn eligible_origins(g: &Graph, filter: OriginFilter) -> Vec<NodeId> {
    match filter {
        OriginFilter::AllNodes => g.nodes().collect(),
        OriginFilter::GiantComponentOnly => g.giant_component(),
    }
}

/// Draws `count` distinct origins uniformly from `eligible`, ascending.
pub fn sample_origins(eligible: &[NodeId], count: usize, seed: u64) -> Result<Vec<NodeId>> {
    if count > eligible.len() {
        return Err(Error::TooManySamples {
            requested: count,
            eligible: eligible.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<NodeId> = index::sample(&mut rng, eligible.len(), count)
        .into_iter()
        .map(|i| eligible[i])
        .collect();
    picked.sort_unstable();
    Ok(picked)
}

/// Probes every origin and returns their dimension profiles in input order.
pub fn probe_origins(g: &Graph, origins: &[NodeId], r_max: u32, include_origin: bool) -> Result<Vec<DimensionProfile>> {
    origins
        .par_iter()
        .map_init(
            || BallProber::for_graph(g),
            |prober, &o| {
                let ball = prober.profile(g, o, r_max, include_origin)?;
                dimension_profile(&ball)
            },
        )
        .collect()
}

pub fn run_ensemble(g: &Graph, spec: &EnsembleSpec) -> Result<EnsembleStats> {
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    spec.validate()?;
    let eligible = eligible_origins(g, spec.origin_filter);
    let origins = sample_origins(&eligible, spec.sample_count, spec.seed)?;
    let profiles = probe_origins(g, &origins, spec.r_max, spec.include_origin)?;
    Ok(aggregate(spec, origins, eligible.len(), &profiles))
}

fn aggregate(spec: &EnsembleSpec, origins: Vec<NodeId>, eligible_count: usize, profiles: &[DimensionProfile]) -> EnsembleStats {
    let count = profiles.len() as f64;
    let radii = &profiles[0].radii;
    let mut rows = Vec::with_capacity(radii.len());
    for (i, &radius) in radii.iter().enumerate() {
        let mut sum_raw = 0.0;
        let mut sum_cal = 0.0;
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut sat_sum = 0.0;
        let mut saturated = 0usize;
        for p in profiles {
            let c = p.calibrated[i];
            sum_raw += p.raw[i];
            sum_cal += c;
            min = min.min(c);
            max = max.max(c);
            if p.saturation_radius.is_some_and(|s| s <= radius) {
                saturated += 1;
                sat_sum += c;
            }
        }
        let mean = sum_cal / count;
        let var = profiles
            .iter()
            .map(|p| (p.calibrated[i] - mean).powi(2))
            .sum::<f64>()
            / count;
        rows.push(RadiusStats {
            radius,
            mean_raw: sum_raw / count,
            // Rounding can push a mean of identical values a hair outside them.
            mean_calibrated: mean.clamp(min, max),
            std_calibrated: var.sqrt(),
            min_calibrated: min,
            max_calibrated: max,
            saturated_samples: saturated,
            saturated_mean_calibrated: (saturated > 0).then(|| sat_sum / saturated as f64),
        });
    }

    let confinement_radii: Vec<Option<u32>> = profiles.iter().map(|p| p.saturation_radius).collect();
    let confined: Vec<u32> = confinement_radii.iter().flatten().copied().collect();
    let confined_fraction = confined.len() as f64 / count;
    let mean_confinement_radius = (!confined.is_empty())
        .then(|| confined.iter().map(|&r| r as f64).sum::<f64>() / confined.len() as f64);

    let mut peak = (rows[0].radius, rows[0].mean_calibrated);
    for r in &rows[1..] {
        if r.mean_calibrated > peak.1 {
            peak = (r.radius, r.mean_calibrated);
        }
    }

    EnsembleStats {
        spec: *spec,
        origins,
        eligible_count,
        rows,
        confinement_radii,
        confined_fraction,
        mean_confinement_radius,
        peak,
    }
}

/// Post-saturation view of an ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfinementReport {
    pub sample_count: usize,
    pub confined_samples: usize,
    pub confined_fraction: f64,
    pub mean_radius: Option<f64>,
    pub max_radius: Option<u32>,
    pub graph_nodes: usize,
    pub graph_components: usize,
    /// `(R, saturated samples, their mean calibrated dimension)` for each
    /// radius at which at least one sample had saturated. The numerator is
    /// frozen there, so these values only decay.
    pub decay: Vec<(u32, usize, f64)>,
}

pub fn confinement_report(stats: &EnsembleStats, g: &Graph) -> ConfinementReport {
    let confined_samples = stats.confinement_radii.iter().flatten().count();
    ConfinementReport {
        sample_count: stats.sample_count(),
        confined_samples,
        confined_fraction: stats.confined_fraction,
        mean_radius: stats.mean_confinement_radius,
        max_radius: stats.max_confinement_radius(),
        graph_nodes: g.node_count(),
        graph_components: g.components().1,
        decay: stats
            .rows
            .iter()
            .filter_map(|r| r.saturated_mean_calibrated.map(|m| (r.radius, r.saturated_samples, m)))
            .collect(),
    }
}

/// One row of the hypercube calibration table.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationRow {
    pub dim: u32,
    pub side: u32,
    pub nodes: usize,
    pub edges: usize,
    pub samples: usize,
    /// Ensemble-mean calibrated dimension at `r_max`.
    pub mean_calibrated: f64,
    pub std_calibrated: f64,
    /// Max over radii of the ensemble-mean calibrated dimension.
    pub max_mean_calibrated: f64,
    pub peak_radius: u32,
    /// Euclidean ball volume at `r_max` in `dim` dimensions, for reference.
    pub continuum_volume: f64,
}

/// Generates each hypercube and measures it with the given ensemble.
///
/// Lattices with fewer nodes than `spec.sample_count` are probed
/// exhaustively.
pub fn calibration_suite(dims: &[u32], side: u32, spec: &EnsembleSpec) -> Result<Vec<CalibrationRow>> {
    dims.iter()
        .map(|&dim| {
            let lattice = LatticeSpec::new(dim, side)?;
            let g = generate_hypercube(&lattice)?;
            let mut run = *spec;
            run.sample_count = run.sample_count.min(g.node_count());
            let stats = run_ensemble(&g, &run)?;
            let last = stats.last();
            Ok(CalibrationRow {
                dim,
                side,
                nodes: g.node_count(),
                edges: g.edge_count(),
                samples: stats.sample_count(),
                mean_calibrated: last.mean_calibrated,
                std_calibrated: last.std_calibrated,
                max_mean_calibrated: stats.peak.1,
                peak_radius: stats.peak.0,
                continuum_volume: continuum_ball_volume(dim, spec.r_max as f64)?,
            })
        })
        .collect()
}
