//! Dimension estimators: degree dimension, the raw log-ratio estimator,
//! the hypercube-calibrated estimator and the continuum n-ball volume.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::ball::BallProfile;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Smallest hop count at which the log-ratio estimators are meaningful.
pub const MIN_HOPS: u32 = 2;

fn check_args(n_nodes: u64, n_hops: u32) -> Result<()> {
    if n_hops < MIN_HOPS {
        return Err(Error::InvalidArgument(format!(
            "hop count must be at least {MIN_HOPS}, got {n_hops}"
        )));
    }
    if n_nodes < 1 {
        return Err(Error::InvalidArgument("node count must be at least 1".into()));
    }
    Ok(())
}

/// `ln(N) / ln(h)`: the exponent `n` in `N = h^n`.
pub fn raw_dimension(n_nodes: u64, n_hops: u32) -> Result<f64> {
    check_args(n_nodes, n_hops)?;
    Ok((n_nodes as f64).ln() / (n_hops as f64).ln())
}

/// Effective hop radius used by [`calibrated_dimension`]: `h - 1/2 + 1/h`.
pub fn calibrated_radius(n_hops: u32) -> f64 {
    let h = n_hops as f64;
    h - 0.5 + 1.0 / h
}

/// `ln(N) / ln(h - 1/2 + 1/h)`, corrected so that low-dimensional
/// hypercubes report close to their Euclidean dimension.
pub fn calibrated_dimension(n_nodes: u64, n_hops: u32) -> Result<f64> {
    check_args(n_nodes, n_hops)?;
    Ok((n_nodes as f64).ln() / calibrated_radius(n_hops).ln())
}

/// Per-radius raw and calibrated estimates derived from one ball profile.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionProfile {
    pub origin: NodeId,
    pub include_origin: bool,
    /// Radii `2..=r_max`.
    pub radii: Vec<u32>,
    pub raw: Vec<f64>,
    pub calibrated: Vec<f64>,
    /// Radius at which the ball stopped growing inside the budget, if any.
    /// Values beyond it keep a frozen numerator and decay.
    pub saturation_radius: Option<u32>,
}

impl DimensionProfile {
    pub fn calibrated_at(&self, radius: u32) -> Option<f64> {
        let i = radius.checked_sub(MIN_HOPS)? as usize;
        self.calibrated.get(i).copied()
    }

    pub fn raw_at(&self, radius: u32) -> Option<f64> {
        let i = radius.checked_sub(MIN_HOPS)? as usize;
        self.raw.get(i).copied()
    }
}

/// Applies both estimators at every radius from 2 to `r_max`.
///
/// An empty ball (possible only when the origin is excluded and it has no
/// neighbors) is reported as dimension 0.
pub fn dimension_profile(p: &BallProfile) -> Result<DimensionProfile> {
    if p.r_max < MIN_HOPS || p.cumulative.len() != p.r_max as usize + 1 {
        return Err(Error::InvalidArgument(format!(
            "profile must cover at least {MIN_HOPS} hops, got r_max {}",
            p.r_max
        )));
    }
    let radii: Vec<u32> = (MIN_HOPS..=p.r_max).collect();
    let mut raw = Vec::with_capacity(radii.len());
    let mut calibrated = Vec::with_capacity(radii.len());
    for &r in &radii {
        let n = p.count(r);
        if n == 0 {
            raw.push(0.0);
            calibrated.push(0.0);
        } else {
            raw.push(raw_dimension(n, r)?);
            calibrated.push(calibrated_dimension(n, r)?);
        }
    }
    Ok(DimensionProfile {
        origin: p.origin,
        include_origin: p.include_origin,
        radii,
        raw,
        calibrated,
        saturation_radius: p.eccentricity_reached(),
    })
}

/// Histogram of node degrees with its one-hop dimension `<k>/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    /// Degree `k` to node count `N(k)`; degree-0 nodes included.
    pub histogram: BTreeMap<usize, u64>,
    pub total_nodes: u64,
    pub mean_degree: f64,
    pub degree_dimension: f64,
}

impl DegreeDistribution {
    /// `p(k) = N(k) / sum N(k)`.
    pub fn probability(&self, k: usize) -> f64 {
        self.histogram.get(&k).copied().unwrap_or(0) as f64 / self.total_nodes as f64
    }

    pub fn probabilities(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.histogram
            .iter()
            .map(|(&k, &c)| (k, c as f64 / self.total_nodes as f64))
    }

    /// `sum k N(k)`, which equals twice the edge count.
    pub fn degree_sum(&self) -> u64 {
        self.histogram.iter().map(|(&k, &c)| k as u64 * c).sum()
    }

    pub fn max_degree(&self) -> usize {
        self.histogram.keys().next_back().copied().unwrap_or(0)
    }

    /// `(ln k, ln N(k))` pairs for log-log plotting. Degree 0 has no
    /// logarithm and is skipped.
    pub fn loglog(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.histogram
            .iter()
            .filter(|(&k, _)| k > 0)
            .map(|(&k, &c)| ((k as f64).ln(), (c as f64).ln()))
    }
}

pub fn degree_distribution(g: &Graph) -> Result<DegreeDistribution> {
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut histogram = BTreeMap::new();
    for u in g.nodes() {
        *histogram.entry(g.degree(u)).or_insert(0u64) += 1;
    }
    let total_nodes = g.node_count() as u64;
    let degree_sum: u64 = histogram.iter().map(|(&k, &c)| k as u64 * c).sum();
    let mean_degree = degree_sum as f64 / total_nodes as f64;
    Ok(DegreeDistribution {
        histogram,
        total_nodes,
        mean_degree,
        degree_dimension: mean_degree / 2.0,
    })
}

/// Human-readable form of the formula behind [`continuum_ball_volume`].
pub const CONTINUUM_BALL_FORMULA: &str = "V_n(R) = pi^(n/2) / Gamma(n/2 + 1) * R^n";

/// Euclidean volume of an `n`-ball of radius `r`.
pub fn continuum_ball_volume(n: u32, r: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidArgument("ball dimension must be at least 1".into()));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("ball radius must be positive, got {r}")));
    }
    let half = n as f64 / 2.0;
    Ok(PI.powf(half) / gamma_half_integer(n + 2) * r.powi(n as i32))
}

/// `Gamma(m / 2)` for integer `m >= 1`, by the recurrence from `Gamma(1) = 1`
/// and `Gamma(1/2) = sqrt(pi)`.
fn gamma_half_integer(m: u32) -> f64 {
    let (mut x, mut acc) = if m.is_multiple_of(2) { (1.0, 1.0) } else { (0.5, PI.sqrt()) };
    let target = m as f64 / 2.0;
    while x < target {
        acc *= x;
        x += 1.0;
    }
    acc
}
