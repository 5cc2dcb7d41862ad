//! Open-ball growth `N(R)` by level-synchronous breadth-first search.
//!
//! Counting nodes reachable by some acyclic path of at most `R` hops is the
//! same as counting nodes at hop distance `<= R`, so a plain BFS suffices.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallProfile {
    pub origin: NodeId,
    pub r_max: u32,
    /// `cumulative[R]` = distinct nodes within `R` hops, for `R = 0..=r_max`.
    pub cumulative: Vec<u64>,
    pub include_origin: bool,
}

impl BallProfile {
    /// `N(R)`, clamped to the last radius.
    pub fn count(&self, radius: u32) -> u64 {
        let i = (radius as usize).min(self.cumulative.len() - 1);
        self.cumulative[i]
    }

    /// Nodes first reached at exactly `radius` hops.
    pub fn shell(&self, radius: u32) -> u64 {
        if radius == 0 {
            self.count(0)
        } else {
            self.count(radius) - self.count(radius - 1)
        }
    }

    /// Smallest radius at which growth stopped, if that happened strictly
    /// inside the hop budget. `None` means the ball was still growing.
    pub fn eccentricity_reached(&self) -> Option<u32> {
        let last = *self.cumulative.last()?;
        let first = self.cumulative.iter().position(|&n| n == last)? as u32;
        (first < self.r_max).then_some(first)
    }
}

/// Free-function form of [`BallProfile::eccentricity_reached`].
pub fn eccentricity_reached(p: &BallProfile) -> Option<u32> {
    p.eccentricity_reached()
}

/// Reusable BFS scratch space for repeated probes on graphs of one size.
///
/// Visited marks are epoch stamps, so a probe never clears or reallocates
/// the array.
#[derive(Debug, Clone)]
pub struct BallProber {
    stamp: Vec<u32>,
    epoch: u32,
    frontier: Vec<NodeId>,
    next: Vec<NodeId>,
}

impl BallProber {
    pub fn new(node_count: usize) -> Self {
        BallProber {
            stamp: vec![0; node_count],
            epoch: 0,
            frontier: Vec::new(),
            next: Vec::new(),
        }
    }

    pub fn for_graph(g: &Graph) -> Self {
        Self::new(g.node_count())
    }

    fn next_epoch(&mut self) -> u32 {
        if self.epoch == u32::MAX {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.epoch
    }

    pub fn profile(&mut self, g: &Graph, origin: NodeId, r_max: u32, include_origin: bool) -> Result<BallProfile> {
        if !g.contains(origin) {
            return Err(Error::NodeOutOfRange {
                id: origin.0 as u64,
                node_count: g.node_count(),
            });
        }
        if r_max < 1 {
            return Err(Error::InvalidArgument("r_max must be at least 1".into()));
        }
        if self.stamp.len() != g.node_count() {
            *self = Self::for_graph(g);
        }
        let epoch = self.next_epoch();
        let mut cumulative = Vec::with_capacity(r_max as usize + 1);

        self.frontier.clear();
        self.frontier.push(origin);
        self.stamp[origin.index()] = epoch;
        let mut total = 1u64;
        cumulative.push(total);

        for _ in 1..=r_max {
            if self.frontier.is_empty() {
                cumulative.push(total);
                continue;
            }
            self.next.clear();
            for &u in &self.frontier {
                for &v in g.neighbors(u) {
                    let s = &mut self.stamp[v.index()];
                    if *s != epoch {
                        *s = epoch;
                        self.next.push(v);
                    }
                }
            }
            total += self.next.len() as u64;
            cumulative.push(total);
            std::mem::swap(&mut self.frontier, &mut self.next);
        }
        if !include_origin {
            cumulative.iter_mut().for_each(|n| *n -= 1);
        }
        Ok(BallProfile {
            origin,
            r_max,
            cumulative,
            include_origin,
        })
    }
}

/// One-off probe; allocates its own scratch. Use [`BallProber`] for many.
pub fn ball_profile(g: &Graph, origin: NodeId, r_max: u32, include_origin: bool) -> Result<BallProfile> {
    BallProber::for_graph(g).profile(g, origin, r_max, include_origin)
}
