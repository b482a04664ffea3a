//! Verification suites built on the algorithms: the published kernel
//! partitions, the brute-force/classifier census, the necessary-condition
//! audit, and report rendering.

pub mod audit;
pub mod census;
pub mod groups;
pub mod paper;
pub mod report;

use crate::classify::TheoremCase;
use crate::ring::CoeffRing;

/// One decided instance `(G, N, R)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub group: String,
    pub kernel: String,
    pub ring: CoeffRing,
    pub brute: bool,
    pub predicted: bool,
    pub case: Option<TheoremCase>,
    pub witness: Option<String>,
    pub millis: f64,
}

impl Row {
    pub fn is_mismatch(&self) -> bool {
        self.brute != self.predicted
    }
}
