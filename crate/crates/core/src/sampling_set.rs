//! Jittered sampling lattices `t_n = n + h_n` with window-local jitter.
//!
//! Jitter is applied per axis: node `n = (n_1, …, n_d)` sits at
//! `(t_{n_1}, …, t_{n_d})` where each axis has its own sequence
//! `t_{n_j} = n_j + h_{n_j}`. Inside the window around the evaluation point
//! the offsets come from a [`JitterSpec`]; outside it they vanish.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::odd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JitterKind {
    /// `h_n = +M`.
    Constant,
    /// `h_n = (-1)^n M`.
    Alternating,
    /// `h_n` uniform in `[-M, M)`, drawn from ChaCha8 keyed by `(seed, axis, n)`.
    Uniform,
}

impl fmt::Display for JitterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            JitterKind::Constant => "constant",
            JitterKind::Alternating => "alternating",
            JitterKind::Uniform => "uniform",
        })
    }
}

impl FromStr for JitterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "constant" => Ok(JitterKind::Constant),
            "alternating" => Ok(JitterKind::Alternating),
            "uniform" => Ok(JitterKind::Uniform),
            other => Err(Error::Config(format!("unknown jitter.kind '{other}'"))),
        }
    }
}

/// Per-axis jitter bounds `M_j` and the rule generating `h_{n_j}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JitterSpec {
    pub kind: JitterKind,
    pub amplitudes: Vec<f64>,
    pub seed: u64,
}

impl JitterSpec {
    pub fn new(kind: JitterKind, amplitudes: Vec<f64>, seed: u64) -> Self {
        Self {
            kind,
            amplitudes,
            seed,
        }
    }

    /// No jitter on any of `d` axes.
    pub fn none(d: usize) -> Self {
        Self::new(JitterKind::Constant, vec![0.0; d], 0)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// `M̃ = max_j M_j`.
    pub fn max_amplitude(&self) -> f64 {
        self.amplitudes.iter().copied().fold(0.0, f64::max)
    }

    pub fn validate(&self) -> Result<()> {
        for (axis, &m) in self.amplitudes.iter().enumerate() {
            if !(m.is_finite() && (0.0..0.5).contains(&m)) {
                return Err(Error::InvalidJitter {
                    axis,
                    amplitude: m,
                });
            }
        }
        Ok(())
    }

    /// The raw offset `h_n` for index `n` on `axis`, ignoring any window.
    pub fn offset(&self, axis: usize, n: i64) -> f64 {
        let m = self.amplitudes[axis];
        if m == 0.0 {
            return 0.0;
        }
        match self.kind {
            JitterKind::Constant => m,
            JitterKind::Alternating => {
                if odd(n) {
                    -m
                } else {
                    m
                }
            }
            JitterKind::Uniform => {
                let u = unit_uniform(self.seed, axis, n);
                m * (2.0 * u - 1.0)
            }
        }
    }

    /// Flat key-value form: `jitter.kind`, `jitter.M`, `jitter.seed`.
    pub fn to_kv(&self) -> BTreeMap<String, String> {
        let mut kv = BTreeMap::new();
        kv.insert("jitter.kind".into(), self.kind.to_string());
        kv.insert(
            "jitter.M".into(),
            self.amplitudes
                .iter()
                .map(|m| format!("{m:?}"))
                .collect::<Vec<_>>()
                .join(","),
        );
        kv.insert("jitter.seed".into(), self.seed.to_string());
        kv
    }

    pub fn from_kv(kv: &BTreeMap<String, String>) -> Result<Self> {
        let kind = kv
            .get("jitter.kind")
            .map(|s| s.parse())
            .transpose()?
            .unwrap_or(JitterKind::Constant);
        let amplitudes = match kv.get("jitter.M") {
            Some(s) => parse_f64_list(s, "jitter.M")?,
            None => return Err(Error::Config("missing jitter.M".into())),
        };
        let seed = match kv.get("jitter.seed") {
            Some(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("jitter.seed: not a u64: '{s}'")))?,
            None => 0,
        };
        Ok(Self::new(kind, amplitudes, seed))
    }
}

pub(crate) fn parse_f64_list(s: &str, key: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("{key}: not a number: '{t}'")))
        })
        .collect()
}

fn zigzag(n: i64) -> u64 {
    ((n << 1) ^ (n >> 63)) as u64
}

/// Uniform value in `[0, 1)` addressed by `(seed, axis, n)`.
///
/// ChaCha8 with the seed as key, the axis as stream id, and the word position
/// derived from the index. Random access, so nothing is stored per node.
fn unit_uniform(seed: u64, axis: usize, n: i64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(axis as u64);
    rng.set_word_pos(u128::from(zigzag(n)) * 2);
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// The unique integer `j_x` with `j_x - 1/2 <= x < j_x + 1/2`.
pub fn nearest_index(x: f64) -> i64 {
    let mut j = (x + 0.5).floor();
    // x + 0.5 can round up across an integer when x is just below a half.
    if x < j - 0.5 {
        j -= 1.0;
    }
    j as i64
}

/// Inclusive index range `{n : |x - n| <= radius}` on one axis.
pub fn axis_window(x: f64, radius: u32) -> (i64, i64) {
    let r = f64::from(radius);
    ((x - r).ceil() as i64, (x + r).floor() as i64)
}

/// The window index set, in lexicographic order.
pub fn window_index_set(x: &[f64], radii: &[u32]) -> Vec<Vec<i64>> {
    assert_eq!(x.len(), radii.len(), "window_index_set: dimension mismatch");
    let ranges: Vec<(i64, i64)> = x
        .iter()
        .zip(radii)
        .map(|(&xj, &nj)| axis_window(xj, nj))
        .collect();
    cartesian(&ranges)
}

pub(crate) fn cartesian(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for &(lo, hi) in ranges {
        let mut next = Vec::with_capacity(out.len() * (hi - lo + 1).max(0) as usize);
        for prefix in &out {
            for n in lo..=hi {
                let mut v = prefix.clone();
                v.push(n);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Window center and per-axis radii.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub center: Vec<f64>,
    pub radii: Vec<u32>,
}

impl WindowSpec {
    pub fn new(center: Vec<f64>, radii: Vec<u32>) -> Self {
        Self { center, radii }
    }

    pub fn indices(&self) -> Vec<Vec<i64>> {
        window_index_set(&self.center, &self.radii)
    }

    pub fn len(&self) -> usize {
        self.center
            .iter()
            .zip(&self.radii)
            .map(|(&x, &n)| {
                let (lo, hi) = axis_window(x, n);
                (hi - lo + 1) as usize
            })
            .product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One axis of a [`NodeSet`]: the window range and its jittered nodes.
#[derive(Clone, Debug)]
pub struct AxisNodes {
    lo: i64,
    hi: i64,
    nodes: Vec<f64>,
}

impl AxisNodes {
    fn build(x: f64, radius: u32, jitter: &JitterSpec, axis: usize) -> Self {
        let (lo, hi) = axis_window(x, radius);
        let nodes = (lo..=hi)
            .map(|n| n as f64 + jitter.offset(axis, n))
            .collect();
        Self { lo, hi, nodes }
    }

    /// Axis view with explicit window nodes, `nodes[i]` belonging to index `lo + i`.
    pub fn from_nodes(lo: i64, nodes: Vec<f64>) -> Self {
        let hi = lo + nodes.len() as i64 - 1;
        Self { lo, hi, nodes }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn contains(&self, n: i64) -> bool {
        (self.lo..=self.hi).contains(&n)
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> + '_ {
        self.lo..=self.hi
    }

    /// `t_n`: jittered inside the window, `n` outside.
    pub fn node(&self, n: i64) -> f64 {
        if self.contains(n) {
            self.nodes[(n - self.lo) as usize]
        } else {
            n as f64
        }
    }

    /// `h_n = t_n - n`.
    pub fn offset(&self, n: i64) -> f64 {
        if self.contains(n) {
            self.nodes[(n - self.lo) as usize] - n as f64
        } else {
            0.0
        }
    }

    pub fn window_nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Smallest gap between consecutive nodes, including the two steps out
    /// of the window (beyond those, gaps are exactly 1).
    pub fn separation(&self) -> f64 {
        (self.lo - 1..=self.hi)
            .map(|n| self.node(n + 1) - self.node(n))
            .fold(1.0, f64::min)
    }
}

/// A jittered lattice seen from one evaluation point.
#[derive(Clone, Debug)]
pub struct NodeSet {
    jitter: JitterSpec,
    window: WindowSpec,
    axes: Vec<AxisNodes>,
}

impl NodeSet {
    pub fn jitter(&self) -> &JitterSpec {
        &self.jitter
    }

    pub fn window(&self) -> &WindowSpec {
        &self.window
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axis(&self, j: usize) -> &AxisNodes {
        &self.axes[j]
    }

    pub fn axes(&self) -> &[AxisNodes] {
        &self.axes
    }

    pub fn node(&self, n: &[i64]) -> Vec<f64> {
        n.iter()
            .zip(&self.axes)
            .map(|(&nj, ax)| ax.node(nj))
            .collect()
    }

    pub fn contains(&self, n: &[i64]) -> bool {
        n.iter().zip(&self.axes).all(|(&nj, ax)| ax.contains(nj))
    }
}

/// Build the node set seen from `center` with window radii `radii`.
pub fn build_nodes(center: &[f64], radii: &[u32], jitter: &JitterSpec) -> Result<NodeSet> {
    let d = center.len();
    if radii.len() != d {
        return Err(Error::Dimension {
            expected: d,
            got: radii.len(),
        });
    }
    if jitter.dim() != d {
        return Err(Error::Dimension {
            expected: d,
            got: jitter.dim(),
        });
    }
    if let Some(axis) = radii.iter().position(|&n| n == 0) {
        return Err(Error::domain(
            "build_nodes",
            format!("radius on axis {axis} must be >= 1"),
        ));
    }
    if let Some(axis) = center.iter().position(|x| !x.is_finite()) {
        return Err(Error::domain(
            "build_nodes",
            format!("center on axis {axis} is not finite"),
        ));
    }
    jitter.validate()?;
    let axes = center
        .iter()
        .zip(radii)
        .enumerate()
        .map(|(axis, (&x, &n))| AxisNodes::build(x, n, jitter, axis))
        .collect();
    Ok(NodeSet {
        jitter: jitter.clone(),
        window: WindowSpec::new(center.to_vec(), radii.to_vec()),
        axes,
    })
}

/// Per-axis separation `δ_j` of the realized node set.
pub fn separation(ns: &NodeSet) -> Vec<f64> {
    ns.axes.iter().map(AxisNodes::separation).collect()
}

/// Which admissibility condition on `M̃` to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdmissibilityMode {
    /// The sampling expansion converges.
    Expansion,
    /// The truncation bound vanishes as the window grows.
    Convergence,
}

/// Admissible jitter amplitude for the expansion or convergence theorems.
pub fn admissible(max_amplitude: f64, q: f64, d: usize, mode: AdmissibilityMode) -> bool {
    if !(q >= 1.0) || d == 0 || !(max_amplitude >= 0.0) {
        return false;
    }
    match mode {
        AdmissibilityMode::Expansion => {
            if q == 1.0 {
                max_amplitude <= 0.25
            } else {
                max_amplitude < 1.0 / (4.0 * q)
            }
        }
        AdmissibilityMode::Convergence => {
            if q == 1.0 && d == 1 {
                max_amplitude <= 0.25
            } else {
                let limit = (1.0 / (4.0 * q)).min(1.0 / ((4 * d - 1) as f64 * q));
                max_amplitude < limit
            }
        }
    }
}

/// Supremum of admissible `M̃` (the bound itself is excluded except for the
/// closed `q = 1` cases).
pub fn admissible_limit(q: f64, d: usize, mode: AdmissibilityMode) -> f64 {
    match mode {
        AdmissibilityMode::Expansion => 1.0 / (4.0 * q),
        AdmissibilityMode::Convergence => {
            (1.0 / (4.0 * q)).min(1.0 / ((4 * d - 1) as f64 * q))
        }
    }
}
