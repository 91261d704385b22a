//! Distance-vs-size experiments: growing random graphs, growing regular
//! trees, and convergence-rate fits.
//!
//! Every experiment is deterministic in its parameters and seed, and renders
//! to CSV with a `#` header recording everything needed to rerun it.

use std::fmt::Write as _;

use rand::seq::index::sample;
use rayon::prelude::*;

use crate::distance::{build_density, cube_erf_bound, DensityParams, SpectralDensity};
use crate::error::{Error, Result};
use crate::fit::{RateFit, MIN_POINTS};
use crate::generators::{generate_er_with, generate_family, grow_with, rng_stream, FamilySpec, GrowthRule};
use crate::graph::{EditOp, Graph};
use crate::spectral::spectrum;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Spectra and densities for a batch of graphs, computed in parallel.
pub fn densities(graphs: &[Graph], params: DensityParams) -> Result<Vec<SpectralDensity>> {
    params.validate()?;
    graphs
        .par_iter()
        .map(|g| build_density(&spectrum(g)?, params))
        .collect()
}

fn density_comments(params: &DensityParams) -> Vec<String> {
    vec![
        format!("sigma {}", params.sigma),
        format!("grid_lo {}", params.lo),
        format!("grid_hi {}", params.hi),
        format!("grid_step {}", params.step),
        format!("version {VERSION}"),
    ]
}

fn render_csv(comments: &[String], header: &[String], rows: &[(usize, Vec<f64>)]) -> String {
    let mut s = String::new();
    for c in comments {
        let _ = writeln!(s, "# {c}");
    }
    s.push_str(&header.join(","));
    s.push('\n');
    for (size, values) in rows {
        let _ = write!(s, "{size}");
        for v in values {
            let _ = write!(s, ",{v:.16e}");
        }
        s.push('\n');
    }
    s
}

/// Random model used by the growth experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthModel {
    /// Preferential attachment: each group is one graph grown step by step.
    Ba,
    /// `G(n, p)` has no natural growth, so each size is a fresh sample from
    /// the group's own stream.
    Er,
}

impl GrowthModel {
    pub fn name(self) -> &'static str {
        match self {
            GrowthModel::Ba => "ba",
            GrowthModel::Er => "er",
        }
    }

    fn other(self) -> GrowthModel {
        match self {
            GrowthModel::Ba => GrowthModel::Er,
            GrowthModel::Er => GrowthModel::Ba,
        }
    }
}

impl std::str::FromStr for GrowthModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ba" => Ok(GrowthModel::Ba),
            "er" => Ok(GrowthModel::Er),
            _ => Err(Error::InvalidParameter(format!("unknown model {s:?}; expected ba or er"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthParams {
    pub model: GrowthModel,
    pub base_n: usize,
    pub steps: usize,
    /// Vertices added per step.
    pub step: usize,
    /// Average degree of ER graphs; BA graphs get `m` edges per vertex (≈ `2m`).
    pub avg_degree: f64,
    pub m: usize,
    pub init: usize,
    pub seed: u64,
    pub density: DensityParams,
}

impl Default for GrowthParams {
    fn default() -> Self {
        GrowthParams {
            model: GrowthModel::Ba,
            base_n: 1000,
            steps: 5,
            step: 200,
            avg_degree: 4.0,
            m: 2,
            init: 5,
            seed: 1,
            density: DensityParams::new(crate::DEFAULT_SIGMA),
        }
    }
}

/// `same[i] = D(G¹₀, G¹ᵢ)`, `cross[i] = D(G¹₀, G²ᵢ)` and
/// `contrast[i] = D(G¹₀, Hᵢ)` with `H` drawn from the other model.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthResult {
    pub params: GrowthParams,
    pub sizes: Vec<usize>,
    pub same: Vec<f64>,
    pub cross: Vec<f64>,
    pub contrast: Vec<f64>,
}

fn growth_group(p: &GrowthParams, model: GrowthModel, stream: u32, sizes: &[usize]) -> Result<Vec<Graph>> {
    let mut rng = rng_stream(p.seed, stream);
    match model {
        GrowthModel::Er => sizes.iter().map(|&n| generate_er_with(n, p.avg_degree, &mut rng)).collect(),
        GrowthModel::Ba => {
            if p.m == 0 || p.init < p.m {
                return Err(Error::InvalidParameter(format!(
                    "preferential attachment needs init >= m >= 1 (m = {}, init = {})",
                    p.m, p.init
                )));
            }
            let rule = GrowthRule::PreferentialAttachment { m: p.m };
            let mut g = generate_family(FamilySpec::Complete(p.init))?;
            let mut out = Vec::with_capacity(sizes.len());
            for &n in sizes {
                g = grow_with(&g, n, rule, &mut rng)?;
                out.push(g.clone());
            }
            Ok(out)
        }
    }
}

pub fn run_growth(p: &GrowthParams) -> Result<GrowthResult> {
    if p.base_n < p.init.max(2) {
        return Err(Error::InvalidParameter(format!("base size {} is too small", p.base_n)));
    }
    let sizes: Vec<usize> = (0..=p.steps).map(|i| p.base_n + i * p.step).collect();
    let k = sizes.len();
    let mut graphs = growth_group(p, p.model, 1, &sizes)?;
    graphs.extend(growth_group(p, p.model, 2, &sizes)?);
    graphs.extend(growth_group(p, p.model.other(), 3, &sizes)?);
    let dens = densities(&graphs, p.density)?;
    let base = &dens[0];
    let dist = |range: std::ops::Range<usize>| -> Result<Vec<f64>> {
        range.map(|i| base.distance(&dens[i])).collect()
    };
    Ok(GrowthResult {
        params: p.clone(),
        same: dist(0..k)?,
        cross: dist(k..2 * k)?,
        contrast: dist(2 * k..3 * k)?,
        sizes,
    })
}

impl GrowthResult {
    pub fn to_csv(&self) -> String {
        let p = &self.params;
        let mut comments = vec![
            "experiment growth".to_string(),
            format!("model {}", p.model.name()),
            format!("contrast_model {}", p.model.other().name()),
            format!("base_n {}", p.base_n),
            format!("steps {}", p.steps),
            format!("step {}", p.step),
            format!("avg_degree {}", p.avg_degree),
            format!("m {}", p.m),
            format!("init {}", p.init),
            format!("seed {}", p.seed),
            "streams group1=1 group2=2 contrast=3".to_string(),
        ];
        comments.extend(density_comments(&p.density));
        let header = ["size", "same_group", "cross_group", "contrast"].map(String::from);
        let rows: Vec<(usize, Vec<f64>)> = (0..self.sizes.len())
            .map(|i| (self.sizes[i], vec![self.same[i], self.cross[i], self.contrast[i]]))
            .collect();
        render_csv(&comments, &header, &rows)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TreeParams {
    pub ks: Vec<usize>,
    pub base_n: usize,
    pub steps: usize,
    pub step: usize,
    pub density: DensityParams,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams {
            ks: vec![3, 4],
            base_n: 100,
            steps: 9,
            step: 100,
            density: DensityParams::new(crate::DEFAULT_SIGMA),
        }
    }
}

/// `same[a][i] = D(T^k₀, T^kᵢ)` for `k = ks[a]`; `cross[b][i] = D(T^{k₀}ᵢ, T^{k}ᵢ)`
/// for `k = ks[b + 1]`, where `k₀ = ks[0]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeResult {
    pub params: TreeParams,
    pub sizes: Vec<usize>,
    pub same: Vec<Vec<f64>>,
    pub cross: Vec<Vec<f64>>,
}

impl TreeResult {
    pub fn peak(&self, a: usize) -> f64 {
        self.same[a].iter().copied().fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let p = &self.params;
        let ks: Vec<String> = p.ks.iter().map(|k| k.to_string()).collect();
        let mut comments = vec![
            "experiment trees".to_string(),
            format!("ks {}", ks.join(" ")),
            format!("base_n {}", p.base_n),
            format!("steps {}", p.steps),
            format!("step {}", p.step),
            "growth breadth-first leaf attachment (no randomness)".to_string(),
        ];
        comments.extend(density_comments(&p.density));
        let mut header = vec!["size".to_string()];
        header.extend(p.ks.iter().map(|k| format!("same_k{k}")));
        header.extend(p.ks[1..].iter().map(|k| format!("cross_k{}_k{k}", p.ks[0])));
        let rows: Vec<(usize, Vec<f64>)> = (0..self.sizes.len())
            .map(|i| {
                let v = self.same.iter().chain(&self.cross).map(|c| c[i]).collect();
                (self.sizes[i], v)
            })
            .collect();
        render_csv(&comments, &header, &rows)
    }
}

pub fn run_trees(p: &TreeParams) -> Result<TreeResult> {
    if p.ks.is_empty() {
        return Err(Error::InvalidParameter("tree experiment needs at least one k".into()));
    }
    if let Some(k) = p.ks.iter().find(|&&k| k < 3) {
        return Err(Error::InvalidParameter(format!("tree experiment needs k >= 3, got {k}")));
    }
    if p.base_n < 2 {
        return Err(Error::InvalidParameter("base size must be at least 2".into()));
    }
    let sizes: Vec<usize> = (0..=p.steps).map(|i| p.base_n + i * p.step).collect();
    let graphs = p
        .ks
        .iter()
        .flat_map(|&k| sizes.iter().map(move |&n| FamilySpec::TruncatedRegularTree { k, n }))
        .map(generate_family)
        .collect::<Result<Vec<Graph>>>()?;
    let dens = densities(&graphs, p.density)?;
    let s = sizes.len();
    let at = |a: usize, i: usize| &dens[a * s + i];
    let same = (0..p.ks.len())
        .map(|a| (0..s).map(|i| at(a, 0).distance(at(a, i))).collect::<Result<Vec<f64>>>())
        .collect::<Result<Vec<_>>>()?;
    let cross = (1..p.ks.len())
        .map(|b| (0..s).map(|i| at(0, i).distance(at(b, i))).collect::<Result<Vec<f64>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeResult {
        params: p.clone(),
        sizes,
        same,
        cross,
    })
}

/// Pair of graphs compared at each size of a rate experiment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RateCase {
    /// `K_n` against `K_{n+1}`.
    Complete,
    /// `G(n, p)` against itself minus one uniformly random edge, averaged
    /// over `trials` distinct edges.
    ErEdgeDeletion { avg_degree: f64, trials: usize },
    /// Sizes are dimensions `d`; compares `Q_{d-1}` with `Q_d`.
    Hypercube,
}

impl RateCase {
    pub fn name(&self) -> &'static str {
        match self {
            RateCase::Complete => "complete",
            RateCase::ErEdgeDeletion { .. } => "er-edge-deletion",
            RateCase::Hypercube => "cube",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RateParams {
    pub case: RateCase,
    /// Vertex counts, or dimensions for [`RateCase::Hypercube`].
    pub sizes: Vec<usize>,
    pub seed: u64,
    pub density: DensityParams,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RateResult {
    pub params: RateParams,
    /// Vertex count of the larger graph at each size.
    pub ns: Vec<usize>,
    pub distances: Vec<f64>,
    /// `2·erf(…)` upper bounds, for hypercubes only.
    pub bounds: Option<Vec<f64>>,
    pub fit: Option<RateFit>,
    /// Why the fit was skipped, if it was.
    pub fit_error: Option<String>,
}

fn er_deletion_distance(n: usize, avg_degree: f64, trials: usize, seed: u64, stream: u32, params: DensityParams) -> Result<f64> {
    let mut rng = rng_stream(seed, stream);
    let g = generate_er_with(n, avg_degree, &mut rng)?;
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let picks = sample(&mut rng, g.edge_count(), trials.min(g.edge_count())).into_vec();
    let mut graphs = vec![g.clone()];
    for e in picks {
        let (u, v) = g.edges()[e];
        graphs.push(g.apply_edit(EditOp::DeleteEdge(u, v))?);
    }
    let dens = densities(&graphs, params)?;
    let total = dens[1..].iter().map(|d| dens[0].distance(d)).sum::<Result<f64>>()?;
    Ok(total / (dens.len() - 1) as f64)
}

pub fn run_rate(p: &RateParams) -> Result<RateResult> {
    p.density.validate()?;
    if p.sizes.len() < MIN_POINTS {
        return Err(Error::InvalidParameter(format!(
            "rate experiment needs at least {MIN_POINTS} sizes, got {}",
            p.sizes.len()
        )));
    }
    let (ns, distances, bounds) = match p.case {
        RateCase::Complete => {
            let mut graphs = Vec::new();
            for &n in &p.sizes {
                graphs.push(generate_family(FamilySpec::Complete(n))?);
                graphs.push(generate_family(FamilySpec::Complete(n + 1))?);
            }
            let dens = densities(&graphs, p.density)?;
            let d = dens.chunks(2).map(|c| c[0].distance(&c[1])).collect::<Result<Vec<f64>>>()?;
            (p.sizes.iter().map(|n| n + 1).collect::<Vec<_>>(), d, None)
        }
        RateCase::ErEdgeDeletion { avg_degree, trials } => {
            if trials == 0 {
                return Err(Error::InvalidParameter("trials must be at least 1".into()));
            }
            let d = p
                .sizes
                .iter()
                .enumerate()
                .map(|(i, &n)| er_deletion_distance(n, avg_degree, trials, p.seed, i as u32, p.density))
                .collect::<Result<Vec<f64>>>()?;
            (p.sizes.clone(), d, None)
        }
        RateCase::Hypercube => {
            if let Some(d) = p.sizes.iter().find(|&&d| !(2..=30).contains(&d)) {
                return Err(Error::InvalidParameter(format!("cube dimension {d} outside 2..=30")));
            }
            let mut graphs = Vec::new();
            for &d in &p.sizes {
                graphs.push(generate_family(FamilySpec::Hypercube(d as u32 - 1))?);
                graphs.push(generate_family(FamilySpec::Hypercube(d as u32))?);
            }
            let dens = densities(&graphs, p.density)?;
            let dist = dens.chunks(2).map(|c| c[0].distance(&c[1])).collect::<Result<Vec<f64>>>()?;
            let bounds = p
                .sizes
                .iter()
                .map(|&d| cube_erf_bound(d as u32, p.density.sigma))
                .collect::<Result<Vec<f64>>>()?;
            (p.sizes.iter().map(|&d| 1usize << d).collect(), dist, Some(bounds))
        }
    };
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let (fit, fit_error) = match RateFit::fit(&xs, &distances) {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(RateResult {
        params: p.clone(),
        ns,
        distances,
        bounds,
        fit,
        fit_error,
    })
}

impl RateResult {
    pub fn to_csv(&self) -> String {
        let p = &self.params;
        let sizes: Vec<String> = p.sizes.iter().map(|s| s.to_string()).collect();
        let mut comments = vec![
            "experiment rate".to_string(),
            format!("case {}", p.case.name()),
            format!("sizes {}", sizes.join(" ")),
            format!("seed {}", p.seed),
        ];
        if let RateCase::ErEdgeDeletion { avg_degree, trials } = p.case {
            comments.push(format!("avg_degree {avg_degree}"));
            comments.push(format!("trials {trials}"));
        }
        comments.extend(density_comments(&p.density));
        match (&self.fit, &self.fit_error) {
            (Some(f), _) => {
                comments.push(format!("slope {:.16e}", f.slope));
                comments.push(format!("intercept {:.16e}", f.intercept));
                comments.push(format!("residual {:.16e}", f.residual));
            }
            (None, Some(e)) => comments.push(format!("fit skipped: {e}")),
            (None, None) => {}
        }
        let mut header = vec!["size".to_string(), "distance".to_string()];
        if self.bounds.is_some() {
            header.push("bound".to_string());
        }
        let rows: Vec<(usize, Vec<f64>)> = (0..self.ns.len())
            .map(|i| {
                let mut v = vec![self.distances[i]];
                if let Some(b) = &self.bounds {
                    v.push(b[i]);
                }
                (self.ns[i], v)
            })
            .collect();
        render_csv(&comments, &header, &rows)
    }
}
