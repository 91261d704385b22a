//! Gaussian-smoothed spectral densities and the ℓ¹ distance between them.
//!
//! A density is the spectral measure convolved with a Gaussian kernel of
//! bandwidth `sigma`, sampled on a uniform grid covering `[-4σ, 2 + 4σ]`.
//! The distance between two densities is `∫|ρ_a - ρ_b|` over that grid.
//!
//! The primary distance ([`SpectralDensity::distance`]) integrates exactly
//! within each grid cell: on a cell where `ρ_a - ρ_b` keeps its sign the
//! integral is a difference of the mixtures' Gaussian CDFs, and cells with
//! a sign change are split at the root. The plain composite trapezoid rule
//! ([`SpectralDensity::trapezoid_distance`]) is kept as an independent
//! check; it converges at `O(h²)` but its error constant is set by the
//! kinks of `|ρ_a - ρ_b|`, which is too slow for grid-independent results.

use std::f64::consts::{PI, SQRT_2};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::spectral::{SpectralMeasure, Spectrum, ZERO_TOLERANCE};

pub const DEFAULT_SIGMA: f64 = 0.05;

/// Default grid step as a fraction of sigma.
pub const DEFAULT_STEP_PER_SIGMA: f64 = 1.0 / 20.0;

/// Beyond this many bandwidths the kernel and its tail underflow to zero.
const KERNEL_WINDOW: f64 = 39.0;

/// Nodes used to discretize the continuous class templates.
const TEMPLATE_NODES: usize = 4096;

/// Bandwidth plus the uniform grid densities are sampled on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityParams {
    pub sigma: f64,
    pub lo: f64,
    pub hi: f64,
    /// Requested step; the realized step is `(hi - lo) / intervals()`.
    pub step: f64,
}

impl DensityParams {
    /// Grid `[-4σ, 2 + 4σ]` with step `σ/20`.
    pub fn new(sigma: f64) -> Self {
        DensityParams {
            sigma,
            lo: -4.0 * sigma,
            hi: 2.0 + 4.0 * sigma,
            step: sigma * DEFAULT_STEP_PER_SIGMA,
        }
    }

    pub fn with_step(self, step: f64) -> Self {
        DensityParams { step, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let DensityParams { sigma, lo, hi, step } = *self;
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
        }
        if !(lo.is_finite() && hi.is_finite() && step > 0.0) {
            return Err(Error::InvalidGrid(format!("lo {lo}, hi {hi}, step {step}")));
        }
        // tiny slack so that the defaults pass after rounding
        let slack = 1e-12 * (1.0 + sigma);
        if lo > -4.0 * sigma + slack || hi < 2.0 + 4.0 * sigma - slack {
            return Err(Error::InvalidGrid(format!(
                "grid [{lo}, {hi}] must cover [-4σ, 2 + 4σ] = [{}, {}]",
                -4.0 * sigma,
                2.0 + 4.0 * sigma
            )));
        }
        if step > sigma / 10.0 + slack {
            return Err(Error::InvalidGrid(format!("step {step} exceeds σ/10 = {}", sigma / 10.0)));
        }
        Ok(())
    }

    pub fn intervals(&self) -> usize {
        ((self.hi - self.lo) / self.step - 1e-9).ceil().max(1.0) as usize
    }

    pub fn realized_step(&self) -> f64 {
        (self.hi - self.lo) / self.intervals() as f64
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.intervals();
        let h = self.realized_step();
        (0..=n).map(|j| if j == n { self.hi } else { self.lo + j as f64 * h }).collect()
    }
}

fn kernel(z: f64) -> f64 {
    (-0.5 * z * z).exp()
}

fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / SQRT_2)
}

/// Kernel-sum evaluation of one smoothed measure.
struct Mixture<'a> {
    m: &'a SpectralMeasure,
    sigma: f64,
    /// `prefix[i]` = total weight of atoms `0..i`.
    prefix: Vec<f64>,
}

impl<'a> Mixture<'a> {
    fn new(m: &'a SpectralMeasure, sigma: f64) -> Self {
        let mut prefix = Vec::with_capacity(m.weights().len() + 1);
        let mut acc = 0.0;
        prefix.push(0.0);
        for w in m.weights() {
            acc += w;
            prefix.push(acc);
        }
        Mixture { m, sigma, prefix }
    }

    fn window(&self, x: f64) -> (usize, usize) {
        let pos = self.m.positions();
        let reach = KERNEL_WINDOW * self.sigma;
        (pos.partition_point(|&p| p < x - reach), pos.partition_point(|&p| p <= x + reach))
    }

    fn density(&self, x: f64) -> f64 {
        let (a, b) = self.window(x);
        let pos = &self.m.positions()[a..b];
        let w = &self.m.weights()[a..b];
        let s: f64 = pos.iter().zip(w).map(|(&p, &w)| w * kernel((x - p) / self.sigma)).sum();
        s / (self.sigma * (2.0 * PI).sqrt())
    }

    fn cdf(&self, x: f64) -> f64 {
        let (a, b) = self.window(x);
        let pos = &self.m.positions()[a..b];
        let w = &self.m.weights()[a..b];
        self.prefix[a] + pos.iter().zip(w).map(|(&p, &w)| w * normal_cdf((x - p) / self.sigma)).sum::<f64>()
    }
}

/// `(1/n) Σ φ_σ(x - λ_i)`: the smoothed spectral density at one point.
pub fn density(s: &Spectrum, sigma: f64, x: f64) -> Result<f64> {
    measure_density(&s.measure(), sigma, x)
}

pub fn measure_density(m: &SpectralMeasure, sigma: f64, x: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
    }
    Ok(Mixture::new(m, sigma).density(x))
}

/// A smoothed measure sampled on a grid, with its CDF at the same points.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDensity {
    params: DensityParams,
    measure: SpectralMeasure,
    xs: Vec<f64>,
    values: Vec<f64>,
    cumulative: Vec<f64>,
}

pub fn build_density(s: &Spectrum, params: DensityParams) -> Result<SpectralDensity> {
    SpectralDensity::from_measure(s.measure(), params)
}

impl SpectralDensity {
    pub fn from_measure(measure: SpectralMeasure, params: DensityParams) -> Result<Self> {
        params.validate()?;
        if measure.positions().is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mix = Mixture::new(&measure, params.sigma);
        let xs = params.points();
        let values = xs.iter().map(|&x| mix.density(x)).collect();
        let cumulative = xs.iter().map(|&x| mix.cdf(x)).collect();
        Ok(SpectralDensity { params, measure, xs, values, cumulative })
    }

    pub fn params(&self) -> DensityParams {
        self.params
    }

    pub fn measure(&self) -> &SpectralMeasure {
        &self.measure
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Composite trapezoid integral of the sampled density.
    pub fn trapezoid_mass(&self) -> f64 {
        trapezoid(&self.values, self.params.realized_step())
    }

    /// Exact mass of the smoothed measure inside the grid.
    pub fn grid_mass(&self) -> f64 {
        self.cumulative[self.cumulative.len() - 1] - self.cumulative[0]
    }

    fn check_compatible(&self, other: &SpectralDensity) -> Result<()> {
        if self.params != other.params {
            return Err(Error::InvalidGrid(format!(
                "densities use different grids: {:?} vs {:?}",
                self.params, other.params
            )));
        }
        Ok(())
    }

    /// `∫|ρ_self - ρ_other|` over the grid, integrated exactly per cell.
    pub fn distance(&self, other: &SpectralDensity) -> Result<f64> {
        self.check_compatible(other)?;
        let sigma = self.params.sigma;
        let (ma, mb) = (Mixture::new(&self.measure, sigma), Mixture::new(&other.measure, sigma));
        let diff = |x: f64| ma.density(x) - mb.density(x);
        let anti = |x: f64| ma.cdf(x) - mb.cdf(x);

        let f: Vec<f64> = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        let big_f: Vec<f64> = self.cumulative.iter().zip(&other.cumulative).map(|(a, b)| a - b).collect();
        let mut total = 0.0;
        for j in 0..self.xs.len() - 1 {
            let (fl, fr) = (f[j], f[j + 1]);
            if fl * fr < 0.0 {
                let r = bisect_root(&diff, self.xs[j], self.xs[j + 1], fl);
                let fr_mid = anti(r);
                total += (fr_mid - big_f[j]).abs() + (big_f[j + 1] - fr_mid).abs();
            } else {
                total += (big_f[j + 1] - big_f[j]).abs();
            }
        }
        Ok(total)
    }

    /// Composite trapezoid rule applied to `|ρ_self - ρ_other|` on the grid.
    pub fn trapezoid_distance(&self, other: &SpectralDensity) -> Result<f64> {
        self.check_compatible(other)?;
        let diff: Vec<f64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .collect();
        Ok(trapezoid(&diff, self.params.realized_step()))
    }

    /// Two-column CSV `x,rho` with a `# sigma … lo … hi … h …` header.
    pub fn to_csv(&self) -> String {
        let p = self.params;
        let mut s = String::with_capacity(48 * self.xs.len());
        let _ = writeln!(
            s,
            "# sigma {} lo {} hi {} h {}",
            p.sigma,
            p.lo,
            p.hi,
            p.realized_step()
        );
        for (x, v) in self.xs.iter().zip(&self.values) {
            let _ = writeln!(s, "{x:.16e},{v:.16e}");
        }
        s
    }
}

/// Root of `f` in `[a, b]` by bisection, given `f(a) = fa` and a sign change.
fn bisect_root<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, fa: f64) -> f64 {
    let left_positive = fa > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == left_positive {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values {
        [] | [_] => 0.0,
        [first, inner @ .., last] => h * (0.5 * (first + last) + inner.iter().sum::<f64>()),
    }
}

/// ℓ¹ distance between the smoothed spectral densities of two spectra.
pub fn spectral_distance(a: &Spectrum, b: &Spectrum, params: DensityParams) -> Result<f64> {
    measure_distance(&a.measure(), &b.measure(), params)
}

pub fn measure_distance(a: &SpectralMeasure, b: &SpectralMeasure, params: DensityParams) -> Result<f64> {
    let da = SpectralDensity::from_measure(a.clone(), params)?;
    let db = SpectralDensity::from_measure(b.clone(), params)?;
    da.distance(&db)
}

/// Outcome of an interlacing check `λ_{i-C} <= θ_i <= λ_{i+C}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InterlacingReport {
    pub shift: usize,
    pub holds: bool,
    pub first_violation: Option<usize>,
}

/// Comparison slack for interlacing inequalities.
pub const INTERLACING_TOLERANCE: f64 = 1e-9;

/// Checks `λ_{i-C} <= θ_i <= λ_{i+C}` with `λ = a`, `θ = b`, using
/// `λ_j = 0` for `j < 0` and `λ_j = 2` for `j >= n`. Indices run over
/// `0..min(|a|, |b|)`.
pub fn check_interlacing(a: &Spectrum, b: &Spectrum, shift: usize) -> InterlacingReport {
    let lambda = a.values();
    let theta = b.values();
    let at = |j: isize| -> f64 {
        if j < 0 {
            0.0
        } else if j as usize >= lambda.len() {
            2.0
        } else {
            lambda[j as usize]
        }
    };
    let c = shift as isize;
    let first_violation = (0..lambda.len().min(theta.len())).find(|&i| {
        let t = theta[i];
        let i = i as isize;
        at(i - c) > t + INTERLACING_TOLERANCE || t > at(i + c) + INTERLACING_TOLERANCE
    });
    InterlacingReport { shift, holds: first_violation.is_none(), first_violation }
}

/// Upper bound on the distance between the `(d-1)`- and `d`-cube:
/// `2 erf(2 / ((d - 1) · 2σ√2))`.
pub fn cube_erf_bound(d: u32, sigma: f64) -> Result<f64> {
    if d < 2 || !(sigma > 0.0) {
        return Err(Error::InvalidParameter(format!("cube bound needs d >= 2 and sigma > 0 (d = {d}, sigma = {sigma})")));
    }
    Ok(2.0 * libm::erf(2.0 / ((d - 1) as f64 * 2.0 * sigma * SQRT_2)))
}

/// Limiting spectral classes used as classification references.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ClassTemplate {
    /// Point mass at 1 (complete and complete bipartite graphs).
    DiracAtOne,
    /// `1 / (π √(2x - x²))` on `(0, 2)` (paths and cycles).
    Arcsine,
    /// Semicircle centered at 1 with radius `2 / √avg_degree` (random graphs).
    Semicircle { avg_degree: f64 },
    /// `½δ_{1/2} + ½δ_{3/2}` (petal graphs).
    PetalMixture,
}

impl ClassTemplate {
    pub fn name(&self) -> String {
        match self {
            ClassTemplate::DiracAtOne => "dirac-at-one".into(),
            ClassTemplate::Arcsine => "arcsine".into(),
            ClassTemplate::Semicircle { avg_degree } => format!("semicircle(avg_degree={avg_degree})"),
            ClassTemplate::PetalMixture => "petal-mixture".into(),
        }
    }

    pub fn semicircle_radius(avg_degree: f64) -> f64 {
        2.0 / avg_degree.sqrt()
    }

    fn validate(&self) -> Result<()> {
        if let ClassTemplate::Semicircle { avg_degree } = *self {
            if !(avg_degree > 4.0) {
                return Err(Error::InvalidParameter(format!(
                    "semicircle radius 2/√{avg_degree} leaves [0, 2]; average degree must exceed 4"
                )));
            }
        }
        Ok(())
    }

    /// Atoms of the atomic templates.
    pub fn atoms(&self) -> Option<Vec<(f64, f64)>> {
        match self {
            ClassTemplate::DiracAtOne => Some(vec![(1.0, 1.0)]),
            ClassTemplate::PetalMixture => Some(vec![(0.5, 0.5), (1.5, 0.5)]),
            _ => None,
        }
    }

    /// Unsmoothed density of the continuous templates.
    pub fn raw_density(&self, x: f64) -> Option<f64> {
        match *self {
            ClassTemplate::Arcsine => Some(if x > 0.0 && x < 2.0 {
                1.0 / (PI * (2.0 * x - x * x).sqrt())
            } else {
                0.0
            }),
            ClassTemplate::Semicircle { avg_degree } => {
                let r = Self::semicircle_radius(avg_degree);
                let u = x - 1.0;
                Some(if u.abs() < r {
                    2.0 / (PI * r * r) * (r * r - u * u).sqrt()
                } else {
                    0.0
                })
            }
            _ => None,
        }
    }

    /// Discrete measure standing in for the template: the atoms themselves,
    /// or Gauss–Chebyshev nodes for the continuous densities (the arcsine
    /// law is the first-kind Chebyshev weight, the semicircle the
    /// second-kind one, so the quadrature is exact for polynomials).
    pub fn measure(&self) -> Result<SpectralMeasure> {
        self.validate()?;
        let n = TEMPLATE_NODES;
        Ok(match *self {
            ClassTemplate::Arcsine => SpectralMeasure::from_atoms((1..=n).map(|k| {
                let t = (2 * k - 1) as f64 * PI / (2 * n) as f64;
                (1.0 - t.cos(), 1.0 / n as f64)
            })),
            ClassTemplate::Semicircle { avg_degree } => {
                let r = Self::semicircle_radius(avg_degree);
                SpectralMeasure::from_atoms((1..=n).map(|k| {
                    let t = k as f64 * PI / (n + 1) as f64;
                    (1.0 + r * t.cos(), 2.0 / (n + 1) as f64 * t.sin().powi(2))
                }))
            }
            _ => SpectralMeasure::from_atoms(self.atoms().expect("atomic template")),
        })
    }
}

pub fn class_template_density(t: ClassTemplate, params: DensityParams) -> Result<SpectralDensity> {
    SpectralDensity::from_measure(t.measure()?, params)
}

/// Distance from a spectrum to one template.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub template: ClassTemplate,
    pub distance: f64,
    /// Mass of numerically-zero eigenvalues dropped before comparing with a
    /// semicircle; zero for other templates.
    pub dropped_mass: f64,
}

/// The templates compared against by [`classify`], in tie-break order.
pub fn default_templates(avg_degree: Option<f64>) -> Vec<ClassTemplate> {
    let mut t = vec![ClassTemplate::DiracAtOne, ClassTemplate::Arcsine];
    if let Some(w) = avg_degree.filter(|&w| w > 4.0) {
        t.push(ClassTemplate::Semicircle { avg_degree: w });
    }
    t.push(ClassTemplate::PetalMixture);
    t
}

/// Ranks the default templates by distance to `s`, ascending. The
/// semicircle is only included when the graph's average degree is known and
/// exceeds 4.
pub fn classify(s: &Spectrum, params: DensityParams, avg_degree: Option<f64>) -> Result<Vec<Classification>> {
    classify_against(s, params, &default_templates(avg_degree))
}

pub fn classify_against(s: &Spectrum, params: DensityParams, templates: &[ClassTemplate]) -> Result<Vec<Classification>> {
    let full = build_density(s, params)?;
    let mut out = Vec::with_capacity(templates.len());
    for &t in templates {
        let tmpl = class_template_density(t, params)?;
        let (distance, dropped_mass) = match t {
            ClassTemplate::Semicircle { .. } => {
                let (m, dropped) = s.measure().without_zero(ZERO_TOLERANCE);
                if m.positions().is_empty() {
                    (2.0, dropped)
                } else {
                    (SpectralDensity::from_measure(m, params)?.distance(&tmpl)?, dropped)
                }
            }
            _ => (full.distance(&tmpl)?, 0.0),
        };
        out.push(Classification { template: t, distance, dropped_mass });
    }
    // stable: ties keep declaration order
    out.sort_by(|a, b| a.distance.total_cmp(&b.distance));
    Ok(out)
}
