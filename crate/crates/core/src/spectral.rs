//! Normalized-Laplacian spectra and the spectral measures built on them.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::BufRead;

use crate::eigen::{symmetric_eigenvalues, SymmetricMatrix};
use crate::error::{Error, Result};
use crate::generators::FamilySpec;
use crate::graph::Graph;

/// Largest graph the dense eigensolver accepts by default.
pub const DEFAULT_SIZE_CAP: usize = 10_000;

/// Eigenvalues may leave `[0, 2]` by at most this much before clamping.
pub const RANGE_TOLERANCE: f64 = 1e-9;

/// Eigenvalues below this count as zero when comparing with component counts.
pub const ZERO_TOLERANCE: f64 = 1e-7;

/// Sorted normalized-Laplacian eigenvalues, all in `[0, 2]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts, checks the `[0, 2]` range up to [`RANGE_TOLERANCE`], then clamps.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if let Some(bad) = values
            .iter()
            .find(|v| !(**v >= -RANGE_TOLERANCE && **v <= 2.0 + RANGE_TOLERANCE))
        {
            return Err(Error::Numerical(format!("eigenvalue {bad} outside [0, 2]")));
        }
        values.sort_by(f64::total_cmp);
        for v in &mut values {
            *v = v.clamp(0.0, 2.0);
        }
        Ok(Spectrum { values })
    }

    /// Spectrum from `(value, multiplicity)` pairs.
    pub fn from_multiplicities(parts: &[(f64, usize)]) -> Result<Self> {
        Self::new(
            parts
                .iter()
                .flat_map(|&(v, m)| std::iter::repeat_n(v, m))
                .collect(),
        )
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of eigenvalues within `tol` of zero.
    pub fn zero_multiplicity(&self, tol: f64) -> usize {
        self.values.partition_point(|&v| v < tol)
    }

    /// Number of eigenvalues within `tol` of `x`.
    pub fn multiplicity_near(&self, x: f64, tol: f64) -> usize {
        self.values.iter().filter(|&&v| (v - x).abs() < tol).count()
    }

    /// `(1/n) Σ f(λ_i)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.values.iter().map(|&v| f(v)).sum::<f64>() / self.len() as f64
    }

    /// `#{λ_i <= x} / n`.
    pub fn empirical_cdf(&self, x: f64) -> f64 {
        self.values.partition_point(|&v| v <= x) as f64 / self.len() as f64
    }

    /// Uniform probability measure on the eigenvalues.
    pub fn measure(&self) -> SpectralMeasure {
        SpectralMeasure::uniform(&self.values)
    }

    /// CSV text: a `# n <count>` header then one eigenvalue per line with 17
    /// significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(24 * (self.len() + 1));
        let _ = writeln!(s, "# n {}", self.len());
        for v in &self.values {
            let _ = writeln!(s, "{v:.16e}");
        }
        s
    }

    pub fn read_csv<R: BufRead>(reader: R) -> Result<Self> {
        let mut declared = None;
        let mut values = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if let Some(rest) = t.strip_prefix('#') {
                if let ["n", count] = rest.split_whitespace().collect::<Vec<_>>()[..] {
                    declared = Some(count.parse::<usize>().map_err(|_| Error::Parse {
                        line: i + 1,
                        message: format!("bad count {count:?}"),
                    })?);
                }
                continue;
            }
            if t.is_empty() {
                continue;
            }
            values.push(t.parse::<f64>().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("expected a number, found {t:?}"),
            })?);
        }
        if let Some(n) = declared {
            if n != values.len() {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("header declares {n} values, found {}", values.len()),
                });
            }
        }
        Self::new(values)
    }
}

/// A discrete probability measure on `[0, 2]`: sorted atoms with weights.
///
/// Graph spectra give uniform weights `1/n`; closed-form classes and
/// quadrature discretizations of continuous class densities use general
/// weights.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralMeasure {
    positions: Vec<f64>,
    weights: Vec<f64>,
}

impl SpectralMeasure {
    pub fn uniform(values: &[f64]) -> Self {
        let w = 1.0 / values.len() as f64;
        Self::from_atoms(values.iter().map(|&v| (v, w)))
    }

    /// Merges coincident positions and sorts; weights are used as given.
    pub fn from_atoms<I: IntoIterator<Item = (f64, f64)>>(atoms: I) -> Self {
        let mut atoms: Vec<(f64, f64)> = atoms.into_iter().filter(|a| a.1 != 0.0).collect();
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut positions: Vec<f64> = Vec::with_capacity(atoms.len());
        let mut weights: Vec<f64> = Vec::with_capacity(atoms.len());
        for (x, w) in atoms {
            match positions.last() {
                Some(&last) if last == x => *weights.last_mut().unwrap() += w,
                _ => {
                    positions.push(x);
                    weights.push(w);
                }
            }
        }
        SpectralMeasure { positions, weights }
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.positions.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Drops atoms below `tol` and renormalizes; returns the dropped mass.
    pub fn without_zero(&self, tol: f64) -> (SpectralMeasure, f64) {
        let cut = self.positions.partition_point(|&x| x < tol);
        let dropped: f64 = self.weights[..cut].iter().sum();
        let kept = 1.0 - dropped;
        let m = SpectralMeasure {
            positions: self.positions[cut..].to_vec(),
            weights: self.weights[cut..].iter().map(|w| w / kept).collect(),
        };
        (m, dropped)
    }
}

/// Symmetric normalized Laplacian `I - D^{-1/2} A D^{-1/2}`.
///
/// Isolated vertices get an all-zero row and column, contributing
/// eigenvalue 0.
pub fn normalized_laplacian(g: &Graph) -> Result<SymmetricMatrix> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let inv_sqrt: Vec<f64> = g
        .degrees()
        .iter()
        .map(|&d| if d == 0 { 0.0 } else { 1.0 / (d as f64).sqrt() })
        .collect();
    let mut m = SymmetricMatrix::zeros(n);
    for v in 0..n {
        if inv_sqrt[v] != 0.0 {
            m.set(v, v, 1.0);
        }
    }
    for &(u, v) in g.edges() {
        m.set(u, v, -inv_sqrt[u] * inv_sqrt[v]);
    }
    Ok(m)
}

pub fn spectrum(g: &Graph) -> Result<Spectrum> {
    spectrum_with_cap(g, DEFAULT_SIZE_CAP)
}

/// Full spectrum, refusing graphs with more than `cap` vertices.
pub fn spectrum_with_cap(g: &Graph, cap: usize) -> Result<Spectrum> {
    if g.n() > cap {
        return Err(Error::SizeCap { n: g.n(), cap });
    }
    let values = symmetric_eigenvalues(normalized_laplacian(g)?)?;
    Spectrum::new(values)
}

/// Exact spectrum for families with a known closed form.
pub fn closed_form_spectrum(spec: FamilySpec) -> Result<Spectrum> {
    spec.validate()?;
    let values: Vec<f64> = match spec {
        FamilySpec::Complete(1) => vec![0.0],
        FamilySpec::Complete(n) => {
            let mut v = vec![n as f64 / (n - 1) as f64; n];
            v[0] = 0.0;
            v
        }
        FamilySpec::CompleteBipartite(a, b) => bipartite_spectrum(a + b),
        FamilySpec::Star(n) => bipartite_spectrum(n),
        FamilySpec::Hypercube(d) => {
            let mut v = Vec::with_capacity(1 << d);
            let mut binom = 1usize;
            for k in 0..=d as usize {
                v.extend(std::iter::repeat_n(2.0 * k as f64 / d as f64, binom));
                binom = binom * (d as usize - k) / (k + 1);
            }
            v
        }
        FamilySpec::Petal(m) => {
            let mut v = vec![0.0];
            v.extend(std::iter::repeat_n(0.5, m - 1));
            v.extend(std::iter::repeat_n(1.5, m + 1));
            v
        }
        FamilySpec::Path(1) => vec![0.0],
        FamilySpec::Path(n) => (0..n)
            .map(|k| 1.0 - (PI * k as f64 / (n - 1) as f64).cos())
            .collect(),
        FamilySpec::Cycle(n) => (0..n)
            .map(|k| 1.0 - (2.0 * PI * k as f64 / n as f64).cos())
            .collect(),
        other => {
            return Err(Error::InvalidParameter(format!("no closed-form spectrum for {other}")));
        }
    };
    Spectrum::new(values)
}

fn bipartite_spectrum(n: usize) -> Vec<f64> {
    let mut v = vec![1.0; n];
    v[0] = 0.0;
    v[n - 1] = 2.0;
    v
}

/// Closed-form spectral measure of the `d`-cube: atoms `2k/d` with weight
/// `C(d, k) / 2^d`. Usable far beyond sizes that could be diagonalized.
pub fn hypercube_measure(d: u32) -> SpectralMeasure {
    // log-space binomials, normalized by their sum, keep large d finite
    let dn = d as f64;
    let ln_choose: Vec<f64> = (0..=d)
        .map(|k| {
            let k = k as f64;
            ln_gamma(dn + 1.0) - ln_gamma(k + 1.0) - ln_gamma(dn - k + 1.0)
        })
        .collect();
    let peak = ln_choose.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let raw: Vec<f64> = ln_choose.iter().map(|l| (l - peak).exp()).collect();
    let total: f64 = raw.iter().sum();
    SpectralMeasure::from_atoms((0..=d).map(|k| (2.0 * k as f64 / dn, raw[k as usize] / total)))
}

fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Edge-Laplacian spectrum: the vertex spectrum with the zero eigenvalue's
/// multiplicity replaced by the cycle rank `|E| - |V| + c`. Length `|E|`.
pub fn edge_laplacian_spectrum(g: &Graph) -> Result<Spectrum> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let vertex = spectrum(g)?;
    let c = g.connected_components().count;
    let cycle_rank = g.edge_count() + c - g.n();
    let nonzero = &vertex.values()[c..];
    let mut values = vec![0.0; cycle_rank];
    values.extend_from_slice(nonzero);
    Spectrum::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::generate_family;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    fn k4() -> Graph {
        generate_family(FamilySpec::Complete(4)).unwrap()
    }

    #[test]
    fn laplacian_entries() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(normalized_laplacian(&k2).unwrap().as_row_major(), &[1.0, -1.0, -1.0, 1.0]);
        assert_eq!(normalized_laplacian(&Graph::empty(1)).unwrap().as_row_major(), &[0.0]);
        let p3 = normalized_laplacian(&Graph::new(3, [(0, 1), (1, 2)]).unwrap()).unwrap();
        let r = -std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(p3.as_row_major(), &[1.0, r, 0.0, r, 1.0, r, 0.0, r, 1.0], 1e-15));
        assert!(matches!(normalized_laplacian(&Graph::empty(0)), Err(Error::EmptyGraph)));
    }

    #[test]
    fn small_spectra() {
        let four_thirds = 4.0 / 3.0;
        assert!(close(spectrum(&k4()).unwrap().values(), &[0.0, four_thirds, four_thirds, four_thirds], 1e-12));

        let diamond = k4().apply_edit(crate::graph::EditOp::DeleteEdge(2, 3)).unwrap();
        assert!(close(spectrum(&diamond).unwrap().values(), &[0.0, 1.0, four_thirds, 5.0 / 3.0], 1e-12));

        let petal = generate_family(FamilySpec::Petal(2)).unwrap();
        assert!(close(spectrum(&petal).unwrap().values(), &[0.0, 0.5, 1.5, 1.5, 1.5], 1e-12));

        assert!(matches!(spectrum(&Graph::empty(0)), Err(Error::EmptyGraph)));
        assert!(matches!(
            spectrum_with_cap(&k4(), 3),
            Err(Error::SizeCap { n: 4, cap: 3 })
        ));
    }

    #[test]
    fn closed_forms() {
        let s = closed_form_spectrum(FamilySpec::CompleteBipartite(2, 2)).unwrap();
        assert_eq!(s.values(), &[0.0, 1.0, 1.0, 2.0]);
        let s = closed_form_spectrum(FamilySpec::Path(3)).unwrap();
        assert!(close(s.values(), &[0.0, 1.0, 2.0], 1e-15));
        let s = closed_form_spectrum(FamilySpec::Hypercube(2)).unwrap();
        assert_eq!(s.values(), &[0.0, 1.0, 1.0, 2.0]);
        let c4 = closed_form_spectrum(FamilySpec::Cycle(4)).unwrap();
        assert!(close(c4.values(), s.values(), 1e-15));
        assert!(closed_form_spectrum(FamilySpec::KRegularTree { k: 3, depth: 2 }).is_err());
        assert!(closed_form_spectrum(FamilySpec::DuplicatedCycle(3)).is_err());
    }

    #[test]
    fn hypercube_measure_matches_spectrum() {
        for d in 1..=8 {
            let exact = closed_form_spectrum(FamilySpec::Hypercube(d)).unwrap().measure();
            let m = hypercube_measure(d);
            assert_eq!(m.positions(), exact.positions());
            assert!(close(m.weights(), exact.weights(), 1e-13));
        }
        assert!((hypercube_measure(2000).total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn integration_and_cdf() {
        let s = spectrum(&k4()).unwrap();
        assert!((s.integrate(|_| 1.0) - 1.0).abs() < 1e-15);
        assert!((s.integrate(|x| x) - 1.0).abs() < 1e-12);
        let kb = closed_form_spectrum(FamilySpec::CompleteBipartite(3, 3)).unwrap();
        assert!((kb.integrate(|x| if x == 1.0 { 1.0 } else { 0.0 }) - 4.0 / 6.0).abs() < 1e-15);

        assert_eq!(s.empirical_cdf(2.0), 1.0);
        assert_eq!(s.empirical_cdf(1.0), 0.25);
        let p3 = closed_form_spectrum(FamilySpec::Path(3)).unwrap();
        assert!((p3.empirical_cdf(1.0) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn path_cdf_matches_floor_formula() {
        let n = 9;
        let s = closed_form_spectrum(FamilySpec::Path(n)).unwrap();
        let f = |x: f64| (((n - 1) as f64 / PI * (1.0 - x).acos()).floor() + 1.0) / n as f64;
        // continuity points strictly between eigenvalues
        for w in s.values().windows(2) {
            let x = 0.5 * (w[0] + w[1]);
            assert!((s.empirical_cdf(x) - f(x)).abs() < 1e-15, "x = {x}");
        }
    }

    #[test]
    fn edge_laplacian_multiplicities() {
        let s = edge_laplacian_spectrum(&k4()).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(s.zero_multiplicity(ZERO_TOLERANCE), 3);
        let p = edge_laplacian_spectrum(&generate_family(FamilySpec::Path(6)).unwrap()).unwrap();
        assert_eq!((p.len(), p.zero_multiplicity(ZERO_TOLERANCE)), (5, 0));
        let c = edge_laplacian_spectrum(&generate_family(FamilySpec::Cycle(5)).unwrap()).unwrap();
        assert_eq!((c.len(), c.zero_multiplicity(ZERO_TOLERANCE)), (5, 1));
        assert!(matches!(edge_laplacian_spectrum(&Graph::empty(3)), Err(Error::NoEdges)));
    }

    #[test]
    fn trace_identity() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        let s = spectrum(&g).unwrap();
        let sum: f64 = s.values().iter().sum();
        assert!((sum - (6 - g.isolated_count()) as f64).abs() < 1e-12);
        assert_eq!(s.zero_multiplicity(ZERO_TOLERANCE), 3);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let s = spectrum(&generate_family(FamilySpec::Path(7)).unwrap()).unwrap();
        let text = s.to_csv();
        assert!(text.starts_with("# n 7\n"));
        assert_eq!(Spectrum::read_csv(text.as_bytes()).unwrap(), s);
        assert!(Spectrum::read_csv("# n 3\n0.5\n".as_bytes()).is_err());
        assert!(Spectrum::read_csv("2.5\n".as_bytes()).is_err());
    }

    #[test]
    fn measure_utilities() {
        let m = SpectralMeasure::from_atoms([(1.0, 0.25), (0.0, 0.5), (1.0, 0.25)]);
        assert_eq!(m.positions(), &[0.0, 1.0]);
        assert_eq!(m.weights(), &[0.5, 0.5]);
        let (nz, dropped) = m.without_zero(ZERO_TOLERANCE);
        assert_eq!(dropped, 0.5);
        assert_eq!(nz.weights(), &[1.0]);
    }
}
