//! Pairwise distance matrices and their CSV / SVG renderings.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::hash::{Hash, Hasher};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::distance::{build_density, DensityParams, SpectralDensity};
use crate::error::{Error, Result};
use crate::graph::{read_any_edge_list, Graph};
use crate::spectral::{spectrum, Spectrum};

/// Symmetric matrix of pairwise spectral distances with a zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    /// Row-major `k × k`.
    values: Vec<f64>,
}

impl DistanceMatrix {
    /// Computes every unordered pair once (in parallel) and mirrors it.
    pub fn from_densities(labels: Vec<String>, densities: &[SpectralDensity]) -> Result<Self> {
        let k = labels.len();
        if densities.len() != k {
            return Err(Error::InvalidParameter(format!("{k} labels for {} densities", densities.len())));
        }
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        let dists = pairs
            .par_iter()
            .map(|&(i, j)| densities[i].distance(&densities[j]))
            .collect::<Result<Vec<f64>>>()?;
        let mut values = vec![0.0; k * k];
        for (&(i, j), d) in pairs.iter().zip(dists) {
            values[i * k + j] = d;
            values[j * k + i] = d;
        }
        Ok(DistanceMatrix { labels, values })
    }

    pub fn from_values(labels: Vec<String>, values: Vec<f64>) -> Result<Self> {
        let k = labels.len();
        if values.len() != k * k {
            return Err(Error::InvalidParameter(format!("expected {} values, found {}", k * k, values.len())));
        }
        for i in 0..k {
            if values[i * k + i] != 0.0 {
                return Err(Error::InvalidParameter(format!("nonzero diagonal at {i}")));
            }
            for j in 0..i {
                if values[i * k + j] != values[j * k + i] {
                    return Err(Error::InvalidParameter(format!("asymmetric at ({i}, {j})")));
                }
            }
        }
        Ok(DistanceMatrix { labels, values })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.len() + j]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Mean of `D(i, j)` over `i ∈ rows`, `j ∈ cols`, `i ≠ j`.
    pub fn block_mean(&self, rows: &[usize], cols: &[usize]) -> f64 {
        let mut sum = 0.0;
        let mut count = 0usize;
        for &i in rows {
            for &j in cols {
                if i != j {
                    sum += self.get(i, j);
                    count += 1;
                }
            }
        }
        if count == 0 {
            0.0
        } else {
            sum / count as f64
        }
    }

    /// CSV with labels in the first row and column. `comments` become `#`
    /// lines ahead of the table.
    pub fn to_csv(&self, comments: &[String]) -> String {
        let mut s = String::new();
        for c in comments {
            let _ = writeln!(s, "# {c}");
        }
        s.push_str("label");
        for l in &self.labels {
            s.push(',');
            s.push_str(&csv_field(l));
        }
        s.push('\n');
        for (i, l) in self.labels.iter().enumerate() {
            s.push_str(&csv_field(l));
            for j in 0..self.len() {
                let _ = write!(s, ",{}", format_value(self.get(i, j)));
            }
            s.push('\n');
        }
        s
    }

    /// Heatmap: one square per entry, colored on a dark-blue → white →
    /// dark-red ramp scaled to the matrix maximum. Each cell carries the
    /// exact CSV value in `data-value`.
    pub fn to_svg(&self) -> String {
        const CELL: usize = 24;
        const MARGIN: usize = 160;
        const LEGEND: usize = 60;
        let k = self.len();
        let max = self.max();
        let width = MARGIN + k * CELL + 20;
        let height = MARGIN + k * CELL + LEGEND;
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
        );
        for (i, l) in self.labels.iter().enumerate() {
            let y = MARGIN + i * CELL + CELL / 2 + 4;
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{y}" text-anchor="end">{}</text>"#,
                MARGIN - 6,
                xml_escape(l)
            );
            let x = MARGIN + i * CELL + CELL / 2 + 4;
            let _ = writeln!(
                s,
                r#"<text x="{x}" y="{}" transform="rotate(-60 {x} {})">{}</text>"#,
                MARGIN - 6,
                MARGIN - 6,
                xml_escape(l)
            );
        }
        for i in 0..k {
            for j in 0..k {
                let v = self.get(i, j);
                let text = format_value(v);
                let _ = writeln!(
                    s,
                    r#"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="{}" data-row="{i}" data-col="{j}" data-value="{text}"><title>{} / {}: {text}</title></rect>"#,
                    MARGIN + j * CELL,
                    MARGIN + i * CELL,
                    ramp_color(v, max),
                    xml_escape(&self.labels[i]),
                    xml_escape(&self.labels[j]),
                );
            }
        }
        let ly = MARGIN + k * CELL + 20;
        let _ = writeln!(
            s,
            r#"<defs><linearGradient id="ramp"><stop offset="0" stop-color="{}"/><stop offset="0.5" stop-color="{}"/><stop offset="1" stop-color="{}"/></linearGradient></defs>"#,
            ramp_color(0.0, 1.0),
            ramp_color(0.5, 1.0),
            ramp_color(1.0, 1.0)
        );
        let _ = writeln!(
            s,
            r#"<rect x="{MARGIN}" y="{ly}" width="{}" height="12" fill="url(#ramp)"/>"#,
            (k * CELL).max(120)
        );
        let _ = writeln!(s, r#"<text x="{MARGIN}" y="{}">0</text>"#, ly + 26);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="end">max {}</text>"#,
            MARGIN + (k * CELL).max(120),
            ly + 26,
            format_value(max)
        );
        s.push_str("</svg>\n");
        s
    }
}

/// A graph read from disk, labeled by its file stem.
#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub label: String,
    pub path: PathBuf,
    pub content_hash: u64,
    pub graph: Graph,
}

pub fn content_hash(bytes: &[u8]) -> u64 {
    let mut h = DefaultHasher::new();
    bytes.hash(&mut h);
    h.finish()
}

pub fn load_graph(path: &Path) -> Result<LoadedGraph> {
    let bytes = fs::read(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    let text = String::from_utf8(bytes)
        .map_err(|e| Error::Parse { line: 0, message: format!("not UTF-8: {e}") })?;
    let (graph, _) = read_any_edge_list(&text)?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok(LoadedGraph {
        label,
        path: path.to_path_buf(),
        content_hash: content_hash(text.as_bytes()),
        graph,
    })
}

/// Every regular file in `dir`, in file-name order. Files that cannot be
/// read or parsed are skipped and reported in the returned warnings.
pub fn load_graph_dir(dir: &Path) -> Result<(Vec<LoadedGraph>, Vec<String>)> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    paths.retain(|p| p.is_file());
    paths.sort();
    let mut graphs = Vec::new();
    let mut warnings = Vec::new();
    for p in paths {
        match load_graph(&p) {
            Ok(g) => graphs.push(g),
            Err(e) => warnings.push(format!("skipped {}: {e}", p.display())),
        }
    }
    Ok((graphs, warnings))
}

/// In-memory spectra keyed by file path and content hash.
#[derive(Debug, Default)]
pub struct SpectrumCache {
    map: HashMap<(PathBuf, u64), Spectrum>,
}

impl SpectrumCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Spectra for `graphs`, computing the missing ones in parallel.
    pub fn spectra(&mut self, graphs: &[LoadedGraph]) -> Result<Vec<Spectrum>> {
        let mut missing: Vec<&LoadedGraph> = Vec::new();
        for g in graphs {
            let key = (g.path.clone(), g.content_hash);
            if !self.map.contains_key(&key) && !missing.iter().any(|m| m.path == g.path && m.content_hash == g.content_hash) {
                missing.push(g);
            }
        }
        let computed = missing
            .par_iter()
            .map(|g| spectrum(&g.graph))
            .collect::<Result<Vec<Spectrum>>>()?;
        for (g, s) in missing.into_iter().zip(computed) {
            self.map.insert((g.path.clone(), g.content_hash), s);
        }
        Ok(graphs
            .iter()
            .map(|g| self.map[&(g.path.clone(), g.content_hash)].clone())
            .collect())
    }
}

/// Distance matrix over `graphs`, with spectra taken from `cache`.
pub fn matrix_for(graphs: &[LoadedGraph], params: DensityParams, cache: &mut SpectrumCache) -> Result<DistanceMatrix> {
    if graphs.len() < 2 {
        return Err(Error::TooFewGraphs { needed: 2, found: graphs.len() });
    }
    params.validate()?;
    let spectra = cache.spectra(graphs)?;
    let dens = spectra
        .par_iter()
        .map(|s| build_density(s, params))
        .collect::<Result<Vec<_>>>()?;
    DistanceMatrix::from_densities(graphs.iter().map(|g| g.label.clone()).collect(), &dens)
}

/// Full-precision value text shared by the CSV and SVG outputs.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// Color for `value` on the ramp dark blue (0) → white (max/2) → dark red (max).
pub fn ramp_color(value: f64, max: f64) -> String {
    const BLUE: [f64; 3] = [0.0, 0.0, 139.0];
    const WHITE: [f64; 3] = [255.0, 255.0, 255.0];
    const RED: [f64; 3] = [139.0, 0.0, 0.0];
    let t = if max > 0.0 { (value / max).clamp(0.0, 1.0) } else { 0.0 };
    let (from, to, u) = if t <= 0.5 { (BLUE, WHITE, t / 0.5) } else { (WHITE, RED, (t - 0.5) / 0.5) };
    let c: Vec<u8> = (0..3).map(|i| (from[i] + (to[i] - from[i]) * u).round() as u8).collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
