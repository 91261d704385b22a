//! Dense symmetric eigenvalues: Householder reduction to tridiagonal form
//! followed by implicit-shift QL. Eigenvectors are never formed.

use crate::error::{Error, Result};

/// Iteration cap per eigenvalue in the QL sweep.
pub const MAX_QL_ITERATIONS: usize = 60;

/// Dense symmetric matrix in row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix { n, data: vec![0.0; n * n] }
    }

    /// Builds from row-major data, which must be `n * n` long and symmetric.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "expected {} entries for a {n}x{n} matrix, found {}",
                n * n,
                data.len()
            )));
        }
        for i in 0..n {
            for j in 0..i {
                if data[i * n + j] != data[j * n + i] {
                    return Err(Error::InvalidParameter(format!("matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(SymmetricMatrix { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_row_major(&self) -> &[f64] {
        &self.data
    }
}

/// Symmetric tridiagonal matrix: `diag` has `n` entries, `off` has `n - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    // Four accumulators let the compiler vectorize without reassociation flags.
    let mut acc = [0.0f64; 4];
    let chunks = a.len() / 4;
    for c in 0..chunks {
        let i = 4 * c;
        acc[0] += a[i] * b[i];
        acc[1] += a[i + 1] * b[i + 1];
        acc[2] += a[i + 2] * b[i + 2];
        acc[3] += a[i + 3] * b[i + 3];
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for i in 4 * chunks..a.len() {
        s += a[i] * b[i];
    }
    s
}

/// Householder vector for `x`: writes `v = x - alpha e1` and returns
/// `(alpha, beta)` with `(I - beta v v^T) x = alpha e1`. Returns `None` when
/// `x` is already a multiple of `e1`.
fn householder(x: &[f64], v: &mut [f64]) -> Option<(f64, f64)> {
    let tail_norm2 = dot(&x[1..], &x[1..]);
    if tail_norm2 == 0.0 {
        return None;
    }
    let x0 = x[0];
    let norm = (x0 * x0 + tail_norm2).sqrt();
    let alpha = if x0 >= 0.0 { -norm } else { norm };
    v.copy_from_slice(x);
    v[0] -= alpha;
    let beta = 2.0 / (v[0] * v[0] + tail_norm2);
    Some((alpha, beta))
}

/// Reduces `a` to tridiagonal form by Householder reflections applied from
/// the first row down. The input matrix is consumed as workspace; only its
/// upper triangle is read.
///
/// The rank-2 update of step `k` is fused with the symmetric matrix-vector
/// product of step `k + 1`, so the trailing block is streamed once per step.
pub fn tridiagonalize(a: SymmetricMatrix) -> Tridiagonal {
    let n = a.n;
    let mut data = a.data;
    if n == 0 {
        return Tridiagonal { diag: Vec::new(), off: Vec::new() };
    }
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n - 1];
    diag[0] = data[0];
    if n == 1 {
        return Tridiagonal { diag, off };
    }
    let (mut v, mut v_next) = (vec![0.0; n], vec![0.0; n]);
    let (mut p, mut p_next) = (vec![0.0; n], vec![0.0; n]);

    // Reflection for row 0 and its product with the trailing block.
    let mut cur = householder(&data[1..n], &mut v[..n - 1]);
    off[0] = cur.map_or(data[1], |(alpha, _)| alpha);
    if let Some((_, beta)) = cur {
        let m = n - 1;
        p[..m].fill(0.0);
        for i in 0..m {
            let start = (i + 1) * n + (i + 1);
            symv_row(&data[start..start + m - i], &v[..m], &mut p[..m], i);
        }
        for x in &mut p[..m] {
            *x *= beta;
        }
    }

    for k in 0..n - 1 {
        // Trailing block A22 = A[k+1.., k+1..] has order m; row i of its
        // upper triangle starts at `base + i * (n + 1)` and has m - i entries.
        let m = n - k - 1;
        let base = (k + 1) * n + (k + 1);
        if let Some((_, beta)) = cur {
            // w = p - (beta/2)(p^T v) v
            let half = 0.5 * beta * dot(&p[..m], &v[..m]);
            for i in 0..m {
                p[i] -= half * v[i];
            }
            update_row(&mut data[base..base + m], v[0], p[0], &v[..m], &p[..m]);
        }
        diag[k + 1] = data[base];
        if m == 1 {
            break;
        }

        // Reflection for row k+1, read from the freshly updated row.
        let next = householder(&data[base + 1..base + m], &mut v_next[..m - 1]);
        off[k + 1] = next.map_or(data[base + 1], |(alpha, _)| alpha);
        p_next[..m - 1].fill(0.0);
        for i in 1..m {
            let start = base + i * (n + 1);
            let row = &mut data[start..start + m - i];
            if cur.is_some() {
                update_row(row, v[i], p[i], &v[i..m], &p[i..m]);
            }
            if next.is_some() {
                symv_row(row, &v_next[..m - 1], &mut p_next[..m - 1], i - 1);
            }
        }
        if let Some((_, beta_next)) = next {
            for x in &mut p_next[..m - 1] {
                *x *= beta_next;
            }
        }
        cur = next;
        std::mem::swap(&mut v, &mut v_next);
        std::mem::swap(&mut p, &mut p_next);
    }
    Tridiagonal { diag, off }
}

/// Accumulates the contribution of upper-triangle row `i` (entries at
/// columns `i..`) to `p = A v`.
fn symv_row(row: &[f64], v: &[f64], p: &mut [f64], i: usize) {
    let vi = v[i];
    let mut acc = row[0] * vi;
    let (vt, pt) = (&v[i + 1..], &mut p[i + 1..]);
    for ((&r, &vj), pj) in row[1..].iter().zip(vt).zip(pt.iter_mut()) {
        acc += r * vj;
        *pj += r * vi;
    }
    p[i] += acc;
}

/// `row -= vi * w + wi * v`
fn update_row(row: &mut [f64], vi: f64, wi: f64, v: &[f64], w: &[f64]) {
    for ((r, &vj), &wj) in row.iter_mut().zip(v).zip(w) {
        *r -= vi * wj + wi * vj;
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL.
/// Returned unsorted.
pub fn tridiagonal_eigenvalues(t: Tridiagonal) -> Result<Vec<f64>> {
    let Tridiagonal { mut diag, off } = t;
    let n = diag.len();
    if n <= 1 {
        return Ok(diag);
    }
    let mut e = off;
    e.push(0.0);
    // Deflation is absolute against the matrix norm: relative tests stall on
    // the tight eigenvalue clusters that tree spectra produce.
    let norm = (0..n)
        .map(|i| diag[i].abs() + e[i].abs() + if i > 0 { e[i - 1].abs() } else { 0.0 })
        .fold(0.0, f64::max);
    let threshold = f64::EPSILON * norm;
    for l in 0..n {
        let mut iter = 0;
        loop {
            // Find a negligible off-diagonal element e[m] to split at.
            let mut m = l;
            while m < n - 1 && e[m].abs() > threshold {
                m += 1;
            }
            if m == l {
                break;
            }
            if iter == MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence { index: l, iterations: iter });
            }
            iter += 1;
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Underflow: recover and restart this eigenvalue.
                    diag[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(diag)
}

/// All eigenvalues of `a`, sorted ascending.
pub fn symmetric_eigenvalues(a: SymmetricMatrix) -> Result<Vec<f64>> {
    let mut values = tridiagonal_eigenvalues(tridiagonalize(a))?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}
