//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines are always
//! printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use specdist::distance::{
    build_density, check_interlacing, classify, cube_erf_bound, spectral_distance, DensityParams,
};
use specdist::experiments::{run_growth, run_rate, run_trees, GrowthParams, RateCase, RateParams, TreeParams};
use specdist::generators::{generate_ba, generate_er, generate_family, regular_tree_size, rng};
use specdist::matrix::DistanceMatrix;
use specdist::spectral::closed_form_spectrum;
use specdist::{spectrum, EditOp, FamilySpec, Graph, Spectrum};

const SIGMA: f64 = 0.05;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn params() -> DensityParams {
    DensityParams::new(SIGMA)
}

fn spec_of(f: FamilySpec) -> Spectrum {
    spectrum(&generate_family(f).unwrap()).unwrap()
}

/// Mixed pool of random graphs with at most 300 vertices.
fn random_graph(seed: u64) -> Graph {
    let mut r = rng(seed ^ 0x5eed);
    let n = r.random_range(20..=300);
    match seed % 3 {
        0 => generate_er(n, r.random_range(2.0..8.0), seed).unwrap(),
        1 => generate_ba(n, r.random_range(1..=3), 5, seed).unwrap(),
        _ => generate_er(n, r.random_range(0.5..2.0), seed).unwrap(),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut cases = Vec::new();
    for n in [2, 3, 10, 100, 1024] {
        cases.push(FamilySpec::Complete(n));
        cases.push(FamilySpec::Star(n.max(2)));
        cases.push(FamilySpec::Path(n));
    }
    cases.push(FamilySpec::Path(1));
    for (a, b) in [(1, 1), (3, 5), (100, 200), (512, 512)] {
        cases.push(FamilySpec::CompleteBipartite(a, b));
    }
    for n in [3, 4, 10, 101, 1023, 1024] {
        cases.push(FamilySpec::Cycle(n));
    }
    for d in 1..=10 {
        cases.push(FamilySpec::Hypercube(d));
    }
    for m in [1, 2, 10, 100, 511] {
        cases.push(FamilySpec::Petal(m));
    }
    let mut worst = 0.0f64;
    let mut worst_case = String::new();
    for f in &cases {
        let numeric = spec_of(*f);
        let exact = closed_form_spectrum(*f).unwrap();
        assert_eq!(numeric.len(), exact.len(), "{f:?}");
        let err = numeric
            .values()
            .iter()
            .zip(exact.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if err > worst {
            worst = err;
            worst_case = format!("{f:?}");
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-8 && elapsed < Duration::from_secs(60),
        format!(
            "{} family instances, max |error| {worst:.2e} ({worst_case}), {:.1}s",
            cases.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Outcome {
    let p = params();
    let fine = p.with_step(p.step / 2.0);
    let mut spectra: Vec<Spectrum> = (0..30).map(|s| spectrum(&random_graph(100 + s)).unwrap()).collect();
    for f in [
        FamilySpec::Complete(50),
        FamilySpec::Star(5),
        FamilySpec::Star(10),
        FamilySpec::Path(200),
        FamilySpec::Hypercube(8),
        FamilySpec::Petal(40),
        FamilySpec::DuplicatedCycle(30),
    ] {
        spectra.push(spec_of(f));
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for s in &spectra {
        for q in [p, fine] {
            let m = build_density(s, q).unwrap().trapezoid_mass();
            lo = lo.min(m);
            hi = hi.max(m);
        }
    }
    let mut worst = 0.0f64;
    for i in 0..spectra.len() {
        let j = (i + 1) % spectra.len();
        let a = spectral_distance(&spectra[i], &spectra[j], p).unwrap();
        let b = spectral_distance(&spectra[i], &spectra[j], fine).unwrap();
        worst = worst.max((a - b).abs());
    }
    outcome(
        lo >= 0.9999 && hi <= 1.0 && worst < 1e-6,
        format!(
            "mass in [{lo:.10}, {hi:.10}] over {} densities; max |D(h) - D(h/2)| {worst:.2e}",
            2 * spectra.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    let p = params();
    let (mut self_max, mut asym, mut tri_slack) = (0.0f64, 0usize, f64::NEG_INFINITY);
    for t in 0..30u64 {
        let dens: Vec<_> = (0..3)
            .map(|k| build_density(&spectrum(&random_graph(1000 + 3 * t + k)).unwrap(), p).unwrap())
            .collect();
        let d = |i: usize, j: usize| dens[i].distance(&dens[j]).unwrap();
        for i in 0..3 {
            self_max = self_max.max(d(i, i));
            for j in 0..3 {
                if d(i, j) != d(j, i) {
                    asym += 1;
                }
                for k in 0..3 {
                    tri_slack = tri_slack.max(d(i, k) - d(i, j) - d(j, k));
                }
            }
        }
    }
    let cospectral = spectral_distance(
        &spec_of(FamilySpec::CompleteBipartite(2, 2)),
        &spec_of(FamilySpec::Cycle(4)),
        p,
    )
    .unwrap();
    outcome(
        self_max <= 1e-12 && asym == 0 && tri_slack <= 1e-9 && cospectral <= 1e-10,
        format!(
            "max D(a,a) {self_max:.1e}, asymmetric pairs {asym}, max triangle excess {tri_slack:.1e}, D(K22, C4) {cospectral:.1e}"
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut holds = 0;
    for seed in 0..100u64 {
        let g = generate_er(200, 6.0, seed).unwrap();
        let mut r = rng(seed + 7_000);
        let (u, v) = g.edges()[r.random_range(0..g.edge_count())];
        let h = g.apply_edit(EditOp::DeleteEdge(u, v)).unwrap();
        if check_interlacing(&spectrum(&g).unwrap(), &spectrum(&h).unwrap(), 1).holds {
            holds += 1;
        }
    }
    outcome(holds == 100, format!("{holds}/100 single-edge deletions interlace with C = 1"))
}

fn star_ratios(sigma: f64) -> Vec<f64> {
    let sizes = [20usize, 50, 100, 200, 500];
    let p = DensityParams::new(sigma);
    let dens: Vec<_> = sizes
        .iter()
        .map(|&n| build_density(&spec_of(FamilySpec::Star(n)), p).unwrap())
        .collect();
    let mut out = Vec::new();
    for i in 0..sizes.len() {
        for j in i + 1..sizes.len() {
            let gap = (1.0 / sizes[i] as f64 - 1.0 / sizes[j] as f64).abs();
            out.push(dens[i].distance(&dens[j]).unwrap() / gap);
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let r = star_ratios(SIGMA);
    let mean = r.iter().sum::<f64>() / r.len() as f64;
    let spread = r.iter().map(|x| (x / mean - 1.0).abs()).fold(0.0, f64::max);
    let small = star_ratios(0.01);
    let small_mean = small.iter().sum::<f64>() / small.len() as f64;
    outcome(
        spread <= 0.01 && (mean / 4.0 - 1.0).abs() <= 0.01 && (small_mean / 4.0 - 1.0).abs() <= 0.01,
        format!(
            "ratio mean {mean:.6} (max relative spread {spread:.1e}) at σ = {SIGMA}; mean {small_mean:.6} at σ = 0.01"
        ),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let complete = run_rate(&RateParams {
        case: RateCase::Complete,
        sizes: vec![50, 100, 200, 400, 800],
        seed: 1,
        density: params(),
    })
    .unwrap();
    let er = run_rate(&RateParams {
        case: RateCase::ErEdgeDeletion { avg_degree: 4.0, trials: 5 },
        sizes: vec![100, 200, 400, 800, 1600],
        seed: 1,
        density: params(),
    })
    .unwrap();
    let elapsed = start.elapsed();
    let (Some(c), Some(e)) = (&complete.fit, &er.fit) else {
        return outcome(false, format!("fit skipped: {:?} / {:?}", complete.fit_error, er.fit_error));
    };
    outcome(
        (c.slope + 2.0).abs() <= 0.15 && e.slope <= -0.9 && elapsed < Duration::from_secs(600),
        format!(
            "complete slope {:.4}, ER edge-deletion slope {:.4}, {:.1}s",
            c.slope,
            e.slope,
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_7() -> Outcome {
    let p = params();
    let mut detail = Vec::new();
    let mut pass = true;
    for d in 4..=11u32 {
        let dist = spectral_distance(&spec_of(FamilySpec::Hypercube(d - 1)), &spec_of(FamilySpec::Hypercube(d)), p).unwrap();
        let bound = cube_erf_bound(d, SIGMA).unwrap();
        pass &= dist < bound;
        detail.push(format!("d={d}: {dist:.4} < {bound:.4}"));
    }
    outcome(pass, detail.join(", "))
}

fn criterion_8() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for n in [100usize, 500, 2000] {
        let s = spec_of(FamilySpec::Path(n));
        let f = |x: f64| (1.0 - x.clamp(0.0, 2.0)).acos() / std::f64::consts::PI;
        // sup over the step function: compare F at each atom with the CDF on both sides
        let vals = s.values();
        let mut ks = 0.0f64;
        for (i, &x) in vals.iter().enumerate() {
            let below = i as f64 / n as f64;
            let above = (i + 1) as f64 / n as f64;
            ks = ks.max((f(x) - below).abs()).max((f(x) - above).abs());
        }
        pass &= ks <= 2.0 / n as f64;
        detail.push(format!("KS(P{n}) {ks:.2e} <= {:.2e}", 2.0 / n as f64));
    }
    let cases = [
        (FamilySpec::Path(2000), "arcsine"),
        (FamilySpec::Cycle(2000), "arcsine"),
        (FamilySpec::Complete(2000), "dirac-at-one"),
        (FamilySpec::CompleteBipartite(1000, 1000), "dirac-at-one"),
        (FamilySpec::Petal(999), "petal-mixture"),
    ];
    for (f, want) in cases {
        let g = generate_family(f).unwrap();
        let ranked = classify(&spectrum(&g).unwrap(), params(), Some(g.average_degree().unwrap())).unwrap();
        let got = ranked[0].template.name();
        pass &= got == want;
        detail.push(format!("{f:?} -> {got}"));
    }
    outcome(pass, detail.join("; "))
}

fn criterion_9() -> Outcome {
    let s = spec_of(FamilySpec::DuplicatedCycle(100));
    let mult = s.multiplicity_near(1.0, 1e-7);
    outcome(mult >= 100, format!("multiplicity of eigenvalue 1 in DuplicatedCycle(100): {mult}"))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let g = run_growth(&GrowthParams::default()).unwrap();
    let last = g.sizes.len() - 1;
    let a_conv = g.cross[last] < 2.0 * g.same[last];
    let a_contrast = (0..g.sizes.len()).all(|i| g.contrast[i] > g.same[i] && g.contrast[i] > g.cross[i]);
    let a = a_conv && a_contrast;
    let da = format!(
        "(a) {}: final same {:.4}, cross {:.4}, min contrast margin {:.4}",
        if a { "pass" } else { "FAIL" },
        g.same[last],
        g.cross[last],
        (0..g.sizes.len())
            .map(|i| g.contrast[i] - g.same[i].max(g.cross[i]))
            .fold(f64::INFINITY, f64::min)
    );

    let t = run_trees(&TreeParams::default()).unwrap();
    let tl = t.sizes.len() - 1;
    let mut b = true;
    let mut db = Vec::new();
    for (a_idx, k) in t.params.ks.iter().enumerate() {
        let fin = t.same[a_idx][tl];
        let peak = t.peak(a_idx);
        b &= fin < 0.2 * peak;
        db.push(format!("k={k} final/peak {:.3}/{:.3}", fin, peak));
    }
    let cross_min = t.cross[0].iter().copied().fold(f64::INFINITY, f64::min);
    let same3_final = t.same[0][tl];
    b &= cross_min >= same3_final;
    db.push(format!("cross 3v4 min {cross_min:.3} vs same k=3 final {same3_final:.3}"));
    let db = format!("(b) {}: {}", if b { "pass" } else { "FAIL" }, db.join(", "));

    let mut graphs = Vec::new();
    for s in 0..5u64 {
        graphs.push(generate_er(1000, 4.0, 500 + s).unwrap());
    }
    for s in 0..5u64 {
        graphs.push(generate_ba(1000, 2, 5, 600 + s).unwrap());
    }
    let dens = specdist::experiments::densities(&graphs, params()).unwrap();
    let labels = (0..5).map(|i| format!("er{i}")).chain((0..5).map(|i| format!("ba{i}"))).collect();
    let m = DistanceMatrix::from_densities(labels, &dens).unwrap();
    let er: Vec<usize> = (0..5).collect();
    let ba: Vec<usize> = (5..10).collect();
    let (w_er, w_ba, x) = (m.block_mean(&er, &er), m.block_mean(&ba, &ba), m.block_mean(&er, &ba));
    let c = w_er < x && w_ba < x;
    let dc = format!(
        "(c) {}: within ER {w_er:.4}, within BA {w_ba:.4}, cross {x:.4}",
        if c { "pass" } else { "FAIL" }
    );
    let elapsed = start.elapsed();
    outcome(
        a && b && c && elapsed < Duration::from_secs(900),
        format!("{da}; {db}; {dc}; {:.1}s", elapsed.as_secs_f64()),
    )
}

fn criterion_11() -> Outcome {
    let got = [(4, 6), (6, 5), (8, 4)].map(|(k, d)| regular_tree_size(k, d));
    let built = generate_family(FamilySpec::KRegularTree { k: 4, depth: 6 }).unwrap().n();
    outcome(
        got == [1457, 4687, 3201] && built == 1457,
        format!("sizes {got:?}, generated (4, 6) tree has {built} vertices"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("1 closed-form spectra", criterion_1),
        ("2 normalization and grid stability", criterion_2),
        ("3 pseudometric", criterion_3),
        ("4 interlacing", criterion_4),
        ("5 star proportionality", criterion_5),
        ("6 convergence rates", criterion_6),
        ("7 hypercube bound", criterion_7),
        ("8 arcsine convergence and classification", criterion_8),
        ("9 duplicated cycle", criterion_9),
        ("10 growth, trees and block structure", criterion_10),
        ("11 regular tree sizes", criterion_11),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
