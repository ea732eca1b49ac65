//! Acceptance gate. One test per criterion; each prints a single `PASS`/`FAIL` line.
//!
//! Oracles are written out here from first principles (direct DFT sums, explicit reversals,
//! dense matrix products) so they do not share code paths with the library.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use mafrft::eigenbasis::{expected_multiplicities, measured_multiplicities};
use mafrft::multiangle::{
    argmax_set, change_of_basis_counted, change_of_basis_fast_counted, derivation, ma_frft_full_counted,
    ma_frft_half_counted,
};
use mafrft::signal::SignalSpec;
use mafrft::{
    build_eigenbasis, change_of_basis, change_of_basis_fast, concentration_profile, frft_apply, frft_matrix,
    ma_frft_full, ma_frft_half, ma_frft_naive, ComplexMatrix, ComplexSignal, EigenBasis, FracOrder, OpCounter,
    TransformVariant,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const VARIANTS: [TransformVariant; 2] = [TransformVariant::Standard, TransformVariant::Centered];

fn report(id: u32, name: &str, detail: &str, ok: bool) {
    println!("criterion {id} [{}] {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id} failed: {detail}");
}

fn random_signal(n: usize, rng: &mut ChaCha8Rng) -> ComplexSignal {
    ComplexSignal::new((0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
        .unwrap()
}

fn random_real_signal(n: usize, rng: &mut ChaCha8Rng) -> ComplexSignal {
    ComplexSignal::from_real(&(0..n).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<_>>()).unwrap()
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Unitary (C)DFT written directly from its definition.
fn oracle_dft(n: usize, variant: TransformVariant) -> ComplexMatrix {
    let c = match variant {
        TransformVariant::Standard => 0.0,
        TransformVariant::Centered => (n as f64 - 1.0) / 2.0,
    };
    let scale = 1.0 / (n as f64).sqrt();
    ComplexMatrix::from_fn(n, n, |r, k| {
        let phase = -2.0 * PI * (r as f64 - c) * (k as f64 - c) / n as f64;
        Complex64::from_polar(scale, phase)
    })
}

fn oracle_reversal(n: usize, variant: TransformVariant) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |r, k| {
        let partner = match variant {
            TransformVariant::Standard => (n - r) % n,
            TransformVariant::Centered => n - 1 - r,
        };
        Complex64::new(if k == partner { 1.0 } else { 0.0 }, 0.0)
    })
}

fn column_mirror(n: usize, variant: TransformVariant, col: &[Complex64]) -> Vec<Complex64> {
    let p = oracle_reversal(n, variant);
    p.mul_vec(col)
}

fn order(a: f64) -> FracOrder {
    FracOrder::new(a).unwrap()
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let sizes: Vec<usize> = (4..=16).chain([32]).collect();
    let mut worst = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for &n in &sizes {
        for variant in VARIANTS {
            let basis = build_eigenbasis(n, variant).unwrap();
            for _ in 0..5 {
                let x = random_signal(n, &mut rng);
                let naive = ma_frft_naive(&basis, &x).unwrap();
                let full = ma_frft_full(&basis, &x).unwrap();
                worst = worst.max(naive.x.max_abs_diff(&full.x));
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        1,
        "full path equals per-order oracle",
        &format!("max |full - naive| = {worst:.3e} (< 1e-8), {:.2?} (< 30 s)", elapsed),
        worst < 1e-8 && elapsed < Duration::from_secs(30),
    );
}

#[test]
fn criterion_2_halving_correctness() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst_even = 0.0f64;
    for n in (4..=32).step_by(2) {
        for variant in VARIANTS {
            let basis = build_eigenbasis(n, variant).unwrap();
            for _ in 0..3 {
                let x = random_signal(n, &mut rng);
                let full = ma_frft_full(&basis, &x).unwrap();
                let half = ma_frft_half(&basis, &x, false).unwrap();
                worst_even = worst_even.max(full.x.max_abs_diff(&half.x));
            }
        }
    }
    let mut worst_odd = 0.0f64;
    let mut grid_ok = true;
    for n in (5..=15).step_by(2) {
        for variant in VARIANTS {
            let basis = build_eigenbasis(n, variant).unwrap();
            let x = random_signal(n, &mut rng);
            let half = ma_frft_half(&basis, &x, true).unwrap();
            grid_ok &= half.x.cols() == n + 1 && half.x.rows() == n;
            for r in 0..=n {
                let a = 4.0 * r as f64 / (n + 1) as f64;
                grid_ok &= (half.orders[r] - a).abs() < 1e-15;
                let oracle = frft_apply(&basis, order(a), &x).unwrap();
                worst_odd = worst_odd.max(max_diff(&half.x.column(r), oracle.as_slice()));
            }
        }
    }
    report(
        2,
        "half path",
        &format!("even max |half - full| = {worst_even:.3e} (< 1e-12); odd padded max = {worst_odd:.3e} (< 1e-8)"),
        worst_even < 1e-12 && worst_odd < 1e-8 && grid_ok,
    );
}

#[test]
fn criterion_3_fft_counts() {
    let mut lines = Vec::new();
    let mut ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut check = |n: usize, variant: TransformVariant, pad: bool, half_expected: usize, full_expected: usize| {
        let basis = build_eigenbasis(n, variant).unwrap();
        let x = random_signal(n, &mut rng);
        let half = OpCounter::new();
        ma_frft_half_counted(&basis, &x, pad, &half).unwrap();
        let full = OpCounter::new();
        ma_frft_full_counted(&basis, &x, &full).unwrap();
        ok &= half.get() == half_expected && full.get() == full_expected;
        lines.push(format!("{variant} N={n}: half {} full {}", half.get(), full.get()));
    };
    for n in [8, 16, 64] {
        check(n, TransformVariant::Centered, false, n / 2, n);
        check(n, TransformVariant::Standard, false, n / 2 + 1, n);
        // odd neighbours, padded to N+1 orders
        check(n + 1, TransformVariant::Centered, true, (n + 2) / 2, n + 1);
    }
    report(3, "FFT-count reduction", &lines.join("; "), ok);
}

#[test]
fn criterion_4_table_1() {
    let mut mismatches = Vec::new();
    for n in 4..=64 {
        for variant in VARIANTS {
            let basis = build_eigenbasis(n, variant).unwrap();
            let measured = measured_multiplicities(&basis);
            // Table 1, written out here
            let m = n / 4;
            let table = match (variant, n % 4) {
                (TransformVariant::Standard, 0) => [m + 1, m, m, m - 1],
                (TransformVariant::Standard, 1) => [m + 1, m, m, m],
                (TransformVariant::Standard, 2) => [m + 1, m, m + 1, m],
                (TransformVariant::Standard, _) => [m + 1, m + 1, m + 1, m],
                (TransformVariant::Centered, 0) => [m, m, m, m],
                (TransformVariant::Centered, 1) => [m + 1, m, m, m],
                (TransformVariant::Centered, 2) => [m + 1, m + 1, m, m],
                (TransformVariant::Centered, _) => [m + 1, m + 1, m + 1, m],
            };
            if measured != table || expected_multiplicities(n, variant) != table {
                mismatches.push(format!("{variant} N={n}: {measured:?} vs {table:?}"));
            }
        }
    }
    report(
        4,
        "eigenvalue multiplicities",
        &if mismatches.is_empty() { "122 bases match".to_string() } else { mismatches.join("; ") },
        mismatches.is_empty(),
    );
}

#[test]
fn criterion_5_integer_orders() {
    let mut worst = 0.0f64;
    for n in [8, 9, 12, 13] {
        for variant in VARIANTS {
            let basis = build_eigenbasis(n, variant).unwrap();
            let w = oracle_dft(n, variant);
            let anchors = [
                ComplexMatrix::identity(n),
                w.clone(),
                oracle_reversal(n, variant),
                w.conj_transpose(),
            ];
            for (a, expected) in anchors.iter().enumerate() {
                worst = worst.max(frft_matrix(&basis, order(a as f64)).max_abs_diff(expected));
            }
        }
    }
    report(5, "integer orders give I, W, P, W^H", &format!("max error {worst:.3e} (< 1e-8)"), worst < 1e-8);
}

#[test]
fn criterion_6_chirp_concentration() {
    let n = 8;
    let basis = build_eigenbasis(n, TransformVariant::Standard).unwrap();
    let x = SignalSpec::chirp(n, 1.0).generate().unwrap();
    let result = ma_frft_half(&basis, &x, false).unwrap();
    let profile = concentration_profile(&result).unwrap();
    let peaks = argmax_set(&profile, 1e-9);
    let rounded: Vec<String> = profile.iter().map(|p| format!("{p:.3}")).collect();
    report(
        6,
        "unit-rate chirp concentrates at orders 0.5 and 2.5",
        &format!("argmax {peaks:?}, profile [{}]", rounded.join(", ")),
        peaks == vec![1, 5],
    );
}

#[test]
fn criterion_7_gamma() {
    let mut worst = 0.0f64;
    for n in [4, 6, 8] {
        // Gamma solves B = sqrt(N) W Gamma; invert the unitary W directly.
        let b = derivation::b_matrix(n);
        let w = oracle_dft(n, TransformVariant::Standard);
        let wb = w.conj_transpose().matmul(&b);
        let dense = ComplexMatrix::from_fn(n, n, |r, c| wb[(r, c)] / (n as f64).sqrt());
        let mut closed = ComplexMatrix::identity(n);
        closed[(n - 1, n - 1)] = Complex64::new(0.0, 0.0);
        closed[(0, n - 1)] = Complex64::new(1.0, 0.0);
        let via_ifft = derivation::gamma_from_columns(n);
        worst = worst
            .max(via_ifft.max_abs_diff(&closed))
            .max(dense.max_abs_diff(&closed))
            .max(derivation::gamma_closed_form(n).max_abs_diff(&closed));
    }
    report(7, "reconstructed Gamma matches closed form", &format!("max error {worst:.3e} (< 1e-10)"), worst < 1e-10);
}

fn flipped(basis: &EigenBasis, rng: &mut ChaCha8Rng) -> EigenBasis {
    let flips: Vec<bool> = (0..basis.n()).map(|_| rng.gen_bool(0.5)).collect();
    basis.with_flipped_columns(&flips)
}

#[test]
fn criterion_8_property_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut unitarity = 0.0f64;
    let mut inverse = 0.0f64;
    let mut additivity = 0.0f64;
    let mut period = 0.0f64;
    let mut conj_sym = 0.0f64;
    let mut z_real = 0.0f64;
    let mut sign_matrix = 0.0f64;
    let mut sign_x = 0.0f64;
    let mut mirror = 0.0f64;
    let mut column_norm = 0.0f64;

    for n in [4, 7, 8, 11, 16, 21, 32] {
        for variant in VARIANTS {
            let basis = build_eigenbasis(n, variant).unwrap();
            let x = random_signal(n, &mut rng);
            let xr = random_real_signal(n, &mut rng);

            for a in [0.3, 1.7, 3.9] {
                let y = frft_apply(&basis, order(a), &x).unwrap();
                unitarity = unitarity.max((y.norm() - x.norm()).abs());
                let fwd = frft_matrix(&basis, order(a));
                let back = frft_matrix(&basis, order(-a));
                inverse = inverse.max(back.max_abs_diff(&fwd.conj_transpose()));
                for h in [-2.0, 1.0, 3.0] {
                    period = period.max(fwd.max_abs_diff(&frft_matrix(&basis, order(a + 4.0 * h))));
                }
                let other = flipped(&basis, &mut rng);
                sign_matrix = sign_matrix.max(fwd.max_abs_diff(&frft_matrix(&other, order(a))));
            }

            for _ in 0..20 {
                let a = rng.gen_range(-4.0..4.0);
                let b = rng.gen_range(-4.0..4.0);
                let v = random_signal(n, &mut rng);
                let two_step = frft_apply(&basis, order(a), &frft_apply(&basis, order(b), &v).unwrap()).unwrap();
                let one_step = frft_apply(&basis, order(a + b), &v).unwrap();
                additivity = additivity.max(two_step.max_abs_diff(&one_step));
            }

            let pad = n % 2 == 1;
            let result = ma_frft_half(&basis, &x, pad).unwrap();
            let r_count = result.x.cols();
            for r in 0..r_count {
                let col = result.x.column(r);
                let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                column_norm = column_norm.max((norm - x.norm()).abs());
            }
            if r_count.is_multiple_of(2) {
                for r in 0..r_count {
                    let shifted = result.x.column((r + r_count / 2) % r_count);
                    mirror = mirror.max(max_diff(&shifted, &column_mirror(n, variant, &result.x.column(r))));
                }
            }

            let real = ma_frft_full(&basis, &xr).unwrap();
            for r in 0..n {
                for k in 0..n {
                    let opposite = real.x[(k, (n - r) % n)];
                    conj_sym = conj_sym.max((opposite - real.x[(k, r)].conj()).norm());
                }
            }
            let z = mafrft::z_matrix(&basis, &xr).unwrap();
            z_real = z_real.max(z.z.as_slice().iter().map(|v| v.im.abs()).fold(0.0, f64::max));

            let other = flipped(&basis, &mut rng);
            let again = ma_frft_half(&other, &x, pad).unwrap();
            sign_x = sign_x.max(result.x.max_abs_diff(&again.x));
        }
    }
    let elapsed = start.elapsed();
    let checks = [
        ("unitarity", unitarity, 1e-9),
        ("inverse", inverse, 1e-9),
        ("additivity", additivity, 1e-8),
        ("period-4", period, 1e-9),
        ("column norms", column_norm, 1e-8),
        ("real conj symmetry", conj_sym, 1e-10),
        ("real Z", z_real, 1e-10),
        ("sign flips (matrix)", sign_matrix, 1e-10),
        ("sign flips (X)", sign_x, 1e-10),
        ("a+2 reversal", mirror, 1e-8),
    ];
    let ok = checks.iter().all(|&(_, v, tol)| v < tol) && elapsed < Duration::from_secs(60);
    let detail: Vec<String> = checks.iter().map(|(name, v, tol)| format!("{name} {v:.1e}<{tol:.0e}")).collect();
    report(8, "property suite", &format!("{}; {:.2?} (< 60 s)", detail.join(", "), elapsed), ok);
}

#[test]
fn criterion_9_fast_change_of_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for n in (4..=33).chain([64]) {
        for variant in VARIANTS {
            let basis = build_eigenbasis(n, variant).unwrap();
            let x = random_signal(n, &mut rng);
            // dense V^T x written out here
            let v = basis.vectors();
            let oracle: Vec<Complex64> =
                (0..n).map(|k| (0..n).map(|i| x[i] * v[(i, k)]).sum::<Complex64>()).collect();
            let fast = change_of_basis_fast(&basis, &x).unwrap();
            let direct = change_of_basis(&basis, &x).unwrap();
            worst = worst.max(max_diff(fast.as_slice(), &oracle)).max(max_diff(direct.as_slice(), &oracle));
        }
    }
    let mut ratios = Vec::new();
    let mut ok = worst < 1e-10;
    for variant in VARIANTS {
        let basis = build_eigenbasis(64, variant).unwrap();
        let x = random_signal(64, &mut rng);
        let (direct, fast) = (OpCounter::new(), OpCounter::new());
        change_of_basis_counted(&basis, &x, &direct).unwrap();
        change_of_basis_fast_counted(&basis, &x, &fast).unwrap();
        let ratio = fast.get() as f64 / direct.get() as f64;
        ok &= direct.get() == 64 * 64 && ratio <= 0.55;
        ratios.push(format!("{variant} {}/{} = {:.2}%", fast.get(), direct.get(), 100.0 * ratio));
    }
    report(
        9,
        "fast change of basis",
        &format!("max error {worst:.3e} (< 1e-10); N=64 multiplies {}", ratios.join(", ")),
        ok,
    );
}
