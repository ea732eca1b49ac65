//! Orthonormal real eigenvector bases of the (centered) DFT.
//!
//! Eigenvectors come from a real symmetric matrix that commutes with the DFT. Because that
//! matrix also commutes with the reversal operator, it is folded onto the even- and
//! odd-symmetric subspaces first; each folded block is an unreduced tridiagonal matrix, so
//! its eigenvectors are unique and inherit exact mirror symmetry when embedded back.
//! Within each symmetry class the eigenvectors are ordered by descending commuting-matrix
//! eigenvalue, which orders them by Hermite index.

mod cache;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::foundation::{DftOperator, QuarterRoots, RealMatrix, TransformVariant};
use crate::symeig::symmetric_eigen;

pub use cache::{read_cache, write_cache, CACHE_MAGIC};

/// Smallest size with the four-eigenvalue structure.
pub const MIN_BASIS_SIZE: usize = 4;

pub const ORTHONORMALITY_TOL: f64 = 1e-10;
pub const EIGEN_TOL: f64 = 1e-8;
pub const SYMMETRY_TOL: f64 = 1e-8;
pub const COMMUTATION_TOL: f64 = 1e-8;
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Scales a tolerance stated for `n <= 64` to larger sizes.
pub fn scaled_tolerance(base: f64, n: usize) -> f64 {
    base * (n as f64 / 64.0).max(1.0)
}

/// Eigenvalue exponents: column `k` of the basis has DFT eigenvalue `(-j)^l[k]`.
pub fn index_vector(n: usize, variant: TransformVariant) -> Vec<usize> {
    assert!(n >= 1, "n must be positive");
    let mut l: Vec<usize> = (0..n).collect();
    if variant == TransformVariant::Standard && n.is_multiple_of(2) {
        l[n - 1] = n;
    }
    l
}

/// Counts for the eigenvalues `(1, -j, -1, j)`, in that order.
pub type Multiplicities = [usize; 4];

/// Eigenvalue multiplicities of the DFT (standard) or CDFT (centered) for `n = 4m + r`.
pub fn expected_multiplicities(n: usize, variant: TransformVariant) -> Multiplicities {
    assert!(n >= 1, "n must be positive");
    let m = n / 4;
    match (variant, n % 4) {
        // n = 0 mod 4 with m >= 1 keeps m - 1 non-negative
        (TransformVariant::Standard, 0) => [m + 1, m, m, m - 1],
        (TransformVariant::Standard, 1) => [m + 1, m, m, m],
        (TransformVariant::Standard, 2) => [m + 1, m, m + 1, m],
        (TransformVariant::Standard, _) => [m + 1, m + 1, m + 1, m],
        (TransformVariant::Centered, 0) => [m, m, m, m],
        (TransformVariant::Centered, 1) => [m + 1, m, m, m],
        (TransformVariant::Centered, 2) => [m + 1, m + 1, m, m],
        (TransformVariant::Centered, _) => [m + 1, m + 1, m + 1, m],
    }
}

/// Tallies `l mod 4` into eigenvalue classes.
pub fn multiplicities_of(l: &[usize]) -> Multiplicities {
    let mut counts = [0; 4];
    for &li in l {
        counts[li % 4] += 1;
    }
    counts
}

/// Real symmetric matrix commuting with the DFT of the given variant.
///
/// Tridiagonal with unit off-diagonals plus unit wraparound corners; the diagonal samples
/// `2cos(2 pi k / N) - 4` (standard) or `2cos(2 pi (k - (N-1)/2) / N) - 4` (centered). The
/// centered corners carry sign -1 for even N.
pub fn commuting_matrix(n: usize, variant: TransformVariant) -> Result<RealMatrix> {
    if n < MIN_BASIS_SIZE {
        return Err(Error::SizeTooSmall { n, min: MIN_BASIS_SIZE });
    }
    let s = commuting_matrix_unchecked(n, variant);
    let residual = commutation_residual(&s, variant);
    if residual > COMMUTATION_TOL {
        return Err(Error::CommutationFailure { residual, tolerance: COMMUTATION_TOL });
    }
    Ok(s)
}

fn commuting_matrix_unchecked(n: usize, variant: TransformVariant) -> RealMatrix {
    use std::f64::consts::PI;
    let mut s = RealMatrix::zeros(n, n);
    let shift = match variant {
        TransformVariant::Standard => 0.0,
        TransformVariant::Centered => (n as f64 - 1.0) / 2.0,
    };
    for k in 0..n {
        s[(k, k)] = 2.0 * (2.0 * PI * (k as f64 - shift) / n as f64).cos() - 4.0;
    }
    for k in 0..n - 1 {
        s[(k, k + 1)] = 1.0;
        s[(k + 1, k)] = 1.0;
    }
    let corner = if variant == TransformVariant::Centered && n.is_multiple_of(2) { -1.0 } else { 1.0 };
    s[(0, n - 1)] = corner;
    s[(n - 1, 0)] = corner;
    s
}

/// `max |SW - WS|`, exploiting the sparsity of `S`.
pub fn commutation_residual(s: &RealMatrix, variant: TransformVariant) -> f64 {
    let n = s.rows();
    let roots = QuarterRoots::new(n);
    let scale = 1.0 / (n as f64).sqrt();
    let w = |r: usize, c: usize| roots.get(QuarterRoots::exponent(variant, n, r, c)) * scale;
    let nonzeros: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|r| (0..n).filter(|&c| s[(r, c)] != 0.0).map(|c| (c, s[(r, c)])).collect())
        .collect();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let sw: num_complex::Complex64 = nonzeros[i].iter().map(|&(k, v)| w(k, j) * v).sum();
            // S is symmetric, so column j of S has the same pattern as row j
            let ws: num_complex::Complex64 = nonzeros[j].iter().map(|&(k, v)| w(i, k) * v).sum();
            worst = worst.max((sw - ws).norm());
        }
    }
    worst
}

/// A real orthonormal DFT eigenbasis together with its eigenvalue exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenBasis {
    variant: TransformVariant,
    vectors: RealMatrix,
    l: Vec<usize>,
}

impl EigenBasis {
    /// Assembles a basis from raw parts, checking shapes and the index vector.
    ///
    /// No residual checks are run; use [`validate_eigenbasis`] for those.
    pub fn from_parts(variant: TransformVariant, vectors: RealMatrix, l: Vec<usize>) -> Result<Self> {
        let n = vectors.rows();
        if n < MIN_BASIS_SIZE {
            return Err(Error::SizeTooSmall { n, min: MIN_BASIS_SIZE });
        }
        if vectors.cols() != n {
            return Err(Error::ShapeMismatch { expected_rows: n, expected_cols: n, rows: n, cols: vectors.cols() });
        }
        if l != index_vector(n, variant) {
            return Err(Error::InvalidIndexVector { n });
        }
        Ok(EigenBasis { variant, vectors, l })
    }

    pub fn variant(&self) -> TransformVariant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.l.len()
    }

    /// Eigenvectors as columns.
    pub fn vectors(&self) -> &RealMatrix {
        &self.vectors
    }

    pub fn index_vector(&self) -> &[usize] {
        &self.l
    }

    /// Mirror symmetry of column `k`: +1 for even, -1 for odd.
    pub fn parity(&self, k: usize) -> f64 {
        if self.l[k].is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// Copy of the basis with the selected columns negated.
    pub fn with_flipped_columns(&self, flip: &[bool]) -> EigenBasis {
        assert_eq!(flip.len(), self.n());
        let mut vectors = self.vectors.clone();
        for (k, &f) in flip.iter().enumerate() {
            if f {
                let col: Vec<f64> = vectors.column(k).iter().map(|v| -v).collect();
                vectors.set_column(k, &col);
            }
        }
        EigenBasis { variant: self.variant, vectors, l: self.l.clone() }
    }
}

/// Mirror orbits `{i, mirror(i)}` with `i <= mirror(i)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Orbit {
    pub rep: usize,
    pub partner: usize,
}

impl Orbit {
    pub fn is_fixed(&self) -> bool {
        self.rep == self.partner
    }
}

pub(crate) fn mirror_orbits(n: usize, variant: TransformVariant) -> Vec<Orbit> {
    (0..n)
        .filter_map(|i| {
            let partner = variant.mirror(n, i);
            (i <= partner).then_some(Orbit { rep: i, partner })
        })
        .collect()
}

/// Orthonormal embedding of one symmetry class, one column per orbit.
struct ClassEmbedding {
    parity: f64,
    orbits: Vec<Orbit>,
    // orbit slot and coefficient of every index, None if the index drops out of the class
    slot: Vec<Option<(usize, f64)>>,
}

impl ClassEmbedding {
    fn new(n: usize, variant: TransformVariant, parity: f64) -> Self {
        let orbits: Vec<Orbit> =
            mirror_orbits(n, variant).into_iter().filter(|o| parity > 0.0 || !o.is_fixed()).collect();
        let mut slot = vec![None; n];
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for (j, o) in orbits.iter().enumerate() {
            if o.is_fixed() {
                slot[o.rep] = Some((j, 1.0));
            } else {
                slot[o.rep] = Some((j, h));
                slot[o.partner] = Some((j, parity * h));
            }
        }
        ClassEmbedding { parity, orbits, slot }
    }

    fn fold(&self, s: &RealMatrix) -> RealMatrix {
        let m = self.orbits.len();
        let mut out = RealMatrix::zeros(m, m);
        let n = s.rows();
        for a in 0..n {
            let Some((oa, ca)) = self.slot[a] else { continue };
            for b in 0..n {
                let v = s[(a, b)];
                if v == 0.0 {
                    continue;
                }
                if let Some((ob, cb)) = self.slot[b] {
                    out[(oa, ob)] += ca * v * cb;
                }
            }
        }
        out
    }

    fn embed(&self, n: usize, u: &[f64]) -> Vec<f64> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = vec![0.0; n];
        for (o, &coef) in self.orbits.iter().zip(u) {
            if o.is_fixed() {
                v[o.rep] = coef;
            } else {
                v[o.rep] = coef * h;
                v[o.partner] = self.parity * coef * h;
            }
        }
        v
    }
}

fn zero_crossings(v: &[f64]) -> usize {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut last = 0.0f64;
    let mut count = 0;
    for &x in v {
        if x.abs() <= 1e-12 * scale {
            continue;
        }
        if last != 0.0 && last.signum() != x.signum() {
            count += 1;
        }
        last = x;
    }
    count
}

/// Eigenvectors of one symmetry class, ordered by descending commuting-matrix eigenvalue.
fn class_eigenvectors(s: &RealMatrix, n: usize, variant: TransformVariant, parity: f64) -> Result<Vec<Vec<f64>>> {
    let emb = ClassEmbedding::new(n, variant, parity);
    if emb.orbits.is_empty() {
        return Ok(Vec::new());
    }
    let eig = symmetric_eigen(&emb.fold(s))?.sort_descending();
    let mut vecs: Vec<(f64, Vec<f64>)> = (0..eig.values.len())
        .map(|j| (eig.values[j], emb.embed(n, &eig.vectors.column(j))))
        .collect();

    // Near-ties: order by zero-crossing count within the tied run.
    let mut start = 0;
    while start < vecs.len() {
        let mut end = start + 1;
        while end < vecs.len() && (vecs[end - 1].0 - vecs[end].0).abs() <= 1e-10 * (1.0 + vecs[end].0.abs()) {
            end += 1;
        }
        if end - start > 1 {
            vecs[start..end].sort_by_key(|(_, v)| zero_crossings(v));
        }
        start = end;
    }
    Ok(vecs.into_iter().map(|(_, v)| v).collect())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) {
    let norm = dot(v, v).sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
}

/// Builds the eigenbasis for `n >= 4`.
pub fn build_eigenbasis(n: usize, variant: TransformVariant) -> Result<EigenBasis> {
    if n < MIN_BASIS_SIZE {
        return Err(Error::SizeTooSmall { n, min: MIN_BASIS_SIZE });
    }
    let s = commuting_matrix(n, variant)?;
    let l = index_vector(n, variant);

    let mut even = class_eigenvectors(&s, n, variant, 1.0)?.into_iter();
    let mut odd = class_eigenvectors(&s, n, variant, -1.0)?.into_iter();
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(n);
    for &li in &l {
        let next = if li % 2 == 0 { even.next() } else { odd.next() };
        columns.push(next.expect("symmetry class sizes match the index vector"));
    }
    debug_assert!(even.next().is_none() && odd.next().is_none());

    // Re-orthonormalize within each eigenvalue class; elementwise updates keep symmetry exact.
    for k in 0..n {
        let (done, rest) = columns.split_at_mut(k);
        let v = &mut rest[0];
        for (j, u) in done.iter().enumerate() {
            if l[j] % 4 == l[k] % 4 {
                let c = dot(u, v);
                for (x, y) in v.iter_mut().zip(u) {
                    *x -= c * y;
                }
            }
        }
        normalize(v);
    }

    // Largest-magnitude entry positive; first index wins ties.
    for v in columns.iter_mut() {
        let mut best = 0;
        for (i, x) in v.iter().enumerate() {
            if x.abs() > v[best].abs() {
                best = i;
            }
        }
        if v[best] < 0.0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }

    let mut vectors = RealMatrix::zeros(n, n);
    for (k, col) in columns.iter().enumerate() {
        vectors.set_column(k, col);
    }
    let basis = EigenBasis { variant, vectors, l };

    let ortho = orthonormality_residual(&basis);
    if ortho > scaled_tolerance(DEGENERACY_TOL, n) {
        return Err(Error::DegenerateBasis { residual: ortho });
    }
    let per_column = eigen_residuals(&basis);
    let tol = scaled_tolerance(EIGEN_TOL, n);
    if let Some((column, &residual)) = per_column.iter().enumerate().find(|(_, &r)| r > tol) {
        return Err(Error::EigenMismatch { column, residual });
    }
    Ok(basis)
}

/// `(-j)^l` as a complex number.
pub fn eigenvalue(l: usize) -> num_complex::Complex64 {
    use num_complex::Complex64;
    match l % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// `max |V^T V - I|`.
pub fn orthonormality_residual(basis: &EigenBasis) -> f64 {
    let v = basis.vectors();
    v.transpose().matmul(v).max_abs_diff(&RealMatrix::identity(basis.n()))
}

/// Per-column `max |W v_k - (-j)^l[k] v_k|`.
pub fn eigen_residuals(basis: &EigenBasis) -> Vec<f64> {
    use num_complex::Complex64;
    let n = basis.n();
    let op = DftOperator::new(n, basis.variant());
    (0..n)
        .map(|k| {
            let col: Vec<Complex64> = basis.vectors().column(k).iter().map(|&x| Complex64::new(x, 0.0)).collect();
            let lam = eigenvalue(basis.l[k]);
            op.apply(&col).iter().zip(&col).map(|(w, v)| (w - lam * v).norm()).fold(0.0, f64::max)
        })
        .collect()
}

/// `max |P v_k - (-1)^l[k] v_k|` over all columns.
pub fn symmetry_residual(basis: &EigenBasis) -> f64 {
    let n = basis.n();
    let mut worst = 0.0f64;
    for k in 0..n {
        let sign = basis.parity(k);
        for i in 0..n {
            let mirrored = basis.vectors()[(basis.variant().mirror(n, i), k)];
            worst = worst.max((mirrored - sign * basis.vectors()[(i, k)]).abs());
        }
    }
    worst
}

/// Multiplicities from the measured DFT eigenvalue of every column, independent of `l`.
pub fn measured_multiplicities(basis: &EigenBasis) -> Multiplicities {
    use num_complex::Complex64;
    let n = basis.n();
    let op = DftOperator::new(n, basis.variant());
    let mut counts = [0; 4];
    for k in 0..n {
        let col: Vec<Complex64> = basis.vectors().column(k).iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let rayleigh: Complex64 = op.apply(&col).iter().zip(&col).map(|(w, v)| w * v.conj()).sum();
        let class = (0..4)
            .min_by(|&a, &b| (rayleigh - eigenvalue(a)).norm().total_cmp(&(rayleigh - eigenvalue(b)).norm()))
            .unwrap();
        counts[class] += 1;
    }
    counts
}

/// Residuals and multiplicity bookkeeping for a basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub n: usize,
    pub variant: String,
    pub orthonormality_residual: f64,
    pub eigen_residual: f64,
    pub symmetry_residual: f64,
    pub multiplicities: Multiplicities,
    pub expected: Multiplicities,
    pub orthonormality_pass: bool,
    pub eigen_pass: bool,
    pub symmetry_pass: bool,
    pub multiplicities_pass: bool,
    pub pass: bool,
}

pub fn validate_eigenbasis(basis: &EigenBasis) -> ValidationReport {
    let n = basis.n();
    let orthonormality_residual = orthonormality_residual(basis);
    let eigen_residual = eigen_residuals(basis).into_iter().fold(0.0, f64::max);
    let symmetry_residual = symmetry_residual(basis);
    let multiplicities = multiplicities_of(basis.index_vector());
    let expected = expected_multiplicities(n, basis.variant());

    let orthonormality_pass = orthonormality_residual < scaled_tolerance(ORTHONORMALITY_TOL, n);
    let eigen_pass = eigen_residual < scaled_tolerance(EIGEN_TOL, n);
    let symmetry_pass = symmetry_residual < scaled_tolerance(SYMMETRY_TOL, n);
    let multiplicities_pass = multiplicities == expected;
    ValidationReport {
        n,
        variant: basis.variant().to_string(),
        orthonormality_residual,
        eigen_residual,
        symmetry_residual,
        multiplicities,
        expected,
        orthonormality_pass,
        eigen_pass,
        symmetry_pass,
        multiplicities_pass,
        pass: orthonormality_pass && eigen_pass && symmetry_pass && multiplicities_pass,
    }
}
