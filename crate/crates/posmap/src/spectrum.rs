//! Spectral parametrization of circulant maps.
//!
//! A circulant coefficient matrix with first row `(alpha_0, ..., alpha_{n-1})`
//! has eigenvalue list `lambda_k = sum_l w^{-kl} alpha_l`, `w = e^{2 pi i/n}`
//! (the forward transform of the parameter vector; conventions below). The
//! construction class is exactly the set of real `alpha` with
//! `lambda_0 = n - 1` and all the remaining `|lambda_k| = 1`: a torus of
//! `floor((n-1)/2)` phases, plus a sign bit when `n` is even.
//!
//! Conventions, fixed so golden values stay stable:
//! - forward transform `lambda_k = sum_l w^{-kl} alpha_l`, inverse
//!   `alpha_l = (1/n) sum_k w^{+kl} lambda_k`, computed as naive O(n^2)
//!   sums (dimensions are tiny);
//! - phases reported in `[0, 2 pi)` via `atan2`;
//! - the inverse transform of a conjugate-symmetric spectrum must have
//!   imaginary residue below [`tol::IDFT_IMAG_TOL`], which is asserted and
//!   dropped rather than silently kept.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::DiagonalTypeMap;
use crate::tol;

const TAU: f64 = std::f64::consts::TAU;

/// Parameter vector of a circulant coefficient matrix (its first row).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CirculantParams {
    n: usize,
    alphas: Vec<f64>,
}

impl CirculantParams {
    pub fn new(alphas: Vec<f64>) -> Result<Self> {
        let n = alphas.len();
        if !(2..=tol::MAX_DIM).contains(&n) {
            return Err(Error::InvalidDimension { n, min: 2 });
        }
        if !alphas.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite {
                context: "circulant parameters",
            });
        }
        Ok(Self { n, alphas })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn sum(&self) -> f64 {
        self.alphas.iter().sum()
    }

    /// The circulant map with these parameters as first row.
    pub fn to_map(&self) -> DiagonalTypeMap {
        DiagonalTypeMap::circulant(&self.alphas).expect("validated dimensions")
    }

    /// Extracts parameters when the coefficient matrix is circulant
    /// (to within [`tol::CIRCULANT_STRUCTURE_TOL`] entrywise).
    pub fn from_map(map: &DiagonalTypeMap) -> Option<Self> {
        let n = map.n();
        let alphas: Vec<f64> = (0..n).map(|j| map.coeff(0, j)).collect();
        for i in 1..n {
            for j in 0..n {
                if (map.coeff(i, j) - alphas[(j + n - i) % n]).abs() > tol::CIRCULANT_STRUCTURE_TOL
                {
                    return None;
                }
            }
        }
        Some(Self { n, alphas })
    }
}

/// Torus coordinates of a construction-class circulant map: `m` phases with
/// `m = floor((n-1)/2)`, plus a sign bit for the self-conjugate eigenvalue
/// when `n` is even.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePoint {
    n: usize,
    phases: Vec<f64>,
    even_sign: Option<i8>,
}

impl PhasePoint {
    /// Phases are canonicalized into `[0, 2 pi)`. `even_sign` must be
    /// present (with value +1 or -1) exactly when `n` is even.
    pub fn new(n: usize, phases: Vec<f64>, even_sign: Option<i8>) -> Result<Self> {
        if !(2..=tol::MAX_DIM).contains(&n) {
            return Err(Error::InvalidDimension { n, min: 2 });
        }
        let m = (n - 1) / 2;
        if phases.len() != m {
            return Err(Error::PhaseCount {
                n,
                expected: m,
                actual: phases.len(),
            });
        }
        if !phases.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite { context: "phases" });
        }
        match (n.is_multiple_of(2), even_sign) {
            (true, Some(s)) if s == 1 || s == -1 => {}
            (true, Some(_)) => {
                return Err(Error::EvenSign {
                    n,
                    detail: "must be +1 or -1",
                })
            }
            (true, None) => {
                return Err(Error::EvenSign {
                    n,
                    detail: "missing",
                })
            }
            (false, Some(_)) => {
                return Err(Error::EvenSign {
                    n,
                    detail: "not allowed",
                })
            }
            (false, None) => {}
        }
        let phases = phases.into_iter().map(|p| p.rem_euclid(TAU)).collect();
        Ok(Self {
            n,
            phases,
            even_sign,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn even_sign(&self) -> Option<i8> {
        self.even_sign
    }

    /// Full eigenvalue list `(n-1, e^{i f_1}, ..., [sign,] ..., e^{-i f_1})`.
    pub fn spectrum(&self) -> Vec<Complex64> {
        let n = self.n;
        let m = (n - 1) / 2;
        let mut lambda = vec![Complex64::ZERO; n];
        lambda[0] = Complex64::new((n - 1) as f64, 0.0);
        for (k, &phi) in self.phases.iter().enumerate() {
            let z = Complex64::from_polar(1.0, phi);
            lambda[k + 1] = z;
            lambda[n - k - 1] = z.conj();
        }
        if let Some(s) = self.even_sign {
            lambda[m + 1] = Complex64::new(s as f64, 0.0);
        }
        lambda
    }
}

/// Forward transform of the parameter vector:
/// `lambda_k = sum_l w^{-kl} alpha_l`. Real input gives the conjugate
/// symmetry `lambda_k = conj(lambda_{n-k})`.
pub fn dft_eigenvalues(params: &CirculantParams) -> Vec<Complex64> {
    let n = params.n();
    let w: Vec<Complex64> = (0..n)
        .map(|m| Complex64::from_polar(1.0, -TAU * m as f64 / n as f64))
        .collect();
    (0..n)
        .map(|k| (0..n).map(|l| w[(k * l) % n] * params.alphas()[l]).sum())
        .collect()
}

/// Inverse transform of the torus spectrum back to real parameters.
///
/// The output always sums to `n - 1`, passes the row-product criterion, and
/// has nonnegative entries (`alpha = beta + 1` with `|beta_k| <= 1`).
pub fn alphas_from_phases(pt: &PhasePoint) -> CirculantParams {
    let n = pt.n();
    let lambda = pt.spectrum();
    let w: Vec<Complex64> = (0..n)
        .map(|m| Complex64::from_polar(1.0, TAU * m as f64 / n as f64))
        .collect();
    let mut alphas = Vec::with_capacity(n);
    let mut max_imag = 0.0f64;
    for l in 0..n {
        let z: Complex64 = (0..n).map(|k| w[(k * l) % n] * lambda[k]).sum();
        let z = z / n as f64;
        max_imag = max_imag.max(z.im.abs());
        alphas.push(z.re);
    }
    assert!(
        max_imag < tol::IDFT_IMAG_TOL,
        "imaginary residue {max_imag:.3e} from a conjugate-symmetric spectrum"
    );
    CirculantParams { n, alphas }
}

fn torus_spectrum(params: &CirculantParams) -> Result<Vec<Complex64>> {
    let n = params.n();
    let lambda = dft_eigenvalues(params);
    for (k, z) in lambda.iter().enumerate().skip(1) {
        if (z.norm() - 1.0).abs() > tol::TORUS_MODULUS_TOL {
            return Err(Error::NotOnTorus {
                index: k,
                modulus: z.norm(),
                expected: 1.0,
            });
        }
    }
    // unimodular lambda_1.. pins |lambda_0| to n-1 up to sign; reject the
    // reflected branch and anything off the class sum
    let expected0 = (n - 1) as f64;
    if (lambda[0].norm() - expected0).abs() > tol::TORUS_MODULUS_TOL || lambda[0].re < 0.0 {
        return Err(Error::NotOnTorus {
            index: 0,
            modulus: lambda[0].norm(),
            expected: expected0,
        });
    }
    Ok(lambda)
}

/// Recovers torus coordinates from circulant parameters. Errors when some
/// eigenvalue modulus is off the torus beyond [`tol::TORUS_MODULUS_TOL`].
pub fn phases_from_alphas(params: &CirculantParams) -> Result<PhasePoint> {
    let n = params.n();
    let lambda = torus_spectrum(params)?;
    let m = (n - 1) / 2;
    let phases: Vec<f64> = (1..=m)
        .map(|k| {
            let phi = lambda[k].im.atan2(lambda[k].re);
            if phi < 0.0 {
                phi + TAU
            } else {
                phi
            }
        })
        .collect();
    let even_sign = if n.is_multiple_of(2) {
        Some(if lambda[m + 1].re >= 0.0 { 1 } else { -1 })
    } else {
        None
    };
    PhasePoint::new(n, phases, even_sign)
}

/// Modulus of the determinant of the circulant coefficient matrix, as the
/// product of eigenvalue moduli. On the torus this equals `n - 1`, so every
/// construction-class circulant map is invertible. Off-torus input is
/// rejected.
pub fn determinant_modulus(params: &CirculantParams) -> Result<f64> {
    let lambda = torus_spectrum(params)?;
    Ok(lambda.iter().map(|z| z.norm()).product())
}

/// Uniform i.i.d. torus coordinates: phases uniform on `[0, 2 pi)`, and a
/// fair-coin sign for even `n`. Deterministic per seed.
pub fn sample_phase_points(n: usize, count: usize, seed: u64) -> Result<Vec<PhasePoint>> {
    if !(2..=tol::MAX_DIM).contains(&n) {
        return Err(Error::InvalidDimension { n, min: 2 });
    }
    let m = (n - 1) / 2;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let phases: Vec<f64> = (0..m).map(|_| rng.random::<f64>() * TAU).collect();
        let even_sign = if n.is_multiple_of(2) {
            Some(if rng.random::<bool>() { 1 } else { -1 })
        } else {
            None
        };
        out.push(PhasePoint::new(n, phases, even_sign)?);
    }
    Ok(out)
}

/// Uniform samples of construction-class circulant parameters.
pub fn torus_sample(n: usize, count: usize, seed: u64) -> Result<Vec<CirculantParams>> {
    Ok(sample_phase_points(n, count, seed)?
        .iter()
        .map(alphas_from_phases)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::verify_row_products;
    use crate::matrix::orthogonality_residual;

    fn circular_distance(a: f64, b: f64) -> f64 {
        let d = (a - b).rem_euclid(TAU);
        d.min(TAU - d)
    }

    #[test]
    fn dft_of_constant_diagonal() {
        let p = CirculantParams::new(vec![3.0, 0.0, 0.0, 0.0]).unwrap();
        for z in dft_eigenvalues(&p) {
            assert!((z - Complex64::new(3.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn dft_of_torus_point_n3() {
        let p = CirculantParams::new(vec![4.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]).unwrap();
        let l = dft_eigenvalues(&p);
        assert!((l[0] - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        assert!((l[1] - Complex64::ONE).norm() < 1e-14);
        assert!((l[2] - Complex64::ONE).norm() < 1e-14);
    }

    #[test]
    fn reduction_map_phase_is_pi() {
        let p = CirculantParams::new(vec![0.0, 1.0, 1.0]).unwrap();
        let l = dft_eigenvalues(&p);
        assert!((l[1] - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
        let pt = phases_from_alphas(&p).unwrap();
        assert!((pt.phases()[0] - std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn uniform_circulant_is_off_torus() {
        let p = CirculantParams::new(vec![1.0, 1.0, 1.0]).unwrap();
        match phases_from_alphas(&p) {
            Err(Error::NotOnTorus {
                index: 1, modulus, ..
            }) => {
                assert!(modulus < 1e-14);
            }
            other => panic!("expected off-torus rejection, got {other:?}"),
        }
    }

    #[test]
    fn identity_circulant_rejected_for_n3_up() {
        let p = CirculantParams::new(vec![2.0, 0.0, 0.0]).unwrap();
        assert!(determinant_modulus(&p).is_err());
        // n = 2 identity-circulant (1, 0) is on the torus, det modulus 1
        let p = CirculantParams::new(vec![1.0, 0.0]).unwrap();
        assert!((determinant_modulus(&p).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn n3_phase_zero_is_golden_triple() {
        let pt = PhasePoint::new(3, vec![0.0], None).unwrap();
        let p = alphas_from_phases(&pt);
        let want = [4.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0];
        for (x, y) in p.alphas().iter().zip(want) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn n4_closed_forms_both_signs() {
        let phi = 0.83f64;
        let plus = alphas_from_phases(&PhasePoint::new(4, vec![phi], Some(1)).unwrap());
        let want = [
            (2.0 + phi.cos()) / 2.0,
            (1.0 - phi.sin()) / 2.0,
            (2.0 - phi.cos()) / 2.0,
            (1.0 + phi.sin()) / 2.0,
        ];
        for (x, y) in plus.alphas().iter().zip(want) {
            assert!((x - y).abs() < 1e-14);
        }
        // b + d = 1 for sign +1
        assert!((plus.alphas()[1] + plus.alphas()[3] - 1.0).abs() < 1e-14);

        let minus = alphas_from_phases(&PhasePoint::new(4, vec![phi], Some(-1)).unwrap());
        let want = [
            (1.0 + phi.cos()) / 2.0,
            (2.0 - phi.sin()) / 2.0,
            (1.0 - phi.cos()) / 2.0,
            (2.0 + phi.sin()) / 2.0,
        ];
        for (x, y) in minus.alphas().iter().zip(want) {
            assert!((x - y).abs() < 1e-14);
        }
        // b + d = 2 for sign -1
        assert!((minus.alphas()[1] + minus.alphas()[3] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn round_trip_phases() {
        for n in [3usize, 4, 5, 8, 9] {
            for pt in sample_phase_points(n, 50, 42).unwrap() {
                let back = phases_from_alphas(&alphas_from_phases(&pt)).unwrap();
                for (x, y) in pt.phases().iter().zip(back.phases()) {
                    assert!(circular_distance(*x, *y) < 1e-12, "n={n}: {x} vs {y}");
                }
                assert_eq!(pt.even_sign(), back.even_sign());
            }
        }
    }

    #[test]
    fn conjugate_symmetry_of_real_input() {
        let p = CirculantParams::new(vec![0.3, 1.2, 0.8, 0.1, 1.6]).unwrap();
        let l = dft_eigenvalues(&p);
        for k in 1..5 {
            assert!((l[k] - l[5 - k].conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn torus_samples_satisfy_class_constraints() {
        for n in 3..=6 {
            for params in torus_sample(n, 40, 7).unwrap() {
                let map = params.to_map();
                assert!(verify_row_products(&map).ok);
                assert!(params.alphas().iter().all(|&x| x >= -1e-12));
                assert!((params.sum() - (n as f64 - 1.0)).abs() < 1e-10);
                // beta = alpha - 1 gives a circulant orthogonal matrix
                let beta: Vec<f64> = map.coeffs().iter().map(|x| x - 1.0).collect();
                assert!(orthogonality_residual(n, &beta) < 1e-10);
                let det = determinant_modulus(&params).unwrap();
                assert!((det - (n as f64 - 1.0)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn determinant_modulus_matches_direct_determinant() {
        // the eigenvalue-product route against an LU determinant of the
        // assembled circulant matrix
        for n in [3usize, 4, 5, 7] {
            for params in torus_sample(n, 20, 17).unwrap() {
                let via_spectrum = determinant_modulus(&params).unwrap();
                let map = params.to_map();
                let dense = nalgebra::DMatrix::from_row_slice(n, n, map.coeffs());
                let direct = dense.determinant().abs();
                assert!(
                    (via_spectrum - direct).abs() < 1e-9,
                    "n={n}: {via_spectrum} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn n3_torus_lies_on_both_boundaries() {
        for params in torus_sample(3, 100, 9).unwrap() {
            let al = params.alphas();
            let (a, b, c) = (al[0], al[1], al[2]);
            assert!((a + b + c - 2.0).abs() < 1e-10);
            assert!((b * c - (1.0 - a) * (1.0 - a)).abs() < 1e-10);
        }
    }

    #[test]
    fn n4_samples_fall_in_exactly_one_class() {
        for params in torus_sample(4, 100, 11).unwrap() {
            let beta: Vec<f64> = params.alphas().iter().map(|x| x - 1.0).collect();
            let sq: f64 = beta.iter().map(|x| x * x).sum();
            assert!((sq - 1.0).abs() < 1e-10);
            let ac = beta[0] + beta[2];
            let bd = beta[1] + beta[3];
            let class_one = (ac + 1.0).abs() < 1e-10 && bd.abs() < 1e-10;
            let class_two = ac.abs() < 1e-10 && (bd + 1.0).abs() < 1e-10;
            assert!(
                class_one ^ class_two,
                "beta = {beta:?} must land in exactly one class"
            );
        }
    }

    #[test]
    fn n5_samples_satisfy_sum_and_autocorrelation() {
        for params in torus_sample(5, 60, 13).unwrap() {
            let beta: Vec<f64> = params.alphas().iter().map(|x| x - 1.0).collect();
            let sum: f64 = beta.iter().sum();
            assert!((sum + 1.0).abs() < 1e-10);
            let sq: f64 = beta.iter().map(|x| x * x).sum();
            assert!((sq - 1.0).abs() < 1e-10);
            let lag1: f64 = (0..5).map(|i| beta[i] * beta[(i + 1) % 5]).sum();
            assert!(lag1.abs() < 1e-10);
        }
    }

    #[test]
    fn torus_samples_are_positive_maps() {
        use crate::positivity::{check_positive_numerical, OptimizerConfig};
        let cfg = OptimizerConfig {
            restarts: 48,
            ..OptimizerConfig::default()
        };
        for n in 3..=5 {
            for params in torus_sample(n, 10, 21).unwrap() {
                let v = check_positive_numerical(&params.to_map(), &cfg);
                assert!(
                    v.status.is_positive(),
                    "n={n}, alphas={:?}",
                    params.alphas()
                );
            }
        }
    }

    #[test]
    fn n2_torus_is_the_sign_pair() {
        // no phases at n = 2; the sign picks the identity or the flip map
        let id = alphas_from_phases(&PhasePoint::new(2, vec![], Some(1)).unwrap());
        assert!((id.alphas()[0] - 1.0).abs() < 1e-15);
        assert!(id.alphas()[1].abs() < 1e-15);

        let flip = alphas_from_phases(&PhasePoint::new(2, vec![], Some(-1)).unwrap());
        assert!(flip.alphas()[0].abs() < 1e-15);
        assert!((flip.alphas()[1] - 1.0).abs() < 1e-15);

        let back = phases_from_alphas(&flip).unwrap();
        assert_eq!(back.even_sign(), Some(-1));
        assert!(back.phases().is_empty());
    }

    #[test]
    fn phase_point_validation() {
        assert!(PhasePoint::new(3, vec![0.1], None).is_ok());
        assert!(PhasePoint::new(3, vec![0.1, 0.2], None).is_err());
        assert!(PhasePoint::new(3, vec![0.1], Some(1)).is_err());
        assert!(PhasePoint::new(4, vec![0.1], None).is_err());
        assert!(PhasePoint::new(4, vec![0.1], Some(2)).is_err());
        assert!(PhasePoint::new(4, vec![0.1], Some(-1)).is_ok());
        // canonicalization into [0, 2 pi)
        let pt = PhasePoint::new(3, vec![-1.0], None).unwrap();
        assert!((pt.phases()[0] - (TAU - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn circulant_structure_detection() {
        let map = DiagonalTypeMap::circulant(&[1.0, 2.0, 3.0]).unwrap();
        let p = CirculantParams::from_map(&map).unwrap();
        assert_eq!(p.alphas(), &[1.0, 2.0, 3.0]);

        let not_circ = DiagonalTypeMap::from_rows(vec![
            vec![1.0, 2.0, 3.0],
            vec![3.0, 1.0, 2.5],
            vec![2.0, 3.0, 1.0],
        ])
        .unwrap();
        assert!(CirculantParams::from_map(&not_circ).is_none());
    }
}
