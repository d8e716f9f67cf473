//! Seeded readout-noise emulation for reconstructed density matrices.
//!
//! This does not model spectral-line tomography; it perturbs a simulated
//! matrix so exported data carries error bars of a realistic size.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::linalg::{hermitize, Complex, DensityMatrix, Matrix};

/// Relative per-element noise level; keeps element errors below 6 % of the
/// largest element.
pub const DEFAULT_READOUT_SIGMA: f64 = 0.01;

/// Adds a Hermitian Gaussian perturbation with per-element standard
/// deviation `sigma · max|ρ|`, then rescales to the original trace.
pub fn inject_readout_noise(rho: &DensityMatrix, sigma: f64, seed: u64) -> Result<DensityMatrix> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "sigma must be finite and >= 0, got {sigma}"
        )));
    }
    if sigma == 0.0 {
        return Ok(rho.clone());
    }
    let scale = sigma * rho.matrix().max_abs();
    let normal = Normal::new(0.0, scale).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rho.dim();

    let mut noise = vec![Complex::new(0.0, 0.0); d * d];
    for r in 0..d {
        noise[r * d + r] = Complex::new(normal.sample(&mut rng), 0.0);
        for c in (r + 1)..d {
            let z = Complex::new(normal.sample(&mut rng), normal.sample(&mut rng));
            noise[r * d + c] = z;
            noise[c * d + r] = z.conj();
        }
    }
    let noisy = rho
        .matrix()
        .try_add(&Matrix::from_fn(d, |r, c| noise[r * d + c])?)?;
    let noisy = hermitize(noisy);

    let original = rho.trace();
    let current = noisy.trace().re;
    let rescaled = if current.abs() > f64::EPSILON && original.abs() > f64::EPSILON {
        noisy.scale(Complex::new(original / current, 0.0))
    } else {
        noisy
    };
    DensityMatrix::new(rescaled)
}
