use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Complex, Matrix};

/// Smallest accepted `|ω_L| / |ω_Q|` for the first-order quadrupolar form.
pub const MIN_LARMOR_TO_QUAD_RATIO: f64 = 100.0;

/// Larmor frequency of ²³Na at 9.4 T, rad/s.
pub const SODIUM_LARMOR: f64 = 2.0 * std::f64::consts::PI * 105.8e6;

/// Quadrupolar splitting of the liquid-crystal sample, rad/s (10 kHz).
pub const SODIUM_QUAD: f64 = 2.0 * std::f64::consts::PI * 10.0e3;

/// A single quadrupolar nucleus. Frequencies are angular (rad/s), `ħ = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpinSystemRepr", into = "SpinSystemRepr")]
pub struct SpinSystem {
    twice_spin: u32,
    larmor: f64,
    quad: f64,
}

#[derive(Serialize, Deserialize)]
struct SpinSystemRepr {
    spin: f64,
    larmor_rad_s: f64,
    quad_rad_s: f64,
}

impl From<SpinSystem> for SpinSystemRepr {
    fn from(s: SpinSystem) -> Self {
        SpinSystemRepr {
            spin: s.spin(),
            larmor_rad_s: s.larmor,
            quad_rad_s: s.quad,
        }
    }
}

impl TryFrom<SpinSystemRepr> for SpinSystem {
    type Error = Error;

    fn try_from(r: SpinSystemRepr) -> Result<Self> {
        SpinSystem::new(r.spin, r.larmor_rad_s, r.quad_rad_s)
    }
}

impl SpinSystem {
    pub fn new(spin: f64, larmor: f64, quad: f64) -> Result<Self> {
        let twice_spin = twice_spin(spin)?;
        if !larmor.is_finite() || !quad.is_finite() {
            return Err(Error::NonFinite("spin system frequencies"));
        }
        if quad != 0.0 && larmor.abs() < MIN_LARMOR_TO_QUAD_RATIO * quad.abs() {
            return Err(Error::InvalidParameter(format!(
                "|ω_L/ω_Q| = {:.1} is below {MIN_LARMOR_TO_QUAD_RATIO}",
                (larmor / quad).abs()
            )));
        }
        Ok(Self {
            twice_spin,
            larmor,
            quad,
        })
    }

    /// Spin-3/2 ²³Na with `ν_Q = 10 kHz`.
    pub fn sodium23() -> Self {
        Self::new(1.5, SODIUM_LARMOR, SODIUM_QUAD).expect("valid constants")
    }

    /// Same system with a different quadrupolar frequency.
    pub fn with_quad(self, quad: f64) -> Result<Self> {
        Self::new(self.spin(), self.larmor, quad)
    }

    pub fn spin(&self) -> f64 {
        self.twice_spin as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        self.twice_spin as usize + 1
    }

    pub fn larmor(&self) -> f64 {
        self.larmor
    }

    pub fn quad(&self) -> f64 {
        self.quad
    }
}

fn twice_spin(s: f64) -> Result<u32> {
    let t = 2.0 * s;
    if !(t.is_finite() && t >= 1.0 && (t - t.round()).abs() < 1e-12 && t <= 63.0) {
        return Err(Error::InvalidSpin(s));
    }
    Ok(t.round() as u32)
}

/// Cartesian angular-momentum matrices in the `|s, m⟩` basis, `m = s .. -s`.
#[derive(Clone, Debug)]
pub struct SpinOperators {
    pub x: Matrix,
    pub y: Matrix,
    pub z: Matrix,
}

impl SpinOperators {
    /// `I² = I_x² + I_y² + I_z²`.
    pub fn total_squared(&self) -> Matrix {
        let xx = &self.x * &self.x;
        let yy = &self.y * &self.y;
        let zz = &self.z * &self.z;
        xx.try_add(&yy)
            .and_then(|m| m.try_add(&zz))
            .expect("same dimension")
    }
}

pub fn spin_operators(s: f64) -> Result<SpinOperators> {
    let dim = twice_spin(s)? as usize + 1;
    let m = |i: usize| s - i as f64;
    // ⟨m+1| I+ |m⟩ = sqrt(s(s+1) - m(m+1)); row i holds m(i) = s - i.
    let raise = Matrix::from_fn(dim, |r, c| {
        if c == r + 1 {
            let mc = m(c);
            Complex::new((s * (s + 1.0) - mc * (mc + 1.0)).sqrt(), 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    })?;
    let lower = raise.adjoint();
    let x = raise.try_add(&lower)?.scale(Complex::new(0.5, 0.0));
    let y = raise.try_sub(&lower)?.scale(Complex::new(0.0, -0.5));
    let z = Matrix::diagonal(
        &(0..dim)
            .map(|i| Complex::new(m(i), 0.0))
            .collect::<Vec<_>>(),
    )?;
    Ok(SpinOperators { x, y, z })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Frame {
    Lab,
    /// On-resonance rotating frame: the Zeeman term drops out.
    Rotating,
}

/// `H = -ω_L I_z + (ω_Q/6)(3 I_z² - I²)` in the lab frame; the rotating
/// frame keeps only the quadrupolar term.
pub fn static_hamiltonian(sys: &SpinSystem, frame: Frame) -> Matrix {
    let ops = spin_operators(sys.spin()).expect("spin validated at construction");
    let zz = &ops.z * &ops.z;
    let quad = zz
        .scale(Complex::new(3.0, 0.0))
        .try_sub(&ops.total_squared())
        .expect("same dimension")
        .scale(Complex::new(sys.quad / 6.0, 0.0));
    match frame {
        Frame::Rotating => quad,
        Frame::Lab => ops
            .z
            .scale(Complex::new(-sys.larmor, 0.0))
            .try_add(&quad)
            .expect("same dimension"),
    }
}
