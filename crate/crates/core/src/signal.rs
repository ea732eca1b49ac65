//! Test-signal synthesis.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::foundation::ComplexSignal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalKind {
    Chirp,
    Tone,
    Delta,
    Noise,
}

impl fmt::Display for SignalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignalKind::Chirp => "chirp",
            SignalKind::Tone => "tone",
            SignalKind::Delta => "delta",
            SignalKind::Noise => "noise",
        })
    }
}

impl FromStr for SignalKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "chirp" => Ok(SignalKind::Chirp),
            "tone" => Ok(SignalKind::Tone),
            "delta" => Ok(SignalKind::Delta),
            "noise" => Ok(SignalKind::Noise),
            other => Err(format!("unknown signal kind '{other}'")),
        }
    }
}

/// Parameters of a synthesized signal.
///
/// A chirp is `amplitude * exp(j (pi rate n^2 / N + 2 pi f0 n / N))`; `f0` is in cycles per
/// frame. A tone is the same with `rate = 0`. Complex white noise with total variance
/// `noise_std^2` is added to every kind.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalSpec {
    pub n: usize,
    pub kind: SignalKind,
    pub rate: f64,
    pub f0: f64,
    pub amplitude: f64,
    pub noise_std: f64,
    pub seed: u64,
}

impl SignalSpec {
    /// Start frequency that centres a chirp's frequency sweep on zero.
    pub fn symmetric_f0(n: usize, rate: f64) -> f64 {
        -rate * (n as f64 - 1.0) / 2.0
    }

    /// Noise-free chirp with a sweep symmetric about zero frequency.
    pub fn chirp(n: usize, rate: f64) -> Self {
        SignalSpec {
            n,
            kind: SignalKind::Chirp,
            rate,
            f0: Self::symmetric_f0(n, rate),
            amplitude: 1.0,
            noise_std: 0.0,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 4 {
            return Err(Error::SizeTooSmall { n: self.n, min: 4 });
        }
        if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) {
            return Err(Error::InvalidArgument("amplitude must be finite and non-negative".into()));
        }
        if !(self.noise_std >= 0.0 && self.noise_std.is_finite()) {
            return Err(Error::InvalidArgument("noise_std must be finite and non-negative".into()));
        }
        if !self.rate.is_finite() || !self.f0.is_finite() {
            return Err(Error::InvalidArgument("rate and f0 must be finite".into()));
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<ComplexSignal> {
        self.validate()?;
        let n = self.n;
        let nf = n as f64;
        let sweep = |rate: f64, i: usize| {
            let t = i as f64;
            let phase = PI * rate * t * t / nf + 2.0 * PI * self.f0 * t / nf;
            Complex64::from_polar(self.amplitude, phase)
        };
        let mut samples: Vec<Complex64> = match self.kind {
            SignalKind::Chirp => (0..n).map(|i| sweep(self.rate, i)).collect(),
            SignalKind::Tone => (0..n).map(|i| sweep(0.0, i)).collect(),
            SignalKind::Delta => {
                let mut v = vec![Complex64::new(0.0, 0.0); n];
                v[0] = Complex64::new(self.amplitude, 0.0);
                v
            }
            SignalKind::Noise => vec![Complex64::new(0.0, 0.0); n],
        };
        if self.noise_std > 0.0 {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            let normal = Normal::new(0.0, self.noise_std / 2f64.sqrt())
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            for s in samples.iter_mut() {
                *s += Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng));
            }
        }
        ComplexSignal::new(samples)
    }
}
