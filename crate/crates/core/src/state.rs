//! Source states and the lossy thermal channel.
//!
//! Two-mode squeezed thermal states (TMSTS) are built from a squeezing rate
//! `r` and a preparation occupation `n_th`; `n_th = 0` gives the pure
//! two-mode squeezed vacuum. The channel keeps the idler untouched and mixes
//! the signal with a thermal environment of occupation `n_ch` at
//! transmissivity `eta`.

use nalgebra::{DMatrix, DVector, Matrix2, Matrix4};

use crate::cm::CovarianceMatrix;
use crate::consts::{BOLTZMANN, HBAR};
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Mean quadrature vector plus covariance matrix: everything the protocols
/// consume.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState<T: Real> {
    mean: DVector<T>,
    cov: CovarianceMatrix<T>,
}

impl<T: Real> GaussianState<T> {
    pub fn new(mean: DVector<T>, cov: CovarianceMatrix<T>) -> Result<Self> {
        if mean.len() != cov.dim() {
            return Err(Error::Dimension {
                expected: cov.dim(),
                got: mean.len(),
            });
        }
        Ok(Self { mean, cov })
    }

    pub fn zero_mean(cov: CovarianceMatrix<T>) -> Self {
        let mean = DVector::zeros(cov.dim());
        Self { mean, cov }
    }

    pub fn mean(&self) -> &DVector<T> {
        &self.mean
    }

    pub fn cov(&self) -> &CovarianceMatrix<T> {
        &self.cov
    }

    pub fn n_modes(&self) -> usize {
        self.cov.n_modes()
    }

    /// Applies a symplectic (or any linear) transform: `mean -> S mean`,
    /// `cov -> S cov S^T`.
    pub fn transform(&self, s: &DMatrix<T>) -> Result<Self> {
        if s.nrows() != self.cov.dim() || s.ncols() != self.cov.dim() {
            return Err(Error::Dimension {
                expected: self.cov.dim(),
                got: s.nrows(),
            });
        }
        let cov = s * self.cov.entries() * s.transpose();
        let cov = CovarianceMatrix::new((&cov + cov.transpose()) * T::half())?;
        Ok(Self {
            mean: s * &self.mean,
            cov,
        })
    }
}

/// Role of the second mode of a [`TwoModeState`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalStage {
    /// Fresh from the source, not yet propagated.
    Source,
    /// Transmitted through (or reflected back from) the channel.
    Returned,
}

/// Mode selector for two-mode operations. Mode 0 is always the idler; mode 1
/// is the signal at the source and the returned mode after the channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Idler,
    Signal,
}

impl Mode {
    pub fn index(self) -> usize {
        match self {
            Mode::Idler => 0,
            Mode::Signal => 1,
        }
    }

    pub fn other(self) -> Mode {
        match self {
            Mode::Idler => Mode::Signal,
            Mode::Signal => Mode::Idler,
        }
    }
}

/// Two-mode Gaussian state with (idler, signal-or-returned) role tags.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState<T: Real> {
    state: GaussianState<T>,
    stage: SignalStage,
}

impl<T: Real> TwoModeState<T> {
    pub fn new(state: GaussianState<T>, stage: SignalStage) -> Result<Self> {
        if state.n_modes() != 2 {
            return Err(Error::ModeCount {
                expected: 2,
                got: state.n_modes(),
            });
        }
        Ok(Self { state, stage })
    }

    /// Zero-mean state from 2x2 blocks: idler `a`, cross `c` (idler rows,
    /// signal columns), signal `b`.
    pub fn from_blocks(
        a: &Matrix2<T>,
        c: &Matrix2<T>,
        b: &Matrix2<T>,
        stage: SignalStage,
    ) -> Result<Self> {
        let cov = CovarianceMatrix::from_two_mode_blocks(a, c, b)?;
        Self::new(GaussianState::zero_mean(cov), stage)
    }

    pub fn state(&self) -> &GaussianState<T> {
        &self.state
    }

    pub fn cov(&self) -> &CovarianceMatrix<T> {
        self.state.cov()
    }

    pub fn mean(&self) -> &DVector<T> {
        self.state.mean()
    }

    pub fn stage(&self) -> SignalStage {
        self.stage
    }

    pub fn idler_block(&self) -> Matrix2<T> {
        self.cov().block(0, 0)
    }

    pub fn signal_block(&self) -> Matrix2<T> {
        self.cov().block(1, 1)
    }

    /// Idler-signal correlation block (idler rows, signal columns).
    pub fn cross_block(&self) -> Matrix2<T> {
        self.cov().block(0, 1)
    }

    pub fn mode_block(&self, mode: Mode) -> Matrix2<T> {
        self.cov().block(mode.index(), mode.index())
    }
}

/// Source description of a TMSTS: squeezing rate and preparation occupation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TmsParams<T: Real> {
    r: T,
    n_th: T,
}

impl<T: Real> TmsParams<T> {
    pub fn new(r: T, n_th: T) -> Result<Self> {
        if r < T::zero() || !r.is_finite() {
            return Err(Error::Domain(format!(
                "squeezing rate must be nonnegative, got {}",
                r.as_f64()
            )));
        }
        if n_th < T::zero() || !n_th.is_finite() {
            return Err(Error::Domain(format!(
                "preparation occupation must be nonnegative, got {}",
                n_th.as_f64()
            )));
        }
        Ok(Self { r, n_th })
    }

    pub fn r(&self) -> T {
        self.r
    }

    pub fn n_th(&self) -> T {
        self.n_th
    }
}

/// Channel description: transmissivity and environment occupation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams<T: Real> {
    eta: T,
    n_ch: T,
}

impl<T: Real> ChannelParams<T> {
    pub fn new(eta: T, n_ch: T) -> Result<Self> {
        if eta < T::zero() || eta > T::one() || !eta.is_finite() {
            return Err(Error::Domain(format!(
                "transmissivity must lie in [0, 1], got {}",
                eta.as_f64()
            )));
        }
        if n_ch < T::zero() || !n_ch.is_finite() {
            return Err(Error::Domain(format!(
                "channel occupation must be nonnegative, got {}",
                n_ch.as_f64()
            )));
        }
        Ok(Self { eta, n_ch })
    }

    pub fn eta(&self) -> T {
        self.eta
    }

    pub fn n_ch(&self) -> T {
        self.n_ch
    }
}

/// Single-mode thermal state: zero mean, covariance `(1/2 + n) I`.
pub fn make_thermal<T: Real>(n_bar: T) -> Result<GaussianState<T>> {
    if n_bar < T::zero() || !n_bar.is_finite() {
        return Err(Error::Domain(format!(
            "thermal occupation must be nonnegative, got {}",
            n_bar.as_f64()
        )));
    }
    let v = T::half() + n_bar;
    Ok(GaussianState::zero_mean(CovarianceMatrix::from_diagonal(
        &[v, v],
    )?))
}

/// Bose-Einstein occupation `1 / (exp(h_bar omega / k_B T) - 1)` for a mode
/// at `frequency_hz` in a bath at `temperature_k`; `0` at zero temperature.
pub fn occupation_from_temperature<T: Real>(frequency_hz: T, temperature_k: T) -> Result<T> {
    if frequency_hz <= T::zero() {
        return Err(Error::Domain(format!(
            "frequency must be positive, got {}",
            frequency_hz.as_f64()
        )));
    }
    if temperature_k < T::zero() {
        return Err(Error::Domain(format!(
            "temperature must be nonnegative, got {}",
            temperature_k.as_f64()
        )));
    }
    if temperature_k == T::zero() {
        return Ok(T::zero());
    }
    let ratio = lit::<T>(HBAR) * T::two_pi() * frequency_hz / (lit::<T>(BOLTZMANN) * temperature_k);
    Ok((ratio.exp() - T::one()).recip())
}

/// TMSTS covariance blocks: `sigma_I = sigma_S = (1/2 + n_th) cosh(2r) I`,
/// cross block `diag(c, -c)` with `c = (1/2 + n_th) sinh(2r)`.
pub fn make_tmsts<T: Real>(p: &TmsParams<T>) -> TwoModeState<T> {
    let k = T::half() + p.n_th();
    let two_r = lit::<T>(2.0) * p.r();
    let a = k * two_r.cosh();
    let c = k * two_r.sinh();
    let diag = Matrix2::from_diagonal(&nalgebra::Vector2::new(a, a));
    let cross = Matrix2::from_diagonal(&nalgebra::Vector2::new(c, -c));
    TwoModeState::from_blocks(&diag, &cross, &diag, SignalStage::Source)
        .expect("TMSTS blocks are symmetric by construction")
}

/// Symplectic matrix of the two-mode squeezer: maps `thermal ⊗ thermal` to
/// the TMSTS of the same occupation.
pub fn two_mode_squeeze_symplectic<T: Real>(r: T) -> Matrix4<T> {
    let ch = r.cosh();
    let sh = r.sinh();
    let z = T::zero();
    Matrix4::new(
        ch, z, sh, z, //
        z, ch, z, -sh, //
        sh, z, ch, z, //
        z, -sh, z, ch,
    )
}

/// Symplectic matrix of a beam splitter with mixing angle `theta`
/// (50-50 at `theta = pi/4`).
pub fn beam_splitter_symplectic<T: Real>(theta: T) -> Matrix4<T> {
    let c = theta.cos();
    let s = theta.sin();
    let z = T::zero();
    Matrix4::new(
        c, z, s, z, //
        z, c, z, s, //
        -s, z, c, z, //
        z, -s, z, c,
    )
}

/// Propagates the signal mode through the lossy thermal channel:
/// `sigma_I` unchanged, cross block scaled by `sqrt(eta)`,
/// `sigma_R = eta sigma_S + (1 - eta)(1/2 + n_ch) I`, signal mean scaled by
/// `sqrt(eta)`.
pub fn apply_channel<T: Real>(s: &TwoModeState<T>, ch: &ChannelParams<T>) -> TwoModeState<T> {
    let eta = ch.eta();
    let sqrt_eta = eta.sqrt();
    let noise = (T::one() - eta) * (T::half() + ch.n_ch());

    let a = s.idler_block();
    let cross = s.cross_block() * sqrt_eta;
    let b = s.signal_block() * eta + Matrix2::from_diagonal_element(noise);

    let cov = CovarianceMatrix::from_two_mode_blocks(&a, &cross, &b)
        .expect("channel map preserves symmetry");
    let mut mean = s.mean().clone();
    mean[2] *= sqrt_eta;
    mean[3] *= sqrt_eta;
    TwoModeState::new(
        GaussianState::new(mean, cov).expect("dimensions preserved"),
        SignalStage::Returned,
    )
    .expect("two modes preserved")
}

/// Hypothesis-0 state for illumination: the TMSTS idler next to a bare
/// channel return (thermal at `n_ch`), with no correlations.
pub fn target_absent_state<T: Real>(p: &TmsParams<T>, ch: &ChannelParams<T>) -> TwoModeState<T> {
    let idler = make_tmsts(p).idler_block();
    let ret = Matrix2::from_diagonal_element(T::half() + ch.n_ch());
    TwoModeState::from_blocks(&idler, &Matrix2::zeros(), &ret, SignalStage::Returned)
        .expect("blocks symmetric")
}

pub(crate) fn to_dynamic<T: Real>(m: &Matrix4<T>) -> DMatrix<T> {
    DMatrix::from_iterator(4, 4, m.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cm::{symplectic_form, validate};
    use approx::assert_relative_eq;

    #[test]
    fn thermal_examples() {
        let vac = make_thermal(0.0).unwrap();
        assert_eq!(vac.cov().entries()[(0, 0)], 0.5);
        let hot = make_thermal(3000.0).unwrap();
        assert_eq!(hot.cov().entries()[(1, 1)], 3000.5);
        let one = make_thermal(1.0).unwrap();
        assert_eq!(one.cov().entries()[(0, 0)], 1.5);
        assert!(make_thermal(-0.1).is_err());
    }

    #[test]
    fn occupation_examples() {
        // Direct evaluation with CODATA constants at 2 GHz, 293 K.
        let n = occupation_from_temperature(2.0e9, 293.0).unwrap();
        assert_relative_eq!(n, 3052.0647307373, max_relative = 1e-10);

        assert_eq!(occupation_from_temperature(2.0e9, 0.0).unwrap(), 0.0);
        assert!(occupation_from_temperature(0.0, 300.0).is_err());
        assert!(occupation_from_temperature(-1.0, 300.0).is_err());

        // Rayleigh-Jeans limit: n ~ k_B T / (h_bar omega) to 1% once n > 100.
        let f = 2.0e9;
        for t in [1.0, 10.0, 293.0] {
            let n = occupation_from_temperature(f, t).unwrap();
            if n > 100.0 {
                let rj = BOLTZMANN * t / (HBAR * std::f64::consts::TAU * f);
                assert_relative_eq!(n, rj, max_relative = 1e-2);
            }
        }
    }

    #[test]
    fn tmsts_examples() {
        let vac2 = make_tmsts(&TmsParams::new(0.0, 0.0).unwrap());
        assert_eq!(vac2.cov().entries(), &DMatrix::from_diagonal(&nalgebra::dvector![0.5, 0.5, 0.5, 0.5]));

        let s = make_tmsts(&TmsParams::new(1.0, 0.0).unwrap());
        assert_relative_eq!(s.idler_block()[(0, 0)], 1.8810978455418157, max_relative = 1e-14);
        assert_relative_eq!(s.cross_block()[(0, 0)], 1.8134302039235094, max_relative = 1e-14);
        assert_relative_eq!(s.cross_block()[(1, 1)], -1.8134302039235094, max_relative = 1e-14);
        assert_eq!(s.cross_block()[(0, 1)], 0.0);

        let hot = make_tmsts(&TmsParams::new(4.0, 3000.0).unwrap());
        assert_relative_eq!(hot.idler_block()[(1, 1)], 4472182.72333716, max_relative = 1e-12);
        assert!(validate(hot.cov()).is_physical());
    }

    #[test]
    fn squeeze_symplectic_properties() {
        let id = two_mode_squeeze_symplectic(0.0f64);
        assert_eq!(to_dynamic(&id), DMatrix::identity(4, 4));

        // S Omega S^T = Omega
        let s = to_dynamic(&two_mode_squeeze_symplectic(2.0));
        let omega = symplectic_form::<f64>(2);
        let residual = &s * &omega * s.transpose() - &omega;
        assert!(residual.abs().max() < 1e-10);

        // S(1) applied to the vacuum reproduces make_tmsts(1, 0) entrywise.
        let s1 = to_dynamic(&two_mode_squeeze_symplectic(1.0));
        let vac = DMatrix::from_diagonal_element(4, 4, 0.5);
        let squeezed = &s1 * vac * s1.transpose();
        let direct = make_tmsts(&TmsParams::new(1.0, 0.0).unwrap());
        let gap = (&squeezed - direct.cov().entries()).abs().max();
        assert!(gap < 1e-12, "entrywise gap {gap}");
    }

    #[test]
    fn beam_splitter_is_symplectic() {
        let b = to_dynamic(&beam_splitter_symplectic(std::f64::consts::FRAC_PI_4));
        let omega = symplectic_form::<f64>(2);
        let residual = &b * &omega * b.transpose() - &omega;
        assert!(residual.abs().max() < 1e-12);
    }

    #[test]
    fn channel_identity_and_full_loss() {
        let s = make_tmsts(&TmsParams::new(1.5, 2.0).unwrap());

        let same = apply_channel(&s, &ChannelParams::new(1.0, 7.0).unwrap());
        let gap = (same.cov().entries() - s.cov().entries()).abs().max();
        assert!(gap < 1e-12);
        assert_eq!(same.stage(), SignalStage::Returned);

        let lost = apply_channel(&s, &ChannelParams::new(0.0, 7.0).unwrap());
        assert_eq!(lost.signal_block(), Matrix2::from_diagonal_element(7.5));
        assert_eq!(lost.cross_block(), Matrix2::zeros());
    }

    #[test]
    fn channel_example_values() {
        // Direct evaluation of the channel map on TMSTS(r=4, n_th=3000)
        // with eta = 0.01, n_ch = 3000.
        let s = make_tmsts(&TmsParams::new(4.0, 3000.0).unwrap());
        let out = apply_channel(&s, &ChannelParams::new(0.01, 3000.0).unwrap());
        assert_relative_eq!(out.signal_block()[(0, 0)], 47692.322233371603, max_relative = 1e-12);
        assert_relative_eq!(out.cross_block()[(0, 0)], 447218.17167815453, max_relative = 1e-12);
        assert_relative_eq!(out.idler_block()[(0, 0)], 4472182.72333716, max_relative = 1e-12);
        assert!(validate(out.cov()).is_physical());
    }

    #[test]
    fn channel_rejects_bad_params() {
        assert!(ChannelParams::new(1.2, 0.0).is_err());
        assert!(ChannelParams::new(-0.1, 0.0).is_err());
        assert!(ChannelParams::new(0.5, -1.0).is_err());
    }

    #[test]
    fn target_absent_blocks() {
        let p = TmsParams::new(2.0, 10.0).unwrap();
        let ch = ChannelParams::new(0.3, 4.0).unwrap();
        let h0 = target_absent_state(&p, &ch);
        assert_eq!(h0.idler_block(), make_tmsts(&p).idler_block());
        assert_eq!(h0.signal_block(), Matrix2::from_diagonal_element(4.5));
        assert_eq!(h0.cross_block(), Matrix2::zeros());
    }
}
