//! PIN-diode impedance and the reflection coefficient of a single unit.
//!
//! While the diode conducts, its RF resistance falls with bias following a
//! power law with a finite knee, so the reflection magnitude grows strictly
//! monotonically with the terminal voltage. The phase of the conducting state
//! is a design constant (the stub network holds it) with a small, bounded,
//! deterministic drift across bias. Below the forward voltage the unit
//! reflects a constant `alpha · e^{j·phi_off}`.

use core::f64::consts::PI;

#[allow(unused_imports)] // inherent f64 methods win when std is linked
use num_traits::Float;

use crate::{Complex64, Error, Result};

/// Iteration cap for the inverse-map bisection.
pub const BISECTION_MAX_ITER: usize = 200;
/// Magnitude tolerance guaranteed by [`UnitModel::inverse_magnitude_map`].
pub const INVERSE_TOLERANCE: f64 = 1e-9;

/// Equivalent circuit of a PIN diode.
///
/// Zero bias: `r_p0 + jωl_p + 1/(jωc_p)`. Forward bias: `r_on(v) + jωl_p`
/// with `r_on(v) = r_on_ref · ((v_ref − v_forward + v_knee)/(v − v_forward + v_knee))^slope`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct DiodeModel {
    /// Resistance at `v_ref` (ohm).
    pub r_on_ref: f64,
    /// Forward conduction voltage (V).
    pub v_forward: f64,
    /// Reference bias where `r_on_ref` applies (V).
    pub v_ref: f64,
    /// Knee offset that keeps the resistance finite at `v_forward` (V).
    pub v_knee: f64,
    /// Exponent of the bias-to-resistance law.
    pub slope: f64,
    /// Package inductance (H).
    pub l_p: f64,
    /// Zero-bias capacitance (F).
    pub c_p: f64,
    /// Zero-bias series resistance (ohm).
    pub r_p0: f64,
}

impl Default for DiodeModel {
    fn default() -> Self {
        Self {
            r_on_ref: 5.0,
            v_forward: 0.7,
            v_ref: 1.0,
            v_knee: 0.0433,
            slope: 2.0,
            l_p: 0.7e-9,
            c_p: 1.8e-12,
            r_p0: 2.0,
        }
    }
}

impl DiodeModel {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.r_on_ref,
            self.v_forward,
            self.v_ref,
            self.v_knee,
            self.slope,
            self.l_p,
            self.c_p,
            self.r_p0,
        ];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("diode parameters must be finite"));
        }
        if self.v_forward <= 0.0 {
            return Err(Error::config("diode.v_forward must be > 0"));
        }
        if self.v_ref <= self.v_forward {
            return Err(Error::config("diode.v_ref must exceed v_forward"));
        }
        if self.r_on_ref < 0.0 || self.r_p0 < 0.0 {
            return Err(Error::config("diode resistances must be >= 0"));
        }
        if self.v_knee <= 0.0 {
            return Err(Error::config("diode.v_knee must be > 0"));
        }
        if self.slope <= 0.0 {
            return Err(Error::config("diode.slope must be > 0"));
        }
        if self.l_p <= 0.0 || self.c_p <= 0.0 {
            return Err(Error::config("diode.l_p and diode.c_p must be > 0"));
        }
        Ok(())
    }

    /// Forward-bias RF resistance. Only meaningful for `v >= v_forward`.
    pub fn on_resistance(&self, v: f64) -> f64 {
        let ratio = (self.v_ref - self.v_forward + self.v_knee) / (v - self.v_forward + self.v_knee);
        self.r_on_ref * ratio.powf(self.slope)
    }

    /// Equivalent diode impedance at terminal voltage `v_ab` and angular
    /// frequency `omega`.
    pub fn impedance(&self, v_ab: f64, omega: f64) -> Result<Complex64> {
        if !v_ab.is_finite() || !omega.is_finite() {
            return Err(Error::Domain("pin_impedance inputs must be finite"));
        }
        if omega <= 0.0 {
            return Err(Error::Domain("angular frequency must be > 0"));
        }
        Ok(self.impedance_unchecked(v_ab, omega))
    }

    fn impedance_unchecked(&self, v_ab: f64, omega: f64) -> Complex64 {
        let inductive = Complex64::new(0.0, omega * self.l_p);
        if v_ab < self.v_forward {
            let capacitive = Complex64::new(0.0, -1.0 / (omega * self.c_p));
            Complex64::new(self.r_p0, 0.0) + inductive + capacitive
        } else {
            Complex64::new(self.on_resistance(v_ab), 0.0) + inductive
        }
    }
}

/// RF and control parameters of one surface unit.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct UnitModel {
    pub diode: DiodeModel,
    /// Series RF resistance (ohm).
    pub r_rf: f64,
    /// Series RF inductance (H).
    pub l_rf: f64,
    /// Series RF capacitance (F).
    pub c_rf: f64,
    /// Free-space impedance (ohm).
    pub z0: f64,
    /// Reflection phase while conducting (rad).
    pub phi_on: f64,
    /// Reflection phase at zero bias (rad).
    pub phi_off: f64,
    /// Reflection magnitude at zero bias.
    pub alpha: f64,
    /// Largest conducting-state phase drift across the bias range (rad).
    pub phase_jitter: f64,
}

impl Default for UnitModel {
    fn default() -> Self {
        Self {
            diode: DiodeModel::default(),
            r_rf: 3.0,
            l_rf: 0.5e-9,
            c_rf: 0.6275e-12,
            z0: 377.0,
            phi_on: PI,
            phi_off: 0.0,
            alpha: 0.99,
            phase_jitter: 5.0 * PI / 180.0,
        }
    }
}

/// Magnitude and phase of a unit's reflection coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RcState {
    pub magnitude: f64,
    pub phase: f64,
}

impl RcState {
    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.magnitude, self.phase)
    }
}

impl UnitModel {
    /// Checks parameter ranges and that the conducting magnitude map is
    /// increasing on `[v_forward, v_ref]` and bounded by `alpha` at `omega`.
    pub fn validate(&self, omega: f64) -> Result<()> {
        self.diode.validate()?;
        let all = [
            self.r_rf,
            self.l_rf,
            self.c_rf,
            self.z0,
            self.phi_on,
            self.phi_off,
            self.alpha,
            self.phase_jitter,
        ];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("unit parameters must be finite"));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::config("unit.alpha must lie in (0, 1]"));
        }
        if self.z0 <= 0.0 || self.r_rf < 0.0 || self.l_rf < 0.0 || self.c_rf <= 0.0 {
            return Err(Error::config("unit RF parameters out of range"));
        }
        if self.phase_jitter < 0.0 {
            return Err(Error::config("unit.phase_jitter must be >= 0"));
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::Domain("angular frequency must be > 0"));
        }
        // |Γ| falls with series resistance R only while R < sqrt(z0² + X²).
        let x = self.on_reactance(omega);
        let r_max = self.diode.on_resistance(self.diode.v_forward) + self.r_rf;
        if r_max * r_max >= self.z0 * self.z0 + x * x {
            return Err(Error::config(
                "unit resistance at v_forward is past the reflection minimum; magnitude map would not be monotone",
            ));
        }
        // supremum over v >= v_forward is the r_on -> 0 limit
        let sup = gamma(Complex64::new(self.r_rf, x), self.z0)?.norm();
        if sup >= self.alpha {
            return Err(Error::config(
                "conducting magnitude can reach alpha; need magnitude_map(v) < alpha",
            ));
        }
        Ok(())
    }

    fn on_reactance(&self, omega: f64) -> f64 {
        omega * (self.l_rf + self.diode.l_p) - 1.0 / (omega * self.c_rf)
    }

    fn series_rf(&self, omega: f64) -> Complex64 {
        Complex64::new(self.r_rf, omega * self.l_rf - 1.0 / (omega * self.c_rf))
    }

    /// Total unit impedance `Z_PIN + R_RF + jωL_RF + 1/(jωC_RF)`.
    pub fn effective_impedance(&self, v_ab: f64, omega: f64) -> Result<Complex64> {
        Ok(self.diode.impedance(v_ab, omega)? + self.series_rf(omega))
    }

    /// `(Z_eff − z0)/(Z_eff + z0)`.
    pub fn reflection_coefficient(&self, v_ab: f64, omega: f64) -> Result<Complex64> {
        gamma(self.effective_impedance(v_ab, omega)?, self.z0)
    }

    /// Conducting-state magnitude `|Γ(v_ab)|`, defined for `v_ab >= v_forward`.
    pub fn magnitude_map(&self, v_ab: f64, omega: f64) -> Result<f64> {
        if !v_ab.is_finite() {
            return Err(Error::Domain("bias voltage must be finite"));
        }
        if v_ab < self.diode.v_forward {
            return Err(Error::BelowForward {
                v: v_ab,
                v_forward: self.diode.v_forward,
            });
        }
        Ok(self.reflection_coefficient(v_ab, omega)?.norm())
    }

    /// Achievable conducting magnitudes `[map(v_forward), map(v_ref)]`.
    pub fn magnitude_range(&self, omega: f64) -> Result<(f64, f64)> {
        Ok((
            self.magnitude_map(self.diode.v_forward, omega)?,
            self.magnitude_map(self.diode.v_ref, omega)?,
        ))
    }

    /// Bias voltage in `[v_forward, v_ref]` whose magnitude equals `target`
    /// within [`INVERSE_TOLERANCE`].
    ///
    /// Bisection keeps halving until the bracket collapses to adjacent
    /// floats, so the result is accurate well past the guaranteed tolerance.
    pub fn inverse_magnitude_map(&self, target: f64, omega: f64) -> Result<f64> {
        let (min, max) = self.magnitude_range(omega)?;
        self.inverse_in_range(target, omega, min, max)
    }

    pub(crate) fn inverse_in_range(&self, target: f64, omega: f64, min: f64, max: f64) -> Result<f64> {
        if !target.is_finite() || target < min || target > max {
            return Err(Error::OutOfRange { target, min, max });
        }
        let mut lo = self.diode.v_forward;
        let mut hi = self.diode.v_ref;
        if target == min {
            return Ok(lo);
        }
        if target == max {
            return Ok(hi);
        }
        for _ in 0..BISECTION_MAX_ITER {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.magnitude_unchecked(mid, omega) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (flo, fhi) = (
            self.magnitude_unchecked(lo, omega),
            self.magnitude_unchecked(hi, omega),
        );
        let v = if (target - flo).abs() <= (fhi - target).abs() {
            lo
        } else {
            hi
        };
        debug_assert!((self.magnitude_unchecked(v, omega) - target).abs() <= INVERSE_TOLERANCE);
        Ok(v)
    }

    fn magnitude_unchecked(&self, v_ab: f64, omega: f64) -> f64 {
        let z = self.diode.impedance_unchecked(v_ab, omega) + self.series_rf(omega);
        ((z - self.z0) / (z + self.z0)).norm()
    }

    /// Deterministic conducting-phase drift: `phase_jitter` at `v_forward`,
    /// falling linearly to zero at `v_ref` and beyond.
    pub fn jitter(&self, v_ab: f64) -> f64 {
        let d = &self.diode;
        let frac = ((d.v_ref - v_ab) / (d.v_ref - d.v_forward)).clamp(0.0, 1.0);
        self.phase_jitter * frac
    }

    /// Piecewise magnitude/phase of the reflection coefficient.
    pub fn rc_state(&self, v_ab: f64, omega: f64) -> RcState {
        if v_ab >= self.diode.v_forward {
            RcState {
                magnitude: self.magnitude_unchecked(v_ab, omega),
                phase: self.phi_on + self.jitter(v_ab),
            }
        } else {
            RcState {
                magnitude: self.alpha,
                phase: self.phi_off,
            }
        }
    }
}

fn gamma(z_eff: Complex64, z0: f64) -> Result<Complex64> {
    let den = z_eff + z0;
    if den.norm() == 0.0 {
        return Err(Error::Singularity);
    }
    Ok((z_eff - z0) / den)
}

/// Angular frequency for a carrier in Hz.
pub fn angular(freq_hz: f64) -> f64 {
    2.0 * PI * freq_hz
}
