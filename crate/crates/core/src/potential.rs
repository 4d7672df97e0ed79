//! Potential well family and its reduction to dimensionless form.
//!
//! The family is V(x) = μ·|x/a|^N for a real exponent N ≥ 2, together with
//! the infinite square well of half-width a as the steep-wall limit.
//! Reduction measures lengths in units of a and energies in
//! ε₀ = ħ²/(2ma²), turning the eigenproblem into −ψ'' + μ̃|z|^N ψ = Ẽψ
//! with z = x/a and μ̃ = μ/ε₀.

use crate::error::{Error, Result};
use crate::math;
use alloc::format;

/// Planck constant and particle mass entering the kinetic term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    hbar: f64,
    mass: f64,
}

impl PhysicalConstants {
    /// Both constants must be positive and finite.
    pub fn new(hbar: f64, mass: f64) -> Result<Self> {
        if !hbar.is_finite() || hbar <= 0.0 {
            return Err(Error::domain(format!("hbar must be positive, got {hbar}")));
        }
        if !mass.is_finite() || mass <= 0.0 {
            return Err(Error::domain(format!("mass must be positive, got {mass}")));
        }
        Ok(Self { hbar, mass })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }
}

/// A member of the potential well family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    /// V(x) = strength·|x/width|^exponent, exponent ≥ 2.
    PowerWell {
        strength: f64,
        width: f64,
        exponent: f64,
    },
    /// V = 0 on (−width, width) and infinite outside.
    InfiniteSquareWell { width: f64 },
}

impl Potential {
    /// Power-law well V(x) = μ·|x/a|^N.
    ///
    /// The absolute value makes odd and non-integer exponents well defined;
    /// exponents below 2 are rejected.
    pub fn power_well(strength: f64, width: f64, exponent: f64) -> Result<Self> {
        if !strength.is_finite() || strength <= 0.0 {
            return Err(Error::domain(format!(
                "well strength must be positive and finite, got {strength}"
            )));
        }
        if !width.is_finite() || width <= 0.0 {
            return Err(Error::domain(format!(
                "well width must be positive and finite, got {width}"
            )));
        }
        if !exponent.is_finite() || exponent < 2.0 {
            return Err(Error::domain(format!(
                "potential exponent must be a finite value >= 2, got {exponent}"
            )));
        }
        Ok(Self::PowerWell {
            strength,
            width,
            exponent,
        })
    }

    /// Infinite square well of half-width `width`.
    pub fn infinite_square_well(width: f64) -> Result<Self> {
        if !width.is_finite() || width <= 0.0 {
            return Err(Error::domain(format!(
                "well width must be positive and finite, got {width}"
            )));
        }
        Ok(Self::InfiniteSquareWell { width })
    }

    /// Potential value at `x`; the square well reports `f64::INFINITY`
    /// outside its walls.
    ///
    /// Powers are evaluated as exp(N·ln|x/a|), with V(0) = 0 split out, so
    /// large or fractional exponents neither overflow prematurely nor need
    /// integer special-casing.
    #[must_use]
    pub fn evaluate(&self, x: f64) -> f64 {
        match *self {
            Self::PowerWell {
                strength,
                width,
                exponent,
            } => {
                if x == 0.0 {
                    0.0
                } else {
                    strength * math::exp(exponent * math::ln(x.abs() / width))
                }
            }
            Self::InfiniteSquareWell { width } => {
                if x.abs() < width {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// Harmonic angular frequency ω = √(2μ/(m·a²)), defined only for N = 2.
    pub fn harmonic_frequency(&self, constants: &PhysicalConstants) -> Result<f64> {
        if let Self::PowerWell {
            strength,
            width,
            exponent,
        } = *self
        {
            if exponent == 2.0 {
                return Ok(math::sqrt(
                    2.0 * strength / (constants.mass() * width * width),
                ));
            }
        }
        Err(Error::domain(
            "harmonic frequency is defined only for the exponent-2 well",
        ))
    }

    /// Rescale to the dimensionless eigenproblem.
    #[must_use]
    pub fn reduce(&self, constants: &PhysicalConstants) -> ReducedProblem {
        let width = match *self {
            Self::PowerWell { width, .. } => width,
            Self::InfiniteSquareWell { width } => width,
        };
        let energy_scale =
            constants.hbar() * constants.hbar() / (2.0 * constants.mass() * width * width);
        let form = match *self {
            Self::PowerWell {
                strength, exponent, ..
            } => ReducedForm::Power {
                strength: strength / energy_scale,
                exponent,
            },
            Self::InfiniteSquareWell { .. } => ReducedForm::SquareWell,
        };
        ReducedProblem {
            form,
            energy_scale,
            length_scale: width,
        }
    }
}

/// Dimensionless shape of a reduced problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReducedForm {
    /// Ṽ(z) = μ̃·|z|^N.
    Power { strength: f64, exponent: f64 },
    /// Ṽ = 0 on (−1, 1), infinite outside.
    SquareWell,
}

/// A reduced eigenproblem together with the scales that undo the reduction:
/// E_physical = Ẽ·energy_scale and x = z·length_scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedProblem {
    form: ReducedForm,
    energy_scale: f64,
    length_scale: f64,
}

impl ReducedProblem {
    /// Reduced power-law problem with unit scales (μ̃ and N given directly).
    pub fn power(strength: f64, exponent: f64) -> Result<Self> {
        if !strength.is_finite() || strength <= 0.0 {
            return Err(Error::domain(format!(
                "reduced strength must be positive and finite, got {strength}"
            )));
        }
        if !exponent.is_finite() || exponent < 2.0 {
            return Err(Error::domain(format!(
                "potential exponent must be a finite value >= 2, got {exponent}"
            )));
        }
        Ok(Self {
            form: ReducedForm::Power { strength, exponent },
            energy_scale: 1.0,
            length_scale: 1.0,
        })
    }

    /// Reduced square well with unit scales.
    #[must_use]
    pub fn square_well() -> Self {
        Self {
            form: ReducedForm::SquareWell,
            energy_scale: 1.0,
            length_scale: 1.0,
        }
    }

    pub fn form(&self) -> ReducedForm {
        self.form
    }

    /// ε₀ = ħ²/(2ma²).
    pub fn energy_scale(&self) -> f64 {
        self.energy_scale
    }

    /// The well width a.
    pub fn length_scale(&self) -> f64 {
        self.length_scale
    }

    /// (μ̃, N) of a power-law problem; domain error for the square well.
    pub fn as_power(&self) -> Result<(f64, f64)> {
        match self.form {
            ReducedForm::Power { strength, exponent } => Ok((strength, exponent)),
            ReducedForm::SquareWell => Err(Error::domain(
                "operation requires a power-law potential, got the square well",
            )),
        }
    }

    /// Dimensionless potential Ṽ(z).
    #[must_use]
    pub fn potential_value(&self, z: f64) -> f64 {
        match self.form {
            ReducedForm::Power { strength, exponent } => {
                if z == 0.0 {
                    0.0
                } else {
                    strength * math::exp(exponent * math::ln(z.abs()))
                }
            }
            ReducedForm::SquareWell => {
                if z.abs() < 1.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }
}
