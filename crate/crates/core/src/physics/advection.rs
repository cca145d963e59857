use super::{Axis, CharBasis, ConservationLaw};

/// Linear scalar advection `u_t + a_x u_x + a_y u_y = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Advection {
    pub ax: f64,
    pub ay: f64,
}

impl Advection {
    pub fn new_1d(speed: f64) -> Self {
        Self { ax: speed, ay: 0.0 }
    }

    fn speed(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.ax,
            Axis::Y => self.ay,
        }
    }
}

impl Default for Advection {
    fn default() -> Self {
        Self::new_1d(1.0)
    }
}

impl ConservationLaw<1> for Advection {
    fn name(&self) -> &'static str {
        "advection"
    }

    #[inline]
    fn flux(&self, u: &[f64; 1], axis: Axis) -> [f64; 1] {
        [self.speed(axis) * u[0]]
    }

    #[inline]
    fn max_wave_speed(&self, _u: &[f64; 1], axis: Axis) -> f64 {
        self.speed(axis).abs()
    }

    fn check_state(&self, u: &[f64; 1]) -> std::result::Result<(), String> {
        if u[0].is_finite() {
            Ok(())
        } else {
            Err(format!("non-finite value {}", u[0]))
        }
    }

    fn to_primitive(&self, u: &[f64; 1]) -> [f64; 1] {
        *u
    }

    fn from_primitive(&self, v: &[f64; 1]) -> [f64; 1] {
        *v
    }

    fn characteristic_basis(&self, _a: &[f64; 1], _b: &[f64; 1], _axis: Axis) -> CharBasis<1> {
        CharBasis::identity()
    }

    fn indicator_quantity(&self, u: &[f64; 1]) -> f64 {
        u[0]
    }

    fn interface_average(&self, a: &[f64; 1], b: &[f64; 1]) -> f64 {
        0.5 * (a[0] + b[0])
    }

    fn reflect(&self, u: &[f64; 1], _axis: Axis) -> [f64; 1] {
        *u
    }
}
