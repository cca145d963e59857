use super::{Axis, ConservationLaw};
use crate::error::{Error, Result};

/// Local Lax-Friedrichs flux `½(F_L + F_R) − ½α(u_R − u_L)`.
///
/// For linear advection α equals the speed, which gives the pure upwind flux.
#[inline]
pub fn lax_friedrichs<const N: usize, L: ConservationLaw<N>>(
    law: &L,
    ul: &[f64; N],
    ur: &[f64; N],
    axis: Axis,
) -> [f64; N] {
    let fl = law.flux(ul, axis);
    let fr = law.flux(ur, axis);
    let alpha = law.max_wave_speed(ul, axis).max(law.max_wave_speed(ur, axis));
    let mut out = [0.0; N];
    for k in 0..N {
        out[k] = 0.5 * (fl[k] + fr[k]) - 0.5 * alpha * (ur[k] - ul[k]);
    }
    out
}

/// As [`lax_friedrichs`] but validates both traces first, blaming
/// `cells.0` for a bad left trace and `cells.1` for a bad right one.
#[inline]
pub fn lax_friedrichs_checked<const N: usize, L: ConservationLaw<N>>(
    law: &L,
    ul: &[f64; N],
    ur: &[f64; N],
    axis: Axis,
    cells: (usize, usize),
) -> Result<[f64; N]> {
    for (u, cell, side) in [(ul, cells.0, "left"), (ur, cells.1, "right")] {
        law.check_state(u)
            .map_err(|d| Error::positivity(cell, None, format!("{side} interface trace: {d}")))?;
    }
    Ok(lax_friedrichs(law, ul, ur, axis))
}
