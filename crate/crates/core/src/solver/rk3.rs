use crate::error::Result;

/// Buffers reused across steps.
#[derive(Debug, Clone, Default)]
pub struct Rk3Workspace<const N: usize> {
    stage: Vec<[f64; N]>,
    rhs: Vec<[f64; N]>,
}

/// One Shu–Osher TVD-RK3 step, in place.
///
/// `rhs(u, t, out)` writes `du/dt`; `check(u)` validates each stage value.
/// Errors are tagged with the stage (1-3) and the stage time.
pub fn rk3_step<const N: usize, R, C>(
    u: &mut [[f64; N]],
    t: f64,
    dt: f64,
    work: &mut Rk3Workspace<N>,
    mut rhs: R,
    mut check: C,
) -> Result<()>
where
    R: FnMut(&[[f64; N]], f64, &mut [[f64; N]]) -> Result<()>,
    C: FnMut(&[[f64; N]]) -> Result<()>,
{
    let n = u.len();
    work.stage.resize(n, [0.0; N]);
    work.rhs.resize(n, [0.0; N]);
    let (stage, r) = (&mut work.stage, &mut work.rhs);

    rhs(u, t, r).map_err(|e| e.at_stage(1, t))?;
    for i in 0..n {
        for k in 0..N {
            stage[i][k] = u[i][k] + dt * r[i][k];
        }
    }
    check(stage).map_err(|e| e.at_stage(1, t))?;

    rhs(stage, t + dt, r).map_err(|e| e.at_stage(2, t + dt))?;
    for i in 0..n {
        for k in 0..N {
            stage[i][k] = 0.75 * u[i][k] + 0.25 * (stage[i][k] + dt * r[i][k]);
        }
    }
    check(stage).map_err(|e| e.at_stage(2, t + dt))?;

    let th = t + 0.5 * dt;
    rhs(stage, th, r).map_err(|e| e.at_stage(3, th))?;
    for i in 0..n {
        for k in 0..N {
            u[i][k] = u[i][k] / 3.0 + 2.0 / 3.0 * (stage[i][k] + dt * r[i][k]);
        }
    }
    check(u).map_err(|e| e.at_stage(3, th))?;
    Ok(())
}
