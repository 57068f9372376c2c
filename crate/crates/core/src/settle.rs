//! Fermionic fillings whose level order depends on `φ` while `φ` depends on
//! the filling's `λ`: refill until the filling repeats.

use crate::error::{Error, Result};
use crate::qnum::GroundStateResult;

const MAX_FIXED_POINT: usize = 20;

/// A solution together with the self-consistent filling it was computed on.
#[derive(Debug, Clone, PartialEq)]
pub struct SettledFilling<T> {
    pub solution: T,
    pub filling: GroundStateResult,
    /// Refill steps until the filling repeated.
    pub iterations: usize,
    pub warnings: Vec<String>,
}

/// `phis` maps a filling to the `φ` used for the next refill plus whatever
/// the final solve needs; `solve` returns the energy and the solution.
pub(crate) fn settle<P, S, Fill, Phis, Solve>(
    fill: Fill,
    phis: Phis,
    solve: Solve,
) -> Result<SettledFilling<S>>
where
    P: Copy,
    Fill: Fn(f64) -> Result<GroundStateResult>,
    Phis: Fn(&GroundStateResult) -> Result<(f64, P)>,
    Solve: Fn(&GroundStateResult, P) -> Result<(f64, S)>,
{
    let mut history: Vec<(GroundStateResult, P)> = Vec::new();
    let mut filling = fill(2.0)?;
    for it in 1..=MAX_FIXED_POINT {
        let (phi, p) = phis(&filling)?;
        let next = fill(phi)?;
        if next.same_filling(&filling) {
            let (_, solution) = solve(&next, p)?;
            return Ok(SettledFilling {
                solution,
                filling: next,
                iterations: it,
                warnings: Vec::new(),
            });
        }
        if let Some(start) = history.iter().position(|(f, _)| f.same_filling(&next)) {
            // Cycle: keep the member with the lowest energy.
            let mut cycle = history.split_off(start);
            cycle.push((filling, p));
            let mut best: Option<(f64, GroundStateResult, S)> = None;
            for (f, p) in cycle {
                let (e, s) = solve(&f, p)?;
                if best.as_ref().is_none_or(|b| e < b.0) {
                    best = Some((e, f, s));
                }
            }
            let (_, filling, solution) = best.expect("cycle is non-empty");
            return Ok(SettledFilling {
                solution,
                filling,
                iterations: it,
                warnings: vec![format!(
                    "filling/phi iteration entered a cycle after {it} steps; kept the lowest-energy member"
                )],
            });
        }
        history.push((filling, p));
        filling = next;
    }
    Err(Error::FillingNotSettled {
        iterations: MAX_FIXED_POINT,
    })
}
