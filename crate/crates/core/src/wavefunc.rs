//! Piecewise eigenfunctions.
//!
//! Each state is an exponential tail, a cosine, a `cosh` (ground) or `sinh`
//! (excited) in the barrier, a cosine and a second tail. Positions of the
//! cosine peaks follow from the outer-wall phases, the barrier extremum or
//! node from the split `r_left` of the barrier exponent. Amplitudes are
//! chained from the barrier outwards by value matching and the whole
//! function is normalized analytically.

use std::f64::consts::PI;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isolated::{Side, WellPair};
use crate::params::{ReducedParams, WellSpec};
use crate::tunneling::{CoupledSolution, Parity};

/// Relative continuity residual above which `assemble` rejects its inputs.
pub const MATCHING_LIMIT: f64 = 1e-6;

/// Samples required per shortest well wavelength in `superpose`.
pub const MIN_SAMPLES_PER_WAVELENGTH: f64 = 16.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Region {
    OuterLeft,
    WellLeft,
    Barrier,
    WellRight,
    OuterRight,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionModel {
    pub parity: Parity,
    pub energy: f64,
    /// `x_m3, x_m1, x_1, x_3`
    pub boundaries: [f64; 4],
    pub extremum_left: f64,
    pub extremum_right: f64,
    pub barrier_node: f64,
    pub kappa_m4: f64,
    pub kappa_0: f64,
    pub kappa_4: f64,
    pub k_m2: f64,
    pub k_2: f64,
    /// Magnitudes; the excited state carries an extra minus sign left of the
    /// node.
    pub amp_m4: f64,
    pub amp_m2: f64,
    pub amp_0: f64,
    pub amp_2: f64,
    pub amp_4: f64,
    pub phase_m3: f64,
    pub phase_m1: f64,
    pub phase_1: f64,
    pub phase_3: f64,
    /// `ln(amp_0)` kept separately so barrier integrals survive when
    /// `amp_0 * cosh(r)` would overflow.
    log_amp_0: f64,
}

/// How the barrier extremum is placed.
enum NodeRule {
    /// `x_m1 + r_left / kappa_0`
    FromLeft(f64),
    /// Exact value and slope matching at both barrier edges, averaged.
    Matched,
}

/// `cosh(t) exp(-shift)` or `sinh(t) exp(-shift)` without overflow.
fn scaled_hyp(parity: Parity, t: f64, shift: f64) -> f64 {
    let (a, b) = ((t - shift).exp(), (-t - shift).exp());
    match parity {
        Parity::Ground => 0.5 * (a + b),
        Parity::Excited => 0.5 * (a - b),
    }
}

/// `int_0^r f(t)^2 dt` for `f = cosh` or `sinh`, times `exp(-2 shift)`.
fn scaled_hyp_square_integral(parity: Parity, r: f64, shift: f64) -> f64 {
    // sinh(2r)/4 -+ r/2
    let quarter_sinh = 0.125 * ((2.0 * r - 2.0 * shift).exp() - (-2.0 * r - 2.0 * shift).exp());
    let linear = 0.5 * r * (-2.0 * shift).exp();
    match parity {
        Parity::Ground => quarter_sinh + linear,
        Parity::Excited => quarter_sinh - linear,
    }
}

/// `int_a^b cos^2(k (x - c)) dx`
fn cos_square_integral(k: f64, c: f64, a: f64, b: f64) -> f64 {
    0.5 * (b - a) + ((2.0 * k * (b - c)).sin() - (2.0 * k * (a - c)).sin()) / (4.0 * k)
}

impl WavefunctionModel {
    pub fn assemble(
        spec: &WellSpec,
        reduced: &ReducedParams,
        solution: &CoupledSolution,
    ) -> Result<WavefunctionModel> {
        let model = Self::build(
            spec,
            reduced,
            solution.parity,
            solution.energy,
            NodeRule::FromLeft(solution.r_left),
        )?;
        let worst = model.max_continuity_residual();
        if !(worst <= MATCHING_LIMIT) {
            return Err(Error::MatchingResidualTooLarge(worst));
        }
        Ok(model)
    }

    /// Model at a given (typically exact) energy, with the barrier extremum
    /// fixed by matching the logarithmic derivative at both barrier edges.
    pub fn assemble_exact(
        spec: &WellSpec,
        reduced: &ReducedParams,
        parity: Parity,
        energy: f64,
    ) -> Result<WavefunctionModel> {
        Self::build(spec, reduced, parity, energy, NodeRule::Matched)
    }

    fn build(
        spec: &WellSpec,
        reduced: &ReducedParams,
        parity: Parity,
        energy: f64,
        rule: NodeRule,
    ) -> Result<WavefunctionModel> {
        let (lower, upper) = spec.energy_band();
        if !(energy > lower && energy < upper) {
            return Err(Error::EnergyOutOfBand {
                energy,
                lower,
                upper,
            });
        }
        let f = spec.wave_factor();
        let kappa_m4 = (f * (spec.v_m4 - energy)).sqrt();
        let kappa_0 = (f * (spec.v_0 - energy)).sqrt();
        let kappa_4 = (f * (spec.v_4 - energy)).sqrt();
        let k_m2 = (f * (energy - spec.v_m2)).sqrt();
        let k_2 = (f * (energy - spec.v_2)).sqrt();
        let boundaries = spec.boundaries();
        let [x_m3, x_m1, x_1, x_3] = boundaries;

        let y_left = ((energy - spec.v_m2) / reduced.k_m2).sqrt();
        let y_right = ((energy - spec.v_2) / reduced.k_2).sqrt();
        let phase_m3 = (reduced.alpha_m3 * y_left).asin();
        let phase_3 = (reduced.alpha_3 * y_right).asin();
        let extremum_left = x_m3 + (0.5 * PI - phase_m3) / k_m2;
        let extremum_right = x_3 - (0.5 * PI - phase_3) / k_2;
        let phase_m1 = 0.5 * PI - k_m2 * (x_m1 - extremum_left);
        let phase_1 = 0.5 * PI - k_2 * (extremum_right - x_1);

        let barrier_node = match rule {
            NodeRule::FromLeft(r_left) => x_m1 + r_left / kappa_0,
            NodeRule::Matched => {
                // ground: tan(phase) = (k / kappa_0) coth(r); excited: tanh
                let edge_exponent = |k: f64, phase: f64| match parity {
                    Parity::Ground => (k / (kappa_0 * phase.tan())).atanh(),
                    Parity::Excited => (kappa_0 * phase.tan() / k).atanh(),
                };
                let from_left = x_m1 + edge_exponent(k_m2, phase_m1) / kappa_0;
                let from_right = x_1 - edge_exponent(k_2, phase_1) / kappa_0;
                0.5 * (from_left + from_right)
            }
        };
        if !(barrier_node > x_m1 && barrier_node < x_1) {
            return Err(Error::MatchingResidualTooLarge(f64::INFINITY));
        }
        let r_left = kappa_0 * (barrier_node - x_m1);
        let r_right = kappa_0 * (x_1 - barrier_node);
        let shift = r_left.max(r_right);

        // provisional amp_0 = exp(-shift)
        let amp_m2 = scaled_hyp(parity, r_left, shift) / phase_m1.sin();
        let amp_2 = scaled_hyp(parity, r_right, shift) / phase_1.sin();
        let amp_m4 = amp_m2 * phase_m3.sin();
        let amp_4 = amp_2 * phase_3.sin();

        let norm = amp_m4 * amp_m4 / (2.0 * kappa_m4)
            + amp_m2 * amp_m2 * cos_square_integral(k_m2, extremum_left, x_m3, x_m1)
            + (scaled_hyp_square_integral(parity, r_left, shift)
                + scaled_hyp_square_integral(parity, r_right, shift))
                / kappa_0
            + amp_2 * amp_2 * cos_square_integral(k_2, extremum_right, x_1, x_3)
            + amp_4 * amp_4 / (2.0 * kappa_4);
        let scale = 1.0 / norm.sqrt();
        let log_amp_0 = scale.ln() - shift;

        Ok(WavefunctionModel {
            parity,
            energy,
            boundaries,
            extremum_left,
            extremum_right,
            barrier_node,
            kappa_m4,
            kappa_0,
            kappa_4,
            k_m2,
            k_2,
            amp_m4: amp_m4 * scale,
            amp_m2: amp_m2 * scale,
            amp_0: log_amp_0.exp(),
            amp_2: amp_2 * scale,
            amp_4: amp_4 * scale,
            phase_m3,
            phase_m1,
            phase_1,
            phase_3,
            log_amp_0,
        })
    }

    fn region(&self, x: f64) -> Region {
        let [x_m3, x_m1, x_1, x_3] = self.boundaries;
        if x < x_m3 {
            Region::OuterLeft
        } else if x < x_m1 {
            Region::WellLeft
        } else if x < x_1 {
            Region::Barrier
        } else if x < x_3 {
            Region::WellRight
        } else {
            Region::OuterRight
        }
    }

    fn left_sign(&self) -> f64 {
        match self.parity {
            Parity::Ground => 1.0,
            Parity::Excited => -1.0,
        }
    }

    /// `(psi, psi')` using the closed form of one region, also outside it.
    fn eval_in(&self, region: Region, x: f64) -> (f64, f64) {
        let [x_m3, _, _, x_3] = self.boundaries;
        match region {
            Region::OuterLeft => {
                let v = self.left_sign() * self.amp_m4 * (self.kappa_m4 * (x - x_m3)).exp();
                (v, self.kappa_m4 * v)
            }
            Region::WellLeft => {
                let t = self.k_m2 * (x - self.extremum_left);
                let a = self.left_sign() * self.amp_m2;
                (a * t.cos(), -a * self.k_m2 * t.sin())
            }
            Region::Barrier => {
                let t = self.kappa_0 * (x - self.barrier_node);
                let (e_plus, e_minus) = ((t + self.log_amp_0).exp(), (-t + self.log_amp_0).exp());
                let (cosh, sinh) = (0.5 * (e_plus + e_minus), 0.5 * (e_plus - e_minus));
                match self.parity {
                    Parity::Ground => (cosh, self.kappa_0 * sinh),
                    Parity::Excited => (sinh, self.kappa_0 * cosh),
                }
            }
            Region::WellRight => {
                let t = self.k_2 * (x - self.extremum_right);
                (self.amp_2 * t.cos(), -self.amp_2 * self.k_2 * t.sin())
            }
            Region::OuterRight => {
                let v = self.amp_4 * (self.kappa_4 * (x_3 - x)).exp();
                (v, -self.kappa_4 * v)
            }
        }
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.eval_in(self.region(x), x).0
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.eval_in(self.region(x), x).1
    }

    /// Largest `|psi|`, reached at one of the two cosine peaks.
    pub fn max_abs(&self) -> f64 {
        self.amp_m2.max(self.amp_2)
    }

    /// Bound on `|psi'|` from the two cosine slopes.
    pub fn max_abs_derivative(&self) -> f64 {
        (self.amp_m2 * self.k_m2).max(self.amp_2 * self.k_2)
    }

    /// `(value, slope)` jumps at the four boundaries, relative to
    /// `max_abs` and `max_abs_derivative`.
    pub fn continuity_residuals(&self) -> [(f64, f64); 4] {
        use Region::*;
        let pairs = [
            (OuterLeft, WellLeft),
            (WellLeft, Barrier),
            (Barrier, WellRight),
            (WellRight, OuterRight),
        ];
        let (vmax, dmax) = (self.max_abs(), self.max_abs_derivative());
        let mut out = [(0.0, 0.0); 4];
        for (i, (&x, &(left, right))) in self.boundaries.iter().zip(pairs.iter()).enumerate() {
            let (v0, d0) = self.eval_in(left, x);
            let (v1, d1) = self.eval_in(right, x);
            out[i] = ((v1 - v0).abs() / vmax, (d1 - d0).abs() / dmax);
        }
        out
    }

    pub fn max_continuity_residual(&self) -> f64 {
        self.continuity_residuals()
            .iter()
            .fold(0.0, |m: f64, &(v, d)| m.max(v).max(d))
    }

    /// `(P_L, P_R)`: exact integrals of `psi^2` on either side of the barrier
    /// extremum or node.
    pub fn probabilities(&self) -> (f64, f64) {
        let [x_m3, x_m1, x_1, x_3] = self.boundaries;
        let r_left = self.kappa_0 * (self.barrier_node - x_m1);
        let r_right = self.kappa_0 * (x_1 - self.barrier_node);
        let barrier =
            |r: f64| scaled_hyp_square_integral(self.parity, r, -self.log_amp_0) / self.kappa_0;
        let left = self.amp_m4 * self.amp_m4 / (2.0 * self.kappa_m4)
            + self.amp_m2
                * self.amp_m2
                * cos_square_integral(self.k_m2, self.extremum_left, x_m3, x_m1)
            + barrier(r_left);
        let right = barrier(r_right)
            + self.amp_2
                * self.amp_2
                * cos_square_integral(self.k_2, self.extremum_right, x_1, x_3)
            + self.amp_4 * self.amp_4 / (2.0 * self.kappa_4);
        (left, right)
    }

    /// `A^2 w / (2 U Y)` per side, the probabilities the infinite-barrier
    /// normalization would assign to these amplitudes.
    pub fn closed_form_probabilities(&self, spec: &WellSpec, wells: &WellPair) -> (f64, f64) {
        let side = |amp: f64, w: f64, s: Side| {
            let well = wells.side(s);
            0.5 * amp * amp * w / (well.u_cap * well.y_cap)
        };
        (
            side(self.amp_m2, spec.w_m2, Side::Left),
            side(self.amp_2, spec.w_2, Side::Right),
        )
    }

    pub fn sample(&self, x_min: f64, x_max: f64, n_points: usize) -> Result<Vec<SamplePoint>> {
        Ok(uniform_grid(x_min, x_max, n_points)?
            .into_iter()
            .map(|x| {
                let (psi, dpsi) = self.eval_in(self.region(x), x);
                SamplePoint { x, psi, dpsi }
            })
            .collect())
    }
}

/// Endpoint-inclusive uniform grid.
pub fn uniform_grid(x_min: f64, x_max: f64, n_points: usize) -> Result<Vec<f64>> {
    if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
        return Err(Error::BadRange(format!(
            "need x_min < x_max, got [{x_min}, {x_max}]"
        )));
    }
    if n_points < 2 {
        return Err(Error::BadRange(format!(
            "need at least 2 points, got {n_points}"
        )));
    }
    let step = (x_max - x_min) / (n_points - 1) as f64;
    Ok((0..n_points)
        .map(|i| {
            if i + 1 == n_points {
                x_max
            } else {
                x_min + step * i as f64
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub x: f64,
    pub psi: f64,
    pub dpsi: f64,
}

/// Writes `x,psi,dpsi` rows with 17 significant digits.
pub fn write_csv<W: Write>(points: &[SamplePoint], mut out: W) -> io::Result<()> {
    out.write_all(b"x,psi,dpsi\n")?;
    for p in points {
        writeln!(out, "{:.16e},{:.16e},{:.16e}", p.x, p.psi, p.dpsi)?;
    }
    out.flush()
}

/// Bound state of one well with the central barrier extending to infinity,
/// at the isolated-well energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleWellState {
    pub side: Side,
    pub energy: f64,
    pub x_outer: f64,
    pub x_inner: f64,
    pub extremum: f64,
    pub k: f64,
    pub kappa_outer: f64,
    pub kappa_barrier: f64,
    pub amp_outer: f64,
    pub amp_well: f64,
    pub amp_barrier: f64,
}

impl SingleWellState {
    pub fn build(spec: &WellSpec, wells: &WellPair, side: Side) -> SingleWellState {
        let well = wells.side(side);
        let f = spec.wave_factor();
        let (v_well, v_outer, width, x_outer, x_inner) = match side {
            Side::Left => (spec.v_m2, spec.v_m4, spec.w_m2, spec.x_m3, spec.x_m1()),
            Side::Right => (spec.v_2, spec.v_4, spec.w_2, spec.x_3(), spec.x_1()),
        };
        let k = PI * well.y_cap / width;
        let energy = v_well + k * k / f;
        let kappa_outer = (f * (v_outer - energy)).sqrt();
        let kappa_barrier = (f * (spec.v_0 - energy)).sqrt();
        let phase_outer = well.s_outer.asin();
        let phase_inner = well.s_inner.asin();
        // distance from the outer wall to the peak
        let offset = (0.5 * PI - phase_outer) / k;
        let extremum = match side {
            Side::Left => x_outer + offset,
            Side::Right => x_outer - offset,
        };
        let (so, si) = (phase_outer.sin(), phase_inner.sin());
        let norm = so * so / (2.0 * kappa_outer)
            + cos_square_integral(k, 0.0, -offset, width - offset)
            + si * si / (2.0 * kappa_barrier);
        let amp_well = 1.0 / norm.sqrt();
        SingleWellState {
            side,
            energy,
            x_outer,
            x_inner,
            extremum,
            k,
            kappa_outer,
            kappa_barrier,
            amp_outer: amp_well * so,
            amp_well,
            amp_barrier: amp_well * si,
        }
    }

    /// `(psi, psi')`
    pub fn evaluate(&self, x: f64) -> (f64, f64) {
        // distance measured from the outer wall towards the barrier
        let (d, dir) = match self.side {
            Side::Left => (x - self.x_outer, 1.0),
            Side::Right => (self.x_outer - x, -1.0),
        };
        let width = (self.x_inner - self.x_outer).abs();
        let (v, dv) = if d < 0.0 {
            let v = self.amp_outer * (self.kappa_outer * d).exp();
            (v, self.kappa_outer * v)
        } else if d < width {
            let t = self.k * (d - (self.extremum - self.x_outer).abs());
            (self.amp_well * t.cos(), -self.amp_well * self.k * t.sin())
        } else {
            let v = self.amp_barrier * (-self.kappa_barrier * (d - width)).exp();
            (v, -self.kappa_barrier * v)
        };
        (v, dir * dv)
    }
}

/// Two-level approximation `sqrt(P_L) psi_L + sqrt(P_R) psi_R` (ground) or
/// `-sqrt(P_R) psi_L + sqrt(P_L) psi_R` (excited) on `grid`, where
/// `prob_left` and `prob_right` are the ground-state probabilities.
pub fn superpose(
    left_state: &SingleWellState,
    right_state: &SingleWellState,
    prob_left: f64,
    prob_right: f64,
    parity: Parity,
    grid: &[f64],
) -> Result<Vec<SamplePoint>> {
    if grid.len() < 2 {
        return Err(Error::BadRange(format!(
            "need at least 2 grid points, got {}",
            grid.len()
        )));
    }
    let limit = 2.0 * PI / left_state.k.max(right_state.k) / MIN_SAMPLES_PER_WAVELENGTH;
    let spacing = grid
        .windows(2)
        .fold(0.0, |m: f64, w| m.max((w[1] - w[0]).abs()));
    if spacing > limit {
        return Err(Error::GridTooCoarse { spacing, limit });
    }
    let (cl, cr) = match parity {
        Parity::Ground => (prob_left.sqrt(), prob_right.sqrt()),
        Parity::Excited => (-prob_right.sqrt(), prob_left.sqrt()),
    };
    Ok(grid
        .iter()
        .map(|&x| {
            let (l, dl) = left_state.evaluate(x);
            let (r, dr) = right_state.evaluate(x);
            SamplePoint {
                x,
                psi: cl * l + cr * r,
                dpsi: cl * dl + cr * dr,
            }
        })
        .collect())
}
