//! Potential specification and the constants derived from it without any
//! root finding.
//!
//! Naming follows the region layout of the potential: `m4`, `m2`, `0`, `2`,
//! `4` index the five constant pieces from left to right (outer barrier,
//! left well, central barrier, right well, outer barrier) and `m3`, `m1`,
//! `1`, `3` index the four boundaries between them.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical parameters of a five-piece double square well.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellSpec {
    pub hbar: f64,
    pub mass: f64,
    pub v_m4: f64,
    pub v_m2: f64,
    pub v_0: f64,
    pub v_2: f64,
    pub v_4: f64,
    /// Width of the left well.
    pub w_m2: f64,
    /// Width of the central barrier.
    pub w_0: f64,
    /// Width of the right well.
    pub w_2: f64,
    /// Position of the leftmost boundary.
    #[serde(default)]
    pub x_m3: f64,
}

/// Keys accepted in a spec file, in canonical order.
pub const SPEC_KEYS: [&str; 11] = [
    "hbar", "mass", "v_m4", "v_m2", "v_0", "v_2", "v_4", "w_m2", "w_0", "w_2", "x_m3",
];

impl WellSpec {
    /// Checks the ordering and positivity constraints, naming the first one
    /// that fails.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("hbar", self.hbar),
            ("mass", self.mass),
            ("v_m4", self.v_m4),
            ("v_m2", self.v_m2),
            ("v_0", self.v_0),
            ("v_2", self.v_2),
            ("v_4", self.v_4),
            ("w_m2", self.w_m2),
            ("w_0", self.w_0),
            ("w_2", self.w_2),
            ("x_m3", self.x_m3),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::InvalidSpec(format!(
                    "{name} must be finite, got {value}"
                )));
            }
        }
        let positive = [
            ("hbar > 0", self.hbar),
            ("mass > 0", self.mass),
            ("w_m2 > 0", self.w_m2),
            ("w_0 > 0", self.w_0),
            ("w_2 > 0", self.w_2),
        ];
        for (name, value) in positive {
            if value <= 0.0 {
                return Err(Error::InvalidSpec(format!("{name} violated ({value})")));
            }
        }
        let ordering = [
            ("v_m4 > v_m2", self.v_m4, self.v_m2),
            ("v_0 > v_m2", self.v_0, self.v_m2),
            ("v_0 > v_2", self.v_0, self.v_2),
            ("v_4 > v_2", self.v_4, self.v_2),
        ];
        for (name, hi, lo) in ordering {
            if hi <= lo {
                return Err(Error::InvalidSpec(format!(
                    "{name} violated ({hi} <= {lo})"
                )));
            }
        }
        Ok(())
    }

    pub fn x_m1(&self) -> f64 {
        self.x_m3 + self.w_m2
    }

    pub fn x_1(&self) -> f64 {
        self.x_m1() + self.w_0
    }

    pub fn x_3(&self) -> f64 {
        self.x_1() + self.w_2
    }

    /// Boundary positions `[x_m3, x_m1, x_1, x_3]`.
    pub fn boundaries(&self) -> [f64; 4] {
        [self.x_m3, self.x_m1(), self.x_1(), self.x_3()]
    }

    /// Open interval of energies for which every region has the character
    /// the wavefunction forms assume (oscillating in the wells, evanescent
    /// elsewhere).
    pub fn energy_band(&self) -> (f64, f64) {
        (
            self.v_m2.max(self.v_2),
            self.v_m4.min(self.v_0).min(self.v_4),
        )
    }

    /// `2m/hbar^2`, the factor turning an energy difference into a squared
    /// wave number.
    pub fn wave_factor(&self) -> f64 {
        2.0 * self.mass / (self.hbar * self.hbar)
    }

    /// Applies the antisymmetric well-floor shift `V_m2 += dv`, `V_2 -= dv`.
    pub fn with_well_shift(&self, delta_v: f64) -> WellSpec {
        WellSpec {
            v_m2: self.v_m2 + delta_v,
            v_2: self.v_2 - delta_v,
            ..*self
        }
    }

    /// Renders the spec in the key-value file format.
    pub fn to_spec_string(&self) -> String {
        let values = [
            self.hbar, self.mass, self.v_m4, self.v_m2, self.v_0, self.v_2, self.v_4, self.w_m2,
            self.w_0, self.w_2, self.x_m3,
        ];
        SPEC_KEYS
            .iter()
            .zip(values)
            .map(|(k, v)| format!("{k} = {v:e}\n"))
            .collect()
    }
}

impl FromStr for WellSpec {
    type Err = Error;

    /// Parses the flat `key = value` format. `#` starts a comment, blank
    /// lines are ignored, every key except `x_m3` is required.
    fn from_str(text: &str) -> Result<Self> {
        let mut values: BTreeMap<&str, f64> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            let key = key.trim();
            let key = SPEC_KEYS
                .iter()
                .copied()
                .find(|k| *k == key)
                .ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: format!("unknown key `{key}`"),
                })?;
            let value = value.trim();
            let parsed: f64 = value.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("`{value}` is not a number for key `{key}`"),
            })?;
            if values.insert(key, parsed).is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("duplicate key `{key}`"),
                });
            }
        }
        let get = |key: &str| -> Result<f64> {
            values.get(key).copied().ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("missing required key `{key}`"),
            })
        };
        let spec = WellSpec {
            hbar: get("hbar")?,
            mass: get("mass")?,
            v_m4: get("v_m4")?,
            v_m2: get("v_m2")?,
            v_0: get("v_0")?,
            v_2: get("v_2")?,
            v_4: get("v_4")?,
            w_m2: get("w_m2")?,
            w_0: get("w_0")?,
            w_2: get("w_2")?,
            x_m3: values.get("x_m3").copied().unwrap_or(0.0),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for WellSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_spec_string())
    }
}

/// Dimensionless and energy-scale constants of a spec.
///
/// `w_*` are the positive potential steps, `k_*` the confinement energies
/// `pi^2 hbar^2 / (2 m w^2)` of each finite region, `alpha` compares a well's
/// confinement energy to the step on each side, `beta` does the same with the
/// barrier's confinement energy, and `gamma` is the rescaled `alpha` that
/// controls the small-`alpha` series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedParams {
    pub w_m3: f64,
    pub w_m1: f64,
    pub w_1: f64,
    pub w_3: f64,
    pub k_m2: f64,
    pub k_0: f64,
    pub k_2: f64,
    pub alpha_m3: f64,
    pub alpha_m1: f64,
    pub alpha_1: f64,
    pub alpha_3: f64,
    pub beta_m1: f64,
    pub beta_1: f64,
    pub gamma_m3: f64,
    pub gamma_m1: f64,
    pub gamma_1: f64,
    pub gamma_3: f64,
}

fn confinement_energy(spec: &WellSpec, width: f64) -> f64 {
    PI * PI * spec.hbar * spec.hbar / (2.0 * spec.mass * width * width)
}

/// Derives every constant that needs no root finding.
pub fn reduce(spec: &WellSpec) -> Result<ReducedParams> {
    spec.validate()?;
    let w_m3 = spec.v_m4 - spec.v_m2;
    let w_m1 = spec.v_0 - spec.v_m2;
    let w_1 = spec.v_0 - spec.v_2;
    let w_3 = spec.v_4 - spec.v_2;
    let k_m2 = confinement_energy(spec, spec.w_m2);
    let k_0 = confinement_energy(spec, spec.w_0);
    let k_2 = confinement_energy(spec, spec.w_2);
    let alpha_m3 = (k_m2 / w_m3).sqrt();
    let alpha_m1 = (k_m2 / w_m1).sqrt();
    let alpha_1 = (k_2 / w_1).sqrt();
    let alpha_3 = (k_2 / w_3).sqrt();
    let left = PI + alpha_m3 + alpha_m1;
    let right = PI + alpha_1 + alpha_3;
    Ok(ReducedParams {
        w_m3,
        w_m1,
        w_1,
        w_3,
        k_m2,
        k_0,
        k_2,
        alpha_m3,
        alpha_m1,
        alpha_1,
        alpha_3,
        beta_m1: (k_0 / w_m1).sqrt(),
        beta_1: (k_0 / w_1).sqrt(),
        gamma_m3: PI * alpha_m3 / left,
        gamma_m1: PI * alpha_m1 / left,
        gamma_1: PI * alpha_1 / right,
        gamma_3: PI * alpha_3 / right,
    })
}

impl ReducedParams {
    /// Smallest of the four potential steps.
    pub fn min_step(&self) -> f64 {
        self.w_m3.min(self.w_m1).min(self.w_1).min(self.w_3)
    }
}

/// Whether an isolated well (infinitely thick barrier) with the given pair
/// of `alpha`s binds a state.
pub fn bound_state_exists(alpha_inner: f64, alpha_outer: f64) -> bool {
    let hi = alpha_inner.max(alpha_outer);
    let lo = alpha_inner.min(alpha_outer);
    hi <= 2.0 || lo >= hi * (PI / hi).cos()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> WellSpec {
        WellSpec {
            hbar: 1.0,
            mass: 2.0,
            v_m4: 1.0,
            v_m2: 0.0,
            v_0: 1.0,
            v_2: 0.0,
            v_4: 1.0,
            w_m2: 2.0 * PI / 3.0,
            w_0: 10.0 * PI / 3.0,
            w_2: 2.0 * PI / 3.0,
            x_m3: 0.0,
        }
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn worked_example_reduction() {
        let r = reduce(&worked()).unwrap();
        for alpha in [r.alpha_m3, r.alpha_m1, r.alpha_1, r.alpha_3] {
            assert!(rel(alpha, 0.75) < 1e-14);
        }
        assert!(rel(r.beta_m1, 0.15) < 1e-14);
        assert!(rel(r.beta_1, 0.15) < 1e-14);
        assert!(rel(r.k_m2, 9.0 / 16.0) < 1e-14);
        assert!(rel(r.k_2, 9.0 / 16.0) < 1e-14);
        assert!(rel(r.k_0, 9.0 / 400.0) < 1e-14);
        let gamma = 3.0 * PI / (4.0 * PI + 6.0);
        assert!(rel(gamma, 0.507626296843) < 1e-11);
        for g in [r.gamma_m3, r.gamma_m1, r.gamma_1, r.gamma_3] {
            assert!(rel(g, gamma) < 1e-14);
        }
    }

    #[test]
    fn beta_is_width_ratio_times_alpha() {
        let spec = WellSpec {
            v_m4: 3.0,
            v_m2: 0.2,
            v_2: -0.1,
            v_4: 1.7,
            w_m2: 1.3,
            w_0: 4.1,
            w_2: 0.9,
            ..worked()
        };
        let r = reduce(&spec).unwrap();
        assert!(rel(r.beta_m1, spec.w_m2 / spec.w_0 * r.alpha_m1) < 1e-12);
        assert!(rel(r.beta_1, spec.w_2 / spec.w_0 * r.alpha_1) < 1e-12);
        assert!(r.gamma_m3 < r.alpha_m3 && r.gamma_m1 < r.alpha_m1);
        assert!(r.gamma_1 < r.alpha_1 && r.gamma_3 < r.alpha_3);
    }

    #[test]
    fn scaling_leaves_dimensionless_constants_unchanged() {
        let base = reduce(&worked()).unwrap();
        let lambda: f64 = 7.3;
        let s = worked();
        let scaled = WellSpec {
            v_m4: s.v_m4 * lambda,
            v_m2: s.v_m2 * lambda,
            v_0: s.v_0 * lambda,
            v_2: s.v_2 * lambda,
            v_4: s.v_4 * lambda,
            w_m2: s.w_m2 / lambda.sqrt(),
            w_0: s.w_0 / lambda.sqrt(),
            w_2: s.w_2 / lambda.sqrt(),
            ..s
        };
        let r = reduce(&scaled).unwrap();
        let pairs = [
            (r.alpha_m3, base.alpha_m3),
            (r.alpha_m1, base.alpha_m1),
            (r.alpha_1, base.alpha_1),
            (r.alpha_3, base.alpha_3),
            (r.beta_m1, base.beta_m1),
            (r.beta_1, base.beta_1),
            (r.gamma_m1, base.gamma_m1),
            (r.gamma_3, base.gamma_3),
        ];
        for (a, b) in pairs {
            assert!(rel(a, b) < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn reduce_is_bit_deterministic() {
        assert_eq!(reduce(&worked()).unwrap(), reduce(&worked()).unwrap());
    }

    #[test]
    fn validation_names_the_violated_constraint() {
        let bad = WellSpec {
            v_0: -0.5,
            ..worked()
        };
        let msg = bad.validate().unwrap_err().to_string();
        assert!(msg.contains("v_0 > v_m2"), "{msg}");
        let bad = WellSpec {
            v_2: 1.0,
            ..worked()
        };
        let msg = bad.validate().unwrap_err().to_string();
        assert!(msg.contains("v_0 > v_2"), "{msg}");
        let bad = WellSpec {
            w_0: 0.0,
            ..worked()
        };
        assert!(bad.validate().unwrap_err().to_string().contains("w_0 > 0"));
        let bad = WellSpec {
            mass: -1.0,
            ..worked()
        };
        assert!(bad.validate().unwrap_err().to_string().contains("mass > 0"));
        // equality is rejected, not treated as marginal
        let bad = WellSpec {
            v_4: 0.0,
            ..worked()
        };
        assert!(bad
            .validate()
            .unwrap_err()
            .to_string()
            .contains("v_4 > v_2"));
    }

    #[test]
    fn bound_state_existence() {
        assert!(bound_state_exists(0.75, 0.75));
        assert!(bound_state_exists(10.0, 10.0));
        assert!(!bound_state_exists(0.1, 3.0));
        assert!(bound_state_exists(0.1, 2.0));
        for a in [0.1, 0.5, 1.0, 2.0, 5.0, 20.0] {
            assert!(bound_state_exists(a, a));
        }
    }

    #[test]
    fn parse_spec_file() {
        let text =
            "# worked example\nhbar = 1\nmass = 2.0\nv_m4 = 1\nv_m2 = 0\nv_0 = 1 # barrier\n\
                    v_2 = 0\nv_4 = 1e0\nw_m2 = 2.0943951023931953\nw_0 = 1.0471975511965976e1\n\
                    w_2 = 2.0943951023931953\n";
        let spec: WellSpec = text.parse().unwrap();
        assert_eq!(spec.x_m3, 0.0);
        assert_eq!(spec.v_4, 1.0);
        assert!(rel(spec.w_0, 10.0 * PI / 3.0) < 1e-15);
        let round: WellSpec = spec.to_spec_string().parse().unwrap();
        assert_eq!(round, spec);
    }

    #[test]
    fn parse_rejects_unknown_missing_and_duplicate_keys() {
        let base = worked().to_spec_string();
        let err = format!("{base}depth = 3\n")
            .parse::<WellSpec>()
            .unwrap_err();
        assert!(err.to_string().contains("unknown key `depth`"));
        let missing: String = base
            .lines()
            .filter(|l| !l.starts_with("w_0"))
            .map(|l| format!("{l}\n"))
            .collect();
        assert!(missing
            .parse::<WellSpec>()
            .unwrap_err()
            .to_string()
            .contains("missing required key `w_0`"));
        let dup = format!("{base}hbar = 1\n");
        assert!(dup
            .parse::<WellSpec>()
            .unwrap_err()
            .to_string()
            .contains("duplicate"));
        let junk = base.replace("mass = ", "mass = two");
        assert!(matches!(junk.parse::<WellSpec>(), Err(Error::Parse { .. })));
        let invalid = base.replace("v_0 = 1e0", "v_0 = -1");
        assert!(matches!(
            invalid.parse::<WellSpec>(),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn derived_boundaries() {
        let spec = WellSpec {
            x_m3: -2.0,
            ..worked()
        };
        let [a, b, c, d] = spec.boundaries();
        assert_eq!(a, -2.0);
        assert!((b - (a + spec.w_m2)).abs() < 1e-15);
        assert!((c - (b + spec.w_0)).abs() < 1e-14);
        assert!((d - (c + spec.w_2)).abs() < 1e-14);
        assert_eq!(spec.energy_band(), (0.0, 1.0));
    }
}
