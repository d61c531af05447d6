use std::fmt::Write as _;

use doublewell::example::{GoldenCheck, Tolerance};
use doublewell::tunneling::delta_e_closed_form;
use doublewell::{
    CoupledSolution, ErrorReport, FixedPoint, PerturbedLevels, ReducedParams, SplittingResult,
    SymmetricBase, TunnelingModel, WellPair, WellSpec,
};
use serde::{Deserialize, Serialize};

/// Everything one invocation computed. Floats are serialized at full
/// round-trip precision; the stderr table shows 12 significant digits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub spec: WellSpec,
    pub reduced: ReducedParams,
    pub wells: WellPair,
    pub ground_fixed: FixedPoint,
    pub excited_fixed: FixedPoint,
    pub ground: CoupledSolution,
    pub excited: CoupledSolution,
    pub splitting: SplittingResult,
    /// `2 a K0 sqrt(p) / pi^2` with the mean `a` and the ground-state `p`.
    pub delta_e_closed_form: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<PerturbationBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub golden: Option<GoldenBlock>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationBlock {
    /// `delta_v`, `v` or `ratio`.
    pub input_flag: String,
    pub input_value: f64,
    pub a_sym: f64,
    pub e_bar: f64,
    pub delta_e: f64,
    pub f_coef: f64,
    pub g_coef: f64,
    pub v: f64,
    pub delta_v: f64,
    pub e_left: f64,
    pub e_right: f64,
    pub e0: f64,
    pub e1: f64,
    pub level_factor: f64,
    pub prob_ratio: f64,
}

impl PerturbationBlock {
    pub fn new(
        input_flag: &str,
        input_value: f64,
        base: &SymmetricBase,
        levels: &PerturbedLevels,
    ) -> Self {
        PerturbationBlock {
            input_flag: input_flag.to_string(),
            input_value,
            a_sym: base.a_sym,
            e_bar: base.e_bar,
            delta_e: base.delta_e,
            f_coef: base.f_coef,
            g_coef: base.g_coef,
            v: levels.v_ratio,
            delta_v: levels.delta_v,
            e_left: levels.e_left,
            e_right: levels.e_right,
            e0: levels.e0,
            e1: levels.e1,
            level_factor: levels.z_asym.hypot(1.0),
            prob_ratio: levels.prob_ratio,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleBlock {
    pub tol: f64,
    pub errors: ErrorReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoldenBlock {
    pub all_passed: bool,
    pub checks: Vec<GoldenCheck>,
}

impl Report {
    pub fn from_model(model: &TunnelingModel) -> Self {
        Report {
            spec: model.spec,
            reduced: model.reduced,
            wells: model.wells,
            ground_fixed: model.ground_fixed,
            excited_fixed: model.excited_fixed,
            ground: model.ground,
            excited: model.excited,
            splitting: model.splitting,
            delta_e_closed_form: delta_e_closed_form(
                0.5 * (model.wells.left.a_coef + model.wells.right.a_coef),
                model.reduced.k_0,
                model.ground_fixed.p_small,
            ),
            perturbation: None,
            oracle: None,
            golden: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// Human-readable summary, one `name value` row per quantity.
    pub fn table(&self) -> String {
        let mut rows: Vec<(&str, f64)> = Vec::new();
        let (l, r) = (&self.wells.left, &self.wells.right);
        rows.extend([
            ("Y left", l.y_cap),
            ("Y right", r.y_cap),
            ("a left", l.a_coef),
            ("a right", r.a_coef),
            ("b left", l.b_coef),
            ("b right", r.b_coef),
            ("c left", l.c_coef),
            ("c right", r.c_coef),
            ("U left", l.u_cap),
            ("U right", r.u_cap),
            ("P", self.wells.coupling.p_cap),
            ("r0 ground", self.ground_fixed.r0),
            ("r0 excited", self.excited_fixed.r0),
            ("p ground", self.ground_fixed.p_small),
            ("eps left ground", self.ground.eps_left),
            ("eps right ground", self.ground.eps_right),
            ("P_L ground", self.ground.prob_left),
            ("P_R ground", self.ground.prob_right),
            ("E0", self.splitting.e0),
            ("E1", self.splitting.e1),
            ("E bar", self.splitting.e_bar),
            ("dE", self.splitting.delta_e),
            ("dE closed form", self.delta_e_closed_form),
        ]);
        if let Some(p) = &self.perturbation {
            rows.extend([
                ("v", p.v),
                ("dV", p.delta_v),
                ("G", p.g_coef),
                ("F", p.f_coef),
                ("E0 perturbed", p.e0),
                ("E1 perturbed", p.e1),
                ("sqrt(1+G^2v^2)", p.level_factor),
                ("P_R/P_L", p.prob_ratio),
            ]);
        }
        if let Some(o) = &self.oracle {
            let e = &o.errors;
            rows.extend([
                ("E0 exact", e.e0_exact),
                ("E1 exact", e.e1_exact),
                ("E0 rel. error", e.e0_rel_error),
                ("E1 rel. error", e.e1_rel_error),
                ("dE rel. error", e.delta_e_rel_error),
                ("P_R/P_L exact", e.prob_ratio_exact),
                ("P_R/P_L rel. error", e.prob_ratio_rel_error),
            ]);
        }
        let width = rows.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (name, value) in rows {
            let _ = writeln!(out, "{name:<width$}  {}", sig12(value));
        }
        out
    }
}

/// Formats with 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-4..12).contains(&exponent) {
        let decimals = (11 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

pub fn golden_table(checks: &[GoldenCheck]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in checks {
        let verdict = if c.passed() { "PASS" } else { "FAIL" };
        let tol = match c.tolerance {
            Tolerance::Relative(t) => format!("rel {t:e}"),
            Tolerance::Absolute(t) => format!("abs {t:e}"),
            Tolerance::AtMost => "at most".to_string(),
        };
        let _ = writeln!(
            out,
            "{verdict}  [{}] {:<width$}  computed {:>20}  expected {:>20}  error {:.3e}  ({tol})",
            c.criterion,
            c.name,
            sig12(c.computed),
            sig12(c.expected),
            c.error(),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use doublewell::example::worked_example_spec;

    #[test]
    fn sig12_digits() {
        assert_eq!(sig12(18.137993642342), "18.1379936423");
        assert_eq!(sig12(0.25), "0.250000000000");
        assert_eq!(sig12(1.76810307565e-9), "1.76810307565e-9");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(-2.5), "-2.50000000000");
    }

    #[test]
    fn json_round_trips_exactly() {
        let model = TunnelingModel::solve(&worked_example_spec()).unwrap();
        let report = Report::from_model(&model);
        let back: Report = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn optional_blocks_are_omitted() {
        let model = TunnelingModel::solve(&worked_example_spec()).unwrap();
        let json = Report::from_model(&model).to_json();
        assert!(
            !json.contains("perturbation") && !json.contains("oracle") && !json.contains("golden")
        );
        let order: Vec<usize> = ["\"spec\"", "\"reduced\"", "\"wells\"", "\"splitting\""]
            .iter()
            .map(|k| json.find(k).unwrap())
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn table_has_twelve_digit_values() {
        let model = TunnelingModel::solve(&worked_example_spec()).unwrap();
        let table = Report::from_model(&model).table();
        assert!(table.contains("18.1379936423"));
    }
}
