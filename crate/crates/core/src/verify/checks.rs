use crate::distribution::{Ev, ExclusionKind, Joint2, Joint3, Marginal, Var, INTERNAL_TOLERANCE};
use crate::error::{Error, ErrorCategory, Result};
use crate::mass::Mass;
use crate::measures::{self, Info};

use super::{
    non_negative, skip_reason, CheckResult, CheckStatus, Tally, Verifier, Witness,
    DEFAULT_SCAN_RESOLUTION, NONNEGATIVE_SLACK,
};

pub const POSTULATE1: &str = "postulate1_decomposition";
pub const EXCLUSION_FORMS: &str = "exclusion_form_equivalence";
pub const POSTULATE2: &str = "postulate2_monotonicity";
pub const POSTULATE3: &str = "postulate3_self_information";
pub const POSTULATE4: &str = "postulate4_chain_rule";
pub const LEMMAS: &str = "lemmas_special_cases";
pub const COROLLARY3: &str = "corollary3_identities";
pub const COROLLARY4: &str = "corollary4_target_chain_rule";
pub const AVERAGE: &str = "average_information_nonnegative";

/// Turns an evaluation error into a skip (undefined quantity) or a failure.
fn settle(
    name: &str,
    outcome: Result<CheckResult>,
    witness: impl FnOnce(String) -> Witness,
) -> CheckResult {
    match outcome {
        Ok(r) => r,
        Err(e) if e.category() == ErrorCategory::Undefined => CheckResult::skip(name, skip_reason(&e)),
        Err(e) => {
            let mut r = CheckResult::empty(name);
            r.status = CheckStatus::Fail;
            r.evaluated = 1;
            r.witness = Some(witness(e.to_string()));
            r
        }
    }
}

/// `log(num/den) > 0`, decided on the argument.
fn positive<T: Mass>(info: &Info<T>) -> bool {
    info.numerator() > info.denominator()
}

fn negative<T: Mass>(info: &Info<T>) -> bool {
    info.numerator() < info.denominator()
}

fn marginal_residual<T: Mass>(a: &Marginal<T>, b: &Marginal<T>) -> f64 {
    a.masses()
        .iter()
        .zip(b.masses())
        .map(|(p, q)| (p.to_f64() - q.to_f64()).abs())
        .fold(0.0, f64::max)
}

impl Verifier {
    /// `pmi = i₊ − i₋` with both components non-negative, plus the ratio
    /// identity `p(x,y)/(p(x)p(y)) = p(y|x)/p(y)` computed from the joint.
    pub fn check_postulate1<T: Mass>(&self, joint: &Joint2<T>, x: usize, y: usize) -> CheckResult {
        let run = || {
            let d = self.decompose(joint, x, y)?;
            let mut t = Tally::new();
            t.same("pmi = i_plus - i_minus", &d.pmi, &(&d.i_plus - &d.i_minus));
            let p_x = joint.p_x(x);
            let p_y = joint.p_y(y);
            let p_xy = joint.mass(x, y).clone();
            let direct = Info::ratio(p_xy.clone(), p_x.clone() * p_y.clone(), self.base);
            let via_conditional = Info::ratio(p_xy / p_x, p_y, self.base);
            t.same("p(x,y)/(p(x)p(y)) = p(y|x)/p(y)", &direct, &via_conditional);
            t.same("pmi matches joint", &d.pmi, &direct);
            t.holds("i_plus >= 0", non_negative(&d.i_plus), || {
                format!("i_plus = {}", d.i_plus.value())
            });
            t.holds("i_minus >= 0", non_negative(&d.i_minus), || {
                format!("i_minus = {}", d.i_minus.value())
            });
            Ok(t.finish(POSTULATE1, |s| Witness::joint2(joint, x, y, s)))
        };
        settle(POSTULATE1, run(), |s| Witness::joint2(joint, x, y, s))
    }

    /// The components recomputed from the exclusion split alone agree with
    /// `h(y)` and `h(y|x)`.
    pub fn check_exclusion_forms<T: Mass>(&self, joint: &Joint2<T>, x: usize, y: usize) -> CheckResult {
        let run = || {
            let d = self.decompose(joint, x, y)?;
            let split = joint.exclusion_split_at(x, y);
            let i_plus = measures::i_plus_from_exclusions(&split, self.base)?;
            let i_minus = measures::i_minus_from_exclusions(&split, &joint.p_x(x), self.base)?;
            let mut t = Tally::new();
            t.same("i_plus = -log(1 - p(x,~y) - p(~x,~y))", &d.i_plus, &i_plus);
            t.same("i_minus = -log(1 - p(x,~y)/p(x))", &d.i_minus, &i_minus);
            t.holds(
                "split",
                d.split.informative.agrees(&split.informative, INTERNAL_TOLERANCE)
                    && d.split
                        .misinformative
                        .agrees(&split.misinformative, INTERNAL_TOLERANCE),
                || format!("{:?} != {:?}", d.split, split),
            );
            Ok(t.finish(EXCLUSION_FORMS, |s| Witness::joint2(joint, x, y, s)))
        };
        settle(EXCLUSION_FORMS, run(), |s| Witness::joint2(joint, x, y, s))
    }

    /// On the copy channel `Y := X`: `i₊(x→x) = h(x)` and `i₋(x→x) = 0`.
    pub fn check_postulate3<T: Mass>(&self, marginal: &Marginal<T>, x: usize) -> CheckResult {
        let channel = marginal.diagonal();
        let run = || {
            let d = self.decompose(&channel, x, x)?;
            let mut t = Tally::new();
            t.same("i_plus = h(x)", &d.i_plus, &Info::surprisal(marginal.mass(x).clone(), self.base));
            t.same("i_minus = 0", &d.i_minus, &Info::zero(self.base));
            Ok(t.finish(POSTULATE3, |s| Witness::joint2(&channel, x, x, s)))
        };
        settle(POSTULATE3, run(), |s| Witness::joint2(&channel, x, x, s))
    }

    /// Degenerate cases: `p(x̄) = 0`, purely informative and purely
    /// misinformative exclusions.
    pub fn check_lemmas<T: Mass>(&self, joint: &Joint2<T>, x: usize, y: usize) -> CheckResult {
        let run = || {
            let d = self.decompose(joint, x, y)?;
            let p_y = joint.p_y(y);
            let h_y = Info::surprisal(p_y, self.base);
            let zero = Info::zero(self.base);
            let mut t = Tally::new();
            let others_empty = (0..joint.x().len())
                .filter(|&other| other != x)
                .all(|other| joint.p_x(other).is_zero());
            if others_empty {
                t.same("p(~x) = 0: i_plus = h(y)", &d.i_plus, &h_y);
                t.same("p(~x) = 0: i_minus = h(y)", &d.i_minus, &h_y);
                t.same("p(~x) = 0: pmi = 0", &d.pmi, &zero);
                return Ok(t.finish(LEMMAS, |s| Witness::joint2(joint, x, y, s)));
            }
            let split = &d.split;
            match split.kind {
                ExclusionKind::Mixed => return Ok(CheckResult::skip(LEMMAS, "mixed_exclusion")),
                ExclusionKind::Null => {
                    t.same("null: i_plus = 0", &d.i_plus, &zero);
                    t.same("null: i_minus = 0", &d.i_minus, &zero);
                    t.same("null: pmi = 0", &d.pmi, &zero);
                }
                ExclusionKind::PurelyInformative => {
                    t.same("informative: i_plus = h(y)", &d.i_plus, &h_y);
                    t.same("informative: i_minus = 0", &d.i_minus, &zero);
                    let closed = measures::pmi_purely_informative(&split.informative, self.base)?;
                    t.same("informative: pmi = -log(1 - p(~x,~y))", &d.pmi, &closed);
                    t.holds("informative: pmi > 0", positive(&d.pmi), || {
                        format!("pmi = {}", d.pmi.value())
                    });
                }
                ExclusionKind::PurelyMisinformative => {
                    let p_x = joint.p_x(x);
                    let posterior = joint.mass(x, y).clone() / p_x.clone();
                    t.same(
                        "misinformative: i_minus = -log p(y|x)",
                        &d.i_minus,
                        &Info::surprisal(posterior, self.base),
                    );
                    let closed =
                        measures::pmi_purely_misinformative(&split.misinformative, &p_x, self.base)?;
                    t.same("misinformative: pmi closed form", &d.pmi, &closed);
                    t.holds("misinformative: i_minus > 0", positive(&d.i_minus), || {
                        format!("i_minus = {}", d.i_minus.value())
                    });
                    t.holds("misinformative: pmi < 0", negative(&d.pmi), || {
                        format!("pmi = {}", d.pmi.value())
                    });
                    t.holds(
                        "misinformative: i_plus < i_minus",
                        negative(&(&d.i_plus - &d.i_minus)),
                        || format!("i_plus = {}, i_minus = {}", d.i_plus.value(), d.i_minus.value()),
                    );
                }
            }
            Ok(t.finish(LEMMAS, |s| Witness::joint2(joint, x, y, s)))
        };
        settle(LEMMAS, run(), |s| Witness::joint2(joint, x, y, s))
    }

    /// `I(X;y) = Σₓ p(x|y) i(x;y) ≥ 0`.
    pub fn check_average_information<T: Mass>(&self, joint: &Joint2<T>, y: usize) -> CheckResult {
        let witness = |s| Witness::joint2(joint, 0, y, s);
        let run = || {
            let value = measures::average_info_to_target(joint, y, self.base)?;
            let mut t = Tally::new();
            t.residual((-value).max(0.0));
            t.holds("I(X;y) >= 0", value >= -NONNEGATIVE_SLACK, || format!("I(X;y) = {value}"));
            Ok(t.finish(AVERAGE, witness))
        };
        settle(AVERAGE, run(), witness)
    }

    /// Both orderings of the chain rule for `i₊` and `i₋`, and agreement of
    /// `P(X|y,z)` reached in one step, via `y` then `z`, and via `z` then `y`.
    pub fn check_postulate4<T: Mass>(&self, joint: &Joint3<T>, x: usize, y: usize, z: usize) -> CheckResult {
        let (ex, ey, ez) = (Ev::x(x), Ev::y(y), Ev::z(z));
        let witness = |s| Witness::joint3(joint, &[ex, ey, ez], s);
        let run = || {
            let both = self.decompose3(joint, &[ey, ez], &[ex], &[])?;
            let y_first = self.decompose3(joint, &[ey], &[ex], &[])?;
            let z_after_y = self.decompose3(joint, &[ez], &[ex], &[ey])?;
            let z_first = self.decompose3(joint, &[ez], &[ex], &[])?;
            let y_after_z = self.decompose3(joint, &[ey], &[ex], &[ez])?;
            let mut t = Tally::new();
            t.same(
                "i_plus(yz->x) = i_plus(y->x) + i_plus(z->x|y)",
                &both.i_plus,
                &(&y_first.i_plus + &z_after_y.i_plus),
            );
            t.same(
                "i_plus(yz->x) = i_plus(z->x) + i_plus(y->x|z)",
                &both.i_plus,
                &(&z_first.i_plus + &y_after_z.i_plus),
            );
            t.same(
                "i_minus(yz->x) = i_minus(y->x) + i_minus(z->x|y)",
                &both.i_minus,
                &(&y_first.i_minus + &z_after_y.i_minus),
            );
            t.same(
                "i_minus(yz->x) = i_minus(z->x) + i_minus(y->x|z)",
                &both.i_minus,
                &(&z_first.i_minus + &y_after_z.i_minus),
            );
            let one_shot = joint.posterior(Var::X, &[ey, ez])?;
            let via_y = joint.given(ey)?.condition(z)?;
            let via_z = joint.given(ez)?.condition(y)?;
            for (what, other) in [("y then z", &via_y), ("z then y", &via_z)] {
                t.residual(marginal_residual(&one_shot, other));
                t.holds(&format!("P(X|y,z) one-shot = {what}"), one_shot.agrees(other), || {
                    format!("{:?} != {:?}", one_shot.masses(), other.masses())
                });
            }
            Ok(t.finish(POSTULATE4, witness))
        };
        settle(POSTULATE4, run(), witness)
    }

    /// `i₊(y→x) = i₊(y→z)`, `i₊(y→x|z) = i₋(y→z)`, `i₋(y→x|z) = i₋(y→xz)`.
    pub fn check_corollary3<T: Mass>(&self, joint: &Joint3<T>, x: usize, y: usize, z: usize) -> CheckResult {
        let (ex, ey, ez) = (Ev::x(x), Ev::y(y), Ev::z(z));
        let witness = |s| Witness::joint3(joint, &[ex, ey, ez], s);
        let run = || {
            let to_x = self.decompose3(joint, &[ey], &[ex], &[])?;
            let to_z = self.decompose3(joint, &[ey], &[ez], &[])?;
            let to_x_given_z = self.decompose3(joint, &[ey], &[ex], &[ez])?;
            let to_xz = self.decompose3(joint, &[ey], &[ex, ez], &[])?;
            let mut t = Tally::new();
            t.same("i_plus(y->x) = i_plus(y->z)", &to_x.i_plus, &to_z.i_plus);
            t.same("i_plus(y->x|z) = i_minus(y->z)", &to_x_given_z.i_plus, &to_z.i_minus);
            t.same("i_minus(y->x|z) = i_minus(y->xz)", &to_x_given_z.i_minus, &to_xz.i_minus);
            Ok(t.finish(COROLLARY3, witness))
        };
        settle(COROLLARY3, run(), witness)
    }

    /// `i(y→xz) = i(y→x) + i(y→z|x)`.
    pub fn check_corollary4<T: Mass>(&self, joint: &Joint3<T>, x: usize, y: usize, z: usize) -> CheckResult {
        let (ex, ey, ez) = (Ev::x(x), Ev::y(y), Ev::z(z));
        let witness = |s| Witness::joint3(joint, &[ex, ey, ez], s);
        let run = || {
            let to_xz = self.decompose3(joint, &[ey], &[ex, ez], &[])?;
            let to_x = self.decompose3(joint, &[ey], &[ex], &[])?;
            let to_z_given_x = self.decompose3(joint, &[ey], &[ez], &[ex])?;
            let mut t = Tally::new();
            t.same("i(y->xz) = i(y->x) + i(y->z|x)", &to_xz.pmi, &(&to_x.pmi + &to_z_given_x.pmi));
            Ok(t.finish(COROLLARY4, witness))
        };
        settle(COROLLARY4, run(), witness)
    }

    /// Whether the component-wise target chain rule fails for `i₊` and for
    /// `i₋`. Neither is expected to hold in general.
    pub fn component_chain_failures<T: Mass>(
        &self,
        joint: &Joint3<T>,
        x: usize,
        y: usize,
        z: usize,
    ) -> Result<(bool, bool)> {
        let (ex, ey, ez) = (Ev::x(x), Ev::y(y), Ev::z(z));
        let to_xz = self.decompose3(joint, &[ey], &[ex, ez], &[])?;
        let to_x = self.decompose3(joint, &[ey], &[ex], &[])?;
        let to_z_given_x = self.decompose3(joint, &[ey], &[ez], &[ex])?;
        let tol = super::LOG_TOLERANCE;
        Ok((
            !to_xz.i_plus.agrees(&(&to_x.i_plus + &to_z_given_x.i_plus), tol),
            !to_xz.i_minus.agrees(&(&to_x.i_minus + &to_z_given_x.i_minus), tol),
        ))
    }

    /// Monotonicity of `i₊` and `i₋` along the three scans of `scan`.
    pub fn check_postulate2(&self, scan: &MonotonicityScan) -> Result<CheckResult> {
        let mut result = CheckResult::empty(POSTULATE2);
        for series in scan.series(self)? {
            let mut t = Tally::new();
            let increasing = |v: &[f64]| v.windows(2).all(|w| w[1] > w[0]);
            let decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
            let non_decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] >= w[0]);
            let fmt = |v: &[f64]| format!("{v:?}");
            match series.name {
                "a" => t.holds("scan a: i_plus increasing", increasing(&series.i_plus), || {
                    fmt(&series.i_plus)
                }),
                "b" => t.holds("scan b: i_minus increasing", increasing(&series.i_minus), || {
                    fmt(&series.i_minus)
                }),
                _ => {
                    t.holds("scan c: i_plus non-decreasing", non_decreasing(&series.i_plus), || {
                        fmt(&series.i_plus)
                    });
                    t.holds("scan c: i_minus decreasing", decreasing(&series.i_minus), || {
                        fmt(&series.i_minus)
                    });
                }
            }
            let middle = &series.grid[series.grid.len() / 2];
            result.merge(t.finish(POSTULATE2, |s| Witness::joint2(middle, 0, 0, s)));
        }
        Ok(result)
    }
}

/// Three one-parameter families of 2×2 distributions, with `x = x1` and
/// `y = y1`, along which the components must move monotonically.
///
/// - a: `p(x,y)`, `p(x,ȳ)` fixed; `p(x̄,ȳ) = t`, `p(x̄,y)` takes the rest
/// - b: `p(x̄,y)`, `p(x̄,ȳ)` fixed; `p(x,ȳ) = t`, `p(x,y)` takes the rest
/// - c: `p(x,y)`, `p(x̄,y)` fixed; `p(x̄,ȳ) = t`, `p(x,ȳ)` takes the rest
///
/// `t` runs over `room·k/(n+1)` for `k = 1..=n`, strictly inside `(0, room)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityScan {
    pub resolution: usize,
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub c: [f64; 2],
}

impl Default for MonotonicityScan {
    fn default() -> Self {
        Self {
            resolution: DEFAULT_SCAN_RESOLUTION,
            a: [0.2, 0.1],
            b: [0.2, 0.1],
            c: [0.3, 0.2],
        }
    }
}

/// Sampled components along one scan.
#[derive(Debug, Clone)]
pub struct ScanSeries {
    pub name: &'static str,
    pub t: Vec<f64>,
    pub i_plus: Vec<f64>,
    pub i_minus: Vec<f64>,
    pub grid: Vec<Joint2<f64>>,
}

impl MonotonicityScan {
    fn validate(&self) -> Result<()> {
        if self.resolution < 3 {
            return Err(Error::InvalidScanConfig(format!(
                "resolution {} is below 3",
                self.resolution
            )));
        }
        for (name, fixed) in [("a", self.a), ("b", self.b), ("c", self.c)] {
            if fixed.iter().any(|m| !m.is_finite() || *m < 0.0) {
                return Err(Error::InvalidScanConfig(format!(
                    "scan {name}: fixed masses must be non-negative"
                )));
            }
            if fixed[0] + fixed[1] >= 1.0 {
                return Err(Error::InvalidScanConfig(format!(
                    "scan {name}: fixed masses leave no room to vary"
                )));
            }
        }
        Ok(())
    }

    pub fn series(&self, verifier: &Verifier) -> Result<Vec<ScanSeries>> {
        self.validate()?;
        // cells: [[p(x,y), p(x,~y)], [p(~x,y), p(~x,~y)]]
        type Layout = fn([f64; 2], f64, f64) -> [[f64; 2]; 2];
        let layouts: [(&'static str, [f64; 2], Layout); 3] = [
            ("a", self.a, |f, t, rest| [[f[0], f[1]], [rest, t]]),
            ("b", self.b, |f, t, rest| [[rest, t], [f[0], f[1]]]),
            ("c", self.c, |f, t, rest| [[f[0], rest], [f[1], t]]),
        ];
        let n = self.resolution;
        layouts
            .into_iter()
            .map(|(name, fixed, layout)| {
                let room = 1.0 - fixed[0] - fixed[1];
                let mut series = ScanSeries {
                    name,
                    t: Vec::with_capacity(n),
                    i_plus: Vec::with_capacity(n),
                    i_minus: Vec::with_capacity(n),
                    grid: Vec::with_capacity(n),
                };
                for k in 1..=n {
                    let t = room * k as f64 / (n + 1) as f64;
                    let cells = layout(fixed, t, room - t);
                    let joint = Joint2::from_grid(cells.iter().map(|r| r.to_vec()).collect())?;
                    let d = verifier.decompose(&joint, 0, 0)?;
                    series.t.push(t);
                    series.i_plus.push(d.i_plus_value());
                    series.i_minus.push(d.i_minus_value());
                    series.grid.push(joint);
                }
                Ok(series)
            })
            .collect()
    }
}
