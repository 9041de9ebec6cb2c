//! Abelian rho-invariant evaluation, the explicit Cheeger-Gromov bound,
//! and independence certificates for subset sums of order-two classes.
//!
//! A rho-invariant associated to a map sending the meridian to an element
//! of finite order d is the exact integer sum of signatures over the d-th
//! roots of unity; for infinite order it is the exact average over the
//! circle. The certificates check the computable half of the standard
//! contradiction: an abelian evaluation strictly exceeding the universal
//! surgery bound. The vanishing half for the other summands is a cited
//! theorem and travels inside the certificate text.


use crate::error::{Error, Result};
use crate::knot::Knot;
use crate::planner::FamilyPlan;
use crate::stepfn::AverageValue;

/// Universal Cheeger-Gromov constant for surgery on links: the
/// rho-invariant of zero-surgery is bounded by this constant times the
/// crossing number.
pub const CHEEGER_GROMOV_CONSTANT: i64 = 69_713_280;

/// Citation recorded with every certificate for the half of the argument
/// that is a theorem rather than a computation.
pub const VANISHING_HALF_CITATION: &str =
    "vanishing half: rho-invariants of (n.5)-solvable knots vanish for the relevant \
     representations (Cochran-Orr-Teichner, Ann. of Math. 157 (2003); \
     Cochran-Harvey-Leidy, Proc. Lond. Math. Soc. 102 (2011))";

/// Exact value of an abelian rho-invariant.
#[derive(Clone, Debug, PartialEq)]
pub enum RhoValue {
    /// Meridian mapped to an element of finite order d: integer root sum.
    FiniteCyclic { d: i64, value: i64 },
    /// Meridian of infinite order: exact average over the circle, with a
    /// flag recording whether the value is symbolically proven zero.
    Integral {
        average: AverageValue,
        proven_zero: bool,
    },
}

impl RhoValue {
    pub fn as_integer(&self) -> Option<i64> {
        match self {
            RhoValue::FiniteCyclic { value, .. } => Some(*value),
            RhoValue::Integral { .. } => None,
        }
    }
}

/// Sum of signatures over all d-th roots of unity. Errors if any root
/// lies on a jump; the result is then meaningless and never averaged.
pub fn rho_finite_cyclic(k: &Knot, d: i64) -> Result<RhoValue> {
    if d < 1 {
        return Err(Error::Domain(format!("root order {d} must be >= 1")));
    }
    let value = k.signature_function()?.sum_over_dth_roots(d)?;
    Ok(RhoValue::FiniteCyclic { d, value })
}

/// Exact average of the signature function over the circle.
pub fn rho_integral(k: &Knot) -> Result<RhoValue> {
    let average = k.signature_function()?.average();
    let proven_zero = average.is_zero();
    Ok(RhoValue::Integral {
        average,
        proven_zero,
    })
}

/// The explicit bound: CHEEGER_GROMOV_CONSTANT times the crossing number.
/// Inputs below 3 are rejected; no knot has crossing number 1 or 2.
pub fn cheeger_gromov_surgery_bound(crossings: i64) -> Result<i64> {
    if crossings < 3 {
        return Err(Error::CrossingTooSmall(crossings));
    }
    CHEEGER_GROMOV_CONSTANT
        .checked_mul(crossings)
        .ok_or(Error::Overflow("surgery bound"))
}

/// Bound for the standard height-n tower, whose crossing budget is
/// 16 + 24(n-1).
pub fn tower_bound(n: i64) -> Result<i64> {
    if n < 2 {
        return Err(Error::TowerTooShort(n));
    }
    cheeger_gromov_surgery_bound(16 + 24 * (n - 1))
}

/// Outcome of the abelian obstruction for one subset: the witness sum at
/// the minimal index's prime against the tower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub subset: Vec<usize>,
    pub d: i64,
    pub contributions: Vec<(usize, i64)>,
    pub witness_sum: i64,
    pub bound_c: i64,
    pub margin: i64,
    pub citation: &'static str,
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        self.margin > 0
    }

    /// Text block: subset, prime, per-index contributions, bound, margin,
    /// and the citation for the vanishing half.
    pub fn text(&self) -> String {
        let subset: Vec<String> = self.subset.iter().map(|i| i.to_string()).collect();
        let mut out = format!(
            "certificate for subset {{{}}} at d = {}\n",
            subset.join(", "),
            self.d
        );
        for (i, value) in &self.contributions {
            out.push_str(&format!("  rho(J0_{i}, d={}) = {value}\n", self.d));
        }
        out.push_str(&format!(
            "  witness sum = {}\n  bound C = {}\n  margin = {} ({})\n  {}\n",
            self.witness_sum,
            self.bound_c,
            self.margin,
            if self.is_valid() { "valid" } else { "INVALID" },
            self.citation
        ));
        out
    }
}

/// Certifies that the subset sum of the planned order-two classes is
/// obstructed: at the minimal index's prime, that item contributes its
/// full witness while every other member must contribute exactly zero,
/// and the total must strictly exceed the tower bound.
pub fn independence_certificate(plan: &FamilyPlan, subset: &[usize]) -> Result<Certificate> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut indices = subset.to_vec();
    indices.sort_unstable();
    for pair in indices.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::Domain(format!(
                "index {} appears twice; order-two classes enter a subset sum at most once",
                pair[0]
            )));
        }
    }
    for &i in &indices {
        if i == 0 || i > plan.items.len() {
            return Err(Error::SubsetIndex(i));
        }
    }
    let lead = indices[0];
    let d = plan.items[lead - 1].params.d;
    let mut contributions = Vec::with_capacity(indices.len());
    let mut witness_sum = 0i64;
    for &i in &indices {
        let value = rho_finite_cyclic(&plan.items[i - 1].j0, d)?
            .as_integer()
            .expect("finite cyclic rho is an integer");
        if i != lead && value != 0 {
            return Err(Error::Verification {
                check: format!("vanishing contribution of index {i} at d = {d}"),
                witness: format!("rho(J0_{i}, {d}) = {value}"),
            });
        }
        witness_sum = witness_sum
            .checked_add(value)
            .ok_or(Error::Overflow("witness sum"))?;
        contributions.push((i, value));
    }
    let bound_c = tower_bound(plan.n)?;
    Ok(Certificate {
        subset: indices,
        d,
        contributions,
        witness_sum,
        bound_c,
        margin: witness_sum - bound_c,
        citation: VANISHING_HALF_CITATION,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::knot::{horn_knot, Knot};
    use crate::seifert::{seifert_61, seifert_em, seifert_trefoil};
    use crate::stepfn::{JumpRule, StepFunction};
    use num_rational::BigRational;
    use num_traits::Zero;

    #[test]
    fn rho_of_silent_knots_vanishes() {
        for d in [1i64, 2, 5, 12, 30] {
            let rho = rho_finite_cyclic(&Knot::unknot(), d).unwrap();
            assert_eq!(rho, RhoValue::FiniteCyclic { d, value: 0 });
        }
        let em = Knot::from_matrix("em_2", seifert_em(2));
        assert_eq!(rho_finite_cyclic(&em, 9).unwrap().as_integer(), Some(0));
    }

    #[test]
    fn rho_of_trefoil_at_minus_one() {
        let k = Knot::from_matrix("trefoil", seifert_trefoil());
        assert_eq!(rho_finite_cyclic(&k, 2).unwrap().as_integer(), Some(-2));
        assert_eq!(rho_finite_cyclic(&k, 1).unwrap().as_integer(), Some(0));
    }

    #[test]
    fn rho_matches_brute_force_evaluation() {
        let k = Knot::from_matrix("sum", seifert_trefoil().direct_sum(&seifert_61()));
        let f = k.signature_function().unwrap();
        for d in [2i64, 4, 5, 9, 11] {
            let mut total = BigRational::zero();
            for r in 0..d {
                let angle = if 2 * r <= d {
                    Angle::turn(r, d)
                } else {
                    Angle::turn(d - r, d)
                };
                total += f.evaluate(&angle, JumpRule::Strict).unwrap();
            }
            assert!(total.is_integer());
            assert_eq!(
                rho_finite_cyclic(&k, d).unwrap().as_integer().unwrap(),
                total.to_integer().to_string().parse::<i64>().unwrap(),
                "d = {d}"
            );
        }
    }

    #[test]
    fn rho_additive_and_mirror_antisymmetric() {
        let a = Knot::from_matrix("trefoil", seifert_trefoil());
        let b = horn_knot(2);
        let sum = a.connected_sum(&b).unwrap();
        for d in [2i64, 5, 7, 11] {
            let ra = rho_finite_cyclic(&a, d).unwrap().as_integer().unwrap();
            let rb = rho_finite_cyclic(&b, d).unwrap().as_integer().unwrap();
            let rs = rho_finite_cyclic(&sum, d).unwrap().as_integer().unwrap();
            assert_eq!(rs, ra + rb, "d = {d}");
            let rm = rho_finite_cyclic(&a.mirror(), d)
                .unwrap()
                .as_integer()
                .unwrap();
            assert_eq!(rm, -ra, "d = {d}");
        }
    }

    #[test]
    fn rho_reports_jump_collisions() {
        let k = Knot::from_matrix("trefoil", seifert_trefoil());
        let err = rho_finite_cyclic(&k, 6).unwrap_err();
        assert!(matches!(err, Error::JumpCollision { r: 1, d: 6 }));
    }

    #[test]
    fn integral_rho_examples() {
        let horn = rho_integral(&horn_knot(1)).unwrap();
        match horn {
            RhoValue::Integral {
                average,
                proven_zero,
            } => {
                assert!(!proven_zero);
                assert!(average.symbolic_part().is_empty());
                assert_eq!(
                    average.rational_part(),
                    &BigRational::new(4.into(), 3.into())
                );
            }
            _ => panic!("integral rho expected"),
        }
        let silent = rho_integral(&Knot::unknot()).unwrap();
        assert!(matches!(
            silent,
            RhoValue::Integral {
                proven_zero: true,
                ..
            }
        ));
        let balanced = horn_knot(3)
            .connected_sum(&horn_knot(3).mirror())
            .unwrap();
        assert!(matches!(
            rho_integral(&balanced).unwrap(),
            RhoValue::Integral {
                proven_zero: true,
                ..
            }
        ));
    }

    #[test]
    fn surgery_bound_arithmetic() {
        assert_eq!(cheeger_gromov_surgery_bound(40).unwrap(), 2_788_531_200);
        assert_eq!(cheeger_gromov_surgery_bound(3).unwrap(), 209_139_840);
        assert!(matches!(
            cheeger_gromov_surgery_bound(1),
            Err(Error::CrossingTooSmall(1))
        ));
        assert!(matches!(
            cheeger_gromov_surgery_bound(2),
            Err(Error::CrossingTooSmall(2))
        ));
    }

    #[test]
    fn tower_bound_values() {
        assert_eq!(tower_bound(2).unwrap(), 2_788_531_200);
        assert_eq!(tower_bound(3).unwrap(), 4_461_649_920);
        assert_eq!(tower_bound(4).unwrap(), 6_134_768_640);
        assert!(matches!(tower_bound(1), Err(Error::TowerTooShort(1))));
    }

    #[test]
    fn tower_bound_agrees_with_budget_route() {
        for n in 2..=8i64 {
            let tower = crate::infection::build_tower(n, &horn_knot(1)).unwrap();
            let budget = crate::infection::crossing_budget(&tower).unwrap();
            assert_eq!(
                tower_bound(n).unwrap(),
                cheeger_gromov_surgery_bound(budget).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn stray_step_function_still_sums() {
        let f = StepFunction::from_jumps(vec![(Angle::turn(1, 5), 4), (Angle::turn(2, 5), 0)])
            .unwrap();
        let k = Knot::from_spectral("bump", f, 0, Vec::new());
        assert_eq!(rho_finite_cyclic(&k, 7).unwrap().as_integer(), Some(8));
    }
}
