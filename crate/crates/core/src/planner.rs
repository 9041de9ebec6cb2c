//! Constructive planner for the independent family: chooses twist
//! parameters and primes by exact angle comparisons, assembles each
//! planned knot from Horn blocks, and machine-verifies every finite
//! condition the construction needs. Checks come in three kinds: exact
//! (failure aborts the plan with a witness), cited (a theorem recorded
//! with its source, not re-proved), and recorded (empirical evaluations
//! kept for the report without being required).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::infection::{
    build_tower, is_order_two_by_construction, tags_of_tower, InfectionTree, OrderTwoCertificate,
};
use crate::knot::{horn_knot, Knot, Tag, HORN_GROPE};
use crate::obstruct::{independence_certificate, tower_bound, Certificate};
use crate::stepfn::JumpRule;

/// Citation attached to the solvability tag of a planned knot.
pub const SOLVABLE_ZERO_CITATION: &str =
    "Arf 0 is equivalent to (0)-solvable (Cochran-Orr-Teichner, Ann. of Math. 157 (2003))";

/// How a copy count is derived from the bound C.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CopyConvention {
    /// floor(C/2) + 1 copies: each copy contributes 2 at the working
    /// root, so the total strictly exceeds C.
    StrictHalf,
    /// C copies: one signature unit accounted per copy.
    FigureOne,
}

impl CopyConvention {
    pub fn copies(self, c: i64) -> i64 {
        match self {
            CopyConvention::StrictHalf => c / 2 + 1,
            CopyConvention::FigureOne => c,
        }
    }

    pub fn parse(text: &str) -> Option<CopyConvention> {
        match text {
            "strict-half" | "strict_half" => Some(CopyConvention::StrictHalf),
            "figure-one" | "figure_one" => Some(CopyConvention::FigureOne),
            _ => None,
        }
    }
}

impl fmt::Display for CopyConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CopyConvention::StrictHalf => write!(f, "strict-half"),
            CopyConvention::FigureOne => write!(f, "figure-one"),
        }
    }
}

/// One selected window: twist parameters m_lo < m_hi and a prime d with
/// theta(m_hi) < 2pi/d < theta(m_lo) and the narrowness bound
/// theta(m_lo) < 4pi/d.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Parameters {
    pub m_lo: i64,
    pub m_hi: i64,
    pub d: i64,
}

impl fmt::Display for Parameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m_lo = {}, m_hi = {}, d = {})", self.m_lo, self.m_hi, self.d)
    }
}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Smallest prime d with theta(m_hi) < 2pi/d < theta(m_lo) that also
/// satisfies the narrowness bound, decided purely by angle comparisons.
fn prime_in_window(m_lo: i64, m_hi: i64) -> Option<i64> {
    let theta_lo = Angle::horn(m_lo);
    let theta_hi = Angle::horn(m_hi);
    let mut d = 3i64;
    while Angle::turn(1, d) >= theta_lo {
        d += 1;
    }
    while Angle::turn(1, d) > theta_hi {
        if is_prime(d) && Angle::turn(2, d) > theta_lo {
            return Some(d);
        }
        d += 1;
    }
    None
}

/// Greedy chained selection: starting from m_lo, the upper twist
/// parameter advances through perfect cubes (whose cut cosines are
/// rational, keeping every comparison cheap) until the angular window
/// contains a usable prime; the next item starts where this one ended.
pub fn select_parameters(count: usize, start_m: i64) -> Result<Vec<Parameters>> {
    if count < 1 {
        return Err(Error::Domain("item count must be >= 1".into()));
    }
    if start_m < 1 {
        return Err(Error::Domain(format!("start twist {start_m} must be >= 1")));
    }
    let mut out = Vec::with_capacity(count);
    let mut m_lo = start_m;
    for _ in 0..count {
        let mut j = 1i64;
        while j * j * j <= m_lo {
            j += 1;
        }
        let mut steps = 0u64;
        loop {
            steps += 1;
            if steps > 1_000_000 {
                return Err(Error::SearchExhausted(steps));
            }
            let m_hi = j
                .checked_mul(j)
                .and_then(|s| s.checked_mul(j))
                .ok_or(Error::Overflow("cube candidate"))?;
            if let Some(d) = prime_in_window(m_lo, m_hi) {
                out.push(Parameters { m_lo, m_hi, d });
                m_lo = m_hi;
                break;
            }
            j += 1;
        }
    }
    Ok(out)
}

/// Kind of verification line: exact computations are required, citations
/// record a theorem with its source, recorded lines keep empirical
/// evaluations that nothing depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Exact,
    Cited,
    Recorded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub kind: CheckKind,
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub lines: Vec<CheckLine>,
}

impl VerificationReport {
    fn exact(&mut self, label: &str, passed: bool, detail: String) -> Result<()> {
        self.lines.push(CheckLine {
            kind: CheckKind::Exact,
            label: label.to_string(),
            passed,
            detail: detail.clone(),
        });
        if passed {
            Ok(())
        } else {
            Err(Error::Verification {
                check: label.to_string(),
                witness: detail,
            })
        }
    }

    fn cited(&mut self, label: &str, citation: &str) {
        self.lines.push(CheckLine {
            kind: CheckKind::Cited,
            label: label.to_string(),
            passed: true,
            detail: citation.to_string(),
        });
    }

    fn recorded(&mut self, label: &str, detail: String) {
        self.lines.push(CheckLine {
            kind: CheckKind::Recorded,
            label: label.to_string(),
            passed: true,
            detail,
        });
    }

    pub fn all_required_passed(&self) -> bool {
        self.lines
            .iter()
            .all(|l| l.kind != CheckKind::Exact || l.passed)
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            let kind = match line.kind {
                CheckKind::Exact => "exact",
                CheckKind::Cited => "cited",
                CheckKind::Recorded => "recorded",
            };
            let status = if line.kind == CheckKind::Exact {
                if line.passed {
                    " [pass]"
                } else {
                    " [FAIL]"
                }
            } else {
                ""
            };
            out.push_str(&format!("[{kind}]{status} {}: {}\n", line.label, line.detail));
        }
        out
    }
}

/// One verified member of the family.
#[derive(Clone, Debug)]
pub struct PlanItem {
    pub params: Parameters,
    pub n_copies: i64,
    pub s: Knot,
    pub j_prime: Knot,
    pub j0: Knot,
    pub report: VerificationReport,
}

/// The verified family: strictly increasing primes, one bump per item,
/// every report free of required failures by construction.
#[derive(Clone, Debug)]
pub struct FamilyPlan {
    pub n: i64,
    pub bound_c: i64,
    pub convention: CopyConvention,
    pub items: Vec<PlanItem>,
}

impl FamilyPlan {
    pub fn text(&self) -> String {
        let mut out = format!(
            "family plan: n = {}, C = {}, convention = {}\n",
            self.n, self.bound_c, self.convention
        );
        for (i, item) in self.items.iter().enumerate() {
            out.push_str(&format!(
                "item {}: m_lo = {}, m_hi = {}, d = {}, N = {}\n",
                i + 1,
                item.params.m_lo,
                item.params.m_hi,
                item.params.d,
                item.n_copies
            ));
            for line in item.report.text().lines() {
                out.push_str(&format!("  {line}\n"));
            }
        }
        out
    }
}

/// Builds the knots of one item: the bump S from two Horn blocks, the
/// balanced J' = S # -cable(S, d), and J0 as N copies of J' held as a
/// multiplicity. Returns (S, J', J0, N).
pub fn build_j0(
    params: &Parameters,
    c: i64,
    convention: CopyConvention,
) -> Result<(Knot, Knot, Knot, i64)> {
    let p_lo = horn_knot(params.m_lo);
    let p_hi = horn_knot(params.m_hi);
    let s = p_lo
        .mirror()
        .connected_sum(&p_hi)?
        .renamed(&format!("S({},{})", params.m_lo, params.m_hi));
    let cable = s.cable_d1(params.d)?;
    let j_prime = s
        .connected_sum(&cable.mirror())?
        .renamed(&format!("J'({},{};{})", params.m_lo, params.m_hi, params.d));
    let n_copies = convention.copies(c);
    let j0 = j_prime
        .scaled_copies(n_copies)?
        .with_tags(vec![
            Tag::grope_height(2, HORN_GROPE),
            Tag::solvable(0, SOLVABLE_ZERO_CITATION),
        ])?
        .renamed(&format!(
            "J0({},{};{}) = {} copies of J'",
            params.m_lo, params.m_hi, params.d, n_copies
        ));
    Ok((s, j_prime, j0, n_copies))
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exhaustive verification of one item against everything built so far.
/// Every exact failure aborts with its witness (r, d, value).
fn verify_item(
    params: &Parameters,
    s: &Knot,
    j_prime: &Knot,
    j0: &Knot,
    n_copies: i64,
    c: i64,
    prev: &[PlanItem],
) -> Result<VerificationReport> {
    let mut rep = VerificationReport::default();
    let d = params.d;
    let theta_lo = Angle::horn(params.m_lo);
    let theta_hi = Angle::horn(params.m_hi);
    let omega = Angle::turn(1, d);

    rep.exact(
        "prime window",
        theta_hi < omega && omega < theta_lo,
        format!(
            "theta({}) < 2pi/{d} < theta({}) by exact cosine comparison",
            params.m_hi, params.m_lo
        ),
    )?;
    rep.exact(
        "narrowness",
        Angle::turn(2, d) > theta_lo,
        format!("theta({}) < 4pi/{d}, so only r = +-1 roots meet the bump", params.m_lo),
    )?;
    rep.exact(
        "prime growth",
        is_prime(d) && prev.last().map_or(true, |p| p.params.d < d),
        format!("d = {d} prime, strictly above every earlier prime"),
    )?;

    let at_omega = j0.signature_at(&omega, JumpRule::Strict)?;
    rep.exact(
        "working-root value exceeds C",
        at_omega == rational(2 * n_copies) && at_omega > rational(c),
        format!(
            "sigma(2pi/{d}) = {at_omega} = 2N at the root and its conjugate (same folded angle); C = {c}"
        ),
    )?;

    let mut bad = Vec::new();
    for r in 2..=(d - 1) / 2 {
        let v = j0.signature_at(&Angle::turn(r, d), JumpRule::Strict)?;
        if !v.is_integer() || v != rational(0) {
            bad.push(format!("(r = {r}, d = {d}, value = {v})"));
        }
    }
    rep.exact(
        "vanishing at non-working roots",
        bad.is_empty(),
        if bad.is_empty() {
            format!("sigma(2pi r/{d}) = 0 for every r in 2..={}", d - 1)
        } else {
            bad.join(", ")
        },
    )?;

    for p in prev {
        let dj = p.params.d;
        let mut bad = Vec::new();
        for r in 1..=(dj - 1) / 2 {
            let v = j0.signature_at(&Angle::turn(r, dj), JumpRule::Strict)?;
            if v != rational(0) {
                bad.push(format!("(r = {r}, d = {dj}, value = {v})"));
            }
        }
        rep.exact(
            "vanishing at earlier items' roots",
            bad.is_empty(),
            if bad.is_empty() {
                format!("this item's knot is 0 at every {dj}-th root of unity")
            } else {
                bad.join(", ")
            },
        )?;

        let mut nonzero = Vec::new();
        for r in 1..=(d - 1) / 2 {
            let v = p.j0.signature_at(&Angle::turn(r, d), JumpRule::Strict)?;
            if v != rational(0) {
                nonzero.push(format!("(r = {r}, d = {d}, value = {v})"));
            }
        }
        rep.recorded(
            "earlier item at this item's roots",
            if nonzero.is_empty() {
                format!("item with d = {dj}: 0 at every {d}-th root")
            } else {
                format!(
                    "item with d = {dj} is nonzero at {}; harmless, the certificates only \
                     evaluate at the minimal index's prime",
                    nonzero.join(", ")
                )
            },
        );

        rep.exact(
            "disjoint bump supports",
            s.signature_function()?
                .supports_disjoint(p.s.signature_function()?),
            format!(
                "supports of S({},{}) and S({},{}) share no arc",
                params.m_lo, params.m_hi, p.params.m_lo, p.params.m_hi
            ),
        )?;
    }

    rep.exact(
        "Arf vanishes",
        j0.arf()? == 0,
        format!("arf = {} ({})", j0.arf()?, j0.arf_source()?),
    )?;
    let j_prime_avg = j_prime.average_signature()?;
    let j0_avg = j0.average_signature()?;
    rep.exact(
        "integral of the signature vanishes",
        j_prime_avg.is_zero() && j0_avg.is_zero(),
        "average of J' and of J0 are symbolically zero".to_string(),
    )?;
    rep.cited("height-2 grope bound for every building block", HORN_GROPE);
    Ok(rep)
}

/// Selects, builds, and verifies `count` items for the height-n tower
/// bound. Any required check failing aborts the whole plan.
pub fn build_family(
    n: i64,
    count: usize,
    convention: CopyConvention,
    start_m: i64,
) -> Result<FamilyPlan> {
    let c = tower_bound(n)?;
    let selected = select_parameters(count, start_m)?;
    let mut items: Vec<PlanItem> = Vec::with_capacity(count);
    for params in selected {
        let (s, j_prime, j0, n_copies) = build_j0(&params, c, convention)?;
        let j0 = j0.renamed(&format!("J0_{}", items.len() + 1));
        let report = verify_item(&params, &s, &j_prime, &j0, n_copies, c, &items)?;
        items.push(PlanItem {
            params,
            n_copies,
            s,
            j_prime,
            j0,
            report,
        });
    }
    Ok(FamilyPlan {
        n,
        bound_c: c,
        convention,
        items,
    })
}

/// A verified plan together with its towers, their tags, the order-two
/// certificates, and the independence certificates.
#[derive(Clone, Debug)]
pub struct FullConstruction {
    pub plan: FamilyPlan,
    pub towers: Vec<InfectionTree>,
    pub tower_tags: Vec<Vec<Tag>>,
    pub order_two: Vec<OrderTwoCertificate>,
    pub certificates: Vec<Certificate>,
}

/// End-to-end pipeline: plan, towers, tags, order-two checks, and
/// certificates for every singleton plus any extra subsets. Certificates
/// must come out valid; an invalid one aborts.
pub fn full_construction(
    n: i64,
    count: usize,
    convention: CopyConvention,
    start_m: i64,
    extra_subsets: &[Vec<usize>],
) -> Result<FullConstruction> {
    let plan = build_family(n, count, convention, start_m)?;
    let mut towers = Vec::with_capacity(count);
    let mut tower_tags = Vec::with_capacity(count);
    let mut order_two = Vec::with_capacity(count);
    for item in &plan.items {
        let tower = build_tower(n, &item.j0)?;
        let cert = is_order_two_by_construction(&tower)?;
        if !cert.holds {
            return Err(Error::Verification {
                check: "order-two pattern".into(),
                witness: cert.reason,
            });
        }
        tower_tags.push(tags_of_tower(&tower)?);
        order_two.push(cert);
        towers.push(tower);
    }
    let mut certificates = Vec::new();
    for i in 1..=count {
        certificates.push(independence_certificate(&plan, &[i])?);
    }
    for subset in extra_subsets {
        certificates.push(independence_certificate(&plan, subset)?);
    }
    for cert in &certificates {
        if !cert.is_valid() {
            return Err(Error::Verification {
                check: "certificate margin".into(),
                witness: cert.text(),
            });
        }
    }
    Ok(FullConstruction {
        plan,
        towers,
        tower_tags,
        order_two,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruct::RhoValue;

    #[test]
    fn selection_matches_the_worked_sequence() {
        let params = select_parameters(5, 1).unwrap();
        let expected = [(1, 8, 7), (8, 64, 11), (64, 125, 13), (125, 512, 17), (512, 1000, 19)];
        let got: Vec<(i64, i64, i64)> = params.iter().map(|p| (p.m_lo, p.m_hi, p.d)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn selection_chains_and_grows() {
        let params = select_parameters(4, 8).unwrap();
        assert_eq!(params[0], Parameters { m_lo: 8, m_hi: 64, d: 11 });
        for pair in params.windows(2) {
            assert_eq!(pair[0].m_hi, pair[1].m_lo);
            assert!(pair[0].d < pair[1].d);
        }
        for p in &params {
            let cube_root = (p.m_hi as f64).cbrt().round() as i64;
            assert_eq!(cube_root * cube_root * cube_root, p.m_hi);
        }
    }

    #[test]
    fn selection_window_reverifies_by_angles() {
        for p in select_parameters(5, 1).unwrap() {
            let omega = Angle::turn(1, p.d);
            assert!(Angle::horn(p.m_hi) < omega);
            assert!(omega < Angle::horn(p.m_lo));
            assert!(Angle::turn(2, p.d) > Angle::horn(p.m_lo));
        }
    }

    #[test]
    fn selection_rejects_bad_inputs() {
        assert!(select_parameters(0, 1).is_err());
        assert!(select_parameters(1, 0).is_err());
    }

    #[test]
    fn copy_conventions() {
        assert_eq!(CopyConvention::StrictHalf.copies(2_788_531_200), 1_394_265_601);
        assert_eq!(CopyConvention::FigureOne.copies(2_788_531_200), 2_788_531_200);
        assert_eq!(CopyConvention::parse("strict-half"), Some(CopyConvention::StrictHalf));
        assert_eq!(CopyConvention::parse("figure_one"), Some(CopyConvention::FigureOne));
        assert_eq!(CopyConvention::parse("guess"), None);
    }

    #[test]
    fn first_item_signature_profile() {
        let params = Parameters { m_lo: 1, m_hi: 8, d: 7 };
        let c = tower_bound(2).unwrap();
        let (s, j_prime, j0, n) = build_j0(&params, c, CopyConvention::StrictHalf).unwrap();
        assert_eq!(n, 1_394_265_601);
        assert_eq!(
            j0.signature_at(&Angle::turn(1, 7), JumpRule::Strict).unwrap(),
            rational(2 * n)
        );
        for r in 2..=3 {
            assert_eq!(
                j0.signature_at(&Angle::turn(r, 7), JumpRule::Strict).unwrap(),
                rational(0),
                "r = {r}"
            );
        }
        assert_eq!(
            j_prime.signature_at(&Angle::turn(1, 7), JumpRule::Strict).unwrap(),
            rational(2)
        );
        assert!(j_prime.average_signature().unwrap().is_zero());
        assert_eq!(j0.arf().unwrap(), 0);
        assert_eq!(s.signature_function().unwrap().jumps().len(), 2);
    }

    #[test]
    fn family_of_two_verifies_and_is_deterministic() {
        let a = build_family(2, 2, CopyConvention::StrictHalf, 1).unwrap();
        let b = build_family(2, 2, CopyConvention::StrictHalf, 1).unwrap();
        assert_eq!(a.text(), b.text());
        assert_eq!(a.items.len(), 2);
        for item in &a.items {
            assert!(item.report.all_required_passed());
        }
        assert_eq!(a.bound_c, 2_788_531_200);
    }

    #[test]
    fn stated_direction_findings_are_recorded_not_required() {
        let plan = build_family(2, 3, CopyConvention::StrictHalf, 1).unwrap();
        let third = &plan.items[2];
        assert!(third.report.all_required_passed());
        let text = third.report.text();
        assert!(text.contains("[recorded]"), "{text}");
        assert!(
            text.contains("d = 7 is nonzero at (r = 2, d = 13"),
            "expected the earlier-item evaluation to be recorded: {text}"
        );
        assert!(text.contains("(r = 4, d = 13"), "{text}");
    }

    #[test]
    fn figure_one_construction_reproduces_the_headline_numbers() {
        let fc = full_construction(2, 1, CopyConvention::FigureOne, 1, &[]).unwrap();
        assert_eq!(fc.plan.bound_c, 2_788_531_200);
        assert_eq!(fc.plan.items[0].n_copies, 2_788_531_200);
        assert_eq!(fc.towers.len(), 1);
        assert!(fc.order_two[0].holds);
        assert!(fc.tower_tags[0].iter().any(|t| matches!(
            t,
            Tag::GropeHeight { height: 4, .. }
        )));
        assert!(fc.tower_tags[0].iter().any(|t| matches!(
            t,
            Tag::Solvable { level: 2, .. }
        )));
        let cert = &fc.certificates[0];
        assert!(cert.is_valid());
        assert_eq!(cert.witness_sum, 4 * 2_788_531_200);
        assert_eq!(cert.margin, 3 * 2_788_531_200);
    }

    #[test]
    fn certificates_for_pairs_use_the_minimal_prime() {
        let fc = full_construction(2, 2, CopyConvention::StrictHalf, 1, &[vec![1, 2]]).unwrap();
        let pair = fc.certificates.last().unwrap();
        assert_eq!(pair.subset, vec![1, 2]);
        assert_eq!(pair.d, 7);
        assert_eq!(pair.contributions[0].1, 4 * 1_394_265_601);
        assert_eq!(pair.contributions[1].1, 0);
        assert!(pair.is_valid());
        let singleton = &fc.certificates[1];
        assert_eq!(singleton.d, 11);
        assert_eq!(singleton.witness_sum, 4 * 1_394_265_601);
    }

    #[test]
    fn rho_of_planned_knot_matches_the_pinned_value() {
        let params = Parameters { m_lo: 1, m_hi: 8, d: 7 };
        let (_, _, j0, n) = build_j0(&params, tower_bound(2).unwrap(), CopyConvention::StrictHalf).unwrap();
        let rho = crate::obstruct::rho_finite_cyclic(&j0, 7).unwrap();
        assert_eq!(rho, RhoValue::FiniteCyclic { d: 7, value: 4 * n });
    }

    #[test]
    fn short_tower_is_rejected() {
        assert!(matches!(
            build_family(1, 1, CopyConvention::StrictHalf, 1),
            Err(Error::TowerTooShort(1))
        ));
        assert!(matches!(
            full_construction(1, 1, CopyConvention::FigureOne, 1, &[]),
            Err(Error::TowerTooShort(1))
        ));
    }
}
