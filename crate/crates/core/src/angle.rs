//! Exact angles in the closed upper semicircle [0, pi].
//!
//! Three shapes cover everything the step-function calculus produces:
//! rational turns 2*pi*q, arccosines of real algebraic numbers, and affine
//! images (2*pi*k +- arccos c)/den of the latter, which arise as preimages of
//! jump angles under the power map z -> z^den. Every comparison is decided
//! exactly: multiples of an arccosine are folded back into [0, pi] with
//! Chebyshev polynomials, and the survivors reduce to comparisons of
//! algebraic cosines.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

use crate::algebraic::{cos_of_turn, cos_horn_angle, AlgebraicReal};
use crate::cyclotomic::chebyshev_t;

/// An exactly represented angle in [0, pi].
///
/// `Turn(q)` is the angle 2*pi*q with q in [0, 1/2] in lowest terms; angles
/// elsewhere on the circle are folded in by conjugation symmetry at
/// construction. `CosRoot(c)` is arccos(c) in (0, pi) for algebraic
/// c in (-1, 1). `Preimage` records (2*pi*k + sign*arccos(base))/den, the
/// exact preimage of a jump angle under z -> z^den; keeping the provenance
/// instead of a defining polynomial for the cosine avoids ever having to
/// select one root among conjugates.
#[derive(Clone)]
pub enum Angle {
    Turn(Rational64),
    CosRoot(AlgebraicReal),
    Preimage {
        base: AlgebraicReal,
        k: i64,
        sign: i8,
        den: i64,
    },
}

impl Angle {
    pub fn zero() -> Self {
        Angle::Turn(Rational64::zero())
    }

    pub fn pi() -> Self {
        Angle::Turn(Rational64::new(1, 2))
    }

    /// The angle 2*pi*r/d, folded into [0, pi].
    pub fn turn(r: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator in rational turn");
        Self::from_turn_ratio(Rational64::new(r, d))
    }

    pub fn from_turn_ratio(q: Rational64) -> Self {
        let mut q = q - q.floor();
        if q > Rational64::new(1, 2) {
            q = Rational64::one() - q;
        }
        Angle::Turn(q)
    }

    /// The angle arccos(c) for c in [-1, 1]. Rational cosines of rational
    /// turns (0, +-1/2, +-1, the full list by Niven's theorem) normalize to
    /// `Turn`, so structurally distinct variants never collide silently on
    /// those values.
    pub fn from_cos(c: AlgebraicReal) -> Self {
        if let Some(q) = c.as_rational() {
            let two = BigInt::from(2);
            if q.is_one() {
                return Self::zero();
            }
            if q == -BigRational::one() {
                return Self::pi();
            }
            if q.is_zero() {
                return Angle::Turn(Rational64::new(1, 4));
            }
            if q == BigRational::new(BigInt::one(), two.clone()) {
                return Angle::Turn(Rational64::new(1, 6));
            }
            if q == BigRational::new(-BigInt::one(), two) {
                return Angle::Turn(Rational64::new(1, 3));
            }
        }
        assert!(
            c.cmp_rational(&BigRational::one()) == Ordering::Less
                && c.cmp_rational(&(-BigRational::one())) == Ordering::Greater,
            "cosine out of range"
        );
        Angle::CosRoot(c)
    }

    /// The jump angle of the height-two grope bounding knots of Horn's
    /// family with parameter m: the unique theta in (0, pi/2] with
    /// 8m (1 - cos theta)^3 = 1.
    pub fn horn(m: i64) -> Self {
        Self::from_cos(cos_horn_angle(m))
    }

    fn preimage_raw(base: AlgebraicReal, k: i64, sign: i8, den: i64) -> Self {
        debug_assert!(den >= 1 && (sign == 1 || sign == -1));
        if den == 1 {
            debug_assert!(k == 0 && sign == 1);
            return Angle::CosRoot(base);
        }
        Angle::Preimage { base, k, sign, den }
    }

    /// The preimage of this angle on leg `leg` of the power map z -> z^d.
    /// Leg 2t covers source angles ascending over [2*pi*t/d, (2*pi*t+pi)/d];
    /// leg 2t+1 covers them descending over the adjacent interval.
    pub fn preimage(&self, leg: i64, d: i64) -> Angle {
        assert!(d >= 1 && (0..d).contains(&leg));
        let t = leg / 2;
        let ascending = leg % 2 == 0;
        match self {
            Angle::Turn(q) => {
                let t = Rational64::from_integer(t);
                let num = if ascending {
                    t + *q
                } else {
                    t + Rational64::one() - *q
                };
                Self::from_turn_ratio(num / Rational64::from_integer(d))
            }
            Angle::CosRoot(c) => {
                if ascending {
                    Self::preimage_raw(c.clone(), t, 1, d)
                } else {
                    Self::preimage_raw(c.clone(), t + 1, -1, d)
                }
            }
            Angle::Preimage { base, k, sign, den } => {
                if ascending {
                    Self::preimage_raw(base.clone(), t * den + k, *sign, d * den)
                } else {
                    Self::preimage_raw(base.clone(), (t + 1) * den - k, -sign, d * den)
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Angle::Turn(q) if q.is_zero())
    }

    pub fn is_pi(&self) -> bool {
        matches!(self, Angle::Turn(q) if *q == Rational64::new(1, 2))
    }

    /// The fraction of a full turn, when the angle is a rational turn.
    pub fn turns(&self) -> Option<Rational64> {
        match self {
            Angle::Turn(q) => Some(*q),
            _ => None,
        }
    }

    /// The exact cosine, available unless the angle is a power-map preimage
    /// (those are compared by folding and never need their own cosine).
    pub fn cos(&self) -> Option<AlgebraicReal> {
        match self {
            Angle::Turn(q) => Some(cos_of_turn(*q.numer(), *q.denom())),
            Angle::CosRoot(c) => Some(c.clone()),
            Angle::Preimage { .. } => None,
        }
    }

    /// Writes theta/pi as rational + coeff * (arccos(base)/pi). The second
    /// component is None exactly when theta is a rational turn.
    pub fn theta_over_pi(&self) -> (BigRational, Option<(AlgebraicReal, BigRational)>) {
        match self {
            Angle::Turn(q) => (
                BigRational::new(BigInt::from(2 * q.numer()), BigInt::from(*q.denom())),
                None,
            ),
            Angle::CosRoot(c) => (BigRational::zero(), Some((c.clone(), BigRational::one()))),
            Angle::Preimage { base, k, sign, den } => (
                BigRational::new(BigInt::from(2 * k), BigInt::from(*den)),
                Some((
                    base.clone(),
                    BigRational::new(BigInt::from(*sign as i64), BigInt::from(*den)),
                )),
            ),
        }
    }

    pub fn compare(&self, other: &Angle) -> Ordering {
        match (self, other) {
            (Angle::Turn(p), Angle::Turn(q)) => p.cmp(q),
            (Angle::Turn(p), Angle::CosRoot(c)) => cmp_turn_arccos(*p, c),
            (Angle::CosRoot(c), Angle::Turn(p)) => cmp_turn_arccos(*p, c).reverse(),
            (Angle::CosRoot(a), Angle::CosRoot(b)) => a.cmp(b).reverse(),
            (Angle::Preimage { .. }, Angle::Turn(q)) => cmp_preimage_turn(self, *q),
            (Angle::Turn(q), Angle::Preimage { .. }) => cmp_preimage_turn(other, *q).reverse(),
            (Angle::Preimage { .. }, Angle::CosRoot(c)) => cmp_preimage_arccos(self, c),
            (Angle::CosRoot(c), Angle::Preimage { .. }) => cmp_preimage_arccos(other, c).reverse(),
            (Angle::Preimage { .. }, Angle::Preimage { .. }) => cmp_preimage_preimage(self, other),
        }
    }

    /// A double precision approximation, for reports and plots only.
    pub fn to_f64(&self) -> f64 {
        match self {
            Angle::Turn(q) => {
                2.0 * std::f64::consts::PI * (*q.numer() as f64) / (*q.denom() as f64)
            }
            Angle::CosRoot(c) => c.to_f64().clamp(-1.0, 1.0).acos(),
            Angle::Preimage { base, k, sign, den } => {
                let theta0 = base.to_f64().clamp(-1.0, 1.0).acos();
                (2.0 * std::f64::consts::PI * (*k as f64) + (*sign as f64) * theta0)
                    / (*den as f64)
            }
        }
    }
}

/// Compares 2*pi*p (p in [0, 1/2]) against arccos(c) in (0, pi).
fn cmp_turn_arccos(p: Rational64, c: &AlgebraicReal) -> Ordering {
    if p.is_zero() {
        return Ordering::Less;
    }
    if p == Rational64::new(1, 2) {
        return Ordering::Greater;
    }
    cos_of_turn(*p.numer(), *p.denom()).cmp(c).reverse()
}

/// Compares arccos(c) in (0, pi) against the angle 2*pi*r for arbitrary
/// rational r, without folding r first.
fn cmp_arccos_vs_turn_angle(c: &AlgebraicReal, r: Rational64) -> Ordering {
    if r <= Rational64::zero() {
        return Ordering::Greater;
    }
    if r >= Rational64::new(1, 2) {
        return Ordering::Less;
    }
    cos_of_turn(*r.numer(), *r.denom()).cmp(c)
}

fn cmp_preimage_turn(a: &Angle, q: Rational64) -> Ordering {
    let Angle::Preimage { base, k, sign, den } = a else {
        unreachable!()
    };
    // (2 pi k + s theta0)/den vs 2 pi q  <=>  s theta0 vs 2 pi (q den - k).
    let r = q * Rational64::from_integer(*den) - Rational64::from_integer(*k);
    if *sign > 0 {
        cmp_arccos_vs_turn_angle(base, r)
    } else {
        cmp_arccos_vs_turn_angle(base, -r).reverse()
    }
}

enum Fold {
    /// mult * arccos(c) = j*pi + psi with psi in (0, pi) and cos psi given.
    Interior { j: i64, cos_psi: AlgebraicReal },
    /// arccos(c) = j*pi/mult exactly.
    Boundary { j: i64 },
}

/// Folds mult * arccos(c) into [0, pi]. Binary search places arccos(c)
/// within a pi/mult bin; the residual cosine is (-1)^j T_mult(c).
fn fold(mult: i64, c: &AlgebraicReal) -> Fold {
    assert!(mult >= 1);
    if mult == 1 {
        return Fold::Interior {
            j: 0,
            cos_psi: c.clone(),
        };
    }
    let (mut lo, mut hi) = (0i64, mult);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        match c.cmp(&cos_of_turn(mid, 2 * mult)) {
            Ordering::Greater => hi = mid,
            Ordering::Less => lo = mid,
            Ordering::Equal => return Fold::Boundary { j: mid },
        }
    }
    let mut cos_psi = c.apply_int_poly(&chebyshev_t(mult as u64));
    if lo % 2 == 1 {
        cos_psi = cos_psi.neg();
    }
    Fold::Interior { j: lo, cos_psi }
}

/// Rewrites a preimage angle whose base arccosine turned out to be the
/// rational turn j/(2*mult) as a plain rational turn.
fn preimage_to_turn(k: i64, sign: i8, den: i64, j: i64, mult: i64) -> Angle {
    Angle::turn(2 * mult * k + sign as i64 * j, 2 * mult * den)
}

fn cmp_preimage_arccos(a: &Angle, c2: &AlgebraicReal) -> Ordering {
    let Angle::Preimage { base, k, sign, den } = a else {
        unreachable!()
    };
    // Sign of den*arccos(c2) - 2 pi k - s theta0, then reversed.
    let (j, cos_psi) = match fold(*den, c2) {
        Fold::Boundary { j } => {
            return a.compare(&Angle::turn(j, 2 * den));
        }
        Fold::Interior { j, cos_psi } => (j, cos_psi),
    };
    let w = j - 2 * k;
    let diff_sign = if *sign > 0 {
        // pi w + (psi - theta0) with psi - theta0 in (-pi, pi).
        match w {
            _ if w >= 1 => Ordering::Greater,
            _ if w <= -1 => Ordering::Less,
            _ => base.cmp(&cos_psi),
        }
    } else {
        // pi w + (psi + theta0) with psi + theta0 in (0, 2 pi).
        match w {
            _ if w >= 0 => Ordering::Greater,
            _ if w <= -2 => Ordering::Less,
            _ => base.neg().cmp(&cos_psi),
        }
    };
    diff_sign.reverse()
}

fn cmp_preimage_preimage(a: &Angle, b: &Angle) -> Ordering {
    let Angle::Preimage {
        base: ca,
        k: ka,
        sign: sa,
        den: da,
    } = a
    else {
        unreachable!()
    };
    let Angle::Preimage {
        base: cb,
        k: kb,
        sign: sb,
        den: db,
    } = b
    else {
        unreachable!()
    };
    if da == db && ka == kb && sa == sb && ca == cb {
        return Ordering::Equal;
    }
    // Cross-multiplied: sign of db(2 pi ka + sa ta) - da(2 pi kb + sb tb).
    let (ja, psi_a) = match fold(*db, ca) {
        Fold::Boundary { j } => {
            return preimage_to_turn(*ka, *sa, *da, j, *db).compare(b);
        }
        Fold::Interior { j, cos_psi } => (j, cos_psi),
    };
    let (jb, psi_b) = match fold(*da, cb) {
        Fold::Boundary { j } => {
            return a.compare(&preimage_to_turn(*kb, *sb, *db, j, *da));
        }
        Fold::Interior { j, cos_psi } => (j, cos_psi),
    };
    let u = *sa as i64;
    let v = -(*sb as i64);
    let w = 2 * (ka * db - kb * da) + u * ja + v * jb;
    // pi w + u psi_a + v psi_b with each psi in (0, pi).
    if w >= 2 {
        return Ordering::Greater;
    }
    if w <= -2 {
        return Ordering::Less;
    }
    match (w, u, v) {
        (0, 1, 1) => Ordering::Greater,
        (0, -1, -1) => Ordering::Less,
        (0, 1, -1) => psi_b.cmp(&psi_a),
        (0, -1, 1) => psi_a.cmp(&psi_b),
        (1, -1, -1) => psi_a.neg().cmp(&psi_b).reverse(),
        (1, _, _) => Ordering::Greater,
        (-1, 1, 1) => psi_a.neg().cmp(&psi_b),
        (-1, _, _) => Ordering::Less,
        _ => unreachable!(),
    }
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for Angle {}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Turn(q) => {
                if q.is_zero() {
                    write!(f, "0")
                } else {
                    write!(f, "2pi*{}/{}", q.numer(), q.denom())
                }
            }
            Angle::CosRoot(c) => write!(f, "arccos({})", c),
            Angle::Preimage { base, k, sign, den } => {
                let s = if *sign > 0 { '+' } else { '-' };
                write!(f, "(2pi*{} {} arccos({}))/{}", k, s, base, den)
            }
        }
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arccos(num: i64, den: i64) -> Angle {
        Angle::from_cos(AlgebraicReal::from_ratio(num, den))
    }

    #[test]
    fn turns_fold_onto_upper_semicircle() {
        assert_eq!(Angle::turn(3, 4), Angle::turn(1, 4));
        assert_eq!(Angle::turn(7, 6), Angle::turn(1, 6));
        assert_eq!(Angle::turn(-1, 6), Angle::turn(1, 6));
        assert_eq!(Angle::turn(5, 10), Angle::pi());
        assert_eq!(Angle::turn(4, 4), Angle::zero());
        assert_eq!(Angle::turn(1, 3).turns(), Some(Rational64::new(1, 3)));
    }

    #[test]
    fn rational_cosines_of_rational_turns_normalize() {
        assert_eq!(arccos(1, 2), Angle::turn(1, 6));
        assert_eq!(arccos(-1, 2), Angle::turn(1, 3));
        assert_eq!(arccos(0, 1), Angle::turn(1, 4));
        assert_eq!(arccos(1, 1), Angle::zero());
        assert_eq!(arccos(-1, 1), Angle::pi());
        assert!(matches!(arccos(3, 4), Angle::CosRoot(_)));
    }

    #[test]
    fn cross_variant_equality_through_cosines() {
        let c = cos_of_turn(2, 7);
        assert_eq!(Angle::from_cos(c), Angle::turn(2, 7));
        assert_eq!(Angle::from_cos(cos_of_turn(1, 5)), Angle::turn(1, 5));
    }

    #[test]
    fn order_mixes_turns_and_arccosines() {
        // arccos(3/4) < pi/4 since 3/4 > cos(pi/4).
        assert!(arccos(3, 4) < Angle::turn(1, 8));
        assert!(arccos(3, 4) > Angle::turn(1, 10));
        assert!(Angle::zero() < arccos(99, 100));
        assert!(arccos(-99, 100) < Angle::pi());
        let sorted = vec![
            Angle::zero(),
            arccos(9, 10),
            Angle::turn(1, 6),
            arccos(1, 3),
            Angle::turn(1, 4),
            arccos(-3, 4),
            Angle::pi(),
        ];
        let mut shuffled = sorted.clone();
        shuffled.reverse();
        shuffled.sort();
        assert_eq!(shuffled, sorted);
    }

    #[test]
    fn preimages_of_rational_turns_stay_rational() {
        let phi = Angle::turn(1, 6);
        assert_eq!(phi.preimage(0, 3), Angle::turn(1, 18));
        assert_eq!(phi.preimage(1, 3), Angle::turn(5, 18));
        assert_eq!(phi.preimage(2, 3), Angle::turn(7, 18));
        // pi is its own cube preimage on the middle ascending leg.
        assert_eq!(Angle::pi().preimage(2, 3), Angle::pi());
        assert_eq!(Angle::pi().preimage(1, 3), Angle::turn(1, 6));
    }

    #[test]
    fn preimage_legs_sort_strictly() {
        let phi = arccos(3, 4);
        let legs: Vec<Angle> = (0..5).map(|l| phi.preimage(l, 5)).collect();
        for pair in legs.windows(2) {
            assert!(pair[0] < pair[1], "{} !< {}", pair[0], pair[1]);
        }
        // Leg boundaries: each descending breakpoint stays left of the next
        // full turn of the source.
        assert!(phi.preimage(1, 3) < Angle::turn(1, 3));
        assert!(phi.preimage(2, 3) > Angle::turn(1, 3));
    }

    #[test]
    fn preimage_against_turn_detects_equality() {
        // arccos(cos 2pi/8)/2 = pi/8.
        let half = Angle::from_cos(cos_of_turn(1, 8)).preimage(0, 2);
        assert_eq!(half, Angle::turn(1, 16));
    }

    #[test]
    fn preimage_against_arccos_strict_order() {
        // theta0/2 = arccos(3/4)/2 ~ 0.3614 vs arccos(0.95) ~ 0.3176.
        let half = arccos(3, 4).preimage(0, 2);
        assert!(half > arccos(19, 20));
        assert!(half < arccos(9, 10));
        // and against one on the other side of a fold boundary
        assert!(arccos(3, 4).preimage(1, 2) > arccos(-9, 10));
    }

    #[test]
    fn preimage_against_arccos_detects_equality() {
        // (2 pi - theta5)/2 = pi - theta5/2 = 4pi/5 for theta5 = 2pi/5.
        let a = Angle::from_cos(cos_of_turn(1, 5)).preimage(1, 2);
        assert_eq!(a, Angle::from_cos(cos_of_turn(2, 5)));
        assert_eq!(a, Angle::turn(2, 5));
    }

    #[test]
    fn preimage_cross_denominator_order() {
        let phi = arccos(3, 4);
        assert!(phi.preimage(0, 3) < phi.preimage(0, 2));
        // (2 pi + theta0)/3 < (2 pi - theta0)/2 = pi - theta0/2.
        assert!(phi.preimage(2, 3) < phi.preimage(1, 2));
        let nested = phi.preimage(1, 2).preimage(1, 3);
        let direct = phi.preimage(2, 6);
        assert_eq!(nested, direct);
    }

    #[test]
    fn theta_over_pi_decomposition() {
        let (r, sym) = Angle::turn(1, 6).theta_over_pi();
        assert_eq!(r, BigRational::new(BigInt::from(1), BigInt::from(3)));
        assert!(sym.is_none());

        let base = AlgebraicReal::from_ratio(3, 4);
        let (r, sym) = arccos(3, 4).theta_over_pi();
        assert!(r.is_zero());
        let (b, coeff) = sym.unwrap();
        assert_eq!(b, base);
        assert!(coeff.is_one());

        let (r, sym) = arccos(3, 4).preimage(1, 3).theta_over_pi();
        assert_eq!(r, BigRational::new(BigInt::from(2), BigInt::from(3)));
        let (_, coeff) = sym.unwrap();
        assert_eq!(coeff, BigRational::new(BigInt::from(-1), BigInt::from(3)));
    }

    #[test]
    fn horn_angles_match_their_cosines() {
        assert_eq!(Angle::horn(1), Angle::turn(1, 6));
        for (m, num, den) in [(8i64, 3i64, 4i64), (27, 5, 6), (64, 7, 8)] {
            assert_eq!(Angle::horn(m), arccos(num, den));
        }
        assert!(Angle::horn(2) < Angle::horn(1));
        assert!(Angle::horn(8) < Angle::horn(2));
    }

    #[test]
    fn approximate_values_agree() {
        let phi = arccos(3, 4);
        let t = (3.0f64 / 4.0).acos();
        assert!((phi.to_f64() - t).abs() < 1e-12);
        let p = phi.preimage(3, 5);
        let expected = (2.0 * std::f64::consts::PI * 2.0 - t) / 5.0;
        assert!((p.to_f64() - expected).abs() < 1e-12);
        assert!((Angle::turn(1, 6).to_f64() - std::f64::consts::PI / 3.0).abs() < 1e-15);
    }
}
