//! Integer step functions on the circle, symmetric under conjugation.
//!
//! A function is stored by its jumps on (0, pi]: strictly increasing exact
//! angles paired with the value taken just after the jump. The value on the
//! arc adjacent to angle 0 is always 0, which is the right normalization for
//! knot signature functions. All operations are exact; in particular the
//! pullback under z -> z^d keeps track of every preimage angle without ever
//! approximating it.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebraic::AlgebraicReal;
use crate::angle::Angle;
use crate::error::{Error, Result};

/// What to do when an evaluation point sits exactly on a jump.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JumpRule {
    /// Refuse: the caller wanted a point where the function is locally
    /// constant.
    Strict,
    /// Return the mean of the two one-sided values, the convention under
    /// which signature functions of knots are defined pointwise.
    Average,
}

/// A conjugation-symmetric integer step function on the unit circle.
#[derive(Clone, PartialEq, Eq)]
pub struct StepFunction {
    /// (angle, value after the jump), angles strictly increasing in (0, pi].
    /// A jump at pi records the value at -1 itself (the arc beyond it is
    /// empty); no adjacent entries carry equal values.
    jumps: Vec<(Angle, i64)>,
}

impl StepFunction {
    pub fn zero() -> Self {
        StepFunction { jumps: Vec::new() }
    }

    /// Builds a function from (angle, value after) pairs in any order.
    /// Coincident angles and jumps at angle 0 are rejected; entries that do
    /// not change the value are dropped.
    pub fn from_jumps(mut jumps: Vec<(Angle, i64)>) -> Result<Self> {
        jumps.sort_by(|a, b| a.0.compare(&b.0));
        for pair in jumps.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::Domain(format!(
                    "coincident jump angles at {}",
                    pair[0].0
                )));
            }
        }
        if let Some((a, _)) = jumps.first() {
            if a.is_zero() {
                return Err(Error::Domain("jump at angle 0".into()));
            }
        }
        Ok(StepFunction {
            jumps: drop_spurious(jumps),
        })
    }

    /// The function equal to `height` on [lo, hi) and 0 elsewhere on the
    /// upper semicircle.
    pub fn bump(lo: Angle, hi: Angle, height: i64) -> Result<Self> {
        if !lo.compare(&hi).is_lt() || lo.is_zero() {
            return Err(Error::Domain(format!("empty bump [{}, {})", lo, hi)));
        }
        Self::from_jumps(vec![(lo, height), (hi, 0)])
    }

    pub fn jumps(&self) -> &[(Angle, i64)] {
        &self.jumps
    }

    pub fn is_zero(&self) -> bool {
        self.jumps.is_empty()
    }

    pub fn add(&self, other: &StepFunction) -> StepFunction {
        let (fs, gs) = (&self.jumps, &other.jumps);
        let mut out = Vec::with_capacity(fs.len() + gs.len());
        let (mut i, mut j) = (0usize, 0usize);
        let (mut vf, mut vg) = (0i64, 0i64);
        while i < fs.len() || j < gs.len() {
            let pick = if i == fs.len() {
                std::cmp::Ordering::Greater
            } else if j == gs.len() {
                std::cmp::Ordering::Less
            } else {
                fs[i].0.compare(&gs[j].0)
            };
            let angle = match pick {
                std::cmp::Ordering::Less => {
                    vf = fs[i].1;
                    i += 1;
                    fs[i - 1].0.clone()
                }
                std::cmp::Ordering::Greater => {
                    vg = gs[j].1;
                    j += 1;
                    gs[j - 1].0.clone()
                }
                std::cmp::Ordering::Equal => {
                    vf = fs[i].1;
                    vg = gs[j].1;
                    i += 1;
                    j += 1;
                    fs[i - 1].0.clone()
                }
            };
            out.push((angle, vf + vg));
        }
        StepFunction {
            jumps: drop_spurious(out),
        }
    }

    pub fn negate(&self) -> StepFunction {
        StepFunction {
            jumps: self.jumps.iter().map(|(a, v)| (a.clone(), -v)).collect(),
        }
    }

    pub fn scale(&self, n: i64) -> StepFunction {
        if n == 0 {
            return StepFunction::zero();
        }
        StepFunction {
            jumps: self
                .jumps
                .iter()
                .map(|(a, v)| (a.clone(), v.checked_mul(n).expect("value overflow")))
                .collect(),
        }
    }

    /// The composition theta -> f(d * theta), the signature transform of the
    /// (d, 1)-cable. Each jump of f acquires d preimages, alternating over
    /// ascending and descending legs of the power map; preimage angles are
    /// kept exact. A jump exactly at pi would pull back to removable point
    /// discontinuities, which a step function cannot carry, so that case is
    /// rejected.
    pub fn pullback_power(&self, d: i64) -> Result<StepFunction> {
        assert!(d >= 1);
        if d == 1 || self.is_zero() {
            return Ok(self.clone());
        }
        if self.jumps.last().map(|(a, _)| a.is_pi()) == Some(true) {
            return Err(Error::Domain(
                "pullback of a function with a jump at pi".into(),
            ));
        }
        let mut out = Vec::with_capacity(self.jumps.len() * d as usize);
        for leg in 0..d {
            if leg % 2 == 0 {
                for (a, v) in &self.jumps {
                    out.push((a.preimage(leg, d), *v));
                }
            } else {
                for idx in (0..self.jumps.len()).rev() {
                    let before = if idx == 0 { 0 } else { self.jumps[idx - 1].1 };
                    out.push((self.jumps[idx].0.preimage(leg, d), before));
                }
            }
        }
        debug_assert!(out.windows(2).all(|p| p[0].0.compare(&p[1].0).is_lt()));
        Ok(StepFunction {
            jumps: drop_spurious(out),
        })
    }

    /// The exact value at `angle` when the function is locally constant
    /// there, and at pi always (a jump at pi stores the value at -1 itself).
    fn strict_value(&self, angle: &Angle) -> Result<i64> {
        let mut value = 0i64;
        for (a, v) in &self.jumps {
            match angle.compare(a) {
                std::cmp::Ordering::Less => break,
                std::cmp::Ordering::Equal => {
                    if a.is_pi() {
                        return Ok(*v);
                    }
                    return Err(Error::AtJump(format!("{}", a)));
                }
                std::cmp::Ordering::Greater => value = *v,
            }
        }
        Ok(value)
    }

    /// Evaluates at an angle. Under `JumpRule::Average` a point on an
    /// interior jump yields the mean of the one-sided values, hence possibly
    /// a half-integer.
    pub fn evaluate(&self, angle: &Angle, rule: JumpRule) -> Result<BigRational> {
        let mut before = 0i64;
        for (a, v) in &self.jumps {
            match angle.compare(a) {
                std::cmp::Ordering::Less => break,
                std::cmp::Ordering::Equal => {
                    if a.is_pi() {
                        return Ok(BigRational::from_integer(BigInt::from(*v)));
                    }
                    return match rule {
                        JumpRule::Strict => Err(Error::AtJump(format!("{}", a))),
                        JumpRule::Average => Ok(BigRational::new(
                            BigInt::from(before + v),
                            BigInt::from(2),
                        )),
                    };
                }
                std::cmp::Ordering::Greater => before = *v,
            }
        }
        Ok(BigRational::from_integer(BigInt::from(before)))
    }

    /// Sum of the values over all d-th roots of unity, using conjugation
    /// symmetry. Landing exactly on an interior jump is reported as a
    /// collision with the witness root.
    pub fn sum_over_dth_roots(&self, d: i64) -> Result<i64> {
        assert!(d >= 1);
        let mut total: i128 = 0;
        for r in 1..=(d - 1) / 2 {
            match self.strict_value(&Angle::turn(r, d)) {
                Ok(v) => total += 2 * v as i128,
                Err(Error::AtJump(_)) => return Err(Error::JumpCollision { r, d }),
                Err(e) => return Err(e),
            }
        }
        if d % 2 == 0 {
            total += self.strict_value(&Angle::pi())? as i128;
        }
        i64::try_from(total).map_err(|_| Error::Overflow("root sum"))
    }

    /// The normalized integral (1/pi) * int_0^pi f, as an exact linear
    /// combination of 1 and arccosines of algebraic numbers over Q.
    pub fn average(&self) -> AverageValue {
        let mut rational = BigRational::zero();
        let mut symbolic: Vec<(AlgebraicReal, BigRational)> = Vec::new();
        let mut last = 0i64;
        for (a, v) in &self.jumps {
            if a.is_pi() {
                continue;
            }
            let delta = BigRational::from_integer(BigInt::from(last - v));
            let (r, sym) = a.theta_over_pi();
            rational += r * &delta;
            if let Some((base, coeff)) = sym {
                accumulate(&mut symbolic, base, coeff * &delta);
            }
            last = *v;
        }
        rational += BigRational::from_integer(BigInt::from(last));
        symbolic.retain(|(_, c)| !c.is_zero());
        symbolic.sort_by(|x, y| x.0.cmp(&y.0));
        AverageValue { rational, symbolic }
    }

    /// Closed arcs of the upper semicircle on which the function is nonzero.
    /// A nonzero value carried only by a jump at pi contributes the
    /// degenerate arc [pi, pi].
    pub fn support(&self) -> Vec<(Angle, Angle)> {
        let mut arcs = Vec::new();
        let mut start: Option<Angle> = None;
        let mut prev = 0i64;
        for (a, v) in &self.jumps {
            if a.is_pi() {
                match (&start, prev != 0, *v != 0) {
                    (Some(s), _, _) => arcs.push((s.clone(), Angle::pi())),
                    (None, false, true) => arcs.push((Angle::pi(), Angle::pi())),
                    _ => {}
                }
                return arcs;
            }
            if prev == 0 && *v != 0 {
                start = Some(a.clone());
            } else if prev != 0 && *v == 0 {
                arcs.push((start.take().expect("open run"), a.clone()));
            }
            prev = *v;
        }
        if let Some(s) = start {
            arcs.push((s, Angle::pi()));
        }
        arcs
    }

    /// Whether the supports meet in at most finitely many points. Arcs that
    /// only share an endpoint count as disjoint: the overlap has measure
    /// zero, which is what matters for integrals of products.
    pub fn supports_disjoint(&self, other: &StepFunction) -> bool {
        let (sa, sb) = (self.support(), other.support());
        for (s1, e1) in &sa {
            for (s2, e2) in &sb {
                let separated =
                    e1.compare(s2) != std::cmp::Ordering::Greater
                        || e2.compare(s1) != std::cmp::Ordering::Greater;
                if !separated {
                    return false;
                }
            }
        }
        true
    }
}

fn drop_spurious(jumps: Vec<(Angle, i64)>) -> Vec<(Angle, i64)> {
    let mut out: Vec<(Angle, i64)> = Vec::with_capacity(jumps.len());
    let mut prev = 0i64;
    for (a, v) in jumps {
        if v != prev {
            out.push((a, v));
            prev = v;
        }
    }
    out
}

fn accumulate(symbolic: &mut Vec<(AlgebraicReal, BigRational)>, base: AlgebraicReal, coeff: BigRational) {
    if coeff.is_zero() {
        return;
    }
    for (b, c) in symbolic.iter_mut() {
        if *b == base {
            *c += coeff;
            return;
        }
    }
    symbolic.push((base, coeff));
}

impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (a, v)) in self.jumps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} at {}", v, a)?;
        }
        Ok(())
    }
}

impl fmt::Debug for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An exact average value r + sum c_i * arccos(b_i)/pi with rational r, c_i
/// and algebraic b_i. Vanishing is decidable: arccosines of distinct bases
/// in (-1, 1) and the constant 1 are linearly independent witnesses kept in
/// normalized form, so the value is zero exactly when all parts are.
#[derive(Clone, PartialEq)]
pub struct AverageValue {
    rational: BigRational,
    symbolic: Vec<(AlgebraicReal, BigRational)>,
}

impl AverageValue {
    pub fn zero() -> Self {
        AverageValue {
            rational: BigRational::zero(),
            symbolic: Vec::new(),
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn symbolic_part(&self) -> &[(AlgebraicReal, BigRational)] {
        &self.symbolic
    }

    /// True when the value is exactly zero as a formal combination.
    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.symbolic.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.symbolic.is_empty()
    }

    pub fn add(&self, other: &AverageValue) -> AverageValue {
        let mut symbolic = self.symbolic.clone();
        for (b, c) in &other.symbolic {
            accumulate(&mut symbolic, b.clone(), c.clone());
        }
        symbolic.retain(|(_, c)| !c.is_zero());
        symbolic.sort_by(|x, y| x.0.cmp(&y.0));
        AverageValue {
            rational: &self.rational + &other.rational,
            symbolic,
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let mut x = self.rational.to_f64().unwrap_or(f64::NAN);
        for (b, c) in &self.symbolic {
            x += c.to_f64().unwrap_or(f64::NAN) * b.to_f64().clamp(-1.0, 1.0).acos()
                / std::f64::consts::PI;
        }
        x
    }
}

impl fmt::Display for AverageValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.rational.is_zero() || self.symbolic.is_empty() {
            write!(f, "{}", self.rational)?;
            first = false;
        }
        for (b, c) in &self.symbolic {
            if first {
                write!(f, "{}*", c)?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}*", -c)?;
            } else {
                write!(f, " + {}*", c)?;
            }
            write!(f, "arccos({})/pi", b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for AverageValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
