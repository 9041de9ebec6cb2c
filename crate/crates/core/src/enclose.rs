//! Certified rational enclosures of pi, cos, sin, sqrt, and arccos.
//!
//! Symbolic values stay exact everywhere else in the crate; this module is
//! where they are turned into decimals. Every function returns a pair
//! (lo, hi) of rationals that provably bracket the true value: series are
//! alternating with explicit tail bounds, square roots come from a Newton
//! iteration kept one-sided by outward rounding, and arccos reduces to
//! arcsin(sqrt((1-c)/2)), whose series converges geometrically at ratio
//! <= 1/2 on the range we feed it. Intermediate arithmetic is truncated to a
//! fixed number of decimal places with directed rounding, so denominators
//! stay small and the brackets stay honest.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebraic::AlgebraicReal;
use crate::angle::Angle;
use crate::stepfn::AverageValue;

type Iv = (BigRational, BigRational);

fn pow10(n: u32) -> BigInt {
    BigInt::from(10u32).pow(n)
}

fn eps(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), pow10(digits))
}

fn floor_to(q: &BigRational, digits: u32) -> BigRational {
    let s = BigRational::from_integer(pow10(digits));
    (q * &s).floor() / s
}

fn ceil_to(q: &BigRational, digits: u32) -> BigRational {
    let s = BigRational::from_integer(pow10(digits));
    (q * &s).ceil() / s
}

fn round_out(iv: Iv, digits: u32) -> Iv {
    (floor_to(&iv.0, digits), ceil_to(&iv.1, digits))
}

fn add_iv(a: &Iv, b: &Iv) -> Iv {
    (&a.0 + &b.0, &a.1 + &b.1)
}

fn sub_iv(a: &Iv, b: &Iv) -> Iv {
    (&a.0 - &b.1, &a.1 - &b.0)
}

fn mul_iv(a: &Iv, b: &Iv) -> Iv {
    let cands = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let lo = cands.iter().min().unwrap().clone();
    let hi = cands.iter().max().unwrap().clone();
    (lo, hi)
}

fn scale_iv(a: &Iv, c: &BigRational) -> Iv {
    if c.is_negative() {
        (&a.1 * c, &a.0 * c)
    } else {
        (&a.0 * c, &a.1 * c)
    }
}

/// [a]/[b] for b strictly positive.
fn div_iv_pos(a: &Iv, b: &Iv) -> Iv {
    assert!(b.0.is_positive());
    if a.0.is_negative() && a.1.is_negative() {
        (&a.0 / &b.0, &a.1 / &b.1)
    } else if a.0.is_negative() {
        (&a.0 / &b.0, &a.1 / &b.0)
    } else {
        (&a.0 / &b.1, &a.1 / &b.0)
    }
}

fn point(q: BigRational) -> Iv {
    (q.clone(), q)
}

/// atan(1/n) bracketed by consecutive partial sums of the alternating
/// Gregory series.
fn atan_inv(n: i64, digits: u32) -> Iv {
    let e = eps(digits);
    let n2 = BigRational::from_integer(BigInt::from(n) * BigInt::from(n));
    let mut power = BigRational::new(BigInt::one(), BigInt::from(n));
    let mut sum = BigRational::zero();
    let mut k = 0u64;
    loop {
        let term = &power / BigRational::from_integer(BigInt::from(2 * k + 1));
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        power /= &n2;
        let next = &power / BigRational::from_integer(BigInt::from(2 * k + 3));
        if next < e {
            return if k % 2 == 0 {
                (&sum - &next, sum)
            } else {
                (sum.clone(), sum + next)
            };
        }
        k += 1;
    }
}

/// pi by Machin's formula, cached per precision.
pub fn pi_enclosure(digits: u32) -> (BigRational, BigRational) {
    static CACHE: OnceLock<Mutex<HashMap<u32, Iv>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(iv) = cache.lock().unwrap().get(&digits) {
        return iv.clone();
    }
    let a = atan_inv(5, digits + 3);
    let b = atan_inv(239, digits + 3);
    let sixteen = BigRational::from_integer(BigInt::from(16));
    let four = BigRational::from_integer(BigInt::from(4));
    let iv = round_out(
        sub_iv(&scale_iv(&a, &sixteen), &scale_iv(&b, &four)),
        digits + 1,
    );
    cache.lock().unwrap().insert(digits, iv.clone());
    iv
}

/// sqrt of a nonnegative rational. Newton from above with outward decimal
/// rounding; the lower bound is q / upper.
pub fn sqrt_enclosure(q: &BigRational, digits: u32) -> (BigRational, BigRational) {
    assert!(!q.is_negative());
    if q.is_zero() {
        return point(BigRational::zero());
    }
    let e = eps(digits);
    use num_traits::ToPrimitive;
    let seed = q.to_f64().unwrap_or(f64::MAX).sqrt() * 1.0000001;
    let mut x = if seed.is_finite() && seed > 0.0 {
        BigRational::from_float(seed).unwrap_or_else(|| q + BigRational::one())
    } else {
        q + BigRational::one()
    };
    // Ensure we start at or above the root.
    if &x * &x < *q {
        x = (q + BigRational::one()) / BigRational::from_integer(BigInt::from(2))
            + BigRational::one();
    }
    loop {
        // One Newton step lands above sqrt(q) for any positive start;
        // rounding up keeps it there.
        x = ceil_to(
            &((&x + q / &x) / BigRational::from_integer(BigInt::from(2))),
            digits + 2,
        );
        let lo = q / &x;
        if &x - &lo < e {
            return (lo, x);
        }
    }
}

/// arcsin(sqrt(u)) for rational u in [0, 1/2], via the binomial series
/// arcsin(s) = s * sum_k C(2k,k)/(4^k (2k+1)) u^k with positive terms and a
/// geometric tail bound.
fn arcsin_sqrt(u: &BigRational, digits: u32) -> Iv {
    assert!(!u.is_negative() && *u <= BigRational::new(BigInt::one(), BigInt::from(2)));
    if u.is_zero() {
        return point(BigRational::zero());
    }
    let work = digits + 4;
    let e = eps(digits + 2);
    let s = sqrt_enclosure(u, work);
    // Power/coefficient walk: b_0 = 1, b_{k+1} = b_k (2k+1)^2/((2k+2)(2k+3)).
    let mut coeff = BigRational::one();
    let mut power: Iv = point(BigRational::one());
    let mut total: Iv = point(BigRational::zero());
    let u_iv = point(u.clone());
    let mut k: u64 = 0;
    loop {
        let term = round_out(scale_iv(&power, &coeff), work);
        total = add_iv(&total, &term);
        // Tail after k: sum_{j>k} b_j u^j <= b_k u^{k+1}/(1-u) <= 2 b_k u^{k+1}.
        let bound = ceil_to(
            &(&term.1 * u * BigRational::from_integer(BigInt::from(2))),
            work,
        );
        if bound < e {
            total.1 += bound;
            break;
        }
        let n = BigInt::from((2 * k + 1) * (2 * k + 1));
        let d = BigInt::from((2 * k + 2) * (2 * k + 3));
        coeff *= BigRational::new(n, d);
        power = round_out(mul_iv(&power, &u_iv), work);
        k += 1;
    }
    round_out(mul_iv(&s, &total), digits + 1)
}

/// arccos of an exact rational in [-1, 1], through
/// arccos(c) = 2 arcsin(sqrt((1-c)/2)).
pub fn arccos_rational_enclosure(c: &BigRational, digits: u32) -> (BigRational, BigRational) {
    let one = BigRational::one();
    assert!(*c >= -&one && *c <= one, "cosine out of range");
    let two = BigRational::from_integer(BigInt::from(2));
    let u = (&one - c) / &two;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if u <= half {
        let a = arcsin_sqrt(&u, digits + 2);
        round_out(scale_iv(&a, &two), digits + 1)
    } else {
        // arccos(c) = pi - 2 arcsin(sqrt(1-u)).
        let a = arcsin_sqrt(&(&one - &u), digits + 2);
        let pi = pi_enclosure(digits + 2);
        round_out(sub_iv(&pi, &scale_iv(&a, &two)), digits + 1)
    }
}

/// arccos of an algebraic number in [-1, 1]. The argument is refined until
/// the monotone image of its isolating interval is narrow enough.
pub fn arccos_enclosure(c: &AlgebraicReal, digits: u32) -> (BigRational, BigRational) {
    if let Some(q) = c.as_rational() {
        return arccos_rational_enclosure(&q, digits);
    }
    let e = eps(digits);
    let one = BigRational::one();
    let four = BigRational::from_integer(BigInt::from(4));
    // Refine the isolating interval until the derivative bound
    // |arccos'| <= 1/sqrt(1 - m^2) certifies the image is narrow enough,
    // then take the monotone image of the endpoints. arccos of the exact
    // endpoint rationals is computed only at the end.
    loop {
        let (clo, chi) = c.enclosure();
        if clo > -&one && chi < one {
            let m = clo.abs().max(chi.abs());
            let u = &one - &m * &m;
            let slope_den = sqrt_enclosure(&u, 6).0;
            if !slope_den.is_zero() && (&chi - &clo) * &four < &e * &slope_den {
                let lo = arccos_rational_enclosure(&chi, digits + 2).0;
                let hi = arccos_rational_enclosure(&clo, digits + 2).1;
                if &hi - &lo < e {
                    return (lo, hi);
                }
            }
        }
        c.refine_once();
    }
}

/// cos at an exact rational point (radians), certified to about `digits`
/// decimals. The input is truncated first; the Lipschitz constant 1 of cos
/// absorbs the truncation into the bracket.
pub fn cos_enclosure(x: &BigRational, digits: u32) -> (BigRational, BigRational) {
    sin_cos_series(x, digits, false)
}

/// sin at an exact rational point (radians).
pub fn sin_enclosure(x: &BigRational, digits: u32) -> (BigRational, BigRational) {
    sin_cos_series(x, digits, true)
}

fn sin_cos_series(x: &BigRational, digits: u32, sine: bool) -> Iv {
    let work = digits + 6;
    let x0 = floor_to(x, work);
    let trunc = x - &x0; // in [0, 10^-work)
    let x2 = round_out(point(&x0 * &x0), work);
    let mut power: Iv = if sine { point(x0.clone()) } else { point(BigRational::one()) };
    let mut sum: Iv = power.clone();
    let mut fact = BigInt::one();
    let mut k: u64 = 0;
    let e = eps(digits + 3);
    loop {
        k += 1;
        let (f1, f2) = if sine {
            (2 * k, 2 * k + 1)
        } else {
            (2 * k - 1, 2 * k)
        };
        fact *= BigInt::from(f1) * BigInt::from(f2);
        power = round_out(mul_iv(&power, &x2), work);
        let term = round_out(
            scale_iv(&power, &BigRational::new(BigInt::one(), fact.clone())),
            work,
        );
        if k % 2 == 1 {
            sum = sub_iv(&sum, &term);
        } else {
            sum = add_iv(&sum, &term);
        }
        // Once terms decrease, the alternating tail is bounded by the next
        // term's magnitude.
        let next_den = BigRational::from_integer(BigInt::from((f2 + 1) * (f2 + 2)));
        let next_mag = {
            let m = term.0.abs().max(term.1.abs());
            ceil_to(&(m * &x2.1 / next_den), work)
        };
        if x2.1 < BigRational::from_integer(BigInt::from((f2 + 1) * (f2 + 2))) && next_mag < e {
            sum.0 -= &next_mag;
            sum.1 += &next_mag;
            break;
        }
    }
    // |cos(x) - cos(x0)| <= |x - x0|, same for sin.
    sum.0 -= &trunc;
    sum.1 += &trunc;
    round_out(sum, digits + 1)
}

/// Radian enclosure of an exact angle.
pub fn angle_radians_enclosure(a: &Angle, digits: u32) -> (BigRational, BigRational) {
    match a {
        Angle::Turn(q) => {
            let pi = pi_enclosure(digits + 1);
            let two_q = BigRational::new(BigInt::from(2 * q.numer()), BigInt::from(*q.denom()));
            round_out(scale_iv(&pi, &two_q), digits + 1)
        }
        Angle::CosRoot(c) => arccos_enclosure(c, digits),
        Angle::Preimage { base, k, sign, den } => {
            let pi = pi_enclosure(digits + 2);
            let theta0 = arccos_enclosure(base, digits + 2);
            let two_k = BigRational::from_integer(BigInt::from(2 * k));
            let signed = if *sign > 0 {
                add_iv(&scale_iv(&pi, &two_k), &theta0)
            } else {
                sub_iv(&scale_iv(&pi, &two_k), &theta0)
            };
            round_out(
                scale_iv(&signed, &BigRational::new(BigInt::one(), BigInt::from(*den))),
                digits + 1,
            )
        }
    }
}

/// The angle as a fraction of a full turn: exact (a point interval) for
/// rational turns, a certified bracket otherwise.
pub fn angle_turns_enclosure(a: &Angle, digits: u32) -> (BigRational, BigRational) {
    if let Some(q) = a.turns() {
        let q = BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()));
        return point(q);
    }
    let rad = angle_radians_enclosure(a, digits + 2);
    let pi = pi_enclosure(digits + 2);
    let two = BigRational::from_integer(BigInt::from(2));
    round_out(div_iv_pos(&rad, &scale_iv(&pi, &two)), digits + 1)
}

impl AverageValue {
    /// A certified decimal bracket of the exact value.
    pub fn enclosure(&self, digits: u32) -> (BigRational, BigRational) {
        let mut total = point(self.rational_part().clone());
        if !self.symbolic_part().is_empty() {
            let pi = pi_enclosure(digits + 3);
            for (base, coeff) in self.symbolic_part() {
                let theta = arccos_enclosure(base, digits + 3);
                let ratio = div_iv_pos(&theta, &pi);
                total = add_iv(&total, &scale_iv(&ratio, coeff));
            }
        }
        round_out(total, digits + 1)
    }
}

/// Deterministic decimal rendering of a bracketed value with `sig`
/// significant digits, rounding the midpoint half-up.
pub fn decimal_of_interval(lo: &BigRational, hi: &BigRational, sig: u32) -> String {
    let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
    if mid.is_zero() {
        return "0".into();
    }
    let negative = mid.is_negative();
    let m = mid.abs();
    let one = BigRational::one();
    let places = if m >= one {
        let int_digits = m.to_integer().to_string().len() as u32;
        sig.saturating_sub(int_digits)
    } else {
        // Leading zeros after the point do not count as significant.
        let mut zeros = 0u32;
        let mut t = &m * BigRational::from_integer(BigInt::from(10));
        while t < one && zeros < 64 {
            t *= BigRational::from_integer(BigInt::from(10));
            zeros += 1;
        }
        sig + zeros
    };
    let scale = pow10(places);
    let scaled = &m * BigRational::from_integer(scale.clone());
    let mut whole = scaled.to_integer();
    let frac = &scaled - BigRational::from_integer(whole.clone());
    if frac >= BigRational::new(BigInt::one(), BigInt::from(2)) {
        whole += BigInt::one();
    }
    let digits = whole.to_string();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if places == 0 {
        out.push_str(&digits);
        return out;
    }
    let places = places as usize;
    if digits.len() <= places {
        out.push_str("0.");
        for _ in 0..(places - digits.len()) {
            out.push('0');
        }
        out.push_str(&digits);
    } else {
        let (int_part, frac_part) = digits.split_at(digits.len() - places);
        out.push_str(int_part);
        out.push('.');
        out.push_str(frac_part);
    }
    out
}
