//! Dense univariate polynomials over Z and Q, plus the exact real-root
//! machinery (Sturm chains, Descartes counts, isolation by bisection) that
//! the signature and angle modules are built on.
//!
//! Coefficients are stored in ascending exponent order with no trailing
//! zero; the zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Polynomial with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// c * x^k
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPoly { coeffs: v }
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 alongside `is_zero`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + other.coeff(i));
        }
        Self::new(v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        Self::new(v)
    }

    /// gcd of the absolute coefficient values; zero polynomial gives 0.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Content-free version with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Content-free version keeping the original sign; Sturm chains need
    /// sign-preserving normalization.
    pub fn primitive_keep_sign(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.content();
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of the value at a rational point: -1, 0 or 1.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        // p(a/b) * b^deg is integral; avoids rational normalization churn.
        if self.is_zero() {
            return 0;
        }
        let a = x.numer();
        let b = x.denom();
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        sign_of(&acc)
    }

    /// Interval evaluation by Horner over rational endpoints.
    pub fn eval_interval(
        &self,
        lo: &BigRational,
        hi: &BigRational,
    ) -> (BigRational, BigRational) {
        let mut acc = (BigRational::zero(), BigRational::zero());
        let x = (lo.clone(), hi.clone());
        for c in self.coeffs.iter().rev() {
            acc = interval_mul(&acc, &x);
            let cc = BigRational::from_integer(c.clone());
            acc = (acc.0 + &cc, acc.1 + cc);
        }
        acc
    }

    /// p(q(x)).
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Exact division; `None` if the remainder is nonzero or any quotient
    /// coefficient would leave Z.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dlead = divisor.leading();
        let ddeg = divisor.degree();
        let mut quot = vec![BigInt::zero(); self.degree() - ddeg + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + ddeg].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&dlead);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    /// Pseudo-remainder of `self` by `divisor`, scaled so that the overall
    /// multiplier applied to `self` is positive. Returns the remainder.
    pub fn signed_prem(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero());
        let ddeg = divisor.degree();
        let dlead = divisor.leading();
        let mut rem = self.clone();
        let mut steps = 0usize;
        while !rem.is_zero() && rem.degree() >= ddeg {
            let shift = rem.degree() - ddeg;
            let rlead = rem.leading();
            rem = rem.scale(&dlead).sub(&divisor.mul(&Self::monomial(rlead, shift)));
            steps += 1;
        }
        if dlead.is_negative() && steps % 2 == 1 {
            rem = rem.neg();
        }
        rem
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        loop {
            let r = a.signed_prem(&b);
            if r.is_zero() {
                return b.primitive();
            }
            a = b;
            b = r.primitive();
        }
    }

    /// Largest squarefree divisor, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if self.degree() == 0 {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.primitive();
        }
        self.primitive()
            .div_exact(&g)
            .expect("gcd divides")
            .primitive()
    }

    /// Number of sign variations in the coefficient sequence (zeros skipped).
    pub fn descartes_variations(&self) -> usize {
        sign_variations(self.coeffs.iter().map(|c| sign_of(c)))
    }

    /// p(-x).
    pub fn reflect(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        Self::new(v)
    }

    /// Strict bound B with every real root in (-B, B).
    pub fn cauchy_bound(&self) -> BigRational {
        assert!(!self.is_zero());
        let lead = self.leading().abs();
        let mut m = BigInt::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        BigRational::one() + BigRational::new(m, lead)
    }

    pub fn to_string_var(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push('-');
            } else {
                out.push('+');
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            if i > 0 {
                out.push(var);
                if i > 1 {
                    out.push('^');
                    out.push_str(&i.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var('x'))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var('x'))
    }
}

pub fn sign_of(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn sign_of_rational(x: &BigRational) -> i32 {
    sign_of(x.numer())
}

fn sign_variations<I: Iterator<Item = i32>>(signs: I) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn interval_mul(
    a: &(BigRational, BigRational),
    b: &(BigRational, BigRational),
) -> (BigRational, BigRational) {
    let p1 = &a.0 * &b.0;
    let p2 = &a.0 * &b.1;
    let p3 = &a.1 * &b.0;
    let p4 = &a.1 * &b.1;
    let mut lo = p1.clone();
    let mut hi = p1;
    for p in [p2, p3, p4] {
        if p < lo {
            lo = p.clone();
        }
        if p > hi {
            hi = p;
        }
    }
    (lo, hi)
}

/// Sturm chain of a polynomial; counts distinct real roots.
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let mut chain = Vec::new();
        let p0 = p.primitive_keep_sign();
        if p0.is_zero() {
            return SturmChain { chain };
        }
        chain.push(p0.clone());
        let mut a = p0;
        let mut b = a.derivative().primitive_keep_sign();
        while !b.is_zero() {
            chain.push(b.clone());
            let r = a.signed_prem(&b).neg().primitive_keep_sign();
            a = b;
            b = r;
        }
        SturmChain { chain }
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        sign_variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    /// Distinct real roots in the open interval (a, b). Requires that the
    /// base polynomial does not vanish at either endpoint.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        if self.chain.is_empty() {
            return 0;
        }
        debug_assert!(a < b);
        debug_assert!(self.chain[0].sign_at(a) != 0);
        debug_assert!(self.chain[0].sign_at(b) != 0);
        let va = self.variations_at(a);
        let vb = self.variations_at(b);
        va.saturating_sub(vb)
    }
}

/// Isolating intervals, in increasing order, for all real roots of a
/// squarefree polynomial. Every returned interval (a, b) is open, has
/// endpoints that are not roots, and contains exactly one root.
pub fn isolate_real_roots(p: &IntPoly) -> Vec<(BigRational, BigRational)> {
    assert!(!p.is_zero());
    if p.degree() == 0 {
        return vec![];
    }
    let chain = SturmChain::new(p);
    let bound = p.cauchy_bound();
    let lo = -bound.clone();
    let hi = bound;
    let mut out = Vec::new();
    subdivide(p, &chain, lo, hi, &mut out);
    out
}

fn subdivide(
    p: &IntPoly,
    chain: &SturmChain,
    a: BigRational,
    b: BigRational,
    out: &mut Vec<(BigRational, BigRational)>,
) {
    let mut work = vec![(a, b)];
    let mut fuel = 100_000u32;
    while let Some((a, b)) = work.pop() {
        fuel = fuel.checked_sub(1).unwrap_or_else(|| {
            panic!("isolation stalled on ({}, {}) for {}", a, b, p)
        });
        let n = chain.count_roots(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push((a, b));
            continue;
        }
        let mut mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
        // Nudge off a root hit so endpoint preconditions keep holding.
        if p.sign_at(&mid) == 0 {
            let mut step = (&b - &a) / BigRational::from_integer(BigInt::from(4));
            loop {
                let cand = &mid + &step;
                if cand < b && p.sign_at(&cand) != 0 {
                    mid = cand;
                    break;
                }
                step /= BigRational::from_integer(BigInt::from(2));
            }
        }
        // Popped in order: push the right half first.
        work.push((mid.clone(), b));
        work.push((a, mid));
    }
}

/// Polynomial with rational coefficients, used for interpolation and
/// characteristic polynomials before clearing denominators.
#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_int_poly(p: &IntPoly) -> Self {
        Self::new(
            p.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn neg(&self) -> Self {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + other.coeff(i));
        }
        Self::new(v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Multiply through by the lcm of denominators; the result is primitive
    /// only if the input was. Returns the integer polynomial.
    pub fn clear_denominators(&self) -> IntPoly {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect(),
        )
    }

    /// Lagrange interpolation through distinct nodes.
    pub fn lagrange(points: &[(BigRational, BigRational)]) -> Self {
        let mut acc = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut num = Self::constant(yi.clone());
            let mut den = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                num = num.mul(&Self::new(vec![-xj.clone(), BigRational::one()]));
                den *= xi - xj;
            }
            acc = acc.add(&num.scale(&den.recip()));
        }
        acc
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*x^{}", c, i))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
