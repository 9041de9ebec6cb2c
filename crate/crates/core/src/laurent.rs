//! Integer Laurent polynomials up to units, with the symmetry, square-root,
//! and coprimality tests used by the tuple-indexed filtration obstructions.
//!
//! A value is stored as `t^lo * body` where `body` is an ordinary integer
//! polynomial with nonzero constant term, so multiplying by `t^i` only moves
//! `lo`. Strong coprimality in the sense of Cochran-Harvey-Leidy (coprimality
//! of `p(t^m)` and `q(t^n)` for all m, n >= 1) is decided exactly on the
//! rational-rooted fragment and by a bounded substitution scan elsewhere.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// An integer Laurent polynomial `t^lo * body`, `body(0) != 0` unless zero.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    lo: i64,
    body: IntPoly,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            lo: 0,
            body: IntPoly::zero(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly {
            lo: 0,
            body: IntPoly::one(),
        }
    }

    /// Wraps an ordinary polynomial, factoring out any power of `t`.
    pub fn from_int_poly(p: IntPoly) -> Self {
        Self::from_parts(0, p)
    }

    fn from_parts(lo: i64, body: IntPoly) -> Self {
        if body.is_zero() {
            return Self::zero();
        }
        let shift = body
            .coeffs()
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial has a nonzero coefficient");
        if shift == 0 {
            return LaurentPoly { lo, body };
        }
        let coeffs = body.coeffs()[shift..].to_vec();
        LaurentPoly {
            lo: lo + shift as i64,
            body: IntPoly::new(coeffs),
        }
    }

    /// Builds from consecutive coefficients starting at exponent `lowest`.
    pub fn from_coeffs(lowest: i64, coeffs: &[i64]) -> Self {
        Self::from_parts(lowest, IntPoly::from_i64(coeffs))
    }

    /// Builds from a sparse list of `(exponent, coefficient)` terms.
    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for &(e, c) in terms {
            let entry = map.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Self::zero();
        }
        let lo = *map.keys().next().unwrap();
        let hi = *map.keys().last().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize + 1];
        for (e, c) in map {
            coeffs[(e - lo) as usize] = c;
        }
        Self::from_parts(lo, IntPoly::new(coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// True for `±t^i`.
    pub fn is_unit(&self) -> bool {
        self.body.degree() == 0 && self.body.coeff(0).abs().is_one()
    }

    /// Lowest and highest exponents with nonzero coefficient.
    pub fn exponent_span(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            None
        } else {
            Some((self.lo, self.lo + self.body.degree() as i64))
        }
    }

    /// The polynomial part, with the power of `t` stripped.
    pub fn body(&self) -> &IntPoly {
        &self.body
    }

    /// Canonical representative modulo `±t^i`: lowest exponent 0, positive
    /// leading coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let body = if self.body.leading().is_negative() {
            self.body.neg()
        } else {
            self.body.clone()
        };
        LaurentPoly { lo: 0, body }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            lo: self.lo,
            body: self.body.neg(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_parts(self.lo + other.lo, self.body.mul(&other.body))
    }

    /// Substitutes `t -> t^s`.
    pub fn substitute_power(&self, s: u32) -> Self {
        assert!(s >= 1, "substitution power must be positive");
        if self.is_zero() || s == 1 {
            return self.clone();
        }
        let d = self.body.degree();
        let mut coeffs = vec![BigInt::zero(); d * s as usize + 1];
        for (i, c) in self.body.coeffs().iter().enumerate() {
            coeffs[i * s as usize] = c.clone();
        }
        LaurentPoly {
            lo: self.lo * s as i64,
            body: IntPoly::new(coeffs),
        }
    }

    /// Evaluation at `t = 1` (units contribute a factor 1).
    pub fn eval_one(&self) -> BigInt {
        self.body.coeffs().iter().sum()
    }

    /// True iff `p(1/t) = ±t^i p(t)`: palindromic coefficients up to sign.
    pub fn is_symmetric(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let c = self.normalized().body;
        let fwd = c.coeffs();
        let symmetric = fwd
            .iter()
            .zip(fwd.iter().rev())
            .all(|(a, b)| a == b)
            || fwd
                .iter()
                .zip(fwd.iter().rev())
                .all(|(a, b)| *a == -b);
        Ok(symmetric)
    }

    /// Exact square root modulo units: `delta` with `delta^2 = ±t^i * self`.
    /// Whether `delta` is symmetric and has `delta(1) = ±1` is reported
    /// alongside since the admissibility clauses need both.
    pub fn square_root(&self) -> Option<SquareRoot> {
        if self.is_zero() {
            return None;
        }
        let q = self.normalized().body;
        let d = q.degree();
        if d % 2 != 0 {
            return None;
        }
        let h = d / 2;
        let lead = q.coeff(d);
        let s = lead.sqrt();
        if &s * &s != lead {
            return None;
        }
        let mut delta = vec![BigRational::zero(); h + 1];
        delta[h] = BigRational::from_integer(s);
        let two_lead = &delta[h] + &delta[h];
        for j in (0..h).rev() {
            // coeff_{h+j}(delta^2) = 2 delta_h delta_j + sum over interior pairs
            let mut cross = BigRational::zero();
            for a in (j + 1)..h {
                cross += &delta[a] * &delta[h + j - a];
            }
            let target = BigRational::from_integer(q.coeff(h + j)) - cross;
            delta[j] = target / &two_lead;
        }
        // Verify the full square, then clear (necessarily trivial) denominators.
        let mut square = vec![BigRational::zero(); d + 1];
        for (a, ca) in delta.iter().enumerate() {
            for (b, cb) in delta.iter().enumerate() {
                square[a + b] += ca * cb;
            }
        }
        for (k, c) in square.iter().enumerate() {
            if *c != BigRational::from_integer(q.coeff(k)) {
                return None;
            }
        }
        let mut int_coeffs = Vec::with_capacity(h + 1);
        for c in &delta {
            if !c.is_integer() {
                return None;
            }
            int_coeffs.push(c.to_integer());
        }
        let root = LaurentPoly::from_int_poly(IntPoly::new(int_coeffs));
        let symmetric = root.is_symmetric().expect("square root is nonzero");
        let unit_at_one = root.eval_one().abs().is_one();
        Some(SquareRoot {
            root,
            symmetric,
            unit_at_one,
        })
    }

    /// True iff the reduction mod `d` is neither zero nor a monomial for every
    /// prime `d`. Units in `F_d[t^{±1}]` are exactly the monomials, so this is
    /// the operative nonunit criterion; a bad prime must divide all nonzero
    /// coefficients but at most one, hence the gcd test below is exhaustive.
    pub fn nonunit_mod_every_prime(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let nonzero: Vec<BigInt> = self
            .body
            .coeffs()
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.abs())
            .collect();
        if nonzero.len() <= 1 {
            return Ok(false);
        }
        for skip in 0..nonzero.len() {
            let mut g = BigInt::zero();
            for (i, c) in nonzero.iter().enumerate() {
                if i != skip {
                    g = g.gcd(c);
                }
            }
            if g > BigInt::one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Parses expressions like `2t^2-5t+2`, `t-3+t^-1`, `(t-2)(2t-1)`.
    pub fn parse(input: &str) -> Result<Self> {
        Parser::new(input).parse()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..=self.body.degree()).rev() {
            let c = self.body.coeff(i);
            if c.is_zero() {
                continue;
            }
            let exp = self.lo + i as i64;
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mag = c.abs();
            if !mag.is_one() || exp == 0 {
                write!(f, "{}", mag)?;
            }
            match exp {
                0 => {}
                1 => write!(f, "t")?,
                e => write!(f, "t^{}", e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Square root of a Laurent polynomial modulo units, with the properties of
/// the root that admissibility checking needs.
#[derive(Clone, Debug)]
pub struct SquareRoot {
    pub root: LaurentPoly,
    pub symmetric: bool,
    pub unit_at_one: bool,
}

/// Witness that p and q are not strongly coprime: roots `alpha` of p and
/// `beta` of q satisfy `alpha^m = beta^n`, equivalently `p(t^n)` and `q(t^m)`
/// share the listed factor.
#[derive(Clone, Debug)]
pub struct StrongWitness {
    pub m: u64,
    pub n: u64,
    pub common_factor: LaurentPoly,
}

/// Outcome of the exact strong-coprimality test.
#[derive(Clone, Debug)]
pub enum StrongCoprimality {
    Yes,
    No(StrongWitness),
    /// Irrational roots put the pair outside the decidable fragment; callers
    /// can fall back to `strongly_coprime_bounded`.
    Unsupported,
}

/// Outcome of the bounded substitution scan: a scan can refute but never
/// certify strong coprimality.
#[derive(Clone, Debug)]
pub enum BoundedCoprimality {
    No(StrongWitness),
    Unknown,
}

/// True iff the gcd over the rationals of the polynomial parts is a unit.
pub fn coprime(p: &LaurentPoly, q: &LaurentPoly) -> Result<bool> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = p.normalized().body.gcd(&q.normalized().body);
    Ok(g.degree() == 0)
}

/// Decides strong coprimality exactly when both arguments split into linear
/// factors with rational roots; nonzero rationals `alpha`, `beta` admit
/// `alpha^m = beta^n` iff their prime-exponent vectors are positively
/// parallel, with signs fixed up by doubling.
pub fn strongly_coprime(p: &LaurentPoly, q: &LaurentPoly) -> Result<StrongCoprimality> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pn = p.normalized();
    let qn = q.normalized();
    let content_gcd = pn.body.content().gcd(&qn.body.content());
    if content_gcd > BigInt::one() {
        let factor = LaurentPoly::from_int_poly(IntPoly::constant(content_gcd));
        return Ok(StrongCoprimality::No(StrongWitness {
            m: 1,
            n: 1,
            common_factor: factor,
        }));
    }
    // With coprime contents, a constant side can never share a factor.
    if pn.body.degree() == 0 || qn.body.degree() == 0 {
        return Ok(StrongCoprimality::Yes);
    }
    if pn == qn {
        let factor = pn.clone();
        return Ok(StrongCoprimality::No(StrongWitness {
            m: 1,
            n: 1,
            common_factor: factor,
        }));
    }
    let p_roots = match rational_roots(&pn.body) {
        Some(r) => r,
        None => return Ok(StrongCoprimality::Unsupported),
    };
    let q_roots = match rational_roots(&qn.body) {
        Some(r) => r,
        None => return Ok(StrongCoprimality::Unsupported),
    };
    let mut best: Option<(u64, u64)> = None;
    for alpha in &p_roots {
        for beta in &q_roots {
            match dependence(alpha, beta) {
                Dependence::Dependent(m, n) => {
                    if best.map_or(true, |b| (m, n) < b) {
                        best = Some((m, n));
                    }
                }
                Dependence::Independent => {}
                Dependence::Undecided => return Ok(StrongCoprimality::Unsupported),
            }
        }
    }
    match best {
        Some((m, n)) => {
            let ps = pn.substitute_power(n as u32);
            let qs = qn.substitute_power(m as u32);
            let g = ps.body.gcd(&qs.body);
            assert!(
                g.degree() >= 1,
                "dependence witness must produce a common factor"
            );
            Ok(StrongCoprimality::No(StrongWitness {
                m,
                n,
                common_factor: LaurentPoly::from_int_poly(g).normalized(),
            }))
        }
        None => Ok(StrongCoprimality::Yes),
    }
}

/// Scans `gcd(p(t^s), q(t^u))` for `1 <= s, u <= bound`. A hit at `(s, u)`
/// means a common root `z` with `z^s` a root of p and `z^u` a root of q, so
/// the reported exponents are `(m, n) = (u, s)` in the root-power convention.
pub fn strongly_coprime_bounded(
    p: &LaurentPoly,
    q: &LaurentPoly,
    bound: u32,
) -> Result<BoundedCoprimality> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pn = p.normalized();
    let qn = q.normalized();
    // Content is invariant under t -> t^s, so one check covers the scan.
    let content_gcd = pn.body.content().gcd(&qn.body.content());
    if content_gcd > BigInt::one() {
        let factor = LaurentPoly::from_int_poly(IntPoly::constant(content_gcd));
        return Ok(BoundedCoprimality::No(StrongWitness {
            m: 1,
            n: 1,
            common_factor: factor,
        }));
    }
    for s in 1..=bound {
        let ps = pn.substitute_power(s);
        for u in 1..=bound {
            let qs = qn.substitute_power(u);
            let g = ps.body.gcd(&qs.body);
            if g.degree() >= 1 {
                return Ok(BoundedCoprimality::No(StrongWitness {
                    m: u as u64,
                    n: s as u64,
                    common_factor: LaurentPoly::from_int_poly(g).normalized(),
                }));
            }
        }
    }
    Ok(BoundedCoprimality::Unknown)
}

enum Dependence {
    Dependent(u64, u64),
    Independent,
    Undecided,
}

/// Minimal `(m, n)` such that some complex z has `z^n = alpha`, `z^m = beta`,
/// i.e. `p(t^n)` and `q(t^m)` share the root z. Moduli force `(m, n)` to be
/// the reduced ratio of the prime-exponent vectors; whether the signs can be
/// matched by a choice of argument for z is a parity condition on that ratio.
fn dependence(alpha: &BigRational, beta: &BigRational) -> Dependence {
    let (sa, ea) = match exponent_vector(alpha) {
        Some(v) => v,
        None => return Dependence::Undecided,
    };
    let (sb, eb) = match exponent_vector(beta) {
        Some(v) => v,
        None => return Dependence::Undecided,
    };
    if ea.is_empty() && eb.is_empty() {
        // Both are ±1; z is a root of unity.
        let (m, n) = match (sa, sb) {
            (1, 1) | (-1, -1) => (1, 1),
            (1, -1) => (1, 2),
            _ => (2, 1),
        };
        return Dependence::Dependent(m, n);
    }
    if ea.is_empty() != eb.is_empty() {
        return Dependence::Independent;
    }
    let primes: BTreeSet<&BigInt> = ea.keys().chain(eb.keys()).collect();
    let p0 = primes.iter().next().unwrap();
    let (e0, f0) = (
        *ea.get(*p0).unwrap_or(&0),
        *eb.get(*p0).unwrap_or(&0),
    );
    if e0 == 0 || f0 == 0 || (e0 > 0) != (f0 > 0) {
        return Dependence::Independent;
    }
    // |alpha|^m = |beta|^n requires f = (m/n) e componentwise, m/n reduced.
    let g = gcd_i64(e0.abs(), f0.abs());
    let (m, n) = ((f0.abs() / g) as u64, (e0.abs() / g) as u64);
    for p in primes {
        let e = *ea.get(p).unwrap_or(&0);
        let f = *eb.get(p).unwrap_or(&0);
        if (e * m as i64) != (f * n as i64) {
            return Dependence::Independent;
        }
    }
    // arg z must solve n*arg = arg(alpha), m*arg = arg(beta) mod 2*pi with
    // m, n coprime; solvability reduces to the parities below.
    let solvable = match (sa > 0, sb > 0) {
        (true, true) => true,
        (true, false) => n % 2 == 0,
        (false, true) => m % 2 == 0,
        (false, false) => m % 2 == 1 && n % 2 == 1,
    };
    if solvable {
        Dependence::Dependent(m, n)
    } else {
        Dependence::Independent
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd_i64(b, a % b)
    }
}

/// Sign and prime-exponent vector of a nonzero rational; `None` when the
/// factoring fuel runs out.
fn exponent_vector(x: &BigRational) -> Option<(i64, BTreeMap<BigInt, i64>)> {
    let sign = if x.is_negative() { -1 } else { 1 };
    let mut fuel: i64 = 10_000_000;
    let num = factor_magnitude(&x.numer().abs(), &mut fuel)?;
    let den = factor_magnitude(&x.denom().abs(), &mut fuel)?;
    let mut map = BTreeMap::new();
    for (p, e) in num {
        *map.entry(p).or_insert(0) += e as i64;
    }
    for (p, e) in den {
        *map.entry(p).or_insert(0) -= e as i64;
    }
    map.retain(|_, e| *e != 0);
    Some((sign, map))
}

fn factor_magnitude(n: &BigInt, fuel: &mut i64) -> Option<Vec<(BigInt, u32)>> {
    let mut n = n.clone();
    let mut out = Vec::new();
    if n.is_zero() {
        return None;
    }
    let push = |p: &BigInt, n: &mut BigInt| {
        let mut e = 0u32;
        while (&*n % p).is_zero() {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            Some((p.clone(), e))
        } else {
            None
        }
    };
    for small in [2i64, 3] {
        let p = BigInt::from(small);
        if let Some(pe) = push(&p, &mut n) {
            out.push(pe);
        }
    }
    let mut d = BigInt::from(5);
    let mut step = BigInt::from(2);
    while &d * &d <= n {
        *fuel -= 1;
        if *fuel < 0 {
            return None;
        }
        if let Some(pe) = push(&d, &mut n) {
            out.push(pe);
        }
        d += &step;
        step = BigInt::from(6) - step;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    Some(out)
}

/// All rational roots when the polynomial splits over the rationals, with
/// multiplicities collapsed; `None` when an irrational factor remains.
fn rational_roots(p: &IntPoly) -> Option<Vec<BigRational>> {
    let mut cur = p.primitive();
    let mut roots = Vec::new();
    if cur.degree() == 0 {
        return Some(roots);
    }
    let mut fuel: i64 = 10_000_000;
    let c0 = cur.coeff(0).abs();
    let cl = cur.leading().abs();
    let num_divs = divisors(&c0, &mut fuel)?;
    let den_divs = divisors(&cl, &mut fuel)?;
    let mut candidates = BTreeSet::new();
    for r in &num_divs {
        for s in &den_divs {
            let q = BigRational::new(r.clone(), s.clone());
            candidates.insert(q.clone());
            candidates.insert(-q);
        }
    }
    for cand in candidates {
        if cur.degree() == 0 {
            break;
        }
        if !cur.eval_rational(&cand).is_zero() {
            continue;
        }
        roots.push(cand.clone());
        let factor = IntPoly::new(vec![-cand.numer().clone(), cand.denom().clone()]);
        while let Some(q) = cur.div_exact(&factor) {
            cur = q.primitive();
            if cur.degree() == 0 {
                break;
            }
        }
    }
    if cur.degree() == 0 {
        Some(roots)
    } else {
        None
    }
}

fn divisors(n: &BigInt, fuel: &mut i64) -> Option<Vec<BigInt>> {
    let factors = factor_magnitude(n, fuel)?;
    let mut out = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    Some(out)
}

/// An ordered tuple of Laurent polynomials, at least two entries long.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyTuple {
    entries: Vec<LaurentPoly>,
}

/// Admissibility clauses, named so reports can point at the failed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Clause {
    /// Entry 1 must be the zero polynomial.
    FirstEntryZero,
    /// The 1-based middle entry must be a perfect square up to units.
    MiddleEntrySquare(usize),
    /// The square root of the middle entry must be symmetric.
    RootSymmetric(usize),
    /// The square root must evaluate to ±1 at t = 1.
    RootUnitAtOne(usize),
    /// Informational: the root stays a nonunit mod every prime.
    RootNonunitModPrimes(usize),
    /// The last entry must be m^2 t^2 - (2m^2+1) t + m^2 for some m >= 1.
    LastEntryQuadraticForm,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::FirstEntryZero => write!(f, "entry 1 is zero"),
            Clause::MiddleEntrySquare(k) => write!(f, "entry {} is a perfect square", k),
            Clause::RootSymmetric(k) => write!(f, "square root of entry {} is symmetric", k),
            Clause::RootUnitAtOne(k) => {
                write!(f, "square root of entry {} is ±1 at t=1", k)
            }
            Clause::RootNonunitModPrimes(k) => {
                write!(f, "square root of entry {} is a nonunit mod every prime", k)
            }
            Clause::LastEntryQuadraticForm => {
                write!(f, "last entry is m^2 t^2 - (2m^2+1) t + m^2")
            }
        }
    }
}

/// One admissibility clause with its outcome.
#[derive(Clone, Debug)]
pub struct ClauseCheck {
    pub clause: Clause,
    pub passed: bool,
    /// Informational clauses do not gate admissibility.
    pub required: bool,
    pub detail: String,
}

/// Full admissibility report for a tuple.
#[derive(Clone, Debug)]
pub struct TupleReport {
    pub admissible: bool,
    /// Parameter extracted from the last entry when it has the quadratic form.
    pub m: Option<u64>,
    pub clauses: Vec<ClauseCheck>,
}

impl TupleReport {
    /// First required clause that failed, if any.
    pub fn failed_clause(&self) -> Option<&ClauseCheck> {
        self.clauses.iter().find(|c| c.required && !c.passed)
    }
}

/// Positive evidence for tuple strong coprimality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TupleEvidence {
    /// The last entries are already coprime.
    LastEntries,
    /// The 1-based middle pair is strongly coprime.
    Middle(usize),
}

/// Outcome of the tuple strong-coprimality test.
#[derive(Clone, Debug)]
pub enum TupleVerdict {
    Yes(TupleEvidence),
    No,
    Unsupported,
}

impl PolyTuple {
    pub fn new(entries: Vec<LaurentPoly>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::Domain(format!(
                "tuple needs at least 2 entries, got {}",
                entries.len()
            )));
        }
        Ok(PolyTuple { entries })
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Checks the admissibility clauses: first entry zero, middle entries
    /// squares of symmetric roots with root(1) = ±1, last entry of quadratic
    /// satellite form. Each clause is reported, pass or fail.
    pub fn admissibility(&self) -> TupleReport {
        let n = self.entries.len();
        let mut clauses = Vec::new();
        let mut admissible = true;

        let first_zero = self.entries[0].is_zero();
        clauses.push(ClauseCheck {
            clause: Clause::FirstEntryZero,
            passed: first_zero,
            required: true,
            detail: if first_zero {
                "entry 1 = 0".into()
            } else {
                format!("entry 1 = {}", self.entries[0])
            },
        });
        admissible &= first_zero;

        for k in 1..n - 1 {
            let display_index = k + 1;
            match self.entries[k].square_root() {
                Some(sq) => {
                    clauses.push(ClauseCheck {
                        clause: Clause::MiddleEntrySquare(display_index),
                        passed: true,
                        required: true,
                        detail: format!("root {}", sq.root),
                    });
                    clauses.push(ClauseCheck {
                        clause: Clause::RootSymmetric(display_index),
                        passed: sq.symmetric,
                        required: true,
                        detail: format!("root {}", sq.root),
                    });
                    admissible &= sq.symmetric;
                    let at_one = sq.root.eval_one();
                    clauses.push(ClauseCheck {
                        clause: Clause::RootUnitAtOne(display_index),
                        passed: sq.unit_at_one,
                        required: true,
                        detail: format!("root(1) = {}", at_one),
                    });
                    admissible &= sq.unit_at_one;
                    let nonunit = sq
                        .root
                        .nonunit_mod_every_prime()
                        .expect("square root is nonzero");
                    clauses.push(ClauseCheck {
                        clause: Clause::RootNonunitModPrimes(display_index),
                        passed: nonunit,
                        required: false,
                        detail: if nonunit {
                            "no prime divides all coefficients but one".into()
                        } else {
                            "some residue reduction is a unit".into()
                        },
                    });
                }
                None => {
                    clauses.push(ClauseCheck {
                        clause: Clause::MiddleEntrySquare(display_index),
                        passed: false,
                        required: true,
                        detail: format!("{} is not a square up to units", self.entries[k]),
                    });
                    admissible = false;
                }
            }
        }

        let m = quadratic_form_parameter(&self.entries[n - 1]);
        clauses.push(ClauseCheck {
            clause: Clause::LastEntryQuadraticForm,
            passed: m.is_some(),
            required: true,
            detail: match m {
                Some(m) => format!("m = {}", m),
                None => format!("last entry {}", self.entries[n - 1]),
            },
        });
        admissible &= m.is_some();

        TupleReport {
            admissible,
            m,
            clauses,
        }
    }

    /// Tuple strong coprimality: yes when the last entries are coprime or
    /// some earlier pair is strongly coprime; zero entries never count.
    pub fn strongly_coprime(&self, other: &Self) -> Result<TupleVerdict> {
        if self.entries.len() != other.entries.len() {
            return Err(Error::Domain(format!(
                "tuple lengths differ: {} vs {}",
                self.entries.len(),
                other.entries.len()
            )));
        }
        let n = self.entries.len();
        let (pl, ql) = (&self.entries[n - 1], &other.entries[n - 1]);
        if !pl.is_zero() && !ql.is_zero() && coprime(pl, ql)? {
            return Ok(TupleVerdict::Yes(TupleEvidence::LastEntries));
        }
        let mut undecided = false;
        for k in 0..n - 1 {
            let (p, q) = (&self.entries[k], &other.entries[k]);
            if p.is_zero() || q.is_zero() {
                continue;
            }
            match strongly_coprime(p, q)? {
                StrongCoprimality::Yes => {
                    return Ok(TupleVerdict::Yes(TupleEvidence::Middle(k + 1)));
                }
                StrongCoprimality::No(_) => {}
                StrongCoprimality::Unsupported => undecided = true,
            }
        }
        if undecided {
            Ok(TupleVerdict::Unsupported)
        } else {
            Ok(TupleVerdict::No)
        }
    }
}

/// Extracts `m` when the entry is `m^2 t^2 - (2m^2+1) t + m^2` up to units.
fn quadratic_form_parameter(p: &LaurentPoly) -> Option<u64> {
    if p.is_zero() {
        return None;
    }
    let q = p.normalized().body;
    if q.degree() != 2 {
        return None;
    }
    let (c0, c1, c2) = (q.coeff(0), q.coeff(1), q.coeff(2));
    if c0 != c2 {
        return None;
    }
    let m = c0.sqrt();
    if &m * &m != c0 || m.is_zero() {
        return None;
    }
    let expected = -(BigInt::from(2) * &m * &m + BigInt::one());
    if c1 != expected {
        return None;
    }
    u64::try_from(m).ok()
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    _input: &'a str,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            chars: input.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
            _input: input,
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.to_string(),
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn peek_raw(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied();
        if let Some(c) = c {
            self.pos += 1;
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek_raw(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn parse(mut self) -> Result<LaurentPoly> {
        let value = self.parse_expr()?;
        if let Some(c) = self.peek() {
            return Err(self.error(&format!("unexpected character '{}'", c)));
        }
        Ok(value)
    }

    fn parse_expr(&mut self) -> Result<LaurentPoly> {
        let mut negate = false;
        match self.peek() {
            Some('+') => {
                self.bump();
            }
            Some('-') => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = add(&acc, &t);
                }
                Some('-') => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = add(&acc, &t.neg());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let f = self.parse_factor()?;
                    acc = acc.mul(&f);
                }
                Some(c) if c.is_ascii_digit() || c == 't' || c == '(' => {
                    let f = self.parse_factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.parse_expr()?;
                match self.peek() {
                    Some(')') => {
                        self.bump();
                        Ok(inner)
                    }
                    _ => Err(self.error("expected ')'")),
                }
            }
            Some('t') => {
                self.bump();
                let exp = self.parse_optional_exponent()?;
                Ok(LaurentPoly::from_terms(&[(exp, 1)]))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_integer()?;
                Ok(LaurentPoly::from_parts(0, IntPoly::constant(n)))
            }
            Some(c) => Err(self.error(&format!("unexpected character '{}'", c))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn parse_optional_exponent(&mut self) -> Result<i64> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.bump();
        let mut sign = 1i64;
        if self.peek() == Some('-') {
            self.bump();
            sign = -1;
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_integer()?;
                let exp = i64::try_from(n).map_err(|_| self.error("exponent out of range"))?;
                if exp.abs() > 1_000_000 {
                    return Err(self.error("exponent out of range"));
                }
                Ok(sign * exp)
            }
            _ => Err(self.error("expected integer exponent after '^'")),
        }
    }

    fn parse_integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let mut digits = String::new();
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.bump().unwrap());
        }
        if digits.is_empty() {
            return Err(self.error("expected integer"));
        }
        digits
            .parse::<BigInt>()
            .map_err(|_| self.error("invalid integer"))
    }
}

fn add(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let lo = a.lo.min(b.lo);
    let hi = (a.lo + a.body.degree() as i64).max(b.lo + b.body.degree() as i64);
    let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize + 1];
    for (i, c) in a.body.coeffs().iter().enumerate() {
        coeffs[(a.lo + i as i64 - lo) as usize] += c;
    }
    for (i, c) in b.body.coeffs().iter().enumerate() {
        coeffs[(b.lo + i as i64 - lo) as usize] += c;
    }
    LaurentPoly::from_parts(lo, IntPoly::new(coeffs))
}
