//! Exact real algebraic numbers: a rational, or a root of a squarefree
//! integer polynomial isolated by an open rational interval.
//!
//! Comparisons are exact. Equality of two root-represented values is decided
//! by a gcd witness: the roots coincide iff gcd of the defining polynomials
//! changes sign across the overlap of the isolating intervals. Ordering of
//! distinct values falls back to interval refinement, which terminates.
//! Isolating intervals only ever shrink; refinement state is shared behind a
//! mutex so clones benefit from each other's work.

use crate::poly::{isolate_real_roots, sign_of_rational, IntPoly, RatPoly, SturmChain};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone)]
pub struct AlgebraicReal(Inner);

#[derive(Clone)]
enum Inner {
    Rational(BigRational),
    Root(Arc<RootData>),
}

struct RootData {
    poly: IntPoly,
    /// Whether `poly` is known to be the minimal polynomial (irreducible).
    minimal: bool,
    state: Mutex<RootState>,
}

#[derive(Clone)]
struct RootState {
    lo: BigRational,
    hi: BigRational,
    sign_lo: i32,
    /// Set once refinement happens to land exactly on the root.
    exact: Option<BigRational>,
}

fn half(x: &BigRational, y: &BigRational) -> BigRational {
    (x + y) / BigRational::from_integer(BigInt::from(2))
}

impl AlgebraicReal {
    pub fn from_rational(q: BigRational) -> Self {
        AlgebraicReal(Inner::Rational(q))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The unique root of `poly` in the open interval (lo, hi). The
    /// polynomial must be squarefree and must not vanish at the endpoints;
    /// `minimal` records whether it is known irreducible.
    pub fn from_root(poly: IntPoly, lo: BigRational, hi: BigRational, minimal: bool) -> Self {
        let poly = poly.primitive();
        assert!(!poly.is_zero() && poly.degree() >= 1);
        if poly.degree() == 1 {
            let q = BigRational::new(-poly.coeff(0), poly.coeff(1));
            assert!(lo < q && q < hi);
            return Self::from_rational(q);
        }
        let sign_lo = poly.sign_at(&lo);
        assert!(sign_lo != 0, "isolating interval endpoint is a root");
        assert!(poly.sign_at(&hi) != 0, "isolating interval endpoint is a root");
        assert_eq!(
            SturmChain::new(&poly).count_roots(&lo, &hi),
            1,
            "interval does not isolate"
        );
        AlgebraicReal(Inner::Root(Arc::new(RootData {
            poly,
            minimal,
            state: Mutex::new(RootState {
                lo,
                hi,
                sign_lo,
                exact: None,
            }),
        })))
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.0 {
            Inner::Rational(q) => Some(q.clone()),
            Inner::Root(r) => r.state.lock().unwrap().exact.clone(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Defining polynomial: minimal for rationals and for roots flagged
    /// minimal, otherwise a squarefree polynomial vanishing at the value.
    pub fn defining_polynomial(&self) -> IntPoly {
        match &self.0 {
            Inner::Rational(q) => {
                IntPoly::new(vec![-q.numer().clone(), q.denom().clone()])
            }
            Inner::Root(r) => r.poly.clone(),
        }
    }

    /// Whether the defining polynomial is known to be irreducible.
    pub fn defining_polynomial_minimal(&self) -> bool {
        match &self.0 {
            Inner::Rational(_) => true,
            Inner::Root(r) => r.minimal,
        }
    }

    /// Current enclosure; a point interval when the value is known rational.
    pub fn enclosure(&self) -> (BigRational, BigRational) {
        match &self.0 {
            Inner::Rational(q) => (q.clone(), q.clone()),
            Inner::Root(r) => {
                let st = r.state.lock().unwrap();
                match &st.exact {
                    Some(q) => (q.clone(), q.clone()),
                    None => (st.lo.clone(), st.hi.clone()),
                }
            }
        }
    }

    pub fn refine_once(&self) {
        if let Inner::Root(r) = &self.0 {
            let mut st = r.state.lock().unwrap();
            if st.exact.is_some() {
                return;
            }
            let mid = half(&st.lo, &st.hi);
            let s = r.poly.sign_at(&mid);
            if s == 0 {
                st.exact = Some(mid);
            } else if s == st.sign_lo {
                st.lo = mid;
            } else {
                st.hi = mid;
            }
        }
    }

    pub fn refine_until_width(&self, eps: &BigRational) {
        loop {
            let (lo, hi) = self.enclosure();
            if &(hi - lo) < eps {
                return;
            }
            self.refine_once();
        }
    }

    /// Sign of g evaluated at this value: -1, 0 or 1. Exact.
    pub fn sign_of_poly(&self, g: &IntPoly) -> i32 {
        if g.is_zero() {
            return 0;
        }
        match &self.0 {
            Inner::Rational(q) => g.sign_at(q),
            Inner::Root(r) => {
                if let Some(q) = r.state.lock().unwrap().exact.clone() {
                    return g.sign_at(&q);
                }
                let h = g.gcd(&r.poly);
                if h.degree() >= 1 {
                    let (lo, hi) = self.enclosure();
                    // Roots of h are roots of r.poly, so h cannot vanish at
                    // the interval endpoints; a sign change pins the root.
                    if h.sign_at(&lo) * h.sign_at(&hi) < 0 {
                        return 0;
                    }
                }
                loop {
                    let (lo, hi) = self.enclosure();
                    if lo == hi {
                        return g.sign_at(&lo);
                    }
                    let (glo, ghi) = g.eval_interval(&lo, &hi);
                    if sign_of_rational(&glo) > 0 {
                        return 1;
                    }
                    if sign_of_rational(&ghi) < 0 {
                        return -1;
                    }
                    self.refine_once();
                }
            }
        }
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        match &self.0 {
            Inner::Rational(a) => a.cmp(q),
            Inner::Root(r) => {
                if let Some(a) = r.state.lock().unwrap().exact.clone() {
                    return a.cmp(q);
                }
                let (lo, hi) = self.enclosure();
                if *q <= lo {
                    return Ordering::Greater;
                }
                if *q >= hi {
                    return Ordering::Less;
                }
                let s = r.poly.sign_at(q);
                if s == 0 {
                    r.state.lock().unwrap().exact = Some(q.clone());
                    return Ordering::Equal;
                }
                let sign_lo = r.state.lock().unwrap().sign_lo;
                if s == sign_lo {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    pub fn sign(&self) -> i32 {
        match self.cmp_rational(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            Inner::Rational(q) => Self::from_rational(-q),
            Inner::Root(r) => {
                if let Some(q) = r.state.lock().unwrap().exact.clone() {
                    return Self::from_rational(-q);
                }
                let (lo, hi) = self.enclosure();
                Self::from_root(r.poly.reflect(), -hi, -lo, r.minimal)
            }
        }
    }

    /// Image of this value under an integer polynomial, as an exact
    /// algebraic number. The defining polynomial of the result is the
    /// squarefree part of the characteristic polynomial of q applied to the
    /// companion matrix of the input's defining polynomial.
    pub fn apply_int_poly(&self, q: &IntPoly) -> AlgebraicReal {
        if q.is_zero() {
            return Self::from_integer(0);
        }
        match &self.0 {
            Inner::Rational(a) => Self::from_rational(q.eval_rational(a)),
            Inner::Root(r) => {
                if let Some(a) = r.state.lock().unwrap().exact.clone() {
                    return Self::from_rational(q.eval_rational(&a));
                }
                if q.degree() == 0 {
                    return Self::from_rational(BigRational::from_integer(q.coeff(0)));
                }
                let companion = companion_matrix(&r.poly);
                let image = horner_matrix(q, &companion);
                let char_poly = char_poly(&image).clear_denominators().squarefree_part();
                let chain = SturmChain::new(&char_poly);
                loop {
                    let (lo, hi) = self.enclosure();
                    let (mut qlo, mut qhi) = q.eval_interval(&lo, &hi);
                    // Pad so the endpoints are safely off any root of the
                    // characteristic polynomial, then check isolation.
                    let width = &qhi - &qlo;
                    let pad = if width.is_zero() {
                        BigRational::one()
                    } else {
                        width / BigRational::from_integer(BigInt::from(16))
                    };
                    qlo -= &pad;
                    qhi += &pad;
                    let ok_lo = char_poly.sign_at(&qlo) != 0;
                    let ok_hi = char_poly.sign_at(&qhi) != 0;
                    if ok_lo && ok_hi && chain.count_roots(&qlo, &qhi) == 1 {
                        return Self::from_root(char_poly, qlo, qhi, false);
                    }
                    // The endpoint may be the image itself if that image is
                    // rational; detect it exactly before refining further.
                    for cand in [&qlo, &qhi] {
                        if char_poly.sign_at(cand) == 0 {
                            let shifted = RatPoly::from_int_poly(q)
                                .sub(&RatPoly::constant(cand.clone()))
                                .clear_denominators();
                            if self.sign_of_poly(&shifted) == 0 {
                                return Self::from_rational(cand.clone());
                            }
                        }
                    }
                    self.refine_once();
                }
            }
        }
    }

    /// Deterministic decimal rendering with `places` digits after the point,
    /// rounded to nearest. Independent of refinement history.
    pub fn decimal_string(&self, places: u32) -> String {
        let scale = BigInt::from(10u32).pow(places);
        let scale_q = BigRational::from_integer(scale.clone());
        let half_q = BigRational::new(BigInt::one(), BigInt::from(2));
        let n = match &self.0 {
            Inner::Rational(q) => (q * &scale_q + &half_q).floor().to_integer(),
            Inner::Root(_) => {
                let mut guard = 0u32;
                loop {
                    let (lo, hi) = self.enclosure();
                    let nlo = (&lo * &scale_q + &half_q).floor().to_integer();
                    let nhi = (&hi * &scale_q + &half_q).floor().to_integer();
                    if nlo == nhi {
                        break nlo;
                    }
                    // A persistent straddle means the value sits exactly on
                    // a rounding boundary, which is a rational point.
                    guard += 1;
                    if guard > 64 + 4 * places {
                        let tie = BigRational::new(
                            nhi.clone() + nhi.clone() - BigInt::one(),
                            BigInt::from(2) * &scale,
                        );
                        if self.cmp_rational(&tie) == Ordering::Equal {
                            break nhi;
                        }
                    }
                    self.refine_once();
                }
            }
        };
        let neg = n.is_negative();
        let digits = n.abs().to_string();
        let digits = if digits.len() <= places as usize {
            format!("{}{}", "0".repeat(places as usize + 1 - digits.len()), digits)
        } else {
            digits
        };
        let split = digits.len() - places as usize;
        format!(
            "{}{}.{}",
            if neg { "-" } else { "" },
            &digits[..split],
            &digits[split..]
        )
    }

    pub fn to_f64(&self) -> f64 {
        let eps = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(13));
        self.refine_until_width(&eps);
        let (lo, hi) = self.enclosure();
        half(&lo, &hi).to_f64().unwrap_or(f64::NAN)
    }
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicReal {}

impl PartialOrd for AlgebraicReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Inner::Rational(a), Inner::Rational(b)) => a.cmp(b),
            (Inner::Rational(a), Inner::Root(_)) => other.cmp_rational(a).reverse(),
            (Inner::Root(_), Inner::Rational(b)) => self.cmp_rational(b),
            (Inner::Root(ra), Inner::Root(rb)) => {
                if Arc::ptr_eq(ra, rb) {
                    return Ordering::Equal;
                }
                if let Some(a) = ra.state.lock().unwrap().exact.clone() {
                    return other.cmp_rational(&a).reverse();
                }
                if let Some(b) = rb.state.lock().unwrap().exact.clone() {
                    return self.cmp_rational(&b);
                }
                let g = ra.poly.gcd(&rb.poly);
                if g.degree() >= 1 {
                    let (alo, ahi) = self.enclosure();
                    let (blo, bhi) = other.enclosure();
                    let olo = alo.max(blo);
                    let ohi = ahi.min(bhi);
                    // Equal values force a common root inside the overlap,
                    // and roots of g never sit on interval endpoints.
                    if olo < ohi && g.sign_at(&olo) * g.sign_at(&ohi) < 0 {
                        return Ordering::Equal;
                    }
                }
                loop {
                    if let Some(a) = self.as_rational() {
                        return other.cmp_rational(&a).reverse();
                    }
                    if let Some(b) = other.as_rational() {
                        return self.cmp_rational(&b);
                    }
                    let (alo, ahi) = self.enclosure();
                    let (blo, bhi) = other.enclosure();
                    if ahi <= blo {
                        return Ordering::Less;
                    }
                    if bhi <= alo {
                        return Ordering::Greater;
                    }
                    self.refine_once();
                    other.refine_once();
                }
            }
        }
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Inner::Rational(q) => write!(f, "{}", q),
            Inner::Root(r) => {
                if let Some(q) = self.as_rational() {
                    return write!(f, "{}", q);
                }
                let (lo, hi) = self.enclosure();
                write!(f, "root of {} in ({}, {})", r.poly, lo, hi)
            }
        }
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A rational strictly between two distinct values (a < b required).
pub fn rational_between(a: &AlgebraicReal, b: &AlgebraicReal) -> BigRational {
    assert_eq!(a.cmp(b), Ordering::Less);
    loop {
        let (_, ahi) = a.enclosure();
        let (blo, _) = b.enclosure();
        if ahi < blo {
            return half(&ahi, &blo);
        }
        if ahi == blo && a.cmp_rational(&ahi) == Ordering::Less
            && b.cmp_rational(&blo) == Ordering::Greater
        {
            return ahi;
        }
        a.refine_once();
        b.refine_once();
    }
}

fn companion_matrix(p: &IntPoly) -> Vec<Vec<BigRational>> {
    let n = p.degree();
    let lead = BigRational::from_integer(p.leading());
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for i in 1..n {
        m[i][i - 1] = BigRational::one();
    }
    for i in 0..n {
        m[i][n - 1] = -BigRational::from_integer(p.coeff(i)) / &lead;
    }
    m
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                let prod = &a[i][k] * &b[k][j];
                out[i][j] += prod;
            }
        }
    }
    out
}

fn mat_identity(n: usize) -> Vec<Vec<BigRational>> {
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    m
}

fn horner_matrix(p: &IntPoly, m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut acc = vec![vec![BigRational::zero(); n]; n];
    for c in p.coeffs().iter().rev() {
        acc = mat_mul(&acc, m);
        let cq = BigRational::from_integer(c.clone());
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += &cq;
            let _ = i;
        }
    }
    acc
}

fn trace(m: &[Vec<BigRational>]) -> BigRational {
    let mut t = BigRational::zero();
    for (i, row) in m.iter().enumerate() {
        t += &row[i];
    }
    t
}

/// Characteristic polynomial by the Faddeev-LeVerrier recurrence.
fn char_poly(m: &[Vec<BigRational>]) -> RatPoly {
    let n = m.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut aux = mat_identity(n);
    for k in 1..=n {
        aux = mat_mul(m, &aux);
        let c = -trace(&aux) / BigRational::from_integer(BigInt::from(k as u64));
        coeffs[n - k] = c.clone();
        for (i, row) in aux.iter_mut().enumerate() {
            row[i] += &c;
            let _ = i;
        }
    }
    RatPoly::new(coeffs)
}

static COS_TURN_CACHE: OnceLock<Mutex<HashMap<u64, Vec<AlgebraicReal>>>> = OnceLock::new();

/// cos(2*pi*r/d) as an exact algebraic number with its minimal polynomial.
pub fn cos_of_turn(r: i64, d: i64) -> AlgebraicReal {
    assert!(d >= 1);
    let d_u = d as u64;
    let mut r_mod = r.rem_euclid(d);
    // Fold to the lower semicircle: cos(2 pi (d - r)/d) = cos(2 pi r/d).
    if 2 * r_mod > d {
        r_mod = d - r_mod;
    }
    let g = (r_mod as u64).gcd(&d_u);
    let (num, den) = if r_mod == 0 {
        (0u64, 1u64)
    } else {
        (r_mod as u64 / g, d_u / g)
    };
    match den {
        1 => return AlgebraicReal::from_integer(1),
        2 => return AlgebraicReal::from_integer(-1),
        3 => return AlgebraicReal::from_ratio(-1, 2),
        4 => return AlgebraicReal::from_integer(0),
        6 => return AlgebraicReal::from_ratio(1, 2),
        _ => {}
    }
    let cache = COS_TURN_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let roots = {
        let mut map = cache.lock().unwrap();
        map.entry(den)
            .or_insert_with(|| {
                let p = crate::cyclotomic::cos_min_poly(den);
                let intervals = isolate_real_roots(&p);
                intervals
                    .into_iter()
                    .map(|(lo, hi)| AlgebraicReal::from_root(p.clone(), lo, hi, true))
                    .collect()
            })
            .clone()
    };
    // Roots are cos(2 pi k / den) for k coprime to den, k < den/2; the value
    // decreases as k grows, and isolation returned them in increasing order.
    let coprime: Vec<u64> = (1..=den / 2).filter(|k| k.gcd(&den) == 1).collect();
    assert_eq!(coprime.len(), roots.len());
    let rank = coprime
        .iter()
        .position(|&k| k == num)
        .expect("reduced numerator is coprime");
    roots[roots.len() - 1 - rank].clone()
}

/// cos(theta_m) for the angle theta_m in (0, pi/2] cut out by
/// 8m (1 - cos theta_m)^3 = 1; these are the companion angles of Horn's
/// family of height-two grope bounding knots. Rational exactly when m is a
/// perfect cube.
pub fn cos_horn_angle(m: i64) -> AlgebraicReal {
    assert!(m >= 1);
    let j = integer_cbrt(m);
    if j * j * j == m {
        return AlgebraicReal::from_ratio(2 * j - 1, 2 * j);
    }
    let poly = IntPoly::new(vec![
        BigInt::from(-(8 * m - 1)),
        BigInt::from(24 * m),
        BigInt::from(-24 * m),
        BigInt::from(8 * m),
    ]);
    AlgebraicReal::from_root(
        poly,
        BigRational::new(BigInt::one(), BigInt::from(2)),
        BigRational::one(),
        true,
    )
}

fn integer_cbrt(m: i64) -> i64 {
    let mut j = (m as f64).cbrt().round() as i64;
    while j * j * j > m {
        j -= 1;
    }
    while (j + 1) * (j + 1) * (j + 1) <= m {
        j += 1;
    }
    j
}
