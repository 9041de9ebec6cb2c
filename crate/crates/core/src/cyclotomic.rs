//! Cyclotomic polynomials, minimal polynomials of cos(2*pi/d), and the
//! Chebyshev-style bases used to move between Laurent-symmetric polynomials
//! and polynomials in x = cos(theta).

use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::One;
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

static CYCLO_CACHE: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();
static COS_CACHE: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();

/// d-th cyclotomic polynomial.
pub fn cyclotomic(d: u64) -> IntPoly {
    assert!(d >= 1);
    let cache = CYCLO_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&d) {
        return p.clone();
    }
    let p = compute_cyclotomic(d);
    cache.lock().unwrap().insert(d, p.clone());
    p
}

fn compute_cyclotomic(d: u64) -> IntPoly {
    // x^d - 1 divided by the product of all proper cyclotomic divisors.
    let mut coeffs = vec![BigInt::from(0); d as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[d as usize] = BigInt::one();
    let mut num = IntPoly::new(coeffs);
    for e in 1..d {
        if d % e == 0 {
            num = num.div_exact(&cyclotomic(e)).expect("cyclotomic divides");
        }
    }
    num
}

/// Chebyshev polynomial T_n with T_n(cos t) = cos(n t).
pub fn chebyshev_t(n: u64) -> IntPoly {
    let mut prev = IntPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = IntPoly::x();
    let two_x = IntPoly::from_i64(&[0, 2]);
    for _ in 1..n {
        let next = two_x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Basis polynomial V_k with V_k(t + 1/t) = t^k + t^-k.
pub fn pair_basis(k: u64) -> IntPoly {
    let mut prev = IntPoly::from_i64(&[2]);
    if k == 0 {
        return prev;
    }
    let mut cur = IntPoly::x();
    let x = IntPoly::x();
    for _ in 1..k {
        let next = x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Minimal polynomial over Q of cos(2*pi/d), primitive with positive
/// leading coefficient. Degree is phi(d)/2 for d > 2.
pub fn cos_min_poly(d: u64) -> IntPoly {
    assert!(d >= 1);
    let cache = COS_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&d) {
        return p.clone();
    }
    let p = compute_cos_min_poly(d);
    cache.lock().unwrap().insert(d, p.clone());
    p
}

fn compute_cos_min_poly(d: u64) -> IntPoly {
    match d {
        1 => return IntPoly::from_i64(&[-1, 1]),
        2 => return IntPoly::from_i64(&[1, 1]),
        _ => {}
    }
    // Phi_d is palindromic of even degree 2h for d > 2; write it as
    // t^h * (a_h + sum a_{h+k} (t^k + t^-k)) and substitute y = t + 1/t,
    // then y = 2x.
    let phi = cyclotomic(d);
    let n = phi.degree();
    assert!(n % 2 == 0);
    let h = n / 2;
    let mut folded = IntPoly::constant(phi.coeff(h));
    for k in 1..=h {
        folded = folded.add(&pair_basis(k as u64).scale(&phi.coeff(h + k)));
    }
    let two_x = IntPoly::from_i64(&[0, 2]);
    folded.compose(&two_x).primitive()
}
