//! Seifert matrices and the abelian invariants computed from them.
//!
//! A Seifert matrix here is a square integer matrix `A` of even size with
//! `det(A - A^T) = 1`. From such a matrix we derive the Alexander polynomial
//! `det(A - t A^T)`, the Arf invariant, and the Levine-Tristram signature
//! function, all in exact arithmetic. Signatures are evaluated through the
//! characteristic polynomial of the Hermitian form
//! `(1 - w)A + (1 - conj(w))A^T` over the field generated by `cos(theta)`,
//! with eigenvalue signs counted by Descartes' rule; no floating-point
//! eigensolver is involved at any point.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebraic::{rational_between, AlgebraicReal};
use crate::angle::Angle;
use crate::cyclotomic::pair_basis;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::poly::{isolate_real_roots, IntPoly, RatPoly};
use crate::stepfn::{JumpRule, StepFunction};

/// Square integer matrix of even size whose skew-symmetrization is
/// unimodular. Construction validates both conditions.
#[derive(Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    rows: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        if n % 2 != 0 {
            return Err(Error::OddSize(n));
        }
        let m = SeifertMatrix { rows };
        let skew_det = m.skew_determinant();
        if !skew_det.is_one() {
            return Err(Error::NotUnimodularSkew(format!(
                "det(A - A^T) = {skew_det}, expected 1"
            )));
        }
        Ok(m)
    }

    /// The 0x0 matrix of the unknot.
    pub fn empty() -> Self {
        SeifertMatrix { rows: Vec::new() }
    }

    /// Checks the defining conditions without constructing the matrix.
    pub fn validate(rows: &[Vec<i64>]) -> bool {
        SeifertMatrix::new(rows.to_vec()).is_ok()
    }

    /// Parses a row-major integer matrix. Two layouts are accepted: a
    /// bracketed literal `[[a, b], [c, d]]` (newlines allowed anywhere),
    /// or plain rows of whitespace- or comma-separated integers, one row
    /// per line. A single unbracketed line must hold a perfect square
    /// count of entries.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = if text.contains('[') {
            parse_bracketed(text)?
        } else {
            parse_plain(text)?
        };
        SeifertMatrix::new(rows)
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn genus(&self) -> usize {
        self.rows.len() / 2
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    /// Matrix of the mirror image: the negated transpose.
    pub fn mirror(&self) -> Self {
        let n = self.size();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| -self.rows[j][i]).collect())
            .collect();
        SeifertMatrix { rows }
    }

    /// Block direct sum, the matrix of a connected sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.size(), other.size());
        let mut rows = vec![vec![0i64; n + m]; n + m];
        for i in 0..n {
            rows[i][..n].copy_from_slice(&self.rows[i]);
        }
        for i in 0..m {
            rows[n + i][n..].copy_from_slice(&other.rows[i]);
        }
        SeifertMatrix { rows }
    }

    fn skew_determinant(&self) -> BigInt {
        let n = self.size();
        let m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigInt::from(self.rows[i][j] - self.rows[j][i]))
                    .collect()
            })
            .collect();
        determinant(m)
    }

    /// det(A - x A^T) at an integer point, used for interpolation.
    fn alexander_at(&self, x: i64) -> BigInt {
        let n = self.size();
        let m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        BigInt::from(self.rows[i][j]) - BigInt::from(x) * BigInt::from(self.rows[j][i])
                    })
                    .collect()
            })
            .collect();
        determinant(m)
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeifertMatrix({self})")
    }
}

fn parse_bracketed(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut rows = Vec::new();
    let mut current: Option<Vec<i64>> = None;
    let mut token = String::new();
    let mut depth = 0i32;
    let (mut line, mut col) = (1usize, 0usize);
    let err = |line: usize, col: usize, msg: &str| Error::Parse {
        line,
        col,
        msg: msg.to_string(),
    };
    let flush = |current: &mut Option<Vec<i64>>,
                     token: &mut String,
                     line: usize,
                     col: usize|
     -> Result<()> {
        if token.is_empty() {
            return Ok(());
        }
        let value: i64 = token
            .parse()
            .map_err(|_| err(line, col, "expected an integer"))?;
        token.clear();
        match current {
            Some(row) => row.push(value),
            None => return Err(err(line, col, "entry outside a row")),
        }
        Ok(())
    };
    for ch in text.chars() {
        col += 1;
        match ch {
            '\n' => {
                flush(&mut current, &mut token, line, col)?;
                line += 1;
                col = 0;
            }
            '[' => {
                depth += 1;
                match depth {
                    1 => {}
                    2 => current = Some(Vec::new()),
                    _ => return Err(err(line, col, "brackets nested too deep")),
                }
            }
            ']' => {
                flush(&mut current, &mut token, line, col)?;
                depth -= 1;
                if depth < 0 {
                    return Err(err(line, col, "unbalanced ']'"));
                }
                if depth == 1 {
                    rows.push(current.take().unwrap_or_default());
                }
            }
            ',' | ' ' | '\t' | '\r' => flush(&mut current, &mut token, line, col)?,
            '-' | '+' | '0'..='9' => token.push(ch),
            other => return Err(err(line, col, &format!("unexpected character '{other}'"))),
        }
    }
    if depth != 0 {
        return Err(err(line, col, "unbalanced '['"));
    }
    Ok(rows)
}

fn parse_plain(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for piece in line.split(|c: char| c == ',' || c.is_whitespace()) {
            if piece.is_empty() {
                continue;
            }
            let col = raw.find(piece).map_or(1, |p| p + 1);
            row.push(piece.parse::<i64>().map_err(|_| Error::Parse {
                line: i + 1,
                col,
                msg: format!("expected an integer, found '{piece}'"),
            })?);
        }
        rows.push(row);
    }
    if rows.len() == 1 {
        let flat = rows.pop().unwrap();
        let n = (flat.len() as f64).sqrt().round() as usize;
        if n * n != flat.len() {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: format!("{} entries do not form a square matrix", flat.len()),
            });
        }
        rows = flat.chunks(n).map(|c| c.to_vec()).collect();
    }
    Ok(rows)
}

/// Fraction-free Bareiss determinant with row pivoting.
fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Alexander polynomial `det(A - t A^T)`, returned as the normalized
/// symmetric representative. Always satisfies `|p(1)| = 1`.
pub fn alexander(a: &SeifertMatrix) -> Result<LaurentPoly> {
    let n = a.size();
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut points = Vec::with_capacity(n + 1);
    let mut x = 0i64;
    while points.len() < n + 1 {
        points.push((
            BigRational::from_integer(BigInt::from(x)),
            BigRational::from_integer(a.alexander_at(x)),
        ));
        x = if x > 0 { -x } else { -x + 1 };
    }
    let interp = RatPoly::lagrange(&points);
    let coeffs: Vec<BigInt> = interp
        .coeffs()
        .iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolated Alexander coefficient not integral");
            c.to_integer()
        })
        .collect();
    let poly = LaurentPoly::from_int_poly(IntPoly::new(coeffs)).normalized();
    debug_assert_eq!(poly.eval_one().abs(), BigInt::one());
    debug_assert!(matches!(poly.is_symmetric(), Ok(true)));
    Ok(poly)
}

/// Arf invariant as a bit. Two independent routes are computed and must
/// agree: the residue of the Alexander polynomial at -1 modulo 8, and the
/// Arf invariant of the mod-2 quadratic form `x -> x A x^T` over the
/// symplectic space `(Z/2)^n`. A mismatch is a hard error, never a guess.
pub fn arf(a: &SeifertMatrix) -> Result<u8> {
    let delta = alexander(a)?;
    let at_minus_one = delta
        .body()
        .eval_bigint(&BigInt::from(-1))
        .abs();
    let residue = (&at_minus_one % BigInt::from(8u8))
        .to_string()
        .parse::<u8>()
        .expect("residue fits in u8");
    let murasugi = if residue == 1 || residue == 7 { 0 } else { 1 };
    let quadratic = arf_quadratic(a);
    if murasugi != quadratic {
        return Err(Error::Verification {
            check: "arf route agreement".into(),
            witness: format!(
                "|delta(-1)| = {at_minus_one} gives {murasugi}, quadratic form gives {quadratic}"
            ),
        });
    }
    Ok(quadratic)
}

/// Arf of the quadratic refinement over GF(2), via symplectic reduction.
fn arf_quadratic(a: &SeifertMatrix) -> u8 {
    let n = a.size();
    if n == 0 {
        return 0;
    }
    assert!(n <= 64, "quadratic Arf route limited to 64 generators");
    let a_rows: Vec<u64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| a.rows[i][j].rem_euclid(2) == 1)
                .fold(0u64, |acc, j| acc | 1 << j)
        })
        .collect();
    let j_rows: Vec<u64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| (a.rows[i][j] + a.rows[j][i]).rem_euclid(2) == 1)
                .fold(0u64, |acc, j| acc | 1 << j)
        })
        .collect();
    let pairing = |x: u64, y: u64| -> u8 {
        let mut acc = 0u32;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc ^= (j_rows[i] & y).count_ones();
            bits &= bits - 1;
        }
        (acc & 1) as u8
    };
    let quad = |x: u64| -> u8 {
        let mut acc = 0u32;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc ^= (a_rows[i] & x).count_ones();
            bits &= bits - 1;
        }
        (acc & 1) as u8
    };
    let mut basis: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    let mut arf = 0u8;
    while let Some(e) = basis.first().copied() {
        let partner = basis[1..]
            .iter()
            .position(|&f| pairing(e, f) == 1)
            .map(|p| p + 1)
            .expect("nondegenerate pairing has a partner");
        let f = basis[partner];
        arf ^= quad(e) & quad(f);
        basis.remove(partner);
        basis.remove(0);
        for u in basis.iter_mut() {
            let mut v = *u;
            if pairing(v, f) == 1 {
                v ^= e;
            }
            if pairing(v, e) == 1 {
                v ^= f;
            }
            *u = v;
        }
    }
    arf
}

/// Element of Q(c)[i s]: `re(c) + i sin(theta) im(c)` with
/// `sin^2 = 1 - c^2` folded into the multiplication.
#[derive(Clone)]
struct HermitianEntry {
    re: RatPoly,
    im: RatPoly,
}

impl HermitianEntry {
    fn zero() -> Self {
        HermitianEntry {
            re: RatPoly::zero(),
            im: RatPoly::zero(),
        }
    }

    fn add(&self, other: &Self) -> Self {
        HermitianEntry {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let c2m1 = RatPoly::from_int_poly(&IntPoly::from_i64(&[-1, 0, 1]));
        HermitianEntry {
            re: self.re.mul(&other.re).add(&c2m1.mul(&self.im.mul(&other.im))),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }
}

/// Coefficients of det(xI - H) for the Hermitian form at cos(theta) = c,
/// as exact polynomials in c (low degree first, leading coefficient 1).
/// The imaginary parts cancel identically; that cancellation is asserted.
fn char_poly_in_c(a: &SeifertMatrix) -> Vec<RatPoly> {
    let n = a.size();
    let one_minus_c = RatPoly::from_int_poly(&IntPoly::from_i64(&[1, -1]));
    let entry = |i: usize, j: usize| -> HermitianEntry {
        let sym = a.rows[i][j] + a.rows[j][i];
        let skew = a.rows[i][j] - a.rows[j][i];
        HermitianEntry {
            re: one_minus_c.scale(&BigRational::from_integer(BigInt::from(sym))),
            im: RatPoly::constant(BigRational::from_integer(BigInt::from(-skew))),
        }
    };
    let h: Vec<Vec<HermitianEntry>> = (0..n)
        .map(|i| (0..n).map(|j| entry(i, j)).collect())
        .collect();
    let mut coeffs = vec![RatPoly::zero(); n + 1];
    coeffs[n] = RatPoly::one();
    let mut m: Vec<Vec<HermitianEntry>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        HermitianEntry {
                            re: RatPoly::one(),
                            im: RatPoly::zero(),
                        }
                    } else {
                        HermitianEntry::zero()
                    }
                })
                .collect()
        })
        .collect();
    for k in 1..=n {
        let mut hm = vec![vec![HermitianEntry::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                for j in 0..n {
                    hm[i][j] = hm[i][j].add(&h[i][l].mul(&m[l][j]));
                }
            }
        }
        let mut trace = HermitianEntry::zero();
        for i in 0..n {
            trace = trace.add(&hm[i][i]);
        }
        let ck = trace
            .re
            .scale(&-BigRational::from_integer(BigInt::from(k as i64)).recip());
        assert!(
            trace.im.is_zero(),
            "characteristic polynomial of a Hermitian form must be real"
        );
        coeffs[n - k] = ck.clone();
        for (i, row) in hm.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                m[i][j] = cell.clone();
                if i == j {
                    m[i][j].re = m[i][j].re.add(&ck);
                }
            }
        }
    }
    coeffs
}

/// Signs of the characteristic polynomial coefficients at an exact cosine,
/// giving the inertia (zero multiplicity, signature of the nonzero part).
/// All eigenvalues are real, so Descartes' rule counts them exactly.
fn inertia_at(a: &SeifertMatrix, cosine: &AlgebraicReal) -> (usize, i64) {
    let coeffs = char_poly_in_c(a);
    let signs: Vec<i32> = coeffs
        .iter()
        .map(|p| {
            if p.is_zero() {
                0
            } else {
                cosine.sign_of_poly(&p.clear_denominators())
            }
        })
        .collect();
    let n = a.size();
    let m = signs.iter().position(|s| *s != 0).unwrap_or(n);
    let variations = |reflect: bool| -> usize {
        let mut count = 0;
        let mut last = 0i32;
        for (j, s) in signs.iter().enumerate().skip(m) {
            let s = if reflect && (j - m) % 2 == 1 { -s } else { *s };
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    };
    let pos = variations(false);
    let neg = variations(true);
    assert_eq!(pos + neg + m, n, "Descartes count must exhaust the spectrum");
    (m, pos as i64 - neg as i64)
}

/// Levine-Tristram signature at an exact angle. Off jumps the value is an
/// even integer. At a jump the `Strict` rule reports the location and the
/// `Average` rule returns the mean of the two adjacent arc values, which
/// may be odd or half-integral. The angle must carry an exact cosine.
pub fn signature_at(a: &SeifertMatrix, angle: &Angle, rule: JumpRule) -> Result<BigRational> {
    if a.size() == 0 || angle.is_zero() {
        return Ok(BigRational::zero());
    }
    let cosine = angle.cos().ok_or_else(|| {
        Error::Domain(format!(
            "no exact cosine available for matrix signature at {angle}"
        ))
    })?;
    let (zeros, sigma) = inertia_at(a, &cosine);
    if zeros == 0 {
        if sigma % 2 != 0 {
            return Err(Error::Verification {
                check: "even signature off jumps".into(),
                witness: format!("sigma({angle}) = {sigma}"),
            });
        }
        return Ok(BigRational::from_integer(BigInt::from(sigma)));
    }
    match rule {
        JumpRule::Strict => Err(Error::AtJump(angle.to_string())),
        JumpRule::Average => {
            let jumps = jump_angles(a)?;
            let idx = jumps
                .iter()
                .position(|j| j == angle)
                .expect("degenerate form occurs only at an Alexander root");
            let below = sample_cosine(
                angle,
                &match idx + 1 < jumps.len() {
                    true => jumps[idx + 1].clone(),
                    false => Angle::pi(),
                },
            );
            let above = sample_cosine(
                &match idx > 0 {
                    true => jumps[idx - 1].clone(),
                    false => Angle::zero(),
                },
                angle,
            );
            let left = signature_at(a, &above, JumpRule::Strict)?;
            let right = signature_at(a, &below, JumpRule::Strict)?;
            Ok((left + right) / BigRational::from_integer(BigInt::from(2)))
        }
    }
}

/// A rational-cosine angle strictly inside the arc (lo, hi).
fn sample_cosine(lo: &Angle, hi: &Angle) -> Angle {
    let (clo, chi) = (
        hi.cos().expect("arc endpoints carry cosines"),
        lo.cos().expect("arc endpoints carry cosines"),
    );
    let q = rational_between(&clo, &chi);
    Angle::from_cos(AlgebraicReal::from_rational(q))
}

/// Angles in (0, pi] at which the Alexander polynomial vanishes on the
/// unit circle, sorted ascending. Found by rewriting the symmetric
/// polynomial in `x = t + 1/t`, substituting `x = 2y`, and isolating real
/// roots of the squarefree part in (-1, 1); each root is `cos(theta)`.
pub fn jump_angles(a: &SeifertMatrix) -> Result<Vec<Angle>> {
    let delta = alexander(a)?;
    let body = delta.body();
    let degree = body.degree();
    if degree == 0 {
        return Ok(Vec::new());
    }
    assert!(degree % 2 == 0, "symmetric Alexander body has even degree");
    let g = degree / 2;
    let mut folded = IntPoly::constant(body.coeff(g));
    for k in 1..=g {
        folded = folded.add(&pair_basis(k as u64).scale(&body.coeff(g + k)));
    }
    let in_cos = folded.compose(&IntPoly::from_i64(&[0, 2]));
    let squarefree = in_cos.squarefree_part();
    let one = BigRational::one();
    let mut angles: Vec<Angle> = isolate_real_roots(&squarefree)
        .into_iter()
        .map(|(lo, hi)| AlgebraicReal::from_root(squarefree.clone(), lo, hi, false))
        .filter(|root| {
            root.cmp_rational(&(-one.clone())) == std::cmp::Ordering::Greater
                && root.cmp_rational(&one) == std::cmp::Ordering::Less
        })
        .map(Angle::from_cos)
        .collect();
    angles.reverse();
    debug_assert!(angles.windows(2).all(|w| w[0].compare(&w[1]).is_lt()));
    Ok(angles)
}

/// The full signature function as a step function on (0, pi]. Each arc
/// between consecutive jump angles is sampled once at a rational cosine;
/// candidate jumps that do not change the value are dropped.
pub fn step_function(a: &SeifertMatrix) -> Result<StepFunction> {
    let jumps = jump_angles(a)?;
    let mut cuts = vec![Angle::zero()];
    cuts.extend(jumps.iter().cloned());
    cuts.push(Angle::pi());
    let mut arc_values = Vec::with_capacity(cuts.len() - 1);
    for pair in cuts.windows(2) {
        let sample = sample_cosine(&pair[0], &pair[1]);
        let value = signature_at(a, &sample, JumpRule::Strict)?;
        assert!(value.is_integer());
        arc_values.push(
            value
                .to_integer()
                .to_string()
                .parse::<i64>()
                .map_err(|_| Error::Overflow("signature value"))?,
        );
    }
    if arc_values[0] != 0 {
        return Err(Error::Verification {
            check: "signature vanishes near angle 0".into(),
            witness: format!("first arc value {}", arc_values[0]),
        });
    }
    let pairs = jumps
        .into_iter()
        .zip(arc_values.into_iter().skip(1))
        .collect();
    StepFunction::from_jumps(pairs)
}

/// Builds a Seifert matrix realizing a given Alexander polynomial. The
/// polynomial must be symmetric with `p(1) = +-1`. Quadratics are realized
/// by the genus-one model `[[a, 1], [0, b]]`; higher degrees by a search
/// over banded matrices with unit superdiagonal, whose Alexander
/// polynomials obey a continuant recurrence. The result is round-trip
/// checked before it is returned.
pub fn realize_from_alexander(p: &LaurentPoly) -> Result<SeifertMatrix> {
    if !p.is_symmetric()? {
        return Err(Error::NotSymmetric);
    }
    let normalized = p.normalized();
    let unit = normalized.eval_one();
    if !unit.abs().is_one() {
        return Err(Error::NotUnitAtOne(format!("p(1) = {unit}")));
    }
    let body = normalized.body();
    let degree = body.degree();
    if degree == 0 {
        return Ok(SeifertMatrix::empty());
    }
    assert!(degree % 2 == 0, "unit symmetric polynomial has even degree");
    let matrix = if degree == 2 {
        realize_genus_one(body)?
    } else {
        realize_banded(body, &unit)?
    };
    let check = alexander(&matrix)?;
    assert_eq!(
        check, normalized,
        "realization failed its round-trip verification"
    );
    Ok(matrix)
}

fn realize_genus_one(body: &IntPoly) -> Result<SeifertMatrix> {
    let c = body.coeff(2);
    let b1 = body.coeff(0);
    debug_assert_eq!(c, b1);
    let mid = body.coeff(1);
    let two_c = &c * BigInt::from(2);
    let product = if mid == BigInt::one() - &two_c {
        c.clone()
    } else if mid == -BigInt::one() - &two_c {
        -c.clone()
    } else {
        return Err(Error::Unrealizable(format!(
            "quadratic middle coefficient {mid} matches neither 1-2c nor -1-2c"
        )));
    };
    let magnitude: i64 = product
        .abs()
        .to_string()
        .parse()
        .map_err(|_| Error::Overflow("genus-one twist parameter"))?;
    let signed: i64 = product
        .to_string()
        .parse()
        .map_err(|_| Error::Overflow("genus-one twist parameter"))?;
    let mut a = 1i64;
    let mut d = 1i64;
    while d * d <= magnitude {
        if magnitude % d == 0 {
            a = d;
        }
        d += 1;
    }
    let b = signed / a;
    SeifertMatrix::new(vec![vec![a, 1], vec![0, b]])
}

/// Continuant family: bidiagonal `A` with diagonal `d_i` and unit
/// superdiagonal satisfies `D_k = d_k (1-t) D_{k-1} + t D_{k-2}`, so
/// `prod d_i` is pinned to the constant coefficient and the search only
/// ranges over ordered signed factorizations.
fn realize_banded(body: &IntPoly, unit: &BigInt) -> Result<SeifertMatrix> {
    let size = body.degree();
    let target = if unit.is_one() {
        body.clone()
    } else {
        body.neg()
    };
    let constant: i64 = target
        .coeff(0)
        .to_string()
        .parse()
        .map_err(|_| Error::Overflow("banded realization constant"))?;
    if target.coeff(size) != target.coeff(0) {
        return Err(Error::Unrealizable(
            "polynomial is not a positive palindrome".into(),
        ));
    }
    let one_minus_t = IntPoly::from_i64(&[1, -1]);
    let t = IntPoly::from_i64(&[0, 1]);
    let mut diag = Vec::with_capacity(size);
    let mut steps = 0u64;
    fn dfs(
        diag: &mut Vec<i64>,
        prev: &IntPoly,
        prev2: &IntPoly,
        remaining: i64,
        size: usize,
        target: &IntPoly,
        one_minus_t: &IntPoly,
        t: &IntPoly,
        steps: &mut u64,
    ) -> bool {
        if diag.len() == size {
            return remaining == 1 && prev == target;
        }
        *steps += 1;
        if *steps > 1_000_000 {
            return false;
        }
        let magnitude = remaining.abs();
        let mut divisors = Vec::new();
        let mut d = 1i64;
        while d * d <= magnitude {
            if magnitude % d == 0 {
                divisors.push(d);
                if d != magnitude / d {
                    divisors.push(magnitude / d);
                }
            }
            d += 1;
        }
        divisors.sort_unstable();
        for &m in &divisors {
            for sign in [1i64, -1] {
                let choice = sign * m;
                let next = one_minus_t
                    .scale(&BigInt::from(choice))
                    .mul(prev)
                    .add(&t.mul(prev2));
                if next.degree() > target.degree() {
                    continue;
                }
                diag.push(choice);
                if dfs(
                    diag,
                    &next,
                    prev,
                    remaining / choice,
                    size,
                    target,
                    one_minus_t,
                    t,
                    steps,
                ) {
                    return true;
                }
                diag.pop();
            }
        }
        false
    }
    let found = dfs(
        &mut diag,
        &IntPoly::one(),
        &IntPoly::zero(),
        constant,
        size,
        &target,
        &one_minus_t,
        &t,
        &mut steps,
    );
    if !found {
        return Err(Error::Unrealizable(format!(
            "no banded Seifert model of size {size} found within the search budget"
        )));
    }
    let mut rows = vec![vec![0i64; size]; size];
    for (i, d) in diag.iter().enumerate() {
        rows[i][i] = *d;
        if i + 1 < size {
            rows[i][i + 1] = 1;
        }
    }
    SeifertMatrix::new(rows)
}

/// Named matrix with an optional crossing-number budget used by the tower
/// cost accounting.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub matrix: SeifertMatrix,
    pub crossing_bound: Option<i64>,
}

/// Trefoil, Alexander polynomial t^2 - t + 1.
pub fn seifert_trefoil() -> SeifertMatrix {
    SeifertMatrix::new(vec![vec![-1, 1], vec![0, -1]]).expect("catalog matrix")
}

/// Genus-one twist family with Alexander polynomial
/// m^2 t^2 - (2m^2 + 1) t + m^2.
pub fn seifert_em(m: i64) -> SeifertMatrix {
    assert!(m >= 1, "twist parameter must be positive");
    SeifertMatrix::new(vec![vec![m, 1], vec![0, -m]]).expect("catalog matrix")
}

/// The knot 6_1, Alexander polynomial 2t^2 - 5t + 2.
pub fn seifert_61() -> SeifertMatrix {
    SeifertMatrix::new(vec![vec![1, 1], vec![0, -2]]).expect("catalog matrix")
}

/// Built-in matrices. Crossing budgets: the doubled twist-knot seed used
/// at the top of a tower costs 16 crossings, and each 6_1-pattern
/// companion costs 12.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut entries = vec![CatalogEntry {
        name: "trefoil".into(),
        matrix: seifert_trefoil(),
        crossing_bound: None,
    }];
    for m in 1..=3 {
        entries.push(CatalogEntry {
            name: format!("em_{m}"),
            matrix: seifert_em(m),
            crossing_bound: None,
        });
    }
    entries.push(CatalogEntry {
        name: "six_one".into(),
        matrix: seifert_61(),
        crossing_bound: Some(12),
    });
    entries.push(CatalogEntry {
        name: "seed".into(),
        matrix: seifert_em(1).direct_sum(&seifert_em(1)),
        crossing_bound: Some(16),
    });
    entries
}

/// Looks up a catalog entry by name; `em_<m>` is accepted for any m >= 1.
pub fn lookup(name: &str) -> Option<CatalogEntry> {
    if let Some(rest) = name.strip_prefix("em_") {
        if let Ok(m) = rest.parse::<i64>() {
            if m >= 1 {
                return Some(CatalogEntry {
                    name: name.to_string(),
                    matrix: seifert_em(m),
                    crossing_bound: None,
                });
            }
        }
        return None;
    }
    catalog().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn sig(a: &SeifertMatrix, angle: &Angle) -> BigRational {
        signature_at(a, angle, JumpRule::Strict).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(SeifertMatrix::validate(&[vec![-1, 1], vec![0, -1]]));
        assert!(SeifertMatrix::validate(&[vec![1, 1], vec![0, -2]]));
        assert!(!SeifertMatrix::validate(&[vec![1, 0], vec![0, 1]]));
        assert!(matches!(
            SeifertMatrix::new(vec![vec![1]]),
            Err(Error::OddSize(1))
        ));
        assert!(matches!(
            SeifertMatrix::new(vec![vec![1, 2]]),
            Err(Error::NotSquare)
        ));
        assert!(SeifertMatrix::validate(&[]));
    }

    #[test]
    fn parse_accepts_both_layouts() {
        let bracketed = SeifertMatrix::parse("[[-1, 1], [0, -1]]").unwrap();
        let plain = SeifertMatrix::parse("-1 1\n0 -1\n").unwrap();
        let single = SeifertMatrix::parse("-1, 1, 0, -1").unwrap();
        assert_eq!(bracketed, seifert_trefoil());
        assert_eq!(plain, seifert_trefoil());
        assert_eq!(single, seifert_trefoil());
        let err = SeifertMatrix::parse("1 x\n0 1").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn alexander_closed_forms() {
        let tref = alexander(&seifert_trefoil()).unwrap();
        assert_eq!(tref, LaurentPoly::parse("t^2 - t + 1").unwrap().normalized());
        let six = alexander(&seifert_61()).unwrap();
        assert_eq!(six, LaurentPoly::parse("2t^2 - 5t + 2").unwrap().normalized());
        for m in 1..=10i64 {
            let got = alexander(&seifert_em(m)).unwrap();
            let want = LaurentPoly::from_coeffs(0, &[m * m, -(2 * m * m + 1), m * m]);
            assert_eq!(got, want.normalized(), "m = {m}");
        }
        assert_eq!(alexander(&SeifertMatrix::empty()).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn alexander_multiplicative_under_direct_sum() {
        let a = seifert_trefoil();
        let b = seifert_61();
        let sum = a.direct_sum(&b);
        let lhs = alexander(&sum).unwrap();
        let rhs = alexander(&a).unwrap().mul(&alexander(&b).unwrap()).normalized();
        assert_eq!(lhs, rhs);
        assert_eq!(sum.size(), 4);
    }

    #[test]
    fn arf_examples_and_route_agreement() {
        assert_eq!(arf(&seifert_trefoil()).unwrap(), 1);
        assert_eq!(arf(&seifert_61()).unwrap(), 0);
        for m in 1..=6i64 {
            assert_eq!(arf(&seifert_em(m)).unwrap(), (m % 2) as u8, "m = {m}");
        }
        assert_eq!(arf(&SeifertMatrix::empty()).unwrap(), 0);
        let sum = seifert_trefoil().direct_sum(&seifert_61());
        assert_eq!(arf(&sum).unwrap(), 1);
        let double = seifert_trefoil().direct_sum(&seifert_trefoil());
        assert_eq!(arf(&double).unwrap(), 0);
    }

    #[test]
    fn trefoil_signature_values() {
        let k = seifert_trefoil();
        assert_eq!(sig(&k, &Angle::pi()), rat(-2));
        assert_eq!(sig(&k, &Angle::turn(1, 8)), rat(0));
        assert_eq!(sig(&k, &Angle::turn(1, 4)), rat(-2));
        assert_eq!(sig(&k, &Angle::zero()), rat(0));
        let at_jump = signature_at(&k, &Angle::turn(1, 6), JumpRule::Strict);
        assert!(matches!(at_jump, Err(Error::AtJump(_))));
        let averaged = signature_at(&k, &Angle::turn(1, 6), JumpRule::Average).unwrap();
        assert_eq!(averaged, rat(-1));
    }

    #[test]
    fn signature_at_algebraic_cosines() {
        let k = seifert_trefoil();
        let below = Angle::from_cos(crate::algebraic::cos_horn_angle(2));
        assert_eq!(sig(&k, &below), rat(0));
        let above = Angle::from_cos(AlgebraicReal::from_root(
            IntPoly::from_i64(&[-1, 0, 2]),
            rat(-1),
            BigRational::new(BigInt::from(-1), BigInt::from(2)),
            true,
        ));
        assert_eq!(sig(&k, &above), rat(-2));
    }

    #[test]
    fn twist_family_signatures_vanish() {
        for m in 1..=4i64 {
            let k = seifert_em(m);
            for angle in [
                Angle::turn(1, 12),
                Angle::turn(1, 7),
                Angle::turn(1, 4),
                Angle::turn(2, 5),
                Angle::pi(),
            ] {
                assert_eq!(sig(&k, &angle), rat(0), "m = {m} at {angle}");
            }
        }
    }

    #[test]
    fn jump_angle_examples() {
        assert_eq!(jump_angles(&seifert_trefoil()).unwrap(), vec![Angle::turn(1, 6)]);
        assert!(jump_angles(&seifert_61()).unwrap().is_empty());
        for m in 1..=4 {
            assert!(jump_angles(&seifert_em(m)).unwrap().is_empty());
        }
        assert!(jump_angles(&SeifertMatrix::empty()).unwrap().is_empty());
    }

    #[test]
    fn step_function_matches_pointwise_signature() {
        let k = seifert_trefoil();
        let f = step_function(&k).unwrap();
        assert_eq!(f.jumps(), &[(Angle::turn(1, 6), -2)]);
        for angle in [
            Angle::turn(1, 8),
            Angle::turn(1, 5),
            Angle::turn(1, 4),
            Angle::turn(2, 5),
            Angle::pi(),
        ] {
            assert_eq!(
                f.evaluate(&angle, JumpRule::Strict).unwrap(),
                sig(&k, &angle),
                "at {angle}"
            );
        }
        assert_eq!(
            f.evaluate(&Angle::turn(1, 6), JumpRule::Average).unwrap(),
            signature_at(&k, &Angle::turn(1, 6), JumpRule::Average).unwrap()
        );
        assert!(step_function(&seifert_em(3)).unwrap().is_zero());
    }

    #[test]
    fn realization_examples() {
        let one = realize_from_alexander(&LaurentPoly::parse("t^2 - 3t + 1").unwrap()).unwrap();
        assert_eq!(one, seifert_em(1));
        for m in 1..=5i64 {
            let p = LaurentPoly::from_coeffs(0, &[m * m, -(2 * m * m + 1), m * m]);
            assert_eq!(realize_from_alexander(&p).unwrap(), seifert_em(m));
        }
        let six = realize_from_alexander(&LaurentPoly::parse("2t^2 - 5t + 2").unwrap()).unwrap();
        assert_eq!(six, seifert_61());
        let unit = realize_from_alexander(&LaurentPoly::parse("t^3").unwrap()).unwrap();
        assert_eq!(unit, SeifertMatrix::empty());
    }

    #[test]
    fn realization_rejects_inadmissible_input() {
        let asym = LaurentPoly::parse("t^2 - 2t + 2").unwrap();
        assert!(matches!(realize_from_alexander(&asym), Err(Error::NotSymmetric)));
        let nonunit = LaurentPoly::parse("t^2 - 4t + 1").unwrap();
        assert!(matches!(
            realize_from_alexander(&nonunit),
            Err(Error::NotUnitAtOne(_))
        ));
    }

    #[test]
    fn realize_degree_four_cyclotomic() {
        let p = LaurentPoly::parse("t^4 - t^3 + t^2 - t + 1").unwrap();
        let m = realize_from_alexander(&p).unwrap();
        assert_eq!(alexander(&m).unwrap(), p.normalized());
        let jumps = jump_angles(&m).unwrap();
        assert_eq!(jumps, vec![Angle::turn(1, 10), Angle::turn(3, 10)]);
    }

    #[test]
    fn realize_round_trips_banded_samples() {
        let samples = [
            vec![1, -1, 1, -1],
            vec![-1, -1, -1, -1],
            vec![2, 1, 0, 0],
            vec![1, 1, -2, 0],
            vec![1, -1, 1, -1, 1, -1],
        ];
        for d in samples {
            let size = d.len();
            let mut rows = vec![vec![0i64; size]; size];
            for (i, v) in d.iter().enumerate() {
                rows[i][i] = *v;
                if i + 1 < size {
                    rows[i][i + 1] = 1;
                }
            }
            let m = SeifertMatrix::new(rows).unwrap();
            let p = alexander(&m).unwrap();
            let realized = realize_from_alexander(&p).unwrap();
            assert_eq!(alexander(&realized).unwrap(), p, "diagonal {d:?}");
        }
    }

    #[test]
    fn mirror_negates_signature_and_keeps_alexander() {
        let k = seifert_trefoil();
        let mk = k.mirror();
        assert_eq!(alexander(&mk).unwrap(), alexander(&k).unwrap());
        assert_eq!(arf(&mk).unwrap(), arf(&k).unwrap());
        assert_eq!(sig(&mk, &Angle::pi()), rat(2));
        assert_eq!(sig(&mk, &Angle::turn(1, 4)), rat(2));
        let sum = k.direct_sum(&mk);
        assert_eq!(sig(&sum, &Angle::pi()), rat(0));
        assert_eq!(sig(&sum, &Angle::turn(1, 4)), rat(0));
    }

    #[test]
    fn direct_sum_adds_signatures() {
        let a = seifert_trefoil();
        let b = seifert_61();
        let sum = a.direct_sum(&b);
        for angle in [Angle::turn(1, 5), Angle::turn(1, 4), Angle::pi()] {
            assert_eq!(sig(&sum, &angle), sig(&a, &angle) + sig(&b, &angle));
        }
    }

    #[test]
    fn catalog_contents() {
        let names: Vec<String> = catalog().into_iter().map(|e| e.name).collect();
        assert_eq!(names, ["trefoil", "em_1", "em_2", "em_3", "six_one", "seed"]);
        assert_eq!(seifert_em(1).rows(), &[vec![1, 1], vec![0, -1]]);
        assert_eq!(seifert_61().rows(), &[vec![1, 1], vec![0, -2]]);
        let seed = lookup("seed").unwrap();
        assert_eq!(seed.crossing_bound, Some(16));
        assert_eq!(seed.matrix.size(), 4);
        assert_eq!(lookup("six_one").unwrap().crossing_bound, Some(12));
        assert_eq!(lookup("em_7").unwrap().matrix, seifert_em(7));
        assert!(lookup("em_0").is_none());
        assert!(lookup("nessie").is_none());
    }
}
