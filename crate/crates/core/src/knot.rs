//! Knot-level calculus on two representations: Seifert matrices and
//! spectral data (signature step function plus Arf bit). Operators:
//! mirror image, connected sum, (d,1)-cable, and Horn's grope-bounding
//! family. Matrix knots derive their spectral form once and cache it;
//! every operator acts consistently on both representations.
//!
//! Geometric facts that are used but not computed (grope height,
//! solvability level, an Arf bit carried through cabling) travel as
//! citation-carrying tags, so derived data never masquerades as computed
//! fact.

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;

use crate::algebraic::cos_horn_angle;
use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::seifert::{self, SeifertMatrix};
use crate::stepfn::{AverageValue, JumpRule, StepFunction};

/// Citation for Horn's height-2 grope bound on the twisted family.
pub const HORN_GROPE: &str =
    "Horn, Comment. Math. Helv. 85 (2010): the twisted family bounds gropes of height 2";
/// Citation for Arf vanishing on (0)-solvable knots.
pub const ARF_ZERO_SOLVABLE: &str =
    "Cochran-Orr-Teichner, Ann. of Math. 157 (2003): (0)-solvable knots have Arf 0";
/// Provenance note for an Arf bit carried through a cable.
pub const ARF_THROUGH_CABLE: &str =
    "carried through the (d,1)-cable; for odd d this is the Murasugi residue of the pulled-back Alexander polynomial";

/// Geometric metadata attached to a knot, always with its source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tag {
    GropeHeight { height: i64, citation: String },
    Solvable { level: i64, citation: String },
}

impl Tag {
    pub fn grope_height(height: i64, citation: &str) -> Tag {
        Tag::GropeHeight {
            height,
            citation: citation.to_string(),
        }
    }

    pub fn solvable(level: i64, citation: &str) -> Tag {
        Tag::Solvable {
            level,
            citation: citation.to_string(),
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::GropeHeight { height, citation } => {
                write!(f, "grope_height({height}) [{citation}]")
            }
            Tag::Solvable { level, citation } => write!(f, "solvable({level}) [{citation}]"),
        }
    }
}

/// How an Arf bit was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArfSource {
    /// Computed from a Seifert matrix with both routes agreeing.
    Computed,
    /// Asserted on the stated authority, not recomputed here.
    Citation(String),
}

impl fmt::Display for ArfSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArfSource::Computed => write!(f, "computed"),
            ArfSource::Citation(c) => write!(f, "by citation: {c}"),
        }
    }
}

/// Signature function, Arf bit with provenance, and geometric tags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralData {
    pub sigma: StepFunction,
    pub arf: u8,
    pub arf_source: ArfSource,
    pub tags: Vec<Tag>,
}

#[derive(Clone)]
enum Form {
    Matrix {
        seifert: SeifertMatrix,
        spectral: OnceLock<SpectralData>,
    },
    Spectral(SpectralData),
}

/// A knot under either representation, with a display name.
#[derive(Clone)]
pub struct Knot {
    name: String,
    form: Form,
}

impl Knot {
    pub fn from_matrix(name: &str, seifert: SeifertMatrix) -> Knot {
        Knot {
            name: name.to_string(),
            form: Form::Matrix {
                seifert,
                spectral: OnceLock::new(),
            },
        }
    }

    pub fn from_spectral(name: &str, sigma: StepFunction, arf: u8, tags: Vec<Tag>) -> Knot {
        Knot {
            name: name.to_string(),
            form: Form::Spectral(SpectralData {
                sigma,
                arf: arf & 1,
                arf_source: ArfSource::Computed,
                tags,
            }),
        }
    }

    pub fn unknot() -> Knot {
        Knot::from_matrix("unknot", SeifertMatrix::empty())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: &str) -> Knot {
        self.name = name.to_string();
        self
    }

    pub fn seifert_matrix(&self) -> Option<&SeifertMatrix> {
        match &self.form {
            Form::Matrix { seifert, .. } => Some(seifert),
            Form::Spectral(_) => None,
        }
    }

    /// The spectral form, derived and cached for matrix knots.
    pub fn spectral(&self) -> Result<&SpectralData> {
        match &self.form {
            Form::Spectral(s) => Ok(s),
            Form::Matrix { seifert, spectral } => {
                if let Some(s) = spectral.get() {
                    return Ok(s);
                }
                let computed = SpectralData {
                    sigma: seifert::step_function(seifert)?,
                    arf: seifert::arf(seifert)?,
                    arf_source: ArfSource::Computed,
                    tags: Vec::new(),
                };
                Ok(spectral.get_or_init(|| computed))
            }
        }
    }

    /// Drops the matrix, keeping only the derived spectral data.
    pub fn to_spectral(&self) -> Result<Knot> {
        Ok(Knot {
            name: self.name.clone(),
            form: Form::Spectral(self.spectral()?.clone()),
        })
    }

    pub fn signature_function(&self) -> Result<&StepFunction> {
        Ok(&self.spectral()?.sigma)
    }

    /// Levine-Tristram signature at an exact angle. Matrix knots evaluate
    /// through the characteristic polynomial directly; spectral knots
    /// through their step function.
    pub fn signature_at(&self, angle: &Angle, rule: JumpRule) -> Result<BigRational> {
        match &self.form {
            Form::Matrix { seifert, .. } => seifert::signature_at(seifert, angle, rule),
            Form::Spectral(s) => s.sigma.evaluate(angle, rule),
        }
    }

    pub fn average_signature(&self) -> Result<AverageValue> {
        Ok(self.spectral()?.sigma.average())
    }

    pub fn arf(&self) -> Result<u8> {
        Ok(self.spectral()?.arf)
    }

    pub fn arf_source(&self) -> Result<&ArfSource> {
        Ok(&self.spectral()?.arf_source)
    }

    pub fn tags(&self) -> &[Tag] {
        match &self.form {
            Form::Spectral(s) => &s.tags,
            Form::Matrix { .. } => &[],
        }
    }

    pub fn alexander(&self) -> Option<Result<LaurentPoly>> {
        self.seifert_matrix().map(seifert::alexander)
    }

    /// Mirror image with reversed orientation: matrices map to the negated
    /// transpose, spectral data negates the signature and keeps Arf and
    /// the geometric tags.
    pub fn mirror(&self) -> Knot {
        let name = format!("-{}", self.name);
        match &self.form {
            Form::Matrix { seifert, .. } => Knot::from_matrix(&name, seifert.mirror()),
            Form::Spectral(s) => Knot {
                name,
                form: Form::Spectral(SpectralData {
                    sigma: s.sigma.negate(),
                    arf: s.arf,
                    arf_source: s.arf_source.clone(),
                    tags: s.tags.clone(),
                }),
            },
        }
    }

    /// Connected sum. Two matrix knots stay a matrix knot (block direct
    /// sum); any other mix adds signatures and xors Arf bits. Grope and
    /// solvability tags survive only when both summands carry them, at
    /// the smaller height or level.
    pub fn connected_sum(&self, other: &Knot) -> Result<Knot> {
        let name = format!("{} # {}", self.name, other.name);
        if let (Form::Matrix { seifert: a, .. }, Form::Matrix { seifert: b, .. }) =
            (&self.form, &other.form)
        {
            return Ok(Knot::from_matrix(&name, a.direct_sum(b)));
        }
        let (a, b) = (self.spectral()?, other.spectral()?);
        let arf_source = match (&a.arf_source, &b.arf_source) {
            (ArfSource::Computed, ArfSource::Computed) => ArfSource::Computed,
            (x, ArfSource::Computed) => x.clone(),
            (ArfSource::Computed, y) => y.clone(),
            (ArfSource::Citation(x), ArfSource::Citation(y)) => {
                if x == y {
                    ArfSource::Citation(x.clone())
                } else {
                    ArfSource::Citation(format!("{x}; {y}"))
                }
            }
        };
        Ok(Knot {
            name,
            form: Form::Spectral(SpectralData {
                sigma: a.sigma.add(&b.sigma),
                arf: a.arf ^ b.arf,
                arf_source,
                tags: merge_tags(&a.tags, &b.tags),
            }),
        })
    }

    /// Connected sum of `n` copies, held as a multiplicity: the signature
    /// scales and the Arf bit survives only for odd `n`. The copies are
    /// never materialized.
    pub fn scaled_copies(&self, n: i64) -> Result<Knot> {
        if n < 0 {
            return Err(Error::Domain(format!("copy count {n} must be >= 0")));
        }
        let s = self.spectral()?;
        Ok(Knot {
            name: format!("{n} x ({})", self.name),
            form: Form::Spectral(SpectralData {
                sigma: s.sigma.scale(n),
                arf: s.arf * (n % 2) as u8,
                arf_source: s.arf_source.clone(),
                tags: s.tags.clone(),
            }),
        })
    }

    /// The same knot with its tag list replaced; the caller vouches for
    /// the new tags, whose citations say on what authority.
    pub fn with_tags(&self, tags: Vec<Tag>) -> Result<Knot> {
        let mut s = self.spectral()?.clone();
        s.tags = tags;
        Ok(Knot {
            name: self.name.clone(),
            form: Form::Spectral(s),
        })
    }

    /// The (d,1)-cable as a spectral knot: the signature function is the
    /// pullback of sigma under the d-th power map, and the Arf bit is
    /// carried over with a provenance note rather than recomputed. Tags
    /// are dropped; whoever needs one must re-certify it.
    pub fn cable_d1(&self, d: i64) -> Result<Knot> {
        if d < 1 {
            return Err(Error::Domain(format!("cable winding {d} must be >= 1")));
        }
        let s = self.spectral()?;
        let arf_source = if d == 1 {
            s.arf_source.clone()
        } else {
            ArfSource::Citation(ARF_THROUGH_CABLE.to_string())
        };
        Ok(Knot {
            name: format!("({d},1)-cable({})", self.name),
            form: Form::Spectral(SpectralData {
                sigma: s.sigma.pullback_power(d)?,
                arf: s.arf,
                arf_source,
                tags: Vec::new(),
            }),
        })
    }
}

/// Horn's genus-one twisted knots: signature 0 below the cut angle
/// theta_m = arccos of the real root of 8m(1-x)^3 = 1 in (1/2, 1), and 2
/// from there to pi. They bound gropes of height 2, hence are
/// (0)-solvable and carry Arf 0.
pub fn horn_knot(m: i64) -> Knot {
    assert!(m >= 1, "twist parameter must be positive");
    let sigma = StepFunction::from_jumps(vec![(Angle::from_cos(cos_horn_angle(m)), 2)])
        .expect("one jump strictly inside (0, pi)");
    Knot {
        name: format!("horn_{m}"),
        form: Form::Spectral(SpectralData {
            sigma,
            arf: 0,
            arf_source: ArfSource::Citation(ARF_ZERO_SOLVABLE.to_string()),
            tags: vec![Tag::grope_height(2, HORN_GROPE)],
        }),
    }
}

fn merge_tags(a: &[Tag], b: &[Tag]) -> Vec<Tag> {
    let mut out = Vec::new();
    let grope = |tags: &[Tag]| {
        tags.iter().find_map(|t| match t {
            Tag::GropeHeight { height, citation } => Some((*height, citation.clone())),
            _ => None,
        })
    };
    let solv = |tags: &[Tag]| {
        tags.iter().find_map(|t| match t {
            Tag::Solvable { level, citation } => Some((*level, citation.clone())),
            _ => None,
        })
    };
    if let (Some((ha, ca)), Some((hb, cb))) = (grope(a), grope(b)) {
        let (h, c) = if ha <= hb { (ha, ca) } else { (hb, cb) };
        out.push(Tag::GropeHeight {
            height: h,
            citation: c,
        });
    }
    if let (Some((la, ca)), Some((lb, cb))) = (solv(a), solv(b)) {
        let (l, c) = if la <= lb { (la, ca) } else { (lb, cb) };
        out.push(Tag::Solvable {
            level: l,
            citation: c,
        });
    }
    out
}

impl fmt::Debug for Knot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            Form::Matrix { seifert, .. } => {
                write!(f, "Knot({} = matrix {seifert})", self.name)
            }
            Form::Spectral(s) => write!(
                f,
                "Knot({} = spectral, {} jumps, arf {})",
                self.name,
                s.sigma.jumps().len(),
                s.arf
            ),
        }
    }
}

/// Parses a knot description. Lines of `key: value` with either a
/// `seifert` key holding a row-major matrix or a `spectral` key holding
/// `jumps = [(turns, value), ...], arf = b` with rational turn fractions.
/// Optional keys: `name`, `tags` (comma-separated `grope_height(h)` /
/// `solvable(n)`, recorded as asserted by the input). Bare matrix text is
/// accepted as a shorthand for a single `seifert` entry.
pub fn parse_description(text: &str) -> Result<Knot> {
    if text.trim().is_empty() {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "empty description".into(),
        });
    }
    let mut name: Option<String> = None;
    let mut matrix: Option<SeifertMatrix> = None;
    let mut spectral: Option<(StepFunction, u8)> = None;
    let mut tags: Vec<Tag> = Vec::new();
    let mut keyed = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            continue;
        };
        let parse_err = |msg: String| Error::Parse {
            line: i + 1,
            col: key.len() + 2,
            msg,
        };
        match key.trim() {
            "name" => {
                keyed = true;
                name = Some(value.trim().to_string());
            }
            "seifert" => {
                keyed = true;
                matrix = Some(SeifertMatrix::parse(value.trim())?);
            }
            "spectral" => {
                keyed = true;
                spectral = Some(parse_spectral(value.trim()).map_err(parse_err)?);
            }
            "tags" => {
                keyed = true;
                for piece in value.split(',') {
                    let piece = piece.trim();
                    if piece.is_empty() {
                        continue;
                    }
                    tags.push(parse_tag(piece).map_err(parse_err)?);
                }
            }
            other => return Err(parse_err(format!("unknown key '{other}'"))),
        }
    }
    if !keyed {
        matrix = Some(SeifertMatrix::parse(text)?);
    }
    let name = name.unwrap_or_else(|| "knot".to_string());
    match (matrix, spectral) {
        (Some(m), None) => Ok(Knot::from_matrix(&name, m)),
        (None, Some((sigma, arf))) => {
            let mut k = Knot::from_spectral(&name, sigma, arf, tags);
            if let Form::Spectral(s) = &mut k.form {
                s.arf_source = ArfSource::Citation("asserted by the input description".into());
            }
            Ok(k)
        }
        (Some(_), Some(_)) => Err(Error::Domain(
            "description holds both a seifert and a spectral form".into(),
        )),
        (None, None) => Err(Error::Domain(
            "description holds neither a seifert nor a spectral form".into(),
        )),
    }
}

fn parse_spectral(value: &str) -> std::result::Result<(StepFunction, u8), String> {
    let mut jumps: Option<Vec<(Angle, i64)>> = None;
    let mut arf: Option<u8> = None;
    let mut rest = value;
    while !rest.is_empty() {
        rest = rest.trim_start_matches([',', ' ']);
        if rest.is_empty() {
            break;
        }
        if let Some(tail) = rest.strip_prefix("jumps") {
            let tail = tail.trim_start().strip_prefix('=').ok_or("expected '=' after jumps")?;
            let tail = tail.trim_start();
            let close = tail.find(']').ok_or("unterminated jump list")?;
            let body = tail[..close].trim_start_matches('[');
            jumps = Some(parse_jump_list(body)?);
            rest = &tail[close + 1..];
        } else if let Some(tail) = rest.strip_prefix("arf") {
            let tail = tail.trim_start().strip_prefix('=').ok_or("expected '=' after arf")?;
            let tail = tail.trim_start();
            let end = tail.find([',', ' ']).unwrap_or(tail.len());
            let bit: u8 = tail[..end]
                .parse()
                .map_err(|_| format!("bad arf bit '{}'", &tail[..end]))?;
            if bit > 1 {
                return Err(format!("arf bit must be 0 or 1, found {bit}"));
            }
            arf = Some(bit);
            rest = &tail[end..];
        } else {
            return Err(format!("unexpected token at '{rest}'"));
        }
    }
    let jumps = jumps.ok_or("missing jumps = [...]")?;
    let arf = arf.ok_or("missing arf = bit")?;
    let sigma = StepFunction::from_jumps(jumps).map_err(|e| e.to_string())?;
    Ok((sigma, arf))
}

fn parse_jump_list(body: &str) -> std::result::Result<Vec<(Angle, i64)>, String> {
    let mut out = Vec::new();
    for piece in body.split(')') {
        let piece = piece.trim_start_matches([',', ' ']).trim_end();
        if piece.is_empty() {
            continue;
        }
        let inner = piece.strip_prefix('(').ok_or_else(|| format!("expected '(' in '{piece}'"))?;
        let (angle_text, value_text) = inner
            .split_once(',')
            .ok_or_else(|| format!("expected 'turns, value' in '{inner}'"))?;
        let angle = parse_turns(angle_text.trim())?;
        let value: i64 = value_text
            .trim()
            .parse()
            .map_err(|_| format!("bad jump value '{}'", value_text.trim()))?;
        out.push((angle, value));
    }
    Ok(out)
}

fn parse_turns(text: &str) -> std::result::Result<Angle, String> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<i64>().map_err(|_| format!("bad turn fraction '{text}'"))?,
            d.trim().parse::<i64>().map_err(|_| format!("bad turn fraction '{text}'"))?,
        ),
        None => (
            text.parse::<i64>().map_err(|_| format!("bad turn fraction '{text}'"))?,
            1,
        ),
    };
    if den <= 0 || num < 0 || 2 * num > den {
        return Err(format!("turn fraction {text} outside [0, 1/2]"));
    }
    Ok(Angle::turn(num, den))
}

fn parse_tag(piece: &str) -> std::result::Result<Tag, String> {
    const NOTE: &str = "asserted by the input description";
    let inner = |prefix: &str| -> Option<std::result::Result<i64, String>> {
        piece
            .strip_prefix(prefix)
            .and_then(|t| t.strip_prefix('('))
            .and_then(|t| t.strip_suffix(')'))
            .map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad tag '{piece}'")))
    };
    if let Some(h) = inner("grope_height") {
        return Ok(Tag::grope_height(h?, NOTE));
    }
    if let Some(l) = inner("solvable") {
        return Ok(Tag::solvable(l?, NOTE));
    }
    Err(format!("unknown tag '{piece}'"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::{seifert_61, seifert_em, seifert_trefoil};
    use num_bigint::BigInt;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn halves(n: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(2))
    }

    fn trefoil() -> Knot {
        Knot::from_matrix("trefoil", seifert_trefoil())
    }

    #[test]
    fn mirror_is_an_involution_on_invariants() {
        let k = trefoil();
        let mm = k.mirror().mirror();
        assert_eq!(
            k.signature_function().unwrap(),
            mm.signature_function().unwrap()
        );
        assert_eq!(k.arf().unwrap(), mm.arf().unwrap());
        let a = k.alexander().unwrap().unwrap();
        let b = mm.alexander().unwrap().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mirror_negates_signature() {
        let mk = trefoil().mirror();
        assert_eq!(
            mk.signature_at(&Angle::pi(), JumpRule::Strict).unwrap(),
            rat(2)
        );
        let spectral_mirror = trefoil().to_spectral().unwrap().mirror();
        assert_eq!(
            spectral_mirror
                .signature_at(&Angle::pi(), JumpRule::Strict)
                .unwrap(),
            rat(2)
        );
        assert_eq!(spectral_mirror.arf().unwrap(), 1);
    }

    #[test]
    fn connected_sum_with_mirror_kills_signature() {
        let k = trefoil();
        let sum = k.connected_sum(&k.mirror()).unwrap();
        assert!(sum.signature_function().unwrap().is_zero());
        assert_eq!(sum.arf().unwrap(), 0);
    }

    #[test]
    fn connected_sum_coherent_across_representations() {
        let a = trefoil();
        let b = Knot::from_matrix("six_one", seifert_61());
        let matrix_first = a.connected_sum(&b).unwrap();
        assert!(matrix_first.seifert_matrix().is_some());
        let spectral_first = a
            .to_spectral()
            .unwrap()
            .connected_sum(&b.to_spectral().unwrap())
            .unwrap();
        assert_eq!(
            matrix_first.signature_function().unwrap(),
            spectral_first.signature_function().unwrap()
        );
        assert_eq!(matrix_first.arf().unwrap(), spectral_first.arf().unwrap());
    }

    #[test]
    fn horn_knot_cancels_matrix_trefoil() {
        let sum = trefoil().connected_sum(&horn_knot(1)).unwrap();
        assert!(sum.signature_function().unwrap().is_zero());
        assert_eq!(sum.arf().unwrap(), 1);
    }

    #[test]
    fn horn_knot_examples() {
        let p1 = horn_knot(1);
        assert_eq!(p1.signature_function().unwrap().jumps().len(), 1);
        assert_eq!(p1.signature_function().unwrap().jumps()[0].0, Angle::turn(1, 6));
        assert_eq!(
            p1.signature_at(&Angle::pi(), JumpRule::Strict).unwrap(),
            rat(2)
        );
        assert_eq!(p1.arf().unwrap(), 0);
        assert!(matches!(p1.arf_source().unwrap(), ArfSource::Citation(_)));
        assert_eq!(
            p1.tags(),
            &[Tag::grope_height(2, HORN_GROPE)]
        );
        let p8 = horn_knot(8);
        let jump = &p8.signature_function().unwrap().jumps()[0].0;
        let c = jump.cos().unwrap();
        assert_eq!(
            c.cmp_rational(&BigRational::new(BigInt::from(3), BigInt::from(4))),
            std::cmp::Ordering::Equal
        );
        for m in [2, 3, 5] {
            assert_eq!(
                horn_knot(m)
                    .signature_at(&Angle::pi(), JumpRule::Strict)
                    .unwrap(),
                rat(2)
            );
        }
    }

    #[test]
    fn cable_with_winding_one_is_identity() {
        let k = trefoil();
        let c = k.cable_d1(1).unwrap();
        assert_eq!(
            c.signature_function().unwrap(),
            k.signature_function().unwrap()
        );
        assert_eq!(c.arf().unwrap(), k.arf().unwrap());
    }

    #[test]
    fn cable_pulls_back_signature() {
        let k = trefoil();
        let c = k.cable_d1(2).unwrap();
        let pairs = [
            (Angle::turn(1, 16), Angle::turn(1, 8)),
            (Angle::turn(1, 8), Angle::turn(1, 4)),
            (Angle::turn(19, 40), Angle::turn(1, 20)),
        ];
        for (cable_angle, base_angle) in pairs {
            assert_eq!(
                c.signature_at(&cable_angle, JumpRule::Strict).unwrap(),
                k.signature_at(&base_angle, JumpRule::Strict).unwrap(),
                "at {cable_angle}"
            );
        }
        assert_eq!(c.signature_function().unwrap().jumps().len(), 2);
    }

    #[test]
    fn cable_preserves_average_signature() {
        let k = trefoil();
        for d in [2i64, 3, 5] {
            let c = k.cable_d1(d).unwrap();
            assert_eq!(
                c.average_signature().unwrap(),
                k.average_signature().unwrap(),
                "d = {d}"
            );
        }
        let avg = k.average_signature().unwrap();
        assert_eq!(avg.rational_part(), &BigRational::new(BigInt::from(-4), BigInt::from(3)));
        assert!(avg.symbolic_part().is_empty());
    }

    #[test]
    fn cable_commutes_with_mirror() {
        let k = trefoil();
        let a = k.mirror().cable_d1(5).unwrap();
        let b = k.cable_d1(5).unwrap().mirror();
        assert_eq!(
            a.signature_function().unwrap(),
            b.signature_function().unwrap()
        );
        assert_eq!(a.arf().unwrap(), b.arf().unwrap());
    }

    #[test]
    fn cable_arf_carries_a_provenance_note() {
        let c = trefoil().cable_d1(3).unwrap();
        assert_eq!(c.arf().unwrap(), 1);
        assert!(matches!(c.arf_source().unwrap(), ArfSource::Citation(_)));
        assert!(c.tags().is_empty());
    }

    #[test]
    fn averaged_evaluation_at_jump() {
        let k = trefoil();
        assert_eq!(
            k.signature_at(&Angle::turn(1, 6), JumpRule::Average).unwrap(),
            halves(-2)
        );
        assert_eq!(
            k.to_spectral()
                .unwrap()
                .signature_at(&Angle::turn(1, 6), JumpRule::Average)
                .unwrap(),
            halves(-2)
        );
    }

    #[test]
    fn tags_merge_at_minimum_under_sum() {
        let a = Knot::from_spectral("a", StepFunction::zero(), 0, vec![
            Tag::grope_height(4, "test"),
            Tag::solvable(2, "test"),
        ]);
        let b = Knot::from_spectral("b", StepFunction::zero(), 0, vec![
            Tag::grope_height(3, "test"),
        ]);
        let sum = a.connected_sum(&b).unwrap();
        assert_eq!(sum.tags(), &[Tag::grope_height(3, "test")]);
    }

    #[test]
    fn twist_knots_have_zero_signature_everywhere() {
        for m in 1..=3 {
            let k = Knot::from_matrix("em", seifert_em(m));
            assert!(k.signature_function().unwrap().is_zero());
            assert_eq!(k.arf().unwrap(), (m % 2) as u8);
        }
    }

    #[test]
    fn description_round_trip_matrix() {
        let k = parse_description("name: tref\nseifert: [[-1, 1], [0, -1]]").unwrap();
        assert_eq!(k.name(), "tref");
        assert_eq!(k.seifert_matrix().unwrap(), &seifert_trefoil());
        let bare = parse_description("-1 1\n0 -1").unwrap();
        assert_eq!(bare.seifert_matrix().unwrap(), &seifert_trefoil());
    }

    #[test]
    fn description_round_trip_spectral() {
        let text = "name: horny\nspectral: jumps = [(1/6, 2)], arf = 0\ntags: grope_height(2)";
        let k = parse_description(text).unwrap();
        assert_eq!(k.name(), "horny");
        assert_eq!(
            k.signature_function().unwrap(),
            horn_knot(1).signature_function().unwrap()
        );
        assert_eq!(k.arf().unwrap(), 0);
        assert_eq!(k.tags().len(), 1);
        assert!(matches!(k.arf_source().unwrap(), ArfSource::Citation(_)));
    }

    #[test]
    fn description_rejects_conflicts_and_junk() {
        assert!(parse_description("name: x").is_err());
        assert!(parse_description("spectral: jumps = [(2/3, 2)], arf = 0").is_err());
        assert!(parse_description("widget: 3").is_err());
        let both = "seifert: [[0, 1], [-1, 0]]\nspectral: jumps = [], arf = 0";
        assert!(parse_description(both).is_err());
    }
}
