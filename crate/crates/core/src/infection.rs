//! Iterated infection towers: a chain of single-axis seeds below a
//! two-axis top seed whose right branch mirrors the left. The tree is a
//! data model; geometric consequences (grope height, solvability, order
//! two in concordance) are recorded as cited tags, with the parts that
//! can be machine-checked (mirror symmetry, the amphichirality witness
//! of the top block) actually checked.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::knot::{Knot, Tag};
use crate::seifert::{seifert_61, seifert_em, SeifertMatrix};

/// Where an unknotted infection axis sits relative to the seed's group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axis {
    pub name: String,
    pub linking_number: i64,
    pub depth_claim: String,
}

impl Axis {
    fn new(name: &str, depth_claim: &str) -> Axis {
        Axis {
            name: name.to_string(),
            linking_number: 0,
            depth_claim: depth_claim.to_string(),
        }
    }
}

/// A seed knot with its ordered axes and cited crossing budget.
#[derive(Clone, Debug)]
pub struct Seed {
    pub name: String,
    pub matrix: SeifertMatrix,
    pub axes: Vec<Axis>,
    pub crossing_bound: Option<i64>,
}

#[derive(Clone, Debug)]
pub enum Child {
    Leaf(Knot),
    Node(Box<InfectionTree>),
}

/// Infection tree: one child per seed axis.
#[derive(Clone, Debug)]
pub struct InfectionTree {
    pub seed: Seed,
    pub children: Vec<Child>,
}

pub const ORDER_TWO_CITATION: &str =
    "Cochran-Harvey-Leidy, Proc. Lond. Math. Soc. 102 (2011), Lemma 2.1: \
     negatively amphichiral knots have order at most two in concordance";
pub const GROPE_RAISE_CITATION: &str =
    "height-2 leaves infected along depth-n axes bound gropes of height n+2 \
     (cf. Cochran-Teichner, Duke Math. J. 137 (2007); Horn 2010)";
pub const SOLVABLE_RAISE_CITATION: &str =
    "(0)-solvable infectants along commutator-depth axes give (n)-solvable knots \
     (Cochran-Orr-Teichner, Ann. of Math. 157 (2003))";
const AXIS_DEPTH_CLAIM: &str =
    "unknotted circle of linking number zero at the stated commutator depth; construction input";

/// Single-axis chain seed used at level k.
pub fn standard_seed_level(k: i64) -> Seed {
    Seed {
        name: format!("K^{k}"),
        matrix: seifert_61(),
        axes: vec![Axis::new(&format!("eta_{k}"), AXIS_DEPTH_CLAIM)],
        crossing_bound: Some(12),
    }
}

/// Two-axis top seed: connected sum of two copies of the figure-eight
/// pattern block.
pub fn standard_seed_top() -> Seed {
    Seed {
        name: "K".to_string(),
        matrix: seifert_em(1).direct_sum(&seifert_em(1)),
        axes: vec![
            Axis::new("alpha", AXIS_DEPTH_CLAIM),
            Axis::new("beta", AXIS_DEPTH_CLAIM),
        ],
        crossing_bound: Some(16),
    }
}

/// Builds the height-n tower: a chain of n-1 single-axis seeds carrying
/// the infectant, mirrored into the second axis of the top seed.
pub fn build_tower(n: i64, infectant: &Knot) -> Result<InfectionTree> {
    if n < 2 {
        return Err(Error::TowerTooShort(n));
    }
    let leaf = infectant.to_spectral()?;
    let mut left = Child::Leaf(leaf);
    for k in 1..n {
        left = Child::Node(Box::new(InfectionTree {
            seed: standard_seed_level(k),
            children: vec![left],
        }));
    }
    let right = mirror_child(&left);
    Ok(InfectionTree {
        seed: standard_seed_top(),
        children: vec![left, right],
    })
}

fn mirror_seed(seed: &Seed) -> Seed {
    Seed {
        name: format!("-{}", seed.name),
        matrix: seed.matrix.mirror(),
        axes: seed.axes.clone(),
        crossing_bound: seed.crossing_bound,
    }
}

fn mirror_child(child: &Child) -> Child {
    match child {
        Child::Leaf(k) => Child::Leaf(k.mirror()),
        Child::Node(t) => Child::Node(Box::new(mirror_tree(t))),
    }
}

/// Mirror image of a whole tree: every seed and every leaf is mirrored.
pub fn mirror_tree(t: &InfectionTree) -> InfectionTree {
    InfectionTree {
        seed: mirror_seed(&t.seed),
        children: t.children.iter().map(mirror_child).collect(),
    }
}

fn children_mirror(a: &Child, b: &Child) -> Result<bool> {
    match (a, b) {
        (Child::Leaf(x), Child::Leaf(y)) => {
            let (sx, sy) = (x.spectral()?, y.spectral()?);
            Ok(sx.sigma.negate() == sy.sigma && sx.arf == sy.arf)
        }
        (Child::Node(x), Child::Node(y)) => trees_mirror(x, y),
        _ => Ok(false),
    }
}

/// Whether `b` is the exact structural mirror of `a`.
pub fn trees_mirror(a: &InfectionTree, b: &InfectionTree) -> Result<bool> {
    if b.seed.matrix != a.seed.matrix.mirror() || a.children.len() != b.children.len() {
        return Ok(false);
    }
    for (x, y) in a.children.iter().zip(&b.children) {
        if !children_mirror(x, y)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Validates the standard tower shape and returns its height n: a top
/// seed with two children, each a chain of n-1 single-axis nodes over a
/// leaf.
pub fn tower_height(t: &InfectionTree) -> Result<i64> {
    if t.children.len() != 2 || t.seed.axes.len() != 2 {
        return Err(Error::Domain(
            "tower must have a two-axis top seed with two children".into(),
        ));
    }
    let depth = |mut child: &Child| -> Result<i64> {
        let mut levels = 0i64;
        loop {
            match child {
                Child::Leaf(_) => return Ok(levels),
                Child::Node(node) => {
                    if node.children.len() != 1 || node.seed.axes.len() != 1 {
                        return Err(Error::Domain(
                            "chain levels must have exactly one axis".into(),
                        ));
                    }
                    levels += 1;
                    child = &node.children[0];
                }
            }
        }
    };
    let left = depth(&t.children[0])?;
    let right = depth(&t.children[1])?;
    if left != right {
        return Err(Error::Domain(format!(
            "unbalanced tower: chain depths {left} and {right}"
        )));
    }
    Ok(left + 1)
}

/// The leaf knots, left to right.
pub fn leaves(t: &InfectionTree) -> Vec<&Knot> {
    fn walk<'a>(child: &'a Child, out: &mut Vec<&'a Knot>) {
        match child {
            Child::Leaf(k) => out.push(k),
            Child::Node(t) => t.children.iter().for_each(|c| walk(c, out)),
        }
    }
    let mut out = Vec::new();
    t.children.iter().for_each(|c| walk(c, &mut out));
    out
}

/// The tower rewritten over an unknot tower, with the infectant pair
/// carried separately.
#[derive(Clone, Debug)]
pub struct UnForm {
    pub unknot_tower: InfectionTree,
    pub infectants: (Knot, Knot),
}

/// Rewrites a standard tower as (unknot tower, infectant pair): the same
/// tree with unknot leaves, plus the two leaf knots. Infection along
/// axes at commutator depth commutes with this rewrite, which is the
/// cited identity the abelian obstructions rely on.
pub fn flatten_to_un_form(t: &InfectionTree) -> Result<UnForm> {
    let n = tower_height(t)?;
    let leaf_knots = leaves(t);
    if leaf_knots.len() != 2 {
        return Err(Error::Domain(format!(
            "standard tower carries 2 leaves, found {}",
            leaf_knots.len()
        )));
    }
    Ok(UnForm {
        unknot_tower: build_tower(n, &Knot::unknot())?,
        infectants: (leaf_knots[0].clone(), leaf_knots[1].clone()),
    })
}

/// Outcome of the order-two pattern check, with the checked evidence and
/// the citation that turns the pattern into a concordance statement.
#[derive(Clone, Debug)]
pub struct OrderTwoCertificate {
    pub holds: bool,
    pub reason: String,
    pub citation: &'static str,
}

/// Checks the order-two-by-construction pattern: the top seed splits as
/// W # W, the block W is negatively amphichiral as witnessed by a signed
/// permutation P with P(-W^T)P^T = W, and the two top children are exact
/// mirrors of each other.
pub fn is_order_two_by_construction(t: &InfectionTree) -> Result<OrderTwoCertificate> {
    let fail = |reason: String| OrderTwoCertificate {
        holds: false,
        reason,
        citation: ORDER_TWO_CITATION,
    };
    if t.children.len() != 2 {
        return Ok(fail(format!(
            "top seed has {} children, need 2",
            t.children.len()
        )));
    }
    let m = &t.seed.matrix;
    let size = m.size();
    if size == 0 || size % 2 != 0 {
        return Ok(fail("top seed matrix cannot split in half".into()));
    }
    let half = size / 2;
    let block = |r0: usize, c0: usize| -> Vec<Vec<i64>> {
        (0..half)
            .map(|i| (0..half).map(|j| m.entry(r0 + i, c0 + j)).collect())
            .collect()
    };
    if block(0, half).iter().flatten().any(|&e| e != 0)
        || block(half, 0).iter().flatten().any(|&e| e != 0)
    {
        return Ok(fail("top seed is not a block direct sum".into()));
    }
    let w = block(0, 0);
    if w != block(half, half) {
        return Ok(fail("top seed blocks differ, not of the form W # W".into()));
    }
    let witness = match amphichiral_witness(&w) {
        Some(p) => p,
        None => {
            return Ok(fail(
                "no signed permutation witnesses negative amphichirality of W".into(),
            ))
        }
    };
    if !trees_mirror_top(t)? {
        return Ok(fail("top children are not exact mirrors".into()));
    }
    Ok(OrderTwoCertificate {
        holds: true,
        reason: format!(
            "top seed is W # W with P(-W^T)P^T = W for signed permutation {witness:?}, \
             and the branches are exact mirrors"
        ),
        citation: ORDER_TWO_CITATION,
    })
}

fn trees_mirror_top(t: &InfectionTree) -> Result<bool> {
    children_mirror(&t.children[0], &t.children[1])
}

/// Searches signed permutations P with P(-W^T)P^T = W.
fn amphichiral_witness(w: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = w.len();
    assert!(n <= 6, "witness search limited to small blocks");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut perms = Vec::new();
    heap_permutations(&mut perm, n, &mut perms);
    for p in perms {
        for mask in 0..(1u32 << n) {
            let sign = |i: usize| if mask >> i & 1 == 1 { -1i64 } else { 1 };
            // (P M P^T)_{ij} = s_i s_j M_{p(i), p(j)} with M = -W^T.
            let matches = (0..n).all(|i| {
                (0..n).all(|j| sign(i) * sign(j) * -w[p[j]][p[i]] == w[i][j])
            });
            if matches {
                return Some((0..n).map(|i| sign(i) * (p[i] as i64 + 1)).collect());
            }
        }
    }
    None
}

fn heap_permutations(perm: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(perm.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(perm, k - 1, out);
        if k % 2 == 0 {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
}

/// Grope-height and solvability tags for the whole tower, derived from
/// the leaf tags and the tower height, each emitted with its citation.
/// Leaves lacking the prerequisite data contribute no tag.
pub fn tags_of_tower(t: &InfectionTree) -> Result<Vec<Tag>> {
    let n = tower_height(t)?;
    let leaf_knots = leaves(t);
    let mut out = Vec::new();
    let all_height_two = leaf_knots.iter().all(|k| {
        k.tags()
            .iter()
            .any(|tag| matches!(tag, Tag::GropeHeight { height, .. } if *height >= 2))
    });
    if all_height_two {
        out.push(Tag::grope_height(n + 2, GROPE_RAISE_CITATION));
    }
    let mut all_zero_solvable = true;
    for k in &leaf_knots {
        let tagged = k
            .tags()
            .iter()
            .any(|tag| matches!(tag, Tag::Solvable { level, .. } if *level >= 0));
        if !tagged && k.arf()? != 0 {
            all_zero_solvable = false;
        }
    }
    if all_zero_solvable {
        out.push(Tag::solvable(n, SOLVABLE_RAISE_CITATION));
    }
    Ok(out)
}

/// Total crossing budget: the sum of every seed's cited bound.
pub fn crossing_budget(t: &InfectionTree) -> Result<i64> {
    let own = t.seed.crossing_bound.ok_or_else(|| {
        Error::Domain(format!("seed {} carries no crossing bound", t.seed.name))
    })?;
    let mut total = own;
    for child in &t.children {
        if let Child::Node(node) = child {
            total += crossing_budget(node)?;
        }
    }
    Ok(total)
}

/// Indented human-readable tower description.
pub fn indented(t: &InfectionTree) -> String {
    fn walk(t: &InfectionTree, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let axes: Vec<&str> = t.seed.axes.iter().map(|a| a.name.as_str()).collect();
        let _ = writeln!(
            out,
            "{pad}seed {} [axes: {}]{}",
            t.seed.name,
            axes.join(", "),
            match t.seed.crossing_bound {
                Some(c) => format!(" [crossings <= {c}]"),
                None => String::new(),
            }
        );
        for child in &t.children {
            match child {
                Child::Leaf(k) => {
                    let _ = writeln!(out, "{pad}  leaf {}", k.name());
                }
                Child::Node(node) => walk(node, depth + 1, out),
            }
        }
    }
    let mut out = String::new();
    walk(t, 0, &mut out);
    out
}

/// Machine-readable nested record of the tower.
pub fn record(t: &InfectionTree) -> String {
    fn walk(t: &InfectionTree, out: &mut String) {
        let axes: Vec<&str> = t.seed.axes.iter().map(|a| a.name.as_str()).collect();
        let _ = write!(out, "(tower seed={} axes=({})", t.seed.name, axes.join(" "));
        if let Some(c) = t.seed.crossing_bound {
            let _ = write!(out, " crossings={c}");
        }
        for child in &t.children {
            match child {
                Child::Leaf(k) => {
                    let _ = write!(out, " (leaf {})", k.name());
                }
                Child::Node(node) => {
                    let _ = write!(out, " ");
                    walk(node, out);
                }
            }
        }
        let _ = write!(out, ")");
    }
    let mut out = String::new();
    walk(t, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::knot::horn_knot;
    use crate::stepfn::JumpRule;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn tower_shape_for_n_two() {
        let t = build_tower(2, &horn_knot(1)).unwrap();
        assert_eq!(t.seed.name, "K");
        assert_eq!(t.seed.axes.len(), 2);
        assert_eq!(t.children.len(), 2);
        match &t.children[0] {
            Child::Node(node) => {
                assert_eq!(node.seed.name, "K^1");
                assert_eq!(node.seed.axes[0].name, "eta_1");
                assert!(matches!(node.children[0], Child::Leaf(_)));
            }
            Child::Leaf(_) => panic!("left child must be the K^1 level"),
        }
        assert_eq!(leaves(&t).len(), 2);
        assert_eq!(tower_height(&t).unwrap(), 2);
    }

    #[test]
    fn tower_rejects_short_heights() {
        assert!(matches!(
            build_tower(1, &horn_knot(1)),
            Err(Error::TowerTooShort(1))
        ));
        assert!(matches!(
            build_tower(0, &Knot::unknot()),
            Err(Error::TowerTooShort(0))
        ));
    }

    #[test]
    fn leaf_count_is_two_for_all_heights() {
        for n in 2..=6 {
            let t = build_tower(n, &horn_knot(2)).unwrap();
            assert_eq!(leaves(&t).len(), 2, "n = {n}");
            assert_eq!(tower_height(&t).unwrap(), n);
        }
    }

    #[test]
    fn top_children_are_exact_mirrors() {
        let t = build_tower(3, &horn_knot(1)).unwrap();
        assert!(trees_mirror_top(&t).unwrap());
        let lv = leaves(&t);
        let left = lv[0].spectral().unwrap();
        let right = lv[1].spectral().unwrap();
        assert_eq!(left.sigma.negate(), right.sigma);
        assert_eq!(
            right
                .sigma
                .evaluate(&Angle::pi(), JumpRule::Strict)
                .unwrap(),
            BigRational::from_integer(BigInt::from(-2))
        );
    }

    #[test]
    fn double_mirror_restores_the_tree() {
        let t = build_tower(2, &horn_knot(3)).unwrap();
        let back = mirror_tree(&mirror_tree(&t));
        assert_eq!(back.seed.matrix, t.seed.matrix);
        let (a, b) = (leaves(&t), leaves(&back));
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(
                x.spectral().unwrap().sigma,
                y.spectral().unwrap().sigma
            );
        }
    }

    #[test]
    fn unknot_tower_has_silent_leaves() {
        let t = build_tower(4, &Knot::unknot()).unwrap();
        for leaf in leaves(&t) {
            assert!(leaf.signature_function().unwrap().is_zero());
            assert_eq!(leaf.arf().unwrap(), 0);
        }
    }

    #[test]
    fn flatten_returns_unknot_tower_and_leaf_pair() {
        let j0 = horn_knot(2);
        let t = build_tower(3, &j0).unwrap();
        let un = flatten_to_un_form(&t).unwrap();
        assert_eq!(tower_height(&un.unknot_tower).unwrap(), 3);
        for leaf in leaves(&un.unknot_tower) {
            assert!(leaf.signature_function().unwrap().is_zero());
        }
        assert_eq!(
            un.infectants.0.signature_function().unwrap(),
            j0.signature_function().unwrap()
        );
        assert_eq!(
            un.infectants.1.signature_function().unwrap(),
            &j0.signature_function().unwrap().negate()
        );
        let rebuilt = build_tower(3, &un.infectants.0).unwrap();
        let (a, b) = (leaves(&t), leaves(&rebuilt));
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.spectral().unwrap().sigma, y.spectral().unwrap().sigma);
            assert_eq!(x.arf().unwrap(), y.arf().unwrap());
        }
    }

    #[test]
    fn order_two_certificate_for_standard_towers() {
        let t = build_tower(2, &horn_knot(1)).unwrap();
        let cert = is_order_two_by_construction(&t).unwrap();
        assert!(cert.holds, "{}", cert.reason);
        assert!(cert.citation.contains("Cochran-Harvey-Leidy"));
        assert!(cert.reason.contains("signed permutation"));
    }

    #[test]
    fn order_two_fails_for_tampered_towers() {
        let t = build_tower(2, &horn_knot(1)).unwrap();
        let mut equal_children = t.clone();
        equal_children.children[1] = equal_children.children[0].clone();
        let cert = is_order_two_by_construction(&equal_children).unwrap();
        assert!(!cert.holds);
        assert!(cert.reason.contains("not exact mirrors"));
        let mut single = t.clone();
        single.children.pop();
        assert!(!is_order_two_by_construction(&single).unwrap().holds);
        let mut bad_seed = t;
        bad_seed.seed.matrix = seifert_61().direct_sum(&seifert_em(2));
        let cert = is_order_two_by_construction(&bad_seed).unwrap();
        assert!(!cert.holds);
        assert!(cert.reason.contains("blocks differ"));
    }

    #[test]
    fn tags_raise_height_and_solvability() {
        for (n, expect_height) in [(2i64, 4i64), (3, 5), (5, 7)] {
            let t = build_tower(n, &horn_knot(2)).unwrap();
            let tags = tags_of_tower(&t).unwrap();
            assert!(tags.iter().any(|tag| matches!(
                tag,
                Tag::GropeHeight { height, .. } if *height == expect_height
            )));
            assert!(tags.iter().any(|tag| matches!(
                tag,
                Tag::Solvable { level, .. } if *level == n
            )));
        }
    }

    #[test]
    fn untagged_leaves_emit_no_grope_tag() {
        let t = build_tower(2, &Knot::unknot()).unwrap();
        let tags = tags_of_tower(&t).unwrap();
        assert!(!tags
            .iter()
            .any(|tag| matches!(tag, Tag::GropeHeight { .. })));
        assert!(tags
            .iter()
            .any(|tag| matches!(tag, Tag::Solvable { level, .. } if *level == 2)));
    }

    #[test]
    fn crossing_budget_is_linear() {
        for (n, want) in [(2i64, 40i64), (3, 64), (5, 112)] {
            let t = build_tower(n, &horn_knot(1)).unwrap();
            assert_eq!(crossing_budget(&t).unwrap(), want, "n = {n}");
        }
        for n in 2..=10i64 {
            let t = build_tower(n, &horn_knot(1)).unwrap();
            assert_eq!(crossing_budget(&t).unwrap(), 16 + 24 * (n - 1));
        }
    }

    #[test]
    fn emission_formats_mention_every_seed() {
        let t = build_tower(3, &horn_knot(1)).unwrap();
        let text = indented(&t);
        for needle in ["seed K ", "seed K^1", "seed K^2", "seed -K^1", "leaf horn_1"] {
            assert!(text.contains(needle), "missing {needle} in:\n{text}");
        }
        let rec = record(&t);
        assert!(rec.starts_with("(tower seed=K "));
        assert!(rec.contains("(leaf horn_1)"));
        assert!(rec.contains("(leaf -horn_1)"));
        assert!(rec.contains("crossings=12"));
    }

    #[test]
    fn amphichiral_witness_finds_figure_eight_symmetry() {
        let w = vec![vec![1i64, 1], vec![0, -1]];
        assert!(amphichiral_witness(&w).is_some());
        let trefoil = vec![vec![-1i64, 1], vec![0, -1]];
        assert!(amphichiral_witness(&trefoil).is_none());
    }
}
