//! Turns command results into key/value pairs, printed as `key: value`
//! text or tab-separated records.

use clap::ValueEnum;
use knotsig::enclose::decimal_of_interval;
use knotsig::infection;
use knotsig::knot::Knot;
use knotsig::planner::FullConstruction;
use knotsig::stepfn::AverageValue;

use crate::emit::turns_label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

pub fn pairs_text(format: Format, pairs: &[(String, String)]) -> String {
    let mut out = String::new();
    for (k, v) in pairs {
        match format {
            Format::Text => out.push_str(&format!("{k}: {v}\n")),
            Format::Records => out.push_str(&format!("{k}\t{v}\n")),
        }
    }
    out
}

pub fn pair(key: impl Into<String>, value: impl Into<String>) -> (String, String) {
    (key.into(), value.into())
}

/// Exact rational when possible, otherwise a `~`-flagged decimal.
pub fn average_label(avg: &AverageValue) -> String {
    if avg.is_zero() {
        "0".into()
    } else if avg.is_rational() {
        format!("{}", avg.rational_part())
    } else {
        let (lo, hi) = avg.enclosure(40);
        format!("~{}", decimal_of_interval(&lo, &hi, 30))
    }
}

pub fn knot_pairs(k: &Knot) -> knotsig::Result<Vec<(String, String)>> {
    let mut pairs = vec![pair("name", k.name())];
    if let Some(m) = k.seifert_matrix() {
        pairs.push(pair(
            "form",
            format!("seifert matrix {0}x{0} (genus {1})", m.size(), m.genus()),
        ));
        pairs.push(pair("seifert", format!("{m}")));
    } else {
        pairs.push(pair("form", "spectral (step function and arf)"));
    }
    if let Some(alexander) = k.alexander() {
        pairs.push(pair("alexander", format!("{}", alexander?)));
    }
    pairs.push(pair("arf", format!("{} ({})", k.arf()?, k.arf_source()?)));
    let sf = k.signature_function()?;
    if sf.jumps().is_empty() {
        pairs.push(pair("signature", "0 everywhere (no jumps)"));
    } else {
        pairs.push(pair("signature.jumps", format!("{}", sf.jumps().len())));
        for (i, (angle, value)) in sf.jumps().iter().enumerate() {
            pairs.push(pair(
                format!("signature.arc.{}", i + 1),
                format!("{value} after the jump at {} turns", turns_label(angle)),
            ));
        }
    }
    pairs.push(pair("signature.average", average_label(&k.average_signature()?)));
    let tags = k.tags();
    if tags.is_empty() {
        pairs.push(pair("tags", "none"));
    } else {
        for (i, t) in tags.iter().enumerate() {
            pairs.push(pair(format!("tag.{}", i + 1), format!("{t}")));
        }
    }
    Ok(pairs)
}

/// Prose report of a full construction: plan with verification reports,
/// towers with their tags and order-two certificates, then the
/// independence certificates.
pub fn construction_text(fc: &FullConstruction) -> knotsig::Result<String> {
    let mut out = fc.plan.text();
    let budget = infection::crossing_budget(&fc.towers[0])?;
    out.push_str(&format!(
        "tower crossing budget: {budget}\nbound: C = 69713280 * {budget} = {}\n",
        fc.plan.bound_c
    ));
    for (i, tower) in fc.towers.iter().enumerate() {
        out.push_str(&format!("tower {}:\n", i + 1));
        for line in infection::indented(tower).lines() {
            out.push_str(&format!("  {line}\n"));
        }
        for tag in &fc.tower_tags[i] {
            out.push_str(&format!("  tag: {tag}\n"));
        }
        let cert = &fc.order_two[i];
        out.push_str(&format!(
            "  order two: {} ({})\n",
            if cert.holds { "holds" } else { "fails" },
            cert.reason
        ));
    }
    for cert in &fc.certificates {
        out.push_str("independence certificate:\n");
        for line in cert.text().lines() {
            out.push_str(&format!("  {line}\n"));
        }
    }
    Ok(out)
}

pub fn construction_pairs(fc: &FullConstruction) -> knotsig::Result<Vec<(String, String)>> {
    let mut pairs = vec![
        pair("plan.n", fc.plan.n.to_string()),
        pair("plan.c", fc.plan.bound_c.to_string()),
        pair("plan.convention", fc.plan.convention.to_string()),
        pair(
            "plan.budget",
            infection::crossing_budget(&fc.towers[0])?.to_string(),
        ),
    ];
    for (i, item) in fc.plan.items.iter().enumerate() {
        let key = |field: &str| format!("item.{}.{field}", i + 1);
        pairs.push(pair(key("m_lo"), item.params.m_lo.to_string()));
        pairs.push(pair(key("m_hi"), item.params.m_hi.to_string()));
        pairs.push(pair(key("d"), item.params.d.to_string()));
        pairs.push(pair(key("n_copies"), item.n_copies.to_string()));
        pairs.push(pair(
            key("checks"),
            if item.report.all_required_passed() {
                "all required checks passed".to_string()
            } else {
                "required check failed".to_string()
            },
        ));
        let tags = fc.tower_tags[i]
            .iter()
            .map(|t| format!("{t}"))
            .collect::<Vec<_>>()
            .join("; ");
        pairs.push(pair(format!("tower.{}.tags", i + 1), tags));
        pairs.push(pair(
            format!("tower.{}.order_two", i + 1),
            if fc.order_two[i].holds { "holds" } else { "fails" },
        ));
    }
    for (i, cert) in fc.certificates.iter().enumerate() {
        let key = |field: &str| format!("certificate.{}.{field}", i + 1);
        let subset = cert
            .subset
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",");
        pairs.push(pair(key("subset"), subset));
        pairs.push(pair(key("d"), cert.d.to_string()));
        pairs.push(pair(key("witness"), cert.witness_sum.to_string()));
        pairs.push(pair(key("margin"), cert.margin.to_string()));
        pairs.push(pair(
            key("valid"),
            if cert.is_valid() { "yes" } else { "no" },
        ));
    }
    Ok(pairs)
}
