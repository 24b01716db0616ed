//! Deterministic text rendering. Every float is printed with 12 significant
//! digits.

use std::fmt::Write;

use polarcone::theorems::{PairVerdict, SeparationResult};
use polarcone::{MoreauDecomposition, PolyhedralCone, Subspace, Vector};

const SIG_DIGITS: usize = 12;

/// `%.12g`-style formatting with trailing zeros removed and `-0` printed as
/// `0`.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn vector(v: &Vector) -> String {
    let parts: Vec<String> = v.coords().iter().map(|&x| num(x)).collect();
    format!("[{}]", parts.join(", "))
}

fn list(out: &mut String, title: &str, items: &[Vector]) {
    writeln!(out, "{title} ({}):", items.len()).unwrap();
    let indent = title.len() - title.trim_start().len() + 2;
    for v in items {
        writeln!(out, "{:indent$}{}", "", vector(v)).unwrap();
    }
}

pub fn subspace(out: &mut String, title: &str, s: &Subspace) {
    list(out, title, s.basis());
}

/// Both representations of a cone.
pub fn cone(c: &PolyhedralCone) -> String {
    let mut out = String::new();
    writeln!(out, "ambient dimension: {}", c.ambient_dim()).unwrap();
    writeln!(out, "generators").unwrap();
    list(&mut out, "  rays", c.rays());
    subspace(&mut out, "  lineality", c.lineality());
    writeln!(
        out,
        "constraints (x.n <= 0 per facet, x.m = 0 per equality)"
    )
    .unwrap();
    list(&mut out, "  facets", c.facet_normals());
    subspace(&mut out, "  equalities", c.equalities());
    out
}

pub fn moreau(d: &MoreauDecomposition) -> String {
    let mut out = String::new();
    writeln!(out, "u: {}", vector(&d.u)).unwrap();
    writeln!(out, "y (projection onto the cone): {}", vector(&d.y)).unwrap();
    writeln!(out, "z (projection onto the polar): {}", vector(&d.z)).unwrap();
    writeln!(out, "|u - y - z|: {}", num(d.residual_sum)).unwrap();
    writeln!(out, "|y.z|: {}", num(d.residual_orth)).unwrap();
    out
}

fn opt_bool(b: Option<bool>) -> String {
    b.map_or_else(|| "n/a".into(), |b| b.to_string())
}

pub fn verdict(v: &PairVerdict) -> String {
    let mut out = String::new();
    writeln!(out, "theorem: {}", v.theorem.number()).unwrap();
    writeln!(out, "property_holds: {}", v.property_holds).unwrap();
    writeln!(out, "samples_tested: {}", v.samples_tested).unwrap();
    match (&v.witness, v.witness_detail) {
        (Some(w), Some(code)) => {
            writeln!(out, "witness: {}", vector(w)).unwrap();
            writeln!(out, "witness_detail: {code}").unwrap();
        }
        _ => writeln!(out, "witness: none").unwrap(),
    }
    writeln!(
        out,
        "classified_polar_pair: {}",
        opt_bool(v.classified_polar_pair)
    )
    .unwrap();
    writeln!(
        out,
        "classified_complementary_planes: {}",
        opt_bool(v.classified_complementary_planes)
    )
    .unwrap();
    for (i, (y, z)) in v.evidence.iter().enumerate() {
        writeln!(
            out,
            "decomposition {}: y = {}, z = {}",
            i + 1,
            vector(y),
            vector(z)
        )
        .unwrap();
    }
    out
}

pub fn separation(s: &SeparationResult) -> String {
    let mut out = String::new();
    writeln!(out, "normal: {}", vector(&s.normal)).unwrap();
    writeln!(out, "subspace rank: {}", s.subspace.rank()).unwrap();
    subspace(&mut out, "subspace basis", &s.subspace);
    writeln!(out, "contains face: {}", s.contains_b).unwrap();
    writeln!(out, "strict sides: {}", s.strict_sides).unwrap();
    writeln!(out, "margin: {}", num(s.margin)).unwrap();
    writeln!(out, "face complement in the polar").unwrap();
    for line in cone(&s.d).lines() {
        writeln!(out, "  {line}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(1.0 / 3.0), "0.333333333333");
        assert_eq!(num(-2.5e-9), "-2.5e-9");
        assert_eq!(num(123456789012345.0), "1.23456789012e14");
        assert_eq!(num(0.1 + 0.2), "0.3");
        assert_eq!(num(99999.99999999999), "100000");
    }
}
