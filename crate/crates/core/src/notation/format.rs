use std::fmt::Write;

use super::document::{Amplitude, SpecDocument};

fn real(x: f64) -> String {
    // Debug prints the shortest string that reads back to the same bits
    format!("{x:?}")
}

fn amplitude(a: Amplitude) -> String {
    let z = a.0;
    if z.im.to_bits() == 0 {
        return real(z.re);
    }
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("({}{}{}i)", real(z.re), sign, real(z.im.abs()))
}

/// Canonical text of a document. Parsing it gives back an equal document.
pub fn format(doc: &SpecDocument) -> String {
    let mut out = String::from("tangnet-spec v1\n");
    let parties: Vec<String> = doc.system.parties.iter().map(|p| format!("{}:{}", p.label, p.dim)).collect();
    let _ = writeln!(out, "system {} {{ {} }}", doc.system.name, parties.join(", "));
    for s in &doc.states {
        let terms: Vec<String> = s
            .terms
            .iter()
            .map(|t| {
                let idx: Vec<String> = t.indices.iter().map(|k| k.to_string()).collect();
                format!("{} |{}>", amplitude(t.amplitude), idx.join(","))
            })
            .collect();
        let _ = writeln!(out, "state {} = {};", s.name, terms.join(" + "));
    }
    if let Some(roles) = &doc.roles {
        let body: Vec<String> = roles.iter().map(|r| format!("{}: {};", r.label, r.role)).collect();
        let _ = writeln!(out, "roles {{ {} }}", body.join(" "));
    }
    out
}
