use std::collections::BTreeMap;
use std::fmt::{self, Write};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::states::{ModelKind, PartitionModel, Role};
use crate::structure::{Node, QuantumStructure};

/// Pixels per unit of branch length in SVG output.
pub const SVG_UNIT: f64 = 200.0;

const BLUE: &str = "#1f4e9c";
const MARGIN: f64 = 40.0;
const GLYPH_R: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramFormat {
    Dot,
    Svg,
}

impl FromStr for DiagramFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(DiagramFormat::Dot),
            "svg" => Ok(DiagramFormat::Svg),
            _ => Err(Error::arg(format!("unknown diagram format {s}"))),
        }
    }
}

impl fmt::Display for DiagramFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagramFormat::Dot => "dot",
            DiagramFormat::Svg => "svg",
        })
    }
}

/// Which branch an emitted edge draws.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeProvenance {
    pub branch: usize,
    pub edge: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagramDoc {
    pub format: DiagramFormat,
    pub body: String,
    pub provenance: Vec<EdgeProvenance>,
}

impl DiagramDoc {
    /// Runs the matching smoke validator over the body.
    pub fn validate(&self) -> Result<()> {
        match self.format {
            DiagramFormat::Dot => validate_dot(&self.body),
            DiagramFormat::Svg => validate_svg(&self.body),
        }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn px(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn edge_label(length: f64, orientation: f64) -> String {
    format!("len={length:.4}, ang={}°", num(orientation))
}

fn node_id(qs: &QuantumStructure, n: Node) -> String {
    format!("{}_{}", qs.parties()[n.party].label, n.index)
}

fn node_caption(qs: &QuantumStructure, n: Node) -> String {
    format!("{}:{}", qs.parties()[n.party].label, n.index)
}

/// Glyph style alternates with party order: even parties filled, odd open.
fn filled(n: Node) -> bool {
    n.party.is_multiple_of(2)
}

pub fn emit_structure_diagram(qs: &QuantumStructure, format: DiagramFormat) -> DiagramDoc {
    let provenance = (0..qs.branches().len()).map(|k| EdgeProvenance { branch: k, edge: format!("b{k}") }).collect();
    let body = match format {
        DiagramFormat::Dot => structure_dot(qs),
        DiagramFormat::Svg => structure_svg(qs),
    };
    DiagramDoc { format, body, provenance }
}

fn structure_dot(qs: &QuantumStructure) -> String {
    let mut out = String::from("graph structure {\n");
    out.push_str("  node [shape=circle, width=0.2, fixedsize=true, color=\"#1f4e9c\", fontsize=10];\n");
    out.push_str("  edge [color=\"#1f4e9c\"];\n");
    for n in qs.occupied_nodes() {
        let style = if filled(n) { "style=filled, fillcolor=\"#1f4e9c\"" } else { "style=solid" };
        let _ = writeln!(out, "  \"{}\" [xlabel=\"{}\", label=\"\", {}];", node_id(qs, n), node_caption(qs, n), style);
    }
    for (k, b) in qs.branches().iter().enumerate() {
        let chain: Vec<String> = b
            .nodes
            .iter()
            .enumerate()
            .map(|(party, &index)| format!("\"{}\"", node_id(qs, Node { party, index })))
            .collect();
        let _ = writeln!(
            out,
            "  {} [id=\"b{k}\", label=\"{}\", len={}];",
            chain.join(" -- "),
            edge_label(b.length, b.orientation),
            num(2.0 * b.length)
        );
    }
    out.push_str("}\n");
    out
}

/// Each branch is drawn from its first node along its orientation (y up),
/// 200 px per unit length. A node already placed by an earlier branch keeps
/// its position, so only the first branch through a node is literal.
fn structure_svg(qs: &QuantumStructure) -> String {
    let mut pos: BTreeMap<Node, (f64, f64)> = BTreeMap::new();
    let mut segments: Vec<(usize, (f64, f64), (f64, f64))> = Vec::new();
    let mut labels: Vec<(usize, (f64, f64), String)> = Vec::new();
    let mut next_anchor = 0.0;
    for (k, b) in qs.branches().iter().enumerate() {
        let first = Node { party: 0, index: b.nodes[0] };
        let start = *pos.entry(first).or_insert_with(|| {
            let p = (0.0, next_anchor);
            next_anchor += SVG_UNIT * 0.6;
            p
        });
        let theta = b.orientation.to_radians();
        let step = (SVG_UNIT * b.length * theta.cos(), -SVG_UNIT * b.length * theta.sin());
        let mut prev = start;
        for (party, &index) in b.nodes.iter().enumerate().skip(1) {
            let n = Node { party, index };
            let p = *pos.entry(n).or_insert((prev.0 + step.0, prev.1 + step.1));
            segments.push((k, prev, p));
            prev = p;
        }
        let mid = ((start.0 + prev.0) / 2.0, (start.1 + prev.1) / 2.0);
        labels.push((k, mid, edge_label(b.length, b.orientation)));
    }
    let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &(x, y) in pos.values() {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let (dx, dy) = (MARGIN - x0 + 80.0, MARGIN - y0);
    let (w, h) = (x1 - x0 + 2.0 * MARGIN + 160.0, y1 - y0 + 2.0 * MARGIN);
    let at = |(x, y): (f64, f64)| (px(x + dx), px(y + dy));
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\">\n",
        px(w),
        px(h)
    );
    for (k, a, b) in &segments {
        let (ax, ay) = at(*a);
        let (bx, by) = at(*b);
        let _ = writeln!(
            out,
            "  <line id=\"b{k}\" x1=\"{ax}\" y1=\"{ay}\" x2=\"{bx}\" y2=\"{by}\" stroke=\"{BLUE}\" stroke-width=\"2\"/>"
        );
    }
    for (n, p) in &pos {
        let (cx, cy) = at(*p);
        let fill = if filled(*n) { BLUE } else { "white" };
        let _ = writeln!(
            out,
            "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"{GLYPH_R}\" fill=\"{fill}\" stroke=\"{BLUE}\" stroke-width=\"2\"/>"
        );
        let (tx, ty) = at((p.0 + 10.0, p.1 - 10.0));
        let _ = writeln!(out, "  <text x=\"{tx}\" y=\"{ty}\" font-size=\"12\">{}</text>", node_caption(qs, *n));
    }
    for (k, p, label) in &labels {
        let (tx, ty) = at((p.0 + 8.0, p.1 + 16.0));
        let _ = writeln!(out, "  <text id=\"b{k}-label\" x=\"{tx}\" y=\"{ty}\" font-size=\"11\">{label}</text>");
    }
    out.push_str("</svg>\n");
    out
}

/// A labeled box holding parties and nested boxes.
struct Region {
    label: String,
    parties: Vec<String>,
    children: Vec<Region>,
}

impl Region {
    fn new(label: &str, parties: Vec<String>, children: Vec<Region>) -> Self {
        Region { label: label.into(), parties, children }
    }
}

fn role_region(model: &PartitionModel, role: Role, children: Vec<Region>) -> Region {
    let parties = model.parties_with(role).into_iter().map(String::from).collect();
    Region::new(role.as_str(), parties, children)
}

fn partition_tree(model: &PartitionModel) -> Region {
    use Role::*;
    let present = model.roles_present();
    let r = |role: Role, children: Vec<Region>| role_region(model, role, children);
    let inner = match model.kind() {
        ModelKind::ModelA => vec![r(S, vec![]), r(E0, vec![])],
        ModelKind::ModelB => vec![r(E0, vec![r(E1, vec![r(S, vec![])])])],
        ModelKind::ModelC => {
            let worlds = vec![
                Region::new("S1+E1", vec![], vec![r(S1, vec![]), r(E1, vec![])]),
                Region::new("S2+E2", vec![], vec![r(S2, vec![]), r(E2, vec![])]),
            ];
            if present.contains(&E0) {
                vec![r(E0, worlds)]
            } else {
                worlds
            }
        }
        ModelKind::Custom => present.into_iter().map(|role| r(role, vec![])).collect(),
    };
    Region::new("U", vec![], inner)
}

pub fn emit_partition_diagram(model: &PartitionModel, format: DiagramFormat) -> DiagramDoc {
    let tree = partition_tree(model);
    let body = match format {
        DiagramFormat::Dot => {
            let mut out = format!("graph partition {{\n  label=\"{}\";\n  node [shape=circle, fontsize=10];\n", model.kind());
            let mut counter = 0;
            region_dot(&tree, 1, &mut counter, &mut out);
            out.push_str("}\n");
            out
        }
        DiagramFormat::Svg => partition_svg(&tree),
    };
    DiagramDoc { format, body, provenance: Vec::new() }
}

fn region_dot(region: &Region, depth: usize, counter: &mut usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let _ = writeln!(out, "{pad}subgraph cluster_{} {{", *counter);
    *counter += 1;
    let _ = writeln!(out, "{pad}  label=\"{}\";", region.label);
    for p in &region.parties {
        let _ = writeln!(out, "{pad}  \"{p}\";");
    }
    for c in &region.children {
        region_dot(c, depth + 1, counter, out);
    }
    let _ = writeln!(out, "{pad}}}");
}

const PAD: f64 = 16.0;
const LABEL_H: f64 = 20.0;
const SLOT_W: f64 = 56.0;
const SLOT_H: f64 = 40.0;
const MIN_W: f64 = 72.0;

fn region_size(r: &Region) -> (f64, f64) {
    let pw = r.parties.len() as f64 * SLOT_W;
    let ph = if r.parties.is_empty() { 0.0 } else { SLOT_H };
    let sizes: Vec<(f64, f64)> = r.children.iter().map(region_size).collect();
    let cw = sizes.iter().map(|s| s.0).sum::<f64>() + PAD * sizes.len().saturating_sub(1) as f64;
    let ch = sizes.iter().map(|s| s.1).fold(0.0, f64::max);
    let gap = if ph > 0.0 && ch > 0.0 { PAD } else { 0.0 };
    (pw.max(cw).max(MIN_W) + 2.0 * PAD, LABEL_H + ph + gap + ch + 2.0 * PAD)
}

fn region_svg(r: &Region, x: f64, y: f64, out: &mut String) {
    let (w, h) = region_size(r);
    let corners = [(x, y), (x + w, y), (x + w, y + h), (x, y + h)];
    for i in 0..4 {
        let (a, b) = (corners[i], corners[(i + 1) % 4]);
        let _ = writeln!(
            out,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1.5\"/>",
            px(a.0),
            px(a.1),
            px(b.0),
            px(b.1)
        );
    }
    let _ = writeln!(out, "  <text x=\"{}\" y=\"{}\" font-size=\"13\">{}</text>", px(x + 6.0), px(y + 16.0), r.label);
    let mut cy = y + PAD + LABEL_H;
    for (i, p) in r.parties.iter().enumerate() {
        let cx = x + PAD + SLOT_W * (i as f64 + 0.5);
        let _ = writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{GLYPH_R}\" fill=\"{BLUE}\" stroke=\"{BLUE}\"/>",
            px(cx),
            px(cy + 8.0)
        );
        let _ = writeln!(out, "  <text x=\"{}\" y=\"{}\" font-size=\"11\">{p}</text>", px(cx - 8.0), px(cy + 30.0));
    }
    if !r.parties.is_empty() {
        cy += SLOT_H + if r.children.is_empty() { 0.0 } else { PAD };
    }
    let mut cx = x + PAD;
    for c in &r.children {
        region_svg(c, cx, cy, out);
        cx += region_size(c).0 + PAD;
    }
}

fn partition_svg(tree: &Region) -> String {
    let (w, h) = region_size(tree);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\">\n",
        px(w + 2.0 * PAD),
        px(h + 2.0 * PAD)
    );
    region_svg(tree, PAD, PAD, &mut out);
    out.push_str("</svg>\n");
    out
}

fn invalid(kind: &str, msg: impl fmt::Display) -> Error {
    Error::arg(format!("invalid {kind}: {msg}"))
}

/// Splits DOT text into statements outside quoted strings, checking brace
/// balance on the way.
fn dot_statements(body: &str) -> Result<Vec<String>> {
    let mut depth = 0i64;
    let mut in_str = false;
    let mut escaped = false;
    let mut cur = String::new();
    let mut out = Vec::new();
    let mut bracket = 0i64;
    for c in body.chars() {
        if in_str {
            cur.push(c);
            if escaped {
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == '"' {
                in_str = false;
            }
            continue;
        }
        match c {
            '"' => {
                in_str = true;
                cur.push(c);
            }
            '[' => {
                bracket += 1;
                cur.push(c);
            }
            ']' => {
                bracket -= 1;
                if bracket < 0 {
                    return Err(invalid("DOT", "unbalanced `]`"));
                }
                cur.push(c);
            }
            '{' | '}' | ';' | '\n' if bracket == 0 => {
                if c == '{' {
                    depth += 1;
                } else if c == '}' {
                    depth -= 1;
                    if depth < 0 {
                        return Err(invalid("DOT", "unbalanced `}`"));
                    }
                }
                let s = cur.trim().to_string();
                if !s.is_empty() {
                    out.push(s);
                }
                cur.clear();
            }
            _ => cur.push(c),
        }
    }
    if in_str {
        return Err(invalid("DOT", "unterminated string"));
    }
    if depth != 0 || bracket != 0 {
        return Err(invalid("DOT", "unbalanced braces"));
    }
    if !cur.trim().is_empty() {
        return Err(invalid("DOT", "text after the closing brace"));
    }
    Ok(out)
}

/// Strips a trailing attribute list and returns the quoted or bare ids of a
/// statement.
fn dot_ids(stmt: &str) -> Vec<String> {
    let head = match stmt.find('[') {
        Some(i) => &stmt[..i],
        None => stmt,
    };
    head.split("--").map(|s| s.trim().trim_matches('"').to_string()).collect()
}

/// Smoke check for emitted DOT: balanced braces and brackets, and every edge
/// endpoint declared as a node statement before its first use.
pub fn validate_dot(body: &str) -> Result<()> {
    let stmts = dot_statements(body)?;
    let first = stmts.first().ok_or_else(|| invalid("DOT", "empty document"))?;
    if !(first.starts_with("graph") || first.starts_with("digraph")) {
        return Err(invalid("DOT", "missing graph header"));
    }
    let mut declared = std::collections::BTreeSet::new();
    for s in &stmts[1..] {
        if s.starts_with("subgraph") || s.starts_with("node ") || s.starts_with("edge ") || s.starts_with("graph ") {
            continue;
        }
        let ids = dot_ids(s);
        if s.contains("--") {
            for id in ids {
                if !declared.contains(&id) {
                    return Err(invalid("DOT", format!("node {id} used before it is declared")));
                }
            }
        } else if !s.contains('=') || s.contains('[') {
            declared.extend(ids);
        }
    }
    Ok(())
}

const SVG_ELEMENTS: [&str; 4] = ["svg", "line", "circle", "text"];

/// Smoke check for emitted SVG: well-nested tags drawn only from svg, line,
/// circle and text, with a single svg root.
pub fn validate_svg(body: &str) -> Result<()> {
    let mut stack: Vec<String> = Vec::new();
    let mut roots = 0;
    let mut rest = body;
    while let Some(i) = rest.find('<') {
        if stack.is_empty() && !rest[..i].trim().is_empty() {
            return Err(invalid("SVG", "text outside the root element"));
        }
        let after = &rest[i + 1..];
        let j = after.find('>').ok_or_else(|| invalid("SVG", "unterminated tag"))?;
        let tag = &after[..j];
        rest = &after[j + 1..];
        if let Some(name) = tag.strip_prefix('/') {
            match stack.pop() {
                Some(open) if open == name.trim() => {}
                _ => return Err(invalid("SVG", format!("unexpected closing tag {name}"))),
            }
            continue;
        }
        let self_closing = tag.ends_with('/');
        let name: String = tag.chars().take_while(|c| c.is_ascii_alphanumeric()).collect();
        if !SVG_ELEMENTS.contains(&name.as_str()) {
            return Err(invalid("SVG", format!("element <{name}> is outside the allowed subset")));
        }
        if !tag.matches('"').count().is_multiple_of(2) {
            return Err(invalid("SVG", format!("unbalanced quotes in <{name}>")));
        }
        if stack.is_empty() {
            roots += 1;
            if name != "svg" {
                return Err(invalid("SVG", "root element is not <svg>"));
            }
        }
        if !self_closing {
            stack.push(name);
        }
    }
    if !rest.trim().is_empty() {
        return Err(invalid("SVG", "text after the root element"));
    }
    if !stack.is_empty() {
        return Err(invalid("SVG", format!("unclosed <{}>", stack.last().unwrap())));
    }
    if roots != 1 {
        return Err(invalid("SVG", "expected exactly one <svg> root"));
    }
    Ok(())
}
