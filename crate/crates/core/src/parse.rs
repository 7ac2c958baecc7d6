//! Line-based text format for curve configurations.
//!
//! ```text
//! surface N5k1
//! curve a
//! curve b
//! cross x1 a b
//! seq a: x1            # cyclic visit list; basepoints allowed: "basept p a"
//! seq b: x1
//! arc a 0 sign=-       # arc from visit 0 to visit 1 of curve a; default +
//! region R1 faces=f0 type=N1k0b1 attach=f0:match
//! region R2 faces=f1 type=S0k1b1 attach=f1:match boundary-collar=0
//! ```
//!
//! Lines may appear in any order; `#` starts a comment. Face ids f0, f1, ...
//! refer to the canonical trace order of the file's own map: faces sorted by
//! their least (arc, side) flag, with arcs numbered per curve in the order
//! the curves are declared.

use crate::config::{
    AttachFlag, Basepoint, Config, Crossing, Curve, Map, Region, VisitRef,
};
use crate::faces::trace_faces;
use crate::surface::SurfaceInvariants;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("reference error at line {line}: {msg}")]
    Reference { line: usize, msg: String },
    #[error("arity error at line {line}: crossing `{name}` must be used exactly twice")]
    Arity { line: usize, name: String },
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, col, msg: msg.into() }
}

fn reference(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Reference { line, msg: msg.into() }
}

struct RegionLine {
    line: usize,
    name: String,
    faces: Vec<usize>,
    surface: SurfaceInvariants,
    attach: Vec<(usize, AttachFlag)>,
    collar: u32,
}

pub fn parse_config(text: &str) -> Result<Config, ParseError> {
    let mut ambient: Option<SurfaceInvariants> = None;
    let mut curve_names: Vec<String> = Vec::new();
    let mut cross_lines: Vec<(usize, String, String, String)> = Vec::new();
    let mut basept_lines: Vec<(usize, String, String)> = Vec::new();
    let mut seq_lines: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut arc_lines: Vec<(usize, String, usize, i8)> = Vec::new();
    let mut region_lines: Vec<RegionLine> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut words = trimmed.split_whitespace();
        let keyword = words.next().unwrap();
        match keyword {
            "surface" => {
                let lit = words.next().ok_or_else(|| syntax(line, 1, "missing surface literal"))?;
                let s = SurfaceInvariants::parse_literal(lit)
                    .map_err(|e| syntax(line, 9, e.to_string()))?;
                if ambient.replace(s).is_some() {
                    return Err(syntax(line, 1, "duplicate surface line"));
                }
            }
            "curve" => {
                let name = words.next().ok_or_else(|| syntax(line, 7, "missing curve name"))?;
                if curve_names.iter().any(|n| n == name) {
                    return Err(syntax(line, 7, format!("duplicate curve `{name}`")));
                }
                curve_names.push(name.to_string());
            }
            "cross" => {
                let name = words.next().ok_or_else(|| syntax(line, 7, "missing crossing name"))?;
                let a = words.next().ok_or_else(|| syntax(line, 7, "missing first curve"))?;
                let b = words.next().ok_or_else(|| syntax(line, 7, "missing second curve"))?;
                cross_lines.push((line, name.to_string(), a.to_string(), b.to_string()));
            }
            "basept" => {
                let name = words.next().ok_or_else(|| syntax(line, 8, "missing basepoint name"))?;
                let c = words.next().ok_or_else(|| syntax(line, 8, "missing curve name"))?;
                basept_lines.push((line, name.to_string(), c.to_string()));
            }
            "seq" => {
                // "seq a: x1 p x2" — tolerate the colon attached or separate
                let head = words.next().ok_or_else(|| syntax(line, 5, "missing curve name"))?;
                let cname = head.trim_end_matches(':').to_string();
                let refs: Vec<String> = words.map(|w| w.to_string()).collect();
                if refs.is_empty() {
                    return Err(syntax(line, 5, "empty visit list"));
                }
                seq_lines.push((line, cname, refs));
            }
            "arc" => {
                let cname = words.next().ok_or_else(|| syntax(line, 5, "missing curve name"))?;
                let idx: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| syntax(line, 5, "missing arc index"))?;
                let sign_word = words.next().ok_or_else(|| syntax(line, 5, "missing sign"))?;
                let sign = match sign_word {
                    "sign=+" | "sign=+1" => 1,
                    "sign=-" | "sign=-1" => -1,
                    other => return Err(syntax(line, 5, format!("bad sign `{other}`"))),
                };
                arc_lines.push((line, cname.to_string(), idx, sign));
            }
            "region" => {
                let name = words.next().ok_or_else(|| syntax(line, 8, "missing region name"))?;
                let mut faces: Option<Vec<usize>> = None;
                let mut surface: Option<SurfaceInvariants> = None;
                let mut attach: Vec<(usize, AttachFlag)> = Vec::new();
                let mut collar: u32 = 0;
                for w in words {
                    if let Some(list) = w.strip_prefix("faces=") {
                        let mut v = Vec::new();
                        for f in list.split(',') {
                            let id = f
                                .strip_prefix('f')
                                .and_then(|d| d.parse().ok())
                                .ok_or_else(|| syntax(line, 8, format!("bad face id `{f}`")))?;
                            v.push(id);
                        }
                        faces = Some(v);
                    } else if let Some(lit) = w.strip_prefix("type=") {
                        surface = Some(
                            SurfaceInvariants::parse_literal(lit)
                                .map_err(|e| syntax(line, 8, e.to_string()))?,
                        );
                    } else if let Some(list) = w.strip_prefix("attach=") {
                        for part in list.split(',') {
                            let (f, fl) = part
                                .split_once(':')
                                .ok_or_else(|| syntax(line, 8, format!("bad attach `{part}`")))?;
                            let id = f
                                .strip_prefix('f')
                                .and_then(|d| d.parse().ok())
                                .ok_or_else(|| syntax(line, 8, format!("bad face id `{f}`")))?;
                            let flag = match fl {
                                "match" => AttachFlag::Match,
                                "reverse" => AttachFlag::Reverse,
                                other => {
                                    return Err(syntax(line, 8, format!("bad flag `{other}`")))
                                }
                            };
                            attach.push((id, flag));
                        }
                    } else if let Some(n) = w.strip_prefix("boundary-collar=") {
                        collar = n
                            .parse()
                            .map_err(|_| syntax(line, 8, format!("bad collar `{n}`")))?;
                    } else {
                        return Err(syntax(line, 8, format!("unknown region field `{w}`")));
                    }
                }
                let faces =
                    faces.ok_or_else(|| syntax(line, 8, "region missing faces= field"))?;
                let surface =
                    surface.ok_or_else(|| syntax(line, 8, "region missing type= field"))?;
                region_lines.push(RegionLine {
                    line,
                    name: name.to_string(),
                    faces,
                    surface,
                    attach,
                    collar,
                });
            }
            other => return Err(syntax(line, 1, format!("unknown directive `{other}`"))),
        }
    }

    let ambient = ambient.ok_or_else(|| syntax(0, 0, "missing surface line"))?;
    let curve_index = |line: usize, name: &str| -> Result<usize, ParseError> {
        curve_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| reference(line, format!("unknown curve `{name}`")))
    };

    let mut crossings = Vec::new();
    for (line, name, a, b) in &cross_lines {
        if crossings.iter().any(|x: &Crossing| &x.name == name) {
            return Err(reference(*line, format!("duplicate crossing `{name}`")));
        }
        let first = curve_index(*line, a)?;
        let second = curve_index(*line, b)?;
        if first == second {
            return Err(reference(*line, format!("crossing `{name}` joins a curve to itself")));
        }
        crossings.push(Crossing { name: name.clone(), first, second });
    }
    let mut basepoints = Vec::new();
    for (line, name, c) in &basept_lines {
        if basepoints.iter().any(|p: &Basepoint| &p.name == name)
            || crossings.iter().any(|x| &x.name == name)
        {
            return Err(reference(*line, format!("duplicate vertex name `{name}`")));
        }
        let curve = curve_index(*line, c)?;
        basepoints.push(Basepoint { name: name.clone(), curve });
    }

    // visit lists
    let mut visit_lists: Vec<Option<(usize, Vec<VisitRef>)>> = vec![None; curve_names.len()];
    for (line, cname, refs) in &seq_lines {
        let c = curve_index(*line, cname)?;
        if visit_lists[c].is_some() {
            return Err(reference(*line, format!("duplicate seq for curve `{cname}`")));
        }
        let mut visits = Vec::new();
        for r in refs {
            if let Some(xi) = crossings.iter().position(|x| &x.name == r) {
                visits.push(VisitRef::Crossing(xi));
            } else if let Some(pi) = basepoints.iter().position(|p| &p.name == r) {
                if basepoints[pi].curve != c {
                    return Err(reference(
                        *line,
                        format!("basepoint `{r}` belongs to another curve"),
                    ));
                }
                visits.push(VisitRef::Basepoint(pi));
            } else {
                return Err(reference(*line, format!("unknown visit reference `{r}`")));
            }
        }
        visit_lists[c] = Some((*line, visits));
    }
    // a curve without a seq line but with exactly one basepoint gets the
    // implicit one-visit list
    for (c, slot) in visit_lists.iter_mut().enumerate() {
        if slot.is_none() {
            let bps: Vec<usize> = basepoints
                .iter()
                .enumerate()
                .filter(|(_, p)| p.curve == c)
                .map(|(i, _)| i)
                .collect();
            if bps.len() == 1 {
                *slot = Some((0, vec![VisitRef::Basepoint(bps[0])]));
            } else {
                return Err(reference(0, format!("curve `{}` has no seq line", curve_names[c])));
            }
        }
    }

    let mut curves: Vec<Curve> = curve_names
        .iter()
        .zip(visit_lists.iter())
        .map(|(name, v)| {
            let visits = v.as_ref().unwrap().1.clone();
            let n = visits.len();
            Curve { name: name.clone(), visits, signs: vec![1; n] }
        })
        .collect();
    for (line, cname, idx, sign) in &arc_lines {
        let c = curve_index(*line, cname)?;
        if *idx >= curves[c].signs.len() {
            return Err(reference(*line, format!("arc index {idx} out of range for `{cname}`")));
        }
        curves[c].signs[*idx] = *sign;
    }

    // arity: every crossing visited exactly once by each of its two curves
    for (xi, x) in crossings.iter().enumerate() {
        for cu in [x.first, x.second] {
            let hits = curves[cu]
                .visits
                .iter()
                .filter(|v| **v == VisitRef::Crossing(xi))
                .count();
            if hits != 1 {
                let line = cross_lines[xi].0;
                return Err(ParseError::Arity { line, name: x.name.clone() });
            }
        }
        let outside = curves
            .iter()
            .enumerate()
            .filter(|(c, _)| *c != x.first && *c != x.second)
            .any(|(_, cu)| cu.visits.contains(&VisitRef::Crossing(xi)));
        if outside {
            let line = cross_lines[xi].0;
            return Err(ParseError::Arity { line, name: x.name.clone() });
        }
    }
    for (pi, p) in basepoints.iter().enumerate() {
        let hits = curves[p.curve]
            .visits
            .iter()
            .filter(|v| **v == VisitRef::Basepoint(pi))
            .count();
        if hits != 1 {
            let line = basept_lines[pi].0;
            return Err(reference(line, format!("basepoint `{}` must be visited once", p.name)));
        }
    }

    let mut config = Config { ambient, curves, crossings, basepoints, regions: Vec::new() };

    // resolve face references against the file's own face order
    let map = Map::of_config(&config).map_err(|e| reference(0, e.to_string()))?;
    let faces = trace_faces(&map);
    let n_faces = faces.faces.len();
    let mut face_owner: Vec<Option<String>> = vec![None; n_faces];
    let mut regions = Vec::new();
    for rl in region_lines {
        let mut attach = Vec::with_capacity(rl.faces.len());
        for &f in &rl.faces {
            if f >= n_faces {
                return Err(reference(rl.line, format!("face f{f} does not exist")));
            }
            if let Some(owner) = &face_owner[f] {
                return Err(reference(
                    rl.line,
                    format!("face f{f} already assigned to region `{owner}`"),
                ));
            }
            face_owner[f] = Some(rl.name.clone());
            let flag = rl
                .attach
                .iter()
                .find(|(af, _)| *af == f)
                .map(|(_, fl)| *fl)
                .unwrap_or(AttachFlag::Match);
            attach.push(flag);
        }
        for (af, _) in &rl.attach {
            if !rl.faces.contains(af) {
                return Err(reference(
                    rl.line,
                    format!("attach flag for face f{af} not in faces= list"),
                ));
            }
        }
        if regions.iter().any(|r: &Region| r.name == rl.name) {
            return Err(reference(rl.line, format!("duplicate region `{}`", rl.name)));
        }
        regions.push(Region {
            name: rl.name,
            surface: rl.surface,
            faces: rl.faces,
            attach,
            boundary_collar: rl.collar,
        });
    }
    config.regions = regions;
    Ok(config)
}

/// Faithful serialization: the configuration's own names and data, in fixed
/// section order. Canonical-form configurations round-trip exactly.
pub fn to_text(config: &Config) -> String {
    let mut out = String::new();
    out.push_str(&format!("surface {}\n", config.ambient.literal()));
    for c in &config.curves {
        out.push_str(&format!("curve {}\n", c.name));
    }
    for x in &config.crossings {
        out.push_str(&format!(
            "cross {} {} {}\n",
            x.name,
            config.curves[x.first].name,
            config.curves[x.second].name
        ));
    }
    for p in &config.basepoints {
        out.push_str(&format!("basept {} {}\n", p.name, config.curves[p.curve].name));
    }
    for c in &config.curves {
        let refs: Vec<&str> = c
            .visits
            .iter()
            .map(|v| match v {
                VisitRef::Crossing(i) => config.crossings[*i].name.as_str(),
                VisitRef::Basepoint(i) => config.basepoints[*i].name.as_str(),
            })
            .collect();
        out.push_str(&format!("seq {}: {}\n", c.name, refs.join(" ")));
    }
    for c in &config.curves {
        for (i, s) in c.signs.iter().enumerate() {
            if *s < 0 {
                out.push_str(&format!("arc {} {} sign=-\n", c.name, i));
            }
        }
    }
    for r in &config.regions {
        let faces: Vec<String> = r.faces.iter().map(|f| format!("f{f}")).collect();
        let mut line = format!("region {} faces={} type={}", r.name, faces.join(","), r.surface);
        let flags: Vec<String> = r
            .faces
            .iter()
            .zip(r.attach.iter())
            .map(|(f, fl)| {
                format!("f{}:{}", f, if *fl == AttachFlag::Match { "match" } else { "reverse" })
            })
            .collect();
        line.push_str(&format!(" attach={}", flags.join(",")));
        if r.boundary_collar > 0 {
            line.push_str(&format!(" boundary-collar={}", r.boundary_collar));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "\
surface N5k0
curve c
basept p c
region R1 faces=f0 type=N1k0b1 attach=f0:match
region R2 faces=f1 type=N3k0b1 attach=f1:match
";

    #[test]
    fn minimal_file_parses() {
        let cfg = parse_config(MINIMAL).unwrap();
        assert_eq!(cfg.curves.len(), 1);
        assert_eq!(cfg.curves[0].visits.len(), 1);
        assert_eq!(cfg.regions.len(), 2);
        assert_eq!(cfg.sign_product(0), 1);
    }

    #[test]
    fn round_trip_is_identity() {
        let cfg = parse_config(MINIMAL).unwrap();
        let text = to_text(&cfg);
        let cfg2 = parse_config(&text).unwrap();
        assert_eq!(cfg, cfg2);
        assert_eq!(to_text(&cfg2), text);
    }

    #[test]
    fn double_face_assignment_is_reference_error() {
        let bad = "\
surface N5k0
curve c
basept p c
region R1 faces=f0,f1 type=N1k0b2
region R2 faces=f1 type=N3k0b1
";
        match parse_config(bad) {
            Err(ParseError::Reference { .. }) => {}
            other => panic!("expected reference error, got {other:?}"),
        }
    }

    #[test]
    fn crossing_used_once_is_arity_error() {
        let bad = "\
surface N5k0
curve a
curve b
cross x a b
basept p a
seq a: p
seq b: x
";
        match parse_config(bad) {
            Err(ParseError::Arity { name, .. }) => assert_eq!(name, "x"),
            other => panic!("expected arity error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_reference_reported() {
        let bad = "surface N5k0\ncurve a\nseq a: nosuch\n";
        assert!(matches!(parse_config(bad), Err(ParseError::Reference { .. })));
    }

    #[test]
    fn chain_with_signs_round_trips() {
        let text = "\
surface N6k1
curve a
curve b
curve c
cross x1 a b
cross x2 b c
seq a: x1
seq b: x1 x2
seq c: x2
arc b 1 sign=-
region R1 faces=f0 type=N2k1b1 attach=f0:match
region R2 faces=f1 type=N1k0b1 attach=f1:reverse
";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.crossings.len(), 2);
        assert_eq!(cfg.curves[1].signs, vec![1, -1]);
        let t = to_text(&cfg);
        let cfg2 = parse_config(&t).unwrap();
        assert_eq!(cfg, cfg2);
    }
}
