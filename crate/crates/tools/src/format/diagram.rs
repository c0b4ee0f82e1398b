use std::fmt::Write;

use jacobi_core::{canonicalize, Color, Diagram, RawDiagram};

use super::{lines, ParseError};

/// A diagram read from a file, with its name and the line it starts on.
#[derive(Clone, Debug)]
pub struct NamedDiagram {
    pub name: String,
    pub line: usize,
    pub diagram: Diagram,
}

fn parse_id(line: usize, s: &str) -> Result<u32, ParseError> {
    s.parse()
        .map_err(|_| ParseError::new(line, format!("expected a vertex id, found {s:?}")))
}

fn parse_end(line: usize, s: &str) -> Result<(u32, u8), ParseError> {
    let (v, slot) = s
        .split_once('.')
        .ok_or_else(|| ParseError::new(line, format!("expected <id>.<slot>, found {s:?}")))?;
    let slot = slot
        .parse()
        .map_err(|_| ParseError::new(line, format!("expected a slot number, found {slot:?}")))?;
    Ok((parse_id(line, v)?, slot))
}

/// Parses every `diagram ... end` block in `text`. Lines outside blocks are
/// returned untouched (with their line numbers) for the caller to
/// interpret.
pub fn parse_blocks(text: &str) -> Result<(Vec<NamedDiagram>, Vec<(usize, Vec<&str>)>), ParseError> {
    let mut diagrams: Vec<NamedDiagram> = Vec::new();
    let mut rest = Vec::new();
    let mut open: Option<(usize, String, RawDiagram)> = None;
    for (line, tokens) in lines(text) {
        let Some((start, name, raw)) = open.take() else {
            match tokens[0] {
                "diagram" => {
                    let [_, name] = tokens[..] else {
                        return Err(ParseError::new(line, "expected `diagram <name>`"));
                    };
                    if diagrams.iter().any(|d| d.name == name) {
                        return Err(ParseError::new(line, format!("diagram {name:?} defined twice")));
                    }
                    open = Some((line, name.to_string(), RawDiagram::new()));
                }
                "u" | "t" | "e" | "end" => {
                    return Err(ParseError::new(line, format!("`{}` outside a diagram block", tokens[0])))
                }
                _ => rest.push((line, tokens)),
            }
            continue;
        };
        let raw = match tokens[..] {
            ["u", id, color] => {
                let color = Color::new(color).map_err(|e| ParseError::new(line, e.to_string()))?;
                raw.leg(parse_id(line, id)?, color)
            }
            ["t", id] => raw.tri(parse_id(line, id)?),
            ["e", a, b] => raw.edge(parse_end(line, a)?, parse_end(line, b)?),
            ["end"] => {
                let diagram = canonicalize(&raw)
                    .map_err(|e| ParseError::new(start, format!("diagram {name:?}: {e}")))?;
                diagrams.push(NamedDiagram {
                    name,
                    line: start,
                    diagram,
                });
                continue;
            }
            _ => {
                return Err(ParseError::new(
                    line,
                    format!("expected `u <id> <color>`, `t <id>`, `e <id>.<slot> <id>.<slot>` or `end`, found {:?}", tokens.join(" ")),
                ))
            }
        };
        open = Some((start, name, raw));
    }
    if let Some((start, name, _)) = open {
        return Err(ParseError::new(start, format!("diagram {name:?} is missing `end`")));
    }
    Ok((diagrams, rest))
}

/// Parses a file consisting only of diagram blocks.
pub fn parse_diagrams(text: &str) -> Result<Vec<NamedDiagram>, ParseError> {
    let (diagrams, rest) = parse_blocks(text)?;
    if let Some((line, tokens)) = rest.first() {
        return Err(ParseError::new(*line, format!("unexpected {:?} outside a diagram block", tokens.join(" "))));
    }
    Ok(diagrams)
}

/// Writes `d` as a block named `name`, with vertex ids in canonical order.
pub fn write_diagram(out: &mut String, name: &str, d: &Diagram) {
    let raw = d.to_raw();
    writeln!(out, "diagram {name}").unwrap();
    let mut vertices: Vec<(u32, Option<&Color>)> = raw.legs.iter().map(|(v, c)| (*v, Some(c))).collect();
    vertices.extend(raw.trivalent.iter().map(|&v| (v, None)));
    vertices.sort_by_key(|(v, _)| *v);
    for (v, c) in vertices {
        match c {
            Some(c) => writeln!(out, "u {v} {c}").unwrap(),
            None => writeln!(out, "t {v}").unwrap(),
        }
    }
    for ((a, sa), (b, sb)) in &raw.edges {
        writeln!(out, "e {a}.{sa} {b}.{sb}").unwrap();
    }
    writeln!(out, "end").unwrap();
}
