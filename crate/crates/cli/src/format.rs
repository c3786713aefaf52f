//! The `.ssg`, `.bdg` and `.mug` text formats.
//!
//! Node ids in files are 1-based. In a skew file the mate of `v <= p` is
//! `v + p`; internally pair `k` is the nodes `2k` and `2k + 1`.

use std::fmt::Write as _;

use skewcycle::{BidirectedGraph, End, Error, MatchingInstance, NodeId, Result, SkewGraph};

/// Internal id of file node `v` in a skew file with `p` pairs.
pub fn skew_node_from_file(v: usize, p: usize) -> Option<NodeId> {
    if (1..=p).contains(&v) {
        Some(2 * (v - 1))
    } else if (p + 1..=2 * p).contains(&v) {
        Some(2 * (v - p - 1) + 1)
    } else {
        None
    }
}

pub fn skew_node_to_file(x: NodeId, p: usize) -> usize {
    if x.is_multiple_of(2) {
        x / 2 + 1
    } else {
        x / 2 + 1 + p
    }
}

/// Arcs are named by their declaring line: `+j` is the arc written on the
/// `j`-th arc line, `-j` its mate.
pub fn skew_arc_to_file(a: usize) -> i64 {
    let j = (a / 2 + 1) as i64;
    if a.is_multiple_of(2) {
        j
    } else {
        -j
    }
}

pub fn skew_arc_from_file(j: i64, q: usize) -> Option<usize> {
    let k = j.unsigned_abs() as usize;
    if k == 0 || k > q {
        return None;
    }
    Some(2 * (k - 1) + usize::from(j < 0))
}

/// Lines that carry content, with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected {what}, found `{tok}`")))
}

/// Reads the header `<tag> <a> <b>` and returns the two counts.
fn header<'a, I>(lines: &mut I, tag: &str) -> Result<(usize, usize)>
where
    I: Iterator<Item = (usize, Vec<&'a str>)>,
{
    let (line, toks) = lines
        .next()
        .ok_or_else(|| parse_err(1, format!("missing `{tag}` header")))?;
    if toks.len() != 3 || toks[0] != tag {
        return Err(parse_err(line, format!("expected `{tag} <count> <count>`")));
    }
    Ok((
        number(line, toks[1], "a count")?,
        number(line, toks[2], "a count")?,
    ))
}

fn node(line: usize, tok: &str, n: usize) -> Result<usize> {
    let v = number(line, tok, "a node id")?;
    if v == 0 || v > n {
        return Err(parse_err(line, format!("node {v} outside 1..={n}")));
    }
    Ok(v)
}

pub fn parse_ssg(text: &str) -> Result<SkewGraph> {
    let mut lines = content_lines(text);
    let (p, q) = header(&mut lines, "ssg")?;
    let mut declared = Vec::with_capacity(q);
    for (line, toks) in lines.by_ref() {
        if toks[0] != "a" || toks.len() != 3 {
            return Err(parse_err(line, "expected `a <u> <v>`"));
        }
        if declared.len() == q {
            return Err(parse_err(
                line,
                format!("more than the {q} declared arc lines"),
            ));
        }
        let u = node(line, toks[1], 2 * p)?;
        let v = node(line, toks[2], 2 * p)?;
        let map = |x| skew_node_from_file(x, p).expect("checked range");
        declared.push((map(u), map(v)));
    }
    if declared.len() != q {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("expected {q} arc lines, found {}", declared.len()),
        ));
    }
    SkewGraph::from_arc_pairs(p, &declared)
}

pub fn write_ssg(g: &SkewGraph) -> String {
    let p = g.pair_count();
    let pairs = g.declared_pairs();
    let mut out = format!("ssg {p} {}\n", pairs.len());
    for (u, v) in pairs {
        let _ = writeln!(
            out,
            "a {} {}",
            skew_node_to_file(u, p),
            skew_node_to_file(v, p)
        );
    }
    out
}

fn end(line: usize, tok: &str) -> Result<End> {
    match tok {
        "+" => Ok(End::Out),
        "-" => Ok(End::In),
        _ => Err(parse_err(
            line,
            format!("expected `+` or `-`, found `{tok}`"),
        )),
    }
}

fn end_char(d: End) -> char {
    match d {
        End::Out => '+',
        End::In => '-',
    }
}

pub fn parse_bdg(text: &str) -> Result<BidirectedGraph> {
    let mut lines = content_lines(text);
    let (n, m) = header(&mut lines, "bdg")?;
    let mut bg = BidirectedGraph::new(n);
    for (line, toks) in lines.by_ref() {
        if toks[0] != "e" || toks.len() != 5 {
            return Err(parse_err(line, "expected `e <u> <du> <v> <dv>`"));
        }
        if bg.edges.len() == m {
            return Err(parse_err(
                line,
                format!("more than the {m} declared edge lines"),
            ));
        }
        let u = node(line, toks[1], n)?;
        let du = end(line, toks[2])?;
        let v = node(line, toks[3], n)?;
        let dv = end(line, toks[4])?;
        bg.add_edge(u - 1, du, v - 1, dv);
    }
    if bg.edges.len() != m {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("expected {m} edge lines, found {}", bg.edges.len()),
        ));
    }
    Ok(bg)
}

pub fn write_bdg(bg: &BidirectedGraph) -> String {
    let mut out = format!("bdg {} {}\n", bg.node_count, bg.edges.len());
    for e in &bg.edges {
        let _ = writeln!(
            out,
            "e {} {} {} {}",
            e.u + 1,
            end_char(e.du),
            e.v + 1,
            end_char(e.dv)
        );
    }
    out
}

/// Parses a matching file. The instance is not checked to be a perfect
/// matching here.
pub fn parse_mug(text: &str) -> Result<MatchingInstance> {
    let mut lines = content_lines(text);
    let (n, m) = header(&mut lines, "mug")?;
    let mut edges = Vec::with_capacity(m);
    let mut matching = None;
    for (line, toks) in lines.by_ref() {
        match toks[0] {
            "e" if toks.len() == 3 && matching.is_none() => {
                if edges.len() == m {
                    return Err(parse_err(
                        line,
                        format!("more than the {m} declared edge lines"),
                    ));
                }
                edges.push((node(line, toks[1], n)? - 1, node(line, toks[2], n)? - 1));
            }
            "m" if matching.is_none() => {
                if edges.len() != m {
                    return Err(parse_err(
                        line,
                        format!("expected {m} edge lines before `m`, found {}", edges.len()),
                    ));
                }
                let ids = toks[1..]
                    .iter()
                    .map(|t| {
                        let i = number(line, t, "an edge index")?;
                        if i == 0 || i > m {
                            return Err(parse_err(line, format!("edge index {i} outside 1..={m}")));
                        }
                        Ok(i - 1)
                    })
                    .collect::<Result<Vec<_>>>()?;
                matching = Some(ids);
            }
            _ if matching.is_some() => return Err(parse_err(line, "content after the `m` line")),
            _ => return Err(parse_err(line, "expected `e <u> <v>` or `m <i1> <i2> ...`")),
        }
    }
    let matching =
        matching.ok_or_else(|| parse_err(text.lines().count().max(1), "missing `m` line"))?;
    Ok(MatchingInstance {
        node_count: n,
        edges,
        matching,
    })
}

pub fn write_mug(inst: &MatchingInstance) -> String {
    let mut out = format!("mug {} {}\n", inst.node_count, inst.edges.len());
    for &(u, v) in &inst.edges {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out.push('m');
    for &e in &inst.matching {
        let _ = write!(out, " {}", e + 1);
    }
    out.push('\n');
    out
}
