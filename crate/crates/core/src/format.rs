//! Line-oriented text formats.
//!
//! ```text
//! # comment
//! image 3          # header: vertex count
//! edge 0 1
//! edge 1 2
//! map 3 3          # domain size, codomain size
//! f 0 1
//! f 1 1
//! f 2 2
//! mul 3            # n² lines `m a b c` meaning μ(a, b) = c
//! group 3          # n² lines `g a b c`
//! base 0           # basepoint (a second value is the codomain basepoint)
//! cat 1
//! subset 1 2
//! step 0           # certificate stage marker, followed by a map block
//! ```
//!
//! A map file carries one image block (a self-map) or two (domain, then
//! codomain) ahead of the map block.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::group::GroupStructure;
use crate::homotopy::HomotopyCertificate;
use crate::hspace::{HSpaceStructure, MagmaStructure};
use crate::image::{DigitalImage, Vertex};
use crate::maps::{Category, DigitalMap, MulTable};

/// A parse failure with a 1-based line number (0 when not tied to a line).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Everything found in one file, before interpretation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub images: Vec<DigitalImage>,
    /// `(domain size, codomain size, values, step)`.
    pub maps: Vec<RawMap>,
    pub mul: Option<MulTable>,
    pub group: Option<MulTable>,
    pub base: Option<(Vertex, Option<Vertex>)>,
    pub cat: Option<Category>,
    pub subset: Option<Vec<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMap {
    pub domain: usize,
    pub codomain: usize,
    pub values: Vec<Vertex>,
    pub step: Option<usize>,
    pub line: usize,
}

enum Block {
    None,
    Image { line: usize, n: usize, edges: Vec<(Vertex, Vertex)> },
    Map { line: usize, nd: usize, nc: usize, values: Vec<Option<Vertex>>, step: Option<usize> },
    Table { line: usize, group: bool, n: usize, cells: Vec<Option<Vertex>> },
}

fn num(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse()
        .or_else(|_| err(line, format!("expected a non-negative integer, got `{tok}`")))
}

fn args<const K: usize>(toks: &[&str], line: usize) -> Result<[usize; K], ParseError> {
    if toks.len() != K + 1 {
        return err(line, format!("`{}` takes {K} argument(s)", toks[0]));
    }
    let mut out = [0; K];
    for (slot, tok) in out.iter_mut().zip(&toks[1..]) {
        *slot = num(tok, line)?;
    }
    Ok(out)
}

impl Document {
    fn close(&mut self, block: Block) -> Result<(), ParseError> {
        match block {
            Block::None => Ok(()),
            Block::Image { line, n, edges } => {
                let img = DigitalImage::new(n, &edges).or_else(|e| err(line, e.to_string()))?;
                self.images.push(img);
                Ok(())
            }
            Block::Map { line, nd, nc, values, step } => {
                let values = values
                    .into_iter()
                    .enumerate()
                    .map(|(x, v)| v.ok_or(x))
                    .collect::<Result<Vec<_>, _>>()
                    .or_else(|x| err(line, format!("map has no value for {x}")))?;
                self.maps.push(RawMap {
                    domain: nd,
                    codomain: nc,
                    values,
                    step,
                    line,
                });
                Ok(())
            }
            Block::Table { line, group, n, cells } => {
                let cells = cells
                    .into_iter()
                    .enumerate()
                    .map(|(i, v)| v.ok_or(i))
                    .collect::<Result<Vec<_>, _>>()
                    .or_else(|i| err(line, format!("table has no entry for ({}, {})", i / n, i % n)))?;
                let t = MulTable::new(n, cells).or_else(|e| err(line, e.to_string()))?;
                let slot = if group { &mut self.group } else { &mut self.mul };
                if slot.replace(t).is_some() {
                    return err(line, "duplicate table block");
                }
                Ok(())
            }
        }
    }
}

/// Parses any file into its blocks.
pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut doc = Document::default();
    let mut block = Block::None;
    let mut pending_step: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "image" => {
                let [n] = args::<1>(&toks, line)?;
                doc.close(std::mem::replace(&mut block, Block::Image { line, n, edges: Vec::new() }))?;
            }
            "map" => {
                let [nd, nc] = args::<2>(&toks, line)?;
                let step = pending_step.take();
                doc.close(std::mem::replace(
                    &mut block,
                    Block::Map { line, nd, nc, values: vec![None; nd], step },
                ))?;
            }
            "mul" | "group" => {
                let [n] = args::<1>(&toks, line)?;
                let group = toks[0] == "group";
                doc.close(std::mem::replace(
                    &mut block,
                    Block::Table { line, group, n, cells: vec![None; n * n] },
                ))?;
            }
            "edge" => {
                let [a, b] = args::<2>(&toks, line)?;
                match &mut block {
                    Block::Image { edges, .. } => edges.push((a, b)),
                    _ => return err(line, "`edge` outside an image block"),
                }
            }
            "f" => {
                let [x, y] = args::<2>(&toks, line)?;
                match &mut block {
                    Block::Map { nd, nc, values, .. } => {
                        if x >= *nd || y >= *nc {
                            return err(line, format!("`f {x} {y}` out of range for map {nd} {nc}"));
                        }
                        if values[x].replace(y).is_some() {
                            return err(line, format!("duplicate value for {x}"));
                        }
                    }
                    _ => return err(line, "`f` outside a map block"),
                }
            }
            "m" | "g" => {
                let [a, b, c] = args::<3>(&toks, line)?;
                let want_group = toks[0] == "g";
                match &mut block {
                    Block::Table { group, n, cells, .. } if *group == want_group => {
                        if a >= *n || b >= *n || c >= *n {
                            return err(line, format!("entry out of range for order {n}"));
                        }
                        if cells[a * *n + b].replace(c).is_some() {
                            return err(line, format!("duplicate entry for ({a}, {b})"));
                        }
                    }
                    _ => return err(line, format!("`{}` outside its table block", toks[0])),
                }
            }
            "base" => {
                if doc.base.is_some() {
                    return err(line, "duplicate `base`");
                }
                match toks.len() {
                    2 => doc.base = Some((num(toks[1], line)?, None)),
                    3 => doc.base = Some((num(toks[1], line)?, Some(num(toks[2], line)?))),
                    _ => return err(line, "`base` takes 1 or 2 arguments"),
                }
            }
            "cat" => {
                let [i] = args::<1>(&toks, line)?;
                let c = Category::from_level(i).or_else(|e| err(line, e.to_string()))?;
                if doc.cat.replace(c).is_some() {
                    return err(line, "duplicate `cat`");
                }
            }
            "subset" => {
                let s = toks[1..].iter().map(|t| num(t, line)).collect::<Result<Vec<_>, _>>()?;
                if doc.subset.replace(s).is_some() {
                    return err(line, "duplicate `subset`");
                }
            }
            "step" => {
                let [k] = args::<1>(&toks, line)?;
                doc.close(std::mem::replace(&mut block, Block::None))?;
                if pending_step.replace(k).is_some() {
                    return err(line, "`step` without a map block");
                }
            }
            other => return err(line, format!("unknown keyword `{other}`")),
        }
    }
    doc.close(block)?;
    if pending_step.is_some() {
        return err(0, "`step` without a map block");
    }
    Ok(doc)
}

fn single_image(doc: &Document) -> Result<DigitalImage, ParseError> {
    match doc.images.as_slice() {
        [x] => Ok(x.clone()),
        [] => err(0, "no image block"),
        _ => err(0, "expected exactly one image block"),
    }
}

pub fn read_image(text: &str) -> Result<DigitalImage, ParseError> {
    single_image(&parse_document(text)?)
}

fn domain_codomain(doc: &Document) -> Result<(Arc<DigitalImage>, Arc<DigitalImage>), ParseError> {
    match doc.images.as_slice() {
        [x] => {
            let x = Arc::new(x.clone());
            Ok((x.clone(), x))
        }
        [x, y] => Ok((Arc::new(x.clone()), Arc::new(y.clone()))),
        _ => err(0, "a map file needs one or two image blocks"),
    }
}

fn build_map(raw: &RawMap, x: &Arc<DigitalImage>, y: &Arc<DigitalImage>) -> Result<DigitalMap, ParseError> {
    if raw.domain != x.len() || raw.codomain != y.len() {
        return err(
            raw.line,
            format!(
                "map {} {} does not match images of sizes {} and {}",
                raw.domain,
                raw.codomain,
                x.len(),
                y.len()
            ),
        );
    }
    DigitalMap::new(x.clone(), y.clone(), raw.values.clone()).or_else(|e| err(raw.line, e.to_string()))
}

pub fn read_map(text: &str) -> Result<DigitalMap, ParseError> {
    let doc = parse_document(text)?;
    let (x, y) = domain_codomain(&doc)?;
    match doc.maps.as_slice() {
        [raw] => build_map(raw, &x, &y),
        _ => err(0, "expected exactly one map block"),
    }
}

/// Reads a homotopy certificate together with its category and optional base.
pub fn read_certificate(text: &str) -> Result<HomotopyCertificate, ParseError> {
    let doc = parse_document(text)?;
    let (x, y) = domain_codomain(&doc)?;
    if doc.maps.is_empty() {
        return err(0, "certificate has no stages");
    }
    let mut chain = Vec::new();
    for (k, raw) in doc.maps.iter().enumerate() {
        if raw.step != Some(k) {
            return err(raw.line, format!("expected `step {k}` before this map"));
        }
        chain.push(build_map(raw, &x, &y)?);
    }
    let cat = doc.cat.ok_or(ParseError {
        line: 0,
        message: "certificate has no `cat` line".into(),
    })?;
    let base = doc.base.map(|(a, b)| (a, b.unwrap_or(a)));
    Ok(HomotopyCertificate::new(chain, cat, base))
}

/// The parts of an H-space file, not yet checked for continuity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSpaceFile {
    pub image: DigitalImage,
    pub base: Vertex,
    pub cat: Category,
    pub mul: MulTable,
}

pub fn read_hspace(text: &str) -> Result<HSpaceFile, ParseError> {
    let doc = parse_document(text)?;
    let image = single_image(&doc)?;
    let (base, _) = doc.base.ok_or(ParseError {
        line: 0,
        message: "H-space file has no `base` line".into(),
    })?;
    let cat = doc.cat.ok_or(ParseError {
        line: 0,
        message: "H-space file has no `cat` line".into(),
    })?;
    let mul = doc.mul.ok_or(ParseError {
        line: 0,
        message: "H-space file has no `mul` block".into(),
    })?;
    if mul.order() != image.len() || base >= image.len() {
        return err(0, "basepoint or table order does not match the image");
    }
    Ok(HSpaceFile { image, base, cat, mul })
}

/// Reads an image with a `mul` block; `cat` defaults to 1.
pub fn read_magma(text: &str) -> Result<(DigitalImage, Category, MulTable), ParseError> {
    let doc = parse_document(text)?;
    let image = single_image(&doc)?;
    let cat = doc.cat.unwrap_or(Category::Np1);
    let mul = doc.mul.ok_or(ParseError {
        line: 0,
        message: "magma file has no `mul` block".into(),
    })?;
    if mul.order() != image.len() {
        return err(0, "table order does not match the image");
    }
    Ok((image, cat, mul))
}

/// A group table and optional subset.
pub fn read_group(text: &str) -> Result<(MulTable, Option<Vec<Vertex>>), ParseError> {
    let doc = parse_document(text)?;
    let g = doc.group.ok_or(ParseError {
        line: 0,
        message: "no `group` block".into(),
    })?;
    Ok((g, doc.subset))
}

pub fn write_image(x: &DigitalImage) -> String {
    let mut s = format!("image {}\n", x.len());
    for (a, b) in x.edges() {
        let _ = writeln!(s, "edge {a} {b}");
    }
    s
}

fn write_map_block(f: &DigitalMap, out: &mut String) {
    let _ = writeln!(out, "map {} {}", f.domain().len(), f.codomain().len());
    for (x, y) in f.values().iter().enumerate() {
        let _ = writeln!(out, "f {x} {y}");
    }
}

fn write_images_for(f: &DigitalMap) -> String {
    let mut s = write_image(f.domain());
    if f.domain() != f.codomain() {
        s.push_str(&write_image(f.codomain()));
    }
    s
}

pub fn write_map(f: &DigitalMap) -> String {
    let mut s = write_images_for(f);
    write_map_block(f, &mut s);
    s
}

fn write_table(t: &MulTable, head: &str, cell: &str, out: &mut String) {
    let n = t.order();
    let _ = writeln!(out, "{head} {n}");
    for a in 0..n {
        for b in 0..n {
            let _ = writeln!(out, "{cell} {a} {b} {}", t.get(a, b));
        }
    }
}

pub fn write_mul(t: &MulTable) -> String {
    let mut s = String::new();
    write_table(t, "mul", "m", &mut s);
    s
}

pub fn write_hspace(h: &HSpaceStructure) -> String {
    let mut s = write_image(h.image());
    let _ = writeln!(s, "base {}", h.basepoint());
    let _ = writeln!(s, "cat {}", h.category().level());
    write_table(h.mu(), "mul", "m", &mut s);
    s
}

pub fn write_magma(m: &MagmaStructure) -> String {
    let mut s = write_image(m.image());
    let _ = writeln!(s, "cat {}", m.category().level());
    write_table(m.tau(), "mul", "m", &mut s);
    s
}

pub fn write_group(g: &GroupStructure, subset: Option<&[Vertex]>) -> String {
    let mut s = String::new();
    write_table(g.mul(), "group", "g", &mut s);
    if let Some(sub) = subset {
        s.push_str("subset");
        for v in sub {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    s
}

pub fn write_certificate(c: &HomotopyCertificate) -> String {
    let mut s = write_images_for(c.source());
    let _ = writeln!(s, "cat {}", c.category().level());
    if let Some((a, b)) = c.base() {
        let _ = writeln!(s, "base {a} {b}");
    }
    for (k, f) in c.chain().iter().enumerate() {
        let _ = writeln!(s, "step {k}");
        write_map_block(f, &mut s);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic_group;
    use crate::homotopy::{homotopic, DEFAULT_BUDGET};
    use crate::hspace::{fixture, Fixture};
    use proptest::prelude::*;

    #[test]
    fn parses_an_annotated_image() {
        let x = read_image("# a path\nimage 3\n\nedge 0 1   # first\nedge 2 1\n").unwrap();
        assert_eq!(x, DigitalImage::interval(2));
    }

    #[test]
    fn reports_line_numbers() {
        let e = read_image("image 2\nedge 0 5\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = read_image("image 2\nedg 0 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = read_map("image 2\nmap 2 2\nf 0 0\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("no value for 1"));
        let e = read_map("image 2\nmap 2 2\nf 0 0\nf 0 1\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(parse_document("cat 3\n").is_err());
        assert!(parse_document("edge 0 1\n").is_err());
        assert!(parse_document("image x\n").is_err());
    }

    #[test]
    fn maps_between_two_images() {
        let text = "image 2\nedge 0 1\nimage 1\nmap 2 1\nf 0 0\nf 1 0\n";
        let f = read_map(text).unwrap();
        assert_eq!(f.domain().len(), 2);
        assert_eq!(f.codomain().len(), 1);
        assert_eq!(read_map(&write_map(&f)).unwrap(), f);
    }

    #[test]
    fn fixtures_round_trip() {
        for name in crate::hspace::FIXTURE_NAMES {
            match fixture(name).unwrap() {
                Fixture::HSpace(h) => {
                    let parsed = read_hspace(&write_hspace(&h)).unwrap();
                    assert_eq!(parsed.image, **h.image());
                    assert_eq!((parsed.base, parsed.cat, &parsed.mul), (h.basepoint(), h.category(), h.mu()));
                }
                Fixture::Map(f) => assert_eq!(read_map(&write_map(&f)).unwrap(), f),
                Fixture::Image(x) => assert_eq!(read_image(&write_image(&x)).unwrap(), *x),
                Fixture::Magma(m) => {
                    let (x, c, t) = read_magma(&write_magma(&m)).unwrap();
                    assert_eq!((&x, c, &t), (m.image().as_ref(), m.category(), m.tau()));
                }
            }
        }
    }

    #[test]
    fn certificates_round_trip() {
        let rho = fixture("rho").unwrap().into_map().unwrap();
        let id = DigitalMap::identity(rho.domain().clone());
        let cert = homotopic(&rho, &id, Category::Np1, DEFAULT_BUDGET).unwrap().certificate.unwrap();
        let text = write_certificate(&cert);
        assert_eq!(text.matches("step").count(), 3);
        assert_eq!(read_certificate(&text).unwrap(), cert);
        let pointed = HomotopyCertificate::new(vec![id.clone()], Category::Np2, Some((0, 0)));
        assert_eq!(read_certificate(&write_certificate(&pointed)).unwrap(), pointed);
        assert!(read_certificate("image 1\ncat 1\nmap 1 1\nf 0 0\n").is_err());
    }

    #[test]
    fn groups_round_trip() {
        let g = cyclic_group(4);
        let (t, s) = read_group(&write_group(&g, Some(&[1, 2]))).unwrap();
        assert_eq!(&t, g.mul());
        assert_eq!(s, Some(vec![1, 2]));
    }

    proptest! {
        #[test]
        fn random_images_round_trip(n in 1usize..9, bits in any::<u64>()) {
            let x = DigitalImage::from_fn(n, |a, b| {
                let (i, j) = (a.min(b), a.max(b));
                bits >> ((j * (j + 1) / 2 + i) % 64) & 1 == 1
            }).unwrap();
            prop_assert_eq!(read_image(&write_image(&x)).unwrap(), x);
        }

        #[test]
        fn random_tables_round_trip(n in 1usize..6, seed in any::<u64>()) {
            let t = MulTable::from_fn(n, |a, b| ((seed >> ((a * n + b) % 60)) as usize + a) % n).unwrap();
            let parsed = parse_document(&write_mul(&t)).unwrap();
            prop_assert_eq!(parsed.mul, Some(t));
        }
    }
}
