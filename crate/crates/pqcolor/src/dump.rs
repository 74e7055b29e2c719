//! Coloring dump files.
//!
//! A dump lists every edge of a complete k-graph exactly once, in colex
//! order, with an interned color id; ids are contiguous from 0 in
//! first-seen order. CSV dumps carry `u,v[,w],color_id` records (1-based
//! vertex labels, sorted ascending) under `#`-prefixed header lines, with
//! the palette in a JSON sidecar next to the file. JSON dumps are a single
//! document. Both formats are byte-deterministic for fixed inputs.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::combinat::{choose, colex_next};
use crate::exact::ExplicitColoring;
use crate::verify::ColoringSource;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DumpFormat {
    Csv,
    Json,
}

/// Structured palette entry: the color tuple behind an interned id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PaletteEntry {
    Sigma { c1: u8, c2: u8, c3: u64, c4: u64 },
    Chi { c1: u8, c2: u8, c3: u64, c4: u64, delta: i8 },
    Opaque { value: u64 },
}

impl PaletteEntry {
    fn from_key(key: u128, kind: SourceKind) -> Self {
        match kind {
            SourceKind::Sigma => {
                let c = crate::sigma::SigmaColor::from_key(key);
                PaletteEntry::Sigma {
                    c1: c.c1,
                    c2: c.c2,
                    c3: c.c3,
                    c4: c.c4,
                }
            }
            SourceKind::Chi => {
                let c = crate::chi::ChiColor::from_key(key);
                PaletteEntry::Chi {
                    c1: c.base.c1,
                    c2: c.base.c2,
                    c3: c.base.c3,
                    c4: c.base.c4,
                    delta: c.delta,
                }
            }
            SourceKind::Opaque => PaletteEntry::Opaque { value: key as u64 },
        }
    }
}

/// How palette keys should be rendered in the palette table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceKind {
    Sigma,
    Chi,
    Opaque,
}

/// Construction parameters recorded in dump headers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpParams {
    pub kind: String,
    pub t: u8,
    pub m: u8,
    pub n_prime: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bit_length: Option<u8>,
}

/// In-memory form of a dump file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColoringDump {
    pub uniformity: u8,
    pub n_vertices: u64,
    pub palette_size: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<DumpParams>,
    /// One record per edge: sorted 1-based vertex labels then the color id.
    pub edges: Vec<Vec<u64>>,
    pub palette: Vec<PaletteEntry>,
}

/// Materialize a dump from any coloring source. Edges are enumerated in
/// colex order and colors interned on first sight.
pub fn build_dump(
    src: &dyn ColoringSource,
    kind: SourceKind,
    params: Option<DumpParams>,
) -> Result<ColoringDump> {
    let k = src.uniformity();
    let n = src.n_vertices();
    let n_edges = choose(n, k as u64)?;
    if n_edges > 100_000_000 {
        return Err(Error::Capacity(format!(
            "dump of {n_edges} edges exceeds the 10^8 record limit"
        )));
    }
    let mut ids: HashMap<u128, u32> = HashMap::new();
    let mut palette = Vec::new();
    let mut edges = Vec::with_capacity(n_edges as usize);
    if n_edges > 0 {
        let mut edge: Vec<u64> = (0..k as u64).collect();
        loop {
            let key = src.color_of(&edge);
            let next_id = ids.len() as u32;
            let id = *ids.entry(key).or_insert_with(|| {
                palette.push(PaletteEntry::from_key(key, kind));
                next_id
            });
            let mut record: Vec<u64> = edge.iter().map(|&v| v + 1).collect();
            record.push(id as u64);
            edges.push(record);
            if !colex_next(&mut edge, n) {
                break;
            }
        }
    }
    Ok(ColoringDump {
        uniformity: k as u8,
        n_vertices: n,
        palette_size: palette.len() as u32,
        params,
        edges,
        palette,
    })
}

impl ColoringDump {
    /// Serialize to the given format. CSV returns the body; the palette
    /// sidecar is produced by [`ColoringDump::palette_sidecar`].
    pub fn render(&self, format: DumpFormat) -> Result<String> {
        match format {
            DumpFormat::Json => {
                serde_json::to_string_pretty(self).map_err(|e| Error::Parameter(e.to_string()))
            }
            DumpFormat::Csv => {
                let mut out = String::new();
                let mut header = format!(
                    "# k={} n={} palette={}",
                    self.uniformity, self.n_vertices, self.palette_size
                );
                if let Some(p) = &self.params {
                    let _ = write!(header, " kind={} t={} m={} nprime={}", p.kind, p.t, p.m, p.n_prime);
                    if let Some(bits) = p.bit_length {
                        let _ = write!(header, " bits={bits}");
                    }
                }
                out.push_str(&header);
                out.push('\n');
                out.push_str(if self.uniformity == 2 {
                    "u,v,color_id\n"
                } else {
                    "u,v,w,color_id\n"
                });
                for record in &self.edges {
                    let mut first = true;
                    for val in record {
                        if !first {
                            out.push(',');
                        }
                        let _ = write!(out, "{val}");
                        first = false;
                    }
                    out.push('\n');
                }
                Ok(out)
            }
        }
    }

    pub fn palette_sidecar(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Sidecar<'a> {
            uniformity: u8,
            n_vertices: u64,
            palette_size: u32,
            #[serde(skip_serializing_if = "Option::is_none")]
            params: &'a Option<DumpParams>,
            palette: &'a [PaletteEntry],
        }
        serde_json::to_string_pretty(&Sidecar {
            uniformity: self.uniformity,
            n_vertices: self.n_vertices,
            palette_size: self.palette_size,
            params: &self.params,
            palette: &self.palette,
        })
        .map_err(|e| Error::Parameter(e.to_string()))
    }

    /// Write to `path`; CSV also writes `<path>.palette.json`.
    pub fn write(&self, path: &Path, format: DumpFormat) -> Result<()> {
        let mut file = BufWriter::new(fs::File::create(path)?);
        file.write_all(self.render(format)?.as_bytes())?;
        file.flush()?;
        if format == DumpFormat::Csv {
            fs::write(sidecar_path(path), self.palette_sidecar()?)?;
        }
        Ok(())
    }

    /// Parse a dump file, auto-detecting the format from the content.
    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let dump: ColoringDump = serde_json::from_str(&text)
                .map_err(|e| Error::MalformedDump(format!("bad JSON dump: {e}")))?;
            dump.validate()?;
            Ok(dump)
        } else {
            Self::parse_csv(&text)
        }
    }

    fn parse_csv(text: &str) -> Result<Self> {
        let mut uniformity: Option<u8> = None;
        let mut n_vertices: Option<u64> = None;
        let mut edges: Vec<Vec<u64>> = Vec::new();
        let mut max_id = 0u64;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                for token in rest.split_whitespace() {
                    if let Some(v) = token.strip_prefix("k=") {
                        uniformity = Some(v.parse().map_err(|_| {
                            Error::MalformedDump(format!("bad k in header: {token}"))
                        })?);
                    } else if let Some(v) = token.strip_prefix("n=") {
                        n_vertices = Some(v.parse().map_err(|_| {
                            Error::MalformedDump(format!("bad n in header: {token}"))
                        })?);
                    }
                }
                continue;
            }
            if line.starts_with("u,v") {
                continue; // column header
            }
            let fields: std::result::Result<Vec<u64>, _> =
                line.split(',').map(|f| f.trim().parse::<u64>()).collect();
            let fields =
                fields.map_err(|_| Error::MalformedDump(format!("bad record: {line}")))?;
            max_id = max_id.max(*fields.last().unwrap_or(&0));
            edges.push(fields);
        }
        let uniformity =
            uniformity.ok_or_else(|| Error::MalformedDump("missing k= header".into()))?;
        let n_vertices =
            n_vertices.ok_or_else(|| Error::MalformedDump("missing n= header".into()))?;
        let palette_size = if edges.is_empty() { 0 } else { max_id as u32 + 1 };
        let dump = ColoringDump {
            uniformity,
            n_vertices,
            palette_size,
            params: None,
            edges,
            // CSV alone does not carry structured tuples; synthesize opaque
            // entries so ids remain resolvable.
            palette: (0..palette_size as u64)
                .map(|value| PaletteEntry::Opaque { value })
                .collect(),
        };
        dump.validate()?;
        Ok(dump)
    }

    /// Check structural invariants: every edge of the complete k-graph
    /// exactly once in colex order, sorted labels in range, contiguous
    /// first-seen color ids.
    pub fn validate(&self) -> Result<()> {
        let k = self.uniformity as usize;
        if k != 2 && k != 3 {
            return Err(Error::MalformedDump(format!("uniformity {k} not supported")));
        }
        let expected = choose(self.n_vertices, k as u64)
            .map_err(|_| Error::MalformedDump("edge count overflow".into()))?;
        if self.edges.len() as u64 != expected {
            return Err(Error::MalformedDump(format!(
                "expected {expected} edge records, found {}",
                self.edges.len()
            )));
        }
        let mut cursor: Vec<u64> = (0..k as u64).collect();
        let mut next_fresh = 0u64;
        for (i, record) in self.edges.iter().enumerate() {
            if record.len() != k + 1 {
                return Err(Error::MalformedDump(format!(
                    "record {i} has {} fields, expected {}",
                    record.len(),
                    k + 1
                )));
            }
            let verts = &record[..k];
            if !verts.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::MalformedDump(format!(
                    "record {i} vertices not strictly ascending"
                )));
            }
            if verts[0] < 1 || verts[k - 1] > self.n_vertices {
                return Err(Error::MalformedDump(format!(
                    "record {i} vertex out of range"
                )));
            }
            // Records must follow colex order with no gaps or repeats.
            let expected_edge: Vec<u64> = cursor.iter().map(|&v| v + 1).collect();
            if verts != expected_edge.as_slice() {
                return Err(Error::MalformedDump(format!(
                    "record {i} is {verts:?}, expected colex edge {expected_edge:?}"
                )));
            }
            let id = record[k];
            if id > next_fresh {
                return Err(Error::MalformedDump(format!(
                    "record {i} color id {id} skips ahead of first-seen order"
                )));
            }
            if id == next_fresh {
                next_fresh += 1;
            }
            colex_next(&mut cursor, self.n_vertices);
        }
        if next_fresh != self.palette_size as u64 {
            return Err(Error::MalformedDump(format!(
                "palette size {} does not match {} interned ids",
                self.palette_size, next_fresh
            )));
        }
        if self.palette.len() as u64 != next_fresh {
            return Err(Error::MalformedDump(format!(
                "palette table has {} entries, expected {}",
                self.palette.len(),
                next_fresh
            )));
        }
        Ok(())
    }

    /// View the dump as a verifiable coloring source.
    pub fn to_coloring(&self) -> Result<ExplicitColoring> {
        self.validate()?;
        let colors: Vec<u32> = self.edges.iter().map(|r| r[r.len() - 1] as u32).collect();
        ExplicitColoring::new(self.uniformity as usize, self.n_vertices, colors)
    }
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".palette.json");
    path.with_file_name(name)
}
