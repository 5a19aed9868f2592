//! File formats shared by the subcommands: MacKay alist matrices, JSON code
//! descriptions with alist sidecars, decoder priors, and raw syndromes.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use cored::product::Sector;
use cored::{BinaryMatrix, BitVector, CssCode};
use serde::{Deserialize, Serialize};

/// Renders a parity-check matrix in alist form: `N M` (columns then rows),
/// maximum degrees, per-column and per-row degrees, then 1-indexed position
/// lists, column lists first. Lists are written unpadded.
pub fn write_alist(m: &BinaryMatrix) -> String {
    let rows = m.rows();
    let cols = m.cols();
    let mut col_lists: Vec<Vec<usize>> = vec![Vec::new(); cols];
    let mut row_lists: Vec<Vec<usize>> = vec![Vec::new(); rows];
    for r in 0..rows {
        for c in m.row_support(r) {
            col_lists[c].push(r + 1);
            row_lists[r].push(c + 1);
        }
    }
    let max_col = col_lists.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = row_lists.iter().map(Vec::len).max().unwrap_or(0);
    let join = |list: &[usize]| {
        list.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    };
    let mut out = String::new();
    out.push_str(&format!("{cols} {rows}\n{max_col} {max_row}\n"));
    out.push_str(&join(&col_lists.iter().map(Vec::len).collect::<Vec<_>>()));
    out.push('\n');
    out.push_str(&join(&row_lists.iter().map(Vec::len).collect::<Vec<_>>()));
    out.push('\n');
    for list in col_lists.iter().chain(row_lists.iter()) {
        out.push_str(&join(list));
        out.push('\n');
    }
    out
}

/// Parses an alist matrix. Accepts both unpadded lists and the padded
/// variant where short lists are filled with `0` entries.
pub fn parse_alist(text: &str) -> Result<BinaryMatrix> {
    let mut tokens = text.split_whitespace().map(|t| {
        t.parse::<usize>()
            .with_context(|| format!("bad alist token {t:?}"))
    });
    let mut next = |what: &str| -> Result<usize> {
        tokens.next().with_context(|| format!("alist ended before {what}"))?
    };
    let cols = next("the column count")?;
    let rows = next("the row count")?;
    let max_col = next("the maximum column degree")?;
    let max_row = next("the maximum row degree")?;
    let col_degrees: Vec<usize> =
        (0..cols).map(|_| next("a column degree")).collect::<Result<_>>()?;
    let row_degrees: Vec<usize> =
        (0..rows).map(|_| next("a row degree")).collect::<Result<_>>()?;
    ensure!(
        col_degrees.iter().all(|&d| d <= max_col),
        "column degree exceeds the declared maximum"
    );
    ensure!(
        row_degrees.iter().all(|&d| d <= max_row),
        "row degree exceeds the declared maximum"
    );

    let mut m = BinaryMatrix::zeros(rows, cols);
    // Position lists may be unpadded or zero-padded to the maximum degree;
    // the total token count tells the two layouts apart.
    let remaining: Vec<usize> = tokens.collect::<Result<_>>()?;
    let unpadded: usize =
        col_degrees.iter().sum::<usize>() + row_degrees.iter().sum::<usize>();
    let padded = cols * max_col + rows * max_row;
    let (col_stride, row_stride) = if remaining.len() == unpadded {
        (None, None)
    } else if remaining.len() == padded {
        (Some(max_col), Some(max_row))
    } else {
        bail!(
            "alist has {} position tokens, expected {unpadded} (unpadded) or {padded} (padded)",
            remaining.len()
        );
    };

    fn take<'a>(
        remaining: &'a [usize],
        cursor: &mut usize,
        count: usize,
        stride: Option<usize>,
    ) -> &'a [usize] {
        let width = stride.unwrap_or(count);
        let slice = &remaining[*cursor..*cursor + width];
        *cursor += width;
        &slice[..count]
    }

    let mut cursor = 0usize;
    for c in 0..cols {
        for &r in take(&remaining, &mut cursor, col_degrees[c], col_stride) {
            ensure!(r >= 1 && r <= rows, "alist row index {r} out of range");
            m.set(r - 1, c, true);
        }
    }
    for r in 0..rows {
        for &c in take(&remaining, &mut cursor, row_degrees[r], row_stride) {
            ensure!(c >= 1 && c <= cols, "alist column index {c} out of range");
            ensure!(
                m.get(r, c - 1),
                "alist row list names ({}, {c}) but the column lists do not",
                r + 1
            );
        }
    }
    ensure!(
        (0..rows).all(|r| m.row_support(r).len() == row_degrees[r]),
        "alist column and row lists disagree"
    );
    Ok(m)
}

pub fn read_alist(path: &Path) -> Result<BinaryMatrix> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading alist {}", path.display()))?;
    parse_alist(&text).with_context(|| format!("parsing alist {}", path.display()))
}

/// Qubit provenance inside a product: `red` for vertex-vertex pairs, `blue`
/// for check-check pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

/// Parameters that rebuild a pinwheel code from scratch, kept so derived
/// artifacts (tilings) can be regenerated from the JSON alone.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PinwheelMeta {
    /// Full rounds and partial steps of substitution.
    pub generation: [u32; 2],
    /// Label order consumed by partial rounds, `"A"` or `"B"`.
    pub order: String,
    /// Seam direction for the causal orientation.
    pub t: [i64; 2],
    /// Depletion-placement exponent.
    pub nu: f64,
}

/// Classical code description. The check matrix lives in an alist sidecar
/// named by `h_alist`, resolved relative to the JSON file's directory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassicalFile {
    pub name: String,
    pub n: usize,
    pub dimension: usize,
    pub h_alist: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub depleted: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codeword: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<Vec<f64>>>,
    /// Positions of the surviving checks, indexed like check-matrix rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_positions: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(u32, u32)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linear_size: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pinwheel: Option<PinwheelMeta>,
}

/// CSS code description with alist sidecars for both check matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CssFile {
    pub name: String,
    pub n: usize,
    pub dimension: usize,
    pub hx_alist: String,
    pub hz_alist: String,
    pub colors: Vec<Color>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<Vec<f64>>>,
    pub logical_x: Vec<Vec<usize>>,
    pub logical_z: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linear_size: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CodeFile {
    Classical(ClassicalFile),
    Css(CssFile),
}

#[derive(Debug)]
pub struct LoadedClassical {
    pub file: ClassicalFile,
    pub h: BinaryMatrix,
}

#[derive(Debug)]
pub struct LoadedCss {
    pub file: CssFile,
    pub css: CssCode,
}

impl LoadedCss {
    pub fn logicals(&self, sector: Sector) -> Vec<BitVector> {
        let supports = match sector {
            Sector::X => &self.file.logical_x,
            Sector::Z => &self.file.logical_z,
        };
        supports
            .iter()
            .map(|s| BitVector::from_support(self.file.n, s))
            .collect()
    }
}

#[derive(Debug)]
pub enum LoadedCode {
    Classical(LoadedClassical),
    Css(LoadedCss),
}

impl LoadedCode {
    pub fn name(&self) -> &str {
        match self {
            LoadedCode::Classical(c) => &c.file.name,
            LoadedCode::Css(c) => &c.file.name,
        }
    }

    pub fn into_classical(self, path: &Path) -> Result<LoadedClassical> {
        match self {
            LoadedCode::Classical(c) => Ok(c),
            LoadedCode::Css(_) => {
                bail!("{} holds a CSS code, expected a classical one", path.display())
            }
        }
    }

    pub fn into_css(self, path: &Path) -> Result<LoadedCss> {
        match self {
            LoadedCode::Css(c) => Ok(c),
            LoadedCode::Classical(_) => {
                bail!("{} holds a classical code, expected a CSS one", path.display())
            }
        }
    }
}

fn sidecar(json_path: &Path, name: &str) -> PathBuf {
    json_path.parent().unwrap_or_else(|| Path::new(".")).join(name)
}

/// Loads a code JSON and its alist sidecars, validating dimensions, colors,
/// and (for CSS codes) check orthogonality and logical supports.
pub fn load_code(path: &Path) -> Result<LoadedCode> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading code file {}", path.display()))?;
    let file: CodeFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing code file {}", path.display()))?;
    match file {
        CodeFile::Classical(file) => {
            let h = read_alist(&sidecar(path, &file.h_alist))?;
            ensure!(
                h.cols() == file.n,
                "{}: alist has {} columns but the code declares n = {}",
                path.display(),
                h.cols(),
                file.n
            );
            if let Some(support) = &file.codeword {
                let c = BitVector::from_support(file.n, support);
                ensure!(
                    h.mul_vector(&c).is_zero(),
                    "{}: the recorded codeword violates a check",
                    path.display()
                );
            }
            Ok(LoadedCode::Classical(LoadedClassical { file, h }))
        }
        CodeFile::Css(file) => {
            let hx = read_alist(&sidecar(path, &file.hx_alist))?;
            let hz = read_alist(&sidecar(path, &file.hz_alist))?;
            ensure!(
                hx.cols() == file.n && hz.cols() == file.n,
                "{}: alist column counts disagree with n = {}",
                path.display(),
                file.n
            );
            ensure!(
                file.colors.len() == file.n,
                "{}: expected {} qubit colors, found {}",
                path.display(),
                file.n,
                file.colors.len()
            );
            let css = match CssCode::new(hx, hz) {
                Ok(css) => css,
                Err(e) => bail!("{}: {e}", path.display()),
            };
            for support in file.logical_x.iter().chain(&file.logical_z) {
                for &q in support {
                    ensure!(
                        q < file.n,
                        "{}: logical support names qubit {q} of {}",
                        path.display(),
                        file.n
                    );
                }
            }
            Ok(LoadedCode::Css(LoadedCss { file, css }))
        }
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn stem_of(path: &Path) -> Result<String> {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .with_context(|| format!("{} has no usable file stem", path.display()))?;
    Ok(stem.to_string())
}

/// Writes `<stem>.json` plus a `<stem>.h.alist` sidecar; `file.h_alist` is
/// overwritten with the sidecar name.
pub fn save_classical(path: &Path, mut file: ClassicalFile, h: &BinaryMatrix) -> Result<()> {
    let stem = stem_of(path)?;
    file.h_alist = format!("{stem}.h.alist");
    write_text(&sidecar(path, &file.h_alist), &write_alist(h))?;
    let json = serde_json::to_string_pretty(&CodeFile::Classical(file))?;
    write_text(path, &json)
}

/// Writes `<stem>.json` plus `<stem>.hx.alist` and `<stem>.hz.alist`
/// sidecars; the path fields in `file` are overwritten.
pub fn save_css(path: &Path, mut file: CssFile, css: &CssCode) -> Result<()> {
    let stem = stem_of(path)?;
    file.hx_alist = format!("{stem}.hx.alist");
    file.hz_alist = format!("{stem}.hz.alist");
    write_text(&sidecar(path, &file.hx_alist), &write_alist(css.hx()))?;
    write_text(&sidecar(path, &file.hz_alist), &write_alist(css.hz()))?;
    let json = serde_json::to_string_pretty(&CodeFile::Css(file))?;
    write_text(path, &json)
}

/// One decoder prior: `tau` is the fitted relaxation time (`null` when the
/// qubit never flipped during calibration) and `p` the flip probability at
/// the calibration decode time.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PriorEntry {
    pub qubit: usize,
    pub tau: Option<f64>,
    pub p: f64,
}

pub fn write_priors(path: &Path, entries: &[PriorEntry]) -> Result<()> {
    write_text(path, &serde_json::to_string_pretty(entries)?)
}

pub fn read_priors(path: &Path, n: usize) -> Result<Vec<PriorEntry>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading priors {}", path.display()))?;
    let entries: Vec<PriorEntry> = serde_json::from_str(&text)
        .with_context(|| format!("parsing priors {}", path.display()))?;
    ensure!(
        entries.len() == n,
        "{}: expected {n} priors, found {}",
        path.display(),
        entries.len()
    );
    let mut seen = vec![false; n];
    for e in &entries {
        ensure!(e.qubit < n, "{}: prior names qubit {} of {n}", path.display(), e.qubit);
        ensure!(!seen[e.qubit], "{}: duplicate prior for qubit {}", path.display(), e.qubit);
        seen[e.qubit] = true;
    }
    Ok(entries)
}

/// Per-qubit relaxation times in qubit order, with `null` mapped to
/// infinity (a qubit that never flips).
pub fn priors_taus(entries: &[PriorEntry]) -> Vec<f64> {
    let mut taus = vec![f64::INFINITY; entries.len()];
    for e in entries {
        taus[e.qubit] = e.tau.unwrap_or(f64::INFINITY);
    }
    taus
}

/// Per-qubit flip probabilities in qubit order.
pub fn priors_probabilities(entries: &[PriorEntry]) -> Vec<f64> {
    let mut p = vec![0.0; entries.len()];
    for e in entries {
        p[e.qubit] = e.p;
    }
    p
}

/// Reads a syndrome as one byte per bit. Accepts raw `0x00`/`0x01` bytes and
/// ASCII `'0'`/`'1'`; whitespace is ignored.
pub fn read_syndrome(path: &Path, expected: usize) -> Result<BitVector> {
    let bytes =
        fs::read(path).with_context(|| format!("reading syndrome {}", path.display()))?;
    let mut bits = Vec::with_capacity(expected);
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            0x00 | b'0' => bits.push(false),
            0x01 | b'1' => bits.push(true),
            b' ' | b'\t' | b'\n' | b'\r' => {}
            other => bail!(
                "{}: byte {i} is {other:#04x}, expected 0, 1, '0', '1', or whitespace",
                path.display()
            ),
        }
    }
    ensure!(
        bits.len() == expected,
        "{}: got {} syndrome bits, the sector has {expected} checks",
        path.display(),
        bits.len()
    );
    Ok(BitVector::from_bools(&bits))
}
