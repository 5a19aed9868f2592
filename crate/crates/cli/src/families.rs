//! Built-in classical code families for the `build` subcommand.

use anyhow::{anyhow, ensure, Result};
use cored::pinwheel::{
    self, Generation, PinwheelParams, PinwheelTiling, SubstitutionOrder,
};
use cored::slead::{repetition_chain, ClassicalCode};
use cored::{BinaryMatrix, BitVector};
use serde::{Deserialize, Serialize};

use crate::formats::{ClassicalFile, PinwheelMeta};

/// A constructed classical code ready to save: metadata, check matrix, and
/// (for pinwheel codes) the tiling it came from.
pub struct BuiltCode {
    pub file: ClassicalFile,
    pub h: BinaryMatrix,
    pub tiling: Option<PinwheelTiling>,
}

fn from_slead_code(
    name: String,
    code: &ClassicalCode,
    linear_size: f64,
    meta: Option<PinwheelMeta>,
) -> Result<BuiltCode> {
    let slead = code.slead();
    let n = code.num_bits();
    let codeword = match code.depleted() {
        [v] => Some(code.codeword(*v).map_err(|e| anyhow!("{e}"))?.support()),
        _ => None,
    };
    let positions: Vec<Vec<f64>> = (0..n).map(|v| slead.position(v).to_vec()).collect();
    let check_positions: Vec<Vec<f64>> =
        code.check_vertices().iter().map(|&v| slead.position(v).to_vec()).collect();
    let file = ClassicalFile {
        name,
        n,
        dimension: code.dimension(),
        h_alist: String::new(),
        depleted: code.depleted().to_vec(),
        codeword,
        positions: Some(positions),
        check_positions: Some(check_positions),
        t: Some(slead.direction().to_vec()),
        edges: Some(slead.edges().to_vec()),
        linear_size: Some(linear_size),
        pinwheel: meta,
    };
    Ok(BuiltCode { file, h: code.check_matrix().clone(), tiling: None })
}

/// Chain code on `n` bits with the boundary check removed; the repetition
/// code, as a depleted slead.
pub fn repetition(n: usize) -> Result<BuiltCode> {
    ensure!(n >= 2, "a repetition chain needs at least 2 bits");
    let mut code = repetition_chain(n);
    code.deplete(0).map_err(|e| anyhow!("{e}"))?;
    from_slead_code(format!("rep{n}"), &code, n as f64, None)
}

/// Three-body checks `{(i,j), (i+1,j), (i,j+1)}` on an `l x l` torus with
/// the check at the origin removed. For `l` a power of two the kernel is
/// one dimensional and the codeword is a Sierpinski triangle.
pub fn newman_moore(l: usize) -> Result<BuiltCode> {
    ensure!(l >= 2, "the torus side must be at least 2");
    let n = l * l;
    let index = |i: usize, j: usize| i * l + j;
    let mut supports = Vec::with_capacity(n - 1);
    for i in 0..l {
        for j in 0..l {
            if (i, j) == (0, 0) {
                continue;
            }
            supports.push(vec![
                index(i, j),
                index((i + 1) % l, j),
                index(i, (j + 1) % l),
            ]);
        }
    }
    let h = BinaryMatrix::from_supports(n - 1, n, &supports);
    let kernel = h.kernel_basis();
    let codeword = match kernel.as_slice() {
        [c] => Some(c.support()),
        _ => None,
    };
    let positions: Vec<Vec<f64>> =
        (0..l).flat_map(|i| (0..l).map(move |j| vec![i as f64, j as f64])).collect();
    let check_positions = positions[1..].to_vec();
    let file = ClassicalFile {
        name: format!("nm{l}"),
        n,
        dimension: kernel.len(),
        h_alist: String::new(),
        depleted: vec![0],
        codeword,
        positions: Some(positions),
        check_positions: Some(check_positions),
        t: None,
        edges: None,
        linear_size: Some(l as f64),
        pinwheel: None,
    };
    Ok(BuiltCode { file, h, tiling: None })
}

pub fn parse_order(s: &str) -> Result<SubstitutionOrder> {
    match s {
        "A" | "a" => Ok(SubstitutionOrder::A),
        "B" | "b" => Ok(SubstitutionOrder::B),
        other => Err(anyhow!("unknown substitution order {other:?}, expected A or B")),
    }
}

/// Pinwheel code at the given generation, seam direction, and depletion
/// exponent.
pub fn pinwheel_code(
    generation: [u32; 2],
    order: SubstitutionOrder,
    t: [i64; 2],
    nu: f64,
) -> Result<BuiltCode> {
    let params = PinwheelParams {
        generation: Generation::new(generation[0], generation[1]),
        order,
        t,
        nu,
    };
    let built = pinwheel::build_code(&params).map_err(|e| anyhow!("{e}"))?;
    let meta = PinwheelMeta {
        generation: [params.generation.full(), u32::from(params.generation.partial())],
        order: format!("{order:?}"),
        t: pinwheel::validate_seam(t).map_err(|e| anyhow!("{e}"))?,
        nu,
    };
    let n = built.code.num_bits();
    let name = format!(
        "pinwheel{}-{}{:?}",
        params.generation.full(),
        params.generation.partial(),
        order
    );
    let mut out = from_slead_code(name, &built.code, (n as f64).sqrt(), Some(meta))?;
    out.tiling = Some(built.tiling);
    Ok(out)
}

/// One tile of a pinwheel tiling with vertices in normalized coordinates:
/// `r` is the right-angle vertex, `l` the long-leg vertex, `s` the
/// short-leg vertex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TileJson {
    pub label: u8,
    pub r: [f64; 2],
    pub l: [f64; 2],
    pub s: [f64; 2],
}

pub fn tiling_tiles(tiling: &PinwheelTiling) -> Vec<TileJson> {
    let scale = tiling.scale() as f64;
    let norm = |p: [i64; 2]| [p[0] as f64 / scale, p[1] as f64 / scale];
    tiling
        .tiles()
        .iter()
        .map(|tile| TileJson {
            label: tile.label,
            r: norm(tile.r),
            l: norm(tile.l),
            s: norm(tile.s),
        })
        .collect()
}

/// Rebuilds the tiling recorded in a code file's pinwheel metadata.
pub fn tiling_from_meta(meta: &PinwheelMeta) -> Result<PinwheelTiling> {
    let generation = Generation::new(meta.generation[0], meta.generation[1]);
    PinwheelTiling::new(generation, parse_order(&meta.order)?).map_err(|e| anyhow!("{e}"))
}

/// The depletion codeword recorded in a classical code file.
pub fn recorded_codeword(file: &ClassicalFile) -> Result<BitVector> {
    let support = file
        .codeword
        .as_ref()
        .ok_or_else(|| anyhow!("{} records no depletion codeword", file.name))?;
    Ok(BitVector::from_support(file.n, support))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repetition_family_records_the_full_codeword() {
        let built = repetition(5).unwrap();
        assert_eq!(built.file.n, 5);
        assert_eq!(built.file.dimension, 1);
        assert_eq!(built.file.codeword, Some(vec![0, 1, 2, 3, 4]));
        assert_eq!(built.h.rows(), 4);
    }

    #[test]
    fn newman_moore_power_of_two_sides_have_one_codeword() {
        let built = newman_moore(4).unwrap();
        assert_eq!(built.file.n, 16);
        assert_eq!(built.file.dimension, 1);
        let support = built.file.codeword.clone().unwrap();
        // Each torus row of the Sierpinski pattern has even or odd support;
        // the codeword satisfies every kept check by construction.
        let c = BitVector::from_support(16, &support);
        assert!(built.h.mul_vector(&c).is_zero());
        assert!(!c.is_zero());
    }

    #[test]
    fn newman_moore_codeword_weight_follows_the_sierpinski_rule() {
        // On a side-2^a torus the opened codeword is a Sierpinski triangle
        // with 3^a cells.
        for (l, weight) in [(2usize, 3usize), (4, 9), (8, 27)] {
            let built = newman_moore(l).unwrap();
            assert_eq!(built.file.codeword.unwrap().len(), weight, "side {l}");
        }
    }

    #[test]
    fn pinwheel_family_round_trips_metadata() {
        let built = pinwheel_code([1, 0], SubstitutionOrder::A, [-1, -1], 0.6).unwrap();
        assert_eq!(built.file.n, 20);
        let meta = built.file.pinwheel.clone().unwrap();
        assert_eq!(meta.generation, [1, 0]);
        assert_eq!(meta.t, [-1, -1]);
        let tiling = tiling_from_meta(&meta).unwrap();
        assert_eq!(tiling.num_tiles(), 20);
        let tiles = tiling_tiles(built.tiling.as_ref().unwrap());
        assert_eq!(tiles.len(), 20);
        // Normalized coordinates stay within the blown-up initial triangle.
        for tile in &tiles {
            for p in [tile.r, tile.l, tile.s] {
                assert!(p[0].abs() <= 4.0 && p[1].abs() <= 4.0);
            }
        }
    }
}
