use std::path::PathBuf;

use anyhow::{bail, ensure, Result};
use clap::Args;
use cored::product::{ProductCode, Sector};
use cored::BitVector;

use crate::formats::{load_code, save_css, Color, CssFile, LoadedClassical};

#[derive(Debug, Args)]
pub struct ProductArgs {
    /// First classical factor (code JSON).
    #[arg(long)]
    pub left: PathBuf,

    /// Second classical factor (code JSON).
    #[arg(long)]
    pub right: PathBuf,

    /// Output CSS code JSON; alist sidecars land next to it.
    #[arg(long)]
    pub out: PathBuf,
}

/// Largest product for which logicals are worth extracting by linear
/// algebra over the full product matrices; beyond this only the bare
/// factor-codeword construction is supported.
const BASIS_QUBIT_LIMIT: usize = 4096;

fn product_logicals(
    product: &ProductCode,
    left: &LoadedClassical,
    right: &LoadedClassical,
    k: usize,
) -> Result<(Vec<BitVector>, Vec<BitVector>)> {
    if k == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let (n1, m1, n2, m2) = product.factor_dims();
    let single_kernel_factors =
        n1 == m1 + 1 && n2 == m2 + 1 && left.h.rank() == m1 && right.h.rank() == m2;
    if single_kernel_factors {
        if let (Some(c1), Some(c2)) = (&left.file.codeword, &right.file.codeword) {
            let c1 = BitVector::from_support(n1, c1);
            let c2 = BitVector::from_support(n2, c2);
            let lx = product.bare_logical(Sector::X, &c1, &c2);
            let lz = product.bare_logical(Sector::Z, &c1, &c2);
            return Ok((vec![lx], vec![lz]));
        }
    }
    if product.num_qubits() > BASIS_QUBIT_LIMIT {
        bail!(
            "extracting {k} logicals from a {}-qubit product needs recorded factor \
             codewords; general extraction is capped at {BASIS_QUBIT_LIMIT} qubits",
            product.num_qubits()
        );
    }
    Ok((
        product.css().logical_basis(Sector::X),
        product.css().logical_basis(Sector::Z),
    ))
}

fn product_coordinates(
    product: &ProductCode,
    left: &LoadedClassical,
    right: &LoadedClassical,
) -> Option<Vec<Vec<f64>>> {
    let (pos1, cpos1) = (left.file.positions.as_ref()?, left.file.check_positions.as_ref()?);
    let (pos2, cpos2) = (right.file.positions.as_ref()?, right.file.check_positions.as_ref()?);
    let (n1, m1, n2, m2) = product.factor_dims();
    if pos1.len() != n1 || cpos1.len() != m1 || pos2.len() != n2 || cpos2.len() != m2 {
        return None;
    }
    let join = |a: &[f64], b: &[f64]| {
        let mut v = Vec::with_capacity(a.len() + b.len());
        v.extend_from_slice(a);
        v.extend_from_slice(b);
        v
    };
    let mut coords = Vec::with_capacity(product.num_qubits());
    for v1 in 0..n1 {
        for v2 in 0..n2 {
            coords.push(join(&pos1[v1], &pos2[v2]));
        }
    }
    for c1 in 0..m1 {
        for c2 in 0..m2 {
            coords.push(join(&cpos1[c1], &cpos2[c2]));
        }
    }
    Some(coords)
}

pub fn run(args: &ProductArgs) -> Result<()> {
    let left = load_code(&args.left)?.into_classical(&args.left)?;
    let right = load_code(&args.right)?.into_classical(&args.right)?;
    let product = ProductCode::hypergraph(&left.h, &right.h);

    // Dimension from the factor ranks: k = k1 k2 + k1' k2' with primes for
    // the transpose codes. Much cheaper than ranking the product matrices.
    let (n1, m1, n2, m2) = product.factor_dims();
    let (r1, r2) = (left.h.rank(), right.h.rank());
    let k = (n1 - r1) * (n2 - r2) + (m1 - r1) * (m2 - r2);

    let (logical_x, logical_z) = product_logicals(&product, &left, &right, k)?;
    ensure!(
        logical_x.len() == k && logical_z.len() == k,
        "logical extraction found {} of {k} expected operators",
        logical_x.len()
    );
    let coordinates = product_coordinates(&product, &left, &right);
    let colors: Vec<Color> = (0..product.num_qubits())
        .map(|q| if q < product.num_red() { Color::Red } else { Color::Blue })
        .collect();
    let linear_size = match (left.file.linear_size, right.file.linear_size) {
        (Some(a), Some(b)) => Some((a * b).sqrt()),
        _ => None,
    };

    let file = CssFile {
        name: format!("{}x{}", left.file.name, right.file.name),
        n: product.num_qubits(),
        dimension: k,
        hx_alist: String::new(),
        hz_alist: String::new(),
        colors,
        coordinates,
        logical_x: logical_x.iter().map(BitVector::support).collect(),
        logical_z: logical_z.iter().map(BitVector::support).collect(),
        linear_size,
    };
    println!("{}: n = {}, k = {}", file.name, file.n, file.dimension);
    save_css(&args.out, file, product.css())
}
