//! Plain-text matrix dump:
//!
//! ```text
//! # interaction matrix
//! # subspace: sp
//! # dimension: 6
//! # units: hartree
//! # basis 0 |42s0;42p-1;g>
//! ...
//! # row col re im
//! 0 0 0e0 0e0
//! ...
//! ```
//!
//! Entries are listed row-major, one per line, with shortest round-trip
//! float formatting.

use std::io::{self, Write};

use super::matrix::InteractionMatrix;

pub fn write_matrix_dump<W: Write>(matrix: &InteractionMatrix, mut out: W) -> io::Result<()> {
    writeln!(out, "# interaction matrix")?;
    writeln!(
        out,
        "# subspace: {}",
        matrix.kind.map_or("custom", |k| k.name())
    )?;
    writeln!(out, "# dimension: {}", matrix.dim())?;
    writeln!(out, "# units: hartree")?;
    if let Some(p) = matrix.prefactor {
        writeln!(out, "# prefactor_hartree: {p:e}")?;
    }
    for (i, b) in matrix.basis.iter().enumerate() {
        writeln!(out, "# basis {i} {b}")?;
    }
    writeln!(out, "# row col re im")?;
    for r in 0..matrix.dim() {
        for c in 0..matrix.dim() {
            let z = matrix.entries[(r, c)];
            writeln!(out, "{r} {c} {:e} {:e}", z.re, z.im)?;
        }
    }
    Ok(())
}
