//! Binary basis cache.
//!
//! Layout, all little-endian: the 7-byte magic `FRFTEB1`, `n` as `u32`, the variant as one
//! byte (0 standard, 1 centered), `n*n` `f64` entries of the eigenvector matrix in row-major
//! order, then `n` `i32` entries of the index vector.

use std::io::{Read, Write};

use super::EigenBasis;
use crate::error::{Error, Result};
use crate::foundation::{RealMatrix, TransformVariant};

pub const CACHE_MAGIC: &[u8; 7] = b"FRFTEB1";

fn variant_byte(v: TransformVariant) -> u8 {
    match v {
        TransformVariant::Standard => 0,
        TransformVariant::Centered => 1,
    }
}

pub fn write_cache<W: Write>(basis: &EigenBasis, mut out: W) -> Result<()> {
    let n = basis.n();
    let n32 = u32::try_from(n).map_err(|_| Error::InvalidCache(format!("size {n} does not fit in u32")))?;
    let mut buf = Vec::with_capacity(12 + 8 * n * n + 4 * n);
    buf.extend_from_slice(CACHE_MAGIC);
    buf.extend_from_slice(&n32.to_le_bytes());
    buf.push(variant_byte(basis.variant()));
    for v in basis.vectors().as_slice() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    for &l in basis.index_vector() {
        buf.extend_from_slice(&(l as i32).to_le_bytes());
    }
    out.write_all(&buf)?;
    Ok(())
}

pub fn read_cache<R: Read>(mut input: R) -> Result<EigenBasis> {
    let mut header = [0u8; 12];
    input.read_exact(&mut header).map_err(|_| Error::InvalidCache("truncated header".into()))?;
    if &header[..7] != CACHE_MAGIC {
        return Err(Error::InvalidCache("bad magic".into()));
    }
    let n = u32::from_le_bytes(header[7..11].try_into().unwrap()) as usize;
    let variant = match header[11] {
        0 => TransformVariant::Standard,
        1 => TransformVariant::Centered,
        b => return Err(Error::InvalidCache(format!("unknown variant byte {b}"))),
    };

    let mut body = vec![0u8; 8 * n * n + 4 * n];
    input.read_exact(&mut body).map_err(|_| Error::InvalidCache("truncated body".into()))?;
    let (mat_bytes, l_bytes) = body.split_at(8 * n * n);
    let data: Vec<f64> = mat_bytes.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
    let l = l_bytes
        .chunks_exact(4)
        .map(|c| {
            let v = i32::from_le_bytes(c.try_into().unwrap());
            usize::try_from(v).map_err(|_| Error::InvalidCache(format!("negative index {v}")))
        })
        .collect::<Result<Vec<usize>>>()?;

    let mut trailing = [0u8; 1];
    if input.read(&mut trailing)? != 0 {
        return Err(Error::InvalidCache("trailing bytes".into()));
    }

    let vectors = RealMatrix::from_row_major(n, n, data)?;
    EigenBasis::from_parts(variant, vectors, l)
}
