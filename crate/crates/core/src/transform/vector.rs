//! Four-wide SIMD DCT kernel.
//!
//! Each pass broadcasts one scalar factor and multiply-accumulates it
//! against four adjacent outputs, so every output coefficient sees the
//! same products in the same order as in the scalar kernel; the lanes
//! only change which outputs progress together. All supported block
//! sizes are multiples of four, so there is no remainder handling.

use wide::f64x4;

use super::Basis;

#[inline]
fn load4(slice: &[f64]) -> f64x4 {
    let lanes: [f64; 4] = slice[..4].try_into().unwrap();
    f64x4::from(lanes)
}

pub(super) fn forward(centered: &[f64], size: usize, basis: &Basis, tmp: &mut [f64], out: &mut [f64]) {
    debug_assert_eq!(basis.size, size);
    debug_assert_eq!(size % 4, 0);

    // Pass 1: for each sample row, accumulate four horizontal
    // frequencies at a time out of the transposed table.
    for r in 0..size {
        let x_row = &centered[r * size..][..size];
        let tmp_row = &mut tmp[r * size..][..size];
        for (chunk, tmp4) in tmp_row.chunks_exact_mut(4).enumerate() {
            let i = chunk * 4;
            let mut acc = f64x4::ZERO;
            for (n, &x) in x_row.iter().enumerate() {
                acc += f64x4::splat(x) * load4(&basis.table_t[n * size + i..]);
            }
            tmp4.copy_from_slice(&acc.to_array());
        }
    }

    // Pass 2: for each vertical frequency, accumulate four output
    // columns at a time down the tmp rows.
    for i in 0..size {
        let basis_row = &basis.table[i * size..][..size];
        let out_row = &mut out[i * size..][..size];
        for (chunk, out4) in out_row.chunks_exact_mut(4).enumerate() {
            let j = chunk * 4;
            let mut acc = f64x4::ZERO;
            for (r, &t) in basis_row.iter().enumerate() {
                acc += f64x4::splat(t) * load4(&tmp[r * size + j..]);
            }
            out4.copy_from_slice(&acc.to_array());
        }
    }
}
