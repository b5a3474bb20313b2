//! Plain-loop DCT kernel.
//!
//! The accumulation order here is the contract the vector kernel mirrors:
//! pass 1 walks input samples left to right for each output frequency,
//! pass 2 walks rows top to bottom. Keeping the order fixed is what lets
//! the two kernels agree to the bit on the same input.

use super::Basis;

pub(super) fn forward(centered: &[f64], size: usize, basis: &Basis, tmp: &mut [f64], out: &mut [f64]) {
    debug_assert_eq!(basis.size, size);

    // Pass 1: transform each sample row; tmp[r][i] holds row r at
    // horizontal frequency i.
    for r in 0..size {
        let x_row = &centered[r * size..][..size];
        let tmp_row = &mut tmp[r * size..][..size];
        for (i, slot) in tmp_row.iter_mut().enumerate() {
            let basis_row = &basis.table[i * size..][..size];
            let mut acc = 0.0;
            for (&x, &t) in x_row.iter().zip(basis_row) {
                acc += x * t;
            }
            *slot = acc;
        }
    }

    // Pass 2: transform each column of tmp; out[i][j] is vertical
    // frequency i, horizontal frequency j.
    for i in 0..size {
        let basis_row = &basis.table[i * size..][..size];
        let out_row = &mut out[i * size..][..size];
        for (j, slot) in out_row.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (r, &t) in basis_row.iter().enumerate() {
                acc += t * tmp[r * size + j];
            }
            *slot = acc;
        }
    }
}
