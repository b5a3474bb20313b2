//! Naive reference implementations used to check the production kernels.
//!
//! Everything here is written straight from the defining formulas with
//! no shared code, tables, or factorizations: the DCT is the O(n^4)
//! direct double sum, the Sobel operator is a literal 3x3 convolution,
//! and the statistics use the raw-moment forms. Slow on purpose; test
//! code only (enable the `oracle` feature).

use alloc::vec::Vec;

/// Orthonormal 2D DCT-II by direct summation over all sample/frequency
/// pairs. `samples` is raster order, `size * size` long.
pub fn dct2d_direct(samples: &[u16], size: usize) -> Vec<f64> {
    assert_eq!(samples.len(), size * size);
    let w = size as f64;
    let scale = |k: usize| -> f64 {
        if k == 0 {
            libm::sqrt(1.0 / w)
        } else {
            libm::sqrt(2.0 / w)
        }
    };
    let mut out = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            let mut acc = 0.0;
            for y in 0..size {
                for x in 0..size {
                    let cy = libm::cos(
                        core::f64::consts::PI * (2 * y + 1) as f64 * i as f64 / (2.0 * w),
                    );
                    let cx = libm::cos(
                        core::f64::consts::PI * (2 * x + 1) as f64 * j as f64 / (2.0 * w),
                    );
                    acc += f64::from(samples[y * size + x]) * cy * cx;
                }
            }
            out.push(scale(i) * scale(j) * acc);
        }
    }
    out
}

/// Texture value of a transformed block: weighted absolute AC sum with
/// the weight recomputed from its formula at every position.
pub fn texture_direct(coeffs: &[f64], size: usize) -> f64 {
    assert_eq!(coeffs.len(), size * size);
    let area = (size * size) as f64;
    let mut acc = 0.0;
    for i in 0..size {
        for j in 0..size {
            if i == 0 && j == 0 {
                continue;
            }
            let ratio = (i * j) as f64 / area;
            let weight = libm::exp(libm::fabs(ratio * ratio - 1.0));
            acc += weight * libm::fabs(coeffs[i * size + j]);
        }
    }
    acc
}

/// 2x2 block averaging through float arithmetic: mean of each quad,
/// rounded to nearest with ties away from zero (`round` semantics).
pub fn downsample2x_direct(samples: &[u16], size: usize) -> Vec<u16> {
    assert_eq!(samples.len(), size * size);
    let half = size / 2;
    let mut out = Vec::with_capacity(half * half);
    for y in 0..half {
        for x in 0..half {
            let sum = f64::from(samples[2 * y * size + 2 * x])
                + f64::from(samples[2 * y * size + 2 * x + 1])
                + f64::from(samples[(2 * y + 1) * size + 2 * x])
                + f64::from(samples[(2 * y + 1) * size + 2 * x + 1]);
            out.push(libm::round(sum / 4.0) as u16);
        }
    }
    out
}

/// Interior Sobel magnitudes by literal 3x3 convolution with the two
/// kernel matrices written out.
pub fn sobel_direct(samples: &[u16], width: usize, height: usize) -> Vec<f64> {
    assert_eq!(samples.len(), width * height);
    assert!(width >= 3 && height >= 3);
    const KX: [[f64; 3]; 3] = [[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]];
    const KY: [[f64; 3]; 3] = [[-1.0, -2.0, -1.0], [0.0, 0.0, 0.0], [1.0, 2.0, 1.0]];
    let mut out = Vec::with_capacity((width - 2) * (height - 2));
    for y in 1..height - 1 {
        for x in 1..width - 1 {
            let mut gx = 0.0;
            let mut gy = 0.0;
            for dy in 0..3 {
                for dx in 0..3 {
                    let s = f64::from(samples[(y + dy - 1) * width + (x + dx - 1)]);
                    gx += KX[dy][dx] * s;
                    gy += KY[dy][dx] * s;
                }
            }
            out.push(libm::sqrt(gx * gx + gy * gy));
        }
    }
    out
}

/// Population standard deviation through raw moments:
/// sqrt(E[x^2] - E[x]^2).
pub fn population_std_direct(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for &v in values {
        sum += v;
        sum_sq += v * v;
    }
    let var = sum_sq / n - (sum / n) * (sum / n);
    libm::sqrt(var.max(0.0))
}

/// Pearson correlation through raw moments:
/// (E[xy] - E[x]E[y]) / (std(x) std(y)).
pub fn pearson_direct(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mut sum_x = 0.0;
    let mut sum_y = 0.0;
    let mut sum_xy = 0.0;
    let mut sum_xx = 0.0;
    let mut sum_yy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        sum_x += a;
        sum_y += b;
        sum_xy += a * b;
        sum_xx += a * a;
        sum_yy += b * b;
    }
    let cov = sum_xy / n - (sum_x / n) * (sum_y / n);
    let var_x = sum_xx / n - (sum_x / n) * (sum_x / n);
    let var_y = sum_yy / n - (sum_y / n) * (sum_y / n);
    cov / libm::sqrt(var_x * var_y)
}
