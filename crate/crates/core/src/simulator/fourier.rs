//! Quantum Fourier transform over `F_q` and its tensor powers.
//!
//! `|x⟩ ↦ q^{-1/2} Σ_y e(xy)|y⟩` on one register; on `F_q^n` the transform
//! factorises into one such map per coordinate.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::field::{Field, Fq};

/// Dense `q × q` transform matrix, row-major, entry `[y][x] = e(xy)/√q`
/// (or its conjugate when `inverse`).
pub fn fourier_matrix(field: &Field, inverse: bool) -> Vec<Complex64> {
    let q = field.q() as usize;
    let scale = 1.0 / libm::sqrt(q as f64);
    let mut m = vec![Complex64::new(0.0, 0.0); q * q];
    for y in field.elements() {
        for x in field.elements() {
            let e = field.character(field.mul(x, y)) * scale;
            m[y.0 as usize * q + x.0 as usize] = if inverse { e.conj() } else { e };
        }
    }
    m
}

/// Applies the one-register transform along every coordinate of a state on
/// `F_q^n` (canonical index order, first coordinate most significant).
pub fn transform_all_axes(field: &Field, n: usize, amps: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let q = field.q() as usize;
    let m = fourier_matrix(field, inverse);
    let mut cur = amps.to_vec();
    let mut buf = vec![Complex64::new(0.0, 0.0); q];
    let mut stride = 1usize;
    for _ in 0..n {
        let block = stride * q;
        for start in (0..cur.len()).step_by(block) {
            for offset in 0..stride {
                for (x, slot) in buf.iter_mut().enumerate() {
                    *slot = cur[start + offset + x * stride];
                }
                for y in 0..q {
                    let row = &m[y * q..(y + 1) * q];
                    cur[start + offset + y * stride] =
                        row.iter().zip(&buf).map(|(a, b)| a * b).sum();
                }
            }
        }
        stride = block;
    }
    cur
}

fn mat_vec(m: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    let q = v.len();
    (0..q)
        .map(|y| m[y * q..(y + 1) * q].iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Largest per-amplitude deviation between the conjugated standard query
/// (inverse transform, `|a⟩ ↦ |a + value⟩`, transform) and the phase
/// `e(y·value)` over all basis states `|y⟩` of the target register.
pub fn phase_query_error(field: &Field, value: Fq) -> f64 {
    let q = field.q() as usize;
    let forward = fourier_matrix(field, false);
    let inverse = fourier_matrix(field, true);
    let mut worst: f64 = 0.0;
    for y in field.elements() {
        let mut basis = vec![Complex64::new(0.0, 0.0); q];
        basis[y.0 as usize] = Complex64::new(1.0, 0.0);
        let spread = mat_vec(&inverse, &basis);
        let mut shifted = vec![Complex64::new(0.0, 0.0); q];
        for a in field.elements() {
            shifted[field.add(a, value).0 as usize] = spread[a.0 as usize];
        }
        let out = mat_vec(&forward, &shifted);
        let phase = field.character(field.mul(y, value));
        for (b, amp) in out.iter().enumerate() {
            let expected = if b == y.0 as usize {
                phase
            } else {
                Complex64::new(0.0, 0.0)
            };
            worst = worst.max((amp - expected).norm());
        }
    }
    worst
}
