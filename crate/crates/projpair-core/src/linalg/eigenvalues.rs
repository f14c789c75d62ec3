//! Eigenvalues of general complex square matrices.
//!
//! Householder reduction to upper Hessenberg form followed by an explicitly
//! shifted QR iteration with complex Givens rotations. Only eigenvalues are
//! produced; downstream code needs spectra for rank counts and residue
//! checks, never eigenvectors of non-normal matrices.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fp;
use crate::matrix::ComplexMatrix;
use crate::Complex64;

const MAX_ITERS_PER_EIGENVALUE: usize = 40;

/// Eigenvalues sorted by real part, then imaginary part.
pub fn general_eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![m[(0, 0)]]);
    }
    let mut h = m.clone();
    hessenberg_in_place(&mut h);
    let mut eig = qr_eigenvalues(&mut h)?;
    eig.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(eig)
}

/// Unitary similarity to upper Hessenberg form via Householder reflections.
fn hessenberg_in_place(h: &mut ComplexMatrix) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        let mut tail_sq = 0.0;
        for i in k + 2..n {
            tail_sq += h[(i, k)].norm_sqr();
        }
        if tail_sq == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let norm_x = fp::sqrt(tail_sq + x0.norm_sqr());
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0.scale(1.0 / x0.norm())
        };
        // v = x + phase*|x| e1 gives the reflection I - beta v v* with real
        // beta that maps x onto -phase*|x| e1.
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] += phase.scale(norm_x);
        let v_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if v_sq == 0.0 {
            continue;
        }
        let beta = 2.0 / v_sq;

        for j in k..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (t, i) in (k + 1..n).enumerate() {
                dot += v[t].conj() * h[(i, j)];
            }
            let f = dot.scale(beta);
            for (t, i) in (k + 1..n).enumerate() {
                let delta = v[t] * f;
                h[(i, j)] -= delta;
            }
        }
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (t, j) in (k + 1..n).enumerate() {
                dot += h[(i, j)] * v[t];
            }
            let f = dot.scale(beta);
            for (t, j) in (k + 1..n).enumerate() {
                let delta = f * v[t].conj();
                h[(i, j)] -= delta;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

fn qr_eigenvalues(h: &mut ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let scale = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let mut eig = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut its = 0usize;
    loop {
        // Walk up from the corner until a negligible subdiagonal splits
        // off the active block.
        let mut lo = hi;
        while lo > 0 {
            let d = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let d = if d == 0.0 { scale } else { d };
            if h[(lo, lo - 1)].norm() <= eps * d {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }

        if lo == hi {
            eig.push(h[(hi, hi)]);
            if hi == 0 {
                break;
            }
            hi -= 1;
            its = 0;
            continue;
        }
        if lo + 1 == hi {
            let (e1, e2) = eig2(
                h[(lo, lo)],
                h[(lo, lo + 1)],
                h[(lo + 1, lo)],
                h[(lo + 1, lo + 1)],
            );
            eig.push(e1);
            eig.push(e2);
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            its = 0;
            continue;
        }

        if its >= MAX_ITERS_PER_EIGENVALUE {
            return Err(Error::EigenNotConverged {
                sweeps: MAX_ITERS_PER_EIGENVALUE,
            });
        }
        let sigma = if its > 0 && its % 10 == 0 {
            // Exceptional shift breaks the cycling that symmetric spectra
            // can induce with the Wilkinson choice.
            let mag = h[(hi, hi - 1)].norm() + h[(hi - 1, hi - 2)].norm();
            h[(hi, hi)] + Complex64::new(mag, 0.0)
        } else {
            wilkinson_shift(h, hi)
        };
        qr_step(h, lo, hi, sigma);
        its += 1;
    }
    Ok(eig)
}

/// Eigenvalue of the trailing 2x2 closest to the corner entry.
fn wilkinson_shift(h: &ComplexMatrix, hi: usize) -> Complex64 {
    let d = h[(hi, hi)];
    let (e1, e2) = eig2(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], d);
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let mid = (a + d).scale(0.5);
    let half_diff = (a - d).scale(0.5);
    let disc = half_diff * half_diff + b * c;
    let root = disc.sqrt();
    (mid + root, mid - root)
}

/// One explicit-shift QR sweep on the Hessenberg block `lo..=hi`:
/// factor `H - sigma` with Givens rotations, then reassemble as `RQ + sigma`.
fn qr_step(h: &mut ComplexMatrix, lo: usize, hi: usize, sigma: Complex64) {
    for i in lo..=hi {
        h[(i, i)] -= sigma;
    }
    let mut rot: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s, r) = givens(h[(k, k)], h[(k + 1, k)]);
        h[(k, k)] = r;
        h[(k + 1, k)] = Complex64::new(0.0, 0.0);
        for j in k + 1..=hi {
            let a = h[(k, j)];
            let b = h[(k + 1, j)];
            h[(k, j)] = a.scale(c) + s * b;
            h[(k + 1, j)] = b.scale(c) - s.conj() * a;
        }
        rot.push((c, s));
    }
    for (t, k) in (lo..hi).enumerate() {
        let (c, s) = rot[t];
        for i in lo..=k + 1 {
            let a = h[(i, k)];
            let b = h[(i, k + 1)];
            h[(i, k)] = a.scale(c) + b * s.conj();
            h[(i, k + 1)] = b.scale(c) - s * a;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += sigma;
    }
}

/// Rotation [[c, s], [-s*, c]] with real c mapping (f, g) to (r, 0).
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64, Complex64) {
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0), f);
    }
    let fnorm = f.norm();
    if fnorm == 0.0 {
        return (0.0, g.conj().scale(1.0 / gn), Complex64::new(gn, 0.0));
    }
    let rho = fp::hypot(fnorm, gn);
    let c = fnorm / rho;
    let phase = f.scale(1.0 / fnorm);
    let s = phase * g.conj().scale(1.0 / rho);
    let r = phase.scale(rho);
    (c, s, r)
}
