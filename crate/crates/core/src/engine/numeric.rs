//! Numeric root finding used by the parametric fallback and by cut sampling.

use num_complex::Complex64;

/// All complex roots of the polynomial with the given coefficients (lowest
/// degree first) by Durand-Kerner iteration. Deterministic.
pub fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().map(|v| v.norm() < 1e-300).unwrap_or(false) {
        c.pop();
    }
    if c.len() < 2 {
        return vec![];
    }
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|v| v / lead).collect();
    let radius = 1.0
        + monic[..n]
            .iter()
            .map(|v| v.norm())
            .fold(0.0f64, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32 + 1) * radius / seed.norm().powi(k as i32 + 1) * 0.9)
        .collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for v in monic.iter().rev() {
            acc = acc * z + v;
        }
        acc
    };
    for _ in 0..400 {
        let mut max_move = 0.0f64;
        for j in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for k in 0..n {
                if k != j {
                    denom *= roots[j] - roots[k];
                }
            }
            if denom.norm() < 1e-280 {
                denom = Complex64::new(1e-280, 0.0);
            }
            let delta = eval(roots[j]) / denom;
            roots[j] -= delta;
            max_move = max_move.max(delta.norm());
        }
        if max_move < 1e-13 * radius {
            break;
        }
    }
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    roots
}

/// Real roots of a real-coefficient polynomial (lowest degree first),
/// sorted ascending.
pub fn real_roots_of_coeffs(coeffs: &[f64]) -> Vec<f64> {
    let c: Vec<Complex64> = coeffs.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let scale = coeffs.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    let mut out: Vec<f64> = durand_kerner(&c)
        .into_iter()
        .filter(|z| z.im.abs() < 1e-7 * (1.0 + z.norm()))
        .map(|z| polish_real_root(coeffs, z.re))
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * scale.max(a.abs()));
    out
}

fn polish_real_root(coeffs: &[f64], mut x: f64) -> f64 {
    let eval = |x: f64| -> (f64, f64) {
        let mut v = 0.0;
        let mut d = 0.0;
        for c in coeffs.iter().rev() {
            d = d * x + v;
            v = v * x + c;
        }
        (v, d)
    };
    for _ in 0..8 {
        let (v, d) = eval(x);
        if d.abs() < 1e-300 {
            break;
        }
        let step = v / d;
        x -= step;
        if step.abs() < 1e-15 * (1.0 + x.abs()) {
            break;
        }
    }
    x
}

/// Newton iteration with a numeric derivative for a holomorphic function
/// supplied as a fallible evaluator. Returns a root with |f| below `tol`.
pub fn newton_solve<F>(f: &F, seed: Complex64, tol: f64, max_iter: usize) -> Option<Complex64>
where
    F: Fn(Complex64) -> Option<Complex64>,
{
    let mut z = seed;
    for _ in 0..max_iter {
        let fz = f(z)?;
        if fz.norm() < tol {
            return Some(z);
        }
        let h = 1e-7 * (1.0 + z.norm());
        let fp = f(z + Complex64::new(h, 0.0))?;
        let fm = f(z - Complex64::new(h, 0.0))?;
        let d = (fp - fm) / (2.0 * h);
        if d.norm() < 1e-14 {
            return None;
        }
        z -= fz / d;
        if !z.re.is_finite() || !z.im.is_finite() || z.norm() > 1e8 {
            return None;
        }
    }
    let fz = f(z)?;
    if fz.norm() < tol {
        Some(z)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn durand_kerner_finds_quartic_roots() {
        // z^4 - 1: roots at 1, -1, i, -i.
        let coeffs = [
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ];
        let roots = durand_kerner(&coeffs);
        assert_eq!(roots.len(), 4);
        for r in &roots {
            assert!((r.powu(4) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn real_root_extraction() {
        // (x-2)(x+3)x = x^3 + x^2 - 6x
        let roots = real_roots_of_coeffs(&[0.0, -6.0, 1.0, 1.0]);
        assert_eq!(roots.len(), 3);
        assert!((roots[0] + 3.0).abs() < 1e-9);
        assert!(roots[1].abs() < 1e-9);
        assert!((roots[2] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn newton_converges_on_square_root() {
        let f = |z: Complex64| Some(z * z - Complex64::new(2.0, 0.0));
        let r = newton_solve(&f, Complex64::new(1.0, 0.5), 1e-12, 60).unwrap();
        assert!((r - Complex64::new(2f64.sqrt(), 0.0)).norm() < 1e-7);
    }
}
