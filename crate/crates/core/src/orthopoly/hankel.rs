//! Exact-rational oracle for recurrence coefficients at s = 0 with integer
//! exponents, where the moments are closed-form rationals. Numerically this
//! route is hopeless, but over the rationals it is exact, which is the point:
//! it is independent of the quadrature/Stieltjes pipeline it cross-checks.

use rug::{Integer, Rational};

/// Moments mu_k of x^alpha (1-x)^beta on the unit interval for integer exponents:
/// mu_k = (k+alpha)! beta! / (k+alpha+beta+1)!.
pub fn beta_moments(alpha: u32, beta: u32, count: usize) -> Vec<Rational> {
    (0..count as u32)
        .map(|k| {
            let num = Integer::from(Integer::factorial(k + alpha)) * Integer::from(Integer::factorial(beta));
            let den = Integer::from(Integer::factorial(k + alpha + beta + 1));
            Rational::from((num, den))
        })
        .collect()
}

/// Determinant by exact rational Gaussian elimination.
#[allow(clippy::needless_range_loop)]
fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut sign = 1i32;
    let mut acc = Rational::from(1);
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| m[r][col] != 0) {
            Some(r) => r,
            None => return Rational::new(),
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            sign = -sign;
        }
        let pivot = m[col][col].clone();
        acc *= &pivot;
        for r in (col + 1)..n {
            let factor = Rational::from(&m[r][col] / &pivot);
            for c in col..n {
                let sub = Rational::from(&factor * &m[col][c]);
                m[r][c] -= sub;
            }
        }
    }
    if sign < 0 {
        -acc
    } else {
        acc
    }
}

/// Hankel determinant Delta_n = det [mu_{i+j}]_{i,j < n}; Delta_0 = 1.
pub fn hankel_det(mu: &[Rational], n: usize) -> Rational {
    if n == 0 {
        return Rational::from(1);
    }
    assert!(mu.len() >= 2 * n - 1, "need moments up to mu_{}", 2 * n - 2);
    let m: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| mu[i + j].clone()).collect())
        .collect();
    det(m)
}

/// Hankel determinant with the last column shifted one moment up, used for
/// the sub-leading coefficient.
fn hankel_det_shifted(mu: &[Rational], n: usize) -> Rational {
    if n == 0 {
        return Rational::new();
    }
    assert!(mu.len() >= 2 * n, "need moments up to mu_{}", 2 * n - 1);
    let m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if j + 1 == n { mu[i + n].clone() } else { mu[i + j].clone() })
                .collect()
        })
        .collect();
    det(m)
}

/// Sub-leading coefficient p(n) of the monic orthogonal polynomial:
/// p(n) = -Delta*_n / Delta_n, with p(0) = 0.
pub fn subleading(mu: &[Rational], n: usize) -> Rational {
    if n == 0 {
        return Rational::new();
    }
    -(hankel_det_shifted(mu, n) / hankel_det(mu, n))
}

/// beta_n = Delta_{n+1} Delta_{n-1} / Delta_n^2 (n >= 1).
pub fn beta_coefficient(mu: &[Rational], n: usize) -> Rational {
    assert!(n >= 1);
    let d_n = hankel_det(mu, n);
    hankel_det(mu, n + 1) * hankel_det(mu, n - 1) / Rational::from(&d_n * &d_n)
}

/// alpha_n = p(n) - p(n+1).
pub fn alpha_coefficient(mu: &[Rational], n: usize) -> Rational {
    subleading(mu, n) - subleading(mu, n + 1)
}

/// Closed form for the flat weight on the unit interval: beta_n = n^2 / (4 (4 n^2 - 1)).
pub fn legendre01_beta(n: u64) -> Rational {
    let n2 = Rational::from(n) * Rational::from(n);
    n2.clone() / (Rational::from(4) * (Rational::from(4) * n2 - 1u32))
}
