//! Configurable-precision Gauss rules for the weight x^a (1-x)^b on the unit interval.
//!
//! The monic three-term coefficients of the (shifted) Jacobi polynomials are
//! known in closed form; nodes are their zeros, located by a double-precision
//! Golub-Welsch pass and polished by Newton iteration at full precision;
//! weights come from the standard product formula. Endpoint singularities of
//! the weight are absorbed by the rule, so integrands stay smooth.

use rug::{ops::Pow, Float};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuadratureError {
    #[error("quadrature exponents must both exceed -1 (got a = {a}, b = {b})")]
    InvalidExponents { a: String, b: String },
    #[error("a Gauss rule needs at least 2 nodes")]
    TooFewNodes,
    #[error("node refinement produced a degenerate rule: {0}")]
    Degenerate(String),
}

/// Nodes and weights of an n-point rule for ∫_0^1 x^a (1-x)^b f(x) dx.
#[derive(Clone, Debug)]
pub struct JacobiRule {
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
}

impl JacobiRule {
    /// Apply the rule to smooth factor values supplied per node.
    pub fn integrate<F: Fn(&Float) -> Float>(&self, f: F) -> Float {
        let prec = self.nodes[0].prec();
        let mut acc = Float::with_val(prec, 0);
        for (x, w) in self.nodes.iter().zip(self.weights.iter()) {
            acc += w * f(x);
        }
        acc
    }
}

/// Monic three-term coefficients for the shifted Jacobi weight on the unit interval:
/// pi_{k+1} = (x - alpha_k) pi_k - beta_k pi_{k-1}, with beta_0 carrying the
/// total mass B(a+1, b+1).
pub(crate) struct MonicCoeffs {
    pub alpha: Vec<Float>,
    pub beta: Vec<Float>,
}

pub(crate) fn beta_function(p: &Float, q: &Float, prec: u32) -> Float {
    let lg_p = Float::with_val(prec, p).ln_gamma();
    let lg_q = Float::with_val(prec, q).ln_gamma();
    let lg_pq = Float::with_val(prec, p + q).ln_gamma();
    Float::with_val(prec, lg_p + lg_q - lg_pq).exp()
}

pub(crate) fn monic_coeffs(a: &Float, b: &Float, count: usize, prec: u32) -> MonicCoeffs {
    // standard Jacobi on [-1,1] with weight (1-u)^A (1+u)^B, A = b, B = a,
    // shifted by x = (u+1)/2: alpha -> (alpha+1)/2, beta -> beta/4
    let f = |v: i64| Float::with_val(prec, v);
    let cap_a = Float::with_val(prec, b);
    let cap_b = Float::with_val(prec, a);
    let apb = Float::with_val(prec, &cap_a + &cap_b);
    let mut alpha = Vec::with_capacity(count);
    let mut beta = Vec::with_capacity(count);
    for k in 0..count {
        let kf = f(k as i64);
        let den = Float::with_val(prec, &kf * &f(2)) + &apb;
        let al = if k == 0 {
            Float::with_val(prec, &cap_b - &cap_a) / Float::with_val(prec, &apb + &f(2))
        } else {
            let num = Float::with_val(prec, &cap_b * &cap_b) - Float::with_val(prec, &cap_a * &cap_a);
            num / (den.clone() * Float::with_val(prec, &den + &f(2)))
        };
        alpha.push(Float::with_val(prec, (al + 1u32) / 2u32));
        let be = if k == 0 {
            beta_function(
                &Float::with_val(prec, a + 1u32),
                &Float::with_val(prec, b + 1u32),
                prec,
            )
        } else if k == 1 {
            let num = Float::with_val(prec, 4)
                * Float::with_val(prec, &cap_a + &f(1))
                * Float::with_val(prec, &cap_b + &f(1));
            let d2 = Float::with_val(prec, &apb + &f(2));
            let d3 = Float::with_val(prec, &apb + &f(3));
            num / (d2.clone() * d2 * d3) / 4u32
        } else {
            let num = Float::with_val(prec, 4)
                * kf.clone()
                * Float::with_val(prec, &kf + &cap_a)
                * Float::with_val(prec, &kf + &cap_b)
                * Float::with_val(prec, &kf + &apb);
            let dm = Float::with_val(prec, &den - &f(1));
            let dp = Float::with_val(prec, &den + &f(1));
            num / (den.clone() * den * dp * dm) / 4u32
        };
        beta.push(be);
    }
    MonicCoeffs { alpha, beta }
}

/// Evaluate (pi_n, pi_n', pi_{n-1}) at x via the three-term recurrence.
fn eval_monic(coeffs: &MonicCoeffs, n: usize, x: &Float, prec: u32) -> (Float, Float, Float) {
    let mut p_prev = Float::with_val(prec, 0);
    let mut p = Float::with_val(prec, 1);
    let mut dp_prev = Float::with_val(prec, 0);
    let mut dp = Float::with_val(prec, 0);
    for k in 0..n {
        let xm = Float::with_val(prec, x - &coeffs.alpha[k]);
        let mut p_next = Float::with_val(prec, &xm * &p);
        let mut dp_next = Float::with_val(prec, &xm * &dp) + &p;
        if k > 0 {
            p_next -= Float::with_val(prec, &coeffs.beta[k] * &p_prev);
            dp_next -= Float::with_val(prec, &coeffs.beta[k] * &dp_prev);
        }
        p_prev = std::mem::replace(&mut p, p_next);
        dp_prev = std::mem::replace(&mut dp, dp_next);
    }
    (p, dp, p_prev)
}

/// True exactly when `x > bound`; NaN compares false.
fn strictly_above(x: &Float, bound: i32) -> bool {
    matches!(x.partial_cmp(&bound), Some(std::cmp::Ordering::Greater))
}

/// Build the n-point rule at the given bit precision.
pub fn jacobi_rule(a: &Float, b: &Float, n: usize, prec: u32) -> Result<JacobiRule, QuadratureError> {
    if n < 2 {
        return Err(QuadratureError::TooFewNodes);
    }
    if !strictly_above(a, -1) || !strictly_above(b, -1) || !a.is_finite() || !b.is_finite() {
        return Err(QuadratureError::InvalidExponents { a: a.to_string(), b: b.to_string() });
    }
    let work = prec + 64;
    let coeffs = monic_coeffs(a, b, n, work);

    // double-precision Golub-Welsch for starting guesses
    let mut jac = nalgebra::DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        jac[(k, k)] = coeffs.alpha[k].to_f64();
    }
    for k in 1..n {
        let e = coeffs.beta[k].to_f64().sqrt();
        jac[(k - 1, k)] = e;
        jac[(k, k - 1)] = e;
    }
    let eigen = nalgebra::SymmetricEigen::new(jac);
    let mut guesses: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    guesses.sort_by(f64::total_cmp);

    // Newton refinement at working precision
    let mut nodes = Vec::with_capacity(n);
    let stop = Float::with_val(work, 2).pow(-(prec as i32) - 16);
    for g in guesses {
        let mut x = Float::with_val(work, g);
        for _ in 0..100 {
            let (p, dp, _) = eval_monic(&coeffs, n, &x, work);
            if dp.is_zero() {
                return Err(QuadratureError::Degenerate("zero derivative at node".into()));
            }
            let dx = Float::with_val(work, &p / &dp);
            x -= &dx;
            if dx.abs() <= stop {
                break;
            }
        }
        nodes.push(x);
    }

    // nodes must be strictly increasing inside (0,1)
    for (i, x) in nodes.iter().enumerate() {
        let inside = strictly_above(x, 0) && x.partial_cmp(&1u32) == Some(std::cmp::Ordering::Less);
        if !inside {
            return Err(QuadratureError::Degenerate(format!("node {i} left the interval")));
        }
    }
    if nodes.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
        return Err(QuadratureError::Degenerate("nodes collided".into()));
    }

    // weights: prod(beta_k) / (pi_{n-1}(x) pi_n'(x)), beta_0 = total mass
    let mut beta_prod = Float::with_val(work, 1);
    for k in 0..n {
        beta_prod *= &coeffs.beta[k];
    }
    let mut weights = Vec::with_capacity(n);
    for x in &nodes {
        let (_, dp, p_nm1) = eval_monic(&coeffs, n, x, work);
        let w = Float::with_val(work, &beta_prod / &Float::with_val(work, &dp * &p_nm1));
        if !strictly_above(&w, 0) {
            return Err(QuadratureError::Degenerate("nonpositive weight".into()));
        }
        weights.push(Float::with_val(prec, w));
    }
    let nodes = nodes.into_iter().map(|x| Float::with_val(prec, x)).collect();
    Ok(JacobiRule { nodes, weights })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fl(prec: u32, v: f64) -> Float {
        Float::with_val(prec, v)
    }

    #[test]
    fn legendre_mass_and_moment() {
        let prec = 256;
        let rule = jacobi_rule(&fl(prec, 0.0), &fl(prec, 0.0), 24, prec).unwrap();
        let mass = rule.integrate(|_| Float::with_val(prec, 1));
        let err = Float::with_val(prec, &mass - &Float::with_val(prec, 1));
        assert!(err.abs() < fl(prec, 1e-60), "mass {mass}");
        // integral of x^3 over [0,1]
        let m3 = rule.integrate(|x| Float::with_val(prec, x * x) * x);
        let err = (m3 - Float::with_val(prec, 0.25)).abs();
        assert!(err < fl(prec, 1e-60));
    }

    #[test]
    fn singular_endpoint_rule_mass_is_beta_function() {
        let prec = 384;
        let a = fl(prec, 0.5);
        let b = fl(prec, 1.5);
        let rule = jacobi_rule(&a, &b, 40, prec).unwrap();
        let mass = rule.integrate(|_| Float::with_val(prec, 1));
        let expect = beta_function(&fl(prec, 1.5), &fl(prec, 2.5), prec);
        let err = Float::with_val(prec, &mass - &expect).abs();
        assert!(err < fl(prec, 1e-100), "mass {mass} expect {expect}");
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(matches!(
            jacobi_rule(&fl(64, -1.0), &fl(64, 0.0), 8, 64),
            Err(QuadratureError::InvalidExponents { .. })
        ));
        assert!(matches!(
            jacobi_rule(&fl(64, 0.0), &fl(64, 0.0), 1, 64),
            Err(QuadratureError::TooFewNodes)
        ));
    }

    #[test]
    fn beta_function_half_integer() {
        // B(1/2, 1/2) = pi
        let prec = 256;
        let v = beta_function(&fl(prec, 0.5), &fl(prec, 0.5), prec);
        let pi = Float::with_val(prec, rug::float::Constant::Pi);
        assert!(Float::with_val(prec, &v - &pi).abs() < fl(prec, 1e-70));
    }
}
