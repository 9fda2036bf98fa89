//! Orbit engines for the standard difference equation and the recurrence
//! form, the coordinate change between them, and the equivalence suite that
//! drives an orthogonal-polynomial orbit through both sets of relations.

pub mod base_points;
pub mod series;

use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StepError {
    #[error("singular step at index {index}: vanishing {denominator}")]
    SingularStep { index: i64, denominator: &'static str },
    #[error("indeterminate point: vanishing {denominator}")]
    IndeterminatePoint { denominator: &'static str },
}

/// State of the standard orbit: root variables, time parameter, point.
#[derive(Clone, Debug, PartialEq)]
pub struct StdOrbitState<T: Scalar> {
    pub a: [T; 4],
    pub t: T,
    pub f: T,
    pub g: T,
    pub step_index: i64,
}

/// State of the recurrence orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct RecOrbitState<T: Scalar> {
    pub alpha: T,
    pub beta: T,
    pub s: T,
    pub n: i64,
    pub x: T,
    pub y: T,
}

/// One forward step of the standard equation, half-step convention: the
/// f-line is evaluated at the current parameters, the parameters are
/// updated by (+1,-1,+1,-1), and the g-line is evaluated at the updated
/// parameters.
pub fn std_step_forward<T: Scalar>(st: &StdOrbitState<T>) -> Result<StdOrbitState<T>, StepError> {
    let one = st.t.one_like();
    let idx = st.step_index;
    let sing = |den: &'static str| StepError::SingularStep { index: idx, denominator: den };

    if st.g.is_zero() {
        return Err(sing("g"));
    }
    let gt = st.g.add(&st.t);
    if gt.is_zero() {
        return Err(sing("g + t"));
    }
    // fbar = 1 - a2/g - a0/(g+t) - f
    let fbar = one
        .sub(&st.a[2].div(&st.g))
        .sub(&st.a[0].div(&gt))
        .sub(&st.f);
    let abar = [
        st.a[0].add(&one),
        st.a[1].sub(&one),
        st.a[2].add(&one),
        st.a[3].sub(&one),
    ];
    if fbar.is_zero() {
        return Err(sing("fbar"));
    }
    let fbar_m1 = fbar.sub(&one);
    if fbar_m1.is_zero() {
        return Err(sing("fbar - 1"));
    }
    // gbar = -t + abar1/fbar + abar3/(fbar-1) - g
    let gbar = st
        .t
        .neg()
        .add(&abar[1].div(&fbar))
        .add(&abar[3].div(&fbar_m1))
        .sub(&st.g);
    Ok(StdOrbitState { a: abar, t: st.t.clone(), f: fbar, g: gbar, step_index: idx + 1 })
}

/// Inverse of `std_step_forward` where defined.
pub fn std_step_backward<T: Scalar>(st: &StdOrbitState<T>) -> Result<StdOrbitState<T>, StepError> {
    let one = st.t.one_like();
    let idx = st.step_index;
    let sing = |den: &'static str| StepError::SingularStep { index: idx, denominator: den };

    if st.f.is_zero() {
        return Err(sing("f"));
    }
    let fm1 = st.f.sub(&one);
    if fm1.is_zero() {
        return Err(sing("f - 1"));
    }
    // gunder = -t + a1/f + a3/(f-1) - g, at the current parameters
    let gunder = st
        .t
        .neg()
        .add(&st.a[1].div(&st.f))
        .add(&st.a[3].div(&fm1))
        .sub(&st.g);
    let aunder = [
        st.a[0].sub(&one),
        st.a[1].add(&one),
        st.a[2].sub(&one),
        st.a[3].add(&one),
    ];
    if gunder.is_zero() {
        return Err(sing("gunder"));
    }
    let gt = gunder.add(&st.t);
    if gt.is_zero() {
        return Err(sing("gunder + t"));
    }
    // funder = 1 - aunder2/gunder - aunder0/(gunder+t) - f
    let funder = one
        .sub(&aunder[2].div(&gunder))
        .sub(&aunder[0].div(&gt))
        .sub(&st.f);
    Ok(StdOrbitState { a: aunder, t: st.t.clone(), f: funder, g: gunder, step_index: idx - 1 })
}

/// First half-map of the recurrence: x alone moves, y is untouched.
pub fn rec_forward_x<T: Scalar>(st: &RecOrbitState<T>) -> Result<T, StepError> {
    let idx = st.n;
    let sing = |den: &'static str| StepError::SingularStep { index: idx, denominator: den };
    if st.x.is_zero() {
        return Err(sing("x"));
    }
    if st.s.is_zero() {
        return Err(sing("s"));
    }
    let n = st.x.int_like(st.n);
    let y = &st.y;
    let ypa = y.add(&st.alpha);
    if y.is_zero() || ypa.is_zero() {
        return Err(sing("y (y + alpha)"));
    }
    // (y - n)(y - n - beta) / (s^2 x y (y + alpha))
    let num = y.sub(&n).mul(&y.sub(&n).sub(&st.beta));
    let den = st.s.mul(&st.s).mul(&st.x).mul(y).mul(&ypa);
    Ok(num.div(&den))
}

/// One forward step of the recurrence: the x half-map followed by the
/// y half-map at index n+1.
pub fn rec_step_forward<T: Scalar>(st: &RecOrbitState<T>) -> Result<RecOrbitState<T>, StepError> {
    let idx = st.n;
    let sing = |den: &'static str| StepError::SingularStep { index: idx, denominator: den };
    let xbar = rec_forward_x(st)?;
    let one = st.x.one_like();
    let omsx = one.sub(&st.s.mul(&xbar));
    if omsx.is_zero() {
        return Err(sing("1 - s*x_{n+1}"));
    }
    // ybar = -y - [alpha s^2 xbar^2 + s(2(n+1)-1-alpha+beta+s) xbar - 2(n+1)-beta+1] / (1-s xbar)^2
    let np1 = st.x.int_like(st.n + 1);
    let two = st.x.int_like(2);
    let coeff = two
        .mul(&np1)
        .sub(&one)
        .sub(&st.alpha)
        .add(&st.beta)
        .add(&st.s);
    let p = st
        .alpha
        .mul(&st.s)
        .mul(&st.s)
        .mul(&xbar)
        .mul(&xbar)
        .add(&st.s.mul(&coeff).mul(&xbar))
        .sub(&two.mul(&np1))
        .sub(&st.beta)
        .add(&one);
    let ybar = st.y.neg().sub(&p.div(&omsx.mul(&omsx)));
    Ok(RecOrbitState {
        alpha: st.alpha.clone(),
        beta: st.beta.clone(),
        s: st.s.clone(),
        n: st.n + 1,
        x: xbar,
        y: ybar,
    })
}

/// Recurrence coordinates -> standard coordinates: returns (f, g, t) with
/// t = -s.
pub fn to_fg<T: Scalar>(x: &T, y: &T, n: i64, s: &T) -> Result<(T, T, T), StepError> {
    let one = x.one_like();
    let nn = x.int_like(n);
    if s.is_zero() || x.is_zero() {
        return Err(StepError::IndeterminatePoint { denominator: "s^2 x" });
    }
    let omsx = one.sub(&s.mul(x));
    // f = (1 - s x)(n - y + s x y) / (s^2 x)
    let f = omsx
        .mul(&nn.sub(y).add(&s.mul(x).mul(y)))
        .div(&s.mul(s).mul(x));
    let gden = omsx.mul(y).sub(&nn);
    if gden.is_zero() {
        return Err(StepError::IndeterminatePoint { denominator: "(1 - s x) y - n" });
    }
    // g = s (y - n) / ((1 - s x) y - n)
    let g = s.mul(&y.sub(&nn)).div(&gden);
    Ok((f, g, s.neg()))
}

/// Standard coordinates -> recurrence coordinates: returns (x, y, s) with
/// s = -t.
pub fn to_xy<T: Scalar>(f: &T, g: &T, n: i64, t: &T) -> Result<(T, T, T), StepError> {
    let nn = f.int_like(n);
    if t.is_zero() {
        return Err(StepError::IndeterminatePoint { denominator: "t" });
    }
    let fgn = f.mul(g).add(&nn);
    if fgn.is_zero() {
        return Err(StepError::IndeterminatePoint { denominator: "t (f g + n)" });
    }
    let gt = g.add(t);
    // x = -(f (g + t) + n) / (t (f g + n))
    let x = f.mul(&gt).add(&nn).neg().div(&t.mul(&fgn));
    // y = (f g + n)(g + t) / t
    let y = fgn.mul(&gt).div(t);
    Ok((x, y, t.neg()))
}

/// Root variables of the recurrence orbit at index n:
/// (n + beta, -n, n + alpha, 1 - n - alpha - beta). They sum to one.
pub fn root_variables<T: Scalar>(n: i64, alpha: &T, beta: &T) -> [T; 4] {
    let nn = alpha.int_like(n);
    let one = alpha.one_like();
    [
        nn.add(beta),
        nn.neg(),
        nn.add(alpha),
        one.sub(&nn).sub(alpha).sub(beta),
    ]
}

mod equivalence;
pub use equivalence::verify_equivalence;
