//! Truncated Laurent series in one probe parameter over exact rationals.
//!
//! Just enough arithmetic to expand the half-map images along probe curves
//! and read off exact leading coefficients; not a general series type.

use rug::Rational;

/// Number of retained coefficients. The probe expressions are low-degree
/// rational functions, so a short window is ample.
const ORDER: usize = 10;

/// `sum_{i} c[i] * eps^(val + i)`, truncated to ORDER known coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsSeries {
    val: i64,
    c: Vec<Rational>,
}

impl EpsSeries {
    pub fn zero() -> Self {
        EpsSeries { val: 0, c: vec![Rational::new(); ORDER] }
    }

    pub fn constant(q: Rational) -> Self {
        let mut s = EpsSeries::zero();
        s.c[0] = q;
        s.normalize()
    }

    pub fn from_i64(v: i64) -> Self {
        EpsSeries::constant(Rational::from(v))
    }

    /// The probe parameter itself.
    pub fn eps() -> Self {
        let mut s = EpsSeries::zero();
        s.val = 1;
        s.c[0] = Rational::from(1);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|q| *q == 0)
    }

    fn normalize(mut self) -> Self {
        let lead = self.c.iter().position(|q| *q != 0);
        match lead {
            None => EpsSeries::zero(),
            Some(0) => self,
            Some(k) => {
                self.val += k as i64;
                self.c.drain(..k);
                self.c.resize(ORDER, Rational::new());
                self
            }
        }
    }

    /// Valuation (order of the leading term). None for the zero series.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        if self.is_zero() {
            None
        } else {
            Some(&self.c[0])
        }
    }

    /// Value of the series at eps -> 0: None if it has a pole, 0 if it
    /// vanishes, the constant coefficient otherwise.
    pub fn limit(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::new());
        }
        match self.val {
            v if v > 0 => Some(Rational::new()),
            0 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, rhs: &EpsSeries) -> EpsSeries {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let val = self.val.min(rhs.val);
        let mut c = vec![Rational::new(); ORDER];
        for (i, coeff) in c.iter_mut().enumerate() {
            let k = val + i as i64;
            let a = self.coeff_at(k);
            let b = rhs.coeff_at(k);
            *coeff = Rational::from(&a + &b);
        }
        EpsSeries { val, c }.normalize()
    }

    fn coeff_at(&self, power: i64) -> Rational {
        let idx = power - self.val;
        if idx < 0 || idx >= ORDER as i64 {
            Rational::new()
        } else {
            self.c[idx as usize].clone()
        }
    }

    pub fn neg(&self) -> EpsSeries {
        let mut out = self.clone();
        for q in out.c.iter_mut() {
            *q = Rational::from(-&*q);
        }
        out
    }

    pub fn sub(&self, rhs: &EpsSeries) -> EpsSeries {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &EpsSeries) -> EpsSeries {
        if self.is_zero() || rhs.is_zero() {
            return EpsSeries::zero();
        }
        let val = self.val + rhs.val;
        let mut c = vec![Rational::new(); ORDER];
        for i in 0..ORDER {
            for j in 0..(ORDER - i) {
                let prod = Rational::from(&self.c[i] * &rhs.c[j]);
                c[i + j] += prod;
            }
        }
        EpsSeries { val, c }.normalize()
    }

    /// Multiplicative inverse; panics on the zero series.
    pub fn inv(&self) -> EpsSeries {
        assert!(!self.is_zero(), "cannot invert the zero series");
        // write self = lead * eps^val * (1 + u), invert the unit part
        let mut unit = vec![Rational::new(); ORDER];
        for (i, q) in unit.iter_mut().enumerate() {
            *q = Rational::from(&self.c[i] / &self.c[0]);
        }
        let mut inv_unit = vec![Rational::new(); ORDER];
        inv_unit[0] = Rational::from(1);
        for k in 1..ORDER {
            let mut acc = Rational::new();
            for j in 0..k {
                acc += Rational::from(&inv_unit[j] * &unit[k - j]);
            }
            inv_unit[k] = -acc;
        }
        let lead_inv = Rational::from(1) / self.c[0].clone();
        let mut c = vec![Rational::new(); ORDER];
        for (i, q) in inv_unit.iter().enumerate() {
            c[i] = Rational::from(q * &lead_inv);
        }
        EpsSeries { val: -self.val, c }.normalize()
    }

    pub fn div(&self, rhs: &EpsSeries) -> EpsSeries {
        self.mul(&rhs.inv())
    }

    pub fn scale(&self, q: &Rational) -> EpsSeries {
        self.mul(&EpsSeries::constant(q.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn arithmetic_and_limits() {
        let e = EpsSeries::eps();
        let one = EpsSeries::from_i64(1);
        // (1 + eps) * (1 - eps) = 1 - eps^2
        let lhs = one.add(&e).mul(&one.sub(&e));
        assert_eq!(lhs, one.sub(&e.mul(&e)));
        // 1/(1+eps) has constant term 1 and eps-coefficient -1
        let inv = one.add(&e).inv();
        assert_eq!(inv.limit(), Some(q(1, 1)));
        assert_eq!(inv.coeff_at(1), q(-1, 1));
        // eps / eps = 1
        assert_eq!(e.div(&e).limit(), Some(q(1, 1)));
        // 1/eps has a pole
        assert_eq!(one.div(&e).limit(), None);
        assert_eq!(one.div(&e).valuation(), Some(-1));
        // eps^2 -> 0
        assert_eq!(e.mul(&e).limit(), Some(Rational::new()));
    }

    #[test]
    fn cancellation_shifts_valuation() {
        let e = EpsSeries::eps();
        let one = EpsSeries::from_i64(1);
        let diff = one.add(&e).sub(&one);
        assert_eq!(diff.valuation(), Some(1));
        assert_eq!(diff.leading_coefficient(), Some(&q(1, 1)));
        let z = diff.sub(&e);
        assert!(z.is_zero());
        assert_eq!(z.limit(), Some(Rational::new()));
    }
}
