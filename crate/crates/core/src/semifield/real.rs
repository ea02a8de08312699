use super::Semifield;
use crate::error::{Error, Result};

/// Positive real number stored by its natural logarithm.
///
/// `oplus` is ordinary addition, computed as a log-sum-exp so that long
/// mutation sequences do not overflow.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct LogReal {
    ln: f64,
}

impl LogReal {
    pub fn from_value(x: f64) -> Result<Self> {
        if x > 0.0 && x.is_finite() {
            Ok(Self { ln: libm::log(x) })
        } else {
            Err(Error::Domain("positive real semifield needs a finite positive value".into()))
        }
    }

    pub fn from_ln(ln: f64) -> Self {
        Self { ln }
    }

    pub fn ln(&self) -> f64 {
        self.ln
    }

    pub fn value(&self) -> f64 {
        libm::exp(self.ln)
    }

    /// `self / (1 + self)`, computed stably.
    pub fn ratio_over_one_plus(&self) -> f64 {
        1.0 / (1.0 + libm::exp(-self.ln))
    }

    /// `1 / (1 + self)`, computed stably.
    pub fn inv_one_plus(&self) -> f64 {
        1.0 / (1.0 + libm::exp(self.ln))
    }
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + libm::log1p(libm::exp(lo - hi))
}

impl Semifield for LogReal {
    fn one_like(&self) -> Self {
        Self { ln: 0.0 }
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        Ok(Self { ln: self.ln + rhs.ln })
    }

    fn inv(&self) -> Result<Self> {
        Ok(Self { ln: -self.ln })
    }

    fn oplus(&self, rhs: &Self) -> Result<Self> {
        Ok(Self { ln: log_add_exp(self.ln, rhs.ln) })
    }

    fn pow(&self, e: i64) -> Result<Self> {
        Ok(Self { ln: self.ln * e as f64 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_ordinary_arithmetic() {
        let a = LogReal::from_value(2.0).unwrap();
        let b = LogReal::from_value(3.0).unwrap();
        assert!((a.oplus(&b).unwrap().value() - 5.0).abs() < 1e-12);
        assert!((a.mul(&b).unwrap().value() - 6.0).abs() < 1e-12);
        assert!((a.div(&b).unwrap().value() - 2.0 / 3.0).abs() < 1e-12);
        assert!((a.ratio_over_one_plus() - 2.0 / 3.0).abs() < 1e-15);
        assert!(LogReal::from_value(0.0).is_err());
    }

    #[test]
    fn large_values_do_not_overflow() {
        let a = LogReal::from_ln(2000.0);
        let s = a.oplus(&a).unwrap();
        assert!((s.ln() - (2000.0 + core::f64::consts::LN_2)).abs() < 1e-9);
    }
}
