use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// A dual number `st + du·ε` with `ε² = 0`.
///
/// Ordering is the lexicographic total order: the standard part decides and
/// the dual part breaks ties.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualNumber {
    /// Standard part.
    pub st: f64,
    /// Dual (infinitesimal) part.
    pub du: f64,
}

impl DualNumber {
    pub const ZERO: DualNumber = DualNumber { st: 0.0, du: 0.0 };
    pub const ONE: DualNumber = DualNumber { st: 1.0, du: 0.0 };
    /// The infinitesimal unit ε.
    pub const EPS: DualNumber = DualNumber { st: 0.0, du: 1.0 };

    #[inline]
    pub fn new(st: f64, du: f64) -> Self {
        debug_assert!(st.is_finite() && du.is_finite(), "non-finite dual number");
        DualNumber { st, du }
    }

    /// Checked constructor rejecting NaN and infinities.
    pub fn try_new(st: f64, du: f64) -> Result<Self> {
        if st.is_finite() && du.is_finite() {
            Ok(DualNumber { st, du })
        } else {
            Err(Error::NonFinite)
        }
    }

    #[inline]
    pub fn real(st: f64) -> Self {
        DualNumber { st, du: 0.0 }
    }

    #[inline]
    pub fn is_appreciable(&self) -> bool {
        self.st != 0.0
    }

    /// Division `self / divisor`.
    ///
    /// Defined when the divisor is appreciable, or when both standard parts
    /// vanish and the divisor's dual part does not. In the latter case the
    /// quotient's dual part is arbitrary and fixed to zero.
    pub fn checked_div(self, divisor: DualNumber) -> Result<DualNumber> {
        let (a, b) = (divisor, self);
        if a.st != 0.0 {
            let q = b.st / a.st;
            Ok(DualNumber::new(q, b.du / a.st - q * (a.du / a.st)))
        } else if b.st == 0.0 && a.du != 0.0 {
            Ok(DualNumber::new(b.du / a.du, 0.0))
        } else {
            Err(Error::DivisionUndefined)
        }
    }

    /// Dual absolute value: `|st| + sgn(st)·du·ε`, or `|du|·ε` when infinitesimal.
    pub fn abs(self) -> DualNumber {
        if self.st != 0.0 {
            DualNumber::new(self.st.abs(), self.st.signum() * self.du)
        } else {
            DualNumber::new(0.0, self.du.abs())
        }
    }

    /// `√st + du/(2√st)·ε`; only defined for a positive standard part.
    pub fn sqrt(self) -> Result<DualNumber> {
        if self.st > 0.0 {
            let r = self.st.sqrt();
            Ok(DualNumber::new(r, self.du / (2.0 * r)))
        } else {
            Err(Error::SqrtUndefined(self.st))
        }
    }

    #[inline]
    pub fn square(self) -> DualNumber {
        self * self
    }

    /// Lexicographic comparison.
    pub fn total_cmp(&self, other: &DualNumber) -> Ordering {
        match self.st.partial_cmp(&other.st) {
            Some(Ordering::Equal) | None => self.du.partial_cmp(&other.du).unwrap_or(Ordering::Equal),
            Some(ord) => ord,
        }
    }

    pub fn approx_eq(&self, other: &DualNumber, tol: f64) -> bool {
        (self.st - other.st).abs() <= tol && (self.du - other.du).abs() <= tol
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.st, self.du]
    }

    pub fn from_array(a: [f64; 2]) -> Result<Self> {
        DualNumber::try_new(a[0], a[1])
    }
}

impl PartialOrd for DualNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.total_cmp(other))
    }
}

impl From<f64> for DualNumber {
    fn from(st: f64) -> Self {
        DualNumber::real(st)
    }
}

impl Add for DualNumber {
    type Output = DualNumber;
    #[inline]
    fn add(self, rhs: DualNumber) -> DualNumber {
        DualNumber { st: self.st + rhs.st, du: self.du + rhs.du }
    }
}

impl AddAssign for DualNumber {
    #[inline]
    fn add_assign(&mut self, rhs: DualNumber) {
        *self = *self + rhs;
    }
}

impl Sub for DualNumber {
    type Output = DualNumber;
    #[inline]
    fn sub(self, rhs: DualNumber) -> DualNumber {
        DualNumber { st: self.st - rhs.st, du: self.du - rhs.du }
    }
}

impl SubAssign for DualNumber {
    #[inline]
    fn sub_assign(&mut self, rhs: DualNumber) {
        *self = *self - rhs;
    }
}

impl Neg for DualNumber {
    type Output = DualNumber;
    #[inline]
    fn neg(self) -> DualNumber {
        DualNumber { st: -self.st, du: -self.du }
    }
}

impl Mul for DualNumber {
    type Output = DualNumber;
    #[inline]
    fn mul(self, rhs: DualNumber) -> DualNumber {
        DualNumber {
            st: self.st * rhs.st,
            du: self.st * rhs.du + self.du * rhs.st,
        }
    }
}

impl Mul<f64> for DualNumber {
    type Output = DualNumber;
    #[inline]
    fn mul(self, rhs: f64) -> DualNumber {
        DualNumber { st: self.st * rhs, du: self.du * rhs }
    }
}

impl fmt::Display for DualNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.du.is_sign_negative() { '-' } else { '+' };
        match f.precision() {
            Some(p) => write!(f, "{:.*} {} {:.*}ε", p, self.st, sign, p, self.du.abs()),
            None => write!(f, "{} {} {}ε", self.st, sign, self.du.abs()),
        }
    }
}
