use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::{DualNumber, Quaternion, UNIT_TOL};
use crate::error::{Error, Result};

/// Dual quaternion `st + du·ε` over quaternions.
///
/// Unit dual quaternions (`|st| = 1`, `st·du* + du·st* = 0`) represent rigid
/// body poses.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualQuaternion {
    pub st: Quaternion,
    pub du: Quaternion,
}

impl DualQuaternion {
    pub const ZERO: DualQuaternion = DualQuaternion { st: Quaternion::ZERO, du: Quaternion::ZERO };
    pub const ONE: DualQuaternion = DualQuaternion { st: Quaternion::ONE, du: Quaternion::ZERO };

    #[inline]
    pub const fn new(st: Quaternion, du: Quaternion) -> Self {
        DualQuaternion { st, du }
    }

    /// Embeds a dual number as `[a.st,0,0,0] + [a.du,0,0,0]ε`.
    #[inline]
    pub fn from_dual(a: DualNumber) -> Self {
        DualQuaternion::new(Quaternion::real(a.st), Quaternion::real(a.du))
    }

    #[inline]
    pub fn real(w: f64) -> Self {
        DualQuaternion::new(Quaternion::real(w), Quaternion::ZERO)
    }

    #[inline]
    pub fn is_appreciable(&self) -> bool {
        !self.st.is_zero()
    }

    #[inline]
    pub fn conj(self) -> Self {
        DualQuaternion::new(self.st.conj(), self.du.conj())
    }

    /// Unit test on both conditions with the default tolerance.
    pub fn is_unit(&self) -> bool {
        self.is_unit_within(UNIT_TOL)
    }

    pub fn is_unit_within(&self, tol: f64) -> bool {
        let cross = self.st * self.du.conj() + self.du * self.st.conj();
        (self.st.norm() - 1.0).abs() <= tol && cross.norm() <= tol
    }

    /// Dual-number magnitude `|st| + sc(st*·du)/|st|·ε`, or `|du|·ε` when infinitesimal.
    pub fn magnitude(&self) -> DualNumber {
        if self.is_appreciable() {
            let n = self.st.norm();
            DualNumber::new(n, (self.st.conj() * self.du).sc() / n)
        } else {
            DualNumber::new(0.0, self.du.norm())
        }
    }

    /// The ℓ2*-norm `|st| + |du|²/(2|st|)·ε`, or `|du|·ε` when infinitesimal.
    pub fn mag2star(&self) -> DualNumber {
        if self.is_appreciable() {
            let n = self.st.norm();
            DualNumber::new(n, self.du.norm_sq() / (2.0 * n))
        } else {
            DualNumber::new(0.0, self.du.norm())
        }
    }

    /// `|q|²` as a dual number: `|st|² + 2·sc(st*·du)·ε`.
    #[inline]
    pub fn magnitude_sq(&self) -> DualNumber {
        DualNumber::new(self.st.norm_sq(), 2.0 * self.st.dot(self.du))
    }

    /// Division by a dual number. When both `a.st` and `st` vanish the
    /// quotient's free dual part is fixed to zero.
    pub fn checked_div_dual(self, a: DualNumber) -> Result<DualQuaternion> {
        if a.st != 0.0 {
            let st = self.st / a.st;
            Ok(DualQuaternion::new(st, self.du / a.st - st * (a.du / a.st)))
        } else if self.st.is_zero() && a.du != 0.0 {
            Ok(DualQuaternion::new(self.du / a.du, Quaternion::ZERO))
        } else {
            Err(Error::DivisionUndefined)
        }
    }

    /// Scalar parts `(st.w, du.w)` as a dual number.
    #[inline]
    pub fn scalar_part(&self) -> DualNumber {
        DualNumber::new(self.st.w, self.du.w)
    }

    /// Largest magnitude among the vector parts of `st` and `du`.
    pub fn vector_part_norm(&self) -> f64 {
        self.st.vector_norm().max(self.du.vector_norm())
    }

    /// Squared Euclidean norm over all eight components.
    #[inline]
    pub fn norm_2r_sq(&self) -> f64 {
        self.st.norm_sq() + self.du.norm_sq()
    }

    #[inline]
    pub fn norm_2r(&self) -> f64 {
        self.norm_2r_sq().sqrt()
    }

    pub fn approx_eq(&self, other: &DualQuaternion, tol: f64) -> bool {
        self.st.approx_eq(&other.st, tol) && self.du.approx_eq(&other.du, tol)
    }

    pub fn is_finite(&self) -> bool {
        self.st.is_finite() && self.du.is_finite()
    }

    /// `[w_st, x_st, y_st, z_st, w_du, x_du, y_du, z_du]`
    pub fn to_array(self) -> [f64; 8] {
        let (s, d) = (self.st, self.du);
        [s.w, s.x, s.y, s.z, d.w, d.x, d.y, d.z]
    }

    pub fn from_array(a: [f64; 8]) -> Result<Self> {
        if a.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(DualQuaternion::new(
            Quaternion::new(a[0], a[1], a[2], a[3]),
            Quaternion::new(a[4], a[5], a[6], a[7]),
        ))
    }
}

impl From<DualNumber> for DualQuaternion {
    fn from(a: DualNumber) -> Self {
        DualQuaternion::from_dual(a)
    }
}

impl Add for DualQuaternion {
    type Output = DualQuaternion;
    #[inline]
    fn add(self, r: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(self.st + r.st, self.du + r.du)
    }
}

impl AddAssign for DualQuaternion {
    #[inline]
    fn add_assign(&mut self, r: DualQuaternion) {
        self.st += r.st;
        self.du += r.du;
    }
}

impl Sub for DualQuaternion {
    type Output = DualQuaternion;
    #[inline]
    fn sub(self, r: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(self.st - r.st, self.du - r.du)
    }
}

impl SubAssign for DualQuaternion {
    #[inline]
    fn sub_assign(&mut self, r: DualQuaternion) {
        self.st -= r.st;
        self.du -= r.du;
    }
}

impl Neg for DualQuaternion {
    type Output = DualQuaternion;
    #[inline]
    fn neg(self) -> DualQuaternion {
        DualQuaternion::new(-self.st, -self.du)
    }
}

impl Mul for DualQuaternion {
    type Output = DualQuaternion;
    #[inline]
    fn mul(self, q: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(self.st * q.st, self.st * q.du + self.du * q.st)
    }
}

/// Dual numbers commute with dual quaternions.
impl Mul<DualNumber> for DualQuaternion {
    type Output = DualQuaternion;
    #[inline]
    fn mul(self, a: DualNumber) -> DualQuaternion {
        DualQuaternion::new(self.st * a.st, self.st * a.du + self.du * a.st)
    }
}

impl Mul<DualQuaternion> for DualNumber {
    type Output = DualQuaternion;
    #[inline]
    fn mul(self, q: DualQuaternion) -> DualQuaternion {
        q * self
    }
}

impl Mul<f64> for DualQuaternion {
    type Output = DualQuaternion;
    #[inline]
    fn mul(self, s: f64) -> DualQuaternion {
        DualQuaternion::new(self.st * s, self.du * s)
    }
}

impl fmt::Display for DualQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ε", self.st, self.du)
    }
}
