use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Rational, C64};

/// A field the evaluation routines can run over.
///
/// Exact types (`Rational`, `Complex<Rational>`) make every identity in this
/// crate checkable by equality; floating types trade that for speed.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// `true` when arithmetic is exact, so `==` is meaningful after elimination.
    const EXACT: bool;

    fn from_integer(n: &BigInt) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// Modulus as an `f64`; used for pivot selection only.
    fn magnitude(&self) -> f64;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> C64;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(&BigInt::from(n))
    }

    /// Integer power; negative exponents invert.
    fn powi(&self, exp: i64) -> Self {
        let mut base = if exp < 0 { Self::one() / self.clone() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

macro_rules! impl_real_float {
    ($f:ty) => {
        impl Scalar for $f {
            const EXACT: bool = false;
            fn from_integer(n: &BigInt) -> Self {
                n.to_f64().unwrap_or(f64::NAN) as $f
            }
            fn from_rational(q: &Rational) -> Self {
                q.to_f64().unwrap_or(f64::NAN) as $f
            }
            fn magnitude(&self) -> f64 {
                self.abs() as f64
            }
            fn conj(&self) -> Self {
                *self
            }
            fn to_c64(&self) -> C64 {
                C64::new(*self as f64, 0.0)
            }
        }

        impl Scalar for Complex<$f> {
            const EXACT: bool = false;
            fn from_integer(n: &BigInt) -> Self {
                Complex::new(<$f as Scalar>::from_integer(n), 0.0)
            }
            fn from_rational(q: &Rational) -> Self {
                Complex::new(<$f as Scalar>::from_rational(q), 0.0)
            }
            fn magnitude(&self) -> f64 {
                self.norm() as f64
            }
            fn conj(&self) -> Self {
                Complex::conj(self)
            }
            fn to_c64(&self) -> C64 {
                C64::new(self.re as f64, self.im as f64)
            }
        }
    };
}

impl_real_float!(f32);
impl_real_float!(f64);

impl Scalar for Rational {
    const EXACT: bool = true;
    fn from_integer(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn magnitude(&self) -> f64 {
        rational_to_f64(self).abs()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_c64(&self) -> C64 {
        C64::new(rational_to_f64(self), 0.0)
    }
}

impl Scalar for Complex<Rational> {
    const EXACT: bool = true;
    fn from_integer(n: &BigInt) -> Self {
        Complex::new(Rational::from_integer(n.clone()), Rational::zero())
    }
    fn from_rational(q: &Rational) -> Self {
        Complex::new(q.clone(), Rational::zero())
    }
    fn magnitude(&self) -> f64 {
        rational_to_f64(&self.norm_sqr()).sqrt()
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn to_c64(&self) -> C64 {
        C64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

/// Nearest `f64`, correct even when numerator and denominator overflow `f64`.
pub(crate) fn rational_to_f64(q: &Rational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() && (v != 0.0 || q.is_zero()) {
            return v;
        }
    }
    let num = q.numer();
    let den = q.denom();
    let shift = num.bits() as i64 - den.bits() as i64;
    // scale to a ratio near 1, then reapply the binary exponent
    let (n, d) = if shift > 0 {
        (num.clone(), den.clone() << (shift as usize))
    } else {
        (num.clone() << ((-shift) as usize), den.clone())
    };
    let ratio = Rational::new(n, d).to_f64().unwrap_or(f64::NAN);
    ratio * 2f64.powi(shift as i32)
}
