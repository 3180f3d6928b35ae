use std::fmt::Debug;

use num_traits::{One, Zero};

use super::rational::Rational;

/// Commutative ring with identity, as needed by the dense matrix code.
///
/// Identity elements and zero tests come from `num_traits`; the by-reference
/// operations avoid cloning big coefficients in inner loops.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + Zero + One {
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

/// Rings where `a / b` can be taken whenever `b` divides `a`.
///
/// Returns `None` when the division is not exact.
pub trait ExactDiv: Ring {
    fn exact_div(&self, other: &Self) -> Option<Self>;
}

impl Ring for Rational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl ExactDiv for Rational {
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            None
        } else {
            Some(self / other)
        }
    }
}

/// Implements owned `Add`/`Mul` plus `Zero`/`One` in terms of [`Ring`].
macro_rules! ring_boilerplate {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::algebra::ring::Ring::add_ref(&self, &rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::algebra::ring::Ring::mul_ref(&self, &rhs)
            }
        }
    };
}
pub(crate) use ring_boilerplate;
