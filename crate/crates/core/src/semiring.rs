//! Semiring interfaces shared by the matrix layer and the maximal-solution solver.

use std::fmt::Debug;

/// A commutative semiring with additive identity [`Semiring::zero`] and
/// multiplicative identity [`Semiring::one`].
pub trait Semiring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

/// A semiring with `a + a = a`. Such a semiring carries the induced order
/// `a <= b  iff  a + b = b`.
pub trait IdempotentSemiring: Semiring {
    fn leq(&self, rhs: &Self) -> bool {
        self.add(rhs) == *rhs
    }
}

/// What the maximal-solution solver needs from a semiring.
///
/// `max_component(h, y)` must return the greatest `x` (in the induced order)
/// with `x*h + y = y`, and `meet` the greatest lower bound of two elements.
pub trait Residuated: IdempotentSemiring {
    fn max_component(h: &Self, y: &Self) -> Self;
    fn meet(&self, rhs: &Self) -> Self;
}
