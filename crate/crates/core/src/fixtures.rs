//! Small worked instances.

use crate::trinomial::Trinomial;

/// Panics on invalid input; meant for tests and examples.
pub fn tri(l0: &[u64], l1: &[u64], l2: &[u64]) -> Trinomial {
    Trinomial::new(l0.to_vec(), l1.to_vec(), l2.to_vec()).expect("valid exponent blocks")
}

/// `T01² T02³ + T11² + T21³`
pub fn ex1() -> Trinomial {
    tri(&[2, 3], &[2], &[3])
}

/// `T01 T02² + T11² + T21³`
pub fn ex2() -> Trinomial {
    tri(&[1, 2], &[2], &[3])
}

/// `T01² T02³ + T11² T12³ + T21⁵`
pub fn ex3() -> Trinomial {
    tri(&[2, 3], &[2, 3], &[5])
}

/// `T01 T02 + T11² + T21³`
pub fn ex4() -> Trinomial {
    tri(&[1, 1], &[2], &[3])
}
