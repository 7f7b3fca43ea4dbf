//! Exact number theory over Q.

mod factor;
mod quadfield;
mod symbols;

pub use factor::{factor, factor_integer, is_prime, jacobi, small_primes, PrimeFactorization};
pub use quadfield::QuadFieldElement;
pub use symbols::{
    hilbert_symbol, is_norm_of, is_perfect_power, is_sum_of_two_rational_squares,
    legendre_symbol, relevant_places, squarefree_part, Place,
};
