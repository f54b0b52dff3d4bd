//! Exact integer arithmetic: factorization, divisor and prime-factor counts,
//! the `s q k` decomposition, multiplicative orders, and characters modulo a prime.

mod character;
mod decompose;
mod factor;
mod modulus;
mod order;

pub use character::{characters, primitive_root, CharacterTable, MAX_CHARACTER_PRIME};
pub(crate) use decompose::check_odd_modulus;
pub use decompose::{classify, decompose, decompose_factored, Decomposition, Membership};
pub use factor::{factorize, gcd, is_prime, mul_mod, pow_mod, Factorization};
pub use modulus::{alpha, divisors, ModulusContext};
pub use order::{carmichael, multiplicative_order};

/// `tau(n)` for a factorization; see [`Factorization::tau`].
pub fn tau(f: &Factorization) -> crate::Result<u64> {
    f.tau()
}

/// `omega(n)` for a factorization; see [`Factorization::omega`].
pub fn omega(f: &Factorization) -> usize {
    f.omega()
}
