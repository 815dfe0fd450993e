#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace paley {

using cplx = std::complex<double>;

/// Exact arithmetic in F_p together with the tables every character-sum
/// kernel is built on: Legendre symbols, a primitive root with its discrete
/// logs, and the additive/multiplicative roots of unity.
///
/// Immutable after construction; safe to share across threads.
class PrimeContext {
public:
    explicit PrimeContext(int64_t p);

    int64_t p() const { return p_; }
    bool is_one_mod_four() const { return p_ % 4 == 1; }

    /// Smallest primitive root of F_p^x.
    int64_t generator() const { return generator_; }

    int64_t reduce(int64_t a) const {
        int64_t r = a % p_;
        return r < 0 ? r + p_ : r;
    }

    /// Legendre symbol chi(a) in {-1, 0, +1}.
    int legendre(int64_t a) const { return legendre_[reduce(a)]; }

    /// e_p(x) = exp(2*pi*i*x / p).
    cplx additive_character(int64_t x) const { return unity_[reduce(x)]; }

    /// Multiplicative character phi_j with phi_j(h^k) = exp(2*pi*i*j*k/(p-1))
    /// and phi_j(0) = 0.  j = (p-1)/2 is the Legendre symbol.
    cplx mult_character(int64_t j, int64_t a) const;

    /// Discrete log base the primitive root; a must be nonzero mod p.
    int64_t dlog(int64_t a) const;

    /// Multiplicative inverse; a must be nonzero mod p.
    int64_t inverse(int64_t a) const;

    int64_t mul(int64_t a, int64_t b) const { return (reduce(a) * reduce(b)) % p_; }

    /// a^e mod p by binary exponentiation.
    static int64_t pow_mod(int64_t a, int64_t e, int64_t p);

    /// Deterministic Miller-Rabin, valid for all 64-bit inputs used here.
    static bool is_prime(int64_t n);

private:
    int64_t p_ = 0;
    int64_t generator_ = 0;
    std::vector<int8_t> legendre_;
    std::vector<int64_t> dlog_;    // dlog_[h^k mod p] = k, dlog_[0] = -1
    std::vector<int64_t> inv_;     // inv_[a] for a != 0
    std::vector<cplx> unity_;      // exp(2 pi i k / p)
    std::vector<cplx> unity_pm1_;  // exp(2 pi i k / (p-1))
};

PrimeContext make_context(int64_t p);

/// Primes congruent to 1 mod 4 in [lo, hi], via sieve.
std::vector<int64_t> paley_primes(int64_t lo, int64_t hi);

}  // namespace paley
