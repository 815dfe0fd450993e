#include "paley/prime_field.hpp"

#include <cmath>
#include <numbers>

namespace paley {

int64_t PrimeContext::pow_mod(int64_t a, int64_t e, int64_t p) {
    a %= p;
    if (a < 0) a += p;
    int64_t r = 1;
    while (e > 0) {
        if (e & 1) r = (__int128)r * a % p;
        a = (__int128)a * a % p;
        e >>= 1;
    }
    return r;
}

bool PrimeContext::is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    int64_t d = n - 1;
    int s = 0;
    while (d % 2 == 0) { d /= 2; ++s; }
    // This base set is deterministic for n < 3.3 * 10^24.
    for (int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        int64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = (__int128)x * x % n;
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

std::vector<int64_t> prime_factors(int64_t n) {
    std::vector<int64_t> fs;
    for (int64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            fs.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

}  // namespace

PrimeContext::PrimeContext(int64_t p) : p_(p) {
    if (p < 3) throw std::invalid_argument("p must be at least 3");
    if (!is_prime(p)) throw std::invalid_argument("p is composite");

    // Legendre symbols by Euler's criterion, cached once.
    legendre_.assign(p, 0);
    for (int64_t a = 1; a < p; ++a) {
        int64_t e = pow_mod(a, (p - 1) / 2, p);
        legendre_[a] = (e == 1) ? 1 : -1;
    }

    // Smallest primitive root: order check against the factorization of p-1.
    auto fs = prime_factors(p - 1);
    for (int64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (int64_t q : fs) {
            if (pow_mod(g, (p - 1) / q, p) == 1) { ok = false; break; }
        }
        if (ok) { generator_ = g; break; }
    }

    dlog_.assign(p, -1);
    inv_.assign(p, 0);
    int64_t x = 1;
    for (int64_t k = 0; k < p - 1; ++k) {
        dlog_[x] = k;
        x = (__int128)x * generator_ % p;
    }
    for (int64_t a = 1; a < p; ++a) inv_[a] = pow_mod(a, p - 2, p);

    unity_.resize(p);
    for (int64_t k = 0; k < p; ++k) {
        double t = 2.0 * std::numbers::pi * (double)k / (double)p;
        unity_[k] = cplx(std::cos(t), std::sin(t));
    }
    unity_pm1_.resize(p - 1);
    for (int64_t k = 0; k < p - 1; ++k) {
        double t = 2.0 * std::numbers::pi * (double)k / (double)(p - 1);
        unity_pm1_[k] = cplx(std::cos(t), std::sin(t));
    }
}

cplx PrimeContext::mult_character(int64_t j, int64_t a) const {
    if (j < 0 || j > p_ - 2) throw std::out_of_range("character index out of range");
    int64_t r = reduce(a);
    if (r == 0) return cplx(0.0, 0.0);
    int64_t k = dlog_[r];
    return unity_pm1_[(j * k) % (p_ - 1)];
}

int64_t PrimeContext::dlog(int64_t a) const {
    int64_t r = reduce(a);
    if (r == 0) throw std::domain_error("dlog of zero");
    return dlog_[r];
}

int64_t PrimeContext::inverse(int64_t a) const {
    int64_t r = reduce(a);
    if (r == 0) throw std::domain_error("inverse of zero");
    return inv_[r];
}

PrimeContext make_context(int64_t p) { return PrimeContext(p); }

std::vector<int64_t> paley_primes(int64_t lo, int64_t hi) {
    std::vector<int64_t> out;
    if (hi < 5) return out;
    std::vector<bool> sieve(hi + 1, true);
    for (int64_t i = 2; i * i <= hi; ++i)
        if (sieve[i])
            for (int64_t j = i * i; j <= hi; j += i) sieve[j] = false;
    for (int64_t n = std::max<int64_t>(lo, 5); n <= hi; ++n)
        if (sieve[n] && n % 4 == 1) out.push_back(n);
    return out;
}

}  // namespace paley
