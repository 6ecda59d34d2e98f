#pragma once

/**
 * @file numtheory.hpp
 * @brief Primes in arithmetic progressions and the Chebyshev-type counting
 * functions pi_{d,a}, theta_{d,a}, psi_{d,a}.
 *
 * All counting functions are backed by an immutable PrimeTable built from a
 * flat sieve of Eratosthenes. psi_{d,a} puts the congruence on the prime
 * power p^l, not on p, so 9 = 3^2 contributes log 3 to psi_{4,1}.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace udist {

/// Residue class a mod d with gcd(a, d) = 1 and 0 < a < d (a = 1 allowed for d = 1).
class APClass {
public:
    APClass(std::int64_t d, std::int64_t a) : d_(d), a_(a) {
        if (d < 1)
            throw std::invalid_argument("APClass: modulus must be positive");
        if (a < 1 || (d > 1 && a >= d) || (d == 1 && a != 1))
            throw std::invalid_argument("APClass: residue must satisfy 0 < a < d");
        if (std::gcd(a, d) != 1)
            throw std::invalid_argument("APClass: gcd(a, d) must be 1");
    }

    std::int64_t modulus() const { return d_; }
    std::int64_t residue() const { return a_; }

    bool contains(std::int64_t x) const { return ((x % d_) + d_) % d_ == a_ % d_; }

private:
    std::int64_t d_;
    std::int64_t a_;
};

/// Deterministic primality for 64-bit inputs (Miller-Rabin with the first 12 prime bases).
inline bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0)
            return n == p;
    }
    auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
    };
    auto powmod = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1)
                r = mulmod(r, b);
            b = mulmod(b, b);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

inline std::int64_t euler_phi(std::int64_t d) {
    if (d < 1)
        throw std::invalid_argument("euler_phi: d must be positive");
    std::int64_t result = d;
    for (std::int64_t p = 2; p * p <= d; ++p) {
        if (d % p == 0) {
            while (d % p == 0)
                d /= p;
            result -= result / p;
        }
    }
    if (d > 1)
        result -= result / d;
    return result;
}

/// All primes up to a limit. Immutable after construction.
class PrimeTable {
public:
    explicit PrimeTable(std::int64_t limit) : limit_(std::max<std::int64_t>(limit, 0)) {
        if (limit_ > std::int64_t{1} << 33)
            throw std::invalid_argument("PrimeTable: limit too large for a flat sieve");
        std::vector<bool> composite(static_cast<std::size_t>(limit_) + 1, false);
        for (std::int64_t i = 2; i <= limit_; ++i) {
            if (composite[static_cast<std::size_t>(i)])
                continue;
            primes_.push_back(i);
            for (std::int64_t j = i * i; j <= limit_; j += i)
                composite[static_cast<std::size_t>(j)] = true;
        }
    }

    std::int64_t limit() const { return limit_; }
    const std::vector<std::int64_t>& primes() const { return primes_; }

private:
    std::int64_t limit_;
    std::vector<std::int64_t> primes_;
};

inline std::vector<std::int64_t> primes_in_ap(const PrimeTable& table, std::int64_t limit,
                                              const APClass& cls) {
    if (limit > table.limit())
        throw std::invalid_argument("primes_in_ap: limit exceeds prime table");
    std::vector<std::int64_t> out;
    for (std::int64_t p : table.primes()) {
        if (p > limit)
            break;
        if (cls.contains(p))
            out.push_back(p);
    }
    return out;
}

inline std::vector<std::int64_t> primes_in_ap(std::int64_t limit, const APClass& cls) {
    return primes_in_ap(PrimeTable(limit), limit, cls);
}

enum class ChebyshevKind { pi, theta, psi };

inline ChebyshevKind parse_chebyshev_kind(const std::string& s) {
    if (s == "pi")
        return ChebyshevKind::pi;
    if (s == "theta")
        return ChebyshevKind::theta;
    if (s == "psi")
        return ChebyshevKind::psi;
    throw std::invalid_argument("unknown Chebyshev function '" + s + "'");
}

/// pi/theta/psi over the table's primes; theta and psi are in nats.
inline double chebyshev(const PrimeTable& table, ChebyshevKind kind, std::int64_t x,
                        const APClass& cls) {
    if (x < 0)
        throw std::invalid_argument("chebyshev: x must be nonnegative");
    if (x > table.limit())
        throw std::invalid_argument("chebyshev: x exceeds prime table");
    double acc = 0.0;
    for (std::int64_t p : table.primes()) {
        if (p > x)
            break;
        switch (kind) {
        case ChebyshevKind::pi:
            if (cls.contains(p))
                acc += 1.0;
            break;
        case ChebyshevKind::theta:
            if (cls.contains(p))
                acc += std::log(static_cast<double>(p));
            break;
        case ChebyshevKind::psi: {
            const double lp = std::log(static_cast<double>(p));
            for (std::int64_t q = p;; q *= p) {
                if (cls.contains(q))
                    acc += lp;
                if (q > x / p)
                    break;
            }
            break;
        }
        }
    }
    return acc;
}

inline double chebyshev(ChebyshevKind kind, std::int64_t x, const APClass& cls) {
    return chebyshev(PrimeTable(x), kind, x, cls);
}

/// Thrown when a search exhausts its configured resource cap.
class SearchExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// k-th smallest prime in the class; the sieve limit grows geometrically up to hard_limit.
inline std::int64_t kth_prime_in_ap(std::int64_t k, const APClass& cls,
                                    std::int64_t hard_limit = std::int64_t{1} << 31) {
    if (k < 1)
        throw std::invalid_argument("kth_prime_in_ap: k must be positive");
    std::int64_t limit = std::max<std::int64_t>(64, cls.modulus() * 4);
    for (;;) {
        limit = std::min(limit, hard_limit);
        auto ps = primes_in_ap(limit, cls);
        if (static_cast<std::int64_t>(ps.size()) >= k)
            return ps[static_cast<std::size_t>(k - 1)];
        if (limit >= hard_limit)
            throw SearchExhausted("kth_prime_in_ap: sieve limit " + std::to_string(hard_limit) +
                                  " exhausted");
        limit *= 2;
    }
}

} // namespace udist
