#pragma once

/**
 * @file gaussian.hpp
 * @brief The ring Z^2 with (a,b)(c,d) = (ac-bd, ad+bc), i.e. the Gaussian
 * integers, used both as lattice points and as displacement vectors.
 *
 * Covers units and associates, two-squares decomposition of primes, the full
 * set of representations of a squarefree m = p_1...p_t (p_i = 1 mod 4), and
 * factorization over a supplied list of prime-norm atoms.
 */

#include "udist/numtheory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <vector>

namespace udist {

struct GaussInt {
    std::int64_t a = 0; ///< x-coordinate / real part
    std::int64_t b = 0; ///< y-coordinate / imaginary part

    friend constexpr auto operator<=>(const GaussInt&, const GaussInt&) = default;

    constexpr GaussInt operator+(GaussInt o) const { return {a + o.a, b + o.b}; }
    constexpr GaussInt operator-(GaussInt o) const { return {a - o.a, b - o.b}; }
    constexpr GaussInt operator-() const { return {-a, -b}; }
    GaussInt& operator+=(GaussInt o) {
        a += o.a;
        b += o.b;
        return *this;
    }

    constexpr GaussInt conj() const { return {a, -b}; }
    constexpr std::int64_t norm() const { return a * a + b * b; }
    constexpr bool is_zero() const { return a == 0 && b == 0; }

    friend std::ostream& operator<<(std::ostream& os, GaussInt g) {
        return os << '(' << g.a << ',' << g.b << ')';
    }
};

struct GaussIntHash {
    std::size_t operator()(GaussInt g) const noexcept {
        auto h = static_cast<std::uint64_t>(g.a) * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<std::uint64_t>(g.b) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

namespace detail {
inline std::int64_t narrow_checked(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("Gaussian integer component overflows 64 bits");
    return static_cast<std::int64_t>(v);
}
} // namespace detail

inline GaussInt gmul(GaussInt u, GaussInt v) {
    const __int128 re = static_cast<__int128>(u.a) * v.a - static_cast<__int128>(u.b) * v.b;
    const __int128 im = static_cast<__int128>(u.a) * v.b + static_cast<__int128>(u.b) * v.a;
    return {detail::narrow_checked(re), detail::narrow_checked(im)};
}

/// Exact quotient u / v, or nullopt if v does not divide u in Z[i] (or v = 0).
inline std::optional<GaussInt> exact_div(GaussInt u, GaussInt v) {
    const std::int64_t n = v.norm();
    if (n == 0)
        return std::nullopt;
    const GaussInt num = gmul(u, v.conj());
    if (num.a % n != 0 || num.b % n != 0)
        return std::nullopt;
    return GaussInt{num.a / n, num.b / n};
}

/// One of (1,0), (0,1), (-1,0), (0,-1); the exponent of i.
class Unit {
public:
    constexpr Unit() = default;
    constexpr explicit Unit(int power) : power_(((power % 4) + 4) % 4) {}

    static std::optional<Unit> from(GaussInt g) {
        for (int k = 0; k < 4; ++k) {
            if (Unit(k).value() == g)
                return Unit(k);
        }
        return std::nullopt;
    }

    static constexpr std::array<Unit, 4> all() { return {Unit(0), Unit(1), Unit(2), Unit(3)}; }

    constexpr int power() const { return power_; }
    constexpr GaussInt value() const {
        constexpr std::array<GaussInt, 4> table{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
        return table[static_cast<std::size_t>(power_)];
    }
    constexpr Unit operator*(Unit o) const { return Unit(power_ + o.power_); }

    friend constexpr bool operator==(Unit, Unit) = default;

private:
    int power_ = 0;
};

inline bool are_associates(GaussInt u, GaussInt v) {
    for (Unit e : Unit::all()) {
        if (gmul(e.value(), v) == u)
            return true;
    }
    return false;
}

struct GaussFactorization {
    Unit unit;
    std::vector<GaussInt> factors;
    /// conjugated[i] is true when factors[i] is the conjugate of atom i rather than the atom.
    std::vector<bool> conjugated;

    GaussInt product() const {
        GaussInt acc = unit.value();
        for (GaussInt f : factors)
            acc = gmul(acc, f);
        return acc;
    }
};

/**
 * Express g as unit * prod(atom_i or conj(atom_i)) by exact trial division.
 *
 * Each atom must have prime norm. Returns nullopt when g is not such a
 * product, i.e. g lies outside the group generated by the atoms (and their
 * conjugates) together with the units.
 */
inline std::optional<GaussFactorization> factor_over(GaussInt g, const std::vector<GaussInt>& atoms) {
    for (GaussInt atom : atoms) {
        if (!is_prime(static_cast<std::uint64_t>(atom.norm())))
            throw std::invalid_argument("factor_over: atoms must have prime norm");
    }
    GaussFactorization f;
    GaussInt rest = g;
    for (GaussInt atom : atoms) {
        if (auto q = exact_div(rest, atom)) {
            rest = *q;
            f.factors.push_back(atom);
            f.conjugated.push_back(false);
        } else if (auto qc = exact_div(rest, atom.conj())) {
            rest = *qc;
            f.factors.push_back(atom.conj());
            f.conjugated.push_back(true);
        } else {
            return std::nullopt;
        }
    }
    auto unit = Unit::from(rest);
    if (!unit)
        return std::nullopt;
    f.unit = *unit;
    return f;
}

namespace detail {
inline std::int64_t isqrt(std::int64_t n) {
    if (n < 0)
        throw std::invalid_argument("isqrt of negative");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * b % m);
        b = static_cast<std::uint64_t>(static_cast<unsigned __int128>(b) * b % m);
        e >>= 1;
    }
    return r;
}
} // namespace detail

inline constexpr std::int64_t kExhaustiveTwoSquaresLimit = 1'000'000;

/**
 * The unique (x, y) with 0 < x <= y and x^2 + y^2 = p, for p = 2 or a prime
 * p = 1 mod 4. Small primes use direct search; larger ones use the
 * Hermite-Serret descent: take t with t^2 = -1 mod p and run the Euclidean
 * algorithm on (p, t) until the remainders drop below sqrt(p).
 */
inline std::pair<std::int64_t, std::int64_t> two_squares_prime(std::int64_t p) {
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("two_squares_prime: argument must be prime");
    if (p % 4 == 3)
        throw std::invalid_argument("two_squares_prime: no representation for p = 3 mod 4");
    if (p == 2)
        return {1, 1};
    if (p > std::int64_t{1} << 62)
        throw std::invalid_argument("two_squares_prime: prime too large");

    if (p < kExhaustiveTwoSquaresLimit) {
        for (std::int64_t x = 1; 2 * x * x < p; ++x) {
            const std::int64_t rest = p - x * x;
            const std::int64_t y = detail::isqrt(rest);
            if (y * y == rest)
                return {x, y};
        }
        throw std::logic_error("two_squares_prime: no representation found");
    }

    const auto up = static_cast<std::uint64_t>(p);
    std::uint64_t t = 0;
    for (std::uint64_t c = 2;; ++c) {
        // c is a non-residue iff c^((p-1)/2) = -1, and then c^((p-1)/4) squares to -1.
        if (detail::powmod(c, (up - 1) / 2, up) == up - 1) {
            t = detail::powmod(c, (up - 1) / 4, up);
            break;
        }
    }
    const std::int64_t root = detail::isqrt(p);
    std::int64_t r0 = p;
    std::int64_t r1 = static_cast<std::int64_t>(t);
    while (r1 > root) {
        const std::int64_t r2 = r0 % r1;
        r0 = r1;
        r1 = r2;
    }
    const std::int64_t x = r1;
    const std::int64_t y = detail::isqrt(p - x * x);
    if (x * x + y * y != p)
        throw std::logic_error("two_squares_prime: descent failed");
    return {std::min(x, y), std::max(x, y)};
}

inline void check_split_primes(const std::vector<std::int64_t>& primes) {
    std::set<std::int64_t> seen;
    for (std::int64_t p : primes) {
        if (p < 5 || p % 4 != 1 || !is_prime(static_cast<std::uint64_t>(p)))
            throw std::invalid_argument("representations: every prime must be = 1 mod 4");
        if (!seen.insert(p).second)
            throw std::invalid_argument("representations: primes must be distinct");
    }
}

/**
 * All (x, y) in Z^2 with x^2 + y^2 = p_1...p_t, built as unit * prod (x_j, +-y_j).
 * Returns the 2^(t+2) points in ascending lexicographic order.
 */
inline std::vector<GaussInt> representations(const std::vector<std::int64_t>& primes) {
    check_split_primes(primes);
    std::vector<GaussInt> products{{1, 0}};
    for (std::int64_t p : primes) {
        auto [x, y] = two_squares_prime(p);
        std::vector<GaussInt> next;
        next.reserve(products.size() * 2);
        for (GaussInt g : products) {
            next.push_back(gmul(g, {x, y}));
            next.push_back(gmul(g, {x, -y}));
        }
        products = std::move(next);
    }
    std::vector<GaussInt> out;
    out.reserve(products.size() * 4);
    for (GaussInt g : products) {
        for (Unit e : Unit::all())
            out.push_back(gmul(e.value(), g));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Factor m into distinct primes = 1 mod 4, or nullopt when m is not of that shape.
inline std::optional<std::vector<std::int64_t>> split_prime_factors(std::int64_t m) {
    if (m < 1)
        return std::nullopt;
    std::vector<std::int64_t> primes;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0)
            continue;
        m /= p;
        if (m % p == 0 || p % 4 != 1)
            return std::nullopt;
        primes.push_back(p);
    }
    if (m > 1) {
        if (m % 4 != 1)
            return std::nullopt;
        primes.push_back(m);
    }
    return primes;
}

} // namespace udist

template <>
struct std::hash<udist::GaussInt> : udist::GaussIntHash {};
