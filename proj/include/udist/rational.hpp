#pragma once

/**
 * @file rational.hpp
 * @brief Exact arithmetic for the unit-equation enumerator: 64-bit rationals
 * and numbers of the 12th cyclotomic field Q(zeta), zeta = exp(i pi / 6).
 *
 * Q(zeta) holds every Gaussian rational (i = zeta^3) and every root of unity
 * of order dividing 12, so zero tests on sums of such numbers are exact.
 * Elements are stored in the basis 1, zeta, zeta^2, zeta^3 modulo
 * zeta^4 = zeta^2 - 1.
 */

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace udist {

class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1) { assign(num, den); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    friend Rational operator+(const Rational& x, const Rational& y) {
        const __int128 g = std::gcd(x.den_, y.den_);
        const __int128 n = static_cast<__int128>(x.num_) * (y.den_ / g) + static_cast<__int128>(y.num_) * (x.den_ / g);
        const __int128 d = static_cast<__int128>(x.den_ / g) * y.den_;
        return make(n, d);
    }
    friend Rational operator-(const Rational& x) {
        if (x.num_ == std::numeric_limits<std::int64_t>::min())
            throw std::overflow_error("Rational overflow");
        Rational r;
        r.num_ = -x.num_;
        r.den_ = x.den_;
        return r;
    }
    friend Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }
    friend Rational operator*(const Rational& x, const Rational& y) {
        return make(static_cast<__int128>(x.num_) * y.num_, static_cast<__int128>(x.den_) * y.den_);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num_ == 0)
            throw std::domain_error("Rational division by zero");
        return make(static_cast<__int128>(x.num_) * y.den_, static_cast<__int128>(x.den_) * y.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend auto operator<=>(const Rational& x, const Rational& y) {
        return static_cast<__int128>(x.num_) * y.den_ <=> static_cast<__int128>(y.num_) * x.den_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        os << r.num_;
        if (r.den_ != 1)
            os << '/' << r.den_;
        return os;
    }

private:
    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0)
            a = -a;
        if (b < 0)
            b = -b;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational make(__int128 n, __int128 d) {
        if (d == 0)
            throw std::domain_error("Rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const __int128 g = gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr __int128 lo = std::numeric_limits<std::int64_t>::min() + 1;
        constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("Rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        if (r.num_ == 0)
            r.den_ = 1;
        return r;
    }

    void assign(std::int64_t num, std::int64_t den) { *this = make(num, den); }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Element c0 + c1 zeta + c2 zeta^2 + c3 zeta^3 of Q(zeta_12).
class CycloNumber {
public:
    CycloNumber() = default;
    CycloNumber(Rational x) : c_{x, 0, 0, 0} {}
    CycloNumber(std::int64_t x) : c_{Rational(x), 0, 0, 0} {}

    /// re + im * i, with i = zeta^3.
    static CycloNumber gaussian(Rational re, Rational im) {
        CycloNumber z;
        z.c_ = {re, 0, 0, im};
        return z;
    }

    /// zeta^j, where zeta = exp(i pi / 6).
    static CycloNumber zeta_power(int j) {
        j = ((j % 12) + 12) % 12;
        const bool negate = j >= 6;
        j %= 6;
        CycloNumber z;
        if (j < 4) {
            z.c_[static_cast<std::size_t>(j)] = 1;
        } else if (j == 4) { // zeta^2 - 1
            z.c_ = {-1, 0, 1, 0};
        } else { // zeta^5 = zeta^3 - zeta
            z.c_ = {0, -1, 0, 1};
        }
        return negate ? -z : z;
    }

    const std::array<Rational, 4>& coeffs() const { return c_; }
    bool is_zero() const {
        return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
    }

    friend CycloNumber operator+(const CycloNumber& x, const CycloNumber& y) {
        CycloNumber z;
        for (std::size_t i = 0; i < 4; ++i)
            z.c_[i] = x.c_[i] + y.c_[i];
        return z;
    }
    friend CycloNumber operator-(const CycloNumber& x) {
        CycloNumber z;
        for (std::size_t i = 0; i < 4; ++i)
            z.c_[i] = -x.c_[i];
        return z;
    }
    friend CycloNumber operator-(const CycloNumber& x, const CycloNumber& y) { return x + (-y); }
    friend CycloNumber operator*(const CycloNumber& x, const CycloNumber& y) {
        std::array<Rational, 7> prod{};
        for (std::size_t i = 0; i < 4; ++i) {
            if (x.c_[i].is_zero())
                continue;
            for (std::size_t j = 0; j < 4; ++j)
                if (!y.c_[j].is_zero())
                    prod[i + j] += x.c_[i] * y.c_[j];
        }
        // zeta^t = zeta^(t-2) - zeta^(t-4) for t >= 4.
        for (std::size_t t = 6; t >= 4; --t) {
            if (prod[t].is_zero())
                continue;
            prod[t - 2] += prod[t];
            prod[t - 4] -= prod[t];
            prod[t] = 0;
        }
        CycloNumber z;
        for (std::size_t i = 0; i < 4; ++i)
            z.c_[i] = prod[i];
        return z;
    }
    CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
    CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }

    /// Image under the field automorphism zeta -> zeta^j, j coprime to 12.
    CycloNumber galois(int j) const {
        CycloNumber z;
        for (std::size_t i = 0; i < 4; ++i) {
            if (!c_[i].is_zero())
                z += CycloNumber(c_[i]) * zeta_power(static_cast<int>(i) * j);
        }
        return z;
    }

    CycloNumber inverse() const {
        if (is_zero())
            throw std::domain_error("CycloNumber: inverse of zero");
        // x * s5(x) * s7(x) * s11(x) is the field norm, a rational.
        const CycloNumber rest = galois(5) * galois(7) * galois(11);
        const CycloNumber norm = *this * rest;
        const Rational n = norm.c_[0];
        if (!norm.c_[1].is_zero() || !norm.c_[2].is_zero() || !norm.c_[3].is_zero() || n.is_zero())
            throw std::logic_error("CycloNumber: norm is not a nonzero rational");
        CycloNumber inv;
        for (std::size_t i = 0; i < 4; ++i)
            inv.c_[i] = rest.c_[i] / n;
        return inv;
    }
    friend CycloNumber operator/(const CycloNumber& x, const CycloNumber& y) { return x * y.inverse(); }

    CycloNumber pow(std::int64_t e) const {
        CycloNumber base = e < 0 ? inverse() : *this;
        std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
        CycloNumber acc(1);
        while (k) {
            if (k & 1)
                acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    friend bool operator==(const CycloNumber&, const CycloNumber&) = default;
    friend bool operator<(const CycloNumber& x, const CycloNumber& y) {
        for (std::size_t i = 0; i < 4; ++i) {
            if (x.c_[i] != y.c_[i])
                return std::pair(x.c_[i].num(), x.c_[i].den()) < std::pair(y.c_[i].num(), y.c_[i].den());
        }
        return false;
    }

    /// Gaussian rationals print as `re` or `re+im*i`; others as a zeta polynomial.
    std::string str() const {
        std::ostringstream os;
        if (c_[1].is_zero() && c_[2].is_zero()) {
            if (c_[3].is_zero()) {
                os << c_[0];
            } else {
                os << c_[0] << (c_[3] < Rational(0) ? "" : "+") << c_[3] << "*i";
            }
            return os.str();
        }
        os << '[' << c_[0] << ',' << c_[1] << ',' << c_[2] << ',' << c_[3] << "]_zeta12";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const CycloNumber& z) { return os << z.str(); }

    std::size_t hash() const {
        std::size_t h = 0;
        for (const auto& q : c_) {
            h ^= std::hash<std::int64_t>{}(q.num()) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
            h ^= std::hash<std::int64_t>{}(q.den()) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        }
        return h;
    }

private:
    std::array<Rational, 4> c_{};
};

struct CycloNumberHash {
    std::size_t operator()(const CycloNumber& z) const noexcept { return z.hash(); }
};

} // namespace udist
