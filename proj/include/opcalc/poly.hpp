#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opcalc/rat.hpp"

namespace opcalc {

/// Degree of a polynomial. An empty optional is "minus infinity" (the zero
/// polynomial); std::optional ordering already places it below every degree.
using Degree = std::optional<std::size_t>;

/// Univariate polynomial over Rat in canonical form (no trailing zeros).
class Poly {
public:
    Poly() = default;
    explicit Poly(Rat constant);
    explicit Poly(std::vector<Rat> coeffs);

    static Poly x() { return monomial(1); }
    static Poly monomial(std::size_t k, const Rat& c = Rat(1));

    Degree degree() const;
    bool is_zero() const { return coeffs_.empty(); }
    std::span<const Rat> coeffs() const { return coeffs_; }

    /// Coefficient of x^k; zero beyond the degree.
    Rat coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rat(0); }
    Rat leading() const { return coeffs_.empty() ? Rat(0) : coeffs_.back(); }

    Rat operator()(const Rat& at) const;
    /// Composition p(q(x)).
    Poly operator()(const Poly& q) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rat& c);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) { return a * Rat(-1); }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
    friend Poly operator*(const Rat& c, Poly a) { return a *= c; }
    friend Poly operator/(Poly a, const Rat& c) { return a *= Rat(1) / c; }

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void trim();
    std::vector<Rat> coeffs_;
};

Poly derivative(const Poly& p);
/// Antiderivative with zero constant term, i.e. the integral from 0 to x.
Poly antiderivative(const Poly& p);
Poly pow(const Poly& p, std::size_t k);
/// p(x + a).
Poly shifted(const Poly& p, const Rat& a);
/// Keeps the terms of degree <= max_degree.
Poly truncated(const Poly& p, std::size_t max_degree);

/// Falling factorial (x)_m = x(x-1)...(x-m+1); (x)_0 = 1.
Poly falling_factorial(std::size_t m);
/// (x + shift)_m, the falling factorial evaluated at x + shift.
Poly falling_factorial(std::size_t m, long shift);

/// Canonical text, descending exponents: "x^2 - 1/2*x + 3".
std::string to_string(const Poly& p, char variable = 'x');
std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Parses an arithmetic expression in one variable: sums, products,
/// division by nonzero constants, `^` with a nonnegative integer exponent,
/// parentheses and implicit multiplication ("3x"). Accepts the canonical form.
Poly parse_poly(std::string_view text, char variable = 'x');

}  // namespace opcalc
