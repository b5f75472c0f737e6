#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opcalc/poly.hpp"
#include "opcalc/rat.hpp"

namespace opcalc {

/// Formal power series in t with Rat coefficients.
///
/// A series is either *truncated* (coefficients of t^0..t^N known, the rest
/// unknown; N is the truncation order) or *exact* (a polynomial symbol whose
/// higher coefficients are known to vanish). Binary operations return the
/// smaller precision of their operands; exact only survives exact inputs.
class SSeries {
public:
    /// The exact zero series.
    SSeries() = default;

    static SSeries truncated(std::vector<Rat> coeffs, std::size_t order);
    static SSeries exact(std::vector<Rat> coeffs);
    static SSeries exact(const Poly& p);

    bool is_exact() const { return exact_; }
    /// Highest known index for truncated series; degree (or 0) for exact ones.
    std::size_t trunc_order() const;
    /// Empty for exact series.
    std::optional<std::size_t> precision() const;
    bool covers(std::size_t n) const { return exact_ || n <= trunc_; }

    /// Coefficient of t^n. Throws TruncationError when n is beyond the precision.
    Rat coeff(std::size_t n) const;
    std::span<const Rat> coeffs() const { return coeffs_; }

    /// Index of the first nonzero coefficient; empty when every known
    /// coefficient is zero (order +infinity for the exact zero series).
    std::optional<std::size_t> order() const;
    bool is_zero() const { return !order().has_value(); }

    /// Drops everything above t^n (n must be within precision).
    SSeries truncate(std::size_t n) const;

    /// Known coefficients as a polynomial in the given variable.
    Poly as_poly() const;

    friend bool operator==(const SSeries&, const SSeries&) = default;

private:
    std::vector<Rat> coeffs_;
    std::size_t trunc_ = 0;
    bool exact_ = true;
};

SSeries operator+(const SSeries& a, const SSeries& b);
SSeries operator-(const SSeries& a, const SSeries& b);
SSeries operator-(const SSeries& a);
SSeries operator*(const SSeries& a, const SSeries& b);
SSeries operator*(const Rat& c, const SSeries& a);

SSeries derivative(const SSeries& f);
SSeries pow(const SSeries& f, std::size_t k);

/// 1/f; requires f(0) != 0 (InvertError). The one-argument form needs a truncated f.
SSeries invert(const SSeries& f);
SSeries invert(const SSeries& f, std::size_t order);

/// Compositional inverse r with f(r(t)) = r(f(t)) = t; requires ord(f) = 1 (ReverseError).
SSeries reverse(const SSeries& f);
SSeries reverse(const SSeries& f, std::size_t order);

/// f(g(t)); requires g(0) = 0.
SSeries compose(const SSeries& f, const SSeries& g);

/// exp(f); requires f(0) = 0.
SSeries exp(const SSeries& f, std::size_t order);

/// Lower bound for ord(f): exact order when a nonzero coefficient is known,
/// trunc_order()+1 for a truncated all-zero prefix, empty (+infinity) for exact zero.
std::optional<std::size_t> order_lower_bound(const SSeries& f);

/// exp(t) - 1 truncated at t^order: the symbol of the forward difference.
SSeries expm1_series(std::size_t order);
/// exp(a t) truncated at t^order: the symbol of the shift E^a.
SSeries exp_series(const Rat& a, std::size_t order);

/// Ascending text: "1 + t + 1/2*t^2 + O(t^3)".
std::string to_string(const SSeries& f, char variable = 't');
std::ostream& operator<<(std::ostream& os, const SSeries& f);

/// Power series in t with polynomial-in-x coefficients, always truncated.
class PSeries {
public:
    PSeries() = default;
    PSeries(std::vector<Poly> coeffs, std::size_t order);

    /// Scalar series lifted coefficientwise to constant polynomials.
    static PSeries lift(const SSeries& f, std::size_t order);

    std::size_t trunc_order() const { return trunc_; }
    const Poly& coeff(std::size_t n) const;
    std::span<const Poly> coeffs() const { return coeffs_; }

    friend bool operator==(const PSeries&, const PSeries&) = default;

private:
    std::vector<Poly> coeffs_{Poly()};
    std::size_t trunc_ = 0;
};

PSeries operator+(const PSeries& a, const PSeries& b);
PSeries operator-(const PSeries& a, const PSeries& b);
PSeries operator*(const PSeries& a, const PSeries& b);
PSeries operator*(const Rat& c, const PSeries& a);
PSeries scale_by_poly(const PSeries& a, const Poly& p);

/// 1/f; requires the constant coefficient to be the unit polynomial (InvertError).
PSeries invert(const PSeries& f);
/// exp(f); requires the constant coefficient to vanish.
PSeries exp(const PSeries& f);

/// exp(xt) = sum x^n t^n / n! up to t^order.
PSeries exp_xt(std::size_t order);

std::string to_string(const PSeries& f);

}  // namespace opcalc
