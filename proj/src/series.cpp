#include "opcalc/series.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "opcalc/errors.hpp"

namespace opcalc {

namespace {

using Precision = std::optional<std::size_t>;

Precision min_precision(Precision a, Precision b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

SSeries make(std::vector<Rat> coeffs, Precision prec) {
    return prec ? SSeries::truncated(std::move(coeffs), *prec) : SSeries::exact(std::move(coeffs));
}

}  // namespace

SSeries SSeries::truncated(std::vector<Rat> coeffs, std::size_t order) {
    SSeries s;
    coeffs.resize(order + 1);
    s.coeffs_ = std::move(coeffs);
    s.trunc_ = order;
    s.exact_ = false;
    return s;
}

SSeries SSeries::exact(std::vector<Rat> coeffs) {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    SSeries s;
    s.coeffs_ = std::move(coeffs);
    s.trunc_ = s.coeffs_.empty() ? 0 : s.coeffs_.size() - 1;
    s.exact_ = true;
    return s;
}

SSeries SSeries::exact(const Poly& p) {
    auto c = p.coeffs();
    return exact(std::vector<Rat>(c.begin(), c.end()));
}

std::size_t SSeries::trunc_order() const { return trunc_; }

std::optional<std::size_t> SSeries::precision() const {
    if (exact_) return std::nullopt;
    return trunc_;
}

Rat SSeries::coeff(std::size_t n) const {
    if (!covers(n))
        throw TruncationError("series coefficient t^" + std::to_string(n) +
                              " beyond truncation order " + std::to_string(trunc_));
    return n < coeffs_.size() ? coeffs_[n] : Rat(0);
}

std::optional<std::size_t> SSeries::order() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return i;
    return std::nullopt;
}

SSeries SSeries::truncate(std::size_t n) const {
    if (!covers(n)) throw TruncationError("cannot extend a series beyond its truncation order");
    std::vector<Rat> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) c[i] = coeff(i);
    return truncated(std::move(c), n);
}

Poly SSeries::as_poly() const { return Poly(coeffs_); }

SSeries operator+(const SSeries& a, const SSeries& b) {
    Precision prec = min_precision(a.precision(), b.precision());
    std::size_t n = prec ? *prec + 1 : std::max(a.coeffs().size(), b.coeffs().size());
    std::vector<Rat> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = a.coeff(i) + b.coeff(i);
    return make(std::move(c), prec);
}

SSeries operator-(const SSeries& a) { return Rat(-1) * a; }

SSeries operator-(const SSeries& a, const SSeries& b) { return a + (-b); }

SSeries operator*(const Rat& c, const SSeries& a) {
    std::vector<Rat> v(a.coeffs().begin(), a.coeffs().end());
    for (auto& x : v) x *= c;
    return make(std::move(v), a.precision());
}

SSeries operator*(const SSeries& a, const SSeries& b) {
    Precision prec = min_precision(a.precision(), b.precision());
    auto ac = a.coeffs();
    auto bc = b.coeffs();
    std::size_t n = prec ? *prec + 1 : (ac.empty() || bc.empty() ? 0 : ac.size() + bc.size() - 1);
    std::vector<Rat> c(n);
    for (std::size_t i = 0; i < ac.size() && i < n; ++i) {
        if (ac[i].is_zero()) continue;
        for (std::size_t j = 0; j < bc.size() && i + j < n; ++j) c[i + j] += ac[i] * bc[j];
    }
    return make(std::move(c), prec);
}

SSeries derivative(const SSeries& f) {
    Precision prec = f.precision();
    if (prec && *prec == 0)
        throw TruncationError("derivative of a series truncated at t^0 has no known coefficients");
    Precision out = prec ? Precision(*prec - 1) : std::nullopt;
    auto c = f.coeffs();
    std::vector<Rat> d(c.size() > 0 ? c.size() - 1 : 0);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * Rat(static_cast<long>(k));
    return make(std::move(d), out);
}

SSeries pow(const SSeries& f, std::size_t k) {
    SSeries r = f.precision() ? SSeries::truncated({Rat(1)}, *f.precision()) : SSeries::exact(std::vector<Rat>{Rat(1)});
    for (std::size_t i = 0; i < k; ++i) r = r * f;
    return r;
}

SSeries invert(const SSeries& f) {
    if (!f.precision()) throw std::invalid_argument("invert: exact series needs an explicit order");
    return invert(f, *f.precision());
}

SSeries invert(const SSeries& f, std::size_t order) {
    Rat f0 = f.coeff(0);
    if (f0.is_zero()) throw InvertError("series with zero constant term is not invertible");
    if (!f.covers(order)) throw TruncationError("invert: order exceeds the series precision");
    std::vector<Rat> g(order + 1);
    g[0] = Rat(1) / f0;
    for (std::size_t n = 1; n <= order; ++n) {
        Rat s;
        for (std::size_t k = 1; k <= n; ++k) s += f.coeff(k) * g[n - k];
        g[n] = -s / f0;
    }
    return SSeries::truncated(std::move(g), order);
}

SSeries compose(const SSeries& f, const SSeries& g) {
    if (!g.coeff(0).is_zero()) throw std::invalid_argument("compose: inner series must have zero constant term");
    Precision prec = min_precision(f.precision(), g.precision());
    // Horner: f_0 + g (f_1 + g (f_2 + ...)), stopping at the known coefficients of f.
    std::size_t top = f.coeffs().empty() ? 0 : f.coeffs().size() - 1;
    if (prec) top = std::min(top, *prec);
    SSeries r = make({}, prec);
    for (std::size_t i = top + 1; i-- > 0;) {
        r = r * g + make({f.coeff(i)}, prec);
    }
    if (prec) return r.truncate(*prec);
    return r;
}

SSeries reverse(const SSeries& f) {
    if (!f.precision()) throw std::invalid_argument("reverse: exact series needs an explicit order");
    return reverse(f, *f.precision());
}

SSeries reverse(const SSeries& f, std::size_t order) {
    if (!f.coeff(0).is_zero() || (f.covers(1) && f.coeff(1).is_zero()) || !f.covers(1))
        throw ReverseError("compositional inverse needs a series of order exactly 1");
    if (!f.covers(order)) throw TruncationError("reverse: order exceeds the series precision");
    Rat f1 = f.coeff(1);
    std::vector<Rat> r(order + 1);
    if (order >= 1) r[1] = Rat(1) / f1;
    SSeries fo = f.truncate(order);
    for (std::size_t k = 2; k <= order; ++k) {
        // [t^k] f(r) is f1 r_k + (terms in r_1..r_{k-1}); with r_k = 0 the latter remains.
        Rat c = compose(fo, SSeries::truncated(r, order)).coeff(k);
        r[k] = -c / f1;
    }
    return SSeries::truncated(std::move(r), order);
}

SSeries exp(const SSeries& f, std::size_t order) {
    if (!f.coeff(0).is_zero()) throw std::invalid_argument("exp: series must have zero constant term");
    if (!f.covers(order)) throw TruncationError("exp: order exceeds the series precision");
    // n e_n = sum_k k f_k e_{n-k}
    std::vector<Rat> e(order + 1);
    e[0] = Rat(1);
    for (std::size_t n = 1; n <= order; ++n) {
        Rat s;
        for (std::size_t k = 1; k <= n; ++k) s += Rat(static_cast<long>(k)) * f.coeff(k) * e[n - k];
        e[n] = s / Rat(static_cast<long>(n));
    }
    return SSeries::truncated(std::move(e), order);
}

std::optional<std::size_t> order_lower_bound(const SSeries& f) {
    if (auto o = f.order()) return o;
    if (f.is_exact()) return std::nullopt;
    return f.trunc_order() + 1;
}

SSeries expm1_series(std::size_t order) {
    std::vector<Rat> c(order + 1);
    for (std::size_t k = 1; k <= order; ++k) c[k] = Rat(1) / factorial(k);
    return SSeries::truncated(std::move(c), order);
}

SSeries exp_series(const Rat& a, std::size_t order) {
    std::vector<Rat> c(order + 1);
    for (std::size_t k = 0; k <= order; ++k) c[k] = pow(a, static_cast<long>(k)) / factorial(k);
    return SSeries::truncated(std::move(c), order);
}

std::string to_string(const SSeries& f, char variable) {
    std::ostringstream os;
    bool first = true;
    auto c = f.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        Rat mag = abs(c[i]);
        if (first) {
            if (c[i].sign() < 0) os << "-";
        } else {
            os << (c[i].sign() < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag;
            continue;
        }
        if (mag != Rat(1)) os << mag << "*";
        os << variable;
        if (i > 1) os << "^" << i;
    }
    if (first) os << "0";
    if (!f.is_exact()) os << " + O(" << variable << "^" << f.trunc_order() + 1 << ")";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const SSeries& f) { return os << to_string(f); }

PSeries::PSeries(std::vector<Poly> coeffs, std::size_t order) : coeffs_(std::move(coeffs)), trunc_(order) {
    coeffs_.resize(order + 1);
}

PSeries PSeries::lift(const SSeries& f, std::size_t order) {
    std::vector<Poly> c(order + 1);
    for (std::size_t i = 0; i <= order; ++i) c[i] = Poly(f.coeff(i));
    return PSeries(std::move(c), order);
}

const Poly& PSeries::coeff(std::size_t n) const {
    if (n > trunc_)
        throw TruncationError("series coefficient t^" + std::to_string(n) +
                              " beyond truncation order " + std::to_string(trunc_));
    return coeffs_[n];
}

PSeries operator+(const PSeries& a, const PSeries& b) {
    std::size_t n = std::min(a.trunc_order(), b.trunc_order());
    std::vector<Poly> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) c[i] = a.coeff(i) + b.coeff(i);
    return PSeries(std::move(c), n);
}

PSeries operator-(const PSeries& a, const PSeries& b) { return a + Rat(-1) * b; }

PSeries operator*(const Rat& c, const PSeries& a) {
    std::vector<Poly> v(a.coeffs().begin(), a.coeffs().end());
    for (auto& p : v) p *= c;
    return PSeries(std::move(v), a.trunc_order());
}

PSeries operator*(const PSeries& a, const PSeries& b) {
    std::size_t n = std::min(a.trunc_order(), b.trunc_order());
    std::vector<Poly> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        if (a.coeff(i).is_zero()) continue;
        for (std::size_t j = 0; i + j <= n; ++j) c[i + j] += a.coeff(i) * b.coeff(j);
    }
    return PSeries(std::move(c), n);
}

PSeries scale_by_poly(const PSeries& a, const Poly& p) {
    std::vector<Poly> v(a.coeffs().begin(), a.coeffs().end());
    for (auto& c : v) c = c * p;
    return PSeries(std::move(v), a.trunc_order());
}

PSeries invert(const PSeries& f) {
    if (f.coeff(0) != Poly(Rat(1)))
        throw InvertError("polynomial-coefficient series needs constant coefficient 1 to invert");
    std::size_t n = f.trunc_order();
    std::vector<Poly> g(n + 1);
    g[0] = Poly(Rat(1));
    for (std::size_t m = 1; m <= n; ++m) {
        Poly s;
        for (std::size_t k = 1; k <= m; ++k) s += f.coeff(k) * g[m - k];
        g[m] = -s;
    }
    return PSeries(std::move(g), n);
}

PSeries exp(const PSeries& f) {
    if (!f.coeff(0).is_zero()) throw std::invalid_argument("exp: series must have zero constant term");
    std::size_t n = f.trunc_order();
    std::vector<Poly> e(n + 1);
    e[0] = Poly(Rat(1));
    for (std::size_t m = 1; m <= n; ++m) {
        Poly s;
        for (std::size_t k = 1; k <= m; ++k) s += Rat(static_cast<long>(k)) * (f.coeff(k) * e[m - k]);
        e[m] = s / Rat(static_cast<long>(m));
    }
    return PSeries(std::move(e), n);
}

PSeries exp_xt(std::size_t order) {
    std::vector<Poly> c(order + 1);
    for (std::size_t n = 0; n <= order; ++n) c[n] = Poly::monomial(n, Rat(1) / factorial(n));
    return PSeries(std::move(c), order);
}

std::string to_string(const PSeries& f) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i <= f.trunc_order(); ++i) {
        if (f.coeff(i).is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(f.coeff(i)) << ")";
        if (i >= 1) os << "*t";
        if (i > 1) os << "^" << i;
    }
    if (first) os << "0";
    os << " + O(t^" << f.trunc_order() + 1 << ")";
    return os.str();
}

}  // namespace opcalc
