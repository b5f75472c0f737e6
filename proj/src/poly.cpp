#include "opcalc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

#include "opcalc/errors.hpp"

namespace opcalc {

Poly::Poly(Rat constant) {
    if (!constant.is_zero()) coeffs_.push_back(std::move(constant));
}

Poly::Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(std::size_t k, const Rat& c) {
    if (c.is_zero()) return {};
    std::vector<Rat> v(k + 1);
    v[k] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Degree Poly::degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
}

Rat Poly::operator()(const Rat& at) const {
    Rat r;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * at + *it;
    return r;
}

Poly Poly::operator()(const Poly& q) const {
    Poly r;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * q + Poly(*it);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Rat& c) {
    if (c.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    for (auto& a : coeffs_) a *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(r));
}

Poly derivative(const Poly& p) {
    auto c = p.coeffs();
    if (c.size() <= 1) return {};
    std::vector<Rat> r(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) r[k - 1] = c[k] * Rat(static_cast<long>(k));
    return Poly(std::move(r));
}

Poly antiderivative(const Poly& p) {
    auto c = p.coeffs();
    if (c.empty()) return {};
    std::vector<Rat> r(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) r[k + 1] = c[k] / Rat(static_cast<long>(k + 1));
    return Poly(std::move(r));
}

Poly pow(const Poly& p, std::size_t k) {
    Poly r(Rat(1)), b = p;
    for (; k; k >>= 1) {
        if (k & 1) r = r * b;
        if (k > 1) b = b * b;
    }
    return r;
}

Poly shifted(const Poly& p, const Rat& a) {
    return p(Poly(std::vector<Rat>{a, Rat(1)}));
}

Poly truncated(const Poly& p, std::size_t max_degree) {
    auto c = p.coeffs();
    std::vector<Rat> r(c.begin(), c.begin() + std::min(c.size(), max_degree + 1));
    return Poly(std::move(r));
}

Poly falling_factorial(std::size_t m) { return falling_factorial(m, 0); }

Poly falling_factorial(std::size_t m, long shift) {
    Poly r(Rat(1));
    for (std::size_t i = 0; i < m; ++i)
        r = r * Poly(std::vector<Rat>{Rat(shift - static_cast<long>(i)), Rat(1)});
    return r;
}

std::string to_string(const Poly& p, char variable) {
    auto c = p.coeffs();
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c.size(); i-- > 0;) {
        const Rat& a = c[i];
        if (a.is_zero()) continue;
        if (first) {
            if (a.sign() < 0) os << "-";
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
        }
        first = false;
        Rat mag = abs(a);
        if (i == 0) {
            os << mag;
            continue;
        }
        if (mag != Rat(1)) os << mag << "*";
        os << variable;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

namespace {

// Recursive descent over a single-variable arithmetic expression.
class PolyParser {
public:
    PolyParser(std::string_view text, char var) : s_(text), var_(var) {}

    Poly parse() {
        skip();
        if (pos_ >= s_.size()) fail({"polynomial"}, "empty polynomial");
        Poly p = sum();
        skip();
        if (pos_ < s_.size()) fail({"'+'", "'-'", "'*'", "'/'", "end of input"}, "unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& msg) const {
        throw ParseError(1, pos_ + 1, std::move(expected), msg);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_primary() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return c == '(' || c == var_ || std::isdigit(static_cast<unsigned char>(c));
    }

    Poly sum() {
        Poly r;
        bool neg = false;
        if (peek('-')) { ++pos_; neg = true; }
        else if (peek('+')) { ++pos_; }
        Poly t = product();
        r = neg ? -t : t;
        while (true) {
            if (peek('+')) { ++pos_; r += product(); }
            else if (peek('-')) { ++pos_; r -= product(); }
            else break;
        }
        return r;
    }

    Poly product() {
        Poly r = power();
        while (true) {
            if (peek('*')) {
                ++pos_;
                r = r * power();
            } else if (peek('/')) {
                ++pos_;
                std::size_t at = pos_;
                Poly d = power();
                if (d.degree() != Degree(0)) {
                    pos_ = at;
                    fail({"nonzero constant"}, "division by a non-constant or zero");
                }
                r = r / d.coeff(0);
            } else if (starts_primary()) {
                r = r * power();
            } else {
                break;
            }
        }
        return r;
    }

    Poly power() {
        Poly base = primary();
        if (peek('^')) {
            ++pos_;
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail({"nonnegative integer exponent"}, "bad exponent");
            base = pow(base, std::stoul(std::string(s_.substr(start, pos_ - start))));
        }
        return base;
    }

    Poly primary() {
        skip();
        if (pos_ >= s_.size()) fail({"number", std::string("'") + var_ + "'", "'('"}, "unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = sum();
            if (!peek(')')) fail({"')'"}, "unbalanced parenthesis");
            ++pos_;
            return p;
        }
        if (c == var_) {
            ++pos_;
            return Poly::x();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Poly(Rat::parse(s_.substr(start, pos_ - start)));
        }
        fail({"number", std::string("'") + var_ + "'", "'('"}, "unexpected character");
    }

    std::string_view s_;
    char var_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, char variable) { return PolyParser(text, variable).parse(); }

}  // namespace opcalc
