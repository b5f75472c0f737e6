#include "opcalc/rat.hpp"

#include <ostream>
#include <sstream>

#include "opcalc/errors.hpp"

namespace opcalc {

ParseError::ParseError(std::size_t l, std::size_t c, std::vector<std::string> exp,
                       const std::string& msg)
    : Error([&] {
          std::ostringstream os;
          os << l << ":" << c << ": " << msg;
          if (!exp.empty()) {
              os << " (expected ";
              for (std::size_t i = 0; i < exp.size(); ++i) os << (i ? ", " : "") << exp[i];
              os << ")";
          }
          return os.str();
      }()),
      line(l), column(c), expected(std::move(exp)) {}

Rat::Rat(long num, long den) : value_(num, den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    value_.canonicalize();
}

Rat::Rat(mpq_class v) : value_(std::move(v)) {
    if (value_.get_den() == 0) throw std::domain_error("Rat: zero denominator");
    value_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
    auto bad = [&] { return std::invalid_argument("Rat: cannot parse '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string num(text.substr(0, slash));
    std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') throw bad();
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw bad();
    return Rat(mpq_class(n, d));
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    value_ /= o.value_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

Rat pow(const Rat& base, long exponent) {
    if (exponent < 0) return Rat(1) / pow(base, -exponent);
    Rat result(1), b = base;
    for (unsigned long e = static_cast<unsigned long>(exponent); e; e >>= 1) {
        if (e & 1) result *= b;
        if (e > 1) b *= b;
    }
    return result;
}

Rat factorial(std::size_t n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rat(mpq_class(f));
}

Rat binomial(long n, std::size_t k) {
    // generalized: n(n-1)...(n-k+1)/k!, valid for negative n too
    Rat r(1);
    for (std::size_t i = 0; i < k; ++i) r *= Rat(n - static_cast<long>(i));
    return r / factorial(k);
}

}  // namespace opcalc
