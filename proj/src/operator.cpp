#include "opcalc/operator.hpp"

#include <sstream>

#include "opcalc/errors.hpp"

namespace opcalc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <class T>
OpExpr make(T value) {
    return OpExpr(std::make_shared<const OpExpr::Node>(OpExpr::Node{std::move(value)}));
}

}  // namespace

OpExpr::OpExpr() : node_(std::make_shared<const Node>(Node{node::Identity{}})) {}

namespace op {
OpExpr D() { return make(node::Derivative{}); }
OpExpr X() { return make(node::MulX{}); }
OpExpr I() { return make(node::Identity{}); }
OpExpr J() { return make(node::Integral{}); }
OpExpr Delta() { return make(node::ForwardDifference{}); }
OpExpr E(const Rat& a) { return make(node::Shift{a}); }
OpExpr eval0() { return make(node::Eval0{}); }
OpExpr sub(const Poly& q) {
    if (q.is_zero()) throw InvalidOperator("substitution needs a nonzero polynomial (use Eval0)");
    return make(node::Substitute{q});
}
OpExpr series(const SSeries& f) { return make(node::SeriesInD{f}); }
OpExpr mul(const Poly& p) { return make(node::PolyInX{p}); }
OpExpr custom(std::string name, std::function<Poly(std::size_t)> image) {
    return make(node::Custom{std::move(name), std::move(image)});
}
}  // namespace op

OpExpr operator*(const OpExpr& a, const OpExpr& b) { return make(node::Compose{a, b}); }
OpExpr operator+(const OpExpr& a, const OpExpr& b) { return make(node::Sum{{a, b}}); }
OpExpr operator-(const OpExpr& a) { return make(node::Scale{Rat(-1), a}); }
OpExpr operator-(const OpExpr& a, const OpExpr& b) { return a + (-b); }
OpExpr operator*(const Rat& c, const OpExpr& a) { return make(node::Scale{c, a}); }
OpExpr sum(std::vector<OpExpr> terms) { return make(node::Sum{std::move(terms)}); }

OpExpr pow(const OpExpr& a, std::size_t k) {
    if (k == 0) return op::I();
    OpExpr r = a;
    for (std::size_t i = 1; i < k; ++i) r = a * r;
    return r;
}

Poly apply_series(const SSeries& f, const Poly& p) {
    Degree d = p.degree();
    if (!d) return {};
    if (!f.covers(*d))
        throw TruncationError("series in D truncated at t^" + std::to_string(f.trunc_order()) +
                              " applied to a polynomial of degree " + std::to_string(*d));
    Poly r, dp = p;
    for (std::size_t k = 0; k <= *d; ++k) {
        Rat c = f.coeff(k);
        if (!c.is_zero()) r += c * dp;
        dp = derivative(dp);
    }
    return r;
}

Poly op_apply(const OpExpr& q, const Poly& p) {
    return std::visit(
        overloaded{
            [&](const node::Derivative&) { return derivative(p); },
            [&](const node::MulX&) { return Poly::x() * p; },
            [&](const node::Identity&) { return p; },
            [&](const node::Integral&) { return antiderivative(p); },
            [&](const node::ForwardDifference&) { return shifted(p, Rat(1)) - p; },
            [&](const node::Shift& s) { return shifted(p, s.a); },
            [&](const node::Eval0&) { return Poly(p(Rat(0))); },
            [&](const node::Substitute& s) { return p(s.q); },
            [&](const node::SeriesInD& s) { return apply_series(s.f, p); },
            [&](const node::PolyInX& m) { return m.p * p; },
            [&](const node::Custom& c) {
                Poly r;
                auto cs = p.coeffs();
                for (std::size_t n = 0; n < cs.size(); ++n)
                    if (!cs[n].is_zero()) r += cs[n] * c.image(n);
                return r;
            },
            [&](const node::Compose& c) { return op_apply(c.left, op_apply(c.right, p)); },
            [&](const node::Sum& s) {
                Poly r;
                for (const auto& t : s.terms) r += op_apply(t, p);
                return r;
            },
            [&](const node::Scale& s) { return s.c * op_apply(s.inner, p); },
        },
        q.node().value);
}

namespace {

// Precedence: 0 sum, 1 composition/scaled, 2 atom.
int precedence(const OpExpr& q) {
    return std::visit(overloaded{
                          [](const node::Sum&) { return 0; },
                          [](const node::Compose&) { return 1; },
                          [](const node::Scale&) { return 1; },
                          [](const auto&) { return 2; },
                      },
                      q.node().value);
}

std::string render(const OpExpr& q);

std::string wrap(const OpExpr& q, int min_prec) {
    std::string s = render(q);
    return precedence(q) < min_prec ? "(" + s + ")" : s;
}

std::string render_series(const SSeries& f) {
    std::string body = to_string(f.as_poly(), 't');
    if (f.is_exact()) return "series(" + body + ")";
    return "series(" + body + ", " + std::to_string(f.trunc_order()) + ")";
}

std::string render(const OpExpr& q) {
    return std::visit(
        overloaded{
            [](const node::Derivative&) -> std::string { return "D"; },
            [](const node::MulX&) -> std::string { return "X"; },
            [](const node::Identity&) -> std::string { return "I"; },
            [](const node::Integral&) -> std::string { return "J"; },
            [](const node::ForwardDifference&) -> std::string { return "Delta"; },
            [](const node::Shift& s) -> std::string { return "E(" + s.a.str() + ")"; },
            [](const node::Eval0&) -> std::string { return "Eval0"; },
            [](const node::Substitute& s) -> std::string { return "sub(" + to_string(s.q) + ")"; },
            [](const node::SeriesInD& s) -> std::string { return render_series(s.f); },
            [](const node::PolyInX& m) -> std::string { return "poly(" + to_string(m.p) + ")"; },
            [](const node::Custom& c) -> std::string { return c.name; },
            [](const node::Compose& c) -> std::string {
                // the right operand of a juxtaposition must not start with a sign
                return wrap(c.left, 2) + " " + wrap(c.right, 2);
            },
            [](const node::Sum& s) -> std::string {
                if (s.terms.empty()) return "0*I";
                std::string out;
                for (std::size_t i = 0; i < s.terms.size(); ++i) {
                    std::string t = wrap(s.terms[i], 1);
                    if (i == 0) {
                        out = t;
                    } else if (!t.empty() && t[0] == '-') {
                        out += " - " + t.substr(1);
                    } else {
                        out += " + " + t;
                    }
                }
                return out;
            },
            [](const node::Scale& s) -> std::string {
                std::string inner = wrap(s.inner, 2);
                if (s.c == Rat(-1)) return "-" + inner;
                if (s.c.sign() < 0) return "-" + abs(s.c).str() + "*" + inner;
                return s.c.str() + "*" + inner;
            },
        },
        q.node().value);
}

}  // namespace

std::string to_string(const OpExpr& q) { return render(q); }

OpTable::OpTable(OpExpr op) : op_(std::move(op)), cache_(std::make_shared<Cache>()) {}

Poly OpTable::row(std::size_t n) const {
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->rows.find(n);
        if (it != cache_->rows.end()) return it->second;
    }
    // computed outside the lock; a racing duplicate computes the same value
    Poly r = op_apply(op_, Poly::monomial(n));
    std::lock_guard lock(cache_->mutex);
    return cache_->rows.try_emplace(n, std::move(r)).first->second;
}

Rat OpTable::coefficient(std::size_t n, long k) const {
    if (k < 0) return Rat(0);
    return row(n).coeff(static_cast<std::size_t>(k));
}

std::vector<Rat> OpTable::diagonal(long t, std::size_t n_max) const {
    std::vector<Rat> q(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) q[n] = coefficient(n, static_cast<long>(n) + t);
    return q;
}

std::size_t OpTable::cached_rows() const {
    std::lock_guard lock(cache_->mutex);
    return cache_->rows.size();
}

bool op_equal_upto(const OpExpr& q, const OpExpr& r, std::size_t N) {
    for (std::size_t n = 0; n <= N; ++n) {
        Poly m = Poly::monomial(n);
        if (op_apply(q, m) != op_apply(r, m)) return false;
    }
    return true;
}

bool shift_invariance_check(const OpExpr& q, std::size_t N, std::span<const Rat> samples) {
    if (samples.empty()) throw std::invalid_argument("shift_invariance_check: empty sample set");
    for (std::size_t n = 0; n <= N; ++n) {
        Poly m = Poly::monomial(n);
        Poly qm = op_apply(q, m);
        for (const Rat& a : samples)
            if (op_apply(q, shifted(m, a)) != shifted(qm, a)) return false;
    }
    return true;
}

SSeries d_expand(const OpExpr& q, std::size_t N) {
    std::vector<Rat> a(N + 1);
    for (std::size_t k = 0; k <= N; ++k) a[k] = op_apply(q, Poly::monomial(k))(Rat(0)) / factorial(k);
    return SSeries::truncated(std::move(a), N);
}

}  // namespace opcalc
