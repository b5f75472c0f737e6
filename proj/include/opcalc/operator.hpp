#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "opcalc/poly.hpp"
#include "opcalc/rat.hpp"
#include "opcalc/series.hpp"

namespace opcalc {

class OpExpr;

namespace node {
struct Derivative {};
struct MulX {};
struct Identity {};
/// Definite integral from 0 to x.
struct Integral {};
/// p(x+1) - p(x).
struct ForwardDifference {};
struct Shift { Rat a; };
struct Eval0 {};
/// p -> p(q(x)), q nonzero.
struct Substitute { Poly q; };
/// f(D) for a formal series f.
struct SeriesInD { SSeries f; };
/// Multiplication by a polynomial.
struct PolyInX { Poly p; };
/// Operator known only through its action n -> Q x^n.
struct Custom {
    std::string name;
    std::function<Poly(std::size_t)> image;
};
/// left o right: right is applied first.
struct Compose;
struct Sum;
struct Scale;
}  // namespace node

/// Immutable linear operator on K[x], shared by value.
class OpExpr {
public:
    struct Node;

    /// Identity operator.
    OpExpr();
    explicit OpExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    const Node& node() const { return *node_; }

private:
    std::shared_ptr<const Node> node_;
};

namespace node {
struct Compose { OpExpr left, right; };
struct Sum { std::vector<OpExpr> terms; };
struct Scale { Rat c; OpExpr inner; };
}  // namespace node

struct OpExpr::Node {
    std::variant<node::Derivative, node::MulX, node::Identity, node::Integral,
                 node::ForwardDifference, node::Shift, node::Eval0, node::Substitute,
                 node::SeriesInD, node::PolyInX, node::Custom, node::Compose, node::Sum,
                 node::Scale>
        value;
};

namespace op {
OpExpr D();
OpExpr X();
OpExpr I();
OpExpr J();
OpExpr Delta();
OpExpr E(const Rat& a);
OpExpr eval0();
OpExpr sub(const Poly& q);
OpExpr series(const SSeries& f);
OpExpr mul(const Poly& p);
OpExpr custom(std::string name, std::function<Poly(std::size_t)> image);
}  // namespace op

/// Composition: (a * b) p = a(b(p)).
OpExpr operator*(const OpExpr& a, const OpExpr& b);
OpExpr operator+(const OpExpr& a, const OpExpr& b);
OpExpr operator-(const OpExpr& a, const OpExpr& b);
OpExpr operator-(const OpExpr& a);
OpExpr operator*(const Rat& c, const OpExpr& a);
OpExpr sum(std::vector<OpExpr> terms);
OpExpr pow(const OpExpr& a, std::size_t k);

/// f(D) p for a series symbol f; TruncationError when f is too short for deg(p).
Poly apply_series(const SSeries& f, const Poly& p);

/// Exact image Q p.
Poly op_apply(const OpExpr& q, const Poly& p);

/// DSL text for an expression; Custom leaves render by name and do not reparse.
std::string to_string(const OpExpr& q);

/// Memoized matrix view of an operator: row n is Q x^n = sum_k c_{nk} x^k.
/// Safe for concurrent reads; each row is inserted once under a lock.
class OpTable {
public:
    explicit OpTable(OpExpr op);

    const OpExpr& op() const { return op_; }

    Poly row(std::size_t n) const;
    /// c_{nk}; zero for k < 0.
    Rat coefficient(std::size_t n, long k) const;
    /// q_t(0..n_max) with q_t(n) = c_{n,n+t}.
    std::vector<Rat> diagonal(long t, std::size_t n_max) const;

    std::size_t cached_rows() const;

private:
    struct Cache {
        mutable std::mutex mutex;
        std::map<std::size_t, Poly> rows;
    };

    OpExpr op_;
    std::shared_ptr<Cache> cache_;
};

/// True iff Q x^n = R x^n for 0 <= n <= N.
bool op_equal_upto(const OpExpr& q, const OpExpr& r, std::size_t N);

inline const std::vector<Rat>& default_shift_samples() {
    static const std::vector<Rat> s{Rat(1), Rat(-1), Rat(2), Rat(1, 2)};
    return s;
}

/// Checks Q E^a x^n = E^a Q x^n for every sample a and n <= N. A false result
/// is a proof; true is evidence up to degree N.
bool shift_invariance_check(const OpExpr& q, std::size_t N,
                            std::span<const Rat> samples = default_shift_samples());

/// D-expansion coefficients a_k = [Q x^k / k!]_{x=0}, k = 0..N.
SSeries d_expand(const OpExpr& q, std::size_t N);

}  // namespace opcalc
