#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "opcalc/expansion_dx.hpp"
#include "opcalc/expansion_xd.hpp"
#include "opcalc/operator.hpp"
#include "opcalc/series.hpp"

namespace opcalc {

/// Delta operator P = f(D) with ord(f) = 1. The symbol may be truncated;
/// results are then valid on degrees the truncation covers.
class DeltaOp {
public:
    /// Throws NotDelta unless f(0) = 0 and f'(0) != 0.
    explicit DeltaOp(SSeries f);

    static DeltaOp derivative() { return DeltaOp(SSeries::exact(std::vector<Rat>{Rat(0), Rat(1)})); }
    static DeltaOp forward_difference(std::size_t order) { return DeltaOp(expm1_series(order)); }

    const SSeries& symbol() const { return f_; }
    /// f'(0), i.e. P x.
    Rat linear_coefficient() const { return f_.coeff(1); }
    OpExpr op() const { return op::series(f_); }

private:
    SSeries f_;
};

DeltaOp delta_from_series(const SSeries& f);

enum class SequenceKind { DividedPower, Basic, Conjugate };

struct PolySequence {
    SequenceKind kind = SequenceKind::DividedPower;
    std::vector<Poly> polys;
    SSeries source;
};

struct UmbralSequences {
    PolySequence divided;
    PolySequence basic;
    PolySequence conjugate;
};

/// Conjugate sequence: sum_k pbar_k(x) t^k / k! = exp(x f(t)), k = 0..N.
std::vector<Poly> conjugate_sequence(const DeltaOp& p, std::size_t N);
UmbralSequences sequences(const DeltaOp& p, std::size_t N);

/// U_P: linear extension of x^k -> pbar_k(x).
Poly umbral_op_apply(const DeltaOp& p, const Poly& q);
/// U_P = sum_k X^k (P - D)^k / k!, i.e. a(x,t) = exp(x (f(t) - t)).
XDExpansion umbral_op_xd(const DeltaOp& p, std::size_t N);
/// U_P = sum_k r'(D) (D - r(D))^k X^k / k!, r the compositional inverse of the
/// symbol, for the K+1 terms k = 0..K.
/// Throws NotDXEligible when P x != 1.
DXExpansion umbral_op_dx(const DeltaOp& p, std::size_t K);

/// Symbol of P' = P X - X P.
SSeries pincherle_derivative(const SSeries& f);

/// sigma_P: linear extension of p_n -> (n+1) p_{n+1} over the divided powers.
Poly umbral_shift_apply(const DeltaOp& p, const Poly& q);
/// sigma_P = X (1/P'), in XD form.
XDExpansion rodrigues_xd(const DeltaOp& p, std::size_t N);
/// sigma_P = (1/P') X + P''/(P')^2, valid on degrees <= N.
DXExpansion umbral_shift_dx(const DeltaOp& p, std::size_t N);

/// R = r(D) with r(f(t)) = t. Exact symbols of degree > 1 need an explicit order.
DeltaOp delta_inverse(const DeltaOp& p, std::optional<std::size_t> order = std::nullopt);

/// p -> p(q(x)) as sum_k (q(X) - X)^k D^k / k!.
XDExpansion endomorphism_xd(const Poly& q, std::size_t N);

/// U_P and sigma_P as operators defined by their action on monomials.
OpExpr umbral_operator(const DeltaOp& p);
OpExpr umbral_shift_operator(const DeltaOp& p);

}  // namespace opcalc
