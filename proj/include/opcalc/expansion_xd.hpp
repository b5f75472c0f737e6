#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "opcalc/operator.hpp"
#include "opcalc/poly.hpp"
#include "opcalc/series.hpp"

namespace opcalc {

enum class BasisTag { D, Custom };

/// Q = sum_k a_k(X) B^k, correct on every polynomial of degree <= trunc_order.
struct XDExpansion {
    BasisTag basis_tag = BasisTag::D;
    std::string basis_name = "D";
    OpExpr basis_op = op::D();
    std::vector<Poly> terms;
    std::size_t trunc_order = 0;
};

/// Divided power sequence b_0..b_N of a degree-reducing B, with b(x,t) = sum b_n t^n.
struct DividedPowerBasis {
    OpExpr B;
    std::string name;
    std::vector<Poly> polys;
    PSeries genfun;

    std::size_t trunc_order() const { return polys.empty() ? 0 : polys.size() - 1; }
};

/// B kills constants and lowers the degree of x^n by exactly one for 1 <= n <= N.
bool degree_reducing_check(const OpExpr& B, std::size_t N);

/// Solves B b_n = b_{n-1}, b_n(0) = 0 (n >= 1), b_0 = 1 by triangular
/// back-substitution. Throws NotDegreeReducing when the check fails on 0..N+1.
DividedPowerBasis divided_power_basis(const OpExpr& B, std::size_t N, std::string name = "B");

/// Bases with closed forms, kept for tests and the CLI.
DividedPowerBasis d_basis(std::size_t N);
DividedPowerBasis delta_basis(std::size_t N);

/// a_n(x) = sum_{k<=n} (Q x^k)/k! * (-x)^{n-k}/(n-k)!, n = 0..N.
XDExpansion xd_expand(const OpExpr& q, std::size_t N);

/// a(x,t) = Q b(x,t) / b(x,t) for the given basis.
XDExpansion xb_expand(const OpExpr& q, const DividedPowerBasis& basis, std::size_t N);

/// sum_k a_k(X) B^k p. With strict set, deg(p) > trunc_order is a TruncationError;
/// otherwise the sum stops at the stored terms.
Poly xd_apply(const XDExpansion& e, const Poly& p, bool strict = false);

/// Coordinates c with p = sum c_n b_n.
std::vector<Rat> to_basis(const Poly& p, const DividedPowerBasis& basis);
Poly to_monomial(std::span<const Rat> coords, const DividedPowerBasis& basis);

/// "(x) + (-1/2*x^2)*D + ... + O(D^5)"; zero terms are skipped.
std::string to_string(const XDExpansion& e);

}  // namespace opcalc
