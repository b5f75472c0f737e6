#include "opcalc/expansion_xd.hpp"

#include <sstream>

#include "opcalc/errors.hpp"

namespace opcalc {

namespace {

// Index of the first degree in 0..N where B is not degree reducing, or N+1.
std::size_t first_failure(const OpTable& table, std::size_t N) {
    if (!table.row(0).is_zero()) return 0;
    for (std::size_t n = 1; n <= N; ++n)
        if (table.row(n).degree() != Degree(n - 1)) return n;
    return N + 1;
}

}  // namespace

bool degree_reducing_check(const OpExpr& B, std::size_t N) {
    OpTable table(B);
    return first_failure(table, N) == N + 1;
}

DividedPowerBasis divided_power_basis(const OpExpr& B, std::size_t N, std::string name) {
    OpTable table(B);
    if (std::size_t bad = first_failure(table, N + 1); bad != N + 2)
        throw NotDegreeReducing(bad, "operator is not degree reducing at degree " + std::to_string(bad));

    std::vector<Poly> b{Poly(Rat(1))};
    for (std::size_t n = 1; n <= N; ++n) {
        // b_n = sum_{j=1}^n c_j x^j; B x^j has degree j-1, so solve from the top.
        Poly residual = b[n - 1];
        std::vector<Rat> c(n + 1);
        for (std::size_t j = n; j >= 1; --j) {
            Poly img = table.row(j);
            c[j] = residual.coeff(j - 1) / img.coeff(j - 1);
            residual -= c[j] * img;
        }
        if (!residual.is_zero()) throw Error("divided power solve left a nonzero residual");
        b.push_back(Poly(std::move(c)));
    }
    PSeries gen(b, N);
    return DividedPowerBasis{B, std::move(name), std::move(b), std::move(gen)};
}

DividedPowerBasis d_basis(std::size_t N) {
    std::vector<Poly> b;
    for (std::size_t n = 0; n <= N; ++n) b.push_back(Poly::monomial(n, Rat(1) / factorial(n)));
    PSeries gen(b, N);
    return DividedPowerBasis{op::D(), "D", std::move(b), std::move(gen)};
}

DividedPowerBasis delta_basis(std::size_t N) {
    std::vector<Poly> b;
    for (std::size_t n = 0; n <= N; ++n) b.push_back(falling_factorial(n) / factorial(n));
    PSeries gen(b, N);
    return DividedPowerBasis{op::Delta(), "Delta", std::move(b), std::move(gen)};
}

XDExpansion xd_expand(const OpExpr& q, std::size_t N) {
    OpTable table(q);
    // (-x)^m / m!
    std::vector<Poly> neg_exp;
    for (std::size_t m = 0; m <= N; ++m)
        neg_exp.push_back(Poly::monomial(m, pow(Rat(-1), static_cast<long>(m)) / factorial(m)));
    std::vector<Poly> images;
    for (std::size_t k = 0; k <= N; ++k) images.push_back(table.row(k) / factorial(k));

    XDExpansion e;
    e.trunc_order = N;
    for (std::size_t n = 0; n <= N; ++n) {
        Poly a;
        for (std::size_t k = 0; k <= n; ++k) a += images[k] * neg_exp[n - k];
        e.terms.push_back(std::move(a));
    }
    return e;
}

XDExpansion xb_expand(const OpExpr& q, const DividedPowerBasis& basis, std::size_t N) {
    if (N > basis.trunc_order())
        throw TruncationError("expansion order exceeds the divided power basis truncation");
    std::vector<Poly> qb;
    for (std::size_t n = 0; n <= N; ++n) qb.push_back(op_apply(q, basis.polys[n]));
    PSeries b(std::vector<Poly>(basis.polys.begin(), basis.polys.begin() + N + 1), N);
    PSeries a = PSeries(std::move(qb), N) * invert(b);

    XDExpansion e;
    e.basis_tag = basis.name == "D" ? BasisTag::D : BasisTag::Custom;
    e.basis_name = basis.name;
    e.basis_op = basis.B;
    e.trunc_order = N;
    for (std::size_t k = 0; k <= N; ++k) e.terms.push_back(a.coeff(k));
    return e;
}

Poly xd_apply(const XDExpansion& e, const Poly& p, bool strict) {
    Degree d = p.degree();
    if (!d) return {};
    if (strict && *d > e.trunc_order)
        throw TruncationError("polynomial degree " + std::to_string(*d) +
                              " exceeds expansion order " + std::to_string(e.trunc_order));
    Poly r, bp = p;
    for (std::size_t k = 0; k < e.terms.size() && !bp.is_zero(); ++k) {
        if (!e.terms[k].is_zero()) r += e.terms[k] * bp;
        bp = op_apply(e.basis_op, bp);
    }
    return r;
}

std::vector<Rat> to_basis(const Poly& p, const DividedPowerBasis& basis) {
    Degree d = p.degree();
    if (!d) return {};
    if (*d > basis.trunc_order())
        throw TruncationError("polynomial degree exceeds the divided power basis truncation");
    std::vector<Rat> c(*d + 1);
    Poly residual = p;
    for (std::size_t n = *d + 1; n-- > 0;) {
        c[n] = residual.coeff(n) / basis.polys[n].coeff(n);
        residual -= c[n] * basis.polys[n];
    }
    return c;
}

Poly to_monomial(std::span<const Rat> coords, const DividedPowerBasis& basis) {
    if (!coords.empty() && coords.size() - 1 > basis.trunc_order())
        throw TruncationError("coordinate vector longer than the divided power basis");
    Poly r;
    for (std::size_t n = 0; n < coords.size(); ++n) r += coords[n] * basis.polys[n];
    return r;
}

std::string to_string(const XDExpansion& e) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < e.terms.size(); ++k) {
        if (e.terms[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(e.terms[k]) << ")";
        if (k >= 1) os << "*" << e.basis_name;
        if (k > 1) os << "^" << k;
    }
    if (first) os << "0";
    os << " + O(" << e.basis_name << "^" << e.trunc_order + 1 << ")";
    return os.str();
}

}  // namespace opcalc
