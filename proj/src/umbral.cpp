#include "opcalc/umbral.hpp"

#include "opcalc/errors.hpp"

namespace opcalc {

DeltaOp::DeltaOp(SSeries f) : f_(std::move(f)) {
    if (!f_.coeff(0).is_zero() || !f_.covers(1) || f_.coeff(1).is_zero())
        throw NotDelta("delta operator needs a symbol of order exactly 1");
}

DeltaOp delta_from_series(const SSeries& f) { return DeltaOp(f); }

std::vector<Poly> conjugate_sequence(const DeltaOp& p, std::size_t N) {
    if (!p.symbol().covers(N))
        throw TruncationError("delta symbol truncated below the requested sequence length");
    PSeries e = exp(scale_by_poly(PSeries::lift(p.symbol(), N), Poly::x()));
    std::vector<Poly> out;
    for (std::size_t k = 0; k <= N; ++k) out.push_back(factorial(k) * e.coeff(k));
    return out;
}

UmbralSequences sequences(const DeltaOp& p, std::size_t N) {
    UmbralSequences s;
    s.divided = {SequenceKind::DividedPower, divided_power_basis(p.op(), N, "P").polys, p.symbol()};
    s.basic = {SequenceKind::Basic, {}, p.symbol()};
    for (std::size_t n = 0; n < s.divided.polys.size(); ++n)
        s.basic.polys.push_back(factorial(n) * s.divided.polys[n]);
    s.conjugate = {SequenceKind::Conjugate, conjugate_sequence(p, N), p.symbol()};
    return s;
}

Poly umbral_op_apply(const DeltaOp& p, const Poly& q) {
    Degree d = q.degree();
    if (!d) return {};
    auto conj = conjugate_sequence(p, *d);
    Poly r;
    for (std::size_t k = 0; k <= *d; ++k)
        if (!q.coeff(k).is_zero()) r += q.coeff(k) * conj[k];
    return r;
}

XDExpansion umbral_op_xd(const DeltaOp& p, std::size_t N) {
    SSeries t = SSeries::exact(std::vector<Rat>{Rat(0), Rat(1)});
    PSeries arg = scale_by_poly(PSeries::lift(p.symbol() - t, N), Poly::x());
    PSeries a = exp(arg);
    XDExpansion e;
    e.trunc_order = N;
    for (std::size_t n = 0; n <= N; ++n) e.terms.push_back(a.coeff(n));
    return e;
}

DXExpansion umbral_op_dx(const DeltaOp& p, std::size_t K) {
    if (p.linear_coefficient() != Rat(1))
        throw NotDXEligible("umbral operator has a DX expansion only when P x = 1");
    // U_P = sum_k r'(D) (D - r(D))^k X^k / k! with r the compositional inverse
    // of the symbol. Term k only reaches x^n for k <= n, through t^(2n).
    const SSeries t = SSeries::exact(std::vector<Rat>{Rat(0), Rat(1)});
    const SSeries& f = p.symbol();
    bool closed = !f.is_exact() || f.trunc_order() == 1;
    SSeries r = (closed ? delta_inverse(p) : delta_inverse(p, 2 * K + 2)).symbol();
    SSeries g = t - r;
    SSeries rp = derivative(r);

    DXExpansion e;
    // ord(r' g^k) = k ord(g); read off the orders rather than the truncated
    // products, whose known prefix runs out for large k.
    std::optional<std::size_t> ord_g = order_lower_bound(g);
    std::vector<std::optional<std::size_t>> orders;
    SSeries gk = rp.precision() ? SSeries::truncated({Rat(1)}, *rp.precision()) : SSeries::exact(std::vector<Rat>{Rat(1)});
    for (std::size_t k = 0; k <= K; ++k) {
        e.terms.push_back((Rat(1) / factorial(k)) * (rp * gk));
        gk = gk * g;
        if (!ord_g && k > 0) orders.push_back(std::nullopt);
        else orders.push_back(k * ord_g.value_or(0));
    }
    e.complete = g.is_exact() && g.is_zero();
    e.certificate = dx_convergence_check(orders, 1, e.complete);
    e.source = umbral_operator(p);
    return e;
}

SSeries pincherle_derivative(const SSeries& f) { return derivative(f); }

Poly umbral_shift_apply(const DeltaOp& p, const Poly& q) {
    Degree d = q.degree();
    if (!d) return {};
    DividedPowerBasis basis = divided_power_basis(p.op(), *d + 1, "P");
    auto c = to_basis(q, basis);
    Poly r;
    for (std::size_t n = 0; n < c.size(); ++n)
        if (!c[n].is_zero()) r += (c[n] * Rat(static_cast<long>(n + 1))) * basis.polys[n + 1];
    return r;
}

XDExpansion rodrigues_xd(const DeltaOp& p, std::size_t N) {
    SSeries inv = invert(pincherle_derivative(p.symbol()), N);
    XDExpansion e;
    e.trunc_order = N;
    for (std::size_t n = 0; n <= N; ++n) e.terms.push_back(Poly::monomial(1, inv.coeff(n)));
    return e;
}

DXExpansion umbral_shift_dx(const DeltaOp& p, std::size_t N) {
    // sigma_P = c sigma_{cP} with c = 1/P x, so the formula runs on a symbol with P x = 1
    Rat c = Rat(1) / p.linear_coefficient();
    SSeries g = c * p.symbol();
    SSeries g1 = pincherle_derivative(g);
    SSeries g2 = derivative(g1);
    SSeries inv = invert(g1, N + 1);
    SSeries f1 = c * inv;
    SSeries f0 = c * (g2 * inv * inv).truncate(N);

    DXExpansion e;
    e.terms = {f0, f1};
    e.complete = true;
    e.source = umbral_shift_operator(p);
    certify(e);
    return e;
}

DeltaOp delta_inverse(const DeltaOp& p, std::optional<std::size_t> order) {
    const SSeries& f = p.symbol();
    if (f.is_exact() && !order) {
        if (f.trunc_order() != 1)
            throw std::invalid_argument("delta_inverse: exact symbol of degree > 1 needs an order");
        return DeltaOp(SSeries::exact(std::vector<Rat>{Rat(0), Rat(1) / f.coeff(1)}));
    }
    return DeltaOp(order ? reverse(f, *order) : reverse(f));
}

XDExpansion endomorphism_xd(const Poly& q, std::size_t N) {
    XDExpansion e;
    e.trunc_order = N;
    Poly diff = q - Poly::x();
    for (std::size_t k = 0; k <= N; ++k) e.terms.push_back(pow(diff, k) / factorial(k));
    return e;
}

OpExpr umbral_operator(const DeltaOp& p) {
    return op::custom("U[" + to_string(p.symbol()) + "]",
                      [p](std::size_t n) { return conjugate_sequence(p, n)[n]; });
}

OpExpr umbral_shift_operator(const DeltaOp& p) {
    return op::custom("sigma[" + to_string(p.symbol()) + "]",
                      [p](std::size_t n) { return umbral_shift_apply(p, Poly::monomial(n)); });
}

}  // namespace opcalc
