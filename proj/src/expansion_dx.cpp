#include "opcalc/expansion_dx.hpp"

#include <algorithm>
#include <sstream>

#include "opcalc/errors.hpp"

namespace opcalc {

// --- normal ordering -------------------------------------------------------

std::vector<WordTerm> normal_order_DjXi(std::size_t j, std::size_t i) {
    std::vector<WordTerm> out;
    for (std::size_t k = 0; k <= std::min(i, j); ++k) {
        Rat c = falling_factorial(k)(Rat(static_cast<long>(i))) *
                falling_factorial(k)(Rat(static_cast<long>(j))) / factorial(k);
        out.push_back({c, i - k, j - k});
    }
    return out;
}

std::vector<WordTerm> normal_order_XiDj(std::size_t i, std::size_t j) {
    std::vector<WordTerm> out;
    for (std::size_t k = 0; k <= std::min(i, j); ++k) {
        Rat c = falling_factorial(k)(Rat(static_cast<long>(i))) *
                falling_factorial(k)(Rat(static_cast<long>(j))) / factorial(k);
        if (k % 2 == 1) c = -c;
        out.push_back({c, i - k, j - k});
    }
    return out;
}

Poly apply_word(WordOrder order, std::size_t x_pow, std::size_t d_pow, const Poly& p) {
    auto diff = [](Poly q, std::size_t k) {
        for (std::size_t i = 0; i < k && !q.is_zero(); ++i) q = derivative(q);
        return q;
    };
    Poly xs = Poly::monomial(x_pow);
    if (order == WordOrder::XD) return xs * diff(p, d_pow);
    return diff(xs * p, d_pow);
}

Poly apply_terms(WordOrder order, std::span<const WordTerm> terms, const Poly& p) {
    Poly r;
    for (const auto& t : terms) r += t.coef * apply_word(order, t.x_pow, t.d_pow, p);
    return r;
}

namespace {

std::string word(WordOrder order, std::size_t x_pow, std::size_t d_pow) {
    auto factor = [](char v, std::size_t k) -> std::string {
        if (k == 0) return "";
        return k == 1 ? std::string(1, v) : std::string(1, v) + "^" + std::to_string(k);
    };
    std::string xs = factor('X', x_pow), ds = factor('D', d_pow);
    std::string a = order == WordOrder::XD ? xs : ds;
    std::string b = order == WordOrder::XD ? ds : xs;
    if (a.empty()) return b;
    if (b.empty()) return a;
    return a + " " + b;
}

}  // namespace

std::string to_string(WordOrder order, std::span<const WordTerm> terms) {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        if (t.coef.is_zero()) continue;
        os << (first ? (t.coef.sign() < 0 ? "-" : "") : (t.coef.sign() < 0 ? " - " : " + "));
        first = false;
        std::string w = word(order, t.x_pow, t.d_pow);
        Rat mag = abs(t.coef);
        if (w.empty()) {
            os << mag;
        } else {
            if (mag != Rat(1)) os << mag << " ";
            os << w;
        }
    }
    if (first) os << "0";
    return os.str();
}

MixedForm reorder_product(const SSeries& f, const Poly& p, ReorderDirection direction) {
    MixedForm m;
    m.order = direction == ReorderDirection::FDPXtoXD ? WordOrder::XD : WordOrder::DX;
    Degree d = p.degree();
    if (!d) return m;
    Poly pk = p;
    SSeries fk = f;
    for (std::size_t k = 0; k <= *d; ++k) {
        if (k > 0) {
            pk = derivative(pk);
            fk = derivative(fk);
        }
        Rat c = Rat(1) / factorial(k);
        if (direction == ReorderDirection::PXFDtoDX && k % 2 == 1) c = -c;
        m.terms.push_back({c * pk, fk});
    }
    return m;
}

Poly apply(const MixedForm& m, const Poly& p) {
    Poly r;
    for (const auto& t : m.terms) {
        if (m.order == WordOrder::XD)
            r += t.x_part * apply_series(t.d_part, p);
        else
            r += apply_series(t.d_part, t.x_part * p);
    }
    return r;
}

std::string to_string(const MixedForm& m) {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : m.terms) {
        if (t.x_part.is_zero() || (t.d_part.is_zero() && t.d_part.is_exact())) continue;
        if (!first) os << " + ";
        first = false;
        std::string xs = "(" + to_string(t.x_part, 'X') + ")";
        std::string ds = "[" + to_string(t.d_part, 'D') + "]";
        os << (m.order == WordOrder::XD ? xs + " " + ds : ds + " " + xs);
    }
    if (first) os << "0";
    return os.str();
}

// --- convergence -----------------------------------------------------------

bool ConvergenceReport::may_contribute_beyond(std::size_t degree) const {
    if (complete) return false;
    for (std::size_t k = margins.size(); k-- > 0;) {
        if (!margins[k]) continue;
        long extrapolated = *margins[k] + growth * static_cast<long>(window + 1 - k);
        return extrapolated <= static_cast<long>(degree);
    }
    return true;
}

ConvergenceReport dx_convergence_check(std::span<const std::optional<std::size_t>> orders,
                                       long growth, bool complete) {
    ConvergenceReport r;
    r.window = orders.empty() ? 0 : orders.size() - 1;
    r.growth = growth;
    r.complete = complete;
    std::optional<long> prev;
    for (std::size_t k = 0; k < orders.size(); ++k) {
        if (!orders[k]) {
            r.margins.push_back(std::nullopt);
            continue;
        }
        long m = static_cast<long>(*orders[k]) - static_cast<long>(k);
        r.margins.push_back(m);
        if (prev && m < *prev + growth && !r.violated_at) r.violated_at = k;
        prev = m;
    }
    r.certified = complete || !r.violated_at;
    return r;
}

// --- diagonals -------------------------------------------------------------

std::string to_string(DiagonalVerdict v) {
    switch (v) {
        case DiagonalVerdict::Polynomial: return "polynomial";
        case DiagonalVerdict::NotPolynomial: return "not_polynomial";
        case DiagonalVerdict::Zero: return "zero";
    }
    return "?";
}

NewtonFit newton_fit(std::span<const Rat> samples, std::size_t slack) {
    NewtonFit fit;
    std::vector<Rat> diff(samples.begin(), samples.end());
    for (std::size_t j = 0; j < samples.size(); ++j) {
        fit.newton.push_back(diff[0]);
        for (std::size_t i = 0; i + j + 1 < samples.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    }
    std::optional<std::size_t> top;
    for (std::size_t j = 0; j < fit.newton.size(); ++j)
        if (!fit.newton[j].is_zero()) top = j;
    if (!top) {
        fit.verdict = DiagonalVerdict::Zero;
        return fit;
    }
    fit.nonvanishing_order = *top;
    if (samples.size() - 1 - *top < slack) {
        fit.verdict = DiagonalVerdict::NotPolynomial;
        return fit;
    }
    fit.verdict = DiagonalVerdict::Polynomial;
    for (std::size_t j = 0; j <= *top; ++j)
        if (!fit.newton[j].is_zero()) fit.poly += fit.newton[j] * falling_factorial(j) / factorial(j);
    return fit;
}

bool DxCheckReport::top_vanishes() const {
    return !fits.empty() && fits.back().verdict == DiagonalVerdict::Zero;
}

bool DxCheckReport::accepted() const {
    for (const auto& f : fits)
        if (f.verdict == DiagonalVerdict::NotPolynomial) return false;
    return top_vanishes();
}

std::optional<long> DxCheckReport::highest_nonzero() const {
    for (auto it = fits.rbegin(); it != fits.rend(); ++it)
        if (it->verdict != DiagonalVerdict::Zero) return it->t;
    return std::nullopt;
}

const DiagonalFit* DxCheckReport::find(long t) const {
    for (const auto& f : fits)
        if (f.t == t) return &f;
    return nullptr;
}

DxCheckReport dx_check(const OpTable& table, const DxWindow& window) {
    if (window.n_max < window.slack + 2)
        throw WindowTooSmall("n_max must be at least slack + 2");
    if (window.t_min > window.t_max) throw WindowTooSmall("empty diagonal range");
    DxCheckReport report;
    report.window = window;
    for (long t = window.t_min; t <= window.t_max; ++t) {
        std::size_t top = window.n_max + static_cast<std::size_t>(t < 0 ? -t : 0);
        DiagonalFit fit;
        fit.t = t;
        fit.samples = table.diagonal(t, top);
        NewtonFit nf = newton_fit(fit.samples, window.slack);
        fit.verdict = nf.verdict;
        fit.poly = std::move(nf.poly);
        fit.nonvanishing_order = nf.nonvanishing_order;
        fit.n_max = window.n_max;
        fit.slack = window.slack;
        report.fits.push_back(std::move(fit));
    }
    return report;
}

// --- DX expansions ---------------------------------------------------------

const ConvergenceReport& certify(DXExpansion& e, long growth) {
    std::vector<std::optional<std::size_t>> orders;
    for (const auto& f : e.terms) orders.push_back(order_lower_bound(f));
    e.certificate = dx_convergence_check(orders, growth, e.complete);
    return *e.certificate;
}

DXExpansion dx_construct(const OpTable& table, const DxWindow& window) {
    if (window.t_min > 0) throw WindowTooSmall("dx_construct needs t_min <= 0");
    DxCheckReport report = dx_check(table, window);
    for (const auto& f : report.fits)
        if (f.verdict == DiagonalVerdict::NotPolynomial)
            throw NotDX(f.t, "diagonal q_" + std::to_string(f.t) + " is not polynomial on the window");
    // Terms above the window would be dropped silently, so the next diagonal must vanish too.
    DxWindow above{window.t_max + 1, window.t_max + 1, window.n_max, window.slack};
    if (dx_check(table, above).fits.front().verdict != DiagonalVerdict::Zero)
        throw NotDX(window.t_max + 1, "no vanishing tail: q_" + std::to_string(window.t_max + 1) + " is not zero");

    // (j, k) -> a with term a D^k X^j
    std::map<std::size_t, std::map<std::size_t, Rat>> coeffs;
    std::size_t max_j = 0;
    for (const auto& f : report.fits) {
        if (f.verdict != DiagonalVerdict::Polynomial) continue;
        long t = f.t;
        Poly residual = f.poly;
        std::size_t deg = *residual.degree();
        std::vector<Rat> a(deg + 1);
        for (std::size_t k = deg + 1; k-- > 0;) {
            // p_k(n) = (n+t+k)_k is monic of degree k
            a[k] = residual.coeff(k);
            if (!a[k].is_zero()) residual -= a[k] * falling_factorial(k, t + static_cast<long>(k));
        }
        if (!residual.is_zero()) throw Error("diagonal back-substitution left a residual");
        for (std::size_t k = 0; k <= deg; ++k) {
            if (a[k].is_zero()) continue;
            long j = t + static_cast<long>(k);
            if (j < 0)
                throw NegativePowerViolation("q_" + std::to_string(t) + " needs X^" + std::to_string(j));
            coeffs[static_cast<std::size_t>(j)][k] = a[k];
            max_j = std::max(max_j, static_cast<std::size_t>(j));
        }
    }

    DXExpansion e;
    for (std::size_t j = 0; j <= max_j; ++j) {
        std::size_t trunc = j + static_cast<std::size_t>(-window.t_min);
        std::vector<Rat> c(trunc + 1);
        if (auto it = coeffs.find(j); it != coeffs.end())
            for (const auto& [k, a] : it->second)
                if (k <= trunc) c[k] = a;
        e.terms.push_back(SSeries::truncated(std::move(c), trunc));
    }
    e.complete = true;
    e.source = table.op();
    certify(e);
    return e;
}

namespace {

const ConvergenceReport& require_certificate(const DXExpansion& e) {
    if (!e.certificate || !e.certificate->certified)
        throw NoCertificate("DX expansion has no passing convergence certificate");
    return *e.certificate;
}

// Best known lower bound for ord(f_k): the stored series or the certificate,
// whichever is stronger. Empty means +infinity.
std::optional<std::size_t> effective_order(const DXExpansion& e, const ConvergenceReport& cert,
                                           std::size_t k) {
    auto lb = order_lower_bound(e.terms[k]);
    if (!lb) return lb;
    if (k < cert.margins.size()) {
        if (!cert.margins[k]) return std::nullopt;
        long from_cert = *cert.margins[k] + static_cast<long>(k);
        if (from_cert > static_cast<long>(*lb)) return static_cast<std::size_t>(from_cert);
    }
    return lb;
}

}  // namespace

Poly dx_apply(const DXExpansion& e, const Poly& p) {
    const auto& cert = require_certificate(e);
    Degree d = p.degree();
    if (!d) return {};
    if (cert.may_contribute_beyond(*d))
        throw TruncationError("terms past the expansion window may act on degree " + std::to_string(*d));
    Poly r, xp = p;
    for (std::size_t k = 0; k < e.terms.size(); ++k, xp = Poly::x() * xp) {
        auto lb = effective_order(e, cert, k);
        if (!lb || *lb > *d + k) continue;
        r += apply_series(e.terms[k], xp);
    }
    return r;
}

std::vector<std::pair<std::size_t, Poly>> dx_transpose(const DXExpansion& e) {
    const auto& cert = require_certificate(e);
    // highest j for which every contribution is known
    std::optional<std::size_t> limit;
    auto clamp = [&](std::size_t v) { limit = limit ? std::min(*limit, v) : v; };
    std::size_t widest = 0;
    for (const auto& f : e.terms) {
        if (f.precision()) clamp(*f.precision());
        widest = std::max(widest, f.coeffs().size());
    }
    if (!cert.complete) {
        std::optional<long> bound;
        for (std::size_t k = cert.margins.size(); k-- > 0;) {
            if (!cert.margins[k]) continue;
            long next = static_cast<long>(cert.window) + 1;
            bound = *cert.margins[k] + cert.growth * (next - static_cast<long>(k)) + next;
            break;
        }
        if (!bound || *bound <= 0) return {};
        clamp(static_cast<std::size_t>(*bound - 1));
    }
    std::size_t top = limit ? *limit : (widest == 0 ? 0 : widest - 1);
    std::vector<std::pair<std::size_t, Poly>> out;
    for (std::size_t j = 0; j <= top; ++j) {
        std::vector<Rat> c(e.terms.size());
        for (std::size_t k = 0; k < e.terms.size(); ++k) c[k] = e.terms[k].coeff(j);
        out.emplace_back(j, Poly(std::move(c)));
    }
    return out;
}

bool gf_consistency_check(const DXExpansion& e, std::size_t N) {
    if (!e.source) throw std::invalid_argument("DX expansion carries no source operator");
    return gf_consistency_check(e, *e.source, N);
}

bool gf_consistency_check(const DXExpansion& e, const OpExpr& source, std::size_t N) {
    const auto& cert = require_certificate(e);
    if (cert.may_contribute_beyond(N))
        throw TruncationError("terms past the expansion window may reach t^N x^N");

    std::vector<Poly> images;
    for (std::size_t m = 0; m <= N; ++m) images.push_back(op_apply(source, Poly::monomial(m)) / factorial(m));
    PSeries direct = PSeries(std::move(images), N) * invert(exp_xt(N));

    std::vector<Poly> side(N + 1);
    for (std::size_t n = 0; n < e.terms.size(); ++n) {
        const SSeries& f = e.terms[n];
        auto lb = effective_order(e, cert, n);
        if (!lb || *lb > N + n) continue;
        for (std::size_t k = 0; k <= n; ++k) {
            std::size_t xdeg = n - k;
            if (xdeg > N) continue;
            Rat bin = binomial(static_cast<long>(n), k);
            for (std::size_t j = 0; j <= N; ++j) {
                // [t^j] f^(k)(t) = (j+k)!/j! f_{j+k}
                if (j + k < *lb) continue;
                Rat c = f.coeff(j + k);
                if (c.is_zero()) continue;
                side[j] += Poly::monomial(xdeg, bin * factorial(j + k) / factorial(j) * c);
            }
        }
    }
    for (std::size_t j = 0; j <= N; ++j)
        if (truncated(direct.coeff(j), N) != side[j]) return false;
    return true;
}

std::string to_string(const DXExpansion& e) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < e.terms.size(); ++k) {
        if (e.terms[k].is_zero() && e.terms[k].is_exact()) continue;
        if (!first) os << " + ";
        first = false;
        os << "[" << to_string(e.terms[k], 'D') << "]";
        if (k >= 1) os << "*X";
        if (k > 1) os << "^" << k;
    }
    if (first) os << "0";
    return os.str();
}

// --- closure -------------------------------------------------------------

DiagonalFamily DiagonalFamily::from_report(const DxCheckReport& report) {
    DiagonalFamily fam;
    fam.t_min = report.window.t_min;
    for (const auto& f : report.fits) {
        if (f.verdict == DiagonalVerdict::NotPolynomial)
            throw NotDX(f.t, "diagonal q_" + std::to_string(f.t) + " is not polynomial on the window");
        fam.diagonals[f.t] = f.poly;
    }
    if (report.top_vanishes()) fam.vanishes_above = report.highest_nonzero().value_or(report.window.t_min - 1);
    return fam;
}

Poly DiagonalFamily::at(long t) const {
    if (vanishes_above && t > *vanishes_above) return {};
    auto it = diagonals.find(t);
    if (it == diagonals.end())
        throw WindowTooSmall("diagonal q_" + std::to_string(t) + " is outside the fitted window");
    return it->second;
}

Poly compose_via_diagonals(const DiagonalFamily& p, const DiagonalFamily& r, long u) {
    if (!p.vanishes_above || !r.vanishes_above)
        throw MissingVanishingCertificate("both operands need q_t == 0 for large t");
    long T = *p.vanishes_above, S = *r.vanishes_above;
    Poly q;
    for (long t = u - S; t <= T; ++t) {
        Poly pt = p.at(t);
        if (pt.is_zero()) continue;
        q += pt * shifted(r.at(u - t), Rat(t));
    }
    return q;
}

Rat counterexample_S(std::size_t n) {
    Rat s;
    Rat nn(static_cast<long>(n));
    for (std::size_t k = 0; k <= n; ++k)
        s += falling_factorial(k)(nn) * falling_factorial(k)(nn + Rat(static_cast<long>(k)));
    return s;
}

}  // namespace opcalc
