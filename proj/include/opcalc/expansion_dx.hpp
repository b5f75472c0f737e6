#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opcalc/operator.hpp"
#include "opcalc/poly.hpp"
#include "opcalc/series.hpp"

namespace opcalc {

// --- normal ordering -------------------------------------------------------

/// XD: X^a D^b (multiplications left). DX: D^b X^a.
enum class WordOrder { XD, DX };

struct WordTerm {
    Rat coef;
    std::size_t x_pow = 0;
    std::size_t d_pow = 0;

    friend bool operator==(const WordTerm&, const WordTerm&) = default;
};

/// D^j X^i = sum_k (i)_k (j)_k / k! X^{i-k} D^{j-k}   (result in XD order).
std::vector<WordTerm> normal_order_DjXi(std::size_t j, std::size_t i);
/// X^i D^j = sum_k (-1)^k (i)_k (j)_k / k! D^{j-k} X^{i-k}   (result in DX order).
std::vector<WordTerm> normal_order_XiDj(std::size_t i, std::size_t j);

Poly apply_word(WordOrder order, std::size_t x_pow, std::size_t d_pow, const Poly& p);
Poly apply_terms(WordOrder order, std::span<const WordTerm> terms, const Poly& p);
/// "X^2 D^2 + 4 X D + 2" or "D^2 X^2 - 4 D X + 2".
std::string to_string(WordOrder order, std::span<const WordTerm> terms);

enum class ReorderDirection {
    /// f(D) p(X) -> sum p^(k)(X) f^(k)(D) / k!
    FDPXtoXD,
    /// p(X) f(D) -> sum (-1)^k f^(k)(D) p^(k)(X) / k!
    PXFDtoDX,
};

struct MixedTerm {
    Poly x_part;
    SSeries d_part;
};

/// Sum of products of a multiplication operator and a series in D, in the given order.
struct MixedForm {
    WordOrder order = WordOrder::XD;
    std::vector<MixedTerm> terms;
};

MixedForm reorder_product(const SSeries& f, const Poly& p, ReorderDirection direction);
Poly apply(const MixedForm& m, const Poly& p);
std::string to_string(const MixedForm& m);

// --- convergence -----------------------------------------------------------

/// Window evidence for discrete-topology convergence of sum_k f_k(D) X^k.
///
/// margin_k = ord(f_k) - k. Over the window the finite margins (nonzero f_k)
/// must grow by at least `growth` between consecutive entries; the same
/// growth is assumed past the window. A `complete` expansion has no terms
/// past the window and is always certified.
struct ConvergenceReport {
    bool certified = false;
    std::optional<std::size_t> violated_at;
    std::size_t window = 0;
    long growth = 1;
    bool complete = false;
    /// Empty entry: +infinity (f_k = 0).
    std::vector<std::optional<long>> margins;

    /// Whether some f_k with k past the window might act on a polynomial of this degree.
    bool may_contribute_beyond(std::size_t degree) const;
};

/// orders[k] is ord(f_k) (or a lower bound), empty for the zero series.
ConvergenceReport dx_convergence_check(std::span<const std::optional<std::size_t>> orders,
                                       long growth = 1, bool complete = false);

// --- diagonals and the DX test ----------------------------------------------

enum class DiagonalVerdict { Polynomial, NotPolynomial, Zero };

std::string to_string(DiagonalVerdict v);

/// Newton forward-difference fit of samples q(0), q(1), ...
struct NewtonFit {
    DiagonalVerdict verdict = DiagonalVerdict::Zero;
    /// Leading differences Delta^j q(0).
    std::vector<Rat> newton;
    /// Fitted polynomial in n (verdict Polynomial only).
    Poly poly;
    /// Highest j with Delta^j q(0) != 0.
    std::size_t nonvanishing_order = 0;
};

/// Polynomial of degree d is accepted when the differences of orders
/// d+1..last all vanish and there are at least `slack` of them.
NewtonFit newton_fit(std::span<const Rat> samples, std::size_t slack);

struct DiagonalFit {
    long t = 0;
    std::vector<Rat> samples;
    DiagonalVerdict verdict = DiagonalVerdict::Zero;
    Poly poly;
    std::size_t nonvanishing_order = 0;
    std::size_t n_max = 0;
    std::size_t slack = 0;
};

struct DxWindow {
    long t_min = -12;
    long t_max = 12;
    std::size_t n_max = 12;
    std::size_t slack = 3;
};

struct DxCheckReport {
    DxWindow window;
    std::vector<DiagonalFit> fits;

    /// Every diagonal polynomial or zero, and q_{t_max} vanishes on the window.
    bool accepted() const;
    bool top_vanishes() const;
    /// Largest t whose diagonal is not identically zero on the window.
    std::optional<long> highest_nonzero() const;
    const DiagonalFit* find(long t) const;
};

/// Fits every diagonal q_t, t_min <= t <= t_max. Samples run over
/// n = 0..n_max + max(0, -t) so that negative diagonals keep n_max+1 values
/// past their structural zeros. Throws WindowTooSmall if n_max < slack + 2.
DxCheckReport dx_check(const OpTable& table, const DxWindow& window = {});

// --- DX expansions ---------------------------------------------------------

/// Q = sum_k f_k(D) X^k.
struct DXExpansion {
    std::vector<SSeries> terms;
    std::optional<ConvergenceReport> certificate;
    bool complete = false;
    /// Operator the expansion was derived from, when known.
    std::optional<OpExpr> source;
};

/// Runs dx_convergence_check on the term orders and stores the result.
const ConvergenceReport& certify(DXExpansion& e, long growth = 1);

/// Builds the expansion from fitted diagonals: q_t = sum_k a_{t,k} (n+t+k)_k
/// gives the terms a_{t,k} D^k X^{t+k}. f_j is truncated at order j - t_min,
/// so the result is valid on degrees <= -t_min. Requires t_min <= 0
/// (WindowTooSmall); NotDX unless every diagonal is polynomial and q_{t_max+1}
/// vanishes.
DXExpansion dx_construct(const OpTable& table, const DxWindow& window = {});

/// sum_k f_k(D) X^k p. NoCertificate without a passing certificate;
/// TruncationError when the window cannot bound the contributing terms.
Poly dx_apply(const DXExpansion& e, const Poly& p);

/// Rewrites sum_k f_k(D) X^k as sum_j D^j a_j(X) for every j the data determines.
std::vector<std::pair<std::size_t, Poly>> dx_transpose(const DXExpansion& e);

/// Q exp(xt)/exp(xt) from the source operator against
/// sum_n sum_k C(n,k) c_n^(k)(t) x^(n-k), both truncated at t^N and x^N.
bool gf_consistency_check(const DXExpansion& e, std::size_t N);
bool gf_consistency_check(const DXExpansion& e, const OpExpr& source, std::size_t N);

std::string to_string(const DXExpansion& e);

// --- closure under composition -------------------------------------------

/// Fitted diagonals of a DX operator with its vanishing bound.
struct DiagonalFamily {
    std::map<long, Poly> diagonals;
    long t_min = 0;
    /// q_t == 0 for t > vanishes_above; empty without evidence.
    std::optional<long> vanishes_above;

    /// Throws NotDX when a diagonal is not polynomial.
    static DiagonalFamily from_report(const DxCheckReport& report);
    Poly at(long t) const;
};

/// u-th diagonal of R o P: sum_{t=u-S}^{T} p_t(n) r_{u-t}(n+t).
Poly compose_via_diagonals(const DiagonalFamily& p, const DiagonalFamily& r, long u);

/// S(n) = sum_{k=0}^{n} (n)_k (n+k)_k.
Rat counterexample_S(std::size_t n);

}  // namespace opcalc
