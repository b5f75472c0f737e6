#pragma once

#include <random>
#include <string>
#include <vector>

#include "opcalc/operator.hpp"
#include "opcalc/parser.hpp"
#include "opcalc/poly.hpp"
#include "opcalc/rat.hpp"
#include "opcalc/series.hpp"

namespace opcalc::testing {

inline std::mt19937& rng() {
    static std::mt19937 gen(20240611u);
    return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline Rat random_rat(long num = 9, long den = 4) { return Rat(uniform(-num, num), uniform(1, den)); }

inline Poly random_poly(std::size_t max_degree) {
    std::size_t d = static_cast<std::size_t>(uniform(0, static_cast<long>(max_degree)));
    std::vector<Rat> c(d + 1);
    for (auto& r : c) r = random_rat();
    return Poly(std::move(c));
}

inline SSeries random_series(std::size_t order, bool unit_constant) {
    std::vector<Rat> c(order + 1);
    for (auto& r : c) r = random_rat();
    if (unit_constant && c[0].is_zero()) c[0] = Rat(1);
    return SSeries::truncated(std::move(c), order);
}

/// x^n.
inline Poly mono(std::size_t n) { return Poly::monomial(n); }

/// Round-trip and reconstruction corpus: every operator the DSL names.
inline const std::vector<std::string>& dsl_corpus() {
    static const std::vector<std::string> c{
        "D",
        "X",
        "I",
        "J",
        "Delta",
        "Eval0",
        "E(1)",
        "E(-1)",
        "E(1/2)",
        "E(-3/4)",
        "sub(2*x)",
        "sub(x^2)",
        "sub(x + 1)",
        "sub(x^2 - x + 1/3)",
        "poly(x^2)",
        "poly(1/2*x^3 - x + 2)",
        "series(t)",
        "series(t^2 - 1/3*t^3)",
        "series(1 + t + 1/2*t^2, 12)",
        "series(t + 1/2*t^2 + 1/6*t^3, 12)",
        "D X",
        "X D",
        "D X - X D",
        "J D",
        "D J",
        "X^2 D^2",
        "D^2 X^2",
        "Delta^2",
        "E(1) - I",
        "Delta - E(1) + I",
        "2*D + X",
        "1/2*J^2 D",
        "-X",
        "-J + 3*X D",
        "(D + X)^2",
        "(D + X) (D - X)",
        "X J D",
        "E(2) J",
        "J E(2)",
        "Eval0 D",
        "sub(2*x) D",
        "poly(x + 1) Delta",
        "series(t^2) X",
        "-2/3*(X + J)",
        "Delta X - X Delta",
        "X^3 + D^3 - J^3",
        "(X D)^2 - X^2 D^2",
        "E(1/3) X E(-1/3)",
        "poly(x^2 - 1) series(t - 1/2*t^2, 12) J",
        "3*(sub(x + 2) - E(2))",
        "I + J D - Eval0",
        "D^0",
    };
    return c;
}

/// Operators with DX expansions under the default window.
inline const std::vector<std::string>& dx_pool() {
    static const std::vector<std::string> c{
        "D", "X", "I", "Delta", "E(1)", "E(-1/2)", "X D", "D X", "poly(x^2 - 1)", "series(t^2 - 1/3*t^3)",
        "X^2 D", "D^2 X", "sub(x + 2)", "X Delta", "2*X - D", "poly(x + 1) D^2",
    };
    return c;
}

}  // namespace opcalc::testing
