#include <doctest.h>

#include <thread>

#include "opcalc/errors.hpp"
#include "opcalc/operator.hpp"
#include "../support.hpp"

using namespace opcalc;
using opcalc::testing::dsl_corpus;
using opcalc::testing::mono;
using opcalc::testing::random_poly;
using opcalc::testing::random_rat;

namespace {
Poly P(const char* s) { return parse_poly(s); }
}  // namespace

TEST_SUITE("op_apply") {
    TEST_CASE("leaves") {
        CHECK(op_apply(op::J(), P("x^2")) == P("x^3/3"));
        CHECK(op_apply(op::Delta(), P("x^2")) == P("2x + 1"));
        CHECK(op_apply(op::D(), P("x^3")) == P("3x^2"));
        CHECK(op_apply(op::X(), P("x + 1")) == P("x^2 + x"));
        CHECK(op_apply(op::E(Rat(-1)), P("x^2")) == P("x^2 - 2x + 1"));
        CHECK(op_apply(op::eval0(), P("x^2 + 5")) == P("5"));
        CHECK(op_apply(op::sub(P("x^2")), P("x + 1")) == P("x^2 + 1"));
        CHECK(op_apply(op::mul(P("x - 1")), P("x + 1")) == P("x^2 - 1"));
        CHECK(op_apply(op::series(SSeries::exact(parse_poly("t^2", 't'))), P("x^3")) == P("6x"));
        CHECK_THROWS_AS(op::sub(Poly()), InvalidOperator);
    }

    TEST_CASE("composition applies the right operand first") {
        // E J x = (x+1)^2/2 ; J E x = x^2/2 + x
        OpExpr q = op::E(Rat(1)) * op::J() - op::J() * op::E(Rat(1));
        CHECK(op_apply(op::E(Rat(1)) * op::J(), P("x")) == P("(x+1)^2/2"));
        CHECK(op_apply(op::J() * op::E(Rat(1)), P("x")) == P("x^2/2 + x"));
        // (x+1)^2/2 - (x^2/2 + x)
        CHECK(op_apply(q, P("x")) == P("1/2"));
        CHECK(op_apply(op::D() * op::X(), P("1")) == P("1"));
        CHECK(op_apply(op::X() * op::D(), P("1")) == Poly());
    }

    TEST_CASE("truncated series are checked") {
        OpExpr f = op::series(SSeries::truncated({Rat(1), Rat(1)}, 1));
        CHECK(op_apply(f, P("x")) == P("x + 1"));
        CHECK_THROWS_AS(op_apply(f, P("x^2")), TruncationError);
    }

    TEST_CASE("custom leaves") {
        OpExpr twice = op::custom("double", [](std::size_t n) { return Rat(2) * Poly::monomial(n); });
        CHECK(op_apply(twice, P("x^2 + 1")) == P("2x^2 + 2"));
        CHECK(to_string(twice) == "double");
    }

    TEST_CASE("property: linearity") {
        for (const auto& text : dsl_corpus()) {
            OpExpr q = parse_operator(text);
            for (int i = 0; i < 4; ++i) {
                Rat a = random_rat(), b = random_rat();
                Poly p = random_poly(5), r = random_poly(5);
                CHECK_MESSAGE(op_apply(q, a * p + b * r) == a * op_apply(q, p) + b * op_apply(q, r), text);
            }
        }
    }
}

TEST_SUITE("op_table") {
    TEST_CASE("rows") {
        CHECK(OpTable(op::Delta()).row(3) == P("3x^2 + 3x + 1"));
        CHECK(OpTable(op::J()).row(0) == P("x"));
        CHECK(OpTable(op::sub(P("x^2"))).row(2) == P("x^4"));
    }

    TEST_CASE("diagonals") {
        CHECK(OpTable(op::J()).diagonal(1, 3) == std::vector<Rat>{Rat(1), Rat(1, 2), Rat(1, 3), Rat(1, 4)});
        CHECK(OpTable(op::I()).diagonal(0, 2) == std::vector<Rat>{Rat(1), Rat(1), Rat(1)});
        CHECK(OpTable(op::E(Rat(1))).diagonal(-1, 3) == std::vector<Rat>{Rat(0), Rat(1), Rat(2), Rat(3)});
        OpTable t(op::E(Rat(1, 2)) * op::X());
        for (long d = -4; d <= 3; ++d)
            for (std::size_t n = 0; n <= 8; ++n) {
                long k = static_cast<long>(n) + d;
                Rat expect = k < 0 ? Rat(0) : t.row(n).coeff(static_cast<std::size_t>(k));
                CHECK(t.diagonal(d, 8)[n] == expect);
                CHECK(t.coefficient(n, k) == expect);
            }
    }

    TEST_CASE("cache transparency") {
        for (const auto& text : dsl_corpus()) {
            OpExpr q = parse_operator(text);
            OpTable cold(q);
            OpTable warm(q);
            for (std::size_t n = 0; n <= 6; ++n) warm.row(n);
            CHECK(warm.cached_rows() == 7);
            for (std::size_t n = 0; n <= 6; ++n) {
                CHECK(cold.row(n) == warm.row(n));
                CHECK(cold.row(n) == op_apply(q, mono(n)));
            }
        }
    }

    TEST_CASE("concurrent readers see one value per row") {
        OpTable t(parse_operator("J E(1/3) X^2"));
        std::vector<std::thread> threads;
        std::vector<std::vector<Poly>> seen(4);
        for (int i = 0; i < 4; ++i)
            threads.emplace_back([&, i] {
                for (std::size_t n = 0; n <= 20; ++n) seen[i].push_back(t.row(n));
            });
        for (auto& th : threads) th.join();
        for (int i = 1; i < 4; ++i) CHECK(seen[i] == seen[0]);
        CHECK(t.cached_rows() == 21);
    }
}

TEST_SUITE("equality and shift invariance") {
    TEST_CASE("op_equal_upto") {
        CHECK(op_equal_upto(op::D() * op::X() - op::X() * op::D(), op::I(), 10));
        CHECK(op_equal_upto(op::J(), op::J(), 5));
        CHECK(op_equal_upto(op::Delta(), op::E(Rat(1)) - op::I(), 8));
        CHECK_FALSE(op_equal_upto(op::D(), op::Delta(), 2));
        CHECK(op_equal_upto(op::D(), op::Delta(), 1));
    }

    TEST_CASE("shift_invariance_check") {
        std::vector<Rat> samples{Rat(1), Rat(-2), Rat(1, 3)};
        CHECK(shift_invariance_check(op::Delta(), 8, samples));
        std::vector<Rat> one{Rat(1)};
        CHECK_FALSE(shift_invariance_check(op::X(), 3, one));
        CHECK_FALSE(shift_invariance_check(op::J(), 4, one));
        // J D p = p - p(0) is not shift-invariant; D J = I is
        CHECK_FALSE(shift_invariance_check(op::J() * op::D(), 6));
        CHECK(shift_invariance_check(op::D() * op::J(), 6));
        CHECK(shift_invariance_check(op::E(Rat(5)), 6));
    }

    TEST_CASE("d_expand") {
        CHECK(d_expand(op::D(), 3).coeffs().size() == 4);
        CHECK(d_expand(op::D(), 3) == SSeries::truncated({Rat(0), Rat(1), Rat(0), Rat(0)}, 3));
        CHECK(d_expand(op::Delta(), 4) ==
              SSeries::truncated({Rat(0), Rat(1), Rat(1, 2), Rat(1, 6), Rat(1, 24)}, 4));
        for (Rat a : {Rat(1), Rat(-2), Rat(3, 5)}) {
            SSeries s = d_expand(op::E(a), 7);
            for (std::size_t k = 0; k <= 7; ++k) CHECK(s.coeff(k) == pow(a, static_cast<long>(k)) / factorial(k));
        }
    }

    TEST_CASE("D-expansion reconstructs shift-invariant operators") {
        for (const char* text : {"Delta", "E(1/2)", "Delta^2", "D J", "series(t^2 - 1/3*t^3)", "E(-2) - 3*D"}) {
            OpExpr q = parse_operator(text);
            const std::size_t N = 9;
            REQUIRE(shift_invariance_check(q, N));
            OpExpr rebuilt = op::series(d_expand(q, N));
            for (int i = 0; i < 10; ++i) {
                Poly p = random_poly(N);
                CHECK_MESSAGE(op_apply(rebuilt, p) == op_apply(q, p), text);
            }
        }
    }
}
