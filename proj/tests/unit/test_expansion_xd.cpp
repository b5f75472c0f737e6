#include <doctest.h>

#include "opcalc/errors.hpp"
#include "opcalc/expansion_xd.hpp"
#include "../support.hpp"

using namespace opcalc;
using opcalc::testing::dsl_corpus;
using opcalc::testing::mono;
using opcalc::testing::random_poly;
using opcalc::testing::random_rat;
using opcalc::testing::uniform;

namespace {
Poly P(const char* s) { return parse_poly(s); }

Poly binom_x(std::size_t n) { return falling_factorial(n) / factorial(n); }

}  // namespace

TEST_SUITE("divided powers") {
    TEST_CASE("examples") {
        CHECK(divided_power_basis(op::D(), 3).polys == std::vector<Poly>{P("1"), P("x"), P("x^2/2"), P("x^3/6")});
        CHECK(divided_power_basis(op::Delta(), 3).polys ==
              std::vector<Poly>{P("1"), P("x"), P("x(x-1)/2"), P("x(x-1)(x-2)/6")});
        CHECK(divided_power_basis(Rat(2) * op::D(), 2).polys == std::vector<Poly>{P("1"), P("x/2"), P("x^2/8")});
        CHECK(d_basis(4).polys == divided_power_basis(op::D(), 4).polys);
        CHECK(delta_basis(5).polys == divided_power_basis(op::Delta(), 5).polys);
    }

    TEST_CASE("degree_reducing_check") {
        CHECK(degree_reducing_check(op::D(), 10));
        CHECK_FALSE(degree_reducing_check(op::X(), 5));
        CHECK_FALSE(degree_reducing_check(op::J() * op::D() * op::D(), 6));
        CHECK(degree_reducing_check(op::Delta(), 10));
        CHECK_FALSE(degree_reducing_check(op::I(), 3));
        CHECK_THROWS_AS(divided_power_basis(op::X(), 3), NotDegreeReducing);
        try {
            divided_power_basis(op::J() * op::D() * op::D(), 4);
        } catch (const NotDegreeReducing& e) {
            CHECK(e.degree == 1);
        }
    }

    TEST_CASE("defining equations hold") {
        for (const char* b : {"D", "Delta", "2*D", "series(t - 1/2*t^2 + t^3)", "D - D^2", "E(1/2) D"}) {
            OpExpr B = parse_operator(b);
            DividedPowerBasis basis = divided_power_basis(B, 8, b);
            for (std::size_t n = 0; n <= 8; ++n) {
                const Poly& bn = basis.polys[n];
                CHECK(bn.degree() == Degree(n));
                CHECK(bn(Rat(0)) == (n == 0 ? Rat(1) : Rat(0)));
                if (n > 0) CHECK_MESSAGE(op_apply(B, bn) == basis.polys[n - 1], b << " n=" << n);
                else CHECK(op_apply(B, bn).is_zero());
            }
            // generating function b(x,t) = sum b_n t^n
            for (std::size_t n = 0; n <= 8; ++n) CHECK(basis.genfun.coeff(n) == basis.polys[n]);
        }
    }

    TEST_CASE("basis change") {
        DividedPowerBasis delta = delta_basis(4);
        CHECK(to_basis(P("x^2"), delta) == std::vector<Rat>{Rat(0), Rat(1), Rat(2)});
        CHECK(to_basis(delta.polys[3], delta) == std::vector<Rat>{Rat(0), Rat(0), Rat(0), Rat(1)});
        std::vector<Rat> ones{Rat(1), Rat(1)};
        CHECK(to_monomial(ones, d_basis(3)) == P("1 + x"));
        for (int i = 0; i < 30; ++i) {
            Poly p = random_poly(4);
            CHECK(to_monomial(to_basis(p, delta), delta) == p);
        }
        CHECK_THROWS_AS(to_basis(mono(5), delta), TruncationError);
    }
}

TEST_SUITE("xd expansion") {
    TEST_CASE("integration operator") {
        XDExpansion e = xd_expand(op::J(), 4);
        REQUIRE(e.terms.size() == 5);
        for (std::size_t n = 0; n <= 4; ++n) {
            Rat sign = n % 2 ? Rat(-1) : Rat(1);
            CHECK(e.terms[n] == Poly::monomial(n + 1, sign / factorial(n + 1)));
        }
        CHECK(xd_apply(e, P("x^3")) == P("x^4/4"));
    }

    TEST_CASE("multiplication and substitution") {
        XDExpansion m = xd_expand(op::mul(P("x^2")), 2);
        CHECK(m.terms == std::vector<Poly>{P("x^2"), Poly(), Poly()});
        Poly q = P("x^2 - 3x + 1");
        XDExpansion s = xd_expand(op::sub(q), 6);
        for (std::size_t n = 0; n <= 6; ++n) CHECK(s.terms[n] == pow(q - Poly::x(), n) / factorial(n));
    }

    TEST_CASE("forward-difference basis for J") {
        XDExpansion e = xb_expand(op::J(), delta_basis(3), 3);
        REQUIRE(e.terms.size() == 4);
        CHECK(e.terms[0] == P("x"));
        CHECK(e.terms[1] == P("-x^2/2"));
        CHECK(e.terms[2] == P("x^2/4 + x^3/6"));
        // the x^4/24 sign is forced by reconstruction on C(x,3)
        CHECK(e.terms[3] == P("-(x^2/6 + x^3/6 + x^4/24)"));
        CHECK(xd_apply(e, binom_x(3), true) == op_apply(op::J(), binom_x(3)));
        PSeries wrong({P("x"), P("-x^2/2"), P("x^2/4 + x^3/6"), P("-(x^2/6 + x^3/6 - x^4/24)")}, 3);
        CHECK_FALSE((wrong * delta_basis(3).genfun).coeff(3) == op_apply(op::J(), binom_x(3)));
        CHECK(e.basis_name == "Delta");
    }

    TEST_CASE("trivial basis expansions") {
        XDExpansion b = xb_expand(op::Delta(), delta_basis(2), 2);
        CHECK(b.terms == std::vector<Poly>{Poly(), P("1"), Poly()});
        XDExpansion i = xb_expand(op::I(), delta_basis(2), 2);
        CHECK(i.terms == std::vector<Poly>{P("1"), Poly(), Poly()});
        XDExpansion id = xd_expand(op::I(), 6);
        CHECK(xd_apply(id, P("x^5")) == P("x^5"));
        CHECK(xd_apply(XDExpansion{}, P("x^3 + 1")).is_zero());
    }

    TEST_CASE("truncation is enforced in strict mode") {
        XDExpansion e = xd_expand(op::J(), 2);
        CHECK_THROWS_AS(xd_apply(e, mono(3), true), TruncationError);
        CHECK_NOTHROW(xd_apply(e, mono(2), true));
    }

    TEST_CASE("reconstruction over the corpus") {
        const std::size_t N = 8;
        DividedPowerBasis db = d_basis(N), tb = delta_basis(N);
        for (const auto& text : dsl_corpus()) {
            OpExpr q = parse_operator(text);
            const std::size_t deg = N;
            XDExpansion xd = xd_expand(q, deg);
            XDExpansion xbd = xb_expand(q, db, deg);
            XDExpansion xbt = xb_expand(q, tb, deg);
            CHECK(xbd.terms == xd.terms);
            for (int i = 0; i < 4; ++i) {
                Poly p = random_poly(deg);
                Poly expect = op_apply(q, p);
                CHECK_MESSAGE(xd_apply(xd, p, true) == expect, text);
                CHECK_MESSAGE(xd_apply(xbt, p, true) == expect, text);
            }
        }
    }

    TEST_CASE("uniqueness") {
        XDExpansion z = xd_expand(op::D() - op::D(), 6);
        for (const auto& a : z.terms) CHECK(a.is_zero());
        for (int i = 0; i < 10; ++i) {
            const auto& corpus = dsl_corpus();
            std::string s1 = corpus[static_cast<std::size_t>(uniform(0, 17))];
            std::string s2 = corpus[static_cast<std::size_t>(uniform(20, 47))];
            OpExpr q = parse_operator(s1), r = parse_operator(s2);
            const std::size_t deg = 6;
            XDExpansion a = xd_expand(q, deg), b = xd_expand(r, deg), d = xd_expand(q - r, deg);
            for (std::size_t k = 0; k <= deg; ++k) CHECK(d.terms[k] == a.terms[k] - b.terms[k]);
        }
    }

    TEST_CASE("generating-function consistency") {
        const std::size_t N = 6;
        for (const char* b : {"D", "Delta", "series(t + t^2)"}) {
            DividedPowerBasis basis = divided_power_basis(parse_operator(b), N, b);
            for (const char* qs : {"J", "X D", "E(1)", "sub(x^2)", "Eval0"}) {
                OpExpr q = parse_operator(qs);
                XDExpansion e = xb_expand(q, basis, N);
                PSeries a(e.terms, N);
                std::vector<Poly> images;
                for (std::size_t n = 0; n <= N; ++n) images.push_back(op_apply(q, basis.polys[n]));
                PSeries lhs = a * basis.genfun;
                for (std::size_t n = 0; n <= N; ++n) CHECK_MESSAGE(lhs.coeff(n) == images[n], b << " " << qs);
            }
        }
    }

    TEST_CASE("rendering") {
        CHECK(to_string(xd_expand(op::J(), 2)) == "(x) + (-1/2*x^2)*D + (1/6*x^3)*D^2 + O(D^3)");
        CHECK(to_string(xb_expand(op::I(), delta_basis(1), 1)) == "(1) + O(Delta^2)");
    }
}
