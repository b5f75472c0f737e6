#include "opcalc/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "opcalc/errors.hpp"

namespace opcalc {

namespace {

const std::vector<std::string> kFactorStart{"rational", "'D'", "'X'", "'I'", "'J'", "'Delta'", "'Eval0'",
                                            "'E'", "'sub'", "'poly'", "'series'", "'('"};

class OperatorParser {
public:
    explicit OperatorParser(std::string_view text) : s_(text) {}

    OpExpr parse() {
        skip();
        if (at_end()) fail(kFactorStart, "empty operator expression");
        OpExpr e = expr();
        skip();
        if (!at_end()) fail({"'+'", "'-'", "end of input"}, "unexpected input");
        return e;
    }

private:
    [[noreturn]] void fail_at(std::size_t offset, std::vector<std::string> expected, const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < offset && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(line, col, std::move(expected), msg);
    }

    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& msg) const {
        fail_at(pos_, std::move(expected), msg);
    }

    bool at_end() const { return pos_ >= s_.size(); }

    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (!at_end() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail({std::string("'") + c + "'"}, "missing token");
    }

    bool starts_factor() {
        skip();
        if (at_end()) return false;
        char c = s_[pos_];
        return c == '(' || std::isalpha(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c));
    }

    OpExpr expr() {
        bool negate = false;
        if (accept('-')) negate = true;
        else accept('+');
        OpExpr first = term();
        std::vector<OpExpr> terms{negate ? -first : first};
        while (true) {
            if (accept('+')) terms.push_back(term());
            else if (accept('-')) terms.push_back(-term());
            else break;
        }
        return terms.size() == 1 ? terms.front() : sum(std::move(terms));
    }

    OpExpr term() {
        if (!starts_factor()) fail(kFactorStart, "expected an operator");
        OpExpr e = factor();
        // Juxtaposition is left-associative composition; A B C applies C first.
        while (starts_factor()) e = e * factor();
        return e;
    }

    std::string digits() {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    Rat rational(bool allow_sign) {
        skip();
        std::string text;
        if (allow_sign && !at_end() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            if (s_[pos_] == '-') text = "-";
            ++pos_;
            skip();
        }
        std::string num = digits();
        if (num.empty()) fail({"integer"}, "expected a rational number");
        text += num;
        std::size_t save = pos_;
        skip();
        if (!at_end() && s_[pos_] == '/') {
            ++pos_;
            skip();
            std::string den = digits();
            if (den.empty()) fail({"integer"}, "expected a denominator");
            if (den.find_first_not_of('0') == std::string::npos) fail({"nonzero integer"}, "zero denominator");
            text += "/" + den;
        } else {
            pos_ = save;
        }
        return Rat::parse(text);
    }

    std::size_t exponent() {
        skip();
        std::string d = digits();
        if (d.empty()) fail({"nonnegative integer"}, "expected an exponent");
        return std::stoul(d);
    }

    OpExpr power_suffix(OpExpr base) {
        if (accept('^')) return pow(base, exponent());
        return base;
    }

    OpExpr factor() {
        skip();
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rat r = rational(false);
            expect('*');
            if (!starts_factor()) fail(kFactorStart, "expected an operator after '*'");
            return r * factor();
        }
        if (c == '(') {
            ++pos_;
            OpExpr inner = expr();
            expect(')');
            return power_suffix(inner);
        }
        return power_suffix(atom());
    }

    // Text between the current '(' and its matching ')', returning the offset of the body.
    std::pair<std::string_view, std::size_t> bracketed() {
        expect('(');
        std::size_t start = pos_;
        int depth = 1;
        while (!at_end()) {
            char c = s_[pos_];
            if (c == '(') ++depth;
            if (c == ')' && --depth == 0) break;
            ++pos_;
        }
        if (at_end()) fail({"')'"}, "unbalanced parenthesis");
        std::string_view body = s_.substr(start, pos_ - start);
        ++pos_;
        return {body, start};
    }

    Poly embedded_poly(std::string_view body, std::size_t offset, char var) {
        try {
            return parse_poly(body, var);
        } catch (const ParseError& e) {
            fail_at(offset + e.column - 1, e.expected, "in polynomial argument");
        }
    }

    OpExpr atom() {
        std::size_t start = pos_;
        while (!at_end() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        if (name == "D") return op::D();
        if (name == "X") return op::X();
        if (name == "I") return op::I();
        if (name == "J") return op::J();
        if (name == "Delta") return op::Delta();
        if (name == "Eval0") return op::eval0();
        if (name == "E") {
            expect('(');
            Rat a = rational(true);
            expect(')');
            return op::E(a);
        }
        if (name == "sub" || name == "poly") {
            auto [body, offset] = bracketed();
            Poly p = embedded_poly(body, offset, 'x');
            if (name == "poly") return op::mul(p);
            if (p.is_zero()) fail_at(offset, {"nonzero polynomial"}, "sub() needs a nonzero polynomial");
            return op::sub(p);
        }
        if (name == "series") {
            auto [body, offset] = bracketed();
            // optional ", N" at paren depth zero
            std::size_t comma = std::string_view::npos;
            int depth = 0;
            for (std::size_t i = 0; i < body.size(); ++i) {
                if (body[i] == '(') ++depth;
                if (body[i] == ')') --depth;
                if (body[i] == ',' && depth == 0) comma = i;
            }
            Poly f = embedded_poly(body.substr(0, comma), offset, 't');
            if (comma == std::string_view::npos) return op::series(SSeries::exact(f));
            std::string_view n = body.substr(comma + 1);
            while (!n.empty() && std::isspace(static_cast<unsigned char>(n.front()))) n.remove_prefix(1);
            while (!n.empty() && std::isspace(static_cast<unsigned char>(n.back()))) n.remove_suffix(1);
            if (n.empty() || n.find_first_not_of("0123456789") != std::string_view::npos)
                fail_at(offset + comma + 1, {"truncation order"}, "bad truncation order");
            std::size_t order = std::stoul(std::string(n));
            auto c = f.coeffs();
            if (!c.empty() && c.size() - 1 > order)
                fail_at(offset + comma + 1, {"order >= degree"}, "truncation order below the series degree");
            return op::series(SSeries::truncated(std::vector<Rat>(c.begin(), c.end()), order));
        }
        pos_ = start;
        fail(kFactorStart, name.empty() ? "unexpected character" : "unknown operator '" + name + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

OpExpr parse_operator(std::string_view text) { return OperatorParser(text).parse(); }

}  // namespace opcalc
