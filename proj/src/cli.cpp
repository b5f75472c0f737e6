#include "opcalc/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "opcalc/errors.hpp"
#include "opcalc/expansion_xd.hpp"
#include "opcalc/json.hpp"
#include "opcalc/parser.hpp"
#include "opcalc/umbral.hpp"

namespace opcalc::cli {

namespace {

const char* kGrammarHelp = R"help(Operator expressions:
  expr   := ['-'] term (('+' | '-') term)*
  term   := factor factor*          juxtaposition composes; rightmost acts first
  factor := rational '*' factor | atom ['^' uint] | '(' expr ')' ['^' uint]
  atom   := D | X | I | J | Delta | Eval0 | E(rational)
          | sub(poly) | poly(poly) | series(tpoly) | series(tpoly, N)
Composition binds tighter than '+'; '^' applies to the nearest atom.
Examples:  "D X - X D"   "E(1/2)"   "series(t^2 - t^3/3)"   "1/2*J^2 D"
)help";

struct Usage : Error {
    using Error::Error;
};

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json header(const Command& cmd) {
    return Json{{"verb", cmd.verb}};
}

std::size_t parse_size(const std::string& text, const char* what) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw Usage(std::string("expected a nonnegative integer for ") + what + ", got '" + text + "'");
    return std::stoul(text);
}

/// "D", "Delta", "series:<tpoly>" or a bare tpoly.
DeltaOp delta_from_text(const std::string& text, std::size_t order) {
    if (text == "D") return DeltaOp::derivative();
    if (text == "Delta") return DeltaOp::forward_difference(order);
    std::string body = text.rfind("series:", 0) == 0 ? text.substr(7) : text;
    return DeltaOp(SSeries::exact(parse_poly(body, 't')));
}

DividedPowerBasis basis_from_text(const std::string& text, std::size_t N) {
    if (text == "D") return d_basis(N);
    if (text == "Delta") return delta_basis(N);
    if (text.rfind("series:", 0) == 0) {
        Poly f = parse_poly(text.substr(7), 't');
        return divided_power_basis(op::series(SSeries::exact(f)), N, "series(" + to_string(f, 't') + ")");
    }
    throw Usage("unknown basis '" + text + "' (expected D, Delta or series:<tpoly>)");
}

std::string fit_line(const DiagonalFit& f) {
    std::ostringstream os;
    os << "q_" << f.t << ": " << to_string(f.verdict);
    if (f.verdict == DiagonalVerdict::Polynomial) {
        os << " " << to_string(f.poly, 'n');
    } else if (f.verdict == DiagonalVerdict::NotPolynomial) {
        os << " (difference of order " << f.nonvanishing_order << " is nonzero; " << f.samples.size()
           << " samples, slack " << f.slack << ")";
    }
    return os.str();
}

int cmd_apply(const Command& cmd, std::ostream& out) {
    if (cmd.args.size() != 1) throw Usage("apply needs an operator and a polynomial");
    OpExpr q = parse_operator(cmd.operator_text);
    Poly p = parse_poly(cmd.args[0]);
    Poly r = op_apply(q, p);
    if (cmd.format == Format::Json) {
        Json j = header(cmd);
        j["operator"] = to_string(q);
        j["input"] = to_string(p);
        j["result"] = to_string(r);
        emit(out, j);
    } else {
        out << to_string(r) << '\n';
    }
    return exit_code::ok;
}

void print_xd(const Command& cmd, const OpExpr& q, const XDExpansion& e, std::ostream& out) {
    if (cmd.format == Format::Json) {
        Json j = header(cmd);
        j["operator"] = to_string(q);
        j["expansion"] = to_json(e);
        emit(out, j);
        return;
    }
    for (std::size_t n = 0; n < e.terms.size(); ++n) out << "a_" << n << "(x) = " << to_string(e.terms[n]) << '\n';
    out << to_string(q) << " = " << to_string(e) << '\n';
}

int cmd_expand_xd(const Command& cmd, std::ostream& out) {
    OpExpr q = parse_operator(cmd.operator_text);
    print_xd(cmd, q, xd_expand(q, cmd.order), out);
    return exit_code::ok;
}

int cmd_expand_xb(const Command& cmd, std::ostream& out) {
    OpExpr q = parse_operator(cmd.operator_text);
    DividedPowerBasis basis = basis_from_text(cmd.basis, cmd.order);
    print_xd(cmd, q, xb_expand(q, basis, cmd.order), out);
    return exit_code::ok;
}

int cmd_d_expand(const Command& cmd, std::ostream& out) {
    OpExpr q = parse_operator(cmd.operator_text);
    SSeries a = d_expand(q, cmd.order);
    bool invariant = shift_invariance_check(q, cmd.order);
    if (cmd.format == Format::Json) {
        Json j = header(cmd);
        j["operator"] = to_string(q);
        j["series"] = to_json(a);
        j["shift_invariant"] = invariant;
        emit(out, j);
    } else {
        for (std::size_t k = 0; k <= cmd.order; ++k) out << "a_" << k << " = " << a.coeff(k) << '\n';
        out << to_string(q) << " = " << to_string(a, 'D') << '\n';
        out << "shift invariant through degree " << cmd.order << ": " << (invariant ? "yes" : "no") << '\n';
    }
    return !invariant && cmd.strict ? exit_code::negative_verdict : exit_code::ok;
}

int cmd_check_dx(const Command& cmd, std::ostream& out) {
    OpExpr q = parse_operator(cmd.operator_text);
    DxCheckReport report = dx_check(OpTable(q), cmd.window);
    if (cmd.format == Format::Json) {
        Json j = header(cmd);
        j["operator"] = to_string(q);
        j["report"] = to_json(report);
        emit(out, j);
    } else {
        for (const auto& f : report.fits) out << fit_line(f) << '\n';
        if (report.accepted()) {
            out << "verdict: DX";
            if (auto h = report.highest_nonzero()) out << " (q_t = 0 for t > " << *h << ")";
            out << '\n';
        } else if (!report.top_vanishes()) {
            bool all_poly = true;
            for (const auto& f : report.fits) all_poly &= f.verdict != DiagonalVerdict::NotPolynomial;
            out << "verdict: not DX (" << (all_poly ? "q_" + std::to_string(cmd.window.t_max) + " does not vanish"
                                                    : std::string("non-polynomial diagonal"))
                << ")\n";
        } else {
            out << "verdict: not DX (non-polynomial diagonal)\n";
        }
    }
    return !report.accepted() && cmd.strict ? exit_code::negative_verdict : exit_code::ok;
}

int cmd_expand_dx(const Command& cmd, std::ostream& out) {
    OpExpr q = parse_operator(cmd.operator_text);
    DXExpansion e = dx_construct(OpTable(q), cmd.window);
    if (cmd.format == Format::Json) {
        Json j = header(cmd);
        j["operator"] = to_string(q);
        j["expansion"] = to_json(e);
        j["valid_degree"] = -cmd.window.t_min;
        emit(out, j);
    } else {
        for (std::size_t k = 0; k < e.terms.size(); ++k)
            out << "f_" << k << "(D) = " << to_string(e.terms[k], 'D') << '\n';
        out << to_string(q) << " = " << to_string(e) << '\n';
        out << "valid on degree <= " << -cmd.window.t_min << '\n';
    }
    return exit_code::ok;
}

std::pair<std::size_t, std::size_t> parse_factor(const std::string& letter, const std::string& exp) {
    std::size_t k = exp.empty() ? 1 : std::stoul(exp);
    return letter == "X" ? std::pair{k, std::size_t{0}} : std::pair{std::size_t{0}, k};
}

int cmd_normal_order(const Command& cmd, std::ostream& out) {
    static const std::regex word(R"(^\s*([DX])(?:\^(\d+))?\s*([DX])(?:\^(\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(cmd.operator_text, m, word) || m[1] == m[3])
        throw Usage("normal-order expects a word \"D^j X^i\" or \"X^i D^j\"");
    std::size_t first = m[2].matched ? std::stoul(m[2]) : 1;
    std::size_t second = m[4].matched ? std::stoul(m[4]) : 1;
    WordOrder target;
    std::vector<WordTerm> terms;
    if (m[1] == "D") {
        target = WordOrder::XD;
        terms = normal_order_DjXi(first, second);
    } else {
        target = WordOrder::DX;
        terms = normal_order_XiDj(first, second);
    }
    std::string lhs = std::string(m[1]) + (first == 1 ? "" : "^" + std::to_string(first)) + " " + std::string(m[3]) +
                      (second == 1 ? "" : "^" + std::to_string(second));
    if (cmd.format == Format::Json) {
        Json j = header(cmd);
        j["word"] = lhs;
        j["order"] = target == WordOrder::XD ? "XD" : "DX";
        Json arr = Json::array();
        for (const auto& t : terms) arr.push_back(Json{{"coef", t.coef.str()}, {"x_pow", t.x_pow}, {"d_pow", t.d_pow}});
        j["terms"] = arr;
        emit(out, j);
    } else {
        out << lhs << " = " << to_string(target, terms) << '\n';
    }
    return exit_code::ok;
}

int cmd_umbral(const Command& cmd, std::ostream& out) {
    const std::size_t N = cmd.order;
    DeltaOp p = delta_from_text(cmd.operator_text, 2 * N + 2);
    UmbralSequences s = sequences(p, N);
    XDExpansion u_xd = umbral_op_xd(p, N);
    XDExpansion s_xd = rodrigues_xd(p, N);
    DXExpansion s_dx = umbral_shift_dx(p, N);
    std::optional<DXExpansion> u_dx;
    std::string u_dx_note;
    try {
        u_dx = umbral_op_dx(p, N);
    } catch (const NotDXEligible& e) {
        u_dx_note = e.what();
    }
    if (cmd.format == Format::Json) {
        Json j = header(cmd);
        j["symbol"] = to_json(p.symbol());
        j["divided_powers"] = to_json(s.divided);
        j["basic"] = to_json(s.basic);
        j["conjugate"] = to_json(s.conjugate);
        j["umbral_operator_xd"] = to_json(u_xd);
        j["umbral_operator_dx"] = u_dx ? to_json(*u_dx) : Json(nullptr);
        j["umbral_shift_xd"] = to_json(s_xd);
        j["umbral_shift_dx"] = to_json(s_dx);
        emit(out, j);
        return exit_code::ok;
    }
    out << "f(t) = " << to_string(p.symbol()) << '\n';
    auto dump = [&](const char* title, const char* name, const PolySequence& seq) {
        out << title << ":\n";
        for (std::size_t n = 0; n < seq.polys.size(); ++n)
            out << "  " << name << "_" << n << " = " << to_string(seq.polys[n]) << '\n';
    };
    dump("divided powers", "p", s.divided);
    dump("basic sequence", "s", s.basic);
    dump("conjugate sequence", "pbar", s.conjugate);
    out << "U_P = " << to_string(u_xd) << '\n';
    if (u_dx) out << "U_P = " << to_string(*u_dx) << '\n';
    else out << "U_P has no DX form here: " << u_dx_note << '\n';
    out << "sigma_P = " << to_string(s_xd) << '\n';
    out << "sigma_P = " << to_string(s_dx) << '\n';
    return exit_code::ok;
}

int cmd_counterexample(const Command& cmd, std::ostream& out) {
    std::size_t n = parse_size(cmd.operator_text, "n");
    Rat s = counterexample_S(n);
    Rat f2 = factorial(n) * factorial(n);
    bool holds = s >= f2;
    if (cmd.format == Format::Json) {
        Json j = header(cmd);
        j["n"] = n;
        j["S"] = s.str();
        j["factorial_squared"] = f2.str();
        j["bound_holds"] = holds;
        emit(out, j);
    } else {
        out << "S(" << n << ") = " << s << ", (" << n << "!)^2 = " << f2 << ", bound "
            << (holds ? "holds" : "fails") << '\n';
    }
    return exit_code::ok;
}

int cmd_reorder(const Command& cmd, std::ostream& out) {
    if (cmd.args.size() != 1) throw Usage("reorder needs a symbol f(t) and a polynomial p(x)");
    std::string ftext = cmd.operator_text.rfind("series:", 0) == 0 ? cmd.operator_text.substr(7) : cmd.operator_text;
    SSeries f = SSeries::exact(parse_poly(ftext, 't'));
    Poly p = parse_poly(cmd.args[0]);
    ReorderDirection dir;
    std::string lhs;
    if (cmd.direction == "xd") {
        dir = ReorderDirection::FDPXtoXD;
        lhs = "[" + to_string(f, 'D') + "] (" + to_string(p, 'X') + ")";
    } else if (cmd.direction == "dx") {
        dir = ReorderDirection::PXFDtoDX;
        lhs = "(" + to_string(p, 'X') + ") [" + to_string(f, 'D') + "]";
    } else {
        throw Usage("--direction must be xd or dx");
    }
    MixedForm m = reorder_product(f, p, dir);
    if (cmd.format == Format::Json) {
        Json j = header(cmd);
        j["order"] = m.order == WordOrder::XD ? "XD" : "DX";
        Json arr = Json::array();
        for (const auto& t : m.terms)
            arr.push_back(Json{{"x_part", to_string(t.x_part)}, {"d_part", to_json(t.d_part)}});
        j["terms"] = arr;
        emit(out, j);
    } else {
        out << lhs << " = " << to_string(m) << '\n';
    }
    return exit_code::ok;
}

int dispatch(const Command& cmd, std::ostream& out) {
    if (cmd.verb == "apply") return cmd_apply(cmd, out);
    if (cmd.verb == "expand-xd") return cmd_expand_xd(cmd, out);
    if (cmd.verb == "expand-xb") return cmd_expand_xb(cmd, out);
    if (cmd.verb == "expand-dx") return cmd_expand_dx(cmd, out);
    if (cmd.verb == "check-dx") return cmd_check_dx(cmd, out);
    if (cmd.verb == "d-expand") return cmd_d_expand(cmd, out);
    if (cmd.verb == "normal-order") return cmd_normal_order(cmd, out);
    if (cmd.verb == "umbral") return cmd_umbral(cmd, out);
    if (cmd.verb == "counterexample") return cmd_counterexample(cmd, out);
    if (cmd.verb == "reorder") return cmd_reorder(cmd, out);
    throw Usage("unknown verb '" + cmd.verb + "'");
}

void validate(const Command& cmd) {
    if (cmd.operator_text.empty()) throw Usage(cmd.verb + ": missing argument");
    if (cmd.window.t_min > cmd.window.t_max) throw Usage("--t: MIN must not exceed MAX");
}

}  // namespace

std::pair<long, long> parse_t_range(const std::string& text) {
    static const std::regex range(R"(^\s*([+-]?\d+)\s*\.\.\s*([+-]?\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, range)) throw Usage("--t expects MIN..MAX, got '" + text + "'");
    return {std::stol(m[1]), std::stol(m[2])};
}

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
    try {
        validate(cmd);
        return dispatch(cmd, out);
    } catch (const ParseError& e) {
        err << "parse error at line " << e.line << ", column " << e.column << ": " << e.what();
        if (!e.expected.empty()) {
            err << " (expected ";
            for (std::size_t i = 0; i < e.expected.size(); ++i) err << (i ? ", " : "") << e.expected[i];
            err << ")";
        }
        err << '\n';
        return exit_code::parse_error;
    } catch (const Usage& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::parse_error;
    } catch (const TruncationError& e) {
        err << "truncation: " << e.what() << '\n';
        return exit_code::certificate;
    } catch (const NoCertificate& e) {
        err << "certificate: " << e.what() << '\n';
        return exit_code::certificate;
    } catch (const MissingVanishingCertificate& e) {
        err << "certificate: " << e.what() << '\n';
        return exit_code::certificate;
    } catch (const WindowTooSmall& e) {
        err << "window: " << e.what() << '\n';
        return exit_code::certificate;
    } catch (const NotDX& e) {
        err << "not DX: " << e.what() << '\n';
        return cmd.strict ? exit_code::negative_verdict : exit_code::failure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::failure;
    }
}

int main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    // "--t -1..2": the value starts with '-', so bind it to the flag before CLI11 sees it.
    std::vector<std::string> argv;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--t" && i + 1 < args.size()) {
            argv.push_back("--t=" + args[++i]);
        } else {
            argv.push_back(args[i]);
        }
    }

    Command cmd;
    std::string format;
    if (const char* env = std::getenv("OPCALC_FORMAT")) format = env;
    std::string t_range;
    std::string positional_main;
    std::vector<std::string> positional_rest;

    CLI::App app{"Exact calculus of linear operators on polynomials", "opcalc"};
    app.footer(kGrammarHelp);
    app.require_subcommand(1);

    struct Verb {
        const char* name;
        const char* help;
        const char* main_arg;
        const char* rest_arg;
    };
    const Verb verbs[] = {
        {"apply", "Apply an operator to a polynomial", "OPERATOR", "POLY"},
        {"expand-xd", "Expansion sum a_k(X) D^k", "OPERATOR", nullptr},
        {"expand-xb", "Expansion sum a_k(X) B^k in a delta basis (--basis)", "OPERATOR", nullptr},
        {"expand-dx", "Expansion sum f_k(D) X^k from fitted diagonals", "OPERATOR", nullptr},
        {"check-dx", "Diagonal test for the DX form", "OPERATOR", nullptr},
        {"d-expand", "Series in D with shift-invariance evidence", "OPERATOR", nullptr},
        {"normal-order", "Normal ordering of a word D^j X^i or X^i D^j", "WORD", nullptr},
        {"umbral", "Sequences, umbral operator and umbral shift of a delta operator", "SYMBOL", nullptr},
        {"counterexample", "S(n) against (n!)^2", "NUMBER", nullptr},
        {"reorder", "Reorder f(D) p(X) (xd) or p(X) f(D) (dx)", "SYMBOL", "POLY"},
    };

    for (const auto& v : verbs) {
        CLI::App* sub = app.add_subcommand(v.name, v.help);
        sub->add_option(v.main_arg, positional_main, v.main_arg)->required();
        if (v.rest_arg) sub->add_option(v.rest_arg, positional_rest, v.rest_arg)->required()->expected(1);
        sub->add_option("-N,--order", cmd.order, "Truncation order (default 8)");
        sub->add_option("--t", t_range, "Diagonal range MIN..MAX (default -12..12)");
        sub->add_option("-n,--nmax", cmd.window.n_max, "Samples per diagonal (default 12)");
        sub->add_option("--slack", cmd.window.slack, "Vanishing differences required (default 3)");
        sub->add_option("--basis", cmd.basis, "D, Delta or series:<tpoly>");
        sub->add_option("--format", format, "text or json (env OPCALC_FORMAT)");
        sub->add_flag("--strict", cmd.strict, "Exit 3 on a negative verdict");
        if (std::string(v.name) == "reorder") sub->add_option("--direction", cmd.direction, "xd or dx");
    }

    std::vector<std::string> reversed(argv.rbegin(), argv.rend() - 1);
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::parse_error;
    }

    cmd.verb = app.get_subcommands().front()->get_name();
    cmd.operator_text = positional_main;
    cmd.args = positional_rest;
    try {
        if (!t_range.empty()) std::tie(cmd.window.t_min, cmd.window.t_max) = parse_t_range(t_range);
        if (format.empty() || format == "text") cmd.format = Format::Text;
        else if (format == "json") cmd.format = Format::Json;
        else throw Usage("--format must be text or json");
    } catch (const Usage& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::parse_error;
    }
    return run(cmd, out, err);
}

}  // namespace opcalc::cli
