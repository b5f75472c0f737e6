#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "opcalc/expansion_dx.hpp"

namespace opcalc::cli {

enum class Format { Text, Json };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int parse_error = 2;
inline constexpr int negative_verdict = 3;
inline constexpr int certificate = 4;
}  // namespace exit_code

struct Command {
    std::string verb;
    /// Operator DSL text, or the verb's main argument (symbol, word, n).
    std::string operator_text;
    /// Further positional arguments (apply: the polynomial; reorder: p(x)).
    std::vector<std::string> args;
    std::size_t order = 8;
    DxWindow window;
    std::string basis = "D";
    Format format = Format::Text;
    bool strict = false;
    /// reorder: "xd" for f(D) p(X), "dx" for p(X) f(D).
    std::string direction = "xd";
};

/// Parses "MIN..MAX".
std::pair<long, long> parse_t_range(const std::string& text);

/// Executes a validated command. Results go to `out`, diagnostics to `err`.
int run(const Command& cmd, std::ostream& out, std::ostream& err);

/// Full command line (args[0] is the program name).
int main(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace opcalc::cli
