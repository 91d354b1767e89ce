#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "makespan/error.hpp"
#include "makespan/model.hpp"
#include "makespan/numeric.hpp"

namespace makespan {

// Instance text format, one record per line:
//
//   KIND m n            KIND is USP, DWP or RESTRICTED
//   v | v d             m machine lines (battery d for DWP only)
//   l | l k id...       n job lines (eligible machine ids for RESTRICTED)
//
// Lines starting with '#' and blank lines are ignored. Numbers are decimal
// literals ("2.5", "1e3") or exact fractions ("7/3").

namespace detail {

struct Token {
    std::string_view text;
    std::size_t column;
};

struct TextLine {
    std::size_t number;
    std::vector<Token> tokens;
};

inline std::vector<TextLine> significant_lines(std::string_view text) {
    std::vector<TextLine> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (!raw.empty() && raw.back() == '\r') {
            raw.remove_suffix(1);
        }
        TextLine line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) {
                ++i;
            }
            if (i >= raw.size()) {
                break;
            }
            if (line.tokens.empty() && raw[i] == '#') {
                break;
            }
            const std::size_t start = i;
            while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t') {
                ++i;
            }
            line.tokens.push_back({raw.substr(start, i - start), start + 1});
        }
        if (!line.tokens.empty()) {
            lines.push_back(std::move(line));
        }
        if (end == text.size()) {
            break;
        }
        pos = end + 1;
    }
    return lines;
}

inline std::size_t parse_count(const TextLine &line, const Token &tok, bool allow_zero) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size() || (!allow_zero && value == 0)) {
        throw ParseError(line.number, tok.column, "expected a " + std::string(allow_zero ? "non-negative" : "positive") +
                                                      " integer, got '" + std::string(tok.text) + "'");
    }
    return value;
}

template <Scalar S>
S parse_positive(const TextLine &line, const Token &tok, const char *what) {
    S value;
    try {
        value = ScalarTraits<S>::parse(tok.text);
    } catch (const Error &e) {
        throw ParseError(line.number, tok.column, std::string(what) + ": " + e.what());
    }
    if (!(value > S(0))) {
        throw ParseError(line.number, tok.column, std::string(what) + " must be positive");
    }
    return value;
}

inline void expect_tokens(const TextLine &line, std::size_t count, const char *what) {
    if (line.tokens.size() != count) {
        const std::size_t column = line.tokens.size() > count ? line.tokens[count].column : line.tokens.back().column;
        throw ParseError(line.number, column,
                         std::string(what) + " needs " + std::to_string(count) + " field(s), got " +
                             std::to_string(line.tokens.size()));
    }
}

}  // namespace detail

template <Scalar S>
Instance<S> parse_instance(std::string_view text) {
    const auto lines = detail::significant_lines(text);
    if (lines.empty()) {
        throw ParseError(1, 1, "missing header 'KIND m n'");
    }
    const auto &header = lines.front();
    if (header.tokens.size() != 3) {
        throw ParseError(header.number, header.tokens.front().column, "header must be 'KIND m n'");
    }
    ProblemKind kind;
    const std::string_view k = header.tokens[0].text;
    if (k == "USP") {
        kind = ProblemKind::usp;
    } else if (k == "DWP") {
        kind = ProblemKind::dwp;
    } else if (k == "RESTRICTED") {
        kind = ProblemKind::restricted;
    } else {
        throw ParseError(header.number, header.tokens[0].column, "unknown kind '" + std::string(k) + "'");
    }
    const std::size_t m = detail::parse_count(header, header.tokens[1], false);
    const std::size_t n = detail::parse_count(header, header.tokens[2], false);
    if (lines.size() < 1 + m + n) {
        const std::size_t last = lines.back().number;
        throw ParseError(last + 1, 1, "expected " + std::to_string(m) + " machine and " + std::to_string(n) +
                                          " job lines, found " + std::to_string(lines.size() - 1));
    }
    if (lines.size() > 1 + m + n) {
        throw ParseError(lines[1 + m + n].number, 1, "unexpected extra line");
    }

    std::vector<S> speeds;
    std::vector<S> batteries;
    for (std::size_t j = 0; j < m; ++j) {
        const auto &line = lines[1 + j];
        detail::expect_tokens(line, kind == ProblemKind::dwp ? 2 : 1, "machine line");
        speeds.push_back(detail::parse_positive<S>(line, line.tokens[0], "speed"));
        if (kind == ProblemKind::dwp) {
            batteries.push_back(detail::parse_positive<S>(line, line.tokens[1], "battery"));
        }
    }

    std::vector<S> lengths;
    std::vector<std::vector<std::size_t>> eligibility;
    for (std::size_t i = 0; i < n; ++i) {
        const auto &line = lines[1 + m + i];
        if (kind != ProblemKind::restricted) {
            detail::expect_tokens(line, 1, "job line");
        } else if (line.tokens.size() < 2) {
            throw ParseError(line.number, line.tokens.back().column, "restricted job line must be 'l k id...'");
        }
        lengths.push_back(detail::parse_positive<S>(line, line.tokens[0], "length"));
        if (kind == ProblemKind::restricted) {
            const std::size_t count = detail::parse_count(line, line.tokens[1], true);
            detail::expect_tokens(line, 2 + count, "restricted job line");
            std::vector<std::size_t> ids;
            for (std::size_t t = 0; t < count; ++t) {
                const auto &tok = line.tokens[2 + t];
                const std::size_t id = detail::parse_count(line, tok, true);
                if (id >= m) {
                    throw ParseError(line.number, tok.column, "machine id " + std::to_string(id) + " out of range");
                }
                ids.push_back(id);
            }
            eligibility.push_back(std::move(ids));
        }
    }

    switch (kind) {
        case ProblemKind::usp: return Instance<S>::usp(speeds, lengths);
        case ProblemKind::dwp: return Instance<S>::dwp(speeds, batteries, lengths);
        case ProblemKind::restricted: return Instance<S>::restricted(speeds, lengths, std::move(eligibility));
    }
    throw ParseError(header.number, 1, "unreachable");
}

template <Scalar S>
Instance<S> read_instance(std::istream &in) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_instance<S>(text);
}

template <Scalar S>
std::string format_instance(const Instance<S> &instance) {
    std::ostringstream out;
    out << kind_name(instance.kind()) << ' ' << instance.machine_count() << ' ' << instance.job_count() << '\n';
    for (const auto &machine : instance.machines()) {
        out << ScalarTraits<S>::to_decimal(machine.speed);
        if (instance.kind() == ProblemKind::dwp) {
            out << ' ' << ScalarTraits<S>::to_decimal(*machine.battery);
        }
        out << '\n';
    }
    for (const auto &job : instance.jobs()) {
        out << ScalarTraits<S>::to_decimal(job.length);
        if (instance.kind() == ProblemKind::restricted) {
            const auto &ids = instance.eligibility(job.id);
            out << ' ' << ids.size();
            for (const std::size_t id : ids) {
                out << ' ' << id;
            }
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace makespan
