#pragma once

#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <random>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "makespan/error.hpp"
#include "makespan/model.hpp"
#include "makespan/numeric.hpp"

namespace makespan {

enum class GenKind { uniform_usp, uniform_dwp, equal_speed, two_class_adversarial, paper_4_3, graham_43 };

inline std::string_view gen_kind_name(GenKind kind) {
    switch (kind) {
        case GenKind::uniform_usp: return "uniform-usp";
        case GenKind::uniform_dwp: return "uniform-dwp";
        case GenKind::equal_speed: return "equal-speed";
        case GenKind::two_class_adversarial: return "two-class-adversarial";
        case GenKind::paper_4_3: return "paper-4.3";
        case GenKind::graham_43: return "graham-43";
    }
    return "?";
}

inline GenKind parse_gen_kind(std::string_view name) {
    for (GenKind k : {GenKind::uniform_usp, GenKind::uniform_dwp, GenKind::equal_speed,
                      GenKind::two_class_adversarial, GenKind::paper_4_3, GenKind::graham_43}) {
        if (gen_kind_name(k) == name) {
            return k;
        }
    }
    throw SpecError("unknown family '" + std::string(name) + "'");
}

/// Closed interval of values; generated values are multiples of 1/kGridDenominator inside it.
struct Range {
    Rational lo;
    Rational hi;
};

inline constexpr std::int64_t kGridDenominator = 100;

inline Range parse_range(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw SpecError("range must be 'lo:hi', got '" + std::string(text) + "'");
    }
    try {
        return {Rational::parse(text.substr(0, colon)), Rational::parse(text.substr(colon + 1))};
    } catch (const UsageError &e) {
        throw SpecError(std::string("bad range: ") + e.what());
    }
}

struct GenSpec {
    GenKind kind = GenKind::uniform_usp;
    std::size_t n = 10;
    std::size_t m = 3;
    Range length{Rational(1), Rational(100)};
    Range speed{Rational(1), Rational(10)};
    Range battery{Rational(1), Rational(100)};
    std::uint64_t seed = 1;
    Rational eps{1, 10};  // paper-4.3 only
};

/// Converts an exact value to the run's scalar type (correctly rounded for f64 when decimal).
template <Scalar S>
S from_rational(const Rational &value) {
    if constexpr (std::is_same_v<S, Rational>) {
        return value;
    } else {
        return ScalarTraits<S>::parse(ScalarTraits<Rational>::to_decimal(value));
    }
}

namespace detail {

// Grid draws: integer numerators over kGridDenominator, reduced with a plain
// modulo so the stream is identical on every standard library.
class GridSampler {
  public:
    GridSampler(const Range &range, const char *what) {
        const Rational scale(kGridDenominator);
        const Rational lo = range.lo * scale;
        const Rational hi = range.hi * scale;
        Rational lo_ceil = (-lo).floor();
        lo_ceil = -lo_ceil;
        const Rational hi_floor = hi.floor();
        if (!(range.lo > Rational(0)) || range.hi < range.lo || hi_floor < lo_ceil) {
            throw SpecError(std::string(what) + " range must be positive and contain a multiple of 1/100");
        }
        lo_ = lo_ceil.numerator().get_si();
        hi_ = hi_floor.numerator().get_si();
    }

    std::int64_t draw(std::mt19937_64 &rng) const {
        const auto span = static_cast<std::uint64_t>(hi_ - lo_) + 1;
        return lo_ + static_cast<std::int64_t>(rng() % span);
    }

  private:
    std::int64_t lo_ = 0;
    std::int64_t hi_ = 0;
};

template <Scalar S>
S grid_value(std::int64_t numerator) {
    return ScalarTraits<S>::from_ratio(numerator, kGridDenominator);
}

}  // namespace detail

/**
 * @brief Deterministic instance for a generator spec.
 *
 * The same spec always produces the same instance. Generated DWP instances
 * are feasible: when no drone reaches the longest parcel, one randomly chosen
 * drone gets exactly that range.
 */
template <Scalar S>
Instance<S> generate(const GenSpec &spec) {
    switch (spec.kind) {
        case GenKind::graham_43:
            return Instance<S>::usp({S(1), S(1)}, {S(3), S(3), S(2), S(2), S(2)});
        case GenKind::paper_4_3: {
            if (!(spec.eps > Rational(0))) {
                throw SpecError("eps must be positive");
            }
            const S ten(10);
            const S ten_eps = from_rational<S>(Rational(10) + spec.eps);
            // J1 (length 10) only runs on M2; J2 (length 10 + eps) runs anywhere.
            return Instance<S>::restricted({ten, ten_eps}, {ten, ten_eps}, {{1}, {0, 1}});
        }
        default: break;
    }
    if (spec.n == 0 || spec.m == 0) {
        throw SpecError("n and m must be at least 1");
    }
    std::mt19937_64 rng(spec.seed);
    const detail::GridSampler lengths(spec.length, "length");
    const detail::GridSampler speeds(spec.speed, "speed");

    std::vector<S> speed(spec.m);
    std::vector<S> length(spec.n);
    switch (spec.kind) {
        case GenKind::uniform_usp:
        case GenKind::uniform_dwp:
            for (auto &v : speed) {
                v = detail::grid_value<S>(speeds.draw(rng));
            }
            break;
        case GenKind::equal_speed: {
            const S v = detail::grid_value<S>(speeds.draw(rng));
            for (auto &s : speed) {
                s = v;
            }
            break;
        }
        case GenKind::two_class_adversarial: {
            // One slow and one fast speed class, and a handful of distinct lengths,
            // which makes ties and near-ties frequent.
            const std::int64_t slow = speeds.draw(rng);
            const std::int64_t fast = speeds.draw(rng);
            for (auto &v : speed) {
                v = detail::grid_value<S>(rng() % 2 == 0 ? slow : fast);
            }
            std::vector<std::int64_t> pool(3);
            for (auto &p : pool) {
                p = lengths.draw(rng);
            }
            for (auto &l : length) {
                l = detail::grid_value<S>(pool[rng() % pool.size()]);
            }
            return Instance<S>::usp(speed, length);
        }
        default: break;
    }
    std::int64_t longest = 0;
    for (auto &l : length) {
        const std::int64_t k = lengths.draw(rng);
        longest = std::max(longest, k);
        l = detail::grid_value<S>(k);
    }
    if (spec.kind != GenKind::uniform_dwp) {
        return Instance<S>::usp(speed, length);
    }
    const detail::GridSampler batteries(spec.battery, "battery");
    std::vector<std::int64_t> range(spec.m);
    std::int64_t widest = 0;
    for (auto &d : range) {
        d = batteries.draw(rng);
        widest = std::max(widest, d);
    }
    if (widest < longest) {
        range[rng() % spec.m] = longest;
    }
    std::vector<S> battery(spec.m);
    for (std::size_t j = 0; j < spec.m; ++j) {
        battery[j] = detail::grid_value<S>(range[j]);
    }
    return Instance<S>::dwp(speed, battery, length);
}

/// Spec of the k-th instance of a sweep: n and m drawn uniformly from [1, max].
inline GenSpec sweep_spec(GenKind kind, std::uint64_t seed, std::size_t index, std::size_t max_n, std::size_t max_m) {
    GenSpec spec;
    spec.kind = kind;
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + index);
    spec.seed = rng();
    spec.n = 1 + static_cast<std::size_t>(rng() % max_n);
    spec.m = 1 + static_cast<std::size_t>(rng() % max_m);
    return spec;
}

}  // namespace makespan
