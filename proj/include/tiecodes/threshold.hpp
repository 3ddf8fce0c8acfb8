#pragma once

#include "bool_fn.hpp"
#include "core_group.hpp"
#include "lp.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

namespace tiecodes {

/// (w, t): f(x) = 1 iff <x, w> >= t. No sign constraints on w.
struct WeightedThreshold {
    RealVec w;
    Rational t;

    [[nodiscard]] int arity() const { return static_cast<int>(w.size()); }
    friend bool operator==(const WeightedThreshold&, const WeightedThreshold&) = default;
};

/// A map B_n -> {-1, 0, +1}.
struct Sign3VFunc {
    int n = 0;
    std::vector<std::int8_t> values;

    [[nodiscard]] std::int8_t operator()(const BoolVec& x) const { return values[x.bits]; }
    [[nodiscard]] bool has_zero() const
    {
        for (auto v : values)
            if (v == 0)
                return true;
        return false;
    }
    friend bool operator==(const Sign3VFunc&, const Sign3VFunc&) = default;
};

/// <x, w> for a Boolean x.
inline Rational bool_dot(const BoolVec& x, const RealVec& w)
{
    require_same_arity(x.n, static_cast<int>(w.size()), "bool_dot");
    Rational s = 0;
    for (int i = 1; i <= x.n; ++i)
        if (x[i])
            s += w[i - 1];
    return s;
}

namespace detail {

/// All 2^n subset sums <x, w>, indexed by the packed x.
inline std::vector<Rational> subset_sums(const RealVec& w)
{
    int n = static_cast<int>(w.size());
    if (n > kMaxTableArity)
        throw dimension_error("subset_sums: arity too large for an explicit table");
    std::vector<Rational> sums(std::size_t{1} << n);
    sums[0] = 0;
    for (std::uint64_t x = 1; x < sums.size(); ++x) {
        int low = std::countr_zero(x); // coordinate n - low
        sums[x] = sums[x & (x - 1)] + w[n - 1 - low];
    }
    return sums;
}

} // namespace detail

inline Rational half_perimeter(const RealVec& w)
{
    Rational s = 0;
    for (const auto& v : w)
        s += v;
    return s / 2;
}

inline BoolFunc to_bool_func(const WeightedThreshold& wt)
{
    auto sums = detail::subset_sums(wt.w);
    BoolFunc f(wt.arity());
    for (std::uint64_t x = 0; x < sums.size(); ++x)
        if (sums[x] >= wt.t)
            f.set(x, true);
    return f;
}

inline Sign3VFunc to_3v_func(const WeightedThreshold& wt)
{
    auto sums = detail::subset_sums(wt.w);
    Sign3VFunc f{wt.arity(), std::vector<std::int8_t>(sums.size())};
    for (std::uint64_t x = 0; x < sums.size(); ++x)
        f.values[x] = static_cast<std::int8_t>(cmp(sums[x], wt.t) > 0 ? 1 : (cmp(sums[x], wt.t) < 0 ? -1 : 0));
    return f;
}

/// f(x-bar) = -f(x).
inline bool is_self_dual(const Sign3VFunc& f)
{
    std::uint64_t last = f.values.size() - 1;
    for (std::uint64_t x = 0; x < f.values.size(); ++x)
        if (f.values[x] != -f.values[last - x])
            return false;
    return true;
}

/// f^g(x) = f(x^{g^-1}) on 3-valued functions.
inline Sign3VFunc act_fn(const GroupElement& g, const Sign3VFunc& f)
{
    require_same_arity(g.size(), f.n, "act_fn");
    auto ginv = inverse(g);
    Sign3VFunc out{f.n, std::vector<std::int8_t>(f.values.size())};
    for (std::uint64_t x = 0; x < f.values.size(); ++x)
        out.values[x] = f(act_bool(ginv, BoolVec(x, f.n)));
    return out;
}

/// Weights and threshold describing f^g: w' = w^g and t' = t - <nu, w>.
inline WeightedThreshold transform(const GroupElement& g, const WeightedThreshold& wt)
{
    require_same_arity(g.size(), wt.arity(), "transform");
    Rational shift = 0;
    for (int i = 1; i <= g.size(); ++i)
        if (g.nu[i])
            shift += wt.w[i - 1];
    return {act_real(g, wt.w), wt.t - shift};
}

enum class SelfDualReading {
    two_valued,  // f_(w,t) as a Boolean function
    three_valued // f^3V_(w,t)
};

inline bool is_self_dual_threshold(const WeightedThreshold& wt,
                                   SelfDualReading reading = SelfDualReading::two_valued)
{
    auto sums = detail::subset_sums(wt.w);
    Rational half = half_perimeter(wt.w);
    bool touches_half = false;
    bool touches_t = false;
    for (const auto& s : sums) {
        touches_half = touches_half || s == half;
        touches_t = touches_t || s == wt.t;
    }
    if (reading == SelfDualReading::three_valued && touches_t)
        return wt.t == half;
    if (touches_half)
        return false;
    return to_bool_func(wt) == to_bool_func({wt.w, half});
}

struct SynthesisOptions {
    bool integral = false;          // clear denominators of the witness
    bool threshold_at_half = false; // pin t to the half-perimeter of w
};

/// Finds (w, t) with to_bool_func(w, t) == f, or nullopt when f is not a threshold function.
inline std::optional<WeightedThreshold> synthesize(const BoolFunc& f, SynthesisOptions opts = {})
{
    int n = f.arity();
    if (opts.threshold_at_half) {
        // Rows (x - 1/2) . w >= 1 for winners and <= -1 for losers.
        LinearSystem sys(n);
        for (std::uint64_t x = 0; x < f.table_size(); ++x) {
            BoolVec v(x, n);
            RealVec row(n);
            for (int i = 1; i <= n; ++i)
                row[i - 1] = (v[i] ? Rational(1, 2) : Rational(-1, 2)) * (f.get(x) ? 1 : -1);
            sys.add(std::move(row), Relation::at_least_one);
        }
        auto w = lp_feasible(sys);
        if (!w)
            return std::nullopt;
        if (opts.integral)
            w = clear_denominators(*w);
        return WeightedThreshold{*w, half_perimeter(*w)};
    }
    // Variables (w_1..w_n, t).
    LinearSystem sys(n + 1);
    for (std::uint64_t x = 0; x < f.table_size(); ++x) {
        BoolVec v(x, n);
        int s = f.get(x) ? 1 : -1;
        RealVec row(n + 1);
        for (int i = 1; i <= n; ++i)
            row[i - 1] = v[i] ? s : 0;
        row[n] = -s;
        sys.add(std::move(row), Relation::at_least_one);
    }
    auto sol = lp_feasible(sys);
    if (!sol)
        return std::nullopt;
    if (opts.integral)
        sol = clear_denominators(*sol);
    Rational t = sol->back();
    sol->pop_back();
    return WeightedThreshold{std::move(*sol), t};
}

} // namespace tiecodes
