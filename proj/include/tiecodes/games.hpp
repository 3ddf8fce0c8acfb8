#pragma once

#include "bool_fn.hpp"
#include "threshold.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace tiecodes {

/// A simple game on players 1..n, stored as the indicator of winning coalitions (via chi).
class Game {
public:
    explicit Game(BoolFunc winning) : winning_(std::move(winning))
    {
        if (!is_monotone(winning_))
            throw std::invalid_argument("Game: winning family must be closed under supersets");
    }

    [[nodiscard]] int players() const { return winning_.arity(); }
    [[nodiscard]] const BoolFunc& winning() const { return winning_; }
    [[nodiscard]] bool wins(const SubsetOfN& s) const { return winning_(s.chi); }

    friend bool operator==(const Game&, const Game&) = default;

private:
    BoolFunc winning_;
};

/// Winning coalitions are the a-long sets: sum over S exceeds sum over the complement.
inline Game game_from_lengths(const RealVec& a)
{
    for (const auto& v : a)
        if (v < 0)
            throw std::invalid_argument("game_from_lengths: lengths must be nonnegative");
    Rational half = half_perimeter(a);
    auto sums = detail::subset_sums(a);
    BoolFunc f(static_cast<int>(a.size()));
    for (std::uint64_t x = 0; x < sums.size(); ++x)
        if (sums[x] > half)
            f.set(x, true);
    return Game(std::move(f));
}

/// Exactly one of S and its complement wins, for every S.
inline bool is_decisive(const Game& g) { return is_self_dual(g.winning()); }

/// Players (1-based) that are never pivotal.
inline std::vector<int> dummies(const Game& g)
{
    int n = g.players();
    std::vector<int> out;
    for (int i = 1; i <= n; ++i) {
        std::uint64_t bit = std::uint64_t{1} << (n - i);
        bool pivotal = false;
        for (std::uint64_t s = 0; s < g.winning().table_size() && !pivotal; ++s)
            if (!(s & bit) && g.winning().get(s) != g.winning().get(s | bit))
                pivotal = true;
        if (!pivotal)
            out.push_back(i);
    }
    return out;
}

/// The same game on m >= n players; the added players are dummies.
inline Game extend_players(const Game& g, int m)
{
    int n = g.players();
    if (m < n)
        throw std::invalid_argument("extend_players: cannot shrink a game");
    BoolFunc f(m);
    for (std::uint64_t x = 0; x < f.table_size(); ++x)
        if (g.winning().get(x >> (m - n)))
            f.set(x, true);
    return Game(std::move(f));
}

/// A bijection of players identifies the winning families (after padding with dummies).
inline bool strategically_equivalent(const Game& a, const Game& b)
{
    int m = std::max(a.players(), b.players());
    return canonical_perm(extend_players(a, m).winning()) == canonical_perm(extend_players(b, m).winning());
}

/// Nonnegative weights w with winning = f_(w, half-perimeter of w), or nullopt.
inline std::optional<RealVec> is_weighted_majority(const Game& g)
{
    if (!is_decisive(g))
        throw std::invalid_argument("is_weighted_majority: game must be decisive");
    auto wt = synthesize(g.winning(), {.threshold_at_half = true});
    if (!wt)
        return std::nullopt;
    // Negative weights belong to dummies; zeroing them leaves every comparison on the same side.
    RealVec w = wt->w;
    for (auto& v : w)
        if (v < 0)
            v = 0;
    if (to_bool_func({w, half_perimeter(w)}) != g.winning())
        throw std::logic_error("is_weighted_majority: clamped weights changed the game");
    return w;
}

} // namespace tiecodes
