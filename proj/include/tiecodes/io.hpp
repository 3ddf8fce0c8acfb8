#pragma once

// JSON views of the library types. Needs the single-header nlohmann json (json.hpp) on the include path.

#include "core_group.hpp"
#include "games.hpp"
#include "rational.hpp"
#include "threshold.hpp"

#include <json.hpp>

namespace tiecodes {

using Json = nlohmann::ordered_json;

/// Exact values travel as "p/q" strings so nothing is lost to floating point.
inline Json to_json(const RealVec& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(to_fraction(x));
    return out;
}

inline RealVec real_vec_from_json(const Json& j)
{
    RealVec out;
    for (const auto& x : j)
        out.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<long>()));
    return out;
}

/// {"nu": [0/1 per coordinate], "sigma": [one-based images]}
inline Json to_json(const GroupElement& g)
{
    return Json{{"nu", g.nu.to_vector()}, {"sigma", g.sigma.to_one_based()}};
}

inline GroupElement group_element_from_json(const Json& j)
{
    GroupElement g(Negation::from_vector(j.at("nu").get<std::vector<int>>()),
                   Permutation::from_one_based(j.at("sigma").get<std::vector<int>>()));
    return g;
}

inline Json to_json(const Game& g)
{
    return Json{{"n", g.players()}, {"winning_table_hex", to_hex(g.winning())}};
}

inline Game game_from_json(const Json& j)
{
    return Game(from_hex(j.at("winning_table_hex").get<std::string>(), j.at("n").get<int>()));
}

inline Json to_json(const WeightedThreshold& wt)
{
    return Json{{"w", to_json(wt.w)}, {"t", to_fraction(wt.t)}};
}

} // namespace tiecodes
