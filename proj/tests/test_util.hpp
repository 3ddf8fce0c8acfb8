#pragma once

#include "tiecodes/core_group.hpp"
#include "tiecodes/rational.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace tiecodes::testing {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 gen(20240611);
    return gen;
}

inline Permutation random_permutation(int n)
{
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    std::shuffle(v.begin(), v.end(), rng());
    return Permutation::from_zero_based(v);
}

inline GroupElement random_element(int n)
{
    std::uniform_int_distribution<std::uint64_t> bits(0, (std::uint64_t{1} << n) - 1);
    return {Negation{BoolVec(bits(rng()), n)}, random_permutation(n)};
}

/// Entries p/q with |p| <= range, 1 <= q <= den.
inline RealVec random_rational_vec(int n, int range = 9, int den = 4)
{
    std::uniform_int_distribution<int> num(-range, range), d(1, den);
    RealVec v(n);
    for (auto& x : v) {
        x = Rational(num(rng()), d(rng()));
        x.canonicalize();
    }
    return v;
}

inline RealVec random_positive_ints(int n, int hi)
{
    std::uniform_int_distribution<int> d(1, hi);
    RealVec v(n);
    for (auto& x : v)
        x = d(rng());
    return v;
}

inline std::vector<GroupElement> all_elements(int n)
{
    std::vector<GroupElement> out;
    for_each_group_element(n, [&](const GroupElement& g) { out.push_back(g); });
    return out;
}

} // namespace tiecodes::testing
