#include "tiecodes/games.hpp"
#include "tiecodes/genetic.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace tiecodes;
using namespace tiecodes::testing;

namespace {

RealVec ints(std::initializer_list<long> v) { return integer_vec(v); }

bool generic(const RealVec& a) { return std::holds_alternative<ShortSetFamily>(short_family(a)); }

} // namespace

TEST(GameFromLengths, Examples)
{
    EXPECT_EQ(game_from_lengths(ints({1, 1, 1})).winning(), BoolFunc::majority(3));
    EXPECT_EQ(game_from_lengths(ints({1, 1, 1, 5})).winning(), BoolFunc::dictator(4, 4));
    EXPECT_EQ(game_from_lengths(ints({0, 0, 1})).winning(), BoolFunc::dictator(3, 3));
    EXPECT_THROW(game_from_lengths(ints({1, -1, 1})), std::invalid_argument);
    EXPECT_THROW(Game(BoolFunc::parity(2)), std::invalid_argument);
}

TEST(Decisive, Examples)
{
    EXPECT_TRUE(is_decisive(Game(BoolFunc::majority(3))));
    EXPECT_FALSE(is_decisive(game_from_lengths(ints({1, 1, 2}))));
    EXPECT_TRUE(is_decisive(Game(BoolFunc::dictator(4, 2))));
}

TEST(Decisive, GenericLengthsGiveDecisiveGames)
{
    for (int n = 1; n <= 6; ++n)
        for (int trial = 0; trial < 50; ++trial) {
            auto a = random_positive_ints(n, 12);
            EXPECT_EQ(is_decisive(game_from_lengths(a)), generic(a));
        }
}

TEST(Dummies, Examples)
{
    EXPECT_EQ(dummies(game_from_lengths(ints({1, 1, 1, 5}))), (std::vector<int>{1, 2, 3}));
    EXPECT_TRUE(dummies(Game(BoolFunc::majority(3))).empty());
    auto extended = extend_players(Game(BoolFunc::majority(3)), 5);
    EXPECT_EQ(dummies(extended), (std::vector<int>{4, 5}));
    EXPECT_EQ(extended.wins(SubsetOfN::from_members(5, {1, 2})), true);
    EXPECT_EQ(extended.wins(SubsetOfN::from_members(5, {1, 4, 5})), false);
    EXPECT_THROW(extend_players(extended, 3), std::invalid_argument);
}

TEST(Equivalence, Examples)
{
    EXPECT_TRUE(strategically_equivalent(game_from_lengths(ints({1, 2, 2})), game_from_lengths(ints({1, 1, 1}))));
    EXPECT_TRUE(strategically_equivalent(Game(BoolFunc::dictator(3, 1)), Game(BoolFunc::dictator(3, 2))));
    EXPECT_FALSE(strategically_equivalent(Game(BoolFunc::majority(3)), Game(BoolFunc::dictator(3, 1))));
    // Padding: the 3-majority is the 5-player game (1,1,1,0,0).
    EXPECT_TRUE(strategically_equivalent(Game(BoolFunc::majority(3)), game_from_lengths(ints({0, 1, 0, 1, 1}))));
}

TEST(WeightedMajority, Examples)
{
    auto maj = Game(BoolFunc::majority(3));
    auto w = is_weighted_majority(maj);
    ASSERT_TRUE(w);
    EXPECT_EQ(game_from_lengths(*w).winning(), maj.winning());
    auto dict = Game(BoolFunc::dictator(4, 3));
    auto wd = is_weighted_majority(dict);
    ASSERT_TRUE(wd);
    EXPECT_EQ(game_from_lengths(*wd).winning(), dict.winning());
    EXPECT_THROW(is_weighted_majority(game_from_lengths(ints({1, 1, 2}))), std::invalid_argument);
}

TEST(WeightedMajority, NineVariableNonThreshold)
{
    Game g(code_to_function(parse_code("9,6,4,2")));
    ASSERT_TRUE(is_decisive(g));
    EXPECT_FALSE(is_weighted_majority(g));
}

TEST(WeightedMajority, ZeroWeightsAreDummies)
{
    for (int n = 1; n <= 6; ++n)
        for (int trial = 0; trial < 30; ++trial) {
            auto a = random_positive_ints(n, 9);
            if (trial % 3 == 0)
                a[0] = 0;
            if (!generic(a))
                continue;
            auto g = game_from_lengths(a);
            auto w = is_weighted_majority(g);
            ASSERT_TRUE(w);
            EXPECT_EQ(game_from_lengths(*w).winning(), g.winning());
            auto d = dummies(g);
            for (int i = 1; i <= n; ++i)
                if ((*w)[i - 1] == 0)
                    EXPECT_TRUE(std::find(d.begin(), d.end(), i) != d.end()) << "player " << i;
        }
}

TEST(WeightedMajority, NonpositiveWeightImpliesDummy)
{
    // With a representation f = f_(w, half w), any w_i <= 0 marks a dummy.
    for (int n = 2; n <= 5; ++n)
        for (int trial = 0; trial < 40; ++trial) {
            auto w = random_rational_vec(n, 6, 1);
            Rational half = half_perimeter(w);
            bool tie = false;
            for (const auto& s : detail::subset_sums(w))
                tie = tie || s == half;
            if (tie)
                continue;
            auto f = to_bool_func({w, half});
            if (!is_monotone(f))
                continue;
            auto d = dummies(Game(f));
            for (int i = 1; i <= n; ++i)
                if (w[i - 1] <= 0)
                    EXPECT_TRUE(std::find(d.begin(), d.end(), i) != d.end());
        }
}
