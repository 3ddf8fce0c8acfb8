#include "tiecodes/lp.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace tiecodes;
using namespace tiecodes::testing;

namespace {

// Fourier-Motzkin elimination on rows c.a >= b; an independent feasibility oracle for tiny systems.
struct Ineq {
    RealVec c;
    Rational b;
};

bool fm_feasible(const LinearSystem& sys)
{
    std::vector<Ineq> rows;
    for (const auto& r : sys.rows) {
        Rational b = r.relation == Relation::at_least_one ? 1 : 0;
        rows.push_back({r.coeffs, b});
        if (r.relation == Relation::equal_zero) {
            RealVec neg = r.coeffs;
            for (auto& v : neg)
                v = -v;
            rows.push_back({neg, 0});
        }
    }
    for (int var = 0; var < sys.num_vars; ++var) {
        std::vector<Ineq> pos, neg, next;
        for (auto& r : rows) {
            int s = sgn(r.c[var]);
            (s > 0 ? pos : (s < 0 ? neg : next)).push_back(r);
        }
        for (const auto& p : pos)
            for (const auto& q : neg) {
                Rational lp = -q.c[var], lq = p.c[var];
                Ineq comb{RealVec(sys.num_vars), lp * p.b + lq * q.b};
                for (int k = 0; k < sys.num_vars; ++k)
                    comb.c[k] = lp * p.c[k] + lq * q.c[k];
                next.push_back(comb);
            }
        rows = std::move(next);
    }
    for (const auto& r : rows)
        if (r.b > 0)
            return false;
    return true;
}

LinearSystem random_system(int vars, int rows)
{
    LinearSystem sys(vars);
    std::uniform_int_distribution<int> coef(-2, 2), rel(0, 5);
    for (int i = 0; i < rows; ++i) {
        RealVec c(vars);
        for (auto& v : c)
            v = coef(rng());
        int r = rel(rng());
        sys.add(std::move(c), r == 0 ? Relation::equal_zero : (r == 1 ? Relation::at_least_zero : Relation::at_least_one));
    }
    return sys;
}

} // namespace

TEST(LpFeasible, SingleBound)
{
    LinearSystem sys(1);
    sys.add({Rational(1)}, Relation::at_least_one);
    auto a = lp_feasible(sys);
    ASSERT_TRUE(a);
    EXPECT_GE((*a)[0], 1);
}

TEST(LpFeasible, ContradictoryPair)
{
    LinearSystem sys(2);
    sys.add({Rational(1), Rational(-1)}, Relation::at_least_one);
    sys.add({Rational(-1), Rational(1)}, Relation::at_least_one);
    EXPECT_FALSE(lp_feasible(sys));
}

TEST(LpFeasible, EmptySystemIsFeasible)
{
    LinearSystem sys(3);
    auto a = lp_feasible(sys);
    ASSERT_TRUE(a);
    EXPECT_EQ(a->size(), 3u);
}

TEST(LpFeasible, EqualitiesPinDirections)
{
    // a1 = a2, a2 = a3, a1 - 2 a3 >= 1 forces a3 <= -1.
    LinearSystem sys(3);
    sys.add({Rational(1), Rational(-1), Rational(0)}, Relation::equal_zero);
    sys.add({Rational(0), Rational(1), Rational(-1)}, Relation::equal_zero);
    sys.add({Rational(1), Rational(0), Rational(-2)}, Relation::at_least_one);
    auto a = lp_feasible(sys);
    ASSERT_TRUE(a);
    EXPECT_TRUE(satisfies(sys, *a));
    sys.add({Rational(0), Rational(0), Rational(1)}, Relation::at_least_zero);
    EXPECT_FALSE(lp_feasible(sys));
}

TEST(LpFeasible, DegenerateRedundantRows)
{
    // Many copies of the same facets: a cycling-prone instance for naive pivoting.
    LinearSystem sys(3);
    for (int k = 0; k < 6; ++k) {
        sys.add({Rational(1), Rational(1), Rational(0)}, Relation::at_least_zero);
        sys.add({Rational(0), Rational(1), Rational(1)}, Relation::at_least_zero);
        sys.add({Rational(1), Rational(0), Rational(1)}, Relation::at_least_zero);
        sys.add({Rational(-1), Rational(-1), Rational(-1)}, Relation::at_least_zero);
    }
    auto a = lp_feasible(sys);
    ASSERT_TRUE(a);
    EXPECT_TRUE(satisfies(sys, *a));
    // The facets pin x to the origin.
    sys.add({Rational(1), Rational(0), Rational(0)}, Relation::at_least_one);
    EXPECT_FALSE(lp_feasible(sys));
}

TEST(LpFeasible, AgreesWithFourierMotzkin)
{
    int feasible = 0, infeasible = 0;
    for (int trial = 0; trial < 1500; ++trial) {
        int vars = 1 + trial % 3;
        auto sys = random_system(vars, 2 + trial % 6);
        auto a = lp_feasible(sys);
        ASSERT_EQ(a.has_value(), fm_feasible(sys)) << "trial " << trial;
        if (a) {
            EXPECT_TRUE(satisfies(sys, *a));
            ++feasible;
        } else {
            ++infeasible;
        }
    }
    EXPECT_GT(feasible, 100);
    EXPECT_GT(infeasible, 100);
}

TEST(LpFeasible, PlantedSolutionsAreFound)
{
    for (int trial = 0; trial < 300; ++trial) {
        int vars = 2 + trial % 5;
        auto point = random_rational_vec(vars, 5, 3);
        LinearSystem sys(vars);
        for (int r = 0; r < 3 * vars; ++r) {
            auto c = random_rational_vec(vars, 3, 1);
            Rational v = dot(c, point);
            if (v == 0)
                sys.add(std::move(c), Relation::equal_zero);
            else {
                if (v < 0)
                    for (auto& x : c)
                        x = -x;
                sys.add(std::move(c), Relation::at_least_zero);
            }
        }
        auto a = lp_feasible(sys);
        ASSERT_TRUE(a);
        EXPECT_TRUE(satisfies(sys, *a));
    }
}

TEST(ClearDenominators, ScalesToIntegers)
{
    RealVec v{Rational(1, 2), Rational(-2, 3), Rational(3)};
    auto w = clear_denominators(v);
    for (const auto& x : w)
        EXPECT_EQ(x.get_den(), 1);
    EXPECT_EQ(w[0] * v[1], w[1] * v[0]);
    EXPECT_EQ(w[2] * v[0], w[0] * v[2]);
    EXPECT_GT(w[0], 0);
}
