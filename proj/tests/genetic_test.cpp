#include "tiecodes/genetic.hpp"
#include "tiecodes/threshold.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <functional>
#include <set>

using namespace tiecodes;
using namespace tiecodes::testing;

namespace {

RealVec ints(std::initializer_list<long> v) { return integer_vec(v); }

ElementMask members(std::initializer_list<int> m)
{
    ElementMask out = 0;
    for (int i : m)
        out |= ElementMask{1} << (i - 1);
    return out;
}

// Searches every injective map phi: A -> B with phi(x) >= x and phi non-decreasing.
bool hook_by_maps(ElementMask a, ElementMask b)
{
    auto as = mask_members_desc(a), bs = mask_members_desc(b);
    std::vector<int> image(as.size());
    std::function<bool(std::size_t)> assign = [&](std::size_t k) {
        if (k == as.size())
            return true;
        for (int y : bs) {
            if (y < as[k])
                continue;
            bool ok = true;
            for (std::size_t j = 0; j < k; ++j) // as is descending, so earlier images must be larger
                ok = ok && image[j] > y;
            if (!ok)
                continue;
            image[k] = y;
            if (assign(k + 1))
                return true;
        }
        return false;
    };
    return assign(0);
}

std::vector<GeneticCode> codes_of(int n)
{
    std::vector<GeneticCode> out;
    enumerate_virtual_codes(n, [&](const GeneticCode& c) { out.push_back(c); });
    return out;
}

bool is_generic(const RealVec& a) { return std::holds_alternative<ShortSetFamily>(short_family(a)); }

} // namespace

TEST(HookOrder, Examples)
{
    EXPECT_TRUE(hook_leq(members({1, 2}), members({1, 3})));
    EXPECT_FALSE(hook_leq(members({2, 3}), members({1, 4})));
    EXPECT_FALSE(hook_leq(members({1, 2, 6}), members({3, 6})));
    EXPECT_FALSE(hook_leq(members({3, 6}), members({1, 2, 6})));
    for (ElementMask a = 0; a < 64; ++a)
        EXPECT_TRUE(hook_leq(a, a));
    EXPECT_TRUE(hook_leq(SubsetOfN::from_members(4, {2}), SubsetOfN::from_members(4, {4})));
}

TEST(HookOrder, MatchesInjectiveMapsExhaustively)
{
    for (int n = 1; n <= 5; ++n)
        for (ElementMask a = 0; a <= full_mask(n); ++a)
            for (ElementMask b = 0; b <= full_mask(n); ++b)
                ASSERT_EQ(hook_leq(a, b), hook_by_maps(a, b)) << a << " " << b;
}

TEST(HookOrder, MatchesInjectiveMapsRandomly)
{
    for (int n = 6; n <= 7; ++n) {
        std::uniform_int_distribution<ElementMask> pick(0, full_mask(n));
        for (int trial = 0; trial < 3000; ++trial) {
            ElementMask a = pick(rng()), b = pick(rng());
            ASSERT_EQ(hook_leq(a, b), hook_by_maps(a, b));
        }
    }
}

TEST(HookOrder, AgreesWithDominanceOnHalfCube)
{
    for (int n = 1; n <= 6; ++n) {
        std::uint64_t top = std::uint64_t{1} << (n - 1);
        for (std::uint64_t x = top; x < 2 * top; ++x)
            for (std::uint64_t y = top; y < 2 * top; ++y)
                ASSERT_EQ(dominance_leq(BoolVec(x, n), BoolVec(y, n)), hook_leq(x, y));
    }
}

TEST(ShortFamily, Examples)
{
    auto fam = std::get<ShortSetFamily>(short_family(ints({1, 1, 1})));
    EXPECT_TRUE(fam.contains(members({3})));
    EXPECT_FALSE(fam.contains(members({2, 3})));
    EXPECT_TRUE(fam.contains(0));
    auto ng = short_family(ints({1, 1, 2}));
    ASSERT_TRUE(std::holds_alternative<NonGeneric>(ng));
    EXPECT_EQ(std::get<NonGeneric>(ng).wall, members({3}));
}

TEST(ShortFamily, ComplementsAndHookMonotonicity)
{
    for (int n = 1; n <= 6; ++n)
        for (int trial = 0; trial < 40; ++trial) {
            auto a = random_positive_ints(n, 30);
            auto fam_or = short_family(a);
            if (!std::holds_alternative<ShortSetFamily>(fam_or))
                continue;
            auto fam = std::get<ShortSetFamily>(fam_or);
            std::sort(a.begin(), a.end());
            auto sorted = std::get<ShortSetFamily>(short_family(a));
            for (ElementMask m = 0; m <= full_mask(n); ++m) {
                EXPECT_NE(fam.contains(m), fam.contains(full_mask(n) & ~m));
                if (!sorted.contains(m))
                    continue;
                for (ElementMask s = 0; s <= full_mask(n); ++s)
                    if (hook_leq(s, m))
                        EXPECT_TRUE(sorted.contains(s));
            }
        }
}

TEST(GeneticCodeOf, Examples)
{
    EXPECT_EQ(format_code(genetic_code_of(ints({0, 1, 1, 1}))), "4,1");
    EXPECT_EQ(format_code(genetic_code_of(ints({1, 1, 2, 3, 3, 5}))), "6,3;6,2,1");
    EXPECT_EQ(format_code(genetic_code_of(ints({1, 1, 1}))), "3");
    EXPECT_TRUE(genetic_code_of(ints({0, 0, 1})).empty());
}

TEST(GeneticCodeOf, Errors)
{
    EXPECT_THROW(genetic_code_of(ints({2, 1, 1})), std::invalid_argument);
    EXPECT_THROW(genetic_code_of(ints({-1, 1, 1})), std::invalid_argument);
    try {
        genetic_code_of(ints({1, 1, 2}));
        FAIL() << "expected a non-generic error";
    } catch (const non_generic_error& e) {
        EXPECT_EQ(e.wall, members({3}));
    }
}

TEST(GeneticCodeOf, OrbitInvariantAndVirtual)
{
    for (int n = 1; n <= 7; ++n)
        for (int trial = 0; trial < 40; ++trial) {
            auto a = random_rational_vec(n, 40, 3);
            auto canon = canonical_real(a);
            if (!is_generic(canon))
                continue;
            auto code = genetic_code_of(canon);
            EXPECT_TRUE(is_virtual_code(code));
            auto moved = canonical_real(act_real(random_element(n), a));
            EXPECT_EQ(genetic_code_of(moved), code);
        }
}

TEST(CodeText, FormatAndParse)
{
    auto c = parse_code("6,3;6,2,1");
    EXPECT_EQ(c.n, 6);
    EXPECT_EQ(format_code(c), "6,3;6,2,1");
    EXPECT_EQ(parse_code("6,2,1;6,3"), c);
    EXPECT_EQ(parse_code("-", 5), GeneticCode(5, {}));
    EXPECT_EQ(format_code(GeneticCode(5, {})), "-");
    EXPECT_EQ(parse_code("6,1", 6).n, 6);
    EXPECT_THROW(parse_code("-"), std::invalid_argument);
    EXPECT_THROW(parse_code("6,x"), std::invalid_argument);
    EXPECT_THROW(parse_code("5,1", 6), std::invalid_argument); // gene without n
    EXPECT_THROW(parse_code("3;3"), std::invalid_argument);
}

TEST(VirtualCode, Examples)
{
    EXPECT_TRUE(is_virtual_code(parse_code("3")));
    EXPECT_FALSE(is_virtual_code(parse_code("3,1")));
    EXPECT_TRUE(is_virtual_code(parse_code("6,3;6,2,1")));
    EXPECT_FALSE(is_virtual_code(parse_code("6,3;6,2")));
}

TEST(Enumerate, SmallListsExactly)
{
    std::vector<std::string> three, four;
    for (const auto& c : codes_of(3))
        three.push_back(format_code(c));
    for (const auto& c : codes_of(4))
        four.push_back(format_code(c));
    std::sort(three.begin(), three.end());
    std::sort(four.begin(), four.end());
    EXPECT_EQ(three, (std::vector<std::string>{"-", "3"}));
    EXPECT_EQ(four, (std::vector<std::string>{"-", "4", "4,1"}));
}

TEST(Enumerate, MatchesExhaustiveAntichainSearch)
{
    // Every set of genes, filtered by the definition.
    for (int n = 1; n <= 5; ++n) {
        std::vector<ElementMask> genes;
        for (ElementMask m = ElementMask{1} << (n - 1); m <= full_mask(n); ++m)
            genes.push_back(m);
        std::set<std::string> expected;
        for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << genes.size()); ++pick) {
            std::vector<ElementMask> g;
            for (std::size_t k = 0; k < genes.size(); ++k)
                if ((pick >> k) & 1u)
                    g.push_back(genes[k]);
            GeneticCode c(n, g);
            if (is_virtual_code(c))
                expected.insert(format_code(c));
        }
        std::set<std::string> got;
        for (const auto& c : codes_of(n))
            EXPECT_TRUE(got.insert(format_code(c)).second) << "duplicate " << format_code(c);
        EXPECT_EQ(got, expected) << "n=" << n;
    }
}

TEST(Enumerate, CountsAndOrder)
{
    const std::uint64_t expected[] = {0, 1, 1, 2, 3, 7, 21, 135, 2470};
    for (int n = 1; n <= 8; ++n) {
        auto codes = codes_of(n);
        EXPECT_EQ(codes.size(), expected[n]) << "n=" << n;
        EXPECT_EQ(census(n, CensusMode::virtual_codes, {1, 4}), expected[n]);
        for (const auto& c : codes)
            ASSERT_TRUE(is_virtual_code(c));
    }
    EXPECT_THROW(census(11, CensusMode::virtual_codes), std::out_of_range);
    EXPECT_THROW(enumerate_virtual_codes(0, [](const GeneticCode&) {}), std::out_of_range);
}

TEST(Enumerate, SplitTasksCoverTheTreeOnce)
{
    for (int n = 5; n <= 8; ++n) {
        VirtualCodeEnumerator e(n);
        for (int depth : {0, 1, 3, 12}) {
            std::uint64_t sum = 0;
            std::set<std::string> seen;
            for (const auto& t : e.split(depth)) {
                sum += e.count(t);
                e.for_each(t, [&](const GeneticCode& c) { EXPECT_TRUE(seen.insert(format_code(c)).second); });
            }
            EXPECT_EQ(sum, seen.size());
            EXPECT_EQ(sum, census(n, CensusMode::virtual_codes, {1, 0}));
        }
    }
}

TEST(Census, IndependentOfWorkers)
{
    for (unsigned workers : {1u, 2u, 3u, 8u}) {
        EXPECT_EQ(census(8, CensusMode::virtual_codes, {workers}), 2470u);
        EXPECT_EQ(census(7, CensusMode::chambers, {workers}), 135u);
    }
}

TEST(Census, ChambersMatchCodesUpToEight)
{
    EXPECT_EQ(census(1, CensusMode::chambers), 0u);
    for (int n = 2; n <= 8; ++n)
        EXPECT_EQ(census(n, CensusMode::chambers), census(n, CensusMode::virtual_codes)) << "n=" << n;
}

TEST(Realize, Examples)
{
    auto code = parse_code("4,1");
    auto a = realize_code(code);
    ASSERT_TRUE(a);
    EXPECT_EQ(genetic_code_of(*a), code);
    auto empty = GeneticCode(5, {});
    auto b = realize_code(empty);
    ASSERT_TRUE(b);
    EXPECT_EQ(genetic_code_of(*b), empty);
    EXPECT_THROW(realize_code(parse_code("3,1")), std::invalid_argument);
}

TEST(Realize, RoundTripForEveryCode)
{
    for (int n = 1; n <= 7; ++n)
        for (const auto& c : codes_of(n)) {
            auto a = realize_code(c);
            ASSERT_TRUE(a) << format_code(c);
            EXPECT_TRUE(std::is_sorted(a->begin(), a->end()));
            EXPECT_EQ(genetic_code_of(*a), c);
        }
}

TEST(Realize, CoveringRowsMatchAllRows)
{
    for (int n = 1; n <= 5; ++n)
        for (const auto& c : codes_of(n)) {
            auto covering = realize_code(c, RealizeRows::covering);
            auto full = realize_code(c, RealizeRows::all_subsets);
            ASSERT_EQ(covering.has_value(), full.has_value());
            if (covering)
                EXPECT_TRUE(satisfies(realization_system(c, RealizeRows::all_subsets), *covering));
        }
    // The first non-realizable codes appear at n = 9; check the reduction there too.
    auto c = parse_code("9,6,4,2");
    EXPECT_FALSE(realize_code(c, RealizeRows::covering));
    EXPECT_FALSE(realize_code(c, RealizeRows::all_subsets));
}

TEST(P2, FunctionExamples)
{
    EXPECT_EQ(code_to_function(parse_code("3")), BoolFunc::majority(3));
    EXPECT_EQ(code_to_function(GeneticCode(4, {})), BoolFunc::dictator(4, 1));
    EXPECT_EQ(function_to_code(BoolFunc::majority(3)), parse_code("3"));
    EXPECT_TRUE(function_to_code(BoolFunc::dictator(5, 1)).empty());
    EXPECT_THROW(function_to_code(BoolFunc::dictator(3, 2)), std::invalid_argument);
    EXPECT_THROW(function_to_code(BoolFunc::constant(3, true)), std::invalid_argument);
}

TEST(P2, RoundTripAndImage)
{
    for (int n = 1; n <= 6; ++n)
        for (const auto& c : codes_of(n)) {
            auto f = code_to_function(c);
            ASSERT_TRUE(is_self_dual(f));
            ASSERT_TRUE(is_regular(f));
            ASSERT_EQ(function_to_code(f), c);
        }
}

TEST(P2, ImageIsAllSelfDualRegularAtFour)
{
    int n = 4;
    std::set<std::string> scanned;
    std::uint64_t half = std::uint64_t{1} << (n - 1);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << half); ++bits) {
        HalfCubeFunc h{n, std::vector<bool>(half)};
        for (std::uint64_t k = 0; k < half; ++k)
            h.table[k] = (bits >> k) & 1u;
        auto f = extend_self_dual(h);
        if (is_regular(f))
            scanned.insert(to_hex(f));
    }
    std::set<std::string> image;
    for (const auto& c : codes_of(n))
        image.insert(to_hex(code_to_function(c)));
    EXPECT_EQ(image, scanned);
}

TEST(NonThreshold, NineVariableWitness)
{
    auto c = parse_code("9,6,4,2");
    ASSERT_TRUE(is_virtual_code(c));
    EXPECT_EQ(BoolVec(c.genes[0], 9).to_string(), "100101010");
    auto f = code_to_function(c);
    EXPECT_TRUE(is_self_dual(f));
    EXPECT_TRUE(is_regular(f));
    EXPECT_FALSE(synthesize(f));
    EXPECT_FALSE(realize_code(c));
}

TEST(CodeFile, RoundTrip)
{
    auto path = (std::filesystem::temp_directory_path() / "tiecodes_codes_test.vgc").string();
    auto codes = codes_of(6);
    {
        CodeFileWriter w(path, 6);
        for (const auto& c : codes)
            w.write(c);
        EXPECT_EQ(w.count(), codes.size());
    }
    EXPECT_EQ(read_code_file(path), codes);
    std::filesystem::remove(path);
    EXPECT_THROW(read_code_file(path), std::runtime_error);
}
