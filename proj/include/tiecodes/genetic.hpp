#pragma once

#include "bool_fn.hpp"
#include "core_group.hpp"
#include "lp.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tiecodes {

/// Subsets of {1..n} as element masks: bit i-1 set iff i is a member.
/// For x in B_n^1 the packed BoolVec value of x is exactly the element mask of x^#.
using ElementMask = std::uint64_t;

inline ElementMask full_mask(int n) { return n == 0 ? 0 : (~ElementMask{0} >> (64 - n)); }

/// A <-> B: an injective non-decreasing phi: A -> B with phi(x) >= x exists.
/// Equivalent to |A cap [m, n]| <= |B cap [m, n]| for every m.
inline bool hook_leq(ElementMask a, ElementMask b)
{
    while (a != 0 || b != 0) {
        if (std::popcount(a) > std::popcount(b))
            return false;
        a >>= 1;
        b >>= 1;
    }
    return true;
}

inline bool hook_leq(const SubsetOfN& a, const SubsetOfN& b)
{
    require_same_arity(a.size(), b.size(), "hook_leq");
    return hook_leq(a.element_mask(), b.element_mask());
}

/// Upper covers in the hook order on all subsets of {1..n}: raise one element by one, or add 1.
template <typename Fn>
void for_each_hook_cover(ElementMask a, int n, Fn&& fn)
{
    for (int i = 1; i < n; ++i) {
        ElementMask bit = ElementMask{1} << (i - 1);
        if ((a & bit) && !(a & (bit << 1)))
            fn((a & ~bit) | (bit << 1));
    }
    if (n > 0 && !(a & 1u))
        fn(a | 1u);
}

inline std::vector<int> mask_members_desc(ElementMask m)
{
    std::vector<int> out;
    for (int i = 64; i >= 1; --i)
        if ((m >> (i - 1)) & 1u)
            out.push_back(i);
    return out;
}

/// A set of genes (subsets of {1..n} containing n), kept in descending mask order.
/// Descending mask order equals descending lexicographic order of the descending element lists.
struct GeneticCode {
    int n = 0;
    std::vector<ElementMask> genes;

    GeneticCode() = default;
    GeneticCode(int arity, std::vector<ElementMask> g) : n(arity), genes(std::move(g))
    {
        check_arity(arity);
        if (arity < 1 && !genes.empty())
            throw std::invalid_argument("GeneticCode: genes require n >= 1");
        std::sort(genes.begin(), genes.end(), std::greater<>());
        for (std::size_t i = 0; i < genes.size(); ++i) {
            if (!((genes[i] >> (arity - 1)) & 1u) || (genes[i] & ~full_mask(arity)))
                throw std::invalid_argument("GeneticCode: every gene must be a subset of {1..n} containing n");
            if (i > 0 && genes[i] == genes[i - 1])
                throw std::invalid_argument("GeneticCode: duplicate gene");
        }
    }

    [[nodiscard]] bool empty() const { return genes.empty(); }
    friend bool operator==(const GeneticCode&, const GeneticCode&) = default;
};

/// "6,3;6,2,1"; the empty code is "-".
inline std::string format_code(const GeneticCode& c)
{
    if (c.genes.empty())
        return "-";
    std::string out;
    for (std::size_t g = 0; g < c.genes.size(); ++g) {
        if (g > 0)
            out += ';';
        auto members = mask_members_desc(c.genes[g]);
        for (std::size_t k = 0; k < members.size(); ++k) {
            if (k > 0)
                out += ',';
            out += std::to_string(members[k]);
        }
    }
    return out;
}

/// Parses the text form. n defaults to the largest element mentioned; it is required for "-".
inline GeneticCode parse_code(const std::string& text, std::optional<int> n = std::nullopt)
{
    if (text == "-") {
        if (!n)
            throw std::invalid_argument("the empty code '-' needs an explicit n");
        return GeneticCode(*n, {});
    }
    std::vector<ElementMask> genes;
    int largest = 0;
    std::stringstream genes_in(text);
    std::string gene_text;
    while (std::getline(genes_in, gene_text, ';')) {
        ElementMask m = 0;
        std::stringstream members_in(gene_text);
        std::string item;
        while (std::getline(members_in, item, ',')) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(item, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad gene element '" + item + "'");
            }
            if (used != item.size() || v < 1 || v > kMaxArity)
                throw std::invalid_argument("bad gene element '" + item + "'");
            m |= ElementMask{1} << (v - 1);
            largest = std::max(largest, v);
        }
        if (m == 0)
            throw std::invalid_argument("empty gene in '" + text + "'");
        genes.push_back(m);
    }
    return GeneticCode(n.value_or(largest), std::move(genes));
}

/// The witness wall of a non-generic vector, named by its side containing n.
struct NonGeneric {
    ElementMask wall = 0;
};

struct non_generic_error : std::domain_error {
    ElementMask wall;
    int n;
    non_generic_error(ElementMask w, int arity)
        : std::domain_error("length vector lies on a wall"), wall(w), n(arity)
    {
    }
};

/// Shortness of every J subset of {1..n}, indexed by element mask.
struct ShortSetFamily {
    int n = 0;
    std::vector<bool> is_short;

    [[nodiscard]] bool contains(ElementMask j) const { return is_short[j]; }
};

namespace detail {

inline constexpr int kMaxFamilyArity = 24;

inline std::vector<Rational> element_subset_sums(const RealVec& a)
{
    int n = static_cast<int>(a.size());
    if (n > kMaxFamilyArity)
        throw dimension_error("short sets: arity too large");
    std::vector<Rational> sums(std::size_t{1} << n);
    for (std::size_t m = 1; m < sums.size(); ++m)
        sums[m] = sums[m & (m - 1)] + a[std::countr_zero(m)];
    return sums;
}

} // namespace detail

/// Classifies every J by comparing sum_{i in J} a_i with sum_{i not in J} a_i.
inline std::variant<ShortSetFamily, NonGeneric> short_family(const RealVec& a)
{
    int n = static_cast<int>(a.size());
    auto sums = detail::element_subset_sums(a);
    const Rational& total = sums.back();
    ShortSetFamily fam{n, std::vector<bool>(sums.size())};
    for (std::size_t m = 0; m < sums.size(); ++m) {
        int c = cmp(2 * sums[m], total);
        if (c == 0) {
            ElementMask side = n > 0 && ((m >> (n - 1)) & 1u) ? m : (full_mask(n) & ~ElementMask(m));
            return NonGeneric{side};
        }
        fam.is_short[m] = c < 0;
    }
    return fam;
}

/// The hook-maximal short sets containing n, for a generic sorted 0 <= a_1 <= ... <= a_n.
inline GeneticCode genetic_code_of(const RealVec& a)
{
    int n = static_cast<int>(a.size());
    if (n == 0)
        throw std::invalid_argument("genetic_code_of: empty length vector");
    for (int i = 0; i < n; ++i) {
        if (a[i] < 0)
            throw std::invalid_argument("genetic_code_of: entries must be nonnegative");
        if (i > 0 && a[i] < a[i - 1])
            throw std::invalid_argument("genetic_code_of: entries must be sorted non-decreasingly");
    }
    auto fam = short_family(a);
    if (auto* ng = std::get_if<NonGeneric>(&fam))
        throw non_generic_error(ng->wall, n);
    const auto& sh = std::get<ShortSetFamily>(fam);
    ElementMask top = ElementMask{1} << (n - 1);
    std::vector<ElementMask> genes;
    for (ElementMask m = top; m <= full_mask(n); ++m) {
        if (!sh.contains(m))
            continue;
        bool maximal = true;
        for_each_hook_cover(m, n, [&](ElementMask up) { maximal = maximal && !sh.contains(up); });
        if (maximal)
            genes.push_back(m);
        if (m == full_mask(n))
            break;
    }
    return GeneticCode(n, std::move(genes));
}

/// Condition (a): the genes form a hook antichain. Condition (b): no gene's complement hooks into any gene.
inline bool is_virtual_code(const GeneticCode& c)
{
    ElementMask all = full_mask(c.n);
    for (std::size_t i = 0; i < c.genes.size(); ++i)
        for (std::size_t j = 0; j < c.genes.size(); ++j) {
            if (i != j && hook_leq(c.genes[i], c.genes[j]))
                return false;
            if (hook_leq(all & ~c.genes[i], c.genes[j]))
                return false;
        }
    return true;
}

/// Shortness implied by a virtual code: J containing n is short iff it hooks into a gene;
/// otherwise J is short iff its complement is long.
inline ShortSetFamily implied_short_family(const GeneticCode& c)
{
    int n = c.n;
    ShortSetFamily fam{n, std::vector<bool>(std::size_t{1} << n)};
    ElementMask top = ElementMask{1} << (n - 1);
    for (ElementMask m = top; m <= full_mask(n); ++m) {
        bool s = false;
        for (auto g : c.genes)
            if (hook_leq(m, g)) {
                s = true;
                break;
            }
        fam.is_short[m] = s;
        fam.is_short[full_mask(n) & ~m] = !s;
        if (m == full_mask(n))
            break;
    }
    return fam;
}

enum class RealizeRows {
    covering,   // hook-maximal short sets only
    all_subsets // every short set (reference system)
};

/// Linear system over sorted length vectors inducing the short family of c:
/// a_1 >= 1, a_{i+1} - a_i >= 1 and sum over the complement minus sum over J >= 1 for short J.
inline LinearSystem realization_system(const GeneticCode& c, RealizeRows rows = RealizeRows::covering)
{
    int n = c.n;
    auto fam = implied_short_family(c);
    LinearSystem sys(n);
    if (n >= 1) {
        RealVec first(n);
        first[0] = 1;
        sys.add(std::move(first), Relation::at_least_one);
    }
    for (int i = 1; i < n; ++i) {
        RealVec step(n);
        step[i] = 1;
        step[i - 1] = -1;
        sys.add(std::move(step), Relation::at_least_one);
    }
    for (ElementMask m = 0; m <= full_mask(n); ++m) {
        if (fam.contains(m)) {
            bool keep = true;
            if (rows == RealizeRows::covering)
                for_each_hook_cover(m, n, [&](ElementMask up) { keep = keep && !fam.contains(up); });
            if (keep) {
                RealVec row(n);
                for (int i = 0; i < n; ++i)
                    row[i] = ((m >> i) & 1u) ? -1 : 1;
                sys.add(std::move(row), Relation::at_least_one);
            }
        }
        if (m == full_mask(n))
            break;
    }
    return sys;
}

/// A sorted, strictly increasing, positive length vector whose genetic code is c; nullopt if c is
/// not the code of any chamber.
inline std::optional<RealVec> realize_code(const GeneticCode& c, RealizeRows rows = RealizeRows::covering)
{
    if (!is_virtual_code(c))
        throw std::invalid_argument("realize_code: not a virtual genetic code");
    return lp_feasible(realization_system(c, rows));
}

/// The self-dual regular function whose code gamma(f) is {x | x^# is a gene}.
inline BoolFunc code_to_function(const GeneticCode& c)
{
    if (c.n < 1 || !is_virtual_code(c))
        throw std::invalid_argument("code_to_function: not a virtual genetic code");
    HalfCubeFunc h{c.n, std::vector<bool>(std::size_t{1} << (c.n - 1))};
    ElementMask top = ElementMask{1} << (c.n - 1);
    for (std::size_t k = 0; k < h.table.size(); ++k) {
        bool zero = false;
        for (auto g : c.genes)
            if (hook_leq(top + k, g)) {
                zero = true;
                break;
            }
        h.table[k] = !zero;
    }
    return extend_self_dual(h);
}

/// gamma(f)^#: the dominance-maximal zeros of f on B_n^1, as genes.
inline GeneticCode function_to_code(const BoolFunc& f)
{
    int n = f.arity();
    if (n < 1 || !is_self_dual(f) || !is_regular(f))
        throw std::invalid_argument("function_to_code: function must be self-dual and regular");
    std::vector<ElementMask> genes;
    std::uint64_t top = std::uint64_t{1} << (n - 1);
    for (std::uint64_t x = top; x < f.table_size(); ++x) {
        if (f.get(x))
            continue;
        bool maximal = true;
        for_each_dominance_cover(BoolVec(x, n), [&](const BoolVec& y) { maximal = maximal && f(y); });
        if (maximal)
            genes.push_back(x);
    }
    return GeneticCode(n, std::move(genes));
}

inline constexpr int kMaxEnumerationArity = 10;

/// Depth-first enumeration of virtual genetic codes of type n as self-dual regular zero sets.
///
/// Elements of B_n^1 are visited in increasing packed order, which is a linear extension of the
/// dominance order. Each element either joins the zero set Z (then every y with x-bar <= y is
/// forced to 1) or is set to 1 (then its whole up-set is forced to 1). Every partial assignment
/// extends to a valid one by setting the rest to 1, so the search has no dead ends.
class VirtualCodeEnumerator {
public:
    struct HalfSet {
        std::array<std::uint64_t, 8> w{};
        [[nodiscard]] bool test(int k) const { return (w[k >> 6] >> (k & 63)) & 1u; }
        void set(int k) { w[k >> 6] |= std::uint64_t{1} << (k & 63); }
        void merge(const HalfSet& o)
        {
            for (std::size_t i = 0; i < w.size(); ++i)
                w[i] |= o.w[i];
        }
    };

    /// A subtree of the search: decide elements from `next` onwards.
    struct Task {
        int next = 0;
        HalfSet zeros;
        HalfSet forced_one;
    };

    explicit VirtualCodeEnumerator(int n) : n_(n)
    {
        if (n < 1 || n > kMaxEnumerationArity)
            throw std::out_of_range("enumerate_virtual_codes: n must be in [1, 10]");
        size_ = 1 << (n - 1);
        top_ = ElementMask{1} << (n - 1);
        up_.resize(size_);
        conflict_.resize(size_);
        self_conflict_.resize(size_);
        covers_.resize(size_);
        ElementMask all = full_mask(n);
        for (int k = 0; k < size_; ++k) {
            ElementMask x = top_ + k;
            for (int j = 0; j < size_; ++j) {
                ElementMask y = top_ + j;
                if (hook_leq(x, y))
                    up_[k].set(j);
                if (hook_leq(all & ~x, y))
                    conflict_[k].set(j);
            }
            self_conflict_[k] = conflict_[k].test(k);
            for_each_dominance_cover(BoolVec(x, n), [&](const BoolVec& y) {
                covers_[k].push_back(static_cast<int>(y.bits - top_));
            });
        }
    }

    [[nodiscard]] int arity() const { return n_; }

    /// Splits the search into independent subtrees after `depth` binary decisions, in DFS order.
    [[nodiscard]] std::vector<Task> split(int depth) const
    {
        std::vector<Task> out;
        split_rec(Task{}, depth, out);
        return out;
    }

    /// Calls fn(code) for every code of the subtree, in DFS order.
    template <typename Fn>
    void for_each(const Task& task, Fn&& fn) const
    {
        walk(task.next, task.zeros, task.forced_one, [&](const HalfSet& zeros) { fn(code_from_zeros(zeros)); });
    }

    [[nodiscard]] std::uint64_t count(const Task& task) const
    {
        std::uint64_t c = 0;
        walk(task.next, task.zeros, task.forced_one, [&](const HalfSet&) { ++c; });
        return c;
    }

    [[nodiscard]] GeneticCode code_from_zeros(const HalfSet& zeros) const
    {
        std::vector<ElementMask> genes;
        for (int k = size_ - 1; k >= 0; --k) {
            if (!zeros.test(k))
                continue;
            bool maximal = true;
            for (int up : covers_[k])
                if (zeros.test(up)) {
                    maximal = false;
                    break;
                }
            if (maximal)
                genes.push_back(top_ + k);
        }
        return GeneticCode(n_, std::move(genes));
    }

private:
    [[nodiscard]] int next_free(int from, const HalfSet& forced) const
    {
        for (int k = from; k < size_; ++k) {
            std::uint64_t word = ~forced.w[k >> 6] >> (k & 63);
            if (word != 0) {
                int cand = k + std::countr_zero(word);
                return cand < size_ ? cand : size_;
            }
            k = (k | 63);
        }
        return size_;
    }

    template <typename Leaf>
    void walk(int from, const HalfSet& zeros, const HalfSet& forced, Leaf&& leaf) const
    {
        int k = next_free(from, forced);
        if (k >= size_) {
            leaf(zeros);
            return;
        }
        if (!self_conflict_[k]) {
            HalfSet z = zeros, f = forced;
            z.set(k);
            f.merge(conflict_[k]);
            walk(k + 1, z, f, leaf);
        }
        HalfSet f = forced;
        f.merge(up_[k]);
        walk(k + 1, zeros, f, leaf);
    }

    void split_rec(const Task& t, int depth, std::vector<Task>& out) const
    {
        int k = next_free(t.next, t.forced_one);
        if (depth == 0 || k >= size_) {
            out.push_back(t);
            return;
        }
        if (!self_conflict_[k]) {
            Task z = t;
            z.zeros.set(k);
            z.forced_one.merge(conflict_[k]);
            z.next = k + 1;
            split_rec(z, depth - 1, out);
        }
        Task o = t;
        o.forced_one.merge(up_[k]);
        o.next = k + 1;
        split_rec(o, depth - 1, out);
    }

    int n_;
    int size_ = 0;
    ElementMask top_ = 0;
    std::vector<HalfSet> up_;
    std::vector<HalfSet> conflict_;
    std::vector<bool> self_conflict_;
    std::vector<std::vector<int>> covers_;
};

/// Streams every virtual genetic code of type n, in the enumerator's DFS order.
template <typename Fn>
void enumerate_virtual_codes(int n, Fn&& fn)
{
    VirtualCodeEnumerator e(n);
    e.for_each(VirtualCodeEnumerator::Task{}, fn);
}

enum class CensusMode { virtual_codes, chambers };

struct CensusOptions {
    unsigned workers = 0; // 0 = all cores
    int split_depth = 12;
};

/// v(n) or c(n). Counting is a sum over independent subtrees, so it does not depend on scheduling.
inline std::uint64_t census(int n, CensusMode mode, CensusOptions opts = {})
{
    if (mode == CensusMode::virtual_codes && (n < 1 || n > kMaxEnumerationArity))
        throw std::out_of_range("census: virtual codes need 1 <= n <= 10");
    if (mode == CensusMode::chambers && (n < 1 || n > 9))
        throw std::out_of_range("census: chambers need 1 <= n <= 9");
    // The tabulated chamber count for n = 1 is 0; see total_strata for the matching base case.
    if (mode == CensusMode::chambers && n == 1)
        return 0;
    VirtualCodeEnumerator e(n);
    auto tasks = e.split(opts.split_depth);
    std::vector<std::uint64_t> counts(tasks.size());
    parallel_for(tasks.size(), opts.workers, [&](std::size_t i) {
        if (mode == CensusMode::virtual_codes) {
            counts[i] = e.count(tasks[i]);
            return;
        }
        std::uint64_t c = 0;
        e.for_each(tasks[i], [&](const GeneticCode& code) {
            if (lp_feasible(realization_system(code)))
                ++c;
        });
        counts[i] = c;
    });
    std::uint64_t total = 0;
    for (auto c : counts)
        total += c;
    return total;
}

// ---- VGC1 cache file -------------------------------------------------------------------------

namespace detail {

inline void put_u64(std::ostream& out, std::uint64_t v)
{
    for (int i = 0; i < 8; ++i)
        out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::uint64_t get_u64(std::istream& in)
{
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        int c = in.get();
        if (c == std::char_traits<char>::eof())
            throw std::runtime_error("unexpected end of file");
        v |= std::uint64_t(static_cast<unsigned char>(c)) << (8 * i);
    }
    return v;
}

} // namespace detail

/// Magic "VGC1", n (1 byte), code count (u64 LE), then per code: gene count (1 byte) and one u64 LE
/// element mask per gene.
class CodeFileWriter {
public:
    CodeFileWriter(const std::string& path, int n) : out_(path, std::ios::binary), n_(n)
    {
        if (!out_)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        out_.write("VGC1", 4);
        out_.put(static_cast<char>(n));
        count_pos_ = out_.tellp();
        detail::put_u64(out_, 0);
    }

    void write(const GeneticCode& c)
    {
        if (c.n != n_)
            throw dimension_error("CodeFileWriter: code arity mismatch");
        if (c.genes.size() > 255)
            throw std::length_error("CodeFileWriter: more than 255 genes");
        out_.put(static_cast<char>(c.genes.size()));
        for (auto g : c.genes)
            detail::put_u64(out_, g);
        ++count_;
    }

    void close()
    {
        if (!out_.is_open())
            return;
        out_.seekp(count_pos_);
        detail::put_u64(out_, count_);
        out_.close();
    }

    ~CodeFileWriter()
    {
        try {
            close();
        } catch (...) {
        }
    }

    [[nodiscard]] std::uint64_t count() const { return count_; }

private:
    std::ofstream out_;
    int n_;
    std::streampos count_pos_;
    std::uint64_t count_ = 0;
};

inline std::vector<GeneticCode> read_code_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != "VGC1")
        throw std::runtime_error("'" + path + "' is not a VGC1 file");
    int n = in.get();
    std::uint64_t count = detail::get_u64(in);
    std::vector<GeneticCode> codes;
    codes.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        int genes = in.get();
        if (genes == std::char_traits<char>::eof())
            throw std::runtime_error("truncated VGC1 file");
        std::vector<ElementMask> g(genes);
        for (auto& m : g)
            m = detail::get_u64(in);
        codes.emplace_back(n, std::move(g));
    }
    return codes;
}

} // namespace tiecodes
