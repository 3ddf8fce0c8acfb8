#pragma once

#include "genetic.hpp"
#include "lp.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace tiecodes {

/// Walls H_J inside the positive orthant, one per J with n not in J and J nonempty.
/// Wall index k stands for the element mask k + 1, so walls are ordered by mask.
inline int wall_count(int n) { return n < 1 ? 0 : (1 << (n - 1)) - 1; }
inline ElementMask wall_mask(int index) { return static_cast<ElementMask>(index) + 1; }

/// Coefficients of sum_{i in J} a_i - sum_{i not in J} a_i.
inline RealVec wall_row(ElementMask j, int n)
{
    RealVec row(n);
    for (int i = 0; i < n; ++i)
        row[i] = ((j >> i) & 1u) ? 1 : -1;
    return row;
}

/// Sign of every normalized wall at a point: the self-dual 3V-threshold function restricted to the
/// inputs chi(J), n not in J.
struct StratumSignature {
    int n = 0;
    std::vector<std::int8_t> signs;

    [[nodiscard]] int zeros() const
    {
        return static_cast<int>(std::count(signs.begin(), signs.end(), std::int8_t{0}));
    }
    [[nodiscard]] bool is_chamber() const { return zeros() == 0; }

    [[nodiscard]] std::string to_string() const
    {
        std::string s;
        s.reserve(signs.size());
        for (auto v : signs)
            s.push_back(v > 0 ? '+' : (v < 0 ? '-' : '0'));
        return s;
    }

    static StratumSignature parse(const std::string& s, int n)
    {
        if (static_cast<int>(s.size()) != wall_count(n))
            throw std::invalid_argument("signature length does not match n");
        StratumSignature sig{n, std::vector<std::int8_t>(s.size())};
        for (std::size_t i = 0; i < s.size(); ++i) {
            switch (s[i]) {
            case '+': sig.signs[i] = 1; break;
            case '-': sig.signs[i] = -1; break;
            case '0': sig.signs[i] = 0; break;
            default: throw std::invalid_argument("signature: expected '+', '0' or '-'");
            }
        }
        return sig;
    }

    /// Two bits per wall, wall k in bits 2k..2k+1 of the byte stream: 00 zero, 01 plus, 10 minus.
    [[nodiscard]] std::string pack() const
    {
        std::string bytes((2 * signs.size() + 7) / 8, '\0');
        for (std::size_t k = 0; k < signs.size(); ++k) {
            unsigned code = signs[k] > 0 ? 1u : (signs[k] < 0 ? 2u : 0u);
            bytes[(2 * k) / 8] = static_cast<char>(static_cast<unsigned char>(bytes[(2 * k) / 8]) | (code << ((2 * k) % 8)));
        }
        return bytes;
    }

    static StratumSignature unpack(const std::string& bytes, int n)
    {
        StratumSignature sig{n, std::vector<std::int8_t>(wall_count(n))};
        if (bytes.size() != (2 * sig.signs.size() + 7) / 8)
            throw std::invalid_argument("packed signature has wrong length");
        for (std::size_t k = 0; k < sig.signs.size(); ++k) {
            unsigned code = (static_cast<unsigned char>(bytes[(2 * k) / 8]) >> ((2 * k) % 8)) & 3u;
            if (code == 3)
                throw std::invalid_argument("packed signature: invalid trit");
            sig.signs[k] = code == 1 ? 1 : (code == 2 ? -1 : 0);
        }
        return sig;
    }

    friend bool operator==(const StratumSignature&, const StratumSignature&) = default;
};

inline StratumSignature signature_of(const RealVec& a)
{
    int n = static_cast<int>(a.size());
    if (n < 1)
        throw std::invalid_argument("signature_of: empty length vector");
    for (const auto& v : a)
        if (v <= 0)
            throw std::invalid_argument("signature_of: entries must be positive");
    auto sums = detail::element_subset_sums(a);
    const Rational& total = sums.back();
    StratumSignature sig{n, std::vector<std::int8_t>(wall_count(n))};
    for (int k = 0; k < wall_count(n); ++k)
        sig.signs[k] = static_cast<std::int8_t>(cmp(2 * sums[wall_mask(k)], total));
    for (auto& s : sig.signs)
        s = s > 0 ? 1 : (s < 0 ? -1 : 0);
    return sig;
}

namespace detail {

/// For every coordinate permutation sigma, where each wall of a^sigma reads its sign from a:
/// wall J of (a_sigma(1), ..., a_sigma(n)) is wall sigma(J) of a, complemented (and negated) when
/// sigma(J) contains n.
struct WallPermutations {
    int n = 0;
    std::vector<Permutation> perms;
    std::vector<std::int16_t> source; // perms.size() * walls entries; negative means complemented

    explicit WallPermutations(int arity) : n(arity)
    {
        int walls = wall_count(n);
        ElementMask full = full_mask(n);
        for_each_permutation(n, [&](const Permutation& p) {
            perms.push_back(p);
            for (int k = 0; k < walls; ++k) {
                ElementMask image = 0;
                for (int i = 0; i < n; ++i)
                    if ((wall_mask(k) >> i) & 1u)
                        image |= ElementMask{1} << (p(i + 1) - 1);
                if ((image >> (n - 1)) & 1u)
                    source.push_back(static_cast<std::int16_t>(-static_cast<int>(full & ~image)));
                else
                    source.push_back(static_cast<std::int16_t>(image));
            }
        });
    }

    static const WallPermutations& get(int n)
    {
        static const std::vector<WallPermutations> tables = [] {
            std::vector<WallPermutations> t;
            for (int m = 0; m <= 8; ++m)
                t.emplace_back(m);
            return t;
        }();
        return tables.at(n);
    }

    [[nodiscard]] std::int8_t sign(const std::vector<std::int8_t>& signs, std::size_t p, int k) const
    {
        int src = source[p * signs.size() + k];
        return src > 0 ? signs[src - 1] : static_cast<std::int8_t>(-signs[-src - 1]);
    }
};

} // namespace detail

/// Index into WallPermutations::perms of the permutation giving the lexicographically least signature.
inline std::size_t canonical_permutation_index(const StratumSignature& sig)
{
    const auto& table = detail::WallPermutations::get(sig.n);
    std::size_t walls = sig.signs.size();
    std::size_t best = 0;
    for (std::size_t p = 1; p < table.perms.size(); ++p) {
        for (std::size_t k = 0; k < walls; ++k) {
            auto x = table.sign(sig.signs, p, static_cast<int>(k));
            auto y = table.sign(sig.signs, best, static_cast<int>(k));
            if (x != y) {
                if (x < y)
                    best = p;
                break;
            }
        }
    }
    return best;
}

/// Orbit representative under coordinate permutations: the lexicographically least signature,
/// reading '-' < '0' < '+'.
inline StratumSignature canonical_signature(const StratumSignature& sig)
{
    if (sig.n > 8)
        throw std::out_of_range("canonical_signature: n must be at most 8");
    const auto& table = detail::WallPermutations::get(sig.n);
    std::size_t p = canonical_permutation_index(sig);
    StratumSignature out{sig.n, std::vector<std::int8_t>(sig.signs.size())};
    for (std::size_t k = 0; k < sig.signs.size(); ++k)
        out.signs[k] = table.sign(sig.signs, p, static_cast<int>(k));
    return out;
}

inline StratumSignature canonical_signature_of(const RealVec& a) { return canonical_signature(signature_of(a)); }

struct StratumRecord {
    StratumSignature signature; // canonical
    RealVec witness;            // a point with this signature
};

/// Moves a stratum and its witness to the canonical representative of its orbit.
inline StratumRecord canonical_record(const StratumSignature& sig, const RealVec& point)
{
    const auto& table = detail::WallPermutations::get(sig.n);
    std::size_t p = canonical_permutation_index(sig);
    const Permutation& sigma = table.perms[p];
    StratumRecord rec{{sig.n, std::vector<std::int8_t>(sig.signs.size())}, RealVec(point.size())};
    for (std::size_t k = 0; k < sig.signs.size(); ++k)
        rec.signature.signs[k] = table.sign(sig.signs, p, static_cast<int>(k));
    for (int i = 1; i <= sig.n; ++i)
        rec.witness[i - 1] = point[sigma(i) - 1];
    return rec;
}

namespace detail {

inline LinearSystem stratum_base_system(int n)
{
    LinearSystem sys(n);
    for (int i = 0; i < n; ++i) {
        RealVec row(n);
        row[i] = 1;
        sys.add(std::move(row), Relation::at_least_one);
    }
    return sys;
}

inline RealVec scaled_row(ElementMask j, int n, int sign)
{
    RealVec row = wall_row(j, n);
    if (sign < 0)
        for (auto& v : row)
            v = -v;
    return row;
}

} // namespace detail

/// A positive point realizing the signature, or nullopt when no such point exists.
inline std::optional<RealVec> realize_signature(const StratumSignature& sig)
{
    LinearSystem sys = detail::stratum_base_system(sig.n);
    for (int k = 0; k < wall_count(sig.n); ++k) {
        if (sig.signs[k] == 0)
            sys.add(wall_row(wall_mask(k), sig.n), Relation::equal_zero);
        else
            sys.add(detail::scaled_row(wall_mask(k), sig.n, sig.signs[k]), Relation::at_least_one);
    }
    return lp_feasible(sys);
}

/// Strata in the boundary of `s` obtained by collapsing one more wall. Each result is the relative
/// interior of closure(s) cap H_W for a strict wall W, restricted to the open positive orthant.
inline std::vector<StratumRecord> collapse_faces(const StratumRecord& s)
{
    int n = s.signature.n;
    int walls = wall_count(n);
    const auto& signs = s.signature.signs;
    LinearSystem base = detail::stratum_base_system(n);
    std::vector<int> strict;
    for (int k = 0; k < walls; ++k) {
        if (signs[k] == 0)
            base.add(wall_row(wall_mask(k), n), Relation::equal_zero);
        else
            strict.push_back(k);
    }
    std::vector<StratumRecord> out;
    std::unordered_set<std::string> seen;
    for (int collapsed : strict) {
        LinearSystem sys = base;
        sys.add(wall_row(wall_mask(collapsed), n), Relation::equal_zero);
        for (int k : strict)
            if (k != collapsed)
                sys.add(detail::scaled_row(wall_mask(k), n, signs[k]), Relation::at_least_zero);
        auto first = lp_feasible(sys);
        if (!first)
            continue;
        RealVec point = *first;
        auto strict_at = [&](int k) { return dot(wall_row(wall_mask(k), n), point) != 0; };
        for (int k : strict) {
            if (k == collapsed || strict_at(k))
                continue;
            sys.add(detail::scaled_row(wall_mask(k), n, signs[k]), Relation::at_least_one);
            auto more = lp_feasible(sys);
            sys.rows.pop_back();
            if (!more)
                continue; // forced onto this wall as well
            for (int i = 0; i < n; ++i)
                point[i] += (*more)[i];
        }
        auto rec = canonical_record(signature_of(point), point);
        if (seen.insert(rec.signature.pack()).second)
            out.push_back(std::move(rec));
    }
    return out;
}

/// Breadth-first closure of the chamber set under wall collapses, de-duplicated by canonical
/// signature. Levels are merged in frontier order, so discovery order is deterministic.
class StrataExplorer {
public:
    explicit StrataExplorer(int n) : n_(n)
    {
        if (n < 1 || n > 8)
            throw std::out_of_range("strata: n must be in [1, 8]");
    }

    [[nodiscard]] int arity() const { return n_; }
    [[nodiscard]] const std::vector<StratumRecord>& strata() const { return strata_; }
    [[nodiscard]] std::size_t expanded() const { return expanded_; }

    /// One chamber per realizable virtual genetic code.
    void seed_chambers(unsigned workers = 0)
    {
        VirtualCodeEnumerator e(n_);
        auto tasks = e.split(10);
        std::vector<std::vector<RealVec>> found(tasks.size());
        parallel_for(tasks.size(), workers, [&](std::size_t i) {
            e.for_each(tasks[i], [&](const GeneticCode& code) {
                if (auto a = lp_feasible(realization_system(code)))
                    found[i].push_back(std::move(*a));
            });
        });
        for (auto& bucket : found)
            for (auto& a : bucket)
                insert(canonical_record(signature_of(a), a));
    }

    /// Expands until no new strata appear. `on_level` runs after each merged level.
    void run(unsigned workers = 0, const std::function<void(const StrataExplorer&)>& on_level = {})
    {
        while (expanded_ < strata_.size()) {
            std::size_t begin = expanded_, end = strata_.size();
            std::vector<std::vector<StratumRecord>> faces(end - begin);
            parallel_for(end - begin, workers, [&](std::size_t i) { faces[i] = collapse_faces(strata_[begin + i]); });
            for (auto& list : faces)
                for (auto& rec : list)
                    insert(std::move(rec));
            expanded_ = end;
            if (on_level)
                on_level(*this);
        }
    }

    [[nodiscard]] std::uint64_t chamber_count() const
    {
        return static_cast<std::uint64_t>(std::count_if(strata_.begin(), strata_.end(),
                                                        [](const StratumRecord& r) { return r.signature.is_chamber(); }));
    }

    /// Magic "STR1", n (1 byte), stratum count (u64 LE), expanded prefix length (u64 LE), then the
    /// canonical signatures in discovery order as packed trit arrays.
    void save_checkpoint(const std::string& path) const
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        out.write("STR1", 4);
        out.put(static_cast<char>(n_));
        detail::put_u64(out, strata_.size());
        detail::put_u64(out, expanded_);
        for (const auto& r : strata_) {
            auto bytes = r.signature.pack();
            out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        }
        if (!out)
            throw std::runtime_error("failed writing '" + path + "'");
    }

    static StrataExplorer load_checkpoint(const std::string& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("cannot open '" + path + "'");
        char magic[4];
        in.read(magic, 4);
        if (!in || std::string(magic, 4) != "STR1")
            throw std::runtime_error("'" + path + "' is not a STR1 checkpoint");
        int n = in.get();
        StrataExplorer ex(n);
        std::uint64_t count = detail::get_u64(in);
        std::uint64_t expanded = detail::get_u64(in);
        if (expanded > count)
            throw std::runtime_error("corrupt checkpoint: expanded prefix exceeds count");
        std::size_t width = (2 * static_cast<std::size_t>(wall_count(n)) + 7) / 8;
        std::string bytes(width, '\0');
        for (std::uint64_t i = 0; i < count; ++i) {
            in.read(bytes.data(), static_cast<std::streamsize>(width));
            if (!in)
                throw std::runtime_error("truncated checkpoint");
            auto sig = StratumSignature::unpack(bytes, n);
            auto a = realize_signature(sig);
            if (!a)
                throw std::runtime_error("checkpoint holds an unrealizable signature");
            ex.insert({sig, std::move(*a)});
        }
        ex.expanded_ = expanded;
        return ex;
    }

private:
    void insert(StratumRecord rec)
    {
        if (visited_.insert(rec.signature.pack()).second)
            strata_.push_back(std::move(rec));
    }

    int n_;
    std::vector<StratumRecord> strata_;
    std::unordered_set<std::string> visited_;
    std::size_t expanded_ = 0;
};

/// k(n): strata meeting the open positive orthant, up to coordinate permutations.
inline std::uint64_t count_strata(int n, unsigned workers = 0)
{
    StrataExplorer ex(n);
    ex.seed_chambers(workers);
    ex.run(workers);
    return ex.strata().size();
}

/// tk(n) = k(n) + tk(n-1) - c(n-1) with tk(1) = 1 and c(1) = 0. The difference tk(n-1) - c(n-1)
/// counts the non-chamber strata of R^(n-1), which embed as strata with a zero coordinate.
inline std::uint64_t total_strata(int n, const std::function<std::uint64_t(int)>& k,
                                  const std::function<std::uint64_t(int)>& c)
{
    if (n < 1 || n > 8)
        throw std::out_of_range("total_strata: n must be in [1, 8]");
    std::uint64_t tk = 1;
    for (int m = 2; m <= n; ++m)
        tk = k(m) + tk - c(m - 1);
    return tk;
}

inline std::uint64_t total_strata(int n, unsigned workers = 0)
{
    return total_strata(
        n, [&](int m) { return count_strata(m, workers); },
        [&](int m) { return census(m, CensusMode::chambers, {workers}); });
}

} // namespace tiecodes
