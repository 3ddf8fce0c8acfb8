#pragma once

#include "core_group.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tiecodes {

inline constexpr int kMaxTableArity = 16;

/// A Boolean function B_n -> B_1 as an explicit truth table.
/// Bit k of the table is f(x) for the x whose packed BoolVec value is k.
class BoolFunc {
public:
    BoolFunc() = default;

    explicit BoolFunc(int n) : n_(n)
    {
        if (n < 0 || n > kMaxTableArity)
            throw dimension_error("BoolFunc: arity " + std::to_string(n) + " outside [0, 16]");
        words_.assign(((std::size_t{1} << n) + 63) / 64, 0);
    }

    template <typename Pred>
    static BoolFunc from_predicate(int n, Pred&& pred)
    {
        BoolFunc f(n);
        for (std::uint64_t x = 0; x < f.table_size(); ++x)
            if (pred(BoolVec(x, n)))
                f.set(x, true);
        return f;
    }

    static BoolFunc constant(int n, bool value)
    {
        return from_predicate(n, [&](const BoolVec&) { return value; });
    }
    /// x_i (1-based).
    static BoolFunc dictator(int n, int i)
    {
        return from_predicate(n, [&](const BoolVec& x) { return x[i]; });
    }
    static BoolFunc majority(int n)
    {
        return from_predicate(n, [&](const BoolVec& x) { return 2 * x.weight() > n; });
    }
    static BoolFunc parity(int n)
    {
        return from_predicate(n, [&](const BoolVec& x) { return x.weight() % 2 == 1; });
    }

    [[nodiscard]] int arity() const { return n_; }
    [[nodiscard]] std::uint64_t table_size() const { return std::uint64_t{1} << n_; }

    [[nodiscard]] bool get(std::uint64_t index) const { return (words_[index >> 6] >> (index & 63)) & 1u; }
    [[nodiscard]] bool operator()(const BoolVec& x) const { return get(x.bits); }

    void set(std::uint64_t index, bool v)
    {
        std::uint64_t m = std::uint64_t{1} << (index & 63);
        if (v)
            words_[index >> 6] |= m;
        else
            words_[index >> 6] &= ~m;
    }

    [[nodiscard]] std::uint64_t count_ones() const
    {
        std::uint64_t c = 0;
        for (auto w : words_)
            c += std::popcount(w);
        return c;
    }

    /// Lexicographic order of the bit sequence f(0), f(1), ...
    [[nodiscard]] friend bool lex_less(const BoolFunc& a, const BoolFunc& b)
    {
        for (std::size_t i = 0; i < a.words_.size(); ++i) {
            std::uint64_t d = a.words_[i] ^ b.words_[i];
            if (d != 0) {
                int k = std::countr_zero(d);
                return ((a.words_[i] >> k) & 1u) == 0;
            }
        }
        return false;
    }

    [[nodiscard]] const std::vector<std::uint64_t>& words() const { return words_; }

    friend bool operator==(const BoolFunc&, const BoolFunc&) = default;

private:
    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Restriction of a function to the half cube B_n^1 = {x | x_1 = 1}; index k stands for input 2^(n-1) + k.
struct HalfCubeFunc {
    int n = 0;
    std::vector<bool> table;

    static HalfCubeFunc restrict(const BoolFunc& f)
    {
        if (f.arity() < 1)
            throw dimension_error("HalfCubeFunc: arity must be >= 1");
        HalfCubeFunc h{f.arity(), std::vector<bool>(f.table_size() / 2)};
        for (std::uint64_t k = 0; k < h.table.size(); ++k)
            h.table[k] = f.get(h.table.size() + k);
        return h;
    }

    friend bool operator==(const HalfCubeFunc&, const HalfCubeFunc&) = default;
};

/// f^g(x) = f(x^{g^-1}).
inline BoolFunc act_fn(const GroupElement& g, const BoolFunc& f)
{
    require_same_arity(g.size(), f.arity(), "act_fn");
    auto ginv = inverse(g);
    BoolFunc out(f.arity());
    for (std::uint64_t x = 0; x < f.table_size(); ++x)
        if (f(act_bool(ginv, BoolVec(x, f.arity()))))
            out.set(x, true);
    return out;
}

inline bool is_self_dual(const BoolFunc& f)
{
    std::uint64_t last = f.table_size() - 1;
    for (std::uint64_t x = 0; x <= last / 2; ++x)
        if (f.get(x) == f.get(last - x))
            return false;
    return true;
}

inline bool is_monotone(const BoolFunc& f)
{
    // Checking single-bit raises suffices.
    for (std::uint64_t x = 0; x < f.table_size(); ++x) {
        if (!f.get(x))
            continue;
        for (int b = 0; b < f.arity(); ++b)
            if (!((x >> b) & 1u) && !f.get(x | (std::uint64_t{1} << b)))
                return false;
    }
    return true;
}

/// Prefix-sum dominance: x_1 + ... + x_k <= y_1 + ... + y_k for every k.
/// Equivalently, every top segment {m..n} of the sets x^# and y^# satisfies |A cap [m,n]| <= |B cap [m,n]|.
inline bool dominance_leq(const BoolVec& x, const BoolVec& y)
{
    require_same_arity(x.n, y.n, "dominance_leq");
    int sx = 0, sy = 0;
    for (int k = 1; k <= x.n; ++k) {
        sx += x[k];
        sy += y[k];
        if (sx > sy)
            return false;
    }
    return true;
}

/// Upper covers of x in the dominance order: move one 1 a single step left, or set x_n.
template <typename Fn>
void for_each_dominance_cover(const BoolVec& x, Fn&& fn)
{
    for (int k = 1; k < x.n; ++k)
        if (!x[k] && x[k + 1]) {
            BoolVec y = x;
            y.set(k, true);
            y.set(k + 1, false);
            fn(y);
        }
    if (x.n > 0 && !x[x.n]) {
        BoolVec y = x;
        y.set(x.n, true);
        fn(y);
    }
}

/// f(x) <= f(y) whenever x precedes y in the dominance order; checked on covering pairs.
inline bool is_regular(const BoolFunc& f)
{
    bool ok = true;
    for (std::uint64_t v = 0; v < f.table_size() && ok; ++v) {
        if (!f.get(v))
            continue;
        for_each_dominance_cover(BoolVec(v, f.arity()), [&](const BoolVec& y) {
            if (!f(y))
                ok = false;
        });
    }
    return ok;
}

/// The unique self-dual function agreeing with h on B_n^1.
inline BoolFunc extend_self_dual(const HalfCubeFunc& h)
{
    BoolFunc f(h.n);
    std::uint64_t half = f.table_size() / 2;
    if (h.table.size() != half)
        throw dimension_error("extend_self_dual: half table has wrong length");
    std::uint64_t last = f.table_size() - 1;
    for (std::uint64_t k = 0; k < half; ++k) {
        f.set(half + k, h.table[k]);
        f.set(last - (half + k), !h.table[k]);
    }
    return f;
}

namespace detail {

/// Minimum over the S_n- (or T_n-) orbit, abandoning a candidate at its first bit above the best.
inline BoolFunc orbit_minimum(const BoolFunc& f, bool with_negations)
{
    int n = f.arity();
    std::uint64_t size = f.table_size();
    BoolFunc best = f;
    std::vector<int> images(n);
    std::iota(images.begin(), images.end(), 0);
    std::vector<std::uint64_t> src_bit(n);
    std::uint64_t flips = with_negations ? size : 1;
    do {
        // f^g(x) = f(x^{g^-1}) with (x^{g^-1})_i = x_{sigma^-1(i)} + nu_i.
        // Coordinate c of x (bit n-c) lands in coordinate sigma(c) of the argument.
        for (int c = 1; c <= n; ++c)
            src_bit[c - 1] = std::uint64_t{1} << (n - (images[c - 1] + 1));
        for (std::uint64_t nu = 0; nu < flips; ++nu) {
            bool smaller = false;
            BoolFunc candidate(n);
            std::uint64_t x = 0;
            for (; x < size; ++x) {
                std::uint64_t arg = nu;
                for (int c = 1; c <= n; ++c)
                    if ((x >> (n - c)) & 1u)
                        arg ^= src_bit[c - 1];
                bool bit = f.get(arg);
                if (!smaller) {
                    bool cur = best.get(x);
                    if (bit && !cur)
                        break;
                    if (!bit && cur)
                        smaller = true;
                }
                if (bit)
                    candidate.set(x, true);
            }
            if (smaller && x == size)
                best = std::move(candidate);
        }
    } while (std::next_permutation(images.begin(), images.end()));
    return best;
}

} // namespace detail

/// Lexicographically minimal table in the S_n-orbit of f.
inline BoolFunc canonical_perm(const BoolFunc& f) { return detail::orbit_minimum(f, false); }

/// Lexicographically minimal table in the T_n-orbit of f.
inline BoolFunc canonical_tn(const BoolFunc& f) { return detail::orbit_minimum(f, true); }

/// Lowercase hex of the table bits, input index 0 first; short tables are padded with trailing zeros.
inline std::string to_hex(const BoolFunc& f)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::uint64_t size = f.table_size();
    std::uint64_t nibbles = (size + 3) / 4;
    std::string out;
    out.reserve(nibbles);
    for (std::uint64_t d = 0; d < nibbles; ++d) {
        int v = 0;
        for (int b = 0; b < 4; ++b) {
            std::uint64_t idx = 4 * d + b;
            v = (v << 1) | (idx < size && f.get(idx) ? 1 : 0);
        }
        out.push_back(digits[v]);
    }
    return out;
}

inline BoolFunc from_hex(const std::string& hex, int n)
{
    BoolFunc f(n);
    std::uint64_t size = f.table_size();
    if (hex.size() != (size + 3) / 4)
        throw std::invalid_argument("truth table hex for n=" + std::to_string(n) + " must have " +
                                    std::to_string((size + 3) / 4) + " digits");
    for (std::uint64_t d = 0; d < hex.size(); ++d) {
        char c = hex[d];
        int v;
        if (c >= '0' && c <= '9')
            v = c - '0';
        else if (c >= 'a' && c <= 'f')
            v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            v = c - 'A' + 10;
        else
            throw std::invalid_argument("truth table hex: bad digit");
        for (int b = 0; b < 4; ++b) {
            bool bit = (v >> (3 - b)) & 1;
            std::uint64_t idx = 4 * d + b;
            if (idx < size)
                f.set(idx, bit);
            else if (bit)
                throw std::invalid_argument("truth table hex: nonzero padding");
        }
    }
    return f;
}

} // namespace tiecodes
