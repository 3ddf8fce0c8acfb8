#pragma once

#include "rational.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tiecodes {

inline constexpr int kMaxArity = 62;

struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void check_arity(int n)
{
    if (n < 0 || n > kMaxArity)
        throw dimension_error("arity " + std::to_string(n) + " outside [0, 62]");
}

inline void require_same_arity(int a, int b, const char* what)
{
    if (a != b)
        throw dimension_error(std::string(what) + ": arity " + std::to_string(a) + " vs " +
                              std::to_string(b));
}

/// Boolean n-tuple packed into a word, x_1 in the most significant of the n bits.
/// The packed value is the truth-table index sum_j x_j 2^(n-j).
struct BoolVec {
    std::uint64_t bits = 0;
    int n = 0;

    BoolVec() = default;
    BoolVec(std::uint64_t packed, int arity) : bits(packed), n(arity)
    {
        check_arity(arity);
        if (arity < 64 && (packed >> arity) != 0)
            throw std::invalid_argument("BoolVec: bits beyond arity");
    }

    static BoolVec from_string(const std::string& s)
    {
        std::uint64_t v = 0;
        for (char c : s) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("BoolVec: expected 0/1 string");
            v = (v << 1) | std::uint64_t(c == '1');
        }
        return {v, static_cast<int>(s.size())};
    }

    /// 1-based coordinate access.
    [[nodiscard]] bool operator[](int i) const { return (bits >> (n - i)) & 1u; }

    void set(int i, bool v)
    {
        std::uint64_t m = std::uint64_t{1} << (n - i);
        bits = v ? (bits | m) : (bits & ~m);
    }

    [[nodiscard]] std::uint64_t mask() const { return n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n)); }
    [[nodiscard]] BoolVec complement() const { return {bits ^ mask(), n}; }
    [[nodiscard]] int weight() const { return std::popcount(bits); }

    [[nodiscard]] std::string to_string() const
    {
        std::string s;
        for (int i = 1; i <= n; ++i)
            s.push_back((*this)[i] ? '1' : '0');
        return s;
    }

    friend bool operator==(const BoolVec&, const BoolVec&) = default;
};

/// Element-of-the-negation-group nu in (Z_2)^n, stored with the BoolVec packing.
struct Negation {
    BoolVec bits;

    static Negation zero(int n) { return {BoolVec(0, n)}; }
    static Negation all(int n) { return {BoolVec(0, n).complement()}; }
    static Negation from_vector(const std::vector<int>& v)
    {
        BoolVec b(0, static_cast<int>(v.size()));
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] != 0 && v[i] != 1)
                throw std::invalid_argument("Negation: entries must be 0 or 1");
            b.set(static_cast<int>(i) + 1, v[i] == 1);
        }
        return {b};
    }

    [[nodiscard]] int size() const { return bits.n; }
    [[nodiscard]] bool operator[](int i) const { return bits[i]; }
    [[nodiscard]] std::vector<int> to_vector() const
    {
        std::vector<int> v(size());
        for (int i = 1; i <= size(); ++i)
            v[i - 1] = bits[i];
        return v;
    }

    friend bool operator==(const Negation&, const Negation&) = default;
};

/// sigma in S_n. Semantics are 1-based; storage is 0-based images.
class Permutation {
public:
    Permutation() = default;

    static Permutation identity(int n)
    {
        check_arity(n);
        Permutation p;
        p.image_.resize(n);
        std::iota(p.image_.begin(), p.image_.end(), 0);
        return p;
    }

    /// From sigma(1), ..., sigma(n).
    static Permutation from_one_based(const std::vector<int>& images)
    {
        check_arity(static_cast<int>(images.size()));
        Permutation p;
        p.image_.reserve(images.size());
        std::vector<bool> seen(images.size(), false);
        for (int v : images) {
            if (v < 1 || v > static_cast<int>(images.size()) || seen[v - 1])
                throw std::invalid_argument("Permutation: not a bijection of {1..n}");
            seen[v - 1] = true;
            p.image_.push_back(v - 1);
        }
        return p;
    }

    static Permutation from_zero_based(std::vector<int> images)
    {
        std::vector<int> one(images.size());
        for (std::size_t i = 0; i < images.size(); ++i)
            one[i] = images[i] + 1;
        return from_one_based(one);
    }

    /// Transposition of i and j (1-based).
    static Permutation transposition(int n, int i, int j)
    {
        auto p = identity(n);
        std::swap(p.image_[i - 1], p.image_[j - 1]);
        return p;
    }

    [[nodiscard]] int size() const { return static_cast<int>(image_.size()); }

    /// sigma(i), both 1-based.
    [[nodiscard]] int operator()(int i) const { return image_[i - 1] + 1; }

    [[nodiscard]] Permutation inverse() const
    {
        Permutation p;
        p.image_.resize(image_.size());
        for (std::size_t i = 0; i < image_.size(); ++i)
            p.image_[image_[i]] = static_cast<int>(i);
        return p;
    }

    /// (this o other)(i) = this(other(i)).
    [[nodiscard]] Permutation after(const Permutation& other) const
    {
        require_same_arity(size(), other.size(), "Permutation::after");
        Permutation p;
        p.image_.resize(image_.size());
        for (std::size_t i = 0; i < image_.size(); ++i)
            p.image_[i] = image_[other.image_[i]];
        return p;
    }

    [[nodiscard]] std::vector<int> to_one_based() const
    {
        std::vector<int> v(image_.size());
        for (std::size_t i = 0; i < image_.size(); ++i)
            v[i] = image_[i] + 1;
        return v;
    }

    [[nodiscard]] const std::vector<int>& zero_based() const { return image_; }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> image_;
};

/// Precomposition x^sigma = x o sigma on packed Boolean vectors: y_i = x_{sigma(i)}.
inline BoolVec permute_bits(const Permutation& sigma, const BoolVec& x)
{
    require_same_arity(sigma.size(), x.n, "permute_bits");
    BoolVec y(0, x.n);
    for (int i = 1; i <= x.n; ++i)
        if (x[sigma(i)])
            y.set(i, true);
    return y;
}

/// (nu, sigma) in T_n = A_n x| S_n.
struct GroupElement {
    Negation nu;
    Permutation sigma;

    GroupElement() = default;
    GroupElement(Negation v, Permutation s) : nu(std::move(v)), sigma(std::move(s))
    {
        require_same_arity(nu.size(), sigma.size(), "GroupElement");
    }

    static GroupElement identity(int n) { return {Negation::zero(n), Permutation::identity(n)}; }
    static GroupElement negation(Negation v)
    {
        int n = v.size();
        return {std::move(v), Permutation::identity(n)};
    }
    static GroupElement permutation(Permutation s)
    {
        int n = s.size();
        return {Negation::zero(n), std::move(s)};
    }

    [[nodiscard]] int size() const { return sigma.size(); }

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// (nu, sigma)(mu, tau) = (nu + mu^{sigma^-1}, sigma tau).
inline GroupElement compose(const GroupElement& g, const GroupElement& h)
{
    require_same_arity(g.size(), h.size(), "compose");
    auto sigma_inv = g.sigma.inverse();
    Negation shifted{permute_bits(sigma_inv, h.nu.bits)};
    Negation nu{BoolVec(g.nu.bits.bits ^ shifted.bits.bits, g.size())};
    return {nu, g.sigma.after(h.sigma)};
}

/// (nu, sigma)^-1 = (nu^sigma, sigma^-1).
inline GroupElement inverse(const GroupElement& g)
{
    return {Negation{permute_bits(g.sigma, g.nu.bits)}, g.sigma.inverse()};
}

/// (z^g)_i = (-1)^{nu_{sigma(i)}} z_{sigma(i)}.
inline RealVec act_real(const GroupElement& g, const RealVec& z)
{
    require_same_arity(g.size(), static_cast<int>(z.size()), "act_real");
    RealVec out(z.size());
    for (int i = 1; i <= g.size(); ++i) {
        int s = g.sigma(i);
        out[i - 1] = g.nu[s] ? Rational(-z[s - 1]) : z[s - 1];
    }
    return out;
}

/// (x^g)_i = x_{sigma(i)} + nu_{sigma(i)} (mod 2).
inline BoolVec act_bool(const GroupElement& g, const BoolVec& x)
{
    require_same_arity(g.size(), x.n, "act_bool");
    return permute_bits(g.sigma, BoolVec(x.bits ^ g.nu.bits.bits, x.n));
}

/// J subset of {1..n}, stored as its characteristic tuple chi(J).
struct SubsetOfN {
    BoolVec chi;

    static SubsetOfN from_members(int n, const std::vector<int>& members)
    {
        BoolVec b(0, n);
        for (int i : members) {
            if (i < 1 || i > n)
                throw std::invalid_argument("SubsetOfN: member out of range");
            b.set(i, true);
        }
        return {b};
    }

    /// Element mask: bit i-1 set iff i in J.
    static SubsetOfN from_element_mask(int n, std::uint64_t mask)
    {
        BoolVec b(0, n);
        for (int i = 1; i <= n; ++i)
            if ((mask >> (i - 1)) & 1u)
                b.set(i, true);
        return {b};
    }

    [[nodiscard]] int size() const { return chi.n; }
    [[nodiscard]] bool contains(int i) const { return chi[i]; }

    [[nodiscard]] std::uint64_t element_mask() const
    {
        std::uint64_t m = 0;
        for (int i = 1; i <= chi.n; ++i)
            if (chi[i])
                m |= std::uint64_t{1} << (i - 1);
        return m;
    }

    [[nodiscard]] std::vector<int> members() const
    {
        std::vector<int> out;
        for (int i = 1; i <= chi.n; ++i)
            if (chi[i])
                out.push_back(i);
        return out;
    }

    friend bool operator==(const SubsetOfN&, const SubsetOfN&) = default;
};

/// J^(nu,sigma) = sigma^-1(J symdiff chi^-1(nu)).
inline SubsetOfN act_subset(const GroupElement& g, const SubsetOfN& J)
{
    require_same_arity(g.size(), J.size(), "act_subset");
    std::uint64_t sym = J.chi.bits ^ g.nu.bits.bits;
    auto sigma_inv = g.sigma.inverse();
    BoolVec out(0, J.size());
    for (int k = 1; k <= J.size(); ++k)
        if ((sym >> (J.size() - k)) & 1u)
            out.set(sigma_inv(k), true);
    return {out};
}

/// Orbit representative of R^n / T_n: absolute values sorted non-decreasingly.
inline RealVec canonical_real(const RealVec& z)
{
    RealVec out(z.size());
    std::transform(z.begin(), z.end(), out.begin(), [](const Rational& v) { return Rational(abs(v)); });
    std::sort(out.begin(), out.end());
    return out;
}

/// A group element g with act_real(g, z) == canonical_real(z).
inline GroupElement canonicalizing_element(const RealVec& z)
{
    int n = static_cast<int>(z.size());
    check_arity(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return abs(z[a]) < abs(z[b]); });
    std::vector<int> nu(n);
    for (int k = 0; k < n; ++k)
        nu[k] = z[k] < 0 ? 1 : 0;
    return {Negation::from_vector(nu), Permutation::from_zero_based(order)};
}

/// Calls fn(sigma) for every permutation of {1..n} in lexicographic order of images.
template <typename Fn>
void for_each_permutation(int n, Fn&& fn)
{
    std::vector<int> images(n);
    std::iota(images.begin(), images.end(), 0);
    do {
        fn(Permutation::from_zero_based(images));
    } while (std::next_permutation(images.begin(), images.end()));
}

/// Calls fn(g) for each of the 2^n n! elements of T_n.
template <typename Fn>
void for_each_group_element(int n, Fn&& fn)
{
    for_each_permutation(n, [&](const Permutation& sigma) {
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
            fn(GroupElement(Negation{BoolVec(v, n)}, sigma));
    });
}

} // namespace tiecodes
