#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tiecodes {

using Rational = mpq_class;

/// A point of R^n with exact entries. Houses length vectors and weight vectors.
using RealVec = std::vector<Rational>;

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto bad = [&] { return std::invalid_argument("malformed rational '" + s + "'"); };
    if (s.empty())
        throw bad();
    auto slash = s.find('/');
    auto digits_ok = [](std::string_view d, bool allow_sign) {
        if (allow_sign && !d.empty() && (d.front() == '-' || d.front() == '+'))
            d.remove_prefix(1);
        if (d.empty())
            return false;
        for (char c : d)
            if (c < '0' || c > '9')
                return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
        throw bad();
    if (num.front() == '+')
        num.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + s + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

/// Always "p/q" (q >= 1), never a decimal.
inline std::string to_fraction(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Compact form: "p" for integers, "p/q" otherwise.
inline std::string to_short_string(const Rational& r)
{
    if (r.get_den() == 1)
        return r.get_num().get_str();
    return to_fraction(r);
}

inline RealVec parse_real_vec(std::string_view list)
{
    RealVec out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        auto next = list.find(',', pos);
        if (next == std::string_view::npos)
            next = list.size();
        auto item = list.substr(pos, next - pos);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        out.push_back(parse_rational(item));
        pos = next + 1;
    }
    return out;
}

inline RealVec integer_vec(std::initializer_list<long> values)
{
    RealVec out;
    out.reserve(values.size());
    for (long v : values)
        out.emplace_back(v);
    return out;
}

inline Rational dot(const RealVec& a, const RealVec& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

} // namespace tiecodes
