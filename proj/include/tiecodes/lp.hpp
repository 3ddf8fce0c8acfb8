#pragma once

#include "rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace tiecodes {

enum class Relation {
    equal_zero,   // c.a = 0
    at_least_one, // c.a >= 1, the normalized form of a strict inequality on a cone
    at_least_zero // c.a >= 0
};

struct Constraint {
    RealVec coeffs;
    Relation relation;
};

/// Homogeneous constraints over free variables a_1..a_n.
struct LinearSystem {
    int num_vars = 0;
    std::vector<Constraint> rows;

    explicit LinearSystem(int n = 0) : num_vars(n) {}

    void add(RealVec coeffs, Relation rel)
    {
        if (static_cast<int>(coeffs.size()) != num_vars)
            throw std::invalid_argument("LinearSystem: row width mismatch");
        rows.push_back({std::move(coeffs), rel});
    }
};

inline bool satisfies(const LinearSystem& sys, const RealVec& a)
{
    if (static_cast<int>(a.size()) != sys.num_vars)
        return false;
    for (const auto& row : sys.rows) {
        Rational v = dot(row.coeffs, a);
        switch (row.relation) {
        case Relation::equal_zero:
            if (v != 0)
                return false;
            break;
        case Relation::at_least_one:
            if (v < 1)
                return false;
            break;
        case Relation::at_least_zero:
            if (v < 0)
                return false;
            break;
        }
    }
    return true;
}

namespace detail {

/// Bounded-variable primal simplex for feasibility (Dutertre & de Moura style).
/// Basic variables are kept as linear forms over the nonbasic ones; Bland's smallest-index rule
/// for both the leaving and the entering variable guarantees termination.
class FeasibilityTableau {
public:
    explicit FeasibilityTableau(const LinearSystem& sys)
        : n_(sys.num_vars), m_(static_cast<int>(sys.rows.size()))
    {
        int total = n_ + m_;
        lower_.resize(total);
        upper_.resize(total);
        has_lower_.assign(total, false);
        has_upper_.assign(total, false);
        value_.assign(total, Rational(0));
        for (int r = 0; r < m_; ++r) {
            int v = n_ + r;
            switch (sys.rows[r].relation) {
            case Relation::equal_zero:
                set_lower(v, 0);
                set_upper(v, 0);
                break;
            case Relation::at_least_one:
                set_lower(v, 1);
                break;
            case Relation::at_least_zero:
                set_lower(v, 0);
                break;
            }
        }
        nonbasic_.resize(n_);
        for (int j = 0; j < n_; ++j)
            nonbasic_[j] = j;
        basic_.resize(m_);
        rows_.resize(m_);
        for (int r = 0; r < m_; ++r) {
            basic_[r] = n_ + r;
            rows_[r] = sys.rows[r].coeffs;
        }
    }

    std::optional<RealVec> solve()
    {
        for (;;) {
            int row = -1;
            bool below = false;
            int best_var = -1;
            for (int r = 0; r < m_; ++r) {
                int v = basic_[r];
                if (best_var != -1 && v > best_var)
                    continue;
                if (has_lower_[v] && value_[v] < lower_[v]) {
                    row = r, below = true, best_var = v;
                } else if (has_upper_[v] && value_[v] > upper_[v]) {
                    row = r, below = false, best_var = v;
                }
            }
            if (row == -1)
                break;

            int col = -1;
            int col_var = -1;
            for (int j = 0; j < n_; ++j) {
                const Rational& a = rows_[row][j];
                int sgn = sgn_of(a);
                if (sgn == 0)
                    continue;
                int x = nonbasic_[j];
                bool can_increase = !has_upper_[x] || value_[x] < upper_[x];
                bool can_decrease = !has_lower_[x] || value_[x] > lower_[x];
                bool ok = below ? ((sgn > 0 && can_increase) || (sgn < 0 && can_decrease))
                                : ((sgn < 0 && can_increase) || (sgn > 0 && can_decrease));
                if (ok && (col_var == -1 || x < col_var)) {
                    col = j;
                    col_var = x;
                }
            }
            if (col == -1)
                return std::nullopt;
            pivot_and_update(row, col, below ? lower_[best_var] : upper_[best_var]);
        }
        RealVec witness(n_);
        for (int j = 0; j < n_; ++j)
            witness[j] = value_[j];
        return witness;
    }

private:
    static int sgn_of(const Rational& a) { return sgn(a); }

    void set_lower(int v, long x)
    {
        lower_[v] = x;
        has_lower_[v] = true;
    }
    void set_upper(int v, long x)
    {
        upper_[v] = x;
        has_upper_[v] = true;
    }

    void pivot_and_update(int row, int col, const Rational& target)
    {
        int leaving = basic_[row];
        int entering = nonbasic_[col];
        Rational theta = (target - value_[leaving]) / rows_[row][col];
        value_[leaving] = target;
        value_[entering] += theta;
        for (int r = 0; r < m_; ++r)
            if (r != row && rows_[r][col] != 0)
                value_[basic_[r]] += rows_[r][col] * theta;

        // Solve row for the entering variable.
        Rational inv = 1 / rows_[row][col];
        RealVec& pr = rows_[row];
        for (int j = 0; j < n_; ++j)
            pr[j] = j == col ? inv : Rational(-pr[j] * inv);
        for (int r = 0; r < m_; ++r) {
            if (r == row)
                continue;
            Rational factor = rows_[r][col];
            if (factor == 0)
                continue;
            RealVec& rr = rows_[r];
            for (int j = 0; j < n_; ++j) {
                if (j == col)
                    rr[j] = factor * pr[j];
                else if (pr[j] != 0)
                    rr[j] += factor * pr[j];
            }
        }
        basic_[row] = entering;
        nonbasic_[col] = leaving;
    }

    int n_;
    int m_;
    std::vector<Rational> lower_, upper_, value_;
    std::vector<bool> has_lower_, has_upper_;
    std::vector<int> basic_, nonbasic_;
    std::vector<RealVec> rows_;
};

} // namespace detail

/// Exact feasibility of a homogeneous system. Returns a witness satisfying every row exactly.
inline std::optional<RealVec> lp_feasible(const LinearSystem& sys)
{
    for (const auto& row : sys.rows)
        if (static_cast<int>(row.coeffs.size()) != sys.num_vars)
            throw std::invalid_argument("lp_feasible: row width mismatch");
    auto witness = detail::FeasibilityTableau(sys).solve();
#ifdef TIECODES_CHECK_WITNESSES
    if (witness && !satisfies(sys, *witness))
        throw std::logic_error("lp_feasible: witness fails re-substitution");
#endif
    return witness;
}

/// Scales a witness of a homogeneous system by the lcm of its denominators.
inline RealVec clear_denominators(const RealVec& a)
{
    mpz_class l = 1;
    for (const auto& v : a)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    RealVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] * Rational(l);
    return out;
}

} // namespace tiecodes
