#pragma once

#include "logkernel/padic_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace logkernel {

/*
 * A finite abelian ell-group as a sorted list of elementary-divisor
 * exponents (group = sum of Z/ell^{a_i}), together with the precision the
 * exponents were resolved at and a stabilization certificate.
 *
 * An exponent >= precision_used means the corresponding summand was not
 * resolved (possibly a free summand); stabilized implies that never occurs.
 */
struct AbelianGroupStructure {
    long long ell = 3;
    std::vector<int> exponents; // nondecreasing, entries >= 1
    int precision_used = 0;
    bool stabilized = false;
    bool finiteness_certificate = false;

    bool trivial() const { return exponents.empty(); }
    int rank() const { return int(exponents.size()); }

    // All summands resolved below the working precision.
    bool all_resolved() const
    {
        for (int a : exponents)
            if (a >= precision_used) return false;
        return true;
    }

    // sum of exponents, i.e. log_ell of the order (requires all_resolved).
    long long log_order() const
    {
        if (!all_resolved()) throw precision_exhausted("log_order: unresolved summand");
        long long s = 0;
        for (int a : exponents) s += a;
        return s;
    }

    // Exponent-ell^r quotient: each Z/ell^a becomes Z/ell^{min(a,r)}.
    AbelianGroupStructure truncated(int r) const
    {
        AbelianGroupStructure q = *this;
        for (int& a : q.exponents) a = std::min(a, r);
        return q;
    }

    bool same_exponents(const AbelianGroupStructure& o) const
    {
        return exponents == o.exponents;
    }

    std::string to_string() const
    {
        if (exponents.empty()) return "1";
        std::ostringstream os;
        for (size_t i = 0; i < exponents.size(); ++i) {
            if (i) os << " x ";
            if (exponents[i] >= precision_used)
                os << "Z/" << ell << "^(>=" << precision_used << ")";
            else {
                os << "Z/" << ell;
                if (exponents[i] > 1) os << "^" << exponents[i];
            }
        }
        return os.str();
    }
};

// Structure of the cokernel Z_ell^rows / (column span of M), read off the
// SNF at the matrix precision.  Missing columns leave free summands, which
// surface as unresolved exponents.
inline AbelianGroupStructure cokernel_structure(const PMatrix& M)
{
    AbelianGroupStructure s;
    s.ell = M.ell();
    s.precision_used = M.prec();
    SnfResult snf = smith_normal_form(M);
    std::vector<int> exps = snf.exponents;
    for (int i = 0; i < M.rows() - std::min(M.rows(), M.cols()); ++i)
        exps.push_back(M.prec());
    std::sort(exps.begin(), exps.end());
    for (int a : exps)
        if (a > 0) s.exponents.push_back(a);
    s.finiteness_certificate = s.all_resolved();
    return s;
}

} // namespace logkernel
