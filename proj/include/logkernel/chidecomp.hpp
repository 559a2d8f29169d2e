#pragma once

#include "logkernel/padic.hpp"

#include <map>
#include <string>
#include <vector>

namespace logkernel {

/*
 * Semi-simple decomposition of (Z/ell^m)[Delta] for Delta abelian of order
 * prime to ell, given as a product of cyclic factors.  Characters take
 * values in the roots of unity of order dividing ell-1 inside Z_ell, so the
 * idempotent formulas are exact at every precision.
 *
 * Instantiated frames: C2 (quadratic-over-base pattern) and V4 with
 * generators tau (complex conjugation) and sigma (fixing Q(zeta_3)).
 */
struct GroupSpec {
    std::vector<int> factor_orders;
    std::vector<std::string> generator_names;
    std::vector<int> omega_exponents; // the cyclotomic character of the frame

    int num_factors() const { return int(factor_orders.size()); }
    int order() const
    {
        int d = 1;
        for (int n : factor_orders) d *= n;
        return d;
    }

    // element <-> flat index, mixed radix over the factors
    std::vector<int> element(int idx) const
    {
        std::vector<int> t(factor_orders.size());
        for (size_t j = 0; j < factor_orders.size(); ++j) {
            t[j] = idx % factor_orders[j];
            idx /= factor_orders[j];
        }
        return t;
    }
    int index(const std::vector<int>& t) const
    {
        int idx = 0;
        for (size_t j = factor_orders.size(); j-- > 0;)
            idx = idx * factor_orders[j] + mod_floor(t[j], factor_orders[j]).convert_to<int>();
        return idx;
    }
    int compose(int a, int b) const
    {
        auto ta = element(a), tb = element(b);
        for (size_t j = 0; j < ta.size(); ++j) ta[j] = (ta[j] + tb[j]) % factor_orders[j];
        return index(ta);
    }
    int inverse(int a) const
    {
        auto t = element(a);
        for (size_t j = 0; j < t.size(); ++j) t[j] = (factor_orders[j] - t[j]) % factor_orders[j];
        return index(t);
    }

    static GroupSpec c2()
    {
        return GroupSpec{{2}, {"tau"}, {1}};
    }
    static GroupSpec v4()
    {
        // tau: zeta_3 -> zeta_3^{-1}, fixes sqrt(d); sigma fixes Q(zeta_3)
        return GroupSpec{{2, 2}, {"tau", "sigma"}, {1, 0}};
    }
};

struct CharacterId {
    std::vector<int> exponents; // chi(g_j) = zeta_{n_j}^{e_j}
    bool is_unit = false;
    bool is_cyclotomic = false;

    bool operator==(const CharacterId& o) const { return exponents == o.exponents; }
    bool operator<(const CharacterId& o) const { return exponents < o.exponents; }
};

inline CharacterId make_character(const GroupSpec& g, std::vector<int> exps)
{
    for (size_t j = 0; j < exps.size(); ++j)
        exps[j] = ((exps[j] % g.factor_orders[j]) + g.factor_orders[j]) % g.factor_orders[j];
    CharacterId c{std::move(exps)};
    c.is_unit = true;
    for (int e : c.exponents) c.is_unit &= e == 0;
    c.is_cyclotomic = c.exponents == g.omega_exponents;
    return c;
}

inline std::vector<CharacterId> all_characters(const GroupSpec& g)
{
    std::vector<CharacterId> out;
    for (int idx = 0; idx < g.order(); ++idx) out.push_back(make_character(g, g.element(idx)));
    return out;
}

// chi(element) as an exact root of unity mod ell^m.
inline PadicInt character_value(const GroupSpec& g, const CharacterId& chi, int elem_idx,
                                long long ell, int m)
{
    for (int n : g.factor_orders)
        if ((ell - 1) % n != 0)
            throw unsupported("character_value: factor order does not divide ell-1");
    // canonical primitive root of unity: Teichmuller lift of the smallest
    // primitive root mod ell
    Int gen = 2;
    while (true) {
        bool primitive = gen % ell != 0;
        for (auto& [p, e] : factorize(Int(ell - 1)))
            primitive &= pow_mod(gen, Int((ell - 1) / p.convert_to<long long>()), ell) != 1;
        if (primitive) break;
        ++gen;
    }
    Int zeta = teichmuller(gen, ell, m).value();
    Int mod = pow_int(ell, m);
    auto t = g.element(elem_idx);
    Int v = 1;
    for (size_t j = 0; j < t.size(); ++j) {
        long long k = (long long)(ell - 1) / g.factor_orders[j] * chi.exponents[j] * t[j];
        v = v * pow_mod(zeta, Int(k), mod) % mod;
    }
    return PadicInt(ell, v, m);
}

// e_phi = (1/d) sum_tau phi(tau^{-1}) tau, coefficients mod ell^m.
struct IdempotentTable {
    GroupSpec group;
    long long ell = 3;
    int prec = 0;
    std::vector<CharacterId> characters;
    std::vector<std::vector<Int>> coefficients; // [character][element]

    const std::vector<Int>& of(const CharacterId& chi) const
    {
        for (size_t i = 0; i < characters.size(); ++i)
            if (characters[i] == chi) return coefficients[i];
        throw invalid_input("IdempotentTable: unknown character");
    }
};

inline IdempotentTable idempotents(const GroupSpec& g, long long ell, int m)
{
    int d = g.order();
    if (d % ell == 0) throw invalid_input("idempotents: ell divides |Delta|");
    IdempotentTable t;
    t.group = g;
    t.ell = ell;
    t.prec = m;
    t.characters = all_characters(g);
    Int mod = pow_int(ell, m);
    Int dinv = inv_mod(d, mod);
    for (auto& chi : t.characters) {
        std::vector<Int> coeff(d);
        for (int tau = 0; tau < d; ++tau)
            coeff[tau] =
                mod_floor(dinv * character_value(g, chi, g.inverse(tau), ell, m).value(), mod);
        t.coefficients.push_back(std::move(coeff));
    }
    return t;
}

// group-algebra product in (Z/ell^m)[Delta]
inline std::vector<Int> algebra_product(const GroupSpec& g, const std::vector<Int>& a,
                                        const std::vector<Int>& b, const Int& mod)
{
    std::vector<Int> c(g.order(), 0);
    for (int x = 0; x < g.order(); ++x)
        for (int y = 0; y < g.order(); ++y)
            c[g.compose(x, y)] = mod_floor(c[g.compose(x, y)] + a[x] * b[y], mod);
    return c;
}

// The mirror involution phi -> omega phi^{-1}.
inline CharacterId mirror(const GroupSpec& g, const CharacterId& chi)
{
    std::vector<int> e(chi.exponents.size());
    for (size_t j = 0; j < e.size(); ++j) e[j] = g.omega_exponents[j] - chi.exponents[j];
    return make_character(g, std::move(e));
}

enum class FieldRole { k, kstar };

struct ComponentDispatch {
    CharacterId component; // e_{phi omega-bar^i} in the V4 frame
    FieldRole source;      // which logarithmic class group carries it
};

// Twist bookkeeping for quotients of wild kernels at ell = 3: the
// phi*omega-bar^i component of the V4 frame sits over k for i even and over
// the mirror field k* for i odd (and conversely when asking about k*).
// Only the parity of i matters.
inline ComponentDispatch component_dispatch(long long i, FieldRole role)
{
    GroupSpec v4 = GroupSpec::v4();
    bool odd = mod_floor(Int(i), 2) == 1;
    CharacterId phi = make_character(v4, {0, 1});       // fixes k
    CharacterId phi_star = make_character(v4, {1, 1});  // fixes k*
    ComponentDispatch out;
    if (role == FieldRole::k)
        out = {odd ? phi_star : phi, odd ? FieldRole::kstar : FieldRole::k};
    else
        out = {odd ? phi : phi_star, odd ? FieldRole::k : FieldRole::kstar};
    return out;
}

} // namespace logkernel
