#pragma once

#include "logkernel/abelian.hpp"
#include "logkernel/sunit.hpp"

#include <map>
#include <optional>
#include <vector>

namespace logkernel {

// classical (e, f) and logarithmic (e~, f~) local invariants at one place
struct LogLocalData {
    PlaceId place;
    int e = 1, f = 1;
    int e_tilde = 1, f_tilde = 1;
};

namespace detail {

// true iff the class of d in Q_2^x / squares lies in {2, 5, 10}, i.e. the
// local quadratic Q_2(sqrt d) sits inside the Z^-cyclotomic extension
inline bool two_adic_class_is_cyclotomic(const Int& d)
{
    int v = d % 2 == 0 ? valuation(d, 2) : 0;
    Int u = d / pow_int(2, v);
    Int u8 = mod_floor(u, 8);
    if (v % 2 == 0) return u8 == 5; // class 5 (1 would be split, not here)
    return u8 == 1 || u8 == 5;      // classes 2 and 10
}

} // namespace detail

/*
 * Local degree table over q.  Gal(Q^_q^c / Q_q) = Z^ x Z_q: the unramified
 * quadratic is always locally cyclotomic, the odd-q ramified quadratic
 * never is, and at q = 2 the three cyclotomic classes are {2, 5, 10}.
 */
inline std::vector<LogLocalData> log_inertia(const QuadField& K, const Int& q, long long ell)
{
    if (ell < 3 || ell % 2 == 0) throw invalid_input("log_inertia: ell must be odd");
    std::vector<LogLocalData> out;
    auto places = split_prime(K, q);
    for (auto& p : places) {
        LogLocalData loc;
        loc.place = p;
        if (K.rational() || p.type == SplitType::split) {
            out.push_back(loc);
            continue;
        }
        if (p.type == SplitType::inert) {
            loc.f = 2;
            loc.f_tilde = 2; // unramified = inside the Z^-part
            out.push_back(loc);
            continue;
        }
        loc.e = 2;
        if (q == 2 && detail::two_adic_class_is_cyclotomic(K.d())) {
            loc.e_tilde = 1;
            loc.f_tilde = 2;
        } else {
            loc.e_tilde = 2; // a ramified quadratic is cyclotomic only at q=2
        }
        out.push_back(loc);
    }
    return out;
}

inline LogLocalData log_local_data(const QuadField& K, const PlaceId& p, long long ell)
{
    for (auto& loc : log_inertia(K, p.q, ell))
        if (loc.place == p) return loc;
    throw invalid_input("log_local_data: unknown place");
}

// deg_F p = f~ * deg q, with deg q = Log_Iw(q) for q != ell and deg ell = ell.
inline PadicInt place_degree(const QuadField& K, const PlaceId& p, long long ell, int m)
{
    if (p.archimedean) throw invalid_input("place_degree: finite places only");
    LogLocalData loc = log_local_data(K, p, ell);
    if (p.q == ell) return PadicInt(ell, Int(loc.f_tilde) * ell, m);
    return iwasawa_log(p.q, ell, m) * Int(loc.f_tilde);
}

// Log_Iw of a PadicInt unit (strip the Teichmuller part, log the rest).
inline PadicInt unit_iwasawa_log(const PadicInt& u)
{
    if (!u.is_unit()) throw invalid_input("unit_iwasawa_log: argument must be a unit");
    long long ell = u.ell();
    int M = u.prec();
    Int mod = pow_int(ell, M);
    Int omega = teichmuller(u.value(), ell, M).value();
    Int principal = mod_floor(u.value() * inv_mod(omega, mod), mod);
    return PadicInt(ell, detail::unit_log_principal(principal, ell, M), M);
}

/*
 * v~_p(x).  Away from ell this is v_p(x) f/f~; over ell it is
 * -Log_Iw(N_{F_p/Q_ell}(x)) / deg_F p, computed with working precision
 * raised by v_ell(deg_F p) + guard digits.
 */
inline PadicInt log_valuation(const QuadField& K, const PlaceId& p, const QuadElement& x,
                              long long ell, int m)
{
    if (x.is_zero()) throw invalid_input("log_valuation: x = 0");
    LogLocalData loc = log_local_data(K, p, ell);
    if (p.q != ell) {
        int v = element_valuation(K, x, p.q, p.index);
        return PadicInt::from_rational(ell, Int(v) * loc.f, loc.f_tilde, m);
    }
    int guard = 2;
    int M = m + 1 + guard;
    auto norms = embed_at_ell(K, x, ell, M);
    const LocalNorm* mine = nullptr;
    for (auto& n : norms)
        if (n.place == p) mine = &n;
    if (!mine) throw invalid_input("log_valuation: place does not lie over ell");
    // Log_Iw kills the ell-power part of the norm entirely
    PadicInt lg = unit_iwasawa_log(mine->unit);
    return ((-lg).exact_divide(1) * PadicInt(ell, loc.f_tilde, M - 1).inverse()).reduced(m);
}

// finitely supported map place -> coefficient, with its degree
struct LogDivisor {
    std::map<PlaceId, PadicInt> support;
    PadicInt degree;
};

inline LogDivisor log_divisor(const QuadField& K, const QuadElement& x, long long ell, int m)
{
    if (x.is_zero()) throw invalid_input("log_divisor: x = 0");
    std::set<Int> qs;
    qs.insert(ell);
    QuadElement num(x.a, x.b, 1);
    auto [nn, nd] = num.norm(K);
    for (auto& [p, e] : factorize(nn)) qs.insert(p);
    if (x.den != 1)
        for (auto& [p, e] : factorize(x.den)) qs.insert(p);

    LogDivisor div;
    div.degree = PadicInt(ell, 0, m);
    for (auto& q : qs) {
        for (auto& p : split_prime(K, q)) {
            PadicInt v = log_valuation(K, p, x, ell, m);
            if (v.is_zero()) continue;
            div.support.emplace(p, v);
            div.degree = div.degree + v * place_degree(K, p, ell, m);
        }
    }
    return div;
}

inline bool is_log_unit(const QuadField& K, const QuadElement& x, long long ell, int m)
{
    return log_divisor(K, x, ell, m).support.empty();
}

// options for log_class_group; the rescale/skip hooks exist for the
// robustness properties (T-independence, degree-rescaling invariance)
struct LogClassOptions {
    int m_start = 8;
    int m_cap = 64;
    int guard = 2;
    int t_skip = 0;                  // skip the first valid T-candidates
    std::vector<Int> rescale_units;  // per-place unit multipliers for deg
};

struct LogClassResult {
    AbelianGroupStructure structure;
    std::vector<PlaceId> places;     // S u T
    SUnitSystem sunits;
    int pivot = -1;
};

namespace detail {

// exponent vector of the structure at one working precision
inline std::vector<int> structure_exponents(const QuadField& K, const std::vector<PlaceId>& places,
                                            const SUnitSystem& sys, long long ell, int m,
                                            const std::vector<Int>& rescale, int* pivot_out)
{
    size_t s = places.size();
    std::vector<PadicInt> deg_row;
    for (size_t j = 0; j < s; ++j) {
        PadicInt d = place_degree(K, places[j], ell, m);
        if (!rescale.empty()) d = d * PadicInt(ell, rescale[j], m);
        deg_row.push_back(d);
    }
    // valuation matrix, with the same optional rescaling dividing v~
    std::vector<std::vector<PadicInt>> vmat(s);
    for (size_t j = 0; j < s; ++j) {
        for (auto& g : sys.generators) {
            PadicInt v = log_valuation(K, places[j], g, ell, m);
            if (!rescale.empty()) v = v * PadicInt(ell, rescale[j], m).inverse();
            vmat[j].push_back(v);
        }
    }
    // product formula: every column pairs to zero against the degrees
    for (size_t g = 0; g < sys.generators.size(); ++g) {
        PadicInt acc(ell, 0, m);
        for (size_t j = 0; j < s; ++j) acc = acc + deg_row[j] * vmat[j][g];
        if (!acc.is_zero())
            throw internal_error("log_class_group: product formula violated");
    }

    if (s == 1) {
        *pivot_out = 0;
        return {};
    }
    KernelBasis kb = kernel_basis(deg_row);
    *pivot_out = kb.pivot;
    PMatrix rel(ell, m, int(s) - 1, int(sys.generators.size()));
    int row = 0;
    for (size_t j = 0; j < s; ++j) {
        if (int(j) == kb.pivot) continue;
        for (size_t g = 0; g < sys.generators.size(); ++g) rel.set(row, int(g), vmat[j][g]);
        ++row;
    }
    return cokernel_structure(rel).exponents;
}

} // namespace detail

/*
 * The ell-group of logarithmic classes of Q or a quadratic field.
 *
 * Support is reduced to S u T, S the places over ell and T the smallest
 * split primes whose classes generate the ell-Sylow of Cl' = Cl/<S>: any
 * other prime's class lies in <S u T> up to prime-to-ell order, so moving
 * it there changes a logarithmic divisor by a principal one.  The quotient
 * of the degree-zero sublattice by the S u T-unit image is then computed by
 * SNF at doubling precision until the exponents stabilize.
 */
inline LogClassResult log_class_group(const QuadField& K, long long ell, LogClassOptions opt = {})
{
    if (ell < 3 || ell % 2 == 0 || !is_prime(Int(ell)))
        throw invalid_input("log_class_group: ell must be an odd prime");
    if (opt.m_start < 4) throw invalid_input("log_class_group: need m >= 4");

    ClassGroupData cl(K);
    std::vector<PlaceId> places = split_prime(K, ell);

    // T-selection: extend by split primes until the classes span the Sylow
    auto syl = cl.sylow(ell);
    if (!syl.trivial()) {
        Int h = cl.class_number();
        int e = 0;
        Int hh = h;
        while (hh % ell == 0) {
            hh /= ell;
            ++e;
        }
        Int u = hh * inv_mod(hh, pow_int(ell, e)); // Sylow projector exponent
        auto spans = [&](const std::vector<PlaceId>& ps) {
            std::set<int> sub{cl.identity()};
            for (auto& p : ps) {
                int c = cl.power(cl.index_of_ideal(QuadIdeal::prime(K, p.q, p.index)), u);
                std::set<int> bigger = sub;
                for (int x : sub) {
                    int y = x;
                    do {
                        y = cl.compose(y, c);
                        bigger.insert(y);
                    } while (y != x);
                }
                sub = std::move(bigger);
            }
            return sub.size() == syl.dlog.size();
        };
        int skipped = 0;
        for (Int q = 2; !spans(places); ++q) {
            if (!is_prime(q) || q == ell) continue;
            if (q > 20000) throw resource_limit("log_class_group: T-selection exhausted");
            auto ps = split_prime(K, q);
            if (ps[0].type != SplitType::split) continue;
            std::vector<PlaceId> trial = places;
            for (auto& p : ps) trial.push_back(p);
            if (!spans(trial) && places.size() == split_prime(K, ell).size())
                ; // candidate alone may not finish the span; still usable
            if (skipped < opt.t_skip) {
                ++skipped;
                continue;
            }
            places = trial;
        }
    }

    SUnitSystem sys = s_unit_system(K, places, cl);

    LogClassResult res;
    res.places = places;
    res.sunits = sys;

    int m = opt.m_start;
    while (true) {
        int pivot = -1;
        auto exps = detail::structure_exponents(K, places, sys, ell, m, opt.rescale_units, &pivot);
        int pivot_lo = -1;
        auto exps_lo =
            detail::structure_exponents(K, places, sys, ell, m - opt.guard, opt.rescale_units, &pivot_lo);

        AbelianGroupStructure st;
        st.ell = ell;
        st.precision_used = m;
        std::sort(exps.begin(), exps.end());
        std::sort(exps_lo.begin(), exps_lo.end());
        for (int a : exps)
            if (a > 0) st.exponents.push_back(a);
        std::vector<int> lo;
        for (int a : exps_lo)
            if (a > 0) lo.push_back(a);
        st.finiteness_certificate = st.all_resolved();
        int max_exp = st.exponents.empty() ? 0 : st.exponents.back();
        st.stabilized = max_exp <= m - opt.guard && st.exponents == lo;
        res.structure = st;
        res.pivot = pivot;
        if (st.stabilized || m >= opt.m_cap) return res;
        m = std::min(2 * m, opt.m_cap);
    }
}

} // namespace logkernel
