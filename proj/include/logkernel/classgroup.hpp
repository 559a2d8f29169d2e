#pragma once

#include "logkernel/quadfield.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace logkernel {

// Binary quadratic form a X^2 + b XY + c Y^2 of discriminant b^2 - 4ac.
struct QForm {
    Int a, b, c;

    Int disc() const { return b * b - 4 * a * c; }
    bool operator==(const QForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QForm& o) const
    {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
    std::string str() const { return "(" + a.str() + "," + b.str() + "," + c.str() + ")"; }
};

// --- definite reduction (D < 0, a > 0) ---

inline QForm reduce_definite(QForm f)
{
    while (true) {
        if (f.b > f.a || f.b <= -f.a) {
            // normalize b into (-a, a]
            Int b = f.a - mod_floor(f.a - f.b, 2 * f.a);
            f.c = f.c + ((b - f.b) / 2) * ((b + f.b) / 2) / f.a;
            f.b = b;
        }
        if (f.a > f.c) {
            f = QForm{f.c, -f.b, f.a};
            continue;
        }
        break;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
}

// --- indefinite reduction and the rho cycle operator (D > 0) ---

inline bool is_reduced_indefinite(const QForm& f, const Int& sqrtD)
{
    Int aa = f.a < 0 ? -f.a : f.a;
    // |sqrt(D) - 2|a|| < b < sqrt(D), exact since D is not a square
    return f.b > 0 && f.b <= sqrtD && f.b + 2 * aa > sqrtD && 2 * aa - f.b <= sqrtD;
}

inline QForm rho_indefinite(const QForm& f, const Int& D, const Int& sqrtD)
{
    Int cc = f.c < 0 ? -f.c : f.c;
    Int r;
    if (cc > sqrtD) {
        // r = -b mod 2|c| in (-|c|, |c|]
        r = cc - mod_floor(cc + f.b, 2 * cc);
    } else {
        // r = -b mod 2|c| in (sqrt(D) - 2|c|, sqrt(D))
        Int lo = sqrtD + 1 - 2 * cc;
        r = lo + mod_floor(-f.b - lo, 2 * cc);
    }
    return QForm{f.c, r, (r * r - D) / (4 * f.c)};
}

// full rho-cycle of the class of f (f gets reduced first)
inline std::vector<QForm> form_cycle(QForm f, const Int& D, const Int& sqrtD)
{
    int guard = 0;
    while (!is_reduced_indefinite(f, sqrtD)) {
        f = rho_indefinite(f, D, sqrtD);
        if (++guard > 10000) throw internal_error("form_cycle: reduction did not terminate");
    }
    std::vector<QForm> cycle{f};
    QForm g = rho_indefinite(f, D, sqrtD);
    while (!(g == f)) {
        cycle.push_back(g);
        g = rho_indefinite(g, D, sqrtD);
        if (cycle.size() > 100000) throw internal_error("form_cycle: runaway cycle");
    }
    return cycle;
}

// --- form <-> ideal ---

inline QuadIdeal ideal_of_form(const QuadField& K, const QForm& f)
{
    if (f.a <= 0) throw invalid_input("ideal_of_form: need a > 0");
    Int sigma = K.sigma();
    return QuadIdeal(K, f.a, mod_floor(-(f.b + sigma) / 2, f.a), 1);
}

inline QForm form_of_ideal(const QuadIdeal& I)
{
    const QuadField& K = I.field();
    QuadIdeal P = I.primitive_part();
    Int sigma = K.sigma();
    Int b = -(2 * P.r() + sigma);
    return QForm{P.n(), b, (b * b - K.disc()) / (4 * P.n())};
}

/*
 * Narrow class group of a quadratic field from reduced binary forms of
 * discriminant D: reduced forms for D < 0, rho-cycles of reduced forms for
 * D > 0.  Composition goes through the two-element ideal lattice
 * representation; classes are indices into the list of canonical
 * representatives.
 */
class ClassGroupData {
public:
    explicit ClassGroupData(const QuadField& K, const Int& disc_bound = Int(10000000))
        : K_(K), sqrtD_(0)
    {
        if (K.rational()) {
            h_ = 1;
            identity_ = 0;
            reps_.push_back(QForm{1, 0, 0});
            elementary_divisors_ = {};
            return;
        }
        Int D = K.disc();
        if ((D < 0 ? -D : D) > disc_bound)
            throw resource_limit("class_group: |D| beyond configured bound");
        if (D < 0)
            build_definite(D);
        else
            build_indefinite(D);
        compute_structure();
    }

    const QuadField& field() const { return K_; }
    Int class_number() const { return h_; }
    int identity() const { return identity_; }
    int size() const { return int(reps_.size()); }
    const QForm& representative(int i) const { return reps_[i]; }

    // invariant factors d_1 | d_2 | ... (empty for the trivial group)
    const std::vector<Int>& elementary_divisors() const { return elementary_divisors_; }

    int index_of_form(QForm f) const
    {
        if (K_.rational()) return 0;
        if (K_.disc() < 0) {
            f = reduce_definite(f);
            auto it = class_of_.find(f);
            if (it == class_of_.end()) throw internal_error("index_of_form: unknown reduced form");
            return it->second;
        }
        Int D = K_.disc();
        QForm g = f;
        int guard = 0;
        while (!is_reduced_indefinite(g, sqrtD_)) {
            g = rho_indefinite(g, D, sqrtD_);
            if (++guard > 10000) throw internal_error("index_of_form: reduction stuck");
        }
        auto it = class_of_.find(g);
        if (it == class_of_.end()) throw internal_error("index_of_form: unknown cycle member");
        return it->second;
    }

    int index_of_ideal(const QuadIdeal& I) const
    {
        if (K_.rational()) return 0;
        return index_of_form(form_of_ideal(I));
    }

    int compose(int i, int j) const
    {
        if (K_.rational()) return 0;
        QuadIdeal a = ideal_of_form(K_, reps_[i]);
        QuadIdeal b = ideal_of_form(K_, reps_[j]);
        return index_of_ideal(a.mul(b));
    }

    int inverse(int i) const
    {
        if (K_.rational()) return 0;
        QForm f = reps_[i];
        return index_of_form(QForm{f.a, -f.b, f.c});
    }

    int power(int i, Int e) const
    {
        if (e < 0) return power(inverse(i), -e);
        int acc = identity_;
        int base = i;
        while (e > 0) {
            if ((e & 1) != 0) acc = compose(acc, base);
            base = compose(base, base);
            e >>= 1;
        }
        return acc;
    }

    Int order_of(int i) const
    {
        int x = i;
        Int k = 1;
        while (x != identity_) {
            x = compose(x, i);
            ++k;
            if (k > h_) throw internal_error("order_of: exceeded group order");
        }
        return k;
    }

    // ell-Sylow subgroup with an explicit basis and a full dlog table
    struct Sylow {
        long long ell = 3;
        std::vector<int> basis;          // class indices
        std::vector<int> basis_exponents; // ord(basis[i]) = ell^e_i, e_1 >= e_2 >= ...
        std::map<int, std::vector<Int>> dlog; // class index -> coordinates

        bool trivial() const { return basis.empty(); }
        const std::vector<Int>& coords(int cls) const
        {
            auto it = dlog.find(cls);
            if (it == dlog.end()) throw invalid_input("Sylow::coords: class not in Sylow");
            return it->second;
        }
    };

    Sylow sylow(long long ell, long long order_cap = 6561) const
    {
        Sylow s;
        s.ell = ell;
        int e = 0;
        Int hh = h_;
        while (hh % ell == 0) {
            hh /= ell;
            ++e;
        }
        Int cofactor = hh; // prime-to-ell part
        std::set<int> elements;
        for (int i = 0; i < size(); ++i) elements.insert(power(i, cofactor));
        if (Int(elements.size()) > order_cap)
            throw resource_limit("sylow: ell-Sylow beyond configured cap");

        std::map<int, std::vector<Int>> table; // element -> coords so far
        table[identity_] = {};
        auto quotient_order = [&](int x) {
            int k = 0;
            int y = x;
            while (table.find(y) == table.end()) {
                y = power(y, ell);
                ++k;
            }
            return k;
        };
        while (int(table.size()) < int(elements.size())) {
            // element of maximal order in the current quotient
            int best = -1, best_k = -1;
            for (int x : elements)
                if (int k = quotient_order(x); k > best_k) {
                    best_k = k;
                    best = x;
                }
            // adjust so <basis, g> is a direct sum: g = x * prod b_i^{-t_i/ell^k}
            Int pk = pow_int(ell, best_k);
            int xk = power(best, pk);
            std::vector<Int> t = table[xk];
            int g = best;
            for (size_t i = 0; i < s.basis.size(); ++i) {
                if (mod_floor(t[i], pk) != 0)
                    throw internal_error("sylow: basis adjustment not divisible");
                g = compose(g, power(s.basis[i], -(t[i] / pk)));
            }
            s.basis.push_back(g);
            s.basis_exponents.push_back(best_k);
            // extend the coordinate table
            std::map<int, std::vector<Int>> bigger;
            for (auto& [el, co] : table)
                for (Int j = 0; j < pk; ++j) {
                    std::vector<Int> cc = co;
                    cc.push_back(j);
                    bigger[compose(el, power(g, j))] = std::move(cc);
                }
            table = std::move(bigger);
        }
        // pad earlier coordinates (added before later basis elements)
        for (auto& [el, co] : table)
            co.resize(s.basis.size(), 0);
        s.dlog = std::move(table);
        return s;
    }

private:
    void build_definite(const Int& D)
    {
        for (Int a = 1; 3 * a * a <= -D; ++a) {
            for (Int b = -a + 1; b <= a; ++b) {
                if (mod_floor(b - D, 2) != 0) continue;
                Int num = b * b - D;
                if (num % (4 * a) != 0) continue;
                Int c = num / (4 * a);
                if (c < a) continue;
                if (a == c && b < 0) continue;
                QForm f{a, b, c};
                if (gcd_int(gcd_int(a, b < 0 ? -b : b), c) != 1)
                    throw internal_error("imprimitive form at fundamental discriminant");
                class_of_[f] = int(reps_.size());
                reps_.push_back(f);
            }
        }
        h_ = Int(reps_.size());
        identity_ = index_of_form(principal_form());
    }

    void build_indefinite(const Int& D)
    {
        sqrtD_ = boost::multiprecision::sqrt(D);
        std::set<QForm> seen;
        std::vector<QForm> all;
        for (Int b = 1; b <= sqrtD_; ++b) {
            if (mod_floor(b - D, 2) != 0) continue;
            Int M = (D - b * b) / 4; // a*c = -M, M > 0
            for (Int u = 1; u * u <= M; ++u) {
                if (M % u != 0) continue;
                for (Int aa : {Int(u), Int(M / u)}) {
                    // reduced window depends on |a| only
                    if (!(b + 2 * aa > sqrtD_ && 2 * aa - b <= sqrtD_)) continue;
                    for (int sgn = 0; sgn < 2; ++sgn) {
                        Int a = sgn ? -aa : aa;
                        QForm f{a, b, -M / a};
                        if (seen.count(f)) continue;
                        seen.insert(f);
                        all.push_back(f);
                    }
                }
            }
        }
        std::set<QForm> assigned;
        for (auto& f : all) {
            if (assigned.count(f)) continue;
            auto cycle = form_cycle(f, D, sqrtD_);
            QForm canon{0, 0, 0};
            bool have = false;
            for (auto& g : cycle) {
                assigned.insert(g);
                if (g.a > 0 && (!have || g < canon)) {
                    canon = g;
                    have = true;
                }
            }
            if (!have) throw internal_error("cycle without positive leading coefficient");
            int idx = int(reps_.size());
            reps_.push_back(canon);
            for (auto& g : cycle) class_of_[g] = idx;
        }
        h_ = Int(reps_.size());
        identity_ = index_of_form(principal_form());
    }

    QForm principal_form() const
    {
        Int D = K_.disc();
        Int b0 = mod_floor(D, 2);
        if (D > 0) {
            // largest b <= sqrt(D) with b = D mod 2
            b0 = sqrtD_ - mod_floor(sqrtD_ - D, 2);
        }
        return QForm{1, b0, (b0 * b0 - D) / 4};
    }

    void compute_structure()
    {
        // invariant factors from order statistics, prime by prime
        std::map<Int, std::vector<int>> ppart; // p -> exponent list (desc)
        for (auto& [p, e] : factorize(h_)) {
            Int cof = h_ / pow_int(p, e);
            std::set<int> syl;
            for (int i = 0; i < size(); ++i) syl.insert(power(i, cof));
            std::vector<long long> count_leq; // N_j = #{x : x^{p^j} = 1}
            count_leq.push_back(1);
            for (int j = 1;; ++j) {
                Int pj = pow_int(p, j);
                long long n = 0;
                for (int x : syl)
                    if (power(x, pj) == identity_) ++n;
                count_leq.push_back(n);
                if (n == (long long)syl.size()) break;
            }
            std::vector<int> exps;
            for (size_t j = 1; j < count_leq.size(); ++j) {
                // m_j = number of cyclic factors with exponent >= j
                long long mj = 0;
                Int ratio = Int(count_leq[j]) / Int(count_leq[j - 1]);
                Int r = ratio;
                while (r > 1) {
                    r /= p;
                    ++mj;
                }
                long long mj1 = 0;
                if (j + 1 < count_leq.size()) {
                    Int ratio2 = Int(count_leq[j + 1]) / Int(count_leq[j]);
                    while (ratio2 > 1) {
                        ratio2 /= p;
                        ++mj1;
                    }
                }
                for (long long t = 0; t < mj - mj1; ++t) exps.push_back(int(j));
            }
            std::sort(exps.rbegin(), exps.rend());
            ppart[p] = exps;
        }
        size_t rank = 0;
        for (auto& [p, exps] : ppart) rank = std::max(rank, exps.size());
        std::vector<Int> divisors(rank, 1);
        for (auto& [p, exps] : ppart)
            for (size_t i = 0; i < exps.size(); ++i) divisors[i] *= pow_int(p, exps[i]);
        std::sort(divisors.begin(), divisors.end());
        elementary_divisors_ = std::move(divisors);
    }

    QuadField K_;
    Int sqrtD_;
    Int h_ = 1;
    int identity_ = 0;
    std::vector<QForm> reps_;
    std::map<QForm, int> class_of_;
    std::vector<Int> elementary_divisors_;
};

inline ClassGroupData class_group(const QuadField& K, const Int& disc_bound = Int(10000000))
{
    return ClassGroupData(K, disc_bound);
}

} // namespace logkernel
