#pragma once

#include "logkernel/classgroup.hpp"

#include <functional>
#include <optional>
#include <set>
#include <vector>

namespace logkernel {

namespace detail {

// sign of a + b sqrt(d), d > 0 nonsquare, (a, b) != (0, 0)
inline int surd_sign(const Int& a, const Int& b, const Int& d)
{
    if (b == 0) return a > 0 ? 1 : -1;
    if (a == 0) return b > 0 ? 1 : -1;
    if (a > 0 && b > 0) return 1;
    if (a < 0 && b < 0) return -1;
    Int lhs = a * a, rhs = b * b * d;
    if (b > 0) return rhs > lhs ? 1 : -1; // a < 0
    return lhs > rhs ? 1 : -1;            // a > 0, b < 0
}

inline bool greater_than_one(const QuadElement& x, const QuadField& K)
{
    // (a + b sqrt d)/den > 1, den > 0
    return surd_sign(x.a - x.den, x.b, K.d()) > 0;
}

// exact floor((P + sqrt(D))/Q), D > 0 nonsquare
inline Int surd_floor(const Int& P, const Int& D, const Int& Q, const Int& sqrtD)
{
    Int num = P + sqrtD;
    if (Q > 0) {
        if (num >= 0) return num / Q;
        return -((-num + Q - 1) / Q);
    }
    Int aq = -Q;
    Int fl;
    if (num >= 0)
        fl = num / aq;
    else
        fl = -((-num + aq - 1) / aq);
    return -(fl + 1); // (P + sqrt D)/Q is never an integer
}

/*
 * Continued fraction of (P0 + sqrt(D))/Q0 with Q0 | D - P0^2, tracking
 * convergents.  After step k the element xi_k = p_k - q_k (P0+sqrt(D))/Q0
 * satisfies |N(xi_k)| = Q_{k+1}/Q0.
 */
struct PqaScan {
    Int D, sqrtD, P0, Q0;
    Int P, Q;
    Int p_prev = 0, q_prev = 1, p_cur = 1, q_cur = 0; // p_{-2}/q_{-2}, p_{-1}/q_{-1}
    long long steps = 0;

    PqaScan(const Int& P0_, const Int& Q0_, const Int& D_)
        : D(D_), sqrtD(boost::multiprecision::sqrt(D_)), P0(P0_), Q0(Q0_), P(P0_), Q(Q0_)
    {
        if (Q0 == 0 || mod_floor(D - P0 * P0, Q0) != 0)
            throw invalid_input("PqaScan: Q0 must divide D - P0^2");
        if (sqrtD * sqrtD == D) throw invalid_input("PqaScan: D is a square");
    }

    // advance one step; afterwards p_cur/q_cur is the k-th convergent and
    // Q is Q_{k+1}
    void step()
    {
        Int a = surd_floor(P, D, Q, sqrtD);
        Int p_new = a * p_cur + p_prev;
        Int q_new = a * q_cur + q_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_new;
        q_cur = q_new;
        P = a * Q - P;
        Q = (D - P * P) / Q;
        ++steps;
    }
};

// value (x + y sqrt(D))/den as a QuadElement over sqrt(d)
inline QuadElement elem_from_sqrtD(const QuadField& K, const Int& x, const Int& y, const Int& den)
{
    if (K.disc() % 2 == 0) return QuadElement(x, 2 * y, den); // sqrt(D) = 2 sqrt(d)
    return QuadElement(x, y, den);
}

} // namespace detail

/*
 * Fundamental unit of a real quadratic field, epsilon > 1 minimal, from the
 * continued fraction of w = (sigma + sqrt(D))/2: the first convergent with
 * Q back at 2 yields a unit.
 */
inline QuadElement fundamental_unit(const QuadField& K, long long max_steps = 2000000)
{
    if (K.rational() || !K.real()) throw invalid_input("fundamental_unit: field must be real quadratic");
    Int D = K.disc();
    detail::PqaScan scan(K.sigma(), 2, D);
    while (true) {
        scan.step();
        if (scan.Q == 2 || scan.Q == -2) break;
        if (scan.steps > max_steps) throw resource_limit("fundamental_unit: period beyond budget");
    }
    // xi = p - q w
    QuadElement xi = detail::elem_from_sqrtD(K, 2 * scan.p_cur - scan.q_cur * Int(K.sigma()),
                                             -scan.q_cur, 2);
    auto [n, nd] = xi.norm(K);
    if (nd != 1 || (n != 1 && n != -1)) throw internal_error("fundamental_unit: norm is not a unit");
    // normalize among {xi, -xi, conj, -conj} to the one > 1
    for (QuadElement cand : {xi, QuadElement(-xi.a, -xi.b, xi.den), xi.conj(),
                             QuadElement(-xi.a, xi.b, xi.den)}) {
        if (detail::greater_than_one(cand, K)) return cand;
    }
    throw internal_error("fundamental_unit: no associate exceeds 1");
}

/*
 * Generator of an integral ideal, or nullopt when the ideal is not
 * principal (in the ordinary sense).  Imaginary fields enumerate the
 * finitely many lattice points of norm N(I); real fields scan the
 * continued-fraction cycle of the ideal's norm form.
 */
inline std::optional<QuadElement> principal_generator(const QuadIdeal& I,
                                                      long long max_steps = 2000000)
{
    const QuadField& K = I.field();
    Int D = K.disc();
    QuadIdeal P = I.primitive_part();
    Int content = I.content();
    Int n = P.n(), r = P.r();
    Int sigma = K.sigma();

    auto scale = [&](const QuadElement& g) {
        return QuadElement(g.a * content, g.b * content, g.den);
    };

    if (n == 1) return scale(QuadElement(1, 0));

    if (D < 0) {
        // N(u + v w) = (u + v sigma/2)^2 + |D| v^2 / 4 = n over integers
        // u = x n + y r, v = y
        for (Int v = 0; v * v * (-D) <= 4 * n; ++v) {
            Int rem = 4 * n + D * v * v; // (2u + v sigma)^2
            if (rem < 0) break;
            Int t = boost::multiprecision::sqrt(rem);
            if (t * t != rem) continue;
            for (Int tt : {Int(t), Int(-t)}) {
                // 2u = tt - v sigma
                if (mod_floor(tt - v * sigma, 2) != 0) continue;
                Int u = (tt - v * sigma) / 2;
                QuadElement g = QuadElement::from_w_coords(K, u, v);
                if (P.contains(g)) {
                    auto [nn, nd] = g.norm(K);
                    if (nn == n && nd == 1) return scale(g);
                }
                if (tt == 0) break;
            }
            if (v == 0) continue;
        }
        return std::nullopt;
    }

    // real: scan the continued fraction of (r + w)/n; the generator shows
    // up as a convergent when Q returns to +-2
    detail::PqaScan scan(2 * r + sigma, 2 * n, D);
    std::set<std::pair<Int, Int>> seen;
    while (true) {
        if (!seen.insert({scan.P, scan.Q}).second) return std::nullopt; // full cycle scanned
        scan.step();
        if (scan.Q == 2 || scan.Q == -2) {
            // g = n p - q (r + w), |N(g)| = n
            Int x = 2 * n * scan.p_cur - scan.q_cur * (2 * r + sigma);
            QuadElement g = detail::elem_from_sqrtD(K, x, -scan.q_cur, 2);
            auto [nn, nd] = g.norm(K);
            if (nd != 1 || (nn != n && nn != -n))
                throw internal_error("principal_generator: wrong witness norm");
            return scale(g);
        }
        if (scan.steps > max_steps)
            throw resource_limit("principal_generator: cycle beyond budget");
    }
}

namespace detail {

// Basis of { x in Z^s : M x = 0 in +(Z/m_i rows) } as columns, via integer
// column-HNF of [M | diag(m_i)] restricted to the x block.
inline std::vector<std::vector<Int>> congruence_kernel(std::vector<std::vector<Int>> M,
                                                       const std::vector<Int>& moduli)
{
    size_t rows = M.size();
    size_t s = rows == 0 ? 0 : 0;
    if (rows == 0) return {};
    s = M[0].size();
    size_t cols = s + rows;
    // work matrix A = [M | diag], transform U tracks column ops on Z^{cols}
    std::vector<std::vector<Int>> A(rows, std::vector<Int>(cols, 0));
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < s; ++j) A[i][j] = M[i][j];
        A[i][s + i] = moduli[i];
    }
    std::vector<std::vector<Int>> U(cols, std::vector<Int>(cols, 0));
    for (size_t j = 0; j < cols; ++j) U[j][j] = 1;

    auto colop = [&](size_t j, size_t k, const Int& t) { // col_j -= t * col_k
        for (size_t i = 0; i < rows; ++i) A[i][j] -= t * A[i][k];
        for (size_t i = 0; i < cols; ++i) U[i][j] -= t * U[i][k];
    };
    auto colswap = [&](size_t j, size_t k) {
        for (size_t i = 0; i < rows; ++i) std::swap(A[i][j], A[i][k]);
        for (size_t i = 0; i < cols; ++i) std::swap(U[i][j], U[i][k]);
    };

    size_t pivot_col = 0;
    for (size_t i = 0; i < rows && pivot_col < cols; ++i) {
        // eliminate row i across columns >= pivot_col by gcd chaining
        while (true) {
            size_t nz = cols;
            Int best = 0;
            for (size_t j = pivot_col; j < cols; ++j) {
                Int v = A[i][j] < 0 ? -A[i][j] : A[i][j];
                if (v != 0 && (best == 0 || v < best)) {
                    best = v;
                    nz = j;
                }
            }
            if (nz == cols) break; // row already zero
            if (nz != pivot_col) colswap(nz, pivot_col);
            bool clean = true;
            for (size_t j = pivot_col + 1; j < cols; ++j) {
                if (A[i][j] == 0) continue;
                colop(j, pivot_col, A[i][j] / A[i][pivot_col]);
                if (A[i][j] != 0) clean = false;
            }
            if (clean) {
                ++pivot_col;
                break;
            }
        }
    }
    // columns past pivot_col have zero image: their x-blocks span the kernel
    std::vector<std::vector<Int>> out;
    for (size_t j = pivot_col; j < cols; ++j) {
        std::vector<Int> v(s);
        for (size_t t = 0; t < s; ++t) v[t] = U[t][j];
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace detail

/*
 * Generators of the S u T unit group: the fundamental unit (real case) and
 * one principality witness per basis vector of the relation lattice
 * { (a_p) : sum a_p [p] = 0 in Cl }.  The stored valuation vectors are the
 * lattice vectors themselves; torsion is recorded separately.
 */
struct SUnitSystem {
    QuadField K;
    std::vector<PlaceId> places;
    std::vector<QuadElement> generators;
    std::vector<std::vector<Int>> valuations; // [generator][place]
    int unit_rank = 0;                        // 1 iff a fundamental unit is present
    std::string torsion_note;
    bool saturation_certified = false;
};

inline SUnitSystem s_unit_system(const QuadField& K, const std::vector<PlaceId>& places,
                                 const ClassGroupData& cl)
{
    for (auto& p : places)
        if (p.archimedean) throw invalid_input("s_unit_system: places must be finite");

    SUnitSystem sys;
    sys.K = K;
    sys.places = places;
    sys.torsion_note = K.d() == -3 ? "-1, zeta3" : "-1";

    size_t s = places.size();
    if (K.rational()) {
        // Z has trivial class group: the lattice is Z^s with basis e_i
        for (size_t j = 0; j < s; ++j) {
            sys.generators.emplace_back(Int(places[j].q), 0);
            std::vector<Int> v(s, 0);
            v[j] = 1;
            sys.valuations.push_back(std::move(v));
        }
        sys.saturation_certified = true;
        return sys;
    }

    if (K.real()) {
        sys.generators.push_back(fundamental_unit(K));
        sys.valuations.emplace_back(s, 0);
        sys.unit_rank = 1;
    }

    // coordinates of each place's class in every Sylow subgroup of Cl
    std::vector<std::vector<Int>> rows;   // congruence rows
    std::vector<Int> moduli;
    Int h = cl.class_number();
    Int generated = 1; // order of the subgroup generated by the classes
    std::vector<int> place_classes;
    for (auto& p : places) place_classes.push_back(cl.index_of_ideal(QuadIdeal::prime(K, p.q, p.index)));
    {
        std::set<int> sub;
        sub.insert(cl.identity());
        for (int c : place_classes) {
            std::set<int> bigger = sub;
            for (int x : sub) {
                int y = x;
                do {
                    y = cl.compose(y, c);
                    bigger.insert(y);
                } while (y != x);
            }
            sub = bigger;
        }
        generated = Int(sub.size());
    }
    for (auto& [p, e] : factorize(h)) {
        long long pl = p.convert_to<long long>();
        auto syl = cl.sylow(pl);
        if (syl.trivial()) continue;
        Int cof = h / pow_int(p, e);
        Int u = cof * inv_mod(cof, pow_int(p, e)); // projector exponent
        for (size_t i = 0; i < syl.basis.size(); ++i) {
            std::vector<Int> row(s);
            for (size_t j = 0; j < s; ++j)
                row[j] = syl.coords(cl.power(place_classes[j], u))[i];
            rows.push_back(std::move(row));
            moduli.push_back(pow_int(p, syl.basis_exponents[i]));
        }
    }

    std::vector<std::vector<Int>> lattice;
    if (rows.empty()) {
        for (size_t j = 0; j < s; ++j) {
            std::vector<Int> v(s, 0);
            v[j] = 1;
            lattice.push_back(std::move(v));
        }
    } else {
        lattice = detail::congruence_kernel(rows, moduli);
    }
    if (lattice.size() != s) throw internal_error("s_unit_system: relation lattice rank defect");

    // saturation certificate: [Z^s : lattice] must equal the order of the
    // subgroup the classes generate
    {
        Int det = 0;
        // Laplace on small s
        std::vector<std::vector<Int>> B(s, std::vector<Int>(s));
        for (size_t i = 0; i < s; ++i)
            for (size_t j = 0; j < s; ++j) B[i][j] = lattice[j][i];
        std::function<Int(std::vector<std::vector<Int>>&)> ddet =
            [&](std::vector<std::vector<Int>>& M) -> Int {
            size_t k = M.size();
            if (k == 0) return 1;
            if (k == 1) return M[0][0];
            Int acc = 0;
            for (size_t j = 0; j < k; ++j) {
                if (M[0][j] == 0) continue;
                std::vector<std::vector<Int>> sub(k - 1, std::vector<Int>(k - 1));
                for (size_t r2 = 1; r2 < k; ++r2) {
                    size_t cc = 0;
                    for (size_t c2 = 0; c2 < k; ++c2) {
                        if (c2 == j) continue;
                        sub[r2 - 1][cc++] = M[r2][c2];
                    }
                }
                Int term = M[0][j] * ddet(sub);
                acc += (j % 2 ? -term : term);
            }
            return acc;
        };
        det = ddet(B);
        if (det < 0) det = -det;
        sys.saturation_certified = det == generated;
        if (!sys.saturation_certified)
            throw internal_error("s_unit_system: relation lattice not saturated");
    }

    for (auto& vec : lattice) {
        QuadIdeal I = QuadIdeal::one(K);
        QuadIdeal Iden = QuadIdeal::one(K);
        for (size_t j = 0; j < s; ++j) {
            QuadIdeal P = QuadIdeal::prime(K, places[j].q, places[j].index);
            if (vec[j] > 0)
                I = I.mul(P.pow(vec[j].convert_to<unsigned long>()));
            else if (vec[j] < 0)
                Iden = Iden.mul(P.pow((-vec[j]).convert_to<unsigned long>()));
        }
        // clear negative exponents: multiply by N(p)^{|a|} = (p pbar)^{|a|},
        // i.e. search a generator for I * conj-part and divide classically:
        // simpler: shift the vector by adding (q) = p*pbar or p^2 blocks is
        // wrong for inert; instead require the witness for I/Iden via the
        // generator of I * Iden-conjugate: use vec >= 0 after translating by
        // principal columns: here we instead search g with (g) = I and
        // divide by the Iden part elementwise.
        std::optional<QuadElement> g;
        if (Iden == QuadIdeal::one(K)) {
            g = principal_generator(I);
        } else {
            // write the class of I/Iden as the principal ideal I * conj(Iden)
            // scaled by 1/N(Iden): conj(Iden) has HNF (n, -(r + s sigma), s)
            QuadIdeal conj(K, Iden.n(), -(Iden.r() + Iden.s() * Int(K.sigma())), Iden.s());
            auto g0 = principal_generator(I.mul(conj));
            if (g0) {
                Int nid = Iden.norm();
                g = QuadElement(g0->a, g0->b, g0->den * nid);
            }
        }
        if (!g) throw internal_error("s_unit_system: missing principality witness");
        sys.generators.push_back(*g);
        sys.valuations.push_back(vec);
    }
    return sys;
}

} // namespace logkernel
