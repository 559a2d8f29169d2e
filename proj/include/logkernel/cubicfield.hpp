#pragma once

#include "logkernel/bigint.hpp"

#include <array>
#include <optional>
#include <set>
#include <vector>

namespace logkernel {

// monic cubic x^3 + c2 x^2 + c1 x + c0 with integer coefficients
struct Cubic {
    Int c0 = 0, c1 = 0, c2 = 0;

    Int disc() const
    {
        // 18 a b c - 4 a^3 c + a^2 b^2 - 4 b^3 - 27 c^2 for x^3+ax^2+bx+c
        const Int &a = c2, &b = c1, &c = c0;
        return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
    }

    bool has_rational_root() const
    {
        if (c0 == 0) return true;
        Int lim = c0 < 0 ? -c0 : c0;
        for (Int r = 1; r <= lim; ++r) {
            if (c0 % r != 0) continue;
            for (Int x : {Int(r), Int(-r)})
                if (x * x * x + c2 * x * x + c1 * x + c0 == 0) return true;
        }
        return false;
    }

    std::string str() const
    {
        return "x^3 + (" + c2.str() + ")x^2 + (" + c1.str() + ")x + (" + c0.str() + ")";
    }
};

namespace detail {

inline int moebius(const Int& n)
{
    int mu = 1;
    for (auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return n == 1 ? 1 : mu;
}

// canonical cubic character exponents mod f: x -> sum of discrete-log
// residues mod 3 over the prime-power factors of f
struct CubicCharacter {
    Int f;
    std::vector<Int> factor;    // prime powers (9 or p)
    std::vector<Int> generator; // a generator of (Z/factor)^x
    std::vector<Int> ordthird;  // phi(factor)/3

    explicit CubicCharacter(const Int& f_) : f(f_)
    {
        for (auto& [p, e] : factorize(f)) {
            Int pk = pow_int(p, e);
            factor.push_back(pk);
            Int phi = pk / p * (p - 1);
            // smallest primitive root mod p^k (exists: p odd prime power)
            Int g = 2;
            for (;; ++g) {
                if (mod_floor(g, p) == 0) continue;
                bool ok = true;
                for (auto& [q, eq] : factorize(phi))
                    ok &= pow_mod(g, phi / q, pk) != 1;
                if (ok) break;
            }
            generator.push_back(g);
            ordthird.push_back(phi / 3);
        }
    }

    // exponent of chi at x, or nullopt when gcd(x, f) > 1
    std::optional<int> exponent(const Int& x) const
    {
        if (gcd_int(mod_floor(x, f), f) != 1) return std::nullopt;
        int total = 0;
        for (size_t i = 0; i < factor.size(); ++i) {
            // ind(x) mod 3: x^(phi/3) = g^(phi/3 * ind) has order dividing 3
            Int target = pow_mod(x, ordthird[i], factor[i]);
            Int zeta = pow_mod(generator[i], ordthird[i], factor[i]);
            int ind = -1;
            Int acc = 1;
            for (int j = 0; j < 3; ++j) {
                if (acc == target) {
                    ind = j;
                    break;
                }
                acc = acc * zeta % factor[i];
            }
            if (ind < 0) throw internal_error("CubicCharacter: index not found");
            total = (total + ind) % 3;
        }
        return total;
    }
};

} // namespace detail

// Gaussian-period cubic: the minimal polynomial of sum_{t in H} zeta_f^t,
// H the kernel of the canonical cubic character mod f; symmetric functions
// evaluated exactly in Z[zeta_f] via Ramanujan sums.
inline Cubic period_cubic(const Int& f)
{
    detail::CubicCharacter chi(f);
    std::vector<std::vector<Int>> eta(3, std::vector<Int>(f.convert_to<size_t>(), 0));
    for (Int t = 1; t < f; ++t) {
        auto e = chi.exponent(t);
        if (e) eta[*e][t.convert_to<size_t>()] += 1;
    }
    size_t n = f.convert_to<size_t>();
    auto conv = [&](const std::vector<Int>& a, const std::vector<Int>& b) {
        std::vector<Int> c(n, 0);
        for (size_t i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < n; ++j) {
                if (b[j] == 0) continue;
                c[(i + j) % n] += a[i] * b[j];
            }
        }
        return c;
    };
    auto add = [&](std::vector<Int> a, const std::vector<Int>& b) {
        for (size_t i = 0; i < n; ++i) a[i] += b[i];
        return a;
    };
    // rational value of a Galois-invariant element via Ramanujan sums
    auto value = [&](const std::vector<Int>& a) {
        Int v = a[0];
        for (Int d = 1; d <= f; ++d) {
            if (f % d != 0 || d == 1) continue;
            Int rep = f / d; // gcd(rep, f) = f/d
            v += a[rep.convert_to<size_t>()] * detail::moebius(d);
        }
        return v;
    };

    auto e1vec = add(add(eta[0], eta[1]), eta[2]);
    auto e2vec = add(add(conv(eta[0], eta[1]), conv(eta[0], eta[2])), conv(eta[1], eta[2]));
    auto e3vec = conv(conv(eta[0], eta[1]), eta[2]);
    Int e1 = value(e1vec), e2 = value(e2vec), e3 = value(e3vec);
    return Cubic{-e3, e2, -e1};
}

/*
 * A cyclic cubic field: conductor 9^{0,1} times distinct primes = 1 mod 3,
 * with a monic defining cubic (square discriminant, irreducible).
 */
struct CyclicCubicField {
    Int conductor;
    Cubic poly;
    std::vector<Int> ramified_primes;
};

inline CyclicCubicField make_cyclic_cubic(const Int& f, std::optional<Cubic> poly = std::nullopt)
{
    if (f < 7) throw invalid_input("cyclic cubic: conductor must be at least 7");
    std::vector<Int> ram;
    for (auto& [p, e] : factorize(f)) {
        if (p == 3) {
            if (e != 2) throw invalid_input("cyclic cubic: 3-part of the conductor must be 9");
        } else {
            if (e != 1 || mod_floor(p, 3) != 1)
                throw invalid_input("cyclic cubic: conductor primes must be distinct and 1 mod 3");
        }
        ram.push_back(p);
    }
    CyclicCubicField N;
    N.conductor = f;
    N.ramified_primes = ram;
    N.poly = poly ? *poly : period_cubic(f);
    if (N.poly.has_rational_root()) throw invalid_input("cyclic cubic: polynomial is reducible");
    Int D = N.poly.disc();
    if (D <= 0) throw invalid_input("cyclic cubic: discriminant must be a positive square");
    Int s = boost::multiprecision::sqrt(D);
    if (s * s != D) throw invalid_input("cyclic cubic: discriminant is not a square");
    if (D % (f * f) != 0 || ![&] {
            Int idx2 = D / (f * f);
            Int r = boost::multiprecision::sqrt(idx2);
            return r * r == idx2;
        }())
        throw invalid_input("cyclic cubic: discriminant does not match the conductor");
    return N;
}

/*
 * The ring Z_3[pi] with pi = zeta_9 + zeta_9^{-1} (so pi^3 = 3 pi - 1):
 * integers of B_1, the first layer of the cyclotomic Z_3-extension of Q_3.
 * Elements are coordinate triples mod 3^prec; the lambda-valuation is read
 * off the norm.
 */
struct B1Elem {
    std::array<Int, 3> c{Int(0), Int(0), Int(0)};
    int prec = 8;

    static B1Elem from(const Int& a0, const Int& a1, const Int& a2, int prec)
    {
        B1Elem x;
        x.prec = prec;
        Int mod = pow_int(3, prec);
        x.c = {mod_floor(a0, mod), mod_floor(a1, mod), mod_floor(a2, mod)};
        return x;
    }

    friend B1Elem operator+(const B1Elem& a, const B1Elem& b)
    {
        return from(a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2],
                    std::min(a.prec, b.prec));
    }
    friend B1Elem operator-(const B1Elem& a, const B1Elem& b)
    {
        return from(a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2],
                    std::min(a.prec, b.prec));
    }
    friend B1Elem operator*(const B1Elem& a, const B1Elem& b)
    {
        // reduce with pi^3 = 3 pi - 1, pi^4 = 3 pi^2 - pi
        Int r0 = a.c[0] * b.c[0];
        Int r1 = a.c[0] * b.c[1] + a.c[1] * b.c[0];
        Int r2 = a.c[0] * b.c[2] + a.c[1] * b.c[1] + a.c[2] * b.c[0];
        Int r3 = a.c[1] * b.c[2] + a.c[2] * b.c[1];
        Int r4 = a.c[2] * b.c[2];
        return from(r0 - r3, r1 + 3 * r3 - r4, r2 + 3 * r4, std::min(a.prec, b.prec));
    }

    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0; }

    // multiplication matrix invariants
    Int norm() const
    {
        // det of the multiplication-by-x matrix on {1, pi, pi^2}
        // columns: x, x*pi, x*pi^2
        B1Elem pi = from(0, 1, 0, prec);
        B1Elem x1 = *this;
        B1Elem x2 = *this * pi;
        B1Elem x3 = x2 * pi;
        const auto& a = x1.c;
        const auto& b = x2.c;
        const auto& d = x3.c;
        Int det = a[0] * (b[1] * d[2] - b[2] * d[1]) - b[0] * (a[1] * d[2] - a[2] * d[1]) +
                  d[0] * (a[1] * b[2] - a[2] * b[1]);
        return mod_floor(det, pow_int(3, prec));
    }

    // lambda-adic valuation via v_3(norm); prec*3 means "unresolved"
    int lambda_valuation() const
    {
        Int nm = norm();
        if (nm == 0) return 3 * prec;
        return std::min(valuation(nm, 3), 3 * prec);
    }
};

inline B1Elem b1_eval(const Cubic& g, const B1Elem& x)
{
    B1Elem acc = B1Elem::from(1, 0, 0, x.prec);
    B1Elem res = B1Elem::from(g.c0, 0, 0, x.prec);
    acc = x;
    res = res + B1Elem::from(g.c1, 0, 0, x.prec) * acc;
    acc = acc * x;
    res = res + B1Elem::from(g.c2, 0, 0, x.prec) * acc;
    acc = acc * x;
    return res + acc;
}

inline B1Elem b1_eval_deriv(const Cubic& g, const B1Elem& x)
{
    // 3x^2 + 2 c2 x + c1
    B1Elem res = B1Elem::from(g.c1, 0, 0, x.prec);
    res = res + B1Elem::from(2 * g.c2, 0, 0, x.prec) * x;
    return res + B1Elem::from(3, 0, 0, x.prec) * x * x;
}

// y / z in B1 via the adjugate z^2 - t1 z + t2, with explicit precision loss
inline B1Elem b1_divide(const B1Elem& y, const B1Elem& z)
{
    int prec = std::min(y.prec, z.prec);
    B1Elem pi = B1Elem::from(0, 1, 0, prec);
    B1Elem z1 = z, z2 = z * pi, z3 = z2 * pi;
    Int t1 = z1.c[0] + z2.c[1] + z3.c[2]; // trace of mult matrix
    // trace of the square
    B1Elem w1 = z * z1, w2 = z * z2, w3 = z * z3;
    Int tr2 = w1.c[0] + w2.c[1] + w3.c[2];
    Int t2 = mod_floor((t1 * t1 - tr2) * inv_mod(2, pow_int(3, prec)), pow_int(3, prec));
    Int nm = z.norm();
    if (nm == 0) throw precision_exhausted("b1_divide: norm vanishes at this precision");
    int v = valuation(nm, 3);
    B1Elem adj = z * z - B1Elem::from(t1, 0, 0, prec) * z + B1Elem::from(t2, 0, 0, prec);
    B1Elem num = y * adj;
    Int p3 = pow_int(3, v);
    for (auto& cc : num.c)
        if (cc % p3 != 0) throw precision_exhausted("b1_divide: quotient not integral");
    Int unit = nm / p3;
    Int mod = pow_int(3, prec - v);
    Int uinv = inv_mod(unit, mod);
    return B1Elem::from(num.c[0] / p3 * uinv, num.c[1] / p3 * uinv, num.c[2] / p3 * uinv,
                        prec - v);
}

struct B1RootSearch {
    bool found = false;
    B1Elem root;
};

/*
 * Hensel root search for a monic cubic over Z_3[pi]: enumerate seeds at
 * growing coefficient precision; a seed with v(g) > 2 v(g') Newton-lifts to
 * a root, and a level where every seed has v(g) < 3K certifies no root.
 */
inline B1RootSearch root_in_B1(const Cubic& g, int m, int k_cap = 4)
{
    for (int K = 2; K <= k_cap; ++K) {
        int P = std::max(m, 3 * K) + 16;
        Int seed_mod = pow_int(3, K);
        bool undecided = false;
        for (Int a0 = 0; a0 < seed_mod; ++a0)
            for (Int a1 = 0; a1 < seed_mod; ++a1)
                for (Int a2 = 0; a2 < seed_mod; ++a2) {
                    B1Elem s = B1Elem::from(a0, a1, a2, P);
                    int vg = b1_eval(g, s).lambda_valuation();
                    if (vg < 3 * K) continue;
                    int vd = b1_eval_deriv(g, s).lambda_valuation();
                    if (vg > 2 * vd) {
                        // Newton iteration, quadratic convergence
                        B1Elem x = s;
                        for (int it = 0; it < 64; ++it) {
                            B1Elem gx = b1_eval(g, x);
                            if (gx.lambda_valuation() >= 3 * std::min(x.prec, m)) break;
                            B1Elem corr = b1_divide(gx, b1_eval_deriv(g, x));
                            x = x - B1Elem::from(corr.c[0], corr.c[1], corr.c[2], x.prec);
                        }
                        if (x.prec >= m && b1_eval(g, B1Elem::from(x.c[0], x.c[1], x.c[2], m))
                                                   .lambda_valuation() >= 3 * m) {
                            B1RootSearch out;
                            out.found = true;
                            out.root = B1Elem::from(x.c[0], x.c[1], x.c[2], m);
                            return out;
                        }
                        undecided = true;
                    } else {
                        undecided = true; // deep value, shallow derivative
                    }
                }
        if (!undecided) return {};
    }
    throw precision_exhausted("root_in_B1: undecided at the enumeration cap");
}

} // namespace logkernel
