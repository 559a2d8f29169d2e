#pragma once

#include "logkernel/padic.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace logkernel {

enum class SplitType { split, inert, ramified };

inline const char* to_string(SplitType t)
{
    switch (t) {
    case SplitType::split: return "split";
    case SplitType::inert: return "inert";
    default: return "ramified";
    }
}

// A finite or archimedean place of Q or a quadratic field.
struct PlaceId {
    Int q = 0;       // residue characteristic, 0 for the archimedean place
    int index = 0;   // 0 or 1; 1 only when split
    SplitType type = SplitType::split;
    bool archimedean = false;

    bool operator==(const PlaceId& o) const
    {
        return q == o.q && index == o.index && archimedean == o.archimedean;
    }
    bool operator<(const PlaceId& o) const
    {
        if (archimedean != o.archimedean) return !archimedean;
        if (q != o.q) return q < o.q;
        return index < o.index;
    }
};

// Q(sqrt(d)) for squarefree d, or Q itself.
class QuadField {
public:
    static QuadField rationals()
    {
        QuadField k;
        k.rational_ = true;
        k.d_ = 1;
        k.disc_ = 1;
        k.real_ = true;
        return k;
    }

    static QuadField make(const Int& d)
    {
        if (d == 0 || d == 1) throw invalid_input("make_field: d must not be 0 or 1");
        if (!is_squarefree(d)) throw invalid_input("make_field: d must be squarefree");
        QuadField k;
        k.rational_ = false;
        k.d_ = d;
        k.disc_ = mod_floor(d, 4) == 1 ? d : 4 * d;
        k.real_ = d > 0;
        return k;
    }

    bool rational() const { return rational_; }
    const Int& d() const { return d_; }
    const Int& disc() const { return disc_; }
    bool real() const { return real_; }
    // parity marker sigma = D mod 2 used by the w-basis {1, (sigma+sqrt(D))/2}
    int sigma() const { return disc_ % 2 == 0 ? 0 : 1; }

    bool operator==(const QuadField& o) const
    {
        return rational_ == o.rational_ && d_ == o.d_;
    }

    std::string name() const
    {
        if (rational_) return "Q";
        return "Q(sqrt(" + d_.str() + "))";
    }

private:
    bool rational_ = false;
    Int d_ = 1;
    Int disc_ = 1;
    bool real_ = true;
};

// Splitting of q: split iff (D|q) = 1, inert iff -1, ramified iff q | D.
// Over Q the single degree-one place is tagged split.
inline std::vector<PlaceId> split_prime(const QuadField& K, const Int& q)
{
    if (!is_prime(q)) throw invalid_input("split_prime: q not prime");
    if (K.rational()) return {PlaceId{q, 0, SplitType::split}};
    int kr = kronecker(K.disc(), q);
    if (kr == 1) return {PlaceId{q, 0, SplitType::split}, PlaceId{q, 1, SplitType::split}};
    if (kr == -1) return {PlaceId{q, 0, SplitType::inert}};
    return {PlaceId{q, 0, SplitType::ramified}};
}

// (a + b sqrt(d)) / den; b = 0 over Q.
struct QuadElement {
    Int a = 0, b = 0, den = 1;

    QuadElement() = default;
    QuadElement(Int a_, Int b_, Int den_ = 1) : a(std::move(a_)), b(std::move(b_)), den(std::move(den_))
    {
        if (den == 0) throw invalid_input("QuadElement: zero denominator");
        normalize();
    }

    void normalize()
    {
        if (den < 0) {
            a = -a;
            b = -b;
            den = -den;
        }
        Int g = gcd_int(gcd_int(a < 0 ? -a : a, b < 0 ? -b : b), den);
        if (g > 1) {
            a /= g;
            b /= g;
            den /= g;
        }
    }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    QuadElement conj() const { return QuadElement(a, -b, den); }

    // norm as a reduced fraction (num, den)
    std::pair<Int, Int> norm(const QuadField& K) const
    {
        Int num = a * a - K.d() * b * b;
        Int dd = den * den;
        Int g = gcd_int(num < 0 ? -num : num, dd);
        if (g > 1) {
            num /= g;
            dd /= g;
        }
        return {num, dd};
    }

    QuadElement mul(const QuadElement& o, const QuadField& K) const
    {
        return QuadElement(a * o.a + K.d() * b * o.b, a * o.b + b * o.a, den * o.den);
    }

    std::string str() const
    {
        std::string s = "(" + a.str();
        if (b != 0) s += (b > 0 ? "+" : "") + b.str() + "*sqrt(d)";
        s += ")";
        if (den != 1) s += "/" + den.str();
        return s;
    }

    // coordinates (x, y) with value = (x + y*w)/den, w = (sigma+sqrt(D))/2
    std::pair<Int, Int> w_coords(const QuadField& K) const
    {
        if (K.disc() % 2 == 0) return {a, b}; // w = sqrt(d)
        // sqrt(d) = 2w - 1
        return {a - b, 2 * b};
    }

    static QuadElement from_w_coords(const QuadField& K, const Int& x, const Int& y,
                                     const Int& den = 1)
    {
        if (K.disc() % 2 == 0) return QuadElement(x, y, den);
        return QuadElement(2 * x + y, y, 2 * den);
    }
};

/*
 * Integral ideal as an HNF lattice n Z + (r + s w) Z in the basis {1, w},
 * w = (sigma + sqrt(D))/2.  Well-formed: s | n, s | r, 0 <= r < n, and
 * n s = norm.
 */
class QuadIdeal {
public:
    QuadIdeal(const QuadField& K, Int n, Int r, Int s) : K_(K), n_(std::move(n)), r_(std::move(r)), s_(std::move(s))
    {
        canonicalize();
        check();
    }

    static QuadIdeal one(const QuadField& K) { return QuadIdeal(K, 1, 0, 1); }

    static QuadIdeal principal(const QuadField& K, const QuadElement& g)
    {
        if (g.is_zero()) throw invalid_input("principal ideal of 0");
        if (g.den != 1 && !(g.den == 2 && K.disc() % 2 != 0))
            throw invalid_input("principal: element not integral");
        auto [x, y] = g.w_coords(K);
        if (g.den == 2) {
            if (x % 2 != 0 || y % 2 != 0) throw invalid_input("principal: element not integral");
            x /= 2;
            y /= 2;
        }
        Int sigma = K.sigma();
        Int c = (K.disc() - sigma * sigma) / 4;
        // generators g*1 = (x, y) and g*w = (y c, x + y sigma)
        return from_generators(K, {{x, y}, {y * c, x + y * sigma}});
    }

    // prime ideal(s) over q from the roots of X^2 - sigma X + (sigma^2-D)/4
    static QuadIdeal prime(const QuadField& K, const Int& q, int index)
    {
        auto places = split_prime(K, q);
        if (K.rational()) throw invalid_input("prime ideal over Q: use integers");
        Int sigma = K.sigma();
        Int c = (sigma * sigma - K.disc()) / 4;
        SplitType type = places[0].type;
        if (type == SplitType::inert) {
            if (index != 0) throw invalid_input("inert place has a single index");
            return QuadIdeal(K, q, 0, q);
        }
        std::vector<Int> roots;
        if (q == 2) {
            for (Int x : {Int(0), Int(1)})
                if (mod_floor(x * x - sigma * x + c, 2) == 0) roots.push_back(x);
        } else if (type == SplitType::ramified) {
            roots.push_back(mod_floor(sigma * inv_mod(2, q), q));
        } else {
            Int t = sqrt_mod(K.disc(), q);
            roots.push_back(mod_floor((sigma + t) * inv_mod(2, q), q));
            roots.push_back(mod_floor((sigma - t) * inv_mod(2, q), q));
            if (roots[0] > roots[1]) std::swap(roots[0], roots[1]);
        }
        if (index < 0 || index >= int(roots.size())) throw invalid_input("prime: bad index");
        return QuadIdeal(K, q, mod_floor(-roots[index], q), 1);
    }

    const QuadField& field() const { return K_; }
    const Int& n() const { return n_; }
    const Int& r() const { return r_; }
    const Int& s() const { return s_; }
    Int norm() const { return n_ * s_; }

    bool operator==(const QuadIdeal& o) const { return n_ == o.n_ && r_ == o.r_ && s_ == o.s_; }

    QuadIdeal mul(const QuadIdeal& o) const
    {
        Int sigma = K_.sigma();
        Int c = (K_.disc() - sigma * sigma) / 4;
        // products of the four generator pairs
        auto prod = [&](std::pair<Int, Int> u, std::pair<Int, Int> v) -> std::pair<Int, Int> {
            auto [x1, y1] = u;
            auto [x2, y2] = v;
            return {x1 * x2 + y1 * y2 * c, x1 * y2 + x2 * y1 + y1 * y2 * sigma};
        };
        std::pair<Int, Int> g1{n_, 0}, g2{r_, s_}, h1{o.n_, 0}, h2{o.r_, o.s_};
        return from_generators(K_, {prod(g1, h1), prod(g1, h2), prod(g2, h1), prod(g2, h2)});
    }

    QuadIdeal pow(unsigned long e) const
    {
        QuadIdeal acc = one(K_);
        QuadIdeal base = *this;
        while (e) {
            if (e & 1) acc = acc.mul(base);
            base = base.mul(base);
            e >>= 1;
        }
        return acc;
    }

    // membership; g may carry a denominator (then g in I iff den*g in den*I)
    bool contains(const QuadElement& g) const
    {
        auto [x, y] = g.w_coords(K_); // g = (x + y w)/den
        Int n = n_ * g.den, r = r_ * g.den, s = s_ * g.den;
        if (mod_floor(y, s) != 0) return false;
        Int beta = y / s;
        return mod_floor(x - beta * r, n) == 0;
    }

    // content: largest rational integer c with I = c * (primitive ideal)
    Int content() const { return s_; }
    QuadIdeal primitive_part() const { return QuadIdeal(K_, n_ / s_, r_ / s_, 1); }

    std::string str() const
    {
        return "[" + n_.str() + ", " + r_.str() + " + " + s_.str() + "*w]";
    }

private:
    static QuadIdeal from_generators(const QuadField& K, std::vector<std::pair<Int, Int>> gens)
    {
        // 2-column HNF: first reduce the y-components to a single generator
        Int s = 0, r = 0;
        for (auto& [x, y] : gens) s = gcd_int(s, y < 0 ? -y : y);
        if (s == 0) throw invalid_input("ideal generators span a rank-1 lattice");
        // find a combination achieving y = s via iterated bezout
        Int cs = 0, cr = 0; // current (x, y) with y = gcd so far
        for (auto& [x, y] : gens) {
            if (y == 0) continue;
            if (cs == 0) {
                cr = x;
                cs = y;
                continue;
            }
            // bezout: u*cs + v*y = g
            Int old_r = cs, rr = y, old_s = 1, ss = 0, old_t = 0, tt = 1;
            while (rr != 0) {
                Int qq = old_r / rr;
                Int tmp = old_r - qq * rr;
                old_r = rr;
                rr = tmp;
                tmp = old_s - qq * ss;
                old_s = ss;
                ss = tmp;
                tmp = old_t - qq * tt;
                old_t = tt;
                tt = tmp;
            }
            cr = old_s * cr + old_t * x;
            cs = old_r;
        }
        if (cs < 0) {
            cs = -cs;
            cr = -cr;
        }
        s = cs;
        r = cr;
        Int n = 0;
        for (auto& [x, y] : gens) {
            Int x0 = x - (y / s) * r; // y divisible by s = gcd of ys
            n = gcd_int(n, x0 < 0 ? -x0 : x0);
        }
        if (n == 0) throw invalid_input("ideal generators span a rank-1 lattice");
        return QuadIdeal(K, n, r, s);
    }

    void canonicalize()
    {
        if (n_ < 0) n_ = -n_;
        if (s_ < 0) s_ = -s_;
        if (n_ == 0 || s_ == 0) throw invalid_input("QuadIdeal: degenerate lattice");
        r_ = mod_floor(r_, n_);
    }

    void check() const
    {
        if (n_ % s_ != 0 || r_ % s_ != 0)
            throw internal_error("QuadIdeal: lattice is not an ideal (content)");
        // multiplication by w must preserve the lattice
        Int sigma = K_.sigma();
        Int c = (K_.disc() - sigma * sigma) / 4;
        // w * n = (0, n): membership
        auto member = [&](const Int& x, const Int& y) {
            if (mod_floor(y, s_) != 0) return false;
            return mod_floor(x - (y / s_) * r_, n_) == 0;
        };
        if (!member(0 * n_, n_) || !member(s_ * c, r_ + s_ * sigma))
            throw internal_error("QuadIdeal: lattice is not w-stable");
    }

    QuadField K_;
    Int n_, r_, s_;
};

// classical valuation v_p(g) via ideal membership; g need not be integral
inline int element_valuation(const QuadField& K, const QuadElement& g, const Int& q, int index)
{
    if (g.is_zero()) throw invalid_input("element_valuation of 0");
    int vden = mod_floor(g.den, q) == 0 ? valuation(g.den, q) : 0;
    if (K.rational()) {
        int vnum = mod_floor(g.a, q) == 0 ? valuation(g.a, q) : 0;
        return vnum - vden;
    }
    SplitType type = split_prime(K, q)[0].type;
    int e_q = type == SplitType::ramified ? 2 : 1;
    QuadElement num(g.a, g.b, 1); // v(g) = v(den*g) - v_p(den)
    auto [nn, nd] = num.norm(K);
    int bound = mod_floor(nn, q) == 0 ? valuation(nn, q) : 0;
    QuadIdeal P = QuadIdeal::prime(K, q, index);
    QuadIdeal Pk = P;
    int v = 0;
    while (v <= 2 * bound) {
        if (!Pk.contains(num)) break;
        ++v;
        Pk = Pk.mul(P);
    }
    return v - e_q * vden;
}

// Local norms of x at the places over ell, as val/unit pairs.
struct LocalNorm {
    PlaceId place;
    int val = 0;    // ell-adic valuation of the norm
    PadicInt unit;  // unit part mod ell^m

    PadicInt to_padic(int m) const
    {
        if (val >= m) return PadicInt(unit.ell(), 0, m);
        return PadicInt(unit.ell(), pow_int(unit.ell(), val) * unit.value(), m);
    }
};

/*
 * Images of x under completion at ell.  Split: the two conjugate images
 * under sqrt(d) -> +-t for the Hensel root t of X^2-d (the local norm is
 * the image itself).  Inert/ramified: the single local norm N(x).
 */
inline std::vector<LocalNorm> embed_at_ell(const QuadField& K, const QuadElement& x, long long ell,
                                           int m)
{
    if (x.is_zero()) throw invalid_input("embed_at_ell: x = 0");
    auto places = K.rational() ? std::vector<PlaceId>{PlaceId{ell, 0, SplitType::split}}
                               : split_prime(K, ell);
    int vden = x.den % ell == 0 ? valuation(x.den, ell) : 0;
    Int den_unit = x.den / pow_int(ell, vden);

    std::vector<LocalNorm> out;
    if (K.rational()) {
        int v = x.a % ell == 0 ? valuation(x.a, ell) : 0;
        out.push_back({places[0], v - vden,
                       PadicInt::from_rational(ell, x.a / pow_int(ell, v), den_unit, m)});
        return out;
    }
    if (places.size() == 2) {
        Int conj_product = x.a * x.a - K.d() * x.b * x.b; // (a+bt)(a-bt)
        int M = valuation(conj_product, ell) + m + 2;
        PadicInt t = hensel_sqrt(K.d(), ell, M);
        for (int idx = 0; idx < 2; ++idx) {
            Int image = mod_floor(x.a + (idx == 0 ? x.b : -x.b) * t.value(), pow_int(ell, M));
            if (image == 0) throw internal_error("embed_at_ell: image vanished past cutoff");
            int v = valuation(image, ell);
            if (v >= M - m) throw internal_error("embed_at_ell: insufficient working precision");
            Int unit = mod_floor(image / pow_int(ell, v), pow_int(ell, m));
            out.push_back({places[idx], v - vden,
                           PadicInt::from_rational(ell, unit, den_unit, m)});
        }
        return out;
    }
    // inert or ramified: single place, local norm = global norm (a fraction
    // already reduced by QuadElement::norm)
    auto [norm_num, norm_den] = x.norm(K);
    int vn = norm_num % ell == 0 ? valuation(norm_num, ell) : 0;
    int vd = norm_den % ell == 0 ? valuation(norm_den, ell) : 0;
    out.push_back({places[0], vn - vd,
                   PadicInt::from_rational(ell, norm_num / pow_int(ell, vn),
                                           norm_den / pow_int(ell, vd), m)});
    return out;
}

} // namespace logkernel
