#pragma once

#include "logkernel/bigint.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace logkernel {

/*
 * An ell-adic integer known modulo ell^m, for an odd prime ell.
 *
 * The absolute precision m is part of the value: arithmetic never reports
 * more precision than its inputs justify.  Addition and multiplication keep
 * the minimum of the operand precisions; dividing by ell^v costs v digits.
 * Division by a unit is exact at the common precision.
 */
class PadicInt {
public:
    // prec 0: "no information" placeholder
    PadicInt() : ell_(3), prec_(0), value_(0), modulus_(1) {}

    PadicInt(long long ell, const Int& value, int prec)
        : ell_(ell), prec_(prec)
    {
        if (ell < 3 || ell % 2 == 0 || !is_prime(Int(ell)))
            throw invalid_input("PadicInt: ell must be an odd prime");
        if (prec < 0) throw invalid_input("PadicInt: negative precision");
        modulus_ = pow_int(ell, prec);
        value_ = prec == 0 ? 0 : mod_floor(value, modulus_);
    }

    static PadicInt from_rational(long long ell, const Int& num, const Int& den, int prec)
    {
        if (den == 0) throw invalid_input("PadicInt: zero denominator");
        if (den % ell == 0) throw invalid_input("PadicInt: denominator not an ell-adic unit");
        Int m = pow_int(ell, prec);
        return PadicInt(ell, mod_floor(num, m) * inv_mod(den, m), prec);
    }

    long long ell() const { return ell_; }
    int prec() const { return prec_; }
    const Int& value() const { return value_; }
    const Int& modulus() const { return modulus_; }

    // min(v_ell(value), prec); a zero representative reports prec.
    int valuation() const
    {
        if (value_ == 0) return prec_;
        return std::min(logkernel::valuation(value_, ell_), prec_);
    }

    bool is_unit() const { return prec_ > 0 && value_ % ell_ != 0; }
    bool is_zero() const { return value_ == 0; }

    PadicInt reduced(int new_prec) const
    {
        if (new_prec > prec_) throw invalid_input("PadicInt: cannot raise precision");
        return PadicInt(ell_, value_, new_prec);
    }

    PadicInt operator-() const { return PadicInt(ell_, -value_, prec_); }

    friend PadicInt operator+(const PadicInt& a, const PadicInt& b)
    {
        int p = a.common(b);
        return PadicInt(a.ell_, a.value_ + b.value_, p);
    }
    friend PadicInt operator-(const PadicInt& a, const PadicInt& b)
    {
        int p = a.common(b);
        return PadicInt(a.ell_, a.value_ - b.value_, p);
    }
    friend PadicInt operator*(const PadicInt& a, const PadicInt& b)
    {
        int p = a.common(b);
        return PadicInt(a.ell_, a.value_ * b.value_, p);
    }
    PadicInt operator*(const Int& k) const { return PadicInt(ell_, value_ * k, prec_); }

    // Exact inverse of a unit at the same precision.
    PadicInt inverse() const
    {
        if (!is_unit()) throw invalid_input("PadicInt: inverse of a non-unit");
        return PadicInt(ell_, inv_mod(value_, modulus_), prec_);
    }

    friend PadicInt operator/(const PadicInt& a, const PadicInt& b) { return a * b.inverse(); }

    // x / ell^v with explicit precision loss v.
    PadicInt exact_divide(int v) const
    {
        if (v < 0) throw invalid_input("exact_divide: negative power");
        if (v == 0) return *this;
        if (prec_ - v < 1)
            throw precision_exhausted("exact_divide: no precision left");
        Int q = pow_int(ell_, v);
        if (value_ % q != 0)
            throw invalid_input("exact_divide: value not divisible by ell^v");
        return PadicInt(ell_, value_ / q, prec_ - v);
    }

    PadicInt pow(long long k) const
    {
        if (k < 0) return inverse().pow(-k);
        return PadicInt(ell_, pow_mod(value_, Int(k), modulus_), prec_);
    }

    // Congruence at the smaller of the two precisions.
    bool congruent(const PadicInt& b) const
    {
        int p = common(b);
        Int m = pow_int(ell_, p);
        return mod_floor(value_ - b.value_, m) == 0;
    }

    bool operator==(const PadicInt& b) const
    {
        return ell_ == b.ell_ && prec_ == b.prec_ && value_ == b.value_;
    }

    Int lift_symmetric() const { return symmetric_lift(value_, modulus_); }

    friend std::ostream& operator<<(std::ostream& os, const PadicInt& x)
    {
        return os << x.value_ << " (mod " << x.ell_ << "^" << x.prec_ << ")";
    }

private:
    int common(const PadicInt& b) const
    {
        if (ell_ != b.ell_) throw invalid_input("PadicInt: mixed primes");
        return std::min(prec_, b.prec_);
    }

    long long ell_;
    int prec_;
    Int value_;
    Int modulus_;
};

// The unique (ell-1)-th root of unity congruent to a mod ell, to precision m.
inline PadicInt teichmuller(const Int& a, long long ell, int m)
{
    if (mod_floor(a, ell) == 0) throw invalid_input("teichmuller: residue divisible by ell");
    Int mod = pow_int(ell, m);
    Int x = mod_floor(a, mod);
    for (int i = 0; i <= m + 1; ++i) {
        Int next = pow_mod(x, ell, mod);
        if (next == x) break;
        x = next;
    }
    return PadicInt(ell, x, m);
}

namespace detail {

// log(u) for u = 1 mod ell, exact mod ell^m; the alternating series on
// z = u-1 is summed at working precision m + guard to absorb the 1/k terms.
inline Int unit_log_principal(const Int& u, long long ell, int m)
{
    int guard = 2;
    int div_loss = 1;
    // v_ell(k) <= log_ell(k) for k <= series length ~ W
    while (pow_int(ell, div_loss) < Int(m + 16)) ++div_loss;
    int W = m + div_loss + guard;
    Int modW = pow_int(ell, W);
    Int z = mod_floor(u - 1, modW);
    if (z % ell != 0) throw invalid_input("unit_log_principal: u != 1 mod ell");
    Int sum = 0;
    Int zk = 1;
    for (int k = 1; k <= W; ++k) {
        zk = zk * z % modW;
        if (zk == 0) break;
        int v = 0;
        Int kk = k;
        while (kk % ell == 0) {
            kk /= ell;
            ++v;
        }
        Int term = zk / pow_int(ell, v);
        term = term * inv_mod(kk, modW) % modW;
        if (k % 2 == 0) term = -term;
        sum = mod_floor(sum + term, modW);
    }
    return mod_floor(sum, pow_int(ell, m));
}

// Log_Iw on nonzero integers: strip sign, ell-powers and the Teichmuller
// part, then apply the principal-unit log.
inline Int integer_log_iw(Int n, long long ell, int m)
{
    if (n == 0) throw invalid_input("integer_log_iw(0)");
    if (n < 0) n = -n; // Log_Iw kills torsion
    while (n % ell == 0) n /= ell; // Log_Iw(ell) = 0
    if (n == 1) return 0;
    int guard = 2;
    int W = m + guard;
    Int modW = pow_int(ell, W);
    Int omega = teichmuller(n, ell, W).value();
    Int u = mod_floor(n, modW) * inv_mod(omega, modW) % modW;
    return mod_floor(unit_log_principal(u, ell, W), pow_int(ell, m));
}

} // namespace detail

// Iwasawa logarithm of a nonzero rational, mod ell^m.
inline PadicInt iwasawa_log(const Int& num, const Int& den, long long ell, int m)
{
    if (num == 0 || den == 0) throw invalid_input("iwasawa_log: zero argument");
    Int v = detail::integer_log_iw(num, ell, m) - detail::integer_log_iw(den, ell, m);
    return PadicInt(ell, v, m);
}

inline PadicInt iwasawa_log(const Int& x, long long ell, int m)
{
    return iwasawa_log(x, 1, ell, m);
}

// Square root of the unit a mod ell^m (ell odd), given (a|ell) = 1.
inline PadicInt hensel_sqrt(const Int& a, long long ell, int m)
{
    Int a0 = mod_floor(a, ell);
    if (a0 == 0) throw invalid_input("hensel_sqrt: argument not a unit");
    if (kronecker(a0, ell) != 1) throw invalid_input("hensel_sqrt: not a square mod ell");
    Int x = sqrt_mod(a0, ell);
    int k = 1;
    while (k < m) {
        k = std::min(2 * k, m);
        Int mod = pow_int(ell, k);
        // Newton step x <- (x + a/x)/2
        x = mod_floor((x + mod_floor(a, mod) * inv_mod(x, mod)) * inv_mod(2, mod), mod);
    }
    return PadicInt(ell, x, m);
}

} // namespace logkernel
