#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace logkernel {

using Int = boost::multiprecision::cpp_int;

// Error taxonomy shared by all modules.
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct precision_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct resource_limit : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct unsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline Int pow_int(const Int& base, unsigned long e)
{
    Int r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Int mod_floor(const Int& a, const Int& m)
{
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Int pow_mod(Int base, Int e, const Int& m)
{
    if (e < 0) throw invalid_input("pow_mod: negative exponent");
    base = mod_floor(base, m);
    Int r = 1;
    while (e > 0) {
        if ((e & 1) != 0) r = r * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return r;
}

inline Int gcd_int(const Int& a, const Int& b)
{
    return boost::multiprecision::gcd(a, b);
}

// x with a*x = gcd(a,m) mod m; throws if gcd != 1.
inline Int inv_mod(const Int& a, const Int& m)
{
    Int old_r = mod_floor(a, m), r = m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw invalid_input("inv_mod: element not invertible");
    return mod_floor(old_s, m);
}

// v_p(n) for n != 0.
inline int valuation(Int n, const Int& p)
{
    if (n == 0) throw invalid_input("valuation of zero");
    if (n < 0) n = -n;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// Symmetric representative in (-m/2, m/2].
inline Int symmetric_lift(const Int& a, const Int& m)
{
    Int r = mod_floor(a, m);
    if (2 * r > m) r -= m;
    return r;
}

// Kronecker symbol (a|n), n arbitrary.
inline int kronecker(Int a, Int n)
{
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && n % 2 == 0) return 0;
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    int k = 1;
    if (v % 2 != 0) {
        Int a8 = mod_floor(a, 8);
        if (a8 == 3 || a8 == 5) k = -1;
    }
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    if (a < 0) {
        a = -a;
        if (mod_floor(n, 4) == 3) k = -k;
    }
    // n odd positive, a nonnegative from here on
    while (true) {
        if (n == 1) return k;
        if (a == 0) return 0;
        v = 0;
        while (a % 2 == 0) {
            a /= 2;
            ++v;
        }
        if (v % 2 != 0) {
            Int n8 = mod_floor(n, 8);
            if (n8 == 3 || n8 == 5) k = -k;
        }
        // reciprocity, both odd positive
        if (mod_floor(a, 4) == 3 && mod_floor(n, 4) == 3) k = -k;
        Int t = mod_floor(n, a);
        n = a;
        a = t;
    }
}

// Deterministic Miller-Rabin, exact for n < 3.3e24 (more than desk scale).
inline bool is_prime(const Int& n)
{
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Trial-division factorization, (prime, exponent) pairs sorted by prime.
inline std::vector<std::pair<Int, int>> factorize(Int n)
{
    if (n == 0) throw invalid_input("factorize(0)");
    if (n < 0) n = -n;
    std::vector<std::pair<Int, int>> out;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline bool is_squarefree(const Int& n)
{
    if (n == 0) return false;
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

// Largest squarefree divisor with the same sign and square cofactor,
// i.e. n = squarefree_kernel(n) * square.
inline Int squarefree_kernel(const Int& n)
{
    if (n == 0) throw invalid_input("squarefree_kernel(0)");
    Int k = n < 0 ? -1 : 1;
    for (auto& [p, e] : factorize(n))
        if (e % 2 != 0) k *= p;
    return k;
}

// Square root of a mod odd prime q (Tonelli-Shanks); requires (a|q) = 1.
inline Int sqrt_mod(const Int& a0, const Int& q)
{
    Int a = mod_floor(a0, q);
    if (a == 0) return 0;
    if (kronecker(a, q) != 1) throw invalid_input("sqrt_mod: not a residue");
    if (mod_floor(q, 4) == 3) return pow_mod(a, (q + 1) / 4, q);
    Int s = q - 1;
    int e = 0;
    while (s % 2 == 0) {
        s /= 2;
        ++e;
    }
    Int n = 2;
    while (kronecker(n, q) != -1) ++n;
    Int x = pow_mod(a, (s + 1) / 2, q);
    Int b = pow_mod(a, s, q);
    Int g = pow_mod(n, s, q);
    int r = e;
    while (true) {
        Int t = b;
        int m = 0;
        for (; m < r; ++m) {
            if (t == 1) break;
            t = t * t % q;
        }
        if (m == 0) return x;
        Int gs = pow_mod(g, pow_int(2, r - m - 1), q);
        g = gs * gs % q;
        x = x * gs % q;
        b = b * g % q;
        r = m;
    }
}

} // namespace logkernel
