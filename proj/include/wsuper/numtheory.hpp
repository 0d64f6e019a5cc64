#pragma once

// Exact root extraction for monic rational polynomials whose roots are
// expected to be rational: clear denominators, factor the constant term
// (trial division + Pollard rho), test divisor candidates with deflation.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

#include "wsuper/rational.hpp"

namespace wsuper {

namespace detail {

inline mpz_class pollard_rho(const mpz_class& n) {
    if (n % 2 == 0) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(20260810UL);
    while (true) {
        mpz_class x = rng.get_z_range(n - 2) + 2, y = x, c = rng.get_z_range(n - 1) + 1;
        mpz_class d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            mpz_class diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

inline void factorize(mpz_class n, std::map<mpz_class, int>& out) {
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (long p = 2; p < 100000 && mpz_class(p) * p <= n; p = (p == 2 ? 3 : p + 2))
        while (n % p == 0) { out[p]++; n /= p; }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) { out[n]++; return; }
    mpz_class d = pollard_rho(n);
    factorize(d, out);
    factorize(n / d, out);
}

inline void divisors_rec(const std::vector<std::pair<mpz_class, int>>& f, size_t at,
                         const mpz_class& cur, std::vector<mpz_class>& out, size_t cap) {
    if (out.size() >= cap) return;
    if (at == f.size()) { out.push_back(cur); return; }
    mpz_class v = cur;
    for (int e = 0; e <= f[at].second; ++e) {
        divisors_rec(f, at + 1, v, out, cap);
        v *= f[at].first;
    }
}

}  // namespace detail

// All rational roots with multiplicity of the monic polynomial
// t^n + c[n-1] t^{n-1} + ... + c[0] (c ascending, the leading 1 not stored).
// Returns nullopt if the polynomial does not split into rational factors.
inline std::optional<std::map<Rat, int>> rational_roots_monic(std::vector<Rat> c) {
    std::map<Rat, int> roots;
    auto deflate = [&](const Rat& root) {
        // synthetic division of t^n + ... by (t - root); c becomes the new tail
        const size_t n = c.size();
        std::vector<Rat> q(n, Rat(0));  // q[n-1] = leading 1 of the quotient
        Rat acc(1);
        for (size_t k = n; k-- > 0;) {
            q[k] = acc;
            acc = c[k] + acc * root;
        }
        // acc is the remainder (must be 0); quotient tail is q[0..n-2]
        c.assign(q.begin(), q.end() - 1);
    };
    while (!c.empty()) {
        if (wsuper::is_zero(c[0])) {
            roots[Rat(0)]++;
            deflate(Rat(0));
            continue;
        }
        mpz_class L = 1;
        for (const Rat& x : c) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), x.get_den().get_mpz_t());
        const size_t n = c.size();
        // integer coefficients of L^n p(s/L) = s^n + sum c[k] L^{n-k} s^k
        std::vector<mpz_class> ic(n);
        for (size_t k = 0; k < n; ++k) {
            mpz_class pw = 1;
            for (size_t t = k; t < n; ++t) pw *= L;
            Rat v = c[k] * Rat(pw);
            ic[k] = v.get_num();
        }
        std::map<mpz_class, int> fac;
        detail::factorize(ic[0], fac);
        std::vector<std::pair<mpz_class, int>> fv(fac.begin(), fac.end());
        std::vector<mpz_class> divs;
        detail::divisors_rec(fv, 0, 1, divs, 200000);
        if (divs.size() >= 200000) return std::nullopt;
        bool found = false;
        for (const mpz_class& d0 : divs) {
            for (int sign : {1, -1}) {
                mpz_class s0 = sign * d0;
                mpz_class acc = 1;  // Horner on the monic integer polynomial
                for (size_t k = n; k-- > 0;) acc = acc * s0 + ic[k];
                if (acc != 0) continue;
                Rat root = Rat(s0) / Rat(L);
                root.canonicalize();
                roots[root]++;
                deflate(root);
                found = true;
                break;
            }
            if (found) break;
        }
        if (!found) return std::nullopt;
    }
    return roots;
}

}  // namespace wsuper
