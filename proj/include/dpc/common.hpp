#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dpc {

using i64 = long long;
using u64 = unsigned long long;
using i128 = __int128;

// gcd on absolute values; gcd(0, b) = |b|, gcd(0, 0) = 0.
inline i64 gcd64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { i64 t = a % b; a = b; b = t; }
    return a;
}

inline i128 iabs128(i128 v) { return v < 0 ? -v : v; }

inline std::string to_string_i128(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    if (neg) v = -v;
    std::string s;
    while (v) { s.push_back(char('0' + int(v % 10))); v /= 10; }
    if (neg) s.push_back('-');
    return std::string(s.rbegin(), s.rend());
}

// floor(n^(1/k)) for n >= 0, k >= 1.  Float seed, then exact fix-up.
inline i64 ifloor_root(i64 n, int k) {
    if (n < 0) throw std::invalid_argument("ifloor_root: negative argument");
    if (k == 1 || n <= 1) return n;
    i64 r = (i64)std::pow((double)n, 1.0 / k);
    auto pw = [&](i64 b) -> i128 {
        i128 p = 1;
        for (int i = 0; i < k; i++) {
            p *= b;
            if (p > (i128)4 * n) return p;  // early out, cannot recover
        }
        return p;
    };
    while (r > 0 && pw(r) > n) r--;
    while (pw(r + 1) <= n) r++;
    return r;
}

// |a*b| clamped to cap+1.  Caller guarantees |a| <= cap+1 and |b| <= ~1e18,
// so the single 128-bit product cannot overflow.
inline i128 clamped_mul_abs(i128 a, i64 b, i128 cap) {
    i128 p = iabs128(a) * iabs128((i128)b);
    return p > cap ? cap + 1 : p;
}

// Positive representative of x mod n (n > 0).
inline i64 pmod64(i64 x, i64 n) {
    i64 r = x % n;
    return r < 0 ? r + n : r;
}

// Modular inverse of a mod n via extended Euclid; requires gcd(a, n) = 1.
inline i64 modinv64(i64 a, i64 n) {
    i64 r0 = pmod64(a, n), r1 = n, s0 = 1, s1 = 0;
    while (r1) {
        i64 q = r0 / r1;
        i64 t = r0 - q * r1; r0 = r1; r1 = t;
        t = s0 - q * s1; s0 = s1; s1 = t;
    }
    if (r0 != 1) throw std::invalid_argument("modinv64: not invertible");
    return pmod64(s0, n);
}

}  // namespace dpc
