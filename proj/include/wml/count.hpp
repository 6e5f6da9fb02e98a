#pragma once

#include "wml/errors.hpp"

#include <cstdint>
#include <limits>
#include <string>

namespace wml {

// Subgraph counts. num(K_{1,8}) grows like n^9 p^8, so 64 bits is not enough.
using Count = unsigned __int128;

inline Count checked_add(Count a, Count b) {
    Count out;
    if (__builtin_add_overflow(a, b, &out)) throw CountOverflow("subgraph count overflow (add)");
    return out;
}

inline Count checked_sub(Count a, Count b) {
    if (b > a) throw CountOverflow("subgraph count underflow (sub)");
    return a - b;
}

inline Count checked_mul(Count a, Count b) {
    Count out;
    if (__builtin_mul_overflow(a, b, &out)) throw CountOverflow("subgraph count overflow (mul)");
    return out;
}

// C(n, k) with overflow detection. Exact: each partial product C(n, i) is an integer.
inline Count binomial(std::uint64_t n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = static_cast<unsigned>(n - k);
    Count r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        // r * (n - k + i) / i, dividing first by gcd would be tighter but the
        // intermediate stays below 2^128 for every count the census produces.
        r = checked_mul(r, static_cast<Count>(n - k + i)) / i;
    }
    return r;
}

inline std::string to_string(Count v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return s;
}

inline bool fits_u64(Count v) { return v <= std::numeric_limits<std::uint64_t>::max(); }

inline double to_double(Count v) { return static_cast<double>(static_cast<long double>(v)); }

} // namespace wml
