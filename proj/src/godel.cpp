#include "fotpi/godel.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <optional>

namespace fotpi {

Int godel_beta(const Int& b, const Int& c, const Int& i) { return b % (c * (i + 1) + 1); }

Int cantor_pair(const Int& b, const Int& c) { return (b + c) * (b + c + 1) / 2 + c; }

std::pair<Int, Int> cantor_unpair(const Int& r) {
    // largest s with s(s+1)/2 <= r
    Int arg = 8 * r + 1;
    Int s = boost::multiprecision::sqrt(arg);
    s = (s - 1) / 2;
    while (s * (s + 1) / 2 > r) --s;
    while ((s + 1) * (s + 2) / 2 <= r) ++s;
    Int c = r - s * (s + 1) / 2;
    return {s - c, c};
}

namespace {

// mod inverse of a modulo m (m >= 1), or empty when gcd(a,m) != 1
std::optional<Int> mod_inverse(Int a, const Int& m) {
    if (m == 1) return Int(0);
    a %= m;
    if (a < 0) a += m;
    Int old_r = a, r = m, old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) return std::nullopt;
    old_s %= m;
    if (old_s < 0) old_s += m;
    return old_s;
}

// Minimal nonnegative b with b = t_j mod m_j for all j, by iterative CRT over
// possibly non-coprime moduli. Empty when inconsistent or when the partial
// residue exceeds the cap (residues only grow as constraints merge).
std::optional<Int> crt_minimal(const std::vector<Int>& targets, const std::vector<Int>& moduli,
                               const Int& cap) {
    Int r = 0, m = 1;
    for (size_t j = 0; j < targets.size(); ++j) {
        const Int& mj = moduli[j];
        const Int& tj = targets[j];
        Int g = boost::multiprecision::gcd(m, mj);
        if ((tj - r) % g != 0) return std::nullopt;
        // solve r + m*k == tj (mod mj):  k = (tj-r)/g * inv(m/g) mod (mj/g)
        Int m2 = mj / g;
        auto inv = mod_inverse(m / g, m2);
        if (!inv) return std::nullopt;
        Int k = (tj - r) / g % m2 * *inv % m2;
        if (k < 0) k += m2;
        r += m * k;
        m = m / g * mj;
        r %= m;
        if (r < 0) r += m;
        if (cap >= 0 && r > cap) return std::nullopt;
    }
    return r;
}

// Minimal b <= cap for a given c, or empty when no such b fits.
std::optional<Int> min_b_for(const std::vector<Int>& seq, const Int& c, const Int& cap) {
    Int n = static_cast<Int>(seq.size());
    std::vector<Int> targets{n}, moduli{c + 1};
    if (n >= c + 1) return std::nullopt;  // need n < c+1 so that b mod (c+1) = n
    for (size_t i = 0; i < seq.size(); ++i) {
        Int m = c * (Int(i) + 2) + 1;  // modulus for index i+1
        if (seq[i] >= m) return std::nullopt;
        targets.push_back(seq[i]);
        moduli.push_back(m);
    }
    return crt_minimal(targets, moduli, cap);
}

// Fixed-width fast path for the minimality scan; sequence entries and the
// scan diagonal stay far below the 128-bit range for the sizes this library
// touches.
using i128 = unsigned __int128;

i128 gcd128(i128 a, i128 b) {
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// inverse of a mod m, or 0 when not invertible (m > 1 assumed)
i128 inv128(i128 a, i128 m) {
    if (m == 1) return 0;
    __int128 old_r = static_cast<__int128>(a % m), r = static_cast<__int128>(m);
    __int128 old_s = 1, s = 0;
    while (r != 0) {
        __int128 q = old_r / r;
        __int128 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) return 0;
    old_s %= static_cast<__int128>(m);
    if (old_s < 0) old_s += static_cast<__int128>(m);
    return static_cast<i128>(old_s);
}

// minimal residue for the beta constraints at this c, capped; ~0 marks "none"
std::optional<i128> min_b_small(const std::vector<i128>& seq, i128 c, i128 cap, bool capped) {
    i128 n = seq.size();
    if (n >= c + 1) return std::nullopt;
    i128 r = n % (c + 1), m = c + 1;
    if (capped && r > cap) return std::nullopt;
    for (size_t i = 0; i < seq.size(); ++i) {
        i128 mj = c * (i + 2) + 1;
        if (seq[i] >= mj) return std::nullopt;
        i128 g = gcd128(m, mj);
        i128 tj = seq[i];
        i128 diff = tj >= r % mj ? tj - r % mj : tj + mj - r % mj;
        if (diff % g != 0) return std::nullopt;
        i128 m2 = mj / g;
        // m/g and mj/g are coprime, so the inverse always exists for m2 > 1
        i128 inv = inv128((m / g) % m2, m2);
        i128 k = m2 == 1 ? 0 : diff / g % m2 * inv % m2;
        // m*k can overflow only when it already exceeds any sensible cap
        if (capped && k > 0 && m > (cap / k) + 1) return std::nullopt;
        r += m * k;
        m = m / g * mj;
        if (capped && r > cap) return std::nullopt;
    }
    return r;
}

Int encode_impl(const std::vector<Int>& seq) {
    // fast path covers every realistic input; fall back to exact big integers
    // for out-of-range entries
    bool small = seq.size() <= 8;
    for (const auto& a : seq)
        if (a > 1000000) small = false;
    if (small) {
        std::vector<i128> s128;
        for (const auto& a : seq) s128.push_back(static_cast<i128>(a.convert_to<unsigned long long>()));
        // largest s with s(s+1)/2 <= p
        auto diag = [](i128 p) {
            i128 s = static_cast<i128>(sqrtl(2.0L * static_cast<long double>(p))) + 2;
            while (s * (s + 1) / 2 > p) --s;
            return s;
        };
        std::optional<i128> best;
        i128 s_best = 0;
        i128 c = 0;
        while (true) {
            i128 cap = 0;
            bool capped = false;
            if (best) {
                if (c > s_best) break;
                cap = s_best - c;
                capped = true;
            }
            auto b = min_b_small(s128, c, cap, capped);
            if (b) {
                i128 p = (*b + c) * (*b + c + 1) / 2 + c;
                if (!best || p < *best) {
                    best = p;
                    s_best = diag(p);
                }
            }
            ++c;
            if (!best && c > 4 * (s128.size() + 2) * 1000000)
                throw error("godel_encode: search bound exceeded");
        }
        Int out = 0;
        i128 v = *best;
        Int shift = 1;
        while (v) {
            out += Int(static_cast<unsigned long long>(v & 0xffffffffULL)) * shift;
            shift <<= 32;
            v >>= 32;
        }
        return out;
    }

    std::optional<Int> best;
    Int c = 0;
    // Scan c upward; once a candidate exists, any better one needs b+c below
    // the current diagonal, which bounds the remaining scan. The cap prunes
    // the CRT merge as soon as the minimal residue leaves the diagonal.
    while (true) {
        Int cap = -1;
        if (best) {
            // bound: pair(b,c) >= c(c+1)/2, so c beyond the diagonal cannot win
            if (c * (c + 1) / 2 > *best) break;
            Int s = (boost::multiprecision::sqrt(Int(8 * *best + 1)) - 1) / 2;
            cap = s - c;
            if (cap < 0) break;
        }
        auto b = min_b_for(seq, c, cap);
        if (b) {
            Int p = cantor_pair(*b, c);
            if (!best || p < *best) best = p;
        }
        ++c;
        if (!best && c > 4 * Int(seq.size() + 2) * 1000000)
            throw error("godel_encode: search bound exceeded");  // unreachable in practice
    }
    return *best;
}

}  // namespace

Int godel_encode(const std::vector<Int>& seq) {
    if (seq.empty()) throw error("godel_encode: empty sequence");
    for (const auto& a : seq)
        if (a < 0) throw error("godel_encode: negative entry");
    // the minimality scan is the expensive part; memoize per sequence
    static std::map<std::vector<Int>, Int> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> g(mu);
        auto it = cache.find(seq);
        if (it != cache.end()) return it->second;
    }
    Int r = encode_impl(seq);
    std::lock_guard<std::mutex> g(mu);
    cache.emplace(seq, r);
    return r;
}

std::vector<Int> godel_decode(const Int& r) {
    auto [b, c] = cantor_unpair(r);
    Int n = godel_beta(b, c, 0);
    std::vector<Int> out;
    for (Int i = 1; i <= n; ++i) out.push_back(godel_beta(b, c, i));
    return out;
}

bool decn_holds(const Int& r, const Int& i, const Int& a) {
    auto [b, c] = cantor_unpair(r);
    Int n = godel_beta(b, c, 0);
    return i >= 1 && i <= n && godel_beta(b, c, i) == a;
}

bool dec_holds(const Int& r, const Int& i, const Int& a) {
    if (!decn_holds(r, i, a)) return false;
    auto seq = godel_decode(r);
    if (seq.empty()) return false;
    static std::map<Int, Int> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> g(mu);
        auto it = cache.find(r);
        if (it != cache.end()) return it->second == r;
    }
    Int enc = godel_encode(seq);
    std::lock_guard<std::mutex> g(mu);
    cache.emplace(r, enc);
    return enc == r;
}

}  // namespace fotpi
