#pragma once

// Generators and brute-force oracles shared by the unit tests. Oracles are
// written the slow, obvious way and never call into the library.

#include "sumsetlab/randomsum.hpp"
#include "sumsetlab/setcore.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace testing {

using sumsetlab::CounterRng;

class Gen {
public:
    explicit Gen(std::uint64_t stream, std::uint64_t seed = 2024) : rng_(seed, stream) {}

    std::int64_t range(std::int64_t lo, std::int64_t hi) // [lo, hi]
    {
        return lo + static_cast<std::int64_t>(rng_.next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool coin() { return rng_.next() & 1U; }
    double unit() { return static_cast<double>(rng_.next() >> 11) * 0x1.0p-53; }

    std::vector<std::int64_t> subset(std::int64_t lo, std::int64_t hi, int per64)
    {
        std::vector<std::int64_t> v;
        for (auto x = lo; x <= hi; ++x)
            if (static_cast<int>(rng_.next() % 64) < per64) v.push_back(x);
        return v;
    }

    std::vector<std::int64_t> scattered(int count, std::int64_t lo, std::int64_t hi)
    {
        std::vector<std::int64_t> v;
        for (int i = 0; i < count; ++i) v.push_back(range(lo, hi));
        return v;
    }

private:
    CounterRng rng_;
};

inline std::vector<std::int64_t> uniq(std::vector<std::int64_t> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline std::int64_t mod(std::int64_t x, std::int64_t n)
{
    return ((x % n) + n) % n;
}

inline std::map<std::int64_t, std::int64_t> brute_conv(const std::vector<std::int64_t>& a,
                                                       const std::vector<std::int64_t>& b,
                                                       std::int64_t n = 0)
{
    std::map<std::int64_t, std::int64_t> m;
    for (auto x : uniq(a))
        for (auto y : uniq(b)) ++m[n ? mod(x + y, n) : x + y];
    return m;
}

inline std::int64_t brute_truncated(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                    std::int64_t t, std::int64_t n = 0)
{
    std::int64_t s = 0;
    for (const auto& [x, c] : brute_conv(a, b, n)) s += std::min(c, t);
    return s;
}

inline std::set<std::int64_t> brute_sumset(const std::vector<std::int64_t>& a,
                                           const std::vector<std::int64_t>& b, std::int64_t n = 0)
{
    std::set<std::int64_t> s;
    for (auto x : a)
        for (auto y : b) s.insert(n ? mod(x + y, n) : x + y);
    return s;
}

inline bool brute_is_ap(std::vector<std::int64_t> v)
{
    v = uniq(v);
    for (std::size_t i = 2; i < v.size(); ++i)
        if (v[i] - v[i - 1] != v[1] - v[0]) return false;
    return true;
}

// Misses of A+A in [1, M+1] for A given as membership of 1..M.
inline int brute_misses(const std::vector<bool>& in)
{
    const int m = static_cast<int>(in.size());
    int misses = 0;
    for (int s = 1; s <= m + 1; ++s) {
        bool hit = false;
        for (int u = 1; u < s; ++u)
            if (u <= m && s - u <= m && in[static_cast<std::size_t>(u - 1)] && in[static_cast<std::size_t>(s - u - 1)])
                hit = true;
        misses += hit ? 0 : 1;
    }
    return misses;
}

} // namespace testing
