#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace uwo {

// Weakly decreasing list of positive integers.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p) : parts(std::move(p)) {
        std::sort(parts.begin(), parts.end(), std::greater<int>());
        for (int x : parts)
            if (x <= 0) throw std::invalid_argument("partition parts must be positive");
    }

    int n() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    int length() const { return static_cast<int>(parts.size()); }
    bool operator==(const Partition& o) const { return parts == o.parts; }
    bool operator<(const Partition& o) const { return parts < o.parts; }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
        return s + ")";
    }
};

inline Partition transpose(const Partition& p) {
    std::vector<int> t;
    if (p.parts.empty()) return Partition{};
    for (int j = 1; j <= p.parts[0]; ++j)
        t.push_back(static_cast<int>(std::count_if(p.parts.begin(), p.parts.end(), [&](int x) { return x >= j; })));
    return Partition(std::move(t));
}

// Componentwise sum of zero-padded block partitions (type A induction).
inline Partition induce_orbit(const std::vector<int>& levi_blocks, const std::vector<Partition>& block_orbits) {
    if (levi_blocks.size() != block_orbits.size())
        throw std::invalid_argument("induce_orbit: one partition per block required");
    int n = 0;
    size_t maxlen = 1;
    for (size_t i = 0; i < levi_blocks.size(); ++i) {
        if (block_orbits[i].n() != levi_blocks[i])
            throw std::invalid_argument("induce_orbit: block orbit size mismatch");
        n += levi_blocks[i];
        maxlen = std::max(maxlen, block_orbits[i].parts.size());
    }
    std::vector<int> sum(maxlen, 0);
    for (const auto& p : block_orbits)
        for (size_t j = 0; j < p.parts.size(); ++j) sum[j] += p.parts[j];
    while (!sum.empty() && sum.back() == 0) sum.pop_back();
    Partition out(std::move(sum));
    if (out.n() != n) throw std::logic_error("induce_orbit: size corruption");
    return out;
}

// Induction of the zero orbits: transpose of the sorted composition.
inline Partition richardson_orbit(const std::vector<int>& composition) {
    std::vector<Partition> zeros;
    zeros.reserve(composition.size());
    for (int b : composition) zeros.emplace_back(std::vector<int>(static_cast<size_t>(b), 1));
    return induce_orbit(composition, zeros);
}

struct NilpotentOrbit {
    Partition partition;
    std::vector<int> d;  // d[j] for 1 <= j <= r, multiplicity of part j; d[0] unused
    int r = 0;           // nilpotency index = largest part
    std::vector<int> J;  // {j : d_j != 0}
    int inv = 0;         // |J|

    explicit NilpotentOrbit(Partition p) : partition(std::move(p)) {
        r = partition.parts.empty() ? 0 : partition.parts[0];
        d.assign(static_cast<size_t>(r) + 1, 0);
        for (int x : partition.parts) d[static_cast<size_t>(x)]++;
        for (int j = 1; j <= r; ++j)
            if (d[static_cast<size_t>(j)] > 0) J.push_back(j);
        inv = static_cast<int>(J.size());
    }

    int n() const { return partition.n(); }

    // n_i = d_i + ... + d_r, the kernel-flag Levi block sizes (weakly decreasing).
    std::vector<int> levi_block_sizes() const {
        std::vector<int> out;
        for (int i = 1; i <= r; ++i) {
            int s = 0;
            for (int j = i; j <= r; ++j) s += d[static_cast<size_t>(j)];
            out.push_back(s);
        }
        return out;
    }

    bool is_simple() const { return inv == r; }
};

inline std::vector<Partition> all_partitions(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rem, int maxpart) {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(rem, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(rem - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

}  // namespace uwo
