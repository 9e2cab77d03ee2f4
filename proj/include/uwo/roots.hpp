#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "uwo/matrix.hpp"
#include "uwo/rational.hpp"

namespace uwo {

using IndexSet = std::vector<int>;  // sorted 0-based basis indices
using AVector = std::vector<Rational>;
using Permutation = std::vector<int>;  // w[i] = image of i

struct LeviSubgroup {
    std::vector<IndexSet> blocks;

    LeviSubgroup() = default;
    explicit LeviSubgroup(std::vector<IndexSet> b) : blocks(std::move(b)) { canonicalize(); }

    void canonicalize() {
        for (auto& b : blocks) std::sort(b.begin(), b.end());
        std::sort(blocks.begin(), blocks.end(), [](const IndexSet& a, const IndexSet& b) { return a[0] < b[0]; });
    }

    int n() const {
        int s = 0;
        for (const auto& b : blocks) s += static_cast<int>(b.size());
        return s;
    }
    int num_blocks() const { return static_cast<int>(blocks.size()); }
    bool operator==(const LeviSubgroup& o) const { return blocks == o.blocks; }
    bool operator<(const LeviSubgroup& o) const { return blocks < o.blocks; }
};

struct ParabolicSubgroup {
    std::vector<IndexSet> blocks;  // ordered

    ParabolicSubgroup() = default;
    explicit ParabolicSubgroup(std::vector<IndexSet> b) : blocks(std::move(b)) {
        for (auto& blk : blocks) std::sort(blk.begin(), blk.end());
    }

    int n() const {
        int s = 0;
        for (const auto& b : blocks) s += static_cast<int>(b.size());
        return s;
    }
    int num_blocks() const { return static_cast<int>(blocks.size()); }
    LeviSubgroup levi() const { return LeviSubgroup(blocks); }
    bool operator==(const ParabolicSubgroup& o) const { return blocks == o.blocks; }
    bool operator<(const ParabolicSubgroup& o) const { return blocks < o.blocks; }

    std::vector<int> block_sizes() const {
        std::vector<int> s;
        for (const auto& b : blocks) s.push_back(static_cast<int>(b.size()));
        return s;
    }

    // block index of basis position i
    int block_of(int i) const {
        for (int t = 0; t < num_blocks(); ++t)
            if (std::binary_search(blocks[t].begin(), blocks[t].end(), i)) return t;
        throw std::out_of_range("index not covered by parabolic");
    }

    bool is_standard() const {
        int expect = 0;
        for (const auto& b : blocks)
            for (int i : b)
                if (i != expect++) return false;
        return true;
    }
};

inline LeviSubgroup full_torus(int n) {
    std::vector<IndexSet> b;
    for (int i = 0; i < n; ++i) b.push_back({i});
    return LeviSubgroup(std::move(b));
}

inline ParabolicSubgroup parabolic_from_sizes(const std::vector<int>& sizes) {
    std::vector<IndexSet> b;
    int at = 0;
    for (int s : sizes) {
        IndexSet blk;
        for (int i = 0; i < s; ++i) blk.push_back(at++);
        b.push_back(std::move(blk));
    }
    return ParabolicSubgroup(std::move(b));
}

// P(M): all orderings of the blocks of M, lexicographic in the block sequences.
inline std::vector<ParabolicSubgroup> enumerate_P(const LeviSubgroup& M) {
    std::vector<int> idx(M.blocks.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<ParabolicSubgroup> out;
    do {
        std::vector<IndexSet> b;
        for (int i : idx) b.push_back(M.blocks[static_cast<size_t>(i)]);
        out.emplace_back(std::move(b));
    } while (std::next_permutation(idx.begin(), idx.end()));
    std::sort(out.begin(), out.end());
    return out;
}

// F(M): ordered coarsenings (ordered set partitions of the block list).
inline std::vector<ParabolicSubgroup> enumerate_F(const LeviSubgroup& M) {
    int s = M.num_blocks();
    std::vector<ParabolicSubgroup> out;
    std::vector<std::vector<int>> groups;
    std::function<void(int)> rec = [&](int next) {
        if (next == s) {
            std::vector<IndexSet> b;
            for (const auto& g : groups) {
                IndexSet u;
                for (int i : g) u.insert(u.end(), M.blocks[static_cast<size_t>(i)].begin(), M.blocks[static_cast<size_t>(i)].end());
                std::sort(u.begin(), u.end());
                b.push_back(std::move(u));
            }
            out.emplace_back(std::move(b));
            return;
        }
        for (size_t gi = 0; gi < groups.size(); ++gi) {
            groups[gi].push_back(next);
            rec(next + 1);
            groups[gi].pop_back();
        }
        // a fresh group can sit at any position in the order
        for (size_t at = 0; at <= groups.size(); ++at) {
            groups.insert(groups.begin() + static_cast<long>(at), {next});
            rec(next + 1);
            groups.erase(groups.begin() + static_cast<long>(at));
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

// L(M): unordered coarsenings.
inline std::vector<LeviSubgroup> enumerate_L(const LeviSubgroup& M) {
    int s = M.num_blocks();
    std::vector<LeviSubgroup> out;
    std::vector<std::vector<int>> groups;
    std::function<void(int)> rec = [&](int next) {
        if (next == s) {
            std::vector<IndexSet> b;
            for (const auto& g : groups) {
                IndexSet u;
                for (int i : g) u.insert(u.end(), M.blocks[static_cast<size_t>(i)].begin(), M.blocks[static_cast<size_t>(i)].end());
                b.push_back(std::move(u));
            }
            out.emplace_back(std::move(b));
            return;
        }
        for (size_t gi = 0; gi < groups.size(); ++gi) {
            groups[gi].push_back(next);
            rec(next + 1);
            groups[gi].pop_back();
        }
        groups.push_back({next});
        rec(next + 1);
        groups.pop_back();
    };
    rec(0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// P contained in Q: Q's ordered blocks are unions of consecutive runs of P's.
inline bool parabolic_contained(const ParabolicSubgroup& P, const ParabolicSubgroup& Q) {
    size_t t = 0;
    for (const auto& qb : Q.blocks) {
        size_t taken = 0;
        IndexSet merged;
        while (taken < qb.size()) {
            if (t >= P.blocks.size()) return false;
            merged.insert(merged.end(), P.blocks[t].begin(), P.blocks[t].end());
            taken += P.blocks[t].size();
            ++t;
        }
        std::sort(merged.begin(), merged.end());
        if (merged != qb) return false;
    }
    return t == P.blocks.size();
}

inline bool levi_contained(const LeviSubgroup& M, const LeviSubgroup& L) {
    for (const auto& mb : M.blocks) {
        bool found = false;
        for (const auto& lb : L.blocks)
            if (std::includes(lb.begin(), lb.end(), mb.begin(), mb.end())) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

// Orderings of L's blocks refining the order of Q (i.e. P^Q(L)).
inline std::vector<ParabolicSubgroup> enumerate_P_in(const LeviSubgroup& L, const ParabolicSubgroup& Q) {
    // assign each L-block to the Q-block containing it
    std::vector<std::vector<IndexSet>> per_q(Q.blocks.size());
    for (const auto& lb : L.blocks) {
        bool placed = false;
        for (size_t t = 0; t < Q.blocks.size(); ++t)
            if (std::includes(Q.blocks[t].begin(), Q.blocks[t].end(), lb.begin(), lb.end())) {
                per_q[t].push_back(lb);
                placed = true;
                break;
            }
        if (!placed) throw std::invalid_argument("L not contained in the Levi of Q");
    }
    std::vector<ParabolicSubgroup> out;
    std::function<void(size_t, std::vector<IndexSet>&)> rec = [&](size_t t, std::vector<IndexSet>& acc) {
        if (t == per_q.size()) {
            out.emplace_back(acc);
            return;
        }
        std::vector<int> idx(per_q[t].size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end());
        do {
            size_t base = acc.size();
            for (int i : idx) acc.push_back(per_q[t][static_cast<size_t>(i)]);
            rec(t + 1, acc);
            acc.resize(base);
        } while (std::next_permutation(idx.begin(), idx.end()));
    };
    std::vector<IndexSet> acc;
    rec(0, acc);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------- a_M vectors ----------

inline Rational inner(const AVector& u, const AVector& v) {
    Rational s = 0;
    for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

inline AVector add(const AVector& u, const AVector& v) {
    AVector out = u;
    for (size_t i = 0; i < u.size(); ++i) out[i] += v[i];
    return out;
}

inline AVector sub(const AVector& u, const AVector& v) {
    AVector out = u;
    for (size_t i = 0; i < u.size(); ++i) out[i] -= v[i];
    return out;
}

inline AVector scale(const AVector& u, const Rational& c) {
    AVector out = u;
    for (auto& x : out) x *= c;
    return out;
}

// Orthogonal projection onto block-constant vectors of the given blocks.
inline AVector project_to_blocks(const AVector& H, const std::vector<IndexSet>& blocks) {
    AVector out(H.size(), Rational(0));
    for (const auto& b : blocks) {
        Rational s = 0;
        for (int i : b) s += H[static_cast<size_t>(i)];
        Rational avg = s / Rational(static_cast<long>(b.size()));
        for (int i : b) out[static_cast<size_t>(i)] = avg;
    }
    return out;
}

inline AVector project_to_levi(const AVector& H, const ParabolicSubgroup& Q) { return project_to_blocks(H, Q.blocks); }

// Projection to a_M^G: subtract the global mean.
inline AVector project_sum_zero(const AVector& H) {
    Rational s = 0;
    for (const auto& x : H) s += x;
    Rational avg = s / Rational(static_cast<long>(H.size()));
    AVector out = H;
    for (auto& x : out) x -= avg;
    return out;
}

// ---------- roots and weights ----------

// Coroot (= root, in the embedded self-dual normalization) at slot t of P:
// 1/|B_t| on B_t and -1/|B_{t+1}| on B_{t+1}.
inline AVector coroot(const ParabolicSubgroup& P, int n, int t) {
    AVector v(static_cast<size_t>(n), Rational(0));
    const auto& a = P.blocks[static_cast<size_t>(t)];
    const auto& b = P.blocks[static_cast<size_t>(t) + 1];
    for (int i : a) v[static_cast<size_t>(i)] = Rational(1, static_cast<long>(a.size()));
    for (int i : b) v[static_cast<size_t>(i)] = Rational(-1, static_cast<long>(b.size()));
    return v;
}

// Slots of Delta_P^Q: consecutive P-blocks lying in the same Q-block.
inline std::vector<int> simple_slots(const ParabolicSubgroup& P, const ParabolicSubgroup& Q) {
    if (!parabolic_contained(P, Q)) throw std::invalid_argument("P not contained in Q");
    std::vector<int> out;
    for (int t = 0; t + 1 < P.num_blocks(); ++t) {
        int qa = -1, qb = -1;
        for (int u = 0; u < Q.num_blocks(); ++u) {
            if (std::includes(Q.blocks[static_cast<size_t>(u)].begin(), Q.blocks[static_cast<size_t>(u)].end(),
                              P.blocks[static_cast<size_t>(t)].begin(), P.blocks[static_cast<size_t>(t)].end()))
                qa = u;
            if (std::includes(Q.blocks[static_cast<size_t>(u)].begin(), Q.blocks[static_cast<size_t>(u)].end(),
                              P.blocks[static_cast<size_t>(t) + 1].begin(), P.blocks[static_cast<size_t>(t) + 1].end()))
                qb = u;
        }
        if (qa == qb) out.push_back(t);
    }
    return out;
}

struct RootData {
    std::vector<AVector> coroots;       // basis of a_{M_P}^{M_Q}
    std::vector<AVector> weights;       // dual basis (as vectors pairing by the inner product)
    Rational covol2;                    // det Gram(coroots); 1 when empty
};

inline RootData root_data(const ParabolicSubgroup& P, const ParabolicSubgroup& Q) {
    int n = P.n();
    RootData rd;
    for (int t : simple_slots(P, Q)) rd.coroots.push_back(coroot(P, n, t));
    int k = static_cast<int>(rd.coroots.size());
    QMatrix gram(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) gram(i, j) = inner(rd.coroots[static_cast<size_t>(i)], rd.coroots[static_cast<size_t>(j)]);
    rd.covol2 = k == 0 ? Rational(1) : gram.det();
    if (k > 0) {
        QMatrix inv = gram.inverse();
        for (int t = 0; t < k; ++t) {
            AVector w(static_cast<size_t>(n), Rational(0));
            for (int u = 0; u < k; ++u) w = add(w, scale(rd.coroots[static_cast<size_t>(u)], inv(u, t)));
            rd.weights.push_back(std::move(w));
        }
    }
    return rd;
}

enum class ConeKind { Tau, TauHat };

// Characteristic function of the open cone; boundary resolves to 0.
inline bool cone_indicator(ConeKind kind, const ParabolicSubgroup& P, const ParabolicSubgroup& Q, const AVector& H) {
    RootData rd = root_data(P, Q);
    const auto& tests = (kind == ConeKind::Tau) ? rd.coroots : rd.weights;
    for (const auto& v : tests)
        if (sgn(inner(v, H)) <= 0) return false;
    return true;
}

// ---------- Weyl group ----------

inline AVector weyl_act(const Permutation& w, const AVector& H) {
    AVector out(H.size());
    for (size_t i = 0; i < H.size(); ++i) out[static_cast<size_t>(w[i])] = H[i];
    return out;
}

// P^w = w^{-1} P w; the block index sets are pulled back through w.
inline ParabolicSubgroup weyl_conjugate(const Permutation& w, const ParabolicSubgroup& P) {
    std::vector<IndexSet> b;
    for (const auto& blk : P.blocks) {
        IndexSet nb;
        for (size_t i = 0; i < w.size(); ++i)
            if (std::binary_search(blk.begin(), blk.end(), w[i])) nb.push_back(static_cast<int>(i));
        b.push_back(std::move(nb));
    }
    return ParabolicSubgroup(std::move(b));
}

inline Permutation compose(const Permutation& a, const Permutation& b) {  // (a o b)(i) = a(b(i))
    Permutation out(b.size());
    for (size_t i = 0; i < b.size(); ++i) out[i] = a[static_cast<size_t>(b[i])];
    return out;
}

inline Permutation invert(const Permutation& w) {
    Permutation out(w.size());
    for (size_t i = 0; i < w.size(); ++i) out[static_cast<size_t>(w[i])] = static_cast<int>(i);
    return out;
}

inline QMatrix permutation_matrix(const Permutation& w) {
    QMatrix m(static_cast<int>(w.size()), static_cast<int>(w.size()));
    for (size_t i = 0; i < w.size(); ++i) m(w[i], static_cast<int>(i)) = 1;  // e_i -> e_{w(i)}
    return m;
}

// Coset representatives of Norm_W(M)/W^M: block bijections matching sizes,
// realized as permutations mapping sorted blocks elementwise.
inline std::vector<Permutation> norm_w_mod_wm(const LeviSubgroup& M) {
    int s = M.num_blocks();
    std::vector<int> idx(static_cast<size_t>(s));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Permutation> out;
    std::vector<int> target = idx;
    std::sort(target.begin(), target.end());
    do {
        bool ok = true;
        for (int i = 0; i < s && ok; ++i)
            ok = M.blocks[static_cast<size_t>(i)].size() == M.blocks[static_cast<size_t>(target[static_cast<size_t>(i)])].size();
        if (!ok) continue;
        Permutation w(static_cast<size_t>(M.n()));
        for (int i = 0; i < s; ++i) {
            const auto& src = M.blocks[static_cast<size_t>(i)];
            const auto& dst = M.blocks[static_cast<size_t>(target[static_cast<size_t>(i)])];
            for (size_t t = 0; t < src.size(); ++t) w[static_cast<size_t>(src[t])] = dst[t];
        }
        out.push_back(std::move(w));
    } while (std::next_permutation(target.begin(), target.end()));
    return out;
}

}  // namespace uwo
