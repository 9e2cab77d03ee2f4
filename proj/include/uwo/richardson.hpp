#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "uwo/layout.hpp"
#include "uwo/partition.hpp"
#include "uwo/roots.hpp"

namespace uwo {

// eps : {1..r} x J -> {0,1} with column sums j and rows nondecreasing along J.
struct EpsilonMap {
    int r = 0;
    std::vector<int> J;
    std::vector<std::vector<int>> rows;  // rows[k-1][jidx]

    bool operator==(const EpsilonMap& o) const { return r == o.r && J == o.J && rows == o.rows; }
    bool operator<(const EpsilonMap& o) const { return rows < o.rows; }

    int at(int k, int j) const {
        auto it = std::find(J.begin(), J.end(), j);
        if (it == J.end()) throw std::out_of_range("j not in J");
        return rows[static_cast<size_t>(k - 1)][static_cast<size_t>(it - J.begin())];
    }

    bool valid() const {
        for (size_t c = 0; c < J.size(); ++c) {
            int sum = 0;
            for (int k = 0; k < r; ++k) sum += rows[static_cast<size_t>(k)][c];
            if (sum != J[c]) return false;
        }
        for (int k = 0; k < r; ++k)
            for (size_t c = 0; c + 1 < J.size(); ++c)
                if (rows[static_cast<size_t>(k)][c] > rows[static_cast<size_t>(k)][c + 1]) return false;
        return true;
    }
};

// The kernel-flag element: eps_{k,j} = [k <= j].
inline EpsilonMap xi_kernel(const NilpotentOrbit& o) {
    EpsilonMap e;
    e.r = o.r;
    e.J = o.J;
    for (int k = 1; k <= o.r; ++k) {
        std::vector<int> row;
        for (int j : o.J) row.push_back(k <= j ? 1 : 0);
        e.rows.push_back(std::move(row));
    }
    return e;
}

// The image-flag element: eps_{k,j} = [k > r - j].
inline EpsilonMap xi_image(const NilpotentOrbit& o) {
    EpsilonMap e;
    e.r = o.r;
    e.J = o.J;
    for (int k = 1; k <= o.r; ++k) {
        std::vector<int> row;
        for (int j : o.J) row.push_back(k > o.r - j ? 1 : 0);
        e.rows.push_back(std::move(row));
    }
    return e;
}

// Row permutation action sigma(eps)_{k,j} = eps_{sigma^{-1}(k),j}; sigma is a
// 0-based permutation of the r rows.
inline EpsilonMap row_permute(const EpsilonMap& e, const Permutation& sigma) {
    EpsilonMap out = e;
    Permutation inv = invert(sigma);
    for (int k = 0; k < e.r; ++k) out.rows[static_cast<size_t>(k)] = e.rows[static_cast<size_t>(inv[static_cast<size_t>(k)])];
    return out;
}

// All elements of E(X); count is r!/prod (gap sizes)!.
inline std::vector<EpsilonMap> epsilon_set(const NilpotentOrbit& o) {
    // an eps is a chain of subsets S_{j_1} subset ... subset S_{j_s} = {1..r}
    // with |S_j| = j; rows are the indicators of "k in S_j".
    std::vector<EpsilonMap> out;
    std::vector<std::vector<int>> chain;  // chain[c] = sorted members of S_{J[c]}
    std::function<void(size_t)> rec = [&](size_t c) {
        if (c == o.J.size()) {
            EpsilonMap e;
            e.r = o.r;
            e.J = o.J;
            e.rows.assign(static_cast<size_t>(o.r), std::vector<int>(o.J.size(), 0));
            for (size_t cc = 0; cc < o.J.size(); ++cc)
                for (int k : chain[cc]) e.rows[static_cast<size_t>(k)][cc] = 1;
            out.push_back(std::move(e));
            return;
        }
        const std::vector<int>& prev = c == 0 ? std::vector<int>{} : chain[c - 1];
        int need = o.J[c] - static_cast<int>(prev.size());
        std::vector<int> avail;
        for (int k = 0; k < o.r; ++k)
            if (!std::binary_search(prev.begin(), prev.end(), k)) avail.push_back(k);
        std::vector<int> pick(static_cast<size_t>(need));
        std::function<void(int, int)> choose = [&](int from, int got) {
            if (got == need) {
                std::vector<int> s = prev;
                for (int g = 0; g < need; ++g) s.push_back(pick[static_cast<size_t>(g)]);
                std::sort(s.begin(), s.end());
                chain.push_back(std::move(s));
                rec(c + 1);
                chain.pop_back();
                return;
            }
            for (int t = from; t < static_cast<int>(avail.size()); ++t) {
                pick[static_cast<size_t>(got)] = avail[static_cast<size_t>(t)];
                choose(t + 1, got + 1);
            }
        };
        choose(0, 0);
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

// Index sets of the flag E_k(eps), k = 0..r.
inline std::vector<IndexSet> epsilon_flag(const EpsilonMap& e, const BasisLayout& L) {
    const auto& o = L.orbit();
    std::vector<IndexSet> flag;
    flag.push_back({});
    for (int k = 1; k <= e.r; ++k) {
        IndexSet cur;
        for (size_t c = 0; c < e.J.size(); ++c) {
            int j = e.J[c];
            int depth = 0;
            for (int l = 1; l <= k; ++l) depth += e.rows[static_cast<size_t>(l - 1)][c];
            for (int i = 1; i <= depth; ++i)
                for (int m = 1; m <= o.d[static_cast<size_t>(j)]; ++m) cur.push_back(L.position(i, j, m));
        }
        std::sort(cur.begin(), cur.end());
        flag.push_back(std::move(cur));
    }
    return flag;
}

inline ParabolicSubgroup epsilon_to_parabolic(const EpsilonMap& e, const BasisLayout& L) {
    if (!e.valid()) throw std::invalid_argument("invalid epsilon map");
    auto flag = epsilon_flag(e, L);
    std::vector<IndexSet> blocks;
    for (size_t k = 1; k < flag.size(); ++k) {
        IndexSet diff;
        std::set_difference(flag[k].begin(), flag[k].end(), flag[k - 1].begin(), flag[k - 1].end(),
                            std::back_inserter(diff));
        if (!diff.empty()) blocks.push_back(std::move(diff));
    }
    return ParabolicSubgroup(std::move(blocks));
}

inline std::vector<ParabolicSubgroup> richardson_set(const NilpotentOrbit& o, const BasisLayout& L) {
    std::vector<ParabolicSubgroup> out;
    for (const auto& e : epsilon_set(o)) out.push_back(epsilon_to_parabolic(e, L));
    return out;
}

// The kernel-flag Levi M attached to X (blocks B_k = sum_{j >= k} V_j^k).
inline LeviSubgroup kernel_levi(const BasisLayout& L) {
    std::vector<IndexSet> blocks;
    for (int k = 1; k <= L.orbit().r; ++k) {
        auto b = L.kernel_levi_block(k);
        if (!b.empty()) blocks.push_back(b);
    }
    return LeviSubgroup(std::move(blocks));
}

// Minimal-length representative of W^{M_P} w: within each P-block the
// preimages are taken in increasing order.
inline Permutation minimize_in_coset(const Permutation& w, const ParabolicSubgroup& P) {
    Permutation out(w.size());
    for (const auto& blk : P.blocks) {
        IndexSet pre;
        for (size_t i = 0; i < w.size(); ++i)
            if (std::binary_search(blk.begin(), blk.end(), w[i])) pre.push_back(static_cast<int>(i));
        std::sort(pre.begin(), pre.end());
        for (size_t t = 0; t < pre.size(); ++t) out[static_cast<size_t>(pre[t])] = blk[t];
    }
    return out;
}

struct RichardsonImage {
    ParabolicSubgroup image;  // element of R(X) (resp. LS(X))
    Permutation w;            // w^{-1} P w = image, minimal length mod W^{M_P}
    EpsilonMap eps;           // for P in P(M)
};

// sigma[k] = kernel-depth (1-based) of the M-block at slot k of P.
inline std::vector<int> ordering_of(const ParabolicSubgroup& P, const BasisLayout& L) {
    std::vector<int> sigma;
    for (const auto& blk : P.blocks) {
        bool found = false;
        for (int k = 1; k <= L.orbit().r && !found; ++k)
            if (L.kernel_levi_block(k) == blk) {
                sigma.push_back(k);
                found = true;
            }
        if (!found) throw std::invalid_argument("parabolic is not an ordering of the kernel Levi blocks");
    }
    return sigma;
}

// The unique element of R(X) conjugate to P in P(M), with a Weyl conjugator.
inline RichardsonImage richardson_map(const ParabolicSubgroup& P, const BasisLayout& L) {
    const auto& o = L.orbit();
    auto sigma = ordering_of(P, L);
    EpsilonMap e;
    e.r = o.r;
    e.J = o.J;
    for (int k = 1; k <= o.r; ++k) {
        std::vector<int> row;
        for (int j : o.J) row.push_back(sigma[static_cast<size_t>(k - 1)] <= j ? 1 : 0);
        e.rows.push_back(std::move(row));
    }
    // w maps flag E(eps) onto the flag of P slot by slot, chain by chain.
    Permutation w(static_cast<size_t>(L.n()));
    std::vector<int> depth(o.J.size(), 0);
    for (int k = 1; k <= o.r; ++k) {
        for (size_t c = 0; c < o.J.size(); ++c) {
            int j = o.J[c];
            if (sigma[static_cast<size_t>(k - 1)] > j) continue;
            ++depth[c];
            for (int m = 1; m <= o.d[static_cast<size_t>(j)]; ++m)
                w[static_cast<size_t>(L.position(depth[c], j, m))] =
                    L.position(sigma[static_cast<size_t>(k - 1)], j, m);
        }
    }
    RichardsonImage out;
    out.eps = e;
    out.image = epsilon_to_parabolic(e, L);
    out.w = minimize_in_coset(w, P);
    return out;
}

// Image of Q in F(M) inside LS(X), via any P in P(M) below Q.
inline RichardsonImage ls_map(const ParabolicSubgroup& Q, const BasisLayout& L) {
    LeviSubgroup M = kernel_levi(L);
    // order M's blocks to refine Q
    std::vector<IndexSet> refined;
    for (const auto& qb : Q.blocks)
        for (const auto& mb : M.blocks)
            if (std::includes(qb.begin(), qb.end(), mb.begin(), mb.end())) refined.push_back(mb);
    ParabolicSubgroup P(std::move(refined));
    if (!parabolic_contained(P, Q)) throw std::invalid_argument("Q is not in F(M)");
    RichardsonImage fine = richardson_map(P, L);
    RichardsonImage out;
    out.eps = fine.eps;
    out.w = minimize_in_coset(fine.w, Q);
    out.image = weyl_conjugate(out.w, Q);
    return out;
}

struct AdjacencyData {
    ParabolicSubgroup common_q;  // minimal parabolic containing both
    EpsilonMap eps;              // normalized so rows k,k+1 ascend
    int slot = 0;                // 0-based merged slot k
    bool swapped = false;        // true if the normalized naming reverses (P1,P2)
    std::vector<int> J1, J2;
    int r1 = 0, r2 = 0;
    IndexSet W1, W2, W3;    // basis index sets of the three graded pieces
    AVector coroot_p1;      // the element of Delta_{P1}^vee cap (-Delta_{P2}^vee)
};

// Adjacent pair data for P1, P2 in P(M) differing at one pair of consecutive slots.
inline AdjacencyData adjacency(const ParabolicSubgroup& P1, const ParabolicSubgroup& P2, const BasisLayout& L) {
    const auto& o = L.orbit();
    auto s1 = ordering_of(P1, L), s2 = ordering_of(P2, L);
    int slot = -1;
    for (size_t k = 0; k < s1.size(); ++k)
        if (s1[k] != s2[k]) {
            slot = static_cast<int>(k);
            break;
        }
    if (slot < 0 || static_cast<size_t>(slot) + 1 >= s1.size() || s1[static_cast<size_t>(slot)] != s2[static_cast<size_t>(slot) + 1] ||
        s1[static_cast<size_t>(slot) + 1] != s2[static_cast<size_t>(slot)])
        throw std::invalid_argument("parabolics are not adjacent");
    for (size_t k = static_cast<size_t>(slot) + 2; k < s1.size(); ++k)
        if (s1[k] != s2[k]) throw std::invalid_argument("parabolics are not adjacent");

    AdjacencyData a;
    a.slot = slot;
    // normalized sigma has sigma(k) > sigma(k+1) at the merged slot, making the
    // epsilon rows ascend there
    a.swapped = s1[static_cast<size_t>(slot)] < s1[static_cast<size_t>(slot) + 1];
    const auto& sig = a.swapped ? s2 : s1;
    EpsilonMap e;
    e.r = o.r;
    e.J = o.J;
    for (int k = 1; k <= o.r; ++k) {
        std::vector<int> row;
        for (int j : o.J) row.push_back(sig[static_cast<size_t>(k - 1)] <= j ? 1 : 0);
        e.rows.push_back(std::move(row));
    }
    a.eps = e;
    for (size_t c = 0; c < e.J.size(); ++c) {
        int ek = e.rows[static_cast<size_t>(slot)][c], ek1 = e.rows[static_cast<size_t>(slot) + 1][c];
        if (ek == 1 && ek1 == 1) a.J1.push_back(e.J[c]);
        if (ek == 0 && ek1 == 1) a.J2.push_back(e.J[c]);
    }
    for (int j : a.J1) a.r1 += o.d[static_cast<size_t>(j)];
    for (int j : a.J2) a.r2 += o.d[static_cast<size_t>(j)];

    auto flag = epsilon_flag(e, L);
    Permutation tau(static_cast<size_t>(o.r));
    for (int k = 0; k < o.r; ++k) tau[static_cast<size_t>(k)] = k;
    std::swap(tau[static_cast<size_t>(slot)], tau[static_cast<size_t>(slot) + 1]);
    auto flag_tau = epsilon_flag(row_permute(e, tau), L);
    auto diff = [](const IndexSet& big, const IndexSet& small) {
        IndexSet d;
        std::set_difference(big.begin(), big.end(), small.begin(), small.end(), std::back_inserter(d));
        return d;
    };
    a.W1 = diff(flag[static_cast<size_t>(slot) + 1], flag[static_cast<size_t>(slot)]);
    a.W2 = diff(flag_tau[static_cast<size_t>(slot) + 1], flag[static_cast<size_t>(slot) + 1]);
    a.W3 = diff(flag[static_cast<size_t>(slot) + 2], flag_tau[static_cast<size_t>(slot) + 1]);

    std::vector<IndexSet> qb;
    for (int t = 0; t < P1.num_blocks(); ++t) {
        if (t == slot) {
            IndexSet merged = P1.blocks[static_cast<size_t>(t)];
            merged.insert(merged.end(), P1.blocks[static_cast<size_t>(t) + 1].begin(), P1.blocks[static_cast<size_t>(t) + 1].end());
            std::sort(merged.begin(), merged.end());
            qb.push_back(std::move(merged));
            ++t;
        } else {
            qb.push_back(P1.blocks[static_cast<size_t>(t)]);
        }
    }
    a.common_q = ParabolicSubgroup(std::move(qb));
    a.coroot_p1 = coroot(P1, L.n(), slot);
    return a;
}

}  // namespace uwo
