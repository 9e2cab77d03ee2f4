#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "uwo/matrix.hpp"
#include "uwo/partition.hpp"

namespace uwo {

// Basis vector e^i_{k,j}: chain slot k of the length-j chains, depth i (1 <= i <= j).
struct BasisVector {
    int i, j, k;
};

// The standard basis of the nilpotent normal form. Basis positions are 0-based
// and sorted by (i asc, j desc, k asc), which is also ascending grading order.
class BasisLayout {
  public:
    explicit BasisLayout(const NilpotentOrbit& o) : orbit_(o) {
        for (int i = 1; i <= o.r; ++i)
            for (int j = o.r; j >= i; --j)
                for (int k = 1; k <= o.d[static_cast<size_t>(j)]; ++k) order_.push_back({i, j, k});
        for (size_t p = 0; p < order_.size(); ++p)
            pos_[{order_[p].i, order_[p].j, order_[p].k}] = static_cast<int>(p);
    }

    const NilpotentOrbit& orbit() const { return orbit_; }
    int n() const { return static_cast<int>(order_.size()); }
    const BasisVector& at(int pos) const { return order_[static_cast<size_t>(pos)]; }

    int position(int i, int j, int k) const {
        auto it = pos_.find({i, j, k});
        if (it == pos_.end()) throw std::out_of_range("no such basis vector");
        return it->second;
    }

    // Grading of the summand V_j^i.
    long grading(int i, int j) const { return static_cast<long>(i - 1) * (2 * orbit_.r - i + 2) / 2 + orbit_.r - j + 1; }

    // X e^i_{k,j} = e^{i-1}_{k,j} (0 for i = 1); entries are exact 0/1 integers.
    QMatrix standard_matrix() const {
        QMatrix X(n(), n());
        for (int p = 0; p < n(); ++p) {
            const auto& b = at(p);
            if (b.i > 1) X(position(b.i - 1, b.j, b.k), p) = 1;
        }
        return X;
    }

    // Positions spanning Ker(X^k) = sum of V_j^i with i <= min(j,k).
    std::vector<int> kernel_positions(int k) const {
        std::vector<int> out;
        for (int p = 0; p < n(); ++p)
            if (at(p).i <= std::min(at(p).j, k)) out.push_back(p);
        return out;
    }

    // Positions of V_j^i for all j >= i at fixed depth... the kernel-flag Levi block k.
    std::vector<int> kernel_levi_block(int k) const {
        std::vector<int> out;
        for (int p = 0; p < n(); ++p)
            if (at(p).i == k) out.push_back(p);
        return out;
    }

    std::vector<int> summand_positions(int i, int j) const {
        std::vector<int> out;
        for (int k = 1; k <= orbit_.d[static_cast<size_t>(j)]; ++k) out.push_back(position(i, j, k));
        return out;
    }

  private:
    NilpotentOrbit orbit_;
    std::vector<BasisVector> order_;
    std::map<std::tuple<int, int, int>, int> pos_;
};

// Levi decomposition M_X N_X of the centralizer plus the graded spaces used by
// the conjugation solver.
struct CentralizerDecomposition {
    std::vector<int> levi_blocks;  // (d_1, ..., d_r), zeros kept
    long dim_gx = 0;
    long dim_mx = 0;
    long dim_nx = 0;

    // Matrix positions (row = target basis pos, col = source basis pos).
    using Pos = std::pair<int, int>;
    std::vector<Pos> o_positions;  // the affine chart o = o^{>=1} through X

    explicit CentralizerDecomposition(const BasisLayout& L) {
        const auto& o = L.orbit();
        for (int j = 1; j <= o.r; ++j) levi_blocks.push_back(o.d[static_cast<size_t>(j)]);
        for (int j = 1; j <= o.r; ++j) {
            long dj = o.d[static_cast<size_t>(j)];
            dim_mx += dj * dj;
            long ker_j = 0;
            for (int jj = 1; jj <= o.r; ++jj) ker_j += static_cast<long>(std::min(jj, j)) * o.d[static_cast<size_t>(jj)];
            dim_gx += dj * ker_j;
        }
        dim_nx = dim_gx - dim_mx;
        for (int col = 0; col < L.n(); ++col) {
            const auto& src = L.at(col);
            if (src.i <= 1) continue;
            for (int row = 0; row < L.n(); ++row) {
                const auto& dst = L.at(row);
                if (L.grading(src.i - 1, src.j) - L.grading(dst.i, dst.j) >= 1) o_positions.push_back({row, col});
            }
        }
    }
};

// Homs with grading(source) - grading(target) >= t.
inline std::vector<std::pair<int, int>> filtration_positions(const BasisLayout& L, long t) {
    std::vector<std::pair<int, int>> out;
    for (int col = 0; col < L.n(); ++col)
        for (int row = 0; row < L.n(); ++row)
            if (L.grading(L.at(col).i, L.at(col).j) - L.grading(L.at(row).i, L.at(row).j) >= t)
                out.push_back({row, col});
    return out;
}

// Jordan type of a nilpotent rational matrix via the rank sequence of powers.
inline Partition jordan_type(const QMatrix& A) {
    int n = A.rows();
    std::vector<int> ranks;  // rank(A^k), k = 0..
    ranks.push_back(n);
    QMatrix P = A;
    for (int k = 1; k <= n && ranks.back() != 0; ++k) {
        ranks.push_back(P.rank());
        P = P * A;
    }
    if (ranks.back() != 0) throw std::invalid_argument("matrix is not nilpotent");
    // #blocks of size >= k is rank(A^{k-1}) - rank(A^k).
    std::vector<int> geq(ranks.size(), 0);
    for (size_t k = 1; k < ranks.size(); ++k) geq[k] = ranks[k - 1] - ranks[k];
    std::vector<int> parts;
    for (size_t k = 1; k < geq.size(); ++k) {
        int mult = geq[k] - (k + 1 < geq.size() ? geq[k + 1] : 0);
        for (int m = 0; m < mult; ++m) parts.push_back(static_cast<int>(k));
    }
    return Partition(std::move(parts));
}

}  // namespace uwo
