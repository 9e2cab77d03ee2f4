#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "uwo/matrix.hpp"
#include "uwo/richardson.hpp"
#include "uwo/roots.hpp"

namespace uwo {

struct Place {
    enum class Kind { Real, Complex, Padic };
    Kind kind = Kind::Padic;
    long q = 2;  // prime, Padic only

    static Place real() { return {Kind::Real, 0}; }
    static Place complex() { return {Kind::Complex, 0}; }
    static Place padic(long q) { return {Kind::Padic, q}; }
    bool archimedean() const { return kind != Kind::Padic; }
    bool operator<(const Place& o) const { return kind != o.kind ? kind < o.kind : q < o.q; }
    bool operator==(const Place& o) const { return kind == o.kind && q == o.q; }
};

// H values at a p-adic place: exact rational coordinates in units of log q.
struct PadicIwasawa {
    AVector h;   // length n, block constant; value c means c*log(q)
    QMatrix k;   // residue witness in GL(n, Z_q)
    QMatrix p;   // block upper triangular part, g = p*k
};

struct ArchIwasawa {
    std::vector<double> h;  // plain logs
    Matrix<double> k;       // orthogonal residue
};

inline long val_q(const Rational& r, long q) {
    auto v = valuation(r, q);
    if (!v) throw std::domain_error("valuation of zero");
    return *v;
}

inline bool in_maximal_compact(const QMatrix& g, long q) {
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            if (!is_zero(g(i, j)) && val_q(g(i, j), q) < 0) return false;
    Rational d = g.det();
    return !is_zero(d) && val_q(d, q) == 0;
}

// Exact Iwasawa decomposition g = p k at a p-adic place: fraction-free column
// elimination with minimal-valuation pivoting, processing blocks bottom up.
inline PadicIwasawa padic_iwasawa(const QMatrix& g, const ParabolicSubgroup& P, long q) {
    int n = g.rows();
    if (is_zero(g.det())) throw std::domain_error("iwasawa of singular matrix");
    QMatrix A = g;
    QMatrix B = QMatrix::identity(n);  // A = g * B throughout
    std::vector<bool> active(static_cast<size_t>(n), true);
    std::vector<int> pivcol(static_cast<size_t>(n), -1);
    std::vector<long> pivval(static_cast<size_t>(n), 0);
    for (int t = P.num_blocks() - 1; t >= 0; --t) {
        for (int i : P.blocks[static_cast<size_t>(t)]) {
            int best = -1;
            long bestv = 0;
            for (int j = 0; j < n; ++j) {
                if (!active[static_cast<size_t>(j)] || is_zero(A(i, j))) continue;
                long v = val_q(A(i, j), q);
                if (best < 0 || v < bestv) {
                    best = j;
                    bestv = v;
                }
            }
            if (best < 0) throw std::domain_error("iwasawa elimination failed (singular)");
            for (int j = 0; j < n; ++j) {
                if (j == best || !active[static_cast<size_t>(j)] || is_zero(A(i, j))) continue;
                Rational c = A(i, j) / A(i, best);
                for (int r = 0; r < n; ++r) A(r, j) -= c * A(r, best);
                for (int r = 0; r < n; ++r) B(r, j) -= c * B(r, best);
            }
            pivcol[static_cast<size_t>(i)] = best;
            pivval[static_cast<size_t>(i)] = bestv;
            active[static_cast<size_t>(best)] = false;
        }
    }
    // permute pivot column of row i into position i
    QMatrix p(n, n), kinv(n, n);
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < n; ++r) {
            p(r, i) = A(r, pivcol[static_cast<size_t>(i)]);
            kinv(r, i) = B(r, pivcol[static_cast<size_t>(i)]);
        }
    PadicIwasawa out;
    out.p = p;
    out.k = kinv.inverse();
    out.h.assign(static_cast<size_t>(n), Rational(0));
    for (const auto& blk : P.blocks) {
        long s = 0;
        for (int i : blk) s += pivval[static_cast<size_t>(i)];
        Rational c(-s, static_cast<long>(blk.size()));
        c.canonicalize();
        for (int i : blk) out.h[static_cast<size_t>(i)] = c;
    }
    return out;
}

// Archimedean Iwasawa via row orthonormalization from the bottom block up.
inline ArchIwasawa arch_iwasawa(const QMatrix& g, const ParabolicSubgroup& P, const Place& v) {
    int n = g.rows();
    Matrix<double> G = to_double(g);
    Matrix<double> K(n, n);
    std::vector<double> rdiag(static_cast<size_t>(n), 0.0);
    std::vector<int> processed;
    for (int t = P.num_blocks() - 1; t >= 0; --t) {
        for (int i : P.blocks[static_cast<size_t>(t)]) {
            std::vector<double> row(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j) row[static_cast<size_t>(j)] = G(i, j);
            for (int pr : processed) {
                double dot = 0;
                for (int j = 0; j < n; ++j) dot += row[static_cast<size_t>(j)] * K(pr, j);
                for (int j = 0; j < n; ++j) row[static_cast<size_t>(j)] -= dot * K(pr, j);
            }
            double norm2 = 0;
            for (double x : row) norm2 += x * x;
            double r = std::sqrt(norm2);
            if (!(r > 0)) throw std::domain_error("iwasawa of singular matrix");
            for (int j = 0; j < n; ++j) K(i, j) = row[static_cast<size_t>(j)] / r;
            rdiag[static_cast<size_t>(i)] = r;
            processed.push_back(i);
        }
    }
    double scale = (v.kind == Place::Kind::Complex) ? 2.0 : 1.0;
    ArchIwasawa out;
    out.k = K;
    out.h.assign(static_cast<size_t>(n), 0.0);
    for (const auto& blk : P.blocks) {
        double s = 0;
        for (int i : blk) s += scale * std::log(rdiag[static_cast<size_t>(i)]);
        double c = s / static_cast<double>(blk.size());
        for (int i : blk) out.h[static_cast<size_t>(i)] = c;
    }
    return out;
}

// R_P(g) = H_P(w_P g) at a p-adic place, exact in log q units.
inline AVector r_value_padic(const ParabolicSubgroup& P, const QMatrix& g, long q, const BasisLayout& L) {
    RichardsonImage ri = (P.levi() == kernel_levi(L)) ? richardson_map(P, L) : ls_map(P, L);
    QMatrix wg = permutation_matrix(ri.w) * g;
    return padic_iwasawa(wg, P, q).h;
}

inline std::vector<double> r_value_arch(const ParabolicSubgroup& P, const QMatrix& g, const Place& v, const BasisLayout& L) {
    RichardsonImage ri = (P.levi() == kernel_levi(L)) ? richardson_map(P, L) : ls_map(P, L);
    QMatrix wg = permutation_matrix(ri.w) * g;
    return arch_iwasawa(wg, P, v).h;
}

// Primes where a rational matrix can fail to be in the maximal compact.
inline std::vector<long> support_primes(const QMatrix& g) {
    Integer acc = 1;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            if (!is_zero(g(i, j))) acc *= g(i, j).get_den();
    Rational d = g.det();
    acc *= d.get_num();
    acc *= d.get_den();
    std::vector<long> primes;
    Integer m = abs(acc);
    for (long p = 2; Integer(p) * p <= m; p == 2 ? p = 3 : p += 2) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
            primes.push_back(p);
            while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p)))
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p));
        }
    }
    if (m > 1) {
        if (!m.fits_slong_p()) throw std::domain_error("support prime too large to factor");
        primes.push_back(m.get_si());
    }
    return primes;
}

// The family (-R_P(g))_{P in P(M)} at one p-adic place, exact in log q units.
struct OrthogonalFamilyExact {
    std::vector<ParabolicSubgroup> parabolics;  // enumerate_P order
    std::vector<AVector> points;                // -R_P(g), same order
    long q = 0;                                 // log q units
};

inline OrthogonalFamilyExact r_family_padic(const QMatrix& g, long q, const BasisLayout& L) {
    OrthogonalFamilyExact fam;
    fam.q = q;
    fam.parabolics = enumerate_P(kernel_levi(L));
    for (const auto& P : fam.parabolics) fam.points.push_back(scale(r_value_padic(P, g, q, L), Rational(-1)));
    return fam;
}

// H-family (-H_P(g)), positive orthogonal, for an arbitrary Levi M.
inline OrthogonalFamilyExact h_family_padic(const QMatrix& g, long q, const LeviSubgroup& M) {
    OrthogonalFamilyExact fam;
    fam.q = q;
    fam.parabolics = enumerate_P(M);
    for (const auto& P : fam.parabolics) fam.points.push_back(scale(padic_iwasawa(g, P, q).h, Rational(-1)));
    return fam;
}

// Exact conjugator g with g^{-1} X g = Y; errors when Y is not in the orbit.
inline QMatrix conjugator_from_x(const QMatrix& Y, const BasisLayout& L) {
    int n = L.n();
    QMatrix X = L.standard_matrix();
    if (jordan_type(Y).parts != L.orbit().partition.parts) throw std::domain_error("matrix is not in the orbit");
    // solve X A - A Y = 0
    QMatrix sys(n * n, n * n);
    auto id = [n](int r, int c) { return r * n + c; };
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            for (int m = 0; m < n; ++m) {
                sys(id(r, c), id(m, c)) += X(r, m);
                sys(id(r, c), id(r, m)) -= Y(m, c);
            }
        }
    auto basis = sys.kernel();
    if (basis.empty()) throw std::domain_error("matrix is not in the orbit");
    auto assemble = [&](const std::vector<long>& coef) {
        QMatrix A(n, n);
        for (size_t b = 0; b < basis.size(); ++b)
            if (coef[b] != 0)
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) A(r, c) += Rational(coef[b]) * basis[b][static_cast<size_t>(id(r, c))];
        return A;
    };
    // deterministic search for an invertible combination
    std::vector<long> coef(basis.size(), 0);
    for (size_t b = 0; b < basis.size(); ++b) {
        coef.assign(basis.size(), 0);
        coef[b] = 1;
        QMatrix A = assemble(coef);
        if (!is_zero(A.det())) return A;
    }
    unsigned long long state = 0x9e3779b97f4a7c15ull;
    for (int trial = 0; trial < 4096; ++trial) {
        for (size_t b = 0; b < basis.size(); ++b) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            coef[b] = static_cast<long>((state >> 33) % 7) - 3;
        }
        QMatrix A = assemble(coef);
        if (!is_zero(A.det())) return A;
    }
    throw std::domain_error("no invertible conjugator found");
}

// Ordered flag blocks of the intersection P~1 cap P~2 for an adjacent pair.
inline ParabolicSubgroup refined_pair_parabolic(const AdjacencyData& a, const BasisLayout& L) {
    auto flag = epsilon_flag(a.eps, L);
    std::vector<IndexSet> blocks;
    auto push_diff = [&](const IndexSet& big, const IndexSet& small) {
        IndexSet d;
        std::set_difference(big.begin(), big.end(), small.begin(), small.end(), std::back_inserter(d));
        if (!d.empty()) blocks.push_back(std::move(d));
    };
    for (int k = 0; k < a.slot; ++k) push_diff(flag[static_cast<size_t>(k) + 1], flag[static_cast<size_t>(k)]);
    if (!a.W1.empty()) blocks.push_back(a.W1);
    if (!a.W2.empty()) blocks.push_back(a.W2);
    if (!a.W3.empty()) blocks.push_back(a.W3);
    for (int k = a.slot + 3; k <= L.orbit().r; ++k) push_diff(flag[static_cast<size_t>(k)], flag[static_cast<size_t>(k) - 1]);
    return ParabolicSubgroup(std::move(blocks));
}

// log|det(U_{1,3})|_v for Y in the rational orbit of X: the coefficient of the
// coroot in -R_{P1}(g) + R_{P2}(g) for any g with g^{-1} X g = Y.
// Returns the rational coefficient of log q (p-adic) or a float (archimedean).
struct LogValue {
    bool exact = false;
    Rational coeff;  // of log q
    double value = 0.0;
};

inline LogValue u13_logdet(const QMatrix& Y, const ParabolicSubgroup& P1, const ParabolicSubgroup& P2, const Place& v,
                           const BasisLayout& L) {
    AdjacencyData a = adjacency(P1, P2, L);
    ParabolicSubgroup ptilde = refined_pair_parabolic(a, L);
    QMatrix g = conjugator_from_x(Y, L);
    QMatrix U(0, 0);
    if (v.kind == Place::Kind::Padic) {
        auto iw = padic_iwasawa(g, ptilde, v.q);
        U = iw.k * Y * iw.k.inverse();
    } else {
        // archimedean: use the exact rational k only when it exists; here we
        // work with the float residue and lift the minor numerically
        auto iw = arch_iwasawa(g, ptilde, v);
        Matrix<double> Yd = to_double(Y);
        Matrix<double> Ud = iw.k * Yd * iw.k.transposed();
        int r1 = static_cast<int>(a.W1.size());
        Matrix<double> minor(r1, r1);
        for (int i = 0; i < r1; ++i)
            for (int j = 0; j < r1; ++j) minor(i, j) = Ud(a.W1[static_cast<size_t>(i)], a.W3[static_cast<size_t>(j)]);
        LogValue out;
        out.exact = false;
        double scale = (v.kind == Place::Kind::Complex) ? 2.0 : 1.0;
        out.value = scale * std::log(std::fabs(minor.det()));
        return out;
    }
    int r1 = static_cast<int>(a.W1.size());
    QMatrix minor(r1, r1);
    for (int i = 0; i < r1; ++i)
        for (int j = 0; j < r1; ++j) minor(i, j) = U(a.W1[static_cast<size_t>(i)], a.W3[static_cast<size_t>(j)]);
    Rational det = minor.det();
    if (is_zero(det)) throw std::domain_error("degenerate U_{1,3} block");
    LogValue out;
    out.exact = true;
    out.coeff = Rational(-val_q(det, v.q));
    out.value = to_double(out.coeff) * std::log(static_cast<double>(v.q));
    return out;
}

// ---------- the graded conjugation solver ----------

// Solves n^{-1} X n = Y for n in the unipotent radical N of the grading
// parabolic R, for Y with Y - X supported on the chart o. Exact; unique mod N_X.
inline QMatrix solve_in_n(const QMatrix& Y, const BasisLayout& L) {
    int n = L.n();
    const QMatrix X = L.standard_matrix();
    CentralizerDecomposition cd(L);
    QMatrix D = Y - X;
    {
        std::set<std::pair<int, int>> allowed(cd.o_positions.begin(), cd.o_positions.end());
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (!is_zero(D(r, c)) && !allowed.count({r, c}))
                    throw std::invalid_argument("Y - X not supported on the orbit chart");
    }
    auto grade_of = [&](int row, int col) {
        const auto& src = L.at(col);
        const auto& dst = L.at(row);
        return L.grading(src.i - 1, src.j) - L.grading(dst.i, dst.j);
    };
    long tmax = 0;
    for (auto [r, c] : cd.o_positions) tmax = std::max(tmax, grade_of(r, c));

    QMatrix total = QMatrix::identity(n);  // accumulates n with n^{-1} X n = X + D_orig
    for (long t = 1; t <= tmax; ++t) {
        // graded step: find u in n^{>=t} with (1+u)^{-1}X(1+u) - X = D mod o^{>=t+1}
        QMatrix u(n, n);
        QMatrix rem = D;  // components of grade exactly t still to be matched
        bool progress = true;
        while (progress) {
            progress = false;
            // lowest target grading first
            int pick_row = -1, pick_col = -1;
            long best_p = 0;
            for (auto [r, c] : cd.o_positions) {
                if (is_zero(rem(r, c)) || grade_of(r, c) != t) continue;
                long pdst = L.grading(L.at(r).i, L.at(r).j);
                if (pick_row < 0 || pdst < best_p) {
                    pick_row = r;
                    pick_col = c;
                    best_p = pdst;
                }
            }
            if (pick_row < 0) break;
            // clear every grade-t component with this target summand
            const auto dst = L.at(pick_row);
            const auto srcv = L.at(pick_col);
            for (int m1 = 1; m1 <= L.orbit().d[static_cast<size_t>(srcv.j)]; ++m1) {
                for (int m2 = 1; m2 <= L.orbit().d[static_cast<size_t>(dst.j)]; ++m2) {
                    int row = L.position(dst.i, dst.j, m2);
                    int col = L.position(srcv.i, srcv.j, m1);
                    Rational val = rem(row, col);
                    if (is_zero(val)) continue;
                    // u' in Hom(V^{i-1}_j, V^{i'}_{j'}) with u'X = component
                    int ucol = L.position(srcv.i - 1, srcv.j, m1);
                    u(row, ucol) += -val;  // sign fixed below via exact update
                    // rem -= u'X - X u' applied with u'-entry -val: see update after loop
                    rem(row, col) -= val;
                    if (dst.i > 1) {
                        int row2 = L.position(dst.i - 1, dst.j, m2);
                        rem(row2, ucol) += val;
                    }
                    progress = true;
                }
            }
        }
        // exact update: n1 = 1 + u solves the graded piece up to higher terms
        QMatrix n1 = QMatrix::identity(n) + u;
        QMatrix n1inv = n1.inverse();
        QMatrix step = n1inv * X * n1 - X;  // in o^{>=t}, equals D mod o^{>=t+1}
        QMatrix E = D - step;
        D = n1 * E * n1inv;  // conjugated residual, now in o^{>=t+1}
        total = n1 * total;
        // safety: residual must have strictly higher grading
        for (auto [r, c] : cd.o_positions)
            if (!is_zero(D(r, c)) && grade_of(r, c) <= t) throw std::logic_error("graded solver failed to advance");
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (!is_zero(D(r, c)) && grade_of(r, c) <= 0) throw std::logic_error("graded solver left the chart");
    }
    if (!D.is_zero()) throw std::logic_error("graded solver incomplete");
    if (!(total.inverse() * X * total == Y)) throw std::logic_error("graded solver verification failed");
    return total;
}

}  // namespace uwo
