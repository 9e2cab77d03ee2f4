#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "uwo/jets.hpp"
#include "uwo/roots.hpp"

namespace uwo {

// Points Y_P indexed by P(M); adjacent differences lie on coroot lines.
struct OrthogonalFamily {
    std::vector<ParabolicSubgroup> parabolics;  // enumerate_P(M) order
    std::vector<AVector> points;

    LeviSubgroup levi() const { return parabolics.at(0).levi(); }
    int n() const { return parabolics.at(0).n(); }

    size_t index_of(const ParabolicSubgroup& P) const {
        for (size_t i = 0; i < parabolics.size(); ++i)
            if (parabolics[i] == P) return i;
        throw std::out_of_range("parabolic not in the family index");
    }

    // point attached to any Q in F(M): projection of Y_P for P below Q
    AVector point_at(const ParabolicSubgroup& Q) const {
        for (size_t i = 0; i < parabolics.size(); ++i)
            if (parabolic_contained(parabolics[i], Q)) return project_to_levi(points[i], Q);
        throw std::out_of_range("no family member below Q");
    }

    // exact: checks the coroot-line condition and returns positivity
    struct Check {
        bool orthogonal = false;
        bool positive = false;
    };
    Check check() const {
        Check c;
        c.orthogonal = true;
        c.positive = true;
        int n_ = n();
        for (size_t a = 0; a < parabolics.size(); ++a)
            for (size_t b = 0; b < parabolics.size(); ++b) {
                if (a == b) continue;
                int slot = -1, diffs = 0;
                for (int t = 0; t < parabolics[a].num_blocks(); ++t)
                    if (!(parabolics[a].blocks[static_cast<size_t>(t)] == parabolics[b].blocks[static_cast<size_t>(t)])) {
                        if (slot < 0) slot = t;
                        ++diffs;
                    }
                if (diffs != 2 || parabolics[a].blocks[static_cast<size_t>(slot)] != parabolics[b].blocks[static_cast<size_t>(slot) + 1] ||
                    parabolics[a].blocks[static_cast<size_t>(slot) + 1] != parabolics[b].blocks[static_cast<size_t>(slot)])
                    continue;  // not adjacent
                AVector d = sub(points[a], points[b]);
                AVector alpha = coroot(parabolics[a], n_, slot);
                Rational cmul(0);
                bool found = false;
                for (size_t i = 0; i < alpha.size() && !found; ++i)
                    if (!is_zero(alpha[i])) {
                        cmul = d[i] / alpha[i];
                        found = true;
                    }
                AVector resid = sub(d, scale(alpha, cmul));
                for (const auto& x : resid)
                    if (!is_zero(x)) c.orthogonal = false;
                if (sgn(cmul) < 0) c.positive = false;
            }
        return c;
    }
};

// A (G,M)-family presented through jets: for each P, the truncated expansion
// of t -> c_P(t Lambda).
struct GMFamily {
    std::vector<ParabolicSubgroup> parabolics;
    std::function<Jet<double>(size_t, const AVector&, int)> jet;

    size_t index_below(const ParabolicSubgroup& R) const {
        for (size_t i = 0; i < parabolics.size(); ++i)
            if (parabolic_contained(parabolics[i], R)) return i;
        throw std::out_of_range("no family member below R");
    }
};

inline GMFamily exp_gm_family(const OrthogonalFamily& fam) {
    GMFamily g;
    g.parabolics = fam.parabolics;
    auto points = fam.points;
    g.jet = [points](size_t i, const AVector& lambda, int ord) {
        double a = to_double(inner(lambda, points[i]));
        return jet_exp(Jet<double>::variable(ord, 0.0, a));
    };
    return g;
}

inline GMFamily product_gm_family(const GMFamily& f1, const GMFamily& f2) {
    GMFamily g;
    g.parabolics = f1.parabolics;
    auto j1 = f1.jet, j2 = f2.jet;
    auto par2 = f2.parabolics, par1 = f1.parabolics;
    g.jet = [j1, j2, par1, par2](size_t i, const AVector& lambda, int ord) {
        // f2 may index the same parabolics in a different order
        size_t i2 = i;
        if (!(par2[i] == par1[i])) {
            i2 = par2.size();
            for (size_t t = 0; t < par2.size(); ++t)
                if (par2[t] == par1[i]) i2 = t;
        }
        return j1(i, lambda, ord) * j2(i2, lambda, ord);
    };
    return g;
}

// theta_R^Q(Lambda) with the exact covolume kept squared until the end.
inline double theta_value(const ParabolicSubgroup& R, const ParabolicSubgroup& Q, const AVector& lambda) {
    RootData rd = root_data(R, Q);
    double v = std::sqrt(to_double(rd.covol2));
    for (const auto& cr : rd.coroots) {
        Rational pairing = inner(lambda, cr);
        if (is_zero(pairing)) throw std::domain_error("singular direction for theta");
        v /= to_double(pairing);
    }
    return v;
}

// v_L^Q of the family: (1/k!) sum_{R in P^Q(L)} (d^k/dt^k c_R)(0) theta_R^Q(Lambda).
inline double gm_value(const GMFamily& fam, const LeviSubgroup& L, const ParabolicSubgroup& Q, const AVector& lambda) {
    int k = L.num_blocks() - Q.num_blocks();
    if (k < 0) throw std::invalid_argument("L does not sit below the Levi of Q");
    double out = 0;
    for (const auto& R : enumerate_P_in(L, Q)) {
        size_t i = fam.index_below(R);
        Jet<double> j = fam.jet(i, lambda, k);
        out += j[k] * theta_value(R, Q, lambda);  // j[k] = (d^k c)(0)/k!
    }
    return out;
}

// Deterministic generic directions in a_L^{M_Q}, exact nonvanishing on every
// coroot of every R in P^Q(L).
inline std::vector<AVector> generic_directions(const LeviSubgroup& L, const ParabolicSubgroup& Q, int count) {
    int n = L.n();
    std::vector<AVector> out;
    auto rs = enumerate_P_in(L, Q);
    for (long t = 2; static_cast<int>(out.size()) < count && t < 200; ++t) {
        AVector v(static_cast<size_t>(n));
        Rational x(1);
        Rational base(2 * t + 1, 2 * t - 1);
        for (int i = 0; i < n; ++i) {
            v[static_cast<size_t>(i)] = x;
            x *= base;
        }
        v = project_to_blocks(v, L.blocks);
        v = project_sum_zero(v);
        bool ok = true;
        for (const auto& R : rs)
            for (const auto& cr : root_data(R, Q).coroots)
                if (is_zero(inner(v, cr))) ok = false;
        if (ok) out.push_back(std::move(v));
    }
    if (static_cast<int>(out.size()) < count) throw std::logic_error("could not build generic directions");
    return out;
}

namespace detail {

// Recursive volume of the projected convex hull: fan from the lexicographically
// least vertex over the facets indexed by ordered two-block coarsenings; facet
// volumes split as products over the two sub-polytopes.
inline double polytope_volume_rec(const std::vector<IndexSet>& blocks,
                                  const std::function<AVector(const std::vector<int>&)>& point) {
    int s = static_cast<int>(blocks.size());
    if (s <= 1) return 1.0;
    int k = s - 1;
    std::vector<int> lex(static_cast<size_t>(s));
    for (int i = 0; i < s; ++i) lex[static_cast<size_t>(i)] = i;
    AVector v0 = point(lex);
    double total = 0;
    // ordered bipartitions (C1, C2)
    for (unsigned mask = 1; mask + 1 < (1u << s); ++mask) {
        std::vector<int> c1, c2;
        for (int i = 0; i < s; ++i)
            if (mask & (1u << i))
                c1.push_back(i);
            else
                c2.push_back(i);
        long s1 = 0, s2 = 0;
        for (int i : c1) s1 += static_cast<long>(blocks[static_cast<size_t>(i)].size());
        for (int i : c2) s2 += static_cast<long>(blocks[static_cast<size_t>(i)].size());
        // supporting functional of the facet: s2 on C1 indices, -s1 on C2 indices
        AVector w(v0.size(), Rational(0));
        for (int i : c1)
            for (int idx : blocks[static_cast<size_t>(i)]) w[static_cast<size_t>(idx)] = Rational(s2);
        for (int i : c2)
            for (int idx : blocks[static_cast<size_t>(i)]) w[static_cast<size_t>(idx)] = Rational(-s1);
        std::vector<int> ord = c1;
        ord.insert(ord.end(), c2.begin(), c2.end());
        AVector yq = point(ord);
        Rational num = inner(w, sub(yq, v0));
        if (sgn(num) <= 0) continue;  // facet through the base vertex or degenerate
        double h = to_double(num) / std::sqrt(to_double(inner(w, w)));
        // sub-polytopes: ordering inside C2 does not move the C1 components
        // and vice versa, so the facet volume splits as a product
        std::vector<IndexSet> b1, b2;
        for (int i : c1) b1.push_back(blocks[static_cast<size_t>(i)]);
        for (int i : c2) b2.push_back(blocks[static_cast<size_t>(i)]);
        auto p1 = [&](const std::vector<int>& sub_ord) {
            std::vector<int> full;
            for (int i : sub_ord) full.push_back(c1[static_cast<size_t>(i)]);
            for (int i : c2) full.push_back(i);
            return point(full);
        };
        auto p2 = [&](const std::vector<int>& sub_ord) {
            std::vector<int> full = c1;
            for (int i : sub_ord) full.push_back(c2[static_cast<size_t>(i)]);
            return point(full);
        };
        total += h * polytope_volume_rec(b1, p1) * polytope_volume_rec(b2, p2);
    }
    return total / static_cast<double>(k);
}

}  // namespace detail

struct HullVolume {
    double volume = 0;
    bool positive = false;  // computed from the exact positivity check
};

// Euclidean volume of the projection to a_M^G of conv{Y_P}; for non-positive
// families the signed value of the exponential family is reported instead.
inline HullVolume hull_volume(const OrthogonalFamily& fam) {
    HullVolume out;
    auto chk = fam.check();
    if (!chk.orthogonal) throw std::invalid_argument("family is not orthogonal");
    out.positive = chk.positive;
    LeviSubgroup M = fam.levi();
    if (!out.positive) {
        auto dirs = generic_directions(M, parabolic_from_sizes({fam.n()}), 1);
        out.volume = gm_value(exp_gm_family(fam), M, parabolic_from_sizes({fam.n()}), dirs[0]);
        return out;
    }
    auto point = [&](const std::vector<int>& ordering) {
        std::vector<IndexSet> b;
        for (int i : ordering) b.push_back(M.blocks[static_cast<size_t>(i)]);
        ParabolicSubgroup P{b};
        return fam.points[fam.index_of(P)];
    };
    out.volume = detail::polytope_volume_rec(M.blocks, point);
    return out;
}

struct IndicatorResult {
    int alternating_sum = 0;
    bool geometric = false;
    bool boundary = false;
};

// sum_{Q in F(M)} (-1)^{dim a_Q^G} tauhat_Q(H - Y_Q) against half-space membership.
inline IndicatorResult hull_indicator(const OrthogonalFamily& fam, const AVector& H) {
    LeviSubgroup M = fam.levi();
    int n = fam.n();
    ParabolicSubgroup G = parabolic_from_sizes({n});
    IndicatorResult out;
    for (const auto& Q : enumerate_F(M)) {
        AVector arg = sub(project_to_levi(H, Q), fam.point_at(Q));
        RootData rd = root_data(Q, G);
        bool inside = true;
        for (const auto& w : rd.weights) {
            int s = sgn(inner(w, arg));
            if (s == 0) out.boundary = true;
            if (s <= 0) inside = false;
        }
        if (inside) out.alternating_sum += (Q.num_blocks() - 1) % 2 == 0 ? 1 : -1;
    }
    // geometric: H inside every facet half-space (maximal proper coarsenings)
    bool member = true;
    for (const auto& Q : enumerate_F(M)) {
        if (Q.num_blocks() != 2) continue;
        AVector yq = fam.point_at(Q);
        RootData rd = root_data(Q, G);
        const AVector& w = rd.weights[0];
        int s = sgn(inner(w, sub(project_to_levi(H, Q), yq)));
        if (s == 0) out.boundary = true;
        if (s > 0) member = false;
    }
    out.geometric = member;
    return out;
}

// d_M^G(L1, L2) together with the section (Q1, Q2); terms with d = 0 dropped.
struct SplitTerm {
    LeviSubgroup L1, L2;
    double d = 0;
    Rational d2;  // exact square
    ParabolicSubgroup Q1, Q2;
};

inline std::optional<ParabolicSubgroup> chamber_of(const LeviSubgroup& L, const AVector& xi_proj) {
    int n = L.n();
    ParabolicSubgroup G = parabolic_from_sizes({n});
    for (const auto& R : enumerate_P(L)) {
        bool pos = true;
        for (const auto& cr : root_data(R, G).coroots)
            if (sgn(inner(xi_proj, cr)) <= 0) pos = false;
        if (pos) return R;
    }
    return std::nullopt;
}

inline std::vector<SplitTerm> splitting_data(const LeviSubgroup& M) {
    int n = M.n();
    // generic point of a_M^G
    AVector xi;
    {
        auto dirs = generic_directions(M, parabolic_from_sizes({n}), 1);
        xi = dirs[0];
    }
    std::vector<SplitTerm> out;
    auto levis = enumerate_L(M);
    int dim_amg = M.num_blocks() - 1;
    for (const auto& L1 : levis)
        for (const auto& L2 : levis) {
            int d1 = M.num_blocks() - L1.num_blocks();
            int d2 = M.num_blocks() - L2.num_blocks();
            if (d1 + d2 != dim_amg) continue;
            // bases of a_M^{L_i}: coroots of any R_i in P^{L_i}(M)
            auto basis_of = [&](const LeviSubgroup& L) {
                ParabolicSubgroup LP{L.blocks};
                auto Rs = enumerate_P_in(M, LP);
                return root_data(Rs[0], LP).coroots;
            };
            std::vector<AVector> basis1 = basis_of(L1), basis2 = basis_of(L2);
            std::vector<AVector> all = basis1;
            all.insert(all.end(), basis2.begin(), basis2.end());
            if (static_cast<int>(all.size()) != dim_amg) continue;
            auto gram_det = [](const std::vector<AVector>& vs) {
                int m = static_cast<int>(vs.size());
                QMatrix g(m, m);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) g(i, j) = inner(vs[static_cast<size_t>(i)], vs[static_cast<size_t>(j)]);
                return g.det();
            };
            Rational gall = gram_det(all);
            if (is_zero(gall)) continue;  // sum not direct
            Rational g1 = basis1.empty() ? Rational(1) : gram_det(basis1);
            Rational g2 = basis2.empty() ? Rational(1) : gram_det(basis2);
            SplitTerm st;
            st.L1 = L1;
            st.L2 = L2;
            st.d2 = gall / (g1 * g2);
            st.d = std::sqrt(to_double(st.d2));
            // Section: decompose xi = xi1 + xi2 along a_{L1}^G (+) a_{L2}^G
            // (an oblique direct sum); Q1 is the chamber of xi1 and Q2 the
            // chamber of -xi2. This pairs the faces whose shifted normal cones
            // meet, as in the mixed decomposition of a Minkowski sum.
            ParabolicSubgroup Gp = parabolic_from_sizes({n});
            auto cb1 = root_data(ParabolicSubgroup(enumerate_P(L1)[0].blocks), Gp).coroots;
            auto cb2 = root_data(ParabolicSubgroup(enumerate_P(L2)[0].blocks), Gp).coroots;
            int m1 = static_cast<int>(cb1.size()), m2 = static_cast<int>(cb2.size());
            std::vector<AVector> cols = cb1;
            cols.insert(cols.end(), cb2.begin(), cb2.end());
            QMatrix gramm(m1 + m2, m1 + m2), rhs(m1 + m2, 1);
            for (int i = 0; i < m1 + m2; ++i) {
                rhs(i, 0) = inner(cols[static_cast<size_t>(i)], xi);
                for (int j = 0; j < m1 + m2; ++j) gramm(i, j) = inner(cols[static_cast<size_t>(i)], cols[static_cast<size_t>(j)]);
            }
            QMatrix sol = gramm.inverse() * rhs;
            AVector xi1(xi.size(), Rational(0)), xi2(xi.size(), Rational(0));
            for (int i = 0; i < m1; ++i) xi1 = add(xi1, scale(cols[static_cast<size_t>(i)], sol(i, 0)));
            for (int i = 0; i < m2; ++i) xi2 = add(xi2, scale(cols[static_cast<size_t>(m1 + i)], sol(m1 + i, 0)));
            auto q1 = chamber_of(L1, xi1);
            auto q2 = chamber_of(L2, scale(xi2, Rational(-1)));
            if (!q1 || !q2) throw std::logic_error("splitting section point not generic");
            st.Q1 = *q1;
            st.Q2 = *q2;
            out.push_back(std::move(st));
        }
    return out;
}

// ---------- T-dependent weight polynomials ----------

struct MultiPoly {
    std::map<std::vector<int>, double> terms;  // exponent vector -> coefficient

    double eval(const std::vector<double>& x) const {
        double s = 0;
        for (const auto& [e, c] : terms) {
            double m = c;
            for (size_t i = 0; i < e.size(); ++i)
                for (int p = 0; p < e[i]; ++p) m *= x[i];
            s += m;
        }
        return s;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms) {
            if (std::fabs(c) < 1e-12) continue;
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }
};

// The linear map T -> T_R for R containing a chosen Borel below it.
inline QMatrix t_point_matrix(const ParabolicSubgroup& R) {
    int n = R.n();
    // w sends the standard flag to the flag refining R in block order
    Permutation w(static_cast<size_t>(n));
    int at = 0;
    for (const auto& blk : R.blocks)
        for (int idx : blk) w[static_cast<size_t>(at++)] = idx;
    QMatrix wm = permutation_matrix(w);
    // project to the Levi of R
    QMatrix proj(n, n);
    for (const auto& blk : R.blocks) {
        Rational inv(1, static_cast<long>(blk.size()));
        for (int i : blk)
            for (int j : blk) proj(i, j) = inv;
    }
    return proj * wm;
}

// v_L^Q(1, T) as a polynomial in the coordinates of T.
inline MultiPoly weight_t_polynomial(const LeviSubgroup& L, const ParabolicSubgroup& Q, const AVector& lambda) {
    int n = L.n();
    int k = L.num_blocks() - Q.num_blocks();
    MultiPoly poly;
    for (const auto& R : enumerate_P_in(L, Q)) {
        double theta = theta_value(R, Q, lambda);
        QMatrix m = t_point_matrix(R);
        // linear form ell(T) = <lambda, m T>
        std::vector<double> ell(static_cast<size_t>(n), 0.0);
        for (int j = 0; j < n; ++j) {
            Rational s = 0;
            for (int i = 0; i < n; ++i) s += lambda[static_cast<size_t>(i)] * m(i, j);
            ell[static_cast<size_t>(j)] = to_double(s);
        }
        // expand ell^k / k! * theta
        std::map<std::vector<int>, double> cur;
        cur[std::vector<int>(static_cast<size_t>(n), 0)] = 1.0;
        for (int p = 0; p < k; ++p) {
            std::map<std::vector<int>, double> next;
            for (const auto& [e, c] : cur)
                for (int j = 0; j < n; ++j) {
                    if (ell[static_cast<size_t>(j)] == 0.0) continue;
                    std::vector<int> e2 = e;
                    e2[static_cast<size_t>(j)]++;
                    next[e2] += c * ell[static_cast<size_t>(j)];
                }
            cur = std::move(next);
        }
        double kfact = 1;
        for (int p = 2; p <= k; ++p) kfact *= p;
        for (const auto& [e, c] : cur) poly.terms[e] += c * theta / kfact;
    }
    return poly;
}

// The orthogonal family (T_P)_{P in P(M)} attached to T in a_{T0}.
inline OrthogonalFamily t_family(const LeviSubgroup& M, const AVector& T) {
    OrthogonalFamily fam;
    fam.parabolics = enumerate_P(M);
    for (const auto& P : fam.parabolics) {
        QMatrix m = t_point_matrix(P);
        AVector y(T.size(), Rational(0));
        for (size_t i = 0; i < T.size(); ++i) {
            Rational s = 0;
            for (size_t j = 0; j < T.size(); ++j) s += m(static_cast<int>(i), static_cast<int>(j)) * T[j];
            y[i] = s;
        }
        fam.points.push_back(std::move(y));
    }
    return fam;
}

}  // namespace uwo
