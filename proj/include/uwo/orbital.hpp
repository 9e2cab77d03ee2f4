#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "uwo/gmfam.hpp"
#include "uwo/localfield.hpp"
#include "uwo/zeta.hpp"

namespace uwo {

// ---------- matrix content volumes ----------

// Vol{B in M_{a x b}(Z_q) : the gcd of maximal minors has valuation m}, a <= b.
// Generating function prod_{i=0}^{a-1} (1 - q^{i-b})/(1 - x q^{i-b}).
inline Rational content_volume(int a, int b, long q, int m) {
    if (a > b) std::swap(a, b);
    if (a == 0) return m == 0 ? Rational(1) : Rational(0);
    std::vector<Rational> h(static_cast<size_t>(m) + 1, Rational(0));
    h[0] = 1;  // complete homogeneous polynomials in q^{i-b}, i = 0..a-1
    for (int i = 0; i < a; ++i) {
        Rational x = pow_rat(Rational(q), i - b);
        for (int d = 1; d <= m; ++d) h[static_cast<size_t>(d)] += x * h[static_cast<size_t>(d) - 1];
    }
    Rational c(1);
    for (int i = 0; i < a; ++i) c *= Rational(1) - pow_rat(Rational(q), i - b);
    return c * h[static_cast<size_t>(m)];
}

// ---------- configuration of the weight integrals ----------

// The two kinds of closed-form configurations behind the unit-function
// integrals: rectangular orbits, and two-block Levis (a single adjacent pair).
enum class ConfigKind { Rectangular, Pair, Unsupported };

inline ConfigKind config_kind(const BasisLayout& lay) {
    if (lay.orbit().inv == 1) return ConfigKind::Rectangular;
    if (kernel_levi(lay).num_blocks() == 2) return ConfigKind::Pair;
    return ConfigKind::Unsupported;
}

// The zeta-ratio (G,M)-family whose value gives J_L^G(I_M^L(0), 1) at the
// backend. `euler_path` switches the Partial backend to the truncated Euler
// product; the reported tail is accumulated into *tail when given.
inline GMFamily zeta_ratio_family(const BasisLayout& lay, const ZetaBackend& b, bool euler_path = false,
                                  double* tail = nullptr) {
    LeviSubgroup M = kernel_levi(lay);
    GMFamily fam;
    fam.parabolics = enumerate_P(M);
    ConfigKind kind = config_kind(lay);
    if (kind == ConfigKind::Rectangular) {
        int r = lay.orbit().r;
        int d = lay.orbit().d[static_cast<size_t>(r)];
        ParabolicSubgroup P0 = epsilon_to_parabolic(xi_kernel(lay.orbit()), lay);
        RootData rd = root_data(P0, parabolic_from_sizes({lay.n()}));
        std::vector<Permutation> winv;
        for (const auto& P : fam.parabolics) winv.push_back(invert(richardson_map(P, lay).w));
        auto weights = rd.weights;
        double norm = euler_path ? z_jet_partial_euler(b, d, Rational(d), Rational(0), 0).jd[0]
                                 : z_value(b, d, Rational(d));
        fam.jet = [=](size_t i, const AVector& lambda, int ord) {
            AVector mu = weyl_act(winv[i], lambda);
            Jet<double> acc(ord, 1.0);
            for (const auto& w : weights) {
                Rational a = inner(mu, w);
                ZJet zj = euler_path ? z_jet_partial_euler(b, d, Rational(d), a, ord) : z_jet(b, d, Rational(d), a, ord);
                if (tail && euler_path) *tail += zj.tail_bound;
                acc = acc * zj.jd * (1.0 / norm);
            }
            return acc;
        };
        return fam;
    }
    if (kind == ConfigKind::Pair) {
        AdjacencyData ad = adjacency(fam.parabolics[0], fam.parabolics[1], lay);
        int r1 = ad.r1, r2 = ad.r2;
        if (b.global_like() && r2 == 0) throw DivergenceError("pair integral diverges: r2 = 0");
        AVector alpha = coroot(fam.parabolics[0], lay.n(), ad.slot);
        fam.jet = [=](size_t i, const AVector& lambda, int ord) {
            if (i == 0) return Jet<double>(ord, 1.0);
            Rational a = inner(lambda, alpha);
            ZJet zj = euler_path ? z_jet_partial_euler(b, r1, Rational(r1 + r2), -a, ord)
                                 : z_jet(b, r1, Rational(r1 + r2), -a, ord);
            double norm = euler_path ? z_jet_partial_euler(b, r1, Rational(r1 + r2), Rational(0), 0).jd[0]
                                     : z_value(b, r1, Rational(r1 + r2));
            if (tail && euler_path) *tail += zj.tail_bound;
            return zj.jd * (1.0 / norm);
        };
        return fam;
    }
    throw std::invalid_argument("no closed-form family for this orbit configuration");
}

// J_L^G(I_M^L(0), 1) at the backend, averaged over generic directions.
inline double j_closed(const BasisLayout& lay, const LeviSubgroup& Lw, const ParabolicSubgroup& Q, const ZetaBackend& b,
                       bool euler_path = false, double* tail = nullptr) {
    GMFamily fam = zeta_ratio_family(lay, b, euler_path, tail);
    auto dirs = generic_directions(Lw, Q, 1);
    return gm_value(fam, Lw, Q, dirs[0]);
}

// ---------- numeric p-adic integrals by exact stratification ----------

struct NumericIntegral {
    double value = 0;
    double tail_bound = 0;
    long strata = 0;
};

namespace detail {

// tail of sum_{m > depth} vol(m) (1 + m + off)^k, summed numerically far past
// any mass; vol decays like q^{-m}
inline double content_tail(int a, int b, long q, int depth, int k, double off, double scale) {
    double t = 0;
    for (int m = depth + 1; m <= depth + 220; ++m) {
        double vol = to_double(content_volume(a, b, q, m));
        t += scale * vol * std::pow(1.0 + m + off, k);
    }
    return t;
}

}  // namespace detail

// c_X^{-1} J_{L,X}^Q(1_q) = int_{n_P(Z_q)} v_{L,X}^Q(g_U) dU by stratifying the
// finitely many block contents the weight depends on.
inline NumericIntegral j_numeric_padic(const BasisLayout& lay, const LeviSubgroup& Lw, const ParabolicSubgroup& Q,
                                       long q, int depth) {
    LeviSubgroup M = kernel_levi(lay);
    auto PM = enumerate_P(M);
    ConfigKind kind = config_kind(lay);
    int k = Lw.num_blocks() - Q.num_blocks();
    auto lam = generic_directions(Lw, Q, 1)[0];
    double lq = std::log(static_cast<double>(q));
    NumericIntegral out;

    if (k == 0) {  // unweighted: volume of n_P(Z_q) is 1
        out.value = 1.0;
        out.strata = 1;
        return out;
    }

    if (kind == ConfigKind::Rectangular) {
        int r = lay.orbit().r;
        int d = lay.orbit().d[static_cast<size_t>(r)];
        std::vector<Permutation> wps;
        for (const auto& P : PM) wps.push_back(richardson_map(P, lay).w);
        // precompute per-axis volumes
        std::vector<Rational> vols;
        for (int m = 0; m <= depth; ++m) vols.push_back(content_volume(d, d, q, m));
        std::vector<int> prof(static_cast<size_t>(r) - 1, 0);
        double wmax = 0;
        std::function<void(size_t, Rational)> rec = [&](size_t axis, Rational vol) {
            if (axis + 1 == static_cast<size_t>(r)) {
                // family points from the content profile
                AVector H(static_cast<size_t>(lay.n()), Rational(0));
                Rational h(0);
                std::vector<Rational> hblock(static_cast<size_t>(r));
                for (int t = 0; t < r; ++t) {
                    if (t > 0) h += Rational(-prof[static_cast<size_t>(t) - 1], d);
                    hblock[static_cast<size_t>(t)] = h;
                }
                for (int t = 1; t <= r; ++t)
                    for (int pos : lay.kernel_levi_block(t)) H[static_cast<size_t>(pos)] = hblock[static_cast<size_t>(t) - 1];
                OrthogonalFamily fam;
                fam.parabolics = PM;
                for (size_t i = 0; i < PM.size(); ++i) fam.points.push_back(scale(weyl_act(wps[i], H), Rational(-1)));
                // log q units: scale at evaluation
                GMFamily gf;
                gf.parabolics = PM;
                auto pts = fam.points;
                gf.jet = [pts, lq](size_t i, const AVector& lambda, int ord) {
                    double a = to_double(inner(lambda, pts[i])) * lq;
                    return jet_exp(Jet<double>::variable(ord, 0.0, a));
                };
                double w = gm_value(gf, Lw, Q, lam);
                long tot = 0;
                for (int x : prof) tot += x;
                wmax = std::max(wmax, std::fabs(w) / std::pow(1.0 + tot, k));
                out.value += to_double(vol) * w;
                out.strata++;
                return;
            }
            for (int m = 0; m <= depth; ++m) {
                prof[axis] = m;
                rec(axis + 1, vol * vols[static_cast<size_t>(m)]);
            }
        };
        rec(0, Rational(1));
        double scale_bound = 2.0 * std::max(wmax, 1e-12);
        out.tail_bound = (r - 1) * detail::content_tail(d, d, q, depth, k, static_cast<double>(depth) * (r - 2 > 0 ? r - 2 : 0),
                                                        scale_bound);
        return out;
    }

    // a single adjacent pair carries the whole Q-cut weight: covers two-block
    // Levis (Q = G) and the k = 1 cuts of general orbits
    auto below_q = enumerate_P_in(M, Q);
    if (kind == ConfigKind::Pair || (Lw == M && below_q.size() == 2)) {
        const ParabolicSubgroup& Pa = kind == ConfigKind::Pair ? PM[0] : below_q[0];
        const ParabolicSubgroup& Pb = kind == ConfigKind::Pair ? PM[1] : below_q[1];
        AdjacencyData ad = adjacency(Pa, Pb, lay);
        AVector alpha = coroot(Pa, lay.n(), ad.slot);
        int a = ad.r1, bb = ad.r1 + ad.r2;
        double wmax = 0;
        for (int m = 0; m <= depth; ++m) {
            // based family at PM[0]: Y_{P0} = 0, Y_{P1} = m alpha^vee (log q units)
            std::vector<AVector> pts;
            pts.push_back(AVector(static_cast<size_t>(lay.n()), Rational(0)));
            pts.push_back(scale(alpha, Rational(m)));
            GMFamily gf;
            gf.parabolics = {Pa, Pb};
            gf.jet = [pts, lq](size_t i, const AVector& lambda, int ord) {
                double av = to_double(inner(lambda, pts[i])) * lq;
                return jet_exp(Jet<double>::variable(ord, 0.0, av));
            };
            double w = gm_value(gf, Lw, Q, lam);
            wmax = std::max(wmax, std::fabs(w) / std::pow(1.0 + m, k));
            out.value += to_double(content_volume(a, bb, q, m)) * w;
            out.strata++;
        }
        out.tail_bound = detail::content_tail(a, bb, q, depth, k, 0.0, 2.0 * std::max(wmax, 1e-12));
        return out;
    }
    throw std::invalid_argument("numeric integral unsupported for this orbit configuration");
}

// ---------- weights at rational points ----------

// v_{L,X}^Q at any g with g^{-1} X g = Y, summed over the given places.
inline double weight_at_point(const QMatrix& Y, const LeviSubgroup& Lw, const ParabolicSubgroup& Q,
                              const std::vector<Place>& places, const BasisLayout& lay) {
    QMatrix g = conjugator_from_x(Y, lay);
    LeviSubgroup M = kernel_levi(lay);
    auto PM = enumerate_P(M);
    // accumulate -R_P(g) over places as floats
    std::vector<std::vector<double>> pts(PM.size(), std::vector<double>(static_cast<size_t>(lay.n()), 0.0));
    for (const auto& v : places) {
        for (size_t i = 0; i < PM.size(); ++i) {
            if (v.archimedean()) {
                auto h = r_value_arch(PM[i], g, v, lay);
                for (size_t c = 0; c < h.size(); ++c) pts[i][c] -= h[c];
            } else {
                auto h = r_value_padic(PM[i], g, v.q, lay);
                double lq = std::log(static_cast<double>(v.q));
                for (size_t c = 0; c < h.size(); ++c) pts[i][c] -= to_double(h[c]) * lq;
            }
        }
    }
    GMFamily gf;
    gf.parabolics = PM;
    gf.jet = [pts](size_t i, const AVector& lambda, int ord) {
        double a = 0;
        for (size_t c = 0; c < pts[i].size(); ++c) a += to_double(lambda[c]) * pts[i][c];
        return jet_exp(Jet<double>::variable(ord, 0.0, a));
    };
    auto lam = generic_directions(Lw, Q, 1)[0];
    return gm_value(gf, Lw, Q, lam);
}

// ---------- Arthur-normalized integrals and the development ----------

struct ArthurJ {
    double value = 0;      // J_L^G(o_L, f) with the Arthur normalization
    double c_local = 0;    // the comparison constant c_{X,v} (or its product)
    double tail_bound = 0;
};

// Semi-local/local J_L^G(I_M^L(0), 1) for the unit function at one place or a
// global-like backend; reports c_X alongside.
inline ArthurJ arthur_j(const BasisLayout& lay, const LeviSubgroup& Lw, const ZetaBackend& b) {
    ArthurJ out;
    ParabolicSubgroup G = parabolic_from_sizes({lay.n()});
    out.value = j_closed(lay, Lw, G, b);
    out.c_local = c_constant_value(lay.orbit(), b);
    return out;
}

struct DescentCheck {
    double lhs = 0;  // c_X^{-1} J_{M,X}^Q(1_q), numeric strata
    double rhs = 0;  // J_M^L((0), 1_L): product over the factors of L
    double tail_bound = 0;
};

// Lemma-of-descent comparison at one p-adic place for the unit function.
inline DescentCheck descent_check(const BasisLayout& lay, const LeviSubgroup& L, const ParabolicSubgroup& Q, long q,
                                  int depth) {
    LeviSubgroup M = kernel_levi(lay);
    if (!levi_contained(M, L)) throw std::invalid_argument("descent: L must contain M");
    DescentCheck out;
    auto lhsI = j_numeric_padic(lay, M, Q, q, depth);
    out.lhs = lhsI.value;
    out.tail_bound += lhsI.tail_bound;
    // rhs: product over the blocks of L of the factor integrals
    out.rhs = 1.0;
    for (const auto& lb : L.blocks) {
        // the factor orbit: Richardson of the M-blocks inside lb
        std::vector<int> comp;
        for (const auto& mb : M.blocks)
            if (std::includes(lb.begin(), lb.end(), mb.begin(), mb.end())) comp.push_back(static_cast<int>(mb.size()));
        Partition fo = richardson_orbit(comp);
        BasisLayout flay{NilpotentOrbit(fo)};
        LeviSubgroup fM = kernel_levi(flay);
        ParabolicSubgroup fG = parabolic_from_sizes({flay.n()});
        if (fM.num_blocks() == 1) continue;  // GL(1)-style factor: weight 1, volume 1
        auto fi = j_numeric_padic(flay, fM, fG, q, depth);
        out.rhs *= fi.value;
        out.tail_bound += fi.tail_bound;
    }
    return out;
}

// a^L(S, o_L) = vol(L1(F)\L1(A)^1) * J_{L1}^L((0), 1^S_L); closed-form hors-S
// path with the truncated Euler product as cross-check.
struct CoefficientA {
    double value = 0;
    double vol = 0;          // vol_levi(L1)
    double jvalue = 0;       // J_{L1}^L((0), 1^S_L) closed form
    double jvalue_euler = 0; // truncated Euler product path
    double tail_bound = 0;
};

inline CoefficientA coefficient_a(const BasisLayout& lay, const LeviSubgroup& L, const std::vector<long>& s_primes,
                                  long cutoff) {
    const auto& o = lay.orbit();
    if (!o.is_simple()) throw DivergenceError("global coefficients need a simple ambient orbit");
    LeviSubgroup M = kernel_levi(lay);
    if (!levi_contained(M, L)) throw std::invalid_argument("coefficient: L must contain M");
    CoefficientA out;
    std::vector<int> l1_blocks;
    for (const auto& mb : M.blocks) l1_blocks.push_back(static_cast<int>(mb.size()));
    out.vol = vol_levi(l1_blocks);
    out.jvalue = 1.0;
    out.jvalue_euler = 1.0;
    ZetaBackend part = ZetaBackend::partial(s_primes, cutoff);
    for (const auto& lb : L.blocks) {
        std::vector<int> comp;
        for (const auto& mb : M.blocks)
            if (std::includes(lb.begin(), lb.end(), mb.begin(), mb.end())) comp.push_back(static_cast<int>(mb.size()));
        Partition fo = richardson_orbit(comp);
        BasisLayout flay{NilpotentOrbit(fo)};
        LeviSubgroup fM = kernel_levi(flay);
        ParabolicSubgroup fG = parabolic_from_sizes({flay.n()});
        if (fM.num_blocks() == 1) continue;
        out.jvalue *= j_closed(flay, fM, fG, part);
        double tail = 0;
        out.jvalue_euler *= j_closed(flay, fM, fG, part, true, &tail);
        out.tail_bound += tail;
    }
    out.value = out.vol * out.jvalue;
    return out;
}

struct DevelopmentTerm {
    LeviSubgroup L;
    std::vector<Partition> orbit_blocks;  // o_L per block of L
    double weyl_factor = 0;               // |W^L|/|W|
    CoefficientA coeff;
};

inline std::vector<DevelopmentTerm> development(const BasisLayout& lay, const std::vector<long>& s_primes, long cutoff) {
    const auto& o = lay.orbit();
    if (!o.is_simple()) throw DivergenceError("development needs a simple orbit");
    LeviSubgroup M = kernel_levi(lay);
    double nfact = 1;
    for (int i = 2; i <= lay.n(); ++i) nfact *= i;
    std::vector<DevelopmentTerm> out;
    for (const auto& L : enumerate_L(M)) {
        DevelopmentTerm term;
        term.L = L;
        double wl = 1;
        for (const auto& lb : L.blocks) {
            for (size_t i = 2; i <= lb.size(); ++i) wl *= static_cast<double>(i);
            std::vector<int> comp;
            for (const auto& mb : M.blocks)
                if (std::includes(lb.begin(), lb.end(), mb.begin(), mb.end())) comp.push_back(static_cast<int>(mb.size()));
            term.orbit_blocks.push_back(richardson_orbit(comp));
        }
        term.weyl_factor = wl / nfact;
        term.coeff = coefficient_a(lay, L, s_primes, cutoff);
        out.push_back(std::move(term));
    }
    return out;
}

// J_o^T(1) = vol(G_X(F)\G_X(A)^1) J_{M,X}^{G,T}(1), expanded by splitting into
// a polynomial in T and a value.
struct GlobalWeighted {
    MultiPoly poly;    // polynomial in the coordinates of T
    double value = 0;  // evaluated at the given T
    double volume_gx = 0;
    int degree = 0;
};

inline GlobalWeighted global_weighted_t(const BasisLayout& lay, const AVector& T) {
    const auto& o = lay.orbit();
    if (!o.is_simple()) throw DivergenceError("global weighted integral needs a simple orbit");
    LeviSubgroup M = kernel_levi(lay);
    ParabolicSubgroup G = parabolic_from_sizes({lay.n()});
    ZetaBackend glob = ZetaBackend::global();
    double cx = c_constant_value(o, glob);
    std::vector<int> mblocks;
    for (const auto& mb : M.blocks) mblocks.push_back(static_cast<int>(mb.size()));
    GlobalWeighted out;
    out.volume_gx = vol_levi(mblocks) / cx;
    auto lam = generic_directions(M, G, 1)[0];
    // J_{M,X}^{G,T} = sum_{(L1,L2)} d(L1,L2) v_M^{Q1}(1,T) * J_{M,X}^{Q2}(1)
    for (const auto& st : splitting_data(M)) {
        MultiPoly tpart = weight_t_polynomial(M, st.Q1, lam);
        // J^{Q2}_{M,X}(1) = c_X * J_M^{L2}((0), 1_{L2}) as a global product
        double jq2 = cx;
        for (const auto& lb : st.L2.blocks) {
            std::vector<int> comp;
            for (const auto& mb : M.blocks)
                if (std::includes(lb.begin(), lb.end(), mb.begin(), mb.end())) comp.push_back(static_cast<int>(mb.size()));
            Partition fo = richardson_orbit(comp);
            BasisLayout flay{NilpotentOrbit(fo)};
            LeviSubgroup fM = kernel_levi(flay);
            if (fM.num_blocks() == 1) continue;
            jq2 *= j_closed(flay, fM, parabolic_from_sizes({flay.n()}), glob);
        }
        for (const auto& [e, c] : tpart.terms) out.poly.terms[e] += st.d * c * jq2;
    }
    for (auto& [e, c] : out.poly.terms) c *= out.volume_gx;
    std::vector<double> coords;
    for (const auto& x : T) coords.push_back(to_double(x));
    out.value = out.poly.eval(coords);
    out.degree = out.poly.total_degree();
    return out;
}

}  // namespace uwo
