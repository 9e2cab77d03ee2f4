#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "uwo/jets.hpp"
#include "uwo/partition.hpp"
#include "uwo/specfun.hpp"

namespace uwo {

struct ZetaBackend {
    enum class Kind { Padic, Real, Complex, Global, Partial };
    Kind kind = Kind::Global;
    long q = 2;                   // Padic
    std::vector<long> s_primes;   // Partial: the finite primes of S
    long cutoff = 10000;          // Partial: Euler product cutoff (numeric path)

    static ZetaBackend padic(long q) { return {Kind::Padic, q, {}, 0}; }
    static ZetaBackend real() { return {Kind::Real, 0, {}, 0}; }
    static ZetaBackend complex() { return {Kind::Complex, 0, {}, 0}; }
    static ZetaBackend global() { return {Kind::Global, 0, {}, 0}; }
    static ZetaBackend partial(std::vector<long> s_primes, long cutoff = 10000) {
        return {Kind::Partial, 0, std::move(s_primes), cutoff};
    }
    bool global_like() const { return kind == Kind::Global || kind == Kind::Partial; }
};

struct DivergenceError : std::domain_error {
    explicit DivergenceError(const std::string& m) : std::domain_error(m) {}
};

struct ZJet {
    Jet<double> jd;
    std::optional<Jet<Rational>> exact;  // Padic only; coefficient m carries (log q)^m
    double tail_bound = 0.0;             // truncated Euler product path only
};

namespace detail {

// single completed local factor Z(s0 + a t) as a jet, s0 + a t = u
inline Jet<double> z1_jet_arch(ZetaBackend::Kind kind, double s0, double a, int order) {
    Jet<double> s = Jet<double>::variable(order, s0, a);
    if (kind == ZetaBackend::Kind::Real) {
        Jet<double> half = s * 0.5;
        return jet_exp(half * (-std::log(M_PI)) + lgamma_jet(half));
    }
    if (kind == ZetaBackend::Kind::Complex) {
        Jet<double> one_minus(order, 1.0);
        one_minus = one_minus - s;
        return jet_exp(one_minus * std::log(2.0 * M_PI) + lgamma_jet(s));
    }
    throw std::logic_error("z1_jet_arch");
}

inline Jet<Rational> z1_jet_padic(long q, long s0, const Rational& a, int order) {
    if (s0 == 0) throw DivergenceError("p-adic zeta pole at s = 0");
    // 1/(1 - q^{-s0} exp(-a t log q)); exact coefficients in log q units
    Jet<Rational> e(order, Rational(0));
    if (order >= 1) e[1] = -a;
    Jet<Rational> expo = jet_exp0(e);
    Rational qs = pow_rat(Rational(q), -s0);
    Jet<Rational> den(order, Rational(1));
    for (int i = 0; i <= order; ++i) den[i] -= qs * expo[i];
    if (is_zero(den[0])) throw DivergenceError("p-adic zeta pole");
    return den.reciprocal();
}

// zeta(s0 + a t) jet with the pole at 1 rejected
inline Jet<double> riemann_jet(double s0, double a, int order) {
    if (s0 <= 1.0 + 1e-12) throw DivergenceError("zeta argument at or left of the pole");
    return zeta_jet(Jet<double>::variable(order, s0, a));
}

}  // namespace detail

// Jet of t -> Z_d(s0 + a t) for the given backend. Z_0 = 1.
inline ZJet z_jet(const ZetaBackend& b, int d, const Rational& s0, const Rational& a, int order) {
    ZJet out;
    out.jd = Jet<double>(order, 1.0);
    if (d == 0) {
        if (b.kind == ZetaBackend::Kind::Padic) out.exact = Jet<Rational>(order, Rational(1));
        return out;
    }
    double s0d = to_double(s0), ad = to_double(a);
    switch (b.kind) {
        case ZetaBackend::Kind::Padic: {
            if (s0.get_den() != 1) throw std::invalid_argument("p-adic zeta jet needs an integer base point");
            Jet<Rational> acc(order, Rational(1));
            for (int t = 0; t < d; ++t) acc = acc * detail::z1_jet_padic(b.q, s0.get_num().get_si() - t, a, order);
            out.exact = acc;
            Jet<double> jd = to_double(acc);
            double lq = std::log(static_cast<double>(b.q));
            double pw = 1;
            for (int i = 0; i <= order; ++i, pw *= lq) jd[i] *= pw;
            out.jd = jd;
            return out;
        }
        case ZetaBackend::Kind::Real:
        case ZetaBackend::Kind::Complex: {
            Jet<double> acc(order, 1.0);
            for (int t = 0; t < d; ++t) acc = acc * detail::z1_jet_arch(b.kind, s0d - t, ad, order);
            out.jd = acc;
            return out;
        }
        case ZetaBackend::Kind::Global: {
            Jet<double> acc(order, 1.0);
            for (int t = 0; t < d; ++t) {
                acc = acc * detail::z1_jet_arch(ZetaBackend::Kind::Real, s0d - t, ad, order);
                acc = acc * detail::riemann_jet(s0d - t, ad, order);
            }
            out.jd = acc;
            return out;
        }
        case ZetaBackend::Kind::Partial: {
            Jet<double> acc(order, 1.0);
            for (int t = 0; t < d; ++t) {
                acc = acc * detail::riemann_jet(s0d - t, ad, order);
                for (long p : b.s_primes) {
                    Jet<double> u = Jet<double>::variable(order, s0d - t, ad);
                    acc = acc * (Jet<double>(order, 1.0) - jet_exp(u * (-std::log(static_cast<double>(p)))));
                }
            }
            out.jd = acc;
            return out;
        }
    }
    throw std::logic_error("z_jet");
}

inline double z_value(const ZetaBackend& b, int d, const Rational& s0) { return z_jet(b, d, s0, Rational(0), 0).jd[0]; }

// Truncated Euler product for Z^S_d(s0 + a t), with a per-coefficient tail
// bound from sum_{p > cutoff} (log p)^k p^{-s}.
inline ZJet z_jet_partial_euler(const ZetaBackend& b, int d, const Rational& s0, const Rational& a, int order) {
    if (b.kind != ZetaBackend::Kind::Partial) throw std::invalid_argument("euler path needs a Partial backend");
    double s0d = to_double(s0), ad = to_double(a);
    if (s0d - (d - 1) <= 1.0) throw DivergenceError("partial zeta argument at or left of the pole");
    ZJet out;
    Jet<double> acc(order, 1.0);
    auto primes = primes_up_to(b.cutoff);
    for (long p : primes) {
        if (std::find(b.s_primes.begin(), b.s_primes.end(), p) != b.s_primes.end()) continue;
        for (int t = 0; t < d; ++t) {
            Jet<double> u = Jet<double>::variable(order, s0d - t, ad);
            Jet<double> factor = (Jet<double>(order, 1.0) - jet_exp(u * (-std::log(static_cast<double>(p))))).reciprocal();
            acc = acc * factor;
        }
    }
    out.jd = acc;
    // log-scale tail: |log tail_k| <= 2 d Gamma(k+1, (s-1) log C)/(s-1)^{k+1} at the
    // weakest argument s = s0 - d + 1, amplified through the product value.
    double s = s0d - (d - 1);
    double y = (s - 1.0) * std::log(static_cast<double>(b.cutoff));
    double fact = 1.0;
    double series = 0.0;
    double ypow = 1.0;
    for (int m = 0; m <= order; ++m) {
        if (m > 0) {
            fact *= m;
            ypow *= y;
        }
        series += ypow / fact;
    }
    double inc_gamma = fact * std::exp(-y) * series;  // Gamma(order+1, y)
    double log_tail = 2.0 * d * inc_gamma / std::pow(s - 1.0, order + 1);
    double mag = 0.0;
    for (int i = 0; i <= order; ++i) mag = std::max(mag, std::fabs(acc[i]));
    out.tail_bound = mag * (std::exp(log_tail) - 1.0 + log_tail);
    return out;
}

// ---------- formal zeta expressions ----------

struct ZetaAtom {
    bool star = false;
    int d = 0;
    long s = 0;
    bool operator==(const ZetaAtom& o) const { return star == o.star && d == o.d && s == o.s; }
};

struct ZetaExpr {
    std::vector<ZetaAtom> factors;

    void push_z(int d, long s) {
        if (d > 0) factors.push_back({false, d, s});
    }
    void push_zstar(int d, long s) {
        if (d > 0) factors.push_back({true, d, s});
    }

    // Multiset of single-factor arguments after expanding Z_d and Z*_d; the
    // pole-removed factor at 1 and a plain factor at 1 expand to the same atom.
    std::vector<long> expanded() const {
        std::vector<long> out;
        for (const auto& f : factors)
            for (int t = 0; t < f.d; ++t) out.push_back(f.s - t);
        std::sort(out.begin(), out.end());
        return out;
    }

    bool sym_equal(const ZetaExpr& o) const { return expanded() == o.expanded(); }
};

// c_X = prod_{j=1..r} prod_{i=1..j-1} Z_{d_j}(d_i + ... + d_j)
inline ZetaExpr c_constant_expr(const NilpotentOrbit& o) {
    ZetaExpr e;
    for (int j = 1; j <= o.r; ++j) {
        if (o.d[static_cast<size_t>(j)] == 0) continue;
        for (int i = 1; i < j; ++i) {
            long s = 0;
            for (int l = i; l <= j; ++l) s += o.d[static_cast<size_t>(l)];
            e.push_z(o.d[static_cast<size_t>(j)], s);
        }
    }
    return e;
}

inline double c_constant_value(const NilpotentOrbit& o, const ZetaBackend& b) {
    ZetaExpr e = c_constant_expr(o);
    if (b.global_like()) {
        for (long s : e.expanded())
            if (s <= 1) throw DivergenceError("c_X diverges: orbit is not simple");
    }
    double v = 1.0;
    for (const auto& f : e.factors) v *= z_value(b, f.d, Rational(f.s));
    return v;
}

// c_{P1,P2}(X) = c_X / Z_{r1}(r1 + r2)
inline double c_adjacent_value(const NilpotentOrbit& o, int r1, int r2, const ZetaBackend& b) {
    if (b.global_like() && r2 == 0) throw DivergenceError("adjacent constant diverges: r2 = 0");
    return c_constant_value(o, b) / z_value(b, r1, Rational(r1 + r2));
}

// Z*_n(n) over Q: the residue symbol at 1 contributes 1, the rest Lambda(k).
inline double zstar_top_value(int n) {
    ZetaBackend g = ZetaBackend::global();
    double v = 1.0;
    for (int k = 2; k <= n; ++k) v *= z_value(g, 1, Rational(k));
    return v;
}

// vol(M(F)\M(A)^1) for F = Q and blocks (n_1, ..., n_s): prod Z*_{n_i}(n_i).
inline double vol_levi(const std::vector<int>& blocks) {
    double v = 1.0;
    for (int ni : blocks) v *= zstar_top_value(ni);
    return v;
}

struct VolumeIdentity {
    ZetaExpr lhs;  // prod Z*_{d_i}(d_i) * c_X
    ZetaExpr rhs;  // prod Z*_{n_i}(n_i)
    bool holds = false;
};

// c_X vol(G_X(F)\G_X(A)^1) = vol(M(F)\M(A)^1) as a formal telescoping identity.
inline VolumeIdentity verify_volume_identity(const NilpotentOrbit& o) {
    VolumeIdentity vi;
    for (int i = 1; i <= o.r; ++i) vi.lhs.push_zstar(o.d[static_cast<size_t>(i)], o.d[static_cast<size_t>(i)]);
    for (const auto& f : c_constant_expr(o).factors) vi.lhs.factors.push_back(f);
    for (int ni : o.levi_block_sizes()) vi.rhs.push_zstar(ni, ni);
    vi.holds = vi.lhs.sym_equal(vi.rhs);
    return vi;
}

}  // namespace uwo
