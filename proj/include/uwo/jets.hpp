#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "uwo/rational.hpp"

namespace uwo {

// Truncated Taylor expansion a0 + a1 t + ... + ak t^k of a scalar function of
// one parameter. T is double, or Rational when the expansion is exact (the
// p-adic case carries an implicit (log q)^m with coefficient m).
template <class T>
struct Jet {
    std::vector<T> c;

    Jet() = default;
    Jet(int order, const T& constant) : c(static_cast<size_t>(order) + 1, T(0)) { c[0] = constant; }

    static Jet variable(int order, const T& value, const T& slope) {
        Jet j(order, value);
        if (order >= 1) j.c[1] = slope;
        return j;
    }

    int order() const { return static_cast<int>(c.size()) - 1; }
    const T& operator[](int i) const { return c[static_cast<size_t>(i)]; }
    T& operator[](int i) { return c[static_cast<size_t>(i)]; }

    Jet operator+(const Jet& o) const {
        Jet out = *this;
        for (size_t i = 0; i < c.size(); ++i) out.c[i] += o.c[i];
        return out;
    }
    Jet operator-(const Jet& o) const {
        Jet out = *this;
        for (size_t i = 0; i < c.size(); ++i) out.c[i] -= o.c[i];
        return out;
    }
    Jet operator-() const {
        Jet out = *this;
        for (auto& x : out.c) x = -x;
        return out;
    }
    Jet operator*(const Jet& o) const {
        Jet out(order(), T(0));
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] == T(0)) continue;
            for (size_t j = 0; i + j < c.size(); ++j) out.c[i + j] += c[i] * o.c[j];
        }
        return out;
    }
    Jet operator*(const T& s) const {
        Jet out = *this;
        for (auto& x : out.c) x *= s;
        return out;
    }
    Jet operator/(const Jet& o) const {
        if (o.c[0] == T(0)) throw std::domain_error("jet division by zero constant term");
        Jet out(order(), T(0));
        for (size_t i = 0; i < c.size(); ++i) {
            T acc = c[i];
            for (size_t j = 1; j <= i; ++j) acc -= o.c[j] * out.c[i - j];
            out.c[i] = acc / o.c[0];
        }
        return out;
    }
    Jet reciprocal() const { return Jet(order(), T(1)) / *this; }
};

// exp of a jet with zero constant term handled by scaling exp(a0) separately.
inline Jet<double> jet_exp(const Jet<double>& f) {
    Jet<double> out(f.order(), 0.0);
    out[0] = std::exp(f[0]);
    for (int i = 1; i <= f.order(); ++i) {
        double acc = 0;
        for (int j = 1; j <= i; ++j) acc += static_cast<double>(j) * f[j] * out[i - j];
        out[i] = acc / static_cast<double>(i);
    }
    return out;
}

inline Jet<double> jet_log(const Jet<double>& f) {
    if (!(f[0] > 0)) throw std::domain_error("jet log needs positive constant term");
    Jet<double> out(f.order(), std::log(f[0]));
    for (int i = 1; i <= f.order(); ++i) {
        double acc = static_cast<double>(i) * f[i];
        for (int j = 1; j < i; ++j) acc -= static_cast<double>(j) * out[j] * f[i - j];
        out[i] = acc / (static_cast<double>(i) * f[0]);
    }
    return out;
}

// f^s for real exponent, f[0] > 0.
inline Jet<double> jet_pow(const Jet<double>& f, double s) {
    Jet<double> lg = jet_log(f);
    for (auto& x : lg.c) x *= s;
    return jet_exp(lg);
}

// exp for an exact jet whose constant term is zero: rational coefficients.
inline Jet<Rational> jet_exp0(const Jet<Rational>& f) {
    if (!is_zero(f[0])) throw std::domain_error("exact jet exp needs zero constant term");
    Jet<Rational> out(f.order(), Rational(1));
    for (int i = 1; i <= f.order(); ++i) {
        Rational acc = 0;
        for (int j = 1; j <= i; ++j) acc += Rational(j) * f[j] * out[i - j];
        out[i] = acc / Rational(i);
    }
    return out;
}

inline Jet<double> to_double(const Jet<Rational>& f) {
    Jet<double> out(f.order(), 0.0);
    for (int i = 0; i <= f.order(); ++i) out[i] = to_double(f[i]);
    return out;
}

}  // namespace uwo
