#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "uwo/jets.hpp"

namespace uwo {

// log Gamma as a jet, Lanczos approximation (g = 607/128, 15 terms).
inline Jet<double> lgamma_jet(const Jet<double>& z) {
    static const double g = 607.0 / 128.0;
    static const double coeff[15] = {
        0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
        14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
        0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
        -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
        0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};
    if (!(z[0] > 0)) throw std::domain_error("lgamma_jet needs positive argument");
    int ord = z.order();
    Jet<double> sum(ord, coeff[0]);
    for (int i = 1; i < 15; ++i) {
        Jet<double> den = z;
        den[0] += static_cast<double>(i) - 1.0;  // z + (i-1)
        sum = sum + Jet<double>(ord, coeff[i]) / den;
    }
    Jet<double> base = z;
    base[0] += g - 0.5;
    Jet<double> zm = z;
    zm[0] -= 0.5;
    // log Gamma(z) = (z-1/2) log(base) - base + log(sqrt(2 pi) * sum)
    Jet<double> out = zm * jet_log(base) - base + jet_log(sum * std::sqrt(2.0 * M_PI));
    return out;
}

inline double lgamma_val(double x) { return lgamma_jet(Jet<double>(0, x))[0]; }

// psi^{(m)}(x) = m-th derivative of digamma; from the lgamma jet.
inline double polygamma(int m, double x) {
    Jet<double> z = Jet<double>::variable(m + 1, x, 1.0);
    Jet<double> lg = lgamma_jet(z);
    double fact = 1;
    for (int i = 2; i <= m + 1; ++i) fact *= i;
    return lg[m + 1] * fact;
}

inline double digamma(double x) { return polygamma(0, x); }

// Riemann zeta of a jet argument by Euler-Maclaurin; accurate for Re s >= 1.5
// away from s = 1.
inline Jet<double> zeta_jet(const Jet<double>& s) {
    static const double bern[13] = {1.0,
                                    1.0 / 6,
                                    -1.0 / 30,
                                    1.0 / 42,
                                    -1.0 / 30,
                                    5.0 / 66,
                                    -691.0 / 2730,
                                    7.0 / 6,
                                    -3617.0 / 510,
                                    43867.0 / 798,
                                    -174611.0 / 330,
                                    854513.0 / 138,
                                    -236364091.0 / 2730};
    const int N = 24;
    const int J = 12;
    int ord = s.order();
    if (std::fabs(s[0] - 1.0) < 1e-9) throw std::domain_error("zeta pole at s = 1");
    auto n_pow_minus_s = [&](double n) {
        // n^{-s} = exp(-s log n)
        Jet<double> e = s * (-std::log(n));
        return jet_exp(e);
    };
    Jet<double> out(ord, 0.0);
    for (int n = 1; n < N; ++n) out = out + n_pow_minus_s(static_cast<double>(n));
    // N^{1-s}/(s-1)
    Jet<double> sm1 = s;
    sm1[0] -= 1.0;
    out = out + n_pow_minus_s(static_cast<double>(N)) * Jet<double>(ord, static_cast<double>(N)) / sm1;
    out = out + n_pow_minus_s(static_cast<double>(N)) * 0.5;
    // sum_j B_{2j}/(2j)! * (s)(s+1)...(s+2j-2) * N^{-s-2j+1}
    Jet<double> rising(ord, 1.0);
    double fact = 1.0;
    int next_m = 0;
    for (int j = 1; j <= J; ++j) {
        // extend rising product to (s)(s+1)...(s+2j-2)
        while (next_m <= 2 * j - 2) {
            Jet<double> f = s;
            f[0] += static_cast<double>(next_m);
            rising = rising * f;
            ++next_m;
        }
        fact *= (2.0 * j) * (2.0 * j - 1.0);
        Jet<double> tail = n_pow_minus_s(static_cast<double>(N)) * rising *
                           (bern[j] / (fact * std::pow(static_cast<double>(N), 2.0 * j - 1.0)));
        out = out + tail;
    }
    return out;
}

inline double zeta_val(double s) { return zeta_jet(Jet<double>(0, s))[0]; }

inline std::vector<long> primes_up_to(long n) {
    std::vector<bool> sieve(static_cast<size_t>(n) + 1, true);
    std::vector<long> out;
    for (long p = 2; p <= n; ++p) {
        if (!sieve[static_cast<size_t>(p)]) continue;
        out.push_back(p);
        for (long m = p * p; m <= n; m += p) sieve[static_cast<size_t>(m)] = false;
    }
    return out;
}

}  // namespace uwo
