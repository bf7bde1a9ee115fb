#pragma once

#include "cslight/fock.hpp"
#include "cslight/hyperbolic.hpp"

namespace cslight::trotter {

/// Parameters of the N -> infinity limit of [D(alpha/N) S(zeta/N)]^N |0>,
/// which equals e^{i theta} S(zeta) D(alpha_tilde) |0>.
///
/// The phase convention carries Im[alpha^2 e^{-i phi}]; it is the N -> inf
/// limit of the finite-product phase and is validated against the explicit
/// operator product in the tests (the alternative sign printed elsewhere,
/// Im[alpha^2 e^{+i phi}], fails that check for complex alpha).
struct LimitParams {
    double theta = 0.0;
    Complex alpha_tilde{};
};

inline LimitParams limit_params(Complex alpha, const SqueezeParam& zeta) {
    LimitParams out;
    const double r = zeta.r, phi = zeta.phi;
    const Complex eip = std::polar(1.0, phi);
    out.alpha_tilde = alpha * hyper::sinhc(r) + std::conj(alpha) * eip * hyper::cosh1_over_r(r);
    out.theta = -std::imag(alpha * alpha * std::polar(1.0, -phi)) * hyper::sinh_rem_over_r2(r);
    return out;
}

/// Closed form of the finite product: [D(alpha/N) S(zeta/N)]^N
/// = e^{i phase} D(d_arg) S(s_arg), with s_arg = zeta.
struct FiniteProductParams {
    double phase = 0.0;
    Complex d_arg{};
    Complex s_arg{};
};

inline FiniteProductParams finite_product_params(Complex alpha, const SqueezeParam& zeta,
                                                 long laps) {
    if (laps < 1) throw std::invalid_argument("finite_product_params: laps must be >= 1");
    FiniteProductParams out;
    out.s_arg = zeta.zeta();
    const double r = zeta.r, phi = zeta.phi;
    const double n = double(laps);
    if (r < 1e-30) {  // analytic limit: pure displacement composition
        out.phase = 0.0;
        out.d_arg = alpha;
        return out;
    }
    const double x = r / (2.0 * n);
    const double coth = std::cosh(x) / std::sinh(x);
    const double csch2 = 1.0 / (std::sinh(x) * std::sinh(x));
    out.phase = -std::imag((alpha / n) * (alpha / n) * std::polar(1.0, -phi)) * 0.25 * csch2 *
                (std::sinh(r) - n * std::sinh(r / n));
    const Complex eip = std::polar(1.0, phi);
    out.d_arg = alpha / (2.0 * n) * (1.0 - std::cosh(r) + coth * std::sinh(r)) -
                std::conj(alpha) / (2.0 * n) * eip *
                    ((std::cosh(r) - 1.0) * coth - std::sinh(r));
    return out;
}

/// State after `laps` round trips, squeeze first then displace each lap:
/// [D(alpha/laps) S(zeta/laps)]^laps |0>.
struct TrotterStateResult {
    FockVector state;
    double leakage = 0.0;
    bool leakage_warning = false;  // set when leakage > 1e-3
};

inline TrotterStateResult trotter_state(Complex alpha, const SqueezeParam& zeta, long laps,
                                        int dim) {
    if (laps < 1) throw std::invalid_argument("trotter_state: laps must be >= 1");
    const double n = double(laps);
    const OperatorMatrix lap = fock::displacement(alpha / n, dim) *
                               fock::squeeze(SqueezeParam(zeta.r / n, zeta.phi), dim);
    // binary power of the per-lap operator
    CMatrix acc = CMatrix::Identity(dim, dim);
    CMatrix base = lap.entries;
    long e = laps;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    TrotterStateResult out{FockVector(acc.col(0), dim, 1), 0.0, false};
    out.leakage = out.state.leakage();
    out.leakage_warning = out.leakage > 1e-3;
    return out;
}

/// e^{i theta} S(zeta) D(alpha_tilde) |0>, the limit of trotter_state.
inline FockVector limit_state(Complex alpha, const SqueezeParam& zeta, int dim) {
    const LimitParams lp = limit_params(alpha, zeta);
    FockVector v = fock::squeeze(zeta, dim) * (fock::displacement(lp.alpha_tilde, dim) *
                                               FockVector::vacuum(dim));
    v.amplitudes *= std::polar(1.0, lp.theta);
    return v;
}

/// Characteristic function <psi| exp(gamma a^dag - gamma* a) |psi> of the
/// limit state, as a closed form. Internal units m = omega = hbar = 1; the
/// caller maps (q, p) to gamma = (-i q + p)/sqrt(2) in those units.
inline Complex characteristic_function(Complex alpha, const SqueezeParam& zeta, Complex gamma) {
    const double r = zeta.r, phi = zeta.phi;
    const Complex eip = std::polar(1.0, phi);
    const Complex kappa = gamma * std::cosh(r) + std::sinh(r) * eip * std::conj(gamma);
    const Complex t = alpha * gamma * std::conj(eip);
    const Complex f = hyper::cosh1_over_r(r) * (std::conj(t) - t) -
                      hyper::sinhc(r) * (alpha * std::conj(gamma) - std::conj(alpha) * gamma);
    return std::exp(-0.5 * std::norm(kappa) + f);
}

/// Quadrature variances of the limit state, independent of alpha.
/// dq2 is in units hbar/(2 m omega), dp2 in units m omega hbar / 2, and
/// product in units hbar/2, so vacuum gives (1, 1, 1).
struct UncertaintyReport {
    double dq2 = 1.0;
    double dp2 = 1.0;
    double product = 1.0;
};

inline UncertaintyReport quadrature_uncertainties(const SqueezeParam& zeta) {
    const double r = zeta.r, phi = zeta.phi;
    const Complex es = std::polar(std::sinh(r), phi);  // (sinh r / r) zeta
    UncertaintyReport out;
    out.dq2 = std::norm(es - std::cosh(r));
    out.dp2 = std::norm(es + std::cosh(r));
    const double s2 = std::sinh(r) * std::sinh(r), c2 = std::cosh(r) * std::cosh(r);
    out.product = std::sqrt(s2 * s2 + c2 * c2 - 2.0 * std::cos(2.0 * phi) * s2 * c2);
    return out;
}

}  // namespace cslight::trotter
