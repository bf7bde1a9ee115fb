#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cslight/constants.hpp"
#include "cslight/hyperbolic.hpp"

namespace cslight::crystal {

/// Two-layer unit cell of the 1-D photonic crystal. Defaults are the
/// LiNbO3/air stack: l_A = l_B = 5.5e-7 m, n_A = 2.22.
struct CrystalSpec {
    double l_a = 5.5e-7;           // m
    double l_b = 5.5e-7;           // m
    double eps_a_rel = 2.22 * 2.22;
    double eps_b_rel = 1.0;

    double period() const { return l_a + l_b; }
    double zone_edge() const { return constants::pi / period(); }
    /// 2 pi c / period; omega/omega_scale is the dimensionless frequency
    /// omega (l_A + l_B) / (2 pi c).
    double omega_scale() const { return 2.0 * constants::pi * constants::speed_of_light / period(); }
};

struct BandPoint {
    double k = 0.0;      // 1/m, in the reduced zone
    int band = 1;        // 1-based, counted from the bottom
    double omega = 0.0;  // rad/s
    double vg = 0.0;     // m/s
};

/// Bloch dispersion residual
///   cos[(l_A+l_B)k] - cos(l_A K_A) cos(l_B K_B)
///     + (K_A^2+K_B^2)/(2 K_A K_B) sin(l_A K_A) sin(l_B K_B)
/// with K_i = (omega/c) sqrt(eps_i). Propagating solutions are its zeros.
/// The omega -> 0 limit is taken analytically (the ratio term is 0/0 there).
inline double dispersion_residual(double omega, double k, const CrystalSpec& spec) {
    if (omega < 0.0) throw std::domain_error("dispersion_residual: omega must be >= 0");
    const double ck = std::cos(spec.period() * k);
    if (omega == 0.0) return ck - 1.0;
    const double ka = omega / constants::speed_of_light * std::sqrt(spec.eps_a_rel);
    const double kb = omega / constants::speed_of_light * std::sqrt(spec.eps_b_rel);
    return ck - std::cos(spec.l_a * ka) * std::cos(spec.l_b * kb) +
           (ka * ka + kb * kb) / (2.0 * ka * kb) * std::sin(spec.l_a * ka) *
               std::sin(spec.l_b * kb);
}

namespace detail {

// Band indices are ill-defined exactly at k = 0 and k = pi/period, where the
// residual only touches zero. Solves nudge k this far inside the zone.
inline constexpr double kZoneInset = 1e-6;
inline constexpr double kScanStepNorm = 1e-3;   // omega scan step / omega_scale
inline constexpr double kResidualTol = 1e-12;

inline double clamp_k(double k, const CrystalSpec& spec) {
    const double edge = spec.zone_edge();
    return std::clamp(std::abs(k), kZoneInset * edge, (1.0 - kZoneInset) * edge);
}

/// Illinois-style false position: secant steps with the stagnant endpoint's
/// value halved on repeated same-side moves, falling back to bisection when
/// the secant leaves the bracket. Drives |residual| below kResidualTol.
inline double refine_root(double lo, double hi, double flo, double fhi, double k,
                          const CrystalSpec& spec) {
    int side = 0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (fhi != flo) {
            const double sec = hi - fhi * (hi - lo) / (fhi - flo);
            if (sec > lo && sec < hi) mid = sec;
        }
        const double fm = dispersion_residual(mid, k, spec);
        if (std::abs(fm) <= kResidualTol) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
            if (side == -1) fhi *= 0.5;
            side = -1;
        } else {
            hi = mid;
            fhi = fm;
            if (side == +1) flo *= 0.5;
            side = +1;
        }
        if (hi - lo <= 1e-300) break;
    }
    std::ostringstream msg;
    msg << "band_frequency: root refinement did not converge in [" << lo << ", " << hi
        << "] with residuals [" << flo << ", " << fhi << "] at k = " << k;
    throw std::runtime_error(msg.str());
}

}  // namespace detail

/// Frequencies of bands 1..n_bands at fixed k: the first n_bands positive
/// roots of the dispersion residual, found by scanning in omega and refining
/// each bracket. Throws if the scan cap is exhausted before n_bands roots.
inline std::vector<double> band_frequencies(double k, int n_bands, const CrystalSpec& spec) {
    if (n_bands < 1) throw std::invalid_argument("band_frequencies: need n_bands >= 1");
    const double kk = detail::clamp_k(k, spec);
    const double wu = spec.omega_scale();
    const double step = detail::kScanStepNorm * wu;
    const double cap = (0.40 * n_bands + 1.8) * wu;
    std::vector<double> roots;
    roots.reserve(n_bands);
    double prev_w = 0.0;
    double prev_f = dispersion_residual(0.0, kk, spec);
    for (double w = step; w <= cap; w += step) {
        const double f = dispersion_residual(w, kk, spec);
        if ((f < 0.0) != (prev_f < 0.0)) {
            roots.push_back(detail::refine_root(prev_w, w, prev_f, f, kk, spec));
            if (int(roots.size()) == n_bands) return roots;
        }
        prev_w = w;
        prev_f = f;
    }
    std::ostringstream msg;
    msg << "band_frequency: only " << roots.size() << " band(s) found below the scan cap "
        << cap << " rad/s at k = " << kk;
    throw std::runtime_error(msg.str());
}

inline double band_frequency(double k, int band, const CrystalSpec& spec) {
    return band_frequencies(k, band, spec).back();
}

/// |d omega / d k| by a central difference with one Richardson step,
/// h = 1e-6 * pi / (l_A + l_B).
inline double group_velocity(double k, int band, const CrystalSpec& spec) {
    const double edge = spec.zone_edge();
    const double h = 1e-6 * edge;
    const double kk = std::clamp(detail::clamp_k(k, spec), h + detail::kZoneInset * edge,
                                 edge * (1.0 - detail::kZoneInset) - h);
    auto slope = [&](double hh) {
        return (band_frequency(kk + hh, band, spec) - band_frequency(kk - hh, band, spec)) /
               (2.0 * hh);
    };
    const double d1 = slope(h);
    const double d2 = slope(0.5 * h);
    return std::abs((4.0 * d2 - d1) / 3.0);
}

/// Invert v_g(k) = target on the band's rising segment nearest k = 0.
/// Throws (listing the attainable range) when the target is outside it.
inline BandPoint solve_k_for_vg(double target_vg_over_c, int band, const CrystalSpec& spec) {
    const double target = target_vg_over_c * constants::speed_of_light;
    const double edge = spec.zone_edge();
    const int n_scan = 65;
    std::vector<double> ks(n_scan), vs(n_scan);
    for (int i = 0; i < n_scan; ++i) {
        ks[i] = edge * (detail::kZoneInset +
                        (1.0 - 2.0 * detail::kZoneInset) * double(i) / double(n_scan - 1));
        vs[i] = group_velocity(ks[i], band, spec);
    }
    const int peak = int(std::max_element(vs.begin(), vs.end()) - vs.begin());
    const double v_min = vs.front(), v_max = vs[peak];
    if (target <= v_min || target >= v_max) {
        std::ostringstream msg;
        msg << "solve_k_for_vg: v_g/c = " << target_vg_over_c << " is unattainable on band "
            << band << "; the segment nearest k = 0 covers v_g/c in ["
            << v_min / constants::speed_of_light << ", " << v_max / constants::speed_of_light
            << "]";
        throw std::runtime_error(msg.str());
    }
    double lo = ks.front(), hi = ks[peak];
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (group_velocity(mid, band, spec) < target)
            lo = mid;
        else
            hi = mid;
    }
    BandPoint pt;
    pt.k = 0.5 * (lo + hi);
    pt.band = band;
    pt.omega = band_frequency(pt.k, band, spec);
    pt.vg = group_velocity(pt.k, band, spec);
    return pt;
}

// ---------------------------------------------------------------------------
// Scalar chain from laser/crystal/gain-medium inputs to r, alpha, alpha',
// photon number and output flux.
// ---------------------------------------------------------------------------

/// Pump field amplitude from radiant flux W through a beam of radius d:
/// I = W/(pi d^2) = eps0 c n A^2 / 2.
inline double pump_amplitude(double w_pump, double d, double n_refr = 1.0) {
    if (d <= 0.0 || n_refr <= 0.0) throw std::domain_error("pump_amplitude: d, n must be > 0");
    if (w_pump < 0.0) throw std::domain_error("pump_amplitude: W must be >= 0");
    return std::sqrt(2.0 * w_pump /
                     (constants::pi * d * d * constants::vacuum_permittivity *
                      constants::speed_of_light * n_refr));
}

struct LapTimes {
    double dtau1 = 0.0;  // single pass through the crystal, l_I / v_g
    double t1 = 0.0;     // N dtau1
    double t2 = 0.0;     // N dtau2
};

inline LapTimes lap_times(double l_crystal, double vg, double dtau2, long laps) {
    if (vg <= 0.0) throw std::domain_error("lap_times: vg must be > 0");
    LapTimes out;
    out.dtau1 = l_crystal / vg;
    out.t1 = double(laps) * out.dtau1;
    out.t2 = double(laps) * dtau2;
    return out;
}

struct SqueezingStrength {
    double r = 0.0;
    double level_db = 0.0;  // 10 log10(e^{2r})
};

/// r = T1 omega_s A chi2_tilde.
inline SqueezingStrength squeezing_parameter(double t1, double omega_s, double amplitude,
                                             double chi2_tilde) {
    SqueezingStrength out;
    out.r = t1 * omega_s * amplitude * chi2_tilde;
    out.level_db = 20.0 * out.r / std::log(10.0);
    return out;
}

/// gamma = sqrt(2) pi (c/lambda_s) (sigma_em/sigma) rho0 dV. Passing
/// sigma_em = sigma and rho0 dV = 1 reduces it to the ideal-limit rate
/// sqrt(2) pi c / lambda_s.
inline double gain_rate(double lambda_s, double sigma_em, double sigma, double rho0, double dv) {
    if (lambda_s <= 0.0 || sigma <= 0.0) throw std::domain_error("gain_rate: bad geometry");
    return std::sqrt(2.0) * constants::pi * constants::speed_of_light / lambda_s *
           (sigma_em / sigma) * rho0 * dv;
}

/// alpha = dtau2 gamma N.
inline double displacement_parameter(double dtau2, double gamma, long laps) {
    return dtau2 * gamma * double(laps);
}

/// alpha' = alpha [ sinh(r)/r - (cosh r - 1)/r ], the limit-state displacement
/// for the resonator phase convention; alpha' -> alpha as r -> 0.
inline double lie_trotter_alpha_prime(double alpha, double r) {
    if (r < 0.0) throw std::domain_error("lie_trotter_alpha_prime: r must be >= 0");
    return alpha * (hyper::sinhc(r) - hyper::cosh1_over_r(r));
}

/// <n> of the displaced-squeezed output,
/// alpha'^2 (cosh^2 r + 2 sinh r cosh r) + (1 + alpha'^2) sinh^2 r.
inline double mean_photon_number(double r, double alpha_prime) {
    const double c = std::cosh(r), s = std::sinh(r);
    return alpha_prime * alpha_prime * (c * c + 2.0 * s * c) +
           (1.0 + alpha_prime * alpha_prime) * s * s;
}

/// Radiant flux W = hbar omega_s <n> / (4 N (dtau1 + dtau2)).
inline double output_flux(double r, double alpha_prime, double omega_s, long laps, double dtau1,
                          double dtau2) {
    return constants::hbar * omega_s * mean_photon_number(r, alpha_prime) /
           (4.0 * double(laps) * (dtau1 + dtau2));
}

/// All physical inputs of the ring-resonator scenario, SI units. Defaults
/// reproduce the LiNbO3 design point (1 mW pump, 5 um beam, 10 crystal
/// layers, N = 1000 laps, v_g/c = 0.05 on band 4).
struct ResonatorScenario {
    double w_pump = 1e-3;         // W
    double d = 5.0e-6;            // beam radius, m
    double chi2_tilde = 25.2e-12; // m/V
    long n_laps = 1000;
    double vg_over_c = 0.05;
    double l_crystal = 5.5e-6;    // nonlinear section length l_I, m
    double sigma_em = 1e-24;      // stimulated-emission cross-section, m^2
    double rho0 = 1.45e24;        // excited-atom density, 1/m^3
    double dtau2 = 4e-14;         // gain-medium pass time, s
    double n_refr = 1.0;
    int band_index = 4;
    CrystalSpec crystal{};
};

struct DesignReport {
    double amplitude = 0.0;       // A, V/m
    double dtau1 = 0.0;           // s
    double t1 = 0.0;              // s
    double omega_s = 0.0;         // rad/s
    double lambda_s = 0.0;        // m
    double k_s = 0.0;             // 1/m
    double r = 0.0;
    double squeezing_db = 0.0;
    double gamma = 0.0;           // 1/s
    double alpha = 0.0;
    double alpha_prime = 0.0;
    double mean_n = 0.0;
    double w_out = 0.0;           // W
    // diagnostics
    double beta = 0.0;            // omega_s A chi2_tilde / v_g, 1/m
    double kappa = 0.0;           // hbar omega_s A chi2_tilde, J
    double pump_omega_normalized = 0.0;  // 2 omega_s (l_A+l_B)/(2 pi c)
    bool pump_on_band8 = false;
};

/// The full design chain: dispersion solve for the target v_g, then the
/// scalar pipeline down to the output flux.
inline DesignReport run_design(const ResonatorScenario& sc) {
    DesignReport rep;
    const BandPoint pt = solve_k_for_vg(sc.vg_over_c, sc.band_index, sc.crystal);
    rep.omega_s = pt.omega;
    rep.k_s = pt.k;
    rep.lambda_s = 2.0 * constants::pi * constants::speed_of_light / pt.omega;
    rep.amplitude = pump_amplitude(sc.w_pump, sc.d, sc.n_refr);
    const double vg = sc.vg_over_c * constants::speed_of_light;
    const LapTimes lt = lap_times(sc.l_crystal, vg, sc.dtau2, sc.n_laps);
    rep.dtau1 = lt.dtau1;
    rep.t1 = lt.t1;
    const SqueezingStrength sq = squeezing_parameter(lt.t1, rep.omega_s, rep.amplitude,
                                                     sc.chi2_tilde);
    rep.r = sq.r;
    rep.squeezing_db = sq.level_db;
    const double sigma = constants::pi * sc.d * sc.d;
    const double dv = constants::speed_of_light * sc.dtau2 * sigma;
    rep.gamma = gain_rate(rep.lambda_s, sc.sigma_em, sigma, sc.rho0, dv);
    rep.alpha = displacement_parameter(sc.dtau2, rep.gamma, sc.n_laps);
    rep.alpha_prime = lie_trotter_alpha_prime(rep.alpha, rep.r);
    rep.mean_n = mean_photon_number(rep.r, rep.alpha_prime);
    rep.w_out = output_flux(rep.r, rep.alpha_prime, rep.omega_s, sc.n_laps, lt.dtau1, sc.dtau2);
    rep.beta = rep.omega_s * rep.amplitude * sc.chi2_tilde / vg;
    rep.kappa = constants::hbar * rep.omega_s * rep.amplitude * sc.chi2_tilde;
    rep.pump_omega_normalized = 2.0 * rep.omega_s / sc.crystal.omega_scale();
    // pump-band condition omega_p = 2 omega_s on band 8, reported not enforced
    double lo8 = 1e308, hi8 = 0.0;
    for (int i = 0; i <= 16; ++i) {
        const double k = sc.crystal.zone_edge() * (detail::kZoneInset +
                         (1.0 - 2.0 * detail::kZoneInset) * double(i) / 16.0);
        const double w8 = band_frequency(k, 8, sc.crystal);
        lo8 = std::min(lo8, w8);
        hi8 = std::max(hi8, w8);
    }
    rep.pump_on_band8 = (2.0 * rep.omega_s >= lo8 && 2.0 * rep.omega_s <= hi8);
    return rep;
}

}  // namespace cslight::crystal
