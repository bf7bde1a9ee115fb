#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "cslight/crystal.hpp"
#include "cslight/entangle.hpp"
#include "cslight/scenario.hpp"
#include "cslight/trotter.hpp"

namespace cslight::artifacts {

/// 9 significant digits: below every test tolerance, above double noise.
inline std::string num9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw std::invalid_argument("linspace: need n >= 1");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = (n == 1) ? lo : lo + (hi - lo) * double(i) / double(n - 1);
    return out;
}

/// "lo:hi:n" -> grid.
inline std::vector<double> parse_axis(const std::string& s) {
    double lo, hi;
    int n;
    if (std::sscanf(s.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3)
        throw std::runtime_error("bad grid axis '" + s + "', expected lo:hi:n");
    return linspace(lo, hi, n);
}

/// "r0:r1:n,a0:a1:n" -> (r grid, alpha' grid).
inline std::pair<std::vector<double>, std::vector<double>> parse_grid(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw std::runtime_error("bad grid '" + s + "', expected r0:r1:n,a0:a1:n");
    return {parse_axis(s.substr(0, comma)), parse_axis(s.substr(comma + 1))};
}

/// Band-structure table over a uniform zone grid. The grid midpoints the
/// zone ((i + 1/2)/n of the edge) so no sample sits on the boundary, where
/// band indices degenerate.
inline std::string bands_csv(const crystal::CrystalSpec& spec, int k_points, int n_bands) {
    if (k_points < 1 || n_bands < 1)
        throw std::invalid_argument("bands_csv: k_points and n_bands must be >= 1");
    std::string out = "k,band,omega,omega_normalized,vg_over_c\n";
    const double edge = spec.zone_edge();
    for (int i = 0; i < k_points; ++i) {
        const double k = edge * (double(i) + 0.5) / double(k_points);
        const std::vector<double> ws = crystal::band_frequencies(k, n_bands, spec);
        for (int b = 1; b <= n_bands; ++b) {
            const double w = ws[b - 1];
            const double vg = crystal::group_velocity(k, b, spec);
            out += num9(k) + "," + std::to_string(b) + "," + num9(w) + "," +
                   num9(w / spec.omega_scale()) + "," +
                   num9(vg / constants::speed_of_light) + "\n";
        }
    }
    return out;
}

/// Full design chain as a JSON report; every quantity carries its unit.
inline nlohmann::ordered_json design_json(const crystal::ResonatorScenario& sc) {
    const crystal::DesignReport rep = crystal::run_design(sc);
    nlohmann::ordered_json j;
    auto put = [&j](const char* name, double value, const char* unit) {
        j[name] = {{"value", value}, {"unit", unit}};
    };
    put("A", rep.amplitude, "V/m");
    put("dtau1", rep.dtau1, "s");
    put("T1", rep.t1, "s");
    put("omega_s", rep.omega_s, "rad/s");
    put("lambda_s", rep.lambda_s, "m");
    put("k_s", rep.k_s, "1/m");
    put("r", rep.r, "1");
    put("squeezing_dB", rep.squeezing_db, "dB");
    put("gamma", rep.gamma, "1/s");
    put("alpha", rep.alpha, "1");
    put("alpha_prime", rep.alpha_prime, "1");
    put("mean_n", rep.mean_n, "1");
    put("W_out", rep.w_out, "W");
    j["diagnostics"] = {{"beta", rep.beta},
                        {"kappa", rep.kappa},
                        {"pump_omega_normalized", rep.pump_omega_normalized},
                        {"pump_on_band8", rep.pump_on_band8}};
    j["scenario"] = scenario::echo(sc);
    return j;
}

/// Trotter-vs-limit convergence rows: N,infidelity,leakage.
inline std::string trotter_csv(Complex alpha, double r, double phi,
                               const std::vector<long>& n_list, int dim) {
    const SqueezeParam zeta(r, phi);
    const FockVector limit = trotter::limit_state(alpha, zeta, dim);
    std::string out = "N,infidelity,leakage\n";
    for (long n : n_list) {
        const trotter::TrotterStateResult res = trotter::trotter_state(alpha, zeta, n, dim);
        const double infid = 1.0 - fock::fidelity(res.state, limit);
        out += std::to_string(n) + "," + num9(infid) + "," + num9(res.leakage) + "\n";
    }
    return out;
}

inline std::string entangle_csv(const std::vector<double>& r_grid,
                                const std::vector<double>& alpha_grid, int cutoff) {
    const std::vector<entangle::SweepPoint> rows =
        entangle::criterion_sweep(r_grid, alpha_grid, cutoff);
    std::string out = "r,alpha_prime,criterion,stable\n";
    for (const auto& p : rows)
        out += num9(p.r) + "," + num9(p.alpha_prime) + "," + num9(p.value) + "," +
               (p.stable ? "1" : "0") + "\n";
    return out;
}

inline nlohmann::ordered_json entangle_point_json(double r, double alpha_prime, int cutoff) {
    const entangle::CriterionResult res = entangle::duan_criterion(r, alpha_prime, cutoff);
    nlohmann::ordered_json j;
    j["r"] = r;
    j["alpha_prime"] = alpha_prime;
    j["criterion"] = res.value;
    j["n_mean"] = res.n_mean;
    j["a_dag_mean"] = {{"re", res.a_dag_mean.real()}, {"im", res.a_dag_mean.imag()}};
    j["ab_corr"] = {{"re", res.ab_corr.real()}, {"im", res.ab_corr.imag()}};
    j["cutoff"] = res.cutoff;
    j["stable"] = res.stable;
    j["cutoff_drift"] = res.cutoff_drift;
    return j;
}

}  // namespace cslight::artifacts
