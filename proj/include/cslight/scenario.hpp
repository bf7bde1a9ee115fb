#pragma once

#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cslight/crystal.hpp"

namespace cslight::scenario {

/// A scenario document: the resonator physics plus optional artifact
/// settings (output path, grid spec, cutoff, dim) that CLI flags override.
struct Scenario {
    crystal::ResonatorScenario physics{};
    std::optional<std::string> out;
    std::optional<std::string> grid;
    std::optional<int> cutoff;
    std::optional<int> dim;
};

namespace detail {

inline void apply_key(Scenario& sc, const std::string& key, const std::string& raw) {
    auto num = [&] {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos);
        while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
        if (pos != raw.size())
            throw std::runtime_error("scenario: bad numeric value for '" + key + "': " + raw);
        return v;
    };
    auto integer = [&] {
        const double v = num();
        const long l = std::lround(v);
        if (double(l) != v)
            throw std::runtime_error("scenario: key '" + key + "' must be an integer");
        return l;
    };
    crystal::ResonatorScenario& p = sc.physics;
    if (key == "W_pump") p.w_pump = num();
    else if (key == "d") p.d = num();
    else if (key == "chi2_tilde") p.chi2_tilde = num();
    else if (key == "N_laps") p.n_laps = integer();
    else if (key == "vg_over_c") p.vg_over_c = num();
    else if (key == "l_I") p.l_crystal = num();
    else if (key == "sigma_em") p.sigma_em = num();
    else if (key == "rho0") p.rho0 = num();
    else if (key == "dtau2") p.dtau2 = num();
    else if (key == "n_refr") p.n_refr = num();
    else if (key == "band_index") p.band_index = int(integer());
    else if (key == "l_A") p.crystal.l_a = num();
    else if (key == "l_B") p.crystal.l_b = num();
    else if (key == "eps_A_rel") p.crystal.eps_a_rel = num();
    else if (key == "eps_B_rel") p.crystal.eps_b_rel = num();
    else if (key == "out") sc.out = raw;
    else if (key == "grid") sc.grid = raw;
    else if (key == "cutoff") sc.cutoff = int(integer());
    else if (key == "dim") sc.dim = int(integer());
    else throw std::runtime_error("scenario: unknown key '" + key + "'");
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Parse a scenario from text: JSON when the first non-blank character is
/// '{', otherwise `key = value` lines ('#' starts a comment). Missing keys
/// keep their defaults; unknown keys are rejected.
inline Scenario parse(const std::string& text) {
    Scenario sc;
    const std::string body = detail::trim(text);
    if (!body.empty() && body.front() == '{') {
        const nlohmann::json j = nlohmann::json::parse(body);
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_string())
                detail::apply_key(sc, it.key(), it.value().get<std::string>());
            else if (it.value().is_number() || it.value().is_boolean()) {
                std::ostringstream os;
                os.precision(17);
                os << it.value();
                detail::apply_key(sc, it.key(), os.str());
            } else
                throw std::runtime_error("scenario: unsupported JSON value for '" + it.key() +
                                         "'");
        }
        return sc;
    }
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("scenario: expected 'key = value', got: " + line);
        detail::apply_key(sc, detail::trim(line.substr(0, eq)),
                          detail::trim(line.substr(eq + 1)));
    }
    return sc;
}

inline Scenario load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("scenario: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

/// The applied physics values, for echoing into reports.
inline nlohmann::ordered_json echo(const crystal::ResonatorScenario& p) {
    nlohmann::ordered_json j;
    j["W_pump"] = p.w_pump;
    j["d"] = p.d;
    j["chi2_tilde"] = p.chi2_tilde;
    j["N_laps"] = p.n_laps;
    j["vg_over_c"] = p.vg_over_c;
    j["l_I"] = p.l_crystal;
    j["sigma_em"] = p.sigma_em;
    j["rho0"] = p.rho0;
    j["dtau2"] = p.dtau2;
    j["n_refr"] = p.n_refr;
    j["band_index"] = p.band_index;
    j["l_A"] = p.crystal.l_a;
    j["l_B"] = p.crystal.l_b;
    j["eps_A_rel"] = p.crystal.eps_a_rel;
    j["eps_B_rel"] = p.crystal.eps_b_rel;
    return j;
}

}  // namespace cslight::scenario
