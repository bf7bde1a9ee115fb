// Command-line front end: loads scenario files, runs the band/design/
// trotter/entanglement pipelines and emits CSV or JSON artifacts.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cslight/artifacts.hpp"

namespace {

using namespace cslight;

// accepts "1", "-0.5", "1+0.5i", "1-2i", "0.7i"
Complex parse_complex(const std::string& s) {
    const auto ipos = s.find('i');
    if (ipos == std::string::npos) return Complex(std::stod(s), 0.0);
    std::string body = s.substr(0, ipos);
    if (body.empty() || body == "+" || body == "-") body += "1";
    // split at the last +/- that is not an exponent sign or leading sign
    for (std::size_t p = body.size(); p-- > 1;) {
        if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
            std::string im = body.substr(p);
            if (im == "+") im = "1";
            if (im == "-") im = "-1";
            return Complex(std::stod(body.substr(0, p)), std::stod(im));
        }
    }
    return Complex(0.0, std::stod(body));
}

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(std::stol(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (out.empty()) throw std::runtime_error("empty N list");
    return out;
}

void emit(const std::optional<std::string>& out, const std::string& content, bool force) {
    if (!out) {
        std::cout << content;
        return;
    }
    if (std::filesystem::exists(*out) && !force)
        throw std::runtime_error("refusing to overwrite " + *out + " (use --force)");
    std::ofstream f(*out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + *out);
    f << content;
}

scenario::Scenario load_or_default(const std::string& path) {
    if (path.empty()) return scenario::Scenario{};
    return scenario::load(path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent-squeezed-light toolkit: photonic-crystal design, "
                 "Lie-Trotter states and beam-splitter entanglement"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, grid_spec, point_spec, alpha_str = "1", n_list_str =
        "8,16,32,64,128,256,512";
    int k_points = 200, n_bands = 8, cutoff = 0, dim = 0;
    double r_param = 0.5, phi_param = 0.0;
    bool force = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", scenario_path, "scenario file (JSON or key = value)");
        cmd->add_option("--out", out_path, "output path (stdout when omitted)");
        cmd->add_flag("--force", force, "allow overwriting --out");
    };

    CLI::App* bands = app.add_subcommand("bands", "band structure CSV over the reduced zone");
    add_common(bands);
    bands->add_option("--k-points", k_points, "zone grid size")->check(CLI::PositiveNumber);
    bands->add_option("--n-bands", n_bands, "bands from the bottom")->check(CLI::PositiveNumber);

    CLI::App* design = app.add_subcommand("design", "scenario -> squeezing/flux JSON report");
    add_common(design);

    CLI::App* trot = app.add_subcommand("trotter", "finite-product vs limit convergence CSV");
    add_common(trot);
    trot->add_option("--alpha", alpha_str, "displacement, e.g. 1 or 1+0.5i");
    trot->add_option("--r", r_param, "squeeze modulus");
    trot->add_option("--phi", phi_param, "squeeze phase [rad]");
    trot->add_option("--n-list", n_list_str, "comma-separated lap counts");
    trot->add_option("--dim", dim, "Fock truncation (default 60)");

    CLI::App* ent = app.add_subcommand("entangle", "Duan-Simon criterion sweep CSV / point JSON");
    add_common(ent);
    ent->add_option("--grid", grid_spec, "r0:r1:n,a0:a1:n (default 0:1.2:25,0:1.2:25)");
    ent->add_option("--point", point_spec, "single point 'r,alpha_prime' -> JSON");
    ent->add_option("--cutoff", cutoff, "summation cutoff (default 60)");

    CLI11_PARSE(app, argc, argv);

    try {
        const scenario::Scenario sc = load_or_default(scenario_path);
        const std::string out_eff = !out_path.empty() ? out_path : sc.out.value_or("");
        const std::optional<std::string> out =
            out_eff.empty() ? std::nullopt : std::optional<std::string>(out_eff);

        if (*bands) {
            emit(out, artifacts::bands_csv(sc.physics.crystal, k_points, n_bands), force);
        } else if (*design) {
            emit(out, artifacts::design_json(sc.physics).dump(2) + "\n", force);
        } else if (*trot) {
            const int d = dim > 0 ? dim : sc.dim.value_or(60);
            emit(out,
                 artifacts::trotter_csv(parse_complex(alpha_str), r_param, phi_param,
                                        parse_long_list(n_list_str), d),
                 force);
        } else if (*ent) {
            const int cut = cutoff > 0 ? cutoff : sc.cutoff.value_or(60);
            if (!point_spec.empty()) {
                double r, ap;
                if (std::sscanf(point_spec.c_str(), "%lf,%lf", &r, &ap) != 2)
                    throw std::runtime_error("bad --point, expected r,alpha_prime");
                emit(out, artifacts::entangle_point_json(r, ap, cut).dump(2) + "\n", force);
            } else {
                const std::string spec = !grid_spec.empty()
                                             ? grid_spec
                                             : sc.grid.value_or("0:1.2:25,0:1.2:25");
                const auto [rg, ag] = artifacts::parse_grid(spec);
                emit(out, artifacts::entangle_csv(rg, ag, cut), force);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
