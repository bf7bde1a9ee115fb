#include <catch2/catch_amalgamated.hpp>

#include "cslight/crystal.hpp"
#include "cslight/fock.hpp"

using namespace cslight;
using namespace cslight::crystal;
using Catch::Approx;

namespace {
const CrystalSpec kDefault{};
constexpr double kC = constants::speed_of_light;
}  // namespace

TEST_CASE("dispersion residual") {
    SECTION("omega -> 0 limit at k = 0") {
        REQUIRE(dispersion_residual(0.0, 0.0, kDefault) == 0.0);
    }
    SECTION("paper design point sits on the relation") {
        REQUIRE(std::abs(dispersion_residual(2.03e15, 4.24e4, kDefault)) <= 1e-2);
    }
    SECTION("even in k") {
        for (double k : {1e4, 7e5, 2.3e6})
            REQUIRE(dispersion_residual(1.9e15, k, kDefault) ==
                    Approx(dispersion_residual(1.9e15, -k, kDefault)).margin(1e-14));
    }
    SECTION("negative omega rejected") {
        REQUIRE_THROWS_AS(dispersion_residual(-1.0, 0.0, kDefault), std::domain_error);
    }
}

TEST_CASE("band frequencies") {
    const double k_paper = 4.24e4;
    SECTION("band 4 at the paper wavenumber") {
        const double w = band_frequency(k_paper, 4, kDefault);
        REQUIRE(w / kDefault.omega_scale() == Approx(1.19).epsilon(0.01));
        REQUIRE(w == Approx(2.03e15).epsilon(0.01));
    }
    SECTION("bands are strictly ordered") {
        for (double frac : {0.05, 0.3, 0.7, 0.95}) {
            const std::vector<double> ws =
                band_frequencies(frac * kDefault.zone_edge(), 8, kDefault);
            for (std::size_t b = 1; b < ws.size(); ++b) REQUIRE(ws[b] > ws[b - 1]);
        }
    }
    SECTION("solved roots satisfy the residual bound") {
        for (double frac : {0.01, 0.25, 0.5, 0.99}) {
            const double k = frac * kDefault.zone_edge();
            const std::vector<double> ws = band_frequencies(k, 8, kDefault);
            for (double w : ws) REQUIRE(std::abs(dispersion_residual(w, k, kDefault)) <= 1e-10);
        }
    }
    SECTION("band continuity along a scan") {
        const int n = 64;
        std::vector<double> prev;
        for (int i = 0; i < n; ++i) {
            const double k = kDefault.zone_edge() * (i + 0.5) / n;
            const std::vector<double> ws = band_frequencies(k, 8, kDefault);
            if (!prev.empty()) {
                const double dk = kDefault.zone_edge() / n;
                for (int b = 0; b < 8; ++b)
                    REQUIRE(std::abs(ws[b] - prev[b]) <= 1.5 * kC * dk);
            }
            prev = ws;
        }
    }
}

TEST_CASE("group velocity") {
    SECTION("slow light on band 4 at the paper point") {
        REQUIRE(group_velocity(4.24e4, 4, kDefault) / kC == Approx(0.05).epsilon(0.02));
    }
    SECTION("band extremum at the zone edge") {
        REQUIRE(group_velocity(kDefault.zone_edge(), 4, kDefault) / kC < 1e-2);
    }
    SECTION("never superluminal on bands 1-8") {
        for (int i = 1; i <= 16; ++i) {
            const double k = kDefault.zone_edge() * i / 17.0;
            for (int b = 1; b <= 8; ++b) REQUIRE(group_velocity(k, b, kDefault) <= kC);
        }
    }
    SECTION("matches a secant slope between solved band points") {
        const int n = 129;
        const double edge = kDefault.zone_edge();
        std::vector<double> ks(n), ws(n);
        for (int i = 0; i < n; ++i) {
            ks[i] = edge * (i + 0.5) / n;
            ws[i] = band_frequency(ks[i], 4, kDefault);
        }
        for (int i = 1; i + 1 < n; ++i) {
            const double secant = std::abs(ws[i + 1] - ws[i - 1]) / (ks[i + 1] - ks[i - 1]);
            const double vg = group_velocity(ks[i], 4, kDefault);
            if (vg / kC < 5e-3) continue;  // relative check meaningless at extrema
            REQUIRE(secant == Approx(vg).epsilon(0.01));
        }
    }
}

TEST_CASE("solve_k_for_vg") {
    SECTION("paper design point") {
        const BandPoint pt = solve_k_for_vg(0.05, 4, kDefault);
        REQUIRE(pt.k * kDefault.period() == Approx(4.66e-2).epsilon(0.02));
        const double lambda = 2.0 * constants::pi * kC / pt.omega;
        REQUIRE(lambda == Approx(9.29e-7).epsilon(0.01));
        REQUIRE(std::abs(dispersion_residual(pt.omega, pt.k, kDefault)) <= 1e-10);
        REQUIRE(pt.vg / kC == Approx(0.05).epsilon(1e-6));
    }
    SECTION("unattainable target reports the band range") {
        REQUIRE_THROWS_WITH(solve_k_for_vg(0.9, 4, kDefault),
                            Catch::Matchers::ContainsSubstring("unattainable"));
    }
    SECTION("pump condition: 2 omega_s lies on band 8 near normalized 2.37") {
        const BandPoint pt = solve_k_for_vg(0.05, 4, kDefault);
        const double pump_norm = 2.0 * pt.omega / kDefault.omega_scale();
        REQUIRE(pump_norm == Approx(2.37).epsilon(0.01));
        double lo = 1e300, hi = 0.0;
        for (int i = 0; i <= 16; ++i) {
            const double k = kDefault.zone_edge() * (i + 0.5) / 17.0;
            const double w8 = band_frequency(k, 8, kDefault);
            lo = std::min(lo, w8);
            hi = std::max(hi, w8);
        }
        REQUIRE(2.0 * pt.omega >= lo);
        REQUIRE(2.0 * pt.omega <= hi);
    }
}

TEST_CASE("pump amplitude") {
    REQUIRE(pump_amplitude(1e-3, 5e-6, 1.0) == Approx(9.79e4).epsilon(0.005));
    REQUIRE(pump_amplitude(4e-3, 5e-6, 1.0) ==
            Approx(2.0 * pump_amplitude(1e-3, 5e-6, 1.0)).epsilon(1e-12));
    REQUIRE(pump_amplitude(0.0, 5e-6, 1.0) == 0.0);
}

TEST_CASE("lap times") {
    const LapTimes lt = lap_times(5.5e-6, 0.05 * kC, 4e-14, 1000);
    REQUIRE(lt.t1 == Approx(3.67e-10).epsilon(0.005));
    REQUIRE(lt.t2 == Approx(4e-11).epsilon(1e-12));
    REQUIRE(lap_times(5.5e-6, 0.05 * kC, 4e-14, 1).t1 == Approx(lt.dtau1).epsilon(1e-12));
    REQUIRE(lap_times(5.5e-6, 0.10 * kC, 4e-14, 1000).t1 == Approx(lt.t1 / 2.0).epsilon(1e-12));
}

TEST_CASE("squeezing parameter and level") {
    SECTION("paper scenario") {
        const SqueezingStrength s =
            squeezing_parameter(3.67e-10, 2.03e15, 9.79e4, 25.2e-12);
        REQUIRE(s.r == Approx(1.84).epsilon(0.01));
        REQUIRE(s.level_db == Approx(15.9).margin(0.1));
    }
    SECTION("zero factor kills the squeeze") {
        const SqueezingStrength s = squeezing_parameter(0.0, 2.03e15, 9.79e4, 25.2e-12);
        REQUIRE(s.r == 0.0);
        REQUIRE(s.level_db == 0.0);
    }
    SECTION("r = 1 is 8.69 dB") {
        REQUIRE(squeezing_parameter(1.0, 1.0, 1.0, 1.0).level_db == Approx(8.69).margin(0.01));
    }
}

TEST_CASE("gain rate") {
    const double sigma = constants::pi * 5e-6 * 5e-6;
    const double dv = kC * 4e-14 * sigma;
    SECTION("paper scenario") {
        REQUIRE(gain_rate(9.29e-7, 1e-24, sigma, 1.45e24, dv) == Approx(2.50e10).epsilon(0.005));
    }
    SECTION("no excited atoms, no gain") {
        REQUIRE(gain_rate(9.29e-7, 1e-24, sigma, 0.0, dv) == 0.0);
    }
    SECTION("ideal limit sqrt(2) pi c / lambda") {
        REQUIRE(gain_rate(9.29e-7, sigma, sigma, 1.0, 1.0) ==
                Approx(std::sqrt(2.0) * constants::pi * kC / 9.29e-7).epsilon(1e-12));
    }
}

TEST_CASE("displacement parameter") {
    const double sigma = constants::pi * 5e-6 * 5e-6;
    const double dv = kC * 4e-14 * sigma;
    const double gamma = gain_rate(9.29e-7, 1e-24, sigma, 1.45e24, dv);
    SECTION("paper scenario") {
        REQUIRE(displacement_parameter(4e-14, gamma, 1000) == Approx(1.00).epsilon(0.01));
    }
    SECTION("no laps, no displacement") {
        REQUIRE(displacement_parameter(4e-14, gamma, 0) == 0.0);
    }
    SECTION("linear in the excited-atom density") {
        const double gamma2 = gain_rate(9.29e-7, 1e-24, sigma, 2.9e24, dv);
        REQUIRE(displacement_parameter(4e-14, gamma2, 1000) ==
                Approx(2.0 * displacement_parameter(4e-14, gamma, 1000)).epsilon(1e-12));
    }
}

TEST_CASE("lie_trotter_alpha_prime") {
    SECTION("paper value") {
        REQUIRE(lie_trotter_alpha_prime(1.00, 1.84) == Approx(0.458).epsilon(0.005));
    }
    SECTION("r -> 0 limit") {
        REQUIRE(lie_trotter_alpha_prime(0.73, 0.0) == Approx(0.73).epsilon(1e-12));
    }
    SECTION("strictly decreasing in r") {
        double prev = lie_trotter_alpha_prime(1.0, 0.0);
        for (double r = 0.1; r <= 3.0; r += 0.1) {
            const double v = lie_trotter_alpha_prime(1.0, r);
            REQUIRE(v < prev);
            prev = v;
        }
    }
    SECTION("negative r rejected") {
        REQUIRE_THROWS_AS(lie_trotter_alpha_prime(1.0, -0.2), std::domain_error);
    }
}

TEST_CASE("mean photon number") {
    SECTION("coherent limit") {
        REQUIRE(mean_photon_number(0.0, 0.7) == Approx(0.49).epsilon(1e-12));
    }
    SECTION("squeezed vacuum limit") {
        REQUIRE(mean_photon_number(1.3, 0.0) ==
                Approx(std::sinh(1.3) * std::sinh(1.3)).epsilon(1e-12));
    }
    SECTION("matrix oracle <alpha'| b^dag b |alpha'> with b = a cosh r + a^dag sinh r") {
        const int dim = 90;
        const double r = 1.84, ap = 0.458;
        const CMatrix a = fock::ladder(dim).entries;
        const CMatrix b = std::cosh(r) * a + std::sinh(r) * a.adjoint();
        const FockVector coh = fock::displacement(ap, dim) * FockVector::vacuum(dim);
        const CVector bv = b * coh.amplitudes;
        const double oracle = bv.squaredNorm();
        REQUIRE(mean_photon_number(r, ap) == Approx(oracle).epsilon(1e-8));
        REQUIRE(mean_photon_number(r, ap) == Approx(17.7).epsilon(0.005));
    }
}

TEST_CASE("output flux") {
    SECTION("paper scenario") {
        REQUIRE(output_flux(1.84, 0.458, 2.03e15, 1000, 3.67e-13, 4e-14) ==
                Approx(2.31e-9).epsilon(0.03));
    }
    SECTION("dark input") {
        REQUIRE(output_flux(0.0, 0.0, 2.03e15, 1000, 3.67e-13, 4e-14) == 0.0);
    }
    SECTION("linear in the photon number") {
        const double w1 = output_flux(0.7, 0.3, 2.03e15, 1000, 3.67e-13, 4e-14);
        const double w2 = output_flux(1.1, 0.9, 2.03e15, 1000, 3.67e-13, 4e-14);
        REQUIRE(w1 / w2 ==
                Approx(mean_photon_number(0.7, 0.3) / mean_photon_number(1.1, 0.9))
                    .epsilon(1e-12));
    }
}

TEST_CASE("full design chain reproduces the golden values") {
    const ResonatorScenario sc{};  // paper defaults
    const DesignReport rep = run_design(sc);
    REQUIRE(rep.amplitude == Approx(9.79e4).epsilon(0.005));
    REQUIRE(rep.t1 == Approx(3.67e-10).epsilon(0.005));
    REQUIRE(rep.r == Approx(1.84).epsilon(0.01));
    REQUIRE(rep.squeezing_db == Approx(15.9).margin(0.1));
    REQUIRE(rep.alpha == Approx(1.00).epsilon(0.01));
    REQUIRE(rep.alpha_prime == Approx(0.458).epsilon(0.005));
    REQUIRE(rep.w_out == Approx(2.31e-9).epsilon(0.03));
    REQUIRE(rep.pump_omega_normalized == Approx(2.37).epsilon(0.01));
    REQUIRE(rep.pump_on_band8);
}
