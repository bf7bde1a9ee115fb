#pragma once

#include <cmath>
#include <vector>

#include "cslight/constants.hpp"
#include "cslight/fock.hpp"

namespace cslight::entangle {

/// Number-basis coefficients CS_n = <n | S(-r/2) D(alpha'/sqrt(2)) |0> for
/// n = 0..n_max, from the Hermite-polynomial closed form of the squeezed
/// coherent state. The Hermite recurrence is run with the tanh^{n/2}/sqrt(n!)
/// prefactor folded in per order, which keeps every intermediate O(1) instead
/// of letting H_n growth and prefactor decay overflow separately.
/// Returns a FockVector so the sum deficit 1 - sum |CS_n|^2 is reported
/// through leakage(). Below r = 1e-6 the coherent-state limit is used.
inline FockVector cs_coefficients(double r, double alpha_prime, int n_max) {
    if (r < 0.0) throw std::domain_error("cs_coefficients: r must be >= 0");
    if (n_max < 0) throw std::invalid_argument("cs_coefficients: n_max must be >= 0");
    CVector out(n_max + 1);
    if (r < 1e-6) {
        const double a = alpha_prime / std::sqrt(2.0);
        out[0] = std::exp(-0.5 * a * a);
        for (int n = 0; n < n_max; ++n) out[n + 1] = out[n] * a / std::sqrt(double(n + 1));
        return FockVector(std::move(out), n_max + 1, 1);
    }
    const double ch = std::cosh(0.5 * r), sh = std::sinh(0.5 * r), th = std::tanh(0.5 * r);
    const double abar = alpha_prime / std::sqrt(2.0) * (ch + sh);
    const Complex z = abar * (ch - sh) * Complex(0, -1) / std::sqrt(std::sinh(r));
    const double pref = std::exp(-0.5 * abar * abar * (1.0 - th)) / std::sqrt(ch);
    const Complex ic = Complex(0, 1) * std::sqrt(0.5 * th);
    // T_n = (i c)^n H_n(z) / sqrt(n!), H_{n+1} = 2 z H_n - 2 n H_{n-1}
    Complex t_prev = 0.0, t = 1.0;
    out[0] = pref;
    for (int n = 0; n < n_max; ++n) {
        Complex t_next = 2.0 * z * ic * t / std::sqrt(double(n + 1));
        if (n >= 1) t_next -= 2.0 * double(n) * ic * ic * t_prev / std::sqrt(double(n) * double(n + 1));
        out[n + 1] = pref * t_next;
        t_prev = t;
        t = t_next;
    }
    return FockVector(std::move(out), n_max + 1, 1);
}

/// Matrix element <n1 n2| exp[(r/2)(a^dag b^dag - b a)] |l k> as the finite
/// double sum over pair creations/annihilations. Zero unless
/// n1 - l = n2 - k. Factorial ratios are assembled in log space.
inline double tms_element(int n1, int n2, int l, int k, double r) {
    if (n1 < 0 || n2 < 0 || l < 0 || k < 0)
        throw std::invalid_argument("tms_element: indices must be >= 0");
    if (r < 0.0) throw std::domain_error("tms_element: r must be >= 0");
    if (n1 - l != n2 - k) return 0.0;
    if (r == 0.0) return (n1 == l && n2 == k) ? 1.0 : 0.0;
    // The alternating terms can exceed the O(1) result by many orders at
    // large indices, so the sum runs in extended precision.
    const long double lt = std::log(std::tanh(0.5L * (long double)r));
    const long double lc = std::log(std::cosh(0.5L * (long double)r));
    const long double base = 0.5L * (lgammal(l + 1.0L) + lgammal(k + 1.0L) +
                                     lgammal(n1 + 1.0L) + lgammal(n2 + 1.0L));
    const int m_lo = std::max(0, l - n1);
    const int m_hi = std::min(std::min(l, k), std::min(n1, n2) - n1 + l);
    long double sum = 0.0L;
    for (int m = m_lo; m <= m_hi; ++m) {
        const int n = n1 - l + m;  // pairs created; deltas fix it from m
        const long double lg = (long double)(m + n) * lt -
                               (long double)(l + k - 2 * m + 1) * lc + base -
                               lgammal(m + 1.0L) - lgammal(n + 1.0L) -
                               lgammal(l - m + 1.0L) - lgammal(k - m + 1.0L);
        sum += (m & 1 ? -1.0L : 1.0L) * expl(lg);
    }
    return double(sum);
}

/// Output amplitudes of the 50-50 splitter, indexed (n1, n2) up to cutoff.
struct TwoModeAmplitudes {
    CMatrix amplitudes;  // (cutoff+1) x (cutoff+1), row index n1
    int cutoff = 0;
    double leakage = 0.0;  // 1 - sum |c|^2
};

namespace detail {

/// Per-r table of tms_element values for all n1, n2, l <= cutoff (k is fixed
/// by the selection rule), so grid sweeps pay the double-sum cost once per r.
class TmsTable {
  public:
    TmsTable(double r, int cutoff) : cut_(cutoff), vals_((cutoff + 1ul) * (cutoff + 1ul) * (cutoff + 1ul), 0.0) {
        for (int n1 = 0; n1 <= cut_; ++n1)
            for (int n2 = 0; n2 <= cut_; ++n2)
                for (int l = 0; l <= cut_; ++l) {
                    const int k = l - n1 + n2;
                    if (k < 0 || k > cut_) continue;
                    at(n1, n2, l) = tms_element(n1, n2, l, k, r);
                }
    }

    double operator()(int n1, int n2, int l) const {
        return vals_[(std::size_t(n1) * (cut_ + 1) + n2) * (cut_ + 1) + l];
    }
    int cutoff() const { return cut_; }

  private:
    double& at(int n1, int n2, int l) {
        return vals_[(std::size_t(n1) * (cut_ + 1) + n2) * (cut_ + 1) + l];
    }
    int cut_;
    std::vector<double> vals_;
};

/// Amplitudes with every summation truncated at eff_cut (matrix sized to it).
inline CMatrix assemble_amplitudes(const TmsTable& tab, const CVector& cs, int eff_cut) {
    CMatrix amp = CMatrix::Zero(eff_cut + 1, eff_cut + 1);
    for (int n1 = 0; n1 <= eff_cut; ++n1)
        for (int n2 = 0; n2 <= eff_cut; ++n2) {
            Complex s = 0.0;
            for (int l = 0; l <= eff_cut; ++l) {
                const int k = l - n1 + n2;
                if (k < 0 || k > eff_cut) continue;
                s += tab(n1, n2, l) * cs[l] * cs[k];
            }
            amp(n1, n2) = s;
        }
    return amp;
}

struct TableMoments {
    double n_mean = 0.0;
    Complex a_dag{};
    Complex adag_bdag{};
};

/// Raw truncated sums, exactly as the series are written: no normalization,
/// so cutoff sensitivity stays visible.
inline TableMoments table_moments(const CMatrix& amp) {
    TableMoments m;
    const int n = int(amp.rows());
    for (int n1 = 0; n1 < n; ++n1)
        for (int n2 = 0; n2 < n; ++n2) {
            const Complex c = amp(n1, n2);
            m.n_mean += double(n1) * std::norm(c);
            if (n1 + 1 < n)
                m.a_dag += std::conj(amp(n1 + 1, n2)) * std::sqrt(double(n1 + 1)) * c;
            if (n1 + 1 < n && n2 + 1 < n)
                m.adag_bdag += std::conj(amp(n1 + 1, n2 + 1)) *
                               std::sqrt(double(n1 + 1) * double(n2 + 1)) * c;
        }
    return m;
}

inline double criterion_from(const TableMoments& m) {
    const Complex ad = m.a_dag;
    return 8.0 * m.n_mean + 4.0 - 8.0 * m.adag_bdag.real() +
           8.0 * (std::real(ad * ad) - std::norm(ad));
}

}  // namespace detail

/// Series-summation splitter output: amplitude(n1, n2) = sum_{l,k} S_{n1 n2, l k}
/// CS_l CS_k with both sums truncated at `cutoff`.
inline TwoModeAmplitudes split_amplitudes(double r, double alpha_prime, int cutoff = 60) {
    if (cutoff < 1) throw std::invalid_argument("split_amplitudes: cutoff must be >= 1");
    const detail::TmsTable tab(r, cutoff);
    const FockVector cs = cs_coefficients(r, alpha_prime, cutoff);
    TwoModeAmplitudes out;
    out.cutoff = cutoff;
    out.amplitudes = detail::assemble_amplitudes(tab, cs.amplitudes, cutoff);
    out.leakage = 1.0 - out.amplitudes.squaredNorm();
    return out;
}

/// Brute-force reference for the same state: B^dag (|-r, alpha'> (x) |0>)
/// built with the fock-layer exponentials (the splitter acts through its
/// total-number chains, so large dims stay cheap). Exact up to the input's
/// own truncation for components with n1 + n2 < dim, and identically zero
/// above, because the splitter conserves total photon number; comparisons
/// against truncated summations should use dim > the largest total number
/// of interest.
inline FockVector split_state_oracle(double r, double alpha_prime, int dim) {
    const FockVector in = fock::squeeze(SqueezeParam(r, constants::pi), dim) *
                          (fock::displacement(alpha_prime, dim) * FockVector::vacuum(dim));
    CVector two = CVector::Zero(long(dim) * dim);
    for (int n1 = 0; n1 < dim; ++n1) two[long(n1) * dim] = in.amplitudes[n1];
    return fock::beam_splitter_apply(FockVector(std::move(two), dim, 2), /*adjoint=*/true);
}

/// Duan-Simon statistic <D^2(x_a - x_b)> + <D^2(p_a + p_b)> assembled from
/// the truncated-series moments; >= 4 iff separable for the Gaussian states
/// produced here.
struct CriterionResult {
    double value = 0.0;
    Complex a_dag_mean{};
    double n_mean = 0.0;
    Complex ab_corr{};
    int cutoff = 0;
    bool stable = true;
    double cutoff_drift = 0.0;  // |value(cutoff) - value(cutoff - 8)|
};

namespace detail {

class CriterionEngine {
  public:
    CriterionEngine(double r, int cutoff) : r_(r), cutoff_(cutoff), tab_(r, cutoff) {}

    CriterionResult eval(double alpha_prime) const {
        const FockVector cs = cs_coefficients(r_, alpha_prime, cutoff_);
        const CMatrix amp = assemble_amplitudes(tab_, cs.amplitudes, cutoff_);
        const TableMoments m = table_moments(amp);
        CriterionResult res;
        res.value = criterion_from(m);
        res.a_dag_mean = m.a_dag;
        res.n_mean = m.n_mean;
        res.ab_corr = m.adag_bdag;
        res.cutoff = cutoff_;
        if (cutoff_ > 8) {
            const CMatrix sub = assemble_amplitudes(tab_, cs.amplitudes, cutoff_ - 8);
            res.cutoff_drift = std::abs(res.value - criterion_from(table_moments(sub)));
            res.stable = res.cutoff_drift <= 1e-3;
        }
        return res;
    }

  private:
    double r_;
    int cutoff_;
    TmsTable tab_;
};

}  // namespace detail

inline CriterionResult duan_criterion(double r, double alpha_prime, int cutoff = 60) {
    if (cutoff < 1) throw std::invalid_argument("duan_criterion: cutoff must be >= 1");
    return detail::CriterionEngine(r, cutoff).eval(alpha_prime);
}

struct SweepPoint {
    double r = 0.0;
    double alpha_prime = 0.0;
    double value = 0.0;
    bool stable = true;
};

/// Criterion over an (r, alpha') grid; rows ordered r-major. The per-r
/// element table is shared across the alpha' axis.
inline std::vector<SweepPoint> criterion_sweep(const std::vector<double>& r_grid,
                                               const std::vector<double>& alpha_grid,
                                               int cutoff = 60) {
    std::vector<SweepPoint> out;
    out.reserve(r_grid.size() * alpha_grid.size());
    for (double r : r_grid) {
        const detail::CriterionEngine engine(r, cutoff);
        for (double ap : alpha_grid) {
            const CriterionResult res = engine.eval(ap);
            out.push_back({r, ap, res.value, res.stable});
        }
    }
    return out;
}

}  // namespace cslight::entangle
