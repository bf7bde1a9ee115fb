#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cslight {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Complex squeezing parameter zeta = r e^{i phi}, r >= 0.
struct SqueezeParam {
    double r = 0.0;
    double phi = 0.0;

    SqueezeParam() = default;
    SqueezeParam(double r_, double phi_) : r(r_), phi(phi_) {
        if (r < 0.0) throw std::domain_error("SqueezeParam: r must be >= 0");
    }

    static SqueezeParam from_zeta(Complex zeta) {
        return SqueezeParam(std::abs(zeta), std::arg(zeta));
    }

    Complex zeta() const { return std::polar(r, phi); }
};

enum class Mode { a = 0, b = 1 };

/// State vector on a truncated number basis. For two-mode states the
/// amplitudes are stored row-major with mode a as the slow index:
/// index(n1, n2) = n1*dim + n2, so the vector has length dim^2.
struct FockVector {
    CVector amplitudes;
    int dim = 0;
    int modes = 1;

    FockVector() = default;
    FockVector(CVector amps, int dim_, int modes_)
        : amplitudes(std::move(amps)), dim(dim_), modes(modes_) {
        if (modes != 1 && modes != 2)
            throw std::invalid_argument("FockVector: modes must be 1 or 2");
        const long expected = (modes == 1) ? dim : long(dim) * dim;
        if (amplitudes.size() != expected)
            throw std::invalid_argument("FockVector: amplitude length does not match dim^modes");
    }

    static FockVector vacuum(int dim, int modes = 1) {
        const long n = (modes == 1) ? dim : long(dim) * dim;
        CVector v = CVector::Zero(n);
        v[0] = 1.0;
        return FockVector(std::move(v), dim, modes);
    }

    static FockVector number_state(int n, int dim) {
        if (n < 0 || n >= dim) throw std::invalid_argument("number_state: n out of range");
        CVector v = CVector::Zero(dim);
        v[n] = 1.0;
        return FockVector(std::move(v), dim, 1);
    }

    Complex operator()(int n) const { return amplitudes[n]; }
    Complex operator()(int n1, int n2) const { return amplitudes[long(n1) * dim + n2]; }

    double norm2() const { return amplitudes.squaredNorm(); }
    /// Probability lost to the basis truncation, assuming a normalized input.
    double leakage() const { return 1.0 - norm2(); }
};

/// Dense operator on the truncated space (dim^modes square).
struct OperatorMatrix {
    CMatrix entries;
    int dim = 0;
    int modes = 1;

    OperatorMatrix() = default;
    OperatorMatrix(CMatrix m, int dim_, int modes_)
        : entries(std::move(m)), dim(dim_), modes(modes_) {}

    FockVector apply(const FockVector& v) const {
        if (v.dim != dim || v.modes != modes)
            throw std::invalid_argument("OperatorMatrix::apply: shape mismatch");
        return FockVector(entries * v.amplitudes, dim, modes);
    }

    OperatorMatrix dagger() const { return OperatorMatrix(entries.adjoint(), dim, modes); }

    friend OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
        if (lhs.dim != rhs.dim || lhs.modes != rhs.modes)
            throw std::invalid_argument("OperatorMatrix: shape mismatch in product");
        return OperatorMatrix(lhs.entries * rhs.entries, lhs.dim, lhs.modes);
    }
    friend FockVector operator*(const OperatorMatrix& op, const FockVector& v) {
        return op.apply(v);
    }
};

namespace fock {

namespace detail {

inline void require_dim(int dim) {
    if (dim < 2) throw std::invalid_argument("invalid dimension: dim must be >= 2");
}

/// Single-mode annihilation matrix, <n-1|a|n> = sqrt(n).
inline CMatrix ladder_matrix(int dim) {
    CMatrix a = CMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

inline CMatrix kron(const CMatrix& x, const CMatrix& y) {
    CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (long i = 0; i < x.rows(); ++i)
        for (long j = 0; j < x.cols(); ++j)
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    return out;
}

}  // namespace detail

/// exp(G) for an anti-Hermitian generator G, via the eigendecomposition of
/// the Hermitian matrix iG. The result is unitary to machine precision.
inline CMatrix expm_antihermitian(const CMatrix& gen) {
    const double defect = (gen + gen.adjoint()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, gen.cwiseAbs().maxCoeff());
    if (defect > 1e-12 * scale)
        throw std::invalid_argument("expm_antihermitian: generator is not anti-Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(Complex(0, 1) * gen);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("expm_antihermitian: eigensolver failed");
    CVector phases(es.eigenvalues().size());
    for (long i = 0; i < phases.size(); ++i)
        phases[i] = std::exp(Complex(0, -es.eigenvalues()[i]));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Annihilation operator; the two-mode version acts on the requested mode
/// through the Kronecker embedding.
inline OperatorMatrix ladder(int dim, int modes = 1, Mode which = Mode::a) {
    detail::require_dim(dim);
    CMatrix a = detail::ladder_matrix(dim);
    if (modes == 1) return OperatorMatrix(std::move(a), dim, 1);
    if (modes != 2) throw std::invalid_argument("ladder: modes must be 1 or 2");
    CMatrix eye = CMatrix::Identity(dim, dim);
    CMatrix full = (which == Mode::a) ? detail::kron(a, eye) : detail::kron(eye, a);
    return OperatorMatrix(std::move(full), dim, 2);
}

/// Embed a single-mode operator into the two-mode space on the given mode.
inline OperatorMatrix embed(const OperatorMatrix& op, Mode which) {
    if (op.modes != 1) throw std::invalid_argument("embed: expected a single-mode operator");
    CMatrix eye = CMatrix::Identity(op.dim, op.dim);
    CMatrix full = (which == Mode::a) ? detail::kron(op.entries, eye)
                                      : detail::kron(eye, op.entries);
    return OperatorMatrix(std::move(full), op.dim, 2);
}

/// D(alpha) = exp(alpha a^dag - alpha* a) on the truncated space. Leakage of
/// the truncation shows up in the norm of transformed states; it is reported,
/// not hidden, so callers should keep |alpha|^2 well below dim.
inline OperatorMatrix displacement(Complex alpha, int dim) {
    detail::require_dim(dim);
    CMatrix a = detail::ladder_matrix(dim);
    CMatrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
    return OperatorMatrix(expm_antihermitian(gen), dim, 1);
}

/// S(zeta) = exp[(zeta* a^2 - zeta a^dag^2)/2].
inline OperatorMatrix squeeze(const SqueezeParam& zeta, int dim) {
    detail::require_dim(dim);
    CMatrix a = detail::ladder_matrix(dim);
    CMatrix a2 = a * a;
    const Complex z = zeta.zeta();
    CMatrix gen = 0.5 * (std::conj(z) * a2 - z * a2.adjoint());
    return OperatorMatrix(expm_antihermitian(gen), dim, 1);
}

inline OperatorMatrix squeeze(Complex zeta, int dim) {
    return squeeze(SqueezeParam::from_zeta(zeta), dim);
}

namespace detail {

/// The two-mode generators used here conserve either n1+n2 or n1-n2, so the
/// truncated generator is block diagonal over chains of basis states coupled
/// by a real antisymmetric tridiagonal block. Exponentiating chain by chain
/// is exactly the matrix exponential of the full truncated generator.
/// `idx` holds flat indices n1*dim+n2; `g[i]` = <idx[i+1]|G|idx[i]>.
struct Chain {
    std::vector<long> idx;
    std::vector<double> g;
};

inline CMatrix chain_exp_block(const Chain& chain, bool adjoint) {
    const int m = int(chain.idx.size());
    CMatrix h = CMatrix::Zero(m, m);  // h = i G restricted to the chain
    const double sign = adjoint ? -1.0 : 1.0;
    for (int i = 0; i + 1 < m; ++i) {
        h(i + 1, i) = Complex(0, sign * chain.g[i]);
        h(i, i + 1) = Complex(0, -sign * chain.g[i]);
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    CVector phases(m);
    for (int i = 0; i < m; ++i) phases[i] = std::exp(Complex(0, -es.eigenvalues()[i]));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Chains of constant n1 + n2 for t (a^dag b - a b^dag).
inline std::vector<Chain> beam_splitter_chains(int dim, double t) {
    std::vector<Chain> chains;
    chains.reserve(2 * dim - 1);
    for (int s = 0; s <= 2 * (dim - 1); ++s) {
        Chain c;
        const int n1_max = std::min(s, dim - 1);
        for (int n1 = std::max(0, s - (dim - 1)); n1 <= n1_max; ++n1) {
            const int n2 = s - n1;
            c.idx.push_back(long(n1) * dim + n2);
            if (n1 + 1 <= n1_max)  // couples (n1,n2) -> (n1+1,n2-1)
                c.g.push_back(t * std::sqrt(double(n1 + 1) * double(n2)));
        }
        chains.push_back(std::move(c));
    }
    return chains;
}

/// Chains of constant n1 - n2 for xi (a^dag b^dag - b a).
inline std::vector<Chain> two_mode_squeeze_chains(int dim, double xi) {
    std::vector<Chain> chains;
    chains.reserve(2 * dim - 1);
    for (int d = -(dim - 1); d <= dim - 1; ++d) {
        Chain c;
        for (int n2 = std::max(0, -d); n2 + std::max(0, d) < dim; ++n2) {
            const int n1 = n2 + d;
            c.idx.push_back(long(n1) * dim + n2);
            if (n1 + 1 < dim && n2 + 1 < dim)
                c.g.push_back(xi * std::sqrt(double(n1 + 1) * double(n2 + 1)));
        }
        chains.push_back(std::move(c));
    }
    return chains;
}

inline CMatrix chains_to_matrix(const std::vector<Chain>& chains, int dim) {
    CMatrix out = CMatrix::Zero(long(dim) * dim, long(dim) * dim);
    for (const Chain& c : chains) {
        if (c.idx.size() == 1) {
            out(c.idx[0], c.idx[0]) = 1.0;
            continue;
        }
        const CMatrix block = chain_exp_block(c, false);
        for (std::size_t i = 0; i < c.idx.size(); ++i)
            for (std::size_t j = 0; j < c.idx.size(); ++j) out(c.idx[i], c.idx[j]) = block(i, j);
    }
    return out;
}

inline FockVector chains_apply(const std::vector<Chain>& chains, const FockVector& v,
                               bool adjoint) {
    CVector out = CVector::Zero(v.amplitudes.size());
    for (const Chain& c : chains) {
        if (c.idx.size() == 1) {
            out[c.idx[0]] = v.amplitudes[c.idx[0]];
            continue;
        }
        CVector sub(c.idx.size());
        for (std::size_t i = 0; i < c.idx.size(); ++i) sub[i] = v.amplitudes[c.idx[i]];
        const CVector res = chain_exp_block(c, adjoint) * sub;
        for (std::size_t i = 0; i < c.idx.size(); ++i) out[c.idx[i]] = res[i];
    }
    return FockVector(std::move(out), v.dim, v.modes);
}

}  // namespace detail

/// Two-mode squeezer exp[(r/2)(a^dag b^dag - b a)] on the dim^2 space.
inline OperatorMatrix two_mode_squeeze(double r, int dim) {
    detail::require_dim(dim);
    return OperatorMatrix(
        detail::chains_to_matrix(detail::two_mode_squeeze_chains(dim, 0.5 * r), dim), dim, 2);
}

/// 50-50 beam splitter B = exp[(pi/4)(a^dag b - a b^dag)] on the dim^2 space.
inline OperatorMatrix beam_splitter(int dim) {
    detail::require_dim(dim);
    return OperatorMatrix(
        detail::chains_to_matrix(detail::beam_splitter_chains(dim, std::atan(1.0)), dim), dim, 2);
}

/// B v (or B^dag v) without materializing the dim^2 x dim^2 matrix; the
/// splitter conserves n1 + n2, so the action decomposes over total-number
/// chains. Lets oracle states reach dimensions the dense builder cannot.
inline FockVector beam_splitter_apply(const FockVector& v, bool adjoint = false) {
    if (v.modes != 2) throw std::invalid_argument("beam_splitter_apply: need a two-mode state");
    return detail::chains_apply(detail::beam_splitter_chains(v.dim, std::atan(1.0)), v, adjoint);
}

/// Same chain-wise action for the two-mode squeezer, which conserves n1 - n2.
inline FockVector two_mode_squeeze_apply(const FockVector& v, double r, bool adjoint = false) {
    if (v.modes != 2)
        throw std::invalid_argument("two_mode_squeeze_apply: need a two-mode state");
    return detail::chains_apply(detail::two_mode_squeeze_chains(v.dim, 0.5 * r), v, adjoint);
}

/// Physicists' Hermite polynomial H_n(z) by the three-term recurrence,
/// H_{n+1} = 2 z H_n - 2 n H_{n-1}. Complex arguments are allowed.
inline Complex hermite(int n, Complex z) {
    if (n < 0 || n > 512) throw std::out_of_range("hermite: n must be in [0, 512]");
    if (n == 0) return 1.0;
    Complex hm = 1.0, h = 2.0 * z;
    for (int k = 1; k < n; ++k) {
        Complex hp = 2.0 * z * h - 2.0 * double(k) * hm;
        hm = h;
        h = hp;
    }
    return h;
}

/// |<u|v>|^2 / (|u|^2 |v|^2), in [0, 1].
inline double fidelity(const FockVector& u, const FockVector& v) {
    if (u.amplitudes.size() != v.amplitudes.size())
        throw std::invalid_argument("fidelity: shape mismatch");
    const Complex ov = u.amplitudes.dot(v.amplitudes);
    return std::norm(ov) / (u.norm2() * v.norm2());
}

/// Quadrature convention: x = a^dag + a, p = i(a^dag - a), both dimensionless.
struct ModeMoments {
    Complex a_mean{};   // <a>
    double n_mean = 0;  // <a^dag a>
    double x_mean = 0, p_mean = 0, x2_mean = 0, p2_mean = 0;
};

struct Moments {
    ModeMoments mode_a;
    ModeMoments mode_b;      // valid when modes == 2
    Complex adag_bdag{};     // <a^dag b^dag>, two-mode only
    int modes = 1;
};

namespace detail {

struct RawSingle {
    Complex a{};   // <a>
    Complex a2{};  // <a^2>
    double n = 0;  // <a^dag a>
};

inline ModeMoments finish(const RawSingle& raw, double norm2) {
    ModeMoments m;
    m.a_mean = raw.a / norm2;
    m.n_mean = raw.n / norm2;
    const Complex a2 = raw.a2 / norm2;
    m.x_mean = 2.0 * m.a_mean.real();
    m.p_mean = 2.0 * m.a_mean.imag();
    m.x2_mean = 2.0 * a2.real() + 2.0 * m.n_mean + 1.0;
    m.p2_mean = -2.0 * a2.real() + 2.0 * m.n_mean + 1.0;
    return m;
}

}  // namespace detail

/// Expectation values by sparse ladder application on the amplitude list.
/// States are normalized internally, so truncation leakage does not bias the
/// reported values.
inline Moments moments(const FockVector& v) {
    const double norm2 = v.norm2();
    if (norm2 <= 0.0) throw std::invalid_argument("moments: zero state");
    Moments out;
    out.modes = v.modes;
    if (v.modes == 1) {
        detail::RawSingle raw;
        for (int n = 0; n < v.dim; ++n) {
            const Complex c = v(n);
            raw.n += double(n) * std::norm(c);
            if (n >= 1) raw.a += std::conj(v(n - 1)) * std::sqrt(double(n)) * c;
            if (n >= 2)
                raw.a2 += std::conj(v(n - 2)) * std::sqrt(double(n) * double(n - 1)) * c;
        }
        out.mode_a = detail::finish(raw, norm2);
        return out;
    }
    detail::RawSingle ra, rb;
    Complex adbd{};
    for (int n1 = 0; n1 < v.dim; ++n1) {
        for (int n2 = 0; n2 < v.dim; ++n2) {
            const Complex c = v(n1, n2);
            if (c == 0.0) continue;
            const double p = std::norm(c);
            ra.n += double(n1) * p;
            rb.n += double(n2) * p;
            if (n1 >= 1) ra.a += std::conj(v(n1 - 1, n2)) * std::sqrt(double(n1)) * c;
            if (n2 >= 1) rb.a += std::conj(v(n1, n2 - 1)) * std::sqrt(double(n2)) * c;
            if (n1 >= 2)
                ra.a2 += std::conj(v(n1 - 2, n2)) * std::sqrt(double(n1) * double(n1 - 1)) * c;
            if (n2 >= 2)
                rb.a2 += std::conj(v(n1, n2 - 2)) * std::sqrt(double(n2) * double(n2 - 1)) * c;
            if (n1 + 1 < v.dim && n2 + 1 < v.dim)
                adbd += std::conj(v(n1 + 1, n2 + 1)) *
                        std::sqrt(double(n1 + 1) * double(n2 + 1)) * c;
        }
    }
    out.mode_a = detail::finish(ra, norm2);
    out.mode_b = detail::finish(rb, norm2);
    out.adag_bdag = adbd / norm2;
    return out;
}

/// Max-abs deviation of U^dag U from the identity on the sub-block that
/// excludes the top ceil(dim/8) levels of each mode, where truncation error
/// concentrates.
inline double unitarity_defect(const OperatorMatrix& op) {
    const int guard = (op.dim + 7) / 8;
    const int keep1 = op.dim - guard;
    CMatrix g = op.entries.adjoint() * op.entries;
    g.diagonal().array() -= 1.0;
    if (op.modes == 1) return g.topLeftCorner(keep1, keep1).cwiseAbs().maxCoeff();
    double worst = 0.0;
    for (int r1 = 0; r1 < keep1; ++r1)
        for (int r2 = 0; r2 < keep1; ++r2)
            for (int c1 = 0; c1 < keep1; ++c1)
                for (int c2 = 0; c2 < keep1; ++c2)
                    worst = std::max(worst,
                                     std::abs(g(long(r1) * op.dim + r2, long(c1) * op.dim + c2)));
    return worst;
}

}  // namespace fock
}  // namespace cslight
