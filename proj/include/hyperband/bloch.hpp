#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hyperband/magnetic.hpp"

namespace hyperband {

/// (k1, k2, k3, k4), each reduced into [0, 2π).
class BlochMomentum {
public:
    BlochMomentum() = default;
    BlochMomentum(double k1, double k2, double k3, double k4);

    double operator[](int i) const { return k_[i]; }
    const std::array<double, 4>& values() const { return k_; }

private:
    std::array<double, 4> k_{};
};

class HamiltonianModel {
public:
    enum class Kind { ReducedHarper, BlockAnisotropic, BlockIsotropic };

    /// Rotation sector m in 0..7; throws std::invalid_argument otherwise.
    static HamiltonianModel reduced(int m);
    static HamiltonianModel block_anisotropic() { return HamiltonianModel(Kind::BlockAnisotropic, 0); }
    static HamiltonianModel block_isotropic() { return HamiltonianModel(Kind::BlockIsotropic, 0); }

    Kind kind() const { return kind_; }
    int sector() const { return sector_; }
    /// q for the reduced model, 8q for the block models.
    int dimension(long q) const;
    std::string name() const;

private:
    HamiltonianModel(Kind kind, int sector) : kind_(kind), sector_(sector) {}
    Kind kind_;
    int sector_;
};

/// Dense complex matrix with entry(i,j) = conj(entry(j,i)) within 1e-12.
class HermitianMatrix {
public:
    /// Throws std::invalid_argument when the matrix is not square or not Hermitian.
    explicit HermitianMatrix(Eigen::MatrixXcd m);

    Eigen::Index dimension() const { return m_.rows(); }
    complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
    const Eigen::MatrixXcd& matrix() const { return m_; }

private:
    Eigen::MatrixXcd m_;
};

/// max |H(i,j) - conj(H(j,i))|.
double hermiticity_defect(const Eigen::MatrixXcd& m);

class EigenSolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    double max_residual;         // max_k ||H v_k - λ_k v_k||_2
    double residual_bound;       // 1e-8 (1 + ||H||_F)
};

inline constexpr Eigen::Index kMaxEigenDimension = 2000;

/// Throws EigenSolverError on non-convergence or when the residual bound is violated.
EigenDecomposition eigen_decompose(const HermitianMatrix& h);
std::vector<double> eigenvalues(const HermitianMatrix& h);

/// 2cos(πB/4 + mπ/4): eigenvalue of e^{π/8 Ŝ_B} + e^{-π/8 Ŝ_B} in rotation sector m.
double rotation_sector_shift(double B, int m);

/// Coefficient 4²/π² multiplying the rotation term.
inline constexpr double kRotationWeight = 16.0 / (kPi * kPi);

/// μ of the {8,8} tiling; the lattice coefficients are 1/(8μ²) and 1/(4μ²).
double lattice_mu();

/// q×q Harper block: diagonal 2cos(k2 - nφ), (n, n+1) = e^{-ik1}, (n+1, n) = e^{ik1}, cyclic.
Eigen::MatrixXcd harper_block(const FluxParam& flux, double k1, double k2);

/// Scalar added to the reduced diagonal: -(2/(8μ²))(cos k3 + cos k4) + (4²/π²)·2cos(πB/4 + mπ/4).
double reduced_scalar_term(const FluxParam& flux, const BlochMomentum& k, int m);

HermitianMatrix assemble_reduced(const FluxParam& flux, const BlochMomentum& k, int m);
HermitianMatrix assemble_reduced(long p, long q, const BlochMomentum& k, int m);

/// 8×8 cycle adjacency with corner phases e^{±i2πB}.
Eigen::MatrixXcd rotation_ring(double B);

/// 8q×8q block-circulant form; kind must be a block model.
HermitianMatrix assemble_block(HamiltonianModel::Kind kind, const FluxParam& flux, const BlochMomentum& k);
HermitianMatrix assemble(const HamiltonianModel& model, const FluxParam& flux, const BlochMomentum& k);

/// Standard Harper matrix with unit hopping and Bloch corner phases e^{±iqk1}.
Eigen::MatrixXcd standard_harper(long p, long q, double k1, double k2);

/// Max eigenvalue difference between the rescaled reduced Harper block and standard_harper.
/// Requires p >= 1 and gcd(p, q) = 1.
double harper_oracle_compare(long p, long q, double k1, double k2);

struct SpectrumSample {
    long p;
    long q;
    double phi;  // 2πp/q
    BlochMomentum k;
    std::vector<double> eigenvalues;  // ascending
    double max_residual;
    double residual_bound;
    double hermiticity_defect;
};

/// Coprime (p, q), 1 <= p < 2q, q <= q_max, ordered by φ = 2πp/q.
std::vector<FluxParam> admitted_fluxes(long q_max);

/// Halton point (bases 2, 3, 5, 7) number seed + index + 1, scaled to [0, 2π)^4.
BlochMomentum halton_momentum(std::uint64_t seed, std::uint64_t index);

struct SweepOptions {
    long q_max = 2;
    int k_samples = 1;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Upper bound on Σ dim³ over all solves of one sweep.
inline constexpr double kMaxSweepWork = 1e11;

/// One sample per (flux, momentum), ordered by (φ, sample index). The output does not
/// depend on the thread count. Throws std::length_error when the workload guard trips.
std::vector<SpectrumSample> butterfly_sweep(const HamiltonianModel& model, const SweepOptions& opts);

}  // namespace hyperband
