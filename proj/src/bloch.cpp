#include "hyperband/bloch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include <Eigen/Eigenvalues>

namespace hyperband {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
const complex kI{0.0, 1.0};

double wrap_angle(double k) {
    double r = std::fmod(k, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

}  // namespace

BlochMomentum::BlochMomentum(double k1, double k2, double k3, double k4)
    : k_{wrap_angle(k1), wrap_angle(k2), wrap_angle(k3), wrap_angle(k4)} {
    for (double v : k_) {
        if (!std::isfinite(v)) throw std::invalid_argument("BlochMomentum: non-finite component");
    }
}

HamiltonianModel HamiltonianModel::reduced(int m) {
    if (m < 0 || m > 7) {
        throw std::invalid_argument("rotation sector m must be in 0..7, got " + std::to_string(m));
    }
    return HamiltonianModel(Kind::ReducedHarper, m);
}

int HamiltonianModel::dimension(long q) const {
    return static_cast<int>(kind_ == Kind::ReducedHarper ? q : 8 * q);
}

std::string HamiltonianModel::name() const {
    switch (kind_) {
        case Kind::ReducedHarper:
            return "reduced(m=" + std::to_string(sector_) + ")";
        case Kind::BlockAnisotropic:
            return "block-aniso";
        case Kind::BlockIsotropic:
            return "block-iso";
    }
    return "?";
}

double hermiticity_defect(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("HermitianMatrix: matrix is not square");
    if (m_.rows() > 0 && hermiticity_defect(m_) > kConstructionTol) {
        throw std::invalid_argument("HermitianMatrix: matrix is not Hermitian (defect " +
                                    std::to_string(hermiticity_defect(m_)) + ")");
    }
}

EigenDecomposition eigen_decompose(const HermitianMatrix& h) {
    const Eigen::Index n = h.dimension();
    if (n > kMaxEigenDimension) {
        throw EigenSolverError("eigensolver: dimension " + std::to_string(n) + " exceeds " +
                               std::to_string(kMaxEigenDimension));
    }
    if (n == 0) return {{}, 0.0, 1e-8};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix(), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw EigenSolverError("eigensolver: no convergence for n=" + std::to_string(n) +
                               " (tridiagonal QL exceeded " + std::to_string(30 * n) +
                               " sweeps, ||H||_F=" + std::to_string(h.matrix().norm()) + ")");
    }
    const Eigen::VectorXd& vals = solver.eigenvalues();
    const Eigen::MatrixXcd& vecs = solver.eigenvectors();
    const Eigen::MatrixXcd resid = h.matrix() * vecs - vecs * vals.asDiagonal();
    double worst = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) worst = std::max(worst, resid.col(k).norm());
    const double bound = 1e-8 * (1.0 + h.matrix().norm());
    if (!(worst <= bound)) {
        throw EigenSolverError("eigensolver: residual " + std::to_string(worst) + " exceeds bound " +
                               std::to_string(bound) + " for n=" + std::to_string(n));
    }
    std::vector<double> out(vals.data(), vals.data() + n);
    std::stable_sort(out.begin(), out.end());
    return {std::move(out), worst, bound};
}

std::vector<double> eigenvalues(const HermitianMatrix& h) {
    return eigen_decompose(h).values;
}

double rotation_sector_shift(double B, int m) {
    if (m < 0 || m > 7) throw std::invalid_argument("rotation sector m must be in 0..7");
    return 2.0 * std::cos(kPi * B / 4.0 + m * kPi / 4.0);
}

double lattice_mu() {
    static const double mu = scaling_parameter(TilingParams(2));
    return mu;
}

Eigen::MatrixXcd harper_block(const FluxParam& flux, double k1, double k2) {
    const long q = flux.q();
    const double phi = kTwoPi * static_cast<double>(flux.p()) / static_cast<double>(q);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(q, q);
    const complex fwd = std::polar(1.0, -k1);
    for (long n = 0; n < q; ++n) {
        h(n, n) += 2.0 * std::cos(k2 - static_cast<double>(n) * phi);
        const long next = (n + 1) % q;
        h(n, next) += fwd;
        h(next, n) += std::conj(fwd);
    }
    return h;
}

double reduced_scalar_term(const FluxParam& flux, const BlochMomentum& k, int m) {
    const double mu = lattice_mu();
    return -2.0 / (8.0 * mu * mu) * (std::cos(k[2]) + std::cos(k[3])) +
           kRotationWeight * rotation_sector_shift(flux.B(), m);
}

HermitianMatrix assemble_reduced(const FluxParam& flux, const BlochMomentum& k, int m) {
    const double mu = lattice_mu();
    Eigen::MatrixXcd h = (-1.0 / (8.0 * mu * mu)) * harper_block(flux, k[0], k[1]);
    h.diagonal().array() += reduced_scalar_term(flux, k, m);
    return HermitianMatrix(std::move(h));
}

HermitianMatrix assemble_reduced(long p, long q, const BlochMomentum& k, int m) {
    return assemble_reduced(FluxParam(p, q), k, m);
}

Eigen::MatrixXcd rotation_ring(double B) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(8, 8);
    for (int i = 0; i + 1 < 8; ++i) {
        r(i, i + 1) = 1.0;
        r(i + 1, i) = 1.0;
    }
    r(0, 7) = std::polar(1.0, kTwoPi * B);
    r(7, 0) = std::polar(1.0, -kTwoPi * B);
    return r;
}

HermitianMatrix assemble_block(HamiltonianModel::Kind kind, const FluxParam& flux, const BlochMomentum& k) {
    if (kind == HamiltonianModel::Kind::ReducedHarper) {
        throw std::invalid_argument("assemble_block: reduced model is not a block model");
    }
    const bool aniso = kind == HamiltonianModel::Kind::BlockAnisotropic;
    const long q = flux.q();
    const double mu = lattice_mu();
    const double phi = kTwoPi * static_cast<double>(flux.p()) / static_cast<double>(q);
    const double coeff = aniso ? 1.0 / (8.0 * mu * mu) : 1.0 / (4.0 * mu * mu);
    const Eigen::MatrixXcd ring = kRotationWeight * rotation_ring(flux.B());

    Eigen::MatrixXcd hop = Eigen::MatrixXcd::Zero(8, 8);
    for (int s = 0; s < 8; ++s) {
        if (aniso || s % 2 == 0) hop(s, s) = -coeff * std::polar(1.0, k[0]);
    }
    const Eigen::MatrixXcd hop_dag = hop.adjoint();

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(8 * q, 8 * q);
    for (long n = 0; n < q; ++n) {
        const double kn = std::cos(k[1] - static_cast<double>(n) * phi);
        Eigen::MatrixXcd a = ring;
        for (int s = 0; s < 8; ++s) {
            double d;
            if (aniso) {
                d = kn + std::cos(k[2]) + std::cos(k[3]);
            } else {
                d = (s % 2 == 0) ? std::cos(k[2]) : kn + std::cos(k[3]);
            }
            a(s, s) += -2.0 * coeff * d;
        }
        h.block(8 * n, 8 * n, 8, 8) += a;
        const long next = (n + 1) % q;
        // Row n couples forward through B†, row n+1 back through B.
        h.block(8 * n, 8 * next, 8, 8) += hop_dag;
        h.block(8 * next, 8 * n, 8, 8) += hop;
    }
    return HermitianMatrix(std::move(h));
}

HermitianMatrix assemble(const HamiltonianModel& model, const FluxParam& flux, const BlochMomentum& k) {
    if (model.kind() == HamiltonianModel::Kind::ReducedHarper) {
        return assemble_reduced(flux, k, model.sector());
    }
    return assemble_block(model.kind(), flux, k);
}

Eigen::MatrixXcd standard_harper(long p, long q, double k1, double k2) {
    // ψ_{n+1} + ψ_{n-1} + 2cos(k2 - 2πpn/q) ψ_n = E ψ_n with ψ_{n+q} = e^{iqk1} ψ_n.
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(q, q);
    const double alpha = 2.0 * kPi * static_cast<double>(p) / static_cast<double>(q);
    for (long n = 0; n < q; ++n) h(n, n) = 2.0 * std::cos(k2 - alpha * static_cast<double>(n));
    for (long n = 0; n + 1 < q; ++n) {
        h(n, n + 1) += 1.0;
        h(n + 1, n) += 1.0;
    }
    const complex bloch = std::polar(1.0, static_cast<double>(q) * k1);
    h(0, q - 1) += bloch;
    h(q - 1, 0) += std::conj(bloch);
    return h;
}

double harper_oracle_compare(long p, long q, double k1, double k2) {
    if (p < 1) throw std::invalid_argument("harper_oracle_compare: p must be >= 1");
    const FluxParam flux(p, q);
    const BlochMomentum k(k1, k2, 0.0, 0.0);
    const double mu = lattice_mu();
    Eigen::MatrixXcd reduced = assemble_reduced(flux, k, 0).matrix();
    reduced.diagonal().array() -= reduced_scalar_term(flux, k, 0);
    reduced *= -8.0 * mu * mu;
    // Rounding in the rescale can leave ~1e-16 anti-Hermitian noise; symmetrize.
    reduced = 0.5 * (reduced + reduced.adjoint()).eval();
    const auto a = eigenvalues(HermitianMatrix(reduced));
    const auto b = eigenvalues(HermitianMatrix(standard_harper(p, q, k.values()[0], k.values()[1])));
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

std::vector<FluxParam> admitted_fluxes(long q_max) {
    std::vector<FluxParam> out;
    for (long q = 1; q <= q_max; ++q) {
        for (long p = 1; p < 2 * q; ++p) {
            if (std::gcd(p, q) == 1) out.emplace_back(p, q);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const FluxParam& a, const FluxParam& b) { return a.p() * b.q() < b.p() * a.q(); });
    return out;
}

namespace {

double radical_inverse(std::uint64_t n, std::uint64_t base) {
    double inv = 1.0 / static_cast<double>(base);
    double f = inv;
    double r = 0.0;
    while (n > 0) {
        r += f * static_cast<double>(n % base);
        n /= base;
        f *= inv;
    }
    return r;
}

}  // namespace

BlochMomentum halton_momentum(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t n = seed + index + 1;
    return BlochMomentum(kTwoPi * radical_inverse(n, 2), kTwoPi * radical_inverse(n, 3),
                         kTwoPi * radical_inverse(n, 5), kTwoPi * radical_inverse(n, 7));
}

std::vector<SpectrumSample> butterfly_sweep(const HamiltonianModel& model, const SweepOptions& opts) {
    if (opts.q_max < 2) throw std::invalid_argument("butterfly: q_max must be >= 2");
    if (opts.k_samples < 1) throw std::invalid_argument("butterfly: k_samples must be >= 1");

    const auto fluxes = admitted_fluxes(opts.q_max);
    double work = 0.0;
    for (const auto& f : fluxes) {
        const double dim = model.dimension(f.q());
        if (dim > kMaxEigenDimension) {
            throw std::length_error("butterfly: matrix dimension " + std::to_string(dim) + " exceeds " +
                                    std::to_string(kMaxEigenDimension));
        }
        work += dim * dim * dim * opts.k_samples;
    }
    if (work > kMaxSweepWork) {
        throw std::length_error("butterfly: workload " + std::to_string(work) + " exceeds guard " +
                                std::to_string(kMaxSweepWork));
    }

    std::vector<BlochMomentum> momenta;
    momenta.reserve(opts.k_samples);
    for (int s = 0; s < opts.k_samples; ++s) momenta.push_back(halton_momentum(opts.seed, s));

    const std::size_t total = fluxes.size() * momenta.size();
    std::vector<SpectrumSample> out(total);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t job = next++; job < total; job = next++) {
            const FluxParam& f = fluxes[job / momenta.size()];
            const BlochMomentum& k = momenta[job % momenta.size()];
            const HermitianMatrix h = assemble(model, f, k);
            EigenDecomposition eig = eigen_decompose(h);
            out[job] = SpectrumSample{f.p(),
                                      f.q(),
                                      kTwoPi * static_cast<double>(f.p()) / static_cast<double>(f.q()),
                                      k,
                                      std::move(eig.values),
                                      eig.max_residual,
                                      eig.residual_bound,
                                      hermiticity_defect(h.matrix())};
        }
    };

    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    if (threads <= 1) {
        worker();
        return out;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            try {
                worker();
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = total;
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace hyperband
