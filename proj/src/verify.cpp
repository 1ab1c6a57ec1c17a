#include "hyperband/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "hyperband/bloch.hpp"
#include "hyperband/diffop.hpp"
#include "hyperband/tiling.hpp"

namespace hyperband {

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string VerifyReport::format() const {
    std::string out;
    for (const auto& c : checks) {
        out += fmt::format("{}  {:<34} measured={:.3e}  tol={:.1e}", c.pass ? "PASS" : "FAIL", c.name,
                           c.measured, c.tolerance);
        if (!c.detail.empty()) out += "  " + c.detail;
        out += '\n';
    }
    return out;
}

namespace {

std::vector<HPoint> sample_points(int count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-2.0, 2.0);
    std::uniform_real_distribution<double> uy(0.2, 3.0);
    std::vector<HPoint> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double x = ux(rng);
        pts.emplace_back(x, uy(rng));
    }
    return pts;
}

CheckResult make_check(std::string name, double measured, double tol, std::string detail = {}) {
    const bool pass = std::isfinite(measured) && measured <= tol;
    return {std::move(name), measured, tol, pass, std::move(detail)};
}

std::string format_phase(complex z) {
    return fmt::format("({:.12g}{:+.12g}i)", z.real(), z.imag());
}

void group_checks(const VerifyConfig& cfg, VerifyReport& report) {
    const TilingParams params(cfg.genus);
    const auto gens = make_generators(params);
    const auto dom = make_fundamental_domain(params);

    report.checks.push_back(make_check("fuchsian relation", relation_defect(gens), cfg.tol.group,
                                       fmt::format("g={}", cfg.genus)));
    double trace_err = 0.0;
    for (const auto& gamma : gens.gammas) {
        trace_err = std::max(trace_err, std::abs(gamma.trace() - 2.0 * std::cosh(gens.mu)));
    }
    report.checks.push_back(make_check("generator traces 2cosh(mu)", trace_err, cfg.tol.group));
    report.checks.push_back(
        make_check("edge pairing g_j C_(j+2g) = C_j", edge_pairing_defect(gens, dom), cfg.tol.pairing));
}

void phase_checks(const VerifyConfig& cfg, VerifyReport& report) {
    const TilingParams params(cfg.genus);
    const auto dom = make_fundamental_domain(params);

    double cover = 0.0;
    for (int q = 1; q <= 8; ++q) {
        cover = std::max(cover, std::abs(covering_degree_check(q) - std::polar(1.0, 2.0 * kPi / q)));
    }
    report.checks.push_back(make_check("q-fold covering (q=1..8)", cover, cfg.tol.covering));

    const complex expected = std::polar(1.0, cfg.genus > 0 ? 4.0 * (cfg.genus - 1) * kPi * cfg.B : 0.0);
    std::vector<HPoint> pts{dom.vertices.back(), HPoint::i()};
    for (const auto& z : sample_points(6, 7)) pts.push_back(z);

    double phase_err = 0.0;
    double closure = 0.0;
    double spread = 0.0;
    std::vector<complex> phases;
    bool closed = true;
    std::string failure;
    for (const auto& z : pts) {
        try {
            const auto r = evaluate_flux_relation(params, cfg.B, z);
            phases.push_back(r.phase);
            phase_err = std::max(phase_err, std::abs(r.phase - expected));
            closure = std::max(closure, r.closure);
        } catch (const NonClosureError& e) {
            closed = false;
            failure = e.what();
        }
    }
    for (const auto& a : phases) {
        for (const auto& b : phases) spread = std::max(spread, std::abs(a - b));
    }
    if (!closed) {
        report.checks.push_back({"flux relation closure", INFINITY, cfg.tol.closure, false, failure});
        return;
    }
    report.checks.push_back(make_check("flux relation closure", closure, cfg.tol.closure));
    report.checks.push_back(make_check(
        "flux relation phase", phase_err, cfg.tol.phase,
        fmt::format("phase={} expected exp(i4(g-1)piB)={} phi={:.10g}", format_phase(phases.front()),
                    format_phase(expected), 4.0 * (cfg.genus - 1) * kPi * cfg.B)));
    report.checks.push_back(make_check("flux relation z-independence", spread, cfg.tol.constancy));

    const double angle = (2.0 * cfg.genus - 1.0) * kPi / (4.0 * cfg.genus);
    const complex vertex = s_phase(angle, dom.vertices.front(), cfg.B);
    report.checks.push_back(make_check("vertex angle exp(iB pi/2g)",
                                       std::abs(vertex - std::polar(1.0, cfg.B * kPi / (2.0 * cfg.genus))),
                                       cfg.tol.covering));
}

OperatorExpr scaled(double s, DiffOpId op) {
    return complex(s) * OperatorExpr(op);
}

void algebra_checks(const VerifyConfig& cfg, VerifyReport& report) {
    using D = DiffOpId;
    const auto pts = sample_points(20, 11);
    const double B = cfg.B;
    double magnetic = 0.0;
    double checked = 0.0;
    double commuting = 0.0;
    double commuting_checked = 0.0;
    double continuum = 0.0;
    const OperatorExpr h_gen = hamiltonian_generator_form(GeneratorFamily::Magnetic, B);
    for (const auto& z : pts) {
        // [U,T] = -2T, [U,S] = -4T + 2S, [S,T] = -U in both families.
        auto family = [&](D s, D t, D u) {
            return std::max({commutator_residual(u, t, scaled(-2.0, t), z, B),
                             commutator_residual(u, s, scaled(-4.0, t) + scaled(2.0, s), z, B),
                             commutator_residual(s, t, scaled(-1.0, u), z, B)});
        };
        magnetic = std::max(magnetic, family(D::S_B, D::T_B, D::U_B));
        checked = std::max(checked, family(D::S_check, D::T_check, D::U_check));
        for (D op : {D::S_B, D::T_B, D::U_B}) {
            commuting = std::max(commuting, hamiltonian_commutation_residual(op, z, B));
        }
        for (D op : {D::S_check, D::T_check, D::U_check}) {
            commuting_checked = std::max(commuting_checked, hamiltonian_commutation_residual(op, z, B));
        }
        for (const auto& f : polynomial_test_basis()) {
            const Polynomial diff = apply(D::H_continuum, f, B) - h_gen.apply(f, B);
            continuum = std::max(continuum, std::abs(diff(z.x(), z.y())));
        }
    }
    report.checks.push_back(make_check("commutators S_B,T_B,U_B", magnetic, cfg.tol.algebra));
    report.checks.push_back(make_check("commutators S,T,U (checked)", checked, cfg.tol.algebra));
    report.checks.push_back(make_check("[H, X_B] = 0", commuting, cfg.tol.algebra));
    report.checks.push_back(make_check("[H', X_check] = 0", commuting_checked, cfg.tol.algebra));
    report.checks.push_back(make_check("H continuum = generator form", continuum, cfg.tol.algebra));
}

void spectral_checks(const VerifyConfig& cfg, VerifyReport& report) {
    std::vector<FluxParam> fluxes{FluxParam(1, 2), FluxParam(1, 3), FluxParam(2, 3), FluxParam(1, 5)};
    if (cfg.flux && cfg.flux->q() <= 64) fluxes.insert(fluxes.begin(), *cfg.flux);
    const std::vector<BlochMomentum> momenta{BlochMomentum(0, 0, 0, 0), halton_momentum(0, 0),
                                             halton_momentum(0, 1)};
    double herm = 0.0;
    double sectors = 0.0;
    for (const auto& f : fluxes) {
        for (const auto& k : momenta) {
            std::vector<double> merged;
            for (int m = 0; m < 8; ++m) {
                const auto h = assemble_reduced(f, k, m);
                herm = std::max(herm, hermiticity_defect(h.matrix()));
                const auto ev = eigenvalues(h);
                merged.insert(merged.end(), ev.begin(), ev.end());
            }
            std::sort(merged.begin(), merged.end());
            const auto block = assemble_block(HamiltonianModel::Kind::BlockAnisotropic, f, k);
            const auto iso = assemble_block(HamiltonianModel::Kind::BlockIsotropic, f, k);
            herm = std::max({herm, hermiticity_defect(block.matrix()), hermiticity_defect(iso.matrix())});
            const auto ev = eigenvalues(block);
            for (std::size_t i = 0; i < ev.size(); ++i)
                sectors = std::max(sectors, std::abs(ev[i] - merged[i]));
        }
    }
    std::string label = "{8,8} lattice";
    if (cfg.flux) label += fmt::format(", B={}/{}", cfg.flux->p(), 2 * cfg.flux->q());
    report.checks.push_back(make_check("lattice Hamiltonians Hermitian", herm, cfg.tol.hermitian, label));
    report.checks.push_back(make_check("rotation sectors = block spectrum", sectors, cfg.tol.sectors, label));
}

}  // namespace

VerifyReport run_verification(const VerifyConfig& config) {
    (void)TilingParams(config.genus);
    if (!std::isfinite(config.B)) throw std::invalid_argument("verify: B must be finite");
    VerifyReport report;
    group_checks(config, report);
    phase_checks(config, report);
    algebra_checks(config, report);
    spectral_checks(config, report);
    return report;
}

}  // namespace hyperband
