#include "hyperband/magnetic.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hyperband {

FluxParam::FluxParam(long p, long q) : p_(p), q_(q) {
    if (q < 1) throw std::invalid_argument("flux: q must be >= 1");
    if (std::gcd(std::labs(p), q) != 1) {
        throw std::invalid_argument("flux: p=" + std::to_string(p) + " and q=" + std::to_string(q) +
                                    " are not coprime");
    }
}

FluxParam FluxParam::from_ratio(long num, long den) {
    if (den == 0) throw std::invalid_argument("flux: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    // num/den = p/(2q)  =>  p/q = 2 num / den
    long p = 2 * num;
    long q = den;
    const long g = std::gcd(std::labs(p), q);
    return FluxParam(p / g, q / g);
}

Sl2Element MagneticFactor::matrix() const {
    switch (kind) {
        case Kind::Rotation:
            return exp_s(parameter);
        case Kind::Scaling:
            return exp_u(parameter);
        case Kind::Translation:
            return exp_t(parameter);
    }
    throw std::logic_error("MagneticFactor: bad kind");
}

MagneticWord::MagneticWord(std::vector<MagneticFactor> factors) : factors_(std::move(factors)) {
    for (const auto& f : factors_) {
        if (!std::isfinite(f.parameter)) {
            throw std::invalid_argument("MagneticWord: non-finite factor parameter");
        }
    }
}

MagneticWord MagneticWord::inverse() const {
    std::vector<MagneticFactor> inv;
    inv.reserve(factors_.size());
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) inv.push_back(it->inverse());
    return MagneticWord(std::move(inv));
}

MagneticWord MagneticWord::operator*(const MagneticWord& rhs) const {
    std::vector<MagneticFactor> out = factors_;
    out.insert(out.end(), rhs.factors_.begin(), rhs.factors_.end());
    return MagneticWord(std::move(out));
}

Sl2Element MagneticWord::point_map() const {
    Sl2Element m = Sl2Element::identity();
    for (const auto& f : factors_) m = f.matrix() * m;
    return m;
}

double swept_orbit_angle(double t, const HPoint& z0) {
    const OrbitCircle orbit = rotation_orbit_circle(z0);
    if (orbit.radius < kConstructionTol) {
        // z0 = i: y ≡ 1 along the (point) orbit, so ∫ 2y dt = 2t.
        return 2.0 * t;
    }
    // ∫_0^t y dt' = -arg(cos t - z0 sin t) along a continuous branch. e^{πS} = -1 fixes
    // every point and each half period sweeps exactly π of that argument, so split
    // t = kπ + r with r in [0, π); on that range Im(cos r - z0 sin r) = -y0 sin r <= 0
    // and the principal atan2 is already the continuous branch.
    const double k = std::floor(t / kPi);
    const double r = t - k * kPi;
    const double s = std::sin(r);
    const double c = std::cos(r);
    const double arg = std::atan2(-z0.y() * s, c - z0.x() * s);
    return 2.0 * (k * kPi - arg);
}

complex s_phase(double t, const HPoint& z0, double B) {
    if (t == 0.0 || B == 0.0) return {1.0, 0.0};
    return std::polar(1.0, B * swept_orbit_angle(t, z0));
}

MagneticAction act_magnetic(const MagneticWord& word, const HPoint& z, double B) {
    complex phase{1.0, 0.0};
    HPoint point = z;
    for (const auto& f : word.factors()) {
        if (f.kind == MagneticFactor::Kind::Rotation) phase *= s_phase(f.parameter, point, B);
        point = moebius_act(f.matrix(), point);
    }
    // Re-project onto the unit circle to keep rounding from compounding over long words.
    phase /= std::abs(phase);
    return {phase, point};
}

std::vector<MagneticWord> magnetic_generators(const TilingParams& params) {
    const int g = params.genus();
    const double mu = scaling_parameter(params);
    std::vector<MagneticWord> out;
    out.reserve(2 * g);
    for (int j = 1; j <= 2 * g; ++j) {
        const double angle = (j - 1) * kPi / (4 * g);
        if (j == 1) {
            out.emplace_back(std::vector{MagneticFactor::scaling(mu)});
        } else {
            out.emplace_back(std::vector{MagneticFactor::rotation(-angle), MagneticFactor::scaling(mu),
                                         MagneticFactor::rotation(angle)});
        }
    }
    return out;
}

MagneticWord flux_relation_word(const TilingParams& params) {
    const auto gens = magnetic_generators(params);
    const int n = static_cast<int>(gens.size());
    MagneticWord w;
    // γ̂_{2g} γ̂_{2g-1}^{-1} ⋯ γ̂_2 γ̂_1^{-1}: odd j inverted
    for (int j = n; j >= 1; --j) w = w * (j % 2 == 1 ? gens[j - 1].inverse() : gens[j - 1]);
    // γ̂_{2g}^{-1} γ̂_{2g-1} ⋯ γ̂_2^{-1} γ̂_1: even j inverted
    for (int j = n; j >= 1; --j) w = w * (j % 2 == 0 ? gens[j - 1].inverse() : gens[j - 1]);
    return w;
}

FluxRelationResult evaluate_flux_relation(const TilingParams& params, double B, const HPoint& z) {
    const MagneticAction act = act_magnetic(flux_relation_word(params), z, B);
    const double closure = std::abs(act.image.z() - z.z());
    if (closure > 1e-6) {
        throw NonClosureError(
            "flux relation word does not return to its start point (|dz| = " + std::to_string(closure) + ")");
    }
    return {act.phase, closure};
}

complex flux_relation_phase(const TilingParams& params, double B, const HPoint& z) {
    return evaluate_flux_relation(params, B, z).phase;
}

complex covering_phase(int q, int turns, const HPoint& z) {
    if (q < 1) throw std::invalid_argument("covering check: q must be >= 1");
    const MagneticWord w(std::vector<MagneticFactor>{MagneticFactor::rotation(turns * kPi)});
    return act_magnetic(w, z, 1.0 / q).phase;
}

complex covering_degree_check(int q) {
    return covering_phase(q, 1, HPoint(1.0, 1.0));
}

complex automorphic_factor(const Sl2Element& g, const HPoint& z) {
    const complex den = g.c() * z.z() + g.d();
    if (std::abs(den) < 1e-300) {
        throw std::domain_error("automorphic_factor: degenerate denominator |cz+d|");
    }
    return 1.0 / den;
}

}  // namespace hyperband
