#include "hyperband/sl2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hyperband {

HPoint::HPoint(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw std::invalid_argument("HPoint: non-finite coordinate");
    }
    if (!(y > 0.0)) {
        throw std::invalid_argument("HPoint: y must be > 0, got " + std::to_string(y));
    }
}

Sl2Element::Sl2Element(double a, double b, double c, double d) : m_{a, b, c, d} {
    for (double v : m_) {
        if (!std::isfinite(v)) throw std::invalid_argument("Sl2Element: non-finite entry");
    }
    const double det = a * d - b * c;
    if (std::abs(det - 1.0) > kConstructionTol) {
        if (std::abs(det - 1.0) > 1e-9 || det <= 0.0) {
            throw std::invalid_argument("Sl2Element: determinant " + std::to_string(det) + " is not 1");
        }
        const double s = 1.0 / std::sqrt(det);
        for (double& v : m_) v *= s;
    }
}

Sl2Element operator*(const Sl2Element& l, const Sl2Element& r) {
    const auto& x = l.m_;
    const auto& y = r.m_;
    std::array<double, 4> m{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
                            x[2] * y[1] + x[3] * y[3]};
    // Products of unit-determinant matrices drift only by rounding; renormalize
    // instead of rejecting so long words stay usable.
    const double det = m[0] * m[3] - m[1] * m[2];
    if (det > 0.0 && std::abs(det - 1.0) > kConstructionTol) {
        const double s = 1.0 / std::sqrt(det);
        for (double& v : m) v *= s;
    }
    return Sl2Element(Sl2Element::Unchecked{}, m);
}

Sl2Element Sl2Element::canonical() const {
    for (double v : m_) {
        if (v > 0.0) return *this;
        if (v < 0.0) return -*this;
    }
    return *this;
}

double psl2_distance(const Sl2Element& g, const Sl2Element& h) {
    const auto x = g.canonical().entries();
    const auto y = h.canonical().entries();
    double d = 0.0;
    for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(x[k] - y[k]));
    return d;
}

double distance_from_identity(const Sl2Element& g) {
    const auto& m = g.entries();
    const double plus = std::max({std::abs(m[0] - 1), std::abs(m[1]), std::abs(m[2]), std::abs(m[3] - 1)});
    const double minus = std::max({std::abs(m[0] + 1), std::abs(m[1]), std::abs(m[2]), std::abs(m[3] + 1)});
    return std::min(plus, minus);
}

Sl2Element exp_s(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, s, -s, c};
}

Sl2Element exp_t(double t) {
    return {1.0, t, 0.0, 1.0};
}

Sl2Element exp_u(double mu) {
    return {std::exp(mu), 0.0, 0.0, std::exp(-mu)};
}

HPoint moebius_act(const Sl2Element& g, const HPoint& z) {
    const complex w = z.z();
    const complex den = g.c() * w + g.d();
    if (std::abs(den) < 1e-300) {
        throw std::domain_error("moebius_act: degenerate denominator |cz+d|");
    }
    const complex num = g.a() * w + g.b();
    // Im(g·z) = y / |cz+d|^2 exactly; avoids cancellation in the complex quotient.
    const double y = z.y() / std::norm(den);
    return HPoint((num / den).real(), y);
}

IwasawaFactors iwasawa_decompose(const Sl2Element& g) {
    // e^{θS} e^{μU} e^{tT} = (cosθ e^μ, t cosθ e^μ + sinθ e^{-μ};
    //                         -sinθ e^μ, -t sinθ e^μ + cosθ e^{-μ})
    // so the first column is e^μ (cosθ, -sinθ).
    double a = g.a();
    double b = g.b();
    double c = g.c();
    double d = g.d();
    double theta = std::atan2(-c, a);
    // Fold θ into (-π/2, π/2] by flipping the overall sign.
    if (theta > kPi / 2 || theta <= -kPi / 2) {
        a = -a;
        b = -b;
        c = -c;
        d = -d;
        theta = std::atan2(-c, a);
        if (theta <= -kPi / 2) theta += kPi;  // only reachable through rounding at ±π/2
    }
    const double r = std::hypot(a, c);
    const double mu = std::log(r);
    // Second column: t e^μ (cosθ, -sinθ) + e^{-μ}(sinθ, cosθ); project on the first direction.
    const double t = (a * b + c * d) / (r * r);
    return {theta, mu, t};
}

Sl2Element recompose(const IwasawaFactors& f) {
    return exp_s(f.theta) * exp_u(f.mu) * exp_t(f.t);
}

double OrbitCircle::residual(const HPoint& z) const {
    const double dy = z.y() - center_y;
    return z.x() * z.x() + dy * dy - radius * radius;
}

OrbitCircle rotation_orbit_circle(const HPoint& z0) {
    const double x0 = z0.x();
    const double y0 = z0.y();
    const double a = (x0 * x0 + y0 * y0 + 1.0) / (2.0 * y0);
    // a^2 - 1 = (x0^2 + (y0-1)^2)(x0^2 + (y0+1)^2) / (4 y0^2); this form keeps b = 0 exact at i.
    const double b =
        std::sqrt((x0 * x0 + (y0 - 1) * (y0 - 1)) * (x0 * x0 + (y0 + 1) * (y0 + 1))) / (2.0 * y0);
    return {a, b};
}

double hyperbolic_distance(const HPoint& z1, const HPoint& z2) {
    const double dx = z1.x() - z2.x();
    const double dy = z1.y() - z2.y();
    const double s = (dx * dx + dy * dy) / (2.0 * z1.y() * z2.y());
    // arccosh(1 + s) = log(1 + s + sqrt(s (s + 2))); stable for small s.
    return std::log1p(s + std::sqrt(s * (s + 2.0)));
}

}  // namespace hyperband
