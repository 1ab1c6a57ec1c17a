#pragma once

#include <array>
#include <complex>

namespace hyperband {

using complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Tolerance layers shared by every module.
inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kComparisonTol = 1e-10;
inline constexpr double kGeometricTol = 1e-9;

/// A point x + iy of the upper half-plane.
class HPoint {
public:
    /// Throws std::invalid_argument unless y > 0 and both coordinates are finite.
    HPoint(double x, double y);
    explicit HPoint(complex z) : HPoint(z.real(), z.imag()) {}

    static HPoint i() { return HPoint(0.0, 1.0); }

    double x() const { return x_; }
    double y() const { return y_; }
    complex z() const { return {x_, y_}; }

    friend bool operator==(const HPoint&, const HPoint&) = default;

private:
    double x_;
    double y_;
};

/// Unit-determinant real 2x2 matrix (a b; c d).
class Sl2Element {
public:
    /// Renormalizes by 1/sqrt(det) when |det - 1| <= 1e-9; rejects anything further off.
    Sl2Element(double a, double b, double c, double d);

    static Sl2Element identity() { return {1.0, 0.0, 0.0, 1.0}; }

    double a() const { return m_[0]; }
    double b() const { return m_[1]; }
    double c() const { return m_[2]; }
    double d() const { return m_[3]; }
    const std::array<double, 4>& entries() const { return m_; }

    double det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
    double trace() const { return m_[0] + m_[3]; }

    /// Exact inverse (d, -b; -c, a).
    Sl2Element inverse() const { return {m_[3], -m_[1], -m_[2], m_[0]}; }
    Sl2Element operator-() const { return {-m_[0], -m_[1], -m_[2], -m_[3]}; }

    /// Sign representative with the first nonzero entry positive (PSL2 canonical form).
    Sl2Element canonical() const;

    friend Sl2Element operator*(const Sl2Element& l, const Sl2Element& r);

private:
    struct Unchecked {};
    Sl2Element(Unchecked, std::array<double, 4> m) : m_(m) {}
    std::array<double, 4> m_;
};

/// Max entrywise distance between canonical sign representatives.
double psl2_distance(const Sl2Element& g, const Sl2Element& h);

/// Max entrywise distance of g from the nearer of +1 and -1.
double distance_from_identity(const Sl2Element& g);

// One-parameter subgroups: rotation e^{θS}, translation e^{tT}, scaling e^{μU}.
Sl2Element exp_s(double theta);
Sl2Element exp_t(double t);
Sl2Element exp_u(double mu);

/// g·z = (az + b)/(cz + d). Throws std::domain_error when |cz + d| < 1e-300.
HPoint moebius_act(const Sl2Element& g, const HPoint& z);

/// g = e^{θS} e^{μU} e^{tT}, up to the overall sign of g.
struct IwasawaFactors {
    double theta;
    double mu;
    double t;
};

IwasawaFactors iwasawa_decompose(const Sl2Element& g);
Sl2Element recompose(const IwasawaFactors& f);

/// Orbit {e^{θS} z0} is the Euclidean circle x^2 + (y - center_y)^2 = radius^2.
struct OrbitCircle {
    double center_y;
    double radius;

    /// x^2 + (y - a)^2 - b^2 at z.
    double residual(const HPoint& z) const;
};

OrbitCircle rotation_orbit_circle(const HPoint& z0);

/// Poincare half-plane distance.
double hyperbolic_distance(const HPoint& z1, const HPoint& z2);

}  // namespace hyperband
