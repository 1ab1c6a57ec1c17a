#pragma once

#include <stdexcept>
#include <vector>

#include "hyperband/sl2.hpp"
#include "hyperband/tiling.hpp"

namespace hyperband {

/// Rational field B = p / (2q) with gcd(|p|, q) = 1 and q >= 1.
class FluxParam {
public:
    /// Throws std::invalid_argument for q < 1 or non-coprime (p, q).
    FluxParam(long p, long q);

    /// Reduces an arbitrary rational B = num/den to p/(2q) lowest terms.
    static FluxParam from_ratio(long num, long den);

    long p() const { return p_; }
    long q() const { return q_; }
    double B() const { return static_cast<double>(p_) / (2.0 * static_cast<double>(q_)); }
    /// Flux through the fundamental domain, 4(g-1)πB.
    double flux(int genus) const { return 4.0 * (genus - 1) * kPi * B(); }

private:
    long p_;
    long q_;
};

/// One primitive factor e^{tŜ_B}, e^{μÛ_B} or e^{tT̂_B}.
struct MagneticFactor {
    enum class Kind { Rotation, Scaling, Translation };
    Kind kind;
    double parameter;

    static MagneticFactor rotation(double t) { return {Kind::Rotation, t}; }
    static MagneticFactor scaling(double mu) { return {Kind::Scaling, mu}; }
    static MagneticFactor translation(double t) { return {Kind::Translation, t}; }

    Sl2Element matrix() const;
    MagneticFactor inverse() const { return {kind, -parameter}; }
};

/// Operator product f1 f2 ⋯ fn in operator order; empty word is the identity.
class MagneticWord {
public:
    MagneticWord() = default;
    /// Throws std::invalid_argument on a non-finite parameter.
    explicit MagneticWord(std::vector<MagneticFactor> factors);

    const std::vector<MagneticFactor>& factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }

    MagneticWord inverse() const;
    /// Concatenation: (*this) followed by rhs, i.e. the operator product (*this)·rhs.
    MagneticWord operator*(const MagneticWord& rhs) const;

    /// Matrix that moves the point: m_n ⋯ m_1 for factors f_1 ⋯ f_n.
    Sl2Element point_map() const;

private:
    std::vector<MagneticFactor> factors_;
};

struct MagneticAction {
    complex phase;
    HPoint image;
};

/// j(e^{tŜ_B}, z0) = exp(iB Δθ), Δθ the swept angle on the orbit circle (= ∫ 2y dt).
complex s_phase(double t, const HPoint& z0, double B);

/// Continuously unwound orbit-circle angle swept by e^{t'S} z0 for t' in [0, t].
double swept_orbit_angle(double t, const HPoint& z0);

/// (word f)(z) = phase · f(image).
MagneticAction act_magnetic(const MagneticWord& word, const HPoint& z, double B);

/// γ̂_j^B = e^{-(j-1)π/(4g) Ŝ_B} e^{μ Û_B} e^{(j-1)π/(4g) Ŝ_B}, zero-angle rotations dropped.
std::vector<MagneticWord> magnetic_generators(const TilingParams& params);

/// γ̂_{2g} γ̂_{2g-1}^{-1} ⋯ γ̂_2 γ̂_1^{-1} γ̂_{2g}^{-1} γ̂_{2g-1} ⋯ γ̂_2^{-1} γ̂_1.
MagneticWord flux_relation_word(const TilingParams& params);

struct FluxRelationResult {
    complex phase;
    double closure;  // |image - z|
};

/// Evaluates the relation word; throws NonClosureError when the image misses z by > 1e-6.
FluxRelationResult evaluate_flux_relation(const TilingParams& params, double B, const HPoint& z);
complex flux_relation_phase(const TilingParams& params, double B, const HPoint& z);

/// Phase of [S-rotation(π)] at z = 1 + i for B = 1/q; equals e^{2πi/q}.
complex covering_degree_check(int q);
/// Phase of [S-rotation(turns·π)] at z for B = 1/q.
complex covering_phase(int q, int turns, const HPoint& z);

/// j(g, z) = 1/(cz + d).
complex automorphic_factor(const Sl2Element& g, const HPoint& z);

class NonClosureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hyperband
