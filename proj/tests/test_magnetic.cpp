#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "hyperband/magnetic.hpp"
#include "test_util.hpp"

using namespace hyperband;
using hyperband::testing::random_element;
using hyperband::testing::random_point;
using hyperband::testing::uniform;

namespace {

// Integrates dz/dt = 1 + z² together with dθ/dt = 2 Im z.
double swept_angle_ode(double t, const HPoint& z0) {
    using State = std::array<double, 3>;
    State s{z0.x(), z0.y(), 0.0};
    auto rhs = [](const State& u, State& du, double) {
        du[0] = 1.0 + u[0] * u[0] - u[1] * u[1];
        du[1] = 2.0 * u[0] * u[1];
        du[2] = 2.0 * u[1];
    };
    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<State>());
    ode::integrate_adaptive(stepper, rhs, s, 0.0, t, t / 1000.0);
    return s[2];
}

// ∫ 2 Im(e^{t'S} z0) dt' by adaptive Gauss-Kronrod over each quarter turn.
double swept_angle_quadrature(double t, const HPoint& z0) {
    auto f = [&](double s) { return 2.0 * moebius_act(exp_s(s), z0).y(); };
    const int pieces = static_cast<int>(std::ceil(std::abs(t) / (kPi / 4))) + 1;
    double total = 0.0;
    for (int i = 0; i < pieces; ++i) {
        const double a = t * i / pieces;
        const double b = t * (i + 1) / pieces;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-14);
    }
    return total;
}

complex moebius_j(const Sl2Element& g, const HPoint& z) {
    return automorphic_factor(g, z);
}

}  // namespace

TEST(FluxParam, ReductionToLowestTerms) {
    const FluxParam half = FluxParam::from_ratio(1, 2);
    EXPECT_EQ(half.p(), 1);
    EXPECT_EQ(half.q(), 1);
    const FluxParam sixth = FluxParam::from_ratio(1, 6);
    EXPECT_EQ(sixth.p(), 1);
    EXPECT_EQ(sixth.q(), 3);
    const FluxParam f07 = FluxParam::from_ratio(7, 10);
    EXPECT_EQ(f07.p(), 7);
    EXPECT_EQ(f07.q(), 5);
    EXPECT_DOUBLE_EQ(f07.B(), 0.7);
    const FluxParam zero = FluxParam::from_ratio(0, 9);
    EXPECT_EQ(zero.p(), 0);
    EXPECT_EQ(zero.q(), 1);
    const FluxParam neg = FluxParam::from_ratio(3, -8);
    EXPECT_EQ(neg.p(), -3);
    EXPECT_EQ(neg.q(), 4);
    EXPECT_NEAR(FluxParam(1, 2).flux(2), kPi, 1e-15);
}

TEST(FluxParam, RejectsBadInput) {
    EXPECT_THROW(FluxParam(2, 4), std::invalid_argument);
    EXPECT_THROW(FluxParam(1, 0), std::invalid_argument);
    EXPECT_THROW(FluxParam(1, -3), std::invalid_argument);
    EXPECT_THROW(FluxParam::from_ratio(1, 0), std::invalid_argument);
}

TEST(SPhase, TrivialCases) {
    const HPoint z = random_point();
    EXPECT_EQ(s_phase(0.0, z, 0.37), complex(1.0, 0.0));
    EXPECT_NEAR(std::abs(s_phase(1.3, z, 0.0) - 1.0), 0.0, 1e-15);
    // At the fixed point the orbit is degenerate and Δθ = 2t.
    EXPECT_NEAR(std::abs(s_phase(0.8, HPoint::i(), 0.5) - std::polar(1.0, 0.8)), 0.0, 1e-15);
}

TEST(SPhase, OdeOracle) {
    for (int i = 0; i < 50; ++i) {
        const HPoint z0 = random_point();
        const double t = uniform(-7.0, 7.0);
        const double B = uniform(-1.5, 1.5);
        const complex expect = std::polar(1.0, B * swept_angle_ode(t, z0));
        EXPECT_LT(std::abs(s_phase(t, z0, B) - expect), 1e-7) << "t=" << t << " z0=" << z0.z();
    }
}

TEST(SPhase, QuadratureOracle) {
    for (int i = 0; i < 50; ++i) {
        const HPoint z0 = random_point();
        const double t = uniform(-12.0, 12.0);
        EXPECT_NEAR(swept_orbit_angle(t, z0), swept_angle_quadrature(t, z0), 1e-7) << "t=" << t;
    }
}

TEST(SPhase, FarFromFixedPoint) {
    // Large orbit circles spend most of one half-period near the real axis.
    const HPoint z0(40.0, 0.01);
    for (double t : {0.5, 1.0, 3.0, 3.2, 10.0}) {
        EXPECT_NEAR(swept_orbit_angle(t, z0), swept_angle_quadrature(t, z0), 1e-7) << t;
    }
}

TEST(SPhase, HalfPeriodSweepsFullCircle) {
    for (int i = 0; i < 20; ++i) {
        const HPoint z0 = random_point();
        EXPECT_NEAR(swept_orbit_angle(kPi, z0), 2.0 * kPi, 1e-12);
        EXPECT_NEAR(swept_orbit_angle(-2.0 * kPi, z0), -4.0 * kPi, 1e-12);
    }
}

TEST(SPhase, CocycleAlongTheFlow) {
    for (int i = 0; i < 50; ++i) {
        const HPoint z = random_point();
        const double t1 = uniform(-4.0, 4.0);
        const double t2 = uniform(-4.0, 4.0);
        const double B = uniform(-1.0, 1.0);
        const complex lhs = s_phase(t1 + t2, z, B);
        const complex rhs = s_phase(t2, moebius_act(exp_s(t1), z), B) * s_phase(t1, z, B);
        EXPECT_LT(std::abs(lhs - rhs), 1e-10);
    }
}

TEST(Covering, QFoldCover) {
    for (int q = 1; q <= 8; ++q) {
        const complex expect = std::polar(1.0, 2.0 * kPi / q);
        EXPECT_LT(std::abs(covering_degree_check(q) - expect), 1e-8);
        for (int i = 0; i < 5; ++i) {
            const HPoint z = random_point();
            EXPECT_LT(std::abs(covering_phase(q, 1, z) - expect), 1e-8);
            EXPECT_LT(std::abs(covering_phase(q, q, z) - 1.0), 1e-8);
            if (q > 1) EXPECT_GT(std::abs(covering_phase(q, q - 1, z) - 1.0), 0.1);
        }
    }
    EXPECT_THROW(covering_phase(0, 1, HPoint::i()), std::invalid_argument);
}

TEST(MagneticWord, RejectsNonFinite) {
    EXPECT_THROW(MagneticWord({MagneticFactor::rotation(std::numeric_limits<double>::quiet_NaN())}),
                 std::invalid_argument);
}

TEST(MagneticWord, EmptyWordIsIdentity) {
    const HPoint z(0.4, 0.9);
    const MagneticAction a = act_magnetic(MagneticWord{}, z, 0.3);
    EXPECT_EQ(a.phase, complex(1.0, 0.0));
    EXPECT_EQ(a.image, z);
}

TEST(MagneticWord, PointMapMatchesSequentialAction) {
    const MagneticWord w({MagneticFactor::rotation(0.4), MagneticFactor::scaling(0.9),
                          MagneticFactor::translation(-0.3), MagneticFactor::rotation(-1.2)});
    const HPoint z(0.2, 1.3);
    HPoint seq = z;
    for (const auto& f : w.factors()) seq = moebius_act(f.matrix(), seq);
    const MagneticAction a = act_magnetic(w, z, 0.25);
    EXPECT_LT(std::abs(a.image.z() - seq.z()), 1e-13);
    EXPECT_LT(std::abs(moebius_act(w.point_map(), z).z() - seq.z()), 1e-13);
    EXPECT_NEAR(std::abs(a.phase), 1.0, 1e-15);
}

TEST(MagneticWord, InverseCancels) {
    for (int i = 0; i < 30; ++i) {
        std::vector<MagneticFactor> fs;
        for (int k = 0; k < 5; ++k) {
            const double v = uniform(-2.0, 2.0);
            const int kind = static_cast<int>(uniform(0.0, 3.0));
            fs.push_back(kind == 0   ? MagneticFactor::rotation(v)
                         : kind == 1 ? MagneticFactor::scaling(v)
                                     : MagneticFactor::translation(v));
        }
        const MagneticWord w(fs);
        const HPoint z = random_point();
        const double B = uniform(-1.0, 1.0);
        const MagneticAction a = act_magnetic(w * w.inverse(), z, B);
        EXPECT_LT(std::abs(a.phase - 1.0), 1e-10);
        EXPECT_LT(std::abs(a.image.z() - z.z()), 1e-9);
    }
}

TEST(MagneticWord, ScalingsAndTranslationsCarryNoPhase) {
    const MagneticWord w({MagneticFactor::scaling(0.7), MagneticFactor::translation(2.0)});
    EXPECT_LT(std::abs(act_magnetic(w, HPoint(1.0, 2.0), 0.6).phase - 1.0), 1e-15);
}

TEST(MagneticGenerators, LiftTheFuchsianGenerators) {
    for (int g = 2; g <= 4; ++g) {
        const TilingParams p(g);
        const auto lifted = magnetic_generators(p);
        const auto gens = make_generators(p);
        ASSERT_EQ(lifted.size(), gens.gammas.size());
        for (std::size_t j = 0; j < lifted.size(); ++j) {
            EXPECT_LT(psl2_distance(lifted[j].point_map(), gens.gammas[j]), 1e-12);
        }
        EXPECT_EQ(lifted.front().factors().size(), 1u);
    }
}

TEST(FluxRelation, GaussBonnetPhase) {
    for (int g : {2, 3}) {
        const TilingParams p(g);
        for (double B : {0.0, 0.25, 1.0 / 3.0, 0.7, -0.4}) {
            const complex expect = std::polar(1.0, 4.0 * (g - 1) * kPi * B);
            for (int i = 0; i < 5; ++i) {
                const HPoint z = random_point();
                const FluxRelationResult r = evaluate_flux_relation(p, B, z);
                EXPECT_LT(r.closure, 1e-6);
                EXPECT_LT(std::abs(r.phase - expect), 1e-7) << "g=" << g << " B=" << B;
            }
        }
    }
}

TEST(FluxRelation, QuarterFluxGivesMinusOne) {
    const complex ph = flux_relation_phase(TilingParams(2), 0.25, HPoint::i());
    EXPECT_LT(std::abs(ph + 1.0), 1e-9);
}

TEST(FluxRelation, WordShape) {
    const auto w = flux_relation_word(TilingParams(2));
    EXPECT_LT(distance_from_identity(w.point_map()), 1e-9);
    // 2g single-factor words for γ1 and its inverse, three factors for the rest.
    EXPECT_EQ(w.factors().size(), 2u * 1 + 2u * 3 * 3);
}

TEST(VertexAngle, RotationAboutVertexPhase) {
    for (int g : {2, 3}) {
        const auto dom = make_fundamental_domain(TilingParams(g));
        const double t = (2.0 * g - 1.0) * kPi / (4.0 * g);
        for (double B : {0.5, 1.0, 0.3}) {
            const complex expect = std::polar(1.0, B * kPi / (2.0 * g));
            EXPECT_LT(std::abs(s_phase(t, dom.vertices.front(), B) - expect), 1e-8);
        }
    }
}

TEST(AutomorphicFactor, CocycleProperty) {
    for (int i = 0; i < 100; ++i) {
        const Sl2Element g1 = random_element();
        const Sl2Element g2 = random_element();
        const HPoint z = random_point();
        const complex lhs = moebius_j(g1 * g2, z);
        const complex rhs = moebius_j(g1, moebius_act(g2, z)) * moebius_j(g2, z);
        EXPECT_LT(std::abs(lhs - rhs), 1e-9 * (1.0 + std::abs(lhs)));
    }
    EXPECT_EQ(automorphic_factor(Sl2Element::identity(), HPoint(3.0, 1.0)), complex(1.0, 0.0));
}
