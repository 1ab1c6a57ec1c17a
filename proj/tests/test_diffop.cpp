#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "hyperband/diffop.hpp"
#include "test_util.hpp"

using namespace hyperband;
using hyperband::testing::random_point;
using D = DiffOpId;

namespace {

constexpr double kBs[] = {0.0, 1.0 / 3.0, 0.77};

OperatorExpr scaled(double s, D op) {
    return complex(s) * OperatorExpr(op);
}

}  // namespace

TEST(Polynomial, ArithmeticAndDerivatives) {
    const Polynomial x = Polynomial::x();
    const Polynomial y = Polynomial::y();
    const Polynomial f = x * x * y + complex(0.0, 2.0) * y + Polynomial(3.0);
    EXPECT_EQ(f(2.0, 3.0), complex(15.0, 6.0));
    EXPECT_EQ(f.dx()(2.0, 3.0), complex(12.0, 0.0));
    EXPECT_EQ(f.dy()(2.0, 3.0), complex(4.0, 2.0));
    EXPECT_EQ(f.degree(), 3);
    EXPECT_EQ((f - f).terms().size(), 0u);
    EXPECT_EQ(Polynomial(5.0).dx().terms().size(), 0u);
    EXPECT_EQ(polynomial_test_basis().size(), 10u);
}

TEST(DiffOp, HandComputedActions) {
    const Polynomial f = Polynomial::monomial(2, 1);  // x²y
    const double x = 0.7, y = 1.9, B = 0.4;
    const HPoint z(x, y);
    const complex fx = 2.0 * x * y, fy = x * x, fv = x * x * y;
    const complex s_b = (1 + x * x - y * y) * fx + 2 * x * y * fy + complex(0, 2 * B * y) * fv;
    EXPECT_LT(std::abs(apply_diff_operator(D::S_B, f, z, B) - s_b), 1e-13);
    EXPECT_LT(std::abs(apply_diff_operator(D::T_B, f, z, B) - fx), 1e-13);
    EXPECT_LT(std::abs(apply_diff_operator(D::U_B, f, z, B) - (2 * x * fx + 2 * y * fy)), 1e-13);
    const complex s_c = (1 + x * x - y * y) * fx + 2 * x * y * fy + 2.0 * B * complex(x, y) * fv;
    EXPECT_LT(std::abs(apply_diff_operator(D::S_check, f, z, B) - s_c), 1e-13);
    EXPECT_LT(std::abs(apply_diff_operator(D::U_check, f, z, B) - (2 * x * fx + 2 * y * fy + 2 * B * fv)),
              1e-13);
    // H = -(y²/2)Δ + iBy∂x + B²/2 with Δ(x²y) = 2y.
    const complex h = -(y * y / 2) * (2.0 * y) + complex(0, B * y) * fx + B * B / 2 * fv;
    EXPECT_LT(std::abs(apply_diff_operator(D::H_continuum, f, z, B) - h), 1e-13);
}

TEST(DiffOp, Names) {
    EXPECT_EQ(to_string(D::S_B), "S_B");
    EXPECT_EQ(to_string(D::H_continuum), "H_continuum");
}

TEST(OperatorExpr, CompositionOrder) {
    // (T U) f = T(U f); for f = x: U x = 2x, T(2x) = 2.  (U T) x = U 1 = 0.
    const Polynomial x = Polynomial::x();
    EXPECT_EQ((OperatorExpr(D::T_B) * OperatorExpr(D::U_B)).apply(x, 0.0)(0.3, 1.0), complex(2.0));
    EXPECT_EQ((OperatorExpr(D::U_B) * OperatorExpr(D::T_B)).apply(x, 0.0)(0.3, 1.0), complex(0.0));
    EXPECT_EQ(commutator(D::T_B, D::T_B).apply(x * x, 0.5)(1.0, 1.0), complex(0.0));
}

TEST(Commutators, MagneticFamily) {
    for (double B : kBs) {
        for (int i = 0; i < 20; ++i) {
            const HPoint z = random_point();
            EXPECT_LT(commutator_residual(D::S_B, D::T_B, scaled(-1, D::U_B), z, B), 1e-8);
            EXPECT_LT(commutator_residual(D::U_B, D::T_B, scaled(-2, D::T_B), z, B), 1e-8);
            EXPECT_LT(commutator_residual(D::U_B, D::S_B, scaled(-4, D::T_B) + scaled(2, D::S_B), z, B),
                      1e-8);
        }
    }
}

TEST(Commutators, CheckedFamily) {
    for (double B : kBs) {
        for (int i = 0; i < 20; ++i) {
            const HPoint z = random_point();
            EXPECT_LT(commutator_residual(D::S_check, D::T_check, scaled(-1, D::U_check), z, B), 1e-8);
            EXPECT_LT(commutator_residual(D::U_check, D::T_check, scaled(-2, D::T_check), z, B), 1e-8);
            EXPECT_LT(commutator_residual(D::U_check, D::S_check,
                                          scaled(-4, D::T_check) + scaled(2, D::S_check), z, B),
                      1e-8);
        }
    }
}

TEST(Commutators, WrongExpectationIsDetected) {
    EXPECT_GT(commutator_residual(D::S_B, D::T_B, OperatorExpr(D::U_B), HPoint(0.3, 1.2), 0.5), 0.1);
}

TEST(Hamiltonian, CommutesWithBothFamilies) {
    for (double B : kBs) {
        for (int i = 0; i < 20; ++i) {
            const HPoint z = random_point();
            for (D op : {D::S_B, D::T_B, D::U_B, D::S_check, D::T_check, D::U_check}) {
                EXPECT_LT(hamiltonian_commutation_residual(op, z, B), 1e-8) << to_string(op);
            }
        }
    }
    EXPECT_THROW(hamiltonian_commutation_residual(D::H_continuum, HPoint::i(), 0.0), std::invalid_argument);
}

TEST(Hamiltonian, ContinuumEqualsGeneratorForm) {
    for (double B : kBs) {
        const OperatorExpr gen = hamiltonian_generator_form(GeneratorFamily::Magnetic, B);
        for (int i = 0; i < 20; ++i) {
            const HPoint z = random_point();
            for (const auto& f : polynomial_test_basis()) {
                const complex lhs = apply_diff_operator(D::H_continuum, f, z, B);
                const complex rhs = gen.apply(f, B)(z.x(), z.y());
                EXPECT_LT(std::abs(lhs - rhs), 1e-8);
            }
        }
    }
}

TEST(WeightedAction, ScalingExample) {
    const auto [lhs, rhs] = check_weighted_action(0.3, D::U_check, Polynomial::y(), HPoint(0.0, 2.0), 0.5);
    const complex expect = std::exp(0.3) * std::exp(0.6) * 2.0;
    EXPECT_LT(std::abs(rhs - expect), 1e-12);
    EXPECT_LT(std::abs(lhs - expect), 1e-10);
}

TEST(WeightedAction, TranslationExample) {
    const Polynomial f = Polynomial::x() * Polynomial::x();
    const auto [lhs, rhs] = check_weighted_action(0.5, D::T_check, f, HPoint(1.0, 1.0), 0.0);
    EXPECT_LT(std::abs(rhs - 2.25), 1e-14);
    EXPECT_LT(std::abs(lhs - 2.25), 1e-12);
}

TEST(WeightedAction, BasisProperty) {
    for (double B : {0.0, 0.5, 1.0, 1.5}) {
        for (const auto& f : polynomial_test_basis()) {
            for (D kind : {D::U_check, D::T_check}) {
                const auto [lhs, rhs] = check_weighted_action(-0.4, kind, f, HPoint(0.6, 1.1), B);
                EXPECT_LT(std::abs(lhs - rhs), 1e-9 * (1.0 + std::abs(rhs)));
            }
        }
    }
}

TEST(WeightedAction, RequiresHalfIntegerField) {
    EXPECT_THROW(check_weighted_action(0.1, D::U_check, Polynomial::y(), HPoint::i(), 0.3),
                 std::invalid_argument);
    EXPECT_THROW(check_weighted_action(0.1, D::S_B, Polynomial::y(), HPoint::i(), 0.5),
                 std::invalid_argument);
}
