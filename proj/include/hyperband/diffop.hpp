#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "hyperband/polynomial.hpp"
#include "hyperband/sl2.hpp"

namespace hyperband {

// Ŝ_B = (1+x²-y²)∂x + 2xy∂y + 2iBy,  T̂_B = ∂x,  Û_B = 2x∂x + 2y∂y
// Š   = (1+x²-y²)∂x + 2xy∂y + 2B(x+iy),  Ť = ∂x,  Ǔ = 2x∂x + 2y∂y + 2B
// H   = -(y²/2)(∂x²+∂y²) + iBy∂x + B²/2   (m = 1)
enum class DiffOpId { S_B, T_B, U_B, S_check, T_check, U_check, H_continuum };

std::string_view to_string(DiffOpId op);

Polynomial apply(DiffOpId op, const Polynomial& f, double B);

/// (op f)(z).
complex apply_diff_operator(DiffOpId op, const Polynomial& f, const HPoint& z, double B);

/// Linear combination of operator products; an empty product is the identity.
/// A product {A, B} acts as A(B(f)).
class OperatorExpr {
public:
    struct Term {
        complex coeff;
        std::vector<DiffOpId> product;
    };

    OperatorExpr() = default;
    OperatorExpr(DiffOpId op) : terms_{{1.0, {op}}} {}  // NOLINT(google-explicit-constructor)
    static OperatorExpr identity(complex coeff = 1.0) { return OperatorExpr({{coeff, {}}}); }
    static OperatorExpr zero() { return {}; }

    Polynomial apply(const Polynomial& f, double B) const;
    const std::vector<Term>& terms() const { return terms_; }

    friend OperatorExpr operator+(const OperatorExpr& l, const OperatorExpr& r);
    friend OperatorExpr operator-(const OperatorExpr& l, const OperatorExpr& r);
    friend OperatorExpr operator*(const OperatorExpr& l, const OperatorExpr& r);
    friend OperatorExpr operator*(complex s, const OperatorExpr& e);

private:
    explicit OperatorExpr(std::vector<Term> terms) : terms_(std::move(terms)) {}
    std::vector<Term> terms_;
};

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b);

/// {1, x, y, x², xy, y², x³, x²y, xy², y³}.
const std::vector<Polynomial>& polynomial_test_basis();

/// max over the basis of |([op1, op2] - expected) f (z)|.
double commutator_residual(DiffOpId op1, DiffOpId op2, const OperatorExpr& expected, const HPoint& z,
                           double B);

enum class GeneratorFamily { Magnetic, Checked };

/// (1/2)(T(S - T) - U²/4 - U/2 + B²) in the chosen generator family.
OperatorExpr hamiltonian_generator_form(GeneratorFamily family, double B);

/// max over the basis of |[H, op] f (z)|; op from either generator family.
double hamiltonian_commutation_residual(DiffOpId op, const HPoint& z, double B);

/// Left and right sides of e^{tǓ}f(z) = e^{2Bt} f(e^{2t}z) or e^{tŤ}f(z) = f(z + t).
/// The left side sums the operator exponential series on the polynomial exactly.
/// Requires 2B to be an integer.
std::pair<complex, complex> check_weighted_action(double t, DiffOpId kind, const Polynomial& f,
                                                  const HPoint& z, double B);

}  // namespace hyperband
