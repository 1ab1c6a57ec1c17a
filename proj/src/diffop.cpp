#include "hyperband/diffop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperband {

namespace {

const complex kI{0.0, 1.0};

Polynomial rotation_field(const Polynomial& f) {
    const Polynomial x = Polynomial::x();
    const Polynomial y = Polynomial::y();
    return (Polynomial(1.0) + x * x - y * y) * f.dx() + 2.0 * x * y * f.dy();
}

Polynomial scaling_field(const Polynomial& f) {
    return 2.0 * Polynomial::x() * f.dx() + 2.0 * Polynomial::y() * f.dy();
}

}  // namespace

std::string_view to_string(DiffOpId op) {
    switch (op) {
        case DiffOpId::S_B:
            return "S_B";
        case DiffOpId::T_B:
            return "T_B";
        case DiffOpId::U_B:
            return "U_B";
        case DiffOpId::S_check:
            return "S_check";
        case DiffOpId::T_check:
            return "T_check";
        case DiffOpId::U_check:
            return "U_check";
        case DiffOpId::H_continuum:
            return "H_continuum";
    }
    return "?";
}

Polynomial apply(DiffOpId op, const Polynomial& f, double B) {
    const Polynomial x = Polynomial::x();
    const Polynomial y = Polynomial::y();
    switch (op) {
        case DiffOpId::S_B:
            return rotation_field(f) + (2.0 * kI * B) * y * f;
        case DiffOpId::T_B:
        case DiffOpId::T_check:
            return f.dx();
        case DiffOpId::U_B:
            return scaling_field(f);
        case DiffOpId::S_check:
            return rotation_field(f) + (2.0 * B) * (x + kI * y) * f;
        case DiffOpId::U_check:
            return scaling_field(f) + complex(2.0 * B) * f;
        case DiffOpId::H_continuum:
            return complex(-0.5) * y * y * (f.dx().dx() + f.dy().dy()) + (kI * B) * y * f.dx() +
                   complex(0.5 * B * B) * f;
    }
    throw std::logic_error("apply: bad operator id");
}

complex apply_diff_operator(DiffOpId op, const Polynomial& f, const HPoint& z, double B) {
    return apply(op, f, B)(z.x(), z.y());
}

Polynomial OperatorExpr::apply(const Polynomial& f, double B) const {
    Polynomial out;
    for (const Term& t : terms_) {
        Polynomial g = f;
        for (auto it = t.product.rbegin(); it != t.product.rend(); ++it) g = hyperband::apply(*it, g, B);
        out += t.coeff * g;
    }
    return out;
}

OperatorExpr operator+(const OperatorExpr& l, const OperatorExpr& r) {
    std::vector<OperatorExpr::Term> t = l.terms_;
    t.insert(t.end(), r.terms_.begin(), r.terms_.end());
    return OperatorExpr(std::move(t));
}

OperatorExpr operator*(complex s, const OperatorExpr& e) {
    std::vector<OperatorExpr::Term> t = e.terms_;
    for (auto& term : t) term.coeff *= s;
    return OperatorExpr(std::move(t));
}

OperatorExpr operator-(const OperatorExpr& l, const OperatorExpr& r) {
    return l + complex(-1.0) * r;
}

OperatorExpr operator*(const OperatorExpr& l, const OperatorExpr& r) {
    std::vector<OperatorExpr::Term> t;
    t.reserve(l.terms_.size() * r.terms_.size());
    for (const auto& a : l.terms_) {
        for (const auto& b : r.terms_) {
            std::vector<DiffOpId> prod = a.product;
            prod.insert(prod.end(), b.product.begin(), b.product.end());
            t.push_back({a.coeff * b.coeff, std::move(prod)});
        }
    }
    return OperatorExpr(std::move(t));
}

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) {
    return a * b - b * a;
}

const std::vector<Polynomial>& polynomial_test_basis() {
    static const std::vector<Polynomial> basis = [] {
        std::vector<Polynomial> out;
        for (int d = 0; d <= 3; ++d) {
            for (int py = 0; py <= d; ++py) out.push_back(Polynomial::monomial(d - py, py));
        }
        return out;
    }();
    return basis;
}

namespace {

double basis_residual(const OperatorExpr& e, const HPoint& z, double B) {
    double worst = 0.0;
    for (const Polynomial& f : polynomial_test_basis()) {
        worst = std::max(worst, std::abs(e.apply(f, B)(z.x(), z.y())));
    }
    return worst;
}

}  // namespace

double commutator_residual(DiffOpId op1, DiffOpId op2, const OperatorExpr& expected, const HPoint& z,
                           double B) {
    return basis_residual(commutator(op1, op2) - expected, z, B);
}

OperatorExpr hamiltonian_generator_form(GeneratorFamily family, double B) {
    const bool magnetic = family == GeneratorFamily::Magnetic;
    const OperatorExpr S = magnetic ? DiffOpId::S_B : DiffOpId::S_check;
    const OperatorExpr T = magnetic ? DiffOpId::T_B : DiffOpId::T_check;
    const OperatorExpr U = magnetic ? DiffOpId::U_B : DiffOpId::U_check;
    const OperatorExpr inner =
        T * (S - T) - complex(0.25) * (U * U) - complex(0.5) * U + OperatorExpr::identity(B * B);
    return complex(0.5) * inner;
}

double hamiltonian_commutation_residual(DiffOpId op, const HPoint& z, double B) {
    GeneratorFamily family;
    switch (op) {
        case DiffOpId::S_B:
        case DiffOpId::T_B:
        case DiffOpId::U_B:
            family = GeneratorFamily::Magnetic;
            break;
        case DiffOpId::S_check:
        case DiffOpId::T_check:
        case DiffOpId::U_check:
            family = GeneratorFamily::Checked;
            break;
        default:
            throw std::invalid_argument("hamiltonian_commutation_residual: op must be a generator");
    }
    return basis_residual(commutator(hamiltonian_generator_form(family, B), op), z, B);
}

std::pair<complex, complex> check_weighted_action(double t, DiffOpId kind, const Polynomial& f,
                                                  const HPoint& z, double B) {
    if (kind != DiffOpId::U_check && kind != DiffOpId::T_check) {
        throw std::invalid_argument("check_weighted_action: kind must be U_check or T_check");
    }
    if (std::abs(2.0 * B - std::round(2.0 * B)) > 1e-12) {
        throw std::invalid_argument("check_weighted_action: requires 2B to be an integer");
    }
    // Σ t^n/n! (X^n f)(z); X preserves the degree of f, so the series converges.
    complex left = 0.0;
    Polynomial term = f;
    double scale = 1.0;
    for (int n = 0; n < 400; ++n) {
        const complex contrib = scale * term(z.x(), z.y());
        left += contrib;
        if (n > 4 && std::abs(contrib) < 1e-18 * (1.0 + std::abs(left))) break;
        term = apply(kind, term, B);
        scale *= t / (n + 1);
    }
    complex right;
    if (kind == DiffOpId::T_check) {
        right = f(z.x() + t, z.y());
    } else {
        const double s = std::exp(2.0 * t);
        right = std::exp(2.0 * B * t) * f(s * z.x(), s * z.y());
    }
    return {left, right};
}

}  // namespace hyperband
