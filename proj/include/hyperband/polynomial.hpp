#pragma once

#include <complex>
#include <map>
#include <utility>

namespace hyperband {

/// Bivariate polynomial in (x, y) with complex coefficients. Derivatives are exact,
/// which keeps nested first- and second-order operator applications free of
/// finite-difference error.
class Polynomial {
public:
    using Monomial = std::pair<int, int>;  // (power of x, power of y)

    Polynomial() = default;
    Polynomial(std::complex<double> constant);  // NOLINT(google-explicit-constructor)

    static Polynomial x() { return monomial(1, 0); }
    static Polynomial y() { return monomial(0, 1); }
    static Polynomial monomial(int px, int py, std::complex<double> coeff = 1.0);

    Polynomial dx() const;
    Polynomial dy() const;
    std::complex<double> operator()(double x, double y) const;

    int degree() const;
    const std::map<Monomial, std::complex<double>>& terms() const { return terms_; }

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(std::complex<double> s);

    friend Polynomial operator+(Polynomial l, const Polynomial& r) { return l += r; }
    friend Polynomial operator-(Polynomial l, const Polynomial& r) { return l -= r; }
    friend Polynomial operator*(Polynomial p, std::complex<double> s) { return p *= s; }
    friend Polynomial operator*(std::complex<double> s, Polynomial p) { return p *= s; }
    friend Polynomial operator*(const Polynomial& l, const Polynomial& r);

private:
    void add_term(Monomial m, std::complex<double> c);
    std::map<Monomial, std::complex<double>> terms_;
};

}  // namespace hyperband
