#include "hyperband/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace hyperband {

Polynomial::Polynomial(std::complex<double> constant) {
    if (constant != 0.0) terms_[{0, 0}] = constant;
}

Polynomial Polynomial::monomial(int px, int py, std::complex<double> coeff) {
    Polynomial p;
    p.add_term({px, py}, coeff);
    return p;
}

void Polynomial::add_term(Monomial m, std::complex<double> c) {
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

Polynomial Polynomial::dx() const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        if (m.first > 0) out.add_term({m.first - 1, m.second}, c * static_cast<double>(m.first));
    }
    return out;
}

Polynomial Polynomial::dy() const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        if (m.second > 0) out.add_term({m.first, m.second - 1}, c * static_cast<double>(m.second));
    }
    return out;
}

std::complex<double> Polynomial::operator()(double x, double y) const {
    std::complex<double> sum = 0.0;
    for (const auto& [m, c] : terms_) sum += c * std::pow(x, m.first) * std::pow(y, m.second);
    return sum;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.first + m.second);
    return d;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(std::complex<double> s) {
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

Polynomial operator*(const Polynomial& l, const Polynomial& r) {
    Polynomial out;
    for (const auto& [ml, cl] : l.terms_) {
        for (const auto& [mr, cr] : r.terms_) {
            out.add_term({ml.first + mr.first, ml.second + mr.second}, cl * cr);
        }
    }
    return out;
}

}  // namespace hyperband
