#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace wick {

using Rational = boost::multiprecision::cpp_rational;

/// Exact coefficient of a term: Gaussian rational times hbar^k times (m^2)^j.
/// Addition is only defined between coefficients of equal grading (same
/// hbar and m^2 powers); multiplication adds the gradings and folds i^2 = -1
/// into the rational part.
struct ScalarCoeff {
    Rational re{0};
    Rational im{0};
    int hbar_power = 0;
    int mass2_power = 0;

    ScalarCoeff() = default;
    ScalarCoeff(Rational r, Rational i, int hb = 0, int m2 = 0)
        : re(std::move(r)), im(std::move(i)), hbar_power(hb), mass2_power(m2) {
        if (hbar_power < 0 || mass2_power < 0)
            throw std::invalid_argument("ScalarCoeff: negative grading");
    }

    static ScalarCoeff zero() { return ScalarCoeff{}; }
    static ScalarCoeff one() { return ScalarCoeff{1, 0}; }
    static ScalarCoeff integer(long n) { return ScalarCoeff{n, 0}; }
    static ScalarCoeff rational(Rational r) { return ScalarCoeff{std::move(r), 0}; }
    static ScalarCoeff i() { return ScalarCoeff{0, 1}; }
    static ScalarCoeff minus_i() { return ScalarCoeff{0, -1}; }
    static ScalarCoeff hbar(int k = 1) { return ScalarCoeff{1, 0, k, 0}; }
    static ScalarCoeff mass2(int j = 1) { return ScalarCoeff{1, 0, 0, j}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const {
        return re == 1 && im == 0 && hbar_power == 0 && mass2_power == 0;
    }

    bool same_grading(const ScalarCoeff& o) const {
        return hbar_power == o.hbar_power && mass2_power == o.mass2_power;
    }

    ScalarCoeff operator*(const ScalarCoeff& o) const {
        ScalarCoeff r;
        r.re = re * o.re - im * o.im;
        r.im = re * o.im + im * o.re;
        r.hbar_power = hbar_power + o.hbar_power;
        r.mass2_power = mass2_power + o.mass2_power;
        return r;
    }

    ScalarCoeff operator-() const {
        return ScalarCoeff{-re, -im, hbar_power, mass2_power};
    }

    /// Addition within one grading class; mixed gradings are distinct terms.
    ScalarCoeff add_like(const ScalarCoeff& o) const {
        if (!same_grading(o))
            throw std::invalid_argument("ScalarCoeff::add_like: grading mismatch");
        return ScalarCoeff{re + o.re, im + o.im, hbar_power, mass2_power};
    }

    ScalarCoeff conjugate() const {
        return ScalarCoeff{re, -im, hbar_power, mass2_power};
    }

    bool operator==(const ScalarCoeff& o) const {
        return re == o.re && im == o.im && same_grading(o);
    }
    bool operator!=(const ScalarCoeff& o) const { return !(*this == o); }

    // Total order for deterministic output.
    int compare(const ScalarCoeff& o) const {
        if (hbar_power != o.hbar_power) return hbar_power < o.hbar_power ? -1 : 1;
        if (mass2_power != o.mass2_power) return mass2_power < o.mass2_power ? -1 : 1;
        if (re != o.re) return re < o.re ? -1 : 1;
        if (im != o.im) return im < o.im ? -1 : 1;
        return 0;
    }

    std::string str() const;

    /// Renders the coefficient as a leading factor: "" for +1, "-" for -1,
    /// "2*" for 2, so terms print as "2*phi(x)" rather than "2*1*phi(x)".
    std::string factor_prefix() const;
};

std::string rational_str(const Rational& r);

/// "body", "-body" or "coeff * body"; the bare coefficient when body is empty.
std::string term_str(const ScalarCoeff& c, const std::string& body);

}  // namespace wick
