#include "wick/scalar_coeff.hpp"

#include <sstream>

namespace wick {

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

namespace {

// Gaussian-rational part without the gradings: "1", "-i", "(1-2*i)", "3/2".
std::string gaussian_str(const Rational& re, const Rational& im) {
    if (im == 0) return rational_str(re);
    std::string imag;
    if (im == 1) imag = "i";
    else if (im == -1) imag = "-i";
    else imag = rational_str(im) + "*i";
    if (re == 0) return imag;
    std::string s = "(" + rational_str(re);
    if (im > 0) s += "+" + imag;
    else s += imag;  // sign carried by rational_str
    return s + ")";
}

}  // namespace

std::string ScalarCoeff::str() const {
    std::string s = gaussian_str(re, im);
    auto powers = [&](const char* sym, int k) {
        if (k == 0) return std::string{};
        std::string p = sym;
        if (k != 1) p += "^" + std::to_string(k);
        return p;
    };
    std::string hb = powers("hbar", hbar_power);
    std::string m2 = powers("m2", mass2_power);
    if (!hb.empty() || !m2.empty()) {
        if (s == "1") s.clear();
        else if (s == "-1") s = "-";
        else s += "*";
        s += hb;
        if (!hb.empty() && !m2.empty()) s += "*";
        s += m2;
    }
    return s;
}

std::string ScalarCoeff::factor_prefix() const {
    std::string s = str();
    if (s == "1") return "";
    if (s == "-1") return "-";
    return s + "*";
}

std::string term_str(const ScalarCoeff& c, const std::string& body) {
    if (body.empty()) return c.str();
    std::string s = c.str();
    if (s == "1") return body;
    if (s == "-1") return "-" + body;
    return s + " * " + body;
}

}  // namespace wick
