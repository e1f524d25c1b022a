#pragma once

#include <cmath>
#include <stdexcept>

// Small scalar helpers: bracketing bisection and golden-section maximisation.

namespace morse_gpe::rootfind {

// Bisection on a sign-changing bracket [a, b] until b - a <= tol.
// f(a) and f(b) must have opposite signs (or one of them be zero).
template <class F>
double bisect(F&& f, double a, double b, double tol) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa < 0.0) == (fb < 0.0)) {
        throw std::invalid_argument("bisect: root not bracketed");
    }
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;  // bracket at machine resolution
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

struct Extremum {
    double x;
    double value;
};

// Golden-section search for the maximum of a unimodal f on [a, b].
template <class F>
Extremum golden_section_max(F&& f, double a, double b, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

template <class F>
Extremum golden_section_min(F&& f, double a, double b, double tol) {
    auto r = golden_section_max([&](double x) { return -f(x); }, a, b, tol);
    return {r.x, -r.value};
}

}  // namespace morse_gpe::rootfind
