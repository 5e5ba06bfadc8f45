#pragma once

#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <numbers>
#include <string>

#include "cusped/error.hpp"

namespace cusped {

// Strictly positive real stored as its natural logarithm, so products and
// powers of astronomically large or small quantities never overflow.  Zero is
// represented by ln = -infinity.
struct LogReal {
    double ln = -std::numeric_limits<double>::infinity();

    static LogReal from(double x) {
        if (x < 0) throw Error("LogReal requires a nonnegative value");
        LogReal r;
        r.ln = std::log(x);
        return r;
    }
    static LogReal from_ln(double l) {
        LogReal r;
        r.ln = l;
        return r;
    }

    bool is_zero() const { return std::isinf(ln) && ln < 0; }

    // May overflow/underflow to inf/0; use log10()/sci() for reporting.
    double value() const { return std::exp(ln); }
    double log10() const { return ln / std::numbers::ln10; }

    friend LogReal operator*(LogReal a, LogReal b) { return from_ln(a.ln + b.ln); }
    friend LogReal operator/(LogReal a, LogReal b) { return from_ln(a.ln - b.ln); }
    friend LogReal operator*(LogReal a, double b) { return a * from(b); }
    friend LogReal operator*(double a, LogReal b) { return from(a) * b; }
    friend LogReal operator/(LogReal a, double b) { return a / from(b); }

    friend LogReal operator+(LogReal a, LogReal b) {
        if (a.ln < b.ln) std::swap(a, b);
        if (b.is_zero()) return a;
        return from_ln(a.ln + std::log1p(std::exp(b.ln - a.ln)));
    }
    // Requires a > b; log-space complement via log1p(-exp(..)).
    friend LogReal operator-(LogReal a, LogReal b) {
        if (b.is_zero()) return a;
        if (!(b.ln < a.ln)) throw Error("LogReal subtraction would not be positive");
        return from_ln(a.ln + std::log1p(-std::exp(b.ln - a.ln)));
    }

    LogReal pow(double e) const { return from_ln(ln * e); }

    friend bool operator<(LogReal a, LogReal b) { return a.ln < b.ln; }
    friend bool operator>(LogReal a, LogReal b) { return a.ln > b.ln; }
    friend bool operator<=(LogReal a, LogReal b) { return a.ln <= b.ln; }
    friend bool operator>=(LogReal a, LogReal b) { return a.ln >= b.ln; }

    // Scientific rendering "1.234567e+89" valid far beyond double range.
    std::string sci(int digits = 6) const {
        if (is_zero()) return "0";
        double l10 = log10();
        double e = std::floor(l10);
        double mant = std::pow(10.0, l10 - e);
        // Guard against mantissa rounding to 10 when printed.
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", digits, mant);
        if (buf[0] == '1' && buf[1] == '0') {
            mant /= 10.0;
            e += 1.0;
            std::snprintf(buf, sizeof buf, "%.*f", digits, mant);
        }
        std::snprintf(buf + std::strlen(buf), sizeof buf - std::strlen(buf), "e%+.0f", e);
        return buf;
    }
};

// asinh in log space; series for tiny arguments where asinh(x) ~ x.
inline LogReal log_asinh(LogReal x) {
    double xv = x.value();
    if (x.ln > std::log(1e-4)) return LogReal::from(std::asinh(xv));
    double x2 = std::exp(2.0 * x.ln);  // may underflow to 0, which is fine
    return LogReal::from_ln(x.ln + std::log1p(-x2 / 6.0));
}

// sinh in log space; series for tiny arguments.
inline LogReal log_sinh(LogReal x) {
    double xv = x.value();
    if (x.ln > std::log(1e-4)) return LogReal::from(std::sinh(xv));
    double x2 = std::exp(2.0 * x.ln);
    return LogReal::from_ln(x.ln + std::log1p(x2 / 6.0));
}

// sinh(x) - x in log space, stable against cancellation for small x.
inline LogReal log_sinh_minus_x(LogReal x) {
    double xv = x.value();
    if (x.ln > std::log(0.1)) return LogReal::from(std::sinh(xv) - xv);
    double x2 = std::exp(2.0 * x.ln);
    // x^3/6 * (1 + x^2/20 + x^4/840 + x^6/60480)
    double tail = x2 / 20.0 + x2 * x2 / 840.0 + x2 * x2 * x2 / 60480.0;
    return LogReal::from_ln(3.0 * x.ln - std::log(6.0) + std::log1p(tail));
}

// sinh(x)/x - 1 in log space: positive for every x > 0, which witnesses the
// strict inequality x < sinh(x) structurally.
inline LogReal log_sinh_excess(LogReal x) {
    return log_sinh_minus_x(x) / x;
}

}  // namespace cusped
