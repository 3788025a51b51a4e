#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace jtx {

using cdouble = std::complex<double>;

/// 2x2 matrix over double or complex<double>. Row-major entries.
template <class T>
struct Mat2 {
    T m00{}, m01{}, m10{}, m11{};

    static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }

    Mat2 operator*(const Mat2& r) const {
        return {m00 * r.m00 + m01 * r.m10, m00 * r.m01 + m01 * r.m11,
                m10 * r.m00 + m11 * r.m10, m10 * r.m01 + m11 * r.m11};
    }

    Mat2 operator*(T s) const { return {m00 * s, m01 * s, m10 * s, m11 * s}; }

    T det() const { return m00 * m11 - m01 * m10; }
    T trace() const { return m00 + m11; }

    double max_abs() const {
        using std::abs;
        return std::max(std::max(abs(m00), abs(m01)), std::max(abs(m10), abs(m11)));
    }

    /// Spectral (operator) norm from the closed-form singular values:
    /// sigma_max^2 = (q + sqrt(q^2 - 4 d^2)) / 2 with q the squared Frobenius
    /// norm and d = |det|. The magnitude is factored out first so q^2 cannot
    /// overflow for any representable entries.
    double norm() const {
        using std::abs;
        const double s = max_abs();
        if (s == 0.0) return 0.0;
        const double inv = 1.0 / s;
        const double a00 = abs(m00) * inv, a01 = abs(m01) * inv;
        const double a10 = abs(m10) * inv, a11 = abs(m11) * inv;
        const double q = a00 * a00 + a01 * a01 + a10 * a10 + a11 * a11;
        const double d = abs((m00 * inv) * (m11 * inv) - (m01 * inv) * (m10 * inv));
        double disc = q * q - 4.0 * d * d;
        if (disc < 0.0) disc = 0.0;  // rounding
        return s * std::sqrt(0.5 * (q + std::sqrt(disc)));
    }

    /// Moebius action w -> (m00 w + m01) / (m10 w + m11).
    cdouble moebius(cdouble w) const {
        return (cdouble(m00) * w + cdouble(m01)) / (cdouble(m10) * w + cdouble(m11));
    }
};

using Matrix2 = Mat2<double>;
using Matrix2c = Mat2<cdouble>;

/// A 2x2 matrix stored as mat * exp(log_scale); keeps transfer products
/// representable when entries grow past double range.
struct ScaledMatrix2 {
    Matrix2 mat;
    double log_scale = 0.0;

    double log_norm() const { return std::log(mat.norm()) + log_scale; }

    /// True matrix, if representable in double range.
    bool representable() const {
        return log_scale + std::log(std::max(mat.max_abs(),
                                             std::numeric_limits<double>::min())) < 708.0;
    }
    Matrix2 value() const {
        const double s = std::exp(log_scale);
        return mat * s;
    }
};

}  // namespace jtx
