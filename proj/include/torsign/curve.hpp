#ifndef TORSIGN_CURVE_HPP
#define TORSIGN_CURVE_HPP

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "torsign/error.hpp"
#include "torsign/vec3.hpp"

namespace torsign {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Scalar trigonometric polynomial a0 + sum_k (a_k cos kt + b_k sin kt)
/// with exact derivatives to third order.
struct TrigPoly {
    double a0 = 0.0;
    std::vector<double> cos_coef; // k = 1..K
    std::vector<double> sin_coef;

    std::size_t order() const { return cos_coef.size(); }

    /// value and first three derivatives at t
    std::array<double, 4> jet(double t) const {
        std::array<double, 4> d = {a0, 0.0, 0.0, 0.0};
        for (std::size_t i = 0; i < cos_coef.size(); ++i) {
            const double k = double(i + 1);
            const double c = std::cos(k * t), s = std::sin(k * t);
            const double ak = cos_coef[i], bk = sin_coef[i];
            d[0] += ak * c + bk * s;
            d[1] += k * (-ak * s + bk * c);
            d[2] += k * k * (-ak * c - bk * s);
            d[3] += k * k * k * (ak * s - bk * c);
        }
        return d;
    }

    double operator()(double t) const { return jet(t)[0]; }
};

/// Vector-valued trigonometric polynomial with exact jets to third order.
struct FourierSeries3 {
    Vec3 a0;
    std::vector<Vec3> cos_coef; // k = 1..K
    std::vector<Vec3> sin_coef;

    std::size_t order() const { return cos_coef.size(); }

    void jet(double t, Vec3& x0, Vec3& x1, Vec3& x2, Vec3& x3) const {
        x0 = a0;
        x1 = x2 = x3 = Vec3{};
        for (std::size_t i = 0; i < cos_coef.size(); ++i) {
            const double k = double(i + 1);
            const double c = std::cos(k * t), s = std::sin(k * t);
            const Vec3& ak = cos_coef[i];
            const Vec3& bk = sin_coef[i];
            x0 += ak * c + bk * s;
            x1 += (bk * c - ak * s) * k;
            x2 += (ak * c + bk * s) * (-k * k);
            x3 += (ak * s - bk * c) * (k * k * k);
        }
    }
};

/// Position and first three derivatives of a curve at parameter t.
struct Jet3 {
    double t = 0.0;
    Vec3 x0, x1, x2, x3;
};

struct Center {
    Vec3 o;
};

enum class CurveKind { fourier, torus, radial };

/// Torus curve of type (1, n): ((R + r cos nt) cos t, (R + r cos nt) sin t, r sin nt).
struct TorusParams {
    int n = 1;
    double R = 1.0;
    double r = 0.1;
};

/// rho(t) * dir(t)/|dir(t)| — radial graphs over the sphere, including exactly
/// spherical curves (rho constant).  Only reachable through zoo generators.
struct RadialParams {
    TrigPoly rho;
    FourierSeries3 dir;
};

struct CurveSpec {
    CurveKind kind = CurveKind::fourier;
    FourierSeries3 fourier;
    TorusParams torus;
    RadialParams radial;

    // set when the spec came from a named zoo entry; purely for serialization
    std::string zoo_name;
    std::map<std::string, double> zoo_params;
};

inline void validate(const CurveSpec& spec) {
    switch (spec.kind) {
        case CurveKind::fourier:
            if (spec.fourier.order() < 1)
                throw ConfigError("fourier curve needs at least one harmonic (K >= 1)");
            if (spec.fourier.sin_coef.size() != spec.fourier.cos_coef.size())
                throw ConfigError("fourier cos/sin coefficient lists must have equal length");
            break;
        case CurveKind::torus:
            if (spec.torus.n < 1) throw ConfigError("torus winding n must be >= 1");
            if (!(spec.torus.R > 0.0) || !(spec.torus.r > 0.0))
                throw ConfigError("torus radii must be positive");
            if (!(spec.torus.r < spec.torus.R))
                throw ConfigError("torus needs r < R");
            break;
        case CurveKind::radial:
            if (spec.radial.dir.order() < 1)
                throw ConfigError("radial direction curve needs at least one harmonic");
            if (spec.radial.dir.sin_coef.size() != spec.radial.dir.cos_coef.size() ||
                spec.radial.rho.sin_coef.size() != spec.radial.rho.cos_coef.size())
                throw ConfigError("coefficient lists must have equal length");
            break;
    }
}

/// Jets of g/|g| from jets of g.  Exact quotient-rule differentiation; the
/// same computation serves the radial curve family and the spherical
/// projection.  Throws if |g| is (numerically) zero.
inline Jet3 radial_unit_jet(const Jet3& g) {
    const double q = dot(g.x0, g.x0);
    if (!(q > 1e-300))
        throw DegenerateCurveError(g.t, "radial_unit_jet: vanishing radius at t=" + std::to_string(g.t));
    const double s = std::sqrt(q);
    const double A = dot(g.x0, g.x1);
    const double A1 = dot(g.x1, g.x1) + dot(g.x0, g.x2);
    const double A2 = 3.0 * dot(g.x1, g.x2) + dot(g.x0, g.x3);
    const double s1 = A / s;
    const double s2 = (A1 - s1 * s1) / s;
    const double s3 = (A2 - 3.0 * s1 * s2) / s;

    Jet3 v;
    v.t = g.t;
    v.x0 = g.x0 / s;
    v.x1 = (g.x1 - v.x0 * s1) / s;
    v.x2 = (g.x2 - v.x1 * (2.0 * s1) - v.x0 * s2) / s;
    v.x3 = (g.x3 - v.x2 * (3.0 * s1) - v.x1 * (3.0 * s2) - v.x0 * s3) / s;
    return v;
}

/// Exact analytic jets of the represented curve at t.  No finite differences.
inline Jet3 evaluate_jet(const CurveSpec& spec, double t) {
    if (!std::isfinite(t)) throw PreconditionError("evaluate_jet: t must be finite");
    validate(spec);
    Jet3 j;
    j.t = t;
    switch (spec.kind) {
        case CurveKind::fourier:
            spec.fourier.jet(t, j.x0, j.x1, j.x2, j.x3);
            return j;
        case CurveKind::torus: {
            const double n = double(spec.torus.n), R = spec.torus.R, r = spec.torus.r;
            const double c = std::cos(t), s = std::sin(t);
            const double cn = std::cos(n * t), sn = std::sin(n * t);
            // w = R + r cos nt and its derivatives
            const double w0 = R + r * cn, w1 = -r * n * sn, w2 = -r * n * n * cn, w3 = r * n * n * n * sn;
            // derivatives of cos t / sin t
            const double c0 = c, c1 = -s, c2 = -c, c3 = s;
            const double s0 = s, s1 = c, s2 = -s, s3 = -c;
            j.x0 = {w0 * c0, w0 * s0, r * sn};
            j.x1 = {w1 * c0 + w0 * c1, w1 * s0 + w0 * s1, r * n * cn};
            j.x2 = {w2 * c0 + 2 * w1 * c1 + w0 * c2, w2 * s0 + 2 * w1 * s1 + w0 * s2,
                    -r * n * n * sn};
            j.x3 = {w3 * c0 + 3 * w2 * c1 + 3 * w1 * c2 + w0 * c3,
                    w3 * s0 + 3 * w2 * s1 + 3 * w1 * s2 + w0 * s3, -r * n * n * n * cn};
            return j;
        }
        case CurveKind::radial: {
            Jet3 u;
            u.t = t;
            spec.radial.dir.jet(t, u.x0, u.x1, u.x2, u.x3);
            const Jet3 v = radial_unit_jet(u);
            const auto p = spec.radial.rho.jet(t);
            if (!(p[0] > 0.0))
                throw DegenerateCurveError(t, "radial curve: rho <= 0 at t=" + std::to_string(t));
            j.x0 = v.x0 * p[0];
            j.x1 = v.x1 * p[0] + v.x0 * p[1];
            j.x2 = v.x2 * p[0] + v.x1 * (2.0 * p[1]) + v.x0 * p[2];
            j.x3 = v.x3 * p[0] + v.x2 * (3.0 * p[1]) + v.x1 * (3.0 * p[2]) + v.x0 * p[3];
            return j;
        }
    }
    throw ConfigError("evaluate_jet: unknown curve kind");
}

/// Jets at uniform parameters 2*pi*i/n, i = 0..n-1, checking regularity.
inline std::vector<Jet3> sample_curve(const CurveSpec& spec, int n_samples) {
    if (n_samples < 16) throw PreconditionError("sample_curve: n_samples must be >= 16");
    std::vector<Jet3> jets;
    jets.reserve(std::size_t(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double t = kTwoPi * double(i) / double(n_samples);
        Jet3 j = evaluate_jet(spec, t);
        if (norm(j.x1) <= 1e-12)
            throw DegenerateCurveError(
                t, "sample_curve: first derivative vanishes at t=" + std::to_string(t));
        jets.push_back(j);
    }
    return jets;
}

namespace detail {

inline void shift_series(std::vector<Vec3>& a, std::vector<Vec3>& b, double phase, int orientation) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double k = double(i + 1);
        const double c = std::cos(k * phase), s = std::sin(k * phase);
        const Vec3 na = a[i] * c + b[i] * s;
        const Vec3 nb = (b[i] * c - a[i] * s) * double(orientation);
        a[i] = na;
        b[i] = nb;
    }
}

inline void shift_series(std::vector<double>& a, std::vector<double>& b, double phase,
                         int orientation) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double k = double(i + 1);
        const double c = std::cos(k * phase), s = std::sin(k * phase);
        const double na = a[i] * c + b[i] * s;
        const double nb = (b[i] * c - a[i] * s) * double(orientation);
        a[i] = na;
        b[i] = nb;
    }
}

} // namespace detail

/// Exact fourier form of a torus spec:
/// (R + r cos nt) cos t = R cos t + (r/2)(cos (n+1)t + cos (n-1)t), etc.
inline CurveSpec to_fourier(const CurveSpec& spec) {
    validate(spec);
    if (spec.kind == CurveKind::fourier) return spec;
    if (spec.kind != CurveKind::torus)
        throw ConfigError("to_fourier: only fourier and torus curves have exact fourier form");
    const int n = spec.torus.n;
    const double R = spec.torus.R, r = spec.torus.r;
    const std::size_t K = std::size_t(n + 1);
    CurveSpec out;
    out.kind = CurveKind::fourier;
    out.fourier.cos_coef.assign(K, Vec3{});
    out.fourier.sin_coef.assign(K, Vec3{});
    auto add_cos = [&](int k, const Vec3& v) {
        if (k == 0) out.fourier.a0 += v;
        else out.fourier.cos_coef[std::size_t(k - 1)] += v;
    };
    auto add_sin = [&](int k, const Vec3& v) {
        if (k == 0) return; // sin(0t) = 0
        else if (k < 0) out.fourier.sin_coef[std::size_t(-k - 1)] -= v;
        else out.fourier.sin_coef[std::size_t(k - 1)] += v;
    };
    add_cos(1, {R, 0, 0});
    add_sin(1, {0, R, 0});
    add_cos(n + 1, {r / 2, 0, 0});
    add_cos(std::abs(n - 1), {r / 2, 0, 0});
    add_sin(n + 1, {0, r / 2, 0});
    add_sin(n - 1, {0, -r / 2, 0});
    add_sin(n, {0, 0, r});
    return out;
}

/// New spec tracing the same point set with t -> gamma(orientation*t + phase).
/// Coefficient transformations are exact; a torus spec is first expanded to
/// its exact fourier form.
inline CurveSpec reparametrize(const CurveSpec& spec, double phase, int orientation) {
    if (orientation != 1 && orientation != -1)
        throw PreconditionError("reparametrize: orientation must be +1 or -1");
    CurveSpec out = spec.kind == CurveKind::torus ? to_fourier(spec) : spec;
    out.zoo_name.clear();
    out.zoo_params.clear();
    switch (out.kind) {
        case CurveKind::fourier:
            detail::shift_series(out.fourier.cos_coef, out.fourier.sin_coef, phase, orientation);
            break;
        case CurveKind::radial:
            detail::shift_series(out.radial.dir.cos_coef, out.radial.dir.sin_coef, phase,
                                 orientation);
            detail::shift_series(out.radial.rho.cos_coef, out.radial.rho.sin_coef, phase,
                                 orientation);
            break;
        default:
            break;
    }
    return out;
}

/// Rough geometric scale (max distance of coarse samples from their centroid);
/// used to make coincidence-type thresholds relative.
inline double curve_scale(const CurveSpec& spec) {
    constexpr int n = 64;
    Vec3 centroid;
    std::array<Vec3, n> pts;
    for (int i = 0; i < n; ++i) {
        pts[std::size_t(i)] = evaluate_jet(spec, kTwoPi * i / n).x0;
        centroid += pts[std::size_t(i)];
    }
    centroid = centroid / double(n);
    double scale = 0.0;
    for (const Vec3& p : pts) scale = std::max(scale, norm(p - centroid));
    return scale > 0.0 ? scale : 1.0;
}

} // namespace torsign

#endif
