#ifndef TORSIGN_FRENET_HPP
#define TORSIGN_FRENET_HPP

#include <cmath>
#include <string>

#include "torsign/curve.hpp"
#include "torsign/error.hpp"
#include "torsign/vec3.hpp"

namespace torsign {

/// Frenet frame and scalar invariants at one parameter.
struct FrenetSample {
    double t = 0.0;
    Vec3 T, N, B;
    double kappa = 0.0;
    double tau = 0.0;
};

/// Plane through `point` orthogonal to the binormal.
struct OsculatingPlane {
    Vec3 point;
    Vec3 normal;
};

/// Frame, curvature and torsion from a jet, valid for any regular
/// parametrization:
///   T = x1/|x1|, B = (x1 x x2)/|x1 x x2|, N = B x T,
///   kappa = |x1 x x2| / |x1|^3, tau = <x1 x x2, x3> / |x1 x x2|^2.
/// Values agree with the unit-speed formulas at the same geometric point.
inline FrenetSample frenet_at(const Jet3& jet, double kappa_min = 1e-8) {
    const double speed = norm(jet.x1);
    if (speed <= 1e-12)
        throw DegenerateCurveError(jet.t, "frenet_at: vanishing first derivative at t=" +
                                              std::to_string(jet.t));
    const Vec3 cr = cross(jet.x1, jet.x2);
    const double crn = norm(cr);
    const double kappa = crn / (speed * speed * speed);
    if (kappa <= kappa_min)
        throw CurvatureDegeneracyError(jet.t, kappa,
                                       "frenet_at: curvature " + std::to_string(kappa) +
                                           " below floor at t=" + std::to_string(jet.t));
    FrenetSample f;
    f.t = jet.t;
    f.T = jet.x1 / speed;
    f.B = cr / crn;
    f.N = cross(f.B, f.T);
    f.kappa = kappa;
    f.tau = dot(cr, jet.x3) / (crn * crn);
    return f;
}

inline OsculatingPlane osculating_plane(const FrenetSample& sample, const Vec3& position) {
    return {position, sample.B};
}

/// Signed distance of q from the plane: positive means the side the normal
/// (binormal) points into, "above" in the maximum-principle sense.
inline double signed_side(const OsculatingPlane& plane, const Vec3& q) {
    return dot(q - plane.point, plane.normal);
}

} // namespace torsign

#endif
