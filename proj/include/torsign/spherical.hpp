#ifndef TORSIGN_SPHERICAL_HPP
#define TORSIGN_SPHERICAL_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "torsign/config.hpp"
#include "torsign/curve.hpp"
#include "torsign/error.hpp"
#include "torsign/frenet.hpp"
#include "torsign/signcert.hpp"

namespace torsign {

/// Radial projection of a curve point onto the unit sphere about the center,
/// with the spherical frame and geodesic curvature.  All vectors live in
/// o-centered coordinates.
struct SphericalSample {
    double t = 0.0;
    Vec3 pbar;             // projected point, unit
    Vec3 Tbar, Nbar, Bbar; // frame of the projected curve
    Vec3 nbar;             // conormal pbar x Tbar
    double kbar = 0.0;     // <Nbar, nbar>
    Jet3 jets;             // jets of the projected curve to third order, o-centered
    bool second_kind = false; // |jets.x1 x jets.x2| below floor: Nbar/kbar undefined
};

/// Residuals of the osculating-plane identities evaluated at an inflection
/// parameter of the projection.
struct LemmaResiduals {
    double dist_o_to_osc_plane_bar = 0.0; // |<pbar, Bbar>|: o on the projected osculating plane
    double plane_coincidence_angle = 0.0; // angle between the two planes, unoriented
    double point_plane_distance = 0.0;    // distance of the curve point from the projected plane
    double binormal_angle = 0.0;          // oriented angle between B(p) and Bbar(pbar)
    double eq_a_value = 0.0;              // kappa * <N, p - o>; negative under local convexity
};

struct InflectionRecord {
    double t_star = 0.0;
    bool genuine = false;
    double kbar_left = 0.0;  // kbar at the flanking certification points
    double kbar_right = 0.0;
    double bracket_width = 0.0;
    LemmaResiduals lemma_residuals;
};

struct InflectionScan {
    std::vector<InflectionRecord> records; // ascending t_star; genuine and tangential
    std::vector<ParamWindow> degenerate_windows;
    bool degenerate = false;
};

/// Project one jet onto the unit sphere about o.  Preconditions: the point is
/// away from o and the tangent line does not pass through o; the latter is a
/// prerequisite of local convexity and is reported as a hypothesis violation.
inline SphericalSample project_jet(const Jet3& jet, const Center& center,
                                   const Tolerances& tol = {}) {
    Jet3 g = jet;
    g.x0 -= center.o;
    const double s = norm(g.x0);
    if (s <= 1e-300)
        throw HypothesisViolationError(jet.t, "project_jet: curve meets the center at t=" +
                                                  std::to_string(jet.t));
    const double speed = norm(g.x1);
    const double sin_angle = norm(cross(g.x0, g.x1)) / (s * speed);
    if (!(sin_angle > tol.tangent_floor))
        throw HypothesisViolationError(
            jet.t, "project_jet: tangent line passes through the center at t=" +
                       std::to_string(jet.t));

    SphericalSample out;
    out.t = jet.t;
    out.jets = radial_unit_jet(g);
    out.pbar = out.jets.x0;
    out.Tbar = out.jets.x1 / norm(out.jets.x1);
    const Vec3 cr = cross(out.jets.x1, out.jets.x2);
    const double crn = norm(cr);
    const double n1 = norm(out.jets.x1);
    out.nbar = cross(out.pbar, out.Tbar);
    if (crn <= 1e-12 * n1 * n1 * n1) {
        // cannot happen for true spherical data (curvature >= 1 on the unit
        // sphere) but surfaces numerically when jets collapse
        out.second_kind = true;
        out.Nbar = Vec3{};
        out.Bbar = Vec3{};
        out.kbar = 0.0;
        return out;
    }
    out.Bbar = cr / crn;
    out.Nbar = cross(out.Bbar, out.Tbar);
    out.kbar = dot(out.Nbar, out.nbar);
    return out;
}

/// The signed geodesic curvature <Nbar, nbar> of the projected curve.  The
/// sign convention is fixed by the conormal nbar = pbar x Tbar.
inline double geodesic_curvature(const SphericalSample& sample) {
    return sample.kbar;
}

/// Signed side of qbar relative to the tangent great circle at the sample:
/// positive in the hemisphere the conormal points into ("above").
inline double tangent_great_circle_side(const SphericalSample& sample_at_pbar, const Vec3& qbar) {
    return dot(qbar, sample_at_pbar.nbar);
}

/// kbar as a scalar function of the parameter; helper shared by the
/// inflection scan and the verifier.
inline double kbar_at(const CurveSpec& spec, const Center& center, double t,
                      const Tolerances& tol = {}) {
    return project_jet(evaluate_jet(spec, t), center, tol).kbar;
}

/// Osculating-plane identity residuals at parameter t (normally a refined
/// inflection parameter).
inline LemmaResiduals lemma_residuals_at(const CurveSpec& spec, const Center& center, double t,
                                         const Tolerances& tol = {}) {
    const Jet3 jet = evaluate_jet(spec, t);
    const FrenetSample f = frenet_at(jet, tol.kappa_min);
    const SphericalSample ss = project_jet(jet, center, tol);

    LemmaResiduals r;
    r.dist_o_to_osc_plane_bar = std::abs(dot(ss.pbar, ss.Bbar));
    double c = dot(f.B, ss.Bbar);
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    r.plane_coincidence_angle = std::acos(std::abs(c));
    r.binormal_angle = std::acos(c);
    // projected osculating plane through o + pbar with normal Bbar, in
    // ambient coordinates; distance of the curve point from it
    r.point_plane_distance = std::abs(dot((jet.x0 - center.o) - ss.pbar, ss.Bbar));
    r.eq_a_value = f.kappa * dot(f.N, jet.x0 - center.o);
    return r;
}

/// All certified sign changes of kbar over one period, refined by bisection,
/// genuine-flagged, and annotated with the osculating-plane residuals.
/// Tangential (uncertifiable) zeros are included with genuine = false.
/// Windows where kbar vanishes beyond degeneracy_window are reported and mark
/// the scan degenerate (the verifier reacts by perturbing the center).
inline InflectionScan find_inflections(const CurveSpec& spec, const Center& center, int n_samples,
                                       const Tolerances& tol = {}) {
    const int n = std::max(n_samples, 64);
    const double h = kTwoPi / double(n);
    std::vector<std::optional<double>> values(std::size_t(n));
    for (int i = 0; i < n; ++i)
        values[std::size_t(i)] = kbar_at(spec, center, h * double(i), tol);

    // degeneracy detection for the inflection scan uses degeneracy_tol (not
    // cert_floor) as the vanishing threshold
    Tolerances scan_tol = tol;
    scan_tol.cert_floor = std::max(tol.cert_floor, tol.degeneracy_tol);

    auto f = [&](double t) { return kbar_at(spec, center, t, tol); };
    const SignChangeScan scan = count_sign_changes(f, n, scan_tol, &values);

    InflectionScan out;
    out.degenerate = scan.degenerate;
    out.degenerate_windows = scan.degenerate_windows;
    for (const SignChange& c : scan.changes) {
        InflectionRecord rec;
        rec.t_star = c.t_star;
        rec.genuine = c.left_value * c.right_value < 0.0;
        rec.kbar_left = c.left_value;
        rec.kbar_right = c.right_value;
        rec.bracket_width = c.bracket_width;
        rec.lemma_residuals = lemma_residuals_at(spec, center, c.t_star, tol);
        out.records.push_back(rec);
    }
    for (const SignChange& c : scan.uncertified) {
        InflectionRecord rec;
        rec.t_star = c.t_star;
        rec.genuine = false;
        rec.kbar_left = c.left_value;
        rec.kbar_right = c.right_value;
        rec.bracket_width = c.bracket_width;
        rec.lemma_residuals = lemma_residuals_at(spec, center, c.t_star, tol);
        out.records.push_back(rec);
    }
    std::sort(out.records.begin(), out.records.end(),
              [](const InflectionRecord& a, const InflectionRecord& b) {
                  return a.t_star < b.t_star;
              });
    return out;
}

} // namespace torsign

#endif
