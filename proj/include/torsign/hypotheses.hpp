#ifndef TORSIGN_HYPOTHESES_HPP
#define TORSIGN_HYPOTHESES_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "torsign/config.hpp"
#include "torsign/curve.hpp"
#include "torsign/error.hpp"
#include "torsign/frenet.hpp"
#include "torsign/vec3.hpp"

namespace torsign {

/// A local support plane at gamma(t): plane through the point with inward
/// unit normal u in span{N, B}, <u, N> >= 0, containing the tangent line.
/// Valid when o lies strictly on the inner side and a curve neighborhood
/// does not cross to the outer side beyond side_tol.
struct SupportPlaneWitness {
    double t = 0.0;
    Vec3 u;
    double o_side_margin = 0.0;    // <o - p, u>
    double neighborhood_min = 0.0; // min over the window of <gamma(s) - p, u>
};

struct LocalConvexityResult {
    bool ok = false;
    bool tangent_through_center = false;
    SupportPlaneWitness witness; // best candidate even on failure
};

struct StarShapedResult {
    Verdict verdict = Verdict::fail;
    double margin = 0.0; // min angular distance between far-parameter projections
    double t_i = 0.0, t_j = 0.0; // the closest far pair
};

struct HullInteriorResult {
    Verdict verdict = Verdict::fail;
    double margin = 0.0; // min over directions of the support value
    Vec3 worst_direction;
};

struct TuConditionResult {
    Verdict verdict = Verdict::fail;
    double max_inner = 0.0; // max over samples of <p - o, N(p)>
    double t_worst = 0.0;
};

struct LocalConvexitySummary {
    Verdict verdict = Verdict::fail;
    std::optional<double> first_failure_t;
    SupportPlaneWitness worst_witness; // smallest neighborhood_min among passing samples
    int samples_checked = 0;
};

struct HypothesisReport {
    StarShapedResult star_shaped;
    LocalConvexitySummary locally_convex;
    HullInteriorResult hull_interior;
    TuConditionResult tu_condition;

    bool all_pass() const {
        return star_shaped.verdict == Verdict::pass &&
               locally_convex.verdict == Verdict::pass &&
               hull_interior.verdict == Verdict::pass;
    }
    bool any_fail() const {
        return star_shaped.verdict == Verdict::fail ||
               locally_convex.verdict == Verdict::fail ||
               hull_interior.verdict == Verdict::fail;
    }
};

/// Deterministic low-discrepancy unit directions (spherical Fibonacci).
inline std::vector<Vec3> fibonacci_directions(int n) {
    std::vector<Vec3> dirs;
    dirs.reserve(std::size_t(n));
    const double golden = kTwoPi * (1.0 - 1.0 / 1.6180339887498948482);
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (double(i) + 0.5) / double(n);
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * double(i);
        dirs.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
    }
    return dirs;
}

/// Star-shapedness about o: every ray from o meets the curve at most once,
/// i.e. the radial projection is injective.  Tested by requiring that samples
/// more than 4*pi/n apart in parameter stay at least proximity_floor apart in
/// angle after projection.
inline StarShapedResult check_star_shaped(const CurveSpec& spec, const Center& center,
                                          int n_samples, const Tolerances& tol = {}) {
    const int n = std::max(n_samples, 16);
    const double h = kTwoPi / double(n);
    const double scale = curve_scale(spec);
    std::vector<Vec3> pbar(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        const Vec3 p = evaluate_jet(spec, h * double(i)).x0 - center.o;
        const double d = norm(p);
        if (d <= 1e-12 * scale)
            throw HypothesisViolationError(h * double(i),
                                           "check_star_shaped: center lies on the curve");
        pbar[std::size_t(i)] = p / d;
    }

    // parameter separation > 4*pi/n means cyclic index distance >= 3
    StarShapedResult res;
    double max_dot = -2.0;
    int wi = 0, wj = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 3; j < n; ++j) {
            if (j - i >= n - 2) continue; // cyclically adjacent across the seam
            const double d = dot(pbar[std::size_t(i)], pbar[std::size_t(j)]);
            if (d > max_dot) {
                max_dot = d;
                wi = i;
                wj = j;
            }
        }
    }
    if (max_dot > 1.0) max_dot = 1.0;
    res.margin = std::acos(max_dot);
    res.t_i = h * double(wi);
    res.t_j = h * double(wj);
    res.verdict = res.margin > tol.proximity_floor ? Verdict::pass : Verdict::fail;
    return res;
}

/// Local convexity at one parameter: search the pencil of planes through the
/// tangent line, u(theta) = cos(theta) N + sin(theta) B, for one that keeps o
/// strictly inside and the nearby curve on o's side.  theta is polished by
/// golden section around the best grid candidate.
inline LocalConvexityResult check_local_convexity(const CurveSpec& spec, const Center& center,
                                                  double t, const Tolerances& tol = {},
                                                  int theta_grid = 256, int window_samples = 65) {
    const Jet3 jet = evaluate_jet(spec, t);
    const FrenetSample f = frenet_at(jet, tol.kappa_min);
    const Vec3 to_center = center.o - jet.x0;

    LocalConvexityResult res;
    res.witness.t = t;

    // a plane through the tangent line cannot avoid o if the tangent line hits o
    const double dist_to_center = norm(to_center);
    if (norm(cross(to_center, f.T)) <= tol.tangent_floor * dist_to_center) {
        res.tangent_through_center = true;
        return res;
    }

    const double speed = norm(jet.x1);
    const double delta = std::min(0.2 / (f.kappa * speed), 0.39269908169872414); // pi/8
    const int w = std::max(window_samples, 5);
    std::vector<Vec3> window(std::size_t(w));
    for (int j = 0; j < w; ++j) {
        const double s = t + delta * (2.0 * double(j) / double(w - 1) - 1.0);
        window[std::size_t(j)] = evaluate_jet(spec, s).x0 - jet.x0;
    }

    auto evaluate_theta = [&](double theta, SupportPlaneWitness& wit) {
        const Vec3 u = f.N * std::cos(theta) + f.B * std::sin(theta);
        wit.t = t;
        wit.u = u;
        wit.o_side_margin = dot(to_center, u);
        double nm = 1e300;
        for (const Vec3& d : window) nm = std::min(nm, dot(d, u));
        wit.neighborhood_min = nm;
        // objective: maximize the neighborhood margin among planes keeping o inside
        return wit.o_side_margin >= tol.o_margin ? nm : -1e300;
    };

    const double theta_margin = 0.09817477042468103; // pi/32
    const double lo = -1.5707963267948966 + theta_margin;
    const double hi = 1.5707963267948966 - theta_margin;
    const int g = std::max(theta_grid, 8);
    double best_obj = -1e301;
    double best_theta = 0.0;
    SupportPlaneWitness wit;
    for (int k = 0; k < g; ++k) {
        const double theta = lo + (hi - lo) * double(k) / double(g - 1);
        const double obj = evaluate_theta(theta, wit);
        if (obj > best_obj) {
            best_obj = obj;
            best_theta = theta;
            res.witness = wit;
        }
    }

    if (best_obj > -1e300) {
        // golden-section polish within one grid cell on each side
        const double cell = (hi - lo) / double(g - 1);
        double a = std::max(lo, best_theta - cell), b = std::min(hi, best_theta + cell);
        const double gr = 0.6180339887498949;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        SupportPlaneWitness w1, w2;
        double f1 = evaluate_theta(x1, w1), f2 = evaluate_theta(x2, w2);
        for (int it = 0; it < 48; ++it) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                w1 = w2;
                x2 = a + gr * (b - a);
                f2 = evaluate_theta(x2, w2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                w2 = w1;
                x1 = b - gr * (b - a);
                f1 = evaluate_theta(x1, w1);
            }
        }
        const SupportPlaneWitness& wbest = f1 > f2 ? w1 : w2;
        const double fbest = std::max(f1, f2);
        if (fbest > best_obj) {
            best_obj = fbest;
            res.witness = wbest;
        }
    }

    res.ok = res.witness.o_side_margin >= tol.o_margin &&
             res.witness.neighborhood_min >= -tol.side_tol && best_obj > -1e300;
    return res;
}

/// o in the interior of the convex hull, tested by support-function probing
/// over a deterministic direction set.  A curve that is planar within
/// tolerance has a hull with empty interior: degenerate.
inline HullInteriorResult check_hull_interior(const CurveSpec& spec, const Center& center,
                                              int n_samples, int n_directions,
                                              const Tolerances& tol = {}) {
    const int n = std::max(n_samples, 16);
    const double h = kTwoPi / double(n);
    std::vector<Vec3> pts(std::size_t(n));
    Vec3 centroid;
    for (int i = 0; i < n; ++i) {
        pts[std::size_t(i)] = evaluate_jet(spec, h * double(i)).x0;
        centroid += pts[std::size_t(i)];
    }
    centroid = centroid / double(n);

    // planarity via the covariance spectrum
    double a00 = 0, a01 = 0, a02 = 0, a11 = 0, a12 = 0, a22 = 0;
    for (const Vec3& p : pts) {
        const Vec3 d = p - centroid;
        a00 += d.x * d.x;
        a01 += d.x * d.y;
        a02 += d.x * d.z;
        a11 += d.y * d.y;
        a12 += d.y * d.z;
        a22 += d.z * d.z;
    }
    const auto ev = symmetric_eigenvalues(a00, a01, a02, a11, a12, a22);

    HullInteriorResult res;
    if (ev[2] <= 0.0 || std::sqrt(std::max(0.0, ev[0]) / ev[2]) <= tol.planarity_rel) {
        res.verdict = Verdict::degenerate;
        res.margin = 0.0;
        return res;
    }

    double margin = 1e300;
    for (const Vec3& u : fibonacci_directions(std::max(n_directions, 8))) {
        double support = -1e300;
        for (const Vec3& p : pts) support = std::max(support, dot(p - center.o, u));
        if (support < margin) {
            margin = support;
            res.worst_direction = u;
        }
    }
    res.margin = margin;
    res.verdict = margin >= tol.hull_margin ? Verdict::pass : Verdict::fail;
    return res;
}

/// Pointwise inner product of the Thorbergsson-Umehara condition.
inline double tu_value_at(const CurveSpec& spec, const Center& center, double t,
                          const Tolerances& tol = {}) {
    const Jet3 jet = evaluate_jet(spec, t);
    const FrenetSample f = frenet_at(jet, tol.kappa_min);
    return dot(jet.x0 - center.o, f.N);
}

/// <p - o, N(p)> < -tu_margin at every sample.
inline TuConditionResult check_tu_condition(const CurveSpec& spec, const Center& center,
                                            int n_samples, const Tolerances& tol = {}) {
    const int n = std::max(n_samples, 16);
    const double h = kTwoPi / double(n);
    TuConditionResult res;
    res.max_inner = -1e300;
    for (int i = 0; i < n; ++i) {
        const double t = h * double(i);
        const double v = tu_value_at(spec, center, t, tol);
        if (v > res.max_inner) {
            res.max_inner = v;
            res.t_worst = t;
        }
    }
    res.verdict = res.max_inner < -tol.tu_margin ? Verdict::pass : Verdict::fail;
    return res;
}

/// All hypothesis checks bundled, with curvature degeneracy surfacing as a
/// degenerate verdict rather than an abort.
inline HypothesisReport check_hypotheses(const CurveSpec& spec, const Center& center,
                                         const RunConfig& config = {}) {
    HypothesisReport hr;
    hr.star_shaped = check_star_shaped(spec, center, config.n_samples, config.tol);

    const int n = config.n_samples;
    const double h = kTwoPi / double(n);
    hr.locally_convex.verdict = Verdict::pass;
    hr.locally_convex.worst_witness.neighborhood_min = 1e300;
    hr.locally_convex.samples_checked = n;
    try {
        for (int i = 0; i < n; ++i) {
            const double t = h * double(i);
            const LocalConvexityResult r = check_local_convexity(
                spec, center, t, config.tol, config.theta_grid, config.window_samples);
            if (!r.ok) {
                hr.locally_convex.verdict = Verdict::fail;
                hr.locally_convex.first_failure_t = t;
                hr.locally_convex.worst_witness = r.witness;
                break;
            }
            if (r.witness.neighborhood_min < hr.locally_convex.worst_witness.neighborhood_min)
                hr.locally_convex.worst_witness = r.witness;
        }
    } catch (const CurvatureDegeneracyError& e) {
        hr.locally_convex.verdict = Verdict::degenerate;
        hr.locally_convex.first_failure_t = e.t;
    }

    hr.hull_interior =
        check_hull_interior(spec, center, config.n_samples, config.n_directions, config.tol);

    try {
        hr.tu_condition = check_tu_condition(spec, center, config.n_samples, config.tol);
    } catch (const CurvatureDegeneracyError&) {
        hr.tu_condition.verdict = Verdict::degenerate;
    }
    return hr;
}

} // namespace torsign

#endif
