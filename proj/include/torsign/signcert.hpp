#ifndef TORSIGN_SIGNCERT_HPP
#define TORSIGN_SIGNCERT_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "torsign/config.hpp"
#include "torsign/curve.hpp"
#include "torsign/error.hpp"
#include "torsign/frenet.hpp"

namespace torsign {

/// One certified sign change of a periodic scalar function.  The zero is
/// bracketed to width < 1e-10; the certification points are the flanking
/// samples where |f| exceeds the certification floor.
struct SignChange {
    double t_star = 0.0;
    int left_sign = 0;
    int right_sign = 0;
    double bracket_width = 0.0;
    double left_value = 0.0;
    double right_value = 0.0;
    double t_left = 0.0;  // certification point left of the zero
    double t_right = 0.0; // certification point right of the zero
};

struct ParamWindow {
    double t_begin = 0.0;
    double t_end = 0.0;
    double width = 0.0;
};

struct SignChangeScan {
    std::vector<SignChange> changes;             // certified, ascending t_star
    std::vector<SignChange> uncertified;         // sub-floor events, excluded from the count
    std::vector<ParamWindow> degenerate_windows; // |f| <= floor over a window > degeneracy_window
    std::vector<ParamWindow> gaps;               // evaluation failed (e.g. curvature floor)
    bool degenerate = false;
};

namespace detail {

/// Bisection to bracket width < width_target; keeps a valid sign bracket
/// throughout.  fa is f(a) and has the opposite sign of f(b).
template <class F>
double bisect_zero(F&& f, double a, double b, double fa, double width_target, double& width_out) {
    for (int iter = 0; iter < 80 && (b - a) >= width_target; ++iter) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) {
            b = m;
            continue;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    width_out = b - a;
    return 0.5 * (a + b);
}

} // namespace detail

/// Certified sign-change scan over one period [0, 2*pi) from n uniform
/// samples.  Samples with |f| <= cert_floor are "vanishing": a sign change is
/// certified between the nearest flanking samples where |f| > cert_floor, so
/// tangential zeros never inflate the count.  Vanishing runs wider than
/// degeneracy_window are reported degenerate.  A change across the periodic
/// seam counts exactly once.
///
/// `values[i]`, when given, must be f at 2*pi*i/n with nullopt where f is
/// undefined (reported as gaps and never bridged by refinement).
inline SignChangeScan count_sign_changes(const std::function<double(double)>& f, int n_samples,
                                         const Tolerances& tol = {},
                                         const std::vector<std::optional<double>>* values = nullptr) {
    if (n_samples < 64) throw PreconditionError("count_sign_changes: n_samples must be >= 64");
    const int n = n_samples;
    const double h = kTwoPi / double(n);

    std::vector<std::optional<double>> v;
    if (values) {
        if (int(values->size()) != n)
            throw PreconditionError("count_sign_changes: values size mismatch");
        v = *values;
    } else {
        v.resize(std::size_t(n));
        for (int i = 0; i < n; ++i) v[std::size_t(i)] = f(h * double(i));
    }

    enum { kGap = 2 };
    auto klass = [&](int i) -> int {
        const auto& val = v[std::size_t(((i % n) + n) % n)];
        if (!val) return kGap;
        if (std::abs(*val) <= tol.cert_floor) return 0;
        return *val > 0.0 ? 1 : -1;
    };

    SignChangeScan scan;

    // cyclic run decomposition, anchored at a class change (or index 0 when uniform)
    int anchor = 0;
    for (int i = 1; i < n; ++i)
        if (klass(i) != klass(0)) {
            anchor = i;
            break;
        }

    struct Run {
        int cls;
        int first; // sample indices, first..last inclusive, modulo n
        int count;
    };
    std::vector<Run> runs;
    for (int off = 0; off < n;) {
        const int i = anchor + off;
        const int cls = klass(i);
        int len = 1;
        while (len < n - off && klass(i + len) == cls) ++len;
        runs.push_back({cls, ((i % n) + n) % n, len});
        off += len;
    }

    auto window_of = [&](const Run& r) {
        ParamWindow w;
        w.t_begin = h * double(r.first);
        w.t_end = std::fmod(h * double(r.first + r.count - 1), kTwoPi);
        w.width = h * double(r.count);
        return w;
    };

    bool any_sign = false;
    for (const Run& r : runs) {
        if (r.cls == kGap) scan.gaps.push_back(window_of(r));
        if (r.cls == 0 && h * double(r.count) > tol.degeneracy_window) {
            scan.degenerate = true;
            scan.degenerate_windows.push_back(window_of(r));
        }
        if (r.cls == 1 || r.cls == -1) any_sign = true;
    }
    if (!any_sign) {
        scan.degenerate = true;
        return scan;
    }

    // walk consecutive sign runs cyclically; the boundary samples of the sign
    // runs are the certification points
    std::vector<std::size_t> sign_runs;
    for (std::size_t k = 0; k < runs.size(); ++k)
        if (runs[k].cls == 1 || runs[k].cls == -1) sign_runs.push_back(k);

    const std::size_t m = sign_runs.size();
    for (std::size_t a = 0; a < m; ++a) {
        const Run& ra = runs[sign_runs[a]];
        const Run& rb = runs[sign_runs[(a + 1) % m]];
        if (m == 1 && runs.size() == 1) break; // single constant-sign run, nothing between

        const int ia = ra.first + ra.count - 1; // last sample of the left run
        const int ib = rb.first;                // first sample of the right run
        double ta = h * double(ia);
        double tb = h * double(ib);
        while (tb <= ta) tb += kTwoPi;
        const double fa = *v[std::size_t(((ia % n) + n) % n)];
        const double fb = *v[std::size_t(((ib % n) + n) % n)];
        const int sa = fa > 0.0 ? 1 : -1;
        const int sb = fb > 0.0 ? 1 : -1;

        bool gap_inside = false;
        for (int k = ia + 1; h * double(k) < tb - 0.5 * h; ++k)
            if (klass(k) == kGap) gap_inside = true;

        if (sa != sb) {
            SignChange c;
            c.left_sign = sa;
            c.right_sign = sb;
            c.left_value = fa;
            c.right_value = fb;
            c.t_left = std::fmod(ta, kTwoPi);
            c.t_right = std::fmod(tb, kTwoPi);
            if (gap_inside) {
                c.t_star = std::fmod(0.5 * (ta + tb), kTwoPi);
                c.bracket_width = tb - ta;
                scan.uncertified.push_back(c);
            } else {
                double width = 0.0;
                c.t_star = std::fmod(detail::bisect_zero(f, ta, tb, fa, 1e-10, width), kTwoPi);
                c.bracket_width = width;
                scan.changes.push_back(c);
            }
        } else if (ib != ia + 1 && !gap_inside) {
            // same flanking sign across a vanishing run: a sub-floor wiggle of
            // opposite sign is an event we saw but cannot certify
            double worst = 0.0;
            double t_worst = 0.0;
            for (int k = ia + 1; h * double(k) < tb - 0.5 * h; ++k) {
                const auto& val = v[std::size_t(((k % n) + n) % n)];
                if (val && (*val > 0.0) != (fa > 0.0) && std::abs(*val) > std::abs(worst)) {
                    worst = *val;
                    t_worst = std::fmod(h * double(k), kTwoPi);
                }
            }
            if (worst != 0.0) {
                SignChange c;
                c.t_star = t_worst;
                c.left_sign = sa;
                c.right_sign = -sa;
                c.left_value = fa;
                c.right_value = worst;
                c.t_left = std::fmod(ta, kTwoPi);
                c.t_right = std::fmod(tb, kTwoPi);
                c.bracket_width = tb - ta;
                scan.uncertified.push_back(c);
            }
        }
    }

    std::sort(scan.changes.begin(), scan.changes.end(),
              [](const SignChange& x, const SignChange& y) { return x.t_star < y.t_star; });
    std::sort(scan.uncertified.begin(), scan.uncertified.end(),
              [](const SignChange& x, const SignChange& y) { return x.t_star < y.t_star; });
    return scan;
}

/// Certified sign changes of the torsion over one period.  Parameters where
/// the curvature is below the floor are reported as gaps, never bridged.
inline SignChangeScan torsion_sign_changes(const CurveSpec& spec, int n_samples,
                                           const Tolerances& tol = {}) {
    const int n = std::max(n_samples, 64);
    const double h = kTwoPi / double(n);
    std::vector<std::optional<double>> values(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        try {
            values[std::size_t(i)] = frenet_at(evaluate_jet(spec, h * double(i)), tol.kappa_min).tau;
        } catch (const CurvatureDegeneracyError&) {
            values[std::size_t(i)] = std::nullopt;
        }
    }
    auto tau = [&spec, &tol](double t) {
        // refinement may step into a curvature gap; 0 keeps the bracket valid
        try {
            return frenet_at(evaluate_jet(spec, t), tol.kappa_min).tau;
        } catch (const CurvatureDegeneracyError&) {
            return 0.0;
        }
    };
    return count_sign_changes(tau, n, tol, &values);
}

} // namespace torsign

#endif
