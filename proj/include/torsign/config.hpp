#ifndef TORSIGN_CONFIG_HPP
#define TORSIGN_CONFIG_HPP

#include <cstdint>
#include <string>

#include "torsign/error.hpp"

namespace torsign {

/// Numerical floors and margins used across the pipeline.  All are strictly
/// positive; defaults are the committed values used by every shipped fixture.
struct Tolerances {
    double kappa_min = 1e-8;         // below this curvature the Frenet frame is rejected
    double cert_floor = 1e-9;        // |f| must exceed this at sign-change certification points
    double side_tol = 1e-9;          // slack for "lies on one side" half-space tests
    double o_margin = 1e-6;          // support plane must keep o at least this far on its side
    double degeneracy_tol = 1e-9;    // |kbar| below this counts as "vanishing"
    double degeneracy_window = 1e-3; // parameter width of a vanishing window that flags degeneracy
    double proximity_floor = 1e-4;   // radians; closer far-parameter projections fail star-shapedness
    double hull_margin = 1e-6;       // support function of the hull must exceed this in all directions
    double tu_margin = 1e-6;         // <p-o, N> must stay below -tu_margin
    double tangent_floor = 1e-10;    // sine of the angle between g and g' under which the tangent hits o
    double coincidence_floor = 1e-7; // relative: segment-in-plane detection for the max principles
    double planarity_rel = 1e-7;     // relative thickness under which the sampled curve is planar

    void validate() const {
        const double all[] = {kappa_min, cert_floor, side_tol, o_margin, degeneracy_tol,
                              degeneracy_window, proximity_floor, hull_margin, tu_margin,
                              tangent_floor, coincidence_floor, planarity_rel};
        for (double v : all)
            if (!(v > 0.0)) throw ConfigError("tolerances must all be > 0");
    }
};

struct PerturbationConfig {
    double radius = 0.05;
    int max_attempts = 32;
    std::uint64_t seed = 1;
};

struct OutputConfig {
    std::string report_path;  // empty: stdout
    std::string trace_path;   // empty: no trace
    std::string format = "json";
};

struct RunConfig {
    int n_samples = 4096;
    Tolerances tol;
    PerturbationConfig perturbation;
    OutputConfig output;

    // search-grid knobs for the hypothesis checks
    int theta_grid = 256;
    int n_directions = 512;
    int window_samples = 65;

    void validate() const {
        if (n_samples < 16) throw ConfigError("n_samples must be >= 16");
        if (theta_grid < 8 || n_directions < 8 || window_samples < 5)
            throw ConfigError("grid sizes too small");
        if (!(perturbation.radius > 0.0) || perturbation.max_attempts < 1)
            throw ConfigError("invalid perturbation config");
        tol.validate();
    }
};

} // namespace torsign

#endif
