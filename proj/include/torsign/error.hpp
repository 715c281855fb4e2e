#ifndef TORSIGN_ERROR_HPP
#define TORSIGN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace torsign {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid curve specification or run configuration (K = 0, r >= R, bad tolerance, ...).
struct ConfigError : Error {
    using Error::Error;
};

/// First derivative vanished at a sampled parameter: the curve is not regular there.
struct DegenerateCurveError : Error {
    double t;
    explicit DegenerateCurveError(double t_, const std::string& msg) : Error(msg), t(t_) {}
};

/// Curvature fell below the configured floor; the Frenet frame is meaningless there.
struct CurvatureDegeneracyError : Error {
    double t;
    double kappa;
    CurvatureDegeneracyError(double t_, double kappa_, const std::string& msg)
        : Error(msg), t(t_), kappa(kappa_) {}
};

/// A hypothesis prerequisite failed hard (tangent line through the center,
/// center on the curve): downstream spherical quantities are undefined.
struct HypothesisViolationError : Error {
    double t;
    explicit HypothesisViolationError(double t_, const std::string& msg) : Error(msg), t(t_) {}
};

/// An operation was invoked outside its stated precondition.
struct PreconditionError : Error {
    using Error::Error;
};

enum class Verdict { pass, fail, degenerate };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "degenerate";
    }
}

} // namespace torsign

#endif
