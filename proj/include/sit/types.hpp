#ifndef SIT_TYPES_HPP
#define SIT_TYPES_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sit {

// Error categories. Parse errors come from scenario text, semantic errors from
// values that fail validation, numeric errors from the integrator.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};
struct SemanticError : std::runtime_error {
    explicit SemanticError(const std::string& msg) : std::runtime_error(msg) {}
};
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Entomological and release-decay rates. Units: per day, except phi
// (eggs per deposit per day), mu_a2 (per day per individual) and r
// (dimensionless sex ratio).
struct Params {
    double phi;    // eggs per deposit per capita
    double gamma;  // aquatic -> adult maturation rate
    double mu_a1;  // density-independent aquatic mortality
    double mu_a2;  // density-dependent aquatic mortality
    double r;      // sex ratio (fraction of emerging adults that are female)
    double mu_f;   // female mortality
    double mu_m;   // male mortality
    double mu_t;   // sterile-male mortality

    void validate() const;
};

// Baseline field parameterization used throughout the reference tables.
// gamma must still be chosen by the caller.
Params baseline_params(double gamma);

// Population point: aquatic stage, males, fertilized females.
struct State {
    double a = 0.0;
    double m = 0.0;
    double f = 0.0;

    std::array<double, 3> to_array() const { return {a, m, f}; }
    static State from_array(const std::array<double, 3>& v) { return {v[0], v[1], v[2]}; }
};

// State extended with the sterile-male stock (impulsive-release system).
struct ExtendedState {
    State state;
    double mt = 0.0;

    std::array<double, 4> to_array() const { return {state.a, state.m, state.f, mt}; }
    static ExtendedState from_array(const std::array<double, 4>& v) {
        return {{v[0], v[1], v[2]}, v[3]};
    }
};

inline State operator+(State x, const State& y) { return {x.a + y.a, x.m + y.m, x.f + y.f}; }
inline State operator-(State x, const State& y) { return {x.a - y.a, x.m - y.m, x.f - y.f}; }
inline State operator*(double c, const State& x) { return {c * x.a, c * x.m, c * x.f}; }

inline bool all_less(const State& x, const State& y) {
    return x.a < y.a && x.m < y.m && x.f < y.f;
}
inline bool all_leq(const State& x, const State& y) {
    return x.a <= y.a && x.m <= y.m && x.f <= y.f;
}
inline double max_abs(const State& x) {
    return std::max(std::abs(x.a), std::max(std::abs(x.m), std::abs(x.f)));
}

using Mat3 = std::array<std::array<double, 3>, 3>;

inline double det3(const Mat3& j) {
    return j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1])
         - j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0])
         + j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
}

}  // namespace sit

#endif
