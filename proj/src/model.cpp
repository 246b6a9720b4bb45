#include "sit/model.hpp"

#include <string>

namespace sit {

void Params::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw SemanticError(std::string("parameter ") + name + " must be strictly positive");
    };
    positive(phi, "phi");
    positive(gamma, "gamma");
    positive(mu_a1, "mu_a1");
    positive(mu_a2, "mu_a2");
    positive(mu_f, "mu_f");
    positive(mu_m, "mu_m");
    positive(mu_t, "mu_t");
    if (!(r > 0.0 && r < 1.0))
        throw SemanticError("sex ratio r must lie strictly between 0 and 1");
}

Params baseline_params(double gamma) {
    Params p{10.0, gamma, 0.05, 2e-4, 0.49, 0.1, 0.14, 0.14};
    p.validate();
    return p;
}

double basic_offspring_number(const Params& p) {
    return p.r * p.gamma * p.phi / (p.mu_f * (p.gamma + p.mu_a1));
}

std::optional<State> wild_equilibrium(const Params& p) {
    const double R = basic_offspring_number(p);
    if (R <= 1.0) return std::nullopt;
    State e;
    e.a = (p.gamma + p.mu_a1) * (R - 1.0) / p.mu_a2;
    e.m = (1.0 - p.r) * p.gamma * e.a / p.mu_m;
    e.f = p.r * p.gamma * e.a / p.mu_f;
    return e;
}

State wild_rhs(const Params& p, const State& x) {
    State d;
    d.a = p.phi * x.f - (p.gamma + p.mu_a1 + p.mu_a2 * x.a) * x.a;
    d.m = (1.0 - p.r) * p.gamma * x.a - p.mu_m * x.m;
    d.f = p.r * p.gamma * x.a - p.mu_f * x.f;
    return d;
}

State sit_rhs(const Params& p, const State& x, double mt) {
    State d = wild_rhs(p, x);
    const double denom = x.m + mt;
    const double frac = denom > 0.0 ? x.m / denom : 0.0;
    d.f = p.r * p.gamma * x.a * frac - p.mu_f * x.f;
    return d;
}

Mat3 jacobian(const Params& p, const State& x, std::optional<double> mt) {
    Mat3 j{};
    j[0][0] = -(p.gamma + p.mu_a1) - 2.0 * p.mu_a2 * x.a;
    j[0][1] = 0.0;
    j[0][2] = p.phi;
    j[1][0] = (1.0 - p.r) * p.gamma;
    j[1][1] = -p.mu_m;
    j[1][2] = 0.0;
    if (!mt) {
        j[2][0] = p.r * p.gamma;
        j[2][1] = 0.0;
    } else {
        const double denom = x.m + *mt;
        if (denom > 0.0) {
            j[2][0] = p.r * p.gamma * x.m / denom;
            j[2][1] = p.r * p.gamma * x.a * (*mt) / (denom * denom);
        } else {
            j[2][0] = 0.0;
            j[2][1] = 0.0;
        }
    }
    j[2][2] = -p.mu_f;
    return j;
}

State dominating_point(const Params& p, double m) {
    if (!(m > 0.0)) throw SemanticError("dominating_point requires m > 0");
    // Root of r*gamma - mu_f/(2 phi) (gamma + mu_a1 + mu_a2 A) = 0.
    double a = (2.0 * p.phi * p.r * p.gamma / p.mu_f - (p.gamma + p.mu_a1)) / p.mu_a2;
    if (!(a > 0.0)) a = m;
    auto admissible = [&](double am) {
        const bool strict =
            p.r * p.gamma - p.mu_f / (2.0 * p.phi) * (p.gamma + p.mu_a1 + p.mu_a2 * am) < 0.0;
        const double fm = (p.gamma + p.mu_a1 + p.mu_a2 * am) * am / (2.0 * p.phi);
        const double mm = 2.0 * (1.0 - p.r) * p.gamma * am / p.mu_m;
        return strict && am >= m && fm >= m && mm >= m;
    };
    while (!admissible(a)) a *= 2.0;
    State b;
    b.a = a;
    b.f = (p.gamma + p.mu_a1 + p.mu_a2 * a) * a / (2.0 * p.phi);
    b.m = 2.0 * (1.0 - p.r) * p.gamma * a / p.mu_m;
    return b;
}

}  // namespace sit
