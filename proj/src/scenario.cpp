#include "sit/scenario.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sit/equilibria.hpp"

namespace sit {

namespace {

struct Entry {
    std::string value;
    int line;
};
using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_number(const Entry& e, const std::string& key) {
    const std::string v = trim(e.value);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        throw ParseError("line " + std::to_string(e.line) + ": value of '" + key
                         + "' is not a number: '" + v + "'");
    return x;
}

const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"params", {"phi", "gamma", "mu_a1", "mu_a2", "r", "mu_f", "mu_m", "mu_t"}},
    {"release", {"mode", "k", "level", "lambda", "tau"}},
    {"target", {"mt_small", "epsilon"}},
    {"pretreatment", {"mc_percent", "adulticide_days", "mc_scope"}},
    {"run", {"horizon", "tol", "output", "post_window"}},
};

}  // namespace

Scenario parse_scenario(const std::string& text) {
    std::map<std::string, Section> sections;
    std::istringstream is(text);
    std::string line;
    std::string current;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("line " + std::to_string(lineno) + ": malformed section header");
            current = trim(line.substr(1, line.size() - 2));
            if (!kKnownKeys.count(current))
                throw ParseError("line " + std::to_string(lineno) + ": unknown section ["
                                 + current + "]");
            sections[current];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
        if (current.empty())
            throw ParseError("line " + std::to_string(lineno) + ": key outside any section");
        const std::string key = trim(line.substr(0, eq));
        if (!kKnownKeys.at(current).count(key))
            throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key
                             + "' in [" + current + "]");
        if (sections[current].count(key))
            throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        sections[current][key] = {trim(line.substr(eq + 1)), lineno};
    }

    auto get = [&](const std::string& sec, const std::string& key) -> const Entry* {
        auto si = sections.find(sec);
        if (si == sections.end()) return nullptr;
        auto ki = si->second.find(key);
        return ki == si->second.end() ? nullptr : &ki->second;
    };
    auto number_or = [&](const std::string& sec, const std::string& key, double dflt) {
        const Entry* e = get(sec, key);
        return e ? to_number(*e, key) : dflt;
    };

    Scenario sc;

    // [params]: baseline rates, gamma required.
    const Entry* gamma = get("params", "gamma");
    if (!gamma) throw ParseError("missing required key 'gamma' in [params]");
    Params p;
    p.gamma = to_number(*gamma, "gamma");
    p.phi = number_or("params", "phi", 10.0);
    p.mu_a1 = number_or("params", "mu_a1", 0.05);
    p.mu_a2 = number_or("params", "mu_a2", 2e-4);
    p.r = number_or("params", "r", 0.49);
    p.mu_f = number_or("params", "mu_f", 0.1);
    p.mu_m = number_or("params", "mu_m", 0.14);
    p.mu_t = number_or("params", "mu_t", 0.14);
    p.validate();
    sc.config.base = p;

    // [pretreatment]
    sc.config.mc_percent = number_or("pretreatment", "mc_percent", 0.0);
    if (sc.config.mc_percent >= 100.0 || sc.config.mc_percent < 0.0)
        throw SemanticError("mc_percent must lie in [0, 100)");
    sc.config.adulticide_days = number_or("pretreatment", "adulticide_days", 0.0);
    if (const Entry* scope = get("pretreatment", "mc_scope")) {
        const std::string v = trim(scope->value);
        if (v == "all")
            sc.config.mc_scope = McScope::AllPhases;
        else if (v == "pretreatment")
            sc.config.mc_scope = McScope::PretreatmentOnly;
        else
            throw ParseError("line " + std::to_string(scope->line)
                             + ": mc_scope must be 'all' or 'pretreatment'");
    }

    // [run]
    sc.config.horizon = number_or("run", "horizon", 2e6);
    sc.config.integrate.tol = number_or("run", "tol", 1e-8);
    sc.config.integrate.validate();
    sc.config.post_window = number_or("run", "post_window", 1000.0);
    if (const Entry* out = get("run", "output")) sc.output_path = trim(out->value);

    // [target]
    const Entry* mt_small = get("target", "mt_small");
    if (!mt_small) throw ParseError("missing required key 'mt_small' in [target]");
    sc.config.sustained_level = to_number(*mt_small, "mt_small");
    sc.config.epsilon = number_or("target", "epsilon", 0.1);

    // [release]: sizing against the SIT-phase thresholds.
    const Entry* mode = get("release", "mode");
    if (!mode) throw ParseError("missing required key 'mode' in [release]");
    const std::string mv = trim(mode->value);
    const double tau = number_or("release", "tau", 7.0);
    const Params sit_phase = sc.config.mc_scope == McScope::AllPhases
                                 ? mc_adjusted_params(p, sc.config.mc_percent)
                                 : p;
    const Entry* kent = get("release", "k");
    if (mv == "constant") {
        double level;
        if (const Entry* lv = get("release", "level")) {
            level = to_number(*lv, "level");
            if (kent) throw SemanticError("give either k or level, not both");
        } else if (kent) {
            sc.k = to_number(*kent, "k");
            level = sc.k * sit_thresholds(sit_phase).mt1;
        } else {
            throw ParseError("missing 'k' or 'level' in [release]");
        }
        sc.config.massive = ReleasePolicy::constant(level);
    } else if (mv == "impulsive") {
        double lambda;
        if (const Entry* lv = get("release", "lambda")) {
            lambda = to_number(*lv, "lambda");
            if (kent) throw SemanticError("give either k or lambda, not both");
        } else if (kent) {
            sc.k = to_number(*kent, "k");
            lambda = sc.k * periodic_threshold(sit_phase, tau) / tau;
        } else {
            throw ParseError("missing 'k' or 'lambda' in [release]");
        }
        sc.config.massive = ReleasePolicy::impulsive(lambda, tau);
    } else {
        throw ParseError("line " + std::to_string(mode->line)
                         + ": mode must be 'constant' or 'impulsive'");
    }

    sc.config.validate();
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open scenario file " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return parse_scenario(os.str());
}

}  // namespace sit
