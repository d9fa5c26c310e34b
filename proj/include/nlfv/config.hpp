#pragma once

// JSON run configuration: strict parsing (unknown keys are rejected, every
// error names the offending key), cross-field validation, and lossless
// serialization back to JSON.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "errors.hpp"
#include "experiments.hpp"
#include "kernel.hpp"
#include "mesh.hpp"
#include "model.hpp"
#include "rational.hpp"

namespace nlfv {

struct RunConfig {
    std::string experiment = "example1";  // example1 | example2 | custom
    std::vector<CaseId> cases = {CaseId::I, CaseId::II};
    std::string scale = "desk";  // desk | full
    std::string output_dir = "out";
    CflMode cfl_mode = CflMode::Basic;
    double cfl_safety = 0.9;
    bool entropy_sweep = false;
    bool figure_set = false;
    int jobs = 1;
    // Model (speed factors are set by the case for the canned studies and
    // may be overridden explicitly for custom runs).
    std::optional<double> k_left;
    std::optional<double> k_right;
    Profile psi = profile_one_minus_rho();
    Profile g = profile_one_minus_rho();
    double rho_max = 1.0;
    // Kernel.
    KernelKind kernel_kind = KernelKind::LinearDecreasing;
    std::optional<double> eta;
    std::vector<double> kernel_coefficients;
    // Grid and horizon.
    DomainExtent extent;
    std::optional<Rational> dx;
    std::optional<std::vector<Rational>> resolutions;
    std::optional<Rational> reference_dx;
    std::optional<Rational> snapshot_dx;
    std::optional<std::vector<double>> etas;
    std::optional<double> t_final;
    // Custom initial condition.
    std::optional<PiecewiseConstant> initial;
};

namespace cfgdetail {

using json = nlohmann::ordered_json;

inline std::string joined(const std::string& scope, const std::string& key) {
    return scope.empty() ? key : scope + "." + key;
}

inline void require_keys(const json& obj, const std::string& scope,
                         std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw config_error("unknown key \"" +
                               joined(scope, it.key()) + "\"");
        }
    }
}

inline const json* find(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

inline double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) {
        throw config_error(path + ": expected a number");
    }
    return j.get<double>();
}

inline bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) {
        throw config_error(path + ": expected true or false");
    }
    return j.get<bool>();
}

inline long long as_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
        throw config_error(path + ": expected an integer");
    }
    return j.get<long long>();
}

inline std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) {
        throw config_error(path + ": expected a string");
    }
    return j.get<std::string>();
}

inline Rational as_rational(const json& j, const std::string& path) {
    std::optional<Rational> r;
    if (j.is_string()) {
        r = Rational::parse(j.get<std::string>());
    } else if (j.is_number()) {
        r = Rational::from_double(j.get<double>());
    } else {
        throw config_error(path +
                           ": expected a rational like \"1/320\" or a number");
    }
    if (!r) {
        throw config_error(path + ": '" + j.dump() +
                           "' is not a usable rational cell width");
    }
    if (!r->positive()) {
        throw config_error(path + ": must be positive");
    }
    return *r;
}

inline Profile as_profile(const json& j, const std::string& path,
                          double rho_max) {
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        if (name == "1-rho") return profile_one_minus_rho(rho_max);
        throw config_error(path + ": unknown profile name \"" + name +
                           "\" (use \"1-rho\" or a coefficient array)");
    }
    if (j.is_array()) {
        std::vector<double> coeffs;
        for (std::size_t i = 0; i < j.size(); ++i) {
            coeffs.push_back(
                as_number(j[i], path + "[" + std::to_string(i) + "]"));
        }
        if (coeffs.empty()) {
            throw config_error(path + ": coefficient array is empty");
        }
        return profile_poly(coeffs);
    }
    throw config_error(path +
                       ": expected \"1-rho\" or an array of coefficients");
}

}  // namespace cfgdetail

// Effective options for study 1, after applying the scale preset and any
// explicit overrides from the configuration.
inline Example1Options example1_options_from(const RunConfig& c) {
    Example1Options o = c.scale == "full" ? example1_full_options()
                                          : example1_reduced_options();
    o.scale = c.scale;
    if (c.resolutions) o.resolutions = *c.resolutions;
    if (c.dx) o.resolutions = {*c.dx};
    if (c.reference_dx) o.reference_dx = *c.reference_dx;
    if (c.snapshot_dx) o.snapshot_dx = *c.snapshot_dx;
    if (c.eta) o.eta = *c.eta;
    if (c.t_final) o.t_final = *c.t_final;
    o.extent = c.extent;
    o.psi = c.psi;
    o.g = c.g;
    o.rho_max = c.rho_max;
    o.cfl_mode = c.cfl_mode;
    o.cfl_safety = c.cfl_safety;
    o.entropy_sweep = c.entropy_sweep;
    return o;
}

// Effective options for study 2.
inline Example2Options example2_options_from(const RunConfig& c) {
    Example2Options o = c.scale == "full" ? example2_full_options()
                                          : example2_reduced_options();
    o.scale = c.scale;
    if (c.dx) o.dx = *c.dx;
    if (c.etas) o.etas = *c.etas;
    if (c.eta) o.etas = {*c.eta};
    if (c.t_final) o.t_final = *c.t_final;
    o.extent = c.extent;
    o.psi = c.psi;
    o.g = c.g;
    o.rho_max = c.rho_max;
    o.cfl_mode = c.cfl_mode;
    o.cfl_safety = c.cfl_safety;
    return o;
}

// Cross-field validation shared by file parsing and flag handling. Throws
// config_error naming the offending keys.
inline void validate_config(const RunConfig& c) {
    if (c.experiment != "example1" && c.experiment != "example2" &&
        c.experiment != "custom") {
        throw config_error(
            "experiment: must be \"example1\", \"example2\", or \"custom\", "
            "got \"" +
            c.experiment + "\"");
    }
    if (c.scale != "desk" && c.scale != "full") {
        throw config_error("scale: must be \"desk\" or \"full\", got \"" +
                           c.scale + "\"");
    }
    if (!(c.cfl_safety > 0.0) || c.cfl_safety > 1.0) {
        throw config_error("cfl.safety: must lie in (0, 1]");
    }
    if (c.jobs < 1) {
        throw config_error("jobs: must be at least 1");
    }
    if (c.output_dir.empty()) {
        throw config_error("output_dir: must not be empty");
    }
    if (c.cases.empty()) {
        throw config_error("case: no case selected");
    }
    // The model profiles must define an admissible model; the speed factors
    // only need positivity, which build_model checks too.
    try {
        build_model(c.k_left.value_or(1.0), c.k_right.value_or(1.0), c.psi,
                    c.g, c.rho_max);
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("model: ") + e.what());
    }

    const double eta_eff = c.eta.value_or(0.4);
    if (!(eta_eff > 0.0)) {
        throw config_error("kernel.eta: must be positive");
    }
    auto check_divisible = [](double eta, const Rational& dx,
                              const std::string& dx_key,
                              KernelKind kind,
                              const std::vector<double>& coeffs) {
        try {
            discretize_kernel(KernelSpec{kind, eta, coeffs}, dx.value());
        } catch (const divisibility_error& e) {
            throw config_error("kernel.eta vs " + dx_key + ": " + e.what());
        } catch (const std::exception& e) {
            throw config_error(std::string("kernel: ") + e.what());
        }
    };

    if (c.experiment == "example1") {
        if (c.kernel_kind != KernelKind::LinearDecreasing) {
            throw config_error(
                "kernel.kind: the canned studies use the linear kernel; use "
                "experiment \"custom\" for other kernels");
        }
        const Example1Options o = example1_options_from(c);
        if (o.resolutions.empty()) {
            throw config_error("resolutions: must not be empty");
        }
        for (const Rational& dx : o.resolutions) {
            check_divisible(o.eta, dx, "resolutions (" + dx.str() + ")",
                            KernelKind::LinearDecreasing, {});
            const Rational ratio = Rational::quotient(dx, o.reference_dx);
            if (!ratio.is_integer() || ratio.num < 1) {
                throw config_error(
                    "reference_dx: " + o.reference_dx.str() +
                    " does not evenly refine resolution " + dx.str());
            }
        }
        check_divisible(o.eta, o.reference_dx, "reference_dx",
                        KernelKind::LinearDecreasing, {});
        if (o.snapshots) {
            check_divisible(o.eta, o.snapshot_dx, "snapshot_dx",
                            KernelKind::LinearDecreasing, {});
        }
        if (!(o.t_final >= 0.0)) {
            throw config_error("time.t_final: must be non-negative");
        }
    } else if (c.experiment == "example2") {
        if (c.kernel_kind != KernelKind::LinearDecreasing) {
            throw config_error(
                "kernel.kind: the canned studies use the linear kernel; use "
                "experiment \"custom\" for other kernels");
        }
        const Example2Options o = example2_options_from(c);
        if (o.etas.empty()) {
            throw config_error("etas: must not be empty");
        }
        for (double eta : o.etas) {
            if (!(eta > 0.0)) {
                throw config_error("etas: entries must be positive");
            }
            check_divisible(eta, o.dx, "mesh.dx",
                            KernelKind::LinearDecreasing, {});
        }
        if (!(o.t_final >= 0.0)) {
            throw config_error("time.t_final: must be non-negative");
        }
    } else {  // custom
        if (!c.dx) {
            throw config_error("mesh.dx: required for a custom experiment");
        }
        if (!c.t_final) {
            throw config_error(
                "time.t_final: required for a custom experiment");
        }
        if (*c.t_final < 0.0) {
            throw config_error("time.t_final: must be non-negative");
        }
        check_divisible(eta_eff, *c.dx, "mesh.dx", c.kernel_kind,
                        c.kernel_coefficients);
        if (c.initial) {
            try {
                c.initial->validate();
            } catch (const std::invalid_argument& e) {
                throw config_error(std::string("initial: ") + e.what());
            }
            for (double v : c.initial->values) {
                if (v < 0.0 || v > c.rho_max) {
                    throw config_error(
                        "initial.values: entries must lie in [0, rho_max]");
                }
            }
        }
    }
}

// Parses a configuration from JSON text. origin is used in error messages
// (usually the file name). Unknown keys anywhere are rejected.
inline RunConfig parse_config_text(const std::string& text,
                                   const std::string& origin = "<config>") {
    using cfgdetail::json;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // The library message already carries line/column information.
        throw config_error(origin + ": " + e.what());
    }
    if (!root.is_object()) {
        throw config_error(origin + ": top level must be an object");
    }

    RunConfig c;
    cfgdetail::require_keys(
        root, "",
        {"experiment", "case", "scale", "output_dir", "cfl", "model",
         "kernel", "mesh", "time", "resolutions", "reference_dx",
         "snapshot_dx", "etas", "entropy_sweep", "figure_set", "jobs",
         "initial"});

    if (const auto* j = cfgdetail::find(root, "experiment")) {
        c.experiment = cfgdetail::as_string(*j, "experiment");
    }
    if (const auto* j = cfgdetail::find(root, "case")) {
        const std::string v = cfgdetail::as_string(*j, "case");
        if (v == "I") {
            c.cases = {CaseId::I};
        } else if (v == "II") {
            c.cases = {CaseId::II};
        } else if (v == "both") {
            c.cases = {CaseId::I, CaseId::II};
        } else {
            throw config_error("case: must be \"I\", \"II\", or \"both\"");
        }
    }
    if (const auto* j = cfgdetail::find(root, "scale")) {
        c.scale = cfgdetail::as_string(*j, "scale");
    }
    if (const auto* j = cfgdetail::find(root, "output_dir")) {
        c.output_dir = cfgdetail::as_string(*j, "output_dir");
    }
    if (const auto* j = cfgdetail::find(root, "cfl")) {
        if (!j->is_object()) throw config_error("cfl: expected an object");
        cfgdetail::require_keys(*j, "cfl", {"mode", "safety"});
        if (const auto* m = cfgdetail::find(*j, "mode")) {
            const std::string v = cfgdetail::as_string(*m, "cfl.mode");
            if (v == "basic") {
                c.cfl_mode = CflMode::Basic;
            } else if (v == "bv-strict") {
                c.cfl_mode = CflMode::BvStrict;
            } else {
                throw config_error(
                    "cfl.mode: must be \"basic\" or \"bv-strict\"");
            }
        }
        if (const auto* s = cfgdetail::find(*j, "safety")) {
            c.cfl_safety = cfgdetail::as_number(*s, "cfl.safety");
        }
    }
    if (const auto* j = cfgdetail::find(root, "model")) {
        if (!j->is_object()) throw config_error("model: expected an object");
        cfgdetail::require_keys(*j, "model",
                                {"k_l", "k_r", "psi", "g", "rho_max"});
        if (const auto* r = cfgdetail::find(*j, "rho_max")) {
            c.rho_max = cfgdetail::as_number(*r, "model.rho_max");
            if (!(c.rho_max > 0.0)) {
                throw config_error("model.rho_max: must be positive");
            }
            // Re-derive the default profiles for the new density scale.
            c.psi = profile_one_minus_rho(c.rho_max);
            c.g = profile_one_minus_rho(c.rho_max);
        }
        if (const auto* k = cfgdetail::find(*j, "k_l")) {
            c.k_left = cfgdetail::as_number(*k, "model.k_l");
            if (!(*c.k_left > 0.0)) {
                throw config_error("model.k_l: must be positive");
            }
        }
        if (const auto* k = cfgdetail::find(*j, "k_r")) {
            c.k_right = cfgdetail::as_number(*k, "model.k_r");
            if (!(*c.k_right > 0.0)) {
                throw config_error("model.k_r: must be positive");
            }
        }
        if (const auto* p = cfgdetail::find(*j, "psi")) {
            c.psi = cfgdetail::as_profile(*p, "model.psi", c.rho_max);
        }
        if (const auto* p = cfgdetail::find(*j, "g")) {
            c.g = cfgdetail::as_profile(*p, "model.g", c.rho_max);
        }
    }
    if (const auto* j = cfgdetail::find(root, "kernel")) {
        if (!j->is_object()) throw config_error("kernel: expected an object");
        cfgdetail::require_keys(*j, "kernel", {"kind", "eta", "coefficients"});
        if (const auto* k = cfgdetail::find(*j, "kind")) {
            const std::string v = cfgdetail::as_string(*k, "kernel.kind");
            if (v == "linear") {
                c.kernel_kind = KernelKind::LinearDecreasing;
            } else if (v == "constant") {
                c.kernel_kind = KernelKind::Constant;
            } else if (v == "poly") {
                c.kernel_kind = KernelKind::Polynomial;
            } else {
                throw config_error(
                    "kernel.kind: must be \"linear\", \"constant\", or "
                    "\"poly\"");
            }
        }
        if (const auto* e = cfgdetail::find(*j, "eta")) {
            c.eta = cfgdetail::as_number(*e, "kernel.eta");
            if (!(*c.eta > 0.0)) {
                throw config_error("kernel.eta: must be positive");
            }
        }
        if (const auto* co = cfgdetail::find(*j, "coefficients")) {
            if (!co->is_array()) {
                throw config_error(
                    "kernel.coefficients: expected an array of numbers");
            }
            for (std::size_t i = 0; i < co->size(); ++i) {
                c.kernel_coefficients.push_back(cfgdetail::as_number(
                    (*co)[i],
                    "kernel.coefficients[" + std::to_string(i) + "]"));
            }
        }
        if (c.kernel_kind == KernelKind::Polynomial &&
            c.kernel_coefficients.empty()) {
            throw config_error(
                "kernel.coefficients: required for kind \"poly\"");
        }
    }
    if (const auto* j = cfgdetail::find(root, "mesh")) {
        if (!j->is_object()) throw config_error("mesh: expected an object");
        cfgdetail::require_keys(*j, "mesh",
                                {"dx", "extent_left", "extent_right"});
        if (const auto* d = cfgdetail::find(*j, "dx")) {
            c.dx = cfgdetail::as_rational(*d, "mesh.dx");
        }
        if (const auto* e = cfgdetail::find(*j, "extent_left")) {
            c.extent.left = cfgdetail::as_number(*e, "mesh.extent_left");
            if (!(c.extent.left > 0.0)) {
                throw config_error("mesh.extent_left: must be positive");
            }
        }
        if (const auto* e = cfgdetail::find(*j, "extent_right")) {
            c.extent.right = cfgdetail::as_number(*e, "mesh.extent_right");
            if (!(c.extent.right > 0.0)) {
                throw config_error("mesh.extent_right: must be positive");
            }
        }
    }
    if (const auto* j = cfgdetail::find(root, "time")) {
        if (!j->is_object()) throw config_error("time: expected an object");
        cfgdetail::require_keys(*j, "time", {"t_final"});
        if (const auto* t = cfgdetail::find(*j, "t_final")) {
            c.t_final = cfgdetail::as_number(*t, "time.t_final");
        }
    }
    if (const auto* j = cfgdetail::find(root, "resolutions")) {
        if (!j->is_array() || j->empty()) {
            throw config_error("resolutions: expected a non-empty array");
        }
        std::vector<Rational> rs;
        for (std::size_t i = 0; i < j->size(); ++i) {
            rs.push_back(cfgdetail::as_rational(
                (*j)[i], "resolutions[" + std::to_string(i) + "]"));
        }
        c.resolutions = std::move(rs);
    }
    if (const auto* j = cfgdetail::find(root, "reference_dx")) {
        c.reference_dx = cfgdetail::as_rational(*j, "reference_dx");
    }
    if (const auto* j = cfgdetail::find(root, "snapshot_dx")) {
        c.snapshot_dx = cfgdetail::as_rational(*j, "snapshot_dx");
    }
    if (const auto* j = cfgdetail::find(root, "etas")) {
        if (!j->is_array() || j->empty()) {
            throw config_error("etas: expected a non-empty array");
        }
        std::vector<double> es;
        for (std::size_t i = 0; i < j->size(); ++i) {
            es.push_back(cfgdetail::as_number(
                (*j)[i], "etas[" + std::to_string(i) + "]"));
        }
        c.etas = std::move(es);
    }
    if (const auto* j = cfgdetail::find(root, "entropy_sweep")) {
        c.entropy_sweep = cfgdetail::as_bool(*j, "entropy_sweep");
    }
    if (const auto* j = cfgdetail::find(root, "figure_set")) {
        c.figure_set = cfgdetail::as_bool(*j, "figure_set");
    }
    if (const auto* j = cfgdetail::find(root, "jobs")) {
        c.jobs = static_cast<int>(cfgdetail::as_integer(*j, "jobs"));
    }
    if (const auto* j = cfgdetail::find(root, "initial")) {
        if (!j->is_object()) {
            throw config_error("initial: expected an object");
        }
        cfgdetail::require_keys(*j, "initial", {"breakpoints", "values"});
        PiecewiseConstant pc;
        const auto* bp = cfgdetail::find(*j, "breakpoints");
        const auto* vs = cfgdetail::find(*j, "values");
        if (!bp || !vs || !bp->is_array() || !vs->is_array()) {
            throw config_error(
                "initial: needs \"breakpoints\" and \"values\" arrays");
        }
        for (std::size_t i = 0; i < bp->size(); ++i) {
            pc.breakpoints.push_back(cfgdetail::as_number(
                (*bp)[i], "initial.breakpoints[" + std::to_string(i) + "]"));
        }
        for (std::size_t i = 0; i < vs->size(); ++i) {
            pc.values.push_back(cfgdetail::as_number(
                (*vs)[i], "initial.values[" + std::to_string(i) + "]"));
        }
        try {
            pc.validate();
        } catch (const std::invalid_argument& e) {
            throw config_error(std::string("initial: ") + e.what());
        }
        c.initial = std::move(pc);
    }

    validate_config(c);
    return c;
}

inline RunConfig parse_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw config_error("cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), path);
}

namespace cfgdetail {

inline json profile_to_json(const Profile& p) {
    if (p.name == "1-rho") return json("1-rho");
    return json(p.coeffs);
}

}  // namespace cfgdetail

// Serializes the effective configuration. parse_config_text applied to the
// dump reproduces the same configuration (lossless round-trip).
inline nlohmann::ordered_json to_json(const RunConfig& c) {
    using cfgdetail::json;
    json j;
    j["experiment"] = c.experiment;
    j["case"] = c.cases.size() == 2 ? "both" : case_name(c.cases.front());
    j["scale"] = c.scale;
    j["output_dir"] = c.output_dir;
    j["cfl"] = {
        {"mode", c.cfl_mode == CflMode::Basic ? "basic" : "bv-strict"},
        {"safety", c.cfl_safety},
    };
    json model = json::object();
    if (c.k_left) model["k_l"] = *c.k_left;
    if (c.k_right) model["k_r"] = *c.k_right;
    model["psi"] = cfgdetail::profile_to_json(c.psi);
    model["g"] = cfgdetail::profile_to_json(c.g);
    model["rho_max"] = c.rho_max;
    j["model"] = std::move(model);
    json kernel = json::object();
    kernel["kind"] = c.kernel_kind == KernelKind::LinearDecreasing
                         ? "linear"
                         : (c.kernel_kind == KernelKind::Constant ? "constant"
                                                                  : "poly");
    if (c.eta) kernel["eta"] = *c.eta;
    if (!c.kernel_coefficients.empty()) {
        kernel["coefficients"] = c.kernel_coefficients;
    }
    j["kernel"] = std::move(kernel);
    json mesh = json::object();
    if (c.dx) mesh["dx"] = c.dx->str();
    mesh["extent_left"] = c.extent.left;
    mesh["extent_right"] = c.extent.right;
    j["mesh"] = std::move(mesh);
    if (c.t_final) j["time"] = {{"t_final", *c.t_final}};
    if (c.resolutions) {
        json rs = json::array();
        for (const Rational& r : *c.resolutions) rs.push_back(r.str());
        j["resolutions"] = std::move(rs);
    }
    if (c.reference_dx) j["reference_dx"] = c.reference_dx->str();
    if (c.snapshot_dx) j["snapshot_dx"] = c.snapshot_dx->str();
    if (c.etas) j["etas"] = *c.etas;
    j["entropy_sweep"] = c.entropy_sweep;
    j["figure_set"] = c.figure_set;
    j["jobs"] = c.jobs;
    if (c.initial) {
        j["initial"] = {{"breakpoints", c.initial->breakpoints},
                        {"values", c.initial->values}};
    }
    return j;
}

}  // namespace nlfv
