// SPDX-License-Identifier: Apache-2.0
//
// relay-irs: simulator and optimizer for IRS-assisted downlinks with
// controller relaying.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "relay_irs/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace relay_irs {

namespace {

using nlohmann::json;

void require_keys(const json &obj, const char *section, std::initializer_list<const char *> known) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char *k : known)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok)
            throw ParseError(std::string("config: unknown key '") + it.key() + "' in section '" +
                             section + "'");
    }
}

double get_num(const json &obj, const char *section, const char *key, double fallback) {
    if (!obj.contains(key))
        return fallback;
    const json &v = obj.at(key);
    if (!v.is_number())
        throw ParseError(std::string("config: key '") + key + "' in section '" + section +
                         "' must be a number");
    return v.get<double>();
}

std::int64_t get_int(const json &obj, const char *section, const char *key, std::int64_t fallback) {
    if (!obj.contains(key))
        return fallback;
    const json &v = obj.at(key);
    if (!v.is_number_integer())
        throw ParseError(std::string("config: key '") + key + "' in section '" + section +
                         "' must be an integer");
    return v.get<std::int64_t>();
}

bool get_bool(const json &obj, const char *section, const char *key, bool fallback) {
    if (!obj.contains(key))
        return fallback;
    const json &v = obj.at(key);
    if (!v.is_boolean())
        throw ParseError(std::string("config: key '") + key + "' in section '" + section +
                         "' must be a boolean");
    return v.get<bool>();
}

Vec3 get_vec3(const json &obj, const char *section, const char *key, Vec3 fallback) {
    if (!obj.contains(key))
        return fallback;
    const json &v = obj.at(key);
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
        !v[2].is_number())
        throw ParseError(std::string("config: key '") + key + "' in section '" + section +
                         "' must be [x, y, z]");
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

void parse_geometry(const json &g, Geometry &out) {
    require_keys(g, "geometry",
                 {"ap", "irs_center", "controller", "user_yz", "irs_rows", "irs_cols",
                  "element_spacing", "wavelength"});
    out.ap_pos = get_vec3(g, "geometry", "ap", out.ap_pos);
    out.irs_center_pos = get_vec3(g, "geometry", "irs_center", out.irs_center_pos);
    out.controller_pos = get_vec3(g, "geometry", "controller", out.controller_pos);
    if (g.contains("user_yz")) {
        const json &v = g.at("user_yz");
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw ParseError("config: key 'user_yz' in section 'geometry' must be [y, z]");
        out.user_pos.y = v[0].get<double>();
        out.user_pos.z = v[1].get<double>();
    }
    out.irs_rows = static_cast<std::size_t>(get_int(g, "geometry", "irs_rows",
                                                    static_cast<std::int64_t>(out.irs_rows)));
    out.irs_cols = static_cast<std::size_t>(get_int(g, "geometry", "irs_cols",
                                                    static_cast<std::int64_t>(out.irs_cols)));
    out.element_spacing = get_num(g, "geometry", "element_spacing", out.element_spacing);
    out.wavelength = get_num(g, "geometry", "wavelength", out.wavelength);
}

void parse_fading(const json &f, FadingSpec &out) {
    require_keys(f, "fading", {"gamma0_db", "exponent_ap_user", "exponent_other", "rician_k_db"});
    out.gamma0_db = get_num(f, "fading", "gamma0_db", out.gamma0_db);
    out.exponent_ap_user = get_num(f, "fading", "exponent_ap_user", out.exponent_ap_user);
    out.exponent_other = get_num(f, "fading", "exponent_other", out.exponent_other);
    out.rician_k_db = get_num(f, "fading", "rician_k_db", out.rician_k_db);
}

void parse_power(const json &p, ExperimentConfig &out) {
    require_keys(p, "power", {"p_dbm", "sigma2_dbm"});
    out.p_dbm = get_num(p, "power", "p_dbm", out.p_dbm);
    out.sigma2_dbm = get_num(p, "power", "sigma2_dbm", out.sigma2_dbm);
}

void parse_solver(const json &s, AOConfig &out) {
    require_keys(s, "solver",
                 {"bisection_eps", "max_ao_iters", "ao_rate_tol", "randomization_count", "bm_rank",
                  "bm_max_iters", "bm_step_init", "bm_step_shrink", "bm_step_grow", "bm_obj_tol",
                  "feasibility_slack_tol", "use_prop1_shortcut"});
    out.bisection_eps = get_num(s, "solver", "bisection_eps", out.bisection_eps);
    out.max_ao_iters = static_cast<int>(get_int(s, "solver", "max_ao_iters", out.max_ao_iters));
    out.ao_rate_tol = get_num(s, "solver", "ao_rate_tol", out.ao_rate_tol);
    out.randomization_count =
        static_cast<int>(get_int(s, "solver", "randomization_count", out.randomization_count));
    out.bm_rank = static_cast<int>(get_int(s, "solver", "bm_rank", out.bm_rank));
    out.bm_max_iters = static_cast<int>(get_int(s, "solver", "bm_max_iters", out.bm_max_iters));
    out.bm_step_init = get_num(s, "solver", "bm_step_init", out.bm_step_init);
    out.bm_step_shrink = get_num(s, "solver", "bm_step_shrink", out.bm_step_shrink);
    out.bm_step_grow = get_num(s, "solver", "bm_step_grow", out.bm_step_grow);
    out.bm_obj_tol = get_num(s, "solver", "bm_obj_tol", out.bm_obj_tol);
    out.feasibility_slack_tol =
        get_num(s, "solver", "feasibility_slack_tol", out.feasibility_slack_tol);
    out.use_prop1_shortcut = get_bool(s, "solver", "use_prop1_shortcut", out.use_prop1_shortcut);
}

void parse_sweep(const json &s, ExperimentConfig &out) {
    require_keys(s, "sweep", {"d0", "trials", "seed", "schemes", "threads"});
    if (s.contains("d0")) {
        const json &v = s.at("d0");
        if (!v.is_array() || v.empty())
            throw ParseError("config: key 'd0' in section 'sweep' must be a non-empty array");
        out.d0_sweep.clear();
        for (const json &x : v) {
            if (!x.is_number())
                throw ParseError("config: 'd0' entries must be numbers");
            out.d0_sweep.push_back(x.get<double>());
        }
    }
    out.trials = static_cast<int>(get_int(s, "sweep", "trials", out.trials));
    if (s.contains("seed")) {
        const json &v = s.at("seed");
        if (!v.is_number_integer())
            throw ParseError("config: key 'seed' in section 'sweep' must be an integer");
        out.base_seed = v.get<std::uint64_t>();
    }
    if (s.contains("schemes")) {
        const json &v = s.at("schemes");
        if (!v.is_array() || v.empty())
            throw ParseError("config: key 'schemes' in section 'sweep' must be a non-empty array");
        out.schemes.clear();
        for (const json &x : v) {
            if (!x.is_string())
                throw ParseError("config: 'schemes' entries must be strings");
            out.schemes.push_back(scheme_from_name(x.get<std::string>()));
        }
    }
    out.threads = static_cast<int>(get_int(s, "sweep", "threads", out.threads));
}

} // namespace

FullConfig parse_config_text(const std::string &text) {
    FullConfig cfg;

    bool blank = true;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) {
            blank = false;
            break;
        }
    if (!blank) {
        json root;
        try {
            root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
        } catch (const json::parse_error &e) {
            throw ParseError(std::string("config: ") + e.what());
        }
        if (!root.is_object())
            throw ParseError("config: top level must be an object");
        require_keys(root, "<top>", {"geometry", "fading", "power", "solver", "sweep"});
        if (root.contains("geometry"))
            parse_geometry(root.at("geometry"), cfg.experiment.geometry);
        if (root.contains("fading"))
            parse_fading(root.at("fading"), cfg.experiment.fading);
        if (root.contains("power"))
            parse_power(root.at("power"), cfg.experiment);
        if (root.contains("solver"))
            parse_solver(root.at("solver"), cfg.ao);
        if (root.contains("sweep"))
            parse_sweep(root.at("sweep"), cfg.experiment);
    }

    cfg.experiment.validate();
    cfg.ao.validate();
    return cfg;
}

FullConfig parse_config_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("config: cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace relay_irs
