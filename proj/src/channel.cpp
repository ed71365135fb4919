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

#include "relay_irs/channel.hpp"

#include <cmath>

namespace relay_irs {

double distance(const Vec3 &a, const Vec3 &b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void Geometry::validate() const {
    if (irs_rows < 1 || irs_cols < 1)
        throw ValidationError("geometry: element counts must be >= 1");
    if (element_spacing <= 0.0)
        throw ValidationError("geometry: element_spacing must be > 0");
    if (wavelength <= 0.0)
        throw ValidationError("geometry: wavelength must be > 0");
}

void FadingSpec::validate() const {
    if (exponent_ap_user <= 0.0 || exponent_other <= 0.0)
        throw ValidationError("fading: path loss exponents must be > 0");
}

double path_gain(double gamma0_db, double distance_m, double exponent) {
    if (distance_m <= 0.0)
        throw NonPositiveDistanceError("path_gain: distance must be > 0, got " +
                                       std::to_string(distance_m));
    return std::pow(10.0, gamma0_db / 10.0) / std::pow(distance_m, exponent);
}

std::vector<Vec3> upa_positions(const Geometry &g) {
    g.validate();
    std::vector<Vec3> pts;
    pts.reserve(g.element_count());
    const double x_half = 0.5 * static_cast<double>(g.irs_cols - 1);
    const double z_half = 0.5 * static_cast<double>(g.irs_rows - 1);
    for (std::size_t r = 0; r < g.irs_rows; ++r) {
        for (std::size_t c = 0; c < g.irs_cols; ++c) {
            Vec3 p = g.irs_center_pos;
            p.x += (static_cast<double>(c) - x_half) * g.element_spacing;
            p.z += (static_cast<double>(r) - z_half) * g.element_spacing;
            pts.push_back(p);
        }
    }
    return pts;
}

CVec near_field_los(const std::vector<Vec3> &elements, const Vec3 &point, double gamma0_db,
                    double wavelength) {
    const double amp0 = std::sqrt(std::pow(10.0, gamma0_db / 10.0));
    CVec h(elements.size());
    for (std::size_t m = 0; m < elements.size(); ++m) {
        const double d = distance(elements[m], point);
        if (d <= 0.0)
            throw ZeroDistanceError("near_field_los: element " + std::to_string(m) +
                                    " coincides with the point");
        h[m] = std::polar(amp0 / d, -2.0 * M_PI * d / wavelength);
    }
    return h;
}

CVec rician(RngStream &rng, const CVec &los, double k_db, double mean_power_gain) {
    if (mean_power_gain < 0.0)
        throw std::invalid_argument("rician: mean_power_gain must be >= 0");
    const double k = std::pow(10.0, k_db / 10.0);
    const double w_los = std::sqrt(k / (k + 1.0));
    const double w_nlos = std::sqrt(1.0 / (k + 1.0));
    const double amp = std::sqrt(mean_power_gain);
    CVec h(los.size());
    for (std::size_t m = 0; m < los.size(); ++m)
        h[m] = amp * (w_los * los[m] + w_nlos * rng.next_cn());
    return h;
}

namespace {

// Scalar link under the requested model. The LoS phase is the exact
// spherical-wave phase of the node-to-node distance.
CScalar draw_scalar_link(RngStream &rng, LinkModel model, double d, double gamma0_db,
                         double exponent, double k_db, double wavelength) {
    const double gain = path_gain(gamma0_db, d, exponent);
    switch (model) {
    case LinkModel::Rayleigh:
        return std::sqrt(gain) * rng.next_cn();
    case LinkModel::Rician: {
        const CVec los = {std::polar(1.0, -2.0 * M_PI * d / wavelength)};
        return rician(rng, los, k_db, gain)[0];
    }
    case LinkModel::NearFieldLos: {
        const double amp0 = std::sqrt(std::pow(10.0, gamma0_db / 10.0));
        return std::polar(amp0 / d, -2.0 * M_PI * d / wavelength);
    }
    }
    throw std::logic_error("draw_scalar_link: unknown model");
}

// Vector link between the IRS panel and a node. Mean power comes from the
// node-to-panel-centre distance; per-element distances set the LoS phases.
CVec draw_vector_link(RngStream &rng, LinkModel model, const std::vector<Vec3> &elements,
                      const Vec3 &node, double center_dist, double gamma0_db, double exponent,
                      double k_db, double wavelength) {
    if (model == LinkModel::NearFieldLos)
        return near_field_los(elements, node, gamma0_db, wavelength);
    const double gain = path_gain(gamma0_db, center_dist, exponent);
    if (model == LinkModel::Rayleigh) {
        CVec h(elements.size());
        for (auto &x : h)
            x = std::sqrt(gain) * rng.next_cn();
        return h;
    }
    CVec los(elements.size());
    for (std::size_t m = 0; m < elements.size(); ++m) {
        const double d = distance(elements[m], node);
        if (d <= 0.0)
            throw ZeroDistanceError("draw_vector_link: node coincides with element");
        los[m] = std::polar(1.0, -2.0 * M_PI * d / wavelength);
    }
    return rician(rng, los, k_db, gain);
}

} // namespace

ChannelSet draw_channel_set(RngStream &rng, const Geometry &g, const FadingSpec &f, double d0) {
    g.validate();
    f.validate();
    if (d0 <= 0.0)
        throw NonPositiveDistanceError("draw_channel_set: d0 must be > 0");

    const Vec3 user{d0, g.user_pos.y, g.user_pos.z};
    const auto elements = upa_positions(g);

    const double d_au = distance(g.ap_pos, user);
    const double d_ai = distance(g.ap_pos, g.irs_center_pos);
    const double d_ac = distance(g.ap_pos, g.controller_pos);
    const double d_iu = distance(g.irs_center_pos, user);
    const double d_cu = distance(g.controller_pos, user);

    ChannelSet cs;
    cs.h_au = draw_scalar_link(rng, f.model_ap_user, d_au, f.gamma0_db, f.exponent_ap_user,
                               f.rician_k_db, g.wavelength);
    cs.h_ai = draw_vector_link(rng, f.model_ap_irs, elements, g.ap_pos, d_ai, f.gamma0_db,
                               f.exponent_other, f.rician_k_db, g.wavelength);
    cs.h_ac = draw_scalar_link(rng, f.model_ap_ctrl, d_ac, f.gamma0_db, f.exponent_other,
                               f.rician_k_db, g.wavelength);
    cs.h_ic = draw_vector_link(rng, f.model_irs_ctrl, elements, g.controller_pos, 0.0, f.gamma0_db,
                               f.exponent_other, f.rician_k_db, g.wavelength);
    cs.g_iu = draw_vector_link(rng, f.model_irs_user, elements, user, d_iu, f.gamma0_db,
                               f.exponent_other, f.rician_k_db, g.wavelength);
    cs.g_cu = draw_scalar_link(rng, f.model_ctrl_user, d_cu, f.gamma0_db, f.exponent_other,
                               f.rician_k_db, g.wavelength);

    ensure_finite(cs.h_au, "h_au");
    ensure_finite(cs.h_ai, "h_ai");
    ensure_finite(cs.h_ac, "h_ac");
    ensure_finite(cs.h_ic, "h_ic");
    ensure_finite(cs.g_iu, "g_iu");
    ensure_finite(cs.g_cu, "g_cu");
    return cs;
}

CascadedChannels cascade(const ChannelSet &cs) {
    if (cs.h_ai.size() != cs.h_ic.size() || cs.h_ai.size() != cs.g_iu.size())
        throw DimensionMismatchError("cascade: channel vector lengths differ");
    const std::size_t m = cs.h_ai.size();
    CascadedChannels c;
    c.q_u.resize(m);
    c.q_c.resize(m);
    c.q_tilde_u.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        c.q_u[i] = std::conj(cs.h_ai[i] * cs.g_iu[i]);
        c.q_c[i] = std::conj(cs.h_ai[i] * cs.h_ic[i]);
        c.q_tilde_u[i] = std::conj(cs.h_ic[i] * cs.g_iu[i]);
    }
    return c;
}

} // namespace relay_irs
