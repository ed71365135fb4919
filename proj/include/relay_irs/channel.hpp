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

#ifndef RELAY_IRS_CHANNEL_HPP
#define RELAY_IRS_CHANNEL_HPP

#include <cstddef>
#include <vector>

#include "relay_irs/numerics.hpp"

namespace relay_irs {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

double distance(const Vec3 &a, const Vec3 &b);

/// Deployment geometry. Defaults follow the reference scenario: AP at
/// (0,1,2), IRS centre at (50,0,1), controller at (50,0.3,1.5), user on the
/// line (d0,1,1); the IRS is a UPA in the x-z plane with half-wavelength
/// spacing at 6 GHz (lambda = 0.05 m). The default panel is 8x8 for
/// desk-scale runs; 20x20 reproduces the full-size array.
struct Geometry {
    Vec3 ap_pos{0.0, 1.0, 2.0};
    Vec3 irs_center_pos{50.0, 0.0, 1.0};
    Vec3 controller_pos{50.0, 0.3, 1.5};
    Vec3 user_pos{0.0, 1.0, 1.0}; // x is replaced by d0 at draw time
    std::size_t irs_rows = 8;
    std::size_t irs_cols = 8;
    double element_spacing = 0.025;
    double wavelength = 0.05;

    std::size_t element_count() const { return irs_rows * irs_cols; }
    void validate() const; // throws ValidationError
};

enum class LinkModel { Rayleigh, Rician, NearFieldLos };

/// Large-scale fading parameters. gamma0_db is the reference path gain at
/// 1 m; the AP-user link uses its own exponent, every other link shares
/// exponent_other.
struct FadingSpec {
    double gamma0_db = -30.0;
    double exponent_ap_user = 3.0;
    double exponent_other = 2.5;
    double rician_k_db = 10.0;
    LinkModel model_ap_user = LinkModel::Rayleigh;
    LinkModel model_ap_irs = LinkModel::Rician;
    LinkModel model_ap_ctrl = LinkModel::Rician;
    LinkModel model_irs_ctrl = LinkModel::NearFieldLos;
    LinkModel model_irs_user = LinkModel::Rician;
    LinkModel model_ctrl_user = LinkModel::Rician;

    void validate() const;
};

/// One realization of the six baseband channels.
struct ChannelSet {
    CScalar h_au{};  // AP -> user
    CVec h_ai;       // AP -> IRS
    CScalar h_ac{};  // AP -> controller
    CVec h_ic;       // IRS -> controller
    CVec g_iu;       // IRS -> user
    CScalar g_cu{};  // controller -> user (reciprocal h_CU)

    std::size_t element_count() const { return h_ai.size(); }
};

/// Per-element cascaded channels:
///   q_u[m]       = conj(h_ai[m] * g_iu[m])   (AP -> IRS -> user)
///   q_c[m]       = conj(h_ai[m] * h_ic[m])   (AP -> IRS -> controller)
///   q_tilde_u[m] = conj(h_ic[m] * g_iu[m])   (controller -> IRS -> user)
/// so that q^H theta reproduces the reflected-path sum exactly.
struct CascadedChannels {
    CVec q_u;
    CVec q_c;
    CVec q_tilde_u;
};

/// Linear power gain gamma0 / d^exponent with gamma0 given in dB.
double path_gain(double gamma0_db, double distance_m, double exponent);

/// Element positions of the UPA, row-major from the (-x,-z) corner, centred
/// on irs_center_pos in the x-z plane.
std::vector<Vec3> upa_positions(const Geometry &g);

/// Near-field LoS channel: entry m has magnitude sqrt(gamma0)/d_m and phase
/// -2*pi*d_m/lambda, with d_m the element-to-point distance.
CVec near_field_los(const std::vector<Vec3> &elements, const Vec3 &point, double gamma0_db,
                    double wavelength);

/// Rician fading around a unit-magnitude LoS component:
/// sqrt(gain) * (sqrt(K/(K+1)) * los + sqrt(1/(K+1)) * w), w ~ CN(0,1).
CVec rician(RngStream &rng, const CVec &los, double k_db, double mean_power_gain);

/// Draws all six channels for a user at horizontal distance d0.
ChannelSet draw_channel_set(RngStream &rng, const Geometry &g, const FadingSpec &f, double d0);

CascadedChannels cascade(const ChannelSet &cs);

} // namespace relay_irs

#endif
