#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cellcache/rng.hpp"
#include "cellcache/traffic.hpp"

namespace cellcache {

enum class LinkKind { macro, small };

/// 3GPP TR 36.814 urban baseline path loss. Distances below 1 m are clamped.
double path_loss_db(double distance_m, LinkKind kind);

struct BaseStation {
    std::size_t bs_id = 0;  // 0 is the MBS, 1..B are SCBSs
    Vec2 position;
    double tx_power_dbm = 0.0;
    double bandwidth_hz = 0.0;

    LinkKind link_kind() const { return bs_id == 0 ? LinkKind::macro : LinkKind::small; }
};

struct NetworkGeometry {
    double macro_radius_m = 0.0;
    double small_cell_radius_m = 0.0;
    double noise_density_dbm_hz = -174.0;
    std::vector<BaseStation> bs_list;  // index 0 is the MBS

    std::size_t num_scbs() const { return bs_list.empty() ? 0 : bs_list.size() - 1; }
};

double distance_m(Vec2 a, Vec2 b);
double dbm_to_watts(double dbm);

double received_power_dbm(const BaseStation& bs, Vec2 user_position);

/// Transmit power minus path loss; used for user association.
double rssi_dbm(const BaseStation& bs, Vec2 user_position);

double noise_power_watts(double noise_density_dbm_hz, double bandwidth_hz);

/// Downlink SINR with co-channel interference: received power from the
/// serving station over thermal noise (integrated across the full system
/// bandwidth) plus the received power of every other station in the list.
double sinr_linear(std::size_t serving_index, Vec2 user_position, const NetworkGeometry& g);

/// SINR of an isolated link (orthogonal deployment): signal over noise only.
double snr_linear(const BaseStation& bs, Vec2 user_position, const NetworkGeometry& g);

/// Shannon rate over the allocated share of the band.
double rate_bps(double bandwidth_share_hz, double sinr_linear);

/// Transfer time of a content over a link; empty when the rate is zero
/// (unserviceable request, counted by the simulator at the delay cap).
std::optional<double> service_delay_s(double content_size_bits, double rate_bps);

struct GeometryParams {
    std::size_t num_scbs = 3;
    double macro_radius_m = 3000.0;
    double small_cell_radius_m = 40.0;
    double hotspot_center_frac = 0.85;  // hotspot centre distance as a fraction of the macro radius
    double hotspot_radius_m = 80.0;
    double mbs_tx_power_dbm = 46.0;
    double scbs_tx_power_dbm = 30.0;
    double bandwidth_hz = 5e6;
    double noise_density_dbm_hz = -174.0;

    void validate() const;
};

/// MBS at the origin; SCBSs uniform in a hotspot disc near the macro edge,
/// kept at least two small-cell radii apart.
NetworkGeometry build_geometry(const GeometryParams& params, Rng& rng);

/// Small-cell users: uniform in the disc of a uniformly chosen SCBS.
std::vector<Vec2> place_small_cell_users(const NetworkGeometry& g, std::size_t count, Rng& rng);

/// Macro users: uniform in the macro disc.
std::vector<Vec2> place_macro_users(const NetworkGeometry& g, std::size_t count, Rng& rng);

}  // namespace cellcache
