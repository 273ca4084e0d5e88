#include "cellcache/radio.hpp"

#include <cmath>

#include "cellcache/errors.hpp"

namespace cellcache {

double path_loss_db(double distance_m, LinkKind kind) {
    const double d_km = std::max(distance_m, 1.0) / 1000.0;
    if (kind == LinkKind::macro) return 128.1 + 37.6 * std::log10(d_km);
    return 140.7 + 36.7 * std::log10(d_km);
}

double distance_m(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

double received_power_dbm(const BaseStation& bs, Vec2 user_position) {
    return bs.tx_power_dbm - path_loss_db(distance_m(bs.position, user_position), bs.link_kind());
}

double rssi_dbm(const BaseStation& bs, Vec2 user_position) {
    return received_power_dbm(bs, user_position);
}

double noise_power_watts(double noise_density_dbm_hz, double bandwidth_hz) {
    return dbm_to_watts(noise_density_dbm_hz) * bandwidth_hz;
}

double sinr_linear(std::size_t serving_index, Vec2 user_position, const NetworkGeometry& g) {
    const BaseStation& serving = g.bs_list.at(serving_index);
    const double signal_w = dbm_to_watts(received_power_dbm(serving, user_position));
    double interference_w = 0.0;
    for (std::size_t i = 0; i < g.bs_list.size(); ++i) {
        if (i == serving_index) continue;
        interference_w += dbm_to_watts(received_power_dbm(g.bs_list[i], user_position));
    }
    const double noise_w = noise_power_watts(g.noise_density_dbm_hz, serving.bandwidth_hz);
    return signal_w / (noise_w + interference_w);
}

double snr_linear(const BaseStation& bs, Vec2 user_position, const NetworkGeometry& g) {
    const double signal_w = dbm_to_watts(received_power_dbm(bs, user_position));
    return signal_w / noise_power_watts(g.noise_density_dbm_hz, bs.bandwidth_hz);
}

double rate_bps(double bandwidth_share_hz, double sinr_linear) {
    return bandwidth_share_hz * std::log2(1.0 + sinr_linear);
}

std::optional<double> service_delay_s(double content_size_bits, double rate_bps) {
    if (!(rate_bps > 0.0)) return std::nullopt;
    return content_size_bits / rate_bps;
}

void GeometryParams::validate() const {
    if (num_scbs < 1) throw InvalidConfig("num_scbs must be >= 1");
    if (!(macro_radius_m > 0.0)) throw InvalidConfig("macro_radius_m must be > 0");
    if (!(small_cell_radius_m > 0.0)) throw InvalidConfig("small_cell_radius_m must be > 0");
    if (!(bandwidth_hz > 0.0)) throw InvalidConfig("bandwidth_hz must be > 0");
    if (hotspot_center_frac < 0.0 || hotspot_center_frac > 1.0)
        throw InvalidConfig("hotspot_center_frac must be in [0, 1]");
    if (!(hotspot_radius_m > 0.0)) throw InvalidConfig("hotspot_radius_m must be > 0");
    const double span = hotspot_center_frac * macro_radius_m + hotspot_radius_m;
    if (span > macro_radius_m)
        throw InvalidConfig("hotspot disc extends beyond the macro radius");
}

namespace {

Vec2 uniform_in_disc(Vec2 centre, double radius, Rng& rng) {
    const double r = radius * std::sqrt(rng.uniform());
    const double theta = 2.0 * M_PI * rng.uniform();
    return Vec2{centre.x + r * std::cos(theta), centre.y + r * std::sin(theta)};
}

}  // namespace

NetworkGeometry build_geometry(const GeometryParams& params, Rng& rng) {
    params.validate();

    NetworkGeometry g;
    g.macro_radius_m = params.macro_radius_m;
    g.small_cell_radius_m = params.small_cell_radius_m;
    g.noise_density_dbm_hz = params.noise_density_dbm_hz;
    g.bs_list.push_back(BaseStation{0, Vec2{0.0, 0.0}, params.mbs_tx_power_dbm, params.bandwidth_hz});

    const double theta = 2.0 * M_PI * rng.uniform();
    const double rc = params.hotspot_center_frac * params.macro_radius_m;
    const Vec2 hotspot{rc * std::cos(theta), rc * std::sin(theta)};
    const double min_sep = 2.0 * params.small_cell_radius_m;

    // Rejection sampling with full restarts: a bad early draw must not wedge
    // the remaining placements.
    std::vector<Vec2> placed;
    for (int restart = 0; placed.size() < params.num_scbs; ++restart) {
        if (restart >= 1000)
            throw InvalidConfig("could not place SCBSs with the required separation; "
                                "increase hotspot_radius_m or reduce num_scbs");
        placed.clear();
        for (int attempt = 0; attempt < 200 && placed.size() < params.num_scbs; ++attempt) {
            const Vec2 candidate = uniform_in_disc(hotspot, params.hotspot_radius_m, rng);
            bool ok = true;
            for (const Vec2& p : placed) {
                if (distance_m(candidate, p) < min_sep) { ok = false; break; }
            }
            if (ok) placed.push_back(candidate);
        }
    }
    for (std::size_t b = 0; b < placed.size(); ++b) {
        g.bs_list.push_back(BaseStation{b + 1, placed[b], params.scbs_tx_power_dbm, params.bandwidth_hz});
    }
    return g;
}

std::vector<Vec2> place_small_cell_users(const NetworkGeometry& g, std::size_t count, Rng& rng) {
    std::vector<Vec2> out;
    out.reserve(count);
    const std::size_t B = g.num_scbs();
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t b = rng.uniform_index(B);
        out.push_back(uniform_in_disc(g.bs_list[b + 1].position, g.small_cell_radius_m, rng));
    }
    return out;
}

std::vector<Vec2> place_macro_users(const NetworkGeometry& g, std::size_t count, Rng& rng) {
    std::vector<Vec2> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(uniform_in_disc(Vec2{0.0, 0.0}, g.macro_radius_m, rng));
    }
    return out;
}

}  // namespace cellcache
