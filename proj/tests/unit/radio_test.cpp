#include <doctest.h>

#include <cmath>

#include "cellcache/errors.hpp"
#include "cellcache/radio.hpp"

using namespace cellcache;

TEST_SUITE("radio") {

TEST_CASE("path loss clamps below one metre") {
    CHECK(path_loss_db(0.2, LinkKind::macro) == path_loss_db(1.0, LinkKind::macro));
    CHECK(path_loss_db(0.0, LinkKind::small) == path_loss_db(1.0, LinkKind::small));
}

TEST_CASE("rate is monotone in both arguments") {
    double prev = -1.0;
    for (double w : {0.0, 1e5, 1e6, 5e6}) {
        const double r = rate_bps(w, 2.0);
        CHECK(r >= prev);
        prev = r;
    }
    prev = -1.0;
    for (double s : {0.0, 0.5, 1.0, 10.0, 1e4}) {
        const double r = rate_bps(1e6, s);
        CHECK(r >= prev);
        prev = r;
    }
}

TEST_CASE("delay strictly decreasing in rate") {
    double prev = 1e12;
    for (double r : {1e5, 1e6, 5e6, 1e8}) {
        const double d = service_delay_s(1e6, r).value();
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("sinr is invariant under common power scaling when noise is negligible") {
    NetworkGeometry g;
    g.noise_density_dbm_hz = -1000.0;
    g.bs_list = {BaseStation{0, Vec2{0.0, 0.0}, 30.0, 5e6},
                 BaseStation{1, Vec2{300.0, 0.0}, 24.0, 5e6},
                 BaseStation{2, Vec2{-150.0, 90.0}, 18.0, 5e6}};
    const Vec2 user{80.0, 40.0};
    const double before = sinr_linear(0, user, g);
    for (BaseStation& bs : g.bs_list) bs.tx_power_dbm += 17.0;
    const double after = sinr_linear(0, user, g);
    CHECK(after == doctest::Approx(before).epsilon(1e-9));
}

TEST_CASE("rssi ordering equals distance ordering for identical stations") {
    const BaseStation a{1, Vec2{0.0, 0.0}, 30.0, 5e6};
    const BaseStation b{2, Vec2{500.0, 0.0}, 30.0, 5e6};
    for (double x : {-100.0, 50.0, 240.0, 260.0, 700.0}) {
        const Vec2 user{x, 33.0};
        const bool a_closer = distance_m(a.position, user) < distance_m(b.position, user);
        CHECK((rssi_dbm(a, user) > rssi_dbm(b, user)) == a_closer);
    }
}

TEST_CASE("geometry respects the macro radius and the minimum separation") {
    GeometryParams params;
    Rng rng(31);
    const NetworkGeometry g = build_geometry(params, rng);
    REQUIRE(g.bs_list.size() == 4);
    for (std::size_t b = 1; b < g.bs_list.size(); ++b) {
        CHECK(distance_m(g.bs_list[b].position, Vec2{0.0, 0.0}) <= params.macro_radius_m);
        for (std::size_t other = b + 1; other < g.bs_list.size(); ++other) {
            CHECK(distance_m(g.bs_list[b].position, g.bs_list[other].position) >=
                  2.0 * params.small_cell_radius_m);
        }
    }

    Rng r2(31);
    const NetworkGeometry same = build_geometry(params, r2);
    for (std::size_t b = 0; b < g.bs_list.size(); ++b) {
        CHECK(g.bs_list[b].position.x == same.bs_list[b].position.x);
        CHECK(g.bs_list[b].position.y == same.bs_list[b].position.y);
    }
}

TEST_CASE("geometry placement fails loudly when the hotspot cannot fit") {
    GeometryParams params;
    params.num_scbs = 12;
    params.hotspot_radius_m = 70.0;
    Rng rng(5);
    CHECK_THROWS_AS(build_geometry(params, rng), InvalidConfig);
}

TEST_CASE("users are placed inside their discs") {
    GeometryParams params;
    Rng rng(8);
    const NetworkGeometry g = build_geometry(params, rng);
    const auto sues = place_small_cell_users(g, 40, rng);
    for (const Vec2& p : sues) {
        double nearest = 1e18;
        for (std::size_t b = 1; b < g.bs_list.size(); ++b) {
            nearest = std::min(nearest, distance_m(p, g.bs_list[b].position));
        }
        CHECK(nearest <= g.small_cell_radius_m + 1e-9);
    }
    const auto mues = place_macro_users(g, 60, rng);
    for (const Vec2& p : mues) {
        CHECK(distance_m(p, Vec2{0.0, 0.0}) <= g.macro_radius_m + 1e-9);
    }
}

}  // TEST_SUITE
