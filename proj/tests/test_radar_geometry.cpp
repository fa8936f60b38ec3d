#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "locustradar/radar_geometry.hpp"
#include "oracles.hpp"

using namespace locust;

TEST_CASE("gate ranges follow S = S1 + dS * n") {
    CHECK(gate_range_m(0.0, 250.0, 0) == 0.0);
    CHECK(gate_range_m(0.0, 250.0, 4) == 1000.0);
    CHECK(gate_range_m(150.0, 250.0, 599) == doctest::Approx(149900.0));

    // cross-check by repeated addition
    double acc = 150.0;
    for (int i = 0; i < 599; ++i) acc += 250.0;
    CHECK(gate_range_m(150.0, 250.0, 599) == doctest::Approx(acc));
}

TEST_CASE("beam height at zero range is the antenna height") {
    CHECK(beam_height_km(0.0, 0.2, 100.0) == doctest::Approx(0.100));
    CHECK(beam_height_km(0.0, 21.0, 100.0) == doctest::Approx(0.100));
    CHECK(beam_height_km(0.0, 5.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("beam height matches the small-angle oracle") {
    // 150 km at 0.2 deg: 0.5236 + 1.3243 = 1.848 km
    CHECK(beam_height_km(150.0, 0.2, 0.0) ==
          doctest::Approx(oracles::small_angle_height_km(150.0, 0.2, 0.0)).epsilon(0.005));
    CHECK(beam_height_km(150.0, 0.2, 0.0) == doctest::Approx(1.848).epsilon(0.005));
    // 100 km at 0.2 deg: 0.3491 + 0.5886
    CHECK(beam_height_km(100.0, 0.2, 0.0) == doctest::Approx(0.938).epsilon(0.005));

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> s(1.0, 150.0);
    std::uniform_real_distribution<double> el(0.05, 1.0);
    std::uniform_real_distribution<double> h(0.0, 500.0);
    for (int i = 0; i < 200; ++i) {
        const double sk = s(rng), e = el(rng), a = h(rng);
        const double got = beam_height_km(sk, e, a);
        const double want = oracles::small_angle_height_km(sk, e, a);
        CHECK(got == doctest::Approx(want).epsilon(0.01));
    }
}

TEST_CASE("beam height is monotone in range and elevation") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> s(0.0, 150.0);
    std::uniform_real_distribution<double> el(0.05, 45.0);
    for (int i = 0; i < 200; ++i) {
        const double s1 = s(rng), s2 = s1 + 1.0;
        const double e1 = el(rng), e2 = e1 + 0.5;
        CHECK(beam_height_km(s2, e1, 0.0) > beam_height_km(s1, e1, 0.0));
        if (s1 > 0.0) CHECK(beam_height_km(s1, e2, 0.0) > beam_height_km(s1, e1, 0.0));
    }
}

TEST_CASE("beam height is exactly additive in antenna height") {
    // the antenna offset enters as a final additive term
    for (double s : {0.0, 10.0, 100.0, 150.0})
        for (double el : {0.2, 2.0, 21.0})
            CHECK(beam_height_km(s, el, 120.0) == beam_height_km(s, el, 0.0) + 0.120);
}

TEST_CASE("max analysis range recovers the ceiling") {
    const double r = max_analysis_range_km(0.2, 0.0, 2.0);
    CHECK(r >= 150.0);
    CHECK(r <= 160.0);
    const double h = beam_height_km(r, 0.2, 0.0);
    CHECK(h >= 1.99);
    CHECK(h <= 2.0);

    // ceiling barely above the antenna forces a near-zero range
    CHECK(max_analysis_range_km(0.2, 0.0, 0.0001) < 1.0);

    // steep beam: range ~ ceiling / sin(el)
    const double steep = max_analysis_range_km(21.0, 0.0, 2.0);
    CHECK(steep == doctest::Approx(2.0 / std::sin(geo::deg2rad(21.0))).epsilon(0.01));
}

TEST_CASE("max analysis range composed with beam height stays within the bisection step") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> el(0.05, 30.0);
    std::uniform_real_distribution<double> ant(0.0, 300.0);
    std::uniform_real_distribution<double> ceil(0.5, 6.0);
    for (int i = 0; i < 100; ++i) {
        const double e = el(rng), a = ant(rng), c = ceil(rng) + a / 1000.0;
        const double r = max_analysis_range_km(e, a, c);
        const double h = beam_height_km(r, e, a);
        CHECK(h <= c);
        CHECK(beam_height_km(r + 0.011, e, a) > c);
    }
}

TEST_CASE("ceiling at or below the antenna is rejected") {
    CHECK_THROWS_AS(max_analysis_range_km(0.2, 120.0, 0.1), CeilingBelowAntenna);
    CHECK_THROWS_AS(max_analysis_range_km(0.2, 120.0, 0.12), CeilingBelowAntenna);
}

TEST_CASE("gate geolocation") {
    RadarSite site{"EQ", 0.0, 0.0, 100.0, Band::S};

    SUBCASE("zero range returns the site") {
        const GateGeo g = gate_geolocate(site, 123.0, 5.0, 0.0);
        CHECK(g.latitude_deg == doctest::Approx(0.0));
        CHECK(g.longitude_deg == doctest::Approx(0.0));
        CHECK(g.height_km_msl == doctest::Approx(0.100));
    }

    SUBCASE("one degree east along the equator") {
        const GateGeo g = gate_geolocate(site, 90.0, 0.0, 111195.0);
        CHECK(g.latitude_deg == doctest::Approx(0.0).epsilon(1e-6));
        CHECK(g.longitude_deg == doctest::Approx(1.0).epsilon(1e-3));
    }

    SUBCASE("one degree north") {
        const GateGeo g = gate_geolocate(site, 0.0, 0.0, 111195.0);
        CHECK(g.latitude_deg == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(g.longitude_deg == doctest::Approx(0.0).epsilon(1e-6));
    }

    SUBCASE("elevation shortens the ground projection") {
        const GateGeo flat = gate_geolocate(site, 0.0, 0.0, 100000.0);
        const GateGeo steep = gate_geolocate(site, 0.0, 21.0, 100000.0);
        CHECK(steep.latitude_deg < flat.latitude_deg);
        CHECK(steep.latitude_deg ==
              doctest::Approx(flat.latitude_deg * std::cos(geo::deg2rad(21.0))).epsilon(1e-4));
    }

    SUBCASE("distance back to the site equals the ground range") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> az(0.0, 360.0);
        std::uniform_real_distribution<double> rr(1000.0, 150000.0);
        RadarSite lkn{"LKN", 26.85, 80.95, 120.0, Band::S};
        for (int i = 0; i < 100; ++i) {
            const double a = az(rng), r = rr(rng);
            const GateGeo g = gate_geolocate(lkn, a, 0.5, r);
            const double back = geo::haversine_km(lkn.latitude_deg, lkn.longitude_deg, g.latitude_deg, g.longitude_deg);
            CHECK(back == doctest::Approx(r / 1000.0 * std::cos(geo::deg2rad(0.5))).epsilon(1e-6));
        }
    }
}

TEST_CASE("band names round trip; unknown names are rejected") {
    CHECK(band_from_name("S") == Band::S);
    CHECK(band_from_name("C") == Band::C);
    CHECK(band_from_name("X") == Band::X);
    CHECK(band_name(Band::X) == "X");
    CHECK_THROWS_AS(band_from_name("Ku"), ParseError);
}

TEST_CASE("site and VCP validation") {
    RadarSite bad{"B", 91.0, 0.0, 0.0, Band::S};
    CHECK_THROWS_AS(bad.validate(), ValidationError);

    VcpDefinition vcp;
    CHECK_THROWS_AS(vcp.validate(), ValidationError); // no elevations
    vcp.elevation_angles_deg = {0.2, 0.2};
    CHECK_THROWS_AS(vcp.validate(), ValidationError); // not strictly increasing
    vcp.elevation_angles_deg = {0.2, 1.0};
    CHECK_NOTHROW(vcp.validate());
}

TEST_CASE("geo helpers: triangle inequality and bearing round trip") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> lat(-70.0, 70.0);
    std::uniform_real_distribution<double> lon(-179.0, 179.0);
    for (int i = 0; i < 200; ++i) {
        const double a1 = lat(rng), o1 = lon(rng), a2 = lat(rng), o2 = lon(rng), a3 = lat(rng), o3 = lon(rng);
        const double d12 = geo::haversine_km(a1, o1, a2, o2);
        const double d23 = geo::haversine_km(a2, o2, a3, o3);
        const double d13 = geo::haversine_km(a1, o1, a3, o3);
        CHECK(d13 <= d12 + d23 + 1e-9);
        CHECK(geo::haversine_km(a1, o1, a2, o2) == doctest::Approx(geo::haversine_km(a2, o2, a1, o1)));
    }
    // destination_point inverts haversine/bearing
    const auto p = geo::destination_point(26.85, 80.95, 37.0, 55.0);
    CHECK(geo::haversine_km(26.85, 80.95, p.lat_deg, p.lon_deg) == doctest::Approx(55.0).epsilon(1e-9));
    CHECK(geo::initial_bearing_deg(26.85, 80.95, p.lat_deg, p.lon_deg) == doctest::Approx(37.0).epsilon(1e-6));
}
