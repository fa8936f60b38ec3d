#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "locustradar/crosscheck.hpp"
#include "oracles.hpp"

using namespace locust;

namespace {

const UtcSeconds kT0 = parse_utc("2020-07-12T02:32:10Z");
const RadarSite kSite{"LKN", 26.85, 80.95, 120.0, Band::S};

SwarmTrack straight_track(double heading_deg, double speed_ms = 4.8, int n_obs = 4) {
    SwarmTrack t;
    for (int i = 0; i < n_obs; ++i) {
        const double elapsed = 600.0 * i;
        const auto p = geo::destination_point(27.3, 81.2, heading_deg, speed_ms * elapsed / 1000.0);
        TrackObservation o;
        o.time_utc = kT0 + static_cast<UtcSeconds>(elapsed);
        o.latitude_deg = p.lat_deg;
        o.longitude_deg = p.lon_deg;
        t.observations.push_back(o);
    }
    return t;
}

RainRecord station(const std::string& id, double lat, double lon, double mm,
                   const std::string& start = "2020-07-12T02:00Z", const std::string& end = "2020-07-12T11:00Z") {
    return RainRecord{id, lat, lon, parse_utc(start), parse_utc(end), mm};
}

std::vector<RainRecord> six_dry_stations() {
    return {station("Auraiya", 26.47, 79.51, 0.0),  station("Kanpur", 26.45, 80.33, 0.0),
            station("Lucknow", 26.85, 80.95, 0.0),  station("Fursatganj", 26.25, 81.38, 0.0),
            station("Sultanpur", 26.26, 82.07, 0.0), station("Unnao", 26.55, 80.49, 0.0)};
}

WindField uniform_wind(double u, double v, UtcSeconds valid = kT0 + 1800) {
    WindField w;
    w.grid_lat0_deg = 25.5;
    w.grid_lon0_deg = 79.5;
    w.cell_deg = 0.25;
    w.nx = 13;
    w.ny = 13;
    w.u_ms.assign(13 * 13, u);
    w.v_ms.assign(13 * 13, v);
    w.level_hpa = 850.0;
    w.valid_time_utc = valid;
    return w;
}

} // namespace

TEST_CASE("six dry stations overlapping the window confirm no rain") {
    const SwarmTrack t = straight_track(270.0);
    const CrossCheckReport rep = rain_crosscheck(t, six_dry_stations(), kSite);
    CHECK(rep.rain_verdict == RainVerdict::NO_RAIN_CONFIRMED);
    CHECK(rep.stations_checked.size() == 6);
    for (const auto& s : rep.stations_checked) CHECK(s.distance_km <= 150.0);
}

TEST_CASE("any wet station makes the verdict ambiguous") {
    auto stations = six_dry_stations();
    stations[2].rainfall_mm = 3.2;
    const CrossCheckReport rep = rain_crosscheck(straight_track(270.0), stations, kSite);
    CHECK(rep.rain_verdict == RainVerdict::RAIN_PRESENT_AMBIGUOUS);
}

TEST_CASE("stations beyond the radius do not count") {
    const std::vector<RainRecord> far{station("Delhi", 28.61, 77.21, 0.0), station("Patna", 25.59, 85.14, 4.0)};
    const CrossCheckReport rep = rain_crosscheck(straight_track(270.0), far, kSite);
    CHECK(rep.rain_verdict == RainVerdict::NO_STATIONS);
    CHECK(rep.stations_checked.empty());
}

TEST_CASE("station windows must overlap the track span") {
    const std::vector<RainRecord> before{
        station("Lucknow", 26.85, 80.95, 5.0, "2020-07-11T00:00Z", "2020-07-11T12:00Z")};
    CHECK(rain_crosscheck(straight_track(270.0), before, kSite).rain_verdict == RainVerdict::NO_STATIONS);

    // window touching the first observation still counts
    const std::vector<RainRecord> touching{
        station("Lucknow", 26.85, 80.95, 0.0, "2020-07-12T00:00Z", "2020-07-12T02:33Z")};
    CHECK(rain_crosscheck(straight_track(270.0), touching, kSite).rain_verdict == RainVerdict::NO_RAIN_CONFIRMED);
}

TEST_CASE("rain verdict is monotone under added stations") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> dlat(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        auto stations = six_dry_stations();
        const SwarmTrack t = straight_track(270.0);
        const RainVerdict base = rain_crosscheck(t, stations, kSite).rain_verdict;
        CHECK(base == RainVerdict::NO_RAIN_CONFIRMED);

        // adding a dry in-radius station never flips to ambiguous
        stations.push_back(station("Extra", 26.85 + dlat(rng) * 0.5, 80.95, 0.0));
        CHECK(rain_crosscheck(t, stations, kSite).rain_verdict == RainVerdict::NO_RAIN_CONFIRMED);

        // adding a wet in-radius station always does
        stations.push_back(station("Wet", 26.85, 80.95 + dlat(rng) * 0.5, 1.0));
        CHECK(rain_crosscheck(t, stations, kSite).rain_verdict == RainVerdict::RAIN_PRESENT_AMBIGUOUS);
    }
}

TEST_CASE("wind aligned with the track is downwind at zero degrees") {
    const SwarmTrack t = straight_track(90.0);
    CrossCheckReport rep;
    wind_alignment(t, {uniform_wind(5.0, 0.0)}, rep);
    CHECK(rep.wind_alignment_deg == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rep.wind_verdict == WindVerdict::DOWNWIND);
    CHECK(rep.wind_bearing_deg == doctest::Approx(90.0));
}

TEST_CASE("antipodal wind is upwind at 180 degrees") {
    const SwarmTrack t = straight_track(270.0);
    CrossCheckReport rep;
    wind_alignment(t, {uniform_wind(5.0, 0.0)}, rep);
    CHECK(rep.wind_alignment_deg == doctest::Approx(180.0).epsilon(1e-9));
    CHECK(rep.wind_verdict == WindVerdict::UPWIND);
}

TEST_CASE("45-degree boundary is classified downwind") {
    const SwarmTrack t = straight_track(90.0);
    CrossCheckReport rep;
    wind_alignment(t, {uniform_wind(3.0, 3.0)}, rep); // wind toward 045
    CHECK(rep.wind_alignment_deg == doctest::Approx(45.0).epsilon(1e-6));
    CHECK(rep.wind_verdict == WindVerdict::DOWNWIND);
}

TEST_CASE("between the sector boundaries is crosswind") {
    const SwarmTrack t = straight_track(0.0);
    CrossCheckReport rep;
    wind_alignment(t, {uniform_wind(5.0, 0.0)}, rep); // wind toward 090, track north
    CHECK(rep.wind_alignment_deg == doctest::Approx(90.0).epsilon(1e-6));
    CHECK(rep.wind_verdict == WindVerdict::CROSSWIND);
}

TEST_CASE("grid not covering the path yields NO_WIND_DATA") {
    WindField w = uniform_wind(5.0, 0.0);
    w.grid_lat0_deg = 40.0; // far away
    CrossCheckReport rep;
    wind_alignment(straight_track(90.0), {w}, rep);
    CHECK(rep.wind_verdict == WindVerdict::NO_WIND_DATA);

    CrossCheckReport rep2;
    wind_alignment(straight_track(90.0), {}, rep2);
    CHECK(rep2.wind_verdict == WindVerdict::NO_WIND_DATA);
}

TEST_CASE("time-nearest field is the one sampled") {
    WindField early = uniform_wind(5.0, 0.0, kT0 - 7200);  // toward 090
    WindField late = uniform_wind(0.0, 5.0, kT0 + 600);    // toward 000
    const SwarmTrack t = straight_track(0.0);
    CrossCheckReport rep;
    wind_alignment(t, {early, late}, rep); // all observations are nearest `late`
    CHECK(rep.wind_alignment_deg == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rep.wind_verdict == WindVerdict::DOWNWIND);
}

TEST_CASE("alignment is invariant under wind-magnitude scaling") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> comp(-10.0, 10.0);
    std::uniform_real_distribution<double> hdg(0.0, 360.0);
    std::uniform_real_distribution<double> scale(0.01, 50.0);
    for (int i = 0; i < 100; ++i) {
        double u = comp(rng), v = comp(rng);
        if (std::fabs(u) + std::fabs(v) < 0.1) u = 1.0;
        const SwarmTrack t = straight_track(hdg(rng));
        CrossCheckReport a, b;
        wind_alignment(t, {uniform_wind(u, v)}, a);
        const double k = scale(rng);
        wind_alignment(t, {uniform_wind(k * u, k * v)}, b);
        CHECK(std::fabs(a.wind_alignment_deg - b.wind_alignment_deg) < 1e-9);
        CHECK(a.wind_verdict == b.wind_verdict);
    }
}

TEST_CASE("alignment is symmetric in heading and wind bearing") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ang(0.0, 360.0);
    for (int i = 0; i < 50; ++i) {
        const double h = ang(rng), wdir = ang(rng);
        const double uw = std::sin(geo::deg2rad(wdir)), vw = std::cos(geo::deg2rad(wdir));
        const double uh = std::sin(geo::deg2rad(h)), vh = std::cos(geo::deg2rad(h));
        CrossCheckReport a, b;
        wind_alignment(straight_track(h), {uniform_wind(uw, vw)}, a);
        wind_alignment(straight_track(wdir), {uniform_wind(uh, vh)}, b);
        CHECK(a.wind_alignment_deg == doctest::Approx(b.wind_alignment_deg).epsilon(1e-4));
    }
}

TEST_CASE("combined crosscheck fills both verdicts") {
    const SwarmTrack t = straight_track(90.0);
    const CrossCheckReport rep = crosscheck_track(t, six_dry_stations(), {uniform_wind(5.0, 0.0)}, kSite);
    CHECK(rep.rain_verdict == RainVerdict::NO_RAIN_CONFIRMED);
    CHECK(rep.wind_verdict == WindVerdict::DOWNWIND);
    CHECK(rep.track_heading_deg == doctest::Approx(90.0).epsilon(1e-3));
}

TEST_CASE("crosscheck preconditions") {
    SwarmTrack empty;
    CHECK_THROWS_AS(rain_crosscheck(empty, six_dry_stations(), kSite), InsufficientObservations);
    SwarmTrack one = straight_track(90.0, 4.8, 1);
    CrossCheckReport rep;
    CHECK_THROWS_AS(wind_alignment(one, {uniform_wind(1, 0)}, rep), InsufficientObservations);
}
