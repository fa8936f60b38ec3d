#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "locustradar/echo_filter.hpp"
#include "oracles.hpp"

using namespace locust;

namespace {

// Small volume: one 0.2-degree sweep, 20 rays x 30 gates at 250 m.
VolumeScan small_volume() {
    RadarSite site{"LKN", 26.85, 80.95, 120.0, Band::S};
    VcpDefinition vcp;
    vcp.elevation_angles_deg = {0.2};
    vcp.rays_per_sweep = 20;
    vcp.gates_per_ray = 30;
    return make_empty_volume(site, vcp, parse_utc("2020-07-12T02:32:10Z"));
}

// Independent scalar re-implementation of the retention predicate, evaluated
// gate by gate.
bool oracle_retained(const VolumeScan& vol, std::size_t si, std::size_t r, std::size_t g,
                     const FilterConfig& cfg) {
    const Sweep& s = vol.sweeps[si];
    const double slant_km = (vol.vcp.first_gate_range_m + vol.vcp.gate_spacing_m * g) / 1000.0;
    if (slant_km >
        max_analysis_range_km(vol.vcp.elevation_angles_deg.front(), vol.site.antenna_height_m, cfg.height_ceiling_km))
        return false;
    if (beam_height_km(slant_km, s.elevation_deg, vol.site.antenna_height_m) > cfg.height_ceiling_km) return false;
    const auto z = s.z.value(r, g);
    if (!z.has_value() || *z < cfg.z_min_dbz) return false;
    const auto v = s.v.value(r, g);
    if (!v.has_value() || *v > cfg.v_max_abs_ms || *v < -cfg.v_max_abs_ms) return false;
    if (cfg.use_spectrum_width) {
        const auto w = s.w.value(r, g);
        if (!w.has_value() || *w > *cfg.w_max_ms) return false;
    }
    return true;
}

void randomize_sweep(VolumeScan& vol, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> z_raw(500, 4000);  // 5..40 dBZ
    std::uniform_int_distribution<int> v_raw(-1200, 1200); // -12..12 m/s
    std::uniform_int_distribution<int> w_raw(0, 1000);
    std::uniform_real_distribution<double> p01(0.0, 1.0);
    for (auto& s : vol.sweeps) {
        for (std::size_t r = 0; r < s.rays(); ++r) {
            for (std::size_t g = 0; g < s.gates(); ++g) {
                if (p01(rng) < 0.2) continue;
                s.z.set_raw(r, g, static_cast<std::int16_t>(z_raw(rng)));
                s.v.set_raw(r, g, static_cast<std::int16_t>(v_raw(rng)));
                s.w.set_raw(r, g, static_cast<std::int16_t>(w_raw(rng)));
            }
        }
    }
}

} // namespace

TEST_CASE("representative gates: retained and removed") {
    VolumeScan vol = small_volume();
    vol.sweeps[0].z.set_value(3, 5, 27.11);
    vol.sweeps[0].v.set_value(3, 5, 3.47);
    vol.sweeps[0].z.set_value(4, 5, 14.99);
    vol.sweeps[0].v.set_value(4, 5, 0.0);
    const GateMask m = apply_gate_filters(vol, 0, FilterConfig{});
    CHECK(m.at(3, 5));       // above every threshold, height ~0.12 km
    CHECK_FALSE(m.at(4, 5)); // just under the +15 dBZ floor
}

TEST_CASE("missing data never passes a threshold") {
    VolumeScan vol = small_volume();
    vol.sweeps[0].z.set_value(1, 1, 30.0); // V missing
    vol.sweeps[0].v.set_value(2, 2, 1.0);  // Z missing
    const GateMask m = apply_gate_filters(vol, 0, FilterConfig{});
    CHECK(m.count() == 0);
}

TEST_CASE("spectrum width is off by default, enforced when enabled") {
    VolumeScan vol = small_volume();
    vol.sweeps[0].z.set_value(0, 0, 30.0);
    vol.sweeps[0].v.set_value(0, 0, 1.0);
    vol.sweeps[0].w.set_value(0, 0, 9.0);
    CHECK(apply_gate_filters(vol, 0, FilterConfig{}).at(0, 0));

    FilterConfig with_w;
    with_w.use_spectrum_width = true;
    with_w.w_max_ms = 5.0;
    CHECK_FALSE(apply_gate_filters(vol, 0, with_w).at(0, 0));
    with_w.w_max_ms = 10.0;
    CHECK(apply_gate_filters(vol, 0, with_w).at(0, 0));

    FilterConfig broken;
    broken.use_spectrum_width = true; // w_max_ms missing
    CHECK_THROWS_AS(apply_gate_filters(vol, 0, broken), ValidationError);
}

TEST_CASE("mask equals the per-gate oracle on random sweeps") {
    std::mt19937_64 rng(55);
    for (int i = 0; i < 30; ++i) {
        VolumeScan vol = small_volume();
        randomize_sweep(vol, rng);
        FilterConfig cfg;
        cfg.z_min_dbz = 10.0 + 15.0 * std::uniform_real_distribution<double>(0, 1)(rng);
        cfg.v_max_abs_ms = 2.0 + 8.0 * std::uniform_real_distribution<double>(0, 1)(rng);
        const GateMask m = apply_gate_filters(vol, 0, cfg);
        for (std::size_t r = 0; r < 20; ++r)
            for (std::size_t g = 0; g < 30; ++g)
                CHECK(m.at(r, g) == oracle_retained(vol, 0, r, g, cfg));
    }
}

TEST_CASE("tightening any threshold never adds gates") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 50; ++i) {
        VolumeScan vol = small_volume();
        randomize_sweep(vol, rng);
        FilterConfig base;
        base.z_min_dbz = 12.0;
        base.v_max_abs_ms = 8.0;
        FilterConfig tight = base;
        switch (i % 3) {
            case 0: tight.z_min_dbz += 5.0; break;
            case 1: tight.v_max_abs_ms -= 3.0; break;
            case 2: tight.height_ceiling_km = 1.0; break;
        }
        const GateMask mb = apply_gate_filters(vol, 0, base);
        const GateMask mt = apply_gate_filters(vol, 0, tight);
        for (std::size_t k = 0; k < mb.retained.size(); ++k)
            if (mt.retained[k]) CHECK(mb.retained[k]);
    }
}

TEST_CASE("reordering ray contents permutes the mask identically") {
    std::mt19937_64 rng(88);
    VolumeScan vol = small_volume();
    randomize_sweep(vol, rng);
    const GateMask m1 = apply_gate_filters(vol, 0, FilterConfig{});

    VolumeScan rev = small_volume();
    Sweep& s = vol.sweeps[0];
    Sweep& d = rev.sweeps[0];
    for (std::size_t r = 0; r < 20; ++r) {
        for (std::size_t g = 0; g < 30; ++g) {
            d.z.set_raw(19 - r, g, s.z.raw(r, g));
            d.v.set_raw(19 - r, g, s.v.raw(r, g));
            d.w.set_raw(19 - r, g, s.w.raw(r, g));
        }
    }
    const GateMask m2 = apply_gate_filters(rev, 0, FilterConfig{});
    for (std::size_t r = 0; r < 20; ++r)
        for (std::size_t g = 0; g < 30; ++g)
            CHECK(m1.at(r, g) == m2.at(19 - r, g));
}

TEST_CASE("azimuth seam: gates on the first and last ray join into one cluster") {
    GateMask m(20, 30);
    m.set(19, 7, true);
    m.set(0, 7, true);
    const auto comps = label_clusters(m, Connectivity::FOUR);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].size() == 2);
}

TEST_CASE("isolated gate forms a singleton cluster") {
    GateMask m(20, 30);
    m.set(5, 5, true);
    const auto comps = label_clusters(m, Connectivity::FOUR);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].size() == 1);
}

TEST_CASE("diagonal gates merge only under EIGHT-connectivity") {
    GateMask m(20, 30);
    m.set(3, 3, true);
    m.set(4, 4, true);
    CHECK(label_clusters(m, Connectivity::FOUR).size() == 2);
    CHECK(label_clusters(m, Connectivity::EIGHT).size() == 1);
}

TEST_CASE("labeling matches the recursive flood-fill oracle on random masks") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 50; ++i) {
        const GateMask m = oracles::random_mask(rng, 20, 30, 0.35);
        for (Connectivity c : {Connectivity::FOUR, Connectivity::EIGHT}) {
            const auto got = oracles::canonical(label_clusters(m, c));
            const auto want = oracles::flood_fill_components(m, c);
            CHECK(got == want);
        }
    }
}

TEST_CASE("degenerate lattice shapes label without double-visits") {
    const std::vector<std::pair<std::size_t, std::size_t>> shapes{{1, 5}, {2, 5}, {5, 1}, {1, 1}};
    for (auto [nr, ng] : shapes) {
        std::mt19937_64 rng(nr * 100 + ng);
        const GateMask m = oracles::random_mask(rng, nr, ng, 0.6);
        for (Connectivity c : {Connectivity::FOUR, Connectivity::EIGHT}) {
            const auto got = oracles::canonical(label_clusters(m, c));
            const auto want = oracles::flood_fill_components(m, c);
            CHECK(got == want);
            std::size_t total = 0;
            for (const auto& comp : got) total += comp.size();
            CHECK(total == m.count());
        }
    }
}

TEST_CASE("clusters under the size floor are dropped") {
    VolumeScan vol = small_volume();
    for (std::size_t g = 5; g < 9; ++g) { // 4 gates in a row
        vol.sweeps[0].z.set_value(10, g, 25.0);
        vol.sweeps[0].v.set_value(10, g, 2.0);
    }
    CHECK(extract_clusters(vol, FilterConfig{}).empty());

    vol.sweeps[0].z.set_value(10, 9, 25.0); // fifth gate
    vol.sweeps[0].v.set_value(10, 9, 2.0);
    const auto clusters = extract_clusters(vol, FilterConfig{});
    REQUIRE(clusters.size() == 1);
    CHECK(clusters[0].gate_count == 5);
    CHECK(clusters[0].mean_reflectivity_dbz == doctest::Approx(25.0));
    CHECK(clusters[0].mean_radial_velocity_ms == doctest::Approx(2.0));
    CHECK(clusters[0].time_utc == vol.start_time_utc);
    // centroid sits near the middle gate of the run (~1.75 km north-ish at az 180)
    CHECK(clusters[0].centroid_height_km < 0.2);
}

TEST_CASE("all-NO_DATA volume yields no clusters; empty volume throws") {
    CHECK(extract_clusters(small_volume(), FilterConfig{}).empty());
    VolumeScan empty;
    CHECK_THROWS_AS(extract_clusters(empty, FilterConfig{}), EmptyVolume);
}

TEST_CASE("cluster gate sets are connected and maximal") {
    std::mt19937_64 rng(123);
    VolumeScan vol = small_volume();
    randomize_sweep(vol, rng);
    FilterConfig cfg;
    cfg.min_cluster_gates = 1;
    const auto clusters = extract_clusters(vol, cfg);
    const GateMask mask = apply_gate_filters(vol, 0, cfg);
    const auto want = oracles::flood_fill_components(mask, cfg.connectivity);
    std::vector<std::vector<GateIndex>> got;
    for (const auto& c : clusters) got.push_back(c.gates);
    CHECK(oracles::canonical(got) == want);
}

TEST_CASE("cluster ordering: descending size, deterministic ties") {
    VolumeScan vol = small_volume();
    auto put = [&](std::size_t r, std::size_t g) {
        vol.sweeps[0].z.set_value(r, g, 20.0);
        vol.sweeps[0].v.set_value(r, g, 1.0);
    };
    for (std::size_t g = 0; g < 6; ++g) put(2, g);  // 6 gates
    for (std::size_t g = 0; g < 5; ++g) put(8, g);  // 5 gates
    for (std::size_t g = 0; g < 5; ++g) put(14, g); // 5 gates
    const auto clusters = extract_clusters(vol, FilterConfig{});
    REQUIRE(clusters.size() == 3);
    CHECK(clusters[0].gate_count == 6);
    CHECK(clusters[1].gates.front().ray == 8);
    CHECK(clusters[2].gates.front().ray == 14);
    CHECK(clusters[0].cluster_id == 0);
    CHECK(clusters[2].cluster_id == 2);
}

TEST_CASE("filter summary arithmetic") {
    CHECK(filter_summary({}).cluster_count == 0);

    EchoCluster a;
    a.cluster_id = 0;
    a.gate_count = 30;
    a.mean_reflectivity_dbz = 30.0;
    EchoCluster b;
    b.cluster_id = 1;
    b.gate_count = 10;
    b.mean_reflectivity_dbz = 20.0;
    const FilterSummary s = filter_summary({a, b});
    CHECK(s.cluster_count == 2);
    CHECK(s.total_gates == 40);
    CHECK(s.mean_of_cluster_mean_dbz == doctest::Approx(25.0));
    CHECK(s.largest_cluster_id == 0);

    const FilterSummary one = filter_summary({a});
    CHECK(one.total_gates == 30);
    CHECK(one.mean_of_cluster_mean_dbz == doctest::Approx(30.0));
}
