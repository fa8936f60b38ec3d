#pragma once

// Synthetic volume-scan generator with exact ground truth. Objects are
// cylinders (horizontal disk x vertical span), which keeps their gate sets
// analytically checkable. Radial velocity is the signed projection of the
// object's ground motion onto the beam azimuth, so |V| at an object gate
// never exceeds its ground speed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "locustradar/echo_filter.hpp"
#include "locustradar/errors.hpp"
#include "locustradar/geo.hpp"
#include "locustradar/volume.hpp"

namespace locust {

struct SwarmSpec {
    double latitude_deg = 0.0; // initial centroid
    double longitude_deg = 0.0;
    double layer_base_km = 1.0;   // MSL
    double layer_depth_m = 100.0; // stratified layers, typically 50-150 m
    double radius_km = 10.0;
    double mean_dbz = 27.11;
    double dbz_spread = 3.0;
    double ground_speed_ms = 4.8; // known flying speed band is 4.4-5.3 m/s
    double heading_deg = 90.0;
    std::optional<std::size_t> target_gate_count; // sizes radius on the lowest sweep

    double layer_top_km() const { return layer_base_km + layer_depth_m / 1000.0; }

    void validate() const {
        if (layer_top_km() > 2.0) throw SpecError("swarm layer top above 2 km");
        if (layer_depth_m <= 0.0) throw SpecError("swarm layer depth must be positive");
        if (ground_speed_ms < 0.0) throw SpecError("swarm ground speed must be >= 0");
        if (radius_km <= 0.0 && !target_gate_count) throw SpecError("swarm radius must be positive");
    }
};

struct StormSpec {
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double top_km = 4.5;
    double core_dbz = 40.0;
    double dbz_spread = 3.0;
    double radius_km = 8.0;
    double speed_ms = 3.5; // monsoon convection moves at 3-4 m/s
    double heading_deg = 45.0;

    void validate() const {
        if (top_km <= 2.0) throw SpecError("storm top must exceed 2 km");
        if (top_km > 5.0) throw SpecError("storm top above 5 km");
        if (core_dbz < 35.0) throw SpecError("storm core below 35 dBZ");
        if (radius_km <= 0.0) throw SpecError("storm radius must be positive");
        if (speed_ms < 0.0) throw SpecError("storm speed must be >= 0");
    }
};

struct NoiseSpec {
    double speckle_probability = 0.0; // per gate, per volume
    double dbz_min = 5.0;
    double dbz_max = 20.0;
};

struct SceneSpec {
    RadarSite site;
    VcpDefinition vcp;
    UtcSeconds start_time_utc = 0;
    std::size_t n_volumes = 54;
    double cadence_s = 600.0;
    std::vector<SwarmSpec> swarms;
    std::vector<StormSpec> storms;
    NoiseSpec noise;
    std::uint64_t rng_seed = 1;

    void validate() const {
        site.validate();
        vcp.validate();
        if (n_volumes < 1) throw SpecError("n_volumes must be >= 1");
        if (cadence_s <= 0.0) throw SpecError("cadence must be positive");
        if (noise.speckle_probability < 0.0 || noise.speckle_probability > 1.0)
            throw SpecError("speckle probability out of [0, 1]");
        if (noise.dbz_max < noise.dbz_min) throw SpecError("noise dBZ range inverted");
        for (const auto& s : swarms) s.validate();
        for (const auto& s : storms) s.validate();
    }
};

enum class ObjectKind { SWARM, STORM };

struct TruthGate {
    std::size_t sweep;
    std::size_t ray;
    std::size_t gate;
    auto operator<=>(const TruthGate&) const = default;
};

struct ObjectTruth {
    std::string label;
    ObjectKind kind = ObjectKind::SWARM;
    double centroid_latitude_deg = 0.0;
    double centroid_longitude_deg = 0.0;
    std::vector<TruthGate> gates;
};

struct VolumeTruth {
    UtcSeconds time_utc = 0;
    std::vector<ObjectTruth> objects;

    std::vector<const ObjectTruth*> of_kind(ObjectKind k) const {
        std::vector<const ObjectTruth*> out;
        for (const auto& o : objects)
            if (o.kind == k) out.push_back(&o);
        return out;
    }
};

struct GroundTruth {
    std::vector<VolumeTruth> volumes;
};

struct SceneResult {
    std::vector<VolumeScan> volumes;
    GroundTruth truth;
    SceneSpec resolved_spec; // target_gate_count replaced by the sized radius
};

namespace sim_detail {

struct CylinderAtTime {
    double lat_deg;
    double lon_deg;
    double radius_km;
    double z_lo_km; // MSL
    double z_hi_km;
    double speed_ms;
    double heading_deg;
};

inline geo::LatLon advance(double lat, double lon, double heading_deg, double speed_ms, double elapsed_s) {
    return geo::destination_point(lat, lon, heading_deg, speed_ms * elapsed_s / 1000.0);
}

/// Enumerates the gates of one sweep intersecting the cylinder. The visitor
/// receives (ray, gate, azimuth_deg); candidate windows are derived from the
/// cylinder's range/azimuth extent, membership is tested exactly.
template <typename Visit>
void for_each_cylinder_gate(const RadarSite& site, const VcpDefinition& vcp, double elevation_deg,
                            const std::vector<double>& azimuths, const CylinderAtTime& c, Visit&& visit) {
    const double dist_km =
        geo::haversine_km(site.latitude_deg, site.longitude_deg, c.lat_deg, c.lon_deg);
    const double cos_el = std::cos(geo::deg2rad(elevation_deg));
    const double ground_lo = std::max(0.0, dist_km - c.radius_km);
    const double ground_hi = dist_km + c.radius_km;
    const double slant_lo_m = ground_lo / cos_el * 1000.0;
    const double slant_hi_m = ground_hi / cos_el * 1000.0;

    long g_lo = static_cast<long>(std::floor((slant_lo_m - vcp.first_gate_range_m) / vcp.gate_spacing_m));
    long g_hi = static_cast<long>(std::ceil((slant_hi_m - vcp.first_gate_range_m) / vcp.gate_spacing_m));
    if (g_lo < 0) g_lo = 0;
    if (g_hi >= static_cast<long>(vcp.gates_per_ray)) g_hi = static_cast<long>(vcp.gates_per_ray) - 1;
    if (g_lo > g_hi) return;

    double az_half_deg = 181.0;
    double bearing = 0.0;
    if (dist_km > c.radius_km) {
        bearing = geo::initial_bearing_deg(site.latitude_deg, site.longitude_deg, c.lat_deg, c.lon_deg);
        az_half_deg = geo::rad2deg(std::asin(std::min(1.0, c.radius_km / dist_km))) + 2.0; // margin
    }

    for (std::size_t r = 0; r < azimuths.size(); ++r) {
        if (az_half_deg <= 180.0 && geo::angular_difference_deg(azimuths[r], bearing) > az_half_deg) continue;
        for (long g = g_lo; g <= g_hi; ++g) {
            const double slant_m = gate_range_m(vcp.first_gate_range_m, vcp.gate_spacing_m, static_cast<std::size_t>(g));
            const GateGeo gg = gate_geolocate(site, azimuths[r], elevation_deg, slant_m);
            if (gg.height_km_msl < c.z_lo_km || gg.height_km_msl > c.z_hi_km) continue;
            if (geo::haversine_km(gg.latitude_deg, gg.longitude_deg, c.lat_deg, c.lon_deg) > c.radius_km) continue;
            visit(r, static_cast<std::size_t>(g), azimuths[r]);
        }
    }
}

inline std::size_t count_lowest_sweep_gates(const RadarSite& site, const VcpDefinition& vcp,
                                            const CylinderAtTime& c) {
    const auto azimuths = VolumeScan::uniform_azimuths(vcp.rays_per_sweep);
    std::size_t n = 0;
    for_each_cylinder_gate(site, vcp, vcp.elevation_angles_deg.front(), azimuths, c,
                           [&](std::size_t, std::size_t, double) { ++n; });
    return n;
}

/// Smallest radius whose lowest-sweep gate count reaches the target.
inline double size_radius_for_gate_count(const RadarSite& site, const VcpDefinition& vcp, CylinderAtTime c,
                                         std::size_t target) {
    double lo = 0.1, hi = 2.0;
    c.radius_km = hi;
    while (count_lowest_sweep_gates(site, vcp, c) < target) {
        lo = hi;
        hi *= 2.0;
        c.radius_km = hi;
        if (hi > 512.0) throw SpecError("target_gate_count unreachable within the scan domain");
    }
    while (hi - lo > 1e-3) {
        c.radius_km = 0.5 * (lo + hi);
        if (count_lowest_sweep_gates(site, vcp, c) < target)
            lo = c.radius_km;
        else
            hi = c.radius_km;
    }
    return hi;
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xbf58476d1ce4e5b9ULL);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    return x;
}

} // namespace sim_detail

inline SceneResult simulate_scene(const SceneSpec& spec_in) {
    spec_in.validate();
    SceneSpec spec = spec_in;
    spec.vcp.cadence_s = spec.cadence_s;

    // Resolve target-sized swarm radii against the initial position.
    for (auto& sw : spec.swarms) {
        if (!sw.target_gate_count) continue;
        sim_detail::CylinderAtTime c{sw.latitude_deg, sw.longitude_deg, 0.0,
                                     sw.layer_base_km,  sw.layer_top_km(), sw.ground_speed_ms,
                                     sw.heading_deg};
        sw.radius_km = sim_detail::size_radius_for_gate_count(spec.site, spec.vcp, c, *sw.target_gate_count);
        sw.target_gate_count.reset();
    }

    SceneResult result;
    result.resolved_spec = spec;
    const auto azimuths = VolumeScan::uniform_azimuths(spec.vcp.rays_per_sweep);

    for (std::size_t vi = 0; vi < spec.n_volumes; ++vi) {
        const double elapsed_s = spec.cadence_s * static_cast<double>(vi);
        const UtcSeconds t = spec.start_time_utc + static_cast<UtcSeconds>(std::llround(elapsed_s));
        VolumeScan vol = make_empty_volume(spec.site, spec.vcp, t);
        VolumeTruth vt;
        vt.time_utc = t;

        auto fill_object = [&](const std::string& label, ObjectKind kind, const sim_detail::CylinderAtTime& c,
                               double mean_dbz, double spread, std::size_t obj_index) {
            ObjectTruth truth;
            truth.label = label;
            truth.kind = kind;
            truth.centroid_latitude_deg = c.lat_deg;
            truth.centroid_longitude_deg = c.lon_deg;
            std::mt19937_64 rng(sim_detail::mix_seed(spec.rng_seed, vi + 1,
                                                     obj_index + (kind == ObjectKind::STORM ? 1000 : 0)));
            std::uniform_real_distribution<double> uz(-1.0, 1.0);
            std::uniform_real_distribution<double> uw(0.4, 1.2);
            for (std::size_t si = 0; si < vol.sweeps.size(); ++si) {
                Sweep& s = vol.sweeps[si];
                sim_detail::for_each_cylinder_gate(
                    spec.site, spec.vcp, s.elevation_deg, azimuths, c,
                    [&](std::size_t r, std::size_t g, double az) {
                        double z = mean_dbz + spread * uz(rng);
                        z = std::clamp(z, -35.0, 80.0);
                        double v = c.speed_ms * std::cos(geo::deg2rad(c.heading_deg - az));
                        v = std::clamp(v, -60.0, 60.0);
                        // stronger echo wins where objects overlap
                        const auto prev = s.z.value(r, g);
                        if (!prev || z > *prev) {
                            s.z.set_value(r, g, z);
                            s.v.set_value(r, g, v);
                            s.w.set_value(r, g, uw(rng));
                        }
                        truth.gates.push_back({si, r, g});
                    });
            }
            vt.objects.push_back(std::move(truth));
        };

        for (std::size_t i = 0; i < spec.swarms.size(); ++i) {
            const SwarmSpec& sw = spec.swarms[i];
            const auto pos =
                sim_detail::advance(sw.latitude_deg, sw.longitude_deg, sw.heading_deg, sw.ground_speed_ms, elapsed_s);
            fill_object("swarm_" + std::to_string(i), ObjectKind::SWARM,
                        {pos.lat_deg, pos.lon_deg, sw.radius_km, sw.layer_base_km, sw.layer_top_km(),
                         sw.ground_speed_ms, sw.heading_deg},
                        sw.mean_dbz, sw.dbz_spread, i);
        }
        for (std::size_t i = 0; i < spec.storms.size(); ++i) {
            const StormSpec& st = spec.storms[i];
            const auto pos =
                sim_detail::advance(st.latitude_deg, st.longitude_deg, st.heading_deg, st.speed_ms, elapsed_s);
            fill_object("storm_" + std::to_string(i), ObjectKind::STORM,
                        {pos.lat_deg, pos.lon_deg, st.radius_km, 0.0, st.top_km, st.speed_ms, st.heading_deg},
                        st.core_dbz, st.dbz_spread, i);
        }

        if (spec.noise.speckle_probability > 0.0) {
            std::mt19937_64 rng(sim_detail::mix_seed(spec.rng_seed, vi + 1, 0xABCDEF));
            std::bernoulli_distribution hit(spec.noise.speckle_probability);
            std::uniform_real_distribution<double> uz(spec.noise.dbz_min, spec.noise.dbz_max);
            std::uniform_real_distribution<double> uv(-15.0, 15.0);
            std::uniform_real_distribution<double> uw(0.0, 5.0);
            for (Sweep& s : vol.sweeps) {
                for (std::size_t r = 0; r < s.rays(); ++r) {
                    for (std::size_t g = 0; g < s.gates(); ++g) {
                        if (!hit(rng)) continue;
                        if (s.z.has_value(r, g)) continue; // speckle never overwrites an object
                        s.z.set_value(r, g, uz(rng));
                        s.v.set_value(r, g, uv(rng));
                        s.w.set_value(r, g, uw(rng));
                    }
                }
            }
        }

        result.volumes.push_back(std::move(vol));
        result.truth.volumes.push_back(std::move(vt));
    }
    return result;
}

struct DetectionScore {
    double precision = 1.0; // of the detected gate set against swarm truth
    double recall = 0.0;
    std::size_t true_positives = 0;
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;
};

/// Gate-level score on the lowest sweep: detected cluster gates vs swarm
/// truth gates. Storm and noise gates retained by the filter count as false
/// positives.
inline DetectionScore score_detection(const VolumeTruth& truth, const std::vector<EchoCluster>& clusters) {
    for (const EchoCluster& c : clusters)
        if (c.time_utc != truth.time_utc)
            throw TimeMismatch("cluster at " + format_utc(c.time_utc) + " scored against truth at " +
                               format_utc(truth.time_utc));
    std::vector<GateIndex> detected;
    for (const EchoCluster& c : clusters) detected.insert(detected.end(), c.gates.begin(), c.gates.end());
    std::sort(detected.begin(), detected.end());
    detected.erase(std::unique(detected.begin(), detected.end()), detected.end());

    std::vector<GateIndex> swarm_truth;
    for (const ObjectTruth& o : truth.objects) {
        if (o.kind != ObjectKind::SWARM) continue;
        for (const TruthGate& g : o.gates)
            if (g.sweep == 0) swarm_truth.push_back({g.ray, g.gate});
    }
    std::sort(swarm_truth.begin(), swarm_truth.end());
    swarm_truth.erase(std::unique(swarm_truth.begin(), swarm_truth.end()), swarm_truth.end());

    std::vector<GateIndex> inter;
    std::set_intersection(detected.begin(), detected.end(), swarm_truth.begin(), swarm_truth.end(),
                          std::back_inserter(inter));
    DetectionScore s;
    s.true_positives = inter.size();
    s.false_positives = detected.size() - inter.size();
    s.false_negatives = swarm_truth.size() - inter.size();
    s.precision = detected.empty() ? 1.0 : static_cast<double>(s.true_positives) / static_cast<double>(detected.size());
    s.recall = swarm_truth.empty() ? 1.0 : static_cast<double>(s.true_positives) / static_cast<double>(swarm_truth.size());
    return s;
}

/// The bundled 2020-07-12 Lucknow-style scenario: one swarm sized to 2880
/// lowest-sweep gates at mean 27.11 dBZ, moving west at 3.47 m/s past the
/// radar's north, 54 volumes spanning roughly 02:32-11:32 UTC.
inline SceneSpec lucknow_20200712_preset() {
    SceneSpec spec;
    spec.site = {"LKN", 26.85, 80.95, 120.0, Band::S};
    spec.vcp.elevation_angles_deg = {0.2, 1.0, 2.0, 3.0, 4.5, 6.0, 9.0, 12.0, 16.0, 21.0};
    spec.vcp.first_gate_range_m = 0.0;
    spec.vcp.gate_spacing_m = 250.0;
    spec.vcp.gates_per_ray = 600;
    spec.vcp.rays_per_sweep = 360;
    spec.start_time_utc = parse_utc("2020-07-12T02:32:10Z");
    spec.n_volumes = 54;
    spec.cadence_s = 611.0; // 53 steps cover the 02:32:10-11:32 window
    SwarmSpec swarm;
    swarm.latitude_deg = 27.75;
    swarm.longitude_deg = 81.521;
    swarm.layer_base_km = 0.70;
    swarm.layer_depth_m = 1050.0;
    swarm.mean_dbz = 27.11;
    swarm.dbz_spread = 3.0;
    swarm.ground_speed_ms = 3.47;
    swarm.heading_deg = 270.0;
    swarm.target_gate_count = 2880;
    spec.swarms.push_back(swarm);
    spec.noise.speckle_probability = 5e-4;
    spec.rng_seed = 20200712;
    return spec;
}

} // namespace locust
