#pragma once

// Serialization of pipeline artifacts: CSV tables, GeoJSON features, scene
// specs, ground-truth sidecars, and VCP curve exports. CSV bodies are
// RFC-4180 rows; '#'-prefixed preamble lines carry provenance.

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "locustradar/crosscheck.hpp"
#include "locustradar/echo_filter.hpp"
#include "locustradar/products.hpp"
#include "locustradar/scene_simulator.hpp"
#include "locustradar/svol_io.hpp"
#include "locustradar/swarm_tracker.hpp"

namespace locust {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

inline void write_csv_preamble(std::ostream& out, const json& provenance) {
    out << "# tool_version " << kToolVersion << "\n";
    if (!provenance.is_null()) out << "# config " << provenance.dump() << "\n";
}

inline std::string fmt(double v) { return detail::format_double(v); }

// ---- clusters ----

inline void clusters_to_csv(const std::vector<EchoCluster>& clusters, std::ostream& out,
                            const json& provenance = nullptr) {
    write_csv_preamble(out, provenance);
    out << "time_utc,cluster_id,gate_count,mean_dbz,mean_linear_dbz,mean_v_ms,centroid_lat,centroid_lon,"
           "centroid_height_km\n";
    for (const EchoCluster& c : clusters)
        out << format_utc(c.time_utc) << ',' << c.cluster_id << ',' << c.gate_count << ','
            << fmt(c.mean_reflectivity_dbz) << ',' << fmt(c.mean_reflectivity_linear_dbz) << ','
            << fmt(c.mean_radial_velocity_ms) << ',' << fmt(c.centroid_latitude_deg) << ','
            << fmt(c.centroid_longitude_deg) << ',' << fmt(c.centroid_height_km) << "\n";
}

inline json clusters_to_geojson(const std::vector<EchoCluster>& clusters, const json& provenance = nullptr) {
    json features = json::array();
    for (const EchoCluster& c : clusters) {
        features.push_back({{"type", "Feature"},
                            {"geometry",
                             {{"type", "Point"},
                              {"coordinates", {c.centroid_longitude_deg, c.centroid_latitude_deg}}}},
                            {"properties",
                             {{"time_utc", format_utc(c.time_utc)},
                              {"cluster_id", c.cluster_id},
                              {"gate_count", c.gate_count},
                              {"mean_dbz", c.mean_reflectivity_dbz},
                              {"mean_v_ms", c.mean_radial_velocity_ms},
                              {"centroid_height_km", c.centroid_height_km}}}});
    }
    json out = {{"type", "FeatureCollection"}, {"features", features}};
    if (!provenance.is_null()) out["provenance"] = provenance;
    return out;
}

// ---- tracks ----

inline std::string track_status_name(TrackStatus s) { return s == TrackStatus::ACTIVE ? "ACTIVE" : "ENDED"; }

inline json track_to_json(const SwarmTrack& t) {
    json obs = json::array();
    for (const TrackObservation& o : t.observations)
        obs.push_back({{"time_utc", format_utc(o.time_utc)},
                       {"cluster_id", o.cluster_id},
                       {"gate_count", o.gate_count},
                       {"mean_dbz", o.mean_reflectivity_dbz},
                       {"lat", o.latitude_deg},
                       {"lon", o.longitude_deg},
                       {"height_km", o.height_km}});
    json j = {{"track_id", t.track_id}, {"status", track_status_name(t.status)}, {"observations", obs}};
    if (t.observations.size() >= 2) {
        const TrackKinematics k = track_kinematics(t);
        j["kinematics"] = {{"path_length_km", k.path_length_km},
                           {"net_displacement_km", k.net_displacement_km},
                           {"duration_s", k.duration_s},
                           {"mean_speed_ms", k.mean_speed_ms},
                           {"net_speed_ms", k.net_speed_ms},
                           {"mean_heading_deg", k.mean_heading_deg}};
    }
    return j;
}

inline SwarmTrack track_from_json(const json& j) {
    SwarmTrack t;
    t.track_id = j.at("track_id").get<int>();
    t.status = j.at("status").get<std::string>() == "ACTIVE" ? TrackStatus::ACTIVE : TrackStatus::ENDED;
    for (const json& o : j.at("observations")) {
        TrackObservation obs;
        obs.time_utc = parse_utc(o.at("time_utc").get<std::string>());
        obs.cluster_id = o.at("cluster_id").get<int>();
        obs.gate_count = o.at("gate_count").get<std::size_t>();
        obs.mean_reflectivity_dbz = o.at("mean_dbz").get<double>();
        obs.latitude_deg = o.at("lat").get<double>();
        obs.longitude_deg = o.at("lon").get<double>();
        obs.height_km = o.at("height_km").get<double>();
        t.observations.push_back(obs);
    }
    return t;
}

inline json site_to_json(const RadarSite& s) {
    return {{"site_id", s.site_id},
            {"latitude_deg", s.latitude_deg},
            {"longitude_deg", s.longitude_deg},
            {"antenna_height_m", s.antenna_height_m},
            {"band", band_name(s.band)}};
}

inline RadarSite site_from_json(const json& j) {
    RadarSite s;
    s.site_id = j.at("site_id").get<std::string>();
    s.latitude_deg = j.at("latitude_deg").get<double>();
    s.longitude_deg = j.at("longitude_deg").get<double>();
    s.antenna_height_m = j.at("antenna_height_m").get<double>();
    s.band = band_from_name(j.at("band").get<std::string>());
    return s;
}

inline json tracks_to_json(const std::vector<SwarmTrack>& tracks, const json& provenance = nullptr,
                           const RadarSite* site = nullptr) {
    json arr = json::array();
    for (const SwarmTrack& t : tracks) arr.push_back(track_to_json(t));
    json out = {{"tracks", arr}};
    if (site) out["site"] = site_to_json(*site);
    if (!provenance.is_null()) out["provenance"] = provenance;
    return out;
}

inline std::vector<SwarmTrack> tracks_from_json(const json& j) {
    std::vector<SwarmTrack> out;
    for (const json& t : j.at("tracks")) out.push_back(track_from_json(t));
    return out;
}

inline json tracks_to_geojson(const std::vector<SwarmTrack>& tracks, const json& provenance = nullptr) {
    json features = json::array();
    for (const SwarmTrack& t : tracks) {
        json props = {{"track_id", t.track_id},
                      {"status", track_status_name(t.status)},
                      {"n_observations", t.observations.size()}};
        json geometry;
        if (t.observations.size() >= 2) {
            const TrackKinematics k = track_kinematics(t);
            props["mean_speed_ms"] = k.mean_speed_ms;
            props["net_speed_ms"] = k.net_speed_ms;
            props["heading_deg"] = k.mean_heading_deg;
            props["duration_s"] = k.duration_s;
            json coords = json::array();
            for (const TrackObservation& o : t.observations)
                coords.push_back({o.longitude_deg, o.latitude_deg});
            geometry = {{"type", "LineString"}, {"coordinates", coords}};
        } else {
            geometry = {{"type", "Point"},
                        {"coordinates",
                         {t.observations.front().longitude_deg, t.observations.front().latitude_deg}}};
        }
        features.push_back({{"type", "Feature"}, {"geometry", geometry}, {"properties", props}});
    }
    json out = {{"type", "FeatureCollection"}, {"features", features}};
    if (!provenance.is_null()) out["provenance"] = provenance;
    return out;
}

inline void tracks_to_csv(const std::vector<SwarmTrack>& tracks, std::ostream& out,
                          const json& provenance = nullptr) {
    write_csv_preamble(out, provenance);
    out << "track_id,status,n_observations,start_utc,end_utc,duration_s,path_length_km,net_displacement_km,"
           "mean_speed_ms,net_speed_ms,heading_deg\n";
    for (const SwarmTrack& t : tracks) {
        TrackKinematics k;
        if (t.observations.size() >= 2) k = track_kinematics(t);
        out << t.track_id << ',' << track_status_name(t.status) << ',' << t.observations.size() << ','
            << format_utc(t.observations.front().time_utc) << ',' << format_utc(t.observations.back().time_utc)
            << ',' << fmt(k.duration_s) << ',' << fmt(k.path_length_km) << ',' << fmt(k.net_displacement_km)
            << ',' << fmt(k.mean_speed_ms) << ',' << fmt(k.net_speed_ms) << ',' << fmt(k.mean_heading_deg)
            << "\n";
    }
}

// ---- crosscheck ----

inline json crosscheck_to_json(const CrossCheckReport& r) {
    json stations = json::array();
    for (const StationCheck& s : r.stations_checked)
        stations.push_back({{"station_id", s.station_id}, {"distance_km", s.distance_km},
                            {"rainfall_mm", s.rainfall_mm}});
    return {{"track_id", r.track_id},
            {"rain_verdict", rain_verdict_name(r.rain_verdict)},
            {"stations_checked", stations},
            {"wind_verdict", wind_verdict_name(r.wind_verdict)},
            {"wind_alignment_deg", r.wind_alignment_deg},
            {"wind_bearing_deg", r.wind_bearing_deg},
            {"track_heading_deg", r.track_heading_deg}};
}

// ---- grids ----

inline void composite_to_csv(const CompositeGrid& grid, std::ostream& out, const json& provenance = nullptr) {
    write_csv_preamble(out, provenance);
    out << "ray,gate,max_z_dbz\n";
    for (std::size_t r = 0; r < grid.z.rays(); ++r)
        for (std::size_t g = 0; g < grid.z.gates(); ++g)
            if (auto z = grid.z.value(r, g)) out << r << ',' << g << ',' << fmt(*z) << "\n";
}

inline void slice_to_csv(const VerticalSlice& slice, std::ostream& out, const json& provenance = nullptr) {
    write_csv_preamble(out, provenance);
    out << "height_km,lon_deg,max_z_dbz\n";
    for (std::size_t ih = 0; ih < slice.n_height; ++ih)
        for (std::size_t il = 0; il < slice.n_lon; ++il)
            if (slice.populated(ih, il))
                out << fmt((static_cast<double>(ih) + 0.5) * slice.height_bin_km) << ','
                    << fmt(slice.lon_min_deg + (static_cast<double>(il) + 0.5) * slice.lon_bin_deg) << ','
                    << fmt(slice.at(ih, il)) << "\n";
}

/// Beam-height curve per elevation angle, out to the last gate.
inline void vcp_curves_to_csv(const VcpDefinition& vcp, double antenna_height_m, std::ostream& out,
                              const json& provenance = nullptr) {
    write_csv_preamble(out, provenance);
    out << "elevation_deg,range_km,height_km\n";
    const double max_range_km =
        gate_range_m(vcp.first_gate_range_m, vcp.gate_spacing_m, vcp.gates_per_ray - 1) / 1000.0;
    for (double el : vcp.elevation_angles_deg)
        for (double s = 0.0; s <= max_range_km + 1e-9; s += 1.0)
            out << fmt(el) << ',' << fmt(s) << ',' << fmt(beam_height_km(s, el, antenna_height_m)) << "\n";
}

// ---- scene specs & ground truth ----

inline json scene_spec_to_json(const SceneSpec& spec) {
    json swarms = json::array();
    for (const SwarmSpec& s : spec.swarms) {
        json j = {{"latitude_deg", s.latitude_deg},   {"longitude_deg", s.longitude_deg},
                  {"layer_base_km", s.layer_base_km}, {"layer_depth_m", s.layer_depth_m},
                  {"radius_km", s.radius_km},         {"mean_dbz", s.mean_dbz},
                  {"dbz_spread", s.dbz_spread},       {"ground_speed_ms", s.ground_speed_ms},
                  {"heading_deg", s.heading_deg}};
        if (s.target_gate_count) j["target_gate_count"] = *s.target_gate_count;
        swarms.push_back(j);
    }
    json storms = json::array();
    for (const StormSpec& s : spec.storms)
        storms.push_back({{"latitude_deg", s.latitude_deg}, {"longitude_deg", s.longitude_deg},
                          {"top_km", s.top_km},             {"core_dbz", s.core_dbz},
                          {"dbz_spread", s.dbz_spread},     {"radius_km", s.radius_km},
                          {"speed_ms", s.speed_ms},         {"heading_deg", s.heading_deg}});
    return {{"site",
             {{"site_id", spec.site.site_id},
              {"latitude_deg", spec.site.latitude_deg},
              {"longitude_deg", spec.site.longitude_deg},
              {"antenna_height_m", spec.site.antenna_height_m},
              {"band", band_name(spec.site.band)}}},
            {"vcp",
             {{"elevation_angles_deg", spec.vcp.elevation_angles_deg},
              {"first_gate_range_m", spec.vcp.first_gate_range_m},
              {"gate_spacing_m", spec.vcp.gate_spacing_m},
              {"gates_per_ray", spec.vcp.gates_per_ray},
              {"rays_per_sweep", spec.vcp.rays_per_sweep}}},
            {"start_time_utc", format_utc(spec.start_time_utc)},
            {"n_volumes", spec.n_volumes},
            {"cadence_s", spec.cadence_s},
            {"swarms", swarms},
            {"storms", storms},
            {"noise",
             {{"speckle_probability", spec.noise.speckle_probability},
              {"dbz_min", spec.noise.dbz_min},
              {"dbz_max", spec.noise.dbz_max}}},
            {"rng_seed", spec.rng_seed}};
}

inline SceneSpec scene_spec_from_json(const json& j) {
    try {
        SceneSpec spec;
        const json& site = j.at("site");
        spec.site.site_id = site.at("site_id").get<std::string>();
        spec.site.latitude_deg = site.at("latitude_deg").get<double>();
        spec.site.longitude_deg = site.at("longitude_deg").get<double>();
        spec.site.antenna_height_m = site.at("antenna_height_m").get<double>();
        spec.site.band = band_from_name(site.at("band").get<std::string>());
        const json& vcp = j.at("vcp");
        spec.vcp.elevation_angles_deg = vcp.at("elevation_angles_deg").get<std::vector<double>>();
        spec.vcp.first_gate_range_m = vcp.at("first_gate_range_m").get<double>();
        spec.vcp.gate_spacing_m = vcp.at("gate_spacing_m").get<double>();
        spec.vcp.gates_per_ray = vcp.at("gates_per_ray").get<std::size_t>();
        spec.vcp.rays_per_sweep = vcp.at("rays_per_sweep").get<std::size_t>();
        spec.start_time_utc = parse_utc(j.at("start_time_utc").get<std::string>());
        spec.n_volumes = j.at("n_volumes").get<std::size_t>();
        spec.cadence_s = j.value("cadence_s", 600.0);
        for (const json& s : j.value("swarms", json::array())) {
            SwarmSpec sw;
            sw.latitude_deg = s.at("latitude_deg").get<double>();
            sw.longitude_deg = s.at("longitude_deg").get<double>();
            sw.layer_base_km = s.value("layer_base_km", sw.layer_base_km);
            sw.layer_depth_m = s.value("layer_depth_m", sw.layer_depth_m);
            sw.radius_km = s.value("radius_km", sw.radius_km);
            sw.mean_dbz = s.value("mean_dbz", sw.mean_dbz);
            sw.dbz_spread = s.value("dbz_spread", sw.dbz_spread);
            sw.ground_speed_ms = s.value("ground_speed_ms", sw.ground_speed_ms);
            sw.heading_deg = s.value("heading_deg", sw.heading_deg);
            if (s.contains("target_gate_count")) sw.target_gate_count = s.at("target_gate_count").get<std::size_t>();
            spec.swarms.push_back(sw);
        }
        for (const json& s : j.value("storms", json::array())) {
            StormSpec st;
            st.latitude_deg = s.at("latitude_deg").get<double>();
            st.longitude_deg = s.at("longitude_deg").get<double>();
            st.top_km = s.value("top_km", st.top_km);
            st.core_dbz = s.value("core_dbz", st.core_dbz);
            st.dbz_spread = s.value("dbz_spread", st.dbz_spread);
            st.radius_km = s.value("radius_km", st.radius_km);
            st.speed_ms = s.value("speed_ms", st.speed_ms);
            st.heading_deg = s.value("heading_deg", st.heading_deg);
            spec.storms.push_back(st);
        }
        if (j.contains("noise")) {
            const json& n = j.at("noise");
            spec.noise.speckle_probability = n.value("speckle_probability", 0.0);
            spec.noise.dbz_min = n.value("dbz_min", spec.noise.dbz_min);
            spec.noise.dbz_max = n.value("dbz_max", spec.noise.dbz_max);
        }
        spec.rng_seed = j.value("rng_seed", std::uint64_t{1});
        return spec;
    } catch (const json::exception& e) {
        throw SpecError(std::string("bad scene spec: ") + e.what());
    }
}

inline json ground_truth_to_json(const GroundTruth& truth) {
    json volumes = json::array();
    for (const VolumeTruth& vt : truth.volumes) {
        json objects = json::array();
        for (const ObjectTruth& o : vt.objects) {
            json gates = json::array();
            for (const TruthGate& g : o.gates) gates.push_back({g.sweep, g.ray, g.gate});
            objects.push_back({{"label", o.label},
                               {"kind", o.kind == ObjectKind::SWARM ? "swarm" : "storm"},
                               {"centroid_lat", o.centroid_latitude_deg},
                               {"centroid_lon", o.centroid_longitude_deg},
                               {"gates", gates}});
        }
        volumes.push_back({{"time_utc", format_utc(vt.time_utc)}, {"objects", objects}});
    }
    return {{"volumes", volumes}};
}

// ---- file helpers ----

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("write failed: '" + path + "'");
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string(e.what()) + " in '" + path + "'");
    }
}

} // namespace locust
