// Command-line front end: simulate synthetic scenes, detect swarm echo
// clusters, build tracks, cross-check against rain/wind extracts, and bundle
// run reports.
//
// Exit codes: 0 success, 1 internal error, 2 bad input or config.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "locustradar/config.hpp"
#include "locustradar/exports.hpp"
#include "locustradar/scene_simulator.hpp"

namespace fs = std::filesystem;
using locust::json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<double> z_min_dbz;
    std::optional<double> v_max_ms;
    std::optional<double> height_ceiling_km;
    std::optional<std::size_t> min_cluster_gates;
    std::string out_dir = ".";
};

void add_common_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "TOML-style run configuration file");
    cmd->add_option("--z-min-dbz", o.z_min_dbz, "override reflectivity floor (dBZ)");
    cmd->add_option("--v-max-ms", o.v_max_ms, "override |radial velocity| bound (m/s)");
    cmd->add_option("--height-ceiling-km", o.height_ceiling_km, "override altitude ceiling (km)");
    cmd->add_option("--min-cluster-gates", o.min_cluster_gates, "override minimum cluster size (gates)");
    cmd->add_option("--out-dir", o.out_dir, "output directory");
}

locust::RunConfig resolve_config(const CommonOpts& o) {
    locust::RunConfig cfg;
    if (!o.config_path.empty()) cfg = locust::load_run_config(o.config_path);
    if (o.z_min_dbz) cfg.filter.z_min_dbz = *o.z_min_dbz;
    if (o.v_max_ms) cfg.filter.v_max_abs_ms = *o.v_max_ms;
    if (o.height_ceiling_km) cfg.filter.height_ceiling_km = *o.height_ceiling_km;
    if (o.min_cluster_gates) cfg.filter.min_cluster_gates = *o.min_cluster_gates;
    cfg.validate();
    return cfg;
}

json provenance(const locust::RunConfig& cfg) {
    return {{"tool_version", locust::kToolVersion}, {"config", cfg.to_json()}};
}

std::string compact_time(locust::UtcSeconds t) {
    std::string s = locust::format_utc(t);
    std::string out;
    for (char c : s)
        if (c != '-' && c != ':') out += c;
    return out;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw locust::IoError("cannot create directory '" + dir + "': " + ec.message());
}

std::vector<std::string> svol_files_sorted_by_time(const std::string& dir) {
    std::vector<std::pair<locust::UtcSeconds, std::string>> found;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".svol")
            found.emplace_back(locust::peek_volume_time(e.path().string()), e.path().string());
    // order by embedded start time, never by filename
    std::sort(found.begin(), found.end());
    std::vector<std::string> out;
    for (auto& [t, p] : found) out.push_back(std::move(p));
    return out;
}

int cmd_simulate(const std::string& spec_path, const std::string& preset, const std::string& out_dir) {
    locust::SceneSpec spec;
    if (!preset.empty()) {
        if (preset != "lucknow_20200712") throw locust::SpecError("unknown preset '" + preset + "'");
        spec = locust::lucknow_20200712_preset();
    } else if (!spec_path.empty()) {
        spec = locust::scene_spec_from_json(locust::read_json_file(spec_path));
    } else {
        throw locust::SpecError("simulate needs --preset or a scene spec path");
    }
    const locust::SceneResult result = locust::simulate_scene(spec);
    ensure_dir(out_dir);
    for (std::size_t i = 0; i < result.volumes.size(); ++i) {
        std::ostringstream name;
        name << "volume_" << compact_time(result.volumes[i].start_time_utc) << ".svol";
        locust::write_volume(result.volumes[i], (fs::path(out_dir) / name.str()).string());
    }
    json spec_echo = locust::scene_spec_to_json(result.resolved_spec);
    spec_echo["provenance"] = {{"tool_version", locust::kToolVersion}};
    locust::write_text_file((fs::path(out_dir) / "scene_spec.json").string(), spec_echo.dump(2) + "\n");
    json truth = locust::ground_truth_to_json(result.truth);
    truth["provenance"] = {{"tool_version", locust::kToolVersion}};
    locust::write_text_file((fs::path(out_dir) / "truth.json").string(), truth.dump(2) + "\n");
    std::cout << "wrote " << result.volumes.size() << " volumes to " << out_dir << "\n";
    return 0;
}

int cmd_detect(const std::vector<std::string>& volume_paths, const CommonOpts& opts) {
    const locust::RunConfig cfg = resolve_config(opts);
    ensure_dir(opts.out_dir);
    const json prov = provenance(cfg);
    for (const std::string& path : volume_paths) {
        const locust::VolumeScan vol = locust::read_volume(path);
        const auto clusters = locust::extract_clusters(vol, cfg.filter);
        const std::string stem = "clusters_" + compact_time(vol.start_time_utc);
        {
            std::ofstream out((fs::path(opts.out_dir) / (stem + ".csv")).string());
            locust::clusters_to_csv(clusters, out, prov);
        }
        locust::write_text_file((fs::path(opts.out_dir) / (stem + ".geojson")).string(),
                                locust::clusters_to_geojson(clusters, prov).dump(2) + "\n");
        std::cout << path << ": " << clusters.size() << " cluster(s)\n";
    }
    return 0;
}

int cmd_track(const std::string& volume_dir, const CommonOpts& opts) {
    const locust::RunConfig cfg = resolve_config(opts);
    const auto files = svol_files_sorted_by_time(volume_dir);
    if (files.empty()) throw locust::IoError("no .svol files in '" + volume_dir + "'");
    ensure_dir(opts.out_dir);
    const json prov = provenance(cfg);

    locust::Tracker tracker(cfg.tracker);
    locust::RadarSite site;
    std::vector<locust::EchoCluster> all_clusters;
    for (const std::string& path : files) {
        const locust::VolumeScan vol = locust::read_volume(path);
        site = vol.site;
        auto clusters = locust::extract_clusters(vol, cfg.filter);
        tracker.update(vol.start_time_utc, clusters);
        all_clusters.insert(all_clusters.end(), clusters.begin(), clusters.end());
    }

    {
        std::ofstream out((fs::path(opts.out_dir) / "clusters.csv").string());
        locust::clusters_to_csv(all_clusters, out, prov);
    }
    locust::write_text_file((fs::path(opts.out_dir) / "tracks.json").string(),
                            locust::tracks_to_json(tracker.tracks(), prov, &site).dump(2) + "\n");
    locust::write_text_file((fs::path(opts.out_dir) / "tracks.geojson").string(),
                            locust::tracks_to_geojson(tracker.tracks(), prov).dump(2) + "\n");
    {
        std::ofstream out((fs::path(opts.out_dir) / "tracks.csv").string());
        locust::tracks_to_csv(tracker.tracks(), out, prov);
    }

    json alerts = json::array();
    for (const locust::SwarmTrack& t : tracker.tracks()) {
        if (t.status != locust::TrackStatus::ACTIVE || t.observations.size() < 2) continue;
        const auto lead_h = locust::lead_time_estimate(t, site);
        if (lead_h && *lead_h <= cfg.alert_lead_time_h)
            alerts.push_back({{"track_id", t.track_id},
                              {"lead_time_h", *lead_h},
                              {"last_seen_utc", locust::format_utc(t.last().time_utc)},
                              {"centroid", {t.last().longitude_deg, t.last().latitude_deg}}});
    }
    locust::write_text_file((fs::path(opts.out_dir) / "alerts.json").string(),
                            json{{"alerts", alerts}, {"provenance", prov}}.dump(2) + "\n");

    std::cout << files.size() << " volumes, " << tracker.tracks().size() << " track(s), " << alerts.size()
              << " alert(s)\n";
    return 0;
}

int cmd_crosscheck(const std::string& tracks_path, const std::string& rain_path,
                   const std::vector<std::string>& wind_paths, const CommonOpts& opts) {
    const locust::RunConfig cfg = resolve_config(opts);
    const json tracks_doc = locust::read_json_file(tracks_path);
    const auto tracks = locust::tracks_from_json(tracks_doc);
    if (!tracks_doc.contains("site")) throw locust::ParseError("tracks file lacks the radar site block");
    const locust::RadarSite site = locust::site_from_json(tracks_doc.at("site"));
    std::vector<locust::RainRecord> rain;
    if (!rain_path.empty()) rain = locust::read_rain_records(rain_path);
    std::vector<locust::WindField> wind;
    for (const std::string& p : wind_paths) wind.push_back(locust::read_wind_field(p));

    json reports = json::array();
    for (const auto& t : tracks) {
        if (t.observations.empty()) continue;
        reports.push_back(locust::crosscheck_to_json(
            locust::crosscheck_track(t, rain, wind, site, cfg.crosscheck)));
    }
    const json out = {{"reports", reports}, {"provenance", provenance(cfg)}};
    ensure_dir(opts.out_dir);
    locust::write_text_file((fs::path(opts.out_dir) / "crosscheck.json").string(), out.dump(2) + "\n");
    std::cout << reports.size() << " report(s)\n";
    return 0;
}

int cmd_report(const std::string& run_dir, const CommonOpts& opts) {
    json bundle = {{"provenance", {{"tool_version", locust::kToolVersion}}}};
    bool any = false;

    std::vector<std::string> cluster_csvs;
    for (const auto& e : fs::directory_iterator(run_dir)) {
        const std::string name = e.path().filename().string();
        if (name.rfind("clusters", 0) == 0 && e.path().extension() == ".csv") cluster_csvs.push_back(e.path().string());
    }
    std::sort(cluster_csvs.begin(), cluster_csvs.end());
    if (!cluster_csvs.empty()) {
        json rows = json::array();
        for (const std::string& p : cluster_csvs) {
            std::ifstream in(p);
            std::string line;
            bool header = false;
            while (std::getline(in, line)) {
                if (line.empty() || line[0] == '#') continue;
                if (!header) {
                    header = true;
                    continue;
                }
                rows.push_back(line);
            }
        }
        bundle["clusters_csv_rows"] = rows;
        any = true;
    }
    for (const char* name : {"tracks.json", "crosscheck.json", "alerts.json", "scene_spec.json"}) {
        const fs::path p = fs::path(run_dir) / name;
        if (fs::exists(p)) {
            std::string key = name;
            key = key.substr(0, key.find('.'));
            bundle[key] = locust::read_json_file(p.string());
            any = true;
        }
    }

    // VCP curves from the first volume present
    auto svols = svol_files_sorted_by_time(run_dir);
    if (!svols.empty()) {
        const locust::VolumeScan vol = locust::read_volume(svols.front());
        ensure_dir(opts.out_dir);
        std::ofstream out((fs::path(opts.out_dir) / "vcp_curves.csv").string());
        locust::vcp_curves_to_csv(vol.vcp, vol.site.antenna_height_m, out);
        bundle["vcp_curves_csv"] = "vcp_curves.csv";
        any = true;
    }

    if (!any) {
        std::cerr << "no artifacts found in '" << run_dir << "'\n";
        return 2;
    }
    ensure_dir(opts.out_dir);
    locust::write_text_file((fs::path(opts.out_dir) / "report.json").string(), bundle.dump(2) + "\n");
    std::cout << "report written to " << (fs::path(opts.out_dir) / "report.json").string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Desert-locust swarm detection and tracking on single-polarization Doppler radar volumes"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "generate a synthetic SVOL scene with ground truth");
    std::string sim_spec, sim_preset, sim_out = ".";
    sim->add_option("spec", sim_spec, "scene spec JSON path");
    sim->add_option("--preset", sim_preset, "bundled scene preset (lucknow_20200712)");
    sim->add_option("--out-dir", sim_out, "output directory");

    // detect
    auto* det = app.add_subcommand("detect", "extract echo clusters from SVOL volumes");
    std::vector<std::string> det_volumes;
    CommonOpts det_opts;
    det->add_option("volumes", det_volumes, "SVOL files")->required();
    add_common_options(det, det_opts);

    // track
    auto* trk = app.add_subcommand("track", "detect and associate clusters across a volume directory");
    std::string trk_dir;
    CommonOpts trk_opts;
    trk->add_option("--volumes", trk_dir, "directory of SVOL files")->required();
    add_common_options(trk, trk_opts);

    // crosscheck
    auto* chk = app.add_subcommand("crosscheck", "corroborate tracks against rain gauges and wind fields");
    std::string chk_tracks, chk_rain;
    std::vector<std::string> chk_wind;
    CommonOpts chk_opts;
    chk->add_option("--tracks", chk_tracks, "tracks.json from the track command")->required();
    chk->add_option("--rain", chk_rain, "rain-gauge CSV extract");
    chk->add_option("--wind", chk_wind, "wind-field CSV extract (repeatable)");
    add_common_options(chk, chk_opts);

    // report
    auto* rep = app.add_subcommand("report", "bundle a run directory into a consolidated report");
    std::string rep_dir;
    CommonOpts rep_opts;
    rep->add_option("run_dir", rep_dir, "directory with prior outputs")->required();
    add_common_options(rep, rep_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(sim_spec, sim_preset, sim_out);
        if (det->parsed()) return cmd_detect(det_volumes, det_opts);
        if (trk->parsed()) return cmd_track(trk_dir, trk_opts);
        if (chk->parsed()) return cmd_crosscheck(chk_tracks, chk_rain, chk_wind, chk_opts);
        if (rep->parsed()) return cmd_report(rep_dir, rep_opts);
    } catch (const locust::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const locust::SpecError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const locust::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const locust::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const locust::IoError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
