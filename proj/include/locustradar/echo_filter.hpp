#pragma once

// Threshold filtering and connectivity grouping of swarm candidate echoes.
// The retention predicate is conjunctive: Z present and at/above the floor,
// |V| present and at/below the speed bound, beam height at/below the ceiling,
// gate within the analysis range, and optionally W at/below its bound.
// Missing data never passes a threshold.

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <vector>

#include "locustradar/errors.hpp"
#include "locustradar/radar_geometry.hpp"
#include "locustradar/volume.hpp"

namespace locust {

enum class Connectivity { FOUR, EIGHT };

struct FilterConfig {
    double z_min_dbz = 15.0;
    double v_max_abs_ms = 6.0;
    double height_ceiling_km = 2.0;
    std::size_t min_cluster_gates = 5;
    bool use_spectrum_width = false;
    std::optional<double> w_max_ms;
    Connectivity connectivity = Connectivity::FOUR;

    void validate() const {
        if (z_min_dbz < -35.0 || z_min_dbz > 80.0)
            throw ValidationError("z_min_dbz out of [-35, 80]");
        if (v_max_abs_ms <= 0.0) throw ValidationError("v_max_abs_ms must be positive");
        if (min_cluster_gates < 1) throw ValidationError("min_cluster_gates must be >= 1");
        if (use_spectrum_width && !w_max_ms) throw ValidationError("use_spectrum_width set but w_max_ms missing");
    }
};

struct GateIndex {
    std::size_t ray;
    std::size_t gate;
    auto operator<=>(const GateIndex&) const = default;
};

struct GateMask {
    std::size_t rays = 0;
    std::size_t gates = 0;
    std::vector<char> retained; // [ray * gates + gate]

    GateMask() = default;
    GateMask(std::size_t r, std::size_t g) : rays(r), gates(g), retained(r * g, 0) {}

    bool at(std::size_t ray, std::size_t gate) const { return retained[ray * gates + gate] != 0; }
    void set(std::size_t ray, std::size_t gate, bool v) { retained[ray * gates + gate] = v ? 1 : 0; }

    std::size_t count() const { return static_cast<std::size_t>(std::count(retained.begin(), retained.end(), 1)); }
};

struct EchoCluster {
    int cluster_id = 0;
    double elevation_deg = 0.0;
    std::vector<GateIndex> gates; // sorted ascending (ray, gate)
    std::size_t gate_count = 0;
    double mean_reflectivity_dbz = 0.0;        // arithmetic mean in dBZ space
    double mean_reflectivity_linear_dbz = 0.0; // 10*log10(mean of linear Z), secondary statistic
    double mean_radial_velocity_ms = 0.0;
    double centroid_latitude_deg = 0.0;
    double centroid_longitude_deg = 0.0;
    double centroid_height_km = 0.0;
    UtcSeconds time_utc = 0;
};

struct FilterSummary {
    std::size_t cluster_count = 0;
    std::size_t total_gates = 0;
    double mean_of_cluster_mean_dbz = 0.0;
    int largest_cluster_id = -1;
};

/// Evaluates the retention predicate over one sweep. The range cut uses the
/// volume's lowest elevation so the same slant-range limit applies to every
/// sweep.
inline GateMask apply_gate_filters(const VolumeScan& vol, std::size_t sweep_idx, const FilterConfig& cfg) {
    cfg.validate();
    if (sweep_idx >= vol.sweeps.size()) throw DimensionMismatch("sweep index out of range");
    const Sweep& s = vol.sweeps[sweep_idx];
    if (s.v.rays() != s.z.rays() || s.v.gates() != s.z.gates() || s.w.rays() != s.z.rays() ||
        s.w.gates() != s.z.gates())
        throw DimensionMismatch("moment grids differ in shape");

    const double max_range_km = max_analysis_range_km(vol.vcp.elevation_angles_deg.front(),
                                                      vol.site.antenna_height_m, cfg.height_ceiling_km);
    GateMask mask(s.rays(), s.gates());
    for (std::size_t g = 0; g < s.gates(); ++g) {
        const double slant_km = gate_range_m(vol.vcp.first_gate_range_m, vol.vcp.gate_spacing_m, g) / 1000.0;
        if (slant_km > max_range_km) continue;
        const double height_km = beam_height_km(slant_km, s.elevation_deg, vol.site.antenna_height_m);
        if (height_km > cfg.height_ceiling_km) continue;
        for (std::size_t r = 0; r < s.rays(); ++r) {
            const auto z = s.z.value(r, g);
            if (!z || *z < cfg.z_min_dbz) continue;
            const auto v = s.v.value(r, g);
            if (!v || std::fabs(*v) > cfg.v_max_abs_ms) continue;
            if (cfg.use_spectrum_width) {
                const auto w = s.w.value(r, g);
                if (!w || *w > *cfg.w_max_ms) continue;
            }
            mask.set(r, g, true);
        }
    }
    return mask;
}

/// Partition of retained gates into maximal connected components on the
/// (ray, gate) lattice. Ray adjacency wraps at the azimuth seam.
inline std::vector<std::vector<GateIndex>> label_clusters(const GateMask& mask, Connectivity connectivity) {
    const std::size_t nr = mask.rays;
    const std::size_t ng = mask.gates;
    std::vector<int> label(nr * ng, -1);
    std::vector<std::vector<GateIndex>> components;

    auto neighbors = [&](std::size_t r, std::size_t g, auto&& visit) {
        const std::size_t up = (r + 1) % nr;
        const std::size_t dn = (r + nr - 1) % nr;
        if (nr > 1) {
            visit(up, g);
            if (dn != up) visit(dn, g);
        }
        if (g + 1 < ng) visit(r, g + 1);
        if (g > 0) visit(r, g - 1);
        if (connectivity == Connectivity::EIGHT) {
            if (nr > 1) {
                if (g + 1 < ng) {
                    visit(up, g + 1);
                    if (dn != up) visit(dn, g + 1);
                }
                if (g > 0) {
                    visit(up, g - 1);
                    if (dn != up) visit(dn, g - 1);
                }
            }
        }
    };

    for (std::size_t r = 0; r < nr; ++r) {
        for (std::size_t g = 0; g < ng; ++g) {
            if (!mask.at(r, g) || label[r * ng + g] >= 0) continue;
            const int id = static_cast<int>(components.size());
            std::vector<GateIndex> comp;
            std::deque<GateIndex> frontier{{r, g}};
            label[r * ng + g] = id;
            while (!frontier.empty()) {
                const GateIndex cur = frontier.front();
                frontier.pop_front();
                comp.push_back(cur);
                neighbors(cur.ray, cur.gate, [&](std::size_t rr, std::size_t gg) {
                    if (mask.at(rr, gg) && label[rr * ng + gg] < 0) {
                        label[rr * ng + gg] = id;
                        frontier.push_back({rr, gg});
                    }
                });
            }
            std::sort(comp.begin(), comp.end());
            components.push_back(std::move(comp));
        }
    }
    return components;
}

/// Runs filtering + labeling on the lowest elevation sweep (the detection
/// surface), drops undersized components, and computes per-cluster
/// statistics. Clusters come back sorted by descending gate count, ties by
/// ascending first (ray, gate).
inline std::vector<EchoCluster> extract_clusters(const VolumeScan& vol, const FilterConfig& cfg) {
    if (vol.sweeps.empty()) throw EmptyVolume("volume has no sweeps");
    const Sweep& s = vol.sweeps.front();
    const GateMask mask = apply_gate_filters(vol, 0, cfg);
    auto components = label_clusters(mask, cfg.connectivity);

    std::vector<EchoCluster> clusters;
    for (auto& comp : components) {
        if (comp.size() < cfg.min_cluster_gates) continue;
        EchoCluster c;
        c.elevation_deg = s.elevation_deg;
        c.gate_count = comp.size();
        c.time_utc = vol.start_time_utc;
        double sum_z = 0.0, sum_lin = 0.0, sum_v = 0.0, sum_lat = 0.0, sum_lon = 0.0, sum_h = 0.0;
        for (const GateIndex& gi : comp) {
            const double z = *s.z.value(gi.ray, gi.gate);
            const double v = *s.v.value(gi.ray, gi.gate);
            sum_z += z;
            sum_lin += std::pow(10.0, z / 10.0);
            sum_v += v;
            const double slant_m = gate_range_m(vol.vcp.first_gate_range_m, vol.vcp.gate_spacing_m, gi.gate);
            const GateGeo geo = gate_geolocate(vol.site, s.ray_azimuths_deg[gi.ray], s.elevation_deg, slant_m);
            sum_lat += geo.latitude_deg;
            sum_lon += geo.longitude_deg;
            sum_h += geo.height_km_msl;
        }
        const double n = static_cast<double>(comp.size());
        c.mean_reflectivity_dbz = sum_z / n;
        c.mean_reflectivity_linear_dbz = 10.0 * std::log10(sum_lin / n);
        c.mean_radial_velocity_ms = sum_v / n;
        c.centroid_latitude_deg = sum_lat / n;
        c.centroid_longitude_deg = sum_lon / n;
        c.centroid_height_km = sum_h / n;
        c.gates = std::move(comp);
        clusters.push_back(std::move(c));
    }
    std::sort(clusters.begin(), clusters.end(), [](const EchoCluster& a, const EchoCluster& b) {
        if (a.gate_count != b.gate_count) return a.gate_count > b.gate_count;
        return a.gates.front() < b.gates.front();
    });
    for (std::size_t i = 0; i < clusters.size(); ++i) clusters[i].cluster_id = static_cast<int>(i);
    return clusters;
}

inline FilterSummary filter_summary(const std::vector<EchoCluster>& clusters) {
    FilterSummary s;
    s.cluster_count = clusters.size();
    if (clusters.empty()) return s;
    double sum_mean = 0.0;
    std::size_t largest = 0;
    for (const EchoCluster& c : clusters) {
        s.total_gates += c.gate_count;
        sum_mean += c.mean_reflectivity_dbz;
        if (c.gate_count > largest) {
            largest = c.gate_count;
            s.largest_cluster_id = c.cluster_id;
        }
    }
    s.mean_of_cluster_mean_dbz = sum_mean / static_cast<double>(clusters.size());
    return s;
}

} // namespace locust
