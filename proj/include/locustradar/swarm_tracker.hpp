#pragma once

// Multi-scan association of echo clusters into tracks, plus track
// kinematics and lead-time estimation. Greedy nearest-neighbour matching on
// great-circle centroid distance; with the one-or-two slow swarms per volume
// this pipeline sees, greedy and optimal assignment coincide almost always
// (the test suite quantifies divergence against an exhaustive oracle).

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "locustradar/echo_filter.hpp"
#include "locustradar/errors.hpp"
#include "locustradar/geo.hpp"
#include "locustradar/time_utc.hpp"

namespace locust {

struct TrackerConfig {
    double max_association_speed_ms = 10.0;
    std::size_t max_missed_scans = 2;
    std::size_t min_track_observations = 3; // shorter tracks are candidates, not swarms

    void validate() const {
        if (max_association_speed_ms <= 0.0) throw ValidationError("max_association_speed_ms must be positive");
        if (max_missed_scans < 1) throw ValidationError("max_missed_scans must be positive");
        if (min_track_observations < 1) throw ValidationError("min_track_observations must be positive");
    }
};

enum class TrackStatus { ACTIVE, ENDED };

struct TrackObservation {
    UtcSeconds time_utc = 0;
    int cluster_id = -1;
    std::size_t gate_count = 0;
    double mean_reflectivity_dbz = 0.0;
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double height_km = 0.0;
};

struct TrackKinematics {
    double path_length_km = 0.0;
    double net_displacement_km = 0.0;
    double duration_s = 0.0;
    double mean_speed_ms = 0.0; // path based
    double net_speed_ms = 0.0;  // displacement based
    double mean_heading_deg = 0.0;
};

struct SwarmTrack {
    int track_id = 0;
    std::vector<TrackObservation> observations; // strictly increasing in time
    TrackStatus status = TrackStatus::ACTIVE;
    std::size_t missed_scans = 0;

    const TrackObservation& last() const { return observations.back(); }
    bool is_candidate(const TrackerConfig& cfg) const { return observations.size() < cfg.min_track_observations; }
};

/// Recomputes kinematics from the observation list. Idempotent; requires at
/// least two observations.
inline TrackKinematics track_kinematics(const SwarmTrack& track) {
    if (track.observations.size() < 2)
        throw InsufficientObservations("track " + std::to_string(track.track_id) + " has " +
                                       std::to_string(track.observations.size()) + " observation(s)");
    TrackKinematics k;
    const auto& obs = track.observations;
    for (std::size_t i = 1; i < obs.size(); ++i)
        k.path_length_km += geo::haversine_km(obs[i - 1].latitude_deg, obs[i - 1].longitude_deg,
                                              obs[i].latitude_deg, obs[i].longitude_deg);
    k.net_displacement_km = geo::haversine_km(obs.front().latitude_deg, obs.front().longitude_deg,
                                              obs.back().latitude_deg, obs.back().longitude_deg);
    k.duration_s = static_cast<double>(obs.back().time_utc - obs.front().time_utc);
    k.mean_speed_ms = 1000.0 * k.path_length_km / k.duration_s;
    k.net_speed_ms = 1000.0 * k.net_displacement_km / k.duration_s;
    k.mean_heading_deg = geo::initial_bearing_deg(obs.front().latitude_deg, obs.front().longitude_deg,
                                                  obs.back().latitude_deg, obs.back().longitude_deg);
    return k;
}

/// Hours until the track reaches the radar site at its observed closing
/// speed; nullopt when the centroid-to-site distance is non-decreasing.
inline std::optional<double> lead_time_estimate(const SwarmTrack& track, const RadarSite& site) {
    if (track.observations.size() < 2)
        throw InsufficientObservations("lead time needs at least two observations");
    const auto& obs = track.observations;
    const double d_first =
        geo::haversine_km(obs.front().latitude_deg, obs.front().longitude_deg, site.latitude_deg, site.longitude_deg);
    const double d_last =
        geo::haversine_km(obs.back().latitude_deg, obs.back().longitude_deg, site.latitude_deg, site.longitude_deg);
    const double duration_h = static_cast<double>(obs.back().time_utc - obs.front().time_utc) / 3600.0;
    const double closing_kmh = (d_first - d_last) / duration_h;
    if (closing_kmh <= 0.0) return std::nullopt; // NOT_APPROACHING
    return d_last / closing_kmh;
}

/// Single-writer tracker state machine: feed volumes in time order.
class Tracker {
public:
    explicit Tracker(TrackerConfig cfg = {}) : cfg_(cfg) { cfg_.validate(); }

    const TrackerConfig& config() const { return cfg_; }
    const std::vector<SwarmTrack>& tracks() const { return tracks_; }

    std::vector<const SwarmTrack*> active_tracks() const {
        std::vector<const SwarmTrack*> out;
        for (const auto& t : tracks_)
            if (t.status == TrackStatus::ACTIVE) out.push_back(&t);
        return out;
    }

    /// Associates one volume's clusters with the active tracks.
    void update(UtcSeconds time_utc, const std::vector<EchoCluster>& clusters) {
        if (last_time_ && time_utc <= *last_time_)
            throw NonMonotonicTime("volume at " + format_utc(time_utc) + " does not postdate tracker clock " +
                                   format_utc(*last_time_));

        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < tracks_.size(); ++i)
            if (tracks_[i].status == TrackStatus::ACTIVE) active.push_back(i);

        std::vector<bool> track_matched(tracks_.size(), false);
        std::vector<bool> cluster_matched(clusters.size(), false);

        if (last_time_ && !active.empty() && !clusters.empty()) {
            const double dt_s = static_cast<double>(time_utc - *last_time_);
            const double gate_km = cfg_.max_association_speed_ms * dt_s / 1000.0;

            struct Pair {
                double dist_km;
                std::size_t track_idx;
                std::size_t cluster_idx;
            };
            std::vector<Pair> pairs;
            for (std::size_t ti : active) {
                const TrackObservation& last = tracks_[ti].last();
                for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
                    const double d = geo::haversine_km(last.latitude_deg, last.longitude_deg,
                                                       clusters[ci].centroid_latitude_deg,
                                                       clusters[ci].centroid_longitude_deg);
                    if (d <= gate_km) pairs.push_back({d, ti, ci});
                }
            }
            // Deterministic order: ascending distance, then older track
            // (smaller id), then larger cluster.
            std::sort(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
                if (a.dist_km != b.dist_km) return a.dist_km < b.dist_km;
                if (a.track_idx != b.track_idx)
                    return tracks_[a.track_idx].track_id < tracks_[b.track_idx].track_id;
                return clusters[a.cluster_idx].gate_count > clusters[b.cluster_idx].gate_count;
            });
            for (const Pair& p : pairs) {
                if (track_matched[p.track_idx] || cluster_matched[p.cluster_idx]) continue;
                track_matched[p.track_idx] = true;
                cluster_matched[p.cluster_idx] = true;
                append_observation(tracks_[p.track_idx], time_utc, clusters[p.cluster_idx]);
            }
        }

        for (std::size_t ti : active) {
            if (track_matched[ti]) continue;
            SwarmTrack& t = tracks_[ti];
            if (++t.missed_scans > cfg_.max_missed_scans) t.status = TrackStatus::ENDED;
        }
        for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
            if (cluster_matched[ci]) continue;
            SwarmTrack t;
            t.track_id = next_id_++;
            append_observation(t, time_utc, clusters[ci]);
            tracks_.push_back(std::move(t));
        }
        last_time_ = time_utc;
    }

    /// Marks every remaining ACTIVE track ENDED (end of the volume sequence).
    void finish() {
        for (auto& t : tracks_)
            if (t.status == TrackStatus::ACTIVE) t.status = TrackStatus::ENDED;
    }

private:
    static void append_observation(SwarmTrack& t, UtcSeconds time_utc, const EchoCluster& c) {
        TrackObservation o;
        o.time_utc = time_utc;
        o.cluster_id = c.cluster_id;
        o.gate_count = c.gate_count;
        o.mean_reflectivity_dbz = c.mean_reflectivity_dbz;
        o.latitude_deg = c.centroid_latitude_deg;
        o.longitude_deg = c.centroid_longitude_deg;
        o.height_km = c.centroid_height_km;
        t.observations.push_back(o);
        t.missed_scans = 0;
    }

    TrackerConfig cfg_;
    std::vector<SwarmTrack> tracks_;
    std::optional<UtcSeconds> last_time_;
    int next_id_ = 0;
};

} // namespace locust
