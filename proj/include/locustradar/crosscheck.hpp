#pragma once

// Corroboration of swarm tracks against rain-gauge records and gridded wind:
// precipitation-free surroundings support the bioscatter reading, and
// alignment with the local wind separates downwind drift from crosswind or
// upwind movement.

#include <cmath>
#include <string>
#include <vector>

#include "locustradar/geo.hpp"
#include "locustradar/swarm_tracker.hpp"
#include "locustradar/tables_io.hpp"

namespace locust {

enum class RainVerdict { NO_RAIN_CONFIRMED, RAIN_PRESENT_AMBIGUOUS, NO_STATIONS };
enum class WindVerdict { DOWNWIND, CROSSWIND, UPWIND, NO_WIND_DATA };

inline std::string rain_verdict_name(RainVerdict v) {
    switch (v) {
        case RainVerdict::NO_RAIN_CONFIRMED: return "NO_RAIN_CONFIRMED";
        case RainVerdict::RAIN_PRESENT_AMBIGUOUS: return "RAIN_PRESENT_AMBIGUOUS";
        case RainVerdict::NO_STATIONS: return "NO_STATIONS";
    }
    return "?";
}

inline std::string wind_verdict_name(WindVerdict v) {
    switch (v) {
        case WindVerdict::DOWNWIND: return "DOWNWIND";
        case WindVerdict::CROSSWIND: return "CROSSWIND";
        case WindVerdict::UPWIND: return "UPWIND";
        case WindVerdict::NO_WIND_DATA: return "NO_WIND_DATA";
    }
    return "?";
}

struct StationCheck {
    std::string station_id;
    double distance_km = 0.0;
    double rainfall_mm = 0.0;
};

struct CrossCheckConfig {
    double station_radius_km = 150.0;
    double downwind_max_deg = 45.0; // boundary inclusive
    double upwind_min_deg = 135.0;  // boundary inclusive
};

struct CrossCheckReport {
    int track_id = -1;
    RainVerdict rain_verdict = RainVerdict::NO_STATIONS;
    std::vector<StationCheck> stations_checked;
    double wind_alignment_deg = 0.0; // [0, 180]
    double wind_bearing_deg = 0.0;   // direction of travel of the air
    double track_heading_deg = 0.0;
    WindVerdict wind_verdict = WindVerdict::NO_WIND_DATA;
};

/// Stations within radius of the radar site whose record window overlaps the
/// track's observation window decide the rain verdict.
inline CrossCheckReport rain_crosscheck(const SwarmTrack& track, const std::vector<RainRecord>& records,
                                        const RadarSite& site, double radius_km = 150.0) {
    if (track.observations.empty()) throw InsufficientObservations("rain crosscheck needs observations");
    CrossCheckReport rep;
    rep.track_id = track.track_id;
    const UtcSeconds t0 = track.observations.front().time_utc;
    const UtcSeconds t1 = track.observations.back().time_utc;
    bool any_rain = false;
    for (const RainRecord& r : records) {
        const double d = geo::haversine_km(site.latitude_deg, site.longitude_deg, r.latitude_deg, r.longitude_deg);
        if (d > radius_km) continue;
        if (r.window_end_utc < t0 || r.window_start_utc > t1) continue;
        rep.stations_checked.push_back({r.station_id, d, r.rainfall_mm});
        if (r.rainfall_mm > 0.0) any_rain = true;
    }
    if (rep.stations_checked.empty())
        rep.rain_verdict = RainVerdict::NO_STATIONS;
    else
        rep.rain_verdict = any_rain ? RainVerdict::RAIN_PRESENT_AMBIGUOUS : RainVerdict::NO_RAIN_CONFIRMED;
    return rep;
}

/// Mean wind direction-of-travel along the track, bilinearly sampled at every
/// observation centroid from the time-nearest field, compared against the
/// track heading. Fields must cover the whole centroid path.
inline void wind_alignment(const SwarmTrack& track, const std::vector<WindField>& fields, CrossCheckReport& rep,
                           const CrossCheckConfig& cfg = {}) {
    if (track.observations.size() < 2) throw InsufficientObservations("wind alignment needs a track heading");
    rep.track_id = track.track_id;
    if (fields.empty()) {
        rep.wind_verdict = WindVerdict::NO_WIND_DATA;
        return;
    }
    double sum_u = 0.0, sum_v = 0.0;
    for (const TrackObservation& o : track.observations) {
        const WindField* nearest = &fields.front();
        for (const WindField& f : fields)
            if (std::llabs(f.valid_time_utc - o.time_utc) < std::llabs(nearest->valid_time_utc - o.time_utc))
                nearest = &f;
        const auto s = nearest->interpolate(o.latitude_deg, o.longitude_deg);
        if (!s) {
            rep.wind_verdict = WindVerdict::NO_WIND_DATA;
            return;
        }
        sum_u += s->u_ms;
        sum_v += s->v_ms;
    }
    const double n = static_cast<double>(track.observations.size());
    rep.wind_bearing_deg = geo::wrap360(geo::rad2deg(std::atan2(sum_u / n, sum_v / n)));
    rep.track_heading_deg = track_kinematics(track).mean_heading_deg;
    rep.wind_alignment_deg = geo::angular_difference_deg(rep.wind_bearing_deg, rep.track_heading_deg);
    // boundaries are inclusive; the 1e-9 deg slack keeps an exactly-on-the-
    // boundary geometric construction from tipping over on float rounding
    if (rep.wind_alignment_deg <= cfg.downwind_max_deg + 1e-9)
        rep.wind_verdict = WindVerdict::DOWNWIND;
    else if (rep.wind_alignment_deg >= cfg.upwind_min_deg - 1e-9)
        rep.wind_verdict = WindVerdict::UPWIND;
    else
        rep.wind_verdict = WindVerdict::CROSSWIND;
}

inline CrossCheckReport crosscheck_track(const SwarmTrack& track, const std::vector<RainRecord>& rain,
                                         const std::vector<WindField>& wind, const RadarSite& site,
                                         const CrossCheckConfig& cfg = {}) {
    CrossCheckReport rep = rain_crosscheck(track, rain, site, cfg.station_radius_km);
    if (track.observations.size() >= 2) wind_alignment(track, wind, rep, cfg);
    return rep;
}

} // namespace locust
