#pragma once

// Beam-propagation geometry under the standard 4/3-earth refraction model,
// gate range/geolocation, and the altitude-ceiling range limit.
//
// Unit ledger: file formats and gate spacing carry metres; heights and ranges
// inside this module are kilometres; conversions happen at the call boundary.

#include <cmath>
#include <string>
#include <vector>

#include "locustradar/errors.hpp"
#include "locustradar/geo.hpp"

namespace locust {

enum class Band { S, C, X };

inline std::string band_name(Band b) {
    switch (b) {
        case Band::S: return "S";
        case Band::C: return "C";
        case Band::X: return "X";
    }
    return "?";
}

inline Band band_from_name(const std::string& s) {
    if (s == "S") return Band::S;
    if (s == "C") return Band::C;
    if (s == "X") return Band::X;
    throw ParseError("unknown radar band '" + s + "'");
}

struct RadarSite {
    std::string site_id;
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double antenna_height_m = 0.0; // above MSL
    Band band = Band::S;

    bool operator==(const RadarSite&) const = default;

    void validate() const {
        if (latitude_deg < -90.0 || latitude_deg > 90.0)
            throw ValidationError("site latitude out of range: " + std::to_string(latitude_deg));
        if (longitude_deg < -180.0 || longitude_deg > 180.0)
            throw ValidationError("site longitude out of range: " + std::to_string(longitude_deg));
        if (antenna_height_m < -500.0 || antenna_height_m > 9000.0)
            throw ValidationError("antenna height out of range: " + std::to_string(antenna_height_m));
    }
};

struct VcpDefinition {
    std::vector<double> elevation_angles_deg; // strictly increasing, each in (0, 90)
    double cadence_s = 600.0;                 // seconds between volume starts
    double first_gate_range_m = 0.0;
    double gate_spacing_m = 250.0;
    std::size_t gates_per_ray = 600;
    std::size_t rays_per_sweep = 360;

    bool operator==(const VcpDefinition&) const = default;

    void validate() const {
        if (elevation_angles_deg.empty()) throw ValidationError("VCP has no elevation angles");
        for (std::size_t i = 0; i < elevation_angles_deg.size(); ++i) {
            const double e = elevation_angles_deg[i];
            if (e <= 0.0 || e >= 90.0)
                throw ValidationError("elevation angle out of (0, 90): " + std::to_string(e));
            if (i > 0 && e <= elevation_angles_deg[i - 1])
                throw ValidationError("elevation angles not strictly increasing");
        }
        if (cadence_s <= 0.0) throw ValidationError("cadence_s must be positive");
        if (gate_spacing_m <= 0.0) throw ValidationError("gate_spacing_m must be positive");
        if (gates_per_ray < 1) throw ValidationError("gates_per_ray must be >= 1");
        if (rays_per_sweep < 1) throw ValidationError("rays_per_sweep must be >= 1");
    }
};

struct GateGeo {
    double slant_range_km = 0.0;
    double azimuth_deg = 0.0; // clockwise from north, [0, 360)
    double elevation_deg = 0.0;
    double height_km_msl = 0.0;
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
};

/// Effective earth radius under the 4/3 refraction model, km.
inline constexpr double effective_earth_radius_km() { return (4.0 / 3.0) * geo::kEarthRadiusKm; }

/// Slant range of gate n, metres: S = S1 + dS * n.
inline double gate_range_m(double s1_m, double ds_m, std::size_t n) {
    return s1_m + ds_m * static_cast<double>(n);
}

/// Beam centre height above MSL, km, for a gate at the given slant range and
/// elevation. h = sqrt(S^2 + Re'^2 + 2 S Re' sin(theta)) - Re' + h_r/1000.
inline double beam_height_km(double slant_range_km, double elevation_deg, double antenna_height_m) {
    const double re = effective_earth_radius_km();
    const double s = slant_range_km;
    const double st = std::sin(geo::deg2rad(elevation_deg));
    const double h = std::sqrt(s * s + re * re + 2.0 * s * re * st) - re;
    return h + antenna_height_m / 1000.0;
}

/// Largest slant range (km) whose beam height stays at or below ceiling_km.
/// Monotone bisection, converged to 0.01 km.
inline double max_analysis_range_km(double elevation_deg, double antenna_height_m, double ceiling_km) {
    const double antenna_km = antenna_height_m / 1000.0;
    if (ceiling_km <= antenna_km)
        throw CeilingBelowAntenna("ceiling " + std::to_string(ceiling_km) + " km is at or below the antenna");
    double lo = 0.0;
    double hi = 1.0;
    while (beam_height_km(hi, elevation_deg, antenna_height_m) <= ceiling_km) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1.0e5) break; // ceiling unreachable in practice only for absurd inputs
    }
    while (hi - lo > 0.01) {
        const double mid = 0.5 * (lo + hi);
        if (beam_height_km(mid, elevation_deg, antenna_height_m) <= ceiling_km)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

/// Geolocate a gate: flat projection of slant range onto the ground
/// (adequate below 21 deg elevation and 150 km), spherical-earth destination
/// along the azimuth, height from the 4/3-earth model.
inline GateGeo gate_geolocate(const RadarSite& site, double azimuth_deg, double elevation_deg,
                              double slant_range_m) {
    GateGeo g;
    g.slant_range_km = slant_range_m / 1000.0;
    g.azimuth_deg = geo::wrap360(azimuth_deg);
    g.elevation_deg = elevation_deg;
    g.height_km_msl = beam_height_km(g.slant_range_km, elevation_deg, site.antenna_height_m);
    const double ground_km = g.slant_range_km * std::cos(geo::deg2rad(elevation_deg));
    const auto dest = geo::destination_point(site.latitude_deg, site.longitude_deg, g.azimuth_deg, ground_km);
    g.latitude_deg = dest.lat_deg;
    g.longitude_deg = dest.lon_deg;
    return g;
}

} // namespace locust
