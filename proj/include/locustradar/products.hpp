#pragma once

// Volume-level analysis products: composite reflectivity and vertical
// cross-sections along a fixed latitude. Both are data exports meant to feed
// external plotting.

#include <cmath>
#include <limits>
#include <vector>

#include "locustradar/errors.hpp"
#include "locustradar/radar_geometry.hpp"
#include "locustradar/volume.hpp"

namespace locust {

/// Per (ray, gate) maximum reflectivity over all elevations; NO_DATA only
/// where every sweep is NO_DATA.
struct CompositeGrid {
    MomentGrid z;
};

inline CompositeGrid composite_reflectivity(const VolumeScan& vol) {
    if (vol.sweeps.empty()) throw EmptyVolume("composite of a volume with no sweeps");
    CompositeGrid out;
    out.z = vol.sweeps.front().z;
    for (std::size_t i = 1; i < vol.sweeps.size(); ++i) {
        const MomentGrid& g = vol.sweeps[i].z;
        for (std::size_t idx = 0; idx < g.data().size(); ++idx) {
            const std::int16_t cand = g.data()[idx];
            if (cand == kNoDataRaw) continue;
            std::int16_t& cur = out.z.data()[idx];
            if (cur == kNoDataRaw || cand > cur) cur = cand;
        }
    }
    return out;
}

struct SliceSpec {
    double latitude_deg = 0.0;
    double lon_bin_deg = 0.01;     // ~1.1 km at the equator
    double height_bin_km = 0.1;    // resolves 50-150 m locust layers
    double max_height_km = 6.0;
    double range_limit_km = 150.0; // each side of the radar
};

/// Longitude x height grid of maximum reflectivity for gates near a fixed
/// latitude. Empty cells are NaN.
struct VerticalSlice {
    double latitude_deg = 0.0;
    double lon_min_deg = 0.0;
    double lon_bin_deg = 0.01;
    std::size_t n_lon = 0;
    double height_bin_km = 0.1;
    std::size_t n_height = 0;
    std::vector<double> max_z_dbz; // [ih * n_lon + ilon], NaN = empty

    double at(std::size_t ih, std::size_t ilon) const { return max_z_dbz[ih * n_lon + ilon]; }
    bool populated(std::size_t ih, std::size_t ilon) const { return !std::isnan(at(ih, ilon)); }
};

inline VerticalSlice vertical_slice(const VolumeScan& vol, const SliceSpec& spec) {
    if (vol.sweeps.empty()) throw EmptyVolume("slice of a volume with no sweeps");
    const double lat_band_deg = spec.range_limit_km / 111.195;
    if (std::fabs(spec.latitude_deg - vol.site.latitude_deg) > lat_band_deg)
        throw LatitudeOutOfCoverage("latitude " + std::to_string(spec.latitude_deg) +
                                    " outside the volume's coverage band");

    VerticalSlice slice;
    slice.latitude_deg = spec.latitude_deg;
    slice.lon_bin_deg = spec.lon_bin_deg;
    slice.height_bin_km = spec.height_bin_km;
    const double half_lon_span =
        spec.range_limit_km / (111.195 * std::cos(geo::deg2rad(spec.latitude_deg)));
    slice.lon_min_deg = vol.site.longitude_deg - half_lon_span;
    slice.n_lon = static_cast<std::size_t>(std::floor(2.0 * half_lon_span / spec.lon_bin_deg)) + 1;
    slice.n_height = static_cast<std::size_t>(std::ceil(spec.max_height_km / spec.height_bin_km));
    slice.max_z_dbz.assign(slice.n_lon * slice.n_height, std::numeric_limits<double>::quiet_NaN());

    const double lat_tol = spec.lon_bin_deg / 2.0;
    for (const Sweep& s : vol.sweeps) {
        for (std::size_t r = 0; r < s.rays(); ++r) {
            for (std::size_t g = 0; g < s.gates(); ++g) {
                const auto z = s.z.value(r, g);
                if (!z) continue;
                const double slant_m = gate_range_m(vol.vcp.first_gate_range_m, vol.vcp.gate_spacing_m, g);
                const GateGeo geo = gate_geolocate(vol.site, s.ray_azimuths_deg[r], s.elevation_deg, slant_m);
                if (std::fabs(geo.latitude_deg - spec.latitude_deg) > lat_tol) continue;
                if (geo.height_km_msl < 0.0 || geo.height_km_msl >= spec.max_height_km) continue;
                const double fl = (geo.longitude_deg - slice.lon_min_deg) / spec.lon_bin_deg;
                if (fl < 0.0 || fl >= static_cast<double>(slice.n_lon)) continue;
                const std::size_t ilon = static_cast<std::size_t>(fl);
                const std::size_t ih = static_cast<std::size_t>(geo.height_km_msl / spec.height_bin_km);
                double& cell = slice.max_z_dbz[ih * slice.n_lon + ilon];
                if (std::isnan(cell) || *z > cell) cell = *z;
            }
        }
    }
    return slice;
}

} // namespace locust
