#pragma once

// In-memory volume-scan model. Moment samples are stored exactly as the SVOL
// payload carries them: signed 16-bit fixed point, scale 0.01, NO_DATA =
// -32768. 0.00 is a legitimate measurement and is never used as a sentinel.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locustradar/errors.hpp"
#include "locustradar/radar_geometry.hpp"
#include "locustradar/time_utc.hpp"

namespace locust {

inline constexpr std::int16_t kNoDataRaw = -32768;
inline constexpr double kMomentScale = 0.01;

enum class Moment { Z, V, W };

/// One ray x gate grid of fixed-point moment samples.
class MomentGrid {
public:
    MomentGrid() = default;
    MomentGrid(std::size_t rays, std::size_t gates)
        : rays_(rays), gates_(gates), raw_(rays * gates, kNoDataRaw) {}

    std::size_t rays() const { return rays_; }
    std::size_t gates() const { return gates_; }

    std::int16_t raw(std::size_t ray, std::size_t gate) const { return raw_[ray * gates_ + gate]; }
    void set_raw(std::size_t ray, std::size_t gate, std::int16_t v) { raw_[ray * gates_ + gate] = v; }

    bool has_value(std::size_t ray, std::size_t gate) const { return raw(ray, gate) != kNoDataRaw; }

    std::optional<double> value(std::size_t ray, std::size_t gate) const {
        const std::int16_t r = raw(ray, gate);
        if (r == kNoDataRaw) return std::nullopt;
        return r * kMomentScale;
    }

    /// Quantizes to 0.01 (round half away from zero). Values that would
    /// collide with the sentinel are clamped one step in.
    void set_value(std::size_t ray, std::size_t gate, double v) {
        long q = std::lround(v / kMomentScale);
        if (q < -32767) q = -32767;
        if (q > 32767) q = 32767;
        set_raw(ray, gate, static_cast<std::int16_t>(q));
    }

    void set_no_data(std::size_t ray, std::size_t gate) { set_raw(ray, gate, kNoDataRaw); }

    const std::vector<std::int16_t>& data() const { return raw_; }
    std::vector<std::int16_t>& data() { return raw_; }

    bool operator==(const MomentGrid&) const = default;

private:
    std::size_t rays_ = 0;
    std::size_t gates_ = 0;
    std::vector<std::int16_t> raw_;
};

struct Sweep {
    double elevation_deg = 0.0;
    std::vector<double> ray_azimuths_deg; // strictly increasing, [0, 360)
    MomentGrid z; // reflectivity, dBZ
    MomentGrid v; // radial velocity, m/s (signed, positive away from radar)
    MomentGrid w; // spectrum width, m/s

    std::size_t rays() const { return z.rays(); }
    std::size_t gates() const { return z.gates(); }

    bool operator==(const Sweep&) const = default;
};

struct VolumeScan {
    RadarSite site;
    VcpDefinition vcp;
    UtcSeconds start_time_utc = 0;
    std::vector<Sweep> sweeps; // ordered by elevation

    bool operator==(const VolumeScan&) const = default;

    void validate() const {
        site.validate();
        vcp.validate();
        if (sweeps.size() != vcp.elevation_angles_deg.size())
            throw ValidationError("sweep count " + std::to_string(sweeps.size()) + " does not match VCP (" +
                                  std::to_string(vcp.elevation_angles_deg.size()) + " elevations)");
        for (std::size_t i = 0; i < sweeps.size(); ++i) {
            const Sweep& s = sweeps[i];
            if (std::fabs(s.elevation_deg - vcp.elevation_angles_deg[i]) > 0.05)
                throw ValidationError("sweep " + std::to_string(i) + " elevation " +
                                      std::to_string(s.elevation_deg) + " does not match VCP entry " +
                                      std::to_string(vcp.elevation_angles_deg[i]));
            if (s.z.rays() != vcp.rays_per_sweep || s.z.gates() != vcp.gates_per_ray)
                throw ValidationError("sweep " + std::to_string(i) + " grid does not match VCP dimensions");
            if (s.v.rays() != s.z.rays() || s.v.gates() != s.z.gates() || s.w.rays() != s.z.rays() ||
                s.w.gates() != s.z.gates())
                throw ValidationError("sweep " + std::to_string(i) + " moment grids differ in shape");
            if (s.ray_azimuths_deg.size() != s.z.rays())
                throw ValidationError("sweep " + std::to_string(i) + " azimuth list does not match ray count");
            for (std::size_t r = 0; r < s.ray_azimuths_deg.size(); ++r) {
                const double az = s.ray_azimuths_deg[r];
                if (az < 0.0 || az >= 360.0)
                    throw ValidationError("ray azimuth out of [0, 360): " + std::to_string(az));
                if (r > 0 && az <= s.ray_azimuths_deg[r - 1])
                    throw ValidationError("ray azimuths not strictly increasing in sweep " + std::to_string(i));
            }
            validate_moment_ranges(s, i);
        }
    }

    /// Uniform azimuth layout starting at 0, used when a format carries no
    /// explicit azimuth list.
    static std::vector<double> uniform_azimuths(std::size_t rays) {
        std::vector<double> az(rays);
        for (std::size_t i = 0; i < rays; ++i) az[i] = 360.0 * static_cast<double>(i) / static_cast<double>(rays);
        return az;
    }

private:
    static void validate_moment_ranges(const Sweep& s, std::size_t idx) {
        for (std::size_t r = 0; r < s.rays(); ++r) {
            for (std::size_t g = 0; g < s.gates(); ++g) {
                if (auto z = s.z.value(r, g); z && (*z < -35.0 || *z > 80.0))
                    throw ValidationError("Z out of [-35, 80] dBZ in sweep " + std::to_string(idx));
                if (auto v = s.v.value(r, g); v && (*v < -60.0 || *v > 60.0))
                    throw ValidationError("V out of [-60, 60] m/s in sweep " + std::to_string(idx));
                if (auto w = s.w.value(r, g); w && (*w < 0.0 || *w > 20.0))
                    throw ValidationError("W out of [0, 20] m/s in sweep " + std::to_string(idx));
            }
        }
    }
};

/// Builds an all-NO_DATA volume matching the given site/VCP.
inline VolumeScan make_empty_volume(const RadarSite& site, const VcpDefinition& vcp, UtcSeconds start) {
    VolumeScan v;
    v.site = site;
    v.vcp = vcp;
    v.start_time_utc = start;
    v.sweeps.reserve(vcp.elevation_angles_deg.size());
    for (double el : vcp.elevation_angles_deg) {
        Sweep s;
        s.elevation_deg = el;
        s.ray_azimuths_deg = VolumeScan::uniform_azimuths(vcp.rays_per_sweep);
        s.z = MomentGrid(vcp.rays_per_sweep, vcp.gates_per_ray);
        s.v = MomentGrid(vcp.rays_per_sweep, vcp.gates_per_ray);
        s.w = MomentGrid(vcp.rays_per_sweep, vcp.gates_per_ray);
        v.sweeps.push_back(std::move(s));
    }
    return v;
}

} // namespace locust
