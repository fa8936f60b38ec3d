#pragma once

// CSV extracts standing in for the live rain-gauge and reanalysis-wind
// services: local files only, dense grids required for wind.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "locustradar/errors.hpp"
#include "locustradar/svol_io.hpp"
#include "locustradar/time_utc.hpp"

namespace locust {

struct RainRecord {
    std::string station_id;
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    UtcSeconds window_start_utc = 0;
    UtcSeconds window_end_utc = 0;
    double rainfall_mm = 0.0;
};

struct WindSample {
    double u_ms;
    double v_ms;
};

/// Regular lat/lon grid of east/north wind components. "u, v" are the
/// direction the air moves toward (east and north positive).
struct WindField {
    double grid_lat0_deg = 0.0; // southernmost row
    double grid_lon0_deg = 0.0; // westernmost column
    double cell_deg = 0.25;
    std::size_t nx = 0; // longitudes
    std::size_t ny = 0; // latitudes
    std::vector<double> u_ms; // [iy * nx + ix]
    std::vector<double> v_ms;
    double level_hpa = 0.0;
    UtcSeconds valid_time_utc = 0;

    bool covers(double lat_deg, double lon_deg) const {
        if (nx < 2 || ny < 2) return false;
        const double la = (lat_deg - grid_lat0_deg) / cell_deg;
        const double lo = (lon_deg - grid_lon0_deg) / cell_deg;
        return la >= 0.0 && la <= static_cast<double>(ny - 1) && lo >= 0.0 && lo <= static_cast<double>(nx - 1);
    }

    /// Bilinear interpolation; nullopt outside the grid hull.
    std::optional<WindSample> interpolate(double lat_deg, double lon_deg) const {
        if (!covers(lat_deg, lon_deg)) return std::nullopt;
        const double fy = (lat_deg - grid_lat0_deg) / cell_deg;
        const double fx = (lon_deg - grid_lon0_deg) / cell_deg;
        std::size_t iy = static_cast<std::size_t>(fy);
        std::size_t ix = static_cast<std::size_t>(fx);
        if (iy >= ny - 1) iy = ny - 2;
        if (ix >= nx - 1) ix = nx - 2;
        const double ty = fy - static_cast<double>(iy);
        const double tx = fx - static_cast<double>(ix);
        auto at = [&](std::size_t y, std::size_t x) { return y * nx + x; };
        const double u = (1 - ty) * ((1 - tx) * u_ms[at(iy, ix)] + tx * u_ms[at(iy, ix + 1)]) +
                         ty * ((1 - tx) * u_ms[at(iy + 1, ix)] + tx * u_ms[at(iy + 1, ix + 1)]);
        const double v = (1 - ty) * ((1 - tx) * v_ms[at(iy, ix)] + tx * v_ms[at(iy, ix + 1)]) +
                         ty * ((1 - tx) * v_ms[at(iy + 1, ix)] + tx * v_ms[at(iy + 1, ix + 1)]);
        return WindSample{u, v};
    }
};

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace detail

inline std::vector<RainRecord> read_rain_records(std::istream& in) {
    std::string line;
    std::size_t row = 0;
    bool header_seen = false;
    std::vector<RainRecord> out;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (detail::split_csv_row(line) !=
                std::vector<std::string>{"station_id", "lat", "lon", "window_start", "window_end", "rainfall_mm"})
                throw ParseError::at_row(row, "bad rain CSV header: '" + line + "'");
            header_seen = true;
            continue;
        }
        const auto f = detail::split_csv_row(line);
        if (f.size() != 6) throw ParseError::at_row(row, "expected 6 fields, got " + std::to_string(f.size()));
        RainRecord r;
        r.station_id = f[0];
        try {
            r.latitude_deg = detail::parse_double(f[1], 0, "lat");
            r.longitude_deg = detail::parse_double(f[2], 0, "lon");
            r.window_start_utc = parse_utc(f[3]);
            r.window_end_utc = parse_utc(f[4]);
            r.rainfall_mm = detail::parse_double(f[5], 0, "rainfall_mm");
        } catch (const ParseError& e) {
            throw ParseError::at_row(row, e.what());
        }
        if (r.window_start_utc >= r.window_end_utc)
            throw ParseError::at_row(row, "window_start must precede window_end");
        if (r.rainfall_mm < 0.0) throw ParseError::at_row(row, "negative rainfall");
        out.push_back(std::move(r));
    }
    if (!header_seen) throw ParseError("rain CSV has no header row");
    return out;
}

inline std::vector<RainRecord> read_rain_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_rain_records(in);
}

inline void write_rain_records(const std::vector<RainRecord>& records, std::ostream& out) {
    out << "station_id,lat,lon,window_start,window_end,rainfall_mm\n";
    for (const RainRecord& r : records)
        out << r.station_id << ',' << detail::format_double(r.latitude_deg) << ','
            << detail::format_double(r.longitude_deg) << ',' << format_utc(r.window_start_utc) << ','
            << format_utc(r.window_end_utc) << ',' << detail::format_double(r.rainfall_mm) << "\n";
}

/// Wind extract format: two '#' preamble lines carrying level_hpa and
/// valid_time, then a lat,lon,u,v table describing a dense regular grid.
inline WindField read_wind_field(std::istream& in) {
    std::string line;
    std::size_t row = 0;
    std::optional<double> level;
    std::optional<UtcSeconds> valid_time;
    bool header_seen = false;
    struct Cell {
        double u, v;
    };
    std::map<std::pair<long, long>, Cell> cells; // micro-degree keys avoid float-compare drift
    std::vector<double> lats, lons;
    auto key = [](double deg) { return std::lround(deg * 1e6); };

    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ms(line.substr(1));
            std::string k, val;
            ms >> k >> val;
            if (k == "level_hpa") level = detail::parse_double(val, 0, "level_hpa");
            if (k == "valid_time") valid_time = parse_utc(val);
            continue;
        }
        if (!header_seen) {
            if (detail::split_csv_row(line) != std::vector<std::string>{"lat", "lon", "u", "v"})
                throw ParseError::at_row(row, "bad wind CSV header: '" + line + "'");
            header_seen = true;
            continue;
        }
        const auto f = detail::split_csv_row(line);
        if (f.size() != 4) throw ParseError::at_row(row, "expected 4 fields, got " + std::to_string(f.size()));
        const double lat = detail::parse_double(f[0], 0, "lat");
        const double lon = detail::parse_double(f[1], 0, "lon");
        const double u = detail::parse_double(f[2], 0, "u");
        const double v = detail::parse_double(f[3], 0, "v");
        if (!cells.emplace(std::make_pair(key(lat), key(lon)), Cell{u, v}).second)
            throw ParseError::at_row(row, "duplicate grid cell");
        lats.push_back(lat);
        lons.push_back(lon);
    }
    if (!header_seen) throw ParseError("wind CSV has no header row");
    if (!level) throw ParseError("wind CSV missing '# level_hpa' preamble");
    if (!valid_time) throw ParseError("wind CSV missing '# valid_time' preamble");

    auto uniq = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(lats);
    uniq(lons);
    if (lats.size() < 2 || lons.size() < 2)
        throw IrregularGridError("grid needs at least 2 distinct latitudes and longitudes");

    auto spacing = [](const std::vector<double>& axis, const char* name) {
        const double step = axis[1] - axis[0];
        for (std::size_t i = 1; i < axis.size(); ++i)
            if (std::fabs((axis[i] - axis[i - 1]) - step) > 1e-6)
                throw IrregularGridError(std::string("non-uniform ") + name + " spacing");
        return step;
    };
    const double dlat = spacing(lats, "latitude");
    const double dlon = spacing(lons, "longitude");
    if (std::fabs(dlat - dlon) > 1e-6) throw IrregularGridError("latitude and longitude spacing differ");

    WindField w;
    w.grid_lat0_deg = lats.front();
    w.grid_lon0_deg = lons.front();
    w.cell_deg = dlat;
    w.ny = lats.size();
    w.nx = lons.size();
    w.level_hpa = *level;
    w.valid_time_utc = *valid_time;
    w.u_ms.resize(w.nx * w.ny);
    w.v_ms.resize(w.nx * w.ny);
    for (std::size_t iy = 0; iy < w.ny; ++iy) {
        for (std::size_t ix = 0; ix < w.nx; ++ix) {
            auto it = cells.find({key(lats[iy]), key(lons[ix])});
            if (it == cells.end())
                throw IrregularGridError("missing grid cell at lat " + std::to_string(lats[iy]) + ", lon " +
                                         std::to_string(lons[ix]));
            w.u_ms[iy * w.nx + ix] = it->second.u;
            w.v_ms[iy * w.nx + ix] = it->second.v;
        }
    }
    if (cells.size() != w.nx * w.ny) throw IrregularGridError("grid rows do not form a dense lattice");
    return w;
}

inline WindField read_wind_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_wind_field(in);
}

inline void write_wind_field(const WindField& w, std::ostream& out) {
    out << "# level_hpa " << detail::format_double(w.level_hpa) << "\n";
    out << "# valid_time " << format_utc(w.valid_time_utc) << "\n";
    out << "lat,lon,u,v\n";
    for (std::size_t iy = 0; iy < w.ny; ++iy)
        for (std::size_t ix = 0; ix < w.nx; ++ix)
            out << detail::format_double(w.grid_lat0_deg + w.cell_deg * static_cast<double>(iy)) << ','
                << detail::format_double(w.grid_lon0_deg + w.cell_deg * static_cast<double>(ix)) << ','
                << detail::format_double(w.u_ms[iy * w.nx + ix]) << ','
                << detail::format_double(w.v_ms[iy * w.nx + ix]) << "\n";
}

} // namespace locust
