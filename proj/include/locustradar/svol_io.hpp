#pragma once

// SVOL: a portable, bit-exact container for polar radar volumes.
//
//   ASCII header, one "key value" line per field, terminated by a blank line:
//     SVOL1
//     site_id <token>
//     latitude_deg <deg>
//     longitude_deg <deg>
//     antenna_height_m <m>
//     band <S|C|X>
//     start_time_utc <YYYY-MM-DDTHH:MM:SSZ>
//     n_sweeps <n>
//     first_gate_range_m <m>
//     gate_spacing_m <m>
//     rays_per_sweep <n>
//     gates_per_ray <n>
//     elevations_deg <deg> <deg> ...
//
//   Then, per sweep in elevation order, three payload blocks (Z, V, W), each
//   rays x gates little-endian int16, row-major by ray, scale 0.01,
//   NO_DATA = -32768. Rays are uniformly spaced in azimuth starting at north.
//
// Headers use '.' as decimal separator, no grouping; doubles are written in
// shortest round-trip form, so equal values always serialize to equal bytes.

#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "locustradar/errors.hpp"
#include "locustradar/volume.hpp"

namespace locust {

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s, std::size_t offset, const char* what) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ParseError(std::string("bad numeric value for ") + what + ": '" + s + "'", offset);
    return v;
}

inline std::size_t parse_size(const std::string& s, std::size_t offset, const char* what) {
    std::size_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ParseError(std::string("bad integer value for ") + what + ": '" + s + "'", offset);
    return v;
}

// Reads one header line, advancing the byte offset. Fails on EOF.
inline std::string read_header_line(std::istream& in, std::size_t& offset) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("unexpected end of header", offset);
    offset += line.size() + 1;
    return line;
}

// "key value" line whose key must match.
inline std::string expect_field(std::istream& in, std::size_t& offset, const std::string& key) {
    const std::size_t line_start = offset;
    const std::string line = read_header_line(in, offset);
    const auto sp = line.find(' ');
    if (sp == std::string::npos || line.substr(0, sp) != key)
        throw ParseError("expected header field '" + key + "', got '" + line + "'", line_start);
    return line.substr(sp + 1);
}

inline void write_grid(std::ostream& out, const MomentGrid& g) {
    std::vector<char> buf(g.data().size() * 2);
    for (std::size_t i = 0; i < g.data().size(); ++i) {
        const std::uint16_t u = static_cast<std::uint16_t>(g.data()[i]);
        buf[2 * i] = static_cast<char>(u & 0xff);
        buf[2 * i + 1] = static_cast<char>((u >> 8) & 0xff);
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

inline void read_grid(std::istream& in, MomentGrid& g, std::size_t& offset, const char* what) {
    std::vector<char> buf(g.data().size() * 2);
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(in.gcount()) != buf.size())
        throw ParseError(std::string("truncated payload in ") + what + " block", offset + static_cast<std::size_t>(in.gcount()));
    for (std::size_t i = 0; i < g.data().size(); ++i) {
        const std::uint16_t u = static_cast<std::uint16_t>(static_cast<unsigned char>(buf[2 * i])) |
                                (static_cast<std::uint16_t>(static_cast<unsigned char>(buf[2 * i + 1])) << 8);
        g.data()[i] = static_cast<std::int16_t>(u);
    }
    offset += buf.size();
}

inline bool azimuths_are_uniform(const std::vector<double>& az) {
    const auto expect = VolumeScan::uniform_azimuths(az.size());
    for (std::size_t i = 0; i < az.size(); ++i)
        if (az[i] != expect[i]) return false;
    return true;
}

} // namespace detail

inline void write_volume(const VolumeScan& v, std::ostream& out) {
    v.validate();
    if (v.site.site_id.empty() || v.site.site_id.find_first_of(" \t\r\n") != std::string::npos)
        throw ValidationError("site_id must be a non-empty whitespace-free token");
    for (const Sweep& s : v.sweeps)
        if (!detail::azimuths_are_uniform(s.ray_azimuths_deg))
            throw ValidationError("SVOL carries only the uniform azimuth layout");

    out << "SVOL1\n";
    out << "site_id " << v.site.site_id << "\n";
    out << "latitude_deg " << detail::format_double(v.site.latitude_deg) << "\n";
    out << "longitude_deg " << detail::format_double(v.site.longitude_deg) << "\n";
    out << "antenna_height_m " << detail::format_double(v.site.antenna_height_m) << "\n";
    out << "band " << band_name(v.site.band) << "\n";
    out << "start_time_utc " << format_utc(v.start_time_utc) << "\n";
    out << "n_sweeps " << v.sweeps.size() << "\n";
    out << "first_gate_range_m " << detail::format_double(v.vcp.first_gate_range_m) << "\n";
    out << "gate_spacing_m " << detail::format_double(v.vcp.gate_spacing_m) << "\n";
    out << "rays_per_sweep " << v.vcp.rays_per_sweep << "\n";
    out << "gates_per_ray " << v.vcp.gates_per_ray << "\n";
    out << "elevations_deg";
    for (double e : v.vcp.elevation_angles_deg) out << ' ' << detail::format_double(e);
    out << "\n\n";
    for (const Sweep& s : v.sweeps) {
        detail::write_grid(out, s.z);
        detail::write_grid(out, s.v);
        detail::write_grid(out, s.w);
    }
    if (!out) throw IoError("write failed");
}

inline VolumeScan read_volume(std::istream& in) {
    std::size_t offset = 0;
    const std::string magic = detail::read_header_line(in, offset);
    if (magic != "SVOL1") throw ParseError("bad magic '" + magic + "' (expected SVOL1)", 0);

    VolumeScan v;
    v.site.site_id = detail::expect_field(in, offset, "site_id");
    v.site.latitude_deg = detail::parse_double(detail::expect_field(in, offset, "latitude_deg"), offset, "latitude_deg");
    v.site.longitude_deg =
        detail::parse_double(detail::expect_field(in, offset, "longitude_deg"), offset, "longitude_deg");
    v.site.antenna_height_m =
        detail::parse_double(detail::expect_field(in, offset, "antenna_height_m"), offset, "antenna_height_m");
    v.site.band = band_from_name(detail::expect_field(in, offset, "band"));
    v.start_time_utc = parse_utc(detail::expect_field(in, offset, "start_time_utc"));
    const std::size_t n_sweeps = detail::parse_size(detail::expect_field(in, offset, "n_sweeps"), offset, "n_sweeps");
    v.vcp.first_gate_range_m =
        detail::parse_double(detail::expect_field(in, offset, "first_gate_range_m"), offset, "first_gate_range_m");
    v.vcp.gate_spacing_m =
        detail::parse_double(detail::expect_field(in, offset, "gate_spacing_m"), offset, "gate_spacing_m");
    v.vcp.rays_per_sweep =
        detail::parse_size(detail::expect_field(in, offset, "rays_per_sweep"), offset, "rays_per_sweep");
    v.vcp.gates_per_ray =
        detail::parse_size(detail::expect_field(in, offset, "gates_per_ray"), offset, "gates_per_ray");

    const std::size_t elev_line_start = offset;
    std::string elev_line = detail::expect_field(in, offset, "elevations_deg");
    std::istringstream es(elev_line);
    std::string tok;
    while (es >> tok) v.vcp.elevation_angles_deg.push_back(detail::parse_double(tok, elev_line_start, "elevation"));
    if (v.vcp.elevation_angles_deg.size() != n_sweeps)
        throw ParseError("dimension mismatch: n_sweeps " + std::to_string(n_sweeps) + " but " +
                             std::to_string(v.vcp.elevation_angles_deg.size()) + " elevations listed",
                         elev_line_start);

    const std::size_t blank_start = offset;
    if (detail::read_header_line(in, offset) != "")
        throw ParseError("missing blank line after header", blank_start);

    for (std::size_t i = 0; i < n_sweeps; ++i) {
        Sweep s;
        s.elevation_deg = v.vcp.elevation_angles_deg[i];
        s.ray_azimuths_deg = VolumeScan::uniform_azimuths(v.vcp.rays_per_sweep);
        s.z = MomentGrid(v.vcp.rays_per_sweep, v.vcp.gates_per_ray);
        s.v = MomentGrid(v.vcp.rays_per_sweep, v.vcp.gates_per_ray);
        s.w = MomentGrid(v.vcp.rays_per_sweep, v.vcp.gates_per_ray);
        detail::read_grid(in, s.z, offset, "Z");
        detail::read_grid(in, s.v, offset, "V");
        detail::read_grid(in, s.w, offset, "W");
        v.sweeps.push_back(std::move(s));
    }
    v.validate();
    return v;
}

inline void write_volume(const VolumeScan& v, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_volume(v, out);
}

inline VolumeScan read_volume(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_volume(in);
}

/// Reads only the start_time_utc field of an SVOL header. Used to order
/// volume files by embedded timestamp rather than filename.
inline UtcSeconds peek_volume_time(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::size_t offset = 0;
    if (detail::read_header_line(in, offset) != "SVOL1") throw ParseError("bad magic in '" + path + "'", 0);
    for (int i = 0; i < 5; ++i) detail::read_header_line(in, offset);
    return parse_utc(detail::expect_field(in, offset, "start_time_utc"));
}

} // namespace locust
