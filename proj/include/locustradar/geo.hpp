#pragma once

// Great-circle helpers on a 6371 km sphere. Sub-1 m error at radar scales,
// no ellipsoid dependency.

#include <cmath>

namespace locust::geo {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Normalize an angle to [0, 360).
inline double wrap360(double deg) {
    double d = std::fmod(deg, 360.0);
    if (d < 0.0) d += 360.0;
    return d;
}

/// Great-circle distance between two points, kilometres.
inline double haversine_km(double lat1_deg, double lon1_deg, double lat2_deg, double lon2_deg) {
    const double lat1 = deg2rad(lat1_deg);
    const double lat2 = deg2rad(lat2_deg);
    const double dlat = deg2rad(lat2_deg - lat1_deg);
    const double dlon = deg2rad(lon2_deg - lon1_deg);
    const double sl = std::sin(dlat / 2.0);
    const double so = std::sin(dlon / 2.0);
    double a = sl * sl + so * so * std::cos(lat1) * std::cos(lat2);
    if (a > 1.0) a = 1.0;
    if (a < 0.0) a = 0.0;
    return kEarthRadiusKm * 2.0 * std::atan2(std::sqrt(a), std::sqrt(1.0 - a));
}

/// Initial bearing from point 1 to point 2, degrees clockwise from north in [0, 360).
inline double initial_bearing_deg(double lat1_deg, double lon1_deg, double lat2_deg, double lon2_deg) {
    const double lat1 = deg2rad(lat1_deg);
    const double lat2 = deg2rad(lat2_deg);
    const double dlon = deg2rad(lon2_deg - lon1_deg);
    const double y = std::sin(dlon) * std::cos(lat2);
    const double x = std::cos(lat1) * std::sin(lat2) - std::sin(lat1) * std::cos(lat2) * std::cos(dlon);
    return wrap360(rad2deg(std::atan2(y, x)));
}

struct LatLon {
    double lat_deg;
    double lon_deg;
};

/// Destination point given start, bearing and ground distance along the great circle.
inline LatLon destination_point(double lat_deg, double lon_deg, double bearing_deg, double distance_km) {
    const double delta = distance_km / kEarthRadiusKm; // angular distance
    const double theta = deg2rad(bearing_deg);
    const double lat1 = deg2rad(lat_deg);
    const double lon1 = deg2rad(lon_deg);
    const double lat2 =
        std::asin(std::sin(lat1) * std::cos(delta) + std::cos(lat1) * std::sin(delta) * std::cos(theta));
    const double lon2 = lon1 + std::atan2(std::sin(theta) * std::sin(delta) * std::cos(lat1),
                                          std::cos(delta) - std::sin(lat1) * std::sin(lat2));
    double lon2_deg = rad2deg(lon2);
    if (lon2_deg > 180.0) lon2_deg -= 360.0;
    if (lon2_deg < -180.0) lon2_deg += 360.0;
    return {rad2deg(lat2), lon2_deg};
}

/// Smallest absolute angular difference between two bearings, in [0, 180].
inline double angular_difference_deg(double a_deg, double b_deg) {
    double d = std::fabs(wrap360(a_deg) - wrap360(b_deg));
    return d > 180.0 ? 360.0 - d : d;
}

} // namespace locust::geo
