#pragma once

#include <utility>

namespace odris {

inline constexpr double kPi = 3.14159265358979323846;

/// Directions with |z| at or below this are treated as grazing the surface
/// plane; the profile decomposition is ill-conditioned there.
inline constexpr double kGrazingTol = 1e-9;

inline constexpr double deg2rad(double deg) { return deg * (kPi / 180.0); }
inline constexpr double rad2deg(double rad) { return rad * (180.0 / kPi); }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const;
    Vec3 normalized() const;  // throws std::invalid_argument on (near-)zero vectors
};

/// Which side of the surface an emerging ray lives in: the incident
/// half-space (z > 0) or the transmit half-space (z < 0).
enum class HalfSpace { Incident, Transmit };

const char* half_space_name(HalfSpace side);

/// Emerging-ray orientation. theta is the signed angle between the ray and
/// the xz-plane; phi is the signed angle between the ray's xz-plane
/// projection and the z-axis (incident side) or the -z axis (transmit side).
/// Both are strictly inside (-90, 90) degrees.
struct PhaseProfile {
    double theta_deg = 0.0;
    double phi_deg = 0.0;

    friend bool operator==(const PhaseProfile&, const PhaseProfile&) = default;
};

bool profile_in_domain(const PhaseProfile& p);
void validate_profile(const PhaseProfile& p);

/// Unit direction of the emerging ray:
///   y = sin(theta), x = cos(theta) sin(phi), z = s cos(theta) cos(phi)
/// with s = +1 on the incident side and -1 on the transmit side.
Vec3 direction_from_profile(const PhaseProfile& p, HalfSpace side);

/// Exact inverse of direction_from_profile on its range. Throws for grazing
/// directions (|z| <= kGrazingTol).
std::pair<PhaseProfile, HalfSpace> profile_from_direction(const Vec3& d);

/// Profile of the unit vector from a surface element (z = 0) to a target.
std::pair<PhaseProfile, HalfSpace> aim_profile(const Vec3& element_pos, const Vec3& target_pos);

/// Angle in radians between two unit vectors. Symmetric, zero iff equal.
double angular_error(const Vec3& a, const Vec3& b);

/// Mirror law across the surface plane, for sanity baselines only.
Vec3 specular_direction(const Vec3& incident);

}  // namespace odris
