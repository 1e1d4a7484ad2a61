#include "odris/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace odris {

double Vec3::norm() const { return std::sqrt(dot(*this)); }

Vec3 Vec3::normalized() const {
    const double n = norm();
    if (n < 1e-30) {
        throw std::invalid_argument("Vec3::normalized: zero-length vector");
    }
    return {x / n, y / n, z / n};
}

const char* half_space_name(HalfSpace side) {
    return side == HalfSpace::Incident ? "incident" : "transmit";
}

bool profile_in_domain(const PhaseProfile& p) {
    return p.theta_deg > -90.0 && p.theta_deg < 90.0 && p.phi_deg > -90.0 && p.phi_deg < 90.0;
}

void validate_profile(const PhaseProfile& p) {
    if (!profile_in_domain(p)) {
        throw std::invalid_argument("phase profile (" + std::to_string(p.theta_deg) + ", " +
                                    std::to_string(p.phi_deg) +
                                    ") outside the open domain (-90, 90) degrees");
    }
}

Vec3 direction_from_profile(const PhaseProfile& p, HalfSpace side) {
    validate_profile(p);
    const double theta = deg2rad(p.theta_deg);
    const double phi = deg2rad(p.phi_deg);
    const double s = side == HalfSpace::Incident ? 1.0 : -1.0;
    const double ct = std::cos(theta);
    return {ct * std::sin(phi), std::sin(theta), s * ct * std::cos(phi)};
}

std::pair<PhaseProfile, HalfSpace> profile_from_direction(const Vec3& d) {
    if (std::abs(d.z) <= kGrazingTol) {
        throw std::invalid_argument("profile_from_direction: degenerate direction, |z| <= " +
                                    std::to_string(kGrazingTol));
    }
    const HalfSpace side = d.z > 0.0 ? HalfSpace::Incident : HalfSpace::Transmit;
    const double y = std::clamp(d.y, -1.0, 1.0);
    const double theta = std::asin(y);
    // With s folded into z the projection angle is measured from +z or -z.
    const double phi = std::atan2(d.x, std::abs(d.z));
    return {PhaseProfile{rad2deg(theta), rad2deg(phi)}, side};
}

std::pair<PhaseProfile, HalfSpace> aim_profile(const Vec3& element_pos, const Vec3& target_pos) {
    if (std::abs(element_pos.z) > 1e-9) {
        throw std::invalid_argument("aim_profile: element must lie in the surface plane (z = 0)");
    }
    const Vec3 offset = target_pos - element_pos;
    if (offset.norm() < 1e-12) {
        throw std::invalid_argument("aim_profile: target coincides with the element");
    }
    return profile_from_direction(offset.normalized());
}

double angular_error(const Vec3& a, const Vec3& b) {
    return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

Vec3 specular_direction(const Vec3& incident) {
    if (incident.z >= 0.0) {
        throw std::invalid_argument("specular_direction: incident ray must point at the surface");
    }
    return {incident.x, incident.y, -incident.z};
}

}  // namespace odris
