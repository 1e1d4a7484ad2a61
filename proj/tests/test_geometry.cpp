#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "odris/element.hpp"
#include "odris/geometry.hpp"

using namespace odris;

namespace {

// Independent error formulation for the oracle cross-check.
double angular_error_via_cross(const Vec3& a, const Vec3& b) {
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace

TEST_CASE("direction_from_profile on-axis") {
    const Vec3 inc = direction_from_profile({0.0, 0.0}, HalfSpace::Incident);
    CHECK(inc.x == doctest::Approx(0.0));
    CHECK(inc.y == doctest::Approx(0.0));
    CHECK(inc.z == doctest::Approx(1.0));

    const Vec3 tra = direction_from_profile({0.0, 0.0}, HalfSpace::Transmit);
    CHECK(tra.z == doctest::Approx(-1.0));
}

TEST_CASE("direction_from_profile matches the frozen example") {
    const Vec3 d = direction_from_profile({31.22, -27.39}, HalfSpace::Incident);
    CHECK(std::abs(d.x - -0.3934) < 1e-3);
    CHECK(std::abs(d.y - 0.5183) < 1e-3);
    CHECK(std::abs(d.z - 0.7594) < 1e-3);
}

TEST_CASE("profiles outside the open domain are rejected") {
    CHECK_THROWS_AS(direction_from_profile({90.0, 0.0}, HalfSpace::Incident),
                    std::invalid_argument);
    CHECK_THROWS_AS(direction_from_profile({0.0, -90.0}, HalfSpace::Incident),
                    std::invalid_argument);
}

TEST_CASE("profile_from_direction basics") {
    const auto [p, side] = profile_from_direction({0.0, 0.0, 1.0});
    CHECK(p.theta_deg == doctest::Approx(0.0));
    CHECK(p.phi_deg == doctest::Approx(0.0));
    CHECK(side == HalfSpace::Incident);

    CHECK_THROWS_AS(profile_from_direction({0.0, 1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(profile_from_direction({1.0, 0.0, 1e-12}), std::invalid_argument);
}

TEST_CASE("round trip over 1e5 seeded random profiles") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> angle(-89.0, 89.0);
    std::uniform_int_distribution<int> pick_side(0, 1);
    double max_err_deg = 0.0;
    double max_norm_err = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const PhaseProfile p{angle(rng), angle(rng)};
        const HalfSpace side = pick_side(rng) == 0 ? HalfSpace::Incident : HalfSpace::Transmit;
        const Vec3 d = direction_from_profile(p, side);
        max_norm_err = std::max(max_norm_err, std::abs(d.norm() - 1.0));
        CHECK((side == HalfSpace::Incident ? d.z > 0 : d.z < 0));
        const auto [q, side_back] = profile_from_direction(d);
        REQUIRE(side_back == side);
        max_err_deg = std::max(max_err_deg, std::abs(q.theta_deg - p.theta_deg));
        max_err_deg = std::max(max_err_deg, std::abs(q.phi_deg - p.phi_deg));
    }
    CHECK(max_err_deg < 1e-9);
    CHECK(max_norm_err < 1e-12);
}

TEST_CASE("emerging rays in the yz-plane have phi = 0") {
    for (double y : {-0.9, -0.3, 0.0, 0.4, 0.8}) {
        const Vec3 d = Vec3{0.0, y, std::sqrt(1.0 - y * y)};
        const auto [p, side] = profile_from_direction(d);
        CHECK(side == HalfSpace::Incident);
        CHECK(p.phi_deg == 0.0);
    }
}

TEST_CASE("aim_profile examples") {
    const auto [p0, s0] = aim_profile({0, 0, 0}, {0, 0, 2});
    CHECK(p0.theta_deg == doctest::Approx(0.0));
    CHECK(p0.phi_deg == doctest::Approx(0.0));
    CHECK(s0 == HalfSpace::Incident);

    // Inverse construction from the frozen angle pair.
    const Vec3 beam = direction_from_profile({31.22, -27.39}, HalfSpace::Incident);
    const auto [p1, s1] = aim_profile({0, 0, 0}, beam);
    CHECK(p1.theta_deg == doctest::Approx(31.22).epsilon(1e-9));
    CHECK(p1.phi_deg == doctest::Approx(-27.39).epsilon(1e-9));
    CHECK(s1 == HalfSpace::Incident);

    const auto [p2, s2] = aim_profile({0.1, 0.2, 0}, {0.3, -0.4, -1.2});
    CHECK(s2 == HalfSpace::Transmit);

    CHECK_THROWS_AS(aim_profile({0, 0, 0.5}, {0, 0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(aim_profile({0.1, 0.1, 0}, {0.1, 0.1, 0}), std::invalid_argument);
}

TEST_CASE("angular_error basics and oracle cross-check") {
    const Vec3 d = direction_from_profile({12.0, -35.0}, HalfSpace::Incident);
    CHECK(angular_error(d, d) == 0.0);
    CHECK(angular_error({0, 0, 1}, {0, 0, -1}) == doctest::Approx(kPi));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(-89.0, 89.0);
    for (int i = 0; i < 10000; ++i) {
        const Vec3 a = direction_from_profile({angle(rng), angle(rng)}, HalfSpace::Incident);
        const Vec3 b = direction_from_profile({angle(rng), angle(rng)},
                                              i % 2 ? HalfSpace::Incident : HalfSpace::Transmit);
        CHECK(std::abs(angular_error(a, b) - angular_error_via_cross(a, b)) < 1e-9);
        CHECK(angular_error(a, b) == angular_error(b, a));
    }
}

TEST_CASE("specular_direction mirror law") {
    const double s = std::sin(deg2rad(45.0)), c = std::cos(deg2rad(45.0));
    const Vec3 out = specular_direction({0.0, -s, -c});
    CHECK(out.x == 0.0);
    CHECK(out.y == -s);
    CHECK(out.z == c);

    const Vec3 normal = specular_direction({0.0, 0.0, -1.0});
    CHECK(normal.z == 1.0);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        Vec3 in{u(rng), u(rng), -std::abs(u(rng)) - 1e-6};
        in = in.normalized();
        CHECK(specular_direction(in).z > 0.0);
    }
    CHECK_THROWS_AS(specular_direction({0.0, 0.0, 0.5}), std::invalid_argument);
}

TEST_CASE("half-space law over full grid codebooks up to k = 8") {
    for (int k = 2; k <= 8; ++k) {
        const Codebook book = Codebook::grid(k);
        for (std::uint32_t ord = 0; ord < book.size(); ++ord) {
            CHECK(direction_from_profile(*book.entry(HalfSpace::Incident, ord),
                                         HalfSpace::Incident)
                      .z > 0.0);
            CHECK(direction_from_profile(*book.entry(HalfSpace::Transmit, ord),
                                         HalfSpace::Transmit)
                      .z < 0.0);
        }
    }
}
