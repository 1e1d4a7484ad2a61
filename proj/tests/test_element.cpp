#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "odris/element.hpp"
#include "odris/scene.hpp"

using namespace odris;

namespace {

// Brute-force oracle: scan every defined entry, lexicographic (error, ordinal)
// minimum. Deliberately a separate code path from quantize_profile.
QuantizedProfile brute_force_nearest(const PhaseProfile& target, HalfSpace side,
                                     const Codebook& book) {
    const Vec3 want = direction_from_profile(target, side);
    std::vector<std::pair<double, std::uint32_t>> scored;
    for (std::uint32_t ord = 0; ord < book.size(); ++ord) {
        if (!book.entry(side, ord)) continue;
        scored.emplace_back(
            angular_error(want, direction_from_profile(*book.entry(side, ord), side)), ord);
    }
    const auto best = std::min_element(scored.begin(), scored.end());
    return {best->second, *book.entry(side, best->second)};
}

}  // namespace

TEST_CASE("grid codebook shape and entries") {
    const Codebook book = Codebook::grid(4);
    CHECK(book.k() == 4);
    CHECK(book.size() == 16);

    const Codebook small = Codebook::grid(2, 45.0, 45.0);
    CHECK(small.size() == 4);
    const PhaseProfile e0 = *small.entry(HalfSpace::Incident, 0);
    CHECK(e0.theta_deg == -22.5);
    CHECK(e0.phi_deg == -22.5);
    const PhaseProfile e3 = *small.entry(HalfSpace::Transmit, 3);
    CHECK(e3.theta_deg == 22.5);
    CHECK(e3.phi_deg == 22.5);

    CHECK_THROWS_AS(Codebook::grid(1), std::invalid_argument);
    CHECK_THROWS_AS(Codebook::grid(4, 95.0, 45.0), std::invalid_argument);
}

TEST_CASE("grid entries are pairwise distinct and sorted by (theta, phi)") {
    for (int k = 2; k <= 6; ++k) {
        const Codebook book = Codebook::grid(k);
        std::set<std::pair<double, double>> seen;
        std::pair<double, double> prev{-1e9, -1e9};
        for (std::uint32_t ord = 0; ord < book.size(); ++ord) {
            const PhaseProfile& p = *book.entry(HalfSpace::Incident, ord);
            const std::pair<double, double> cur{p.theta_deg, p.phi_deg};
            CHECK(seen.insert(cur).second);
            CHECK(prev < cur);
            prev = cur;
        }
    }
}

TEST_CASE("coefficient levels are the uniform ladder over (0, 1]") {
    const Codebook book = Codebook::grid(4);
    CHECK(book.coeff_level(0) == 1.0 / 16.0);
    CHECK(book.coeff_level(15) == 1.0);
    for (std::uint32_t i = 1; i < book.size(); ++i) {
        CHECK(book.coeff_level(i) > book.coeff_level(i - 1));
    }
}

TEST_CASE("codebook from the design example table") {
    const Codebook book = Codebook::from_table(design_example_table());
    CHECK(book.k() == 4);
    CHECK(book.source() == CodebookSource::LoadedTable);

    const PhaseProfile& r0 = *book.entry(HalfSpace::Incident, 0);
    CHECK(r0.theta_deg == 31.22);
    CHECK(r0.phi_deg == -27.39);

    // "1001111000": transmit side, phase ordinal 5.
    const PhaseProfile& t5 = *book.entry(HalfSpace::Transmit, 5);
    CHECK(t5.theta_deg == 36.47);
    CHECK(t5.phi_deg == -30.33);

    CHECK(!book.entry(HalfSpace::Incident, 1).has_value());
    CHECK(book.coeff_level(15) == 1.0);
}

TEST_CASE("from_table validation") {
    CHECK_THROWS_AS(Codebook::from_table({}), std::invalid_argument);

    auto rows = design_example_table();
    rows.push_back(rows.front());
    CHECK_THROWS_WITH_AS(Codebook::from_table(rows), doctest::Contains("duplicate"),
                         std::invalid_argument);

    rows = design_example_table();
    rows.pop_back();  // 3 refract rows: not a power of two
    CHECK_THROWS_WITH_AS(Codebook::from_table(rows), doctest::Contains("power of two"),
                         std::invalid_argument);

    rows = design_example_table();
    rows[1].mode = Mode::Refract;  // disagrees with the 01 mode bits
    CHECK_THROWS_AS(Codebook::from_table(rows), std::invalid_argument);
}

TEST_CASE("apply_code on the fixture codebook") {
    const Codebook book = Codebook::from_table(design_example_table());
    const ElementState s = apply_code(decode("0100001000"), book);
    CHECK(s.mode == Mode::Reflect);
    REQUIRE(s.reflect_profile.has_value());
    CHECK(s.reflect_profile->theta_deg == 31.22);
    CHECK(s.reflect_profile->phi_deg == -27.39);
    CHECK(s.reflection == 1.0);
    CHECK(s.transmission == 0.0);
    CHECK(!s.refract_profile.has_value());

    const ElementState off = apply_code(decode("0010101010"), book);
    CHECK(off.mode == Mode::Off);
    CHECK(off.reflection == 0.0);
    CHECK(off.transmission == 0.0);
    CHECK(!off.reflect_profile.has_value());
    CHECK(!off.refract_profile.has_value());

    CHECK_THROWS_WITH_AS(apply_code(encode(Mode::Reflect, 0, 0, 3), book),
                         doctest::Contains("does not match"), std::invalid_argument);
    // Phase ordinal 1 has no reflect-side entry in the table book.
    CHECK_THROWS_AS(apply_code(encode(Mode::Reflect, 1, 15, 4), book), std::invalid_argument);
}

TEST_CASE("dual elements split 60/40 exactly") {
    Codebook book = Codebook::grid(4);
    // Pin level 9 (uniform 0.625) to 0.6 through a table round trip.
    auto rows = book.to_table();
    for (auto& row : rows) row.mode = Mode::Both;
    TableRow pin = rows[2];
    pin.code = encode(Mode::Both, 2, 9, 4).bits();
    pin.coeff = 0.6;
    rows[2] = pin;
    const Codebook pinned = Codebook::from_table(rows);

    const ElementState s = apply_code(decode(pin.code), pinned);
    CHECK(s.mode == Mode::Both);
    CHECK(s.transmission == 0.6);
    CHECK(s.reflection == 0.4);
    CHECK(s.reflection + s.transmission == 1.0);
    REQUIRE(s.reflect_profile.has_value());
    REQUIRE(s.refract_profile.has_value());
    CHECK(*s.reflect_profile == *s.refract_profile);  // mirrored ordinal
}

TEST_CASE("dual coefficient conservation holds exactly for random codes") {
    const Codebook book = Codebook::grid(5);
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::uint32_t> ord(0, book.size() - 1);
    for (int i = 0; i < 10000; ++i) {
        const ElementState s = apply_code(encode(Mode::Both, ord(rng), ord(rng), 5), book);
        CHECK(s.reflection + s.transmission == 1.0);
        CHECK(s.reflection >= 0.0);
        CHECK(s.transmission > 0.0);
    }
}

TEST_CASE("quantize_profile is idempotent on codebook entries") {
    for (int k = 2; k <= 5; ++k) {
        const Codebook book = Codebook::grid(k);
        for (std::uint32_t ord = 0; ord < book.size(); ++ord) {
            for (HalfSpace side : {HalfSpace::Incident, HalfSpace::Transmit}) {
                const QuantizedProfile q = quantize_profile(*book.entry(side, ord), side, book);
                CHECK(q.ordinal == ord);
                CHECK(q.profile == *book.entry(side, ord));
            }
        }
    }
}

TEST_CASE("quantize_profile ties break to the lowest ordinal") {
    const Codebook book = Codebook::grid(2, 45.0, 45.0);
    // Midway between entries 0 (-22.5, -22.5) and 1 (-22.5, +22.5).
    const QuantizedProfile q =
        quantize_profile({-22.5, 0.0}, HalfSpace::Incident, book);
    CHECK(q.ordinal == 0);
}

TEST_CASE("quantize_profile equals the brute-force oracle on seeded targets") {
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> angle(-75.0, 75.0);
    for (int k = 2; k <= 6; ++k) {
        const Codebook book = Codebook::grid(k);
        for (int i = 0; i < 1000; ++i) {
            const PhaseProfile target{angle(rng), angle(rng)};
            const HalfSpace side = i % 2 ? HalfSpace::Transmit : HalfSpace::Incident;
            const QuantizedProfile got = quantize_profile(target, side, book);
            const QuantizedProfile want = brute_force_nearest(target, side, book);
            REQUIRE(got.ordinal == want.ordinal);
            CHECK(got.profile == want.profile);
        }
    }
}

TEST_CASE("quantize_profile on a one-sided table book") {
    std::vector<TableRow> rows = {design_example_table()[0], design_example_table()[1],
                                  design_example_table()[2], design_example_table()[3]};
    const Codebook book = Codebook::from_table(rows);
    CHECK(book.side_defined(HalfSpace::Incident));
    CHECK(!book.side_defined(HalfSpace::Transmit));
    CHECK_THROWS_AS(quantize_profile({0.0, 0.0}, HalfSpace::Transmit, book),
                    std::invalid_argument);
    const QuantizedProfile q = quantize_profile({30.0, -25.0}, HalfSpace::Incident, book);
    CHECK(q.ordinal == 0);
}
