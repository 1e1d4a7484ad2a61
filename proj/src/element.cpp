#include "odris/element.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace odris {

namespace {

void check_coefficient(double value, const char* field) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument(std::string(field) + " = " + std::to_string(value) +
                                    " outside [0, 1]");
    }
}

std::size_t side_index(HalfSpace side) { return side == HalfSpace::Incident ? 0 : 1; }

}  // namespace

ElementState ElementState::off() { return ElementState{}; }

ElementState ElementState::reflector(const PhaseProfile& p, double r) {
    validate_profile(p);
    check_coefficient(r, "reflection coefficient");
    if (r <= 0.0) throw std::invalid_argument("reflector: reflection coefficient must be > 0");
    ElementState s;
    s.mode = Mode::Reflect;
    s.reflect_profile = p;
    s.reflection = r;
    return s;
}

ElementState ElementState::refractor(const PhaseProfile& p, double t) {
    validate_profile(p);
    check_coefficient(t, "transmission coefficient");
    if (t <= 0.0) throw std::invalid_argument("refractor: transmission coefficient must be > 0");
    ElementState s;
    s.mode = Mode::Refract;
    s.refract_profile = p;
    s.transmission = t;
    return s;
}

ElementState ElementState::dual(const PhaseProfile& reflect_p, const PhaseProfile& refract_p,
                                double t) {
    validate_profile(reflect_p);
    validate_profile(refract_p);
    check_coefficient(t, "transmission coefficient");
    ElementState s;
    s.mode = Mode::Both;
    s.reflect_profile = reflect_p;
    s.refract_profile = refract_p;
    s.transmission = t;
    s.reflection = 1.0 - t;  // exact: t in [0.5, 1] by Sterbenz, rounded to 1 otherwise
    return s;
}

Codebook Codebook::grid(int k, double theta_span_deg, double phi_span_deg) {
    if (k < 2) {
        throw std::invalid_argument(
            "Codebook::grid: k = " + std::to_string(k) +
            " cannot form a 2D grid; 1-bit codebooks must be loaded from a table");
    }
    if (k > kMaxBlockBits) {
        throw std::invalid_argument("Codebook::grid: k exceeds " + std::to_string(kMaxBlockBits));
    }
    if (!(theta_span_deg > 0.0 && theta_span_deg < 90.0) ||
        !(phi_span_deg > 0.0 && phi_span_deg < 90.0)) {
        throw std::invalid_argument("Codebook::grid: spans must lie inside (0, 90) degrees");
    }

    const int n_theta = 1 << ((k + 1) / 2);
    const int n_phi = 1 << (k / 2);

    Codebook book;
    book.k_ = k;
    book.source_ = CodebookSource::GeneratedGrid;

    std::vector<std::optional<PhaseProfile>> entries;
    entries.reserve(std::size_t{1} << k);
    for (int i = 0; i < n_theta; ++i) {
        const double theta = -theta_span_deg + (i + 0.5) * (2.0 * theta_span_deg / n_theta);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = -phi_span_deg + (j + 0.5) * (2.0 * phi_span_deg / n_phi);
            entries.push_back(PhaseProfile{theta, phi});
        }
    }
    book.entries_[0] = entries;
    book.entries_[1] = std::move(entries);

    const double n = static_cast<double>(std::uint32_t{1} << k);
    book.coeff_levels_.resize(std::size_t{1} << k);
    for (std::size_t i = 0; i < book.coeff_levels_.size(); ++i) {
        book.coeff_levels_[i] = static_cast<double>(i + 1) / n;
    }
    return book;
}

Codebook Codebook::from_table(const std::vector<TableRow>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("Codebook::from_table: empty table");
    }

    const std::size_t bit_len = rows.front().code.size();
    Codebook book;
    book.source_ = CodebookSource::LoadedTable;
    book.k_ = decode(rows.front().code).k;
    const std::size_t n = std::size_t{1} << book.k_;
    book.entries_[0].resize(n);
    book.entries_[1].resize(n);

    // Uniform default levels; rows may pin the level at their own ordinal.
    book.coeff_levels_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        book.coeff_levels_[i] = static_cast<double>(i + 1) / static_cast<double>(n);
    }

    std::vector<std::string> seen;
    std::size_t mode_counts[4] = {0, 0, 0, 0};
    for (const TableRow& row : rows) {
        if (row.code.size() != bit_len) {
            throw std::invalid_argument("Codebook::from_table: row code \"" + row.code +
                                        "\" length differs from the first row");
        }
        for (const std::string& s : seen) {
            if (s == row.code) {
                throw std::invalid_argument("Codebook::from_table: duplicate code \"" + row.code +
                                            "\"");
            }
        }
        seen.push_back(row.code);

        const Code code = decode(row.code);
        if (code.mode != row.mode) {
            throw std::invalid_argument("Codebook::from_table: code \"" + row.code +
                                        "\" mode bits disagree with row mode \"" +
                                        mode_name(row.mode) + "\"");
        }
        if (row.mode == Mode::Off) {
            throw std::invalid_argument("Codebook::from_table: off rows carry no mapping");
        }
        const PhaseProfile profile{row.theta_deg, row.phi_deg};
        validate_profile(profile);
        mode_counts[static_cast<std::size_t>(row.mode)]++;

        const bool on_incident = row.mode == Mode::Reflect || row.mode == Mode::Both;
        const bool on_transmit = row.mode == Mode::Refract || row.mode == Mode::Both;
        for (std::size_t side = 0; side < 2; ++side) {
            if ((side == 0 && !on_incident) || (side == 1 && !on_transmit)) continue;
            auto& slot = book.entries_[side][code.phase_ordinal];
            if (slot.has_value() && !(*slot == profile)) {
                throw std::invalid_argument("Codebook::from_table: conflicting profiles for phase ordinal " +
                                            std::to_string(code.phase_ordinal));
            }
            slot = profile;
        }

        check_coefficient(row.coeff, "table coeff");
        double& level = book.coeff_levels_[code.coeff_ordinal];
        if (std::abs(level - row.coeff) > 1e-12) {
            // Allow a row to re-pin its level once; conflicting pins are an error.
            bool pinned_before = false;
            for (const std::string& s : seen) {
                if (s == row.code) continue;
                const Code other = decode(s);
                if (other.coeff_ordinal == code.coeff_ordinal) pinned_before = true;
            }
            if (pinned_before) {
                throw std::invalid_argument(
                    "Codebook::from_table: conflicting coefficient levels for ordinal " +
                    std::to_string(code.coeff_ordinal));
            }
            level = row.coeff;
        }
    }

    for (std::size_t m = 0; m < 4; ++m) {
        const std::size_t c = mode_counts[m];
        if (c != 0 && (c & (c - 1)) != 0) {
            throw std::invalid_argument("Codebook::from_table: row count " + std::to_string(c) +
                                        " for mode \"" + mode_name(static_cast<Mode>(m)) +
                                        "\" is not a power of two");
        }
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(book.coeff_levels_[i] > book.coeff_levels_[i - 1])) {
            throw std::invalid_argument(
                "Codebook::from_table: coefficient levels not strictly increasing at ordinal " +
                std::to_string(i));
        }
    }
    return book;
}

const std::optional<PhaseProfile>& Codebook::entry(HalfSpace side, std::uint32_t ordinal) const {
    if (ordinal >= size()) {
        throw std::invalid_argument("Codebook::entry: ordinal " + std::to_string(ordinal) +
                                    " out of range [0, 2^" + std::to_string(k_) + ")");
    }
    return entries_[side_index(side)][ordinal];
}

bool Codebook::side_defined(HalfSpace side) const {
    for (const auto& e : entries_[side_index(side)]) {
        if (e.has_value()) return true;
    }
    return false;
}

double Codebook::coeff_level(std::uint32_t ordinal) const {
    if (ordinal >= size()) {
        throw std::invalid_argument("Codebook::coeff_level: ordinal out of range");
    }
    return coeff_levels_[ordinal];
}

std::vector<TableRow> Codebook::to_table() const {
    std::vector<TableRow> rows;
    for (std::uint32_t ord = 0; ord < size(); ++ord) {
        const auto& refl = entries_[0][ord];
        const auto& refr = entries_[1][ord];
        const std::uint32_t coeff_ord = max_coeff_ordinal();
        if (refl && refr && *refl == *refr) {
            rows.push_back(TableRow{encode(Mode::Both, ord, coeff_ord, k_).bits(), Mode::Both,
                                    refl->theta_deg, refl->phi_deg, coeff_levels_[coeff_ord]});
            continue;
        }
        if (refl) {
            rows.push_back(TableRow{encode(Mode::Reflect, ord, coeff_ord, k_).bits(), Mode::Reflect,
                                    refl->theta_deg, refl->phi_deg, coeff_levels_[coeff_ord]});
        }
        if (refr) {
            rows.push_back(TableRow{encode(Mode::Refract, ord, coeff_ord, k_).bits(), Mode::Refract,
                                    refr->theta_deg, refr->phi_deg, coeff_levels_[coeff_ord]});
        }
    }
    return rows;
}

ElementState apply_code(const Code& code, const Codebook& book) {
    if (code.k != book.k()) {
        throw std::invalid_argument("apply_code: code k = " + std::to_string(code.k) +
                                    " does not match codebook k = " + std::to_string(book.k()));
    }
    if (code.mode == Mode::Off) {
        return ElementState::off();
    }

    const auto lookup = [&](HalfSpace side) -> PhaseProfile {
        const auto& e = book.entry(side, code.phase_ordinal);
        if (!e.has_value()) {
            throw std::invalid_argument("apply_code: codebook has no " +
                                        std::string(half_space_name(side)) +
                                        "-side entry at phase ordinal " +
                                        std::to_string(code.phase_ordinal));
        }
        return *e;
    };
    const double level = book.coeff_level(code.coeff_ordinal);

    switch (code.mode) {
        case Mode::Reflect:
            return ElementState::reflector(lookup(HalfSpace::Incident), level);
        case Mode::Refract:
            return ElementState::refractor(lookup(HalfSpace::Transmit), level);
        case Mode::Both:
            // One phase block in the code: the same ordinal indexes both sides.
            return ElementState::dual(lookup(HalfSpace::Incident), lookup(HalfSpace::Transmit),
                                      level);
        case Mode::Off:
            break;
    }
    throw std::invalid_argument("apply_code: invalid mode");
}

QuantizedProfile quantize_profile(const PhaseProfile& target, HalfSpace side,
                                  const Codebook& book) {
    validate_profile(target);
    const Vec3 want = direction_from_profile(target, side);

    bool found = false;
    std::uint32_t best_ord = 0;
    double best_err = 0.0;
    PhaseProfile best_profile;
    for (std::uint32_t ord = 0; ord < book.size(); ++ord) {
        const auto& e = book.entry(side, ord);
        if (!e.has_value()) continue;
        const double err = angular_error(want, direction_from_profile(*e, side));
        if (!found || err < best_err) {
            found = true;
            best_ord = ord;
            best_err = err;
            best_profile = *e;
        }
    }
    if (!found) {
        throw std::invalid_argument(std::string("quantize_profile: codebook defines no ") +
                                    half_space_name(side) + "-side entries");
    }
    return QuantizedProfile{best_ord, best_profile};
}

}  // namespace odris
