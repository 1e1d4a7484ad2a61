#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "odris/codec.hpp"
#include "odris/geometry.hpp"

namespace odris {

inline constexpr double kDefaultThetaSpanDeg = 60.0;
inline constexpr double kDefaultPhiSpanDeg = 60.0;

/// Decoded physical state of one surface element.
struct ElementState {
    Mode mode = Mode::Off;
    std::optional<PhaseProfile> reflect_profile;
    std::optional<PhaseProfile> refract_profile;
    double reflection = 0.0;    // R
    double transmission = 0.0;  // T

    static ElementState off();
    static ElementState reflector(const PhaseProfile& p, double r);
    static ElementState refractor(const PhaseProfile& p, double t);
    /// Dual-process element; R is constructed as 1 - t so R + T == 1 exactly.
    static ElementState dual(const PhaseProfile& reflect_p, const PhaseProfile& refract_p,
                             double t);

    const std::optional<PhaseProfile>& profile(HalfSpace side) const {
        return side == HalfSpace::Incident ? reflect_profile : refract_profile;
    }
    double coefficient(HalfSpace side) const {
        return side == HalfSpace::Incident ? reflection : transmission;
    }
};

enum class CodebookSource { GeneratedGrid, LoadedTable };

/// One row of a codebook mapping table: a full code string and the physical
/// meaning of its phase/coefficient blocks. Mode "both" defines the angles on
/// both sides.
struct TableRow {
    std::string code;
    Mode mode = Mode::Reflect;
    double theta_deg = 0.0;
    double phi_deg = 0.0;
    double coeff = 1.0;
};

/// Mapping from code ordinals to phase profiles (per side) and coefficient
/// levels. Grid codebooks define every entry; table codebooks may define a
/// subset per side.
class Codebook {
public:
    /// Uniform 2^ceil(k/2) x 2^floor(k/2) midpoint grid over
    /// (-theta_span, theta_span) x (-phi_span, phi_span), identical on both
    /// sides, sorted by (theta, phi). Coefficient levels are the 2^k uniform
    /// values (i+1)/2^k; zero is left to the Off mode. Requires k >= 2.
    static Codebook grid(int k, double theta_span_deg = kDefaultThetaSpanDeg,
                         double phi_span_deg = kDefaultPhiSpanDeg);

    /// Builds a codebook from explicit mapping rows, preserving the exact
    /// angle pairs. Row count must be a power of two per mode; duplicate code
    /// strings or conflicting redefinitions are rejected.
    static Codebook from_table(const std::vector<TableRow>& rows);

    int k() const { return k_; }
    std::uint32_t size() const { return std::uint32_t{1} << k_; }
    CodebookSource source() const { return source_; }

    const std::optional<PhaseProfile>& entry(HalfSpace side, std::uint32_t ordinal) const;
    bool side_defined(HalfSpace side) const;

    double coeff_level(std::uint32_t ordinal) const;
    const std::vector<double>& coeff_levels() const { return coeff_levels_; }
    std::uint32_t max_coeff_ordinal() const { return size() - 1; }

    /// Table form of this codebook (inverse of from_table up to row order).
    std::vector<TableRow> to_table() const;

private:
    Codebook() = default;

    int k_ = 0;
    CodebookSource source_ = CodebookSource::GeneratedGrid;
    std::array<std::vector<std::optional<PhaseProfile>>, 2> entries_;  // [side][ordinal]
    std::vector<double> coeff_levels_;
};

/// Result of snapping a target profile onto a codebook.
struct QuantizedProfile {
    std::uint32_t ordinal = 0;
    PhaseProfile profile;
};

/// Translates a code into the physical element state it configures.
ElementState apply_code(const Code& code, const Codebook& book);

/// Nearest codebook entry to `target` on the given side, by angular error
/// between the two emerging directions. Ties break to the lowest ordinal.
QuantizedProfile quantize_profile(const PhaseProfile& target, HalfSpace side,
                                  const Codebook& book);

}  // namespace odris
