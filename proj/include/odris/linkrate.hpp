#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "odris/parallel.hpp"
#include "odris/scene.hpp"

namespace odris {

/// Electrical-domain noise variance after detection, expressed as an
/// equivalent optical noise power.
struct NoiseLevel {
    double power_w = 1e-10;
    std::string label = "1e-10";
};

struct RateModel {
    /// Exponent of the cos^m beam pattern used for pointing loss.
    double beam_order = 50.0;
    /// Use the conservative 0.5*log2(1+SNR) rate form instead of log2(1+SNR).
    bool halve_log = false;
};

/// Per-user link budget for one configuration and noise level.
struct LinkBudget {
    std::string user_id;
    int element_index = -1;
    double incident_w = 0.0;
    double coefficient = 0.0;
    double pointing_loss = 0.0;
    double received_w = 0.0;
    double snr = 0.0;
    double rate_bps_hz = 0.0;
};

/// Lambertian incident power on a patch at `pos` with the given unit normal.
/// The source radiates (m+1)/(2pi) cos^m around its -z axis.
double incident_power(const Source& source, const Vec3& pos, const Vec3& normal, double area_m2);

/// Incident power on a surface element (z = 0, normal +z toward the source).
double element_incident_power(const Source& source, const Vec3& element_pos,
                              double element_area_m2);

/// cos^beam_order of the angle between the element's quantized emerging
/// direction and the exact direction to the user, clamped to [0, 1]. A state
/// with no profile on the user's side yields 0.
double pointing_loss(const ElementState& state, const User& user, const Vec3& element_pos,
                     double beam_order);

double electrical_snr(double received_w, double responsivity_a_w, double noise_power_w);

/// log2(1 + SNR) with SNR = (responsivity * P_rx)^2 / noise power.
double user_rate(double received_w, double responsivity_a_w, const NoiseLevel& noise,
                 bool halve_log = false);

/// Fraction of a frame of `frame_bits` bits left after transferring one
/// 2(k+1)-bit control code to each of `n_active` elements; clamped at 0.
double overhead_efficiency(int n_active, int k, double frame_bits);

/// Budgets for every user of an assigned scene, sorted by user id.
std::vector<LinkBudget> simulate(const Scene& scene, const Codebook& book,
                                 const NoiseLevel& noise, const RateModel& model = {});

struct SweepPoint {
    double axis_value = 0.0;
    std::string noise_label;
    double noise_power_w = 0.0;
    double sum_rate_bps_hz = 0.0;       // overhead efficiency applied
    double avg_user_rate_bps_hz = 0.0;  // plain average over served users
    double overhead_efficiency = 1.0;
    bool argmax = false;  // highest sum rate among this noise level's points
};

struct SweepResult {
    std::string axis_name;          // "k" or "n"
    std::vector<SweepPoint> points; // axis-major, noise levels in config order
    double argmax_axis_value(std::string_view noise_label) const;
};

std::vector<NoiseLevel> default_noise_levels();

/// Sweep over bits per phase shift. Decoupled mode keeps the template's
/// users and active elements (paired in id/grid order) and only refines the
/// codebook. Coupled mode activates 2^k elements, brightest first, splits
/// the source power equally among them, and serves one synthesized user per
/// element placed exactly on that element's codebook direction.
struct KSweepConfig {
    int k_min = 2;
    int k_max = 6;
    bool coupled = false;
    std::vector<NoiseLevel> noise_levels;  // empty -> defaults
    RateModel model;
    double theta_span_deg = kDefaultThetaSpanDeg;
    double phi_span_deg = kDefaultPhiSpanDeg;
    double frame_bits = 1e4;
    double coupled_user_range_m = 2.5;
    Exec exec = Exec::Parallel;
};

SweepResult sweep_k(const Scene& template_scene, const KSweepConfig& config);

/// Sweep over the element count. A fixed square aperture is divided into N
/// elements; the first min(N, users) users (by id) are served via the greedy
/// pairing; the sum rate carries the control-code overhead factor.
struct NSweepConfig {
    std::vector<int> n_values;
    int k = 4;
    std::vector<NoiseLevel> noise_levels;  // empty -> defaults
    RateModel model;
    double theta_span_deg = kDefaultThetaSpanDeg;
    double phi_span_deg = kDefaultPhiSpanDeg;
    double frame_bits = 1e4;
    double aperture_side_m = 0.4;
    Exec exec = Exec::Parallel;
};

SweepResult sweep_n(const Scene& template_scene, const NSweepConfig& config);

/// Canonical sweep template: a 4x4 surface with eight active elements and
/// eight users placed 2.5 m out along fixed codebook directions, half on
/// each side. A nonzero seed jitters the user directions by up to +-3
/// degrees; seed 0 is the exact canonical placement.
Scene default_sweep_scene(std::uint64_t seed = 0);

}  // namespace odris
