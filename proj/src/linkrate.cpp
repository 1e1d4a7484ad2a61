#include "odris/linkrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace odris {

double incident_power(const Source& source, const Vec3& pos, const Vec3& normal,
                      double area_m2) {
    if (area_m2 <= 0.0) {
        throw std::invalid_argument("incident_power: area must be > 0");
    }
    const Vec3 to_patch = pos - source.position;
    const double d2 = to_patch.dot(to_patch);
    if (d2 < 1e-12) {
        throw std::invalid_argument("incident_power: patch coincides with the source");
    }
    const double d = std::sqrt(d2);
    const double cos_irradiance = -to_patch.z / d;  // source axis is -z
    const double cos_incidence = (-1.0 / d) * to_patch.dot(normal);
    if (cos_irradiance <= 0.0 || cos_incidence <= 0.0) return 0.0;
    const double m = source.lambertian_m;
    return source.power_w * (m + 1.0) / (2.0 * kPi) * std::pow(cos_irradiance, m) *
           cos_incidence * area_m2 / d2;
}

double element_incident_power(const Source& source, const Vec3& element_pos,
                              double element_area_m2) {
    if (source.position.z <= 0.0) return 0.0;
    return incident_power(source, element_pos, Vec3{0.0, 0.0, 1.0}, element_area_m2);
}

double pointing_loss(const ElementState& state, const User& user, const Vec3& element_pos,
                     double beam_order) {
    if (beam_order < 0.0) {
        throw std::invalid_argument("pointing_loss: beam order must be >= 0");
    }
    const HalfSpace side = user_side(user);
    const auto& profile = state.profile(side);
    if (!profile.has_value()) return 0.0;  // off or wrong-side element
    const Vec3 emerging = direction_from_profile(*profile, side);
    const Vec3 aim = (user.position - element_pos).normalized();
    const double err = angular_error(emerging, aim);
    return std::pow(std::clamp(std::cos(err), 0.0, 1.0), beam_order);
}

double electrical_snr(double received_w, double responsivity_a_w, double noise_power_w) {
    if (received_w < 0.0) throw std::invalid_argument("electrical_snr: received power < 0");
    if (!(noise_power_w > 0.0)) throw std::invalid_argument("electrical_snr: noise power must be > 0");
    const double photocurrent = responsivity_a_w * received_w;
    return photocurrent * photocurrent / noise_power_w;
}

double user_rate(double received_w, double responsivity_a_w, const NoiseLevel& noise,
                 bool halve_log) {
    const double snr = electrical_snr(received_w, responsivity_a_w, noise.power_w);
    const double rate = std::log2(1.0 + snr);
    return halve_log ? 0.5 * rate : rate;
}

double overhead_efficiency(int n_active, int k, double frame_bits) {
    if (!(frame_bits > 0.0)) throw std::invalid_argument("overhead_efficiency: frame_bits must be > 0");
    if (n_active < 0) throw std::invalid_argument("overhead_efficiency: n_active must be >= 0");
    const double control_bits = static_cast<double>(n_active) * 2.0 * (k + 1);
    return std::max(0.0, 1.0 - control_bits / frame_bits);
}

namespace {

std::vector<const User*> users_by_id(const Scene& scene) {
    std::vector<const User*> out;
    for (const User& u : scene.users) out.push_back(&u);
    std::sort(out.begin(), out.end(), [](const User* a, const User* b) { return a->id < b->id; });
    return out;
}

LinkBudget budget_for(const User& user, int element_index, const Vec3& element_pos,
                      double element_area, const ElementState& state, const Source& source,
                      const NoiseLevel& noise, const RateModel& model) {
    LinkBudget b;
    b.user_id = user.id;
    b.element_index = element_index;
    b.incident_w = element_incident_power(source, element_pos, element_area);
    b.coefficient = state.coefficient(user_side(user));
    b.pointing_loss = pointing_loss(state, user, element_pos, model.beam_order);
    b.received_w = b.incident_w * b.coefficient * b.pointing_loss;
    b.snr = electrical_snr(b.received_w, user.responsivity_a_w, noise.power_w);
    b.rate_bps_hz = user_rate(b.received_w, user.responsivity_a_w, noise, model.halve_log);
    return b;
}

/// Greedy nearest-first pairing over an explicit cost matrix.
/// Returns element slot per user slot, or -1 when elements run out.
std::vector<int> greedy_pairs(std::size_t n_users, std::size_t n_elems,
                              const std::vector<double>& cost) {
    std::vector<int> chosen(n_users, -1);
    std::vector<bool> user_done(n_users, false), elem_done(n_elems, false);
    const std::size_t rounds = std::min(n_users, n_elems);
    for (std::size_t r = 0; r < rounds; ++r) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bu = 0, be = 0;
        for (std::size_t ui = 0; ui < n_users; ++ui) {
            if (user_done[ui]) continue;
            for (std::size_t ei = 0; ei < n_elems; ++ei) {
                if (elem_done[ei]) continue;
                if (cost[ui * n_elems + ei] < best) {
                    best = cost[ui * n_elems + ei];
                    bu = ui;
                    be = ei;
                }
            }
        }
        user_done[bu] = true;
        elem_done[be] = true;
        chosen[bu] = static_cast<int>(be);
    }
    return chosen;
}

struct ServedUser {
    const User* user;
    Vec3 element_pos;
    int element_index;
    ElementState state;
};

double sum_rates(const std::vector<ServedUser>& served, const Source& source,
                 double element_area, const NoiseLevel& noise, const RateModel& model) {
    double sum = 0.0;
    for (const ServedUser& s : served) {
        sum += budget_for(*s.user, s.element_index, s.element_pos, element_area, s.state, source,
                          noise, model)
                   .rate_bps_hz;
    }
    return sum;
}

ElementState state_for(HalfSpace side, const QuantizedProfile& q, const Codebook& book) {
    const double level = book.coeff_level(book.max_coeff_ordinal());
    return side == HalfSpace::Incident ? ElementState::reflector(q.profile, level)
                                       : ElementState::refractor(q.profile, level);
}

void flag_argmax(SweepResult& result) {
    // Highest sum rate per noise label; earlier axis value wins ties.
    std::vector<std::string> labels;
    for (const SweepPoint& p : result.points) {
        if (std::find(labels.begin(), labels.end(), p.noise_label) == labels.end()) {
            labels.push_back(p.noise_label);
        }
    }
    for (const std::string& label : labels) {
        std::size_t best = result.points.size();
        for (std::size_t i = 0; i < result.points.size(); ++i) {
            if (result.points[i].noise_label != label) continue;
            if (best == result.points.size() ||
                result.points[i].sum_rate_bps_hz > result.points[best].sum_rate_bps_hz) {
                best = i;
            }
        }
        if (best < result.points.size()) result.points[best].argmax = true;
    }
}

}  // namespace

std::vector<LinkBudget> simulate(const Scene& scene, const Codebook& book,
                                 const NoiseLevel& noise, const RateModel& model) {
    validate_scene(scene);
    std::vector<LinkBudget> out;
    for (const User* user : users_by_id(scene)) {
        const Assignment* a = scene.find_assignment_for_user(user->id);
        if (!a) {
            LinkBudget b;
            b.user_id = user->id;
            out.push_back(b);
            continue;
        }
        const Vec3 pos = scene.layout.element_position(a->element_index);
        const ElementState state = apply_code(a->code, book);
        out.push_back(budget_for(*user, a->element_index, pos, scene.layout.element_area(), state,
                                 scene.source, noise, model));
    }
    return out;
}

double SweepResult::argmax_axis_value(std::string_view noise_label) const {
    for (const SweepPoint& p : points) {
        if (p.argmax && p.noise_label == noise_label) return p.axis_value;
    }
    throw std::invalid_argument("argmax_axis_value: no points for noise label \"" +
                                std::string(noise_label) + "\"");
}

std::vector<NoiseLevel> default_noise_levels() {
    return {{1e-7, "1e-07"}, {1e-10, "1e-10"}, {1e-13, "1e-13"}};
}

SweepResult sweep_k(const Scene& template_scene, const KSweepConfig& config) {
    if (config.k_min < 2 || config.k_max > 10 || config.k_min > config.k_max) {
        throw std::invalid_argument("sweep_k: k range must satisfy 2 <= k_min <= k_max <= 10");
    }
    validate_scene(template_scene);
    const std::vector<NoiseLevel> noises =
        config.noise_levels.empty() ? default_noise_levels() : config.noise_levels;

    const std::vector<const User*> users = users_by_id(template_scene);
    const std::vector<int> active = template_scene.layout.active_indices();
    if (!config.coupled && users.size() > active.size()) {
        throw std::invalid_argument("sweep_k: more users than active elements");
    }

    // Brightest-first master grid for coupled mode; 32x32 covers k <= 10.
    constexpr int kMasterDim = 32;
    SurfaceLayout master;
    master.rows = kMasterDim;
    master.cols = kMasterDim;
    master.element_side_m = template_scene.layout.element_side_m;
    master.center = template_scene.layout.center;
    std::vector<int> master_order(static_cast<std::size_t>(master.element_count()));
    std::iota(master_order.begin(), master_order.end(), 0);
    {
        std::vector<double> power(master_order.size());
        for (std::size_t i = 0; i < power.size(); ++i) {
            power[i] = element_incident_power(template_scene.source,
                                              master.element_position(static_cast<int>(i)),
                                              master.element_area());
        }
        std::stable_sort(master_order.begin(), master_order.end(),
                         [&](int a, int b) { return power[static_cast<std::size_t>(a)] >
                                                    power[static_cast<std::size_t>(b)]; });
    }

    const std::size_t n_k = static_cast<std::size_t>(config.k_max - config.k_min + 1);
    SweepResult result;
    result.axis_name = "k";
    result.points.resize(n_k * noises.size());

    for_each_index(result.points.size(), config.exec, [&](std::size_t pi) {
        const int k = config.k_min + static_cast<int>(pi / noises.size());
        const NoiseLevel& noise = noises[pi % noises.size()];
        const Codebook book = Codebook::grid(k, config.theta_span_deg, config.phi_span_deg);

        std::vector<ServedUser> served;
        std::vector<User> synthesized;  // owns coupled-mode users
        Source source = template_scene.source;
        double element_area = template_scene.layout.element_area();
        int n_active = 0;

        if (!config.coupled) {
            n_active = static_cast<int>(users.size());
            for (std::size_t i = 0; i < users.size(); ++i) {
                const Vec3 pos = template_scene.layout.element_position(active[i]);
                const auto [profile, side] = aim_profile(pos, users[i]->position);
                const QuantizedProfile q = quantize_profile(profile, side, book);
                served.push_back(ServedUser{users[i], pos, active[i], state_for(side, q, book)});
            }
        } else {
            const int n = 1 << k;
            n_active = n;
            source.power_w = template_scene.source.power_w / n;
            element_area = master.element_area();
            synthesized.reserve(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) {
                const int elem = master_order[static_cast<std::size_t>(j)];
                const Vec3 pos = master.element_position(elem);
                const HalfSpace side = j % 2 == 0 ? HalfSpace::Incident : HalfSpace::Transmit;
                const PhaseProfile entry = *book.entry(side, static_cast<std::uint32_t>(j));
                User u;
                u.id = "c" + std::to_string(j);
                u.position = pos + config.coupled_user_range_m * direction_from_profile(entry, side);
                synthesized.push_back(u);
            }
            for (int j = 0; j < n; ++j) {
                const int elem = master_order[static_cast<std::size_t>(j)];
                const Vec3 pos = master.element_position(elem);
                const User& u = synthesized[static_cast<std::size_t>(j)];
                const auto [profile, side] = aim_profile(pos, u.position);
                const QuantizedProfile q = quantize_profile(profile, side, book);
                served.push_back(ServedUser{&u, pos, elem, state_for(side, q, book)});
            }
        }

        const double sum = sum_rates(served, source, element_area, noise, config.model);
        SweepPoint& p = result.points[pi];
        p.axis_value = k;
        p.noise_label = noise.label;
        p.noise_power_w = noise.power_w;
        p.overhead_efficiency = overhead_efficiency(n_active, k, config.frame_bits);
        p.sum_rate_bps_hz = sum * p.overhead_efficiency;
        p.avg_user_rate_bps_hz = served.empty() ? 0.0 : sum / static_cast<double>(served.size());
    });

    flag_argmax(result);
    return result;
}

SweepResult sweep_n(const Scene& template_scene, const NSweepConfig& config) {
    if (config.n_values.empty()) throw std::invalid_argument("sweep_n: empty N range");
    for (int n : config.n_values) {
        if (n < 0 || n > 65536) throw std::invalid_argument("sweep_n: N must be in [0, 65536]");
    }
    if (!(config.aperture_side_m > 0.0)) {
        throw std::invalid_argument("sweep_n: aperture side must be > 0");
    }
    validate_scene(template_scene);
    const std::vector<NoiseLevel> noises =
        config.noise_levels.empty() ? default_noise_levels() : config.noise_levels;
    const std::vector<const User*> users = users_by_id(template_scene);

    SweepResult result;
    result.axis_name = "n";
    result.points.resize(config.n_values.size() * noises.size());

    for_each_index(result.points.size(), config.exec, [&](std::size_t pi) {
        const int n = config.n_values[pi / noises.size()];
        const NoiseLevel& noise = noises[pi % noises.size()];
        SweepPoint& p = result.points[pi];
        p.axis_value = n;
        p.noise_label = noise.label;
        p.noise_power_w = noise.power_w;

        if (n == 0 || users.empty()) {
            p.overhead_efficiency = overhead_efficiency(0, config.k, config.frame_bits);
            return;
        }

        const Codebook book =
            Codebook::grid(config.k, config.theta_span_deg, config.phi_span_deg);
        const double aperture = config.aperture_side_m;
        const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
        const int rows = (n + cols - 1) / cols;
        std::vector<Vec3> positions;
        positions.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const int r = i / cols;
            const int c = i % cols;
            positions.push_back(Vec3{
                template_scene.layout.center.x + (c + 0.5) * aperture / cols - aperture / 2.0,
                template_scene.layout.center.y + aperture / 2.0 - (r + 0.5) * aperture / rows,
                0.0});
        }
        const double element_area = aperture * aperture / n;

        const std::size_t n_served = std::min<std::size_t>(users.size(), positions.size());
        std::vector<double> cost(n_served * positions.size());
        for (std::size_t ui = 0; ui < n_served; ++ui) {
            for (std::size_t ei = 0; ei < positions.size(); ++ei) {
                const auto [profile, side] = aim_profile(positions[ei], users[ui]->position);
                const QuantizedProfile q = quantize_profile(profile, side, book);
                cost[ui * positions.size() + ei] =
                    angular_error(direction_from_profile(profile, side),
                                  direction_from_profile(q.profile, side));
            }
        }
        const std::vector<int> chosen = greedy_pairs(n_served, positions.size(), cost);

        std::vector<ServedUser> served;
        for (std::size_t ui = 0; ui < n_served; ++ui) {
            const Vec3 pos = positions[static_cast<std::size_t>(chosen[ui])];
            const auto [profile, side] = aim_profile(pos, users[ui]->position);
            const QuantizedProfile q = quantize_profile(profile, side, book);
            served.push_back(ServedUser{users[ui], pos, chosen[ui], state_for(side, q, book)});
        }

        const double sum = sum_rates(served, template_scene.source, element_area, noise,
                                     config.model);
        p.overhead_efficiency =
            overhead_efficiency(static_cast<int>(n_served), config.k, config.frame_bits);
        p.sum_rate_bps_hz = sum * p.overhead_efficiency;
        p.avg_user_rate_bps_hz = served.empty() ? 0.0 : sum / static_cast<double>(served.size());
    });

    flag_argmax(result);
    return result;
}

Scene default_sweep_scene(std::uint64_t seed) {
    Scene scene;
    scene.room = Room{6.0, 6.0, 6.0};
    scene.source = Source{{0.0, -1.0, 1.5}, 5.0, 1.0};
    scene.layout.rows = 4;
    scene.layout.cols = 4;
    scene.layout.element_side_m = 0.1;
    scene.layout.center = {0.0, 0.0, 0.0};
    scene.layout.active.assign(16, false);

    // Users sit on directions of the finest swept codebook (k = 6: an 8x8
    // grid), in cells whose quantization error shrinks at every refinement.
    const int active_elements[8] = {0, 3, 5, 6, 9, 10, 12, 15};
    const struct {
        int i_theta, i_phi;
        HalfSpace side;
    } picks[8] = {
        {0, 3, HalfSpace::Incident}, {3, 0, HalfSpace::Incident},
        {4, 7, HalfSpace::Incident}, {7, 4, HalfSpace::Incident},
        {0, 4, HalfSpace::Transmit}, {3, 7, HalfSpace::Transmit},
        {4, 0, HalfSpace::Transmit}, {7, 3, HalfSpace::Transmit},
    };
    constexpr double kRange = 2.5;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-3.0, 3.0);
    for (int i = 0; i < 8; ++i) {
        const int elem = active_elements[i];
        scene.layout.active[static_cast<std::size_t>(elem)] = true;
        double theta = -60.0 + (picks[i].i_theta + 0.5) * 15.0;
        double phi = -60.0 + (picks[i].i_phi + 0.5) * 15.0;
        if (seed != 0) {
            theta += jitter(rng);
            phi += jitter(rng);
        }
        User u;
        u.id = "u" + std::to_string(i);
        u.position = scene.layout.element_position(elem) +
                     kRange * direction_from_profile({theta, phi}, picks[i].side);
        scene.users.push_back(u);
    }
    return scene;
}

}  // namespace odris
