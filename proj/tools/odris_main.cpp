// Command-line front end: codebook generation, code encode/decode, the
// built-in design example, scene simulation, and rate sweeps.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "odris/io.hpp"
#include "odris/linkrate.hpp"

namespace {

using namespace odris;

std::vector<NoiseLevel> noise_levels_from(const std::vector<double>& values) {
    if (values.empty()) return default_noise_levels();
    std::vector<NoiseLevel> out;
    for (double v : values) {
        if (!(v > 0.0)) throw std::runtime_error("--noise: values must be > 0");
        NoiseLevel level;
        level.power_w = v;
        level.label = io::format_double(v);
        out.push_back(std::move(level));
    }
    return out;
}

// "a:b" -> powers of two within [a, b]; "a:b:s" -> a, a+s, ..., <= b.
std::vector<int> parse_n_range(const std::string& text) {
    std::vector<long> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t colon = text.find(':', start);
        const std::string tok = text.substr(start, colon - start);
        parts.push_back(std::stol(tok));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (parts.size() < 2 || parts.size() > 3 || parts[0] < 0 || parts[1] < parts[0]) {
        throw std::runtime_error("--n-range: expected min:max or min:max:step");
    }
    std::vector<int> out;
    if (parts.size() == 3) {
        if (parts[2] <= 0) throw std::runtime_error("--n-range: step must be > 0");
        for (long n = parts[0]; n <= parts[1]; n += parts[2]) out.push_back(static_cast<int>(n));
    } else {
        for (long n = 1; n <= parts[1]; n *= 2) {
            if (n >= parts[0]) out.push_back(static_cast<int>(n));
        }
    }
    if (out.empty()) throw std::runtime_error("--n-range: empty range");
    return out;
}

void emit(const std::string& data, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << data;
    } else {
        io::write_file(out_path, data);
    }
}

Scene load_or_default_scene(const std::string& path, std::uint64_t seed) {
    return path.empty() ? default_sweep_scene(seed) : io::load_scene_file(path);
}

Codebook load_or_grid_codebook(const std::string& path, int k, double theta_span,
                               double phi_span) {
    return path.empty() ? Codebook::grid(k, theta_span, phi_span) : io::load_codebook_file(path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"omni-surface control-code and optical link-rate simulator"};
    app.require_subcommand(1);

    std::string scene_path, codebook_path, out_path, out_dir, mode_name_arg, bits, kind, n_range;
    std::string k_range = "2:6";
    int k = 4;
    std::uint32_t phase = 0, coeff = 0;
    double theta_span = kDefaultThetaSpanDeg, phi_span = kDefaultPhiSpanDeg;
    std::vector<double> noise_values;
    bool coupled = false, halve = false;
    double frame_bits = 1e4, beam_order = 50.0;
    std::uint64_t seed = 0;

    auto* cmd_codebook = app.add_subcommand("codebook", "generate a grid codebook JSON file");
    cmd_codebook->add_option("--k", k, "bits per block")->required();
    cmd_codebook->add_option("--theta-span", theta_span, "half-width of the theta grid, degrees");
    cmd_codebook->add_option("--phi-span", phi_span, "half-width of the phi grid, degrees");
    cmd_codebook->add_option("--out", out_path, "output path (default: stdout)");

    auto* cmd_encode = app.add_subcommand("encode", "build a code from field values");
    cmd_encode->add_option("--mode", mode_name_arg, "off|reflect|refract|both")->required();
    cmd_encode->add_option("--phase", phase, "phase ordinal");
    cmd_encode->add_option("--coeff", coeff, "coefficient ordinal");
    cmd_encode->add_option("--k", k, "bits per block")->required();

    auto* cmd_decode = app.add_subcommand("decode", "decode a serialized code");
    cmd_decode->add_option("bits", bits, "code bit string")->required();
    cmd_decode->add_option("--codebook", codebook_path, "resolve against a codebook file");

    auto* cmd_fixture = app.add_subcommand("fixture", "write the built-in design example");
    cmd_fixture->add_option("--out-dir", out_dir, "output directory")->required();

    auto* cmd_simulate = app.add_subcommand("simulate", "per-user link budgets for a scene");
    cmd_simulate->add_option("--scene", scene_path, "scene JSON (default: built-in template)");
    cmd_simulate->add_option("--codebook", codebook_path, "codebook JSON (default: --k grid)");
    cmd_simulate->add_option("--k", k, "grid codebook bits when no --codebook is given");
    cmd_simulate->add_option("--noise", noise_values, "noise powers in W")->delimiter(',');
    cmd_simulate->add_option("--mb", beam_order, "beam pattern order");
    cmd_simulate->add_flag("--half-rate", halve, "use 0.5*log2(1+SNR)");
    cmd_simulate->add_option("--seed", seed, "seed for the built-in template");
    cmd_simulate->add_option("--out", out_path, "output CSV path (default: stdout)");

    auto* cmd_sweep = app.add_subcommand("sweep", "achievable-rate sweep over k or N");
    cmd_sweep->add_option("--kind", kind, "k or n")->required();
    cmd_sweep->add_option("--k-range", k_range, "min:max bits per block (kind=k)");
    cmd_sweep->add_option("--k", k, "codebook bits (kind=n)");
    cmd_sweep->add_option("--n-range", n_range, "min:max (powers of two) or min:max:step");
    cmd_sweep->add_flag("--coupled", coupled, "couple element count to 2^k (kind=k)");
    cmd_sweep->add_option("--noise", noise_values, "noise powers in W")->delimiter(',');
    cmd_sweep->add_option("--frame-bits", frame_bits, "frame budget F in bits");
    cmd_sweep->add_option("--mb", beam_order, "beam pattern order");
    cmd_sweep->add_flag("--half-rate", halve, "use 0.5*log2(1+SNR)");
    cmd_sweep->add_option("--scene", scene_path, "scene JSON (default: built-in template)");
    cmd_sweep->add_option("--theta-span", theta_span, "codebook theta half-width, degrees");
    cmd_sweep->add_option("--phi-span", phi_span, "codebook phi half-width, degrees");
    cmd_sweep->add_option("--seed", seed, "seed for the built-in template");
    cmd_sweep->add_option("--out", out_path, "output CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_codebook->parsed()) {
            emit(io::codebook_rows_to_json(Codebook::grid(k, theta_span, phi_span).to_table()),
                 out_path);
        } else if (cmd_encode->parsed()) {
            const Code code = encode(mode_from_name(mode_name_arg), phase, coeff, k);
            std::cout << code.bits() << "\n";
        } else if (cmd_decode->parsed()) {
            const Code code = decode(bits);
            std::cout << "mode=" << mode_name(code.mode) << " k=" << code.k
                      << " phase_ordinal=" << code.phase_ordinal
                      << " coeff_ordinal=" << code.coeff_ordinal;
            if (!codebook_path.empty() && code.mode != Mode::Off) {
                const Codebook book = io::load_codebook_file(codebook_path);
                const ElementState state = apply_code(code, book);
                const auto show = [&](const char* tag, const std::optional<PhaseProfile>& p) {
                    if (p) {
                        std::cout << " " << tag << "=(" << io::format_double(p->theta_deg) << ", "
                                  << io::format_double(p->phi_deg) << ")";
                    }
                };
                show("reflect", state.reflect_profile);
                show("refract", state.refract_profile);
                std::cout << " R=" << io::format_double(state.reflection)
                          << " T=" << io::format_double(state.transmission);
            }
            std::cout << "\n";
        } else if (cmd_fixture->parsed()) {
            std::filesystem::create_directories(out_dir);
            auto [scene, book] = design_example_fixture();
            scene.codebook_ref = "codebook.json";
            io::save_scene_file(scene, out_dir + "/scene.json");
            io::save_codebook_file(book, out_dir + "/codebook.json");
            io::write_file(out_dir + "/codes.csv", io::codes_csv(scene));
            io::write_file(out_dir + "/states.csv", io::states_csv(scene, book));
        } else if (cmd_simulate->parsed()) {
            Scene scene = load_or_default_scene(scene_path, seed);
            if (codebook_path.empty() && !scene.codebook_ref.empty() && !scene_path.empty()) {
                // Resolve the scene's codebook hint relative to the scene file.
                codebook_path =
                    (std::filesystem::path(scene_path).parent_path() / scene.codebook_ref)
                        .string();
            }
            const Codebook book = load_or_grid_codebook(codebook_path, k, theta_span, phi_span);
            if (scene.assignments.empty()) scene = assign_codes(std::move(scene), book);
            RateModel model{beam_order, halve};
            std::vector<std::pair<NoiseLevel, std::vector<LinkBudget>>> runs;
            for (const NoiseLevel& noise : noise_levels_from(noise_values)) {
                runs.emplace_back(noise, simulate(scene, book, noise, model));
            }
            emit(io::budgets_csv(runs), out_path);
        } else if (cmd_sweep->parsed()) {
            const Scene scene = load_or_default_scene(scene_path, seed);
            SweepResult result;
            if (kind == "k") {
                const std::size_t colon = k_range.find(':');
                if (colon == std::string::npos) {
                    throw std::runtime_error("--k-range: expected min:max");
                }
                KSweepConfig config;
                config.k_min = std::stoi(k_range.substr(0, colon));
                config.k_max = std::stoi(k_range.substr(colon + 1));
                config.coupled = coupled;
                config.noise_levels = noise_levels_from(noise_values);
                config.model = RateModel{beam_order, halve};
                config.theta_span_deg = theta_span;
                config.phi_span_deg = phi_span;
                config.frame_bits = frame_bits;
                result = sweep_k(scene, config);
            } else if (kind == "n") {
                NSweepConfig config;
                config.n_values = parse_n_range(n_range.empty() ? "2:256" : n_range);
                config.k = k;
                config.noise_levels = noise_levels_from(noise_values);
                config.model = RateModel{beam_order, halve};
                config.theta_span_deg = theta_span;
                config.phi_span_deg = phi_span;
                config.frame_bits = frame_bits;
                result = sweep_n(scene, config);
            } else {
                throw std::runtime_error("--kind must be k or n");
            }
            emit(io::sweep_csv(result), out_path);
            if (result.axis_name == "n") {
                std::ostream& argmax_out = out_path.empty() ? std::cerr : std::cout;
                for (const SweepPoint& p : result.points) {
                    if (p.argmax) {
                        argmax_out << "argmax N (noise " << p.noise_label
                                   << ") = " << io::format_double(p.axis_value) << "\n";
                    }
                }
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "odris: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
