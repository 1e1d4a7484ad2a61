#include "odris/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace odris::io {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open \"" + path + "\" for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open \"" + path + "\" for writing");
    out << content;
    if (!out) throw std::runtime_error("write to \"" + path + "\" failed");
}

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // fold -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

// json::at with the enclosing path in the error message.
const json& field(const json& j, const std::string& key, const std::string& path) {
    const auto it = j.find(key);
    if (it == j.end()) throw std::runtime_error(path + "." + key + ": missing field");
    return *it;
}

double number_at(const json& j, const std::string& key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_number()) throw std::runtime_error(path + "." + key + ": expected a number");
    return v.get<double>();
}

std::string string_at(const json& j, const std::string& key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_string()) throw std::runtime_error(path + "." + key + ": expected a string");
    return v.get<std::string>();
}

Vec3 vec3_at(const json& j, const std::string& key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_array() || v.size() != 3) {
        throw std::runtime_error(path + "." + key + ": expected [x, y, z]");
    }
    return Vec3{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

json vec3_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

}  // namespace

std::vector<TableRow> codebook_rows_from_json(const std::string& text) {
    const json root = json::parse(text);
    if (!root.is_array()) throw std::runtime_error("codebook: expected a JSON array of rows");
    std::vector<TableRow> rows;
    for (std::size_t i = 0; i < root.size(); ++i) {
        const std::string path = "codebook[" + std::to_string(i) + "]";
        const json& r = root[i];
        TableRow row;
        row.code = string_at(r, "code", path);
        row.mode = mode_from_name(string_at(r, "mode", path));
        row.theta_deg = number_at(r, "theta_deg", path);
        row.phi_deg = number_at(r, "phi_deg", path);
        row.coeff = number_at(r, "coeff", path);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string codebook_rows_to_json(const std::vector<TableRow>& rows) {
    json root = json::array();
    for (const TableRow& row : rows) {
        root.push_back(json{{"code", row.code},
                            {"mode", mode_name(row.mode)},
                            {"theta_deg", row.theta_deg},
                            {"phi_deg", row.phi_deg},
                            {"coeff", row.coeff}});
    }
    return root.dump(2) + "\n";
}

Codebook load_codebook_file(const std::string& path) {
    return Codebook::from_table(codebook_rows_from_json(read_file(path)));
}

void save_codebook_file(const Codebook& book, const std::string& path) {
    write_file(path, codebook_rows_to_json(book.to_table()));
}

Scene scene_from_json(const std::string& text) {
    const json root = json::parse(text);
    Scene scene;

    if (root.contains("room")) {
        const json& r = root["room"];
        scene.room = Room{number_at(r, "width_x", "room"), number_at(r, "height_y", "room"),
                          number_at(r, "depth_z", "room")};
    }
    const json& src = field(root, "source", "scene");
    scene.source.position = vec3_at(src, "position", "source");
    scene.source.power_w = number_at(src, "power_w", "source");
    scene.source.lambertian_m = number_at(src, "lambertian_m", "source");

    const json& users = field(root, "users", "scene");
    if (!users.is_array()) throw std::runtime_error("users: expected an array");
    for (std::size_t i = 0; i < users.size(); ++i) {
        const std::string path = "users[" + std::to_string(i) + "]";
        const json& u = users[i];
        User user;
        user.id = string_at(u, "id", path);
        user.position = vec3_at(u, "position", path);
        user.area_m2 = number_at(u, "area_m2", path);
        user.fov_deg = number_at(u, "fov_deg", path);
        user.responsivity_a_w = number_at(u, "responsivity_a_w", path);
        scene.users.push_back(std::move(user));
    }

    const json& layout = field(root, "layout", "scene");
    scene.layout.rows = static_cast<int>(number_at(layout, "rows", "layout"));
    scene.layout.cols = static_cast<int>(number_at(layout, "cols", "layout"));
    scene.layout.element_side_m = number_at(layout, "element_side_m", "layout");
    scene.layout.center = vec3_at(layout, "center", "layout");
    if (layout.contains("active")) {
        const json& act = layout["active"];
        if (!act.is_array()) throw std::runtime_error("layout.active: expected an array of indices");
        scene.layout.active.assign(static_cast<std::size_t>(scene.layout.element_count()), false);
        for (const json& v : act) {
            const int idx = v.get<int>();
            if (idx < 0 || idx >= scene.layout.element_count()) {
                throw std::runtime_error("layout.active: index " + std::to_string(idx) +
                                         " out of range");
            }
            scene.layout.active[static_cast<std::size_t>(idx)] = true;
        }
    }

    if (root.contains("codebook_ref")) {
        scene.codebook_ref = string_at(root, "codebook_ref", "scene");
    }

    if (root.contains("assignments")) {
        const json& as = root["assignments"];
        for (std::size_t i = 0; i < as.size(); ++i) {
            const std::string path = "assignments[" + std::to_string(i) + "]";
            const json& a = as[i];
            Assignment assignment;
            assignment.element_index = static_cast<int>(number_at(a, "element", path));
            assignment.user_id = string_at(a, "user", path);
            assignment.code = decode(string_at(a, "code", path));
            scene.assignments.push_back(std::move(assignment));
        }
    }

    validate_scene(scene);
    return scene;
}

std::string scene_to_json(const Scene& scene) {
    json root;
    root["room"] = json{{"width_x", scene.room.width_x},
                        {"height_y", scene.room.height_y},
                        {"depth_z", scene.room.depth_z}};
    root["source"] = json{{"position", vec3_json(scene.source.position)},
                          {"power_w", scene.source.power_w},
                          {"lambertian_m", scene.source.lambertian_m}};
    root["users"] = json::array();
    for (const User& u : scene.users) {
        root["users"].push_back(json{{"id", u.id},
                                     {"position", vec3_json(u.position)},
                                     {"area_m2", u.area_m2},
                                     {"fov_deg", u.fov_deg},
                                     {"responsivity_a_w", u.responsivity_a_w}});
    }
    json layout;
    layout["rows"] = scene.layout.rows;
    layout["cols"] = scene.layout.cols;
    layout["element_side_m"] = scene.layout.element_side_m;
    layout["center"] = vec3_json(scene.layout.center);
    json active = json::array();
    for (int idx : scene.layout.active_indices()) active.push_back(idx);
    layout["active"] = std::move(active);
    root["layout"] = std::move(layout);
    if (!scene.codebook_ref.empty()) root["codebook_ref"] = scene.codebook_ref;
    json assignments = json::array();
    for (const Assignment& a : scene.assignments) {
        assignments.push_back(
            json{{"element", a.element_index}, {"user", a.user_id}, {"code", a.code.bits()}});
    }
    root["assignments"] = std::move(assignments);
    return root.dump(2) + "\n";
}

Scene load_scene_file(const std::string& path) { return scene_from_json(read_file(path)); }

void save_scene_file(const Scene& scene, const std::string& path) {
    write_file(path, scene_to_json(scene));
}

std::string codes_csv(const Scene& scene) {
    std::string out = "element_index,row,col,user_id,code,mode\n";
    for (int i = 0; i < scene.layout.element_count(); ++i) {
        const Assignment* found = nullptr;
        for (const Assignment& a : scene.assignments) {
            if (a.element_index == i) found = &a;
        }
        out += std::to_string(i) + "," + std::to_string(i / scene.layout.cols) + "," +
               std::to_string(i % scene.layout.cols) + ",";
        if (found) {
            out += found->user_id + "," + found->code.bits() + "," + mode_name(found->code.mode);
        } else {
            out += ",off,off";
        }
        out += "\n";
    }
    return out;
}

std::string states_csv(const Scene& scene, const Codebook& book) {
    std::string out = "element_index,mode,theta_r_deg,phi_r_deg,theta_t_deg,phi_t_deg,R,T\n";
    for (int i = 0; i < scene.layout.element_count(); ++i) {
        ElementState state;  // off by default
        for (const Assignment& a : scene.assignments) {
            if (a.element_index == i) state = apply_code(a.code, book);
        }
        const auto angles = [](const std::optional<PhaseProfile>& p) {
            return p ? format_double(p->theta_deg) + "," + format_double(p->phi_deg)
                     : std::string(",");
        };
        out += std::to_string(i) + "," + mode_name(state.mode) + "," +
               angles(state.reflect_profile) + "," + angles(state.refract_profile) + "," +
               format_double(state.reflection) + "," + format_double(state.transmission) + "\n";
    }
    return out;
}

std::string budgets_csv(const std::vector<std::pair<NoiseLevel, std::vector<LinkBudget>>>& runs) {
    std::string out =
        "noise_label,user_id,element_index,incident_w,coefficient,pointing_loss,received_w,snr,"
        "rate_bps_hz\n";
    for (const auto& [noise, budgets] : runs) {
        for (const LinkBudget& b : budgets) {
            out += noise.label + "," + b.user_id + "," + std::to_string(b.element_index) + "," +
                   format_double(b.incident_w) + "," + format_double(b.coefficient) + "," +
                   format_double(b.pointing_loss) + "," + format_double(b.received_w) + "," +
                   format_double(b.snr) + "," + format_double(b.rate_bps_hz) + "\n";
        }
    }
    return out;
}

std::string sweep_csv(const SweepResult& result) {
    std::string out =
        "axis_name,axis_value,noise_label,sum_rate_bps_hz,avg_user_rate_bps_hz,"
        "overhead_efficiency,argmax_flag\n";
    for (const SweepPoint& p : result.points) {
        out += result.axis_name + "," + format_double(p.axis_value) + "," + p.noise_label + "," +
               format_double(p.sum_rate_bps_hz) + "," + format_double(p.avg_user_rate_bps_hz) +
               "," + format_double(p.overhead_efficiency) + "," + (p.argmax ? "1" : "0") + "\n";
    }
    return out;
}

}  // namespace odris::io
