#include "odris/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace odris {

Vec3 SurfaceLayout::element_position(int index) const {
    if (index < 0 || index >= element_count()) {
        throw std::invalid_argument("element_position: index " + std::to_string(index) +
                                    " out of range");
    }
    const int r = index / cols;
    const int c = index % cols;
    return {center.x + (c - (cols - 1) / 2.0) * element_side_m,
            center.y + ((rows - 1) / 2.0 - r) * element_side_m, center.z};
}

std::vector<int> SurfaceLayout::active_indices() const {
    std::vector<int> out;
    for (int i = 0; i < element_count(); ++i) {
        if (active.empty() || active[static_cast<std::size_t>(i)]) out.push_back(i);
    }
    return out;
}

const User* Scene::find_user(std::string_view id) const {
    for (const User& u : users) {
        if (u.id == id) return &u;
    }
    return nullptr;
}

const Assignment* Scene::find_assignment_for_user(std::string_view id) const {
    for (const Assignment& a : assignments) {
        if (a.user_id == id) return &a;
    }
    return nullptr;
}

void validate_scene(const Scene& scene) {
    const auto fail = [](const std::string& path, const std::string& what) {
        throw std::invalid_argument(path + ": " + what);
    };

    if (!(scene.room.width_x > 0) || !(scene.room.height_y > 0) || !(scene.room.depth_z > 0)) {
        fail("room", "dimensions must be positive");
    }
    if (scene.source.power_w < 0) fail("source.power_w", "must be >= 0");
    if (!(scene.source.position.z > 0)) fail("source.position", "source must sit on the z > 0 side");
    if (!(scene.source.lambertian_m >= 1)) fail("source.lambertian_m", "must be >= 1");

    if (scene.layout.rows < 1 || scene.layout.cols < 1) fail("layout", "rows and cols must be >= 1");
    if (!(scene.layout.element_side_m > 0)) fail("layout.element_side_m", "must be > 0");
    if (std::abs(scene.layout.center.z) > 1e-9) {
        fail("layout.center", "surface must lie in the z = 0 plane");
    }
    if (!scene.layout.active.empty() &&
        scene.layout.active.size() != static_cast<std::size_t>(scene.layout.element_count())) {
        fail("layout.active", "size must equal rows*cols");
    }

    std::set<std::string> ids;
    for (std::size_t i = 0; i < scene.users.size(); ++i) {
        const User& u = scene.users[i];
        const std::string path = "users[" + std::to_string(i) + "]";
        if (u.id.empty()) fail(path + ".id", "must not be empty");
        if (!ids.insert(u.id).second) fail(path + ".id", "duplicate id \"" + u.id + "\"");
        if (!(u.area_m2 > 0)) fail(path + ".area_m2", "must be > 0");
        if (!(u.fov_deg > 0 && u.fov_deg <= 90)) fail(path + ".fov_deg", "must be in (0, 90]");
        if (!(u.responsivity_a_w > 0)) fail(path + ".responsivity_a_w", "must be > 0");
        if (std::abs(u.position.z) <= 1e-9) {
            fail(path + ".position", "user may not sit on the surface plane");
        }
    }

    for (std::size_t i = 0; i < scene.assignments.size(); ++i) {
        const Assignment& a = scene.assignments[i];
        const std::string path = "assignments[" + std::to_string(i) + "]";
        if (a.element_index < 0 || a.element_index >= scene.layout.element_count()) {
            fail(path + ".element", "element index out of range");
        }
        if (!scene.find_user(a.user_id)) fail(path + ".user", "unknown user \"" + a.user_id + "\"");
    }
}

HalfSpace user_side(const User& user) {
    return user.position.z > 0 ? HalfSpace::Incident : HalfSpace::Transmit;
}

double assignment_cost(const User& user, const Vec3& element_pos, const Codebook& book) {
    const auto [profile, side] = aim_profile(element_pos, user.position);
    const QuantizedProfile q = quantize_profile(profile, side, book);
    const Vec3 want = direction_from_profile(profile, side);
    return angular_error(want, direction_from_profile(q.profile, side));
}

namespace {

Code code_for(const User& user, const Vec3& element_pos, const Codebook& book) {
    const auto [profile, side] = aim_profile(element_pos, user.position);
    const QuantizedProfile q = quantize_profile(profile, side, book);
    const Mode mode = side == HalfSpace::Incident ? Mode::Reflect : Mode::Refract;
    // Single-process assignments run the element at the top coefficient level.
    return encode(mode, q.ordinal, book.max_coeff_ordinal(), book.k());
}

}  // namespace

Scene assign_codes(Scene scene, const Codebook& book) {
    validate_scene(scene);

    std::vector<const User*> users;
    for (const User& u : scene.users) users.push_back(&u);
    std::sort(users.begin(), users.end(),
              [](const User* a, const User* b) { return a->id < b->id; });

    const std::vector<int> elements = scene.layout.active_indices();
    if (users.size() > elements.size()) {
        throw std::invalid_argument("assign_codes: " + std::to_string(users.size()) +
                                    " users exceed " + std::to_string(elements.size()) +
                                    " active elements");
    }

    // Cost matrix, then greedy nearest-first with (user, element) tie-break.
    const std::size_t nu = users.size();
    const std::size_t ne = elements.size();
    std::vector<double> cost(nu * ne);
    for (std::size_t ui = 0; ui < nu; ++ui) {
        for (std::size_t ei = 0; ei < ne; ++ei) {
            cost[ui * ne + ei] =
                assignment_cost(*users[ui], scene.layout.element_position(elements[ei]), book);
        }
    }

    std::vector<bool> user_done(nu, false), elem_done(ne, false);
    std::vector<Assignment> assignments;
    for (std::size_t round = 0; round < nu; ++round) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bu = 0, be = 0;
        for (std::size_t ui = 0; ui < nu; ++ui) {
            if (user_done[ui]) continue;
            for (std::size_t ei = 0; ei < ne; ++ei) {
                if (elem_done[ei]) continue;
                if (cost[ui * ne + ei] < best) {
                    best = cost[ui * ne + ei];
                    bu = ui;
                    be = ei;
                }
            }
        }
        user_done[bu] = true;
        elem_done[be] = true;
        const Vec3 pos = scene.layout.element_position(elements[be]);
        assignments.push_back(Assignment{elements[be], users[bu]->id,
                                         code_for(*users[bu], pos, book)});
    }

    std::sort(assignments.begin(), assignments.end(),
              [](const Assignment& a, const Assignment& b) {
                  return a.element_index < b.element_index;
              });
    scene.assignments = std::move(assignments);
    return scene;
}

Scene retarget(Scene scene, std::string_view user_id, const Vec3& new_position,
               const Codebook& book) {
    User* user = nullptr;
    for (User& u : scene.users) {
        if (u.id == user_id) user = &u;
    }
    if (!user) {
        throw std::invalid_argument("retarget: unknown user \"" + std::string(user_id) + "\"");
    }
    Assignment* assignment = nullptr;
    for (Assignment& a : scene.assignments) {
        if (a.user_id == user_id) assignment = &a;
    }
    if (!assignment) {
        throw std::invalid_argument("retarget: user \"" + std::string(user_id) +
                                    "\" has no assigned element; run assign_codes first");
    }

    user->position = new_position;
    if (std::abs(user->position.z) <= 1e-9) {
        throw std::invalid_argument("retarget: new position may not sit on the surface plane");
    }
    assignment->code =
        code_for(*user, scene.layout.element_position(assignment->element_index), book);
    return scene;
}

std::vector<TableRow> design_example_table() {
    return {
        {"0100001000", Mode::Reflect, 31.22, -27.39, 1.0},
        {"0100101000", Mode::Reflect, -31.22, -27.39, 1.0},
        {"0110101000", Mode::Reflect, 31.22, 27.39, 1.0},
        {"0110001000", Mode::Reflect, -31.22, 27.39, 1.0},
        {"1001111000", Mode::Refract, 36.47, -30.33, 1.0},
        {"1001011000", Mode::Refract, 36.47, 30.33, 1.0},
        {"1011011000", Mode::Refract, -36.47, -30.33, 1.0},
        {"1011111000", Mode::Refract, -36.47, 30.33, 1.0},
    };
}

std::pair<Scene, Codebook> design_example_fixture() {
    const std::vector<TableRow> table = design_example_table();
    Codebook book = Codebook::from_table(table);

    Scene scene;
    scene.room = Room{5.0, 3.0, 5.0};
    scene.source = Source{{0.0, -1.0, 1.5}, 5.0, 1.0};
    scene.layout.rows = 4;
    scene.layout.cols = 4;
    scene.layout.element_side_m = 0.1;
    scene.layout.center = {0.0, 0.0, 0.0};
    scene.layout.active.assign(16, false);

    // Corner elements reflect, center elements refract, the rest stay off.
    const struct {
        int element;
        const char* user_id;
        std::size_t table_row;
    } placements[] = {
        {0, "A", 0}, {3, "B", 1}, {12, "C", 2}, {15, "D", 3},
        {5, "E", 4}, {6, "F", 5}, {9, "G", 6},  {10, "H", 7},
    };
    for (const auto& p : placements) {
        scene.layout.active[static_cast<std::size_t>(p.element)] = true;
        const TableRow& row = table[p.table_row];
        const HalfSpace side =
            row.mode == Mode::Reflect ? HalfSpace::Incident : HalfSpace::Transmit;
        const Vec3 beam = direction_from_profile({row.theta_deg, row.phi_deg}, side);
        User user;
        user.id = p.user_id;
        user.position = scene.layout.element_position(p.element) + beam;
        scene.users.push_back(user);
    }

    scene = assign_codes(std::move(scene), book);
    return {std::move(scene), std::move(book)};
}

}  // namespace odris
