#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "odris/element.hpp"

namespace odris {

struct Room {
    double width_x = 5.0;
    double height_y = 3.0;
    double depth_z = 5.0;
};

/// Optical source on the incident side (z > 0); a Lambertian emitter of
/// order m facing the surface plane along -z.
struct Source {
    Vec3 position{0.0, -1.0, 1.5};
    double power_w = 5.0;
    double lambertian_m = 1.0;
};

struct User {
    std::string id;
    Vec3 position;
    double area_m2 = 1e-4;
    double fov_deg = 85.0;
    double responsivity_a_w = 0.5;
};

/// Rectangular element grid centered on the surface plane. Element indices
/// run row-major; index 0 is the top-left element seen from the incident
/// side (x to the right, y up).
struct SurfaceLayout {
    int rows = 4;
    int cols = 4;
    double element_side_m = 0.1;
    Vec3 center{0.0, 0.0, 0.0};
    std::vector<bool> active;  // size rows*cols

    int element_count() const { return rows * cols; }
    double element_area() const { return element_side_m * element_side_m; }
    Vec3 element_position(int index) const;
    std::vector<int> active_indices() const;
};

struct Assignment {
    int element_index = -1;
    std::string user_id;
    Code code;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct Scene {
    Room room;
    Source source;
    std::vector<User> users;
    SurfaceLayout layout;
    std::vector<Assignment> assignments;  // sorted by element_index
    std::string codebook_ref;             // optional path hint for tooling

    const User* find_user(std::string_view id) const;
    const Assignment* find_assignment_for_user(std::string_view id) const;
};

/// Structural validation; error messages carry the offending field path.
void validate_scene(const Scene& scene);

/// Half-space a user is served from, by the sign of its z coordinate.
HalfSpace user_side(const User& user);

/// Quantization cost of serving `user` from an element: the angular error
/// between the exact aim direction and the nearest codebook direction.
double assignment_cost(const User& user, const Vec3& element_pos, const Codebook& book);

/// Pairs users (sorted by id) with active elements (by grid order) greedily
/// by lowest quantization cost, lowest indices breaking ties, then emits one
/// full-power code per pairing. Users on z > 0 get Reflect codes, users on
/// z < 0 get Refract codes. Deterministic and idempotent.
Scene assign_codes(Scene scene, const Codebook& book);

/// Moves one user and recomputes only that user's element code.
Scene retarget(Scene scene, std::string_view user_id, const Vec3& new_position,
               const Codebook& book);

/// The eight-row mapping table of the built-in design example.
std::vector<TableRow> design_example_table();

/// Built-in design example: a 4x4 surface with the four corner elements
/// reflecting to users A-D, the four center elements refracting to users E-H,
/// and the remaining eight elements off. User positions sit at unit distance
/// from their serving element along the table directions, so the emitted
/// codes are reproducible bit-for-bit.
std::pair<Scene, Codebook> design_example_fixture();

}  // namespace odris
