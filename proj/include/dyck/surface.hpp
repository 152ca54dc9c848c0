#pragma once

#include "dyck/geometry2d.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyck {

class SurfaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reference to edge slot `slot` of face `face`: the edge from corner `slot`
/// to corner `slot + 1 (mod 3)`.
struct EdgeRef {
  int face = -1;
  int slot = 0;
  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

/// One identification of two edge slots. With flip == false the gluing is
/// orientation compatible (corner slot <-> other corner slot+1); with
/// flip == true corner slot <-> other corner slot.
struct Gluing {
  EdgeRef a;
  EdgeRef b;
  bool flip = false;
};

struct SurfacePoint {
  int face = -1;
  Vec2 local{};
};

struct Marks {
  std::vector<int> weierstrass;
  std::optional<int> p;
  std::optional<int> q;
  std::vector<EdgeRef> soul;
  std::vector<int> collar_faces;
  friend bool operator==(const Marks&, const Marks&) = default;
};

struct CornerRef {
  int face = -1;
  int corner = 0;
};

struct Vertex {
  std::vector<CornerRef> corners;  // in link order
  double angle = 0.0;
  bool boundary = false;
};

/// Triangulated piecewise-flat surface, immutable after construction.
class ConeSurface {
 public:
  ConeSurface(std::string name, std::vector<std::array<double, 3>> lengths, std::vector<Gluing> gluings,
              Marks marks = {});

  const std::string& name() const { return name_; }
  int face_count() const { return static_cast<int>(lengths_.size()); }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const std::vector<std::array<double, 3>>& lengths() const { return lengths_; }
  const std::vector<Gluing>& gluings() const { return gluings_; }
  const Marks& marks() const { return marks_; }
  ConeSurface with_marks(Marks marks) const;
  ConeSurface renamed(std::string name) const;

  double edge_length(EdgeRef e) const { return lengths_[e.face][e.slot]; }
  /// Partner slot across the gluing, if any.
  std::optional<EdgeRef> partner(EdgeRef e) const;
  bool flip(EdgeRef e) const { return slot_flip_[e.face][e.slot]; }
  bool is_boundary(EdgeRef e) const { return !partner(e).has_value(); }
  /// Corner of the partner face identified with corner `corner` (an endpoint
  /// of slot e) of e.face.
  int glued_corner(EdgeRef e, int corner) const;

  Vec2 corner_position(int face, int corner) const { return coords_[face][corner]; }
  const std::array<Vec2, 3>& face_coords(int face) const { return coords_[face]; }
  double corner_angle(int face, int corner) const { return corner_angles_[face][corner]; }
  int vertex_of(int face, int corner) const { return corner_vertex_[face][corner]; }
  const Vertex& vertex(int v) const { return vertices_[v]; }
  const std::vector<Vertex>& vertices() const { return vertices_; }

  /// Maps face-local coordinates of `e.face` into those of the partner face.
  const Iso2& transfer(EdgeRef e) const { return transfer_[e.face][e.slot]; }

  /// Angular coordinate around the vertex at (face, corner) of a direction
  /// making local angle `a` (ccw from the edge to corner+1) inside the corner.
  double vertex_angle_coordinate(int face, int corner, double a) const;
  /// Inverse of vertex_angle_coordinate: corner containing the coordinate.
  std::pair<CornerRef, double> corner_at_angle(int v, double coordinate) const;

  double area() const;
  double face_area(int f) const;
  int edge_count() const;
  int euler_characteristic() const;
  bool orientable() const { return orientable_; }
  bool closed() const { return boundary_slots_ == 0; }
  int boundary_components() const;
  /// Boundary components as closed chains of edge slots.
  std::vector<std::vector<EdgeRef>> boundary_loops() const;

  /// Sum over interior vertices of (2pi - angle) plus boundary (pi - angle),
  /// minus 2 pi chi.
  double gauss_bonnet_residual() const;
  std::vector<double> cone_angles(double smooth_tol = 1e-9) const;
  bool is_singular(int v, double tol = 1e-9) const;

  /// Structural equality: same faces, gluings and marks up to tolerance.
  bool structurally_equal(const ConeSurface& other, double tol = 1e-12) const;

 private:
  void derive();

  std::string name_;
  std::vector<std::array<double, 3>> lengths_;
  std::vector<Gluing> gluings_;
  Marks marks_;

  std::vector<std::array<EdgeRef, 3>> partner_;
  std::vector<std::array<bool, 3>> slot_flip_;
  std::vector<std::array<Vec2, 3>> coords_;
  std::vector<std::array<double, 3>> corner_angles_;
  std::vector<std::array<int, 3>> corner_vertex_;
  std::vector<std::array<double, 3>> corner_offset_;
  std::vector<std::array<bool, 3>> corner_reversed_;
  std::vector<std::array<Iso2, 3>> transfer_;
  std::vector<Vertex> vertices_;
  bool orientable_ = true;
  int boundary_slots_ = 0;
};

/// Gluing that identifies corner ca of face f with corner da of face g and
/// corner cb with db; (ca, cb) and (da, db) must each span an edge.
Gluing make_gluing(int f, int ca, int cb, int g, int da, int db);

/// Planar development of a triangulated polygon: convenience builder that
/// takes 2D corner coordinates per face and glues by corner correspondence.
class SurfaceBuilder {
 public:
  /// Adds a face from three counterclockwise points; returns its index.
  int add_face(Vec2 a, Vec2 b, Vec2 c);
  /// Glues edge (ca -> cb) of face f to edge (da -> db) of face g, where
  /// corner ca of f is identified with corner da of g.
  void glue(int f, int ca, int cb, int g, int da, int db);
  ConeSurface build(std::string name, Marks marks = {}) const;

  const std::vector<std::array<Vec2, 3>>& points() const { return pts_; }

 private:
  std::vector<std::array<Vec2, 3>> pts_;
  std::vector<Gluing> gluings_;
};

}  // namespace dyck
