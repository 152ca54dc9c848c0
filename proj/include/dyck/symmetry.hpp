#pragma once

#include "dyck/surface.hpp"

#include <string>
#include <vector>

namespace dyck {

/// One combinatorial automorphism: face f goes to face_image[f] with its
/// corner c sent to corner_image[f][c].
struct Automorphism {
  std::vector<int> face_image;
  std::vector<std::array<int, 3>> corner_image;
  bool reverses_faces = false;  // corners map with odd permutation
};

struct SymmetryReport {
  int order = 0;
  int expected = 0;
  bool confirmed = false;
  std::vector<Automorphism> elements;
  std::string summary() const;
};

/// Enumerates gluing automorphisms that preserve edge lengths (to `tol`)
/// and the marked Weierstrass set, the set {p, q} and the collar faces.
SymmetryReport check_symmetry(const ConeSurface& s, int expected = 12, double tol = 1e-12);

}  // namespace dyck
