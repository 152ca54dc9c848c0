#include "dyck/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <set>

namespace dyck {

namespace {

constexpr std::array<std::array<int, 3>, 6> kPerms = {
    {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};

int slot_between(int a, int b) { return b == (a + 1) % 3 ? a : b; }

std::optional<Automorphism> extend(const ConeSurface& s, int g0, const std::array<int, 3>& pi0, double tol) {
  const int nf = s.face_count();
  Automorphism a;
  a.face_image.assign(nf, -1);
  a.corner_image.assign(nf, {-1, -1, -1});
  a.face_image[0] = g0;
  a.corner_image[0] = pi0;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    const int f = q.front();
    q.pop();
    const int g = a.face_image[f];
    const auto& pi = a.corner_image[f];
    for (int e = 0; e < 3; ++e) {
      const int ca = e, cb = (e + 1) % 3;
      const int s_img = slot_between(pi[ca], pi[cb]);
      const EdgeRef fe{f, e}, ge{g, s_img};
      if (std::abs(s.edge_length(fe) - s.edge_length(ge)) > tol) return std::nullopt;
      auto fp = s.partner(fe);
      auto gp = s.partner(ge);
      if (fp.has_value() != gp.has_value()) return std::nullopt;
      if (!fp) continue;
      const int xa = s.glued_corner(fe, ca), xb = s.glued_corner(fe, cb);
      const int ya = s.glued_corner(ge, pi[ca]), yb = s.glued_corner(ge, pi[cb]);
      std::array<int, 3> pn{-1, -1, -1};
      pn[xa] = ya;
      pn[xb] = yb;
      pn[3 - xa - xb] = 3 - ya - yb;
      if (a.face_image[fp->face] < 0) {
        a.face_image[fp->face] = gp->face;
        a.corner_image[fp->face] = pn;
        q.push(fp->face);
      } else if (a.face_image[fp->face] != gp->face || a.corner_image[fp->face] != pn) {
        return std::nullopt;
      }
    }
  }
  std::vector<bool> hit(nf, false);
  for (int f = 0; f < nf; ++f) {
    if (a.face_image[f] < 0 || hit[a.face_image[f]]) return std::nullopt;
    hit[a.face_image[f]] = true;
  }
  const auto& pi = a.corner_image[0];
  a.reverses_faces = pi[1] != (pi[0] + 1) % 3;
  return a;
}

bool preserves_marks(const ConeSurface& s, const Automorphism& a) {
  auto vimg = [&](int v) {
    const CornerRef c = s.vertex(v).corners.front();
    return s.vertex_of(a.face_image[c.face], a.corner_image[c.face][c.corner]);
  };
  const Marks& m = s.marks();
  std::set<int> w(m.weierstrass.begin(), m.weierstrass.end());
  for (int v : m.weierstrass)
    if (!w.count(vimg(v))) return false;
  std::set<int> pq;
  if (m.p) pq.insert(*m.p);
  if (m.q) pq.insert(*m.q);
  for (int v : pq)
    if (!pq.count(vimg(v))) return false;
  std::set<int> collar(m.collar_faces.begin(), m.collar_faces.end());
  for (int f : m.collar_faces)
    if (!collar.count(a.face_image[f])) return false;
  return true;
}

}  // namespace

std::string SymmetryReport::summary() const {
  return "automorphism group order " + std::to_string(order) + " (expected " + std::to_string(expected) + "): " +
         (confirmed ? "confirmed" : "not confirmed");
}

SymmetryReport check_symmetry(const ConeSurface& s, int expected, double tol) {
  SymmetryReport r;
  r.expected = expected;
  for (int g = 0; g < s.face_count(); ++g)
    for (const auto& pi : kPerms)
      if (auto a = extend(s, g, pi, tol); a && preserves_marks(s, *a)) r.elements.push_back(std::move(*a));
  r.order = static_cast<int>(r.elements.size());
  r.confirmed = r.order == expected;
  return r;
}

}  // namespace dyck
