#include "dyck/mesh_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace dyck {

using ojson = nlohmann::ordered_json;

std::string to_json(const ConeSurface& s) {
  ojson j;
  j["name"] = s.name();
  j["faces"] = ojson::array();
  for (const auto& l : s.lengths()) j["faces"].push_back({l[0], l[1], l[2]});
  j["gluings"] = ojson::array();
  for (const auto& g : s.gluings()) j["gluings"].push_back({g.a.face, g.a.slot, g.b.face, g.b.slot, g.flip});
  const Marks& m = s.marks();
  ojson marks;
  marks["weierstrass"] = m.weierstrass;
  marks["p"] = m.p ? ojson(*m.p) : ojson(nullptr);
  marks["q"] = m.q ? ojson(*m.q) : ojson(nullptr);
  marks["soul"] = ojson::array();
  for (EdgeRef e : m.soul) marks["soul"].push_back({e.face, e.slot});
  if (!m.collar_faces.empty()) marks["collar_faces"] = m.collar_faces;
  j["marks"] = marks;
  return j.dump(1) + "\n";
}

ConeSurface from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
    std::vector<std::array<double, 3>> lengths;
    for (const auto& f : j.at("faces")) lengths.push_back({f.at(0).get<double>(), f.at(1).get<double>(), f.at(2).get<double>()});
    std::vector<Gluing> gl;
    for (const auto& g : j.at("gluings"))
      gl.push_back({{g.at(0).get<int>(), g.at(1).get<int>()}, {g.at(2).get<int>(), g.at(3).get<int>()}, g.at(4).get<bool>()});
    Marks m;
    if (j.contains("marks")) {
      const auto& mk = j["marks"];
      if (mk.contains("weierstrass")) m.weierstrass = mk["weierstrass"].get<std::vector<int>>();
      if (mk.contains("p") && !mk["p"].is_null()) m.p = mk["p"].get<int>();
      if (mk.contains("q") && !mk["q"].is_null()) m.q = mk["q"].get<int>();
      if (mk.contains("soul"))
        for (const auto& e : mk["soul"]) m.soul.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
      if (mk.contains("collar_faces")) m.collar_faces = mk["collar_faces"].get<std::vector<int>>();
    }
    return ConeSurface(j.at("name").get<std::string>(), std::move(lengths), std::move(gl), std::move(m));
  } catch (const nlohmann::json::exception& e) {
    throw SurfaceError(std::string("malformed mesh JSON: ") + e.what());
  }
}

std::string to_obj(const ConeSurface& s) {
  std::ostringstream out;
  out.precision(17);
  out << "# " << s.name() << "\n";
  double x0 = 0.0;
  for (int f = 0; f < s.face_count(); ++f) {
    const auto& p = s.face_coords(f);
    double w = std::max({p[0].x, p[1].x, p[2].x}) - std::min({p[0].x, p[1].x, p[2].x});
    for (const auto& v : p) out << "v " << v.x + x0 << ' ' << v.y << " 0\n";
    x0 += w + 0.1;
  }
  for (int f = 0; f < s.face_count(); ++f) out << "f " << 3 * f + 1 << ' ' << 3 * f + 2 << ' ' << 3 * f + 3 << "\n";
  return out.str();
}

void export_mesh(const ConeSurface& s, const std::filesystem::path& path, MeshFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << (format == MeshFormat::json ? to_json(s) : to_obj(s));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

ConeSurface import_mesh(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace dyck
