#pragma once

#include "dyck/surface.hpp"

#include <filesystem>
#include <string>

namespace dyck {

enum class MeshFormat { json, obj };

/// JSON text with fields in the order name, faces, gluings, marks.
std::string to_json(const ConeSurface& s);
ConeSurface from_json(const std::string& text);

/// Each face drawn at its local coordinates, faces laid side by side.
std::string to_obj(const ConeSurface& s);

void export_mesh(const ConeSurface& s, const std::filesystem::path& path, MeshFormat format);
ConeSurface import_mesh(const std::filesystem::path& path);

}  // namespace dyck
