#include "vtg/mesh_io.hpp"

#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include "vtg/error.hpp"

namespace vtg {

namespace {

// "7", "7/2", "7//3", "7/2/3" -> 7
int parse_obj_index(const std::string& token, std::size_t vertex_count,
                    const std::filesystem::path& path) {
    const std::size_t slash = token.find('/');
    const std::string head = slash == std::string::npos ? token : token.substr(0, slash);
    int idx = 0;
    try {
        idx = std::stoi(head);
    } catch (const std::exception&) {
        throw IoError("bad face index '" + token + "' in " + path.string());
    }
    if (idx < 0) idx = static_cast<int>(vertex_count) + idx + 1;  // negative = relative
    if (idx < 1 || static_cast<std::size_t>(idx) > vertex_count)
        throw IoError("face index out of range in " + path.string());
    return idx - 1;
}

}  // namespace

TriMesh read_obj(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    TriMesh mesh;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "v") {
            Eigen::Vector3d p;
            if (!(ss >> p.x() >> p.y() >> p.z()))
                throw IoError("bad vertex line in " + path.string());
            mesh.vertices.push_back(p);
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string token;
            while (ss >> token) idx.push_back(parse_obj_index(token, mesh.vertices.size(), path));
            if (idx.size() != 3)
                throw IoError("only triangle faces are supported (got a " +
                              std::to_string(idx.size()) + "-gon) in " + path.string());
            mesh.faces.push_back({idx[0], idx[1], idx[2]});
        }
        // all other tags (vn, vt, usemtl, comments, ...) are ignored
    }
    return mesh;
}

void write_obj(const std::filesystem::path& path, const TriMesh& mesh) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.precision(17);
    for (const auto& v : mesh.vertices)
        out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    for (const auto& f : mesh.faces)
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

namespace {

class VertexDedup {
public:
    explicit VertexDedup(TriMesh& mesh) : mesh_(mesh) {}

    int add(const Eigen::Vector3d& p) {
        const auto key = std::make_tuple(p.x(), p.y(), p.z());
        const auto it = seen_.find(key);
        if (it != seen_.end()) return it->second;
        const int idx = static_cast<int>(mesh_.vertices.size());
        mesh_.vertices.push_back(p);
        seen_.emplace(key, idx);
        return idx;
    }

private:
    TriMesh& mesh_;
    std::map<std::tuple<double, double, double>, int> seen_;
};

TriMesh read_stl_binary(std::ifstream& in, const std::filesystem::path& path) {
    in.seekg(80, std::ios::beg);
    uint32_t n_tris = 0;
    in.read(reinterpret_cast<char*>(&n_tris), 4);
    if (!in) throw IoError("truncated binary STL: " + path.string());
    TriMesh mesh;
    VertexDedup dedup(mesh);
    for (uint32_t t = 0; t < n_tris; ++t) {
        float buf[12];  // normal + 3 vertices
        in.read(reinterpret_cast<char*>(buf), sizeof buf);
        uint16_t attr = 0;
        in.read(reinterpret_cast<char*>(&attr), 2);
        if (!in) throw IoError("truncated binary STL: " + path.string());
        int idx[3];
        for (int k = 0; k < 3; ++k) {
            Eigen::Vector3d p(buf[3 + 3 * k], buf[4 + 3 * k], buf[5 + 3 * k]);
            idx[k] = dedup.add(p);
        }
        mesh.faces.push_back({idx[0], idx[1], idx[2]});
    }
    return mesh;
}

TriMesh read_stl_ascii(std::ifstream& in, const std::filesystem::path& path) {
    TriMesh mesh;
    VertexDedup dedup(mesh);
    std::string token;
    std::vector<int> pending;
    while (in >> token) {
        if (token == "vertex") {
            Eigen::Vector3d p;
            if (!(in >> p.x() >> p.y() >> p.z()))
                throw IoError("bad vertex in ASCII STL: " + path.string());
            pending.push_back(dedup.add(p));
        } else if (token == "endfacet") {
            if (pending.size() != 3)
                throw IoError("non-triangular facet in ASCII STL: " + path.string());
            mesh.faces.push_back({pending[0], pending[1], pending[2]});
            pending.clear();
        }
    }
    return mesh;
}

}  // namespace

TriMesh read_stl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());

    // A binary STL is exactly 84 + 50*n bytes; an ASCII one starts with
    // "solid" and is text. Size is the more reliable signal.
    in.seekg(0, std::ios::end);
    const auto size = static_cast<uint64_t>(in.tellg());
    in.seekg(0, std::ios::beg);
    char head[6] = {};
    in.read(head, 5);
    in.seekg(0, std::ios::beg);
    const bool says_solid = std::strncmp(head, "solid", 5) == 0;
    bool binary = !says_solid;
    if (says_solid && size >= 84) {
        in.seekg(80, std::ios::beg);
        uint32_t n_tris = 0;
        in.read(reinterpret_cast<char*>(&n_tris), 4);
        in.seekg(0, std::ios::beg);
        if (size == 84 + 50ull * n_tris) binary = true;
    }
    return binary ? read_stl_binary(in, path) : read_stl_ascii(in, path);
}

TriMesh read_mesh(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".obj") return read_obj(path);
    if (ext == ".stl") return read_stl(path);
    throw IoError("unsupported mesh format: " + path.string());
}

}  // namespace vtg
