#include "mmsupg/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mmsupg/errors.hpp"

namespace mmsupg {

void write_vtk(const TriMesh& mesh, const std::vector<double>& u, const std::string& path) {
    if (u.size() != mesh.vertices.size())
        throw std::invalid_argument("write_vtk: field length does not match vertex count");

    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw IoError("write_vtk: cannot open " + path);

    std::fprintf(f, "# vtk DataFile Version 3.0\n");
    std::fprintf(f, "mmsupg solution\n");
    std::fprintf(f, "ASCII\n");
    std::fprintf(f, "DATASET UNSTRUCTURED_GRID\n");
    std::fprintf(f, "POINTS %d double\n", mesh.n_vertices());
    for (const auto& v : mesh.vertices) std::fprintf(f, "%.17g %.17g 0\n", v.x, v.y);
    std::fprintf(f, "CELLS %d %d\n", mesh.n_elements(), 4 * mesh.n_elements());
    for (const auto& tri : mesh.triangles) std::fprintf(f, "3 %d %d %d\n", tri[0], tri[1], tri[2]);
    std::fprintf(f, "CELL_TYPES %d\n", mesh.n_elements());
    for (int k = 0; k < mesh.n_elements(); ++k) std::fprintf(f, "5\n");
    std::fprintf(f, "POINT_DATA %d\n", mesh.n_vertices());
    std::fprintf(f, "SCALARS u double 1\n");
    std::fprintf(f, "LOOKUP_TABLE default\n");
    for (double val : u) std::fprintf(f, "%.17g\n", val);

    if (std::fclose(f) != 0) throw IoError("write_vtk: write failed for " + path);
}

namespace {

int method_rank(const std::string& m) {
    if (m == "FM-FEM") return 0;
    if (m == "FM-SUPG") return 1;
    if (m == "MM-FEM") return 2;
    if (m == "MM-SUPG") return 3;
    return 4;
}

}  // namespace

void write_csv(const std::vector<ExperimentResult>& results, const std::string& path) {
    std::vector<ExperimentResult> ordered = results;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const ExperimentResult& a, const ExperimentResult& b) {
                         const int ra = method_rank(a.method), rb = method_rank(b.method);
                         if (ra != rb) return ra < rb;
                         return a.n_elements < b.n_elements;
                     });

    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw IoError("write_csv: cannot open " + path);
    std::fprintf(f, "method,N,dt,eps,h1,seconds\n");
    for (const auto& r : ordered)
        std::fprintf(f, "%s,%d,%.17g,%.17g,%.17g,%.3f\n", r.method.c_str(), r.n_elements, r.dt,
                     r.eps, r.h1, r.seconds);
    if (std::fclose(f) != 0) throw IoError("write_csv: write failed for " + path);
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open " + path);

    auto trim = [](std::string s) {
        const auto begin = s.find_first_not_of(" \t\r\n");
        const auto end = s.find_last_not_of(" \t\r\n");
        return begin == std::string::npos ? std::string{} : s.substr(begin, end - begin + 1);
    };

    std::map<std::string, std::string> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw IoError("config: line " + std::to_string(line_no) + " is not 'key = value'");
        const std::string key = trim(trimmed.substr(0, eq));
        const std::string value = trim(trimmed.substr(eq + 1));
        if (key.empty())
            throw IoError("config: empty key on line " + std::to_string(line_no));
        out[key] = value;
    }
    return out;
}

}  // namespace mmsupg
