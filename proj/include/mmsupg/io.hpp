#ifndef MMSUPG_IO_HPP
#define MMSUPG_IO_HPP

#include <map>
#include <string>
#include <vector>

#include "mmsupg/mesh.hpp"

namespace mmsupg {

// Legacy ASCII VTK unstructured grid with the nodal scalar field "u";
// coordinates and values written with 17 significant digits.
void write_vtk(const TriMesh& mesh, const std::vector<double>& u, const std::string& path);

struct ExperimentResult {
    std::string method;
    int n_elements = 0;
    double dt = 0.0;
    double eps = 0.0;
    double h1 = 0.0;       // error against exact, or seminorm when no exact
    double seconds = 0.0;  // wall time
};

// CSV "method,N,dt,eps,h1,seconds", rows ordered FM-FEM, FM-SUPG, MM-FEM,
// MM-SUPG and by ascending N within a method.
void write_csv(const std::vector<ExperimentResult>& results, const std::string& path);

// Flat "key = value" file; '#' starts a comment.  Unknown keys are kept (the
// CLI validates them).
std::map<std::string, std::string> parse_config_file(const std::string& path);

}  // namespace mmsupg

#endif
