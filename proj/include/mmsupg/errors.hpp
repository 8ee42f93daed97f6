#ifndef MMSUPG_ERRORS_HPP
#define MMSUPG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mmsupg {

struct DegenerateElementError : std::runtime_error {
    explicit DegenerateElementError(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidMeshError : std::runtime_error {
    explicit InvalidMeshError(const std::string& what) : std::runtime_error(what) {}
};

// Mesh movement could not produce a valid mesh; carries the time-step index
// when raised from the simulation loop (-1 otherwise).
struct AdaptationFailure : std::runtime_error {
    int step_index;
    explicit AdaptationFailure(const std::string& what, int step = -1)
        : std::runtime_error(what), step_index(step) {}
};

struct InterpolationFailure : std::runtime_error {
    explicit InterpolationFailure(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mmsupg

#endif
