#ifndef MMSUPG_VALIDATE_HPP
#define MMSUPG_VALIDATE_HPP

#include <string>
#include <vector>

namespace mmsupg {

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

// Individual oracle/property suites.  Each one is deterministic.
ValidationCheck check_stabilization_values();      // tau / Peclet hand values
ValidationCheck check_metric_values();             // metric tensor hand values
ValidationCheck check_energy_reference_value();    // energy of the reference element
ValidationCheck check_gradient_fd_oracle();        // analytic dI/dx vs central differences
ValidationCheck check_manufactured_sources();      // analytic f vs FD operator application
ValidationCheck check_exact_gradients();           // analytic grad u vs FD of u
ValidationCheck check_consistency_steady_linear(); // steady u = x+y through all four methods
ValidationCheck check_interpolation_linear();      // linear reproduction across meshes
ValidationCheck check_solver_roundtrip();          // solve(A, A x) recovers x

ValidationReport run_validation();

}  // namespace mmsupg

#endif
