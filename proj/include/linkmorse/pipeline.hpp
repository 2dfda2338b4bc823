#pragma once

#include "linkmorse/cell_complex.hpp"
#include "linkmorse/error.hpp"
#include "linkmorse/homology.hpp"
#include "linkmorse/linkage.hpp"
#include "linkmorse/morse_matching.hpp"
#include "linkmorse/path_reversal.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace linkmorse {

struct VerifyOptions {
    ComplexOptions complex;
    std::uint64_t path_cap = 1'000'000;
    /// The literal step simulation is only run up to this n.
    int literal_steps_max_n = 6;
    /// Random walks sampled for the order invariant, per dimension.
    std::size_t order_samples = 200;
    std::uint64_t seed = 1;
};

struct Check {
    std::string name;
    bool pass = true;
    std::string detail;
};

/// Everything the full run computes, kept for exports.
struct PipelineState {
    Complex complex;
    VectorField initial;
    ReversalPlan plan;
    VectorField reversed;
};

struct VerificationReport {
    std::string linkage;
    std::vector<int> permutation;
    int n = 0;
    std::vector<std::size_t> cells_per_dim;
    std::vector<std::size_t> critical_initial_per_dim;
    std::vector<std::size_t> critical_final_per_dim;
    BettiVector betti_cellular;
    BettiVector betti_shortsets;
    long long euler = 0;
    bool perfect = false;
    std::vector<Check> checks;
    double seconds = 0;

    bool passed() const;
    const Check* first_failure() const;
    nlohmann::json to_json() const;
};

/// Runs every structural check on one linkage. Failures are recorded in the
/// report, never thrown; Error details are tagged as an implementation bug or a
/// falsified claim. Throws only for SizeGuard.
VerificationReport verify_linkage(const Linkage& L, const VerifyOptions& options = {},
                                  std::optional<PipelineState>* state = nullptr);

std::vector<std::size_t> sizes_per_dim(const std::vector<std::vector<Complex::CellId>>& cells);

} // namespace linkmorse
