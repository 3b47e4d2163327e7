#pragma once

#include <array>
#include <optional>

#include "tfp/corrections.hpp"
#include "tfp/painleve.hpp"

namespace fixture {

inline const tfp::PainleveSolution& painleve() {
    static const tfp::PainleveSolution sol = tfp::solve_hastings_mcleod();
    return sol;
}

/// N = 2 corrections on the default Painleve grid.
inline const tfp::CorrectionSet& corrections(int d) {
    static std::array<std::optional<tfp::CorrectionSet>, 3> sets;
    auto& slot = sets.at(static_cast<std::size_t>(d - 1));
    if (!slot) slot.emplace(tfp::build_corrections(painleve(), d, 2));
    return *slot;
}

}  // namespace fixture
