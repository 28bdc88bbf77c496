#pragma once

// Run reports and the scheduler compression table.

#include "tristrat/abstraction.hpp"
#include "tristrat/truth.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tristrat {

struct RunReport {
    Truth verdict = Truth::Undef;
    double abstraction_seconds = 0;
    double verification_seconds = 0;
    std::optional<AbstractionReport> abstraction;
    std::string formula;
    /// Where the model came from: a file path, "stdin", or a generator call.
    std::string model_source;
    std::string engine;
    std::uint64_t strategies = 0;
    bool shortcut = false;
};

std::string to_json(const RunReport& r);
std::string to_text(const RunReport& r);

struct CompressionRow {
    std::size_t n = 0;
    std::size_t concrete_states = 0;
    std::size_t concrete_transitions = 0;
    std::size_t abstract_states = 0;
    /// may + must
    std::size_t abstract_transitions = 0;
    double abstraction_seconds = 0;
    double verification_seconds = 0;
    Truth verdict = Truth::Undef;

    /// Fraction of states removed, in [0, 1].
    double state_reduction() const;
    double transition_reduction() const;
};

std::string compression_json(const std::vector<CompressionRow>& rows);
std::string compression_text(const std::vector<CompressionRow>& rows);

} // namespace tristrat
