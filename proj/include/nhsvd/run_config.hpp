#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "nhsvd/ensemble.hpp"

namespace nhsvd {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kThreadsEnvVar = "NHSVD_THREADS";

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flat key = value run description; mirrors SweepPlan plus output options.
// Unknown keys and malformed values are reported with their line number.
struct RunConfig {
    SweepPlan plan;
    std::filesystem::path out_dir = "out";
    bool resume = false;

    static RunConfig parse_file(const std::filesystem::path& path);
    static RunConfig parse_string(const std::string& text, const std::string& origin = "<config>");

    // Round-trippable key = value rendering of every field.
    std::string to_text() const;

    void validate() const;  // plan.validate() plus config-level checks
};

}  // namespace nhsvd
