#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace sail {

using Rng = std::mt19937_64;
using StateVec = std::vector<double>;

// Error taxonomy shared by every module; the CLI maps these to exit codes.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::logic_error {
    using std::logic_error::logic_error;
};

struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sail
