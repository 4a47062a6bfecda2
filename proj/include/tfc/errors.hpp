#pragma once

#include <stdexcept>
#include <string>

namespace tfc {

// Error taxonomy shared by all modules. The CLI maps these onto exit codes:
// std::invalid_argument -> 2, everything below -> 3.

class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

class PrecisionError : public std::runtime_error {
public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

class ModelError : public std::runtime_error {
public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tfc
