#pragma once

#include <stdexcept>
#include <string>

namespace te {

// Invalid arguments and violated preconditions are reported with
// std::invalid_argument. The types below cover numerical failures that
// depend on the data rather than on the call.

class RankDeficientError : public std::runtime_error {
public:
  explicit RankDeficientError(const std::string& what) : std::runtime_error(what) {}
};

class DegenerateVarianceError : public std::runtime_error {
public:
  explicit DegenerateVarianceError(const std::string& what) : std::runtime_error(what) {}
};

class NonErgodicError : public std::runtime_error {
public:
  explicit NonErgodicError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace te
