#pragma once

#include <stdexcept>
#include <string>

namespace greencg {

// Raised when an input document or metric file violates its schema or
// invariants. Maps to CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when the inputs parse fine but the pipeline cannot proceed
// (no profiled data, no candidates, missing carbon source for a node, ...).
// Maps to CLI exit code 2.
class PipelineError : public std::runtime_error {
public:
  explicit PipelineError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace greencg
