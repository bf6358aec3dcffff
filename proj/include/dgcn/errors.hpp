#pragma once

#include <stdexcept>
#include <string>

namespace dgcn {

/// Malformed network structure: unknown node ids, forbidden arc types,
/// inconsistent dependency groups.
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid parameters or configuration values.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Unparseable input files (network text format, result CSV).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dgcn
