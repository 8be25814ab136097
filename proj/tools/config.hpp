#pragma once

// Run configurations: a finite-group instance with levels, or a tower, read
// from JSON or taken from the built-in registry.

#include <optional>
#include <string>
#include <vector>

#include "hecke/json_io.hpp"
#include "hecke/tower.hpp"

namespace hecke::cli {

inline constexpr const char* kToolName = "heckewb";
inline constexpr const char* kToolVersion = "1.0.0";

struct Overrides {
  std::optional<long> field_conductor;
  std::optional<int> depth;
};

struct RunConfig {
  Json echo;  // the effective configuration, overrides applied
  std::string name;
  const CyclotomicField* field = nullptr;
  GroupPtr group;
  Subgroup normal;
  NormalCharacter omega;
  RhoAction rho;
  Rational measure = 1;
  std::vector<Subgroup> levels;
  std::vector<Subgroup> inclusions;
  std::vector<std::string> suites;  // empty: all
  /// Set for tower configurations; the instance then is tower->ambient().
  TowerPtr tower;
  /// Unit of a cyclic tower twist, when the twist was given that way.
  std::optional<long> unit;

  bool has_tower() const { return static_cast<bool>(tower); }
  bool wants(const std::string& suite) const;
  /// Throws CompatibilityViolation when omega and rho are incompatible.
  InstancePtr instance() const;
  std::uint64_t hash() const;

 private:
  mutable InstancePtr instance_;
};

/// Parses and validates. Every problem is a ConfigError carrying a JSON
/// pointer into `config`.
RunConfig parse_config(Json config, const Overrides& overrides = {});

/// Reads a file; syntax errors carry the byte offset as location.
Json load_config_file(const std::string& path);

/// "plain-z4", "omega-sign", "galois-twist", "s3-invalid-omega",
/// "zp:p=P,depth=N", "zp-twist:p=P,u=U,depth=N". Throws ConfigError.
Json builtin_config(const std::string& name);
std::vector<std::string> builtin_names();

/// FNV-1a, 64 bit.
std::uint64_t fnv1a(const std::string& text);

}  // namespace hecke::cli
