#pragma once

#include <optional>
#include <string>

#include "config.hpp"
#include "hecke/k_theory.hpp"
#include "report.hpp"

namespace hecke::cli {

struct RunOptions {
  int jobs = 1;
  /// Directory for persisted level decompositions; none disables the cache.
  std::optional<std::string> cache_dir;
};

Report cmd_verify(const RunConfig& cfg, const RunOptions& opt);
Report cmd_levels(const RunConfig& cfg, const RunOptions& opt);
Report cmd_k0(const RunConfig& cfg, const RunOptions& opt);
Report cmd_wang(const RunConfig& cfg, const RunOptions& opt);
/// Throws BoundsExceeded beyond |G| <= 16 (instances) or |E_n| <= 27 (towers).
Report cmd_oracle(const RunConfig& cfg, const RunOptions& opt);

/// Dispatches by name; library errors become the report's error section.
Report run_command(const std::string& command, const RunConfig& cfg, const RunOptions& opt);

/// Decomposition of the algebra of configured level `index`, read from the
/// cache when a valid entry exists and written back otherwise.
DecompositionPtr cached_decomposition(const RunConfig& cfg, const RunOptions& opt, int index,
                                      const CPPtr& algebra);
std::string cache_key(const RunConfig& cfg, int index);

/// H(G//K) -> H(G//K') for a subgroup inclusion K' <= K, checked piece by piece.
struct InclusionData {
  GroupHom phi;  // source group -> G
  InstancePtr source;
};
/// The subgroup H >= N as a group in its own right with the restricted
/// instance: N, omega o phi, rho o phi and mu(Q') = mu(Q) |H| / |G|.
InclusionData restrict_instance(const InstancePtr& target, const Subgroup& h);

/// Orbits of the cyclic group generated by an automorphism on the conjugacy
/// classes of a finite group, by brute force.
int class_orbit_count(const GroupHom& phi);

/// (s*t)(g) = mu(Q)/|G| sum_{h in G} s(gh) rho(gh)(t(h^-1)), straight from
/// the definition with no transversal.
FieldVector naive_convolution(const HeckeInstance& inst, const FieldVector& s, const FieldVector& t);

}  // namespace hecke::cli
