#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "nframes/frames.hpp"

namespace nframes {

/// FNV-1a 64-bit hash; used to fingerprint configs and operation inputs in
/// reports without pulling in a crypto dependency.
uint64_t fnv1a64(std::string_view text);

/// How the anchor tuple is specified.
struct AnchorSpec {
  enum class Kind { kExplicit, kAxisTail };
  Kind kind = Kind::kAxisTail;
  Eigen::MatrixXcd vectors; ///< d x (n-1), for kExplicit
};

/// How the measure space is specified.
struct MeasureSpec {
  enum class Kind { kExplicit, kUniform };
  Kind kind = Kind::kUniform;
  Eigen::VectorXd weights; ///< for kExplicit
  int count = 0;           ///< for kUniform
  double weight = 1.0;     ///< for kUniform
};

/// How the frame family is specified.
struct FamilySpec {
  enum class Kind { kExplicit, kRandom, kFourier };
  Kind kind = Kind::kRandom;
  Eigen::MatrixXcd samples; ///< d x M, for kExplicit
};

/// Pointwise multiplier symbol.
struct SymbolSpec {
  enum class Kind { kOnes, kExplicit };
  Kind kind = Kind::kOnes;
  Eigen::VectorXcd values; ///< for kExplicit
};

/// Operator acting on quotient coordinates.
struct OperatorSpec {
  enum class Kind { kIdentity, kScale, kExplicit };
  Kind kind = Kind::kIdentity;
  double factor = 1.0;       ///< for kScale
  Eigen::MatrixXcd entries;  ///< q x q, for kExplicit
};

/// One ambient space + anchors + measure + family block.
struct SpaceConfig {
  int dim = 0;
  int order = 0;
  AnchorSpec anchors;
  MeasureSpec measure;
  FamilySpec family;
};

/// One entry of the operations list.
struct OperationConfig {
  std::string op; ///< bounds | spectrum | dual | multiplier | transform | tensor
  SymbolSpec symbol;                    ///< multiplier
  bool synthesis_is_dual = false;       ///< multiplier: G = canonical dual?
  OperatorSpec transform_operator;      ///< transform
  std::optional<SpaceConfig> right;     ///< tensor: the second factor
  std::string inputs_text;              ///< canonical JSON of this entry
};

/// Fully parsed and validated experiment description.
struct ExperimentConfig {
  SpaceConfig space;
  uint64_t seed = 0;
  bool has_seed = false;
  std::vector<OperationConfig> operations;
  double frame_tol = kFrameTol;
  std::string canonical_text; ///< canonical JSON of the whole config
};

/// Parses and validates a config from JSON text.
/// Throws InputError on malformed or inconsistent configs.
ExperimentConfig parse_config_text(const std::string& text);

/// Reads the file and parses it. Throws InputError when unreadable.
ExperimentConfig load_config_file(const std::string& path);

} // namespace nframes
