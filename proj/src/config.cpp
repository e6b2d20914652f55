#include "nframes/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace nframes {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw InputError("config: " + message);
}

const json& require(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    fail(std::string(where) + " is missing required key '" + key + "'");
  }
  return j.at(key);
}

int require_positive_int(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    fail(std::string(what) + " must be a positive integer");
  }
  return static_cast<int>(j.get<long long>());
}

/// Complex scalars appear as [re, im]; bare numbers are accepted as reals.
Cplx parse_complex(const json& j, const char* what) {
  if (j.is_number()) return Cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Cplx(j[0].get<double>(), j[1].get<double>());
  }
  fail(std::string(what) + " must be a number or a [re, im] pair");
}

Eigen::VectorXcd parse_cvector(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    fail(std::string(what) + " must be a non-empty array");
  }
  Eigen::VectorXcd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = parse_complex(j[i], what);
  }
  return v;
}

/// An array of vectors, used as matrix columns (each of length `rows`).
Eigen::MatrixXcd parse_columns(const json& j, int rows, const char* what) {
  if (!j.is_array() || j.empty()) {
    fail(std::string(what) + " must be a non-empty array of vectors");
  }
  Eigen::MatrixXcd m(rows, j.size());
  for (std::size_t c = 0; c < j.size(); ++c) {
    const Eigen::VectorXcd column = parse_cvector(j[c], what);
    if (column.size() != rows) {
      fail(std::string(what) + " entry " + std::to_string(c) + " has length " +
           std::to_string(column.size()) + ", expected " +
           std::to_string(rows));
    }
    m.col(static_cast<Eigen::Index>(c)) = column;
  }
  return m;
}

/// An array of rows (standard matrix notation), all the same length.
Eigen::MatrixXcd parse_rows(const json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    fail(std::string(what) + " must be a non-empty array of rows");
  }
  const std::size_t cols = j[0].size();
  Eigen::MatrixXcd m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      fail(std::string(what) + " rows must all have length " +
           std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_complex(j[r][c], what);
    }
  }
  return m;
}

std::string spec_type(const json& j, const char* where) {
  const json& t = require(j, "type", where);
  if (!t.is_string()) fail(std::string(where) + ".type must be a string");
  return t.get<std::string>();
}

AnchorSpec parse_anchors(const json& j, int dim, int order) {
  AnchorSpec spec;
  const std::string type = spec_type(j, "anchors");
  if (type == "axis_tail") {
    spec.kind = AnchorSpec::Kind::kAxisTail;
  } else if (type == "explicit") {
    spec.kind = AnchorSpec::Kind::kExplicit;
    spec.vectors =
        parse_columns(require(j, "vectors", "anchors"), dim, "anchors.vectors");
    if (spec.vectors.cols() != order - 1) {
      fail("anchors.vectors must contain exactly " +
           std::to_string(order - 1) + " vectors for order " +
           std::to_string(order));
    }
  } else {
    fail("anchors.type must be 'explicit' or 'axis_tail'");
  }
  return spec;
}

MeasureSpec parse_measure(const json& j) {
  MeasureSpec spec;
  const std::string type = spec_type(j, "measure");
  if (type == "uniform") {
    spec.kind = MeasureSpec::Kind::kUniform;
    spec.count = require_positive_int(require(j, "count", "measure"),
                                      "measure.count");
    if (j.contains("weight")) {
      if (!j.at("weight").is_number() || !(j.at("weight").get<double>() > 0)) {
        fail("measure.weight must be a positive number");
      }
      spec.weight = j.at("weight").get<double>();
    }
  } else if (type == "explicit") {
    spec.kind = MeasureSpec::Kind::kExplicit;
    const json& weights = require(j, "weights", "measure");
    if (!weights.is_array() || weights.empty()) {
      fail("measure.weights must be a non-empty array");
    }
    spec.weights.resize(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (!weights[i].is_number() || !(weights[i].get<double>() > 0)) {
        fail("measure.weights entries must be positive numbers");
      }
      spec.weights(static_cast<Eigen::Index>(i)) = weights[i].get<double>();
    }
  } else {
    fail("measure.type must be 'explicit' or 'uniform'");
  }
  return spec;
}

FamilySpec parse_family(const json& j, int dim) {
  FamilySpec spec;
  const std::string type = spec_type(j, "family");
  if (type == "explicit") {
    spec.kind = FamilySpec::Kind::kExplicit;
    spec.samples = parse_columns(require(j, "samples", "family"), dim,
                                 "family.samples");
  } else if (type == "random") {
    spec.kind = FamilySpec::Kind::kRandom;
  } else if (type == "fourier") {
    spec.kind = FamilySpec::Kind::kFourier;
  } else {
    fail("family.type must be 'explicit', 'random', or 'fourier'");
  }
  return spec;
}

SpaceConfig parse_space(const json& j, const char* where) {
  SpaceConfig space;
  const json& ambient = require(j, "ambient", where);
  space.dim = require_positive_int(require(ambient, "dim", "ambient"),
                                   "ambient.dim");
  space.order = require_positive_int(require(ambient, "order", "ambient"),
                                     "ambient.order");
  if (space.order < 2) fail("ambient.order must be at least 2");
  if (space.dim < space.order) {
    fail("ambient.dim must be at least ambient.order");
  }
  space.anchors =
      parse_anchors(require(j, "anchors", where), space.dim, space.order);
  space.measure = parse_measure(require(j, "measure", where));
  space.family = parse_family(require(j, "family", where), space.dim);

  const int node_count = space.measure.kind == MeasureSpec::Kind::kUniform
                             ? space.measure.count
                             : static_cast<int>(space.measure.weights.size());
  if (space.family.kind == FamilySpec::Kind::kExplicit &&
      space.family.samples.cols() != node_count) {
    fail("family.samples must provide one sample per measure node (" +
         std::to_string(node_count) + ")");
  }
  return space;
}

SymbolSpec parse_symbol(const json& j) {
  SymbolSpec spec;
  const std::string type = spec_type(j, "symbol");
  if (type == "ones") {
    spec.kind = SymbolSpec::Kind::kOnes;
  } else if (type == "explicit") {
    spec.kind = SymbolSpec::Kind::kExplicit;
    spec.values = parse_cvector(require(j, "values", "symbol"),
                                "symbol.values");
  } else {
    fail("symbol.type must be 'ones' or 'explicit'");
  }
  return spec;
}

OperatorSpec parse_operator(const json& j) {
  OperatorSpec spec;
  const std::string type = spec_type(j, "operator");
  if (type == "identity") {
    spec.kind = OperatorSpec::Kind::kIdentity;
  } else if (type == "scale") {
    spec.kind = OperatorSpec::Kind::kScale;
    const json& factor = require(j, "factor", "operator");
    if (!factor.is_number()) fail("operator.factor must be a number");
    spec.factor = factor.get<double>();
  } else if (type == "explicit") {
    spec.kind = OperatorSpec::Kind::kExplicit;
    spec.entries = parse_rows(require(j, "entries", "operator"),
                              "operator.entries");
    if (spec.entries.rows() != spec.entries.cols()) {
      fail("operator.entries must be square");
    }
  } else {
    fail("operator.type must be 'identity', 'scale', or 'explicit'");
  }
  return spec;
}

OperationConfig parse_operation(const json& j) {
  OperationConfig op;
  const json& name = require(j, "op", "operations entry");
  if (!name.is_string()) fail("operations[].op must be a string");
  op.op = name.get<std::string>();
  op.inputs_text = j.dump();

  if (op.op == "bounds" || op.op == "spectrum" || op.op == "dual") {
    // no extra parameters
  } else if (op.op == "multiplier") {
    if (j.contains("symbol")) op.symbol = parse_symbol(j.at("symbol"));
    if (j.contains("synthesis")) {
      const json& synthesis = j.at("synthesis");
      if (!synthesis.is_string() ||
          (synthesis != "same" && synthesis != "dual")) {
        fail("multiplier.synthesis must be 'same' or 'dual'");
      }
      op.synthesis_is_dual = synthesis == "dual";
    }
  } else if (op.op == "transform") {
    op.transform_operator = parse_operator(require(j, "operator", "transform"));
  } else if (op.op == "tensor") {
    op.right = parse_space(require(j, "right", "tensor"), "tensor.right");
  } else {
    fail("unknown operation '" + op.op + "'");
  }
  return op;
}

bool uses_random_family(const ExperimentConfig& config) {
  if (config.space.family.kind == FamilySpec::Kind::kRandom) return true;
  for (const auto& op : config.operations) {
    if (op.right && op.right->family.kind == FamilySpec::Kind::kRandom) {
      return true;
    }
  }
  return false;
}

} // namespace

uint64_t fnv1a64(std::string_view text) {
  uint64_t hash = 0xcbf29ce484222325ull;
  for (const char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ull;
  }
  return hash;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("config parse error: ") + e.what());
  }
  if (!root.is_object()) fail("top level must be a JSON object");

  ExperimentConfig config;
  config.canonical_text = root.dump();
  config.space = parse_space(root, "config");

  if (root.contains("seed")) {
    const json& seed = root.at("seed");
    if (!seed.is_number_integer() || seed.get<long long>() < 0) {
      fail("seed must be a nonnegative integer");
    }
    config.seed = seed.get<uint64_t>();
    config.has_seed = true;
  }

  if (root.contains("tolerances")) {
    const json& tolerances = root.at("tolerances");
    if (!tolerances.is_object()) fail("tolerances must be an object");
    if (tolerances.contains("frame")) {
      const json& frame_tol = tolerances.at("frame");
      if (!frame_tol.is_number() || !(frame_tol.get<double>() > 0)) {
        fail("tolerances.frame must be a positive number");
      }
      config.frame_tol = frame_tol.get<double>();
    }
  }

  const json& operations = require(root, "operations", "config");
  if (!operations.is_array()) fail("operations must be an array");
  for (const auto& entry : operations) {
    config.operations.push_back(parse_operation(entry));
  }

  if (uses_random_family(config) && !config.has_seed) {
    fail("a seed is required whenever a family is random");
  }
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw InputError("cannot open config file: " + path);
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_config_text(buffer.str());
}

} // namespace nframes
