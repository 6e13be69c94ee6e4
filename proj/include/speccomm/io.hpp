#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"
#include "types.hpp"

namespace speccomm {

struct ThetaSpec {
  enum class Kind { Constant, Uniform, Power, Step };
  Kind kind = Kind::Constant;
  std::vector<double> params;  // constant {c} | uniform {a,b} | power {c0,d0,e} | step {c0,d0}

  Vector realize(int n, std::uint64_t seed) const;
  void validate() const;
};

struct MembershipSpec {
  enum class Kind { UniformRandom, Explicit };
  Kind kind = Kind::UniformRandom;
  Labels list;  // Explicit only

  Labels realize(int n, int k, std::uint64_t seed) const;
};

// Parsed experiment/model configuration; realize() draws membership and
// theta from streams derived from one seed.
struct ModelConfig {
  int n = 0;
  int k = 0;
  Matrix p;
  ModelKind kind = ModelKind::BM;
  ThetaSpec theta;
  MembershipSpec membership;
  NoiseSpec noise;

  ModelSpec realize(std::uint64_t seed) const;
  std::uint64_t digest() const;  // FNV-1a over a canonical rendering
};

// Minimal TOML subset: top-level `key = value` pairs, one-level [tables],
// numbers, quoted strings, [a, b, ...] arrays, # comments. Unknown keys and
// sections are errors.
ModelConfig parse_model_config(const std::string& text);
ModelConfig load_model_config(const std::string& path);

// Whitespace-separated "u v" pairs, # comments, duplicates collapsed,
// (u,v)=(v,u). index_base rebases to 0; n inferred as max+1 unless
// declared_n > 0. force_ones sets the diagonal to 1 (otherwise only listed
// self-loops appear). Parse errors carry the line number.
Matrix read_edge_list(const std::string& path, int index_base, bool force_ones,
                      int declared_n = 0);

// Upper-triangle edges (entries >= 0.5) of a 0/1 matrix, written back in the
// given index base; diagonal skipped.
void write_edge_list(const Matrix& a, const std::string& path, int index_base);

struct LabelFile {
  Labels labels;
  bool remapped = false;  // true when gaps were compacted
};

// One integer per line, node order = line order; label values compacted to
// 1..K preserving numeric order.
LabelFile read_labels(const std::string& path);

// node_id,label rows (node_id 0-based), with a header.
void write_labels_csv(const Labels& labels, const std::string& path);

// Largest connected component (edges = off-diagonal entries > 0); returns
// the submatrix and the kept node indices.
std::pair<Matrix, std::vector<int>> largest_component(const Matrix& a);

std::uint64_t fnv1a(const std::string& s);

}  // namespace speccomm
