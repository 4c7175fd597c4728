#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "mspinn/core/jet.hpp"
#include "mspinn/core/numeric.hpp"
#include "mspinn/core/rng.hpp"

namespace mspinn {

enum class ParamMode { standard, ntk };
enum class ArchKind { plain, mff, stmff };

/// Fully-connected trunk description: depth hidden layers of equal width,
/// tanh activations throughout.
struct FCNNConfig {
  int depth = 2;
  int width = 100;
  int in_dim = 1;
  int out_dim = 1;
  ParamMode mode = ParamMode::standard;
};

/// Fixed (non-trainable) random Fourier frequency matrix with its scale.
/// Output of the embedding is [cos(cBv); sin(cBv)] with c = 2*pi or 1.
struct FourierEmbedding {
  Matrix b;  // m x d
  double sigma = 1.0;
  int m = 0;
  bool two_pi = true;
};

/// B ~ N(0, sigma^2) entrywise, m x d. Requires sigma > 0, m >= 1.
FourierEmbedding sample_fourier_features(int d, int m, double sigma, RngStream rng,
                                         bool two_pi = true);

/// gamma(v): first m entries cosines, last m sines.
Vector embed(const FourierEmbedding& e, std::span<const double> v);

template <class S>
void embed_eval(const FourierEmbedding& e, const S* v, S* out) {
  const double c = e.two_pi ? 2.0 * std::numbers::pi : 1.0;
  for (int k = 0; k < e.m; ++k) {
    S s{};
    const double* row = e.b.row_ptr(k);
    for (int j = 0; j < e.b.cols(); ++j) s += (c * row[j]) * v[j];
    using std::cos;
    using std::sin;
    out[k] = cos(s);
    out[e.m + k] = sin(s);
  }
}

/// Topology selector. All embeddings in one spec share the same feature
/// count m so the shared first layer accepts every embedded input.
/// For stmff the trailing input coordinate is time; the leading
/// spatial_dim coordinates are space.
struct ArchitectureSpec {
  ArchKind kind = ArchKind::plain;
  int m = 100;
  bool two_pi = true;
  std::vector<double> sigmas;   // mff: one entry per embedding
  std::vector<double> sigma_x;  // stmff: spatial embeddings
  std::vector<double> sigma_t;  // stmff: temporal embeddings
  int spatial_dim = 1;          // stmff only
};

/// A network instance: trunk config, architecture, sampled embeddings and the
/// flat parameter layout. Immutable after construction; forward evaluation
/// with shared parameters is safe from concurrent readers.
struct Network {
  FCNNConfig cfg;
  ArchitectureSpec arch;
  std::vector<FourierEmbedding> embeddings;  // mff order; stmff: spatial then temporal
  int n_phys = 0;          // extra trainable scalars appended to theta
  double phys_init = -10.0;

  struct Lin {
    int w_offset = 0, b_offset = 0, rows = 0, cols = 0;
    double scale = 1.0;  // 1/sqrt(fan_in) in ntk mode
  };
  struct Layout {
    std::vector<Lin> hidden;
    Lin out;
    int phys_offset = 0;
    int total = 0;
  } layout;

  struct Branch {
    const FourierEmbedding* emb = nullptr;  // null for plain
    int coord_offset = 0, coord_count = 0;
  };
  std::vector<Branch> branches;

  int n_spatial_branches = 0, n_temporal_branches = 0;  // stmff
  int branch_input_dim = 0;
  int merged_count = 0;  // blocks feeding the final linear layer

  int param_count() const { return layout.total; }
  std::span<const double> phys(std::span<const double> theta) const {
    return theta.subspan(layout.phys_offset, n_phys);
  }
};

/// Builds the network, sampling one frequency matrix per embedding from
/// per-index substreams of embed_rng.
Network make_network(const FCNNConfig& cfg, const ArchitectureSpec& arch, RngStream embed_rng,
                     int n_phys = 0, double phys_init = -10.0);

/// standard: Glorot-normal weights, zero biases. ntk: all weights and biases
/// N(0,1). Extra physical parameters start at phys_init.
Vector init_params(const Network& net, RngStream rng);

}  // namespace mspinn
