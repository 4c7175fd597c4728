#pragma once

#include <string>

#include "mspinn/net/network.hpp"

namespace mspinn {

// Forward evaluation and reverse-mode parameter gradients for all three
// architectures, generic over the scalar type S (double, or Jet<C> when
// input derivatives are required). The cache keeps every intermediate the
// backward sweep needs; reusing one cache across points avoids allocation.

inline double value_of(double x) { return x; }
template <int C>
inline double value_of(const Jet<C>& x) { return x.s[0]; }

template <class S>
struct BranchCache {
  std::vector<S> gamma;                // embedded (or raw) branch input
  std::vector<std::vector<S>> z, h;    // pre/post activation per hidden layer
};

template <class S>
struct NetCache {
  std::vector<BranchCache<S>> branches;
  std::vector<std::vector<S>> merged;  // stmff products; unused otherwise
  std::vector<S> out;
  // backward scratch
  std::vector<std::vector<S>> bar_blocks;
  std::vector<S> bar_h, bar_z, bar_prev;
};

template <class S>
void resize_cache(const Network& net, NetCache<S>& c) {
  c.branches.resize(net.branches.size());
  for (size_t b = 0; b < net.branches.size(); ++b) {
    c.branches[b].gamma.assign(net.branch_input_dim, S{});
    c.branches[b].z.assign(net.cfg.depth, std::vector<S>(net.cfg.width, S{}));
    c.branches[b].h.assign(net.cfg.depth, std::vector<S>(net.cfg.width, S{}));
  }
  if (net.arch.kind == ArchKind::stmff)
    c.merged.assign(net.merged_count, std::vector<S>(net.cfg.width, S{}));
  c.out.assign(net.cfg.out_dim, S{});
  c.bar_blocks.assign(net.merged_count, std::vector<S>(net.cfg.width, S{}));
  c.bar_h.assign(net.cfg.width, S{});
  c.bar_z.assign(net.cfg.width, S{});
  c.bar_prev.assign(std::max(net.branch_input_dim, net.cfg.width), S{});
}

template <class S>
inline void affine(const double* w, const double* b, double scale, const S* in, int nin, S* out,
                   int nout) {
  for (int i = 0; i < nout; ++i) {
    S acc{};
    const double* row = w + (size_t)i * nin;
    for (int j = 0; j < nin; ++j) acc += row[j] * in[j];
    acc = scale * acc;
    acc += S(b[i]);
    out[i] = acc;
  }
}

template <class S>
void check_layer_finite(const std::vector<S>& v, const std::string& where) {
  for (const S& x : v)
    if (!jet_finite(x)) throw numeric_error("non-finite value at " + where);
}

template <class S>
void net_forward(const Network& net, std::span<const double> theta, const S* x, NetCache<S>& c,
                 bool check_finite = false) {
  if ((int)theta.size() != net.param_count())
    throw config_error("net_forward: parameter vector length mismatch");
  if (c.branches.size() != net.branches.size()) resize_cache(net, c);
  using std::tanh;
  const int width = net.cfg.width;
  for (size_t b = 0; b < net.branches.size(); ++b) {
    const auto& br = net.branches[b];
    auto& bc = c.branches[b];
    if (br.emb) {
      embed_eval(*br.emb, x + br.coord_offset, bc.gamma.data());
    } else {
      for (int j = 0; j < br.coord_count; ++j) bc.gamma[j] = x[br.coord_offset + j];
    }
    const S* prev = bc.gamma.data();
    int nin = net.branch_input_dim;
    for (int l = 0; l < net.cfg.depth; ++l) {
      const auto& lin = net.layout.hidden[l];
      affine(theta.data() + lin.w_offset, theta.data() + lin.b_offset, lin.scale, prev, nin,
             bc.z[l].data(), width);
      for (int u = 0; u < width; ++u) bc.h[l][u] = tanh(bc.z[l][u]);
      if (check_finite) check_layer_finite(bc.h[l], "hidden layer " + std::to_string(l + 1));
      prev = bc.h[l].data();
      nin = width;
    }
  }
  // assemble final-layer input blocks
  const auto& lout = net.layout.out;
  const double* wout = theta.data() + lout.w_offset;
  for (int o = 0; o < net.cfg.out_dim; ++o) {
    S acc{};
    const double* row = wout + (size_t)o * lout.cols;
    if (net.arch.kind == ArchKind::stmff) {
      for (int i = 0; i < net.n_spatial_branches; ++i)
        for (int j = 0; j < net.n_temporal_branches; ++j) {
          const int blk = i * net.n_temporal_branches + j;
          const auto& hx = c.branches[i].h[net.cfg.depth - 1];
          const auto& ht = c.branches[net.n_spatial_branches + j].h[net.cfg.depth - 1];
          auto& g = c.merged[blk];
          for (int u = 0; u < net.cfg.width; ++u) {
            if (o == 0) g[u] = hx[u] * ht[u];  // products shared across outputs
            acc += row[(size_t)blk * net.cfg.width + u] * g[u];
          }
        }
    } else {
      for (int blk = 0; blk < net.merged_count; ++blk) {
        const auto& hb = c.branches[blk].h[net.cfg.depth - 1];
        for (int u = 0; u < net.cfg.width; ++u)
          acc += row[(size_t)blk * net.cfg.width + u] * hb[u];
      }
    }
    acc = lout.scale * acc;
    acc += S(theta[lout.b_offset + o]);
    c.out[o] = acc;
  }
  if (check_finite) check_layer_finite(c.out, "output layer");
}

// Accumulates d<out_bar, out>/dtheta into grad (+=). The cache must hold the
// forward pass for the same (theta, x).
template <class S>
void net_backward(const Network& net, std::span<const double> theta, NetCache<S>& c,
                  const S* out_bar, double* grad) {
  const int width = net.cfg.width;
  const int depth = net.cfg.depth;
  const auto& lout = net.layout.out;
  const double* wout = theta.data() + lout.w_offset;
  double* wout_g = grad + lout.w_offset;
  double* bout_g = grad + lout.b_offset;

  for (auto& blk : c.bar_blocks) blk.assign(width, S{});
  for (int o = 0; o < net.cfg.out_dim; ++o) {
    const S ob = out_bar[o];
    bout_g[o] += cot_value(ob);
    const double* row = wout + (size_t)o * lout.cols;
    double* rowg = wout_g + (size_t)o * lout.cols;
    for (int blk = 0; blk < net.merged_count; ++blk) {
      const auto& src = net.arch.kind == ArchKind::stmff ? c.merged[blk]
                                                         : c.branches[blk].h[depth - 1];
      auto& bb = c.bar_blocks[blk];
      for (int u = 0; u < width; ++u) {
        rowg[(size_t)blk * width + u] += lout.scale * slot_dot(ob, src[u]);
        bb[u] += (lout.scale * row[(size_t)blk * width + u]) * ob;
      }
    }
  }

  // per-branch cotangents of the last hidden layer
  std::vector<std::vector<S>> bar_branch(net.branches.size(), std::vector<S>(width, S{}));
  if (net.arch.kind == ArchKind::stmff) {
    for (int i = 0; i < net.n_spatial_branches; ++i)
      for (int j = 0; j < net.n_temporal_branches; ++j) {
        const int blk = i * net.n_temporal_branches + j;
        const auto& hx = c.branches[i].h[depth - 1];
        const auto& ht = c.branches[net.n_spatial_branches + j].h[depth - 1];
        for (int u = 0; u < width; ++u) {
          bar_branch[i][u] += adj_mul(ht[u], c.bar_blocks[blk][u]);
          bar_branch[net.n_spatial_branches + j][u] += adj_mul(hx[u], c.bar_blocks[blk][u]);
        }
      }
  } else {
    for (size_t b = 0; b < net.branches.size(); ++b) bar_branch[b] = c.bar_blocks[b];
  }

  for (size_t b = 0; b < net.branches.size(); ++b) {
    auto& bc = c.branches[b];
    c.bar_h = bar_branch[b];
    for (int l = depth - 1; l >= 0; --l) {
      const auto& lin = net.layout.hidden[l];
      const double* w = theta.data() + lin.w_offset;
      double* wg = grad + lin.w_offset;
      double* bg = grad + lin.b_offset;
      for (int u = 0; u < width; ++u)
        c.bar_z[u] = adj_tanh(bc.z[l][u], value_of(bc.h[l][u]), c.bar_h[u]);
      const S* prev = l == 0 ? bc.gamma.data() : bc.h[l - 1].data();
      const int nin = lin.cols;
      if (l == 0) {
        // embeddings are fixed: gradient stops at W1/b1
        for (int u = 0; u < width; ++u) {
          const S zb = c.bar_z[u];
          bg[u] += cot_value(zb);
          double* wrow = wg + (size_t)u * nin;
          for (int j = 0; j < nin; ++j) wrow[j] += lin.scale * slot_dot(zb, prev[j]);
        }
      } else {
        for (int j = 0; j < nin; ++j) c.bar_prev[j] = S{};
        for (int u = 0; u < width; ++u) {
          const S zb = c.bar_z[u];
          bg[u] += cot_value(zb);
          const double* wrow = w + (size_t)u * nin;
          double* wgrow = wg + (size_t)u * nin;
          for (int j = 0; j < nin; ++j) {
            wgrow[j] += lin.scale * slot_dot(zb, prev[j]);
            c.bar_prev[j] += (lin.scale * wrow[j]) * zb;
          }
        }
        for (int j = 0; j < nin; ++j) c.bar_h[j] = c.bar_prev[j];
      }
    }
  }
}

/// Plain-double forward returning the outputs.
Vector net_eval(const Network& net, std::span<const double> theta, std::span<const double> x);

}  // namespace mspinn
