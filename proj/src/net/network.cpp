#include "mspinn/net/network.hpp"

#include <cmath>

namespace mspinn {

FourierEmbedding sample_fourier_features(int d, int m, double sigma, RngStream rng, bool two_pi) {
  if (m < 1) throw config_error("sample_fourier_features: m must be >= 1");
  if (!(sigma > 0.0)) throw config_error("sample_fourier_features: sigma must be positive");
  FourierEmbedding e;
  e.sigma = sigma;
  e.m = m;
  e.two_pi = two_pi;
  e.b = Matrix(m, d);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < d; ++j) e.b(i, j) = rng.normal(sigma);
  return e;
}

Vector embed(const FourierEmbedding& e, std::span<const double> v) {
  if ((int)v.size() != e.b.cols()) throw config_error("embed: dimension mismatch");
  Vector out(2 * e.m);
  embed_eval(e, v.data(), out.data());
  return out;
}

Network make_network(const FCNNConfig& cfg, const ArchitectureSpec& arch, RngStream embed_rng,
                     int n_phys, double phys_init) {
  if (cfg.depth < 1 || cfg.width < 1) throw config_error("make_network: depth and width must be >= 1");
  Network net;
  net.cfg = cfg;
  net.arch = arch;
  net.n_phys = n_phys;
  net.phys_init = phys_init;

  int emb_index = 0;
  switch (arch.kind) {
    case ArchKind::plain:
      net.branches.push_back({nullptr, 0, cfg.in_dim});
      net.branch_input_dim = cfg.in_dim;
      net.merged_count = 1;
      break;
    case ArchKind::mff: {
      if (arch.sigmas.empty()) throw config_error("make_network: mff needs at least one sigma");
      for (double s : arch.sigmas)
        net.embeddings.push_back(
            sample_fourier_features(cfg.in_dim, arch.m, s, embed_rng.split((uint64_t)emb_index++), arch.two_pi));
      net.branch_input_dim = 2 * arch.m;
      net.merged_count = (int)arch.sigmas.size();
      break;
    }
    case ArchKind::stmff: {
      if (arch.sigma_x.empty() || arch.sigma_t.empty())
        throw config_error("make_network: stmff needs spatial and temporal sigmas");
      if (arch.spatial_dim < 1 || arch.spatial_dim >= cfg.in_dim)
        throw config_error("make_network: stmff spatial_dim must leave a trailing time coordinate");
      for (double s : arch.sigma_x)
        net.embeddings.push_back(
            sample_fourier_features(arch.spatial_dim, arch.m, s, embed_rng.split((uint64_t)emb_index++), arch.two_pi));
      for (double s : arch.sigma_t)
        net.embeddings.push_back(sample_fourier_features(cfg.in_dim - arch.spatial_dim, arch.m, s,
                                                         embed_rng.split((uint64_t)emb_index++), arch.two_pi));
      net.n_spatial_branches = (int)arch.sigma_x.size();
      net.n_temporal_branches = (int)arch.sigma_t.size();
      net.branch_input_dim = 2 * arch.m;
      net.merged_count = net.n_spatial_branches * net.n_temporal_branches;
      break;
    }
  }
  if (arch.kind != ArchKind::plain) {
    int b = 0;
    for (int i = 0; i < (int)net.embeddings.size(); ++i, ++b) {
      const bool temporal = arch.kind == ArchKind::stmff && i >= net.n_spatial_branches;
      const int off = temporal ? arch.spatial_dim : 0;
      const int cnt = temporal ? cfg.in_dim - arch.spatial_dim
                               : (arch.kind == ArchKind::stmff ? arch.spatial_dim : cfg.in_dim);
      net.branches.push_back({&net.embeddings[i], off, cnt});
    }
  }

  // flat layout: hidden affines, output affine, physical scalars
  auto& lay = net.layout;
  int offset = 0;
  auto add_lin = [&](int rows, int cols) {
    Network::Lin lin;
    lin.rows = rows;
    lin.cols = cols;
    lin.w_offset = offset;
    offset += rows * cols;
    lin.b_offset = offset;
    offset += rows;
    lin.scale = cfg.mode == ParamMode::ntk ? 1.0 / std::sqrt((double)cols) : 1.0;
    return lin;
  };
  lay.hidden.push_back(add_lin(cfg.width, net.branch_input_dim));
  for (int l = 1; l < cfg.depth; ++l) lay.hidden.push_back(add_lin(cfg.width, cfg.width));
  lay.out = add_lin(cfg.out_dim, net.merged_count * cfg.width);
  lay.phys_offset = offset;
  offset += n_phys;
  lay.total = offset;
  return net;
}

Vector init_params(const Network& net, RngStream rng) {
  Vector theta(net.param_count(), 0.0);
  auto fill_lin = [&](const Network::Lin& lin) {
    if (net.cfg.mode == ParamMode::ntk) {
      for (int i = 0; i < lin.rows * lin.cols; ++i) theta[lin.w_offset + i] = rng.normal(1.0);
      for (int i = 0; i < lin.rows; ++i) theta[lin.b_offset + i] = rng.normal(1.0);
    } else {
      const double glorot = std::sqrt(2.0 / (lin.rows + lin.cols));
      for (int i = 0; i < lin.rows * lin.cols; ++i) theta[lin.w_offset + i] = rng.normal(glorot);
      // biases stay zero
    }
  };
  for (const auto& lin : net.layout.hidden) fill_lin(lin);
  fill_lin(net.layout.out);
  for (int i = 0; i < net.n_phys; ++i) theta[net.layout.phys_offset + i] = net.phys_init;
  return theta;
}

}  // namespace mspinn
