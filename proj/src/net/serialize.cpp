#include "mspinn/net/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace mspinn {

static_assert(std::endian::native == std::endian::little,
              "checkpoint format is little-endian; big-endian hosts unsupported");

namespace {

constexpr char kMagic[8] = {'M', 'S', 'F', 'F', 'N', 'E', 'T', '\0'};
constexpr uint32_t kVersion = 1;

template <class T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T>
T get(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw config_error("checkpoint: truncated file");
  return v;
}

void put_doubles(std::ofstream& os, std::span<const double> v) {
  put<uint64_t>(os, v.size());
  os.write(reinterpret_cast<const char*>(v.data()), (std::streamsize)(v.size() * sizeof(double)));
}
Vector get_doubles(std::ifstream& is) {
  const uint64_t n = get<uint64_t>(is);
  Vector v(n);
  is.read(reinterpret_cast<char*>(v.data()), (std::streamsize)(n * sizeof(double)));
  if (!is) throw config_error("checkpoint: truncated payload");
  return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const Network& net, std::span<const double> theta,
                     uint64_t iteration) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw config_error("checkpoint: cannot open for writing: " + path);
  os.write(kMagic, sizeof(kMagic));
  put(os, kVersion);
  put(os, (uint32_t)net.arch.kind);
  put(os, (uint32_t)net.cfg.mode);
  put(os, (int32_t)net.cfg.depth);
  put(os, (int32_t)net.cfg.width);
  put(os, (int32_t)net.cfg.in_dim);
  put(os, (int32_t)net.cfg.out_dim);
  put(os, (int32_t)net.arch.m);
  put(os, (uint32_t)(net.arch.two_pi ? 1 : 0));
  put(os, (int32_t)net.arch.spatial_dim);
  put(os, (int32_t)net.n_phys);
  put(os, net.phys_init);
  put(os, iteration);
  put(os, (uint32_t)net.arch.sigmas.size());
  put(os, (uint32_t)net.arch.sigma_x.size());
  put(os, (uint32_t)net.arch.sigma_t.size());
  put_doubles(os, theta);
  put(os, (uint32_t)net.embeddings.size());
  for (const auto& e : net.embeddings) {
    put(os, (int32_t)e.b.rows());
    put(os, (int32_t)e.b.cols());
    put(os, e.sigma);
    put_doubles(os, {e.b.data(), (size_t)e.b.rows() * e.b.cols()});
  }
  if (!os) throw numeric_error("checkpoint: write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw config_error("checkpoint: cannot open: " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw config_error("checkpoint: bad magic in " + path);
  const uint32_t version = get<uint32_t>(is);
  if (version != kVersion)
    throw config_error("checkpoint: unsupported version " + std::to_string(version));
  Checkpoint ck;
  ck.arch.kind = (ArchKind)get<uint32_t>(is);
  ck.cfg.mode = (ParamMode)get<uint32_t>(is);
  ck.cfg.depth = get<int32_t>(is);
  ck.cfg.width = get<int32_t>(is);
  ck.cfg.in_dim = get<int32_t>(is);
  ck.cfg.out_dim = get<int32_t>(is);
  ck.arch.m = get<int32_t>(is);
  ck.arch.two_pi = get<uint32_t>(is) != 0;
  ck.arch.spatial_dim = get<int32_t>(is);
  ck.n_phys = get<int32_t>(is);
  ck.phys_init = get<double>(is);
  ck.iteration = get<uint64_t>(is);
  const uint32_t ns = get<uint32_t>(is), nsx = get<uint32_t>(is), nst = get<uint32_t>(is);
  ck.theta = get_doubles(is);
  const uint32_t ne = get<uint32_t>(is);
  for (uint32_t i = 0; i < ne; ++i) {
    const int rows = get<int32_t>(is), cols = get<int32_t>(is);
    const double sigma = get<double>(is);
    Vector data = get_doubles(is);
    ck.frequency_matrices.push_back(Matrix::from_data(rows, cols, std::move(data)));
    ck.frequency_sigmas.push_back(sigma);
  }
  // reconstruct sigma lists from the stored embeddings
  for (uint32_t i = 0; i < ne; ++i) {
    if (ck.arch.kind == ArchKind::mff && i < ns) ck.arch.sigmas.push_back(ck.frequency_sigmas[i]);
    if (ck.arch.kind == ArchKind::stmff) {
      if (i < nsx)
        ck.arch.sigma_x.push_back(ck.frequency_sigmas[i]);
      else if (i < nsx + nst)
        ck.arch.sigma_t.push_back(ck.frequency_sigmas[i]);
    }
  }
  return ck;
}

Network network_from_checkpoint(const Checkpoint& ck) {
  Network net = make_network(ck.cfg, ck.arch, RngStream::root(0), ck.n_phys, ck.phys_init);
  if (net.embeddings.size() != ck.frequency_matrices.size())
    throw config_error("checkpoint: embedding count mismatch");
  for (size_t i = 0; i < net.embeddings.size(); ++i) {
    if (net.embeddings[i].b.rows() != ck.frequency_matrices[i].rows() ||
        net.embeddings[i].b.cols() != ck.frequency_matrices[i].cols())
      throw config_error("checkpoint: frequency matrix shape mismatch");
    net.embeddings[i].b = ck.frequency_matrices[i];
    net.embeddings[i].sigma = ck.frequency_sigmas[i];
  }
  if ((int)ck.theta.size() != net.param_count())
    throw config_error("checkpoint: theta length mismatch");
  return net;
}

}  // namespace mspinn
