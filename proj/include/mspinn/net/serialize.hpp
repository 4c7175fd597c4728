#pragma once

#include <cstdint>
#include <string>

#include "mspinn/net/network.hpp"

namespace mspinn {

// Flat little-endian checkpoint blob: versioned fixed header, architecture
// description, theta payload, then the fixed frequency matrices.

struct Checkpoint {
  FCNNConfig cfg;
  ArchitectureSpec arch;
  int n_phys = 0;
  double phys_init = -10.0;
  uint64_t iteration = 0;
  Vector theta;
  std::vector<Matrix> frequency_matrices;
  std::vector<double> frequency_sigmas;
};

void save_checkpoint(const std::string& path, const Network& net, std::span<const double> theta,
                     uint64_t iteration);

/// Rejects unknown magic or version.
Checkpoint load_checkpoint(const std::string& path);

/// Rebuilds the network from a checkpoint, reusing the stored frequency
/// matrices instead of resampling.
Network network_from_checkpoint(const Checkpoint& ck);

}  // namespace mspinn
