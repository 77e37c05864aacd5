#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coherence/complex_matrix.hpp"
#include "coherence/states.hpp"

namespace coherence {

struct KrausChannel {
  std::vector<ComplexMatrix> operators;
  std::string label;

  int dim() const;
};

struct ChannelValidation {
  bool complete = false;    // sum K^dagger K = I within 1e-9
  bool incoherent = false;  // every operator has at most one nonzero per column
  double completeness_error = 0.0;
};

// One measurement branch. Outcomes with probability below 1e-12 carry no
// state (null marker) and are skipped in C2b averages.
struct ChannelOutcome {
  double probability = 0.0;
  std::optional<DensityMatrix> state;
  int outcome_index = 0;
};

ChannelValidation validate(const KrausChannel& channel);

// Total map sum_n K_n rho K_n^dagger. Requires a complete channel.
DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);

// Measurement branches: p_n = tr(K_n rho K_n^dagger), state K rho K^dagger / p_n.
std::vector<ChannelOutcome> subselect(const KrausChannel& channel, const DensityMatrix& rho);

// Two-operator qubit channel K1 = [[a,0],[0,b]], K2 = [[0,c],[0,0]].
// Completeness forces |a|^2 = 1 and |b|^2 + |c|^2 = 1.
KrausChannel amplitude_damping_like(cplx a, cplx b, cplx c);

KrausChannel identity_channel(int dim);

// Projectors onto the fixed basis; the total map is dephase().
KrausChannel full_dephasing_channel(int dim);

// Two-outcome incoherent channel: a diagonal operator plus a permuted
// diagonal operator, with |d_i|^2 + |e_i|^2 = 1 per column. Deterministic
// for a fixed seed.
KrausChannel random_incoherent_channel(int dim, std::uint64_t seed);

// Single random unitary operator (complete, generally not incoherent).
KrausChannel random_unitary_channel(int dim, std::uint64_t seed);

}  // namespace coherence
