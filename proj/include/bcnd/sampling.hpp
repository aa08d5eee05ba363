#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "bcnd/types.hpp"

namespace bcnd {

// Seeded draws for the certification suites and tests. Chamber depth is kept
// moderate: the identities are exact in exact arithmetic, while double
// roundoff grows with e^{2|p_n|}.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b);
  int uniform_int(int lo, int hi);  // inclusive

  // Interior chamber point: p1 in [-0.6, -0.1], wall margins in [lo, hi].
  LocalPoint interior_point(const CouplingParams& cp, double lo = 0.15,
                            double hi = 0.55);

  // Point close to the chamber vertex, where the Hamiltonian magnitudes stay
  // small; used by finite-difference-limited suites (brackets, rank, flows).
  LocalPoint shallow_interior_point(const CouplingParams& cp);

  // Arbitrary model point; optionally with `zeros` components set to 0.
  GlobalPoint global_point(const CouplingParams& cp, int zeros = 0);

  CMatrix unitary(int m);
  // Random element of SL(m, C), det normalized to 1, moderate condition.
  CMatrix unimodular(int m);
  CMatrix hermitian(int m);

  // Random pair (eta_L, eta_R) in the isotropy group of the momentum value:
  // eta_L = blockdiag(kappa D kappa^{-1}, V), eta_R block-diagonal special
  // unitary.
  std::pair<CMatrix, CMatrix> gauge_pair(const CouplingParams& cp);

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace bcnd
