#ifndef MINACT_SPECTRAL_HPP
#define MINACT_SPECTRAL_HPP

#include "minact/types.hpp"

namespace minact {

/// Pseudospectral derivatives on the unit 1- or 2-torus with an N-point
/// uniform grid per direction. Fields are grid values; 2D fields are
/// flattened as index = iy*N + ix, grid point (x,y) = (ix/N, iy/N).
/// All outputs are real (r2c/c2r transforms keep Hermitian symmetry
/// exactly). Not thread safe: each instance owns its FFTW plans/buffers.
class SpectralOps {
 public:
  SpectralOps(int dim, int N);
  ~SpectralOps();
  SpectralOps(const SpectralOps&) = delete;
  SpectralOps& operator=(const SpectralOps&) = delete;

  int dim() const { return dim_; }
  int grid() const { return N_; }
  int size() const { return size_; }

  Vec dx(const Vec& u);
  Vec dy(const Vec& u);  // throws for 1D fields
  Vec laplacian(const Vec& u);
  Vec bilaplacian(const Vec& u);

  /// 2/3-rule truncation: zero every mode with |k| > N/3 in any direction.
  Vec dealias(const Vec& u);

  /// e^{t kappa Laplacian} u, i.e. multiply mode k by exp(-a (2pi|k|)^2),
  /// a = t*kappa >= 0.
  Vec exp_laplacian(const Vec& u, double a);

  /// e^{-a Laplacian^2} u: multiply mode k by exp(-a (2pi|k|)^4).
  Vec exp_bilaplacian(const Vec& u, double a);

 private:
  struct Impl;
  Impl* impl_;
  int dim_ = 0, N_ = 0, size_ = 0;
};

}  // namespace minact

#endif
