#include "minact/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>

namespace minact {

struct SpectralOps::Impl {
  int N = 0, dim = 0, nreal = 0, ncplx = 0;
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  fftw_plan fwd = nullptr, bwd = nullptr;
  std::vector<double> kx, ky;  // signed integer wavenumbers per complex index

  Impl(int d, int n) : N(n), dim(d) {
    nreal = d == 1 ? N : N * N;
    ncplx = d == 1 ? N / 2 + 1 : N * (N / 2 + 1);
    real = fftw_alloc_real(nreal);
    cplx = fftw_alloc_complex(ncplx);
    if (d == 1) {
      fwd = fftw_plan_dft_r2c_1d(N, real, cplx, FFTW_ESTIMATE);
      bwd = fftw_plan_dft_c2r_1d(N, cplx, real, FFTW_ESTIMATE);
    } else {
      fwd = fftw_plan_dft_r2c_2d(N, N, real, cplx, FFTW_ESTIMATE);
      bwd = fftw_plan_dft_c2r_2d(N, N, cplx, real, FFTW_ESTIMATE);
    }
    kx.resize(ncplx);
    ky.resize(ncplx, 0.0);
    const int nx = N / 2 + 1;
    for (int i = 0; i < ncplx; ++i) {
      const int jx = d == 1 ? i : i % nx;
      const int jy = d == 1 ? 0 : i / nx;
      kx[i] = jx;
      ky[i] = jy <= N / 2 ? jy : jy - N;
    }
  }

  ~Impl() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(real);
    fftw_free(cplx);
  }

  // u -> c2r(op(r2c(u))) / N^dim
  template <class Op>
  Vec transform(const Vec& u, Op op) {
    std::copy(u.data(), u.data() + nreal, real);
    fftw_execute(fwd);
    for (int i = 0; i < ncplx; ++i) {
      std::complex<double> z(cplx[i][0], cplx[i][1]);
      z = op(z, kx[i], ky[i]);
      cplx[i][0] = z.real();
      cplx[i][1] = z.imag();
    }
    fftw_execute(bwd);
    Vec out(nreal);
    const double scale = 1.0 / nreal;
    for (int i = 0; i < nreal; ++i) out(i) = real[i] * scale;
    return out;
  }
};

SpectralOps::SpectralOps(int dim, int N) : dim_(dim), N_(N) {
  if ((dim != 1 && dim != 2) || N < 4 || N % 2 != 0)
    throw std::invalid_argument("SpectralOps: dim must be 1 or 2, N even >= 4");
  impl_ = new Impl(dim, N);
  size_ = impl_->nreal;
}

SpectralOps::~SpectralOps() { delete impl_; }

namespace {
const double kTwoPi = 2.0 * M_PI;
}

Vec SpectralOps::dx(const Vec& u) {
  const int nyq = N_ / 2;
  return impl_->transform(u, [&](std::complex<double> z, double fx, double) {
    if (static_cast<int>(fx) == nyq) return std::complex<double>(0, 0);
    return std::complex<double>(0, kTwoPi * fx) * z;
  });
}

Vec SpectralOps::dy(const Vec& u) {
  if (dim_ != 2) throw std::invalid_argument("dy on a 1D field");
  const int nyq = N_ / 2;
  return impl_->transform(u, [&](std::complex<double> z, double, double fy) {
    if (static_cast<int>(fy) == nyq) return std::complex<double>(0, 0);
    return std::complex<double>(0, kTwoPi * fy) * z;
  });
}

Vec SpectralOps::laplacian(const Vec& u) {
  return impl_->transform(u, [](std::complex<double> z, double fx, double fy) {
    return -kTwoPi * kTwoPi * (fx * fx + fy * fy) * z;
  });
}

Vec SpectralOps::bilaplacian(const Vec& u) {
  return impl_->transform(u, [](std::complex<double> z, double fx, double fy) {
    const double k2 = kTwoPi * kTwoPi * (fx * fx + fy * fy);
    return k2 * k2 * z;
  });
}

Vec SpectralOps::dealias(const Vec& u) {
  const double cut = N_ / 3.0;
  return impl_->transform(u, [&](std::complex<double> z, double fx, double fy) {
    if (std::abs(fx) > cut || std::abs(fy) > cut)
      return std::complex<double>(0, 0);
    return z;
  });
}

Vec SpectralOps::exp_laplacian(const Vec& u, double a) {
  return impl_->transform(u, [&](std::complex<double> z, double fx, double fy) {
    const double k2 = kTwoPi * kTwoPi * (fx * fx + fy * fy);
    return std::exp(-a * k2) * z;
  });
}

Vec SpectralOps::exp_bilaplacian(const Vec& u, double a) {
  return impl_->transform(u, [&](std::complex<double> z, double fx, double fy) {
    const double k2 = kTwoPi * kTwoPi * (fx * fx + fy * fy);
    return std::exp(-a * k2 * k2) * z;
  });
}

}  // namespace minact
