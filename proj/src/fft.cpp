#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace fvbench::fft {
namespace {

struct Plan {
  int n = 0;
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::mutex use;

  explicit Plan(int size) : n(size) {
    const std::size_t nr = static_cast<std::size_t>(n) * n * n;
    real = fftw_alloc_real(nr);
    spec = fftw_alloc_complex(spectral_size(n));
    fwd = fftw_plan_dft_r2c_3d(n, n, n, real, spec, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_3d(n, n, n, spec, real, FFTW_ESTIMATE);
  }
  ~Plan() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(real);
    fftw_free(spec);
  }
};

Plan& plan_for(int n) {
  static std::mutex registry_mutex;
  static std::map<int, std::unique_ptr<Plan>> registry;
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto& slot = registry[n];
  if (!slot) slot = std::make_unique<Plan>(n);
  return *slot;
}

}  // namespace

void forward(int n, const double* in, std::vector<Complex>& out) {
  Plan& p = plan_for(n);
  std::lock_guard<std::mutex> lock(p.use);
  std::memcpy(p.real, in, sizeof(double) * n * n * n);
  fftw_execute(p.fwd);
  out.resize(spectral_size(n));
  std::memcpy(static_cast<void*>(out.data()), p.spec, sizeof(fftw_complex) * out.size());
}

void backward(int n, const std::vector<Complex>& in, double* out) {
  Plan& p = plan_for(n);
  std::lock_guard<std::mutex> lock(p.use);
  std::memcpy(p.spec, in.data(), sizeof(fftw_complex) * spectral_size(n));
  fftw_execute(p.bwd);  // c2r destroys its input buffer, which is a private copy
  std::memcpy(out, p.real, sizeof(double) * n * n * n);
}

}  // namespace fvbench::fft
