#include "amhd/grid.hpp"

#include <algorithm>
#include <mutex>

#if defined(__GLIBC__)
#include <malloc.h>
#endif
#include <new>
#include <string>
#include <vector>

#include <fftw3.h>

#include "amhd/errors.hpp"

namespace amhd {

namespace {

// The FFTW planner is not re-entrant; execution with the new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

int signed_mode(int slot, int n) { return slot <= n / 2 ? slot : slot - n; }

// Per-thread SIMD-aligned staging buffer; plans are made for aligned data only.
template <class T>
T* aligned_scratch(std::size_t n, int which) {
  struct Buffer {
    void* p = nullptr;
    std::size_t bytes = 0;
    ~Buffer() { fftw_free(p); }
  };
  thread_local Buffer buf[2];
  Buffer& b = buf[which];
  if (b.bytes < n * sizeof(T)) {
    fftw_free(b.p);
    b.p = fftw_malloc(n * sizeof(T));
    if (!b.p) throw std::bad_alloc();
    b.bytes = n * sizeof(T);
  }
  return static_cast<T*>(b.p);
}

// Field-sized temporaries exceed glibc's mmap threshold, so every one would be a
// fresh mapping with page faults on first touch. Keep them on the reusable heap.
void tune_allocator() {
#if defined(__GLIBC__)
  static std::once_flag once;
  std::call_once(once, [] {
    mallopt(M_MMAP_THRESHOLD, 256 << 20);
    mallopt(M_TRIM_THRESHOLD, 512 << 20);
  });
#endif
}

bool aligned(const void* p) { return fftw_alignment_of(static_cast<double*>(const_cast<void*>(p))) == 0; }

}  // namespace

struct Grid::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

GridPtr Grid::make(std::array<int, 3> n, std::array<double, 3> l) {
  for (int a = 0; a < 3; ++a) {
    if (n[a] < 4 || n[a] % 2 != 0) {
      throw StructuralError("grid: n" + std::to_string(a + 1) + " = " + std::to_string(n[a]) +
                            " must be even and >= 4");
    }
    if (!(l[a] > 0.0)) {
      throw DomainError("grid: box length l" + std::to_string(a + 1) + " must be positive");
    }
  }
  return GridPtr(new Grid(n, l));
}

Grid::Grid(std::array<int, 3> n, std::array<double, 3> l) : n_(n), l_(l) {
  size_ = static_cast<std::size_t>(n[0]) * n[1] * n[2];
  spectral_size_ = static_cast<std::size_t>(n[0]) * n[1] * half_n3();

  for (int a = 0; a < 3; ++a) {
    // 2/3 rule, strict form: 3*kmax < n keeps every quadratic product alias-free.
    kmax_[a] = (n[a] - 1) / 3;
    axis_k_[a].resize(n[a]);
    for (int i = 0; i < n[a]; ++i) axis_k_[a][i] = two_pi / l[a] * signed_mode(i, n[a]);
  }

  const int nh = half_n3();
  for (int a = 0; a < 3; ++a) {
    k_[a].resize(spectral_size_);
    mode_[a].resize(spectral_size_);
  }
  k2_.resize(spectral_size_);
  kh2_.resize(spectral_size_);
  mask_.resize(spectral_size_);
  weight_.resize(spectral_size_);

  for (int i1 = 0; i1 < n[0]; ++i1) {
    for (int i2 = 0; i2 < n[1]; ++i2) {
      for (int i3 = 0; i3 < nh; ++i3) {
        const std::size_t s = spectral_index(i1, i2, i3);
        const std::array<int, 3> slots{i1, i2, i3};
        double kk = 0.0, kh = 0.0;
        bool keep = true;
        for (int a = 0; a < 3; ++a) {
          const int m = signed_mode(slots[a], n[a]);
          const double kfull = two_pi / l[a] * m;
          mode_[a][s] = m;
          const bool nyquist = (2 * slots[a] == n[a]);
          k_[a][s] = nyquist ? 0.0 : kfull;
          kk += kfull * kfull;
          if (a < 2) kh += kfull * kfull;
          keep = keep && std::abs(m) <= kmax_[a];
        }
        k2_[s] = kk;
        kh2_[s] = kh;
        mask_[s] = keep ? 1.0 : 0.0;
        weight_[s] = (i3 == 0 || 2 * i3 == n[2]) ? 1.0 : 2.0;
      }
    }
  }

  tune_allocator();
  plans_ = std::make_unique<Plans>();
  std::lock_guard lock(planner_mutex());
  double* real = fftw_alloc_real(size_);
  fftw_complex* spec = fftw_alloc_complex(spectral_size_);
  // FFTW_ESTIMATE keeps the plan, hence every bit of the output, reproducible.
  plans_->r2c = fftw_plan_dft_r2c_3d(n[0], n[1], n[2], real, spec, FFTW_ESTIMATE);
  plans_->c2r = fftw_plan_dft_c2r_3d(n[0], n[1], n[2], spec, real, FFTW_ESTIMATE);
  fftw_free(real);
  fftw_free(spec);
  if (!plans_->r2c || !plans_->c2r) throw StructuralError("grid: FFTW planning failed");
}

Grid::~Grid() = default;

int Grid::slot(Axis a, int m) const {
  const int n = n_[index_of(a)];
  if (m > n / 2 || m <= -n / 2) return -1;
  return m >= 0 ? m : m + n;
}

void Grid::forward(const double* in, Complex* out) const {
  // r2c leaves the input intact, but the API is not const-qualified.
  double* src = const_cast<double*>(in);
  if (!aligned(in)) {
    src = aligned_scratch<double>(size_, 0);
    std::copy(in, in + size_, src);
  }
  Complex* dst = aligned(out) ? out : aligned_scratch<Complex>(spectral_size_, 1);
  fftw_execute_dft_r2c(plans_->r2c, src, reinterpret_cast<fftw_complex*>(dst));
  const double scale = 1.0 / static_cast<double>(size_);
  for (std::size_t s = 0; s < spectral_size_; ++s) out[s] = dst[s] * scale;
}

void Grid::inverse(const Complex* in, double* out) const {
  // c2r overwrites its input.
  Complex* src = aligned_scratch<Complex>(spectral_size_, 1);
  std::copy(in, in + spectral_size_, src);
  execute_inverse(src, out);
}

void Grid::inverse_derivative(const Complex* in, Axis a, double* out) const {
  Complex* src = aligned_scratch<Complex>(spectral_size_, 1);
  const double* k = k_[index_of(a)].data();
  for (std::size_t s = 0; s < spectral_size_; ++s) src[s] = Complex(-k[s] * in[s].imag(), k[s] * in[s].real());
  execute_inverse(src, out);
}

void Grid::execute_inverse(Complex* src, double* out) const {
  double* dst = aligned(out) ? out : aligned_scratch<double>(size_, 0);
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(src), dst);
  if (dst != out) std::copy(dst, dst + size_, out);
}

}  // namespace amhd
