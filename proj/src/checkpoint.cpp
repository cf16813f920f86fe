#include "amhd/checkpoint.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "amhd/errors.hpp"

namespace amhd {

namespace {

constexpr std::array<char, 4> magic{'A', 'M', 'H', 'D'};

template <class T>
T byteswap_if_big(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::array<unsigned char, sizeof(T)> b;
    std::memcpy(b.data(), &v, sizeof(T));
    std::reverse(b.begin(), b.end());
    std::memcpy(&v, b.data(), sizeof(T));
  }
  return v;
}

template <class T>
void put(std::ostream& out, T v) {
  v = byteswap_if_big(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in, const char* what) {
  T v;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw StructuralError(std::string("checkpoint: truncated while reading ") + what);
  }
  return byteswap_if_big(v);
}

void put_array(std::ostream& out, Eigen::Ref<const Eigen::ArrayXd> x) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(x.data()),
              static_cast<std::streamsize>(x.size() * sizeof(double)));
  } else {
    for (Eigen::Index i = 0; i < x.size(); ++i) put(out, x[i]);
  }
}

void get_array(std::istream& in, Eigen::Ref<Eigen::ArrayXd> x) {
  if constexpr (std::endian::native == std::endian::little) {
    if (!in.read(reinterpret_cast<char*>(x.data()),
                 static_cast<std::streamsize>(x.size() * sizeof(double)))) {
      throw StructuralError("checkpoint: truncated payload");
    }
  } else {
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = get<double>(in, "payload");
  }
}

}  // namespace

void write_checkpoint(std::ostream& out, const State& s, const PhysParams& p) {
  const Grid& g = s.grid();
  out.write(magic.data(), magic.size());
  put<std::uint32_t>(out, checkpoint_version);
  for (int n : g.dims()) put<std::uint32_t>(out, static_cast<std::uint32_t>(n));
  for (double l : g.lengths()) put<double>(out, l);
  put<double>(out, s.t);
  put<double>(out, p.gamma);
  put<double>(out, p.mu);
  put<double>(out, p.lambda);
  put<double>(out, p.sigma);
  put_array(out, s.a.component(0));
  for (int c = 0; c < 3; ++c) put_array(out, s.u.component(c));
  for (int c = 0; c < 3; ++c) put_array(out, s.B.component(c));
  if (!out) throw std::runtime_error("checkpoint: write failed");
}

void write_checkpoint(const std::filesystem::path& path, const State& s, const PhysParams& p) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("checkpoint: cannot open " + path.string() + " for writing");
  write_checkpoint(out, s, p);
}

Checkpoint read_checkpoint(std::istream& in) {
  std::array<char, 4> m{};
  if (!in.read(m.data(), m.size()) || m != magic) {
    throw StructuralError("checkpoint: bad magic (expected \"AMHD\")");
  }
  const auto version = get<std::uint32_t>(in, "version");
  if (version != checkpoint_version) {
    throw StructuralError("checkpoint: unsupported format version " + std::to_string(version));
  }
  std::array<int, 3> n{};
  for (int& v : n) v = static_cast<int>(get<std::uint32_t>(in, "dimensions"));
  std::array<double, 3> l{};
  for (double& v : l) v = get<double>(in, "box lengths");
  const double t = get<double>(in, "time");
  PhysParams p;
  p.gamma = get<double>(in, "gamma");
  p.mu = get<double>(in, "mu");
  p.lambda = get<double>(in, "lambda");
  p.sigma = get<double>(in, "sigma");

  const GridPtr grid = Grid::make(n, l);
  State s(grid);
  s.t = t;
  get_array(in, s.a.component(0));
  for (int c = 0; c < 3; ++c) get_array(in, s.u.component(c));
  for (int c = 0; c < 3; ++c) get_array(in, s.B.component(c));
  return {std::move(s), p};
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open " + path.string());
  return read_checkpoint(in);
}

}  // namespace amhd
