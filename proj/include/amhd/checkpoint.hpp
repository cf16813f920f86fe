#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "amhd/physics.hpp"
#include "amhd/state.hpp"

namespace amhd {

// Binary restart file, little-endian:
//   "AMHD" | u32 version | u32 n1 n2 n3 | f64 l1 l2 l3 | f64 t | f64 gamma mu lambda sigma
//   | seven f64 arrays a, u1, u2, u3, B1, B2, B3 of n1*n2*n3 samples, x3 fastest.
inline constexpr std::uint32_t checkpoint_version = 1;

struct Checkpoint {
  State state;
  PhysParams params;
};

void write_checkpoint(std::ostream& out, const State& s, const PhysParams& p);
void write_checkpoint(const std::filesystem::path& path, const State& s, const PhysParams& p);

Checkpoint read_checkpoint(std::istream& in);
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace amhd
