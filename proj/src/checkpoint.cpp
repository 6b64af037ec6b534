#include "nudge2d/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nudge2d {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace {

constexpr std::array<char, 8> kMagic{'N', 'D', 'G', '2', 'C', 'K', 'P', 'T'};

template <class T>
void write_pod(std::ofstream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T read_pod(std::ifstream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("truncated checkpoint");
  return value;
}

void write_field(std::ofstream& out, const SpectralField& f) {
  const auto data = f.data();
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(Complex)));
}

void read_field(std::ifstream& in, SpectralField& f) {
  auto data = f.data();
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(data.size() * sizeof(Complex)));
  if (!in) throw std::runtime_error("truncated checkpoint");
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const VelocityState& state) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(kMagic.data(), kMagic.size());
  write_pod(out, kCheckpointVersion);
  write_pod(out, static_cast<std::uint32_t>(state.grid().n()));
  write_pod(out, state.grid().length());
  write_pod(out, state.time);
  write_field(out, state.u1);
  write_field(out, state.u2);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

VelocityState load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error("not a checkpoint file: " + path.string());
  const auto version = read_pod<std::uint32_t>(in);
  if (version != kCheckpointVersion) {
    throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
  }
  const auto n = read_pod<std::uint32_t>(in);
  const auto length = read_pod<double>(in);
  const auto time = read_pod<double>(in);
  const Grid grid(static_cast<int>(n), length);
  VelocityState state(grid);
  state.time = time;
  read_field(in, state.u1);
  read_field(in, state.u2);
  state.u1.enforce_zero_mean();
  state.u2.enforce_zero_mean();
  return state;
}

}  // namespace nudge2d
