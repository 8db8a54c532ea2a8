#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "smcf/field.hpp"
#include "smcf/monitors.hpp"

namespace smcf {

inline constexpr std::string_view kSeriesHeader =
    "t,grad_energy,area,mc_dissipation,laplace_dissipation,mass,gauss_bonnet,hess_linf,u_min,u_max";

/// CSV text with the fixed header; reals use 17 significant digits so the
/// text round-trips exactly.
std::string format_series(const std::vector<EnergyRecord>& records);
std::vector<EnergyRecord> parse_series(std::string_view text);

void write_series(const std::filesystem::path& file, const std::vector<EnergyRecord>& records);
std::vector<EnergyRecord> read_series(const std::filesystem::path& file);

/// Binary field checkpoint. Since the noise is counter-based, (seed, step)
/// is the complete RNG state.
struct FieldSnapshot {
  ScalarField u{GridSpec(8)};
  double t = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t step = 0;
};

inline constexpr std::uint16_t kSnapshotVersion = 1;

/// Layout: "SMCF", u16 version, u32 n, f64 t, u64 seed, u64 step,
/// n*n f64 payload (row-major), u32 CRC32 of the payload; all little-endian.
std::vector<unsigned char> encode_snapshot(const FieldSnapshot& s);
FieldSnapshot decode_snapshot(const std::vector<unsigned char>& bytes);

void write_snapshot(const std::filesystem::path& file, const FieldSnapshot& s);
FieldSnapshot read_snapshot(const std::filesystem::path& file);

/// CRC32 of the payload bytes of a field.
std::uint32_t payload_crc(const ScalarField& u);

std::string read_text_file(const std::filesystem::path& file);
void write_text_file(const std::filesystem::path& file, std::string_view text);

}  // namespace smcf
