#include "smcf/io.hpp"

#include <zlib.h>

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "smcf/errors.hpp"

namespace smcf {

static_assert(std::endian::native == std::endian::little, "snapshot encoding assumes a little-endian host");

std::string format_series(const std::vector<EnergyRecord>& records) {
  std::string out(kSeriesHeader);
  out += '\n';
  char buf[32];
  for (const auto& r : records) {
    const double cols[] = {r.t,    r.grad_energy,  r.area,      r.mc_dissipation, r.laplace_dissipation,
                           r.mass, r.gauss_bonnet, r.hess_linf, r.u_min,          r.u_max};
    for (std::size_t c = 0; c < std::size(cols); ++c) {
      std::snprintf(buf, sizeof buf, "%.16e", cols[c]);
      if (c > 0) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::vector<EnergyRecord> parse_series(std::string_view text) {
  const auto nl = text.find('\n');
  std::string_view header = text.substr(0, nl);
  if (!header.empty() && header.back() == '\r') header.remove_suffix(1);
  if (header != kSeriesHeader) throw IoError("series: unexpected header");
  std::vector<EnergyRecord> out;
  std::size_t pos = nl == std::string_view::npos ? text.size() : nl + 1;
  while (pos < text.size()) {
    auto e = text.find('\n', pos);
    if (e == std::string_view::npos) e = text.size();
    const std::string_view line = text.substr(pos, e - pos);
    pos = e + 1;
    if (line.empty()) continue;
    double v[10];
    std::size_t at = 0;
    for (int c = 0; c < 10; ++c) {
      const auto r = std::from_chars(line.data() + at, line.data() + line.size(), v[c]);
      if (r.ec != std::errc{}) throw IoError("series: malformed number");
      at = static_cast<std::size_t>(r.ptr - line.data());
      if (c < 9) {
        if (at >= line.size() || line[at] != ',') throw IoError("series: expected 10 columns");
        ++at;
      }
    }
    if (at != line.size()) throw IoError("series: trailing data");
    out.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9]});
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& file, std::string_view text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + file.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for " + file.string());
}

void write_series(const std::filesystem::path& file, const std::vector<EnergyRecord>& records) {
  write_text_file(file, format_series(records));
}

std::vector<EnergyRecord> read_series(const std::filesystem::path& file) { return parse_series(read_text_file(file)); }

namespace {

template <class T>
void put(std::vector<unsigned char>& out, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  out.insert(out.end(), b, b + sizeof(T));
}

template <class T>
T get(const std::vector<unsigned char>& in, std::size_t& at) {
  if (at + sizeof(T) > in.size()) throw IoError("snapshot: truncated");
  T v;
  std::memcpy(&v, in.data() + at, sizeof(T));
  at += sizeof(T);
  return v;
}

std::uint32_t crc_bytes(const unsigned char* p, std::size_t len) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; chunk in case of very large payloads.
  while (len > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(len, 1u << 30));
    crc = crc32(crc, p, chunk);
    p += chunk;
    len -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::uint32_t payload_crc(const ScalarField& u) {
  return crc_bytes(reinterpret_cast<const unsigned char*>(u.values().data()), u.size() * sizeof(double));
}

std::vector<unsigned char> encode_snapshot(const FieldSnapshot& s) {
  std::vector<unsigned char> out;
  out.reserve(4 + 2 + 4 + 8 * 3 + s.u.size() * 8 + 4);
  out.insert(out.end(), {'S', 'M', 'C', 'F'});
  put<std::uint16_t>(out, kSnapshotVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.u.n()));
  put<double>(out, s.t);
  put<std::uint64_t>(out, s.seed);
  put<std::uint64_t>(out, s.step);
  const auto* p = reinterpret_cast<const unsigned char*>(s.u.values().data());
  out.insert(out.end(), p, p + s.u.size() * sizeof(double));
  put<std::uint32_t>(out, payload_crc(s.u));
  return out;
}

FieldSnapshot decode_snapshot(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "SMCF", 4) != 0) throw IoError("snapshot: bad magic");
  std::size_t at = 4;
  const auto version = get<std::uint16_t>(bytes, at);
  if (version != kSnapshotVersion) throw IoError("snapshot: unsupported version");
  const auto n = get<std::uint32_t>(bytes, at);
  if (n < 8 || n % 2 != 0 || n > (1u << 15)) throw IoError("snapshot: invalid grid size");
  FieldSnapshot s;
  s.t = get<double>(bytes, at);
  s.seed = get<std::uint64_t>(bytes, at);
  s.step = get<std::uint64_t>(bytes, at);
  const std::size_t count = static_cast<std::size_t>(n) * n;
  if (bytes.size() != at + count * sizeof(double) + sizeof(std::uint32_t)) {
    throw IoError("snapshot: payload length does not match n");
  }
  std::vector<double> values(count);
  std::memcpy(values.data(), bytes.data() + at, count * sizeof(double));
  const std::uint32_t expected = crc_bytes(bytes.data() + at, count * sizeof(double));
  at += count * sizeof(double);
  if (get<std::uint32_t>(bytes, at) != expected) throw IoError("snapshot: CRC mismatch");
  s.u = ScalarField(GridSpec(static_cast<int>(n)), std::move(values));
  return s;
}

void write_snapshot(const std::filesystem::path& file, const FieldSnapshot& s) {
  const auto bytes = encode_snapshot(s);
  write_text_file(file, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

FieldSnapshot read_snapshot(const std::filesystem::path& file) {
  const std::string raw = read_text_file(file);
  return decode_snapshot(std::vector<unsigned char>(raw.begin(), raw.end()));
}

}  // namespace smcf
