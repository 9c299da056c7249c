#include "bq/io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace bq {

namespace {

constexpr std::array<char, 8> kMagic{'B', 'Q', 'C', 'H', 'K', '0', '0', '1'};

template <class U>
void put_le(std::ostream& out, U v) {
  std::array<char, sizeof(U)> bytes{};
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFFu);
  out.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  template <class U>
  U get(const char* what) {
    std::array<unsigned char, sizeof(U)> bytes{};
    in_.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (in_.gcount() != static_cast<std::streamsize>(bytes.size())) {
      throw std::runtime_error(std::string("truncated checkpoint while reading ") + what);
    }
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(bytes[i]) << (8 * i);
    return v;
  }

  double f64(const char* what) { return std::bit_cast<double>(get<std::uint64_t>(what)); }

 private:
  std::istream& in_;
};

std::uint8_t parity_tag(Parity p) { return p == Parity::Cosine ? 0 : 1; }

void put_field(std::ostream& out, const SpectralField& f) {
  put_le<std::uint8_t>(out, parity_tag(f.parity()));
  const auto c = f.coeffs();
  put_le<std::uint64_t>(out, c.size());
  for (const Complex& z : c) {
    put_f64(out, z.real());
    put_f64(out, z.imag());
  }
}

SpectralField get_field(Reader& r, const Grid& grid, Parity expected, const char* name) {
  const auto tag = r.get<std::uint8_t>(name);
  if (tag > 1) throw std::runtime_error(std::string("invalid parity tag for ") + name);
  const Parity parity = tag == 0 ? Parity::Cosine : Parity::Sine;
  if (parity != expected) {
    throw std::runtime_error(std::string("unexpected parity for ") + name + ": " + to_string(parity));
  }
  const auto count = r.get<std::uint64_t>(name);
  if (count != grid.size()) {
    throw std::runtime_error(std::string("coefficient count mismatch for ") + name + ": " +
                             std::to_string(count) + " != " + std::to_string(grid.size()));
  }
  SpectralField f(grid, parity);
  for (Complex& z : f.coeffs()) {
    const double re = r.f64(name);
    const double im = r.f64(name);
    z = Complex(re, im);
  }
  return f;
}

}  // namespace

IoError::IoError(const std::filesystem::path& path, const std::string& what)
    : std::runtime_error(path.string() + ": " + what), path_(path) {}

void write_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  char buf[32];
  for (const auto& r : records) {
    const auto values = csv_values(r);
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", values[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& records) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open for writing");
  write_csv(out, records);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open for writing");
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  char buf[32];
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw IoError(path, "row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

void save_checkpoint(const State& s, std::ostream& out) {
  const Grid& g = s.grid();
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.nx()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.ny()));
  put_f64(out, s.t);
  put_field(out, s.u1);
  put_field(out, s.u2);
  put_field(out, s.theta);
}

void save_checkpoint(const State& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  save_checkpoint(s, out);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

State load_checkpoint(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != static_cast<std::streamsize>(magic.size()) || magic != kMagic) {
    throw std::runtime_error("bad checkpoint magic");
  }
  Reader r(in);
  const auto nx = r.get<std::uint32_t>("nx");
  const auto ny = r.get<std::uint32_t>("ny");
  if (nx > (1u << 16) || ny > (1u << 16)) throw std::runtime_error("implausible checkpoint grid");
  const Grid grid(static_cast<int>(nx), static_cast<int>(ny));
  State s;
  s.t = r.f64("t");
  s.u1 = get_field(r, grid, Parity::Cosine, "u1");
  s.u2 = get_field(r, grid, Parity::Sine, "u2");
  s.theta = get_field(r, grid, Parity::Sine, "theta");
  if (in.peek() != std::char_traits<char>::eof()) throw std::runtime_error("trailing bytes after checkpoint");
  validate_state(s);
  return s;
}

State load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  try {
    return load_checkpoint(in);
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(path, e.what());
  }
}

}  // namespace bq
