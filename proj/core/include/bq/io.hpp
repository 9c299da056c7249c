#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "bq/diagnostics.hpp"
#include "bq/dynamics.hpp"

namespace bq {

/// File-system or format failure; the message names the path.
class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what);
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// Header row of csv_columns() then one row per record, 17 significant digits.
void write_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records);
void write_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& records);

/// Generic numeric table in the same number format.
void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);

/// Little-endian binary snapshot:
///   "BQCHK001", u32 nx, u32 ny, f64 t, then for u1, u2, theta:
///   u8 parity (0 cosine, 1 sine), u64 count, count (re, im) f64 pairs in
///   (k, n) row-major order with k from -nx/2.
void save_checkpoint(const State& s, const std::filesystem::path& path);
void save_checkpoint(const State& s, std::ostream& out);

/// Rejects bad magic, truncated or oversized files, mismatched counts and
/// unexpected parities.
State load_checkpoint(const std::filesystem::path& path);
State load_checkpoint(std::istream& in);

}  // namespace bq
