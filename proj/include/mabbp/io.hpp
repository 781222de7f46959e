#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "mabbp/mips.hpp"

namespace mabbp {

enum class IoErrorKind { open_failed, bad_magic, truncated, dimension_mismatch, parse };

class IoError : public std::runtime_error {
 public:
  IoError(IoErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  IoErrorKind kind() const { return kind_; }

 private:
  IoErrorKind kind_;
};

// Binary layout: "MEB1", u32 n, u32 N, then n*N float32 row-major; all
// little-endian. A query file is the same with n = 1.
inline constexpr char kDatasetMagic[4] = {'M', 'E', 'B', '1'};

VectorSet read_binary(std::istream& in);
void write_binary(std::ostream& out, const VectorSet& vectors);

// One vector per line, comma separated. Blank lines are skipped.
VectorSet read_csv(std::istream& in);
void write_csv(std::ostream& out, const VectorSet& vectors);

// Files ending in ".csv" use the CSV format, everything else is binary.
// Errors carry the path in their message.
VectorSet read_dataset(const std::filesystem::path& path);
void write_dataset(const std::filesystem::path& path, const VectorSet& vectors);

// Throws IoError(dimension_mismatch) unless the file holds exactly one vector.
Query read_query(const std::filesystem::path& path);
void write_query(const std::filesystem::path& path, const Query& query);

}  // namespace mabbp
