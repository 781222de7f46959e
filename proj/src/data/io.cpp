#include "mabbp/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string_view>

namespace mabbp {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> bytes = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                     static_cast<char>((v >> 16) & 0xff),
                                     static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes.data(), 4);
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

bool is_csv(const std::filesystem::path& path) { return path.extension() == ".csv"; }

std::string with_path(const std::filesystem::path& path, const std::string& what) {
  return path.string() + ": " + what;
}

}  // namespace

VectorSet read_binary(std::istream& in) {
  std::array<unsigned char, 12> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  if (in.gcount() < 4) throw IoError(IoErrorKind::truncated, "file shorter than the magic bytes");
  if (!std::equal(header.begin(), header.begin() + 4, kDatasetMagic)) {
    throw IoError(IoErrorKind::bad_magic, "magic bytes are not MEB1");
  }
  if (in.gcount() < static_cast<std::streamsize>(header.size())) {
    throw IoError(IoErrorKind::truncated, "header truncated");
  }
  const std::uint32_t n = get_u32(header.data() + 4);
  const std::uint32_t dim = get_u32(header.data() + 8);
  if (n == 0 || dim == 0) {
    throw IoError(IoErrorKind::dimension_mismatch, "header declares an empty matrix");
  }

  const std::size_t count = static_cast<std::size_t>(n) * dim;
  std::vector<unsigned char> payload(count * 4);
  in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  if (static_cast<std::size_t>(in.gcount()) != payload.size()) {
    throw IoError(IoErrorKind::truncated, "payload holds " + std::to_string(in.gcount()) +
                                              " bytes, expected " + std::to_string(payload.size()));
  }
  std::vector<float> data(count);
  for (std::size_t i = 0; i < count; ++i) data[i] = std::bit_cast<float>(get_u32(&payload[i * 4]));
  return VectorSet(n, dim, std::move(data));
}

void write_binary(std::ostream& out, const VectorSet& vectors) {
  constexpr auto limit = std::numeric_limits<std::uint32_t>::max();
  if (vectors.rows() > limit || vectors.dim() > limit) {
    throw IoError(IoErrorKind::dimension_mismatch, "matrix too large for the binary format");
  }
  out.write(kDatasetMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(vectors.rows()));
  put_u32(out, static_cast<std::uint32_t>(vectors.dim()));
  for (float x : vectors.data()) put_u32(out, std::bit_cast<std::uint32_t>(x));
}

VectorSet read_csv(std::istream& in) {
  std::vector<float> data;
  std::size_t rows = 0;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t fields = 0;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      std::string_view field = rest.substr(0, comma);
      while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
      while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
      float value = 0.0f;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
        throw IoError(IoErrorKind::parse, "line " + std::to_string(line_no) + ": cannot parse '" +
                                              std::string(field) + "'");
      }
      data.push_back(value);
      ++fields;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (rows == 0) {
      dim = fields;
    } else if (fields != dim) {
      throw IoError(IoErrorKind::dimension_mismatch, "line " + std::to_string(line_no) + " has " +
                                                         std::to_string(fields) + " values, expected " +
                                                         std::to_string(dim));
    }
    ++rows;
  }
  if (rows == 0) throw IoError(IoErrorKind::truncated, "CSV holds no vectors");
  return VectorSet(rows, dim, std::move(data));
}

void write_csv(std::ostream& out, const VectorSet& vectors) {
  char buf[32];
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    const auto row = vectors.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      // 9 significant digits round-trip a float exactly.
      const int len = std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(row[j]));
      if (j) out.put(',');
      out.write(buf, len);
    }
    out.put('\n');
  }
}

VectorSet read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(IoErrorKind::open_failed, with_path(path, "cannot open for reading"));
  try {
    return is_csv(path) ? read_csv(in) : read_binary(in);
  } catch (const IoError& e) {
    throw IoError(e.kind(), with_path(path, e.what()));
  }
}

void write_dataset(const std::filesystem::path& path, const VectorSet& vectors) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(IoErrorKind::open_failed, with_path(path, "cannot open for writing"));
  if (is_csv(path)) {
    write_csv(out, vectors);
  } else {
    write_binary(out, vectors);
  }
  out.flush();
  if (!out) throw IoError(IoErrorKind::open_failed, with_path(path, "write failed"));
}

Query read_query(const std::filesystem::path& path) {
  VectorSet single = read_dataset(path);
  if (single.rows() != 1) {
    throw IoError(IoErrorKind::dimension_mismatch,
                  with_path(path, "query file holds " + std::to_string(single.rows()) + " vectors"));
  }
  return Query(std::vector<float>(single.data().begin(), single.data().end()));
}

void write_query(const std::filesystem::path& path, const Query& query) {
  write_dataset(path, VectorSet(1, query.dim(), std::vector<float>(query.values().begin(),
                                                                    query.values().end())));
}

}  // namespace mabbp
