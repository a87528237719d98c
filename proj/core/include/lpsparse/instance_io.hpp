#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "lpsparse/generator.hpp"

namespace lpsparse {

enum class MatrixFormat { Dense, Triplets };

// Metadata carried alongside an instance in its file.
struct InstanceHeader {
  std::optional<std::string> kind;
  std::optional<std::uint64_t> seed;
};

// JSON document. Reals are printed with 17 significant digits so a
// write/read cycle reproduces every double bit for bit.
std::string serialize_instance(const Instance& inst, MatrixFormat format = MatrixFormat::Dense,
                               const InstanceHeader& header = {});

// Throws ParseError naming the offending line and field.
Instance parse_instance(std::string_view text, InstanceHeader* header = nullptr);

void write_instance(const std::filesystem::path& path, const Instance& inst,
                    MatrixFormat format = MatrixFormat::Dense, const InstanceHeader& header = {});
Instance read_instance(const std::filesystem::path& path, InstanceHeader* header = nullptr);

// Shortest-exact decimal is not used: always 17 significant digits.
std::string format_real(double value);

}  // namespace lpsparse
