#include "lpsparse/instance_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lpsparse/errors.hpp"

namespace lpsparse {
namespace {

using nlohmann::json;

void write_vector(std::ostringstream& out, std::span<const double> v) {
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out << ", ";
    out << format_real(v[i]);
  }
  out << ']';
}

void write_matrix(std::ostringstream& out, const Matrix& m, MatrixFormat format,
                  const char* indent) {
  out << '[';
  bool first = true;
  auto open_line = [&] {
    out << (first ? "\n" : ",\n") << indent << "  ";
    first = false;
  };
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (format == MatrixFormat::Dense) {
      open_line();
      write_vector(out, m.row(i));
      continue;
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0.0 && !std::signbit(m(i, j))) continue;
      open_line();
      out << '[' << i << ", " << j << ", " << format_real(m(i, j)) << ']';
    }
  }
  if (!first) out << '\n' << indent;
  out << ']';
}

const char* format_name(MatrixFormat f) { return f == MatrixFormat::Dense ? "dense" : "triplets"; }

void write_header(std::ostringstream& out, const char* type, const InstanceHeader& header,
                  MatrixFormat format) {
  out << "{\n  \"type\": \"" << type << "\",\n";
  if (header.kind) out << "  \"kind\": " << json(*header.kind).dump() << ",\n";
  if (header.seed) out << "  \"seed\": " << *header.seed << ",\n";
  out << "  \"format\": \"" << format_name(format) << "\",\n";
}

std::size_t line_at(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Structural checks run on the parsed tree, so positions are recovered by
// locating the key in the source text.
class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    const std::string key = "\"" + field + "\"";
    const std::size_t at = text_.find(key);
    throw ParseError(field + ": " + message, at == std::string_view::npos ? 0 : line_at(text_, at),
                     field);
  }

  const json& member(const json& obj, const std::string& field) const {
    auto it = obj.find(field);
    if (it == obj.end()) fail(field, "missing field");
    return *it;
  }

  std::size_t count(const json& obj, const std::string& field) const {
    const json& v = member(obj, field);
    if (!v.is_number_unsigned()) fail(field, "expected a nonnegative integer");
    return v.get<std::size_t>();
  }

  std::vector<double> reals(const json& obj, const std::string& field, std::size_t expected) const {
    const json& v = member(obj, field);
    if (!v.is_array()) fail(field, "expected an array of numbers");
    if (v.size() != expected) {
      fail(field, "expected " + std::to_string(expected) + " entries, found " +
                      std::to_string(v.size()));
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (const json& x : v) {
      if (!x.is_number()) fail(field, "expected a number");
      out.push_back(x.get<double>());
    }
    return out;
  }

  Matrix matrix(const json& obj, const std::string& field, std::size_t rows, std::size_t cols,
                MatrixFormat format) const {
    const json& v = member(obj, field);
    if (!v.is_array()) fail(field, "expected an array");
    Matrix m(rows, cols);
    if (format == MatrixFormat::Dense) {
      if (v.size() != rows) {
        fail(field, "expected " + std::to_string(rows) + " rows, found " +
                        std::to_string(v.size()));
      }
      for (std::size_t i = 0; i < rows; ++i) {
        const json& r = v[i];
        if (!r.is_array() || r.size() != cols) {
          fail(field, "row " + std::to_string(i) + " must have " + std::to_string(cols) +
                          " entries");
        }
        for (std::size_t j = 0; j < cols; ++j) {
          if (!r[j].is_number()) fail(field, "expected a number");
          m(i, j) = r[j].get<double>();
        }
      }
      return m;
    }
    std::vector<std::uint8_t> seen(rows * cols, 0);
    for (const json& t : v) {
      if (!t.is_array() || t.size() != 3 || !t[0].is_number_unsigned() ||
          !t[1].is_number_unsigned() || !t[2].is_number()) {
        fail(field, "triplets must be [row, column, value]");
      }
      const auto i = t[0].get<std::size_t>();
      const auto j = t[1].get<std::size_t>();
      if (i >= rows || j >= cols) fail(field, "triplet index out of range");
      if (seen[i * cols + j] != 0) fail(field, "duplicate triplet");
      seen[i * cols + j] = 1;
      m(i, j) = t[2].get<double>();
    }
    return m;
  }

 private:
  std::string_view text_;
};

MatrixFormat parse_format(const Reader& rd, const json& doc) {
  const json& f = rd.member(doc, "format");
  if (f == "dense") return MatrixFormat::Dense;
  if (f == "triplets") return MatrixFormat::Triplets;
  rd.fail("format", "expected \"dense\" or \"triplets\"");
}

LpInstance parse_lp(const Reader& rd, const json& doc, MatrixFormat format) {
  LpInstance inst;
  const std::size_t n = rd.count(doc, "n");
  const std::size_t d = rd.count(doc, "d");
  inst.A = rd.matrix(doc, "A", n, d, format);
  inst.b = rd.reals(doc, "b", n);
  inst.c = rd.reals(doc, "c", d);
  inst.domain.lower = rd.reals(doc, "lower", d);
  inst.domain.upper = rd.reals(doc, "upper", d);
  if (auto it = doc.find("retained"); it != doc.end()) {
    if (!it->is_object()) rd.fail("retained", "expected an object");
    const std::size_t rows = rd.count(*it, "rows");
    RetainedBlock block;
    block.A = rd.matrix(*it, "A", rows, d, format);
    block.b = rd.reals(*it, "b", rows);
    inst.retained = std::move(block);
  }
  try {
    inst.validate();
  } catch (const ContractError& e) {
    throw ParseError(e.what(), 0, "");
  }
  return inst;
}

MpcInstance parse_mpc(const Reader& rd, const json& doc, MatrixFormat format) {
  const std::size_t n_p = rd.count(doc, "n_p");
  const std::size_t n_c = rd.count(doc, "n_c");
  const std::size_t d = rd.count(doc, "d");
  MpcInstance mpc = MpcInstance::from_matrices(rd.matrix(doc, "P", n_p, d, format),
                                               rd.matrix(doc, "C", n_c, d, format));
  if (doc.contains("r_p") && rd.count(doc, "r_p") != mpc.r_p) {
    rd.fail("r_p", "does not match the sparsity of P");
  }
  if (doc.contains("r_c") && rd.count(doc, "r_c") != mpc.r_c) {
    rd.fail("r_c", "does not match the sparsity of C");
  }
  try {
    mpc.validate();
  } catch (const ContractError& e) {
    throw ParseError(e.what(), 0, "");
  }
  return mpc;
}

}  // namespace

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

std::string serialize_instance(const Instance& inst, MatrixFormat format,
                               const InstanceHeader& header) {
  std::ostringstream out;
  if (const auto* lp = std::get_if<LpInstance>(&inst)) {
    write_header(out, "lp", header, format);
    out << "  \"n\": " << lp->n() << ",\n  \"d\": " << lp->d() << ",\n";
    out << "  \"A\": ";
    write_matrix(out, lp->A, format, "  ");
    out << ",\n  \"b\": ";
    write_vector(out, lp->b);
    out << ",\n  \"c\": ";
    write_vector(out, lp->c);
    out << ",\n  \"lower\": ";
    write_vector(out, lp->domain.lower);
    out << ",\n  \"upper\": ";
    write_vector(out, lp->domain.upper);
    if (lp->retained) {
      out << ",\n  \"retained\": {\n    \"rows\": " << lp->retained->A.rows() << ",\n    \"A\": ";
      write_matrix(out, lp->retained->A, format, "    ");
      out << ",\n    \"b\": ";
      write_vector(out, lp->retained->b);
      out << "\n  }";
    }
  } else {
    const auto& mpc = std::get<MpcInstance>(inst);
    write_header(out, "mpc", header, format);
    out << "  \"n_p\": " << mpc.n_p() << ",\n  \"n_c\": " << mpc.n_c() << ",\n  \"d\": "
        << mpc.d() << ",\n  \"r_p\": " << mpc.r_p << ",\n  \"r_c\": " << mpc.r_c << ",\n";
    out << "  \"P\": ";
    write_matrix(out, mpc.P, format, "  ");
    out << ",\n  \"C\": ";
    write_matrix(out, mpc.C, format, "  ");
  }
  out << "\n}\n";
  return out.str();
}

Instance parse_instance(std::string_view text, InstanceHeader* header) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), line_at(text, e.byte == 0 ? 0 : e.byte - 1), "");
  }
  Reader rd(text);
  if (!doc.is_object()) throw ParseError("instance must be a JSON object", 1, "");
  const json& type = rd.member(doc, "type");
  const MatrixFormat format = parse_format(rd, doc);
  if (header != nullptr) {
    *header = {};
    if (auto it = doc.find("kind"); it != doc.end()) {
      if (!it->is_string()) rd.fail("kind", "expected a string");
      header->kind = it->get<std::string>();
    }
    if (doc.contains("seed")) header->seed = rd.count(doc, "seed");
  }
  if (type == "lp") return parse_lp(rd, doc, format);
  if (type == "mpc") return parse_mpc(rd, doc, format);
  rd.fail("type", "expected \"lp\" or \"mpc\"");
}

void write_instance(const std::filesystem::path& path, const Instance& inst, MatrixFormat format,
                    const InstanceHeader& header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << serialize_instance(inst, format, header);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Instance read_instance(const std::filesystem::path& path, InstanceHeader* header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), header);
}

}  // namespace lpsparse
