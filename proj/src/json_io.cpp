#include "mwwyd/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include "mwwyd/errors.hpp"

namespace mwwyd::json_io {
namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

double parse_real(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError(file.string() + ": cannot open file");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json parse_text(const std::string& text, const std::filesystem::path& file) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + pos, '\n');
    const auto last_nl = text.rfind('\n', pos == 0 ? 0 : pos - 1);
    const auto column = last_nl == std::string::npos ? pos + 1 : pos - last_nl;
    std::ostringstream os;
    os << file.string() << ':' << line << ':' << column << ": JSON syntax error: " << e.what();
    throw ParseError(os.str());
  }
}

template <typename T, typename Fn>
T with_file_context(const std::filesystem::path& file, Fn fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ParseError(file.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
}

}  // namespace

ComplexMatrix parse_matrix(const json& value, const std::string& path) {
  if (!value.is_array() || value.empty()) fail(path, "expected a non-empty array of rows");
  const std::size_t dim = value.size();
  std::vector<Complex> entries;
  entries.reserve(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    const json& row = value[i];
    if (!row.is_array()) fail(row_path, "expected an array of [re, im] pairs");
    if (row.size() != dim) {
      fail(row_path, "row has " + std::to_string(row.size()) + " entries, expected " +
                         std::to_string(dim) + " (matrix must be square)");
    }
    for (std::size_t j = 0; j < dim; ++j) {
      const std::string entry_path = row_path + "[" + std::to_string(j) + "]";
      const json& z = row[j];
      if (!z.is_array() || z.size() != 2) fail(entry_path, "expected [re, im] pair");
      entries.emplace_back(parse_real(z[0], entry_path + "[0]"), parse_real(z[1], entry_path + "[1]"));
    }
  }
  try {
    return ComplexMatrix(dim, std::move(entries));
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
}

KrausChannel parse_channel(const json& value) {
  if (!value.is_object()) fail("$", "expected an object with \"name\" and \"kraus\"");
  std::string name = "channel";
  if (value.contains("name")) {
    if (!value["name"].is_string()) fail("name", "expected a string");
    name = value["name"].get<std::string>();
  }
  if (!value.contains("kraus")) fail("kraus", "missing");
  const json& kraus = value["kraus"];
  if (!kraus.is_array() || kraus.empty()) fail("kraus", "expected a non-empty array of matrices");
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    ops.push_back(parse_matrix(kraus[k], "kraus[" + std::to_string(k) + "]"));
  }
  return KrausChannel(std::move(name), std::move(ops));
}

DensityMatrix parse_state(const json& value) {
  if (value.is_object() && value.contains("bloch")) {
    const json& r = value["bloch"];
    if (!r.is_array() || r.size() != 3) fail("bloch", "expected [x, y, z]");
    return bloch_state({parse_real(r[0], "bloch[0]"), parse_real(r[1], "bloch[1]"),
                        parse_real(r[2], "bloch[2]")});
  }
  if (value.is_object() && value.contains("rho")) {
    return DensityMatrix(parse_matrix(value["rho"], "rho"));
  }
  fail("$", "expected {\"rho\": matrix} or {\"bloch\": [x, y, z]}");
}

KrausChannel load_channel(const std::filesystem::path& file) {
  const json doc = parse_text(read_file(file), file);
  return with_file_context<KrausChannel>(file, [&] { return parse_channel(doc); });
}

DensityMatrix load_state(const std::filesystem::path& file) {
  const json doc = parse_text(read_file(file), file);
  return with_file_context<DensityMatrix>(file, [&] { return parse_state(doc); });
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json channel_to_json(const KrausChannel& ch) {
  json kraus = json::array();
  for (const auto& op : ch.ops()) kraus.push_back(matrix_to_json(op));
  return {{"name", ch.name()}, {"kraus", std::move(kraus)}};
}

json report_to_json(const BoundReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json argmax = json::object();
  for (const auto& [name, result] : r.argmax) {
    json perms = json::array();
    // 1-based, matching the usual S_n notation
    for (const auto& perm : result.argmax.perms) {
      json p = json::array();
      for (std::size_t v : perm) p.push_back(v + 1);
      perms.push_back(std::move(p));
    }
    json entry = {{"value", result.value}, {"permutations", std::move(perms)}};
    if (result.sign) entry["x"] = *result.sign;
    argmax[name] = std::move(entry);
  }
  return {{"sum", r.sum},
          {"lb1", opt(r.lb1)},
          {"lb2", r.lb2},
          {"lb3", r.lb3},
          {"ob1", opt(r.ob1)},
          {"ob2", r.ob2},
          {"ob3", r.ob3},
          {"sign_policy", to_string(r.sign)},
          {"tuples", r.tuples},
          {"argmax", std::move(argmax)},
          {"violations", r.violations()},
          {"sound", r.sound()}};
}

}  // namespace mwwyd::json_io
