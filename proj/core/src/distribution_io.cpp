#include "modcert/distribution_io.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace modcert {

namespace {

using json = nlohmann::json;

// A weight as read from a file, before choosing a numeric mode.
struct RawWeight {
  std::string text;
  bool is_decimal = false;
};

RawWeight raw_from_json(const json& v) {
  if (v.is_string()) return {v.get<std::string>(), false};
  if (v.is_number_integer()) return {v.dump(), false};
  if (v.is_number()) return {v.dump(), true};
  throw ParseError("weight must be a number or a string, got " + v.dump());
}

Rational exact_weight(const RawWeight& w) {
  if (w.is_decimal) throw ParseError("decimal weight '" + w.text + "' cannot be loaded exactly");
  return parse_rational(w.text);
}

double real_weight(const RawWeight& w) {
  try {
    return parse_rational(w.text).get_d();
  } catch (const ParseError&) {
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(w.text, &used);
  } catch (const std::exception&) {
    throw ParseError("bad weight '" + w.text + "'");
  }
  if (used != w.text.size()) throw ParseError("bad weight '" + w.text + "'");
  return v;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::vector<std::string>> csv_rows(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(trim(field));
    rows.push_back(std::move(fields));
  }
  // Drop a header line such as "row,col,weight".
  if (!rows.empty() && !rows.front().empty()) {
    const std::string& first = rows.front().back();
    if (!first.empty() && std::isalpha(static_cast<unsigned char>(first.front()))) rows.erase(rows.begin());
  }
  return rows;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON: ") + e.what());
  }
}

struct RawDistribution {
  std::vector<RawWeight> weights;
  std::vector<long> labels;
};

struct RawCell {
  long row;
  long col;
  RawWeight weight;
};

long parse_label(const std::string& s) {
  const BigInt v = parse_integer(s);
  if (!v.fits_slong_p()) throw ParseError("label out of range: " + s);
  return v.get_si();
}

RawDistribution raw_distribution(std::string_view text, DataFormat format) {
  RawDistribution out;
  if (format == DataFormat::Json) {
    const json j = parse_json(text);
    if (!j.is_object() || !j.contains("weights") || !j["weights"].is_array()) {
      throw ParseError("distribution JSON needs a 'weights' array");
    }
    for (const auto& v : j["weights"]) out.weights.push_back(raw_from_json(v));
    if (j.contains("labels")) {
      for (const auto& v : j["labels"]) {
        if (!v.is_number_integer()) throw ParseError("labels must be integers");
        out.labels.push_back(v.get<long>());
      }
    }
    return out;
  }
  for (const auto& row : csv_rows(text)) {
    if (row.size() == 1) {
      out.weights.push_back({row[0], false});
    } else if (row.size() == 2) {
      out.labels.push_back(parse_label(row[0]));
      out.weights.push_back({row[1], false});
    } else {
      throw ParseError("distribution CSV rows need 1 or 2 fields");
    }
  }
  if (!out.labels.empty() && out.labels.size() != out.weights.size()) {
    throw ParseError("either all CSV rows carry a label or none do");
  }
  return out;
}

std::vector<RawCell> raw_joint(std::string_view text, DataFormat format) {
  std::vector<RawCell> cells;
  if (format == DataFormat::Json) {
    const json j = parse_json(text);
    if (!j.is_object() || !j.contains("cells") || !j["cells"].is_array()) {
      throw ParseError("joint JSON needs a 'cells' array of [row, col, weight]");
    }
    for (const auto& c : j["cells"]) {
      if (!c.is_array() || c.size() != 3 || !c[0].is_number_integer() || !c[1].is_number_integer()) {
        throw ParseError("joint cell must be [row, col, weight], got " + c.dump());
      }
      cells.push_back({c[0].get<long>(), c[1].get<long>(), raw_from_json(c[2])});
    }
    return cells;
  }
  for (const auto& row : csv_rows(text)) {
    if (row.size() != 3) throw ParseError("joint CSV rows need row,col,weight");
    cells.push_back({parse_label(row[0]), parse_label(row[1]), {row[2], false}});
  }
  return cells;
}

template <typename T, typename Convert>
Distribution<T> build_distribution(const RawDistribution& raw, Convert&& convert) {
  std::vector<T> w;
  for (const auto& x : raw.weights) w.push_back(convert(x));
  return Distribution<T>::from_weights(std::move(w), raw.labels);
}

template <typename T, typename Convert>
JointDistribution<T> build_joint(const std::vector<RawCell>& raw, Convert&& convert) {
  std::vector<JointCell<T>> cells;
  for (const auto& c : raw) cells.push_back({c.row, c.col, convert(c.weight)});
  return JointDistribution<T>::from_cells(std::move(cells));
}

}  // namespace

DataFormat format_for_path(std::string_view path) {
  return path.size() >= 5 && path.substr(path.size() - 5) == ".json" ? DataFormat::Json : DataFormat::Csv;
}

bool looks_like_joint(std::string_view text, DataFormat format) {
  if (format == DataFormat::Json) {
    const json j = parse_json(text);
    return j.is_object() && j.contains("cells");
  }
  const auto rows = csv_rows(text);
  return !rows.empty() && rows.front().size() == 3;
}

RationalDistribution load_distribution_exact(std::string_view text, DataFormat format) {
  return build_distribution<Rational>(raw_distribution(text, format), exact_weight);
}

RealDistribution load_distribution_real(std::string_view text, DataFormat format) {
  return build_distribution<double>(raw_distribution(text, format), real_weight);
}

RationalJoint load_joint_exact(std::string_view text, DataFormat format) {
  return build_joint<Rational>(raw_joint(text, format), exact_weight);
}

RealJoint load_joint_real(std::string_view text, DataFormat format) {
  return build_joint<double>(raw_joint(text, format), real_weight);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace modcert
