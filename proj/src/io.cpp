#include "steerlab/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "steerlab/error.hpp"

namespace steerlab {

using nlohmann::json;

namespace {

std::size_t read_dim(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) throw ParseError(field, "expected a positive integer");
  return static_cast<std::size_t>(j.get<long long>());
}

const json& require(const json& obj, const char* key, const std::string& field) {
  if (!obj.is_object()) throw ParseError(field, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(field + "." + key, "missing");
  return *it;
}

ComplexMatrix read_matrix(const json& j, std::size_t dim, const std::string& field) {
  if (!j.is_array()) throw ParseError(field, "expected an array of rows");
  if (j.size() != dim) {
    std::ostringstream msg;
    msg << "has " << j.size() << " rows, expected " << dim;
    throw ParseError(field, msg.str());
  }
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto& row = j[r];
    const std::string rf = field + "[" + std::to_string(r) + "]";
    if (!row.is_array()) throw ParseError(rf, "expected a row array");
    if (row.size() != dim) {
      std::ostringstream msg;
      msg << "row " << r << " has " << row.size() << " columns, expected " << dim << " (matrix must be square)";
      throw ParseError(rf, msg.str());
    }
    for (std::size_t c = 0; c < dim; ++c) {
      const auto& e = row[c];
      const std::string ef = rf + "[" + std::to_string(c) + "]";
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ParseError(ef, "expected a [re, im] pair");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

OperatorFamily read_family(const json& j, std::size_t dim, const std::string& field) {
  const std::size_t n_x = read_dim(require(j, "n_x", field), field + ".n_x");
  const std::size_t n_a = read_dim(require(j, "n_a", field), field + ".n_a");
  const auto& el = require(j, "elements", field);
  const std::string ef = field + ".elements";
  if (!el.is_array() || el.size() != n_x) throw ParseError(ef, "expected n_x settings");
  OperatorFamily out(n_x);
  for (std::size_t x = 0; x < n_x; ++x) {
    const std::string xf = ef + "[" + std::to_string(x) + "]";
    if (!el[x].is_array() || el[x].size() != n_a) throw ParseError(xf, "expected n_a matrices");
    for (std::size_t a = 0; a < n_a; ++a) out[x].push_back(read_matrix(el[x][a], dim, xf + "[" + std::to_string(a) + "]"));
  }
  return out;
}

json write_matrix(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

json write_family(const OperatorFamily& f) {
  json el = json::array();
  for (const auto& row : f) {
    json setting = json::array();
    for (const auto& e : row) setting.push_back(write_matrix(e));
    el.push_back(std::move(setting));
  }
  return json{{"n_x", f.size()}, {"n_a", f.front().size()}, {"elements", std::move(el)}};
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }
  if (!doc.is_object()) throw ParseError("document", "expected a JSON object");
  const auto& dims = require(doc, "dims", "document");
  ProblemFile p;
  p.dA = read_dim(require(dims, "dA", "dims"), "dims.dA");
  p.dB = read_dim(require(dims, "dB", "dims"), "dims.dB");
  if (doc.contains("state")) p.state = BipartiteState(p.dA, p.dB, read_matrix(doc["state"], p.dA * p.dB, "state"));
  if (doc.contains("measurements")) {
    p.measurements = MeasurementAssemblage(p.dA, read_family(doc["measurements"], p.dA, "measurements"));
  }
  if (doc.contains("assemblage")) p.assemblage = StateAssemblage(p.dB, read_family(doc["assemblage"], p.dB, "assemblage"));
  if (!p.assemblage && !(p.state && p.measurements)) {
    throw ParseError("document", "needs either \"assemblage\" or both \"state\" and \"measurements\"");
  }
  return p;
}

ProblemFile read_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw FileError("error while reading '" + path + "'");
  return parse_problem(buf.str());
}

std::string serialize_problem(const ProblemFile& p, int indent) {
  json doc;
  doc["dims"] = {{"dA", p.dA}, {"dB", p.dB}};
  if (p.state) doc["state"] = write_matrix(p.state->rho());
  if (p.measurements) doc["measurements"] = write_family(p.measurements->elements());
  if (p.assemblage) doc["assemblage"] = write_family(p.assemblage->elements());
  return doc.dump(indent) + "\n";
}

void write_problem_file(const std::string& path, const ProblemFile& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write '" + path + "'");
  out << serialize_problem(p);
  if (!out) throw FileError("error while writing '" + path + "'");
}

}  // namespace steerlab
