#include "qcohere/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qc {

using nlohmann::json;

namespace {

json matrix_json(const Matrix& m) {
  json j;
  j["dim"] = m.rows();
  std::vector<double> re, im;
  re.reserve(m.size());
  im.reserve(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      re.push_back(m(i, k).real());
      im.push_back(m(i, k).imag());
    }
  j["re"] = re;
  j["im"] = im;
  return j;
}

Matrix matrix_from(const json& j) {
  if (!j.contains("dim") || !j.contains("re") || !j.contains("im"))
    fail(Err::ParseError, "matrix JSON needs dim/re/im fields");
  const int d = j.at("dim").get<int>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (d < 1 || re.size() != static_cast<size_t>(d) * d || im.size() != re.size())
    fail(Err::ParseError, "matrix JSON entry count differs from dim^2");
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) m(i, k) = Complex(re[i * d + k], im[i * d + k]);
  return m;
}

}  // namespace

std::string matrix_to_json(const Matrix& m) { return matrix_json(m).dump(2); }

Matrix matrix_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Err::ParseError, "malformed JSON");
  return matrix_from(j);
}

std::string state_to_json(const DensityMatrix& rho) { return matrix_json(rho.mat()).dump(2); }

DensityMatrix state_from_json(const std::string& text) {
  return DensityMatrix(matrix_from_json(text));
}

std::string channel_to_json(const KrausChannel& channel) {
  json j;
  j["label"] = channel.label();
  j["kraus"] = json::array();
  for (const Matrix& k : channel.kraus()) j["kraus"].push_back(matrix_json(k));
  return j.dump(2);
}

KrausChannel channel_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Err::ParseError, "malformed JSON");
  if (!j.contains("kraus") || !j.at("kraus").is_array() || j.at("kraus").empty())
    fail(Err::ParseError, "channel JSON needs a nonempty kraus array");
  std::vector<Matrix> ops;
  for (const json& k : j.at("kraus")) ops.push_back(matrix_from(k));
  const std::string label = j.value("label", "channel");
  return KrausChannel(ops, label);
}

std::string measure_result_to_json(const MeasureResult& result) {
  json j;
  j["value"] = result.value;
  j["method"] = result.method == Method::analytic ? "analytic" : "numeric";
  j["tol"] = result.tol;
  if (result.witness_state) j["witness"] = matrix_json(*result.witness_state);
  if (result.witness_angles) j["witness_angles"] = *result.witness_angles;
  return j.dump(2);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::ParseError, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail(Err::ParseError, "cannot write file: " + path);
  out << content;
}

}  // namespace qc
