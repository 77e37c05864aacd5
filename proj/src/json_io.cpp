#include "coherence/json_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace coherence {

namespace {

using nlohmann::json;

// dim x dim array of reals under `key`
std::vector<std::vector<double>> matrix_field(const json& j, const char* key, int dim) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  const auto& arr = j.at(key);
  if (!arr.is_array() || arr.size() != static_cast<std::size_t>(dim))
    throw std::invalid_argument(std::string("field \"") + key + "\" must be a " + std::to_string(dim) + "-row array");
  std::vector<std::vector<double>> rows;
  rows.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& row = arr.at(i);
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim))
      throw std::invalid_argument(std::string("field \"") + key + "\" row " + std::to_string(i) + " must have " +
                                  std::to_string(dim) + " entries");
    rows.push_back(row.get<std::vector<double>>());
  }
  return rows;
}

int dim_field(const json& j) {
  if (!j.contains("dim")) throw std::invalid_argument("missing field \"dim\"");
  const auto& d = j.at("dim");
  if (!d.is_number_integer()) throw std::invalid_argument("field \"dim\" must be an integer");
  return d.get<int>();
}

ComplexMatrix matrix_from_json(const json& j, int expected_dim) {
  const int dim = j.contains("dim") ? dim_field(j) : expected_dim;
  if (expected_dim > 0 && dim != expected_dim)
    throw std::invalid_argument("operator dim " + std::to_string(dim) + " does not match channel dim " +
                                std::to_string(expected_dim));
  const auto re = matrix_field(j, "re", dim);
  const auto im = matrix_field(j, "im", dim);
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k)
      m(i, k) = cplx(re[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                     im[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json rrow = json::array(), irow = json::array();
    for (int k = 0; k < m.dim(); ++k) {
      rrow.push_back(m(i, k).real());
      irow.push_back(m(i, k).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return json{{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

}  // namespace

json state_to_json(const DensityMatrix& rho) { return matrix_to_json(rho.matrix()); }

DensityMatrix state_from_json(const json& j) {
  const int dim = dim_field(j);
  return DensityMatrix::from_matrix(matrix_from_json(j, dim));
}

json channel_to_json(const KrausChannel& channel) {
  json ops = json::array();
  for (const auto& k : channel.operators) ops.push_back(matrix_to_json(k));
  return json{{"dim", channel.dim()}, {"operators", std::move(ops)}};
}

KrausChannel channel_from_json(const json& j) {
  const int dim = dim_field(j);
  if (!j.contains("operators") || !j.at("operators").is_array() || j.at("operators").empty())
    throw std::invalid_argument("field \"operators\" must be a nonempty array");
  KrausChannel channel;
  channel.label = "file";
  for (const auto& op : j.at("operators")) channel.operators.push_back(matrix_from_json(op, dim));
  return channel;
}

DensityMatrix load_state_file(const std::filesystem::path& path) {
  try {
    return state_from_json(parse_file(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("state file " + path.string() + ": " + e.what());
  }
}

KrausChannel load_channel_file(const std::filesystem::path& path) {
  try {
    return channel_from_json(parse_file(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("channel file " + path.string() + ": " + e.what());
  }
}

}  // namespace coherence
