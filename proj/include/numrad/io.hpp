#pragma once

// JSON encodings: matrices as {"rows", "cols", "data": [[re, im], ...]} row-major, partitions as
// {"block_sizes", "blocks"}.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "numrad/block_bounds.hpp"
#include "numrad/bound_record.hpp"
#include "numrad/error.hpp"
#include "numrad/matrix.hpp"

namespace numrad {

using Json = nlohmann::ordered_json;

inline Json to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (const Complex& z : m.entries()) data.push_back({z.real(), z.imag()});
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
      throw Error(ErrorCode::ParseError, "matrix needs rows, cols and data");
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const Json& data = j.at("data");
    if (!data.is_array() || data.size() != rows * cols)
      throw Error(ErrorCode::ParseError, "data length does not match rows x cols");
    std::vector<Complex> entries;
    entries.reserve(data.size());
    for (const Json& z : data) {
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        throw Error(ErrorCode::ParseError, "each entry must be [re, im]");
      entries.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
    return ComplexMatrix(rows, cols, std::move(entries));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline Json to_json(const BlockPartition& p) {
  Json blocks = Json::array();
  for (const auto& row : p.blocks) {
    Json r = Json::array();
    for (const auto& b : row) r.push_back(to_json(b));
    blocks.push_back(std::move(r));
  }
  return Json{{"block_sizes", p.block_sizes}, {"blocks", std::move(blocks)}};
}

inline BlockPartition partition_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("block_sizes") || !j.contains("blocks"))
      throw Error(ErrorCode::ParseError, "partition needs block_sizes and blocks");
    BlockPartition p;
    p.block_sizes = j.at("block_sizes").get<std::vector<std::size_t>>();
    for (const Json& row : j.at("blocks")) {
      std::vector<ComplexMatrix> r;
      for (const Json& b : row) r.push_back(matrix_from_json(b));
      p.blocks.push_back(std::move(r));
    }
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline Json to_json(const BoundRecord& r) {
  return Json{{"bound_id", r.bound_id},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"slack", r.slack},
              {"tightness", r.tightness},
              {"preconditions_met", r.preconditions_met},
              {"holds", holds(r)},
              {"notes", r.notes}};
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

}  // namespace numrad
