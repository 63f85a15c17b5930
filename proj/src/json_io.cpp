#include "ringdecomp/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ringdecomp/error.hpp"

namespace ringdecomp::json_io {
namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

double number(const json& j) {
  if (!j.is_number()) fail("expected a number, got " + j.dump());
  return j.get<double>();
}

std::array<double, 2> pair(const json& j) {
  if (!j.is_array() || j.size() != 2) fail("expected [a, b], got " + j.dump());
  return {number(j[0]), number(j[1])};
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t count(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    fail(std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

json scalar_to_json(const Scalar& s) {
  const auto& c = s.components();
  switch (s.ring()) {
    case RingId::Zero: return 0;
    case RingId::Real: return c[0];
    case RingId::Complex:
    case RingId::DualTrivial:
    case RingId::DualConj: return json::array({c[0], c[1]});
    case RingId::Quaternion: return json::array({c[0], c[1], c[2], c[3]});
    case RingId::DoubleComplexSwap: return json::array({json::array({c[0], c[1]}), json::array({c[2], c[3]})});
    case RingId::IntegerTrivial: return s.integer_value();
  }
  return nullptr;
}

Scalar scalar_from_json(const json& j, RingId ring) {
  switch (ring) {
    case RingId::Zero:
      if (number(j) != 0.0) fail("zero ring entries must be 0");
      return Scalar::zero(ring);
    case RingId::Real: return Scalar::from_real(ring, number(j));
    case RingId::Complex: {
      const auto p = pair(j);
      return Scalar::complex({p[0], p[1]});
    }
    case RingId::DualTrivial:
    case RingId::DualConj: {
      const auto p = pair(j);
      return Scalar::dual(ring, p[0], p[1]);
    }
    case RingId::Quaternion:
      if (!j.is_array() || j.size() != 4) fail("expected [a, b, c, d], got " + j.dump());
      return Scalar::quaternion({number(j[0]), number(j[1]), number(j[2]), number(j[3])});
    case RingId::DoubleComplexSwap: {
      if (!j.is_array() || j.size() != 2) fail("expected [[a, b], [c, d]], got " + j.dump());
      const auto p = pair(j[0]), q = pair(j[1]);
      return Scalar::double_complex({p[0], p[1]}, {q[0], q[1]});
    }
    case RingId::IntegerTrivial:
      if (!j.is_number_integer()) fail("expected an integer, got " + j.dump());
      return Scalar::integer(j.get<std::int64_t>());
  }
  fail("unknown ring");
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  if (m.rows() > 0 && m.cols() > 0) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
      rows.push_back(std::move(row));
    }
  }
  return {{"ring", std::string(ring_name(m.ring()))}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Matrix matrix_from_json(const json& j) {
  const json& tag = field(j, "ring");
  if (!tag.is_string()) fail("\"ring\" must be a string");
  const RingId ring = parse_ring(tag.get<std::string>());
  const std::size_t rows = count(j, "rows"), cols = count(j, "cols");
  const json& e = field(j, "entries");
  if (!e.is_array()) fail("\"entries\" must be an array");
  Matrix m(ring, rows, cols);
  if (rows == 0 || cols == 0) {
    if (!e.empty()) fail("entries given for an empty matrix");
    return m;
  }
  if (e.size() != rows) fail("expected " + std::to_string(rows) + " rows, got " + std::to_string(e.size()));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!e[i].is_array() || e[i].size() != cols) fail("row " + std::to_string(i) + " has the wrong length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = scalar_from_json(e[i][k], ring);
  }
  return m;
}

json block_to_json(const Block& b) {
  json params = json::object();
  const auto names = param_names(b.kind);
  for (std::size_t i = 0; i < names.size() && i < b.params.size(); ++i) params[std::string(names[i])] = b.params[i];
  json out = {{"kind", std::string(block_kind_name(b.kind))}, {"params", params}, {"size", b.size}};
  if (b.kind == BlockKind::GraphComponent) out["entries"] = b.graph;
  return out;
}

Block block_from_json(const json& j) {
  const json& k = field(j, "kind");
  if (!k.is_string()) fail("\"kind\" must be a string");
  Block b;
  b.kind = parse_block_kind(k.get<std::string>());
  b.size = count(j, "size");
  const json& params = field(j, "params");
  if (!params.is_object()) fail("\"params\" must be an object");
  for (auto name : param_names(b.kind)) {
    const std::string key(name);
    if (!params.contains(key)) fail("block " + k.get<std::string>() + " is missing parameter " + key);
    b.params.push_back(number(params.at(key)));
  }
  if (params.size() != b.params.size()) fail("unexpected parameters on block " + k.get<std::string>());
  if (b.kind == BlockKind::GraphComponent) {
    const json& e = field(j, "entries");
    if (!e.is_array() || e.size() != b.size * b.size) fail("graph component entries do not match its size");
    for (const auto& v : e) {
      if (!v.is_number_integer()) fail("graph entries must be integers");
      b.graph.push_back(v.get<std::int64_t>());
    }
  }
  return b;
}

json blocks_to_json(const BlockMultiset& s) {
  json out = json::array();
  for (const auto& b : s.items()) out.push_back(block_to_json(b));
  return out;
}

BlockMultiset blocks_from_json(const json& j) {
  if (!j.is_array()) fail("blocks must be an array");
  std::vector<Block> items;
  for (const auto& b : j) items.push_back(block_from_json(b));
  return BlockMultiset(std::move(items));
}

json factorization_to_json(const Factorization& f) {
  return {{"kind", std::string(kind_name(f.kind))},
          {"left", matrix_to_json(f.left)},
          {"right", matrix_to_json(f.right)},
          {"blocks", blocks_to_json(f.blocks)}};
}

Factorization factorization_from_json(const json& j) {
  const json& k = field(j, "kind");
  if (!k.is_string()) fail("\"kind\" must be a string");
  Factorization f;
  f.kind = parse_kind(k.get<std::string>());
  f.left = matrix_from_json(field(j, "left"));
  f.right = matrix_from_json(field(j, "right"));
  f.blocks = blocks_from_json(field(j, "blocks"));
  return f;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace ringdecomp::json_io
