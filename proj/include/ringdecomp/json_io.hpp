#pragma once

#include <string>

#include <json.hpp>

#include "ringdecomp/decomp.hpp"

namespace ringdecomp::json_io {

using json = nlohmann::json;

json scalar_to_json(const Scalar& s);
/// Throws Error(Parse) on an encoding that does not fit `ring`.
Scalar scalar_from_json(const json& j, RingId ring);

/// {"ring", "rows", "cols", "entries"}; an empty dimension has "entries": [].
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

/// {"kind", "params": {...}, "size"}, plus "entries" for graph components.
json block_to_json(const Block& b);
Block block_from_json(const json& j);

json blocks_to_json(const BlockMultiset& s);
BlockMultiset blocks_from_json(const json& j);

/// {"kind", "left", "right", "blocks"}.
json factorization_to_json(const Factorization& f);
Factorization factorization_from_json(const json& j);

json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

}  // namespace ringdecomp::json_io
