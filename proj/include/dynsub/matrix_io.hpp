#pragma once

// MatrixFile JSON:
//
//   {"kind": "complex" | "real", "rows": [[x, ...], ...]}
//
// Entries of a complex file are [re, im] pairs or plain numbers. Stochastic
// matrices are column-stochastic: every column sums to 1 and P' = T P.
// A quasi-free map file is {"R": MatrixFile, "Z": MatrixFile}.

#include <string>

#include <json.hpp>

#include "dynsub/matcore.hpp"

namespace dynsub::io {

ComplexMatrix complex_from_json(const nlohmann::json& j);
RealMatrix real_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ComplexMatrix& m);
nlohmann::json to_json(const RealMatrix& m);

nlohmann::json read_json_file(const std::string& path);
ComplexMatrix read_complex(const std::string& path);
RealMatrix read_real(const std::string& path);

}  // namespace dynsub::io
