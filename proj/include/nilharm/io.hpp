#pragma once

#include <string>

#include "nilharm/quantization.hpp"

namespace nilharm {

// sidecar JSON at `json_path`, data next to it as complex128 little-endian (.bin) or "re,im" lines (.csv)
void save_function(const SampledFunction& f, const std::string& json_path, bool csv = false);
SampledFunction load_function(const std::string& json_path);

std::string lambda_grid_to_json(const LambdaGrid& g);
LambdaGrid lambda_grid_from_json(const std::string& text);

void write_matrix(const std::string& path, const Eigen::MatrixXcd& A);
Eigen::MatrixXcd read_matrix(const std::string& path, Eigen::Index rows, Eigen::Index cols);

// directory with manifest.json plus one row-major complex128 file per lambda node
void save_family(const std::string& dir, const FourierFamily& fam, const QuantSpec& q);
FourierFamily load_family(const std::string& dir, GridSpec* rep_grid = nullptr);
void save_symbol(const std::string& dir, const SymbolField& a, const GridSpec& rep_grid);
SymbolField load_symbol(const std::string& dir, GridSpec* rep_grid = nullptr);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace nilharm
