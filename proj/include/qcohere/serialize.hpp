#pragma once

#include <string>

#include "qcohere/channels.hpp"
#include "qcohere/coherence.hpp"

namespace qc {

/// Matrix wire format: {"dim": d, "re": [...], "im": [...]}, row-major.
std::string matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const std::string& text);

std::string state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const std::string& text);

/// Channel wire format: {"label": ..., "kraus": [matrix...]}.
std::string channel_to_json(const KrausChannel& channel);
KrausChannel channel_from_json(const std::string& text);

/// MeasureResult: {"value", "method", "tol", "witness"?}.
std::string measure_result_to_json(const MeasureResult& result);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qc
