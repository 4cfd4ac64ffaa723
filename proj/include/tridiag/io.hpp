#pragma once

#include <istream>
#include <map>
#include <string>

#include <json.hpp>

#include "tridiag/spectrum.hpp"

namespace tridiag::io {

// Shell-safe complex literals: "1.5", "-0.3", "2i", "0.7+0.2i", "1e-3-2e-4i".
Complex parse_complex(const std::string& text);
std::string format_complex(Complex z);

// JSON schema "tridiag/1": n, Q, w, eigenvalues [{re, im, kind, t?,
// residual?}], diagnostics, wall_time_ms. Eigenvectors are not serialized.
nlohmann::ordered_json spectrum_to_json(const SpectrumResult& res,
                                        double wall_time_ms);
SpectrumResult spectrum_from_json(const nlohmann::ordered_json& j);

// CSV flattening of the eigenvalue list: re,im,kind,t,residual.
std::string spectrum_to_csv(const SpectrumResult& res);

// "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> load_config(std::istream& in);

}  // namespace tridiag::io
