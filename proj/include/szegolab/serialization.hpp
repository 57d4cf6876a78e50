#pragma once

// JSON forms of symbols, AP functions, operators and test functions; CSV writers.
//
// Parsing failures raise ConfigError with the JSON path of the offending field.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "szegolab/almost_periodic.hpp"
#include "szegolab/operators.hpp"
#include "szegolab/symbols.hpp"
#include "szegolab/szego.hpp"
#include "szegolab/test_function.hpp"

namespace szegolab {

using Json = nlohmann::json;

Complex complex_from_json(const Json& j, const std::string& path);
Json complex_to_json(Complex c);

/// {"<offset>": [re, im], ...}; or {"exp_of": <symbol>} for exp of a trigonometric polynomial.
TrigPolynomial symbol_from_json(const Json& j, const std::string& path);
Json symbol_to_json(const TrigPolynomial& a);

/// [{"freq": f, "re": x, "im": y}, ...]
APFunction ap_from_json(const Json& j, const std::string& path);
Json ap_to_json(const APFunction& a);

/// Kind-tagged operator: toeplitz | band_ap | almost_mathieu | composite.
OperatorDescription operator_from_json(const Json& j, const std::string& path);
Json operator_to_json(const OperatorDescription& op);

/// {"kind": "power", "p": 3} | {"kind": "polynomial", "coeffs": [[re, im], ...]} | {"kind": "identity"}
/// | {"kind": "exp", "radius": r} | {"kind": "log"} | {"kind": "abs"}
TestFunction test_function_from_json(const Json& j, const std::string& path);

/// %.17g: shortest form that round-trips every double.
std::string format_double(double x);

inline constexpr const char* kReportHeader = "n,empirical_re,empirical_im,predicted_re,predicted_im,residual,flags";

/// Header plus one row per report row, LF line endings, 17 significant digits.
void write_report_csv(std::ostream& os, const std::vector<SzegoReport>& reports);

/// n,b_n,p_n,q_n,error_bound
void write_cf_csv(std::ostream& os, const ContinuedFraction& cf);

/// Row-major: re_0,im_0,re_1,im_1,... per matrix row.
void write_matrix_csv(std::ostream& os, const Matrix& m);

}  // namespace szegolab
