#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mlk/quadrature.hpp"

namespace mlk::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitInvalidInput = 3;

// Malformed document: bad JSON, wrong types or shapes, unknown fields.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed document describing invalid mathematical data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EmbeddingInput {
  Eigen::MatrixXd re;
  Eigen::MatrixXd im;
};

struct InputDocument {
  int g = 0;
  std::optional<int> degree;  // defaults to the number of embeddings
  std::vector<EmbeddingInput> embeddings;
  std::optional<double> epsilon;
  std::optional<std::int64_t> budget;
  std::optional<Scheme> scheme;
};

// Strict parse of
//   {"g": int, "degree": int?, "embeddings": [{"re": [[..]], "im": [[..]]}, ..],
//    "options": {"epsilon": real?, "budget": int?, "scheme": string?}?}
// with row-major g×g matrices.  Throws ParseError.
InputDocument ParseInput(std::string_view text);

// Hex SHA-256 of `bytes`.
std::string Sha256Hex(std::string_view bytes);

// Runs `mlk <args...>` (args excludes the program name).  Reports go to
// `out`, diagnostics to `err`; returns the exit code.
int Run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace mlk::cli
