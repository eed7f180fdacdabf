#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace holex {

inline constexpr const char* kVersion = "0.1.0";

using cdouble = std::complex<double>;

// Raised for malformed input: bad specs, out-of-domain parameters, points
// outside chart domains. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a computation cannot meet its numerical contract (singular
// Gram, degenerate denominator, non-injective embedding probe, ...).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

inline double sqr(double x) { return x * x; }

// Working tolerances, pinned here so the library, the CLI checks and the
// acceptance harness all read the same numbers. Every manifest echoes them.
namespace tol {
inline constexpr double kGramIdentity = 1e-8;        // recomputed Gram vs identity
inline constexpr double kSzegoTrace = 1e-6;          // integral of the density vs dimension
inline constexpr double kDensitySpread = 1e-6;       // grid constancy of the diagonal density
inline constexpr double kGaussianOracle = 1e-10;     // kernel vs model closed form
inline constexpr double kFieldIdentity = 1e-10;      // field value vs embedded distance
inline constexpr double kModeAgreement = 1e-8;       // two normal-slice routes
inline constexpr double kChartAgreement = 1e-9;      // same quantity across chart overlaps
inline constexpr double kUnitaryInvariance = 1e-10;  // basis rotation invariance
inline constexpr double kBruteForceBand = 1e-4;      // slice distance vs sampling oracle
inline constexpr double kDegeneracyGap = 1e-9;       // vertex value too close to the threshold
inline constexpr double kNearDiagonalFloor = 1e-6;   // chart units; below it use diagonal forms
inline constexpr double kDenominatorFloor = 1e-12;   // curvature-ratio bracket cutoff
inline constexpr double kKernelUnderflowFloor = 1e-200;  // antipodal-pair kernel cutoff
inline constexpr double kConditionLimit = 1e12;      // equilibrated Gram condition bound
inline constexpr double kSupConvergence = 1e-10;     // local ascent stopping gap
inline constexpr double kMeshChartEdgeLimit = 0.2;   // rescaled-metric vertex spacing bound
inline constexpr double kRadiusStability = 0.05;     // refinement wobble allowed in r-hat
}  // namespace tol

}  // namespace holex
