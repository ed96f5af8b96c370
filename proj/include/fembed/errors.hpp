#ifndef FEMBED_ERRORS_HPP_
#define FEMBED_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fembed {

// Base of every error raised by the library. `code()` is a stable short name
// used for row-level error markers in experiment reports.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define FEMBED_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(#Name, what) {}     \
  }

FEMBED_DEFINE_ERROR(InvalidArgument);
FEMBED_DEFINE_ERROR(ParameterOutOfRange);
FEMBED_DEFINE_ERROR(SinglePoint);
FEMBED_DEFINE_ERROR(UnknownVertex);
FEMBED_DEFINE_ERROR(EmptySubset);
FEMBED_DEFINE_ERROR(MissingLabel);
FEMBED_DEFINE_ERROR(NonDecreasingLabels);
FEMBED_DEFINE_ERROR(NotUltrametric);
FEMBED_DEFINE_ERROR(PInfinite);
FEMBED_DEFINE_ERROR(EmptyU);
FEMBED_DEFINE_ERROR(VertexNotInSkeleton);
FEMBED_DEFINE_ERROR(TooSmallV);
FEMBED_DEFINE_ERROR(CombinatorialBlowup);
FEMBED_DEFINE_ERROR(PathTooLong);
FEMBED_DEFINE_ERROR(IoError);

#undef FEMBED_DEFINE_ERROR

// Metric validation errors carry the offending indices.
class TriangleViolation : public Error {
 public:
  // d(i, j) > d(i, k) + d(k, j).
  TriangleViolation(std::size_t i, std::size_t j, std::size_t k);
  std::size_t i, j, k;
};

class AsymmetryError : public Error {
 public:
  AsymmetryError(std::size_t i, std::size_t j);
  std::size_t i, j;
};

// Zero distance between distinct points, nonzero diagonal, or a negative entry.
class DegeneracyError : public Error {
 public:
  DegeneracyError(std::size_t i, std::size_t j);
  std::size_t i, j;
};

}  // namespace fembed

#endif  // FEMBED_ERRORS_HPP_
