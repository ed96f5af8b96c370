#include "fembed/errors.hpp"

namespace fembed {

TriangleViolation::TriangleViolation(std::size_t i_, std::size_t j_,
                                     std::size_t k_)
    : Error("TriangleViolation",
            "triangle inequality violated: d(" + std::to_string(i_) + "," +
                std::to_string(j_) + ") > d(" + std::to_string(i_) + "," +
                std::to_string(k_) + ") + d(" + std::to_string(k_) + "," +
                std::to_string(j_) + ")"),
      i(i_),
      j(j_),
      k(k_) {}

AsymmetryError::AsymmetryError(std::size_t i_, std::size_t j_)
    : Error("AsymmetryError", "d(" + std::to_string(i_) + "," +
                                  std::to_string(j_) + ") != d(" +
                                  std::to_string(j_) + "," +
                                  std::to_string(i_) + ")"),
      i(i_),
      j(j_) {}

DegeneracyError::DegeneracyError(std::size_t i_, std::size_t j_)
    : Error("DegeneracyError", "invalid distance at (" + std::to_string(i_) +
                                   "," + std::to_string(j_) + ")"),
      i(i_),
      j(j_) {}

}  // namespace fembed
